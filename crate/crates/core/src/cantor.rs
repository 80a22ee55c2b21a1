//! Cones and clopen subsets of the Cantor space `{0,..,n-1}^ω`.
//!
//! A [`ClopenSet`] is stored as the unique maximal antichain of cones that
//! denotes it: no cone is a prefix of another and no full sibling family
//! survives. Two sets are equal exactly when their cone lists are equal.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{malformed, Error, Result};

/// Largest alphabet supported. Words are written as digit strings.
pub const MAX_ARITY: usize = 10;

/// Alphabet size `n` of the Cantor space.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Arity(u8);

impl Arity {
    pub fn new(n: usize) -> Result<Self> {
        if !(2..=MAX_ARITY).contains(&n) {
            return Err(malformed(format!("arity {n} outside 2..={MAX_ARITY}")));
        }
        Ok(Arity(n as u8))
    }

    #[inline]
    pub fn get(self) -> usize {
        self.0 as usize
    }

    /// `n - 1`, the modulus of the weight invariant.
    #[inline]
    pub fn modulus(self) -> usize {
        self.0 as usize - 1
    }

    pub(crate) fn check(self, other: Arity) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::ArityMismatch(self.get(), other.get()))
        }
    }
}

impl fmt::Display for Arity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A finite word over `{0,..,n-1}`; names the cone of all sequences extending it.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Word(Vec<u8>);

impl Word {
    pub fn root() -> Self {
        Word(Vec::new())
    }

    pub fn new(arity: Arity, letters: Vec<u8>) -> Result<Self> {
        if let Some(&bad) = letters.iter().find(|&&l| l as usize >= arity.get()) {
            return Err(malformed(format!("letter {bad} out of range for n={arity}")));
        }
        Ok(Word(letters))
    }

    /// Unchecked constructor for letters already known to be in range.
    pub(crate) fn from_vec(letters: Vec<u8>) -> Self {
        Word(letters)
    }

    /// Parses a digit string; `""` and `"ε"` denote the root.
    pub fn parse(arity: Arity, s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "ε" {
            return Ok(Word::root());
        }
        let letters = s
            .chars()
            .map(|c| {
                c.to_digit(10)
                    .map(|d| d as u8)
                    .ok_or_else(|| malformed(format!("non-digit {c:?} in word {s:?}")))
            })
            .collect::<Result<Vec<u8>>>()?;
        Word::new(arity, letters)
    }

    #[inline]
    pub fn letters(&self) -> &[u8] {
        &self.0
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.0.len()
    }

    #[inline]
    pub fn is_root(&self) -> bool {
        self.0.is_empty()
    }

    #[inline]
    pub fn is_prefix_of(&self, other: &Word) -> bool {
        other.0.starts_with(&self.0)
    }

    /// True when one of the two words is a prefix of the other (the cones meet).
    #[inline]
    pub fn comparable(&self, other: &Word) -> bool {
        self.is_prefix_of(other) || other.is_prefix_of(self)
    }

    pub fn child(&self, letter: u8) -> Word {
        let mut v = Vec::with_capacity(self.0.len() + 1);
        v.extend_from_slice(&self.0);
        v.push(letter);
        Word(v)
    }

    pub fn concat(&self, suffix: &[u8]) -> Word {
        let mut v = Vec::with_capacity(self.0.len() + suffix.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(suffix);
        Word(v)
    }

    pub fn children(&self, arity: Arity) -> impl Iterator<Item = Word> + '_ {
        (0..arity.get() as u8).map(move |i| self.child(i))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &l in &self.0 {
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            write!(f, "ε")
        } else {
            write!(f, "{self}")
        }
    }
}

/// Region tree used for the Boolean operations. Children are indexed by letter.
#[derive(Debug, Clone)]
enum Region {
    Empty,
    Full,
    Split(Vec<Region>),
}

impl Region {
    fn insert(&mut self, letters: &[u8], n: usize) {
        match self {
            Region::Full => {}
            _ if letters.is_empty() => *self = Region::Full,
            Region::Empty => {
                let mut kids = vec![Region::Empty; n];
                kids[letters[0] as usize].insert(&letters[1..], n);
                *self = Region::Split(kids);
            }
            Region::Split(kids) => kids[letters[0] as usize].insert(&letters[1..], n),
        }
    }

    /// Collapses uniform splits bottom-up.
    fn normalize(self) -> Region {
        match self {
            Region::Split(kids) => {
                let kids: Vec<Region> = kids.into_iter().map(Region::normalize).collect();
                if kids.iter().all(|k| matches!(k, Region::Full)) {
                    Region::Full
                } else if kids.iter().all(|k| matches!(k, Region::Empty)) {
                    Region::Empty
                } else {
                    Region::Split(kids)
                }
            }
            leaf => leaf,
        }
    }

    fn from_cones(cones: &[Word], n: usize) -> Region {
        let mut r = Region::Empty;
        for c in cones {
            r.insert(c.letters(), n);
        }
        r
    }

    fn collect(&self, prefix: &mut Vec<u8>, out: &mut Vec<Word>) {
        match self {
            Region::Empty => {}
            Region::Full => out.push(Word(prefix.clone())),
            Region::Split(kids) => {
                for (i, k) in kids.iter().enumerate() {
                    prefix.push(i as u8);
                    k.collect(prefix, out);
                    prefix.pop();
                }
            }
        }
    }

    fn complement(self) -> Region {
        match self {
            Region::Empty => Region::Full,
            Region::Full => Region::Empty,
            Region::Split(kids) => Region::Split(kids.into_iter().map(Region::complement).collect()),
        }
    }

    fn union(self, other: Region) -> Region {
        match (self, other) {
            (Region::Full, _) | (_, Region::Full) => Region::Full,
            (Region::Empty, r) | (r, Region::Empty) => r,
            (Region::Split(a), Region::Split(b)) => {
                Region::Split(a.into_iter().zip(b).map(|(x, y)| x.union(y)).collect()).normalize_top()
            }
        }
    }

    fn intersect(self, other: Region) -> Region {
        match (self, other) {
            (Region::Empty, _) | (_, Region::Empty) => Region::Empty,
            (Region::Full, r) | (r, Region::Full) => r,
            (Region::Split(a), Region::Split(b)) => Region::Split(
                a.into_iter().zip(b).map(|(x, y)| x.intersect(y)).collect(),
            )
            .normalize_top(),
        }
    }

    fn normalize_top(self) -> Region {
        match self {
            Region::Split(kids) => {
                if kids.iter().all(|k| matches!(k, Region::Full)) {
                    Region::Full
                } else if kids.iter().all(|k| matches!(k, Region::Empty)) {
                    Region::Empty
                } else {
                    Region::Split(kids)
                }
            }
            leaf => leaf,
        }
    }
}

/// A clopen subset of the Cantor space in canonical cone form.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "ClopenJson", into = "ClopenJson")]
pub struct ClopenSet {
    arity: Arity,
    cones: Vec<Word>,
}

impl ClopenSet {
    pub fn empty(arity: Arity) -> Self {
        ClopenSet { arity, cones: Vec::new() }
    }

    pub fn full(arity: Arity) -> Self {
        ClopenSet { arity, cones: vec![Word::root()] }
    }

    pub fn cone(arity: Arity, w: Word) -> Self {
        ClopenSet { arity, cones: vec![w] }
    }

    /// Canonical set denoted by an arbitrary list of cones.
    pub fn canonicalize<I>(arity: Arity, raw: I) -> Result<Self>
    where
        I: IntoIterator<Item = Word>,
    {
        let raw: Vec<Word> = raw.into_iter().collect();
        for w in &raw {
            Word::new(arity, w.0.clone())?;
        }
        Ok(Self::from_cones_unchecked(arity, &raw))
    }

    /// Parses digit-string cones, e.g. `["00", "11"]`.
    pub fn parse<S: AsRef<str>>(arity: Arity, raw: &[S]) -> Result<Self> {
        let words = raw
            .iter()
            .map(|s| Word::parse(arity, s.as_ref()))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::from_cones_unchecked(arity, &words))
    }

    pub(crate) fn from_cones_unchecked(arity: Arity, cones: &[Word]) -> Self {
        let region = Region::from_cones(cones, arity.get()).normalize();
        Self::from_region(arity, &region)
    }

    fn from_region(arity: Arity, region: &Region) -> Self {
        let mut cones = Vec::new();
        region.collect(&mut Vec::new(), &mut cones);
        ClopenSet { arity, cones }
    }

    fn region(&self) -> Region {
        Region::from_cones(&self.cones, self.arity.get())
    }

    #[inline]
    pub fn arity(&self) -> Arity {
        self.arity
    }

    #[inline]
    pub fn cones(&self) -> &[Word] {
        &self.cones
    }

    /// Number of cones in the canonical form.
    #[inline]
    pub fn weight(&self) -> usize {
        self.cones.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cones.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.cones.len() == 1 && self.cones[0].is_root()
    }

    /// Non-empty and not the whole space.
    pub fn is_proper(&self) -> bool {
        !self.is_empty() && !self.is_full()
    }

    pub fn max_depth(&self) -> usize {
        self.cones.iter().map(Word::len).max().unwrap_or(0)
    }

    pub fn union(&self, other: &ClopenSet) -> Result<ClopenSet> {
        self.arity.check(other.arity)?;
        let r = self.region().union(other.region());
        Ok(Self::from_region(self.arity, &r))
    }

    pub fn intersection(&self, other: &ClopenSet) -> Result<ClopenSet> {
        self.arity.check(other.arity)?;
        let r = self.region().intersect(other.region());
        Ok(Self::from_region(self.arity, &r))
    }

    pub fn complement(&self) -> ClopenSet {
        Self::from_region(self.arity, &self.region().complement())
    }

    pub fn difference(&self, other: &ClopenSet) -> Result<ClopenSet> {
        self.arity.check(other.arity)?;
        let r = self.region().intersect(other.region().complement());
        Ok(Self::from_region(self.arity, &r))
    }

    pub fn is_subset(&self, other: &ClopenSet) -> Result<bool> {
        Ok(self.difference(other)?.is_empty())
    }

    /// `self ⊊ other`.
    pub fn is_proper_subset(&self, other: &ClopenSet) -> Result<bool> {
        Ok(self.is_subset(other)? && self != other)
    }

    pub fn is_disjoint(&self, other: &ClopenSet) -> Result<bool> {
        Ok(self.intersection(other)?.is_empty())
    }

    /// All length-`d` words whose cones partition the set.
    pub fn refine_to_depth(&self, d: usize) -> Result<Vec<Word>> {
        if d < self.max_depth() {
            return Err(malformed(format!(
                "refinement depth {d} below cone depth {}",
                self.max_depth()
            )));
        }
        let n = self.arity.get() as u8;
        let mut out = Vec::new();
        for c in &self.cones {
            expand(c.clone(), d, n, &mut out);
        }
        Ok(out)
    }

    /// Membership of the cone at `w`: `Some(true)` if inside, `Some(false)` if
    /// disjoint, `None` if the cone straddles the boundary.
    pub fn contains_cone(&self, w: &Word) -> Option<bool> {
        let i = self.cones.partition_point(|c| c <= w);
        if i > 0 && self.cones[i - 1].is_prefix_of(w) {
            return Some(true);
        }
        if self.cones.get(i).is_some_and(|c| w.is_prefix_of(c)) {
            return None;
        }
        Some(false)
    }

    /// Replaces the shallowest (then least) cone of a raw cone list by its children.
    pub(crate) fn split_least(cones: &mut Vec<Word>, arity: Arity) {
        let (idx, _) = cones
            .iter()
            .enumerate()
            .min_by(|(_, a), (_, b)| a.len().cmp(&b.len()).then_with(|| a.cmp(b)))
            .expect("split_least on empty list");
        let w = cones.remove(idx);
        let kids: Vec<Word> = w.children(arity).collect();
        cones.splice(idx..idx, kids);
    }
}

fn expand(w: Word, d: usize, n: u8, out: &mut Vec<Word>) {
    if w.len() == d {
        out.push(w);
    } else {
        for i in 0..n {
            expand(w.child(i), d, n, out);
        }
    }
}

impl fmt::Debug for ClopenSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, c) in self.cones.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c:?}")?;
        }
        write!(f, "}}")
    }
}

impl fmt::Display for ClopenSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[derive(Serialize, Deserialize)]
struct ClopenJson {
    n: usize,
    cones: Vec<String>,
}

impl TryFrom<ClopenJson> for ClopenSet {
    type Error = Error;

    fn try_from(j: ClopenJson) -> Result<Self> {
        let arity = Arity::new(j.n)?;
        ClopenSet::parse(arity, &j.cones)
    }
}

impl From<ClopenSet> for ClopenJson {
    fn from(s: ClopenSet) -> Self {
        ClopenJson {
            n: s.arity.get(),
            cones: s.cones.iter().map(|w| w.to_string()).collect(),
        }
    }
}
