//! Prefix-exchange maps: elements of the Higman–Thompson group `V_n`.
//!
//! Maps act on the right and compose left to right: `f.compose(&g)` is
//! "first `f`, then `g`". Every value is kept caret-reduced, so structural
//! equality is element equality.

use std::fmt;
use std::ops::Range;

use serde::{Deserialize, Serialize};

use crate::cantor::{Arity, ClopenSet, Word};
use crate::error::{malformed, precondition, Error, Result};

/// Where a word sits relative to the sorted domain antichain of a map.
enum Located {
    /// `domain[i]` is a prefix of the word.
    Inside(usize),
    /// Domain words extending the word occupy this index range (possibly empty).
    Covers(Range<usize>),
}

fn locate(pairs: &[(Word, Word)], w: &Word) -> Located {
    let i = pairs.partition_point(|(d, _)| d <= w);
    if i > 0 && pairs[i - 1].0.is_prefix_of(w) {
        return Located::Inside(i - 1);
    }
    let mut j = i;
    while j < pairs.len() && w.is_prefix_of(&pairs[j].0) {
        j += 1;
    }
    Located::Covers(i..j)
}

/// True if a sorted word list has no element that is a prefix of another.
fn sorted_antichain<'a>(mut words: impl Iterator<Item = &'a Word>) -> bool {
    let Some(mut prev) = words.next() else {
        return true;
    };
    for w in words {
        if prev.is_prefix_of(w) {
            return false;
        }
        prev = w;
    }
    true
}

/// Merges complete sibling families `(u·i → v·i)` into `(u → v)`; input sorted by domain.
fn caret_reduce(pairs: Vec<(Word, Word)>, n: usize) -> Vec<(Word, Word)> {
    let mut stack: Vec<(Word, Word)> = Vec::with_capacity(pairs.len());
    for p in pairs {
        stack.push(p);
        while stack.len() >= n {
            let top = &stack[stack.len() - n..];
            let (d0, r0) = &top[0];
            if d0.is_root() || r0.is_root() {
                break;
            }
            let dl = d0.len();
            let rl = r0.len();
            let dp = &d0.letters()[..dl - 1];
            let rp = &r0.letters()[..rl - 1];
            let family = top.iter().enumerate().all(|(i, (d, r))| {
                d.len() == dl
                    && r.len() == rl
                    && d.letters()[dl - 1] as usize == i
                    && r.letters()[rl - 1] as usize == i
                    && &d.letters()[..dl - 1] == dp
                    && &r.letters()[..rl - 1] == rp
            });
            if !family {
                break;
            }
            let merged = (Word::from_vec(dp.to_vec()), Word::from_vec(rp.to_vec()));
            stack.truncate(stack.len() - n);
            stack.push(merged);
        }
    }
    stack
}

/// A finite partial prefix-replacement map: each pair sends the cone at its
/// domain word onto the cone at its range word.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PartialMap {
    arity: Arity,
    pairs: Vec<(Word, Word)>,
}

impl PartialMap {
    pub fn empty(arity: Arity) -> Self {
        PartialMap { arity, pairs: Vec::new() }
    }

    /// Builds a map from cone pairs; domains and ranges must each be pairwise disjoint.
    pub fn new(arity: Arity, mut pairs: Vec<(Word, Word)>) -> Result<Self> {
        for (d, r) in &pairs {
            Word::new(arity, d.letters().to_vec())?;
            Word::new(arity, r.letters().to_vec())?;
        }
        pairs.sort();
        if !sorted_antichain(pairs.iter().map(|(d, _)| d)) {
            return Err(malformed("domain cones overlap"));
        }
        let mut ranges: Vec<&Word> = pairs.iter().map(|(_, r)| r).collect();
        ranges.sort();
        if !sorted_antichain(ranges.into_iter()) {
            return Err(malformed("range cones overlap"));
        }
        Ok(Self::from_sorted(arity, pairs))
    }

    fn from_sorted(arity: Arity, pairs: Vec<(Word, Word)>) -> Self {
        PartialMap { arity, pairs: caret_reduce(pairs, arity.get()) }
    }

    /// Identity on a clopen set.
    pub fn identity_on(set: &ClopenSet) -> Self {
        let pairs = set.cones().iter().map(|c| (c.clone(), c.clone())).collect();
        PartialMap { arity: set.arity(), pairs }
    }

    /// Bijection from the cones of `from` onto the cones of `to`, matched in order.
    pub fn from_cone_lists(arity: Arity, from: &[Word], to: &[Word]) -> Result<Self> {
        if from.len() != to.len() {
            return Err(precondition(format!(
                "cone counts differ: {} vs {}",
                from.len(),
                to.len()
            )));
        }
        Self::new(arity, from.iter().cloned().zip(to.iter().cloned()).collect())
    }

    #[inline]
    pub fn arity(&self) -> Arity {
        self.arity
    }

    #[inline]
    pub fn pairs(&self) -> &[(Word, Word)] {
        &self.pairs
    }

    pub fn domain(&self) -> ClopenSet {
        ClopenSet::from_cones_unchecked(self.arity, &self.domain_words())
    }

    pub fn range(&self) -> ClopenSet {
        let r: Vec<Word> = self.pairs.iter().map(|(_, r)| r.clone()).collect();
        ClopenSet::from_cones_unchecked(self.arity, &r)
    }

    fn domain_words(&self) -> Vec<Word> {
        self.pairs.iter().map(|(d, _)| d.clone()).collect()
    }

    pub fn inverse(&self) -> Self {
        let mut pairs: Vec<(Word, Word)> =
            self.pairs.iter().map(|(d, r)| (r.clone(), d.clone())).collect();
        pairs.sort();
        PartialMap { arity: self.arity, pairs }
    }

    /// Image of a point prefix, if the prefix is long enough to decide it.
    pub fn apply(&self, w: &Word) -> Option<Word> {
        match locate(&self.pairs, w) {
            Located::Inside(i) => {
                let (d, r) = &self.pairs[i];
                Some(r.concat(&w.letters()[d.len()..]))
            }
            Located::Covers(_) => None,
        }
    }

    /// "First `self`, then `other`", defined wherever the composite is.
    pub fn compose(&self, other: &PartialMap) -> Result<PartialMap> {
        self.arity.check(other.arity)?;
        let mut out = Vec::with_capacity(self.pairs.len().max(other.pairs.len()));
        for (u, v) in &self.pairs {
            match locate(&other.pairs, v) {
                Located::Inside(i) => {
                    let (d, r) = &other.pairs[i];
                    out.push((u.clone(), r.concat(&v.letters()[d.len()..])));
                }
                Located::Covers(range) => {
                    for (d, r) in &other.pairs[range] {
                        out.push((u.concat(&d.letters()[v.len()..]), r.clone()));
                    }
                }
            }
        }
        Ok(Self::from_sorted(self.arity, out))
    }

    /// The map restricted to `set ∩ domain`.
    pub fn restrict(&self, set: &ClopenSet) -> Result<PartialMap> {
        self.arity.check(set.arity())?;
        let mut out = Vec::new();
        for c in set.cones() {
            match locate(&self.pairs, c) {
                Located::Inside(i) => {
                    let (d, r) = &self.pairs[i];
                    out.push((c.clone(), r.concat(&c.letters()[d.len()..])));
                }
                Located::Covers(range) => out.extend_from_slice(&self.pairs[range]),
            }
        }
        Ok(Self::from_sorted(self.arity, out))
    }

    /// Image of `set ∩ domain`.
    pub fn image(&self, set: &ClopenSet) -> Result<ClopenSet> {
        Ok(self.restrict(set)?.range())
    }

    /// Union of two maps with disjoint domains and disjoint ranges.
    pub fn disjoint_union(&self, other: &PartialMap) -> Result<PartialMap> {
        self.arity.check(other.arity)?;
        let mut pairs = self.pairs.clone();
        pairs.extend_from_slice(&other.pairs);
        // re-split reduced pairs is unnecessary: overlap check works on cones
        PartialMap::new(self.arity, pairs)
    }

    pub fn max_depth(&self) -> usize {
        self.pairs
            .iter()
            .map(|(d, r)| d.len().max(r.len()))
            .max()
            .unwrap_or(0)
    }
}

impl fmt::Debug for PartialMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, (d, r)) in self.pairs.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{d:?}→{r:?}")?;
        }
        write!(f, "]")
    }
}

/// Result of a bounded order computation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OrderResult {
    Finite(u64),
    ExceedsBound(u64),
}

impl OrderResult {
    pub fn finite(self) -> Option<u64> {
        match self {
            OrderResult::Finite(k) => Some(k),
            OrderResult::ExceedsBound(_) => None,
        }
    }
}

/// Default bound for [`PrefixBijection::order`].
pub const DEFAULT_ORDER_BOUND: u64 = 1_000_000;

/// An element of `V_n`: a prefix map between two complete prefix codes.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "ElementJson", into = "ElementJson")]
pub struct PrefixBijection(PartialMap);

impl PrefixBijection {
    pub fn identity(arity: Arity) -> Self {
        PrefixBijection(PartialMap {
            arity,
            pairs: vec![(Word::root(), Word::root())],
        })
    }

    /// Builds an element from pairs whose domains and ranges both partition the space.
    pub fn from_pairs(arity: Arity, pairs: Vec<(Word, Word)>) -> Result<Self> {
        Self::from_partial(PartialMap::new(arity, pairs)?)
    }

    /// Promotes a partial map whose domain and range are the whole space.
    pub fn from_partial(map: PartialMap) -> Result<Self> {
        if !map.domain().is_full() {
            return Err(malformed("domain cones do not cover the space"));
        }
        if !map.range().is_full() {
            return Err(malformed("range cones do not cover the space"));
        }
        Ok(PrefixBijection(map))
    }

    /// Parses digit-string pairs such as `[("00","01"), ("01","00"), ("1","1")]`.
    pub fn parse<S: AsRef<str>>(arity: Arity, pairs: &[(S, S)]) -> Result<Self> {
        let pairs = pairs
            .iter()
            .map(|(d, r)| Ok((Word::parse(arity, d.as_ref())?, Word::parse(arity, r.as_ref())?)))
            .collect::<Result<Vec<_>>>()?;
        Self::from_pairs(arity, pairs)
    }

    /// Swaps the cones at `alpha` and `beta` by prefix replacement.
    pub fn transposition(arity: Arity, alpha: &Word, beta: &Word) -> Result<Self> {
        Self::cone_cycle(arity, &[alpha.clone(), beta.clone()])
    }

    /// The cycle `c0 → c1 → … → c0` of pairwise disjoint cones, identity elsewhere.
    pub fn cone_cycle(arity: Arity, cones: &[Word]) -> Result<Self> {
        for (i, a) in cones.iter().enumerate() {
            for b in &cones[i + 1..] {
                if a.comparable(b) {
                    return Err(precondition(format!(
                        "cones {a:?} and {b:?} are prefix-comparable"
                    )));
                }
            }
        }
        let moved = ClopenSet::canonicalize(arity, cones.iter().cloned())?;
        let mut pairs: Vec<(Word, Word)> = (0..cones.len())
            .map(|i| (cones[i].clone(), cones[(i + 1) % cones.len()].clone()))
            .collect();
        pairs.extend(moved.complement().cones().iter().map(|c| (c.clone(), c.clone())));
        Self::from_pairs(arity, pairs)
    }

    #[inline]
    pub fn arity(&self) -> Arity {
        self.0.arity
    }

    #[inline]
    pub fn pairs(&self) -> &[(Word, Word)] {
        &self.0.pairs
    }

    #[inline]
    pub fn as_partial(&self) -> &PartialMap {
        &self.0
    }

    /// Number of leaves of the reduced tree pair.
    pub fn size(&self) -> usize {
        self.0.pairs.len()
    }

    pub fn max_depth(&self) -> usize {
        self.0.max_depth()
    }

    pub fn is_identity(&self) -> bool {
        self.0.pairs.len() == 1 && self.0.pairs[0].0.is_root() && self.0.pairs[0].1.is_root()
    }

    pub fn apply(&self, w: &Word) -> Option<Word> {
        self.0.apply(w)
    }

    pub fn compose(&self, other: &PrefixBijection) -> Result<PrefixBijection> {
        Ok(PrefixBijection(self.0.compose(&other.0)?))
    }

    pub fn invert(&self) -> PrefixBijection {
        PrefixBijection(self.0.inverse())
    }

    /// `h⁻¹ self h`.
    pub fn conjugate(&self, h: &PrefixBijection) -> Result<PrefixBijection> {
        h.invert().compose(self)?.compose(h)
    }

    /// `self⁻¹ g⁻¹ self g`.
    pub fn commutator(&self, g: &PrefixBijection) -> Result<PrefixBijection> {
        self.invert()
            .compose(&g.invert())?
            .compose(self)?
            .compose(g)
    }

    /// Integer power; negative exponents use the inverse.
    pub fn pow(&self, k: i64) -> PrefixBijection {
        let base = if k < 0 { self.invert() } else { self.clone() };
        let mut e = k.unsigned_abs();
        let mut acc = PrefixBijection::identity(self.arity());
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.compose(&sq).expect("same arity");
            }
            e >>= 1;
            if e > 0 {
                sq = sq.compose(&sq).expect("same arity");
            }
        }
        acc
    }

    /// Closure of the set of moved points: the union of cones `d` with `d ↦ r`, `r ≠ d`.
    pub fn support(&self) -> ClopenSet {
        let moved: Vec<Word> = self
            .0
            .pairs
            .iter()
            .filter(|(d, r)| d != r)
            .map(|(d, _)| d.clone())
            .collect();
        ClopenSet::from_cones_unchecked(self.arity(), &moved)
    }

    pub fn image(&self, set: &ClopenSet) -> Result<ClopenSet> {
        self.0.image(set)
    }

    pub fn preimage(&self, set: &ClopenSet) -> Result<ClopenSet> {
        self.0.inverse().image(set)
    }

    pub fn restrict(&self, set: &ClopenSet) -> Result<PartialMap> {
        self.0.restrict(set)
    }

    /// Fixes every point of `set`.
    pub fn pointwise_stabilises(&self, set: &ClopenSet) -> Result<bool> {
        self.support().is_disjoint(set)
    }

    /// Agrees with `other` at every point of `set`.
    pub fn agrees_on(&self, other: &PrefixBijection, set: &ClopenSet) -> Result<bool> {
        Ok(self.restrict(set)? == other.restrict(set)?)
    }

    /// Least `k ≤ bound` with `self^k = 1`.
    ///
    /// Powers are built one step at a time. A power mapping some cone strictly
    /// inside itself (a domain word comparable to, but different from, its
    /// range word) certifies infinite order, which ends the search early.
    pub fn order(&self, bound: u64) -> OrderResult {
        let mut power = self.clone();
        for k in 1..=bound {
            if power.is_identity() {
                return OrderResult::Finite(k);
            }
            if power
                .pairs()
                .iter()
                .any(|(d, r)| d != r && d.comparable(r))
            {
                return OrderResult::ExceedsBound(bound);
            }
            power = power.compose(self).expect("same arity");
        }
        OrderResult::ExceedsBound(bound)
    }
}

impl fmt::Debug for PrefixBijection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(&self.0, f)
    }
}

#[derive(Serialize, Deserialize)]
struct ElementJson {
    n: usize,
    pairs: Vec<(String, String)>,
}

impl TryFrom<ElementJson> for PrefixBijection {
    type Error = Error;

    fn try_from(j: ElementJson) -> Result<Self> {
        let arity = Arity::new(j.n)?;
        PrefixBijection::parse(arity, &j.pairs)
    }
}

impl From<PrefixBijection> for ElementJson {
    fn from(e: PrefixBijection) -> Self {
        ElementJson {
            n: e.arity().get(),
            pairs: e
                .pairs()
                .iter()
                .map(|(d, r)| (d.to_string(), r.to_string()))
                .collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn n2() -> Arity {
        Arity::new(2).unwrap()
    }

    fn w(s: &str) -> Word {
        Word::parse(Arity::new(10).unwrap(), s).unwrap()
    }

    fn set(k: usize, cones: &[&str]) -> ClopenSet {
        ClopenSet::parse(Arity::new(k).unwrap(), cones).unwrap()
    }

    fn t(a: &str, b: &str) -> PrefixBijection {
        PrefixBijection::transposition(n2(), &w(a), &w(b)).unwrap()
    }

    #[test]
    fn transposition_basics() {
        assert_eq!(t("0", "10").support(), set(2, &["0", "10"]));
        assert_eq!(t("0", "10").order(100), OrderResult::Finite(2));
        let swap = PrefixBijection::parse(n2(), &[("0", "1"), ("1", "0")]).unwrap();
        assert_eq!(t("0", "1"), swap);
        assert!(PrefixBijection::transposition(n2(), &w("0"), &w("01")).is_err());
    }

    #[test]
    fn caret_reduction_is_applied() {
        let e = PrefixBijection::parse(n2(), &[("00", "00"), ("01", "01"), ("1", "1")]).unwrap();
        assert!(e.is_identity());
        let f = PrefixBijection::parse(n2(), &[("00", "10"), ("01", "11"), ("1", "0")]).unwrap();
        assert_eq!(f, t("0", "1"));
    }

    #[test]
    fn malformed_codes_rejected() {
        assert!(PrefixBijection::parse(n2(), &[("0", "0")]).is_err());
        assert!(PrefixBijection::parse(n2(), &[("0", "0"), ("1", "0")]).is_err());
        assert!(PrefixBijection::parse(n2(), &[("0", "0"), ("01", "1")]).is_err());
    }

    #[test]
    fn compose_and_invert() {
        let s = t("0", "1");
        assert!(s.compose(&s).unwrap().is_identity());
        let f = t("00", "01").compose(&t("00", "10")).unwrap();
        // 01 → 00 under the first swap, then 00 → 10
        assert_eq!(f.apply(&w("01")), Some(w("10")));
        assert_eq!(f.apply(&w("10")), Some(w("00")));
        assert!(f.compose(&f.invert()).unwrap().is_identity());
    }

    #[test]
    fn support_and_image() {
        assert!(PrefixBijection::identity(n2()).support().is_empty());
        assert_eq!(t("00", "01").support(), set(2, &["0"]));
        assert_eq!(t("0", "1").image(&set(2, &["0"])).unwrap(), set(2, &["1"]));
        assert_eq!(t("00", "1").image(&set(2, &["0"])).unwrap(), set(2, &["01", "1"]));
        assert_eq!(
            t("00", "1").image(&ClopenSet::full(n2())).unwrap(),
            ClopenSet::full(n2())
        );
    }

    #[test]
    fn commutator_examples() {
        let id = PrefixBijection::identity(n2());
        assert!(t("0", "10").commutator(&id).unwrap().is_identity());
        assert!(!t("00", "01").commutator(&t("01", "10")).unwrap().is_identity());
    }

    #[test]
    fn orders() {
        assert_eq!(PrefixBijection::identity(n2()).order(10), OrderResult::Finite(1));
        let c = PrefixBijection::cone_cycle(n2(), &[w("00"), w("01"), w("10")]).unwrap();
        assert_eq!(c.order(10), OrderResult::Finite(3));
        assert_eq!(c.order(2), OrderResult::ExceedsBound(2));
        // 0 → 00, pushing the cone 0 into itself: infinite order
        let g = PrefixBijection::parse(n2(), &[("0", "00"), ("10", "01"), ("11", "1")]).unwrap();
        assert_eq!(g.order(DEFAULT_ORDER_BOUND), OrderResult::ExceedsBound(DEFAULT_ORDER_BOUND));
    }

    #[test]
    fn pow_matches_iteration() {
        let c = PrefixBijection::cone_cycle(n2(), &[w("00"), w("01"), w("10"), w("11")]).unwrap();
        let mut acc = PrefixBijection::identity(n2());
        for k in 0..9 {
            assert_eq!(c.pow(k), acc);
            acc = acc.compose(&c).unwrap();
        }
        assert_eq!(c.pow(-1), c.invert());
    }

    #[test]
    fn pointwise_stabilisers() {
        assert!(t("00", "01").pointwise_stabilises(&set(2, &["1"])).unwrap());
        assert!(!t("0", "10").pointwise_stabilises(&set(2, &["1"])).unwrap());
        assert!(PrefixBijection::identity(n2())
            .pointwise_stabilises(&ClopenSet::full(n2()))
            .unwrap());
    }

    #[test]
    fn json_round_trip() {
        let e = t("00", "01");
        let j = serde_json::to_string(&e).unwrap();
        assert_eq!(j, r#"{"n":2,"pairs":[["00","01"],["01","00"],["1","1"]]}"#);
        let back: PrefixBijection = serde_json::from_str(&j).unwrap();
        assert_eq!(back, e);
    }
}
