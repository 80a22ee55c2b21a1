//! Group words, word maps, ping-pong free pairs and lawlessness witnesses.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::cantor::{Arity, ClopenSet, Word};
use crate::error::{malformed, precondition, Error, Result};
use crate::prefix_map::PrefixBijection;
use crate::report::{Checks, Condition};
use crate::sample;
use crate::witness::vigorous;

/// One letter `x_var` or `x_var⁻¹`; variables are numbered from 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub var: u32,
    pub inverse: bool,
}

impl Letter {
    pub fn new(var: u32, inverse: bool) -> Self {
        Letter { var, inverse }
    }

    pub fn inv(self) -> Self {
        Letter { var: self.var, inverse: !self.inverse }
    }

    fn cancels(self, other: Letter) -> bool {
        self.var == other.var && self.inverse != other.inverse
    }
}

/// A freely reduced word.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct GroupWord(Vec<Letter>);

impl GroupWord {
    pub fn identity() -> Self {
        GroupWord(Vec::new())
    }

    /// Rejects empty or non-reduced letter sequences.
    pub fn new(letters: Vec<Letter>) -> Result<Self> {
        if letters.is_empty() {
            return Err(malformed("empty word; use the identity word explicitly"));
        }
        if letters.iter().any(|l| l.var == 0) {
            return Err(malformed("variables are numbered from 1"));
        }
        if letters.windows(2).any(|p| p[0].cancels(p[1])) {
            return Err(malformed("word is not freely reduced"));
        }
        Ok(GroupWord(letters))
    }

    /// Free reduction of an arbitrary letter sequence.
    pub fn reduce(letters: impl IntoIterator<Item = Letter>) -> Self {
        let mut out: Vec<Letter> = Vec::new();
        for l in letters {
            if out.last().is_some_and(|&p| p.cancels(l)) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        GroupWord(out)
    }

    /// `[x_a, x_b] = x_a⁻¹ x_b⁻¹ x_a x_b`.
    pub fn commutator(a: u32, b: u32) -> Result<Self> {
        Self::new(vec![
            Letter::new(a, true),
            Letter::new(b, true),
            Letter::new(a, false),
            Letter::new(b, false),
        ])
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_identity(&self) -> bool {
        self.0.is_empty()
    }

    pub fn num_vars(&self) -> u32 {
        self.0.iter().map(|l| l.var).max().unwrap_or(0)
    }

    pub fn inverse(&self) -> Self {
        GroupWord(self.0.iter().rev().map(|l| l.inv()).collect())
    }

    pub fn concat(&self, other: &GroupWord) -> Self {
        Self::reduce(self.0.iter().chain(&other.0).copied())
    }

    /// Replaces each `x_i` by `images[i − 1]` and reduces.
    pub fn substitute(&self, images: &[GroupWord]) -> Result<GroupWord> {
        let mut out = Vec::new();
        for l in &self.0 {
            let img = images
                .get(l.var as usize - 1)
                .ok_or_else(|| precondition(format!("no image for x{}", l.var)))?;
            if l.inverse {
                out.extend(img.inverse().0);
            } else {
                out.extend_from_slice(&img.0);
            }
        }
        Ok(Self::reduce(out))
    }
}

impl fmt::Display for GroupWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let mut first = true;
        let mut i = 0;
        while i < self.0.len() {
            let l = self.0[i];
            let mut run = 1;
            while i + run < self.0.len() && self.0[i + run] == l {
                run += 1;
            }
            if !first {
                write!(f, ".")?;
            }
            first = false;
            let e = if l.inverse { -(run as i64) } else { run as i64 };
            if e == 1 {
                write!(f, "x{}", l.var)?;
            } else {
                write!(f, "x{}^{e}", l.var)?;
            }
            i += run;
        }
        Ok(())
    }
}

impl fmt::Debug for GroupWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for GroupWord {
    type Err = Error;

    /// Dot-separated powers such as `x1^2.x2^-1`; `1` is the identity word.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "1" {
            return Ok(GroupWord::identity());
        }
        let mut letters = Vec::new();
        for tok in s.split('.') {
            let tok = tok.trim();
            let (var, exp) = match tok.split_once('^') {
                Some((v, e)) => (v, e.parse::<i64>().map_err(|_| malformed(format!("bad exponent in `{tok}`")))?),
                None => (tok, 1),
            };
            let var: u32 = var
                .strip_prefix('x')
                .and_then(|v| v.parse().ok())
                .ok_or_else(|| malformed(format!("bad letter `{tok}`")))?;
            if exp == 0 {
                return Err(malformed(format!("zero exponent in `{tok}`")));
            }
            let l = Letter::new(var, exp < 0);
            letters.extend(std::iter::repeat_n(l, exp.unsigned_abs() as usize));
        }
        GroupWord::new(letters)
    }
}

impl TryFrom<String> for GroupWord {
    type Error = Error;
    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<GroupWord> for String {
    fn from(w: GroupWord) -> String {
        w.to_string()
    }
}

/// Multiplies the word out left to right with `x_i ↦ tuple[i − 1]`.
pub fn evaluate_word(w: &GroupWord, tuple: &[PrefixBijection]) -> Result<PrefixBijection> {
    let Some(first) = tuple.first() else {
        return Err(precondition("empty tuple"));
    };
    let mut acc = PrefixBijection::identity(first.arity());
    let mut inverses: Vec<Option<PrefixBijection>> = vec![None; tuple.len()];
    for l in w.letters() {
        let i = l.var as usize - 1;
        let g = tuple
            .get(i)
            .ok_or_else(|| precondition(format!("no element for x{}", l.var)))?;
        if l.inverse {
            let inv = inverses[i].get_or_insert_with(|| g.invert());
            acc = acc.compose(inv)?;
        } else {
            acc = acc.compose(g)?;
        }
    }
    Ok(acc)
}

/// Number of non-empty reduced words of length at most `depth` in two letters.
pub fn reduced_word_count(depth: u32) -> u64 {
    if depth == 0 {
        0
    } else {
        2 * (3u64.pow(depth) - 1)
    }
}

/// Depth-first walk over all reduced words of length `1..=depth` in `a`, `b`;
/// returns the number checked and the first word that evaluates to the identity.
pub fn first_relation(a: &PrefixBijection, b: &PrefixBijection, depth: u32) -> Result<(u64, Option<GroupWord>)> {
    let gens = [a.clone(), a.invert(), b.clone(), b.invert()];
    let letters = [
        Letter::new(1, false),
        Letter::new(1, true),
        Letter::new(2, false),
        Letter::new(2, true),
    ];
    let mut count = 0u64;
    let mut path: Vec<usize> = Vec::new();
    // stack of (prefix product, next generator index to try)
    let mut stack: Vec<(PrefixBijection, usize)> = vec![(PrefixBijection::identity(a.arity()), 0)];
    while let Some((prod, next)) = stack.last_mut() {
        if *next == 4 || path.len() == depth as usize {
            stack.pop();
            path.pop();
            continue;
        }
        let g = *next;
        *next += 1;
        if path.last().is_some_and(|&p| p ^ 1 == g) {
            continue;
        }
        let extended = prod.compose(&gens[g])?;
        count += 1;
        path.push(g);
        if extended.is_identity() {
            let w = GroupWord::new(path.iter().map(|&i| letters[i]).collect())?;
            return Ok((count, Some(w)));
        }
        stack.push((extended, 0));
    }
    Ok((count, None))
}

pub const DEFAULT_WORD_DEPTH: u32 = 8;

/// Ping-pong certificate for the pair `gamma`, `partner = gamma^(tau⁻¹)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FreenessCertificate {
    pub kind: String,
    pub a: ClopenSet,
    pub b: ClopenSet,
    pub c: ClopenSet,
    pub d: ClopenSet,
    pub gamma: PrefixBijection,
    pub tau: PrefixBijection,
    pub partner: PrefixBijection,
    pub word_depth: u32,
    pub words_checked: u64,
    pub conditions: Vec<Condition>,
    pub verdict: String,
}

fn check_partition(blocks: &[&ClopenSet]) -> Result<bool> {
    let arity = blocks[0].arity();
    let mut seen = ClopenSet::empty(arity);
    for b in blocks {
        if !b.is_proper() || !seen.is_disjoint(b)? {
            return Ok(false);
        }
        seen = seen.union(b)?;
    }
    Ok(seen.is_full())
}

impl FreenessCertificate {
    /// Recomputes every condition from the certificate fields.
    pub fn recheck(&self) -> Vec<Condition> {
        let mut c = Checks::default();
        let blocks = [&self.a, &self.b, &self.c, &self.d];
        c.check("A, B, C, D partition the space into proper sets", check_partition(&blocks));
        c.check("gamma fixes A pointwise", self.gamma.pointwise_stabilises(&self.a));
        c.check("tau fixes A pointwise", self.tau.pointwise_stabilises(&self.a));
        c.check(
            "(C ∪ D)·gamma ⊆ D",
            self.c
                .union(&self.d)
                .and_then(|x| self.gamma.image(&x))
                .and_then(|x| x.is_subset(&self.d)),
        );
        c.check(
            "(B ∪ D)·tau ⊆ C",
            self.b
                .union(&self.d)
                .and_then(|x| self.tau.image(&x))
                .and_then(|x| x.is_subset(&self.c)),
        );
        c.check(
            "partner = gamma^(tau⁻¹)",
            self.gamma.conjugate(&self.tau.invert()).map(|x| x == self.partner),
        );
        let expected = reduced_word_count(self.word_depth);
        c.check(
            format!("words_checked = {expected}"),
            Ok(self.words_checked == expected),
        );
        let walk = first_relation(&self.gamma, &self.partner, self.word_depth);
        c.check(
            format!(
                "all reduced words of length ≤ {} in gamma, partner are non-identity",
                self.word_depth
            ),
            walk.map(|(n, rel)| n == expected && rel.is_none()),
        );
        let verdict_ok = c.all_pass() == (self.verdict == "certified");
        c.check(format!("verdict `{}` matches the checks", self.verdict), Ok(verdict_ok));
        c.0
    }
}

/// Default blocks `{00}`, `{01}`, `{10}` and the rest.
pub fn default_blocks(arity: Arity) -> [ClopenSet; 4] {
    let cone = |s: &[u8]| ClopenSet::cone(arity, Word::from_vec(s.to_vec()));
    let (a, b, c) = (cone(&[0, 0]), cone(&[0, 1]), cone(&[1, 0]));
    let d = a.union(&b).and_then(|x| x.union(&c)).expect("same arity").complement();
    [a, b, c, d]
}

pub fn pingpong_pair(blocks: &[ClopenSet], word_depth: u32) -> Result<FreenessCertificate> {
    let [a, b, c, d] = blocks else {
        return Err(precondition(format!("need four blocks, got {}", blocks.len())));
    };
    for s in [b, c, d] {
        a.arity().check(s.arity())?;
    }
    if !check_partition(&[a, b, c, d])? {
        return Err(precondition("blocks must partition the space into proper sets"));
    }
    let off = a.complement();
    let gamma = vigorous(&off, &c.union(d)?, d)?;
    let tau = vigorous(&off, &b.union(d)?, c)?;
    let partner = gamma.conjugate(&tau.invert())?;
    let mut cert = FreenessCertificate {
        kind: "freeness".into(),
        a: a.clone(),
        b: b.clone(),
        c: c.clone(),
        d: d.clone(),
        gamma,
        tau,
        partner,
        word_depth,
        words_checked: reduced_word_count(word_depth),
        conditions: Vec::new(),
        verdict: "certified".into(),
    };
    cert.conditions = cert.recheck();
    if cert.conditions.iter().any(|c| !c.pass) {
        cert.verdict = "failed".into();
        cert.conditions = cert.recheck();
    }
    Ok(cert)
}

/// A tuple on which `w` does not vanish, from the free pair by `x_i ↦ a⁻ⁱ b aⁱ`.
pub fn lawlessness_witness(
    arity: Arity,
    w: &GroupWord,
) -> Result<(Vec<PrefixBijection>, PrefixBijection)> {
    if w.is_identity() {
        return Err(precondition("the identity word is a law"));
    }
    let blocks = default_blocks(arity);
    let off = blocks[0].complement();
    let gamma = vigorous(&off, &blocks[2].union(&blocks[3])?, &blocks[3])?;
    let tau = vigorous(&off, &blocks[1].union(&blocks[3])?, &blocks[2])?;
    let b = gamma.conjugate(&tau.invert())?;
    let a = gamma;
    let tuple: Vec<PrefixBijection> = (1..=w.num_vars() as i64)
        .map(|i| b.conjugate(&a.pow(i)))
        .collect::<Result<_>>()?;
    let value = evaluate_word(w, &tuple)?;
    if value.is_identity() {
        return Err(Error::Bound(format!("word {w} vanished on the free pair")));
    }
    Ok((tuple, value))
}

/// The `x_i ↦ a⁻ⁱ b aⁱ` image of `w` as a word in `x1 = a`, `x2 = b`.
pub fn free_image(w: &GroupWord) -> Result<GroupWord> {
    let a = Letter::new(1, false);
    let b = Letter::new(2, false);
    let images: Vec<GroupWord> = (1..=w.num_vars() as usize)
        .map(|i| {
            let mut ls = vec![a.inv(); i];
            ls.push(b);
            ls.extend(std::iter::repeat_n(a, i));
            GroupWord(ls)
        })
        .collect();
    w.substitute(&images)
}

/// `w` evaluated on `x_i ↦ b^(a^i)` for the ping-pong pair `a`, `b`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LawlessnessCertificate {
    pub kind: String,
    pub word: GroupWord,
    pub a: PrefixBijection,
    pub b: PrefixBijection,
    pub tuple: Vec<PrefixBijection>,
    pub value: PrefixBijection,
    pub conditions: Vec<Condition>,
}

impl LawlessnessCertificate {
    pub fn new(arity: Arity, w: &GroupWord) -> Result<Self> {
        let (tuple, value) = lawlessness_witness(arity, w)?;
        let pp = pingpong_pair(&default_blocks(arity), 0)?;
        let mut cert = LawlessnessCertificate {
            kind: "lawlessness".into(),
            word: w.clone(),
            a: pp.gamma,
            b: pp.partner,
            tuple,
            value,
            conditions: Vec::new(),
        };
        cert.conditions = cert.recheck();
        Ok(cert)
    }

    pub fn recheck(&self) -> Vec<Condition> {
        let mut c = Checks::default();
        c.check(
            "one tuple entry per variable",
            Ok(self.tuple.len() == self.word.num_vars() as usize),
        );
        for (i, t) in self.tuple.iter().enumerate() {
            let k = i as i64 + 1;
            c.check(
                format!("x{k} = b^(a^{k})"),
                self.b.conjugate(&self.a.pow(k)).map(|x| &x == t),
            );
        }
        c.check(
            format!("value = {} on the tuple", self.word),
            evaluate_word(&self.word, &self.tuple).map(|x| x == self.value),
        );
        c.check(
            "value = the free image of the word in a, b",
            free_image(&self.word)
                .and_then(|fw| evaluate_word(&fw, &[self.a.clone(), self.b.clone()]))
                .map(|x| x == self.value),
        );
        c.check("value is not the identity", Ok(!self.value.is_identity()));
        c.0
    }
}

/// Values of `w` on random tuples fixing `a` pointwise.
pub fn verbal_small_sample(w: &GroupWord, a: &ClopenSet, seed: u64, count: usize) -> Result<Vec<PrefixBijection>> {
    if !a.is_proper() {
        return Err(precondition("A must be proper and non-empty"));
    }
    let mut rng = sample::rng(seed);
    let off = a.complement();
    let vars = w.num_vars().max(1) as usize;
    (0..count)
        .map(|_| {
            let tuple: Vec<PrefixBijection> = (0..vars)
                .map(|_| sample::element_in(&mut rng, &off, 4, off.max_depth() + 3))
                .collect();
            evaluate_word(w, &tuple)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn n2() -> Arity {
        Arity::new(2).unwrap()
    }

    #[test]
    fn parse_and_print() {
        let w: GroupWord = "x1^2.x2^-1".parse().unwrap();
        assert_eq!(w.len(), 3);
        assert_eq!(w.to_string(), "x1^2.x2^-1");
        assert!("x1.x1^-1".parse::<GroupWord>().is_err());
        assert!("x0".parse::<GroupWord>().is_err());
        assert!("1".parse::<GroupWord>().unwrap().is_identity());
    }

    #[test]
    fn commutator_with_identity_vanishes() {
        let f = PrefixBijection::transposition(n2(), &Word::from_vec(vec![0]), &Word::from_vec(vec![1, 0])).unwrap();
        let w = GroupWord::commutator(1, 2).unwrap();
        assert!(evaluate_word(&w, &[f, PrefixBijection::identity(n2())]).unwrap().is_identity());
    }

    #[test]
    fn free_image_is_reduced_and_nontrivial() {
        let w: GroupWord = "x1.x2.x1^-1.x2^-1".parse().unwrap();
        let img = free_image(&w).unwrap();
        assert!(!img.is_identity());
        assert_eq!(img.num_vars(), 2);
    }

    #[test]
    fn pingpong_small_depth() {
        let cert = pingpong_pair(&default_blocks(n2()), 4).unwrap();
        assert_eq!(cert.verdict, "certified", "{:?}", cert.conditions);
        assert_eq!(cert.words_checked, 160);
        let w: GroupWord = "x1.x2.x1^-1.x2^-1".parse().unwrap();
        let v = evaluate_word(&w, &[cert.gamma.clone(), cert.partner.clone()]).unwrap();
        assert!(!v.is_identity());
        assert!(pingpong_pair(&default_blocks(n2())[..3], 4).is_err());
    }

    #[test]
    fn lawless_examples() {
        for s in ["x1", "x1.x2.x1^-1.x2^-1", "x1^2.x2^3.x1^-1"] {
            let w: GroupWord = s.parse().unwrap();
            let (tuple, v) = lawlessness_witness(n2(), &w).unwrap();
            assert_eq!(evaluate_word(&w, &tuple).unwrap(), v);
            assert!(!v.is_identity());
        }
    }

    #[test]
    fn verbal_samples_fix_a() {
        let a = ClopenSet::parse(n2(), &["1"]).unwrap();
        let w: GroupWord = "x1".parse().unwrap();
        for g in verbal_small_sample(&w, &a, 0, 20).unwrap() {
            assert!(g.pointwise_stabilises(&a).unwrap());
        }
    }
}
