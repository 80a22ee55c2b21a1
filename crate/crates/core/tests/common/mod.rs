//! Brute-force oracles and random instance builders shared by the test suites.
#![allow(dead_code)]

use rand::seq::SliceRandom;
use rand::Rng;

use vigor_core::orbit::orbit_map;
use vigor_core::sample;
use vigor_core::{Arity, ClopenSet, PrefixBijection, Word};

pub fn arity(n: usize) -> Arity {
    Arity::new(n).unwrap()
}

pub fn set(n: usize, cones: &[&str]) -> ClopenSet {
    ClopenSet::parse(arity(n), cones).unwrap()
}

/// All words of exactly `depth` letters, in lexicographic order.
pub fn words_at(a: Arity, depth: usize) -> Vec<Word> {
    let mut out = vec![Vec::new()];
    for _ in 0..depth {
        out = out
            .into_iter()
            .flat_map(|w: Vec<u8>| {
                (0..a.get() as u8).map(move |l| {
                    let mut v = w.clone();
                    v.push(l);
                    v
                })
            })
            .collect();
    }
    out.into_iter().map(|v| Word::new(a, v).unwrap()).collect()
}

/// Membership of every depth-`depth` cone in `s`, decided by prefixes alone.
pub fn table(s: &ClopenSet, depth: usize) -> Vec<bool> {
    assert!(depth >= s.max_depth());
    words_at(s.arity(), depth)
        .iter()
        .map(|w| s.cones().iter().any(|c| c.is_prefix_of(w)))
        .collect()
}

/// The set of depth-`depth` cones flagged in `bits`.
pub fn from_table(a: Arity, depth: usize, bits: &[bool]) -> ClopenSet {
    let ws = words_at(a, depth);
    ClopenSet::canonicalize(a, ws.into_iter().zip(bits).filter(|(_, &b)| b).map(|(w, _)| w)).unwrap()
}

/// Image prefix of every depth-`depth` cone.
pub fn eval_table(g: &PrefixBijection, depth: usize) -> Vec<Word> {
    words_at(g.arity(), depth)
        .iter()
        .map(|w| g.apply(w).expect("depth decides the image"))
        .collect()
}

/// Union of the depth-`depth` cones not sent onto themselves.
pub fn support_oracle(g: &PrefixBijection, depth: usize) -> ClopenSet {
    let ws = words_at(g.arity(), depth);
    let moved: Vec<Word> = ws
        .into_iter()
        .filter(|w| g.apply(w).as_ref() != Some(w))
        .collect();
    ClopenSet::canonicalize(g.arity(), moved).unwrap()
}

/// Image of `s` from the images of its depth-`depth` cones.
pub fn image_oracle(g: &PrefixBijection, s: &ClopenSet, depth: usize) -> ClopenSet {
    let inside: Vec<Word> = words_at(g.arity(), depth)
        .into_iter()
        .filter(|w| s.cones().iter().any(|c| c.is_prefix_of(w)))
        .map(|w| g.apply(&w).unwrap())
        .collect();
    ClopenSet::canonicalize(g.arity(), inside).unwrap()
}

/// `f` and `g` agree on every point of `s`: each cone of `s` is split until
/// both maps act on it by a single prefix replacement, then images compare.
pub fn agree_oracle(f: &PrefixBijection, g: &PrefixBijection, s: &ClopenSet) -> bool {
    let mut stack: Vec<Word> = s.cones().to_vec();
    while let Some(w) = stack.pop() {
        match (f.apply(&w), g.apply(&w)) {
            (Some(x), Some(y)) => {
                if x != y {
                    return false;
                }
            }
            _ => stack.extend(w.children(f.arity())),
        }
    }
    true
}

pub fn depth_of(gs: &[&PrefixBijection]) -> usize {
    gs.iter().map(|g| g.max_depth()).max().unwrap_or(0) + 1
}

/// Canonical sets with at most `max_cones` cones of depth at most `max_depth`, deduplicated.
pub fn small_sets(a: Arity, max_depth: usize, max_cones: usize) -> Vec<ClopenSet> {
    let words: Vec<Word> = (0..=max_depth).flat_map(|d| words_at(a, d)).collect();
    let mut out = std::collections::BTreeSet::new();
    let mut stack: Vec<(usize, Vec<Word>)> = vec![(0, Vec::new())];
    while let Some((start, chosen)) = stack.pop() {
        let s = ClopenSet::canonicalize(a, chosen.clone()).unwrap();
        if s.cones().len() <= max_cones {
            out.insert(s.cones().iter().map(|w| w.to_string()).collect::<Vec<_>>());
        }
        if chosen.len() == max_cones {
            continue;
        }
        for i in start..words.len() {
            if chosen.iter().any(|c| c.comparable(&words[i])) {
                continue;
            }
            let mut next = chosen.clone();
            next.push(words[i].clone());
            stack.push((i + 1, next));
        }
    }
    out.into_iter()
        .map(|cs| ClopenSet::parse(a, &cs).unwrap())
        .collect()
}

/// A random non-empty proper sub-collection of the cones of `s` refined one level.
pub fn proper_part<R: Rng>(rng: &mut R, s: &ClopenSet) -> ClopenSet {
    let cones = s.refine_to_depth(s.max_depth() + 1).unwrap();
    let k = rng.gen_range(1..cones.len());
    let mut picked = cones.clone();
    picked.shuffle(rng);
    picked.truncate(k);
    ClopenSet::canonicalize(s.arity(), picked).unwrap()
}

/// A random non-identity element.
pub fn nontrivial<R: Rng>(rng: &mut R, a: Arity) -> PrefixBijection {
    loop {
        let g = sample::element(rng, a, 4, 4);
        if !g.is_identity() {
            return g;
        }
    }
}

/// Pieces `(D_i, g_i)` with disjoint domains and disjoint images, both unions proper.
pub fn glue_instance<R: Rng>(rng: &mut R, a: Arity, pieces: usize) -> Vec<(ClopenSet, PrefixBijection)> {
    let depth = if a.get() == 2 { 3 } else { 2 };
    let cones = words_at(a, depth);
    let per = (cones.len() - 1) / pieces;
    let mut dom = cones.clone();
    let mut ran = cones;
    dom.shuffle(rng);
    ran.shuffle(rng);
    (0..pieces)
        .map(|i| {
            let k = rng.gen_range(1..=per.min(2));
            let d = ClopenSet::canonicalize(a, dom[i * per..i * per + k].to_vec()).unwrap();
            let r = ClopenSet::canonicalize(a, ran[i * per..i * per + k].to_vec()).unwrap();
            let scramble = sample::element_in(rng, &d, 2, depth + 2);
            let g = scramble.compose(&orbit_map(&d, &r).unwrap()).unwrap();
            let g = g.compose(&sample::element_in(rng, &r, 2, depth + 2)).unwrap();
            (d, g)
        })
        .collect()
}

/// Membership bitset over the depth-`depth` cones: a cone `w` of the set
/// covers the contiguous block of depth-`depth` words extending it.
pub fn bits(s: &ClopenSet, depth: usize) -> Vec<u64> {
    let n = s.arity().get();
    let total = n.pow(depth as u32);
    let mut out = vec![0u64; total.div_ceil(64)];
    for c in s.cones() {
        assert!(c.len() <= depth);
        let idx = c.letters().iter().fold(0usize, |acc, &l| acc * n + l as usize);
        let span = n.pow((depth - c.len()) as u32);
        for i in idx * span..(idx + 1) * span {
            out[i / 64] |= 1 << (i % 64);
        }
    }
    out
}

pub fn bits_full(a: Arity, depth: usize) -> Vec<u64> {
    bits(&ClopenSet::full(a), depth)
}
