//! Seeded random clopen sets and elements, for tests, benches and sampling verbs.

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::cantor::{Arity, ClopenSet, Word};
use crate::prefix_map::{PartialMap, PrefixBijection};

pub type SampleRng = ChaCha8Rng;

pub fn rng(seed: u64) -> SampleRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Splits `splits` randomly chosen cones of the list (each split adds `n − 1` cones).
fn subdivide<R: Rng>(rng: &mut R, cones: &mut Vec<Word>, arity: Arity, splits: usize, max_depth: usize) {
    for _ in 0..splits {
        let shallow: Vec<usize> = (0..cones.len()).filter(|&i| cones[i].len() < max_depth).collect();
        let idx = match shallow.choose(rng) {
            Some(&i) => i,
            None => rng.gen_range(0..cones.len()),
        };
        let w = cones.remove(idx);
        cones.extend(w.children(arity));
    }
}

/// A random clopen set built from up to `max_cones` random cones of depth `1..=max_depth`.
pub fn clopen<R: Rng>(rng: &mut R, arity: Arity, max_depth: usize, max_cones: usize) -> ClopenSet {
    let count = rng.gen_range(1..=max_cones.max(1));
    let words = (0..count).map(|_| {
        let len = rng.gen_range(1..=max_depth.max(1));
        Word::from_vec((0..len).map(|_| rng.gen_range(0..arity.get() as u8)).collect())
    });
    ClopenSet::canonicalize(arity, words).expect("letters in range")
}

/// A random proper non-empty clopen set.
pub fn proper_clopen<R: Rng>(rng: &mut R, arity: Arity, max_depth: usize, max_cones: usize) -> ClopenSet {
    loop {
        let s = clopen(rng, arity, max_depth, max_cones);
        if s.is_proper() {
            return s;
        }
    }
}

/// A random element supported in `set`: both cone lists of the set are
/// subdivided the same number of times, then matched by a random bijection.
pub fn element_in<R: Rng>(rng: &mut R, set: &ClopenSet, max_splits: usize, max_depth: usize) -> PrefixBijection {
    let arity = set.arity();
    let fixed = PartialMap::identity_on(&set.complement());
    if set.is_empty() {
        return PrefixBijection::identity(arity);
    }
    let splits = rng.gen_range(0..=max_splits);
    let mut dom = set.cones().to_vec();
    let mut ran = set.cones().to_vec();
    subdivide(rng, &mut dom, arity, splits, max_depth);
    subdivide(rng, &mut ran, arity, splits, max_depth);
    ran.shuffle(rng);
    let moving = PartialMap::from_cone_lists(arity, &dom, &ran).expect("equal counts");
    PrefixBijection::from_partial(moving.disjoint_union(&fixed).expect("disjoint"))
        .expect("complete codes")
}

/// A random element of `V_n`.
pub fn element<R: Rng>(rng: &mut R, arity: Arity, max_splits: usize, max_depth: usize) -> PrefixBijection {
    element_in(rng, &ClopenSet::full(arity), max_splits, max_depth)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn samples_respect_support() {
        let mut r = rng(7);
        for k in [2, 3, 5] {
            let arity = Arity::new(k).unwrap();
            for _ in 0..50 {
                let s = proper_clopen(&mut r, arity, 3, 3);
                let g = element_in(&mut r, &s, 4, 5);
                assert!(g.support().is_subset(&s).unwrap());
            }
        }
    }

    #[test]
    fn seeded_samples_repeat() {
        let arity = Arity::new(3).unwrap();
        let a = element(&mut rng(11), arity, 5, 4);
        let b = element(&mut rng(11), arity, 5, 4);
        assert_eq!(a, b);
    }
}
