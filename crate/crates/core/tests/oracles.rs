//! Clopen algebra and group arithmetic against brute-force refinement oracles.

mod common;

use common::*;
use rand::Rng;
use vigor_core::sample;
use vigor_core::{ClopenSet, PrefixBijection};

fn zip(a: &[u64], b: &[u64], f: impl Fn(u64, u64) -> u64) -> Vec<u64> {
    a.iter().zip(b).map(|(x, y)| f(*x, *y)).collect()
}

fn check_pair(x: &ClopenSet, y: &ClopenSet, depth: usize) {
    let (bx, by) = (bits(x, depth), bits(y, depth));
    let full = bits_full(x.arity(), depth);
    assert_eq!(bits(&x.union(y).unwrap(), depth), zip(&bx, &by, |a, b| a | b));
    assert_eq!(bits(&x.intersection(y).unwrap(), depth), zip(&bx, &by, |a, b| a & b));
    assert_eq!(bits(&x.difference(y).unwrap(), depth), zip(&bx, &by, |a, b| a & !b));
    let sub = bx.iter().zip(&by).all(|(a, b)| a & !b == 0);
    assert_eq!(x.is_subset(y).unwrap(), sub, "{x:?} ⊆ {y:?}");
    let disjoint = bx.iter().zip(&by).all(|(a, b)| a & b == 0);
    assert_eq!(x.is_disjoint(y).unwrap(), disjoint);
    assert_eq!(bits(&x.complement(), depth), zip(&bx, &full, |a, f| f & !a));
}

#[test]
fn binary_set_small_family_matches_tables() {
    let a = arity(2);
    let family = small_sets(a, 3, 3);
    for x in &family {
        for y in &family {
            check_pair(x, y, 6);
        }
    }
}

#[test]
fn membership_table_round_trips() {
    for n in [2, 3] {
        let a = arity(n);
        for s in small_sets(a, 2, 2) {
            let t = table(&s, 3);
            assert_eq!(from_table(a, 3, &t), s);
        }
    }
}

#[test]
fn canonical_form_is_unique() {
    // Equal tables force equal cone lists.
    let a = arity(3);
    let family = small_sets(a, 2, 3);
    let mut seen = std::collections::HashMap::new();
    for s in family {
        if let Some(prev) = seen.insert(bits(&s, 4), s.clone()) {
            panic!("{prev:?} and {s:?} share a table");
        }
    }
}

#[test]
fn random_pairs_match_tables() {
    let mut rng = sample::rng(11);
    for n in [2, 3] {
        let a = arity(n);
        for _ in 0..500 {
            let x = sample::clopen(&mut rng, a, 4, 5);
            let y = sample::clopen(&mut rng, a, 4, 5);
            check_pair(&x, &y, 5);
        }
    }
}

#[test]
fn composition_matches_point_evaluation() {
    let mut rng = sample::rng(3);
    for n in [2, 3] {
        let a = arity(n);
        for _ in 0..100 {
            let f = sample::element(&mut rng, a, 4, 4);
            let g = sample::element(&mut rng, a, 4, 4);
            let fg = f.compose(&g).unwrap();
            let d = depth_of(&[&f, &g, &fg]) + f.max_depth();
            for w in words_at(a, d) {
                let direct = g.apply(&f.apply(&w).unwrap());
                assert_eq!(fg.apply(&w), direct);
            }
        }
    }
}

#[test]
fn inverse_undoes_point_evaluation() {
    let mut rng = sample::rng(4);
    let a = arity(2);
    for _ in 0..100 {
        let f = sample::element(&mut rng, a, 5, 5);
        let inv = f.invert();
        for w in words_at(a, f.max_depth() + inv.max_depth()) {
            assert_eq!(inv.apply(&f.apply(&w).unwrap()).unwrap(), w);
        }
    }
}

#[test]
fn support_and_image_match_oracles() {
    let mut rng = sample::rng(5);
    for n in [2, 3] {
        let a = arity(n);
        for _ in 0..100 {
            let f = sample::element(&mut rng, a, 4, 4);
            let s = sample::clopen(&mut rng, a, 3, 3);
            let d = depth_of(&[&f]).max(s.max_depth());
            assert_eq!(f.support(), support_oracle(&f, d));
            assert_eq!(f.image(&s).unwrap(), image_oracle(&f, &s, d));
        }
    }
}

#[test]
fn equality_iff_tables_agree() {
    let mut rng = sample::rng(6);
    let a = arity(2);
    for _ in 0..200 {
        let f = sample::element(&mut rng, a, 3, 3);
        let g = if rng.gen_bool(0.5) {
            let h = sample::element(&mut rng, a, 3, 3);
            f.compose(&h).unwrap().compose(&h.invert()).unwrap()
        } else {
            sample::element(&mut rng, a, 3, 3)
        };
        let d = depth_of(&[&f, &g]);
        assert_eq!(f == g, eval_table(&f, d) == eval_table(&g, d));
    }
}

#[test]
fn refined_pairs_reduce_to_the_same_element() {
    let a = arity(2);
    let f = PrefixBijection::parse(a, &[("0", "11"), ("10", "0"), ("11", "10")]).unwrap();
    let refined = PrefixBijection::parse(
        a,
        &[("00", "110"), ("01", "111"), ("100", "00"), ("101", "01"), ("11", "10")],
    )
    .unwrap();
    assert_eq!(f, refined);
}
