//! Randomized witness constructions, each re-verified from its JSON alone.

mod common;

use common::*;
use rand::Rng;
use vigor_core::sample::{self, SampleRng};
use vigor_core::{orbit, twogen, verify_str, witness, ClopenSet, Outcome, WitnessReport};

fn verified(r: WitnessReport) {
    assert!(r.all_pass, "{}: {:?}", r.kind, r.failed().collect::<Vec<_>>());
    let v = verify_str(&serde_json::to_string(&r).unwrap()).unwrap();
    assert_eq!(v.outcome, Outcome::Pass, "{:?}", v.failed().collect::<Vec<_>>());
}

fn n_of(rng: &mut SampleRng) -> usize {
    [2, 2, 3, 4][rng.gen_range(0..4)]
}

#[test]
fn vigorous_random() {
    let mut rng = sample::rng(21);
    for _ in 0..100 {
        let a = arity(n_of(&mut rng));
        let big = if rng.gen_bool(0.3) { ClopenSet::full(a) } else { sample::proper_clopen(&mut rng, a, 3, 3) };
        let b = proper_part(&mut rng, &big);
        let c = proper_part(&mut rng, &big);
        let r = witness::vigorous_witness(&big, &b, &c).unwrap();
        let g = r.element("gamma").unwrap();
        let d = depth_of(&[g]).max(big.max_depth() + 1);
        assert!(support_oracle(g, d).is_subset(&big).unwrap());
        verified(r);
        verified(witness::flexible_to_vigorous_witness(&big, &b, &c).unwrap());
    }
}

#[test]
fn factorizations_random() {
    let mut rng = sample::rng(22);
    for _ in 0..100 {
        let a = arity(n_of(&mut rng));
        let u = sample::proper_clopen(&mut rng, a, 3, 3);
        let eta = sample::element_in(&mut rng, &u, 3, 5);
        verified(witness::ssgp_factor(&eta, &u).unwrap());

        let cones = ClopenSet::full(a).refine_to_depth(2).unwrap();
        let (c, d) = (ClopenSet::cone(a, cones[0].clone()), ClopenSet::cone(a, cones[1].clone()));
        let l = proper_part(&mut rng, &ClopenSet::full(a));
        let eta = sample::element_in(&mut rng, &l.complement(), 3, 5);
        verified(witness::split_by_stabilisers(&eta, &l, &c, &d).unwrap());

        let fix = ClopenSet::cone(a, cones[cones.len() - 1].clone());
        let eta = sample::element_in(&mut rng, &fix.complement(), 3, 5);
        verified(witness::acd_factor(&eta, &fix, &c, &d).unwrap());

        verified(witness::small_support_factor(&nontrivial(&mut rng, a)).unwrap());
    }
}

#[test]
fn minime_and_normal_closure_random() {
    let mut rng = sample::rng(23);
    for _ in 0..100 {
        let a = arity(n_of(&mut rng));
        let k = sample::proper_clopen(&mut rng, a, 3, 3);
        let i = proper_part(&mut rng, &k);
        let g = sample::element(&mut rng, a, 3, 4);
        verified(witness::minime_shrink_witness(&i, &k, &g).unwrap());

        let j = sample::proper_clopen(&mut rng, a, 3, 3);
        let mu = sample::element_in(&mut rng, &j, 3, 5);
        let nu = sample::element_in(&mut rng, &j, 3, 5);
        verified(witness::normal_closure_trick(&nontrivial(&mut rng, a), &mu, &nu, &j).unwrap());
    }
}

#[test]
fn glue_procedure_agrees_with_direct() {
    let mut rng = sample::rng(24);
    for _ in 0..100 {
        let a = arity([2, 3][rng.gen_range(0..2)]);
        let count = rng.gen_range(2..=4);
        let pieces = glue_instance(&mut rng, a, count);
        let direct = witness::glue_direct(&pieces).unwrap();
        let proc = witness::glue_procedure(&pieces).unwrap();
        for (d, g) in &pieces {
            assert!(agree_oracle(&direct, g, d));
            assert!(agree_oracle(&proc, g, d));
        }
        let r = witness::glue(&pieces).unwrap();
        assert!(r.elements.contains_key("chi_procedure"));
        verified(r);
    }
}

#[test]
fn orbit_reports_random() {
    let mut rng = sample::rng(25);
    for _ in 0..60 {
        let a = arity([2, 3, 5][rng.gen_range(0..3)]);
        let x = sample::proper_clopen(&mut rng, a, 3, 4);
        let y = sample::proper_clopen(&mut rng, a, 3, 4);
        verified(orbit::orbit_witness(&x, &y).unwrap());
        verified(orbit::set_add(&x, &y).unwrap());
        verified(orbit::zero_witness(&x).unwrap());
        verified(orbit::inverse_witness(&x).unwrap().1);
    }
}

#[test]
fn even_realization_random() {
    let mut rng = sample::rng(26);
    for _ in 0..30 {
        let a = arity(2);
        let base = set(2, &["000"]);
        let k = rng.gen_range(2..6);
        let blocks: Vec<ClopenSet> = words_at(a, 3).into_iter().take(k).map(|w| ClopenSet::cone(a, w)).collect();
        let ts: Vec<_> = blocks.iter().map(|b| orbit::orbit_map(&base, b).unwrap()).collect();
        let mut perm: Vec<usize> = (0..k).collect();
        rand::seq::SliceRandom::shuffle(&mut perm[..], &mut rng);
        let r = twogen::even_realization(&base, &ts, &perm).unwrap();
        let delta = r.element("delta").unwrap();
        for (i, b) in blocks.iter().enumerate() {
            assert_eq!(delta.image(b).unwrap(), blocks[perm[i]]);
        }
        verified(r);
    }
}
