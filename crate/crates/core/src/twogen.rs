//! Two-generation pipeline: an element `sigma` of finite order and `zeta` of
//! the target order whose commutator pattern recovers a chosen generating
//! family of a pointwise stabiliser.

use std::collections::{BTreeSet, HashMap, VecDeque};

use serde::{Deserialize, Serialize};

use crate::cantor::{Arity, ClopenSet, Word};
use crate::error::{precondition, Result};
use crate::orbit::{carve, class_of, orbit_map, partition_with, OrbitClass};
use crate::prefix_map::{PartialMap, PrefixBijection, DEFAULT_ORDER_BOUND};
use crate::report::{Checks, Condition, WitnessReport};
use crate::witness::glue_direct;
use crate::words::{evaluate_word, GroupWord, Letter};

/// `{xu − i : x ∈ [1, j], u ∈ {1, j+1}} ∩ {yv − i(j+1) : y ∈ [1, j], v ∈ {1, j+1}}`.
pub fn lemma_num_check(j: i64, i: i64) -> Result<BTreeSet<i64>> {
    if j < 1 || i < 1 || i > j {
        return Err(precondition(format!("need 1 ≤ i ≤ j, got i = {i}, j = {j}")));
    }
    let spread = |shift: i64| -> BTreeSet<i64> {
        (1..=j)
            .flat_map(|x| [x - shift, x * (j + 1) - shift])
            .collect()
    };
    let left = spread(i);
    let right = spread(i * (j + 1));
    Ok(left.intersection(&right).copied().collect())
}

// Permutations of `0..len`, composed left to right: `(p then q)[i] = q[p[i]]`.

fn then(p: &[usize], q: &[usize]) -> Vec<usize> {
    p.iter().map(|&i| q[i]).collect()
}

fn is_permutation(p: &[usize]) -> bool {
    let mut seen = vec![false; p.len()];
    p.iter().all(|&i| i < p.len() && !std::mem::replace(&mut seen[i], true))
}

fn cycles(p: &[usize]) -> Vec<Vec<usize>> {
    let mut seen = vec![false; p.len()];
    let mut out = Vec::new();
    for s in 0..p.len() {
        if seen[s] {
            continue;
        }
        let mut cyc = vec![s];
        seen[s] = true;
        let mut t = p[s];
        while t != s {
            seen[t] = true;
            cyc.push(t);
            t = p[t];
        }
        out.push(cyc);
    }
    out
}

fn is_even(p: &[usize]) -> bool {
    cycles(p).iter().map(|c| c.len() - 1).sum::<usize>() % 2 == 0
}

fn perm_order(p: &[usize]) -> u64 {
    cycles(p).iter().fold(1, |acc, c| lcm(acc, c.len() as u64))
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 { a } else { gcd(b, a % b) }
}

pub fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

/// 3-cycles `[a, b, c]` (`a → b → c → a`) whose left-to-right product is `p`.
fn three_cycles(p: &[usize]) -> Vec<[usize; 3]> {
    let mut swaps = Vec::new();
    for cyc in cycles(p) {
        for &t in &cyc[1..] {
            swaps.push((cyc[0], t));
        }
    }
    let mut out = Vec::new();
    for pair in swaps.chunks(2) {
        let [(a, b), (c, d)] = [pair[0], pair[1]];
        // (s x)(s y) = (s x y); disjoint (a b)(c d) = (a b c)(c a d)
        if a == c {
            out.push([a, b, d]);
        } else if a == d {
            out.push([a, b, c]);
        } else if b == c {
            out.push([b, a, d]);
        } else if b == d {
            out.push([b, a, c]);
        } else {
            out.push([a, b, c]);
            out.push([c, a, d]);
        }
    }
    out
}

fn three_cycle_perm(len: usize, [a, b, c]: [usize; 3]) -> Vec<usize> {
    let mut p: Vec<usize> = (0..len).collect();
    p[a] = b;
    p[b] = c;
    p[c] = a;
    p
}

/// The 3-cycle of blocks `C·ga → C·gb → C·gc`, as a commutator of two
/// block swaps. When the three blocks fill the space, `C` is split first.
fn realize_three(c: &ClopenSet, ga: &PrefixBijection, gb: &PrefixBijection, gc: &PrefixBijection) -> Result<PrefixBijection> {
    let (ba, bb, bc) = (ga.image(c)?, gb.image(c)?, gc.image(c)?);
    if ba.union(&bb)?.union(&bc)?.is_full() {
        let d = ClopenSet::cone(c.arity(), c.cones()[0].child(0));
        let rest = c.difference(&d)?;
        return realize_three(&d, ga, gb, gc)?.compose(&realize_three(&rest, ga, gb, gc)?);
    }
    let step = |x: &PrefixBijection, y: &PrefixBijection| x.invert().compose(y);
    let mu = glue_direct(&[(ba, step(ga, gb)?), (bb.clone(), step(gb, ga)?)])?;
    let nu = glue_direct(&[(bb, step(gb, gc)?), (bc, step(gc, gb)?)])?;
    mu.commutator(&nu)
}

fn realize_even(c: &ClopenSet, translates: &[PrefixBijection], perm: &[usize]) -> Result<PrefixBijection> {
    let mut delta = PrefixBijection::identity(c.arity());
    let mut reached: Vec<usize> = (0..perm.len()).collect();
    for cyc in three_cycles(perm) {
        let [a, b, cc] = cyc;
        delta = delta.compose(&realize_three(c, &translates[a], &translates[b], &translates[cc])?)?;
        reached = then(&reached, &three_cycle_perm(perm.len(), cyc));
    }
    debug_assert_eq!(reached, perm);
    Ok(delta)
}

/// An element supported in `⋃ C·γ` acting as `γ_i⁻¹·γ_{perm[i]}` on each
/// block `C·γ_i`. An odd `perm` needs an even class for `C`: the family is
/// then doubled along a half `C₀` of `C`, which makes the permutation even.
pub fn even_realize(c: &ClopenSet, translates: &[PrefixBijection], perm: &[usize]) -> Result<PrefixBijection> {
    if translates.len() != perm.len() || !is_permutation(perm) {
        return Err(precondition("perm must be a permutation of the translates"));
    }
    let cls = class_of(c)?;
    let mut seen = ClopenSet::empty(c.arity());
    for t in translates {
        let block = t.image(c)?;
        if !seen.is_disjoint(&block)? {
            return Err(precondition("translated blocks overlap"));
        }
        seen = seen.union(&block)?;
    }
    if is_even(perm) {
        return realize_even(c, translates, perm);
    }
    let Some(half) = cls.half() else {
        return Err(precondition("odd permutation on a class that is not even"));
    };
    let (c0, c1) = carve(c, half)?;
    let tau = orbit_map(&c0, &c1)?;
    let mut doubled = translates.to_vec();
    for g in translates {
        doubled.push(tau.compose(g)?);
    }
    let k = perm.len();
    let doubled_perm: Vec<usize> = perm.iter().copied().chain(perm.iter().map(|p| p + k)).collect();
    realize_even(&c0, &doubled, &doubled_perm)
}

pub fn even_realization(c: &ClopenSet, translates: &[PrefixBijection], perm: &[usize]) -> Result<WitnessReport> {
    let delta = even_realize(c, translates, perm)?;
    let mut rep = WitnessReport::new("even_realization")
        .with_set("C", c.clone())
        .with_element("delta", delta);
    for (i, (t, p)) in translates.iter().zip(perm).enumerate() {
        rep = rep
            .with_element(format!("translate{i}"), t.clone())
            .with_value(format!("perm{i}"), *p as i64);
    }
    Ok(rep.seal())
}

/// The element moving cone `points[i]` onto `points[perm[i]]` by prefix
/// replacement, identity off the points.
fn cone_permutation(arity: Arity, points: &[Word], perm: &[usize]) -> Result<PrefixBijection> {
    let to: Vec<Word> = perm.iter().map(|&i| points[i].clone()).collect();
    let moved = PartialMap::from_cone_lists(arity, points, &to)?;
    let rest = PartialMap::identity_on(&moved.domain().complement());
    PrefixBijection::from_partial(moved.disjoint_union(&rest)?)
}

/// Reads `g` as a permutation of the cones `points`, if it is one.
fn as_cone_permutation(g: &PrefixBijection, points: &[Word]) -> Option<Vec<usize>> {
    let index: HashMap<&Word, usize> = points.iter().enumerate().map(|(i, w)| (w, i)).collect();
    let perm: Vec<usize> = points
        .iter()
        .map(|p| g.apply(p).and_then(|w| index.get(&w).copied()))
        .collect::<Option<_>>()?;
    let inside = ClopenSet::canonicalize(g.arity(), points.to_vec()).ok()?;
    g.support().is_subset(&inside).ok()?.then_some(perm)
}

fn all_permutations(m: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut p: Vec<usize> = (0..m).collect();
    loop {
        out.push(p.clone());
        // next lexicographic permutation
        let Some(i) = (1..m).rev().find(|&i| p[i - 1] < p[i]) else {
            return out;
        };
        let k = (i..m).rev().find(|&k| p[k] > p[i - 1]).expect("exists");
        p.swap(i - 1, k);
        p[i..].reverse();
    }
}

fn perm_inverse(p: &[usize]) -> Vec<usize> {
    let mut q = vec![0; p.len()];
    for (i, &t) in p.iter().enumerate() {
        q[t] = i;
    }
    q
}

const MAX_POINTS: usize = 8;

/// Permutations `(psi, omega)` of the points, both of order `q`, with `[psi, omega] = target`.
fn commutator_pair(target: &[usize], q: u64) -> Option<(Vec<usize>, Vec<usize>)> {
    let cands: Vec<Vec<usize>> = all_permutations(target.len())
        .into_iter()
        .filter(|p| perm_order(p) == q)
        .collect();
    let invs: Vec<Vec<usize>> = cands.iter().map(|p| perm_inverse(p)).collect();
    for (a, ai) in cands.iter().zip(&invs) {
        for (b, bi) in cands.iter().zip(&invs) {
            let comm = then(&then(&then(ai, bi), a), b);
            if comm == target {
                return Some((a.clone(), b.clone()));
            }
        }
    }
    None
}

/// A pair `(psi, omega)` of exact order `q`, supported in `support`, whose
/// commutator is `target`. Candidates are cone permutations of the
/// refinement of `support` one level below, then at its own depth.
fn pair_for(support: &ClopenSet, target: &PrefixBijection, q: u64) -> Result<Option<GenerationPair>> {
    let arity = support.arity();
    let depth = support.max_depth();
    for d in [depth + 1, depth] {
        let points = support.refine_to_depth(d)?;
        if points.len() > MAX_POINTS {
            continue;
        }
        let Some(tp) = as_cone_permutation(target, &points) else {
            continue;
        };
        if let Some((a, b)) = commutator_pair(&tp, q) {
            return Ok(Some(GenerationPair {
                psi: cone_permutation(arity, &points, &a)?,
                omega: cone_permutation(arity, &points, &b)?,
            }));
        }
    }
    Ok(None)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenerationPair {
    pub psi: PrefixBijection,
    pub omega: PrefixBijection,
}

/// Word transcripts expressing target generators in the commutators
/// `y_i = [psi_i, omega_i]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenerationCertificate {
    pub kind: String,
    pub support: ClopenSet,
    pub j: usize,
    pub target_order: u64,
    pub pairs: Vec<GenerationPair>,
    pub target_generators: Vec<PrefixBijection>,
    pub words: Vec<Option<GroupWord>>,
    pub bfs_depth: u32,
    pub conditions: Vec<Condition>,
    pub status: String,
}

impl GenerationCertificate {
    pub fn commutators(&self) -> Result<Vec<PrefixBijection>> {
        self.pairs.iter().map(|p| p.psi.commutator(&p.omega)).collect()
    }

    pub fn recheck(&self) -> Vec<Condition> {
        let mut c = Checks::default();
        c.check("j equals the number of pairs", Ok(self.j == self.pairs.len()));
        c.check("j ≥ 1", Ok(self.j >= 1));
        c.check("target order ≥ 2", Ok(self.target_order >= 2));
        c.check(
            "one transcript slot per target",
            Ok(self.words.len() == self.target_generators.len()),
        );
        for (i, p) in self.pairs.iter().enumerate() {
            let k = i + 1;
            for (name, g) in [("psi", &p.psi), ("omega", &p.omega)] {
                c.check(
                    format!("{name}_{k} has order {}", self.target_order),
                    Ok(g.order(DEFAULT_ORDER_BOUND).finite() == Some(self.target_order)),
                );
                c.check(
                    format!("support({name}_{k}) ⊆ C ∪ D"),
                    g.support().is_subset(&self.support),
                );
            }
        }
        let kappas = self.commutators();
        for (t, (g, w)) in self.target_generators.iter().zip(&self.words).enumerate() {
            c.check(format!("support(target{t}) ⊆ C ∪ D"), g.support().is_subset(&self.support));
            if let Some(w) = w {
                c.check(
                    format!("target{t} = {w} in the commutators, length ≤ {}", self.bfs_depth),
                    kappas.as_ref().map_err(Clone::clone).and_then(|ks| {
                        Ok(w.len() as u32 <= self.bfs_depth && w.num_vars() as usize <= ks.len() && {
                            ks.first().map_or(Ok(w.is_identity() && g.is_identity()), |_| {
                                evaluate_word(w, ks).map(|x| &x == g)
                            })?
                        })
                    }),
                );
            }
        }
        let expressed = self.words.iter().all(Option::is_some);
        let expected = if expressed { "verified" } else { "inconclusive" };
        c.check(
            format!("status `{}` matches the transcripts", self.status),
            Ok(self.status == expected),
        );
        c.0
    }

    pub fn is_verified(&self) -> bool {
        self.status == "verified"
    }
}

/// Transpositions of the cones of `support` refined to its own depth.
pub fn default_targets(support: &ClopenSet) -> Result<Vec<PrefixBijection>> {
    let arity = support.arity();
    let cones = support.refine_to_depth(support.max_depth())?;
    let mut out = Vec::new();
    for (i, a) in cones.iter().enumerate() {
        for b in &cones[i + 1..] {
            out.push(PrefixBijection::transposition(arity, a, b)?);
        }
    }
    Ok(out)
}

/// Picks `(psi_i, omega_i)` for the first `j_max` targets that admit a pair,
/// then searches reduced words in their commutators, shortest first, for
/// the remaining targets.
pub fn generation_certificate_search(
    support: &ClopenSet,
    n_order: u64,
    targets: &[PrefixBijection],
    j_max: usize,
    depth: u32,
) -> Result<GenerationCertificate> {
    if n_order < 2 {
        return Err(precondition("target order must be at least 2"));
    }
    for t in targets {
        if !t.support().is_subset(support)? {
            return Err(precondition("targets must be supported in C ∪ D"));
        }
    }
    let mut pairs = Vec::new();
    for t in targets {
        if pairs.len() == j_max {
            break;
        }
        if t.is_identity() {
            continue;
        }
        if let Some(p) = pair_for(support, t, n_order)? {
            pairs.push(p);
        }
    }
    let kappas: Vec<PrefixBijection> = pairs
        .iter()
        .map(|p| p.psi.commutator(&p.omega))
        .collect::<Result<_>>()?;
    let words = express(support.arity(), &kappas, targets, depth)?;
    let status = if words.iter().all(Option::is_some) { "verified" } else { "inconclusive" };
    let mut cert = GenerationCertificate {
        kind: "generation".into(),
        support: support.clone(),
        j: pairs.len(),
        target_order: n_order,
        pairs,
        target_generators: targets.to_vec(),
        words,
        bfs_depth: depth,
        conditions: Vec::new(),
        status: status.into(),
    };
    cert.conditions = cert.recheck();
    Ok(cert)
}

/// Breadth-first search over reduced words in `gens`, one frontier level
/// per length, keeping the first word reaching each element.
fn express(
    arity: Arity,
    gens: &[PrefixBijection],
    targets: &[PrefixBijection],
    depth: u32,
) -> Result<Vec<Option<GroupWord>>> {
    let mut found: Vec<Option<GroupWord>> = vec![None; targets.len()];
    let mut seen: HashMap<PrefixBijection, GroupWord> = HashMap::new();
    let id = PrefixBijection::identity(arity);
    seen.insert(id.clone(), GroupWord::identity());
    let mut frontier: VecDeque<(PrefixBijection, GroupWord)> = VecDeque::from([(id, GroupWord::identity())]);
    let letters: Vec<(Letter, PrefixBijection)> = gens
        .iter()
        .enumerate()
        .flat_map(|(i, g)| {
            let v = i as u32 + 1;
            [(Letter::new(v, false), g.clone()), (Letter::new(v, true), g.invert())]
        })
        .collect();
    let record = |found: &mut Vec<Option<GroupWord>>, g: &PrefixBijection, w: &GroupWord| {
        for (slot, t) in found.iter_mut().zip(targets) {
            if slot.is_none() && t == g {
                *slot = Some(w.clone());
            }
        }
    };
    record(&mut found, &PrefixBijection::identity(arity), &GroupWord::identity());
    for _ in 0..depth {
        if found.iter().all(Option::is_some) {
            break;
        }
        let mut next = VecDeque::new();
        for (g, w) in &frontier {
            for (l, h) in &letters {
                if w.letters().last() == Some(&l.inv()) {
                    continue;
                }
                let gh = g.compose(h)?;
                if seen.contains_key(&gh) {
                    continue;
                }
                let mut ls = w.letters().to_vec();
                ls.push(*l);
                let wl = GroupWord::reduce(ls);
                record(&mut found, &gh, &wl);
                seen.insert(gh.clone(), wl.clone());
                next.push_back((gh, wl));
            }
        }
        frontier = next;
    }
    Ok(found)
}

/// `C` and `D` for the pipeline: `C` the first top-level cone, of the class
/// of the whole space, and `D ⊊ 𝔠∖C` the least small set of class `−2·class(C)`.
pub fn choose_c_d(arity: Arity) -> Result<(ClopenSet, ClopenSet)> {
    let c = ClopenSet::cone(arity, Word::from_vec(vec![0]));
    let m = arity.modulus();
    let target = OrbitClass::from_int(arity, -2);
    let k = if target.residue() == 0 { m } else { target.residue() };
    let cones: Vec<Word> = if k < arity.get() - 1 {
        (1..=k as u8).map(|i| Word::from_vec(vec![i])).collect()
    } else {
        (0..k as u8).map(|i| Word::from_vec(vec![1, i])).collect()
    };
    let d = ClopenSet::canonicalize(arity, cones)?;
    Ok((c, d))
}

/// Vertices `(C ∪ D)·σ^k` over one period of `σ`, with edges under both
/// readings of "properly intersect".
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TransitionGraph {
    pub vertices: Vec<ClopenSet>,
    /// Non-empty intersection, neither vertex containing the other.
    pub strict_edges: Vec<(usize, usize)>,
    /// Non-empty intersection.
    pub weak_edges: Vec<(usize, usize)>,
    pub connected_strict: bool,
    pub connected_weak: bool,
    pub covers: bool,
}

// Both tests rely on canonical antichains: a cone covered by a canonical
// set always lies under a single one of its cones.
fn meets(a: &ClopenSet, b: &ClopenSet) -> bool {
    a.cones().iter().any(|x| b.cones().iter().any(|y| x.comparable(y)))
}

fn within(a: &ClopenSet, b: &ClopenSet) -> bool {
    a.cones().iter().all(|x| b.cones().iter().any(|y| y.is_prefix_of(x)))
}

fn connected(count: usize, edges: &[(usize, usize)]) -> bool {
    if count == 0 {
        return true;
    }
    let mut adj = vec![Vec::new(); count];
    for &(a, b) in edges {
        adj[a].push(b);
        adj[b].push(a);
    }
    let mut seen = vec![false; count];
    let mut queue = VecDeque::from([0]);
    seen[0] = true;
    while let Some(v) = queue.pop_front() {
        for &w in &adj[v] {
            if !std::mem::replace(&mut seen[w], true) {
                queue.push_back(w);
            }
        }
    }
    seen.into_iter().all(|s| s)
}

pub fn transition_graph(base: &ClopenSet, sigma: &PrefixBijection) -> Result<TransitionGraph> {
    let period = sigma
        .order(DEFAULT_ORDER_BOUND)
        .finite()
        .ok_or_else(|| precondition("sigma has no finite order within the bound"))?;
    let mut vertices = Vec::with_capacity(period as usize);
    let mut cur = base.clone();
    let mut cover = ClopenSet::empty(base.arity());
    for _ in 0..period {
        cover = cover.union(&cur)?;
        let next = sigma.image(&cur)?;
        vertices.push(std::mem::replace(&mut cur, next));
    }
    let (mut strict, mut weak) = (Vec::new(), Vec::new());
    for a in 0..vertices.len() {
        for b in a + 1..vertices.len() {
            let (va, vb) = (&vertices[a], &vertices[b]);
            if !meets(va, vb) {
                continue;
            }
            weak.push((a, b));
            if !within(va, vb) && !within(vb, va) {
                strict.push((a, b));
            }
        }
    }
    Ok(TransitionGraph {
        connected_strict: connected(vertices.len(), &strict),
        connected_weak: connected(vertices.len(), &weak),
        covers: cover.is_full(),
        vertices,
        strict_edges: strict,
        weak_edges: weak,
    })
}

/// A word in `x1 = sigma`, `x2 = zeta` and the element it names.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Membership {
    pub name: String,
    pub word: GroupWord,
    pub element: PrefixBijection,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwoGenCertificate {
    pub kind: String,
    pub n: usize,
    pub order_target: u64,
    #[serde(rename = "C")]
    pub c: ClopenSet,
    #[serde(rename = "D")]
    pub d: ClopenSet,
    pub x: u64,
    pub j: u64,
    #[serde(rename = "X")]
    pub x_blocks: Vec<ClopenSet>,
    #[serde(rename = "Y")]
    pub y_blocks: Vec<ClopenSet>,
    pub tau: PrefixBijection,
    pub pi: PrefixBijection,
    pub sigma: PrefixBijection,
    pub zeta: PrefixBijection,
    pub graph_t: TransitionGraph,
    pub membership: Vec<Membership>,
    pub identity_checks: Vec<Condition>,
    pub generation: GenerationCertificate,
    pub status: String,
}

fn var(v: u32, e: i64) -> Vec<Letter> {
    vec![Letter::new(v, e < 0); e.unsigned_abs() as usize]
}

/// `zeta^(sigma^-e) = sigma^e · zeta · sigma^-e` as a word in `x1 = sigma`, `x2 = zeta`.
fn zeta_conjugate_word(e: i64) -> GroupWord {
    GroupWord::reduce([var(1, e), var(2, 1), var(1, -e)].concat())
}

/// Words in `sigma`, `zeta` for each `[psi_k, omega_k]` and each expressed target.
fn membership_words(j: u64, generation: &GenerationCertificate) -> Result<Vec<(String, GroupWord)>> {
    let mut out = Vec::new();
    let mut kappa_words = Vec::new();
    for k in 1..=j as i64 {
        let a = zeta_conjugate_word(k);
        let b = zeta_conjugate_word(k * (j as i64 + 1));
        let w = a.inverse().concat(&b.inverse()).concat(&a).concat(&b);
        out.push((format!("[psi_{k}, omega_{k}]"), w.clone()));
        kappa_words.push(w);
    }
    for (t, w) in generation.words.iter().enumerate() {
        if let Some(w) = w {
            out.push((format!("target{t}"), w.substitute(&kappa_words)?));
        }
    }
    Ok(out)
}

/// `psi_i^(sigma^i)` and `omega_i^(sigma^(i(j+1)))` for `i = 1..=j`.
fn pieces(generation: &GenerationCertificate, sigma: &PrefixBijection) -> Result<Vec<(String, PrefixBijection)>> {
    let j = generation.pairs.len() as i64;
    let mut out = Vec::new();
    for (idx, p) in generation.pairs.iter().enumerate() {
        let i = idx as i64 + 1;
        out.push((format!("psi_{i}^(sigma^{i})"), p.psi.conjugate(&sigma.pow(i))?));
        let e = i * (j + 1);
        out.push((format!("omega_{i}^(sigma^{e})"), p.omega.conjugate(&sigma.pow(e))?));
    }
    Ok(out)
}

/// Blocks in order, cycled by `g`: `block_i·g = block_(i+1)`, `g` supported in their union.
fn cycles_blocks(g: &PrefixBijection, blocks: &[ClopenSet]) -> Result<bool> {
    let Some(first) = blocks.first() else {
        return Ok(false);
    };
    let mut union = ClopenSet::empty(first.arity());
    for (i, b) in blocks.iter().enumerate() {
        union = union.union(b)?;
        if g.image(b)? != blocks[(i + 1) % blocks.len()] {
            return Ok(false);
        }
    }
    g.support().is_subset(&union)
}

fn partitions_space(blocks: &[&ClopenSet]) -> Result<bool> {
    let Some(first) = blocks.first() else {
        return Ok(false);
    };
    let mut seen = ClopenSet::empty(first.arity());
    for b in blocks {
        if !b.is_proper() || !seen.is_disjoint(b)? {
            return Ok(false);
        }
        seen = seen.union(b)?;
    }
    Ok(seen.is_full())
}

fn all_in_class(blocks: &[ClopenSet], class: OrbitClass) -> Result<bool> {
    for b in blocks {
        if class_of(b)? != class {
            return Ok(false);
        }
    }
    Ok(true)
}

impl TwoGenCertificate {
    /// Recomputes every identity from the certificate fields alone.
    pub fn recheck(&self) -> Vec<Condition> {
        let mut c = Checks::default();
        let arity = self.c.arity();
        let gen = &self.generation;
        c.check("n matches the arity of C", Ok(self.n == arity.get()));
        c.check("C is proper with the class of the whole space", class_of(&self.c).map(|k| k == OrbitClass::total(arity)));
        let comp = self.c.complement();
        c.check("D is a non-empty proper subset of 𝔠∖C", Ok(!self.d.is_empty()).and_then(|ok| Ok(ok && self.d.is_proper_subset(&comp)?)));
        c.check(
            "class(D) = −2·class(C)",
            class_of(&self.c).and_then(|kc| Ok(class_of(&self.d)? == kc.neg().add(kc.neg())?)),
        );
        let j = gen.pairs.len() as u64;
        c.check("j matches the generation certificate", Ok(self.j == j && j >= 1));
        c.check("x ≥ 2j(j+1)", Ok(self.x >= 2 * self.j * (self.j + 1)));
        c.check(format!("|X| = 2x+1 = {}", 2 * self.x + 1), Ok(self.x_blocks.len() as u64 == 2 * self.x + 1));
        c.check(format!("|Y| = x = {}", self.x), Ok(self.y_blocks.len() as u64 == self.x));
        c.check("C ∈ X and D ∈ Y lead their partitions", Ok(self.x_blocks.first() == Some(&self.c) && self.y_blocks.first() == Some(&self.d)));
        let all: Vec<&ClopenSet> = self.x_blocks.iter().chain(&self.y_blocks).collect();
        c.check("X ∪ Y partitions the space", partitions_space(&all));
        c.check("X blocks lie in the class of C", class_of(&self.c).and_then(|k| all_in_class(&self.x_blocks, k)));
        c.check("Y blocks lie in the class of D", class_of(&self.d).and_then(|k| all_in_class(&self.y_blocks, k)));
        c.check("tau cycles X in one orbit, supported in ⋃X", cycles_blocks(&self.tau, &self.x_blocks));
        c.check("pi cycles Y in one orbit, supported in ⋃Y", cycles_blocks(&self.pi, &self.y_blocks));
        c.check("sigma = pi·tau", self.pi.compose(&self.tau).map(|s| s == self.sigma));
        let period = lcm(2 * self.x + 1, self.x);
        c.check(
            format!("order(sigma) = lcm(2x+1, x) = {period}"),
            Ok(self.sigma.order(DEFAULT_ORDER_BOUND).finite() == Some(period)),
        );
        for cond in gen.recheck() {
            if cond.desc.starts_with("status") {
                continue;
            }
            c.check(format!("generation: {}", cond.desc), Ok(cond.pass));
        }
        c.check("generation support is C ∪ D", self.c.union(&self.d).map(|u| u == gen.support));
        c.check("order target matches the generation certificate", Ok(self.order_target == gen.target_order));
        match pieces(gen, &self.sigma) {
            Ok(ps) => {
                let supports: Vec<ClopenSet> = ps.iter().map(|(_, g)| g.support()).collect();
                for a in 0..ps.len() {
                    for b in a + 1..ps.len() {
                        c.check(
                            format!("supports of {} and {} are disjoint", ps[a].0, ps[b].0),
                            supports[a].is_disjoint(&supports[b]),
                        );
                    }
                }
                let product = ps
                    .iter()
                    .try_fold(PrefixBijection::identity(arity), |acc, (_, g)| acc.compose(g));
                c.check("zeta is the product of the conjugated pieces", product.map(|z| z == self.zeta));
            }
            Err(e) => c.check("conjugated pieces are computable", Err(e)),
        }
        c.check(
            format!("order(zeta) = {}", self.order_target),
            Ok(self.zeta.order(DEFAULT_ORDER_BOUND).finite() == Some(self.order_target)),
        );
        match self.c.union(&self.d).and_then(|u| transition_graph(&u, &self.sigma)) {
            Ok(g) => {
                c.check("graph T matches the recomputed graph", Ok(g == self.graph_t));
                c.check("graph T connected (neither vertex containing the other)", Ok(g.connected_strict));
                c.check("graph T connected (non-empty intersection)", Ok(g.connected_weak));
                c.check("⋃ (C ∪ D)·sigma^k = 𝔠", Ok(g.covers));
            }
            Err(e) => c.check("graph T is computable", Err(e)),
        }
        let jj = self.j as i64;
        for (idx, p) in gen.pairs.iter().enumerate() {
            let k = idx as i64 + 1;
            let lhs = self
                .zeta
                .conjugate(&self.sigma.pow(-k))
                .and_then(|a| a.commutator(&self.zeta.conjugate(&self.sigma.pow(-k * (jj + 1)))?));
            let rhs = p.psi.commutator(&p.omega);
            c.check(
                format!("[zeta^(sigma^-{k}), zeta^(sigma^-{})] = [psi_{k}, omega_{k}]", k * (jj + 1)),
                lhs.and_then(|l| Ok(l == rhs?)),
            );
        }
        let pair = [self.sigma.clone(), self.zeta.clone()];
        match membership_words(self.j, gen) {
            Ok(expected) => {
                c.check(
                    "membership words cover every recovered commutator and expressed target",
                    Ok(expected.len() == self.membership.len()
                        && expected.iter().zip(&self.membership).all(|((n, w), m)| *n == m.name && *w == m.word)),
                );
            }
            Err(e) => c.check("membership words are derivable", Err(e)),
        }
        let kappas = gen.commutators();
        for m in &self.membership {
            let named = if let Some(t) = m.name.strip_prefix("target") {
                t.parse::<usize>()
                    .ok()
                    .and_then(|t| gen.target_generators.get(t))
                    .cloned()
                    .ok_or_else(|| precondition("unknown target"))
            } else {
                let k = m
                    .name
                    .trim_start_matches("[psi_")
                    .split(',')
                    .next()
                    .and_then(|s| s.parse::<usize>().ok())
                    .filter(|&k| k >= 1);
                kappas
                    .as_ref()
                    .map_err(Clone::clone)
                    .and_then(|ks| k.and_then(|k| ks.get(k - 1)).cloned().ok_or_else(|| precondition("unknown commutator")))
            };
            c.check(
                format!("{} = {} in sigma, zeta", m.name, m.word),
                named.and_then(|g| Ok(g == m.element && evaluate_word(&m.word, &pair)? == g)),
            );
        }
        c.0
    }

    pub fn status_for(conditions: &[Condition], generation: &GenerationCertificate) -> String {
        if conditions.iter().any(|c| !c.pass) {
            "failed".into()
        } else {
            generation.status.clone()
        }
    }
}

/// The pipeline: `C`, `D`, the partitions, `tau`, `pi`, `sigma = pi·tau`,
/// `zeta`, and every identity checked exactly.
pub fn build_two_generators(arity: Arity, n_order: u64, generation: &GenerationCertificate) -> Result<TwoGenCertificate> {
    if n_order < 2 {
        return Err(precondition("target order must be at least 2"));
    }
    let (c, d) = choose_c_d(arity)?;
    if generation.support != c.union(&d)? {
        return Err(precondition("generation certificate is not for C ∪ D"));
    }
    let j = generation.pairs.len() as u64;
    if j == 0 {
        return Err(precondition("generation certificate has no pairs"));
    }
    let x = 2 * j * (j + 1);
    let (kc, kd) = (class_of(&c)?, class_of(&d)?);
    let targets: Vec<OrbitClass> = std::iter::repeat(kc)
        .take(2 * x as usize)
        .chain(std::iter::repeat(kd).take(x as usize - 1))
        .collect();
    let blocks = partition_with(arity, &[c.clone(), d.clone()], &targets)?;
    let mut x_blocks = vec![blocks[0].clone()];
    x_blocks.extend_from_slice(&blocks[2..2 + 2 * x as usize]);
    let mut y_blocks = vec![blocks[1].clone()];
    y_blocks.extend_from_slice(&blocks[2 + 2 * x as usize..]);
    let tau = cycle_blocks(&x_blocks)?;
    let pi = cycle_blocks(&y_blocks)?;
    let sigma = pi.compose(&tau)?;
    let zeta = pieces(generation, &sigma)?
        .iter()
        .try_fold(PrefixBijection::identity(arity), |acc, (_, g)| acc.compose(g))?;
    let graph_t = transition_graph(&c.union(&d)?, &sigma)?;
    let pair = [sigma.clone(), zeta.clone()];
    let membership = membership_words(j, generation)?
        .into_iter()
        .map(|(name, word)| {
            let element = evaluate_word(&word, &pair)?;
            Ok(Membership { name, word, element })
        })
        .collect::<Result<_>>()?;
    let mut cert = TwoGenCertificate {
        kind: "twogen".into(),
        n: arity.get(),
        order_target: n_order,
        c,
        d,
        x,
        j,
        x_blocks,
        y_blocks,
        tau,
        pi,
        sigma,
        zeta,
        graph_t,
        membership,
        identity_checks: Vec::new(),
        generation: generation.clone(),
        status: String::new(),
    };
    cert.identity_checks = cert.recheck();
    cert.status = TwoGenCertificate::status_for(&cert.identity_checks, generation);
    Ok(cert)
}

/// An element cycling the blocks `b_0 → b_1 → … → b_0`, built blockwise
/// from orbit maps out of `b_0`.
fn cycle_blocks(blocks: &[ClopenSet]) -> Result<PrefixBijection> {
    let base = &blocks[0];
    let translates: Vec<PrefixBijection> = blocks.iter().map(|b| orbit_map(base, b)).collect::<Result<_>>()?;
    let k = blocks.len();
    let perm: Vec<usize> = (0..k).map(|i| (i + 1) % k).collect();
    even_realize(base, &translates, &perm)
}

/// Default search plus pipeline for `V_n`.
pub fn default_pipeline(arity: Arity, n_order: u64, j_max: usize, bfs_depth: u32) -> Result<TwoGenCertificate> {
    let (c, d) = choose_c_d(arity)?;
    let support = c.union(&d)?;
    let targets = default_targets(&support)?;
    let generation = generation_certificate_search(&support, n_order, &targets, j_max, bfs_depth)?;
    build_two_generators(arity, n_order, &generation)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two() -> Arity {
        Arity::new(2).unwrap()
    }

    fn set(a: Arity, cones: &[&str]) -> ClopenSet {
        ClopenSet::parse(a, cones).unwrap()
    }

    #[test]
    fn num_check_small_cases() {
        assert_eq!(lemma_num_check(1, 1).unwrap(), BTreeSet::from([0]));
        assert_eq!(lemma_num_check(3, 2).unwrap(), BTreeSet::from([0]));
        assert!(lemma_num_check(2, 3).is_err());
        assert!(lemma_num_check(2, 0).is_err());
    }

    #[test]
    fn three_cycles_multiply_back() {
        for p in all_permutations(6).into_iter().filter(|p| is_even(p)) {
            let mut acc: Vec<usize> = (0..6).collect();
            for c in three_cycles(&p) {
                acc = then(&acc, &three_cycle_perm(6, c));
            }
            assert_eq!(acc, p);
        }
    }

    #[test]
    fn identity_permutation_realizes_identity() {
        let a = two();
        let c = set(a, &["00"]);
        let ts: Vec<_> = ["00", "01", "10"].iter().map(|b| orbit_map(&c, &set(a, &[b])).unwrap()).collect();
        assert!(even_realize(&c, &ts, &[0, 1, 2]).unwrap().is_identity());
    }

    #[test]
    fn three_cycle_agrees_blockwise() {
        let a = two();
        let c = set(a, &["00"]);
        let ts: Vec<_> = ["00", "01", "10"].iter().map(|b| orbit_map(&c, &set(a, &[b])).unwrap()).collect();
        let rep = even_realization(&c, &ts, &[1, 2, 0]).unwrap();
        assert!(rep.all_pass, "{:?}", rep.failed().collect::<Vec<_>>());
        let delta = rep.element("delta").unwrap();
        assert_eq!(delta.image(&set(a, &["00"])).unwrap(), set(a, &["01"]));
    }

    #[test]
    fn three_blocks_filling_the_space() {
        let a = Arity::new(3).unwrap();
        let c = set(a, &["0"]);
        let ts: Vec<_> = ["0", "1", "2"].iter().map(|b| orbit_map(&c, &set(a, &[b])).unwrap()).collect();
        let rep = even_realization(&c, &ts, &[2, 0, 1]).unwrap();
        assert!(rep.all_pass);
    }

    #[test]
    fn odd_permutation_needs_even_class() {
        let a = Arity::new(3).unwrap();
        let c = set(a, &["00"]);
        let ts: Vec<_> = ["00", "01"].iter().map(|b| orbit_map(&c, &set(a, &[b])).unwrap()).collect();
        assert!(even_realization(&c, &ts, &[1, 0]).is_err());
        let rep = even_realization(&set(two(), &["00"]), &[
            PrefixBijection::identity(two()),
            orbit_map(&set(two(), &["00"]), &set(two(), &["1"])).unwrap(),
        ], &[1, 0])
        .unwrap();
        assert!(rep.all_pass);
    }

    #[test]
    fn identity_target_is_free() {
        let a = two();
        let (c, d) = choose_c_d(a).unwrap();
        let w = c.union(&d).unwrap();
        let cert = generation_certificate_search(&w, 2, &[PrefixBijection::identity(a)], 2, 0).unwrap();
        assert_eq!(cert.words, vec![Some(GroupWord::identity())]);
    }

    #[test]
    fn default_search_verifies() {
        let a = two();
        let (c, d) = choose_c_d(a).unwrap();
        assert_eq!(d, set(a, &["10"]));
        let w = c.union(&d).unwrap();
        let targets = default_targets(&w).unwrap();
        for q in [2, 3] {
            let cert = generation_certificate_search(&w, q, &targets, 2, 4).unwrap();
            assert_eq!(cert.j, 2);
            assert!(cert.is_verified(), "{cert:?}");
            assert!(cert.conditions.iter().all(|c| c.pass));
            assert_eq!(cert.words[0].as_ref().unwrap().len(), 1);
        }
    }

    #[test]
    fn pipeline_small() {
        let cert = default_pipeline(two(), 2, 1, 4).unwrap();
        let failed: Vec<_> = cert.identity_checks.iter().filter(|c| !c.pass).collect();
        assert!(failed.is_empty(), "{failed:?}");
        assert_eq!(cert.x, 4);
        assert_eq!(cert.graph_t.vertices.len(), 36);
    }
}
