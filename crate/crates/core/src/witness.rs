//! Constructive witnesses: explicit elements for each existence argument,
//! each sealed by the independent verifier in [`crate::check`].

use crate::cantor::{ClopenSet, Word};
use crate::error::{precondition, Result};
use crate::prefix_map::{PartialMap, PrefixBijection};
use crate::report::WitnessReport;

/// Prefix map from `x` onto `y`, matching cone lists after equalizing their counts.
pub fn pair_sets(x: &ClopenSet, y: &ClopenSet) -> Result<PartialMap> {
    x.arity().check(y.arity())?;
    let arity = x.arity();
    match (x.is_empty(), y.is_empty()) {
        (true, true) => return Ok(PartialMap::empty(arity)),
        (false, false) => {}
        _ => return Err(precondition("cannot pair an empty set with a non-empty one")),
    }
    let m = arity.modulus();
    if x.weight() % m != y.weight() % m {
        return Err(precondition(format!(
            "weights {} and {} differ mod {m}",
            x.weight(),
            y.weight()
        )));
    }
    let mut a = x.cones().to_vec();
    let mut b = y.cones().to_vec();
    while a.len() < b.len() {
        ClopenSet::split_least(&mut a, arity);
    }
    while b.len() < a.len() {
        ClopenSet::split_least(&mut b, arity);
    }
    PartialMap::from_cone_lists(arity, &a, &b)
}

/// Direct gluing: agrees with each `g` on its piece and pairs the leftover
/// complements by prefix replacement.
pub fn glue_direct(pieces: &[(ClopenSet, PrefixBijection)]) -> Result<PrefixBijection> {
    let Some((first, _)) = pieces.first() else {
        return Err(precondition("no pieces to glue"));
    };
    let arity = first.arity();
    let mut map = PartialMap::empty(arity);
    for (d, g) in pieces {
        d.arity().check(g.arity())?;
        arity.check(d.arity())?;
        map = map
            .disjoint_union(&g.restrict(d)?)
            .map_err(|e| precondition(format!("pieces or their images overlap: {e}")))?;
    }
    let rest = pair_sets(&map.domain().complement(), &map.range().complement())?;
    PrefixBijection::from_partial(map.disjoint_union(&rest)?)
}

/// The involution exchanging `x` and `x·g` along `g`, identity elsewhere.
pub fn swap_along(x: &ClopenSet, g: &PrefixBijection) -> Result<PrefixBijection> {
    let xg = g.image(x)?;
    if !x.is_disjoint(&xg)? {
        return Err(precondition("set meets its own image"));
    }
    let rest = x.union(&xg)?.complement();
    glue_direct(&[
        (x.clone(), g.clone()),
        (xg, g.invert()),
        (rest, PrefixBijection::identity(g.arity())),
    ])
}

fn require_proper_within(s: &ClopenSet, a: &ClopenSet, name: &str) -> Result<()> {
    if s.is_empty() || !s.is_proper_subset(a)? {
        return Err(precondition(format!("{name} must be a non-empty proper subset of A")));
    }
    Ok(())
}

/// An element supported in `a` sending `b` into `c`.
///
/// `b` goes onto a union of children of the least cone of `c` with the same
/// weight residue; `a∖b` goes onto the rest of `a`.
pub fn vigorous(a: &ClopenSet, b: &ClopenSet, c: &ClopenSet) -> Result<PrefixBijection> {
    a.arity().check(b.arity())?;
    a.arity().check(c.arity())?;
    if a.is_empty() {
        return Err(precondition("A must be non-empty"));
    }
    require_proper_within(b, a, "B")?;
    require_proper_within(c, a, "C")?;
    let arity = a.arity();
    let m = arity.modulus();
    let k = match b.weight() % m {
        0 => m,
        r => r,
    };
    let least = &c.cones()[0];
    let target = if k == 1 {
        ClopenSet::cone(arity, least.clone())
    } else {
        ClopenSet::canonicalize(arity, (0..k as u8).map(|i| least.child(i)))?
    };
    let inside = pair_sets(b, &target)?;
    let outside = pair_sets(&a.difference(b)?, &a.difference(&target)?)?;
    let fixed = PartialMap::identity_on(&a.complement());
    PrefixBijection::from_partial(inside.disjoint_union(&outside)?.disjoint_union(&fixed)?)
}

pub fn vigorous_witness(a: &ClopenSet, b: &ClopenSet, c: &ClopenSet) -> Result<WitnessReport> {
    let g = vigorous(a, b, c)?;
    Ok(WitnessReport::new("vigorous")
        .with_set("A", a.clone())
        .with_set("B", b.clone())
        .with_set("C", c.clone())
        .with_element("gamma", g)
        .seal())
}

/// A non-empty clopen set disjoint from its image under `g`.
pub fn moved_set(g: &PrefixBijection) -> Result<ClopenSet> {
    let Some((u, v)) = g.pairs().iter().find(|(d, r)| d != r) else {
        return Err(precondition("the identity moves nothing"));
    };
    let other = |s: u8| if s == 0 { 1 } else { 0 };
    let y = if !u.comparable(v) {
        u.clone()
    } else if u.is_prefix_of(v) {
        u.child(other(v.letters()[u.len()]))
    } else {
        u.child(other(u.letters()[v.len()]))
    };
    Ok(ClopenSet::cone(g.arity(), y))
}

pub fn moved_set_witness(g: &PrefixBijection) -> Result<WitnessReport> {
    let y = moved_set(g)?;
    Ok(WitnessReport::new("moved_set")
        .with_set("Y", y)
        .with_element("gamma", g.clone())
        .seal())
}

/// Writes `eta`, supported in `u`, as `mu·nu` with both factors supported in
/// proper clopen subsets of `u`.
pub fn ssgp_split(eta: &PrefixBijection, u: &ClopenSet) -> Result<(PrefixBijection, PrefixBijection)> {
    eta.arity().check(u.arity())?;
    if !u.is_proper() {
        return Err(precondition("U must be proper and non-empty"));
    }
    if !eta.support().is_subset(u)? {
        return Err(precondition("eta must be supported in U"));
    }
    let arity = eta.arity();
    if eta.is_identity() {
        return Ok((eta.clone(), eta.clone()));
    }
    let mut word = u.cones()[0].clone();
    let p = loop {
        let p = ClopenSet::cone(arity, word.clone());
        if p.union(&eta.preimage(&p)?)?.is_proper_subset(u)? {
            break p;
        }
        word = word.child(0);
    };
    let outside = u.complement();
    let q = ClopenSet::cone(arity, outside.cones()[0].child(0));
    let phi = vigorous(&p.union(&outside)?, &p.union(&q)?, &p)?;
    let nu = eta.conjugate(&phi)?;
    let mu = eta.compose(&nu.invert())?;
    Ok((mu, nu))
}

pub fn ssgp_factor(eta: &PrefixBijection, u: &ClopenSet) -> Result<WitnessReport> {
    let (mu, nu) = ssgp_split(eta, u)?;
    Ok(WitnessReport::new("ssgp")
        .with_set("U", u.clone())
        .with_element("eta", eta.clone())
        .with_element("mu", mu)
        .with_element("nu", nu)
        .seal())
}

/// Which block the conjugator fixes in a stabiliser split.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Branch {
    /// `mu` fixes D, `nu` fixes C.
    C,
    /// `mu` fixes C, `nu` fixes D.
    D,
}

/// `eta = mu·nu·mu⁻¹` inside the space `b ∪ c ∪ d`; `eta` must fix `l` pointwise.
fn split_within(
    eta: &PrefixBijection,
    l: &ClopenSet,
    b: &ClopenSet,
    c: &ClopenSet,
    d: &ClopenSet,
) -> Result<(PrefixBijection, PrefixBijection, Branch)> {
    let cb = c.union(b)?;
    let (near, ambient, branch) = if !l.is_disjoint(&cb)? {
        (c, cb, Branch::C)
    } else {
        (d, d.union(b)?, Branch::D)
    };
    let target = l.intersection(&ambient)?;
    let mu = if near.is_subset(&target)? {
        PrefixBijection::identity(eta.arity())
    } else {
        vigorous(&ambient, near, &target)?.invert()
    };
    let nu = eta.conjugate(&mu)?;
    Ok((mu, nu, branch))
}

pub fn split_by_stabilisers(
    eta: &PrefixBijection,
    l: &ClopenSet,
    c: &ClopenSet,
    d: &ClopenSet,
) -> Result<WitnessReport> {
    for s in [l, c, d] {
        eta.arity().check(s.arity())?;
    }
    if !c.is_disjoint(d)? {
        return Err(precondition("C and D must be disjoint"));
    }
    let b = c.union(d)?.complement();
    for (name, s) in [("B", &b), ("C", c), ("D", d), ("L", l)] {
        if !s.is_proper() {
            return Err(precondition(format!("{name} must be proper and non-empty")));
        }
    }
    if !eta.pointwise_stabilises(l)? {
        return Err(precondition("eta must fix L pointwise"));
    }
    let (mu, nu, branch) = split_within(eta, l, &b, c, d)?;
    let (mu_fixes, nu_fixes) = match branch {
        Branch::C => (d.clone(), c.clone()),
        Branch::D => (c.clone(), d.clone()),
    };
    Ok(WitnessReport::new("split")
        .with_set("L", l.clone())
        .with_set("C", c.clone())
        .with_set("D", d.clone())
        .with_set("mu_fixes", mu_fixes)
        .with_set("nu_fixes", nu_fixes)
        .with_element("eta", eta.clone())
        .with_element("mu", mu)
        .with_element("nu", nu)
        .seal())
}

/// Writes `eta`, which fixes `a`, as a product of elements each fixing
/// `a ∪ c` or `a ∪ d`.
pub fn acd_factor(
    eta: &PrefixBijection,
    a: &ClopenSet,
    c: &ClopenSet,
    d: &ClopenSet,
) -> Result<WitnessReport> {
    for s in [a, c, d] {
        eta.arity().check(s.arity())?;
    }
    if !a.is_proper() || c.is_empty() || d.is_empty() {
        return Err(precondition("A must be proper, C and D non-empty"));
    }
    if !a.is_disjoint(c)? || !a.is_disjoint(d)? || !c.is_disjoint(d)? {
        return Err(precondition("A, C and D must be pairwise disjoint"));
    }
    let b = a.union(c)?.union(d)?.complement();
    if b.is_empty() {
        return Err(precondition("A, C and D must not cover the space"));
    }
    let u = a.complement();
    let (mu, nu) = ssgp_split(eta, &u)?;
    let mut factors = Vec::new();
    for g in [mu, nu] {
        if g.is_identity() {
            continue;
        }
        let l = g.support().complement();
        let (m, v, _) = split_within(&g, &l, &b, c, d)?;
        // v = m⁻¹ g m, so g = m v m⁻¹
        factors.push(m.clone());
        factors.push(v);
        factors.push(m.invert());
    }
    let mut rep = WitnessReport::new("acd")
        .with_set("A", a.clone())
        .with_set("C", c.clone())
        .with_set("D", d.clone())
        .with_element("eta", eta.clone());
    for (i, f) in factors.iter().enumerate() {
        rep = rep.with_element(format!("factor{i}"), f.clone());
    }
    Ok(rep.seal())
}

/// `γ ↦ ε⁻¹γε` on the image of `ε`, identity on `b∖bδ`, where `ε` is `δ` on
/// `b` and the identity on `c ∪ d`.
pub fn minime_embed(
    g: &PrefixBijection,
    b: &ClopenSet,
    c: &ClopenSet,
    d: &ClopenSet,
    delta: &PrefixBijection,
) -> Result<PrefixBijection> {
    for s in [b, c, d] {
        g.arity().check(s.arity())?;
        if !s.is_proper() {
            return Err(precondition("B, C and D must be proper and non-empty"));
        }
    }
    if !b.union(c)?.union(d)?.is_full() || !b.is_disjoint(c)? || !b.is_disjoint(d)? || !c.is_disjoint(d)? {
        return Err(precondition("B, C and D must partition the space"));
    }
    if !delta.pointwise_stabilises(d)? {
        return Err(precondition("delta must fix D pointwise"));
    }
    let bd = delta.image(b)?;
    if !bd.is_proper_subset(b)? {
        return Err(precondition("B·delta must be a proper subset of B"));
    }
    let eps = delta
        .restrict(b)?
        .disjoint_union(&PartialMap::identity_on(&c.union(d)?))?;
    let inner = eps.inverse().compose(g.as_partial())?.compose(&eps)?;
    let gap = PartialMap::identity_on(&b.difference(&bd)?);
    PrefixBijection::from_partial(inner.disjoint_union(&gap)?)
}

/// The embedding data for a pair `I ⊊ K`: elements are carried into
/// elements supported in `j`, unchanged on `I ∩ Iγ⁻¹`.
#[derive(Debug, Clone)]
pub struct Shrink {
    pub i: ClopenSet,
    pub k: ClopenSet,
    pub j: ClopenSet,
    pub b: ClopenSet,
    pub c: ClopenSet,
    pub d: ClopenSet,
    pub delta: PrefixBijection,
}

impl Shrink {
    pub fn apply(&self, g: &PrefixBijection) -> Result<PrefixBijection> {
        minime_embed(g, &self.b, &self.c, &self.d, &self.delta)
    }
}

pub fn minime_shrink(i: &ClopenSet, k: &ClopenSet) -> Result<Shrink> {
    i.arity().check(k.arity())?;
    if !i.is_proper() || !k.is_proper() || !i.is_proper_subset(k)? {
        return Err(precondition("need proper non-empty I ⊊ K"));
    }
    let arity = i.arity();
    let gap = k.difference(i)?;
    let l_word = gap.cones()[0].child(0);
    let l = ClopenSet::cone(arity, l_word.clone());
    let l2 = ClopenSet::cone(arity, l_word.child(0));
    let d = i.clone();
    let b = l.union(&k.complement())?;
    let c = b.union(&d)?.complement();
    let delta = vigorous(&i.complement(), &b, &l2)?;
    let j = b.difference(&delta.image(&b)?)?.complement();
    Ok(Shrink { i: i.clone(), k: k.clone(), j, b, c, d, delta })
}

pub fn minime_shrink_witness(i: &ClopenSet, k: &ClopenSet, g: &PrefixBijection) -> Result<WitnessReport> {
    let s = minime_shrink(i, k)?;
    let fg = s.apply(g)?;
    Ok(WitnessReport::new("minime")
        .with_set("I", s.i)
        .with_set("K", s.k)
        .with_set("J", s.j)
        .with_element("gamma", g.clone())
        .with_element("image", fg)
        .seal())
}

fn first_word_at(set: &ClopenSet, depth: usize, avoid: &ClopenSet) -> Result<Word> {
    set.refine_to_depth(depth)?
        .into_iter()
        .find(|w| avoid.contains_cone(w) == Some(false))
        .ok_or_else(|| precondition("no room for an auxiliary cone"))
}

/// Gluing through an auxiliary parking element and shrunken copies of each
/// piece, multiplied in piece order. Needs the union of pieces and the union
/// of their images to be proper.
pub fn glue_procedure(pieces: &[(ClopenSet, PrefixBijection)]) -> Result<PrefixBijection> {
    let Some((first, _)) = pieces.first() else {
        return Err(precondition("no pieces to glue"));
    };
    let arity = first.arity();
    let mut dom = ClopenSet::empty(arity);
    let mut ran = ClopenSet::empty(arity);
    let mut live = Vec::new();
    for (d, g) in pieces {
        if d.is_empty() {
            continue;
        }
        let r = g.image(d)?;
        if !dom.is_disjoint(d)? || !ran.is_disjoint(&r)? {
            return Err(precondition("pieces or their images overlap"));
        }
        dom = dom.union(d)?;
        ran = ran.union(&r)?;
        live.push((d.clone(), g.clone(), r));
    }
    if !dom.is_proper() || !ran.is_proper() {
        return Err(precondition("glued domain and range must be proper"));
    }
    let depth = dom.max_depth().max(ran.max_depth()) + 2;
    let empty = ClopenSet::empty(arity);
    let s = ClopenSet::cone(arity, first_word_at(&dom.complement(), depth, &empty)?);
    let t = ClopenSet::cone(arity, first_word_at(&ran.complement(), depth, &s)?);
    let tau = vigorous(&ran.union(&s)?.union(&t)?, &ran, &s)?;
    let ds = dom.union(&s)?;
    let e = ClopenSet::cone(
        arity,
        first_word_at(&ds.complement(), ds.max_depth() + 1, &empty)?,
    );
    let mut chi = PrefixBijection::identity(arity);
    for (d, g, r) in &live {
        let i = d.union(&tau.image(r)?)?;
        let k = i.union(&e)?;
        let shrink = minime_shrink(&i, &k)?;
        chi = chi.compose(&shrink.apply(&g.compose(&tau)?)?)?;
    }
    chi.compose(&tau.invert())
}

/// Glues the pieces directly and, when the procedure applies, through
/// [`glue_procedure`] as a cross-check.
pub fn glue(pieces: &[(ClopenSet, PrefixBijection)]) -> Result<WitnessReport> {
    let chi = glue_direct(pieces)?;
    let mut rep = WitnessReport::new("glue").with_element("chi", chi);
    for (idx, (d, g)) in pieces.iter().enumerate() {
        rep = rep
            .with_set(format!("piece{idx}"), d.clone())
            .with_element(format!("map{idx}"), g.clone());
    }
    match glue_procedure(pieces) {
        Ok(p) => rep = rep.with_element("chi_procedure", p),
        Err(crate::Error::Precondition(_)) => {}
        Err(e) => return Err(e),
    }
    Ok(rep.seal())
}

/// `γ = α·β` with `α` fixing `Aγ⁻¹` and `β` fixing the complement of `A ∪ Aγ⁻¹`.
pub fn small_support_factor(g: &PrefixBijection) -> Result<WitnessReport> {
    let arity = g.arity();
    let mut a = moved_set(&g.invert())?;
    let mut back = g.preimage(&a)?;
    if a.union(&back)?.is_full() {
        a = ClopenSet::cone(arity, a.cones()[0].child(0));
        back = g.preimage(&a)?;
    }
    let rest = a.union(&back)?.complement();
    let beta = glue_direct(&[
        (back.clone(), g.clone()),
        (a.clone(), g.invert()),
        (rest.clone(), PrefixBijection::identity(arity)),
    ])?;
    let alpha = g.compose(&beta.invert())?;
    Ok(WitnessReport::new("small_support")
        .with_set("A", a)
        .with_set("alpha_fixes", back)
        .with_set("beta_fixes", rest)
        .with_element("gamma", g.clone())
        .with_element("alpha", alpha)
        .with_element("beta", beta)
        .seal())
}

/// The two-stage construction: move `b` off itself into `A∖(B∪D)` by a
/// glued swap, then move that region into `D ⊆ C` by a second swap.
pub fn flexible_to_vigorous_witness(a: &ClopenSet, b: &ClopenSet, c: &ClopenSet) -> Result<WitnessReport> {
    vigorous(a, b, c)?; // same preconditions
    let arity = a.arity();
    let depth = a.max_depth().max(b.max_depth()).max(c.max_depth()) + 1;
    let d = ClopenSet::cone(arity, c.refine_to_depth(depth)?[0].clone());
    let x = a.difference(&b.union(&d)?)?;
    let full = ClopenSet::full(arity);
    let rho = vigorous(&full, b, &x)?;
    let chi1 = swap_along(b, &rho)?;
    let rho2 = vigorous(&full, &x, &d)?;
    let chi2 = swap_along(&x, &rho2)?;
    let g = chi1.compose(&chi2)?;
    Ok(WitnessReport::new("flexible")
        .with_set("A", a.clone())
        .with_set("B", b.clone())
        .with_set("C", c.clone())
        .with_set("D", d)
        .with_element("chi1", chi1)
        .with_element("chi2", chi2)
        .with_element("gamma", g)
        .seal())
}

/// Rewrites `[μ,ν]` inside the normal closure of `δ` by parking `J` in a
/// set that `δ` moves off itself.
pub fn normal_closure_trick(
    delta: &PrefixBijection,
    mu: &PrefixBijection,
    nu: &PrefixBijection,
    j: &ClopenSet,
) -> Result<WitnessReport> {
    if !j.is_proper() {
        return Err(precondition("J must be proper and non-empty"));
    }
    let outside = j.complement();
    if !mu.pointwise_stabilises(&outside)? || !nu.pointwise_stabilises(&outside)? {
        return Err(precondition("mu and nu must be supported in J"));
    }
    let p = moved_set(delta)?;
    let lambda = vigorous(&ClopenSet::full(delta.arity()), j, &p)?;
    Ok(WitnessReport::new("normal_closure")
        .with_set("J", j.clone())
        .with_set("P", p)
        .with_element("delta", delta.clone())
        .with_element("mu", mu.clone())
        .with_element("nu", nu.clone())
        .with_element("lambda", lambda)
        .seal())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cantor::Arity;

    fn set(k: usize, cones: &[&str]) -> ClopenSet {
        ClopenSet::parse(Arity::new(k).unwrap(), cones).unwrap()
    }

    fn t(a: &str, b: &str) -> PrefixBijection {
        let n2 = Arity::new(2).unwrap();
        PrefixBijection::transposition(n2, &Word::parse(n2, a).unwrap(), &Word::parse(n2, b).unwrap())
            .unwrap()
    }

    fn passes(r: WitnessReport) -> WitnessReport {
        assert!(r.all_pass, "{}: {:?}", r.kind, r.failed().collect::<Vec<_>>());
        r
    }

    #[test]
    fn vigorous_examples() {
        passes(vigorous_witness(&set(2, &["0"]), &set(2, &["00"]), &set(2, &["011"])).unwrap());
        passes(vigorous_witness(&set(2, &[""]), &set(2, &["0"]), &set(2, &["0"])).unwrap());
        let r = passes(vigorous_witness(&set(3, &[""]), &set(3, &["0"]), &set(3, &["1"])).unwrap());
        let img = r.element("gamma").unwrap().image(&set(3, &["0"])).unwrap();
        assert_eq!(img.weight() % 2, 1);
        assert!(vigorous(&set(2, &["0"]), &set(2, &["0"]), &set(2, &["00"])).is_err());
    }

    #[test]
    fn flexible_examples() {
        passes(flexible_to_vigorous_witness(&set(2, &["0"]), &set(2, &["00"]), &set(2, &["011"])).unwrap());
        passes(flexible_to_vigorous_witness(&set(2, &[""]), &set(2, &["0"]), &set(2, &["0"])).unwrap());
        passes(flexible_to_vigorous_witness(&set(3, &[""]), &set(3, &["0"]), &set(3, &["1"])).unwrap());
    }

    #[test]
    fn moved_sets() {
        assert_eq!(moved_set(&t("0", "1")).unwrap(), set(2, &["0"]));
        assert_eq!(moved_set(&t("00", "01")).unwrap(), set(2, &["00"]));
        assert!(moved_set(&PrefixBijection::identity(Arity::new(2).unwrap())).is_err());
    }

    #[test]
    fn ssgp_examples() {
        let id = PrefixBijection::identity(Arity::new(2).unwrap());
        let r = passes(ssgp_factor(&id, &set(2, &["0"])).unwrap());
        assert!(r.element("mu").unwrap().is_identity());
        passes(ssgp_factor(&t("000", "001"), &set(2, &["0"])).unwrap());
    }

    #[test]
    fn split_example() {
        let r = passes(
            split_by_stabilisers(&t("00", "01"), &set(2, &["1"]), &set(2, &["10"]), &set(2, &["11"]))
                .unwrap(),
        );
        assert!(r.element("mu").unwrap().is_identity());
    }

    #[test]
    fn acd_example() {
        passes(acd_factor(&t("00", "01"), &set(2, &["11"]), &set(2, &["01"]), &set(2, &["100"])).unwrap());
    }

    #[test]
    fn minime_examples() {
        let s = minime_shrink(&set(2, &["00"]), &set(2, &["0"])).unwrap();
        assert!(set(2, &["00"]).is_proper_subset(&s.j).unwrap());
        assert!(s.j.is_proper_subset(&set(2, &["0"])).unwrap());
        assert!(s.apply(&PrefixBijection::identity(Arity::new(2).unwrap())).unwrap().is_identity());
        passes(minime_shrink_witness(&set(2, &["00"]), &set(2, &["0"]), &t("000", "001")).unwrap());
    }

    #[test]
    fn glue_examples() {
        let g = t("0", "10");
        assert_eq!(glue_direct(&[(set(2, &[""]), g.clone())]).unwrap(), g);
        let s = t("0", "1");
        let halves = [(set(2, &["0"]), s.clone()), (set(2, &["1"]), s.clone())];
        assert_eq!(glue_direct(&halves).unwrap(), s);
        let r = passes(glue(&[(set(2, &["00"]), t("00", "01")), (set(2, &["10"]), t("10", "110"))]).unwrap());
        assert!(r.elements.contains_key("chi_procedure"));
    }

    #[test]
    fn small_support_examples() {
        passes(small_support_factor(&t("00", "01")).unwrap());
        passes(small_support_factor(&t("0", "1")).unwrap());
    }

    #[test]
    fn normal_closure_example() {
        let n2 = Arity::new(2).unwrap();
        let id = PrefixBijection::identity(n2);
        passes(normal_closure_trick(&t("0", "10"), &id, &t("110", "111"), &set(2, &["11"])).unwrap());
        passes(normal_closure_trick(&t("0", "10"), &t("110", "111"), &t("1100", "111"), &set(2, &["11"])).unwrap());
    }
}
