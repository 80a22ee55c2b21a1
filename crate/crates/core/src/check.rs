//! Independent verifiers. Each recomputes a report's conditions from its
//! named sets and elements with clopen and image operations only.

use crate::cantor::ClopenSet;
use crate::error::{precondition, Result};
use crate::orbit;
use crate::prefix_map::PrefixBijection;
use crate::report::{Checks, Condition, WitnessReport};

pub(crate) fn recheck(r: &WitnessReport) -> Vec<Condition> {
    let mut c = Checks::default();
    let outcome = match r.kind.as_str() {
        "vigorous" => vigorous(r, &mut c),
        "flexible" => flexible(r, &mut c),
        "moved_set" => moved_set(r, &mut c),
        "ssgp" => ssgp(r, &mut c),
        "split" => split(r, &mut c),
        "acd" => acd(r, &mut c),
        "minime" => minime(r, &mut c),
        "glue" => glue(r, &mut c),
        "small_support" => small_support(r, &mut c),
        "normal_closure" => normal_closure(r, &mut c),
        "orbit_witness" => orbit_witness(r, &mut c),
        "orbit_add" => orbit_add(r, &mut c),
        "orbit_zero" => orbit_zero(r, &mut c),
        "orbit_inverse" => orbit_inverse(r, &mut c),
        "partition" => partition(r, &mut c),
        "even_realization" => even_realization(r, &mut c),
        other => Err(precondition(format!("unknown report kind `{other}`"))),
    };
    if let Err(e) = outcome {
        c.check("report fields are complete and consistent", Err(e));
    }
    c.0
}

fn proper_subset_nonempty(s: &ClopenSet, of: &ClopenSet) -> Result<bool> {
    Ok(!s.is_empty() && s.is_proper_subset(of)?)
}

fn supported_in(g: &PrefixBijection, s: &ClopenSet) -> Result<bool> {
    g.support().is_subset(s)
}

fn vigorous_post(r: &WitnessReport, c: &mut Checks) -> Result<()> {
    let (a, b, cc) = (r.set("A")?, r.set("B")?, r.set("C")?);
    let g = r.element("gamma")?;
    c.check("B is a non-empty proper subset of A", proper_subset_nonempty(b, a));
    c.check("C is a non-empty proper subset of A", proper_subset_nonempty(cc, a));
    c.check("support(gamma) ⊆ A", supported_in(g, a));
    c.check("B·gamma ⊆ C", g.image(b).and_then(|x| x.is_subset(cc)));
    Ok(())
}

fn vigorous(r: &WitnessReport, c: &mut Checks) -> Result<()> {
    vigorous_post(r, c)
}

fn flexible(r: &WitnessReport, c: &mut Checks) -> Result<()> {
    vigorous_post(r, c)?;
    let (a, b, cc, d) = (r.set("A")?, r.set("B")?, r.set("C")?, r.set("D")?);
    let (chi1, chi2, g) = (r.element("chi1")?, r.element("chi2")?, r.element("gamma")?);
    c.check("D ⊆ C", d.is_subset(cc));
    c.check("B ∪ D is a proper subset of A", b.union(d).and_then(|x| x.is_proper_subset(a)));
    let rest = a.difference(&b.union(d)?)?;
    c.check("B·chi1 ⊆ A∖(B∪D)", chi1.image(b).and_then(|x| x.is_subset(&rest)));
    c.check("(A∖(B∪D))·chi2 ⊆ D", chi2.image(&rest).and_then(|x| x.is_subset(d)));
    c.check("support(chi1) ⊆ A", supported_in(chi1, a));
    c.check("support(chi2) ⊆ A", supported_in(chi2, a));
    c.check("gamma = chi1·chi2", chi1.compose(chi2).map(|x| &x == g));
    Ok(())
}

fn moved_set(r: &WitnessReport, c: &mut Checks) -> Result<()> {
    let (y, g) = (r.set("Y")?, r.element("gamma")?);
    c.check("Y is non-empty", Ok(!y.is_empty()));
    c.check("Y ∩ Y·gamma = ∅", g.image(y).and_then(|x| x.is_disjoint(y)));
    Ok(())
}

fn ssgp(r: &WitnessReport, c: &mut Checks) -> Result<()> {
    let u = r.set("U")?;
    let (eta, mu, nu) = (r.element("eta")?, r.element("mu")?, r.element("nu")?);
    c.check("U is proper", Ok(u.is_proper()));
    c.check("support(eta) ⊆ U", supported_in(eta, u));
    c.check("mu·nu = eta", mu.compose(nu).map(|x| &x == eta));
    c.check("support(mu) ⊊ U", mu.support().is_proper_subset(u));
    c.check("support(nu) ⊊ U", nu.support().is_proper_subset(u));
    Ok(())
}

fn split(r: &WitnessReport, c: &mut Checks) -> Result<()> {
    let (l, cc, d) = (r.set("L")?, r.set("C")?, r.set("D")?);
    let (mf, nf) = (r.set("mu_fixes")?, r.set("nu_fixes")?);
    let (eta, mu, nu) = (r.element("eta")?, r.element("mu")?, r.element("nu")?);
    let b = cc.union(d)?.complement();
    c.check(
        "B, C, D are proper and partition the space",
        Ok(b.is_proper() && cc.is_proper() && d.is_proper() && cc.is_disjoint(d)?),
    );
    c.check("eta fixes L pointwise", eta.pointwise_stabilises(l));
    c.check(
        "{mu_fixes, nu_fixes} = {C, D}",
        Ok((mf == d && nf == cc) || (mf == cc && nf == d)),
    );
    c.check("mu fixes mu_fixes pointwise", mu.pointwise_stabilises(mf));
    c.check("nu fixes nu_fixes pointwise", nu.pointwise_stabilises(nf));
    c.check(
        "eta = mu·nu·mu⁻¹",
        mu.compose(nu).and_then(|x| x.compose(&mu.invert())).map(|x| &x == eta),
    );
    Ok(())
}

fn acd(r: &WitnessReport, c: &mut Checks) -> Result<()> {
    let (a, cc, d) = (r.set("A")?, r.set("C")?, r.set("D")?);
    let eta = r.element("eta")?;
    let ac = a.union(cc)?;
    let ad = a.union(d)?;
    c.check("eta fixes A pointwise", eta.pointwise_stabilises(a));
    c.check(
        "A ∪ C ∪ D is a proper subset",
        ac.union(d).map(|x| !x.is_full()),
    );
    let factors = r.indexed_elements("factor");
    let mut product = PrefixBijection::identity(eta.arity());
    for (i, f) in factors.iter().enumerate() {
        c.check(
            format!("factor{i} fixes A∪C or A∪D"),
            Ok(f.pointwise_stabilises(&ac)? || f.pointwise_stabilises(&ad)?),
        );
        product = product.compose(f)?;
    }
    c.check("product of factors = eta", Ok(&product == eta));
    Ok(())
}

fn minime(r: &WitnessReport, c: &mut Checks) -> Result<()> {
    let (i, k, j) = (r.set("I")?, r.set("K")?, r.set("J")?);
    let (g, fg) = (r.element("gamma")?, r.element("image")?);
    c.check("I ⊊ J", i.is_proper_subset(j));
    c.check("J ⊊ K", j.is_proper_subset(k));
    c.check("K is proper", Ok(k.is_proper()));
    c.check("support(image) ⊆ J", supported_in(fg, j));
    let common = i.intersection(&g.preimage(i)?)?;
    c.check("image agrees with gamma on I ∩ I·gamma⁻¹", fg.agrees_on(g, &common));
    Ok(())
}

fn glue(r: &WitnessReport, c: &mut Checks) -> Result<()> {
    let pieces = r.indexed_sets("piece");
    let maps = r.indexed_elements("map");
    if pieces.is_empty() || pieces.len() != maps.len() {
        return Err(precondition("pieces and maps must pair up"));
    }
    let chi = r.element("chi")?;
    let arity = chi.arity();
    let mut dom = ClopenSet::empty(arity);
    let mut ran = ClopenSet::empty(arity);
    let mut disjoint = true;
    for (d, g) in pieces.iter().zip(&maps) {
        let img = g.image(d)?;
        disjoint &= dom.is_disjoint(d)? && ran.is_disjoint(&img)?;
        dom = dom.union(d)?;
        ran = ran.union(&img)?;
    }
    c.check("pieces are disjoint and so are their images", Ok(disjoint));
    let procedure = r.elements.get("chi_procedure");
    for (i, (d, g)) in pieces.iter().zip(&maps).enumerate() {
        c.check(format!("chi agrees with map{i} on piece{i}"), chi.agrees_on(g, d));
        if let Some(p) = procedure {
            c.check(
                format!("chi_procedure agrees with map{i} on piece{i}"),
                p.agrees_on(g, d),
            );
        }
    }
    Ok(())
}

fn small_support(r: &WitnessReport, c: &mut Checks) -> Result<()> {
    let (a, af, bf) = (r.set("A")?, r.set("alpha_fixes")?, r.set("beta_fixes")?);
    let (g, alpha, beta) = (r.element("gamma")?, r.element("alpha")?, r.element("beta")?);
    c.check("A·gamma⁻¹ = alpha_fixes", g.preimage(a).map(|x| &x == af));
    c.check("A ∩ A·gamma⁻¹ = ∅", a.is_disjoint(af));
    c.check(
        "beta_fixes = complement of A ∪ A·gamma⁻¹",
        a.union(af).map(|x| &x.complement() == bf),
    );
    c.check("alpha_fixes is proper", Ok(af.is_proper()));
    c.check("beta_fixes is proper", Ok(bf.is_proper()));
    c.check("alpha fixes alpha_fixes pointwise", alpha.pointwise_stabilises(af));
    c.check("beta fixes beta_fixes pointwise", beta.pointwise_stabilises(bf));
    c.check("alpha·beta = gamma", alpha.compose(beta).map(|x| &x == g));
    Ok(())
}

fn normal_closure(r: &WitnessReport, c: &mut Checks) -> Result<()> {
    let (j, p) = (r.set("J")?, r.set("P")?);
    let (delta, mu, nu, lambda) = (
        r.element("delta")?,
        r.element("mu")?,
        r.element("nu")?,
        r.element("lambda")?,
    );
    c.check("J is proper", Ok(j.is_proper()));
    c.check("mu is supported in J", supported_in(mu, j));
    c.check("nu is supported in J", supported_in(nu, j));
    c.check("P is non-empty", Ok(!p.is_empty()));
    c.check("P ∩ P·delta = ∅", delta.image(p).and_then(|x| x.is_disjoint(p)));
    c.check("J·lambda ⊆ P", lambda.image(j).and_then(|x| x.is_subset(p)));
    let back = lambda.invert();
    let ml = mu.conjugate(lambda)?;
    let nl = nu.conjugate(lambda)?;
    let outer = delta.commutator(&ml)?.commutator(&nl)?.conjugate(&back)?;
    let middle = ml.commutator(&nl)?.conjugate(&back)?;
    let plain = mu.commutator(nu)?;
    c.check("[[delta, mu^lambda], nu^lambda]^(lambda⁻¹) = [mu^lambda, nu^lambda]^(lambda⁻¹)", Ok(outer == middle));
    c.check("[mu^lambda, nu^lambda]^(lambda⁻¹) = [mu, nu]", Ok(middle == plain));
    Ok(())
}

fn orbit_witness(r: &WitnessReport, c: &mut Checks) -> Result<()> {
    let (a, b) = (r.set("A")?, r.set("B")?);
    c.check("A is proper", Ok(a.is_proper()));
    c.check("B is proper", Ok(b.is_proper()));
    let flag = r.value("same_orbit")?;
    c.check("same_orbit is 0 or 1", Ok(flag == 0 || flag == 1));
    let same = flag != 0;
    let m = a.arity().modulus();
    c.check(
        "verdict matches weights mod n−1",
        Ok(same == (a.weight() % m == b.weight() % m)),
    );
    if same {
        let g = r.element("gamma")?;
        c.check("A·gamma = B", g.image(a).map(|x| &x == b));
    }
    Ok(())
}

fn orbit_add(r: &WitnessReport, c: &mut Checks) -> Result<()> {
    let (u, v) = (r.set("U")?, r.set("V")?);
    let (mu, nu) = (r.element("mu")?, r.element("nu")?);
    let sum = r.set("sum")?;
    let um = mu.image(u)?;
    let vn = nu.image(v)?;
    c.check("U and V are proper", Ok(u.is_proper() && v.is_proper()));
    c.check("U·mu ∩ V·nu = ∅", um.is_disjoint(&vn));
    c.check("U·mu ∪ V·nu ≠ whole space", um.union(&vn).map(|x| !x.is_full()));
    c.check("sum = U·mu ∪ V·nu", um.union(&vn).map(|x| &x == sum));
    let cls = r.value("class")?;
    c.check(
        "class(sum) = class(U) + class(V)",
        Ok(orbit::residue(sum) as i64 == cls
            && cls == ((orbit::residue(u) + orbit::residue(v)) % u.arity().modulus()) as i64),
    );
    Ok(())
}

fn orbit_zero(r: &WitnessReport, c: &mut Checks) -> Result<()> {
    let a = r.set("A")?;
    let alpha = r.element("alpha")?;
    let aa = alpha.image(a)?;
    c.check("A is proper", Ok(a.is_proper()));
    c.check("A ⊊ A·alpha", a.is_proper_subset(&aa));
    c.check("A·alpha is proper", Ok(aa.is_proper()));
    c.check(
        "class(A·alpha ∖ A) = 0",
        aa.difference(a).map(|x| orbit::residue(&x) == 0),
    );
    Ok(())
}

fn orbit_inverse(r: &WitnessReport, c: &mut Checks) -> Result<()> {
    let a = r.set("A")?;
    let inv = r.set("inverse")?;
    let (alpha, beta) = (r.element("alpha")?, r.element("beta")?);
    let aa = alpha.image(a)?;
    let ab = beta.image(a)?;
    let ring = aa.difference(a)?;
    c.check("A is proper", Ok(a.is_proper()));
    c.check("A ⊊ A·alpha", a.is_proper_subset(&aa));
    c.check("A·alpha is proper", Ok(aa.is_proper()));
    c.check("A·beta ⊊ A·alpha ∖ A", ab.is_proper_subset(&ring));
    c.check(
        "inverse = A·alpha ∖ (A ∪ A·beta)",
        a.union(&ab).and_then(|x| aa.difference(&x)).map(|x| x == *inv),
    );
    c.check("inverse is proper", Ok(inv.is_proper()));
    c.check(
        "class(A) + class(inverse) = 0",
        Ok((orbit::residue(a) + orbit::residue(inv)) % a.arity().modulus() == 0),
    );
    Ok(())
}

fn partition(r: &WitnessReport, c: &mut Checks) -> Result<()> {
    let blocks = r.indexed_sets("block");
    if blocks.is_empty() {
        return Err(precondition("no blocks"));
    }
    let arity = blocks[0].arity();
    let mut seen = ClopenSet::empty(arity);
    let mut disjoint = true;
    for (i, b) in blocks.iter().enumerate() {
        c.check(format!("block{i} is proper"), Ok(b.is_proper()));
        disjoint &= seen.is_disjoint(b)?;
        seen = seen.union(b)?;
        let t = r.value(&format!("target{i}"))?;
        c.check(
            format!("class(block{i}) = target{i}"),
            Ok(orbit::residue(b) as i64 == t),
        );
    }
    c.check("blocks are pairwise disjoint", Ok(disjoint));
    c.check("blocks cover the space", Ok(seen.is_full()));
    Ok(())
}

fn even_realization(r: &WitnessReport, c: &mut Checks) -> Result<()> {
    let base = r.set("C")?;
    let delta = r.element("delta")?;
    let translates = r.indexed_elements("translate");
    let perm: Vec<usize> = (0..translates.len())
        .map(|i| r.value(&format!("perm{i}")).map(|v| v as usize))
        .collect::<Result<_>>()?;
    if perm.iter().any(|&p| p >= translates.len()) {
        return Err(precondition("permutation entry out of range"));
    }
    let arity = base.arity();
    let mut union = ClopenSet::empty(arity);
    let mut disjoint = true;
    let blocks: Vec<ClopenSet> = translates
        .iter()
        .map(|t| t.image(base))
        .collect::<Result<_>>()?;
    for b in &blocks {
        disjoint &= union.is_disjoint(b)?;
        union = union.union(b)?;
    }
    c.check("translated blocks are pairwise disjoint", Ok(disjoint));
    c.check("support(delta) ⊆ union of blocks", supported_in(delta, &union));
    for (i, b) in blocks.iter().enumerate() {
        // on C·γ_i, delta must act as γ_i⁻¹ γ_{g(i)}
        let want = translates[i].invert().compose(translates[perm[i]])?;
        c.check(
            format!("delta agrees with translate{i}⁻¹·translate{} on block {i}", perm[i]),
            delta.agrees_on(&want, b),
        );
    }
    Ok(())
}
