//! Orbit classes of proper clopen sets under `V_n`, as weight residues
//! modulo `n − 1`, with set-level witnesses for every group operation.

use std::collections::VecDeque;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::cantor::{Arity, ClopenSet, Word};
use crate::error::{precondition, Error, Result};
use crate::prefix_map::PrefixBijection;
use crate::report::WitnessReport;
use crate::witness::{pair_sets, vigorous};

/// Weight of a clopen set modulo `n − 1`.
pub fn residue(s: &ClopenSet) -> usize {
    s.weight() % s.arity().modulus()
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "ClassJson", into = "ClassJson")]
pub struct OrbitClass {
    arity: Arity,
    residue: usize,
}

#[derive(Serialize, Deserialize)]
struct ClassJson {
    n: usize,
    residue: usize,
}

impl TryFrom<ClassJson> for OrbitClass {
    type Error = Error;
    fn try_from(j: ClassJson) -> Result<Self> {
        OrbitClass::new(Arity::new(j.n)?, j.residue)
    }
}

impl From<OrbitClass> for ClassJson {
    fn from(c: OrbitClass) -> Self {
        ClassJson { n: c.arity.get(), residue: c.residue }
    }
}

impl OrbitClass {
    pub fn new(arity: Arity, residue: usize) -> Result<Self> {
        if residue >= arity.modulus() {
            return Err(precondition(format!(
                "residue {residue} out of range mod {}",
                arity.modulus()
            )));
        }
        Ok(OrbitClass { arity, residue })
    }

    /// Reduces any integer into the class group.
    pub fn from_int(arity: Arity, r: i64) -> Self {
        let m = arity.modulus() as i64;
        OrbitClass { arity, residue: r.rem_euclid(m) as usize }
    }

    pub fn arity(self) -> Arity {
        self.arity
    }

    pub fn residue(self) -> usize {
        self.residue
    }

    /// Class of the empty set.
    pub fn zero(arity: Arity) -> Self {
        OrbitClass { arity, residue: 0 }
    }

    /// Class of the whole space.
    pub fn total(arity: Arity) -> Self {
        OrbitClass { arity, residue: 1 % arity.modulus() }
    }

    pub fn add(self, other: OrbitClass) -> Result<Self> {
        self.arity.check(other.arity)?;
        Ok(OrbitClass {
            arity: self.arity,
            residue: (self.residue + other.residue) % self.arity.modulus(),
        })
    }

    pub fn neg(self) -> Self {
        let m = self.arity.modulus();
        OrbitClass { arity: self.arity, residue: (m - self.residue) % m }
    }

    /// `self = y + y` for some class `y`.
    pub fn is_even(self) -> bool {
        self.half().is_some()
    }

    /// Some `y` with `y + y = self`.
    pub fn half(self) -> Option<OrbitClass> {
        let m = self.arity.modulus();
        (0..m)
            .find(|y| (2 * y) % m == self.residue)
            .map(|y| OrbitClass { arity: self.arity, residue: y })
    }
}

impl fmt::Debug for OrbitClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} mod {}", self.residue, self.arity.modulus())
    }
}

pub fn class_of(a: &ClopenSet) -> Result<OrbitClass> {
    if !a.is_proper() {
        return Err(precondition("orbit classes are defined for proper non-empty sets"));
    }
    Ok(OrbitClass { arity: a.arity(), residue: residue(a) })
}

/// An element carrying `a` onto `b`, when their classes agree.
pub fn orbit_map(a: &ClopenSet, b: &ClopenSet) -> Result<PrefixBijection> {
    let inside = pair_sets(a, b)?;
    let outside = pair_sets(&a.complement(), &b.complement())?;
    PrefixBijection::from_partial(inside.disjoint_union(&outside)?)
}

pub fn orbit_witness(a: &ClopenSet, b: &ClopenSet) -> Result<WitnessReport> {
    class_of(a)?;
    class_of(b)?;
    let same = residue(a) == residue(b);
    let mut rep = WitnessReport::new("orbit_witness")
        .with_set("A", a.clone())
        .with_set("B", b.clone())
        .with_value("same_orbit", same as i64);
    if same {
        rep = rep.with_element("gamma", orbit_map(a, b)?);
    }
    Ok(rep.seal())
}

/// Set-level sum: `U·mu ∪ V·nu` with `mu`, `nu` parking `U`, `V` in the two given cones.
pub fn set_add_into(u: &ClopenSet, v: &ClopenSet, slots: (&Word, &Word)) -> Result<WitnessReport> {
    class_of(u)?;
    class_of(v)?;
    u.arity().check(v.arity())?;
    let arity = u.arity();
    let full = ClopenSet::full(arity);
    let mu = vigorous(&full, u, &ClopenSet::cone(arity, slots.0.clone()))?;
    let nu = vigorous(&full, v, &ClopenSet::cone(arity, slots.1.clone()))?;
    let sum = mu.image(u)?.union(&nu.image(v)?)?;
    Ok(WitnessReport::new("orbit_add")
        .with_set("U", u.clone())
        .with_set("V", v.clone())
        .with_set("sum", sum.clone())
        .with_set("slot_U", ClopenSet::cone(arity, slots.0.clone()))
        .with_set("slot_V", ClopenSet::cone(arity, slots.1.clone()))
        .with_element("mu", mu)
        .with_element("nu", nu)
        .with_value("class", residue(&sum) as i64)
        .seal())
}

pub fn set_add(u: &ClopenSet, v: &ClopenSet) -> Result<WitnessReport> {
    set_add_into(u, v, (&Word::from_vec(vec![0, 0]), &Word::from_vec(vec![0, 1])))
}

/// Up to `count` children of the least cone of the complement of `a`
/// (never all of them), as a residue-`count` set disjoint from `a`.
fn spare_children(a: &ClopenSet, count: usize) -> ClopenSet {
    let c = a.complement().cones()[0].clone();
    let kids: Vec<Word> = (0..count as u8).map(|i| c.child(i)).collect();
    ClopenSet::canonicalize(a.arity(), kids).expect("letters in range")
}

/// `α` with `A ⊊ Aα`, witnessing that the class of `Aα∖A` is the zero class.
pub fn zero_witness(a: &ClopenSet) -> Result<WitnessReport> {
    class_of(a)?;
    let z = spare_children(a, a.arity().modulus());
    let alpha = orbit_map(a, &a.union(&z)?)?;
    Ok(WitnessReport::new("orbit_zero")
        .with_set("A", a.clone())
        .with_element("alpha", alpha)
        .seal())
}

/// A set whose class is the negative of the class of `a`.
pub fn inverse_witness(a: &ClopenSet) -> Result<(ClopenSet, WitnessReport)> {
    class_of(a)?;
    let arity = a.arity();
    let z = spare_children(a, arity.modulus());
    let alpha = orbit_map(a, &a.union(&z)?)?;
    let deep = ClopenSet::cone(arity, z.cones()[0].child(0));
    let beta = vigorous(&ClopenSet::full(arity), a, &deep)?;
    let result = z.difference(&beta.image(a)?)?;
    let rep = WitnessReport::new("orbit_inverse")
        .with_set("A", a.clone())
        .with_set("inverse", result.clone())
        .with_element("alpha", alpha)
        .with_element("beta", beta)
        .seal();
    Ok((result, rep))
}

/// A partition of the space whose blocks start with `fixed` and then take
/// the `targets` classes in order; the last block is whatever remains.
pub fn partition_with(arity: Arity, fixed: &[ClopenSet], targets: &[OrbitClass]) -> Result<Vec<ClopenSet>> {
    let mut total = OrbitClass::zero(arity);
    let mut used = ClopenSet::empty(arity);
    for f in fixed {
        total = total.add(class_of(f)?)?;
        if !used.is_disjoint(f)? {
            return Err(precondition("fixed blocks overlap"));
        }
        used = used.union(f)?;
    }
    for t in targets {
        total = total.add(*t)?;
    }
    if fixed.len() + targets.len() < 2 {
        return Err(Error::NoPartition("need at least two blocks".into()));
    }
    if total != OrbitClass::total(arity) {
        return Err(Error::NoPartition(format!(
            "classes sum to {} but the whole space has class {}",
            total.residue,
            OrbitClass::total(arity).residue
        )));
    }
    let Some((_, free)) = targets.split_last() else {
        return Err(Error::NoPartition("no free block left for the remainder".into()));
    };
    let rest = used.complement();
    if rest.is_empty() {
        return Err(Error::NoPartition("fixed blocks cover the space".into()));
    }
    let mut pool = Pool::new(&rest);
    let mut blocks: Vec<ClopenSet> = fixed.to_vec();
    for t in free {
        blocks.push(pool.take(*t)?);
    }
    blocks.push(pool.rest()?);
    Ok(blocks)
}

/// Cones of a set, shallowest first, handed out a class at a time while
/// always keeping at least one cone back.
struct Pool {
    arity: Arity,
    cones: VecDeque<Word>,
}

impl Pool {
    fn new(set: &ClopenSet) -> Self {
        let mut cones: VecDeque<Word> = set.cones().iter().cloned().collect();
        cones.make_contiguous().sort_by_key(|w| w.len());
        Pool { arity: set.arity(), cones }
    }

    fn take(&mut self, class: OrbitClass) -> Result<ClopenSet> {
        let k = if class.residue == 0 { self.arity.modulus() } else { class.residue };
        while self.cones.len() <= k {
            let w = self.cones.pop_front().expect("pool never empties");
            self.cones.extend(w.children(self.arity));
        }
        let taken: Vec<Word> = self.cones.drain(..k).collect();
        ClopenSet::canonicalize(self.arity, taken)
    }

    fn rest(self) -> Result<ClopenSet> {
        ClopenSet::canonicalize(self.arity, self.cones)
    }
}

/// Splits `set` into a part of the given class and a non-empty remainder.
pub fn carve(set: &ClopenSet, class: OrbitClass) -> Result<(ClopenSet, ClopenSet)> {
    set.arity().check(class.arity)?;
    if set.is_empty() {
        return Err(precondition("cannot carve the empty set"));
    }
    let mut pool = Pool::new(set);
    let part = pool.take(class)?;
    Ok((part, pool.rest()?))
}

pub fn partition_for(arity: Arity, targets: &[OrbitClass]) -> Result<Vec<ClopenSet>> {
    partition_with(arity, &[], targets)
}

pub fn partition_witness(arity: Arity, targets: &[OrbitClass]) -> Result<WitnessReport> {
    let blocks = partition_for(arity, targets)?;
    let mut rep = WitnessReport::new("partition");
    for (i, (b, t)) in blocks.into_iter().zip(targets).enumerate() {
        rep = rep
            .with_set(format!("block{i}"), b)
            .with_value(format!("target{i}"), t.residue as i64);
    }
    Ok(rep.seal())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(k: usize, cones: &[&str]) -> ClopenSet {
        ClopenSet::parse(Arity::new(k).unwrap(), cones).unwrap()
    }

    fn cls(k: usize, r: usize) -> OrbitClass {
        OrbitClass::new(Arity::new(k).unwrap(), r).unwrap()
    }

    #[test]
    fn classes() {
        assert_eq!(class_of(&set(2, &["0"])).unwrap().residue(), 0);
        assert_eq!(class_of(&set(3, &["0"])).unwrap().residue(), 1);
        assert_eq!(class_of(&set(3, &["00", "01"])).unwrap().residue(), 0);
        assert!(class_of(&ClopenSet::full(Arity::new(3).unwrap())).is_err());
    }

    #[test]
    fn arithmetic() {
        assert_eq!(cls(3, 1).add(cls(3, 1)).unwrap(), cls(3, 0));
        assert_eq!(cls(5, 2).add(cls(5, 3)).unwrap(), cls(5, 1));
        assert_eq!(cls(3, 1).neg(), cls(3, 1));
        let n2 = Arity::new(2).unwrap();
        assert_eq!(OrbitClass::zero(n2), OrbitClass::total(n2));
        assert!(cls(3, 0).is_even() && !cls(3, 1).is_even());
        assert!((0..3).all(|r| cls(4, r).is_even()));
    }

    #[test]
    fn set_level_sum() {
        let rep = set_add(&set(3, &["0"]), &set(3, &["1"])).unwrap();
        assert!(rep.all_pass, "{:?}", rep.conditions);
        assert_eq!(rep.value("class").unwrap(), 0);
    }

    #[test]
    fn inverses() {
        let (inv, rep) = inverse_witness(&set(3, &["0"])).unwrap();
        assert!(rep.all_pass, "{:?}", rep.conditions);
        assert_eq!(residue(&inv), 1);
        let (inv, rep) = inverse_witness(&set(5, &["0", "1", "2"])).unwrap();
        assert!(rep.all_pass, "{:?}", rep.conditions);
        assert_eq!(residue(&inv), 1);
        let (_, rep) = inverse_witness(&set(2, &["01"])).unwrap();
        assert!(rep.all_pass);
    }

    #[test]
    fn partitions() {
        let rep = partition_witness(Arity::new(2).unwrap(), &[cls(2, 0); 3]).unwrap();
        assert!(rep.all_pass, "{:?}", rep.conditions);
        let rep = partition_witness(Arity::new(3).unwrap(), &[cls(3, 1); 3]).unwrap();
        assert!(rep.all_pass, "{:?}", rep.conditions);
        assert!(matches!(
            partition_for(Arity::new(3).unwrap(), &[cls(3, 0), cls(3, 0)]),
            Err(Error::NoPartition(_))
        ));
    }

    #[test]
    fn orbit_witnesses() {
        let rep = orbit_witness(&set(2, &["0"]), &set(2, &["00"])).unwrap();
        assert!(rep.all_pass && rep.value("same_orbit").unwrap() == 1);
        let rep = orbit_witness(&set(3, &["0"]), &set(3, &["00", "01"])).unwrap();
        assert!(rep.all_pass && rep.value("same_orbit").unwrap() == 0);
        assert!(rep.elements.is_empty());
    }
}
