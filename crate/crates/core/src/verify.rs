//! Certificate verification from JSON alone, dispatched on the `kind` field.

use serde::de::DeserializeOwned;
use serde::Serialize;
use serde_json::Value;

use crate::cantor::ClopenSet;
use crate::error::{malformed, precondition, Result};
use crate::orbit::{self, OrbitClass};
use crate::report::{Checks, Condition, WitnessReport};
use crate::twogen::{self, GenerationCertificate, TwoGenCertificate};
use crate::witness;
use crate::words::{pingpong_pair, FreenessCertificate, LawlessnessCertificate};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Pass,
    Fail,
    Inconclusive,
}

#[derive(Debug, Clone)]
pub struct Verdict {
    pub kind: String,
    pub conditions: Vec<Condition>,
    pub outcome: Outcome,
}

impl Verdict {
    pub fn failed(&self) -> impl Iterator<Item = &Condition> {
        self.conditions.iter().filter(|c| !c.pass)
    }
}

/// Recomputed conditions followed by a check that the recorded ones agree.
fn settle(recorded: &[Condition], fresh: Vec<Condition>) -> Vec<Condition> {
    let mut c = Checks(fresh);
    let same = recorded == c.0.as_slice();
    c.check("recorded conditions match the recomputation", Ok(same));
    c.0
}

/// Decodes `v` and insists it re-encodes to itself, so that sets and
/// elements are given in canonical form.
fn decode<T: DeserializeOwned + Serialize>(mut v: Value) -> std::result::Result<T, String> {
    if let Value::Object(m) = &mut v {
        m.remove("schema");
    }
    let t: T = serde_json::from_value(v.clone()).map_err(|e| e.to_string())?;
    let back = serde_json::to_value(&t).map_err(|e| e.to_string())?;
    if back != v {
        return Err("fields are not in canonical form".into());
    }
    Ok(t)
}

fn single_cone(s: &ClopenSet) -> Result<&crate::Word> {
    match s.cones() {
        [w] => Ok(w),
        _ => Err(precondition("slot must be a single cone")),
    }
}

/// Runs the construction again on the report's inputs.
fn rerun(r: &WitnessReport) -> Result<WitnessReport> {
    let set = |k: &str| r.set(k);
    let elem = |k: &str| r.element(k);
    match r.kind.as_str() {
        "vigorous" => witness::vigorous_witness(set("A")?, set("B")?, set("C")?),
        "flexible" => witness::flexible_to_vigorous_witness(set("A")?, set("B")?, set("C")?),
        "moved_set" => witness::moved_set_witness(elem("gamma")?),
        "ssgp" => witness::ssgp_factor(elem("eta")?, set("U")?),
        "split" => witness::split_by_stabilisers(elem("eta")?, set("L")?, set("C")?, set("D")?),
        "acd" => witness::acd_factor(elem("eta")?, set("A")?, set("C")?, set("D")?),
        "minime" => witness::minime_shrink_witness(set("I")?, set("K")?, elem("gamma")?),
        "glue" => {
            let pieces: Vec<_> = r
                .indexed_sets("piece")
                .into_iter()
                .cloned()
                .zip(r.indexed_elements("map").into_iter().cloned())
                .collect();
            witness::glue(&pieces)
        }
        "small_support" => witness::small_support_factor(elem("gamma")?),
        "normal_closure" => witness::normal_closure_trick(elem("delta")?, elem("mu")?, elem("nu")?, set("J")?),
        "orbit_witness" => orbit::orbit_witness(set("A")?, set("B")?),
        "orbit_add" => orbit::set_add_into(
            set("U")?,
            set("V")?,
            (single_cone(set("slot_U")?)?, single_cone(set("slot_V")?)?),
        ),
        "orbit_zero" => orbit::zero_witness(set("A")?),
        "orbit_inverse" => orbit::inverse_witness(set("A")?).map(|(_, rep)| rep),
        "partition" => {
            let arity = set("block0")?.arity();
            let targets = (0..r.values.len())
                .map(|i| r.value(&format!("target{i}")).map(|t| OrbitClass::from_int(arity, t)))
                .collect::<Result<Vec<_>>>()?;
            orbit::partition_witness(arity, &targets)
        }
        "even_realization" => {
            let translates: Vec<_> = r.indexed_elements("translate").into_iter().cloned().collect();
            let perm = (0..translates.len())
                .map(|i| r.value(&format!("perm{i}")).map(|v| v as usize))
                .collect::<Result<Vec<_>>>()?;
            twogen::even_realization(set("C")?, &translates, &perm)
        }
        other => Err(precondition(format!("unknown report kind `{other}`"))),
    }
}

/// Only non-JSON input or a missing `kind` is an error; anything that
/// fails to decode as its declared kind is a failed verification.
pub fn verify_value(v: Value) -> Result<Verdict> {
    let kind = v
        .get("kind")
        .and_then(Value::as_str)
        .ok_or_else(|| malformed("certificate has no string `kind` field"))?
        .to_string();
    let mut inconclusive = false;
    let conditions = match kind.as_str() {
        "freeness" => decode::<FreenessCertificate>(v).map(|f| {
            let mut c = Checks(settle(&f.conditions, f.recheck()));
            c.check("verdict is `certified`", Ok(f.verdict == "certified"));
            c.check(
                "certificate matches a fresh run on its blocks",
                pingpong_pair(&[f.a.clone(), f.b.clone(), f.c.clone(), f.d.clone()], f.word_depth).map(|x| x == f),
            );
            c.0
        }),
        "lawlessness" => decode::<LawlessnessCertificate>(v).map(|l| {
            let mut c = Checks(settle(&l.conditions, l.recheck()));
            let arity = l.a.arity();
            c.check(
                "certificate matches a fresh run on its word",
                LawlessnessCertificate::new(arity, &l.word).map(|x| x == l),
            );
            c.0
        }),
        "generation" => decode::<GenerationCertificate>(v).map(|g| {
            inconclusive = !g.is_verified();
            settle(&g.conditions, g.recheck())
        }),
        "twogen" => decode::<TwoGenCertificate>(v).map(|t| {
            inconclusive = !t.generation.is_verified();
            let fresh = t.recheck();
            let status = TwoGenCertificate::status_for(&fresh, &t.generation);
            let mut c = Checks(settle(&t.identity_checks, fresh));
            let generation = t.generation.recheck();
            c.check(
                "recorded generation conditions match the recomputation",
                Ok(generation == t.generation.conditions),
            );
            c.check(format!("status `{}` matches the checks", t.status), Ok(t.status == status));
            c.0
        }),
        _ => decode::<WitnessReport>(v).map(|r| {
            let fresh = crate::check::recheck(&r);
            let all = fresh.iter().all(|c| c.pass);
            let mut c = Checks(settle(&r.conditions, fresh));
            c.check("all_pass matches the conditions", Ok(r.all_pass == all));
            c.check(
                "outputs match a fresh run of the construction on the inputs",
                rerun(&r).map(|x| x.sets == r.sets && x.elements == r.elements && x.values == r.values),
            );
            c.0
        }),
    };
    let conditions = conditions.unwrap_or_else(|e| {
        vec![Condition { desc: format!("certificate decodes as `{kind}` ({e})"), pass: false }]
    });
    let outcome = if conditions.iter().any(|c| !c.pass) {
        Outcome::Fail
    } else if inconclusive {
        Outcome::Inconclusive
    } else {
        Outcome::Pass
    };
    Ok(Verdict { kind, conditions, outcome })
}

pub fn verify_str(s: &str) -> Result<Verdict> {
    let v: Value = serde_json::from_str(s).map_err(|e| malformed(format!("not JSON: {e}")))?;
    verify_value(v)
}
