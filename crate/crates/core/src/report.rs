//! Witness reports: named sets and elements plus the conditions they satisfy.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::cantor::ClopenSet;
use crate::error::{malformed, Result};
use crate::prefix_map::PrefixBijection;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Condition {
    pub desc: String,
    pub pass: bool,
}

/// Output of a constructive operation. `kind` names the operation, which
/// selects the verifier that recomputes `conditions` from the named fields.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessReport {
    pub kind: String,
    pub sets: BTreeMap<String, ClopenSet>,
    pub elements: BTreeMap<String, PrefixBijection>,
    #[serde(default)]
    pub values: BTreeMap<String, i64>,
    pub conditions: Vec<Condition>,
    pub all_pass: bool,
}

impl WitnessReport {
    pub(crate) fn new(kind: &str) -> Self {
        WitnessReport {
            kind: kind.to_string(),
            sets: BTreeMap::new(),
            elements: BTreeMap::new(),
            values: BTreeMap::new(),
            conditions: Vec::new(),
            all_pass: false,
        }
    }

    pub(crate) fn with_set(mut self, name: impl Into<String>, s: ClopenSet) -> Self {
        self.sets.insert(name.into(), s);
        self
    }

    pub(crate) fn with_element(mut self, name: impl Into<String>, e: PrefixBijection) -> Self {
        self.elements.insert(name.into(), e);
        self
    }

    pub(crate) fn with_value(mut self, name: impl Into<String>, v: i64) -> Self {
        self.values.insert(name.into(), v);
        self
    }

    /// Runs the independent verifier and records its verdict.
    pub(crate) fn seal(mut self) -> Self {
        self.conditions = crate::check::recheck(&self);
        self.all_pass = self.conditions.iter().all(|c| c.pass);
        self
    }

    pub fn set(&self, name: &str) -> Result<&ClopenSet> {
        self.sets
            .get(name)
            .ok_or_else(|| malformed(format!("missing set `{name}`")))
    }

    pub fn element(&self, name: &str) -> Result<&PrefixBijection> {
        self.elements
            .get(name)
            .ok_or_else(|| malformed(format!("missing element `{name}`")))
    }

    pub fn value(&self, name: &str) -> Result<i64> {
        self.values
            .get(name)
            .copied()
            .ok_or_else(|| malformed(format!("missing value `{name}`")))
    }

    /// Names of indexed fields `prefix0, prefix1, …` present in the element map.
    pub fn indexed_elements(&self, prefix: &str) -> Vec<&PrefixBijection> {
        (0..)
            .map_while(|i| self.elements.get(&format!("{prefix}{i}")))
            .collect()
    }

    pub fn indexed_sets(&self, prefix: &str) -> Vec<&ClopenSet> {
        (0..)
            .map_while(|i| self.sets.get(&format!("{prefix}{i}")))
            .collect()
    }

    pub fn failed(&self) -> impl Iterator<Item = &Condition> {
        self.conditions.iter().filter(|c| !c.pass)
    }
}

/// Accumulates conditions; an evaluation error counts as a failure.
#[derive(Default)]
pub(crate) struct Checks(pub Vec<Condition>);

impl Checks {
    pub fn check(&mut self, desc: impl Into<String>, outcome: Result<bool>) {
        let desc = desc.into();
        match outcome {
            Ok(pass) => self.0.push(Condition { desc, pass }),
            Err(e) => self.0.push(Condition {
                desc: format!("{desc} ({e})"),
                pass: false,
            }),
        }
    }

    pub fn all_pass(&self) -> bool {
        self.0.iter().all(|c| c.pass)
    }
}
