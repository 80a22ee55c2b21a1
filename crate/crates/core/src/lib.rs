//! Exact computation in the Higman–Thompson groups `V_n`.
//!
//! Clopen subsets of Cantor space, prefix-exchange elements, constructive
//! witnesses, orbit classes, free subgroups and the two-generator pipeline.

pub mod cantor;
mod check;
pub mod error;
pub mod orbit;
pub mod prefix_map;
pub mod report;
pub mod sample;
pub mod twogen;
pub mod verify;
pub mod witness;
pub mod words;

pub use cantor::{Arity, ClopenSet, Word};
pub use error::{Error, Result};
pub use orbit::OrbitClass;
pub use prefix_map::{OrderResult, PartialMap, PrefixBijection, DEFAULT_ORDER_BOUND};
pub use report::{Condition, WitnessReport};
pub use twogen::{GenerationCertificate, TwoGenCertificate};
pub use verify::{verify_str, Outcome, Verdict};
pub use words::{FreenessCertificate, GroupWord, LawlessnessCertificate};
