//! AME checks, minimal support, majorization along circuits, the five-party
//! Mermin operator and a majorization-guided greedy search.

mod ame;
mod majorization;
mod mermin;
mod parties;
mod search;

pub use ame::{minimal_support, verify_ame, AmeVerdict, AME_TOL};
pub use majorization::{
    majorization_analysis, majorizes, BipartitionReport, MajorizationReport, StepRecord, EIGEN_FLOOR,
    MAJORIZATION_TOL,
};
pub use mermin::{mermin_classical_max, mermin_deterministic, mermin_m5, mermin_terms, MerminSettings};
pub use parties::{canonical_bipartitions, raw_bipartition_count, Bipartition, Parties};
pub use search::{greedy_majorizing_search, SearchOutcome};
