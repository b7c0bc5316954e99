//! Intersecting and t-intersecting k-uniform set families: constructions,
//! shifting, transversals, shadows, exact degree bounds, and exhaustive
//! search over maximal families at small parameters.
//!
//! Sets are single-word bitmasks over `[n]` with `n ≤ 64`; vertex `v` is bit
//! `v - 1`.
//!
//! ```
//! use degree_forge::{build, degree_sequence, ConstructionKind, ConstructionSpec};
//!
//! let h2 = build(&ConstructionSpec::new(ConstructionKind::HEll, 7, 3, 2)).unwrap();
//! assert_eq!(degree_sequence(&h2).values(), vec![9, 9, 9, 3, 3, 3, 3]);
//! ```

pub mod bounds;
pub mod constructions;
pub mod error;
pub mod family;
pub mod format;
pub mod grid;
pub mod search;
pub mod shadows;
pub mod transforms;
pub mod transversal;

pub use bounds::{
    binom, evaluate, inequality_sweep, BoundId, BoundParams, Evaluation, InequalityId, SweepReport,
};
pub use constructions::{build, closed_form, ClosedForm, ConstructionKind, ConstructionSpec};
pub use error::{Error, Result};
pub use family::{
    compare_sets, degree_sequence, diversity, is_t_intersecting, k_subsets, link, DegreeSequence,
    SetOrder, UniformFamily, VertexSet,
};
pub use format::{parse_family, write_family};
pub use grid::Grid;
pub use search::{
    canonical_form, conjecture_probe, enumerate_maximal, for_each_maximal, max_degree_profile,
    verify_theorem, CanonicalForm, ProbeId, ProbeReport, Restrict, SearchOptions, SearchReport,
    Verdict, VerifyReport, Witness,
};
pub use shadows::{cross_check, kk_min_shadow, shadow, CrossPair};
pub use transforms::{is_shifted, make_shifted, saturate, shift_ij, SaturationMode};
pub use transversal::{check_basis_lemmas, transversal_report, TransversalReport};
