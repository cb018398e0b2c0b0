//! Measurings, the truncated universal measuring comonoid `P_n(A, B)` and
//! comodule `Q_n(M, N)`, and checks of their couniversal properties.
//!
//! `P_n` is computed inside a truncated pointed cofree coalgebra on
//! `Hom(A, B)` whose points are the algebra maps `A → B`; it is the largest
//! subcoalgebra on which the measuring identities hold. Every factorization
//! through it is verified before it is returned.

mod census;
mod cofree;
mod comodule;
mod comonoid;
mod grouplikes;
mod largest;
mod map;
mod points;

pub use census::{
    adjunction_bijection_census, comodule_census, enumerate_coalgebra_maps, enumerate_measurings,
    CensusReport, ComoduleCensusReport,
};
pub use cofree::{pointed_cofree_truncation, PathCoalgebra, Word};
pub use comodule::{
    check_isocomod, comodule_couniversal_factor, comodule_truncation_inclusion, free_module,
    measuring_comodule_truncated, verify_module_measuring, IsoComodReport, IsoComodRow,
    ModuleMeasuringMap, TruncatedMeasuringComodule,
};
pub use comonoid::{
    coradical_filtration, couniversal_factor, finite_dual, measuring_comonoid_truncated,
    truncation_inclusion, TruncatedMeasuringComonoid, TruncationOptions,
};
pub use grouplikes::{grouplikes, is_grouplike};
pub use largest::{
    largest_subcoalgebra_in, largest_subcoalgebra_sparse, largest_subcomodule_in,
    largest_subcomodule_sparse, restrict_coalgebra, restrict_comodule, SparseCoalgebra,
    SparseComodule, SparseView,
};
pub use map::{
    hom_matrix_to_vector, hom_vector_to_matrix, measuring_identities_hold, verify_measuring,
    MeasuringMap,
};
pub use points::{
    algebra_maps, algebra_maps_in_range, matrix_algebra_over, matrix_valued_maps, Budget,
};

use thiserror::Error;

use crate::algcore::AlgError;
use crate::exactlin::LinError;
use crate::modcomod::ModError;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum MeasError {
    #[error("enumeration needs {needed} candidates, budget is {budget}")]
    BudgetExceeded { needed: String, budget: u128 },
    #[error("hint {0} is not an algebra map")]
    HintInvalid(usize),
    #[error("coradical length {needed} exceeds truncation degree {degree}")]
    TruncationInsufficient { needed: usize, degree: usize },
    #[error("unmatched point: {0}")]
    UnmatchedPoint(String),
    #[error("not a measuring")]
    NotMeasuring,
    #[error("no factorization: {0}")]
    NoFactorization(String),
    #[error("lifted comodule map leaves the truncation")]
    ImageEscapesTruncation,
    #[error("the two routes disagree when checking {0}")]
    RouteDisagreement(&'static str),
    #[error("subspace is not closed: {0}")]
    NotClosed(&'static str),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("operands live over different fields")]
    FieldMismatch,
    #[error("dimension mismatch: {0}")]
    DimMismatch(String),
    #[error("structures live over different (co)algebras")]
    BaseMismatch,
    #[error(transparent)]
    Alg(#[from] AlgError),
    #[error(transparent)]
    Mod(#[from] ModError),
    #[error(transparent)]
    Lin(#[from] LinError),
}
