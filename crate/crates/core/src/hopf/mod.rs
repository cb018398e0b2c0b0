//! Bimonoids and the structures over them: module comonoids, comodule
//! monoids, Hopf modules and module monoids. The opmonoidal map `χ` on
//! internal homs, the lax monoidal structure of `Q`, the comodule monoid
//! `Q_n(M, N)` over the bimonoid `P_n(H, A)`, and the lift of `Q(−, k)` to
//! Hopf modules.
//!
//! Coactions are left coactions `N → M ⊗ N`, as everywhere else in the crate.
//! Every compatibility diagram is compared as an exact matrix identity; a
//! failure names the diagram and the first basis tuple where it fails.

mod chi;
mod lax;
mod lift;
mod linear;
mod structures;

pub use chi::{chi_braiding_check, chi_diagrams, chi_map, chi_unit};
pub use lax::{
    measuring_bimonoid, q_functor, q_lax_structure, q_lax_unit, qmn_comodule_monoid, qmn_truncations,
    tensor_measurings, tensor_module_measurings, QmnStructure, QmnTruncations,
};
pub use lift::{
    hopf_lift_check, hopf_lift_truncations, lift_comodule_structure, lift_module_structure, HopfLift,
    HopfLiftTruncations,
};
pub use linear::{perm_matrix, swap_matrix};
pub use structures::{
    check_bimonoid, check_comodule_monoid, check_hopf_module, check_module_comonoid, check_module_monoid,
    cyclic_group_bimonoid, dual_bimonoid, group_bimonoid, tensor_bimonoids, Bimonoid, ComoduleMonoid, HopfModule,
    ModuleComonoid, ModuleMonoid,
};

use thiserror::Error;

use crate::algcore::AlgError;
use crate::measuring::MeasError;
use crate::modcomod::ModError;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum HopfError {
    #[error("diagram `{diagram}` fails at basis indices {indices:?}")]
    DiagramFailure { diagram: String, indices: Vec<usize> },
    #[error("structures do not fit together: {0}")]
    BaseMismatch(String),
    #[error("dimension mismatch: {0}")]
    DimMismatch(String),
    #[error("operands live over different fields")]
    FieldMismatch,
    #[error("not an isomorphism: {0}")]
    NotIso(String),
    #[error("the two routes disagree when computing {0}")]
    RouteDisagreement(&'static str),
    #[error(transparent)]
    Alg(#[from] AlgError),
    #[error(transparent)]
    Mod(#[from] ModError),
    #[error(transparent)]
    Meas(#[from] MeasError),
}

impl HopfError {
    pub(crate) fn diagram(name: &str, indices: Vec<usize>) -> HopfError {
        HopfError::DiagramFailure { diagram: name.to_string(), indices }
    }
}
