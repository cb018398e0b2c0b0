//! Left modules and left comodules, (co)restriction of scalars, the global
//! categories of modules and comodules, the Hom construction and the action
//! isomorphisms.

mod action_isos;
mod global;
mod ops;
mod structures;

pub use action_isos::{
    currying_iso, hom_functor_map, unit_iso, verify_action_isos, ActionIsoReport,
};
pub use global::{factor_global_comod, factor_global_mod, GlobalComodMorphism, GlobalModMorphism};
pub use ops::{corestrict, hom_module, restrict, tensor_comodules, tensor_modules};
pub use structures::{check_comodule, check_module, is_comodule_map, is_module_map, Comodule, Module};

use thiserror::Error;

use crate::algcore::AlgError;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ModError {
    #[error("action associativity fails at (a={0}, b={1}, m={2})")]
    ActionAssociativityFailure(usize, usize, usize),
    #[error("unit does not act as the identity on basis element {0}")]
    ActionUnitFailure(usize),
    #[error("coaction coassociativity fails on basis element {0}")]
    CoactionCoassociativityFailure(usize),
    #[error("counit law fails for the coaction on basis element {0}")]
    CoactionCounitFailure(usize),
    #[error("dimension mismatch: {0}")]
    DimMismatch(String),
    #[error("operands live over different fields")]
    FieldMismatch,
    #[error("(co)algebra of the structure does not match the morphism")]
    BaseMismatch,
    #[error("the given data is not a morphism of the global category")]
    NotAMorphism,
    #[error(transparent)]
    Alg(#[from] AlgError),
}
