//! Algebras and coalgebras by structure constants: axiom checkers, duals,
//! convolution, tensor products and morphisms.

mod constructions;
mod morphisms;
pub(crate) mod sparse;
pub mod standard;
mod structures;

pub use constructions::{
    convolution_algebra, convolution_morphism, dual_algebra, dual_coalgebra, hom_map,
    tensor_algebras, tensor_coalgebras,
};
pub use morphisms::{
    algebra_morphism_violation, coalgebra_morphism_violation, is_algebra_morphism,
    is_coalgebra_morphism, AlgebraMorphism, CoalgebraMorphism, Violation,
};
pub use structures::{check_algebra, check_coalgebra, Algebra, Coalgebra, RawAlgebra, RawCoalgebra};

use thiserror::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

impl std::fmt::Display for Side {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Side::Left => write!(f, "left"),
            Side::Right => write!(f, "right"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum AlgError {
    #[error("associativity fails on basis triple ({0},{1},{2})")]
    AssociativityFailure(usize, usize, usize),
    #[error("{0} unit law fails on basis element {1}")]
    UnitFailure(Side, usize),
    #[error("coassociativity fails on basis element {0}")]
    CoassociativityFailure(usize),
    #[error("{0} counit law fails on basis element {1}")]
    CounitFailure(Side, usize),
    #[error("dimension mismatch: {0}")]
    DimMismatch(String),
    #[error("operands live over different fields")]
    FieldMismatch,
    #[error("not a morphism: {0}")]
    NotAMorphism(Violation),
}
