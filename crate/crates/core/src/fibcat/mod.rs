//! Finite categories, split indexed categories and their Grothendieck
//! constructions, (op)fibred 1-cells, and the synthesis of adjoints between
//! total categories from a base adjunction and fibrewise adjunctions.
//!
//! Everything is finite and every property is checked exhaustively: the
//! category laws on construction, the universal property of every chosen
//! lifting, uniqueness of factorizations, and the hom-bijection of every
//! synthesized adjunction on every pair of objects.

mod adjoint;
mod category;
mod cell;
pub mod corpus;
mod indexed;
mod instance;

pub use adjoint::{
    check_cat2_adjunction, check_omega_invertible, cocartesian_check, converse_holds, extract_fibrewise,
    fibrewise_composite, fixed_base_fibred_adjoint_check, omega_biconditional, preserves_liftings,
    synthesize_adjoint, synthesize_left_adjoint, synthesize_right_adjoint, ChiReport, MateComponent, Side,
    Synthesis,
};
pub use category::{
    is_cartesian, is_cocartesian, FiniteAdjunction, FiniteCategory, FiniteFunctor, NaturalTransformation,
    DEFAULT_MORPHISM_CAP,
};
pub use cell::{reindex_commute_iso, FibredCell};
pub use indexed::{
    factorize, grothendieck, grothendieck_with_cap, Factorization, IndexedCategory, TotalCategory, TotalMorphism,
    Variance,
};
pub use instance::{
    AdjointSpec, CategorySpec, FibInstance, FibInstanceSpec, FibReport, FunctorSpec, IndexedSpec, MorphismSpec,
};

use thiserror::Error;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum FibError {
    #[error("{morphisms} morphisms exceed the cap of {cap}")]
    TooLarge { morphisms: usize, cap: usize },
    #[error("invalid category: {0}")]
    InvalidCategory(String),
    #[error("invalid functor: {0}")]
    InvalidFunctor(String),
    #[error("not natural: {0}")]
    NotNatural(String),
    #[error("not an adjunction: {0}")]
    NotAdjunction(String),
    #[error("not a split indexed category: {0}")]
    NotSplit(String),
    #[error("chosen lifting {0} is not (co)cartesian")]
    LiftingNotUniversal(usize),
    #[error("factorization of morphism {0} is not unique")]
    FactorizationNotUnique(usize),
    #[error("total categories have different variance")]
    VarianceMismatch,
    #[error("square does not commute: {0}")]
    NotCommuting(String),
    #[error("(co)cartesian morphism {0} is not preserved")]
    NotPreserving(usize),
    #[error("not an isomorphism: {0}")]
    NotIso(String),
    #[error("base adjunction does not match the cell")]
    BaseMismatch,
    #[error("fibrewise adjunction over base object {0} is invalid")]
    FibrewiseAdjunctionInvalid(usize),
    #[error("hom-bijection fails between objects {0} and {1}")]
    BijectionFailure(usize, usize),
    #[error("internal inconsistency: {0}")]
    Internal(String),
}
