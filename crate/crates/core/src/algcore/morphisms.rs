use std::fmt;

use crate::exactlin::Mat;

use super::{AlgError, Algebra, Coalgebra};

/// The first defining equation a candidate morphism violates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    /// `f(e_i e_j) ≠ f(e_i) f(e_j)`
    Multiplicative { i: usize, j: usize },
    /// `f(1) ≠ 1`, first differing coordinate
    Unital { coord: usize },
    /// `(g⊗g)Δ(c_i) ≠ Δ(g c_i)`
    Comultiplicative { i: usize },
    /// `ε(g c_i) ≠ ε(c_i)`
    Counital { i: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Multiplicative { i, j } => {
                write!(f, "multiplicativity fails on basis pair ({i},{j})")
            }
            Violation::Unital { coord } => write!(f, "unit not preserved (coordinate {coord})"),
            Violation::Comultiplicative { i } => {
                write!(f, "comultiplicativity fails on basis element {i}")
            }
            Violation::Counital { i } => write!(f, "counit not preserved on basis element {i}"),
        }
    }
}

fn check_dims(m: &Mat, rows: usize, cols: usize) -> Result<(), AlgError> {
    if m.shape() != (rows, cols) {
        return Err(AlgError::DimMismatch(format!(
            "map is {}x{}, expected {rows}x{cols}",
            m.rows(),
            m.cols()
        )));
    }
    Ok(())
}

pub fn algebra_morphism_violation(
    src: &Algebra,
    tgt: &Algebra,
    f: &Mat,
) -> Result<Option<Violation>, AlgError> {
    if src.field() != tgt.field() || f.field() != src.field() {
        return Err(AlgError::FieldMismatch);
    }
    let (da, db) = (src.dim(), tgt.dim());
    check_dims(f, db, da)?;
    let lhs = f.mul(src.mult());
    let rhs = tgt.mult().kron_precompose(Some(f), Some(f), db, db);
    if let Some((_, c)) = lhs.first_difference(&rhs) {
        return Ok(Some(Violation::Multiplicative {
            i: c / da,
            j: c % da,
        }));
    }
    if let Some((r, _)) = f.mul(src.unit()).first_difference(tgt.unit()) {
        return Ok(Some(Violation::Unital { coord: r }));
    }
    Ok(None)
}

pub fn is_algebra_morphism(src: &Algebra, tgt: &Algebra, f: &Mat) -> Result<bool, AlgError> {
    Ok(algebra_morphism_violation(src, tgt, f)?.is_none())
}

pub fn coalgebra_morphism_violation(
    src: &Coalgebra,
    tgt: &Coalgebra,
    g: &Mat,
) -> Result<Option<Violation>, AlgError> {
    if src.field() != tgt.field() || g.field() != src.field() {
        return Err(AlgError::FieldMismatch);
    }
    let (dc, dd) = (src.dim(), tgt.dim());
    check_dims(g, dd, dc)?;
    let lhs = src.comult().kron_apply(Some(g), Some(g), dc, dc);
    let rhs = tgt.comult().mul(g);
    if let Some((_, c)) = lhs.first_difference(&rhs) {
        return Ok(Some(Violation::Comultiplicative { i: c }));
    }
    if let Some((_, c)) = tgt.counit().mul(g).first_difference(src.counit()) {
        return Ok(Some(Violation::Counital { i: c }));
    }
    Ok(None)
}

pub fn is_coalgebra_morphism(src: &Coalgebra, tgt: &Coalgebra, g: &Mat) -> Result<bool, AlgError> {
    Ok(coalgebra_morphism_violation(src, tgt, g)?.is_none())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraMorphism {
    source: Algebra,
    target: Algebra,
    matrix: Mat,
}

impl AlgebraMorphism {
    pub fn new(source: Algebra, target: Algebra, matrix: Mat) -> Result<AlgebraMorphism, AlgError> {
        if let Some(v) = algebra_morphism_violation(&source, &target, &matrix)? {
            return Err(AlgError::NotAMorphism(v));
        }
        Ok(AlgebraMorphism {
            source,
            target,
            matrix,
        })
    }

    pub fn identity(a: &Algebra) -> AlgebraMorphism {
        AlgebraMorphism {
            source: a.clone(),
            target: a.clone(),
            matrix: Mat::identity(a.field(), a.dim()),
        }
    }

    pub fn source(&self) -> &Algebra {
        &self.source
    }

    pub fn target(&self) -> &Algebra {
        &self.target
    }

    pub fn matrix(&self) -> &Mat {
        &self.matrix
    }

    /// `self ∘ first`
    pub fn after(&self, first: &AlgebraMorphism) -> Result<AlgebraMorphism, AlgError> {
        if first.target != self.source {
            return Err(AlgError::DimMismatch("composing non-adjacent morphisms".into()));
        }
        Ok(AlgebraMorphism {
            source: first.source.clone(),
            target: self.target.clone(),
            matrix: self.matrix.mul(&first.matrix),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoalgebraMorphism {
    source: Coalgebra,
    target: Coalgebra,
    matrix: Mat,
}

impl CoalgebraMorphism {
    pub fn new(
        source: Coalgebra,
        target: Coalgebra,
        matrix: Mat,
    ) -> Result<CoalgebraMorphism, AlgError> {
        if let Some(v) = coalgebra_morphism_violation(&source, &target, &matrix)? {
            return Err(AlgError::NotAMorphism(v));
        }
        Ok(CoalgebraMorphism {
            source,
            target,
            matrix,
        })
    }

    pub fn identity(c: &Coalgebra) -> CoalgebraMorphism {
        CoalgebraMorphism {
            source: c.clone(),
            target: c.clone(),
            matrix: Mat::identity(c.field(), c.dim()),
        }
    }

    pub fn source(&self) -> &Coalgebra {
        &self.source
    }

    pub fn target(&self) -> &Coalgebra {
        &self.target
    }

    pub fn matrix(&self) -> &Mat {
        &self.matrix
    }

    /// `self ∘ first`
    pub fn after(&self, first: &CoalgebraMorphism) -> Result<CoalgebraMorphism, AlgError> {
        if first.target != self.source {
            return Err(AlgError::DimMismatch("composing non-adjacent morphisms".into()));
        }
        Ok(CoalgebraMorphism {
            source: first.source.clone(),
            target: self.target.clone(),
            matrix: self.matrix.mul(&first.matrix),
        })
    }
}
