use crate::exactlin::{Field, Mat, Scalar};

use super::sparse::{sparse_cols, SparseVec};
use super::{AlgError, Side};

/// Unvalidated algebra data, as read from input.
#[derive(Clone, Debug)]
pub struct RawAlgebra {
    pub name: String,
    pub field: Field,
    pub basis_labels: Vec<String>,
    /// `dim × dim²`; column `i*dim+j` holds the coefficients of `e_i·e_j`.
    pub mult: Mat,
    /// `dim × 1`.
    pub unit: Mat,
}

/// Unvalidated coalgebra data.
#[derive(Clone, Debug)]
pub struct RawCoalgebra {
    pub name: String,
    pub field: Field,
    pub basis_labels: Vec<String>,
    /// `dim² × dim`; column `i` holds `Δ(c_i)`.
    pub comult: Mat,
    /// `1 × dim`.
    pub counit: Mat,
}

/// A validated finite-dimensional associative unital algebra.
///
/// Equality compares structure constants only; names and labels are ignored.
#[derive(Clone, Debug)]
pub struct Algebra {
    name: String,
    field: Field,
    labels: Vec<String>,
    mult: Mat,
    unit: Mat,
}

/// A validated finite-dimensional coassociative counital coalgebra.
#[derive(Clone, Debug)]
pub struct Coalgebra {
    name: String,
    field: Field,
    labels: Vec<String>,
    comult: Mat,
    counit: Mat,
}

impl PartialEq for Algebra {
    fn eq(&self, other: &Algebra) -> bool {
        self.mult == other.mult && self.unit == other.unit
    }
}

impl Eq for Algebra {}

impl PartialEq for Coalgebra {
    fn eq(&self, other: &Coalgebra) -> bool {
        self.comult == other.comult && self.counit == other.counit
    }
}

impl Eq for Coalgebra {}

fn default_labels(prefix: &str, dim: usize) -> Vec<String> {
    (0..dim).map(|i| format!("{prefix}{i}")).collect()
}

fn check_shape(what: &str, m: &Mat, rows: usize, cols: usize) -> Result<(), AlgError> {
    if m.shape() != (rows, cols) {
        return Err(AlgError::DimMismatch(format!(
            "{what} is {}x{}, expected {rows}x{cols}",
            m.rows(),
            m.cols()
        )));
    }
    Ok(())
}

fn check_labels(labels: Vec<String>, dim: usize) -> Result<Vec<String>, AlgError> {
    if labels.is_empty() {
        return Ok(default_labels("e", dim));
    }
    if labels.len() != dim {
        return Err(AlgError::DimMismatch(format!(
            "{} basis labels for dimension {dim}",
            labels.len()
        )));
    }
    Ok(labels)
}

pub fn check_algebra(raw: RawAlgebra) -> Result<Algebra, AlgError> {
    let d = raw.unit.rows();
    check_shape("multiplication", &raw.mult, d, d * d)?;
    check_shape("unit", &raw.unit, d, 1)?;
    if raw.mult.field() != raw.field || raw.unit.field() != raw.field {
        return Err(AlgError::FieldMismatch);
    }
    let labels = check_labels(raw.basis_labels, d)?;
    let f = raw.field;
    let cols = sparse_cols(&raw.mult);
    let unit: Vec<(usize, Scalar)> = sparse_cols(&raw.unit).remove(0);

    // m(η ⊗ e_i) = e_i = m(e_i ⊗ η)
    for i in 0..d {
        let mut left = SparseVec::new();
        let mut right = SparseVec::new();
        for (u, c) in &unit {
            for (r, v) in &cols[u * d + i] {
                left.add(f, *r, f.mul(c, v));
            }
            for (r, v) in &cols[i * d + u] {
                right.add(f, *r, f.mul(c, v));
            }
        }
        if !left.is_unit_at(i) {
            return Err(AlgError::UnitFailure(Side::Left, i));
        }
        if !right.is_unit_at(i) {
            return Err(AlgError::UnitFailure(Side::Right, i));
        }
    }

    // (e_i e_j) e_k = e_i (e_j e_k)
    for i in 0..d {
        for j in 0..d {
            for k in 0..d {
                let mut lhs = SparseVec::new();
                for (l, a) in &cols[i * d + j] {
                    for (r, b) in &cols[l * d + k] {
                        lhs.add(f, *r, f.mul(a, b));
                    }
                }
                let mut rhs = SparseVec::new();
                for (l, a) in &cols[j * d + k] {
                    for (r, b) in &cols[i * d + l] {
                        rhs.add(f, *r, f.mul(a, b));
                    }
                }
                if lhs != rhs {
                    return Err(AlgError::AssociativityFailure(i, j, k));
                }
            }
        }
    }
    Ok(Algebra {
        name: raw.name,
        field: f,
        labels,
        mult: raw.mult,
        unit: raw.unit,
    })
}

pub fn check_coalgebra(raw: RawCoalgebra) -> Result<Coalgebra, AlgError> {
    let d = raw.counit.cols();
    check_shape("comultiplication", &raw.comult, d * d, d)?;
    check_shape("counit", &raw.counit, 1, d)?;
    if raw.comult.field() != raw.field || raw.counit.field() != raw.field {
        return Err(AlgError::FieldMismatch);
    }
    let labels = check_labels(raw.basis_labels, d)?;
    let f = raw.field;
    let cols = sparse_cols(&raw.comult);
    let eps: Vec<Scalar> = raw.counit.row_slice(0).to_vec();

    // (ε ⊗ 1)Δ c_i = c_i = (1 ⊗ ε)Δ c_i
    for (i, col) in cols.iter().enumerate() {
        let mut left = SparseVec::new();
        let mut right = SparseVec::new();
        for (r, v) in col {
            let (a, b) = (r / d, r % d);
            left.add(f, b, f.mul(&eps[a], v));
            right.add(f, a, f.mul(&eps[b], v));
        }
        if !left.is_unit_at(i) {
            return Err(AlgError::CounitFailure(Side::Left, i));
        }
        if !right.is_unit_at(i) {
            return Err(AlgError::CounitFailure(Side::Right, i));
        }
    }

    // (Δ ⊗ 1)Δ c_i = (1 ⊗ Δ)Δ c_i, indices in C⊗C⊗C
    for (i, col) in cols.iter().enumerate() {
        let mut lhs = SparseVec::new();
        let mut rhs = SparseVec::new();
        for (r, v) in col {
            let (a, b) = (r / d, r % d);
            for (s, w) in &cols[a] {
                lhs.add(f, s * d + b, f.mul(v, w));
            }
            for (s, w) in &cols[b] {
                rhs.add(f, a * d * d + s, f.mul(v, w));
            }
        }
        if lhs != rhs {
            return Err(AlgError::CoassociativityFailure(i));
        }
    }
    Ok(Coalgebra {
        name: raw.name,
        field: f,
        labels,
        comult: raw.comult,
        counit: raw.counit,
    })
}

impl Algebra {
    pub fn new(
        name: impl Into<String>,
        field: Field,
        basis_labels: Vec<String>,
        mult: Mat,
        unit: Mat,
    ) -> Result<Algebra, AlgError> {
        check_algebra(RawAlgebra {
            name: name.into(),
            field,
            basis_labels,
            mult,
            unit,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.unit.rows()
    }

    pub fn basis_labels(&self) -> &[String] {
        &self.labels
    }

    pub fn mult(&self) -> &Mat {
        &self.mult
    }

    pub fn unit(&self) -> &Mat {
        &self.unit
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Algebra {
        self.name = name.into();
        self
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Algebra {
        assert_eq!(labels.len(), self.dim());
        self.labels = labels;
        self
    }

    /// Product of two coordinate vectors.
    pub fn multiply(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        let d = self.dim();
        let f = self.field;
        let mut xy = Vec::with_capacity(d * d);
        for a in x {
            for b in y {
                xy.push(f.mul(a, b));
            }
        }
        self.mult.mul(&Mat::column(f, xy)).col_vec(0)
    }

    pub fn unit_vec(&self) -> Vec<Scalar> {
        self.unit.col_vec(0)
    }

    pub fn is_commutative(&self) -> bool {
        let d = self.dim();
        (0..d).all(|i| {
            (0..d).all(|j| {
                (0..d).all(|r| self.mult.get(r, i * d + j) == self.mult.get(r, j * d + i))
            })
        })
    }
}

impl Coalgebra {
    pub fn new(
        name: impl Into<String>,
        field: Field,
        basis_labels: Vec<String>,
        comult: Mat,
        counit: Mat,
    ) -> Result<Coalgebra, AlgError> {
        check_coalgebra(RawCoalgebra {
            name: name.into(),
            field,
            basis_labels,
            comult,
            counit,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.counit.cols()
    }

    pub fn basis_labels(&self) -> &[String] {
        &self.labels
    }

    pub fn comult(&self) -> &Mat {
        &self.comult
    }

    pub fn counit(&self) -> &Mat {
        &self.counit
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Coalgebra {
        self.name = name.into();
        self
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Coalgebra {
        assert_eq!(labels.len(), self.dim());
        self.labels = labels;
        self
    }

    pub fn is_cocommutative(&self) -> bool {
        let d = self.dim();
        (0..d).all(|c| {
            (0..d).all(|i| {
                (0..d).all(|j| self.comult.get(i * d + j, c) == self.comult.get(j * d + i, c))
            })
        })
    }
}
