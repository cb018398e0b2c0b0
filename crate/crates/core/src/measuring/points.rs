use rayon::prelude::*;

use crate::algcore::standard::matrix_algebra;
use crate::algcore::{is_algebra_morphism, tensor_algebras, Algebra, AlgebraMorphism};
use crate::exactlin::{count_matrices, matrix_at, Mat};

use super::MeasError;

/// Limit on exhaustive enumerations (number of candidates examined).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget(pub u128);

impl Default for Budget {
    fn default() -> Budget {
        Budget(1 << 22)
    }
}

impl Budget {
    pub fn admit(&self, needed: Option<u128>) -> Result<u128, MeasError> {
        match needed {
            Some(n) if n <= self.0 => Ok(n),
            _ => Err(MeasError::BudgetExceeded {
                needed: needed.map_or_else(|| "unbounded".to_string(), |n| n.to_string()),
                budget: self.0,
            }),
        }
    }
}

/// Chunk size for parallel enumeration; results never depend on it.
pub(crate) const CHUNK: u128 = 1 << 12;

/// Runs `f` on every index of `0..count` in parallel chunks and collects the
/// hits in index order.
pub(crate) fn enumerate_indices<T, F>(count: u128, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(u128) -> Option<T> + Sync,
{
    let chunks = count.div_ceil(CHUNK);
    let parts: Vec<Vec<T>> = (0..chunks as u64)
        .into_par_iter()
        .map(|c| {
            let lo = c as u128 * CHUNK;
            let hi = (lo + CHUNK).min(count);
            (lo..hi).filter_map(&f).collect()
        })
        .collect();
    parts.into_iter().flatten().collect()
}

/// Algebra maps `A → B` whose enumeration index lies in `range`; the union
/// over a partition of `0..p^(dim A · dim B)` is the full list.
pub fn algebra_maps_in_range(
    a: &Algebra,
    b: &Algebra,
    range: std::ops::Range<u128>,
) -> Result<Vec<(u128, AlgebraMorphism)>, MeasError> {
    let f = a.field();
    let (da, db) = (a.dim(), b.dim());
    let mut out = Vec::new();
    for idx in range {
        let m = matrix_at(f, db, da, idx);
        if unital(a, b, &m) && is_algebra_morphism(a, b, &m)? {
            out.push((idx, AlgebraMorphism::new(a.clone(), b.clone(), m)?));
        }
    }
    Ok(out)
}

fn unital(a: &Algebra, b: &Algebra, m: &Mat) -> bool {
    m.mul(a.unit()) == *b.unit()
}

/// All algebra maps `A → B`.
///
/// With `hints`, the hints are validated and returned as given; otherwise
/// the field must be finite and `p^(dim A · dim B)` within `budget`.
pub fn algebra_maps(
    a: &Algebra,
    b: &Algebra,
    hints: Option<&[Mat]>,
    budget: Budget,
) -> Result<Vec<AlgebraMorphism>, MeasError> {
    if a.field() != b.field() {
        return Err(MeasError::FieldMismatch);
    }
    if let Some(hints) = hints {
        let mut out: Vec<AlgebraMorphism> = Vec::new();
        for (i, h) in hints.iter().enumerate() {
            if h.field() != a.field() || h.shape() != (b.dim(), a.dim()) {
                return Err(MeasError::HintInvalid(i));
            }
            if !is_algebra_morphism(a, b, h)? {
                return Err(MeasError::HintInvalid(i));
            }
            if out.iter().all(|g| g.matrix() != h) {
                out.push(AlgebraMorphism::new(a.clone(), b.clone(), h.clone())?);
            }
        }
        return Ok(out);
    }
    let count = budget.admit(count_matrices(a.field(), b.dim(), a.dim()))?;
    let f = a.field();
    let (da, db) = (a.dim(), b.dim());
    let found = enumerate_indices(count, |idx| {
        let m = matrix_at(f, db, da, idx);
        (unital(a, b, &m) && is_algebra_morphism(a, b, &m).unwrap_or(false)).then_some(m)
    });
    found
        .into_iter()
        .map(|m| Ok(AlgebraMorphism::new(a.clone(), b.clone(), m)?))
        .collect()
}

/// `M_m(B) = M_m(k) ⊗ B`, basis `(e_ij, b_t)` at index `(i*m+j)*dim(B)+t`.
pub fn matrix_algebra_over(b: &Algebra, m: usize) -> Result<Algebra, MeasError> {
    Ok(tensor_algebras(&matrix_algebra(b.field(), m), b)?.with_name(format!("M{m}({})", b.name())))
}

/// Algebra maps `A → M_m(B)` over a finite field, exhaustively.
pub fn matrix_valued_maps(
    a: &Algebra,
    b: &Algebra,
    m: usize,
    budget: Budget,
) -> Result<Vec<AlgebraMorphism>, MeasError> {
    let mb = matrix_algebra_over(b, m)?;
    algebra_maps(a, &mb, None, budget)
}
