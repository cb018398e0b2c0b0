use crate::exactlin::{tensor_index_map, Field, Mat};

use super::HopfError;

/// Matrix reordering tensor factors: factor `k` of the target is factor
/// `perm[k]` of the source.
pub fn perm_matrix(field: Field, dims: &[usize], perm: &[usize]) -> Mat {
    let map = tensor_index_map(dims, perm);
    let n = map.len();
    let mut m = Mat::zeros(field, n, n);
    for (i, &t) in map.iter().enumerate() {
        m.set(t, i, field.one());
    }
    m
}

/// The symmetry `U ⊗ V → V ⊗ U`.
pub fn swap_matrix(field: Field, du: usize, dv: usize) -> Mat {
    perm_matrix(field, &[du, dv], &[1, 0])
}

/// `U₁U₂U₃U₄ → U₁U₃U₂U₄`.
pub(crate) fn middle_swap(field: Field, d: [usize; 4]) -> Mat {
    perm_matrix(field, &d, &[0, 2, 1, 3])
}

/// Decodes a basis index of `U₁ ⊗ … ⊗ U_k` into its factor indices.
pub(crate) fn decode(mut i: usize, dims: &[usize]) -> Vec<usize> {
    let mut out = vec![0; dims.len()];
    for k in (0..dims.len()).rev() {
        out[k] = i % dims[k].max(1);
        i /= dims[k].max(1);
    }
    out
}

/// `lhs == rhs` as maps out of `⊗ dims`, or the first failing basis tuple.
pub(crate) fn commutes(name: &str, lhs: &Mat, rhs: &Mat, dims: &[usize]) -> Result<(), HopfError> {
    if lhs.shape() != rhs.shape() {
        return Err(HopfError::DimMismatch(format!(
            "{name}: {}x{} against {}x{}",
            lhs.rows(),
            lhs.cols(),
            rhs.rows(),
            rhs.cols()
        )));
    }
    match lhs.first_difference(rhs) {
        None => Ok(()),
        Some((_, c)) => Err(HopfError::diagram(name, decode(c, dims))),
    }
}

/// Reorders the tensor factors of the codomain of `x`.
pub(crate) fn permute(x: &Mat, dims: &[usize], perm: &[usize]) -> Mat {
    x.permute_rows(&tensor_index_map(dims, perm))
}
