//! Indexed enumeration of vectors and matrices over a prime field.
//!
//! Index `i` maps to the base-`p` digits of `i`, least significant digit in
//! coordinate 0, so disjoint index ranges partition the enumeration.

use super::{Field, Mat, Scalar};

/// Number of vectors in `𝔽_p^dim`, or `None` over ℚ or on overflow.
pub fn count_vectors(field: Field, dim: usize) -> Option<u128> {
    let p = field.order()? as u128;
    let mut n: u128 = 1;
    for _ in 0..dim {
        n = n.checked_mul(p)?;
    }
    Some(n)
}

pub fn count_matrices(field: Field, rows: usize, cols: usize) -> Option<u128> {
    count_vectors(field, rows.checked_mul(cols)?)
}

pub fn vector_at(field: Field, dim: usize, index: u128) -> Vec<Scalar> {
    let p = field.order().expect("enumeration needs a finite field") as u128;
    let mut rem = index;
    (0..dim)
        .map(|_| {
            let d = rem % p;
            rem /= p;
            Scalar::Mod(d as u64)
        })
        .collect()
}

/// Matrix with row-major entries `vector_at(rows * cols, index)`.
pub fn matrix_at(field: Field, rows: usize, cols: usize, index: u128) -> Mat {
    let v = vector_at(field, rows * cols, index);
    Mat::from_fn(field, rows, cols, |i, j| v[i * cols + j].clone())
}
