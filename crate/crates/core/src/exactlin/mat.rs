use std::fmt;

use super::{Field, LinError, Scalar};

/// Dense matrix over an exact field, row-major.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Mat {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl Mat {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Mat {
        Mat {
            field,
            rows,
            cols,
            data: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: Field, n: usize) -> Mat {
        let mut m = Mat::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = field.one();
        }
        m
    }

    pub fn from_fn(
        field: Field,
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> Scalar,
    ) -> Mat {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Mat {
            field,
            rows,
            cols,
            data,
        }
    }

    /// Builds from row vectors; every scalar must belong to `field`.
    pub fn from_rows(field: Field, cols: usize, rows: Vec<Vec<Scalar>>) -> Result<Mat, LinError> {
        let r = rows.len();
        let mut data = Vec::with_capacity(r * cols);
        for row in rows {
            if row.len() != cols {
                return Err(LinError::DimMismatch {
                    context: "from_rows",
                    left: (r, cols),
                    right: (1, row.len()),
                });
            }
            for s in row {
                if !field.contains(&s) {
                    return Err(LinError::FieldMismatch);
                }
                data.push(s);
            }
        }
        Ok(Mat {
            field,
            rows: r,
            cols,
            data,
        })
    }

    /// Convenience constructor from small integer tables; panics on ragged input.
    pub fn from_i64(field: Field, rows: &[&[i64]]) -> Mat {
        let cols = rows.first().map_or(0, |r| r.len());
        Mat::from_fn(field, rows.len(), cols, |i, j| {
            assert_eq!(rows[i].len(), cols, "ragged integer table");
            field.from_i64(rows[i][j])
        })
    }

    pub fn column(field: Field, v: Vec<Scalar>) -> Mat {
        Mat {
            field,
            rows: v.len(),
            cols: 1,
            data: v,
        }
    }

    pub fn row(field: Field, v: Vec<Scalar>) -> Mat {
        Mat {
            field,
            rows: 1,
            cols: v.len(),
            data: v,
        }
    }

    pub(crate) fn from_u64(field: Field, rows: usize, cols: usize, v: Vec<u64>) -> Mat {
        Mat {
            field,
            rows,
            cols,
            data: v.into_iter().map(Scalar::Mod).collect(),
        }
    }

    pub(crate) fn to_u64(&self) -> Option<Vec<u64>> {
        match self.field {
            Field::Prime { .. } => Some(
                self.data
                    .iter()
                    .map(|s| match s {
                        Scalar::Mod(x) => *x,
                        Scalar::Rat(_) => unreachable!(),
                    })
                    .collect(),
            ),
            Field::Rationals => None,
        }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        debug_assert!(self.field.contains(&v));
        self.data[i * self.cols + j] = v;
    }

    /// `self[i][j] += v`
    pub fn add_at(&mut self, i: usize, j: usize, v: &Scalar) {
        let k = i * self.cols + j;
        self.data[k] = self.field.add(&self.data[k], v);
    }

    pub fn row_slice(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col_vec(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let s = self.get(i, j);
                    if i == j {
                        s.is_one()
                    } else {
                        s.is_zero()
                    }
                })
            })
    }

    /// First `(row, col)` where the two matrices differ.
    pub fn first_difference(&self, other: &Mat) -> Option<(usize, usize)> {
        if self.shape() != other.shape() {
            return Some((0, 0));
        }
        (0..self.data.len())
            .find(|&k| self.data[k] != other.data[k])
            .map(|k| (k / self.cols, k % self.cols))
    }

    pub fn transpose(&self) -> Mat {
        Mat::from_fn(self.field, self.cols, self.rows, |i, j| {
            self.get(j, i).clone()
        })
    }

    pub fn try_mul(&self, other: &Mat) -> Result<Mat, LinError> {
        if self.field != other.field {
            return Err(LinError::FieldMismatch);
        }
        if self.cols != other.rows {
            return Err(LinError::DimMismatch {
                context: "mul",
                left: self.shape(),
                right: other.shape(),
            });
        }
        let (n, k, m) = (self.rows, self.cols, other.cols);
        if let (Some(a), Some(b), Field::Prime { p }) = (self.to_u64(), other.to_u64(), self.field)
        {
            let mut out = vec![0u64; n * m];
            for i in 0..n {
                let row = &mut out[i * m..(i + 1) * m];
                for t in 0..k {
                    let x = a[i * k + t];
                    if x == 0 {
                        continue;
                    }
                    let brow = &b[t * m..(t + 1) * m];
                    for j in 0..m {
                        row[j] = (row[j] + x * brow[j]) % p;
                    }
                }
            }
            return Ok(Mat::from_u64(self.field, n, m, out));
        }
        let f = self.field;
        let mut out = Mat::zeros(f, n, m);
        for i in 0..n {
            for t in 0..k {
                let x = &self.data[i * k + t];
                if x.is_zero() {
                    continue;
                }
                for j in 0..m {
                    let y = &other.data[t * m + j];
                    if !y.is_zero() {
                        f.mul_add_assign(&mut out.data[i * m + j], x, y);
                    }
                }
            }
        }
        Ok(out)
    }

    /// Matrix product; panics on shape or field mismatch.
    pub fn mul(&self, other: &Mat) -> Mat {
        self.try_mul(other).unwrap_or_else(|e| panic!("{e}"))
    }

    fn zip(&self, other: &Mat, op: impl Fn(&Scalar, &Scalar) -> Scalar) -> Mat {
        assert_eq!(self.field, other.field, "field mismatch");
        assert_eq!(self.shape(), other.shape(), "shape mismatch");
        Mat {
            field: self.field,
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| op(a, b))
                .collect(),
        }
    }

    pub fn add(&self, other: &Mat) -> Mat {
        let f = self.field;
        self.zip(other, |a, b| f.add(a, b))
    }

    pub fn sub(&self, other: &Mat) -> Mat {
        let f = self.field;
        self.zip(other, |a, b| f.sub(a, b))
    }

    pub fn scale(&self, s: &Scalar) -> Mat {
        let f = self.field;
        Mat {
            field: f,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| f.mul(a, s)).collect(),
        }
    }

    pub fn kron(&self, other: &Mat) -> Mat {
        tensor(self, other).unwrap_or_else(|e| panic!("{e}"))
    }

    pub fn hstack(&self, other: &Mat) -> Mat {
        assert_eq!(self.rows, other.rows, "hstack row mismatch");
        Mat::from_fn(self.field, self.rows, self.cols + other.cols, |i, j| {
            if j < self.cols {
                self.get(i, j).clone()
            } else {
                other.get(i, j - self.cols).clone()
            }
        })
    }

    pub fn vstack(&self, other: &Mat) -> Mat {
        assert_eq!(self.cols, other.cols, "vstack column mismatch");
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Mat {
            field: self.field,
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn select_rows(&self, idx: &[usize]) -> Mat {
        Mat::from_fn(self.field, idx.len(), self.cols, |i, j| {
            self.get(idx[i], j).clone()
        })
    }

    pub fn select_cols(&self, idx: &[usize]) -> Mat {
        Mat::from_fn(self.field, self.rows, idx.len(), |i, j| {
            self.get(i, idx[j]).clone()
        })
    }

    /// Row `i` of `self` becomes row `map[i]` of the result.
    pub fn permute_rows(&self, map: &[usize]) -> Mat {
        assert_eq!(map.len(), self.rows);
        let mut out = Mat::zeros(self.field, self.rows, self.cols);
        for (i, &t) in map.iter().enumerate() {
            out.data[t * self.cols..(t + 1) * self.cols].clone_from_slice(self.row_slice(i));
        }
        out
    }

    /// Column `j` of `self` becomes column `map[j]` of the result.
    pub fn permute_cols(&self, map: &[usize]) -> Mat {
        assert_eq!(map.len(), self.cols);
        let mut out = Mat::zeros(self.field, self.rows, self.cols);
        for i in 0..self.rows {
            for (j, &t) in map.iter().enumerate() {
                out.data[i * self.cols + t] = self.get(i, j).clone();
            }
        }
        out
    }

    /// `(f ⊗ g) ∘ self` for `self: X → U ⊗ V`, without forming `f ⊗ g`.
    /// `None` stands for an identity factor.
    pub fn kron_apply(&self, f: Option<&Mat>, g: Option<&Mat>, du: usize, dv: usize) -> Mat {
        assert_eq!(du * dv, self.rows, "kron_apply: rows are not du*dv");
        let x = self.cols;
        let fld = self.field;
        // a[u][x*dv+v] = self[u*dv+v][x]
        let mut a = Mat::from_fn(fld, du, x * dv, |u, c| {
            self.get(u * dv + c % dv, c / dv).clone()
        });
        if let Some(f) = f {
            assert_eq!(f.cols, du, "kron_apply: left factor width");
            a = f.mul(&a);
        }
        let du2 = a.rows;
        // b[v][x*du2+u] = a[u][x*dv+v]
        let mut b = Mat::from_fn(fld, dv, x * du2, |v, c| {
            a.get(c % du2, (c / du2) * dv + v).clone()
        });
        if let Some(g) = g {
            assert_eq!(g.cols, dv, "kron_apply: right factor width");
            b = g.mul(&b);
        }
        let dv2 = b.rows;
        Mat::from_fn(fld, du2 * dv2, x, |r, c| {
            b.get(r % dv2, c * du2 + r / dv2).clone()
        })
    }

    /// `self ∘ (f ⊗ g)` for `self: U' ⊗ V' → Y`, where `f: U → U'`, `g: V → V'`.
    pub fn kron_precompose(&self, f: Option<&Mat>, g: Option<&Mat>, du2: usize, dv2: usize) -> Mat {
        let ft = f.map(Mat::transpose);
        let gt = g.map(Mat::transpose);
        self.transpose()
            .kron_apply(ft.as_ref(), gt.as_ref(), du2, dv2)
            .transpose()
    }
}

/// Kronecker product with the `i * dim(W) + j` convention.
pub fn tensor(a: &Mat, b: &Mat) -> Result<Mat, LinError> {
    if a.field != b.field {
        return Err(LinError::FieldMismatch);
    }
    let f = a.field;
    Ok(Mat::from_fn(
        f,
        a.rows * b.rows,
        a.cols * b.cols,
        |r, c| {
            let x = a.get(r / b.rows, c / b.cols);
            if x.is_zero() {
                return f.zero();
            }
            f.mul(x, b.get(r % b.rows, c % b.cols))
        },
    ))
}

/// Index map for reordering tensor factors.
///
/// `dims` are the factor dimensions in the original order; factor `k` of the
/// new order is original factor `perm[k]`. Entry `i` of the result is the new
/// index of original basis vector `i`.
pub fn tensor_index_map(dims: &[usize], perm: &[usize]) -> Vec<usize> {
    assert_eq!(dims.len(), perm.len());
    let total: usize = dims.iter().product();
    let mut out = Vec::with_capacity(total);
    let mut digits = vec![0usize; dims.len()];
    for i in 0..total {
        let mut rem = i;
        for k in (0..dims.len()).rev() {
            digits[k] = rem % dims[k];
            rem /= dims[k];
        }
        let mut idx = 0;
        for &src in perm {
            idx = idx * dims[src] + digits[src];
        }
        out.push(idx);
    }
    out
}

impl fmt::Display for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row_slice(i).iter().map(|s| s.to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kron_apply_matches_kron() {
        let q = Field::Rationals;
        let f = Mat::from_i64(q, &[&[1, 2], &[0, 3], &[1, 1]]);
        let g = Mat::from_i64(q, &[&[2, -1]]);
        let h = Mat::from_i64(q, &[&[1, 0], &[2, 1], &[0, 5], &[-1, 4]]);
        let direct = f.kron(&g).mul(&h);
        assert_eq!(h.kron_apply(Some(&f), Some(&g), 2, 2), direct);
        let left = f.kron(&Mat::identity(q, 2)).mul(&h);
        assert_eq!(h.kron_apply(Some(&f), None, 2, 2), left);
    }

    #[test]
    fn kron_precompose_matches_kron() {
        let p = Field::prime(5).unwrap();
        let f = Mat::from_i64(p, &[&[1, 2], &[3, 4]]);
        let g = Mat::from_i64(p, &[&[1], &[2]]);
        let h = Mat::from_fn(p, 3, 4, |i, j| p.from_i64((i * 7 + j * 3) as i64));
        assert_eq!(
            h.kron_precompose(Some(&f), Some(&g), 2, 2),
            h.mul(&f.kron(&g))
        );
    }

    #[test]
    fn swap_map_is_involution() {
        let m = tensor_index_map(&[2, 3], &[1, 0]);
        let back = tensor_index_map(&[3, 2], &[1, 0]);
        for i in 0..6 {
            assert_eq!(back[m[i]], i);
        }
        // e_1 ⊗ e_0 of 2⊗3 is index 3; after swap e_0 ⊗ e_1 of 3⊗2 is index 1.
        assert_eq!(m[3], 1);
    }
}
