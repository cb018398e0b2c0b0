use super::{Field, LinError, Mat, Scalar};

fn rref_u64(p: u64, rows: usize, cols: usize, a: &mut [u64]) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(piv) = (r..rows).find(|&i| a[i * cols + c] != 0) else {
            continue;
        };
        if piv != r {
            for j in 0..cols {
                a.swap(piv * cols + j, r * cols + j);
            }
        }
        let inv = modinv(a[r * cols + c], p);
        for j in c..cols {
            a[r * cols + j] = a[r * cols + j] * inv % p;
        }
        for i in 0..rows {
            if i == r {
                continue;
            }
            let f = a[i * cols + c];
            if f == 0 {
                continue;
            }
            for j in c..cols {
                let sub = f * a[r * cols + j] % p;
                a[i * cols + j] = (a[i * cols + j] + p - sub) % p;
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

fn modinv(x: u64, p: u64) -> u64 {
    // Fermat; p is prime and < 2^31.
    let mut result = 1u64;
    let mut base = x % p;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            result = result * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    result
}

fn rref_generic(m: &mut Mat) -> Vec<usize> {
    let f = m.field();
    let (rows, cols) = m.shape();
    let mut a: Vec<Vec<Scalar>> = (0..rows).map(|i| m.row_slice(i).to_vec()).collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(piv) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(piv, r);
        let inv = f.inv(&a[r][c]).expect("pivot is nonzero");
        for j in c..cols {
            a[r][j] = f.mul(&a[r][j], &inv);
        }
        let prow = a[r].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let factor = row[c].clone();
            for j in c..cols {
                if !prow[j].is_zero() {
                    let t = f.mul(&factor, &prow[j]);
                    row[j] = f.sub(&row[j], &t);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    *m = Mat::from_rows(f, cols, a).expect("shape preserved");
    pivots
}

/// Reduced row-echelon form and its pivot columns. The shape is preserved;
/// zero rows sit at the bottom.
pub fn rref(m: &Mat) -> (Mat, Vec<usize>) {
    let (rows, cols) = m.shape();
    if let (Field::Prime { p }, Some(mut a)) = (m.field(), m.to_u64()) {
        let piv = rref_u64(p, rows, cols, &mut a);
        return (Mat::from_u64(m.field(), rows, cols, a), piv);
    }
    let mut out = m.clone();
    let piv = rref_generic(&mut out);
    (out, piv)
}

/// A linear subspace of `k^n`, stored as a canonical RREF row basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient: usize,
    basis: Mat,
    pivots: Vec<usize>,
}

impl Subspace {
    /// Row space of `rows` (each row a vector of length `rows.cols()`).
    pub fn span(rows: &Mat) -> Subspace {
        let (r, piv) = rref(rows);
        let idx: Vec<usize> = (0..piv.len()).collect();
        Subspace {
            ambient: rows.cols(),
            basis: r.select_rows(&idx),
            pivots: piv,
        }
    }

    /// Column space of `m`, i.e. the image of the map it represents.
    pub fn image(m: &Mat) -> Subspace {
        Subspace::span(&m.transpose())
    }

    pub fn zero(field: Field, n: usize) -> Subspace {
        Subspace {
            ambient: n,
            basis: Mat::zeros(field, 0, n),
            pivots: Vec::new(),
        }
    }

    pub fn full(field: Field, n: usize) -> Subspace {
        Subspace {
            ambient: n,
            basis: Mat::identity(field, n),
            pivots: (0..n).collect(),
        }
    }

    pub fn field(&self) -> Field {
        self.basis.field()
    }

    pub fn dim(&self) -> usize {
        self.pivots.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient
    }

    /// `dim × ambient` matrix whose rows are the RREF basis.
    pub fn basis(&self) -> &Mat {
        &self.basis
    }

    /// Inclusion map `S → k^n` as an `ambient × dim` matrix.
    pub fn inclusion(&self) -> Mat {
        self.basis.transpose()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    fn residual(&self, v: &[Scalar]) -> Vec<Scalar> {
        let f = self.field();
        let mut r = v.to_vec();
        for (i, &c) in self.pivots.iter().enumerate() {
            let coef = v[c].clone();
            if coef.is_zero() {
                continue;
            }
            for (j, b) in self.basis.row_slice(i).iter().enumerate() {
                if !b.is_zero() {
                    r[j] = f.sub(&r[j], &f.mul(&coef, b));
                }
            }
        }
        r
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        assert_eq!(v.len(), self.ambient);
        self.residual(v).iter().all(Scalar::is_zero)
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        (0..other.dim()).all(|i| self.contains(other.basis.row_slice(i)))
    }

    /// Coordinates of `v` in the RREF basis: the entries of `v` at the pivots.
    pub fn coordinates(&self, v: &[Scalar]) -> Result<Vec<Scalar>, LinError> {
        if v.len() != self.ambient {
            return Err(LinError::AmbientMismatch(v.len(), self.ambient));
        }
        if !self.contains(v) {
            return Err(LinError::NotInSubspace);
        }
        Ok(self.pivots.iter().map(|&c| v[c].clone()).collect())
    }

    /// Coordinates of every column of `m` (which must lie in the subspace):
    /// the `dim × m.cols()` matrix `c` with `inclusion · c = m`.
    pub fn coordinates_of_columns(&self, m: &Mat) -> Result<Mat, LinError> {
        if m.rows() != self.ambient {
            return Err(LinError::AmbientMismatch(m.rows(), self.ambient));
        }
        let c = m.select_rows(&self.pivots);
        if self.inclusion().mul(&c) != *m {
            return Err(LinError::NotInSubspace);
        }
        Ok(c)
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace, LinError> {
        if self.ambient != other.ambient {
            return Err(LinError::AmbientMismatch(self.ambient, other.ambient));
        }
        Ok(Subspace::span(&self.basis.vstack(&other.basis)))
    }

    /// Functionals vanishing on the subspace, as a subspace of the dual
    /// (same ambient dimension, vectors read as row functionals).
    pub fn annihilator(&self) -> Subspace {
        if self.dim() == 0 {
            return Subspace::full(self.field(), self.ambient);
        }
        kernel(&self.basis)
    }

    /// A surjection `k^n → k^n / S`; its kernel is exactly this subspace.
    pub fn quotient_map(&self) -> Mat {
        self.annihilator().basis
    }

    /// Preimage `{x : m·x ∈ self}`.
    pub fn preimage(&self, m: &Mat) -> Subspace {
        assert_eq!(m.rows(), self.ambient);
        let q = self.quotient_map();
        if q.rows() == 0 {
            return Subspace::full(m.field(), m.cols());
        }
        kernel(&q.mul(m))
    }

    /// Image of the subspace under `m`.
    pub fn map(&self, m: &Mat) -> Subspace {
        Subspace::image(&m.mul(&self.inclusion()))
    }
}

/// `{v : m·v = 0}`.
pub fn kernel(m: &Mat) -> Subspace {
    let f = m.field();
    let cols = m.cols();
    let (r, piv) = rref(m);
    let mut is_piv = vec![false; cols];
    for &c in &piv {
        is_piv[c] = true;
    }
    let mut rows = Vec::new();
    for free in (0..cols).filter(|&c| !is_piv[c]) {
        let mut v = vec![f.zero(); cols];
        v[free] = f.one();
        for (i, &c) in piv.iter().enumerate() {
            v[c] = f.neg(r.get(i, free));
        }
        rows.push(v);
    }
    if rows.is_empty() {
        return Subspace::zero(f, cols);
    }
    Subspace::span(&Mat::from_rows(f, cols, rows).expect("kernel rows"))
}

pub fn intersect(u: &Subspace, v: &Subspace) -> Result<Subspace, LinError> {
    if u.ambient != v.ambient {
        return Err(LinError::AmbientMismatch(u.ambient, v.ambient));
    }
    let au = u.annihilator();
    let av = v.annihilator();
    let stacked = au.basis.vstack(&av.basis);
    if stacked.rows() == 0 {
        return Ok(Subspace::full(u.field(), u.ambient));
    }
    Ok(kernel(&stacked))
}

impl Mat {
    pub fn rank(&self) -> usize {
        rref(self).1.len()
    }

    /// Some `x` with `self · x = b` (free variables set to zero), if one exists.
    pub fn solve(&self, b: &Mat) -> Option<Mat> {
        assert_eq!(self.rows(), b.rows(), "solve: row mismatch");
        let n = self.cols();
        let (r, piv) = rref(&self.hstack(b));
        if piv.iter().any(|&c| c >= n) {
            return None;
        }
        let f = self.field();
        let mut x = Mat::zeros(f, n, b.cols());
        for (i, &c) in piv.iter().enumerate() {
            for j in 0..b.cols() {
                x.set(c, j, r.get(i, n + j).clone());
            }
        }
        Some(x)
    }

    pub fn inverse(&self) -> Result<Mat, LinError> {
        if self.rows() != self.cols() {
            return Err(LinError::DimMismatch {
                context: "inverse",
                left: self.shape(),
                right: self.shape(),
            });
        }
        let n = self.rows();
        let (r, piv) = rref(&self.hstack(&Mat::identity(self.field(), n)));
        if piv.len() < n || piv[n - 1] >= n {
            return Err(LinError::Singular);
        }
        Ok(Mat::from_fn(self.field(), n, n, |i, j| r.get(i, n + j).clone()))
    }

    pub fn is_invertible(&self) -> bool {
        self.rows() == self.cols() && self.rank() == self.rows()
    }
}
