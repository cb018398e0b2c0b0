use crate::algcore::sparse::sparse_cols;
use crate::algcore::{convolution_algebra, is_algebra_morphism, Algebra, Coalgebra};
use crate::exactlin::{Field, Mat, Scalar};

use super::MeasError;

/// A linear map `ψ: C → Hom(A, B)`, stored as a `dim(A)·dim(B) × dim(C)`
/// matrix; `Hom(A, B)` has basis `a_i ↦ b_t` at index `i*dim(B)+t`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MeasuringMap {
    pub c: Coalgebra,
    pub a: Algebra,
    pub b: Algebra,
    pub psi: Mat,
}

impl MeasuringMap {
    pub fn new(c: Coalgebra, a: Algebra, b: Algebra, psi: Mat) -> Result<MeasuringMap, MeasError> {
        if c.field() != a.field() || a.field() != b.field() || psi.field() != a.field() {
            return Err(MeasError::FieldMismatch);
        }
        if psi.shape() != (a.dim() * b.dim(), c.dim()) {
            return Err(MeasError::DimMismatch(format!(
                "measuring is {}x{}, expected {}x{}",
                psi.rows(),
                psi.cols(),
                a.dim() * b.dim(),
                c.dim()
            )));
        }
        Ok(MeasuringMap { c, a, b, psi })
    }

    /// The adjunct `A → [C, B]`, entry `[(s,t), i] = ψ[(i,t), s]`.
    pub fn adjunct(&self) -> Mat {
        let (dc, da, db) = (self.c.dim(), self.a.dim(), self.b.dim());
        Mat::from_fn(self.psi.field(), dc * db, da, |r, i| {
            let (s, t) = (r / db, r % db);
            self.psi.get(i * db + t, s).clone()
        })
    }

    /// `ψ(c_s)` as a `dim(B) × dim(A)` matrix.
    pub fn value(&self, s: usize) -> Mat {
        hom_vector_to_matrix(self.psi.field(), &self.psi.col_vec(s), self.a.dim(), self.b.dim())
    }
}

/// Reads a vector of `Hom(U, W)` as a `dim(W) × dim(U)` matrix.
pub fn hom_vector_to_matrix(field: Field, v: &[Scalar], du: usize, dw: usize) -> Mat {
    Mat::from_fn(field, dw, du, |t, i| v[i * dw + t].clone())
}

/// Inverse of [`hom_vector_to_matrix`].
pub fn hom_matrix_to_vector(m: &Mat) -> Vec<Scalar> {
    let (dw, du) = m.shape();
    (0..du * dw).map(|r| m.get(r % dw, r / dw).clone()).collect()
}

/// Direct check of `ψ(c)(aa') = Σ ψ(c₁)(a)·ψ(c₂)(a')` and `ψ(c)(1) = ε(c)1`.
pub fn measuring_identities_hold(m: &MeasuringMap) -> bool {
    let f = m.a.field();
    let (dc, da, db) = (m.c.dim(), m.a.dim(), m.b.dim());
    let delta = sparse_cols(m.c.comult());
    let ma = sparse_cols(m.a.mult());
    let mb = sparse_cols(m.b.mult());
    let psi = |s: usize, i: usize, t: usize| m.psi.get(i * db + t, s);
    for s in 0..dc {
        for i in 0..da {
            for j in 0..da {
                let mut lhs = vec![f.zero(); db];
                for (l, c) in &ma[i * da + j] {
                    for (t, slot) in lhs.iter_mut().enumerate() {
                        f.mul_add_assign(slot, c, psi(s, *l, t));
                    }
                }
                let mut rhs = vec![f.zero(); db];
                for (xy, d) in &delta[s] {
                    let (x, y) = (xy / dc, xy % dc);
                    for t in 0..db {
                        let u = psi(x, i, t);
                        if u.is_zero() {
                            continue;
                        }
                        for w in 0..db {
                            let v = psi(y, j, w);
                            if v.is_zero() {
                                continue;
                            }
                            let coef = f.mul(d, &f.mul(u, v));
                            for (r, mv) in &mb[t * db + w] {
                                f.mul_add_assign(&mut rhs[*r], &coef, mv);
                            }
                        }
                    }
                }
                if lhs != rhs {
                    return false;
                }
            }
        }
        // ψ(c_s)(1_A) = ε(c_s) 1_B
        let eps = m.c.counit().get(0, s);
        for t in 0..db {
            let mut v = f.zero();
            for i in 0..da {
                f.mul_add_assign(&mut v, m.a.unit().get(i, 0), psi(s, i, t));
            }
            if v != f.mul(eps, m.b.unit().get(t, 0)) {
                return false;
            }
        }
    }
    true
}

/// Both routes: the measuring identities, and the adjunct `A → [C, B]`
/// being an algebra map. They must agree.
pub fn verify_measuring(m: &MeasuringMap) -> Result<bool, MeasError> {
    let direct = measuring_identities_hold(m);
    let conv = convolution_algebra(&m.c, &m.b)?;
    let adjunct = is_algebra_morphism(&m.a, &conv, &m.adjunct())?;
    if direct != adjunct {
        return Err(MeasError::RouteDisagreement("measuring"));
    }
    Ok(direct)
}
