use std::collections::BTreeMap;

use crate::algcore::sparse::sparse_cols;
use crate::algcore::Coalgebra;
use crate::exactlin::{kernel, Field, Mat, Scalar, Subspace};
use crate::modcomod::Comodule;

use super::MeasError;

/// A coalgebra presented by the sparse comultiplication of its basis.
pub trait SparseCoalgebra {
    fn field(&self) -> Field;
    fn dim(&self) -> usize;
    /// Nonzero terms `(l, r, c)` of `Δ(e_i) = Σ c·e_l ⊗ e_r`.
    fn comult_of(&self, i: usize) -> Vec<(usize, usize, Scalar)>;
    fn counit_of(&self, i: usize) -> Scalar;
}

/// A left comodule presented by the sparse coaction of its basis.
pub trait SparseComodule {
    fn field(&self) -> Field;
    fn dim(&self) -> usize;
    /// Nonzero terms `(c, y, s)` of `δ(x_i) = Σ s·c ⊗ x_y`.
    fn coaction_of(&self, i: usize) -> Vec<(usize, usize, Scalar)>;
}

/// Sparse view of a dense coalgebra.
pub struct SparseView {
    field: Field,
    counit: Vec<Scalar>,
    terms: Vec<Vec<(usize, usize, Scalar)>>,
}

impl SparseView {
    pub fn of_coalgebra(c: &Coalgebra) -> SparseView {
        let d = c.dim();
        SparseView {
            field: c.field(),
            counit: c.counit().row_slice(0).to_vec(),
            terms: sparse_cols(c.comult())
                .into_iter()
                .map(|col| col.into_iter().map(|(r, s)| (r / d, r % d, s)).collect())
                .collect(),
        }
    }

    pub fn of_comodule(x: &Comodule) -> SparseView {
        let d = x.dim();
        SparseView {
            field: x.field(),
            counit: Vec::new(),
            terms: sparse_cols(x.coaction())
                .into_iter()
                .map(|col| col.into_iter().map(|(r, s)| (r / d, r % d, s)).collect())
                .collect(),
        }
    }
}

impl SparseCoalgebra for SparseView {
    fn field(&self) -> Field {
        self.field
    }
    fn dim(&self) -> usize {
        self.terms.len()
    }
    fn comult_of(&self, i: usize) -> Vec<(usize, usize, Scalar)> {
        self.terms[i].clone()
    }
    fn counit_of(&self, i: usize) -> Scalar {
        self.counit[i].clone()
    }
}

impl SparseComodule for SparseView {
    fn field(&self) -> Field {
        self.field
    }
    fn dim(&self) -> usize {
        self.terms.len()
    }
    fn coaction_of(&self, i: usize) -> Vec<(usize, usize, Scalar)> {
        self.terms[i].clone()
    }
}

/// Shrinks `w` to the fixpoint of `D ↦ {v ∈ D : test(π_D, v) = 0}`, where
/// `test` is linear in `v` and `π_D` is a quotient map with kernel `D`.
fn fixpoint<F>(w: &Subspace, test: F) -> Subspace
where
    F: Fn(&[Vec<(usize, Scalar)>], usize, &[Scalar]) -> BTreeMap<usize, Scalar>,
{
    let f = w.field();
    let mut d = w.clone();
    loop {
        if d.dim() == 0 || d.is_full() {
            return d;
        }
        let pi = d.quotient_map();
        let q = pi.rows();
        // columns of π, sparse: pi_cols[l] = [(a, π[a,l])]
        let pi_cols = sparse_cols(&pi);
        let mut rows: BTreeMap<usize, Vec<Scalar>> = BTreeMap::new();
        let m = d.dim();
        for i in 0..m {
            for (r, s) in test(&pi_cols, q, d.basis().row_slice(i)) {
                rows.entry(r).or_insert_with(|| vec![f.zero(); m])[i] = s;
            }
        }
        if rows.is_empty() {
            return d;
        }
        let mat = Mat::from_rows(f, m, rows.into_values().collect()).expect("constraint rows");
        let k = kernel(&mat);
        if k.dim() == m {
            return d;
        }
        d = Subspace::span(&k.basis().mul(d.basis()));
    }
}

fn accumulate(f: Field, acc: &mut BTreeMap<usize, Scalar>, idx: usize, v: Scalar) {
    let e = acc.entry(idx).or_insert_with(|| f.zero());
    *e = f.add(e, &v);
}

fn prune(mut acc: BTreeMap<usize, Scalar>) -> BTreeMap<usize, Scalar> {
    acc.retain(|_, v| !v.is_zero());
    acc
}

/// Largest `D ⊆ w` with `Δ(D) ⊆ D ⊗ C ∩ C ⊗ D`, for a sparse coalgebra.
pub fn largest_subcoalgebra_sparse<C: SparseCoalgebra>(c: &C, w: &Subspace) -> Subspace {
    let f = c.field();
    let n = c.dim();
    assert_eq!(w.ambient_dim(), n, "subspace not in the coalgebra");
    let terms: Vec<_> = (0..n).map(|i| c.comult_of(i)).collect();
    fixpoint(w, |pi_cols, q, v| {
        let mut acc = BTreeMap::new();
        for (i, vi) in v.iter().enumerate() {
            if vi.is_zero() {
                continue;
            }
            for (l, r, s) in &terms[i] {
                let coef = f.mul(vi, s);
                // (π ⊗ 1)Δ at a*n + r, then (1 ⊗ π)Δ at q*n + l*q + a
                for (a, p) in &pi_cols[*l] {
                    accumulate(f, &mut acc, a * n + r, f.mul(&coef, p));
                }
                for (a, p) in &pi_cols[*r] {
                    accumulate(f, &mut acc, q * n + l * q + a, f.mul(&coef, p));
                }
            }
        }
        prune(acc)
    })
}

/// Largest `D ⊆ w` with `δ(D) ⊆ C ⊗ D`, for a sparse left comodule.
pub fn largest_subcomodule_sparse<X: SparseComodule>(x: &X, w: &Subspace) -> Subspace {
    let f = x.field();
    assert_eq!(w.ambient_dim(), x.dim(), "subspace not in the comodule");
    let terms: Vec<_> = (0..x.dim()).map(|i| x.coaction_of(i)).collect();
    fixpoint(w, |pi_cols, q, v| {
        let mut acc = BTreeMap::new();
        for (i, vi) in v.iter().enumerate() {
            if vi.is_zero() {
                continue;
            }
            for (c, y, s) in &terms[i] {
                let coef = f.mul(vi, s);
                for (a, p) in &pi_cols[*y] {
                    accumulate(f, &mut acc, c * q + a, f.mul(&coef, p));
                }
            }
        }
        prune(acc)
    })
}

/// The largest subcoalgebra of `c` contained in `w`.
pub fn largest_subcoalgebra_in(c: &Coalgebra, w: &Subspace) -> Subspace {
    largest_subcoalgebra_sparse(&SparseView::of_coalgebra(c), w)
}

/// The largest subcomodule of `x` contained in `w`.
pub fn largest_subcomodule_in(x: &Comodule, w: &Subspace) -> Subspace {
    largest_subcomodule_sparse(&SparseView::of_comodule(x), w)
}

/// The subcoalgebra on `d` (a `Δ`-closed subspace), in the RREF basis of `d`.
pub fn restrict_coalgebra<C: SparseCoalgebra>(
    c: &C,
    d: &Subspace,
    name: &str,
    labels: Vec<String>,
) -> Result<Coalgebra, MeasError> {
    let f = c.field();
    let m = d.dim();
    let piv = d.pivots();
    let mut slot = vec![usize::MAX; c.dim()];
    for (j, &p) in piv.iter().enumerate() {
        slot[p] = j;
    }
    let mut comult = Mat::zeros(f, m * m, m);
    let mut counit = Mat::zeros(f, 1, m);
    for i in 0..m {
        let b = d.basis().row_slice(i);
        let mut full: BTreeMap<(usize, usize), Scalar> = BTreeMap::new();
        let mut eps = f.zero();
        for (w, bw) in b.iter().enumerate() {
            if bw.is_zero() {
                continue;
            }
            f.mul_add_assign(&mut eps, bw, &c.counit_of(w));
            for (l, r, s) in c.comult_of(w) {
                let e = full.entry((l, r)).or_insert_with(|| f.zero());
                *e = f.add(e, &f.mul(bw, &s));
            }
        }
        counit.set(0, i, eps);
        // Coordinates in D⊗D are the entries at pivot pairs; the remaining
        // entries are then checked by reconstruction.
        let mut recon: BTreeMap<(usize, usize), Scalar> = BTreeMap::new();
        for (&(l, r), s) in &full {
            if s.is_zero() || slot[l] == usize::MAX || slot[r] == usize::MAX {
                continue;
            }
            let (jl, jr) = (slot[l], slot[r]);
            comult.set(jl * m + jr, i, s.clone());
            for (x, bx) in d.basis().row_slice(jl).iter().enumerate() {
                if bx.is_zero() {
                    continue;
                }
                for (y, by) in d.basis().row_slice(jr).iter().enumerate() {
                    if by.is_zero() {
                        continue;
                    }
                    let e = recon.entry((x, y)).or_insert_with(|| f.zero());
                    *e = f.add(e, &f.mul(s, &f.mul(bx, by)));
                }
            }
        }
        full.retain(|_, v| !v.is_zero());
        recon.retain(|_, v| !v.is_zero());
        if full != recon {
            return Err(MeasError::NotClosed("subcoalgebra"));
        }
    }
    let labels = if labels.len() == m { labels } else { Vec::new() };
    Ok(Coalgebra::new(name, f, labels, comult, counit)?)
}

/// The subcomodule on `d` (a `δ`-closed subspace) as a comodule over `over`.
pub fn restrict_comodule<X: SparseComodule>(
    x: &X,
    over: &Coalgebra,
    d: &Subspace,
    name: &str,
) -> Result<Comodule, MeasError> {
    let f = x.field();
    let m = d.dim();
    let dc = over.dim();
    let piv = d.pivots();
    let mut slot = vec![usize::MAX; x.dim()];
    for (j, &p) in piv.iter().enumerate() {
        slot[p] = j;
    }
    let mut coaction = Mat::zeros(f, dc * m, m);
    for i in 0..m {
        let b = d.basis().row_slice(i);
        let mut full: BTreeMap<(usize, usize), Scalar> = BTreeMap::new();
        for (w, bw) in b.iter().enumerate() {
            if bw.is_zero() {
                continue;
            }
            for (c, y, s) in x.coaction_of(w) {
                let e = full.entry((c, y)).or_insert_with(|| f.zero());
                *e = f.add(e, &f.mul(bw, &s));
            }
        }
        let mut recon: BTreeMap<(usize, usize), Scalar> = BTreeMap::new();
        for (&(c, y), s) in &full {
            if s.is_zero() || slot[y] == usize::MAX {
                continue;
            }
            let j = slot[y];
            coaction.set(c * m + j, i, s.clone());
            for (z, bz) in d.basis().row_slice(j).iter().enumerate() {
                if !bz.is_zero() {
                    let e = recon.entry((c, z)).or_insert_with(|| f.zero());
                    *e = f.add(e, &f.mul(s, bz));
                }
            }
        }
        full.retain(|_, v| !v.is_zero());
        recon.retain(|_, v| !v.is_zero());
        if full != recon {
            return Err(MeasError::NotClosed("subcomodule"));
        }
    }
    Ok(Comodule::new(name, over, coaction)?)
}
