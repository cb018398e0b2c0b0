use crate::algcore::sparse::{sparse_cols, SparseVec};
use crate::algcore::{Algebra, Coalgebra};
use crate::exactlin::{Field, Mat};

use super::ModError;

/// A left module `μ: A ⊗ M → M`, stored as a `dim(M) × dim(A)·dim(M)` matrix
/// with column index `a*dim(M)+m`. Equality ignores the name.
#[derive(Clone, Debug)]
pub struct Module {
    name: String,
    over: Algebra,
    action: Mat,
}

/// A left comodule `δ: X → C ⊗ X`, stored as a `dim(C)·dim(X) × dim(X)` matrix
/// with row index `c*dim(X)+x`. In Sweedler notation `δ(x) = x₋₁ ⊗ x₀`.
#[derive(Clone, Debug)]
pub struct Comodule {
    name: String,
    over: Coalgebra,
    coaction: Mat,
}

impl PartialEq for Module {
    fn eq(&self, other: &Module) -> bool {
        self.over == other.over && self.action == other.action
    }
}

impl Eq for Module {}

impl PartialEq for Comodule {
    fn eq(&self, other: &Comodule) -> bool {
        self.over == other.over && self.coaction == other.coaction
    }
}

impl Eq for Comodule {}

pub fn check_module(name: impl Into<String>, over: &Algebra, action: Mat) -> Result<Module, ModError> {
    let f = over.field();
    if action.field() != f {
        return Err(ModError::FieldMismatch);
    }
    let da = over.dim();
    let dm = action.rows();
    if action.cols() != da * dm {
        return Err(ModError::DimMismatch(format!(
            "action is {}x{}, expected {dm}x{}",
            dm,
            action.cols(),
            da * dm
        )));
    }
    let act = sparse_cols(&action);
    let mult = sparse_cols(over.mult());
    let unit = sparse_cols(over.unit()).remove(0);

    for m in 0..dm {
        let mut v = SparseVec::new();
        for (u, c) in &unit {
            for (r, w) in &act[u * dm + m] {
                v.add(f, *r, f.mul(c, w));
            }
        }
        if !v.is_unit_at(m) {
            return Err(ModError::ActionUnitFailure(m));
        }
    }
    // a·(b·m) = (ab)·m
    for a in 0..da {
        for b in 0..da {
            for m in 0..dm {
                let mut lhs = SparseVec::new();
                for (n, x) in &act[b * dm + m] {
                    for (r, y) in &act[a * dm + n] {
                        lhs.add(f, *r, f.mul(x, y));
                    }
                }
                let mut rhs = SparseVec::new();
                for (c, x) in &mult[a * da + b] {
                    for (r, y) in &act[c * dm + m] {
                        rhs.add(f, *r, f.mul(x, y));
                    }
                }
                if lhs != rhs {
                    return Err(ModError::ActionAssociativityFailure(a, b, m));
                }
            }
        }
    }
    Ok(Module {
        name: name.into(),
        over: over.clone(),
        action,
    })
}

pub fn check_comodule(
    name: impl Into<String>,
    over: &Coalgebra,
    coaction: Mat,
) -> Result<Comodule, ModError> {
    let f = over.field();
    if coaction.field() != f {
        return Err(ModError::FieldMismatch);
    }
    let dc = over.dim();
    let dx = coaction.cols();
    if coaction.rows() != dc * dx {
        return Err(ModError::DimMismatch(format!(
            "coaction is {}x{dx}, expected {}x{dx}",
            coaction.rows(),
            dc * dx
        )));
    }
    let co = sparse_cols(&coaction);
    let comult = sparse_cols(over.comult());
    let eps = over.counit().row_slice(0).to_vec();

    for (x, col) in co.iter().enumerate() {
        let mut v = SparseVec::new();
        for (r, w) in col {
            v.add(f, r % dx, f.mul(&eps[r / dx], w));
        }
        if !v.is_unit_at(x) {
            return Err(ModError::CoactionCounitFailure(x));
        }
    }
    // (Δ⊗1)δ = (1⊗δ)δ in C⊗C⊗X
    for (x, col) in co.iter().enumerate() {
        let mut lhs = SparseVec::new();
        let mut rhs = SparseVec::new();
        for (r, w) in col {
            let (c, y) = (r / dx, r % dx);
            for (cc, v) in &comult[c] {
                lhs.add(f, cc * dx + y, f.mul(w, v));
            }
            for (cy, v) in &co[y] {
                rhs.add(f, c * dc * dx + cy, f.mul(w, v));
            }
        }
        if lhs != rhs {
            return Err(ModError::CoactionCoassociativityFailure(x));
        }
    }
    Ok(Comodule {
        name: name.into(),
        over: over.clone(),
        coaction,
    })
}

impl Module {
    pub fn new(name: impl Into<String>, over: &Algebra, action: Mat) -> Result<Module, ModError> {
        check_module(name, over, action)
    }

    /// `A` acting on itself by multiplication.
    pub fn regular(a: &Algebra) -> Module {
        check_module(a.name().to_string(), a, a.mult().clone()).expect("regular module")
    }

    /// `k^dim` with `a` acting by the scalar `χ(a)` for an algebra map `χ: A → k`.
    pub fn scalar(a: &Algebra, character: &Mat, dim: usize) -> Result<Module, ModError> {
        let f = a.field();
        let da = a.dim();
        let mut action = Mat::zeros(f, dim, da * dim);
        for i in 0..da {
            for m in 0..dim {
                action.set(m, i * dim + m, character.get(0, i).clone());
            }
        }
        check_module(format!("k^{dim}"), a, action)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Module {
        self.name = name.into();
        self
    }

    pub fn over(&self) -> &Algebra {
        &self.over
    }

    pub fn field(&self) -> Field {
        self.over.field()
    }

    pub fn dim(&self) -> usize {
        self.action.rows()
    }

    pub fn action(&self) -> &Mat {
        &self.action
    }

    /// `dim(M) × dim(M)` matrix of the action of basis element `a`.
    pub fn action_of(&self, a: usize) -> Mat {
        let d = self.dim();
        let idx: Vec<usize> = (0..d).map(|m| a * d + m).collect();
        self.action.select_cols(&idx)
    }
}

impl Comodule {
    pub fn new(name: impl Into<String>, over: &Coalgebra, coaction: Mat) -> Result<Comodule, ModError> {
        check_comodule(name, over, coaction)
    }

    /// `C` coacting on itself by `Δ`.
    pub fn regular(c: &Coalgebra) -> Comodule {
        check_comodule(c.name().to_string(), c, c.comult().clone()).expect("regular comodule")
    }

    /// `k^dim` with `δ(x) = g ⊗ x` for a grouplike `g` (a coordinate vector).
    pub fn at_grouplike(c: &Coalgebra, g: &[crate::exactlin::Scalar], dim: usize) -> Result<Comodule, ModError> {
        let f = c.field();
        let mut co = Mat::zeros(f, c.dim() * dim, dim);
        for (ci, s) in g.iter().enumerate() {
            for x in 0..dim {
                co.set(ci * dim + x, x, s.clone());
            }
        }
        check_comodule(format!("k^{dim}"), c, co)
    }

    /// The cofree comodule `C ⊗ V` with coaction `Δ ⊗ 1`.
    pub fn cofree(c: &Coalgebra, v_dim: usize) -> Comodule {
        let f = c.field();
        let dc = c.dim();
        let n = dc * v_dim;
        // (Δ⊗1)(c_i⊗v) = Σ Δ[(a,b),i] c_a ⊗ (c_b ⊗ v)
        let mut co = Mat::zeros(f, dc * n, n);
        for (i, col) in sparse_cols(c.comult()).iter().enumerate() {
            for (ab, s) in col {
                let (a, b) = (ab / dc, ab % dc);
                for v in 0..v_dim {
                    co.set(a * n + b * v_dim + v, i * v_dim + v, s.clone());
                }
            }
        }
        check_comodule(format!("{}⊗k^{v_dim}", c.name()), c, co).expect("cofree comodule")
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Comodule {
        self.name = name.into();
        self
    }

    pub fn over(&self) -> &Coalgebra {
        &self.over
    }

    pub fn field(&self) -> Field {
        self.over.field()
    }

    pub fn dim(&self) -> usize {
        self.coaction.cols()
    }

    pub fn coaction(&self) -> &Mat {
        &self.coaction
    }
}

/// Vertical module map check `p(a·m) = a·p(m)` over a common algebra.
pub fn is_module_map(m: &Module, n: &Module, p: &Mat) -> bool {
    if m.over() != n.over() || p.shape() != (n.dim(), m.dim()) {
        return false;
    }
    p.mul(m.action()) == n.action().kron_precompose(None, Some(p), m.over().dim(), n.dim())
}

/// Vertical comodule map check `δ_Y ∘ k = (1 ⊗ k) ∘ δ_X` over a common coalgebra.
pub fn is_comodule_map(x: &Comodule, y: &Comodule, k: &Mat) -> bool {
    if x.over() != y.over() || k.shape() != (y.dim(), x.dim()) {
        return false;
    }
    y.coaction().mul(k) == x.coaction().kron_apply(None, Some(k), x.over().dim(), x.dim())
}
