use crate::algcore::sparse::sparse_cols;
use crate::algcore::{
    convolution_algebra, tensor_algebras, tensor_coalgebras, AlgebraMorphism, CoalgebraMorphism,
};
use crate::exactlin::{tensor_index_map, Mat};

use super::{check_comodule, check_module, Comodule, ModError, Module};

/// `f*N`: the `B`-module `N` seen over `A` through `f: A → B`.
pub fn restrict(f: &AlgebraMorphism, n: &Module) -> Result<Module, ModError> {
    if f.target() != n.over() {
        return Err(ModError::BaseMismatch);
    }
    let action = n
        .action()
        .kron_precompose(Some(f.matrix()), None, f.target().dim(), n.dim());
    check_module(n.name().to_string(), f.source(), action)
}

/// `g_!X`: the `C`-comodule `X` seen over `D` through `g: C → D`.
pub fn corestrict(g: &CoalgebraMorphism, x: &Comodule) -> Result<Comodule, ModError> {
    if g.source() != x.over() {
        return Err(ModError::BaseMismatch);
    }
    let coaction = x
        .coaction()
        .kron_apply(Some(g.matrix()), None, g.source().dim(), x.dim());
    check_comodule(x.name().to_string(), g.target(), coaction)
}

/// `Hom(X, M)` as a module over `[C, A]` with `(f·g)(x) = Σ f(x₋₁)·g(x₀)`.
///
/// Basis `x ↦ m` has index `x*dim(M)+m`.
pub fn hom_module(x: &Comodule, m: &Module) -> Result<Module, ModError> {
    if x.field() != m.field() {
        return Err(ModError::FieldMismatch);
    }
    let fld = x.field();
    let conv = convolution_algebra(x.over(), m.over())?;
    let da = m.over().dim();
    let (dx, dm) = (x.dim(), m.dim());
    let h = dx * dm;
    let mut action = Mat::zeros(fld, h, conv.dim() * h);
    let co = sparse_cols(x.coaction());
    let act = sparse_cols(m.action());
    // e_{c,a} · e_{y,n} sends x to Σ δ[(c,y),x] · (a·n)
    for (xi, col) in co.iter().enumerate() {
        for (cy, s) in col {
            let (c, y) = (cy / dx, cy % dx);
            for a in 0..da {
                for n in 0..dm {
                    let column = (c * da + a) * h + (y * dm + n);
                    for (t, w) in &act[a * dm + n] {
                        action.add_at(xi * dm + t, column, &fld.mul(s, w));
                    }
                }
            }
        }
    }
    check_module(format!("[{},{}]", x.name(), m.name()), &conv, action)
}

/// `M ⊗ N` over `A ⊗ B` with `(a⊗b)(m⊗n) = am ⊗ bn`.
pub fn tensor_modules(m: &Module, n: &Module) -> Result<Module, ModError> {
    if m.field() != n.field() {
        return Err(ModError::FieldMismatch);
    }
    let ab = tensor_algebras(m.over(), n.over())?;
    // μ_M ⊗ μ_N acts on A⊗M⊗B⊗N; reorder columns from A⊗B⊗M⊗N.
    let big = m.action().kron(n.action());
    let (da, db, dm, dn) = (m.over().dim(), n.over().dim(), m.dim(), n.dim());
    let map = tensor_index_map(&[da, db, dm, dn], &[0, 2, 1, 3]);
    let inv = invert(&map);
    let action = big.permute_cols(&inv);
    check_module(format!("{}⊗{}", m.name(), n.name()), &ab, action)
}

/// `X ⊗ Y` over `C ⊗ D`, coaction `δ_X ⊗ δ_Y` followed by the middle swap
/// `C ⊗ X ⊗ D ⊗ Y → C ⊗ D ⊗ X ⊗ Y`.
pub fn tensor_comodules(x: &Comodule, y: &Comodule) -> Result<Comodule, ModError> {
    if x.field() != y.field() {
        return Err(ModError::FieldMismatch);
    }
    let cd = tensor_coalgebras(x.over(), y.over())?;
    let big = x.coaction().kron(y.coaction());
    let (dc, dd, dx, dy) = (x.over().dim(), y.over().dim(), x.dim(), y.dim());
    let map = tensor_index_map(&[dc, dx, dd, dy], &[0, 2, 1, 3]);
    let coaction = big.permute_rows(&map);
    check_comodule(format!("{}⊗{}", x.name(), y.name()), &cd, coaction)
}

/// Inverse of a permutation given as an index map.
pub(crate) fn invert(map: &[usize]) -> Vec<usize> {
    let mut inv = vec![0; map.len()];
    for (i, &t) in map.iter().enumerate() {
        inv[t] = i;
    }
    inv
}
