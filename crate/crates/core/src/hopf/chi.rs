use crate::algcore::standard::{ground_algebra, ground_coalgebra};
use crate::algcore::{hom_map, AlgebraMorphism};
use crate::exactlin::{tensor_index_map, Field};
use crate::modcomod::{hom_module, tensor_comodules, tensor_modules, Comodule, GlobalModMorphism, Module};

use super::linear::{commutes, decode, perm_matrix, swap_matrix};
use super::HopfError;

/// Index map of `b ∘ a` for index maps `a` then `b`.
fn then(a: &[usize], b: &[usize]) -> Vec<usize> {
    a.iter().map(|&i| b[i]).collect()
}

fn check_fields(fields: &[Field]) -> Result<Field, HopfError> {
    if fields.windows(2).any(|w| w[0] != w[1]) {
        return Err(HopfError::FieldMismatch);
    }
    Ok(fields[0])
}

/// `χ: [X,M] ⊗ [Y,N] → [X⊗Y, M⊗N]`, `f⊗g ↦ (x⊗y ↦ f(x)⊗g(y))`, as a morphism
/// of modules over `χ: [C,A] ⊗ [D,B] → [C⊗D, A⊗B]`. Both diagrams of its
/// compatibility with the actions are verified before it is returned.
pub fn chi_map(x: &Comodule, y: &Comodule, m: &Module, n: &Module) -> Result<GlobalModMorphism, HopfError> {
    let f = check_fields(&[x.field(), y.field(), m.field(), n.field()])?;
    let (dc, dd, da, db) = (x.over().dim(), y.over().dim(), m.over().dim(), n.over().dim());
    let (dx, dy, dm, dn) = (x.dim(), y.dim(), m.dim(), n.dim());
    let source = tensor_modules(&hom_module(x, m)?, &hom_module(y, n)?)?;
    let target = hom_module(&tensor_comodules(x, y)?, &tensor_modules(m, n)?)?;
    let base = AlgebraMorphism::new(
        source.over().clone(),
        target.over().clone(),
        perm_matrix(f, &[dc, da, dd, db], &[0, 2, 1, 3]),
    )?;
    let p = perm_matrix(f, &[dx, dm, dy, dn], &[0, 2, 1, 3]);
    let lhs = p.mul(source.action());
    let rhs = target
        .action()
        .kron_precompose(Some(base.matrix()), Some(&p), target.over().dim(), target.dim());
    commutes("χ is a module map", &lhs, &rhs, &[dc, da, dd, db, dx, dm, dy, dn])?;
    chi_diagrams(x, y, m, n)?;
    Ok(GlobalModMorphism { f: base, source, target, p })
}

/// The unit component `[k, k] ≅ k`.
pub fn chi_unit(field: Field) -> Result<GlobalModMorphism, HopfError> {
    let k = ground_algebra(field);
    let source = hom_module(&Comodule::regular(&ground_coalgebra(field)), &Module::regular(&k))?;
    let id = crate::exactlin::Mat::identity(field, 1);
    let base = AlgebraMorphism::new(source.over().clone(), k.clone(), id.clone())?;
    let mor = GlobalModMorphism { f: base, source, target: Module::regular(&k), p: id };
    if !mor.check()? {
        return Err(HopfError::diagram("[k,k] ≅ k is a module map", vec![]));
    }
    Ok(mor)
}

/// The two diagrams behind `χ` being a module map: starting at
/// `[C,A][D,B][X,M][Y,N]`, the rectangle of `χ`s and symmetries into
/// `[CXDY, AMBN]` commutes, and `χ` intertwines `[δ_X δ_Y, μ_M μ_N]` with
/// `[δ_X, μ_M] ⊗ [δ_Y, μ_N]`; then the outer diagram is compared. The
/// braiding square is checked by [`chi_braiding_check`].
pub fn chi_diagrams(x: &Comodule, y: &Comodule, m: &Module, n: &Module) -> Result<(), HopfError> {
    let f = check_fields(&[x.field(), y.field(), m.field(), n.field()])?;
    let (c, d, a, b) = (x.over().dim(), y.over().dim(), m.over().dim(), n.over().dim());
    let (dx, dy, dm, dn) = (x.dim(), y.dim(), m.dim(), n.dim());
    let dims = [c, a, d, b, dx, dm, dy, dn];

    // Top then right: χχ, χ, [CcY, AcN].
    let chichi = tensor_index_map(&dims, &[0, 2, 1, 3, 4, 6, 5, 7]);
    let chi_big = tensor_index_map(&[c, d, a, b, dx, dy, dm, dn], &[0, 1, 4, 5, 2, 3, 6, 7]);
    let sym = tensor_index_map(&[c, d, dx, dy, a, b, dm, dn], &[0, 2, 1, 3, 4, 6, 5, 7]);
    let route_right = then(&then(&chichi, &chi_big), &sym);
    // Left then bottom: the middle symmetry, χχ, χ.
    let swap = tensor_index_map(&dims, &[0, 1, 4, 5, 2, 3, 6, 7]);
    let chichi2 = tensor_index_map(&[c, a, dx, dm, d, b, dy, dn], &[0, 2, 1, 3, 4, 6, 5, 7]);
    let chi_mid = tensor_index_map(&[c, dx, a, dm, d, dy, b, dn], &[0, 1, 4, 5, 2, 3, 6, 7]);
    let to_pair = then(&swap, &chichi2);
    let route_left = then(&to_pair, &chi_mid);
    if let Some(i) = (0..route_left.len()).find(|&i| route_left[i] != route_right[i]) {
        return Err(HopfError::diagram("χ: upper rectangle", decode(i, &dims)));
    }

    // Bottom square on [CX,AM][DY,BN].
    let act_big = hom_map(&x.coaction().kron(y.coaction()), &m.action().kron(n.action()));
    let act_pair = hom_map(x.coaction(), m.action()).kron(&hom_map(y.coaction(), n.action()));
    let chi_small = perm_matrix(f, &[dx, dm, dy, dn], &[0, 2, 1, 3]);
    let pair_dims = [c, dx, a, dm, d, dy, b, dn];
    let chi_pair = tensor_index_map(&pair_dims, &[0, 1, 4, 5, 2, 3, 6, 7]);
    let square_lhs = act_big.select_cols(&chi_pair);
    let square_rhs = chi_small.mul(&act_pair);
    commutes("χ: lower square", &square_lhs, &square_rhs, &pair_dims)?;

    let outer_lhs = act_big.select_cols(&route_right);
    let outer_rhs = square_rhs.select_cols(&to_pair);
    commutes("χ: outer diagram", &outer_lhs, &outer_rhs, &dims)
}

/// The square `[c, c] ∘ χ = χ ∘ c` from `[D,B] ⊗ [X,M]` to `[X⊗D, M⊗B]`, for
/// spaces of the given dimensions.
pub fn chi_braiding_check(field: Field, dd: usize, db: usize, dx: usize, dm: usize) -> Result<(), HopfError> {
    let chi_dx = perm_matrix(field, &[dd, db, dx, dm], &[0, 2, 1, 3]);
    let chi_xd = perm_matrix(field, &[dx, dm, dd, db], &[0, 2, 1, 3]);
    let cc = hom_map(&swap_matrix(field, dx, dd), &swap_matrix(field, db, dm));
    let lhs = cc.mul(&chi_dx);
    let rhs = chi_xd.mul(&swap_matrix(field, dd * db, dx * dm));
    commutes("χ: braiding", &lhs, &rhs, &[dd, db, dx, dm])
}
