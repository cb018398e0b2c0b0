use crate::algcore::standard::{ground_algebra, ground_coalgebra};
use crate::algcore::{hom_map, tensor_algebras, tensor_coalgebras, Algebra, AlgebraMorphism};
use crate::exactlin::Mat;
use crate::measuring::{
    comodule_couniversal_factor, couniversal_factor, measuring_comodule_truncated, measuring_comonoid_truncated,
    MeasuringMap, ModuleMeasuringMap, TruncatedMeasuringComodule, TruncatedMeasuringComonoid, TruncationOptions,
};
use crate::modcomod::{tensor_comodules, tensor_modules, Comodule, GlobalComodMorphism, GlobalModMorphism, Module};

use super::linear::permute;
use super::structures::{check_comodule_monoid, Bimonoid, ComoduleMonoid, ModuleComonoid, ModuleMonoid};
use super::HopfError;

/// `C₁⊗C₂ → Hom(A₁⊗A₂, B₁⊗B₂)`, `c₁⊗c₂ ↦ ψ₁(c₁) ⊗ ψ₂(c₂)`.
pub fn tensor_measurings(p1: &MeasuringMap, p2: &MeasuringMap) -> Result<MeasuringMap, HopfError> {
    let (da1, db1, da2, db2) = (p1.a.dim(), p1.b.dim(), p2.a.dim(), p2.b.dim());
    let psi = permute(&p1.psi.kron(&p2.psi), &[da1, db1, da2, db2], &[0, 2, 1, 3]);
    Ok(MeasuringMap::new(
        tensor_coalgebras(&p1.c, &p2.c)?,
        tensor_algebras(&p1.a, &p2.a)?,
        tensor_algebras(&p1.b, &p2.b)?,
        psi,
    )?)
}

/// The tensor product of two module measurings, landing in
/// `Hom(M₁⊗M₂, N₁⊗N₂)` through `χ`.
pub fn tensor_module_measurings(r1: &ModuleMeasuringMap, r2: &ModuleMeasuringMap) -> Result<ModuleMeasuringMap, HopfError> {
    let (dm1, dn1, dm2, dn2) = (r1.m.dim(), r1.n.dim(), r2.m.dim(), r2.n.dim());
    let rho = permute(&r1.rho.kron(&r2.rho), &[dm1, dn1, dm2, dn2], &[0, 2, 1, 3]);
    Ok(ModuleMeasuringMap::new(
        tensor_measurings(&r1.underlying, &r2.underlying)?,
        tensor_comodules(&r1.x, &r2.x)?,
        tensor_modules(&r1.m, &r2.m)?,
        tensor_modules(&r1.n, &r2.n)?,
        rho,
    )?)
}

/// `Q_n(M,N) ⊗ Q_n(M',N') → Q_n(M⊗M', N⊗N')`: the couniversal factor of the
/// tensor of the two canonical module measurings.
pub fn q_lax_structure(
    q1: &TruncatedMeasuringComodule,
    q2: &TruncatedMeasuringComodule,
    q12: &TruncatedMeasuringComodule,
) -> Result<GlobalComodMorphism, HopfError> {
    let r = tensor_module_measurings(&q1.canonical, &q2.canonical)?;
    if r.m != q12.m || r.n != q12.n {
        return Err(HopfError::BaseMismatch("third truncation is not for the tensor products".into()));
    }
    Ok(comodule_couniversal_factor(q12, &r)?)
}

/// `k → Q_n(k, k)`, the unit of the lax structure.
pub fn q_lax_unit(q0: &TruncatedMeasuringComodule) -> Result<GlobalComodMorphism, HopfError> {
    let f = q0.m.field();
    let k = ground_algebra(f);
    let kmod = Module::regular(&k);
    if q0.m != kmod || q0.n != kmod {
        return Err(HopfError::BaseMismatch("unit truncation must be for (k, k)".into()));
    }
    let id = Mat::identity(f, 1);
    let under = MeasuringMap::new(ground_coalgebra(f), k.clone(), k, id.clone())?;
    let r = ModuleMeasuringMap::new(under, Comodule::regular(&ground_coalgebra(f)), kmod.clone(), kmod, id)?;
    Ok(comodule_couniversal_factor(q0, &r)?)
}

/// `Q(u, v): Q_n(M,N) → Q_n(M',N')` for module maps `u: M' → M` and
/// `v: N → N'`, as the couniversal factor of `ρ ↦ v ∘ ρ ∘ u`.
pub fn q_functor(
    src: &TruncatedMeasuringComodule,
    tgt: &TruncatedMeasuringComodule,
    u: &GlobalModMorphism,
    v: &GlobalModMorphism,
) -> Result<GlobalComodMorphism, HopfError> {
    if u.target != src.m || v.source != src.n || u.source != tgt.m || v.target != tgt.n {
        return Err(HopfError::BaseMismatch("module maps do not connect the truncations".into()));
    }
    if !u.check()? || !v.check()? {
        return Err(HopfError::BaseMismatch("not morphisms of modules".into()));
    }
    let canon = &src.canonical;
    let psi = hom_map(u.f.matrix(), v.f.matrix()).mul(&canon.underlying.psi);
    let under = MeasuringMap::new(canon.underlying.c.clone(), tgt.m.over().clone(), tgt.n.over().clone(), psi)?;
    let rho = hom_map(&u.p, &v.p).mul(&canon.rho);
    let r = ModuleMeasuringMap::new(under, src.q_n.clone(), tgt.m.clone(), tgt.n.clone(), rho)?;
    Ok(comodule_couniversal_factor(tgt, &r)?)
}

/// The multiplication measuring `P⊗P → Hom(H, A)`,
/// `π⊗π' ↦ μ_A ∘ (ψ(π) ⊗ ψ(π')) ∘ Δ_H`.
fn product_measuring(p: &TruncatedMeasuringComonoid, h: &Bimonoid) -> Result<MeasuringMap, HopfError> {
    let t = tensor_measurings(&p.canonical_measuring, &p.canonical_measuring)?;
    let psi = hom_map(h.coalgebra().comult(), p.b.mult()).mul(&t.psi);
    Ok(MeasuringMap::new(t.c, p.a.clone(), p.b.clone(), psi)?)
}

/// `k → Hom(H, A)`, `1 ↦ η_A ∘ ε_H`.
fn unit_measuring(p: &TruncatedMeasuringComonoid, h: &Bimonoid) -> Result<MeasuringMap, HopfError> {
    let f = p.field();
    let psi = hom_map(h.coalgebra().counit(), p.b.unit());
    Ok(MeasuringMap::new(ground_coalgebra(f), p.a.clone(), p.b.clone(), psi)?)
}

/// `P_n(H, A)` as a bimonoid, for a bimonoid `H` and a commutative `A`: the
/// multiplication and unit are the couniversal factors of the product and
/// unit measurings.
pub fn measuring_bimonoid(p: &TruncatedMeasuringComonoid, h: &Bimonoid) -> Result<Bimonoid, HopfError> {
    if &p.a != h.algebra() {
        return Err(HopfError::BaseMismatch("truncation is not for the bimonoid".into()));
    }
    if !p.b.is_commutative() {
        return Err(HopfError::diagram("P(H, A): A commutative", vec![]));
    }
    let mult = couniversal_factor(p, &product_measuring(p, h)?)?;
    let unit = couniversal_factor(p, &unit_measuring(p, h)?)?;
    let algebra = Algebra::new(
        p.p_n.name().to_string(),
        p.field(),
        p.p_n.basis_labels().to_vec(),
        mult.matrix().clone(),
        unit.matrix().clone(),
    )?;
    Bimonoid::new(algebra, p.p_n.clone())
}

/// The truncations needed by [`qmn_comodule_monoid`].
#[derive(Clone, Debug)]
pub struct QmnTruncations {
    /// `Q_n(M, N)` over `P_n(H, A)`.
    pub q: TruncatedMeasuringComodule,
    /// `Q_n(M⊗M, N⊗N)` over `P_n(H⊗H, A⊗A)`.
    pub q2: TruncatedMeasuringComodule,
}

pub fn qmn_truncations(m: &ModuleComonoid, n: &ModuleMonoid, opts: &TruncationOptions) -> Result<QmnTruncations, HopfError> {
    let h = m.bimonoid().algebra();
    let p = measuring_comonoid_truncated(h, n.algebra(), opts)?;
    let q = measuring_comodule_truncated(m.module(), n.module(), &p)?;
    let p2 = measuring_comonoid_truncated(&tensor_algebras(h, h)?, &tensor_algebras(n.algebra(), n.algebra())?, opts)?;
    let mm = tensor_modules(m.module(), m.module())?;
    let nn = tensor_modules(n.module(), n.module())?;
    let q2 = measuring_comodule_truncated(&mm, &nn, &p2)?;
    Ok(QmnTruncations { q, q2 })
}

/// `Q_n(M, N)` as a comodule monoid over the bimonoid `P_n(H, A)`.
#[derive(Clone, Debug)]
pub struct QmnStructure {
    pub bimonoid: Bimonoid,
    pub monoid: ComoduleMonoid,
    /// `Q_n(M,N) ⊗ Q_n(M,N) → Q_n(M⊗M, N⊗N)`.
    pub lax: GlobalComodMorphism,
    /// `Q_n(δ_M, μ_N): Q_n(M⊗M, N⊗N) → Q_n(M, N)`.
    pub functor: GlobalComodMorphism,
}

/// The comodule monoid structure on `Q_n(M, N)` for a module comonoid `M`
/// over `H` and a module monoid `N` over a commutative `A`. The
/// multiplication is the lax structure followed by `Q_n(δ_M, μ_N)`; it is
/// cross-checked against the couniversal factor of
/// `q⊗q' ↦ μ_N ∘ (ρ(q) ⊗ ρ(q')) ∘ δ_M` taken directly.
pub fn qmn_comodule_monoid(m: &ModuleComonoid, n: &ModuleMonoid, t: &QmnTruncations) -> Result<QmnStructure, HopfError> {
    let (q, q2) = (&t.q, &t.q2);
    if &q.m != m.module() || &q.n != n.module() {
        return Err(HopfError::BaseMismatch("truncation is not for (M, N)".into()));
    }
    let h = m.bimonoid();
    let bimonoid = measuring_bimonoid(&q.p, h)?;
    let f = q.m.field();

    let lax = q_lax_structure(q, q, q2)?;
    let delta_m = GlobalModMorphism {
        f: AlgebraMorphism::new(h.algebra().clone(), tensor_algebras(h.algebra(), h.algebra())?, h.coalgebra().comult().clone())?,
        source: m.module().clone(),
        target: tensor_modules(m.module(), m.module())?,
        p: m.coalgebra().comult().clone(),
    };
    let a = n.algebra();
    let mu_n = GlobalModMorphism {
        f: AlgebraMorphism::new(tensor_algebras(a, a)?, a.clone(), a.mult().clone())?,
        source: tensor_modules(n.module(), n.module())?,
        target: n.module().clone(),
        p: n.monoid().mult().clone(),
    };
    let functor = q_functor(q2, q, &delta_m, &mu_n)?;
    let composite = functor.after(&lax)?;
    if composite.g.matrix() != bimonoid.algebra().mult() {
        return Err(HopfError::RouteDisagreement("the multiplication of P_n(H, A)"));
    }

    let t2 = tensor_module_measurings(&q.canonical, &q.canonical)?;
    let direct = ModuleMeasuringMap::new(
        product_measuring(&q.p, h)?,
        t2.x,
        q.m.clone(),
        q.n.clone(),
        hom_map(m.coalgebra().comult(), n.monoid().mult()).mul(&t2.rho),
    )?;
    let direct = comodule_couniversal_factor(q, &direct)?;
    if direct.k != composite.k {
        return Err(HopfError::RouteDisagreement("the multiplication of Q_n(M, N)"));
    }

    let unit_r = ModuleMeasuringMap::new(
        unit_measuring(&q.p, h)?,
        Comodule::regular(&ground_coalgebra(f)),
        q.m.clone(),
        q.n.clone(),
        hom_map(m.coalgebra().counit(), n.monoid().unit()),
    )?;
    let unit = comodule_couniversal_factor(q, &unit_r)?;
    let algebra = Algebra::new(
        q.q_n.name().to_string(),
        f,
        Vec::new(),
        composite.k.clone(),
        unit.k.clone(),
    )?;
    let monoid = check_comodule_monoid(bimonoid.clone(), algebra, q.q_n.clone())?;
    Ok(QmnStructure { bimonoid, monoid, lax, functor })
}
