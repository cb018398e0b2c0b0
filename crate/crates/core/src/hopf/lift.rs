use crate::algcore::standard::ground_algebra;
use crate::algcore::{hom_map, is_algebra_morphism, tensor_algebras, AlgebraMorphism, CoalgebraMorphism};
use crate::exactlin::Mat;
use crate::measuring::{
    comodule_couniversal_factor, couniversal_factor, finite_dual, measuring_comodule_truncated,
    measuring_comonoid_truncated, MeasuringMap, ModuleMeasuringMap, TruncatedMeasuringComodule, TruncationOptions,
};
use crate::modcomod::{tensor_modules, Comodule, GlobalComodMorphism, GlobalModMorphism, Module};

use super::lax::{measuring_bimonoid, q_functor, q_lax_structure, tensor_module_measurings};
use super::structures::{
    check_hopf_module, dual_bimonoid, Bimonoid, ComoduleMonoid, HopfModule, ModuleComonoid,
};
use super::HopfError;

/// `Q_n(H, k)` and `Q_n(X, k)` over the same `P_n(H, k)`, and optionally
/// `Q_n(H⊗X, k⊗k)` for the second route through the lax structure.
#[derive(Clone, Debug)]
pub struct HopfLiftTruncations {
    pub q_h: TruncatedMeasuringComodule,
    pub q_x: TruncatedMeasuringComodule,
    pub q_hx: Option<TruncatedMeasuringComodule>,
}

pub fn hopf_lift_truncations(
    x: &HopfModule,
    opts: &TruncationOptions,
    with_lax: bool,
) -> Result<HopfLiftTruncations, HopfError> {
    let h = x.bimonoid().algebra();
    let k = ground_algebra(h.field());
    let kmod = Module::regular(&k);
    let p = measuring_comonoid_truncated(h, &k, opts)?;
    let m = x.module_comonoid().module();
    let q_h = measuring_comodule_truncated(m, &kmod, &p)?;
    let q_x = measuring_comodule_truncated(x.action(), &kmod, &p)?;
    let q_hx = if with_lax {
        let s = x.comodule_monoid().algebra();
        let p2 = measuring_comonoid_truncated(&tensor_algebras(h, s)?, &tensor_algebras(&k, &k)?, opts)?;
        let mx = tensor_modules(m, x.action())?;
        Some(measuring_comodule_truncated(&mx, &tensor_modules(&kmod, &kmod)?, &p2)?)
    } else {
        None
    };
    Ok(HopfLiftTruncations { q_h, q_x, q_hx })
}

/// `Q_n(X, k)` as an `H°`-Hopf module, with the identifications that put it
/// there.
#[derive(Clone, Debug)]
pub struct HopfLift {
    /// `H°`, the dual bimonoid.
    pub dual: Bimonoid,
    /// `H° ≅ P_n(H, k)`, the couniversal factor of the evaluation measuring.
    pub to_p: CoalgebraMorphism,
    /// `H° ≅ Q_n(H, k)` over `to_p`.
    pub to_q: GlobalComodMorphism,
    /// `Q_n(H, k) ⊗ Q_n(X, k) → Q_n(X, k)`.
    pub action: GlobalComodMorphism,
    /// Whether the route through `Q_n(H⊗X, k⊗k)` was also taken.
    pub lax_route_checked: bool,
    pub lifted: HopfModule,
}

/// The `P_n(H, k)`-coaction of `Q_n(X, k)` carried to `H°` along `to_p`.
pub fn lift_comodule_structure(q_x: &TruncatedMeasuringComodule, to_p: &CoalgebraMorphism) -> Result<Comodule, HopfError> {
    let inv = to_p
        .matrix()
        .inverse()
        .map_err(|_| HopfError::NotIso("H° → P_n(H, k)".into()))?;
    let coaction = q_x
        .q_n
        .coaction()
        .kron_apply(Some(&inv), None, q_x.p.p_n.dim(), q_x.q_n.dim());
    Ok(Comodule::new(q_x.q_n.name().to_string(), to_p.source(), coaction)?)
}

/// The `Q_n(H, k)`-action on `Q_n(X, k)`: the couniversal factor of
/// `q⊗q' ↦ μ_k ∘ (ρ(q) ⊗ ρ(q')) ∘ χ_X`. Returns it together with the
/// `H°`-module obtained along `to_q`.
pub fn lift_module_structure(
    q_h: &TruncatedMeasuringComodule,
    q_x: &TruncatedMeasuringComodule,
    x: &HopfModule,
    to_q: &GlobalComodMorphism,
    dual: &Bimonoid,
) -> Result<(Module, GlobalComodMorphism), HopfError> {
    let f = x.bimonoid().field();
    let t = tensor_module_measurings(&q_h.canonical, &q_x.canonical)?;
    let mu_k = Mat::identity(f, 1);
    let chi_s = x.comodule_monoid().comodule().coaction();
    let psi = hom_map(chi_s, &mu_k).mul(&t.underlying.psi);
    let under = MeasuringMap::new(t.underlying.c.clone(), q_x.p.a.clone(), q_x.p.b.clone(), psi)?;
    let rho = hom_map(x.coaction().coaction(), &mu_k).mul(&t.rho);
    let r = ModuleMeasuringMap::new(under, t.x, q_x.m.clone(), q_x.n.clone(), rho)?;
    let action = comodule_couniversal_factor(q_x, &r)?;
    let (dq, dn) = (q_h.q_n.dim(), q_x.q_n.dim());
    let nu = action.k.kron_precompose(Some(&to_q.k), None, dq, dn);
    let module = Module::new(q_x.q_n.name().to_string(), dual.algebra(), nu)?;
    Ok((module, action))
}

/// The lift of `Q(−, k)` to Hopf modules at `X`, for `X` a Hopf module over
/// `S = M = H`. Realizes `H° ≅ P_n(H, k)` and `H° ≅ Q_n(H, k)` explicitly,
/// carries the coaction and the `Q_n(H, k)`-action of `Q_n(X, k)` to `H°`,
/// and checks the result is an `H°`-Hopf module. With `q_hx` present the
/// action is also computed as the lax structure followed by `Q_n(χ_X, μ_k)`
/// and the two must agree.
pub fn hopf_lift_check(x: &HopfModule, t: &HopfLiftTruncations) -> Result<HopfLift, HopfError> {
    let h = x.bimonoid();
    if x.comodule_monoid() != &ComoduleMonoid::regular(h) || x.module_comonoid() != &ModuleComonoid::regular(h) {
        return Err(HopfError::BaseMismatch("the lift needs S = M = H with the regular structures".into()));
    }
    let f = h.field();
    let kmod = Module::regular(&ground_algebra(f));
    let (q_h, q_x) = (&t.q_h, &t.q_x);
    if &q_h.m != x.module_comonoid().module() || q_h.n != kmod || &q_x.m != x.action() || q_x.n != kmod {
        return Err(HopfError::BaseMismatch("truncations are not for (H, k) and (X, k)".into()));
    }
    if q_h.p.p_n != q_x.p.p_n {
        return Err(HopfError::BaseMismatch("truncations over different P_n(H, k)".into()));
    }

    let dual = dual_bimonoid(h)?;
    let (h_dual, evaluation) = finite_dual(h.algebra());
    let to_p = couniversal_factor(&q_x.p, &evaluation)?;
    if !to_p.matrix().is_invertible() {
        return Err(HopfError::NotIso("H° → P_n(H, k)".into()));
    }
    let p_bimonoid = measuring_bimonoid(&q_x.p, h)?;
    if !is_algebra_morphism(dual.algebra(), p_bimonoid.algebra(), to_p.matrix())? {
        return Err(HopfError::NotIso("H° → P_n(H, k) is not multiplicative".into()));
    }
    let r = ModuleMeasuringMap::new(
        evaluation,
        Comodule::regular(&h_dual),
        q_h.m.clone(),
        kmod.clone(),
        Mat::identity(f, h.dim()),
    )?;
    let to_q = comodule_couniversal_factor(q_h, &r)?;
    if !to_q.k.is_invertible() {
        return Err(HopfError::NotIso("H° → Q_n(H, k)".into()));
    }
    if to_q.g != to_p {
        return Err(HopfError::RouteDisagreement("H° → P_n(H, k)"));
    }

    let coaction = lift_comodule_structure(q_x, &to_p)?;
    let (module, action) = lift_module_structure(q_h, q_x, x, &to_q, &dual)?;

    let lax_route_checked = match &t.q_hx {
        Some(q_hx) => {
            let lax = q_lax_structure(q_h, q_x, q_hx)?;
            let s = x.comodule_monoid();
            let chi_x = GlobalModMorphism {
                f: AlgebraMorphism::new(
                    s.algebra().clone(),
                    tensor_algebras(h.algebra(), s.algebra())?,
                    s.comodule().coaction().clone(),
                )?,
                source: x.action().clone(),
                target: tensor_modules(x.module_comonoid().module(), x.action())?,
                p: x.coaction().coaction().clone(),
            };
            let k = ground_algebra(f);
            let mu_k = GlobalModMorphism {
                f: AlgebraMorphism::new(tensor_algebras(&k, &k)?, k.clone(), k.mult().clone())?,
                source: tensor_modules(&kmod, &kmod)?,
                target: kmod.clone(),
                p: Mat::identity(f, 1),
            };
            let functor = q_functor(q_hx, q_x, &chi_x, &mu_k)?;
            if functor.after(&lax)?.k != action.k {
                return Err(HopfError::RouteDisagreement("the Q_n(H, k)-action on Q_n(X, k)"));
            }
            true
        }
        None => false,
    };

    let lifted = check_hopf_module(
        ComoduleMonoid::regular(&dual),
        ModuleComonoid::regular(&dual),
        module,
        coaction,
    )?;
    Ok(HopfLift { dual, to_p, to_q, action, lax_route_checked, lifted })
}
