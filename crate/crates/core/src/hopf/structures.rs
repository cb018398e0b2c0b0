use crate::algcore::standard::{ground_algebra, ground_coalgebra, group_algebra, grouplike_coalgebra};
use crate::algcore::{dual_algebra, tensor_algebras, tensor_coalgebras, Algebra, Coalgebra};
use crate::exactlin::{Field, Mat};
use crate::measuring::finite_dual;
use crate::modcomod::{Comodule, Module};

use super::linear::{commutes, middle_swap, permute, swap_matrix};
use super::HopfError;

/// An algebra and a coalgebra on the same carrier with `Δ` and `ε` algebra
/// maps.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bimonoid {
    algebra: Algebra,
    coalgebra: Coalgebra,
}

impl Bimonoid {
    pub fn new(algebra: Algebra, coalgebra: Coalgebra) -> Result<Bimonoid, HopfError> {
        check_bimonoid(algebra, coalgebra)
    }

    pub fn ground(field: Field) -> Bimonoid {
        Bimonoid { algebra: ground_algebra(field), coalgebra: ground_coalgebra(field) }
    }

    pub fn algebra(&self) -> &Algebra {
        &self.algebra
    }

    pub fn coalgebra(&self) -> &Coalgebra {
        &self.coalgebra
    }

    pub fn field(&self) -> Field {
        self.algebra.field()
    }

    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }

    pub fn name(&self) -> &str {
        self.algebra.name()
    }
}

fn same_carrier(what: &str, d1: usize, d2: usize) -> Result<(), HopfError> {
    if d1 != d2 {
        return Err(HopfError::DimMismatch(format!("{what}: carriers of dimension {d1} and {d2}")));
    }
    Ok(())
}

fn same_field(a: Field, b: Field) -> Result<(), HopfError> {
    if a != b {
        return Err(HopfError::FieldMismatch);
    }
    Ok(())
}

pub fn check_bimonoid(algebra: Algebra, coalgebra: Coalgebra) -> Result<Bimonoid, HopfError> {
    same_field(algebra.field(), coalgebra.field())?;
    same_carrier("bimonoid", algebra.dim(), coalgebra.dim())?;
    let f = algebra.field();
    let d = algebra.dim();
    let (m, u) = (algebra.mult(), algebra.unit());
    let (dl, e) = (coalgebra.comult(), coalgebra.counit());
    let rhs = permute(&dl.kron(dl), &[d; 4], &[0, 2, 1, 3]).kron_apply(Some(m), Some(m), d * d, d * d);
    commutes("bimonoid: Δ multiplicative", &dl.mul(m), &rhs, &[d, d])?;
    commutes("bimonoid: Δ unital", &dl.mul(u), &u.kron(u), &[])?;
    commutes("bimonoid: ε multiplicative", &e.mul(m), &e.kron(e), &[d, d])?;
    commutes("bimonoid: ε unital", &e.mul(u), &Mat::identity(f, 1), &[])?;
    Ok(Bimonoid { algebra, coalgebra })
}

/// The group algebra with every group element grouplike.
pub fn group_bimonoid(field: Field, name: &str, table: &[Vec<usize>], identity: usize) -> Bimonoid {
    let algebra = group_algebra(field, name, table, identity);
    let coalgebra = grouplike_coalgebra(field, table.len()).with_name(name);
    check_bimonoid(algebra, coalgebra).expect("group bimonoid")
}

/// `k[C_n]`.
pub fn cyclic_group_bimonoid(field: Field, n: usize) -> Bimonoid {
    let table: Vec<Vec<usize>> = (0..n).map(|i| (0..n).map(|j| (i + j) % n).collect()).collect();
    group_bimonoid(field, &format!("k[C{n}]"), &table, 0)
}

pub fn tensor_bimonoids(h1: &Bimonoid, h2: &Bimonoid) -> Result<Bimonoid, HopfError> {
    let algebra = tensor_algebras(&h1.algebra, &h2.algebra)?;
    let coalgebra = tensor_coalgebras(&h1.coalgebra, &h2.coalgebra)?;
    check_bimonoid(algebra, coalgebra)
}

/// `H° = H*` with the dual algebra of the coalgebra part and the finite dual
/// coalgebra of the algebra part.
pub fn dual_bimonoid(h: &Bimonoid) -> Result<Bimonoid, HopfError> {
    let name = format!("{}°", h.name());
    let algebra = dual_algebra(&h.coalgebra).with_name(name.clone());
    let (coalgebra, _) = finite_dual(&h.algebra);
    check_bimonoid(algebra, coalgebra.with_name(name))
}

/// A module over a bimonoid with a comonoid structure on its carrier for
/// which the action is a coalgebra map.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleComonoid {
    h: Bimonoid,
    module: Module,
    coalgebra: Coalgebra,
}

impl ModuleComonoid {
    pub fn new(h: Bimonoid, module: Module, coalgebra: Coalgebra) -> Result<ModuleComonoid, HopfError> {
        check_module_comonoid(h, module, coalgebra)
    }

    /// `H` acting on itself by multiplication, with its own comultiplication.
    pub fn regular(h: &Bimonoid) -> ModuleComonoid {
        check_module_comonoid(h.clone(), Module::regular(&h.algebra), h.coalgebra.clone())
            .expect("regular module comonoid")
    }

    pub fn bimonoid(&self) -> &Bimonoid {
        &self.h
    }

    pub fn module(&self) -> &Module {
        &self.module
    }

    pub fn coalgebra(&self) -> &Coalgebra {
        &self.coalgebra
    }
}

pub fn check_module_comonoid(h: Bimonoid, module: Module, coalgebra: Coalgebra) -> Result<ModuleComonoid, HopfError> {
    if module.over() != &h.algebra {
        return Err(HopfError::BaseMismatch("module is not over the algebra of the bimonoid".into()));
    }
    same_field(module.field(), coalgebra.field())?;
    same_carrier("module comonoid", module.dim(), coalgebra.dim())?;
    let (dh, dm) = (h.dim(), module.dim());
    let nu = module.action();
    let (dl_h, dl_m) = (h.coalgebra.comult(), coalgebra.comult());
    let rhs = permute(&dl_h.kron(dl_m), &[dh, dh, dm, dm], &[0, 2, 1, 3]).kron_apply(
        Some(nu),
        Some(nu),
        dh * dm,
        dh * dm,
    );
    commutes("module comonoid: δ_M ∘ ν", &dl_m.mul(nu), &rhs, &[dh, dm])?;
    let (e_h, e_m) = (h.coalgebra.counit(), coalgebra.counit());
    commutes("module comonoid: ε_M ∘ ν", &e_m.mul(nu), &e_h.kron(e_m), &[dh, dm])?;
    Ok(ModuleComonoid { h, module, coalgebra })
}

/// An algebra with a left coaction of a bimonoid that is an algebra map.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComoduleMonoid {
    h: Bimonoid,
    algebra: Algebra,
    comodule: Comodule,
}

impl ComoduleMonoid {
    pub fn new(h: Bimonoid, algebra: Algebra, comodule: Comodule) -> Result<ComoduleMonoid, HopfError> {
        check_comodule_monoid(h, algebra, comodule)
    }

    /// `H` coacting on itself by `Δ`.
    pub fn regular(h: &Bimonoid) -> ComoduleMonoid {
        check_comodule_monoid(h.clone(), h.algebra.clone(), Comodule::regular(&h.coalgebra))
            .expect("regular comodule monoid")
    }

    pub fn bimonoid(&self) -> &Bimonoid {
        &self.h
    }

    pub fn algebra(&self) -> &Algebra {
        &self.algebra
    }

    pub fn comodule(&self) -> &Comodule {
        &self.comodule
    }
}

pub fn check_comodule_monoid(h: Bimonoid, algebra: Algebra, comodule: Comodule) -> Result<ComoduleMonoid, HopfError> {
    if comodule.over() != &h.coalgebra {
        return Err(HopfError::BaseMismatch("comodule is not over the coalgebra of the bimonoid".into()));
    }
    same_field(algebra.field(), comodule.field())?;
    same_carrier("comodule monoid", algebra.dim(), comodule.dim())?;
    let (dh, ds) = (h.dim(), algebra.dim());
    let chi = comodule.coaction();
    let rhs = permute(&chi.kron(chi), &[dh, ds, dh, ds], &[0, 2, 1, 3]).kron_apply(
        Some(h.algebra.mult()),
        Some(algebra.mult()),
        dh * dh,
        ds * ds,
    );
    commutes("comodule monoid: χ_S ∘ μ_S", &chi.mul(algebra.mult()), &rhs, &[ds, ds])?;
    commutes(
        "comodule monoid: χ_S ∘ ι_S",
        &chi.mul(algebra.unit()),
        &h.algebra.unit().kron(algebra.unit()),
        &[],
    )?;
    Ok(ComoduleMonoid { h, algebra, comodule })
}

/// A module over a comodule monoid `S` and a comodule over a module comonoid
/// `M`, both over the same bimonoid, whose coaction is a module map over
/// `χ_S`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HopfModule {
    s: ComoduleMonoid,
    m: ModuleComonoid,
    action: Module,
    coaction: Comodule,
}

impl HopfModule {
    pub fn new(s: ComoduleMonoid, m: ModuleComonoid, action: Module, coaction: Comodule) -> Result<HopfModule, HopfError> {
        check_hopf_module(s, m, action, coaction)
    }

    /// `H` over `S = M = H` with multiplication and comultiplication.
    pub fn regular(h: &Bimonoid) -> HopfModule {
        check_hopf_module(
            ComoduleMonoid::regular(h),
            ModuleComonoid::regular(h),
            Module::regular(&h.algebra),
            Comodule::regular(&h.coalgebra),
        )
        .expect("regular Hopf module")
    }

    pub fn comodule_monoid(&self) -> &ComoduleMonoid {
        &self.s
    }

    pub fn module_comonoid(&self) -> &ModuleComonoid {
        &self.m
    }

    pub fn bimonoid(&self) -> &Bimonoid {
        &self.s.h
    }

    /// `ν_N: S ⊗ N → N`.
    pub fn action(&self) -> &Module {
        &self.action
    }

    /// `χ_N: N → M ⊗ N`.
    pub fn coaction(&self) -> &Comodule {
        &self.coaction
    }

    pub fn dim(&self) -> usize {
        self.action.dim()
    }
}

pub fn check_hopf_module(
    s: ComoduleMonoid,
    m: ModuleComonoid,
    action: Module,
    coaction: Comodule,
) -> Result<HopfModule, HopfError> {
    if s.h != m.h {
        return Err(HopfError::BaseMismatch("comodule monoid and module comonoid over different bimonoids".into()));
    }
    if action.over() != &s.algebra {
        return Err(HopfError::BaseMismatch("action is not over the comodule monoid".into()));
    }
    if coaction.over() != &m.coalgebra {
        return Err(HopfError::BaseMismatch("coaction is not over the module comonoid".into()));
    }
    same_carrier("Hopf module", action.dim(), coaction.dim())?;
    let (dh, ds, dm, dn) = (s.h.dim(), s.algebra.dim(), m.module.dim(), action.dim());
    let (nu_n, chi_n) = (action.action(), coaction.coaction());
    let rhs = permute(&s.comodule.coaction().kron(chi_n), &[dh, ds, dm, dn], &[0, 2, 1, 3]).kron_apply(
        Some(m.module.action()),
        Some(nu_n),
        dh * dm,
        ds * dn,
    );
    commutes("Hopf module: χ_N ∘ ν_N", &chi_n.mul(nu_n), &rhs, &[ds, dn])?;
    Ok(HopfModule { s, m, action, coaction })
}

/// A module over a commutative algebra `A` with an algebra structure on its
/// carrier whose multiplication is a module map over `μ_A`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleMonoid {
    module: Module,
    monoid: Algebra,
}

impl ModuleMonoid {
    pub fn new(module: Module, monoid: Algebra) -> Result<ModuleMonoid, HopfError> {
        check_module_monoid(module, monoid)
    }

    /// A commutative algebra as a module monoid over itself.
    pub fn regular(a: &Algebra) -> Result<ModuleMonoid, HopfError> {
        check_module_monoid(Module::regular(a), a.clone())
    }

    pub fn ground(field: Field) -> ModuleMonoid {
        ModuleMonoid::regular(&ground_algebra(field)).expect("ground module monoid")
    }

    pub fn algebra(&self) -> &Algebra {
        self.module.over()
    }

    pub fn module(&self) -> &Module {
        &self.module
    }

    pub fn monoid(&self) -> &Algebra {
        &self.monoid
    }
}

pub fn check_module_monoid(module: Module, monoid: Algebra) -> Result<ModuleMonoid, HopfError> {
    same_field(module.field(), monoid.field())?;
    same_carrier("module monoid", module.dim(), monoid.dim())?;
    let a = module.over();
    let f = a.field();
    let (da, dn) = (a.dim(), module.dim());
    let m_a = a.mult();
    commutes("module monoid: A commutative", m_a, &m_a.mul(&swap_matrix(f, da, da)), &[da, da])?;
    let nu = module.action();
    let lhs = nu.mul(&m_a.kron(monoid.mult()));
    let rhs = middle_swap(f, [da, da, dn, dn]).kron_apply(Some(nu), Some(nu), da * dn, da * dn);
    let rhs = monoid.mult().mul(&rhs);
    commutes("module monoid: ν ∘ (μ_A ⊗ μ_N)", &lhs, &rhs, &[da, da, dn, dn])?;
    Ok(ModuleMonoid { module, monoid })
}
