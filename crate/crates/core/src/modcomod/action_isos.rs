use crate::algcore::standard::ground_coalgebra;
use crate::algcore::{convolution_algebra, hom_map, tensor_coalgebras, AlgebraMorphism};
use crate::exactlin::Mat;

use super::{hom_module, tensor_comodules, Comodule, GlobalModMorphism, ModError, Module};

/// Outcome of the action-isomorphism checks; one named line per identity.
#[derive(Clone, Debug, Default)]
pub struct ActionIsoReport {
    pub checks: Vec<(String, bool)>,
}

impl ActionIsoReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|(_, ok)| *ok)
    }

    pub fn failures(&self) -> Vec<&str> {
        self.checks
            .iter()
            .filter(|(_, ok)| !ok)
            .map(|(n, _)| n.as_str())
            .collect()
    }

    fn push(&mut self, name: impl Into<String>, ok: bool) {
        self.checks.push((name.into(), ok));
    }
}

fn is_iso(m: &GlobalModMorphism) -> Result<bool, ModError> {
    Ok(m.check()? && m.p.is_invertible() && m.f.matrix().is_invertible())
}

/// `[X ⊗ Y, M] → [X, [Y, M]]` over `[C ⊗ D, A] → [C, [D, A]]`.
///
/// Under the fixed index conventions both carriers coincide, so the maps
/// are identity matrices; they are still validated as a module morphism over
/// an algebra morphism.
pub fn currying_iso(x: &Comodule, y: &Comodule, m: &Module) -> Result<GlobalModMorphism, ModError> {
    let source = hom_module(&tensor_comodules(x, y)?, m)?;
    let target = hom_module(x, &hom_module(y, m)?)?;
    let fld = m.field();
    let f = AlgebraMorphism::new(
        source.over().clone(),
        target.over().clone(),
        Mat::identity(fld, source.over().dim()),
    )?;
    let p = Mat::identity(fld, source.dim());
    Ok(GlobalModMorphism {
        f,
        source,
        target,
        p,
    })
}

/// `[I, M] → M` over `[k, A] → A`, where `I` is the trivial comodule.
pub fn unit_iso(m: &Module) -> Result<GlobalModMorphism, ModError> {
    let fld = m.field();
    let unit = Comodule::regular(&ground_coalgebra(fld)).with_name("I");
    let source = hom_module(&unit, m)?;
    let f = AlgebraMorphism::new(
        source.over().clone(),
        m.over().clone(),
        Mat::identity(fld, m.over().dim()),
    )?;
    Ok(GlobalModMorphism {
        f,
        source,
        target: m.clone(),
        p: Mat::identity(fld, m.dim()),
    })
}

/// `[X, φ]` for a global module morphism `φ: M_A → N_B`.
pub fn hom_functor_map(x: &Comodule, phi: &GlobalModMorphism) -> Result<GlobalModMorphism, ModError> {
    let fld = x.field();
    let source = hom_module(x, &phi.source)?;
    let target = hom_module(x, &phi.target)?;
    let idc = Mat::identity(fld, x.over().dim());
    let idx = Mat::identity(fld, x.dim());
    let f = AlgebraMorphism::new(
        source.over().clone(),
        target.over().clone(),
        hom_map(&idc, phi.f.matrix()),
    )?;
    Ok(GlobalModMorphism {
        f,
        source,
        target,
        p: hom_map(&idx, &phi.p),
    })
}

/// Global morphism `[X, M] → [X', M]` induced by an isomorphism of comodules
/// `X' → X` over an isomorphism of coalgebras, both given by identity matrices
/// (used for the associator and unitor, which are identities on indices).
fn reindex_identity(from: &Comodule, to: &Comodule, m: &Module) -> Result<GlobalModMorphism, ModError> {
    let fld = m.field();
    let source = hom_module(from, m)?;
    let target = hom_module(to, m)?;
    if source.dim() != target.dim() {
        return Err(ModError::DimMismatch("reindexing between different carriers".into()));
    }
    let f = AlgebraMorphism::new(
        source.over().clone(),
        target.over().clone(),
        Mat::identity(fld, source.over().dim()),
    )?;
    let p = Mat::identity(fld, source.dim());
    Ok(GlobalModMorphism {
        f,
        source,
        target,
        p,
    })
}

fn same_map(a: &GlobalModMorphism, b: &GlobalModMorphism) -> bool {
    a.p == b.p && a.f.matrix() == b.f.matrix() && a.source == b.source && a.target == b.target
}

/// Checks the currying and unit isomorphisms for `(X, Y, M)`; with `z`
/// supplied, also the associativity and unit coherence of the pasting.
pub fn verify_action_isos(
    x: &Comodule,
    y: &Comodule,
    m: &Module,
    z: Option<&Comodule>,
) -> Result<ActionIsoReport, ModError> {
    let mut report = ActionIsoReport::default();
    let cur = currying_iso(x, y, m)?;
    report.push("currying [X⊗Y,M] ≅ [X,[Y,M]] is a module isomorphism", is_iso(&cur)?);
    // The algebra side must agree with the convolution of the tensor coalgebra.
    let conv = convolution_algebra(&tensor_coalgebras(x.over(), y.over())?, m.over())?;
    report.push("currying covers [C⊗D,A] ≅ [C,[D,A]]", cur.f.source() == &conv);
    let un = unit_iso(m)?;
    report.push("unit [I,M] ≅ M is a module isomorphism", is_iso(&un)?);

    if let Some(z) = z {
        // [(X⊗Y)⊗Z, M] → [X⊗Y, [Z,M]] → [X, [Y, [Z,M]]]
        let zm = hom_module(z, m)?;
        let xy = tensor_comodules(x, y)?;
        let a1 = currying_iso(&xy, z, m)?;
        let a2 = currying_iso(x, y, &zm)?;
        let left = a2.after(&a1)?;
        // [(X⊗Y)⊗Z, M] → [X⊗(Y⊗Z), M] → [X, [Y⊗Z, M]] → [X, [Y, [Z,M]]]
        let yz = tensor_comodules(y, z)?;
        let assoc = reindex_identity(&tensor_comodules(&xy, z)?, &tensor_comodules(x, &yz)?, m)?;
        let b1 = currying_iso(x, &yz, m)?;
        let b2 = hom_functor_map(x, &currying_iso(y, z, m)?)?;
        let right = b2.after(&b1)?.after(&assoc)?;
        let ok = [&a1, &a2, &assoc, &b1, &b2]
            .iter()
            .map(|g| is_iso(g))
            .collect::<Result<Vec<_>, _>>()?
            .into_iter()
            .all(|b| b);
        report.push("associativity pasting commutes", ok && same_map(&left, &right));

        // [X⊗I, M] → [X, [I, M]] → [X, M] equals the unitor [X⊗I, M] ≅ [X, M]
        let unit = Comodule::regular(&ground_coalgebra(m.field())).with_name("I");
        let xi = tensor_comodules(x, &unit)?;
        let t1 = currying_iso(x, &unit, m)?;
        let t2 = hom_functor_map(x, &unit_iso(m)?)?;
        let unitor = reindex_identity(&xi, x, m)?;
        let composite = t2.after(&t1)?;
        report.push(
            "unit triangle commutes",
            is_iso(&t1)? && is_iso(&t2)? && is_iso(&unitor)? && same_map(&composite, &unitor),
        );
    }
    Ok(report)
}
