use crate::algcore::{AlgebraMorphism, CoalgebraMorphism};
use crate::exactlin::Mat;

use super::{corestrict, restrict, Comodule, ModError, Module};

/// A morphism `p_f: M_A → N_B` in the global category of modules.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GlobalModMorphism {
    pub f: AlgebraMorphism,
    pub source: Module,
    pub target: Module,
    pub p: Mat,
}

/// A morphism `k_g: X_C → Y_D` in the global category of comodules.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GlobalComodMorphism {
    pub g: CoalgebraMorphism,
    pub source: Comodule,
    pub target: Comodule,
    pub k: Mat,
}

impl GlobalModMorphism {
    /// `p ∘ μ_M = μ_N ∘ (f ⊗ p)`.
    pub fn check(&self) -> Result<bool, ModError> {
        let (m, n, f) = (&self.source, &self.target, &self.f);
        if f.source() != m.over() || f.target() != n.over() {
            return Err(ModError::BaseMismatch);
        }
        if self.p.shape() != (n.dim(), m.dim()) {
            return Err(ModError::DimMismatch(format!(
                "carrier map is {}x{}, expected {}x{}",
                self.p.rows(),
                self.p.cols(),
                n.dim(),
                m.dim()
            )));
        }
        let lhs = self.p.mul(m.action());
        let rhs = n
            .action()
            .kron_precompose(Some(f.matrix()), Some(&self.p), n.over().dim(), n.dim());
        Ok(lhs == rhs)
    }

    pub fn identity(m: &Module) -> GlobalModMorphism {
        GlobalModMorphism {
            f: AlgebraMorphism::identity(m.over()),
            source: m.clone(),
            target: m.clone(),
            p: Mat::identity(m.field(), m.dim()),
        }
    }

    /// The chosen cartesian lifting `Cart(f, N): f*N → N`, identity on carriers.
    pub fn cartesian(f: &AlgebraMorphism, n: &Module) -> Result<GlobalModMorphism, ModError> {
        Ok(GlobalModMorphism {
            f: f.clone(),
            source: restrict(f, n)?,
            target: n.clone(),
            p: Mat::identity(n.field(), n.dim()),
        })
    }

    pub fn is_vertical(&self) -> bool {
        self.f.source() == self.f.target() && self.f.matrix().is_identity()
    }

    /// `self ∘ first`
    pub fn after(&self, first: &GlobalModMorphism) -> Result<GlobalModMorphism, ModError> {
        if first.target != self.source {
            return Err(ModError::BaseMismatch);
        }
        Ok(GlobalModMorphism {
            f: self.f.after(&first.f)?,
            source: first.source.clone(),
            target: self.target.clone(),
            p: self.p.mul(&first.p),
        })
    }
}

impl GlobalComodMorphism {
    /// `(g ⊗ k) ∘ δ_X = δ_Y ∘ k`.
    pub fn check(&self) -> Result<bool, ModError> {
        let (x, y, g) = (&self.source, &self.target, &self.g);
        if g.source() != x.over() || g.target() != y.over() {
            return Err(ModError::BaseMismatch);
        }
        if self.k.shape() != (y.dim(), x.dim()) {
            return Err(ModError::DimMismatch(format!(
                "carrier map is {}x{}, expected {}x{}",
                self.k.rows(),
                self.k.cols(),
                y.dim(),
                x.dim()
            )));
        }
        let lhs = x
            .coaction()
            .kron_apply(Some(g.matrix()), Some(&self.k), x.over().dim(), x.dim());
        Ok(lhs == y.coaction().mul(&self.k))
    }

    pub fn identity(x: &Comodule) -> GlobalComodMorphism {
        GlobalComodMorphism {
            g: CoalgebraMorphism::identity(x.over()),
            source: x.clone(),
            target: x.clone(),
            k: Mat::identity(x.field(), x.dim()),
        }
    }

    /// The chosen cocartesian lifting `Cocart(g, X): X → g_!X`.
    pub fn cocartesian(g: &CoalgebraMorphism, x: &Comodule) -> Result<GlobalComodMorphism, ModError> {
        Ok(GlobalComodMorphism {
            g: g.clone(),
            source: x.clone(),
            target: corestrict(g, x)?,
            k: Mat::identity(x.field(), x.dim()),
        })
    }

    pub fn is_vertical(&self) -> bool {
        self.g.source() == self.g.target() && self.g.matrix().is_identity()
    }

    /// `self ∘ first`
    pub fn after(&self, first: &GlobalComodMorphism) -> Result<GlobalComodMorphism, ModError> {
        if first.target != self.source {
            return Err(ModError::BaseMismatch);
        }
        Ok(GlobalComodMorphism {
            g: self.g.after(&first.g)?,
            source: first.source.clone(),
            target: self.target.clone(),
            k: self.k.mul(&first.k),
        })
    }
}

/// `mor = Cart(f, N) ∘ v` with `v: M → f*N` vertical. Returns `(v, Cart(f, N))`.
pub fn factor_global_mod(
    mor: &GlobalModMorphism,
) -> Result<(GlobalModMorphism, GlobalModMorphism), ModError> {
    if !mor.check()? {
        return Err(ModError::NotAMorphism);
    }
    let cart = GlobalModMorphism::cartesian(&mor.f, &mor.target)?;
    // Cart has identity carrier, so the vertical carrier is forced to be p.
    let vertical = GlobalModMorphism {
        f: AlgebraMorphism::identity(mor.source.over()),
        source: mor.source.clone(),
        target: cart.source.clone(),
        p: mor.p.clone(),
    };
    if !vertical.check()? || cart.after(&vertical)? != *mor {
        return Err(ModError::NotAMorphism);
    }
    Ok((vertical, cart))
}

/// `mor = v ∘ Cocart(g, X)` with `v: g_!X → Y` vertical. Returns `(v, Cocart(g, X))`.
pub fn factor_global_comod(
    mor: &GlobalComodMorphism,
) -> Result<(GlobalComodMorphism, GlobalComodMorphism), ModError> {
    if !mor.check()? {
        return Err(ModError::NotAMorphism);
    }
    let cocart = GlobalComodMorphism::cocartesian(&mor.g, &mor.source)?;
    let vertical = GlobalComodMorphism {
        g: CoalgebraMorphism::identity(mor.target.over()),
        source: cocart.target.clone(),
        target: mor.target.clone(),
        k: mor.k.clone(),
    };
    if !vertical.check()? || vertical.after(&cocart)? != *mor {
        return Err(ModError::NotAMorphism);
    }
    Ok((vertical, cocart))
}
