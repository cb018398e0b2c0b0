use std::collections::HashSet;

use crate::algcore::{is_coalgebra_morphism, Algebra, Coalgebra, CoalgebraMorphism};
use crate::exactlin::{count_matrices, matrix_at, Mat};
use crate::modcomod::{Comodule, GlobalComodMorphism};

use super::comodule::{comodule_couniversal_factor, verify_module_measuring, ModuleMeasuringMap, TruncatedMeasuringComodule};
use super::comonoid::{couniversal_factor, TruncatedMeasuringComonoid};
use super::map::{verify_measuring, MeasuringMap};
use super::points::{enumerate_indices, Budget};
use super::MeasError;

/// Both sides of the bijection between measurings `C → Hom(A, B)` and
/// coalgebra maps `C → P_n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CensusReport {
    pub measurings: usize,
    pub coalgebra_maps: usize,
    /// Distinct measurings factor through distinct coalgebra maps.
    pub injective: bool,
    /// Every coalgebra map `g` satisfies `couniversal_factor(proj ∘ g) = g`.
    pub round_trips: bool,
}

impl CensusReport {
    pub fn bijective(&self) -> bool {
        self.measurings == self.coalgebra_maps && self.injective && self.round_trips
    }
}

/// Measurings `C → Hom(A, B)` by exhaustive enumeration over `𝔽_p`.
pub fn enumerate_measurings(
    c: &Coalgebra,
    a: &Algebra,
    b: &Algebra,
    budget: Budget,
) -> Result<Vec<MeasuringMap>, MeasError> {
    let f = a.field();
    let rows = a.dim() * b.dim();
    let count = budget.admit(count_matrices(f, rows, c.dim()))?;
    let found = enumerate_indices(count, |idx| {
        let m = MeasuringMap {
            c: c.clone(),
            a: a.clone(),
            b: b.clone(),
            psi: matrix_at(f, rows, c.dim(), idx),
        };
        verify_measuring(&m).ok().filter(|ok| *ok).map(|_| m)
    });
    Ok(found)
}

/// Coalgebra maps `C → D` by exhaustive enumeration over `𝔽_p`.
pub fn enumerate_coalgebra_maps(
    c: &Coalgebra,
    d: &Coalgebra,
    budget: Budget,
) -> Result<Vec<CoalgebraMorphism>, MeasError> {
    let f = c.field();
    let count = budget.admit(count_matrices(f, d.dim(), c.dim()))?;
    let found = enumerate_indices(count, |idx| {
        let g = matrix_at(f, d.dim(), c.dim(), idx);
        is_coalgebra_morphism(c, d, &g).ok().filter(|ok| *ok).map(|_| g)
    });
    found
        .into_iter()
        .map(|g| Ok(CoalgebraMorphism::new(c.clone(), d.clone(), g)?))
        .collect()
}

pub fn adjunction_bijection_census(
    p: &TruncatedMeasuringComonoid,
    c: &Coalgebra,
    budget: Budget,
) -> Result<CensusReport, MeasError> {
    let measurings = enumerate_measurings(c, &p.a, &p.b, budget)?;
    let mut images: HashSet<Mat> = HashSet::new();
    let mut injective = true;
    for m in &measurings {
        let h = couniversal_factor(p, m)?;
        if !images.insert(h.matrix().clone()) {
            injective = false;
        }
    }
    let maps = enumerate_coalgebra_maps(c, &p.p_n, budget)?;
    let mut round_trips = true;
    for g in &maps {
        let psi = MeasuringMap::new(c.clone(), p.a.clone(), p.b.clone(), p.proj.mul(g.matrix()))?;
        match couniversal_factor(p, &psi) {
            Ok(h) if h.matrix() == g.matrix() => {}
            _ => round_trips = false,
        }
    }
    Ok(CensusReport {
        measurings: measurings.len(),
        coalgebra_maps: maps.len(),
        injective,
        round_trips,
    })
}

/// Both sides of the bijection between module-measurings out of `X` and
/// global comodule morphisms `X → Q_n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComoduleCensusReport {
    pub module_measurings: usize,
    pub comodule_morphisms: usize,
    pub injective: bool,
}

impl ComoduleCensusReport {
    pub fn bijective(&self) -> bool {
        self.module_measurings == self.comodule_morphisms && self.injective
    }
}

pub fn comodule_census(
    x: &Comodule,
    q: &TruncatedMeasuringComodule,
    budget: Budget,
) -> Result<ComoduleCensusReport, MeasError> {
    let p = &q.p;
    let f = p.field();
    let c = x.over();
    let du = q.m.dim() * q.n.dim();
    let rho_count = budget.admit(count_matrices(f, du, x.dim()))?;
    let mut module_measurings = 0;
    let mut images: HashSet<(Mat, Mat)> = HashSet::new();
    let mut injective = true;
    for psi in enumerate_measurings(c, &p.a, &p.b, budget)? {
        let found = enumerate_indices(rho_count, |idx| {
            let r = ModuleMeasuringMap {
                underlying: psi.clone(),
                x: x.clone(),
                m: q.m.clone(),
                n: q.n.clone(),
                rho: matrix_at(f, du, x.dim(), idx),
            };
            verify_module_measuring(&r).ok().filter(|ok| *ok).map(|_| r)
        });
        for r in found {
            module_measurings += 1;
            let k = comodule_couniversal_factor(q, &r)?;
            if !images.insert((k.g.matrix().clone(), k.k)) {
                injective = false;
            }
        }
    }
    let k_count = budget.admit(count_matrices(f, q.q_n.dim(), x.dim()))?;
    let mut comodule_morphisms = 0;
    for g in enumerate_coalgebra_maps(c, &p.p_n, budget)? {
        comodule_morphisms += enumerate_indices(k_count, |idx| {
            let mor = GlobalComodMorphism {
                g: g.clone(),
                source: x.clone(),
                target: q.q_n.clone(),
                k: matrix_at(f, q.q_n.dim(), x.dim(), idx),
            };
            mor.check().ok().filter(|ok| *ok)
        })
        .len();
    }
    Ok(ComoduleCensusReport {
        module_measurings,
        comodule_morphisms,
        injective,
    })
}
