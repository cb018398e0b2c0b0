use serde::{Deserialize, Serialize};

use super::adjoint::{
    check_cat2_adjunction, check_omega_invertible, cocartesian_check, converse_holds, fibrewise_composite,
    synthesize_adjoint, Synthesis,
};
use super::category::{toggle_op, FiniteAdjunction, FiniteCategory, FiniteFunctor};
use super::cell::FibredCell;
use super::indexed::{factorize, grothendieck_with_cap, IndexedCategory, TotalCategory, Variance};
use super::FibError;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MorphismSpec {
    pub name: String,
    pub src: usize,
    pub tgt: usize,
}

/// A category as object and morphism lists with the composites of all
/// non-identity pairs as `[g, f, g∘f]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CategorySpec {
    pub name: String,
    pub objects: Vec<String>,
    pub morphisms: Vec<MorphismSpec>,
    pub identities: Vec<usize>,
    pub compose: Vec<[usize; 3]>,
}

impl CategorySpec {
    pub fn of(c: &FiniteCategory) -> CategorySpec {
        CategorySpec {
            name: c.name().to_string(),
            objects: c.objects().to_vec(),
            morphisms: (0..c.morphism_count())
                .map(|m| MorphismSpec { name: c.morphism_names()[m].clone(), src: c.src(m), tgt: c.tgt(m) })
                .collect(),
            identities: (0..c.object_count()).map(|x| c.id(x)).collect(),
            compose: c.composition_table(),
        }
    }

    pub fn build(&self, cap: usize) -> Result<FiniteCategory, FibError> {
        FiniteCategory::from_table(
            &self.name,
            self.objects.clone(),
            self.morphisms.iter().map(|m| (m.name.clone(), m.src, m.tgt)).collect(),
            self.identities.clone(),
            &self.compose,
            cap,
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FunctorSpec {
    pub objects: Vec<usize>,
    pub morphisms: Vec<usize>,
}

impl FunctorSpec {
    pub fn of(f: &FiniteFunctor) -> FunctorSpec {
        FunctorSpec { objects: f.object_table().to_vec(), morphisms: f.morphism_table().to_vec() }
    }

    pub fn build(&self, source: &FiniteCategory, target: &FiniteCategory) -> Result<FiniteFunctor, FibError> {
        FiniteFunctor::new(source.clone(), target.clone(), self.objects.clone(), self.morphisms.clone())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IndexedSpec {
    pub name: String,
    pub variance: Variance,
    pub base: CategorySpec,
    pub fibres: Vec<CategorySpec>,
    pub reindex: Vec<FunctorSpec>,
}

impl IndexedSpec {
    pub fn of(ic: &IndexedCategory) -> IndexedSpec {
        IndexedSpec {
            name: ic.name().to_string(),
            variance: ic.variance(),
            base: CategorySpec::of(ic.base()),
            fibres: ic.fibres().iter().map(CategorySpec::of).collect(),
            reindex: ic.reindexings().iter().map(FunctorSpec::of).collect(),
        }
    }

    pub fn build(&self, cap: usize) -> Result<IndexedCategory, FibError> {
        let base = self.base.build(cap)?;
        let fibres: Vec<FiniteCategory> = self.fibres.iter().map(|f| f.build(cap)).collect::<Result<_, _>>()?;
        if fibres.len() != base.object_count() || self.reindex.len() != base.morphism_count() {
            return Err(FibError::NotSplit(format!("{}: fibre or reindexing count mismatch", self.name)));
        }
        let mut reindex = Vec::new();
        for (f, spec) in self.reindex.iter().enumerate() {
            let (x, y) = (base.src(f), base.tgt(f));
            let (from, to) = match self.variance {
                Variance::Contravariant => (y, x),
                Variance::Covariant => (x, y),
            };
            reindex.push(spec.build(&fibres[from], &fibres[to])?);
        }
        IndexedCategory::new(&self.name, base, self.variance, fibres, reindex)
    }
}

/// The supplied side of an adjunction whose other side is computed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AdjointSpec {
    pub functor: FunctorSpec,
    pub unit: Vec<usize>,
    pub counit: Vec<usize>,
}

/// A synthesis problem as JSON: two indexed categories, the total and base
/// functors of the cell, the other base adjoint, and the supplied adjoint of
/// each fibrewise composite (indexed by the objects of the target base).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FibInstanceSpec {
    pub name: String,
    pub source: IndexedSpec,
    pub target: IndexedSpec,
    pub total: FunctorSpec,
    pub base_functor: FunctorSpec,
    pub base_adjoint: AdjointSpec,
    pub fibrewise: Vec<AdjointSpec>,
}

/// A cell with a base adjunction and fibrewise adjunctions: the hypotheses
/// under which an adjoint between the total categories is synthesized.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FibInstance {
    pub name: String,
    pub cell: FibredCell,
    pub base: FiniteAdjunction,
    pub fibrewise: Vec<FiniteAdjunction>,
}

/// Verdicts of every exhaustive check run on an instance.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FibReport {
    pub name: String,
    pub variance: Variance,
    pub morphisms: usize,
    pub factorization_unique: bool,
    pub round_trip: bool,
    pub synthesized: bool,
    pub error: Option<String>,
    pub omega_invertible: bool,
    pub preserves_liftings: bool,
    pub biconditional: bool,
    pub converse: bool,
    pub cat2: bool,
}

impl FibReport {
    pub fn passed(&self) -> bool {
        self.factorization_unique
            && self.round_trip
            && self.synthesized
            && self.biconditional
            && self.converse
            && self.cat2
    }
}

impl FibInstance {
    pub fn new(name: &str, cell: FibredCell, base: FiniteAdjunction, fibrewise: Vec<FiniteAdjunction>) -> FibInstance {
        FibInstance { name: name.to_string(), cell, base, fibrewise }
    }

    pub fn to_spec(&self) -> FibInstanceSpec {
        let (base_functor, other) = match self.cell.variance() {
            Variance::Covariant => (self.base.left(), self.base.right()),
            Variance::Contravariant => (self.base.right(), self.base.left()),
        };
        let fibrewise = self
            .fibrewise
            .iter()
            .map(|adj| {
                let supplied = match self.cell.variance() {
                    Variance::Covariant => adj.right(),
                    Variance::Contravariant => adj.left(),
                };
                AdjointSpec {
                    functor: FunctorSpec::of(supplied),
                    unit: adj.units().to_vec(),
                    counit: adj.counits().to_vec(),
                }
            })
            .collect();
        FibInstanceSpec {
            name: self.name.clone(),
            source: IndexedSpec::of(self.cell.source().indexed()),
            target: IndexedSpec::of(self.cell.target().indexed()),
            total: FunctorSpec::of(self.cell.total()),
            base_functor: FunctorSpec::of(base_functor),
            base_adjoint: AdjointSpec {
                functor: FunctorSpec::of(other),
                unit: self.base.units().to_vec(),
                counit: self.base.counits().to_vec(),
            },
            fibrewise,
        }
    }

    /// Builds and validates an instance; categories larger than `cap`
    /// morphisms are rejected.
    pub fn from_spec(spec: &FibInstanceSpec, cap: usize) -> Result<FibInstance, FibError> {
        let source = grothendieck_with_cap(&spec.source.build(cap)?, cap)?;
        let target = grothendieck_with_cap(&spec.target.build(cap)?, cap)?;
        let total = spec.total.build(source.category(), target.category())?;
        let bf = spec.base_functor.build(source.base(), target.base())?;
        let other = spec.base_adjoint.functor.build(target.base(), source.base())?;
        let (left, right) = match source.variance() {
            Variance::Covariant => (bf.clone(), other),
            Variance::Contravariant => (other, bf.clone()),
        };
        let base = FiniteAdjunction::new(
            left,
            right,
            spec.base_adjoint.unit.clone(),
            spec.base_adjoint.counit.clone(),
        )?;
        let cell = FibredCell::new(source, target, total, bf)?;
        let ny = cell.target().base().object_count();
        if spec.fibrewise.len() != ny {
            return Err(FibError::FibrewiseAdjunctionInvalid(spec.fibrewise.len().min(ny)));
        }
        let mut fibrewise = Vec::new();
        for (y, adj) in spec.fibrewise.iter().enumerate() {
            let bad = |_| FibError::FibrewiseAdjunctionInvalid(y);
            let composite = fibrewise_composite(&cell, &base, y)?;
            let supplied = adj.functor.build(composite.target(), composite.source()).map_err(bad)?;
            let (l, r) = match cell.variance() {
                Variance::Covariant => (composite, supplied),
                Variance::Contravariant => (supplied, composite),
            };
            fibrewise.push(FiniteAdjunction::new(l, r, adj.unit.clone(), adj.counit.clone()).map_err(bad)?);
        }
        Ok(FibInstance { name: spec.name.clone(), cell, base, fibrewise })
    }

    /// Formal opposite: a fibration instance becomes an opfibration instance
    /// and conversely.
    pub fn dualize(&self) -> FibInstance {
        FibInstance {
            name: toggle_op(&self.name),
            cell: self.cell.dualize(),
            base: self.base.opposite(),
            fibrewise: self.fibrewise.iter().map(FiniteAdjunction::opposite).collect(),
        }
    }

    pub fn synthesize(&self) -> Result<Synthesis, FibError> {
        synthesize_adjoint(&self.cell, &self.base, &self.fibrewise)
    }

    /// Runs every check: factorization uniqueness on both totals, the
    /// round trip through fibre extraction, synthesis (bijection and
    /// naturality), the mate/preservation biconditional, the converse
    /// extraction and the `Cat²` conditions.
    pub fn run(&self) -> FibReport {
        let totals = [self.cell.source(), self.cell.target()];
        let factorization_unique = totals.iter().all(|t| all_factor(t));
        let round_trip = totals
            .iter()
            .all(|t| t.extract_indexed().map(|ic| &ic == t.indexed()).unwrap_or(false));
        let morphisms = totals.iter().map(|t| t.category().morphism_count()).sum();
        let mut report = FibReport {
            name: self.name.clone(),
            variance: self.cell.variance(),
            morphisms,
            factorization_unique,
            round_trip,
            synthesized: false,
            error: None,
            omega_invertible: false,
            preserves_liftings: false,
            biconditional: false,
            converse: false,
            cat2: false,
        };
        match self.synthesize() {
            Ok(s) => {
                report.synthesized = true;
                report.omega_invertible = check_omega_invertible(&s);
                report.preserves_liftings = cocartesian_check(&s);
                report.biconditional = report.omega_invertible == report.preserves_liftings;
                report.converse = converse_holds(&s).unwrap_or(false);
                report.cat2 = check_cat2_adjunction(
                    &s.cell,
                    &s.adjoint,
                    &s.base,
                    s.adjunction.units(),
                    s.adjunction.counits(),
                );
            }
            Err(e) => report.error = Some(e.to_string()),
        }
        report
    }
}

fn all_factor(t: &TotalCategory) -> bool {
    (0..t.category().morphism_count()).all(|m| factorize(t, m).is_ok())
}
