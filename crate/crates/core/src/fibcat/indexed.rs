use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::category::{is_cartesian, is_cocartesian, toggle_op, FiniteCategory, FiniteFunctor, DEFAULT_MORPHISM_CAP};
use super::FibError;

/// Contravariant indexed categories give fibrations (reindexing `f*`),
/// covariant ones give opfibrations (pushforward `f_!`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Variance {
    Contravariant,
    Covariant,
}

impl Variance {
    pub fn flip(self) -> Variance {
        match self {
            Variance::Contravariant => Variance::Covariant,
            Variance::Covariant => Variance::Contravariant,
        }
    }
}

/// A split indexed category over a finite base.
///
/// For `f: X → Y` the functor `reindex(f)` is `f*: fibre(Y) → fibre(X)` in the
/// contravariant case and `f_!: fibre(X) → fibre(Y)` in the covariant case.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IndexedCategory {
    name: String,
    base: FiniteCategory,
    variance: Variance,
    fibres: Vec<FiniteCategory>,
    reindex: Vec<FiniteFunctor>,
}

impl IndexedCategory {
    pub fn new(
        name: &str,
        base: FiniteCategory,
        variance: Variance,
        fibres: Vec<FiniteCategory>,
        reindex: Vec<FiniteFunctor>,
    ) -> Result<IndexedCategory, FibError> {
        let bad = |msg: String| FibError::NotSplit(format!("{name}: {msg}"));
        if fibres.len() != base.object_count() || reindex.len() != base.morphism_count() {
            return Err(bad("need one fibre per object and one functor per morphism".into()));
        }
        for (f, r) in reindex.iter().enumerate() {
            let (x, y) = (base.src(f), base.tgt(f));
            let (from, to) = match variance {
                Variance::Contravariant => (y, x),
                Variance::Covariant => (x, y),
            };
            if *r.source() != fibres[from] || *r.target() != fibres[to] {
                return Err(bad(format!("reindexing along {} has the wrong fibres", base.morphism_names()[f])));
            }
        }
        for x in 0..base.object_count() {
            if !reindex[base.id(x)].is_identity() {
                return Err(bad(format!("reindexing along the identity of {} is not the identity", base.objects()[x])));
            }
        }
        for g in 0..base.morphism_count() {
            for f in base.incoming(base.src(g)) {
                let gf = base.compose(g, f).expect("composable");
                let composite = match variance {
                    Variance::Contravariant => reindex[f].after(&reindex[g])?,
                    Variance::Covariant => reindex[g].after(&reindex[f])?,
                };
                if composite != reindex[gf] {
                    return Err(bad(format!(
                        "reindexing along {} is not the composite",
                        base.morphism_names()[gf]
                    )));
                }
            }
        }
        Ok(IndexedCategory { name: name.to_string(), base, variance, fibres, reindex })
    }

    /// The indexed category with every fibre equal to `fibre` and identity
    /// reindexing.
    pub fn constant(name: &str, base: FiniteCategory, variance: Variance, fibre: FiniteCategory) -> IndexedCategory {
        let fibres = vec![fibre.clone(); base.object_count()];
        let reindex = vec![FiniteFunctor::identity(&fibre); base.morphism_count()];
        IndexedCategory::new(name, base, variance, fibres, reindex).expect("constant indexed categories are split")
    }

    /// Formal opposite: opposite base and fibres, variance flipped.
    pub fn dualize(&self) -> IndexedCategory {
        IndexedCategory {
            name: toggle_op(&self.name),
            base: self.base.opposite(),
            variance: self.variance.flip(),
            fibres: self.fibres.iter().map(FiniteCategory::opposite).collect(),
            reindex: self.reindex.iter().map(FiniteFunctor::opposite).collect(),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn base(&self) -> &FiniteCategory {
        &self.base
    }

    pub fn variance(&self) -> Variance {
        self.variance
    }

    pub fn fibre(&self, x: usize) -> &FiniteCategory {
        &self.fibres[x]
    }

    pub fn fibres(&self) -> &[FiniteCategory] {
        &self.fibres
    }

    pub fn reindex(&self, f: usize) -> &FiniteFunctor {
        &self.reindex[f]
    }

    pub fn reindexings(&self) -> &[FiniteFunctor] {
        &self.reindex
    }
}

/// A morphism of a total category: base morphism `f: X → Y`, fibre objects
/// `src` over `X` and `tgt` over `Y`, and the fibre component, which is
/// `src → f*(tgt)` in `fibre(X)` (contravariant) or `f_!(src) → tgt` in
/// `fibre(Y)` (covariant).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct TotalMorphism {
    pub base: usize,
    pub src: usize,
    pub tgt: usize,
    pub fibre: usize,
}

/// The Grothendieck construction of a split indexed category, with its
/// projection and chosen (co)cartesian liftings.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TotalCategory {
    indexed: IndexedCategory,
    category: FiniteCategory,
    projection: FiniteFunctor,
    objects: Vec<(usize, usize)>,
    object_index: Vec<Vec<usize>>,
    morphisms: Vec<TotalMorphism>,
    morphism_index: HashMap<TotalMorphism, usize>,
    lifts: Vec<Vec<usize>>,
}

pub fn grothendieck(ic: &IndexedCategory) -> Result<TotalCategory, FibError> {
    grothendieck_with_cap(ic, DEFAULT_MORPHISM_CAP)
}

pub fn grothendieck_with_cap(ic: &IndexedCategory, cap: usize) -> Result<TotalCategory, FibError> {
    let base = ic.base();
    let mut objects = Vec::new();
    let mut object_index = Vec::new();
    for x in 0..base.object_count() {
        let mut row = Vec::new();
        for a in 0..ic.fibre(x).object_count() {
            row.push(objects.len());
            objects.push((x, a));
        }
        object_index.push(row);
    }
    // Ordered by (base morphism, fibre component, free endpoint) so that the
    // dual indexed category produces the opposite category index for index.
    let mut morphisms = Vec::new();
    for f in 0..base.morphism_count() {
        let (x, y) = (base.src(f), base.tgt(f));
        let r = ic.reindex(f);
        match ic.variance() {
            Variance::Contravariant => {
                let fx = ic.fibre(x);
                for phi in 0..fx.morphism_count() {
                    for b in 0..ic.fibre(y).object_count() {
                        if r.obj(b) == fx.tgt(phi) {
                            morphisms.push(TotalMorphism { base: f, src: fx.src(phi), tgt: b, fibre: phi });
                        }
                    }
                }
            }
            Variance::Covariant => {
                let fy = ic.fibre(y);
                for phi in 0..fy.morphism_count() {
                    for a in 0..ic.fibre(x).object_count() {
                        if r.obj(a) == fy.src(phi) {
                            morphisms.push(TotalMorphism { base: f, src: a, tgt: fy.tgt(phi), fibre: phi });
                        }
                    }
                }
            }
        }
    }
    if morphisms.len() > cap {
        return Err(FibError::TooLarge { morphisms: morphisms.len(), cap });
    }
    let morphism_index: HashMap<TotalMorphism, usize> =
        morphisms.iter().enumerate().map(|(i, m)| (*m, i)).collect();

    let compose = |g: usize, f: usize| -> Option<usize> {
        let (m1, m2) = (morphisms[f], morphisms[g]);
        let gf = base.compose(m2.base, m1.base)?;
        let fibre = match ic.variance() {
            Variance::Contravariant => {
                let fx = ic.fibre(base.src(m1.base));
                fx.compose(ic.reindex(m1.base).mor(m2.fibre), m1.fibre)?
            }
            Variance::Covariant => {
                let fz = ic.fibre(base.tgt(m2.base));
                fz.compose(m2.fibre, ic.reindex(m2.base).mor(m1.fibre))?
            }
        };
        morphism_index
            .get(&TotalMorphism { base: gf, src: m1.src, tgt: m2.tgt, fibre })
            .copied()
    };
    let obj_names = objects
        .iter()
        .map(|&(x, a)| format!("({},{})", ic.fibre(x).objects()[a], base.objects()[x]))
        .collect();
    let mor_specs = morphisms
        .iter()
        .map(|m| {
            let phi_fibre = match ic.variance() {
                Variance::Contravariant => base.src(m.base),
                Variance::Covariant => base.tgt(m.base),
            };
            let label = format!(
                "({},{})",
                ic.fibre(phi_fibre).morphism_names()[m.fibre],
                base.morphism_names()[m.base]
            );
            (label, object_index[base.src(m.base)][m.src], object_index[base.tgt(m.base)][m.tgt])
        })
        .collect();
    let ids = objects
        .iter()
        .map(|&(x, a)| {
            let id = TotalMorphism { base: base.id(x), src: a, tgt: a, fibre: ic.fibre(x).id(a) };
            morphism_index[&id]
        })
        .collect();
    let category = FiniteCategory::new_with_cap(ic.name(), obj_names, mor_specs, ids, compose, cap)?;
    let projection = FiniteFunctor::new(
        category.clone(),
        base.clone(),
        objects.iter().map(|&(x, _)| x).collect(),
        morphisms.iter().map(|m| m.base).collect(),
    )?;
    let mut lifts = Vec::new();
    for f in 0..base.morphism_count() {
        let r = ic.reindex(f);
        let row = match ic.variance() {
            Variance::Contravariant => {
                let fx = ic.fibre(base.src(f));
                (0..ic.fibre(base.tgt(f)).object_count())
                    .map(|b| {
                        let a = r.obj(b);
                        morphism_index[&TotalMorphism { base: f, src: a, tgt: b, fibre: fx.id(a) }]
                    })
                    .collect()
            }
            Variance::Covariant => {
                let fy = ic.fibre(base.tgt(f));
                (0..ic.fibre(base.src(f)).object_count())
                    .map(|a| {
                        let b = r.obj(a);
                        morphism_index[&TotalMorphism { base: f, src: a, tgt: b, fibre: fy.id(b) }]
                    })
                    .collect()
            }
        };
        lifts.push(row);
    }
    let total = TotalCategory {
        indexed: ic.clone(),
        category,
        projection,
        objects,
        object_index,
        morphisms,
        morphism_index,
        lifts,
    };
    for row in &total.lifts {
        for &m in row {
            if !total.is_universal(m) {
                return Err(FibError::LiftingNotUniversal(m));
            }
        }
    }
    Ok(total)
}

/// A morphism of a total category split as a vertical part and a chosen
/// lifting: `lifting ∘ vertical` for fibrations, `vertical ∘ lifting` for
/// opfibrations.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub vertical: usize,
    pub lifting: usize,
}

impl TotalCategory {
    pub fn indexed(&self) -> &IndexedCategory {
        &self.indexed
    }

    pub fn category(&self) -> &FiniteCategory {
        &self.category
    }

    pub fn projection(&self) -> &FiniteFunctor {
        &self.projection
    }

    pub fn variance(&self) -> Variance {
        self.indexed.variance()
    }

    pub fn base(&self) -> &FiniteCategory {
        self.indexed.base()
    }

    pub fn fibre(&self, x: usize) -> &FiniteCategory {
        self.indexed.fibre(x)
    }

    /// The total object `(a, x)`.
    pub fn object(&self, x: usize, a: usize) -> usize {
        self.object_index[x][a]
    }

    /// `(x, a)` for a total object.
    pub fn decode_object(&self, o: usize) -> (usize, usize) {
        self.objects[o]
    }

    pub fn decode(&self, m: usize) -> TotalMorphism {
        self.morphisms[m]
    }

    pub fn find(&self, m: &TotalMorphism) -> Option<usize> {
        self.morphism_index.get(m).copied()
    }

    /// The vertical morphism over `id_x` with fibre component `phi`.
    pub fn vertical(&self, x: usize, phi: usize) -> usize {
        let f = self.fibre(x);
        self.morphism_index[&TotalMorphism {
            base: self.base().id(x),
            src: f.src(phi),
            tgt: f.tgt(phi),
            fibre: phi,
        }]
    }

    pub fn is_vertical(&self, m: usize) -> bool {
        self.base().is_identity(self.morphisms[m].base)
    }

    /// The chosen lifting along `f`: `Cart(f, a)` with `a` over the target of
    /// `f`, or `Cocart(f, a)` with `a` over its source.
    pub fn lift(&self, f: usize, a: usize) -> usize {
        self.lifts[f][a]
    }

    /// Whether `m` is cartesian (fibrations) or cocartesian (opfibrations)
    /// for the projection.
    pub fn is_universal(&self, m: usize) -> bool {
        match self.variance() {
            Variance::Contravariant => is_cartesian(&self.projection, m),
            Variance::Covariant => is_cocartesian(&self.projection, m),
        }
    }

    /// The formal opposite, a total category of the opposite variance whose
    /// underlying category is `category().opposite()` index for index.
    pub fn dualize(&self) -> TotalCategory {
        grothendieck_with_cap(&self.indexed.dualize(), usize::MAX).expect("duals of total categories are total")
    }

    /// Rebuilds the indexed category from the total category alone: fibres
    /// from vertical morphisms, reindexing from the chosen liftings by
    /// factorization. Names are taken from the stored indexed category.
    pub fn extract_indexed(&self) -> Result<IndexedCategory, FibError> {
        let c = &self.category;
        let base = self.projection.target().clone();
        let mut fibres = Vec::new();
        let mut vert: Vec<Vec<usize>> = Vec::new();
        let mut slot = vec![usize::MAX; c.morphism_count()];
        for x in 0..base.object_count() {
            let objs: Vec<usize> = (0..c.object_count()).filter(|&o| self.projection.obj(o) == x).collect();
            let mut local = vec![usize::MAX; c.object_count()];
            for (i, &o) in objs.iter().enumerate() {
                local[o] = i;
            }
            let mors: Vec<usize> = (0..c.morphism_count()).filter(|&m| self.projection.mor(m) == base.id(x)).collect();
            for (i, &m) in mors.iter().enumerate() {
                slot[m] = i;
            }
            let named = self.indexed.fibre(x);
            let fibre = FiniteCategory::new_with_cap(
                named.name(),
                named.objects().to_vec(),
                mors.iter()
                    .enumerate()
                    .map(|(i, &m)| (named.morphism_names()[i].clone(), local[c.src(m)], local[c.tgt(m)]))
                    .collect(),
                objs.iter().map(|&o| slot[c.id(o)]).collect(),
                |g, f| c.compose(mors[g], mors[f]).map(|h| slot[h]),
                usize::MAX,
            )?;
            fibres.push(fibre);
            vert.push(mors);
        }
        let local_obj = |o: usize| self.objects[o].1;
        let mut reindex = Vec::new();
        for f in 0..base.morphism_count() {
            let (x, y) = (base.src(f), base.tgt(f));
            let (from, to) = match self.variance() {
                Variance::Contravariant => (y, x),
                Variance::Covariant => (x, y),
            };
            let nfrom = fibres[from].object_count();
            let lift = |a: usize| self.lifts[f][a];
            let obj: Vec<usize> = (0..nfrom)
                .map(|a| match self.variance() {
                    Variance::Contravariant => local_obj(c.src(lift(a))),
                    Variance::Covariant => local_obj(c.tgt(lift(a))),
                })
                .collect();
            let mut mor = Vec::new();
            for &phi in &vert[from] {
                let (a, b) = (local_obj(c.src(phi)), local_obj(c.tgt(phi)));
                let (la, lb) = (lift(a), lift(b));
                let found: Vec<usize> = vert[to]
                    .iter()
                    .copied()
                    .filter(|&v| match self.variance() {
                        Variance::Contravariant => c.compose(lb, v) == c.compose(phi, la),
                        Variance::Covariant => c.compose(v, la) == c.compose(lb, phi),
                    })
                    .collect();
                if found.len() != 1 {
                    return Err(FibError::FactorizationNotUnique(phi));
                }
                mor.push(slot[found[0]]);
            }
            reindex.push(FiniteFunctor::new(fibres[from].clone(), fibres[to].clone(), obj, mor)?);
        }
        IndexedCategory::new(self.indexed.name(), base, self.variance(), fibres, reindex)
    }
}

/// The unique factorization of `m` through the chosen lifting, with
/// uniqueness checked against every vertical candidate.
pub fn factorize(t: &TotalCategory, m: usize) -> Result<Factorization, FibError> {
    let c = t.category();
    let d = t.decode(m);
    let base = t.base();
    let (lifting, vertical) = match t.variance() {
        Variance::Contravariant => (t.lift(d.base, d.tgt), t.vertical(base.src(d.base), d.fibre)),
        Variance::Covariant => (t.lift(d.base, d.src), t.vertical(base.tgt(d.base), d.fibre)),
    };
    let candidates: Vec<usize> = match t.variance() {
        Variance::Contravariant => c
            .hom(c.src(m), c.src(lifting))
            .iter()
            .copied()
            .filter(|&v| t.is_vertical(v) && c.compose(lifting, v) == Some(m))
            .collect(),
        Variance::Covariant => c
            .hom(c.tgt(lifting), c.tgt(m))
            .iter()
            .copied()
            .filter(|&v| t.is_vertical(v) && c.compose(v, lifting) == Some(m))
            .collect(),
    };
    if candidates != [vertical] {
        return Err(FibError::FactorizationNotUnique(m));
    }
    Ok(Factorization { vertical, lifting })
}
