use super::category::{FiniteFunctor, NaturalTransformation};
use super::indexed::{factorize, TotalCategory, TotalMorphism, Variance};
use super::FibError;

/// A (op)fibred 1-cell `(K, F)`: a strictly commuting square over the
/// projections in which `K` preserves the chosen class of (co)cartesian
/// morphisms. The direction is the common variance of the two totals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FibredCell {
    source: TotalCategory,
    target: TotalCategory,
    total: FiniteFunctor,
    base: FiniteFunctor,
}

impl FibredCell {
    pub fn new(
        source: TotalCategory,
        target: TotalCategory,
        total: FiniteFunctor,
        base: FiniteFunctor,
    ) -> Result<FibredCell, FibError> {
        if source.variance() != target.variance() {
            return Err(FibError::VarianceMismatch);
        }
        if total.source() != source.category()
            || total.target() != target.category()
            || base.source() != source.base()
            || base.target() != target.base()
        {
            return Err(FibError::NotCommuting("functors do not match the squares' corners".into()));
        }
        let left = base.after(source.projection())?;
        let right = target.projection().after(&total)?;
        if left != right {
            return Err(FibError::NotCommuting("projection ∘ K differs from F ∘ projection".into()));
        }
        for m in 0..source.category().morphism_count() {
            if source.is_universal(m) && !target.is_universal(total.mor(m)) {
                return Err(FibError::NotPreserving(m));
            }
        }
        Ok(FibredCell { source, target, total, base })
    }

    /// Builds the total functor from fibre functors `K_X` and comparison
    /// isos. For fibrations `comparison(f, b)` is the vertical
    /// `K_X(f* b) → (Ff)*(K_Y b)`; for opfibrations `comparison(f, a)` is
    /// `(Ff)_!(K_X a) → K_Y(f_! a)`. `None` means strict commutation.
    pub fn from_fibres(
        source: TotalCategory,
        target: TotalCategory,
        base: FiniteFunctor,
        fibre_functors: Vec<FiniteFunctor>,
        comparison: Option<&dyn Fn(usize, usize) -> usize>,
    ) -> Result<FibredCell, FibError> {
        let sb = source.base();
        if fibre_functors.len() != sb.object_count() {
            return Err(FibError::NotCommuting("one fibre functor per base object required".into()));
        }
        let c = source.category();
        let obj: Vec<usize> = (0..c.object_count())
            .map(|o| {
                let (x, a) = source.decode_object(o);
                target.object(base.obj(x), fibre_functors[x].obj(a))
            })
            .collect();
        let mut mor = Vec::with_capacity(c.morphism_count());
        for m in 0..c.morphism_count() {
            let d = source.decode(m);
            let (x, y) = (sb.src(d.base), sb.tgt(d.base));
            let ff = base.mor(d.base);
            let (kx, ky) = (&fibre_functors[x], &fibre_functors[y]);
            let fibre = match source.variance() {
                Variance::Contravariant => {
                    let fib = target.fibre(base.obj(x));
                    let kphi = kx.mor(d.fibre);
                    match comparison {
                        Some(cmp) => fib.compose(cmp(d.base, d.tgt), kphi),
                        None => Some(kphi),
                    }
                }
                Variance::Covariant => {
                    let fib = target.fibre(base.obj(y));
                    let kphi = ky.mor(d.fibre);
                    match comparison {
                        Some(cmp) => fib.compose(kphi, cmp(d.base, d.src)),
                        None => Some(kphi),
                    }
                }
            };
            let image = fibre.and_then(|fibre| {
                target.find(&TotalMorphism { base: ff, src: kx.obj(d.src), tgt: ky.obj(d.tgt), fibre })
            });
            mor.push(image.ok_or_else(|| {
                FibError::NotCommuting(format!("fibre functors do not commute with reindexing at morphism {m}"))
            })?);
        }
        let total = FiniteFunctor::new(source.category().clone(), target.category().clone(), obj, mor)?;
        FibredCell::new(source, target, total, base)
    }

    pub fn identity(t: &TotalCategory) -> FibredCell {
        FibredCell {
            source: t.clone(),
            target: t.clone(),
            total: FiniteFunctor::identity(t.category()),
            base: FiniteFunctor::identity(t.base()),
        }
    }

    pub fn source(&self) -> &TotalCategory {
        &self.source
    }

    pub fn target(&self) -> &TotalCategory {
        &self.target
    }

    pub fn total(&self) -> &FiniteFunctor {
        &self.total
    }

    pub fn base(&self) -> &FiniteFunctor {
        &self.base
    }

    pub fn variance(&self) -> Variance {
        self.source.variance()
    }

    /// The induced functor `K_X: source fibre X → target fibre F(X)`.
    pub fn fibre_functor(&self, x: usize) -> FiniteFunctor {
        let fx = self.base.obj(x);
        let from = self.source.fibre(x);
        let obj = (0..from.object_count())
            .map(|a| self.target.decode_object(self.total.obj(self.source.object(x, a))).1)
            .collect();
        let mor = (0..from.morphism_count())
            .map(|phi| self.target.decode(self.total.mor(self.source.vertical(x, phi))).fibre)
            .collect();
        FiniteFunctor::new(from.clone(), self.target.fibre(fx).clone(), obj, mor)
            .expect("a commuting square restricts to the fibres")
    }

    /// The formal opposite cell; `dualize` twice is the identity.
    pub fn dualize(&self) -> FibredCell {
        FibredCell {
            source: self.source.dualize(),
            target: self.target.dualize(),
            total: self.total.opposite(),
            base: self.base.opposite(),
        }
    }
}

/// The comparison between reindexing and the induced fibre functors along
/// `f: X → Y`, from the factorization of the image of each chosen lifting.
///
/// For a fibred cell this is `τ^f: K_X ∘ f* ⇒ (Ff)* ∘ K_Y` on the fibre over
/// `Y`; for an opfibred cell it is `σ^f: (Ff)_! ∘ K_X ⇒ K_Y ∘ f_!` on the
/// fibre over `X`. Every component is checked to be a vertical iso.
pub fn reindex_commute_iso(cell: &FibredCell, f: usize) -> Result<NaturalTransformation, FibError> {
    let sb = cell.source.base();
    let (x, y) = (sb.src(f), sb.tgt(f));
    let ff = cell.base.mor(f);
    let (kx, ky) = (cell.fibre_functor(x), cell.fibre_functor(y));
    let src_r = cell.source.indexed().reindex(f);
    let tgt_r = cell.target.indexed().reindex(ff);
    let (from, to, over) = match cell.variance() {
        Variance::Contravariant => (kx.after(src_r)?, tgt_r.after(&ky)?, cell.base.obj(x)),
        Variance::Covariant => (tgt_r.after(&kx)?, ky.after(src_r)?, cell.base.obj(y)),
    };
    let free = match cell.variance() {
        Variance::Contravariant => cell.source.fibre(y).object_count(),
        Variance::Covariant => cell.source.fibre(x).object_count(),
    };
    let mut comps = Vec::with_capacity(free);
    for a in 0..free {
        let image = cell.total.mor(cell.source.lift(f, a));
        let fact = factorize(&cell.target, image)?;
        let v = cell.target.decode(fact.vertical).fibre;
        if !cell.target.fibre(over).is_iso(v) {
            return Err(FibError::NotIso(format!("comparison component at fibre object {a}")));
        }
        comps.push(v);
    }
    NaturalTransformation::new(from, to, comps)
}
