//! Small synthesis instances over the arrow category and the point.

use super::category::{FiniteAdjunction, FiniteCategory, FiniteFunctor};
use super::cell::FibredCell;
use super::adjoint::fibrewise_composite;
use super::indexed::{grothendieck, IndexedCategory, TotalCategory, Variance};
use super::instance::FibInstance;
use super::FibError;

/// The adjunction between functors of thin categories, if there is one.
pub fn thin_adjunction(left: FiniteFunctor, right: FiniteFunctor) -> Result<FiniteAdjunction, FibError> {
    let (c, d) = (left.source().clone(), left.target().clone());
    let unique = |cat: &FiniteCategory, a: usize, b: usize| match cat.hom(a, b) {
        [m] => Ok(*m),
        _ => Err(FibError::NotAdjunction(format!("{}: no unique morphism", cat.name()))),
    };
    let unit = (0..c.object_count())
        .map(|x| unique(&c, x, right.obj(left.obj(x))))
        .collect::<Result<_, _>>()?;
    let counit = (0..d.object_count())
        .map(|y| unique(&d, left.obj(right.obj(y)), y))
        .collect::<Result<_, _>>()?;
    FiniteAdjunction::new(left, right, unit, counit)
}

fn chain(name: &str, objects: &[&str]) -> FiniteCategory {
    let rel: Vec<(usize, usize)> = (1..objects.len()).map(|i| (i - 1, i)).collect();
    FiniteCategory::preorder(name, objects, &rel)
}

/// An indexed category over `0 → 1` with the given fibres; `along` is
/// `u_!: fibre0 → fibre1` or `u*: fibre1 → fibre0` as an object map.
fn over_arrow(name: &str, variance: Variance, f0: FiniteCategory, f1: FiniteCategory, along: Vec<usize>) -> TotalCategory {
    let u = match variance {
        Variance::Covariant => FiniteFunctor::from_object_map(&f0, &f1, along),
        Variance::Contravariant => FiniteFunctor::from_object_map(&f1, &f0, along),
    }
    .expect("corpus functor");
    let reindex = vec![FiniteFunctor::identity(&f0), u, FiniteFunctor::identity(&f1)];
    let ic = IndexedCategory::new(name, FiniteCategory::arrow(), variance, vec![f0, f1], reindex).expect("corpus indexed category");
    grothendieck(&ic).expect("corpus total category")
}

fn fibre_map(source: &TotalCategory, target: &TotalCategory, x: usize, y: usize, obj: Vec<usize>) -> FiniteFunctor {
    FiniteFunctor::from_object_map(source.fibre(x), target.fibre(y), obj).expect("corpus fibre functor")
}

fn with_thin_fibrewise(name: &str, cell: FibredCell, base: FiniteAdjunction, supplied: Vec<Vec<usize>>) -> FibInstance {
    let fibrewise = supplied
        .into_iter()
        .enumerate()
        .map(|(y, obj)| {
            let composite = fibrewise_composite(&cell, &base, y).expect("corpus composite");
            let other = FiniteFunctor::from_object_map(composite.target(), composite.source(), obj).expect("corpus adjoint");
            match cell.variance() {
                Variance::Covariant => thin_adjunction(composite, other),
                Variance::Contravariant => thin_adjunction(other, composite),
            }
            .expect("corpus fibrewise adjunction")
        })
        .collect();
    FibInstance::new(name, cell, base, fibrewise)
}

/// Identity cell on an opfibration over `0 → 1`.
pub fn identity_instance() -> FibInstance {
    let t = over_arrow("C", Variance::Covariant, chain("C0", &["c"]), chain("C1", &["a", "b"]), vec![0]);
    let fibrewise = (0..2).map(|x| FiniteAdjunction::identity(t.fibre(x))).collect();
    let base = FiniteAdjunction::identity(t.base());
    FibInstance::new("identity", FibredCell::identity(&t), base, fibrewise)
}

/// Collapses the fibre `a → b` over 1 onto a point; its right adjoint picks
/// `b`, a reflective inclusion. `push` is the image of `c` along `0 → 1`:
/// `b` makes the mate invertible, `a` does not.
fn collapse(name: &str, push: usize) -> FibInstance {
    let c = over_arrow("C", Variance::Covariant, chain("C0", &["c"]), chain("C1", &["a", "b"]), vec![push]);
    let d = over_arrow("D", Variance::Covariant, chain("D0", &["d0"]), chain("D1", &["d1"]), vec![0]);
    let k0 = fibre_map(&c, &d, 0, 0, vec![0]);
    let k1 = fibre_map(&c, &d, 1, 1, vec![0, 0]);
    let base = FiniteAdjunction::identity(c.base());
    let cell = FibredCell::from_fibres(c, d, FiniteFunctor::identity(&FiniteCategory::arrow()), vec![k0, k1], None)
        .expect("corpus cell");
    with_thin_fibrewise(name, cell, base, vec![vec![0], vec![1]])
}

pub fn reflective_instance() -> FibInstance {
    collapse("reflective", 1)
}

pub fn omega_defect_instance() -> FibInstance {
    collapse("omega-defect", 0)
}

/// Identity cell on the constant opfibration with fibre `ℤ/2`, with unit
/// and counit the nontrivial element.
pub fn twisted_unit_instance() -> FibInstance {
    let z2 = FiniteCategory::monoid("Z2", "*", &["e", "s"], 0, |g, f| g ^ f).expect("Z2");
    let ic = IndexedCategory::constant("Z", FiniteCategory::arrow(), Variance::Covariant, z2.clone());
    let t = grothendieck(&ic).expect("corpus total category");
    let id = FiniteFunctor::identity(&z2);
    let fibrewise = (0..2)
        .map(|_| FiniteAdjunction::new(id.clone(), id.clone(), vec![1], vec![1]).expect("twisted adjunction"))
        .collect();
    FibInstance::new("twisted-unit", FibredCell::identity(&t), FiniteAdjunction::identity(t.base()), fibrewise)
}

/// A cell from an opfibration over the point to one over `0 → 1`, along the
/// inclusion of the initial object, whose right adjoint is the collapse.
pub fn initial_point_instance() -> FibInstance {
    let point = FiniteCategory::terminal();
    let arrow = FiniteCategory::arrow();
    let f = FiniteFunctor::from_object_map(&point, &arrow, vec![0]).expect("F");
    let g = FiniteFunctor::from_object_map(&arrow, &point, vec![0, 0]).expect("G");
    let base = thin_adjunction(f.clone(), g).expect("F ⊣ G");
    let cic = IndexedCategory::constant("C", point, Variance::Covariant, chain("C*", &["c"]));
    let c = grothendieck(&cic).expect("C");
    let d = over_arrow("D", Variance::Covariant, chain("D0", &["d0"]), chain("D1", &["a", "b"]), vec![0]);
    let k = fibre_map(&c, &d, 0, 0, vec![0]);
    let cell = FibredCell::from_fibres(c, d, f, vec![k], None).expect("corpus cell");
    with_thin_fibrewise("initial-point", cell, base, vec![vec![0], vec![0, 0]])
}

/// A fibred functor over `0 → 1` collapsing `m → n` over 0 onto `q` in
/// `p → q`. Reindexing the point over 1 to `n` makes the mate `χ` fail to be
/// invertible; reindexing it to `m` keeps it strict.
fn chi_instance(name: &str, reindex_to: usize) -> FibInstance {
    let a = over_arrow("A", Variance::Contravariant, chain("A0", &["p", "q"]), chain("A1", &["*"]), vec![1]);
    let b = over_arrow("B", Variance::Contravariant, chain("B0", &["m", "n"]), chain("B1", &["w"]), vec![reindex_to]);
    let s0 = fibre_map(&b, &a, 0, 0, vec![1, 1]);
    let s1 = fibre_map(&b, &a, 1, 1, vec![0]);
    let base = FiniteAdjunction::identity(a.base());
    let cell = FibredCell::from_fibres(b, a, FiniteFunctor::identity(&FiniteCategory::arrow()), vec![s0, s1], None)
        .expect("corpus cell");
    with_thin_fibrewise(name, cell, base, vec![vec![0, 0], vec![0]])
}

pub fn chi_failure_instance() -> FibInstance {
    chi_instance("chi-failure", 1)
}

pub fn chi_strict_instance() -> FibInstance {
    chi_instance("chi-strict", 0)
}

/// Every corpus instance, including formal duals.
pub fn fibration_corpus() -> Vec<FibInstance> {
    let reflective = reflective_instance();
    let defect = omega_defect_instance();
    let chi = chi_failure_instance();
    vec![
        identity_instance(),
        reflective.dualize(),
        defect.dualize(),
        chi.dualize(),
        reflective,
        defect,
        twisted_unit_instance(),
        initial_point_instance(),
        chi_strict_instance(),
        chi,
    ]
}
