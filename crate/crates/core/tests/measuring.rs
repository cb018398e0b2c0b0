use measuring_lab::algcore::standard::*;
use measuring_lab::algcore::*;
use measuring_lab::exactlin::{count_vectors, intersect, kernel, vector_at, Field, Mat, Scalar, Subspace};
use measuring_lab::measuring::*;
use measuring_lab::modcomod::{Comodule, Module};
use proptest::prelude::*;

fn q() -> Field {
    Field::Rationals
}

fn f2() -> Field {
    Field::prime(2).unwrap()
}

fn f3() -> Field {
    Field::prime(3).unwrap()
}

fn opts(n: usize) -> TruncationOptions {
    TruncationOptions::degree(n)
}

fn k_times_k(f: Field) -> Algebra {
    dual_algebra(&grouplike_coalgebra(f, 2)).with_name("k×k")
}

/// Algebra map `A → B` of the unit alone (valid when `A = k`).
fn unit_map(a: &Algebra, b: &Algebra) -> Mat {
    assert_eq!(a.dim(), 1);
    b.unit().clone()
}

// ---------------------------------------------------------------- measurings

#[test]
fn grouplike_measuring_is_algebra_map() {
    let f = f2();
    let a = dual_numbers(f);
    let b = dual_numbers(f);
    let k = ground_coalgebra(f);
    // every 2x2 matrix over F2 as ψ(1)
    for idx in 0..16u128 {
        let m = measuring_lab::exactlin::matrix_at(f, 2, 2, idx);
        let psi = MeasuringMap::new(k.clone(), a.clone(), b.clone(), Mat::column(f, hom_matrix_to_vector(&m))).unwrap();
        assert_eq!(verify_measuring(&psi).unwrap(), is_algebra_morphism(&a, &b, &m).unwrap());
    }
}

#[test]
fn evaluation_measuring_and_perturbation() {
    for f in [q(), f2(), f3()] {
        for a in [dual_numbers(f), cyclic_group_algebra(f, 3), matrix_algebra(f, 2)] {
            let (_, ev) = finite_dual(&a);
            assert!(verify_measuring(&ev).unwrap());
            let mut bad = ev.clone();
            bad.psi.add_at(0, a.dim() - 1, &f.one());
            assert!(!verify_measuring(&bad).unwrap());
        }
    }
}

/// Elementwise oracle for the measuring identities, written against the
/// algebra multiplication and comultiplication matrices directly.
fn measuring_oracle(m: &MeasuringMap) -> bool {
    let f = m.a.field();
    let (dc, da, db) = (m.c.dim(), m.a.dim(), m.b.dim());
    let psi_of = |s: usize| hom_vector_to_matrix(f, &m.psi.col_vec(s), da, db);
    let basis = |n: usize, i: usize| Mat::from_fn(f, n, 1, |r, _| if r == i { f.one() } else { f.zero() });
    for s in 0..dc {
        let ps = psi_of(s);
        for i in 0..da {
            for j in 0..da {
                let prod = Mat::column(f, m.a.multiply(&basis(da, i).col_vec(0), &basis(da, j).col_vec(0)));
                let lhs = ps.mul(&prod).col_vec(0);
                let mut rhs = vec![f.zero(); db];
                for x in 0..dc {
                    for y in 0..dc {
                        let d = m.c.comult().get(x * dc + y, s);
                        if d.is_zero() {
                            continue;
                        }
                        let u = psi_of(x).mul(&basis(da, i)).col_vec(0);
                        let v = psi_of(y).mul(&basis(da, j)).col_vec(0);
                        let uv = m.b.multiply(&u, &v);
                        for t in 0..db {
                            rhs[t] = f.add(&rhs[t], &f.mul(d, &uv[t]));
                        }
                    }
                }
                if lhs != rhs {
                    return false;
                }
            }
        }
        let one = ps.mul(m.a.unit()).col_vec(0);
        let eps = m.c.counit().get(0, s);
        let want: Vec<Scalar> = m.b.unit_vec().iter().map(|u| f.mul(eps, u)).collect();
        if one != want {
            return false;
        }
    }
    true
}

#[test]
fn measuring_routes_agree_exhaustively_over_f2() {
    let f = f2();
    let coalgebras = [ground_coalgebra(f), grouplike_coalgebra(f, 2), dual_coalgebra(&dual_numbers(f))];
    let algebras = [ground_algebra(f), dual_numbers(f), k_times_k(f), cyclic_group_algebra(f, 2)];
    let mut seen_true = 0;
    for c in &coalgebras {
        for a in &algebras {
            for b in &algebras[..2] {
                let rows = a.dim() * b.dim();
                let n = count_vectors(f, rows * c.dim()).unwrap();
                for idx in 0..n {
                    let psi = measuring_lab::exactlin::matrix_at(f, rows, c.dim(), idx);
                    let m = MeasuringMap::new(c.clone(), a.clone(), b.clone(), psi).unwrap();
                    // verify_measuring errors if its two routes disagree
                    let v = verify_measuring(&m).unwrap();
                    assert_eq!(v, measuring_oracle(&m));
                    seen_true += v as usize;
                }
            }
        }
    }
    assert!(seen_true > 0);
}

// ------------------------------------------------------------- algebra maps

#[test]
fn algebra_map_examples() {
    let f = f2();
    let k = ground_algebra(f);
    for b in [dual_numbers(f), matrix_algebra(f, 2), k_times_k(f)] {
        let maps = algebra_maps(&k, &b, None, Budget::default()).unwrap();
        assert_eq!(maps.len(), 1);
        assert_eq!(maps[0].matrix(), b.unit());
    }
    let maps = algebra_maps(&dual_numbers(f), &k, None, Budget::default()).unwrap();
    assert_eq!(maps.len(), 1);
    assert_eq!(maps[0].matrix(), &Mat::from_i64(f, &[&[1, 0]]));
    let maps = algebra_maps(&cyclic_group_algebra(f, 2), &k, None, Budget::default()).unwrap();
    assert_eq!(maps.len(), 1);
    assert_eq!(maps[0].matrix(), &Mat::from_i64(f, &[&[1, 1]]));
    // k×k → k: the two projections
    assert_eq!(algebra_maps(&k_times_k(f), &k, None, Budget::default()).unwrap().len(), 2);
}

#[test]
fn algebra_maps_partition_and_budget() {
    let f = f3();
    let a = cyclic_group_algebra(f, 3);
    let b = dual_numbers(f);
    let all = algebra_maps(&a, &b, None, Budget::default()).unwrap();
    let n = 3u128.pow(6);
    let mut parts = Vec::new();
    for (lo, hi) in [(0, 100), (100, 101), (101, n)] {
        parts.extend(algebra_maps_in_range(&a, &b, lo..hi).unwrap().into_iter().map(|(_, m)| m));
    }
    assert_eq!(all, parts);
    assert!(matches!(
        algebra_maps(&a, &b, None, Budget(10)),
        Err(MeasError::BudgetExceeded { .. })
    ));
    assert!(matches!(
        algebra_maps(&dual_numbers(q()), &ground_algebra(q()), None, Budget::default()),
        Err(MeasError::BudgetExceeded { .. })
    ));
}

#[test]
fn rational_hints_are_validated() {
    let a = cyclic_group_algebra(q(), 2);
    let k = ground_algebra(q());
    let good = vec![Mat::from_i64(q(), &[&[1, 1]]), Mat::from_i64(q(), &[&[1, -1]])];
    assert_eq!(algebra_maps(&a, &k, Some(&good), Budget::default()).unwrap().len(), 2);
    let bad = vec![Mat::from_i64(q(), &[&[1, 1]]), Mat::from_i64(q(), &[&[1, 2]])];
    assert_eq!(algebra_maps(&a, &k, Some(&bad), Budget::default()), Err(MeasError::HintInvalid(1)));
}

// --------------------------------------------------- largest sub(co)algebras

#[test]
fn largest_subcoalgebra_examples() {
    let f = q();
    let c = dual_coalgebra(&dual_numbers(f));
    assert!(largest_subcoalgebra_in(&c, &Subspace::full(f, 2)).is_full());
    assert_eq!(largest_subcoalgebra_in(&c, &Subspace::zero(f, 2)).dim(), 0);
    let xstar = Subspace::span(&Mat::from_i64(f, &[&[0, 1]]));
    assert_eq!(largest_subcoalgebra_in(&c, &xstar).dim(), 0);
    let onestar = Subspace::span(&Mat::from_i64(f, &[&[1, 0]]));
    assert_eq!(largest_subcoalgebra_in(&c, &onestar), onestar);
}

#[test]
fn largest_subcomodule_examples() {
    let f = q();
    let c = dual_coalgebra(&dual_numbers(f));
    let x = Comodule::regular(&c);
    assert!(largest_subcomodule_in(&x, &Subspace::full(f, 2)).is_full());
    assert_eq!(largest_subcomodule_in(&x, &Subspace::zero(f, 2)).dim(), 0);
    // Δ-compatible w: the two algorithms agree
    for w in [
        Subspace::span(&Mat::from_i64(f, &[&[1, 0]])),
        Subspace::span(&Mat::from_i64(f, &[&[0, 1]])),
    ] {
        assert_eq!(largest_subcomodule_in(&x, &w), largest_subcoalgebra_in(&c, &w));
    }
}

/// All subspaces of `𝔽₂^n`, as spans of subsets of at most `n` vectors.
fn all_subspaces_f2(n: usize) -> Vec<Subspace> {
    let f = f2();
    let vecs: Vec<Vec<Scalar>> = (1..(1u128 << n)).map(|i| vector_at(f, n, i)).collect();
    let mut out = vec![Subspace::zero(f, n)];
    let mut frontier = vec![Subspace::zero(f, n)];
    for _ in 0..n {
        let mut next = Vec::new();
        for s in &frontier {
            for v in &vecs {
                if s.contains(v) {
                    continue;
                }
                let t = s.sum(&Subspace::span(&Mat::from_rows(f, n, vec![v.clone()]).unwrap())).unwrap();
                if !out.contains(&t) {
                    out.push(t.clone());
                    next.push(t);
                }
            }
        }
        frontier = next;
    }
    out
}

fn is_subcoalgebra(c: &Coalgebra, d: &Subspace) -> bool {
    let inc = d.inclusion();
    let dd = Subspace::image(&inc.kron(&inc));
    let img = c.comult().mul(&inc);
    (0..img.cols()).all(|j| dd.contains(&img.col_vec(j)))
}

#[test]
fn largest_subcoalgebra_matches_sum_of_all_subcoalgebras() {
    let f = f2();
    let coalgebras = [
        divided_power_coalgebra(f, 3),
        matrix_coalgebra(f, 2),
        dual_coalgebra(&cyclic_group_algebra(f, 4)),
        tensor_coalgebras(&grouplike_coalgebra(f, 2), &dual_coalgebra(&dual_numbers(f))).unwrap(),
    ];
    let subspaces = all_subspaces_f2(4);
    for c in &coalgebras {
        let subcoalgebras: Vec<&Subspace> = subspaces.iter().filter(|d| is_subcoalgebra(c, d)).collect();
        for w in &subspaces {
            let mut oracle = Subspace::zero(f, 4);
            for d in &subcoalgebras {
                if w.contains_subspace(d) {
                    oracle = oracle.sum(d).unwrap();
                }
            }
            assert_eq!(largest_subcoalgebra_in(c, w), oracle, "{} in {:?}", c.name(), w);
        }
    }
}

/// Coalgebra maps from three small sources into `D₃` over `𝔽₃`, enumerated once.
fn maps_into_d3() -> &'static Vec<Vec<CoalgebraMorphism>> {
    static MAPS: std::sync::OnceLock<Vec<Vec<CoalgebraMorphism>>> = std::sync::OnceLock::new();
    MAPS.get_or_init(|| {
        let f = f3();
        let c = divided_power_coalgebra(f, 3);
        [divided_power_coalgebra(f, 1), grouplike_coalgebra(f, 2), divided_power_coalgebra(f, 2)]
            .iter()
            .map(|src| enumerate_coalgebra_maps(src, &c, Budget::default()).unwrap())
            .collect()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]
    #[test]
    fn largest_subcoalgebra_contains_images_of_coalgebra_maps(
        which in 0usize..3,
        extra in proptest::collection::vec(0u128..81, 0..3),
        pick in 0usize..64,
    ) {
        // Subcoalgebras arise as images of coalgebra maps into c.
        let f = f3();
        let c = divided_power_coalgebra(f, 3);
        let maps = &maps_into_d3()[which];
        let g = &maps[pick % maps.len()];
        let d = Subspace::image(g.matrix());
        let mut w = d.clone();
        for e in extra {
            let v = vector_at(f, 4, e);
            w = w.sum(&Subspace::span(&Mat::from_rows(f, 4, vec![v]).unwrap())).unwrap();
        }
        let big = largest_subcoalgebra_in(&c, &w);
        prop_assert!(big.contains_subspace(&d));
        prop_assert!(w.contains_subspace(&big));
        prop_assert!(is_subcoalgebra(&c, &big));
    }
}

// ------------------------------------------------------- cofree truncation

#[test]
fn pointed_cofree_truncation_examples() {
    let f = q();
    let pt = vec![vec![f.one(), f.zero()]];
    let (t0, _) = pointed_cofree_truncation(f, 2, pt.clone(), 0).unwrap();
    assert_eq!(t0.dim(), 1);
    assert_eq!(grouplikes(&t0).unwrap().len(), 1);

    let d = 3;
    let pt3 = vec![vec![f.one(), f.zero(), f.zero()]];
    let (t1, proj) = pointed_cofree_truncation(f, d, pt3, 1).unwrap();
    assert_eq!(t1.dim(), d + 1);
    // Δ(w) = w ⊗ g + g ⊗ w on degree-one words, g at index 0
    for w in 1..=d {
        let mut want = Mat::zeros(f, (d + 1) * (d + 1), 1);
        want.set(w * (d + 1), 0, f.one());
        want.set(w, 0, f.one());
        let col = Mat::column(f, t1.comult().col_vec(w));
        assert_eq!(col, want);
        assert_eq!(proj.col_vec(w), (0..d).map(|i| if i == w - 1 { f.one() } else { f.zero() }).collect::<Vec<_>>());
    }

    // v_dim = 1, n = 2: g, w, w⊗w is coassociative (checked on construction)
    let (t2, _) = pointed_cofree_truncation(f, 1, vec![vec![f.one()]], 2).unwrap();
    assert_eq!(t2.dim(), 3);
    assert_eq!(t2.comult(), divided_power_coalgebra(f, 2).comult());
}

#[test]
fn mixed_arrows_use_a_complement() {
    let f = q();
    let pts = vec![vec![f.one(), f.one()], vec![f.one(), f.from_i64(-1)]];
    let t = PathCoalgebra::new(f, 2, pts, 1).unwrap();
    // two loops of dimension 2, two mixed arrow spaces of dimension 1
    assert_eq!(t.arrow_coordinates(0, 0).len(), 2);
    assert_eq!(t.arrow_coordinates(0, 1), &[0]);
    assert_eq!(SparseCoalgebra::dim(&t), 2 + 4 + 2);
    t.to_coalgebra().unwrap();
}

// --------------------------------------------------- the measuring comonoid

#[test]
fn comonoid_of_ground_algebra_is_trivial() {
    let f = f2();
    let k = ground_algebra(f);
    for b in [dual_numbers(f), matrix_algebra(f, 2)] {
        for n in 0..4 {
            let p = measuring_comonoid_truncated(&k, &b, &opts(n)).unwrap();
            assert_eq!(p.p_n.dim(), 1);
            assert_eq!(p.points.len(), 1);
        }
    }
}

#[test]
fn comonoid_of_dual_numbers_over_q() {
    let a = dual_numbers(q());
    let k = ground_algebra(q());
    let hint = vec![Mat::from_i64(q(), &[&[1, 0]])];
    for n in 1..4 {
        let p = measuring_comonoid_truncated(&a, &k, &opts(n).with_hints(hint.clone())).unwrap();
        assert_eq!(p.p_n.dim(), 2);
        assert_eq!(grouplikes(&p.p_n).unwrap().len(), 1);
        assert_eq!(p.loop_dim(0), 1);
        // isomorphic to the finite dual, in both directions
        let (dual, ev) = finite_dual(&a);
        let h = couniversal_factor(&p, &ev).unwrap();
        assert!(h.matrix().is_invertible());
        let back = MeasuringMap::new(p.p_n.clone(), a.clone(), k.clone(), p.proj.clone()).unwrap();
        let inv = CoalgebraMorphism::new(p.p_n.clone(), dual.clone(), h.matrix().inverse().unwrap()).unwrap();
        assert_eq!(inv.matrix().mul(h.matrix()), Mat::identity(q(), 2));
        assert!(verify_measuring(&back).unwrap());
    }
}

#[test]
fn comonoid_of_group_algebra_c2_over_q() {
    let a = cyclic_group_algebra(q(), 2);
    let k = ground_algebra(q());
    let hints = vec![Mat::from_i64(q(), &[&[1, 1]]), Mat::from_i64(q(), &[&[1, -1]])];
    for n in 1..4 {
        let p = measuring_comonoid_truncated(&a, &k, &opts(n).with_hints(hints.clone())).unwrap();
        assert_eq!(p.p_n.dim(), 2);
        assert_eq!(grouplikes(&p.p_n).unwrap().len(), 2);
        assert_eq!(p.loop_dim(0) + p.loop_dim(1), 0);
    }
}

/// Dimension of the `(φ, φ)`-derivations `A → B`, from the plain linear
/// system `v(aa') = φ(a)v(a') + v(a)φ(a')`, `v(1) = 0`.
fn derivation_dim(a: &Algebra, b: &Algebra, phi: &Mat) -> usize {
    let f = a.field();
    let (da, db) = (a.dim(), b.dim());
    let nvars = da * db;
    let mut rows: Vec<Vec<Scalar>> = Vec::new();
    let e = |n: usize, i: usize| -> Vec<Scalar> { (0..n).map(|r| if r == i { f.one() } else { f.zero() }).collect() };
    // v as a db x da matrix with variable (t, i) at index i*db + t
    let apply = |var: usize, x: &[Scalar]| -> Vec<Scalar> {
        let (i, t) = (var / db, var % db);
        let mut out = vec![f.zero(); db];
        out[t] = x[i].clone();
        out
    };
    let phi_of = |x: &[Scalar]| phi.mul(&Mat::column(f, x.to_vec())).col_vec(0);
    for i in 0..da {
        for j in 0..da {
            let (ai, aj) = (e(da, i), e(da, j));
            let prod = a.multiply(&ai, &aj);
            let mut eqs = vec![vec![f.zero(); nvars]; db];
            for var in 0..nvars {
                let l = apply(var, &prod);
                let r1 = b.multiply(&phi_of(&ai), &apply(var, &aj));
                let r2 = b.multiply(&apply(var, &ai), &phi_of(&aj));
                for t in 0..db {
                    eqs[t][var] = f.sub(&l[t], &f.add(&r1[t], &r2[t]));
                }
            }
            rows.extend(eqs);
        }
    }
    let unit = a.unit_vec();
    for t in 0..db {
        rows.push((0..nvars).map(|var| apply(var, &unit)[t].clone()).collect());
    }
    kernel(&Mat::from_rows(f, nvars, rows).unwrap()).dim()
}

#[test]
fn loops_are_derivations() {
    let cases: Vec<(Algebra, Algebra)> = vec![
        (dual_numbers(f2()), ground_algebra(f2())),
        (dual_numbers(f2()), dual_numbers(f2())),
        (cyclic_group_algebra(f2(), 2), ground_algebra(f2())),
        (cyclic_group_algebra(f3(), 3), ground_algebra(f3())),
        (truncated_polynomial(f3(), 3), ground_algebra(f3())),
        (k_times_k(f2()), dual_numbers(f2())),
    ];
    for (a, b) in cases {
        let p = measuring_comonoid_truncated(&a, &b, &opts(1)).unwrap();
        for (i, phi) in p.points.iter().enumerate() {
            assert_eq!(p.loop_dim(i), derivation_dim(&a, &b, phi.matrix()), "{} -> {}", a.name(), b.name());
        }
    }
}

#[test]
fn finite_dual_examples() {
    let (c, _) = finite_dual(&ground_algebra(q()));
    assert_eq!(c.dim(), 1);
    let (d, _) = finite_dual(&dual_numbers(f2()));
    assert_eq!(d.dim(), 2);
    // x* is primitive: Δx* = 1*⊗x* + x*⊗1*
    assert_eq!(d.comult().col_vec(1), Mat::from_i64(f2(), &[&[0], &[1], &[1], &[0]]).col_vec(0));
}

#[test]
fn comonoid_agrees_with_finite_dual() {
    let cases = [
        dual_numbers(f2()),
        cyclic_group_algebra(f2(), 2),
        cyclic_group_algebra(f3(), 3),
        truncated_polynomial(f2(), 3),
        k_times_k(f3()),
        ground_algebra(f2()),
    ];
    for a in cases {
        let k = ground_algebra(a.field());
        let p = measuring_comonoid_truncated(&a, &k, &opts(a.dim())).unwrap();
        let (dual, ev) = finite_dual(&a);
        let h = couniversal_factor(&p, &ev).unwrap();
        assert_eq!(p.p_n.dim(), dual.dim(), "{}", a.name());
        assert!(h.matrix().is_invertible(), "{}", a.name());
    }
}

// ----------------------------------------------------------- factorization

#[test]
fn couniversal_factor_examples() {
    let f = f2();
    let a = k_times_k(f);
    let b = ground_algebra(f);
    let p = measuring_comonoid_truncated(&a, &b, &opts(2)).unwrap();
    // C = k picking each point
    for (i, phi) in p.points.iter().enumerate() {
        let psi = MeasuringMap::new(
            ground_coalgebra(f),
            a.clone(),
            b.clone(),
            Mat::column(f, hom_matrix_to_vector(phi.matrix())),
        )
        .unwrap();
        let h = couniversal_factor(&p, &psi).unwrap();
        assert_eq!(h.matrix().col_vec(0), p.grouplike(i));
    }
    // canonical measuring factors through the identity
    let h = couniversal_factor(&p, &p.canonical_measuring).unwrap();
    assert!(h.matrix().is_identity());

    // finite dual of the dual numbers over F2: explicit round trip
    let a = dual_numbers(f);
    let p = measuring_comonoid_truncated(&a, &b, &opts(1)).unwrap();
    let (dual, ev) = finite_dual(&a);
    let h = couniversal_factor(&p, &ev).unwrap();
    assert_eq!(p.proj.mul(h.matrix()), ev.psi);
    let back = CoalgebraMorphism::new(p.p_n.clone(), dual, h.matrix().inverse().unwrap()).unwrap();
    assert!(back.after(&h).unwrap().matrix().is_identity());
}

#[test]
fn couniversal_factor_errors() {
    let f = f2();
    let a = dual_numbers(f);
    let b = ground_algebra(f);
    let p0 = measuring_comonoid_truncated(&a, &b, &opts(0)).unwrap();
    let (_, ev) = finite_dual(&a);
    assert_eq!(
        couniversal_factor(&p0, &ev),
        Err(MeasError::TruncationInsufficient { needed: 1, degree: 0 })
    );
    let mut bad = ev.clone();
    bad.psi.add_at(1, 1, &f.one());
    bad.psi.add_at(0, 1, &f.one());
    assert_eq!(couniversal_factor(&p0, &bad), Err(MeasError::NotMeasuring));

    // a point missing from the recorded list (supplied hints omit it)
    let qq = q();
    let c2 = cyclic_group_algebra(qq, 2);
    let kq = ground_algebra(qq);
    let p = measuring_comonoid_truncated(&c2, &kq, &opts(1).with_hints(vec![Mat::from_i64(qq, &[&[1, 1]])])).unwrap();
    let (_, ev) = finite_dual(&c2);
    assert!(matches!(couniversal_factor(&p, &ev), Err(MeasError::UnmatchedPoint(_))));

    // a simple component of dimension 4 without matrix-valued points
    let m2 = matrix_algebra(f, 2);
    let pm = measuring_comonoid_truncated(&m2, &b, &opts(1)).unwrap();
    assert_eq!(pm.p_n.dim(), 0);
    let (_, ev) = finite_dual(&m2);
    assert!(matches!(couniversal_factor(&pm, &ev), Err(MeasError::UnmatchedPoint(_))));
}

#[test]
fn matrix_valued_points_add_simple_blocks() {
    let f = f2();
    let m2 = matrix_algebra(f, 2);
    let b = ground_algebra(f);
    let p = measuring_comonoid_truncated(&m2, &b, &opts(1).with_m_max(2)).unwrap();
    assert_eq!(p.blocks.len(), 1);
    assert_eq!(p.p_n.dim(), 4);
    let (_, ev) = finite_dual(&m2);
    let h = couniversal_factor(&p, &ev).unwrap();
    assert!(h.matrix().is_invertible());
}

// ------------------------------------------------------------------ census

#[test]
fn census_examples() {
    let f = f2();
    let k = ground_algebra(f);
    let p = measuring_comonoid_truncated(&k, &k, &opts(1)).unwrap();
    let r = adjunction_bijection_census(&p, &ground_coalgebra(f), Budget::default()).unwrap();
    assert_eq!((r.measurings, r.coalgebra_maps), (1, 1));
    assert!(r.bijective());

    let a = dual_numbers(f);
    let p = measuring_comonoid_truncated(&a, &k, &opts(2)).unwrap();
    let (dual, _) = finite_dual(&a);
    let r = adjunction_bijection_census(&p, &dual, Budget::default()).unwrap();
    assert!(r.bijective());
    assert!(r.measurings > 1);

    for a in [dual_numbers(f), k_times_k(f), cyclic_group_algebra(f, 2)] {
        for b in [ground_algebra(f), dual_numbers(f)] {
            let p = measuring_comonoid_truncated(&a, &b, &opts(1)).unwrap();
            let r = adjunction_bijection_census(&p, &ground_coalgebra(f), Budget::default()).unwrap();
            assert!(r.bijective());
            assert_eq!(r.measurings, algebra_maps(&a, &b, None, Budget::default()).unwrap().len());
        }
    }
}

// ---------------------------------------------------- measuring comodules

#[test]
fn comodule_over_ground_coalgebra() {
    let f = f2();
    let k = ground_algebra(f);
    let p = measuring_comonoid_truncated(&k, &k, &opts(1)).unwrap();
    let m = Module::scalar(&k, &Mat::from_i64(f, &[&[1]]), 2).unwrap();
    let n = Module::scalar(&k, &Mat::from_i64(f, &[&[1]]), 3).unwrap();
    let qn = measuring_comodule_truncated(&m, &n, &p).unwrap();
    assert_eq!(qn.q_n.dim(), 6);
    assert!(verify_module_measuring(&qn.canonical).unwrap());
}

#[test]
fn regular_module_recovers_finite_dual() {
    let f = f2();
    let a = dual_numbers(f);
    let k = ground_algebra(f);
    let p = measuring_comonoid_truncated(&a, &k, &opts(2)).unwrap();
    let ka = Module::scalar(&k, &Mat::from_i64(f, &[&[1]]), 1).unwrap();
    let qn = measuring_comodule_truncated(&Module::regular(&a), &ka, &p).unwrap();
    // Q(A, I) ≅ A° as comodules over A° ≅ P_n
    assert_eq!(qn.q_n.dim(), p.p_n.dim());
    let report = check_isocomod(&a, &k, 1, &ka, &opts(2)).unwrap();
    assert!(report.is_iso());
    let iso = &report.comparison;
    assert!(iso.k.is_invertible());
    // the comparison is a comodule isomorphism onto the regular comodule
    let reg = Comodule::regular(&p.p_n);
    assert_eq!(iso.source.dim(), reg.dim());
}

#[test]
fn extra_constraint_shrinks_q() {
    let f = f2();
    let a = dual_numbers(f);
    let k = ground_algebra(f);
    let p = measuring_comonoid_truncated(&a, &k, &opts(1)).unwrap();
    let ka = Module::scalar(&k, &Mat::from_i64(f, &[&[1]]), 1).unwrap();
    let qn = measuring_comodule_truncated(&Module::regular(&a), &ka, &p).unwrap();
    let amb = qn.cofree.dim();
    // a generic hyperplane: the sum of all coordinates vanishes
    let h = kernel(&Mat::from_fn(f, 1, amb, |_, _| f.one()));
    let w = intersect(qn.embedding(), &h).unwrap();
    let smaller = largest_subcomodule_in(&qn.cofree, &w);
    assert!(smaller.dim() < qn.q_n.dim());
    assert!(qn.embedding().contains_subspace(&smaller));
}

#[test]
fn module_measuring_examples() {
    let f = f2();
    let a = k_times_k(f);
    let k = ground_algebra(f);
    let p = measuring_comonoid_truncated(&a, &k, &opts(1)).unwrap();
    let phi = p.points[0].matrix().clone();
    // X = k over the point φ; ρ: k → Hom(M, N) a φ-equivariant map
    let c = ground_coalgebra(f);
    let psi = MeasuringMap::new(c.clone(), a.clone(), k.clone(), Mat::column(f, hom_matrix_to_vector(&phi))).unwrap();
    let x = Comodule::regular(&c);
    let m = Module::regular(&a);
    let n = Module::scalar(&k, &Mat::from_i64(f, &[&[1]]), 1).unwrap();
    // ρ(1) = φ itself, viewed as A → k
    let r = ModuleMeasuringMap::new(psi.clone(), x.clone(), m.clone(), n.clone(), Mat::column(f, hom_matrix_to_vector(&phi))).unwrap();
    assert!(verify_module_measuring(&r).unwrap());
    let mut bad = r.clone();
    let other = p.points[1].matrix().clone();
    bad.rho = Mat::column(f, hom_matrix_to_vector(&other));
    assert!(!verify_module_measuring(&bad).unwrap());

    let qn = measuring_comodule_truncated(&m, &n, &p).unwrap();
    assert!(verify_module_measuring(&qn.canonical).unwrap());
    // canonical projection factors through the identity
    let id = comodule_couniversal_factor(&qn, &qn.canonical).unwrap();
    assert!(id.k.is_identity() && id.g.matrix().is_identity());
    // X = k over the point: the grouplike fibre inclusion
    let lift = comodule_couniversal_factor(&qn, &r).unwrap();
    assert_eq!(lift.g.matrix().col_vec(0), p.grouplike(0));
    assert_eq!(qn.proj.mul(&lift.k), r.rho);
}

#[test]
fn comodule_census_over_f2() {
    let f = f2();
    let a = dual_numbers(f);
    let k = ground_algebra(f);
    let p = measuring_comonoid_truncated(&a, &k, &opts(1)).unwrap();
    let n = Module::scalar(&k, &Mat::from_i64(f, &[&[1]]), 1).unwrap();
    let m = Module::scalar(&a, &Mat::from_i64(f, &[&[1, 0]]), 1).unwrap();
    let qn = measuring_comodule_truncated(&m, &n, &p).unwrap();
    let (dual, _) = finite_dual(&a);
    for x in [Comodule::regular(&ground_coalgebra(f)), Comodule::regular(&dual)] {
        let r = comodule_census(&x, &qn, Budget::default()).unwrap();
        assert!(r.bijective(), "{r:?}");
        assert!(r.module_measurings > 0);
    }
}

#[test]
fn isocomod_examples() {
    let f = f2();
    let k = ground_algebra(f);
    let nk = Module::scalar(&k, &Mat::from_i64(f, &[&[1]]), 1).unwrap();
    // A = k: both sides are [V, N] ⊗ k
    let r = check_isocomod(&k, &k, 2, &nk, &opts(1)).unwrap();
    assert!(r.is_iso());
    assert_eq!(r.rows.last().unwrap().q_dim, 2);
    // V of dimension 2 over the dual numbers
    let a = dual_numbers(f);
    let r = check_isocomod(&a, &k, 2, &nk, &opts(2)).unwrap();
    assert!(r.is_iso());
    let last = r.rows.last().unwrap();
    assert_eq!(last.source_dim, last.q_dim);
    assert!(r.stable_from.is_some());
}

// ------------------------------------------------------------ monotonicity

#[test]
fn truncations_are_monotone() {
    let f = f3();
    let a = truncated_polynomial(f, 3);
    let k = ground_algebra(f);
    let m = Module::regular(&a);
    let n = Module::scalar(&k, &Mat::from_i64(f, &[&[1]]), 1).unwrap();
    let mut prev: Option<(TruncatedMeasuringComonoid, TruncatedMeasuringComodule)> = None;
    for deg in 0..4 {
        let p = measuring_comonoid_truncated(&a, &k, &opts(deg)).unwrap();
        let qn = measuring_comodule_truncated(&m, &n, &p).unwrap();
        if let Some((p0, q0)) = &prev {
            let iota = truncation_inclusion(p0, &p).unwrap();
            assert_eq!(iota.matrix().rank(), p0.p_n.dim());
            // the universal property gives the same map
            let h = couniversal_factor(&p, &p0.canonical_measuring).unwrap();
            assert_eq!(&h, &iota);
            comodule_truncation_inclusion(q0, &qn, &iota).unwrap();
        }
        prev = Some((p, qn));
    }
}

#[test]
fn unit_map_helper_is_an_algebra_map() {
    let f = f2();
    let k = ground_algebra(f);
    let b = dual_numbers(f);
    assert!(is_algebra_morphism(&k, &b, &unit_map(&k, &b)).unwrap());
}
