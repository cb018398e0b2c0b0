use measuring_lab::algcore::standard::*;
use measuring_lab::algcore::*;
use measuring_lab::exactlin::{Field, Mat, Scalar};
use measuring_lab::hopf::*;
use measuring_lab::measuring::*;
use measuring_lab::modcomod::{tensor_modules, Comodule, Module};
use proptest::prelude::*;

fn f2() -> Field {
    Field::prime(2).unwrap()
}

fn f3() -> Field {
    Field::prime(3).unwrap()
}

fn opts(n: usize) -> TruncationOptions {
    TruncationOptions::degree(n)
}

fn c2() -> Bimonoid {
    cyclic_group_bimonoid(f2(), 2)
}

fn basis(f: Field, d: usize, i: usize) -> Vec<Scalar> {
    (0..d).map(|j| if j == i { f.one() } else { f.zero() }).collect()
}

fn failed_diagram<T: std::fmt::Debug>(r: Result<T, HopfError>) -> (String, Vec<usize>) {
    match r {
        Err(HopfError::DiagramFailure { diagram, indices }) => (diagram, indices),
        other => panic!("expected a diagram failure, got {other:?}"),
    }
}

/// `Δ(xy) = Δ(x)Δ(y)` and `ε(xy) = ε(x)ε(y)` on basis pairs, multiplying in
/// `H⊗H` componentwise.
fn bimonoid_oracle(h: &Bimonoid) -> bool {
    let (a, c) = (h.algebra(), h.coalgebra());
    let f = h.field();
    let d = h.dim();
    let delta = |v: &[Scalar]| c.comult().mul(&Mat::column(f, v.to_vec())).col_vec(0);
    let eps = |v: &[Scalar]| c.counit().mul(&Mat::column(f, v.to_vec())).col_vec(0)[0].clone();
    for i in 0..d {
        for j in 0..d {
            let (x, y) = (basis(f, d, i), basis(f, d, j));
            let (dx, dy) = (delta(&x), delta(&y));
            let mut prod = vec![f.zero(); d * d];
            for p in 0..d * d {
                for q in 0..d * d {
                    let s = f.mul(&dx[p], &dy[q]);
                    if s.is_zero() {
                        continue;
                    }
                    let left = a.multiply(&basis(f, d, p / d), &basis(f, d, q / d));
                    let right = a.multiply(&basis(f, d, p % d), &basis(f, d, q % d));
                    for l in 0..d {
                        for r in 0..d {
                            let t = f.mul(&s, &f.mul(&left[l], &right[r]));
                            prod[l * d + r] = f.add(&prod[l * d + r], &t);
                        }
                    }
                }
            }
            let xy = a.multiply(&x, &y);
            if delta(&xy) != prod || eps(&xy) != f.mul(&eps(&x), &eps(&y)) {
                return false;
            }
        }
    }
    true
}

fn idempotent_count(a: &Algebra) -> usize {
    let f = a.field();
    let elems = f.elements().unwrap();
    let d = a.dim();
    let mut count = 0;
    for code in 0..elems.len().pow(d as u32) {
        let mut c = code;
        let v: Vec<Scalar> = (0..d)
            .map(|_| {
                let s = elems[c % elems.len()].clone();
                c /= elems.len();
                s
            })
            .collect();
        if a.multiply(&v, &v) == v {
            count += 1;
        }
    }
    count
}

// ---------------------------------------------------------------- checkers

#[test]
fn ground_structures_are_trivial() {
    for f in [Field::Rationals, f2(), f3()] {
        let k = Bimonoid::ground(f);
        assert_eq!(k.dim(), 1);
        check_bimonoid(k.algebra().clone(), k.coalgebra().clone()).unwrap();
        let x = HopfModule::regular(&k);
        assert_eq!(x.dim(), 1);
        ModuleMonoid::ground(f);
        assert_eq!(ModuleMonoid::regular(k.algebra()).unwrap(), ModuleMonoid::ground(f));
    }
}

#[test]
fn group_algebra_regular_structures_pass() {
    let h = c2();
    assert!(bimonoid_oracle(&h));
    let m = ModuleComonoid::regular(&h);
    check_module_comonoid(h.clone(), m.module().clone(), m.coalgebra().clone()).unwrap();
    let s = ComoduleMonoid::regular(&h);
    check_comodule_monoid(h.clone(), s.algebra().clone(), s.comodule().clone()).unwrap();
    let x = HopfModule::regular(&h);
    check_hopf_module(s, m, x.action().clone(), x.coaction().clone()).unwrap();
    ModuleMonoid::regular(h.algebra()).unwrap();

    let c3 = cyclic_group_bimonoid(f3(), 3);
    assert!(bimonoid_oracle(&c3));
    HopfModule::regular(&c3);
}

#[test]
fn broken_structures_name_their_diagram() {
    let f = f2();
    // x ↦ x⊗x on the dual numbers is multiplicative but ε(x²) ≠ ε(x)².
    let (name, idx) = failed_diagram(check_bimonoid(dual_numbers(f), grouplike_coalgebra(f, 2)));
    assert_eq!(name, "bimonoid: ε multiplicative");
    assert_eq!(idx, vec![1, 1]);

    let h = c2();
    let (name, _) = failed_diagram(check_module_comonoid(
        h.clone(),
        Module::regular(h.algebra()),
        divided_power_coalgebra(f, 1),
    ));
    assert_eq!(name, "module comonoid: δ_M ∘ ν");

    let g = basis(f, 2, 1);
    let shifted = Comodule::at_grouplike(h.coalgebra(), &g, 2).unwrap();
    let (name, _) = failed_diagram(check_comodule_monoid(h.clone(), h.algebra().clone(), shifted));
    assert_eq!(name, "comodule monoid: χ_S ∘ μ_S");

    // a one-dimensional Hopf module over a two-dimensional H cannot exist
    let counit = h.coalgebra().counit().clone();
    for i in 0..2 {
        let action = Module::scalar(h.algebra(), &counit, 1).unwrap();
        let coaction = Comodule::at_grouplike(h.coalgebra(), &basis(f, 2, i), 1).unwrap();
        let (name, _) = failed_diagram(check_hopf_module(
            ComoduleMonoid::regular(&h),
            ModuleComonoid::regular(&h),
            action,
            coaction,
        ));
        assert_eq!(name, "Hopf module: χ_N ∘ ν_N");
    }

    let (name, _) = failed_diagram(ModuleMonoid::regular(&matrix_algebra(f, 2)));
    assert_eq!(name, "module monoid: A commutative");
}

#[test]
fn mismatched_bases_are_rejected() {
    let h = c2();
    let k = Bimonoid::ground(f2());
    let r = check_module_comonoid(k, Module::regular(h.algebra()), h.coalgebra().clone());
    assert!(matches!(r, Err(HopfError::BaseMismatch(_))));
    let r = check_hopf_module(
        ComoduleMonoid::regular(&h),
        ModuleComonoid::regular(&h),
        Module::regular(&dual_numbers(f2())),
        Comodule::regular(h.coalgebra()),
    );
    assert!(matches!(r, Err(HopfError::BaseMismatch(_))));
}

#[test]
fn dual_bimonoids_transpose_the_structure() {
    let c2 = c2();
    let hs = vec![
        c2.clone(),
        cyclic_group_bimonoid(f3(), 3),
        tensor_bimonoids(&c2, &c2).unwrap(),
        Bimonoid::ground(Field::Rationals),
    ];
    for h in &hs {
        let d = dual_bimonoid(h).unwrap();
        assert!(bimonoid_oracle(&d));
        assert_eq!(d.algebra().mult(), &h.coalgebra().comult().transpose());
        assert_eq!(d.algebra().unit(), &h.coalgebra().counit().transpose());
        assert_eq!(d.coalgebra().comult(), &h.algebra().mult().transpose());
        assert_eq!(d.coalgebra().counit(), &h.algebra().unit().transpose());
        let dd = dual_bimonoid(&d).unwrap();
        assert_eq!(dd.algebra(), h.algebra());
        assert_eq!(dd.coalgebra(), h.coalgebra());
    }
    // finite_dual on the algebra part is the coalgebra part of the dual
    let t = tensor_bimonoids(&c2, &c2).unwrap();
    let (fd, _) = finite_dual(t.algebra());
    check_bimonoid(dual_algebra(t.coalgebra()), fd).unwrap();
}

// ---------------------------------------------------------------- χ

fn small_objects(f: Field) -> (Vec<Comodule>, Vec<Module>) {
    let comods = vec![
        Comodule::regular(&ground_coalgebra(f)),
        Comodule::regular(&grouplike_coalgebra(f, 2)),
        Comodule::regular(&divided_power_coalgebra(f, 1)),
        Comodule::at_grouplike(&grouplike_coalgebra(f, 2), &basis(f, 2, 1), 2).unwrap(),
    ];
    let mods = vec![
        Module::regular(&ground_algebra(f)),
        Module::regular(&dual_numbers(f)),
        Module::regular(&cyclic_group_algebra(f, 2)),
        Module::scalar(&dual_numbers(f), &Mat::from_i64(f, &[&[1, 0]]), 2).unwrap(),
    ];
    (comods, mods)
}

#[test]
fn chi_on_trivial_arguments_is_the_identity() {
    let f = f2();
    let x = Comodule::regular(&ground_coalgebra(f));
    let m = Module::regular(&ground_algebra(f));
    let chi = chi_map(&x, &x, &m, &m).unwrap();
    assert!(chi.p.is_identity());
    assert!(chi.f.matrix().is_identity());
    let u = chi_unit(f).unwrap();
    assert!(u.p.is_identity() && u.check().unwrap());
}

#[test]
fn chi_sends_pairs_of_maps_to_their_tensor() {
    let f = f2();
    let x = Comodule::regular(&grouplike_coalgebra(f, 2));
    let y = Comodule::regular(&divided_power_coalgebra(f, 1));
    let m = Module::regular(&dual_numbers(f));
    let n = Module::regular(&cyclic_group_algebra(f, 2));
    let chi = chi_map(&x, &y, &m, &n).unwrap();
    assert!(chi.check().unwrap());
    let (dy, dm, dn) = (2, 2, 2);
    for (x1, m1, y1, n1) in (0..16).map(|c| (c & 1, (c >> 1) & 1, (c >> 2) & 1, (c >> 3) & 1)) {
        let src = (x1 * dm + m1) * (dy * dn) + y1 * dn + n1;
        let tgt = (x1 * dy + y1) * (dm * dn) + m1 * dn + n1;
        for r in 0..16 {
            assert_eq!(chi.p.get(r, src).is_one(), r == tgt);
        }
    }
}

#[test]
fn chi_diagrams_hold_on_all_small_quadruples() {
    let f = f2();
    let (comods, mods) = small_objects(f);
    for x in &comods {
        for y in &comods {
            for m in &mods {
                for n in &mods {
                    let chi = chi_map(x, y, m, n).unwrap();
                    assert!(chi.check().unwrap());
                }
            }
        }
    }
    for code in 0..16 {
        let d: Vec<usize> = (0..4).map(|i| 1 + ((code >> i) & 1)).collect();
        chi_braiding_check(f, d[0], d[1], d[2], d[3]).unwrap();
    }
}

fn f2_matrix(rows: usize, cols: usize, bits: u32) -> Mat {
    let f = f2();
    let mut m = Mat::zeros(f, rows, cols);
    for i in 0..rows {
        for j in 0..cols {
            if bits >> (i * cols + j) & 1 == 1 {
                m.set(i, j, f.one());
            }
        }
    }
    m
}

proptest! {
    #[test]
    fn chi_is_natural(
        objs in proptest::collection::vec(0usize..4, 8),
        bits in proptest::collection::vec(any::<u32>(), 4),
    ) {
        let f = f2();
        let (comods, mods) = small_objects(f);
        let (x, y, m, n) = (&comods[objs[0]], &comods[objs[1]], &mods[objs[2]], &mods[objs[3]]);
        let (x2, y2, m2, n2) = (&comods[objs[4]], &comods[objs[5]], &mods[objs[6]], &mods[objs[7]]);
        let chi = chi_map(x, y, m, n).unwrap();
        let chi2 = chi_map(x2, y2, m2, n2).unwrap();
        // s: X2 → X, t: Y2 → Y, u: M → M2, v: N → N2
        let s = f2_matrix(x.dim(), x2.dim(), bits[0]);
        let t = f2_matrix(y.dim(), y2.dim(), bits[1]);
        let u = f2_matrix(m2.dim(), m.dim(), bits[2]);
        let v = f2_matrix(n2.dim(), n.dim(), bits[3]);
        let lhs = chi2.p.mul(&hom_map(&s, &u).kron(&hom_map(&t, &v)));
        let rhs = hom_map(&s.kron(&t), &u.kron(&v)).mul(&chi.p);
        prop_assert_eq!(lhs, rhs);
    }
}

// ---------------------------------------------------------------- lax structure

#[test]
fn lax_unit_and_trivial_structure_are_identities() {
    let f = f2();
    let k = ground_algebra(f);
    let kmod = Module::regular(&k);
    let p = measuring_comonoid_truncated(&k, &k, &opts(1)).unwrap();
    let q0 = measuring_comodule_truncated(&kmod, &kmod, &p).unwrap();
    assert_eq!(q0.q_n.dim(), 1);
    let unit = q_lax_unit(&q0).unwrap();
    assert!(unit.k.is_identity() && unit.check().unwrap());
    let lax = q_lax_structure(&q0, &q0, &q0).unwrap();
    assert!(lax.k.is_identity());
}

#[test]
fn lax_structure_with_the_unit_is_an_isomorphism() {
    let f = f2();
    let a = dual_numbers(f);
    let k = ground_algebra(f);
    let kmod = Module::regular(&k);
    let pa = measuring_comonoid_truncated(&a, &k, &opts(2)).unwrap();
    let qa = measuring_comodule_truncated(&Module::regular(&a), &kmod, &pa).unwrap();
    let pk = measuring_comonoid_truncated(&k, &k, &opts(2)).unwrap();
    let qk = measuring_comodule_truncated(&kmod, &kmod, &pk).unwrap();
    let p12 = measuring_comonoid_truncated(&tensor_algebras(&a, &k).unwrap(), &tensor_algebras(&k, &k).unwrap(), &opts(2))
        .unwrap();
    let m12 = tensor_modules(&Module::regular(&a), &kmod).unwrap();
    let q12 = measuring_comodule_truncated(&m12, &tensor_modules(&kmod, &kmod).unwrap(), &p12).unwrap();
    let lax = q_lax_structure(&qa, &qk, &q12).unwrap();
    assert!(lax.check().unwrap());
    assert!(lax.k.is_invertible());
    assert_eq!(q12.canonical.rho.mul(&lax.k), qa.canonical.rho);
}

#[test]
fn lax_structure_on_dual_numbers_is_coherent() {
    let f = f2();
    let a = dual_numbers(f);
    let k = ground_algebra(f);
    let (am, km) = (Module::regular(&a), Module::regular(&k));
    let deg = 3;
    let q_of = |m: &Module, n: &Module| {
        let p = measuring_comonoid_truncated(m.over(), n.over(), &opts(deg)).unwrap();
        measuring_comodule_truncated(m, n, &p).unwrap()
    };
    let am2 = tensor_modules(&am, &am).unwrap();
    let km2 = tensor_modules(&km, &km).unwrap();
    let am3 = tensor_modules(&am2, &am).unwrap();
    let km3 = tensor_modules(&km2, &km).unwrap();
    let q1 = q_of(&am, &km);
    let q2 = q_of(&am2, &km2);
    let q3 = q_of(&am3, &km3);

    let lax = q_lax_structure(&q1, &q1, &q2).unwrap();
    assert!(lax.check().unwrap());
    let t = tensor_module_measurings(&q1.canonical, &q1.canonical).unwrap();
    assert!(verify_module_measuring(&t).unwrap());
    assert_eq!(q2.canonical.rho.mul(&lax.k), t.rho);

    // (Q⊗Q)⊗Q → Q(A²)⊗Q → Q(A³) against Q⊗(Q⊗Q) → Q⊗Q(A²) → Q(A³)
    let left = q_lax_structure(&q2, &q1, &q3).unwrap();
    let right = q_lax_structure(&q1, &q2, &q3).unwrap();
    let d1 = q1.q_n.dim();
    let via_left = left.k.kron_precompose(Some(&lax.k), None, d1 * d1, d1);
    let via_right = right.k.kron_precompose(None, Some(&lax.k), d1, d1 * d1);
    assert_eq!(via_left, via_right);
}

// ---------------------------------------------------------------- Q(M, N) as a comodule monoid

#[test]
fn qmn_over_the_ground_field_is_trivial() {
    let f = f3();
    let k = Bimonoid::ground(f);
    let m = ModuleComonoid::regular(&k);
    let n = ModuleMonoid::ground(f);
    let t = qmn_truncations(&m, &n, &opts(1)).unwrap();
    let s = qmn_comodule_monoid(&m, &n, &t).unwrap();
    assert_eq!(s.monoid.algebra().dim(), 1);
    assert!(s.monoid.algebra().mult().is_identity());
    assert_eq!(s.bimonoid.dim(), 1);
}

#[test]
fn qmn_for_the_group_algebra_is_functions_on_the_group() {
    let h = c2();
    let m = ModuleComonoid::regular(&h);
    let n = ModuleMonoid::ground(f2());
    let t = qmn_truncations(&m, &n, &opts(2)).unwrap();
    let s = qmn_comodule_monoid(&m, &n, &t).unwrap();
    let q = s.monoid.algebra();
    assert_eq!(q.dim(), 2);
    assert!(q.is_commutative());
    // 𝔽₂ × 𝔽₂ has four idempotents, 𝔽₂[C₂] only two
    assert_eq!(idempotent_count(q), 4);
    assert_eq!(idempotent_count(h.algebra()), 2);
    assert_eq!(idempotent_count(s.bimonoid.algebra()), 4);
    assert!(bimonoid_oracle(&s.bimonoid));
    check_comodule_monoid(s.bimonoid.clone(), q.clone(), s.monoid.comodule().clone()).unwrap();
}

#[test]
fn qmn_is_stable_under_raising_the_degree() {
    let h = c2();
    let m = ModuleComonoid::regular(&h);
    let n = ModuleMonoid::ground(f2());
    let t2 = qmn_truncations(&m, &n, &opts(2)).unwrap();
    let t3 = qmn_truncations(&m, &n, &opts(3)).unwrap();
    let s2 = qmn_comodule_monoid(&m, &n, &t2).unwrap();
    let s3 = qmn_comodule_monoid(&m, &n, &t3).unwrap();
    let iota = truncation_inclusion(&t2.q.p, &t3.q.p).unwrap();
    let iq = comodule_truncation_inclusion(&t2.q, &t3.q, &iota).unwrap();
    let (a2, a3) = (s2.monoid.algebra(), s3.monoid.algebra());
    assert_eq!(iq.k.mul(a2.mult()), a3.mult().mul(&iq.k.kron(&iq.k)));
    assert_eq!(iq.k.mul(a2.unit()), a3.unit().clone());
    let (b2, b3) = (s2.bimonoid.algebra(), s3.bimonoid.algebra());
    assert_eq!(iota.matrix().mul(b2.mult()), b3.mult().mul(&iota.matrix().kron(iota.matrix())));
}

#[test]
fn qmn_needs_enough_degree() {
    let h = c2();
    let m = ModuleComonoid::regular(&h);
    let n = ModuleMonoid::ground(f2());
    let t = qmn_truncations(&m, &n, &opts(1)).unwrap();
    let r = qmn_comodule_monoid(&m, &n, &t);
    assert!(
        matches!(r, Err(HopfError::Meas(MeasError::TruncationInsufficient { .. }))),
        "{r:?}"
    );
}

// ---------------------------------------------------------------- the lift to Hopf modules

#[test]
fn lift_over_the_ground_field() {
    let x = HopfModule::regular(&Bimonoid::ground(f2()));
    let t = hopf_lift_truncations(&x, &opts(1), true).unwrap();
    let lift = hopf_lift_check(&x, &t).unwrap();
    assert!(lift.lax_route_checked);
    assert_eq!(lift.lifted.dim(), 1);
    assert!(lift.to_p.matrix().is_identity());
}

/// `to_q` intertwines the regular `H°`-module with the lifted action.
fn lifted_is_regular(lift: &HopfLift) {
    let d = lift.dual.dim();
    let nu = lift.lifted.action().action();
    let reg = lift.dual.algebra().mult();
    let q = &lift.to_q.k;
    assert_eq!(q.mul(reg), nu.mul(&Mat::identity(nu.field(), d).kron(q)));
    let co = lift.lifted.coaction().coaction();
    assert_eq!(co.mul(q), lift.dual.coalgebra().comult().kron_apply(None, Some(q), d, d));
}

#[test]
fn lift_of_the_group_algebra_is_its_dual() {
    let h = c2();
    let x = HopfModule::regular(&h);
    let t = hopf_lift_truncations(&x, &opts(2), true).unwrap();
    let lift = hopf_lift_check(&x, &t).unwrap();
    assert!(lift.lax_route_checked);
    assert_eq!(lift.lifted.dim(), 2);
    assert!(lift.to_p.matrix().is_invertible());
    assert_eq!(idempotent_count(lift.dual.algebra()), 4);
    lifted_is_regular(&lift);
}

#[test]
fn lift_of_a_four_dimensional_group_algebra() {
    let h = tensor_bimonoids(&c2(), &c2()).unwrap();
    let x = HopfModule::regular(&h);
    let t = hopf_lift_truncations(&x, &opts(4), false).unwrap();
    let lift = hopf_lift_check(&x, &t).unwrap();
    assert!(!lift.lax_route_checked);
    assert_eq!(lift.lifted.dim(), 4);
    assert_eq!(idempotent_count(lift.dual.algebra()), 16);
    lifted_is_regular(&lift);
}

#[test]
fn lift_does_not_depend_on_construction_order() {
    let h = c2();
    let x = HopfModule::regular(&h);
    let t = hopf_lift_truncations(&x, &opts(2), false).unwrap();
    let lift = hopf_lift_check(&x, &t).unwrap();

    // coaction first, then action
    let co = lift_comodule_structure(&t.q_x, &lift.to_p).unwrap();
    let (act, _) = lift_module_structure(&t.q_h, &t.q_x, &x, &lift.to_q, &lift.dual).unwrap();
    // action first, then coaction
    let (act2, _) = lift_module_structure(&t.q_h, &t.q_x, &x, &lift.to_q, &lift.dual).unwrap();
    let co2 = lift_comodule_structure(&t.q_x, &lift.to_p).unwrap();
    assert_eq!(co, co2);
    assert_eq!(act, act2);
    assert_eq!(&act, lift.lifted.action());
    assert_eq!(&co, lift.lifted.coaction());

    // computing Q_n(X, k) before Q_n(H, k)
    let k = ground_algebra(f2());
    let kmod = Module::regular(&k);
    let p = measuring_comonoid_truncated(h.algebra(), &k, &opts(2)).unwrap();
    let q_x = measuring_comodule_truncated(x.action(), &kmod, &p).unwrap();
    let q_h = measuring_comodule_truncated(ModuleComonoid::regular(&h).module(), &kmod, &p).unwrap();
    let swapped = HopfLiftTruncations { q_h, q_x, q_hx: None };
    let lift2 = hopf_lift_check(&x, &swapped).unwrap();
    assert_eq!(lift2.lifted, lift.lifted);
    assert_eq!(lift2.action, lift.action);
}

#[test]
fn lift_rejects_non_regular_hopf_modules_and_short_truncations() {
    let h = c2();
    let x = HopfModule::regular(&h);
    let k = HopfModule::regular(&Bimonoid::ground(f2()));
    let tk = hopf_lift_truncations(&k, &opts(1), false).unwrap();
    assert!(matches!(hopf_lift_check(&x, &tk), Err(HopfError::BaseMismatch(_))));
    let short = hopf_lift_truncations(&x, &opts(1), false).unwrap();
    let r = hopf_lift_check(&x, &short);
    assert!(
        matches!(r, Err(HopfError::Meas(MeasError::TruncationInsufficient { .. }))),
        "{r:?}"
    );
}
