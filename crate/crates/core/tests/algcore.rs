use measuring_lab::algcore::standard::*;
use measuring_lab::algcore::*;
use measuring_lab::exactlin::{Field, Mat, Scalar};
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

#[test]
fn check_algebra_examples() {
    assert_eq!(ground_algebra(q()).dim(), 1);
    assert_eq!(dual_numbers(q()).dim(), 2);

    // e1·e1 = e2, everything else zero, unit e1
    let mut mult = Mat::zeros(q(), 2, 4);
    mult.set(1, 0, q().one());
    let raw = RawAlgebra {
        name: "bad".into(),
        field: q(),
        basis_labels: vec![],
        mult,
        unit: Mat::from_i64(q(), &[&[1], &[0]]),
    };
    assert!(matches!(check_algebra(raw), Err(AlgError::UnitFailure(_, 0))));
}

#[test]
fn associativity_failure_is_located() {
    // unit e0, e1·e1 = e0 + e1 fails nothing; use e1·e1 = e1, e1·e2 = e2, e2·e1 = 0, e2·e2 = e1
    let f = q();
    let mut mult = Mat::zeros(f, 3, 9);
    for i in 0..3 {
        mult.set(i, i, f.one());
        mult.set(i, i * 3, f.one());
    }
    mult.set(1, 4, f.one());
    mult.set(2, 5, f.one());
    mult.set(1, 8, f.one());
    let raw = RawAlgebra {
        name: "nonassoc".into(),
        field: f,
        basis_labels: vec![],
        mult,
        unit: Mat::from_i64(f, &[&[1], &[0], &[0]]),
    };
    assert!(matches!(
        check_algebra(raw),
        Err(AlgError::AssociativityFailure(_, _, _))
    ));
}

#[test]
fn check_coalgebra_examples() {
    assert_eq!(ground_coalgebra(q()).dim(), 1);
    let d = divided_power_coalgebra(q(), 1);
    assert_eq!(d.comult().col_vec(1), {
        let mut v = vec![q().zero(); 4];
        v[1] = q().one();
        v[2] = q().one();
        v
    });
    let m = matrix_coalgebra(q(), 2);
    // Δ(e01) = e00⊗e01 + e01⊗e11
    let col = m.comult().col_vec(1);
    let nz: Vec<usize> = (0..16).filter(|&r| !col[r].is_zero()).collect();
    assert_eq!(nz, vec![1, 7]);

    let raw = RawCoalgebra {
        name: "bad".into(),
        field: q(),
        basis_labels: vec![],
        comult: Mat::zeros(q(), 4, 2),
        counit: Mat::from_i64(q(), &[&[1, 0]]),
    };
    assert!(matches!(
        check_coalgebra(raw),
        Err(AlgError::CounitFailure(_, 0))
    ));
}

#[test]
fn dual_coalgebra_examples() {
    assert_eq!(
        dual_coalgebra(&ground_algebra(q())).comult(),
        ground_coalgebra(q()).comult()
    );
    let d = dual_coalgebra(&dual_numbers(q()));
    // Δ(1*) = 1*⊗1*, Δ(x*) = 1*⊗x* + x*⊗1*, ε = (1, 0)
    assert_eq!(
        d.comult(),
        &Mat::from_i64(q(), &[&[1, 0], &[0, 1], &[0, 1], &[0, 0]])
    );
    assert_eq!(d.counit(), &Mat::from_i64(q(), &[&[1, 0]]));
    // Δ(g*) = Σ_{hk=g} h*⊗k* for C₂ over 𝔽₂
    let g = dual_coalgebra(&cyclic_group_algebra(f2(), 2));
    assert_eq!(
        g.comult(),
        &Mat::from_i64(f2(), &[&[1, 0], &[0, 1], &[0, 1], &[1, 0]])
    );
}

#[test]
fn dual_algebra_examples() {
    assert_eq!(
        dual_algebra(&ground_coalgebra(q())).mult(),
        ground_algebra(q()).mult()
    );
    let m = dual_algebra(&matrix_coalgebra(q(), 2));
    assert_eq!(m.mult(), matrix_algebra(q(), 2).mult());
    assert_eq!(m.unit(), matrix_algebra(q(), 2).unit());
}

fn algebra_corpus() -> Vec<Algebra> {
    vec![
        ground_algebra(q()),
        dual_numbers(q()),
        dual_numbers(f2()),
        cyclic_group_algebra(f2(), 2),
        cyclic_group_algebra(f3(), 3),
        truncated_polynomial(q(), 3),
        matrix_algebra(q(), 2),
    ]
}

fn coalgebra_corpus() -> Vec<Coalgebra> {
    vec![
        ground_coalgebra(q()),
        divided_power_coalgebra(q(), 1),
        divided_power_coalgebra(q(), 2),
        matrix_coalgebra(q(), 2),
        grouplike_coalgebra(q(), 2),
        grouplike_coalgebra(f2(), 2),
        dual_coalgebra(&cyclic_group_algebra(f3(), 3)),
    ]
}

#[test]
fn double_dual_is_identity() {
    for a in algebra_corpus() {
        let aa = dual_algebra(&dual_coalgebra(&a));
        assert_eq!(aa.mult(), a.mult());
        assert_eq!(aa.unit(), a.unit());
    }
    for c in coalgebra_corpus() {
        let cc = dual_coalgebra(&dual_algebra(&c));
        assert_eq!(cc.comult(), c.comult());
        assert_eq!(cc.counit(), c.counit());
    }
}

#[test]
fn convolution_examples() {
    let a = dual_numbers(q());
    let ka = convolution_algebra(&ground_coalgebra(q()), &a).unwrap();
    assert_eq!(ka.mult(), a.mult());
    assert_eq!(ka.unit(), a.unit());

    let c = matrix_coalgebra(q(), 2);
    let ck = convolution_algebra(&c, &ground_algebra(q())).unwrap();
    assert_eq!(ck.mult(), dual_algebra(&c).mult());

    let big = convolution_algebra(&c, &a).unwrap();
    assert_eq!(big.dim(), 8);
    assert!(convolution_algebra(&c, &dual_numbers(f2())).is_err());
}

#[test]
fn convolution_product_oracle() {
    // (f * g)(c) = Σ f(c₁) g(c₂), evaluated on explicit maps.
    let c = divided_power_coalgebra(q(), 2);
    let a = truncated_polynomial(q(), 2);
    let conv = convolution_algebra(&c, &a).unwrap();
    let fq = q();
    let f: Vec<Scalar> = [1, 2, 0, -1, 3, 1].iter().map(|&v| fq.from_i64(v)).collect();
    let g: Vec<Scalar> = [0, 1, 1, 1, -2, 5].iter().map(|&v| fq.from_i64(v)).collect();
    let fg = conv.multiply(&f, &g);
    let (dc, da) = (3, 2);
    for s in 0..dc {
        let mut want = vec![fq.zero(); da];
        for i in 0..dc {
            for k in 0..dc {
                let coef = c.comult().get(i * dc + k, s).clone();
                if coef.is_zero() {
                    continue;
                }
                let fi: Vec<Scalar> = (0..da).map(|t| f[i * da + t].clone()).collect();
                let gk: Vec<Scalar> = (0..da).map(|t| g[k * da + t].clone()).collect();
                let prod = a.multiply(&fi, &gk);
                for t in 0..da {
                    want[t] = fq.add(&want[t], &fq.mul(&coef, &prod[t]));
                }
            }
        }
        for t in 0..da {
            assert_eq!(fg[s * da + t], want[t]);
        }
    }
}

#[test]
fn currying_is_an_algebra_isomorphism() {
    let cs = [
        ground_coalgebra(q()),
        divided_power_coalgebra(q(), 1),
        grouplike_coalgebra(q(), 2),
    ];
    let a = dual_numbers(q());
    for c in &cs {
        for d in &cs {
            if c.dim() * d.dim() > 3 {
                continue;
            }
            let whole = convolution_algebra(&tensor_coalgebras(c, d).unwrap(), &a).unwrap();
            let nested = convolution_algebra(c, &convolution_algebra(d, &a).unwrap()).unwrap();
            let id = Mat::identity(q(), whole.dim());
            assert!(is_algebra_morphism(&whole, &nested, &id).unwrap());
            assert!(is_algebra_morphism(&nested, &whole, &id).unwrap());
        }
    }
}

#[test]
fn tensor_examples() {
    let a = dual_numbers(q());
    let k = ground_algebra(q());
    let ak = tensor_algebras(&a, &k).unwrap();
    assert_eq!(ak.mult(), a.mult());
    assert_eq!(tensor_algebras(&k, &k).unwrap().mult(), k.mult());

    let c2 = cyclic_group_algebra(f2(), 2);
    let klein = tensor_algebras(&c2, &c2).unwrap();
    let table: Vec<Vec<usize>> = (0..4)
        .map(|i| (0..4).map(|j| ((i >> 1) ^ (j >> 1)) << 1 | ((i ^ j) & 1)).collect())
        .collect();
    let expect = group_algebra(f2(), "C2xC2", &table, 0);
    assert_eq!(klein.mult(), expect.mult());
    assert_eq!(klein.unit(), expect.unit());

    let kc = ground_coalgebra(q());
    let c = matrix_coalgebra(q(), 2);
    assert_eq!(tensor_coalgebras(&c, &kc).unwrap().comult(), c.comult());
}

#[test]
fn morphism_examples() {
    let a = dual_numbers(q());
    let k = ground_algebra(q());
    assert!(is_algebra_morphism(&a, &a, &Mat::identity(q(), 2)).unwrap());
    assert_eq!(
        algebra_morphism_violation(&a, &k, &Mat::zeros(q(), 1, 2)).unwrap(),
        Some(Violation::Unital { coord: 0 })
    );
    assert!(is_algebra_morphism(&a, &k, &Mat::from_i64(q(), &[&[1, 0]])).unwrap());
    assert!(!is_algebra_morphism(&a, &k, &Mat::from_i64(q(), &[&[1, 1]])).unwrap());
    assert!(is_algebra_morphism(&a, &k, &Mat::zeros(q(), 2, 2)).is_err());

    let c = matrix_coalgebra(q(), 2);
    assert!(is_coalgebra_morphism(&c, &c, &Mat::identity(q(), 4)).unwrap());
    assert!(is_coalgebra_morphism(&c, &ground_coalgebra(q()), c.counit()).unwrap());
}

#[test]
fn constructors_self_validate() {
    for a in algebra_corpus() {
        for b in algebra_corpus() {
            if a.field() == b.field() && a.dim() * b.dim() <= 9 {
                tensor_algebras(&a, &b).unwrap();
            }
        }
        dual_coalgebra(&a);
    }
    for c in coalgebra_corpus() {
        for a in algebra_corpus() {
            if a.field() == c.field() && a.dim() * c.dim() <= 9 {
                convolution_algebra(&c, &a).unwrap();
            }
        }
        dual_algebra(&c);
    }
}

fn multiply_oracle(a: &Algebra, b: &Algebra, f: &Mat) -> bool {
    let fl = a.field();
    let d = a.dim();
    let image = |v: Vec<Scalar>| f.mul(&Mat::column(fl, v)).col_vec(0);
    let e = |i: usize| (0..d).map(|r| if r == i { fl.one() } else { fl.zero() }).collect::<Vec<_>>();
    for i in 0..d {
        for j in 0..d {
            let lhs = image(a.multiply(&e(i), &e(j)));
            let rhs = b.multiply(&image(e(i)), &image(e(j)));
            if lhs != rhs {
                return false;
            }
        }
    }
    image(a.unit_vec()) == b.unit_vec()
}

proptest! {
    #[test]
    fn morphism_check_matches_elementwise_oracle(
        ai in 0usize..3, bi in 0usize..3, bits in prop::collection::vec(0i64..2, 4)
    ) {
        let algs = [ground_algebra(f2()), dual_numbers(f2()), cyclic_group_algebra(f2(), 2)];
        let (a, b) = (&algs[ai], &algs[bi]);
        let f = Mat::from_fn(f2(), b.dim(), a.dim(), |i, j| f2().from_i64(bits[i * 2 + j]));
        prop_assert_eq!(is_algebra_morphism(a, b, &f).unwrap(), multiply_oracle(a, b, &f));
    }
}
