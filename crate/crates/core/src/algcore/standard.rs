//! Small named algebras and coalgebras used throughout the tests, the
//! corpus and the command line.

use crate::exactlin::{Field, Mat};

use super::{dual_coalgebra, Algebra, Coalgebra};

fn labels(prefix: &str, n: usize) -> Vec<String> {
    (0..n).map(|i| format!("{prefix}{i}")).collect()
}

fn basis_vec(field: Field, n: usize, i: usize) -> Mat {
    Mat::from_fn(field, n, 1, |r, _| {
        if r == i {
            field.one()
        } else {
            field.zero()
        }
    })
}

/// Algebra whose product of basis elements is a single basis element.
fn monomial_algebra(
    name: String,
    field: Field,
    labels: Vec<String>,
    unit_index: usize,
    table: impl Fn(usize, usize) -> Option<usize>,
) -> Algebra {
    let n = labels.len();
    let mut mult = Mat::zeros(field, n, n * n);
    for i in 0..n {
        for j in 0..n {
            if let Some(k) = table(i, j) {
                mult.set(k, i * n + j, field.one());
            }
        }
    }
    Algebra::new(name, field, labels, mult, basis_vec(field, n, unit_index))
        .expect("standard algebra")
}

pub fn ground_algebra(field: Field) -> Algebra {
    monomial_algebra("k".into(), field, vec!["1".into()], 0, |_, _| Some(0))
}

/// `k[x]/(x^n)` in the basis `1, x, …, x^{n-1}`.
pub fn truncated_polynomial(field: Field, n: usize) -> Algebra {
    assert!(n >= 1);
    let lab = (0..n)
        .map(|i| match i {
            0 => "1".to_string(),
            1 => "x".to_string(),
            _ => format!("x^{i}"),
        })
        .collect();
    monomial_algebra(format!("k[x]/(x^{n})"), field, lab, 0, |i, j| {
        (i + j < n).then_some(i + j)
    })
}

/// `k[x]/(x²)`.
pub fn dual_numbers(field: Field) -> Algebra {
    truncated_polynomial(field, 2).with_name("k[x]/(x^2)")
}

/// Group algebra of the cyclic group of order `n`, basis `g^0, …, g^{n-1}`.
pub fn cyclic_group_algebra(field: Field, n: usize) -> Algebra {
    let lab = (0..n).map(|i| format!("g{i}")).collect();
    monomial_algebra(format!("k[C{n}]"), field, lab, 0, |i, j| Some((i + j) % n))
}

/// Group algebra from a Cayley table `table[i][j] = index of g_i g_j`.
pub fn group_algebra(field: Field, name: &str, table: &[Vec<usize>], identity: usize) -> Algebra {
    let n = table.len();
    monomial_algebra(name.into(), field, labels("g", n), identity, |i, j| {
        Some(table[i][j])
    })
}

/// `M_n(k)` with matrix units `e_ij` at index `i*n+j`.
pub fn matrix_algebra(field: Field, n: usize) -> Algebra {
    let lab = (0..n)
        .flat_map(|i| (0..n).map(move |j| format!("e{i}{j}")))
        .collect();
    let mut unit = Mat::zeros(field, n * n, 1);
    for i in 0..n {
        unit.set(i * n + i, 0, field.one());
    }
    let mut mult = Mat::zeros(field, n * n, n * n * n * n);
    for i in 0..n {
        for j in 0..n {
            for l in 0..n {
                mult.set(i * n + l, (i * n + j) * n * n + (j * n + l), field.one());
            }
        }
    }
    Algebra::new(format!("M{n}(k)"), field, lab, mult, unit).expect("matrix algebra")
}

pub fn ground_coalgebra(field: Field) -> Coalgebra {
    grouplike_coalgebra(field, 1).with_name("k").with_labels(vec!["1".into()])
}

/// `k[S]` for a set of `n` grouplikes.
pub fn grouplike_coalgebra(field: Field, n: usize) -> Coalgebra {
    let mut comult = Mat::zeros(field, n * n, n);
    for i in 0..n {
        comult.set(i * n + i, i, field.one());
    }
    let counit = Mat::from_fn(field, 1, n, |_, _| field.one());
    Coalgebra::new(format!("k[{n} points]"), field, labels("g", n), comult, counit)
        .expect("grouplike coalgebra")
}

/// Divided powers `x^(0), …, x^(n)` with `Δx^(k) = Σ x^(i)⊗x^(k-i)`.
pub fn divided_power_coalgebra(field: Field, n: usize) -> Coalgebra {
    let d = n + 1;
    let mut comult = Mat::zeros(field, d * d, d);
    for k in 0..d {
        for i in 0..=k {
            comult.set(i * d + (k - i), k, field.one());
        }
    }
    let counit = Mat::from_fn(field, 1, d, |_, j| {
        if j == 0 {
            field.one()
        } else {
            field.zero()
        }
    });
    let lab = (0..d)
        .map(|k| match k {
            0 => "1".to_string(),
            1 => "x".to_string(),
            _ => format!("x({k})"),
        })
        .collect();
    Coalgebra::new(format!("D{n}"), field, lab, comult, counit).expect("divided powers")
}

/// `M_n(k)*` with `Δ(e_ij) = Σ_k e_ik ⊗ e_kj`, `ε(e_ij) = δ_ij`.
pub fn matrix_coalgebra(field: Field, n: usize) -> Coalgebra {
    let m = matrix_algebra(field, n);
    let lab = m.basis_labels().to_vec();
    dual_coalgebra(&m)
        .with_name(format!("M{n}(k)*"))
        .with_labels(lab)
}
