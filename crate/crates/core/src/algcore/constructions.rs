use crate::exactlin::{tensor, Field, Mat};

use super::sparse::sparse_cols;
use super::{AlgError, Algebra, AlgebraMorphism, Coalgebra, CoalgebraMorphism};

fn same_field(a: Field, b: Field) -> Result<Field, AlgError> {
    if a != b {
        return Err(AlgError::FieldMismatch);
    }
    Ok(a)
}

fn star_labels(labels: &[String]) -> Vec<String> {
    labels.iter().map(|l| format!("{l}*")).collect()
}

/// `A*` with `Δ = mᵀ` and `ε = ηᵀ`.
pub fn dual_coalgebra(a: &Algebra) -> Coalgebra {
    Coalgebra::new(
        format!("{}*", a.name()),
        a.field(),
        star_labels(a.basis_labels()),
        a.mult().transpose(),
        a.unit().transpose(),
    )
    .expect("dual of a valid algebra is a coalgebra")
}

/// `C*` with the convolution product `f·g = (f⊗g)∘Δ` and unit `ε`.
pub fn dual_algebra(c: &Coalgebra) -> Algebra {
    Algebra::new(
        format!("{}*", c.name()),
        c.field(),
        star_labels(c.basis_labels()),
        c.comult().transpose(),
        c.counit().transpose(),
    )
    .expect("dual of a valid coalgebra is an algebra")
}

/// `[C, A]` on `Hom(C, A)`; basis `e_ij : c_i ↦ a_j` has index `i*dim(A)+j`.
pub fn convolution_algebra(c: &Coalgebra, a: &Algebra) -> Result<Algebra, AlgError> {
    let f = same_field(c.field(), a.field())?;
    let (dc, da) = (c.dim(), a.dim());
    let n = dc * da;
    let mut mult = Mat::zeros(f, n, n * n);
    let dcols = sparse_cols(c.comult());
    let mcols = sparse_cols(a.mult());
    // (e_ij * e_kl)(c_s) = Δ[(i,k), s] · a_j a_l
    for (s, dcol) in dcols.iter().enumerate() {
        for (ik, dv) in dcol {
            let (i, k) = (ik / dc, ik % dc);
            for j in 0..da {
                for l in 0..da {
                    let col = (i * da + j) * n + (k * da + l);
                    for (t, mv) in &mcols[j * da + l] {
                        mult.add_at(s * da + t, col, &f.mul(dv, mv));
                    }
                }
            }
        }
    }
    let unit = tensor(&c.counit().transpose(), a.unit()).expect("same field");
    let labels = c
        .basis_labels()
        .iter()
        .flat_map(|cl| {
            a.basis_labels()
                .iter()
                .map(move |al| format!("[{cl}->{al}]"))
        })
        .collect();
    Algebra::new(format!("[{},{}]", c.name(), a.name()), f, labels, mult, unit)
}

fn pair_labels(l: &[String], r: &[String]) -> Vec<String> {
    l.iter()
        .flat_map(|a| r.iter().map(move |b| format!("{a}⊗{b}")))
        .collect()
}

/// `A ⊗ B` with `(a⊗b)(a'⊗b') = aa' ⊗ bb'`.
pub fn tensor_algebras(a: &Algebra, b: &Algebra) -> Result<Algebra, AlgError> {
    let f = same_field(a.field(), b.field())?;
    let (da, db) = (a.dim(), b.dim());
    let n = da * db;
    let mut mult = Mat::zeros(f, n, n * n);
    let ac = sparse_cols(a.mult());
    let bc = sparse_cols(b.mult());
    for i in 0..da {
        for k in 0..da {
            for j in 0..db {
                for l in 0..db {
                    let col = (i * db + j) * n + (k * db + l);
                    for (s, x) in &ac[i * da + k] {
                        for (t, y) in &bc[j * db + l] {
                            mult.add_at(s * db + t, col, &f.mul(x, y));
                        }
                    }
                }
            }
        }
    }
    let unit = tensor(a.unit(), b.unit()).expect("same field");
    Algebra::new(
        format!("{}⊗{}", a.name(), b.name()),
        f,
        pair_labels(a.basis_labels(), b.basis_labels()),
        mult,
        unit,
    )
}

/// `C ⊗ D` with `Δ(c⊗d) = Σ (c₁⊗d₁) ⊗ (c₂⊗d₂)`.
pub fn tensor_coalgebras(c: &Coalgebra, d: &Coalgebra) -> Result<Coalgebra, AlgError> {
    let f = same_field(c.field(), d.field())?;
    let (dc, dd) = (c.dim(), d.dim());
    let n = dc * dd;
    let mut comult = Mat::zeros(f, n * n, n);
    let cc = sparse_cols(c.comult());
    let dcs = sparse_cols(d.comult());
    for i in 0..dc {
        for j in 0..dd {
            for (xu, v) in &cc[i] {
                let (x, u) = (xu / dc, xu % dc);
                for (yw, w) in &dcs[j] {
                    let (y, z) = (yw / dd, yw % dd);
                    let row = (x * dd + y) * n + (u * dd + z);
                    comult.add_at(row, i * dd + j, &f.mul(v, w));
                }
            }
        }
    }
    let counit = tensor(c.counit(), d.counit()).expect("same field");
    Coalgebra::new(
        format!("{}⊗{}", c.name(), d.name()),
        f,
        pair_labels(c.basis_labels(), d.basis_labels()),
        comult,
        counit,
    )
}

/// Matrix of `h ↦ post ∘ h ∘ pre` from `Hom(U, W)` to `Hom(U', W')`, where
/// `pre: U' → U` and `post: W → W'`. Equal to `preᵀ ⊗ post`.
pub fn hom_map(pre: &Mat, post: &Mat) -> Mat {
    tensor(&pre.transpose(), post).expect("same field")
}

/// `[g, f]: [D, A] → [C, B]` for `g: C → D` and `f: A → B`.
pub fn convolution_morphism(
    g: &CoalgebraMorphism,
    f: &AlgebraMorphism,
) -> Result<AlgebraMorphism, AlgError> {
    let src = convolution_algebra(g.target(), f.source())?;
    let tgt = convolution_algebra(g.source(), f.target())?;
    AlgebraMorphism::new(src, tgt, hom_map(g.matrix(), f.matrix()))
}
