use crate::algcore::sparse::sparse_cols;
use crate::algcore::{convolution_algebra, is_algebra_morphism, Algebra, AlgebraMorphism, CoalgebraMorphism};
use crate::exactlin::{kernel, Mat, Subspace};
use crate::modcomod::{hom_module, Comodule, GlobalComodMorphism, GlobalModMorphism, Module};

use super::comonoid::{couniversal_factor, measuring_comonoid_truncated, TruncatedMeasuringComonoid, TruncationOptions};
use super::largest::{largest_subcomodule_sparse, restrict_comodule, SparseView};
use super::map::{verify_measuring, MeasuringMap};
use super::MeasError;

/// A measuring `ψ: C → Hom(A, B)` together with `ρ: X → Hom(M, N)` for a
/// `C`-comodule `X`, an `A`-module `M` and a `B`-module `N`.
/// `ρ` is a `dim(M)·dim(N) × dim(X)` matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleMeasuringMap {
    pub underlying: MeasuringMap,
    pub x: Comodule,
    pub m: Module,
    pub n: Module,
    pub rho: Mat,
}

impl ModuleMeasuringMap {
    pub fn new(
        underlying: MeasuringMap,
        x: Comodule,
        m: Module,
        n: Module,
        rho: Mat,
    ) -> Result<ModuleMeasuringMap, MeasError> {
        if x.over() != &underlying.c || m.over() != &underlying.a || n.over() != &underlying.b {
            return Err(MeasError::BaseMismatch);
        }
        if rho.shape() != (m.dim() * n.dim(), x.dim()) {
            return Err(MeasError::DimMismatch(format!(
                "module measuring is {}x{}, expected {}x{}",
                rho.rows(),
                rho.cols(),
                m.dim() * n.dim(),
                x.dim()
            )));
        }
        Ok(ModuleMeasuringMap {
            underlying,
            x,
            m,
            n,
            rho,
        })
    }

    /// The adjunct `M → Hom(X, N)`, entry `[(x,t), m] = ρ[(m,t), x]`.
    pub fn adjunct(&self) -> Mat {
        let (dx, dm, dn) = (self.x.dim(), self.m.dim(), self.n.dim());
        Mat::from_fn(self.rho.field(), dx * dn, dm, |r, m| {
            let (x, t) = (r / dn, r % dn);
            self.rho.get(m * dn + t, x).clone()
        })
    }
}

/// `ρ(x)(a·m) = Σ ψ(x₋₁)(a)·ρ(x₀)(m)` on all basis elements.
fn module_identity_holds(r: &ModuleMeasuringMap) -> bool {
    let f = r.rho.field();
    let psi = &r.underlying.psi;
    let (dx, da, dm, dn, db) = (r.x.dim(), r.m.over().dim(), r.m.dim(), r.n.dim(), r.n.over().dim());
    let act_m = sparse_cols(r.m.action());
    let act_n = sparse_cols(r.n.action());
    let co = sparse_cols(r.x.coaction());
    for x in 0..dx {
        for a in 0..da {
            for m in 0..dm {
                let mut lhs = vec![f.zero(); dn];
                for (m2, s) in &act_m[a * dm + m] {
                    for (t, slot) in lhs.iter_mut().enumerate() {
                        f.mul_add_assign(slot, s, r.rho.get(m2 * dn + t, x));
                    }
                }
                let mut rhs = vec![f.zero(); dn];
                for (cy, s) in &co[x] {
                    let (c, y) = (cy / dx, cy % dx);
                    for w in 0..db {
                        let bw = psi.get(a * db + w, c);
                        if bw.is_zero() {
                            continue;
                        }
                        for u in 0..dn {
                            let nu = r.rho.get(m * dn + u, y);
                            if nu.is_zero() {
                                continue;
                            }
                            let coef = f.mul(s, &f.mul(bw, nu));
                            for (t, v) in &act_n[w * dn + u] {
                                f.mul_add_assign(&mut rhs[*t], &coef, v);
                            }
                        }
                    }
                }
                if lhs != rhs {
                    return false;
                }
            }
        }
    }
    true
}

/// Both routes: the measuring plus module identities, and the adjunct
/// `M → [X, N]` being a global module morphism over the adjunct algebra map
/// `A → [C, B]`. They must agree.
pub fn verify_module_measuring(r: &ModuleMeasuringMap) -> Result<bool, MeasError> {
    let measuring = verify_measuring(&r.underlying)?;
    let direct = measuring && module_identity_holds(r);
    let u = &r.underlying;
    let conv = convolution_algebra(&u.c, &u.b)?;
    let adjunct_f = u.adjunct();
    let global = if is_algebra_morphism(&u.a, &conv, &adjunct_f)? {
        let mor = GlobalModMorphism {
            f: AlgebraMorphism::new(u.a.clone(), conv, adjunct_f)?,
            source: r.m.clone(),
            target: hom_module(&r.x, &r.n)?,
            p: r.adjunct(),
        };
        mor.check()?
    } else {
        false
    };
    if direct != global {
        return Err(MeasError::RouteDisagreement("module measuring"));
    }
    Ok(direct)
}

/// The degree-`n` approximation `Q_n(M, N)`: a subcomodule of the cofree
/// `P_n`-comodule `P_n ⊗ Hom(M, N)`.
#[derive(Clone, Debug)]
pub struct TruncatedMeasuringComodule {
    pub p: TruncatedMeasuringComonoid,
    pub m: Module,
    pub n: Module,
    pub cofree: Comodule,
    pub q_n: Comodule,
    pub proj: Mat,
    pub canonical: ModuleMeasuringMap,
    embedding: Subspace,
}

impl TruncatedMeasuringComodule {
    /// `Q_n` as a subspace of the cofree comodule.
    pub fn embedding(&self) -> &Subspace {
        &self.embedding
    }
}

/// `ε ⊗ 1: P ⊗ U → U`.
fn counit_projection(p: &TruncatedMeasuringComonoid, du: usize) -> Mat {
    let eps = p.p_n.counit();
    Mat::from_fn(p.field(), du, p.p_n.dim() * du, |u, c| {
        if c % du == u {
            eps.get(0, c / du).clone()
        } else {
            p.field().zero()
        }
    })
}

pub fn measuring_comodule_truncated(
    m: &Module,
    n: &Module,
    p: &TruncatedMeasuringComonoid,
) -> Result<TruncatedMeasuringComodule, MeasError> {
    if m.over() != &p.a || n.over() != &p.b {
        return Err(MeasError::BaseMismatch);
    }
    let f = p.field();
    let (da, db, dm, dn) = (p.a.dim(), p.b.dim(), m.dim(), n.dim());
    let du = dm * dn;
    let dp = p.p_n.dim();
    let cofree = Comodule::cofree(&p.p_n, du).with_name(format!("P⊗Hom({},{})", m.name(), n.name()));
    let act_m = sparse_cols(m.action());
    let act_n = sparse_cols(n.action());
    let eps = p.p_n.counit();
    // Column (π, u) with u = (m0 ↦ n_t0):
    // ε(π)·u(a·m) − μ_N(ψ(π)(a) ⊗ u(m)) at ((a, m), t).
    let mut constraints = Mat::zeros(f, da * dm * dn, dp * du);
    for pi in 0..dp {
        for m0 in 0..dm {
            for t0 in 0..dn {
                let col = pi * du + m0 * dn + t0;
                let e = eps.get(0, pi);
                for a in 0..da {
                    for mm in 0..dm {
                        if !e.is_zero() {
                            for (m2, s) in &act_m[a * dm + mm] {
                                if *m2 == m0 {
                                    constraints.add_at((a * dm + mm) * dn + t0, col, &f.mul(e, s));
                                }
                            }
                        }
                        if mm == m0 {
                            for w in 0..db {
                                let bw = p.proj.get(a * db + w, pi);
                                if bw.is_zero() {
                                    continue;
                                }
                                for (t, v) in &act_n[w * dn + t0] {
                                    constraints.add_at((a * dm + mm) * dn + t, col, &f.neg(&f.mul(bw, v)));
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    let w = kernel(&constraints);
    let view = SparseView::of_comodule(&cofree);
    let emb = largest_subcomodule_sparse(&view, &w);
    let q_n = restrict_comodule(&view, &p.p_n, &emb, &format!("Q{}({},{})", p.degree, m.name(), n.name()))?;
    let proj = counit_projection(p, du).mul(&emb.inclusion());
    let canonical = ModuleMeasuringMap::new(
        p.canonical_measuring.clone(),
        q_n.clone(),
        m.clone(),
        n.clone(),
        proj.clone(),
    )?;
    if !verify_module_measuring(&canonical)? {
        return Err(MeasError::NotMeasuring);
    }
    Ok(TruncatedMeasuringComodule {
        p: p.clone(),
        m: m.clone(),
        n: n.clone(),
        cofree,
        q_n,
        proj,
        canonical,
        embedding: emb,
    })
}

/// The unique comodule morphism `X → Q_n` over `h = couniversal_factor(ψ)`
/// whose projection is `ρ`: `x ↦ Σ h(x₋₁) ⊗ ρ(x₀)` into the cofree
/// comodule, which must land in `Q_n`.
pub fn comodule_couniversal_factor(
    q: &TruncatedMeasuringComodule,
    r: &ModuleMeasuringMap,
) -> Result<GlobalComodMorphism, MeasError> {
    if r.m != q.m || r.n != q.n {
        return Err(MeasError::BaseMismatch);
    }
    if !verify_module_measuring(r)? {
        return Err(MeasError::NotMeasuring);
    }
    let h = couniversal_factor(&q.p, &r.underlying)?;
    let full = r
        .x
        .coaction()
        .kron_apply(Some(h.matrix()), Some(&r.rho), r.x.over().dim(), r.x.dim());
    let k = q
        .embedding
        .coordinates_of_columns(&full)
        .map_err(|_| MeasError::ImageEscapesTruncation)?;
    let mor = GlobalComodMorphism {
        g: h,
        source: r.x.clone(),
        target: q.q_n.clone(),
        k,
    };
    if !mor.check()? || q.proj.mul(&mor.k) != r.rho {
        return Err(MeasError::NoFactorization("comodule lift fails its checks".into()));
    }
    Ok(mor)
}

/// The free module `A ⊗ k^v` with basis `(a, v)` at index `a*v_dim+v`.
pub fn free_module(a: &Algebra, v_dim: usize) -> Module {
    let f = a.field();
    let da = a.dim();
    let d = da * v_dim;
    let mut action = Mat::zeros(f, d, da * d);
    for (col, entries) in sparse_cols(a.mult()).iter().enumerate() {
        let (x, y) = (col / da, col % da);
        for (l, s) in entries {
            for v in 0..v_dim {
                action.set(l * v_dim + v, x * d + y * v_dim + v, s.clone());
            }
        }
    }
    Module::new(format!("{}⊗k^{v_dim}", a.name()), a, action).expect("free module")
}

/// One degree of [`check_isocomod`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsoComodRow {
    pub degree: usize,
    pub p_dim: usize,
    pub source_dim: usize,
    pub q_dim: usize,
    pub is_iso: bool,
}

#[derive(Clone, Debug)]
pub struct IsoComodReport {
    pub rows: Vec<IsoComodRow>,
    /// Smallest degree from which the comparison is an isomorphism and all
    /// dimensions agree with the last computed degree.
    pub stable_from: Option<usize>,
    /// The comparison map at the requested degree.
    pub comparison: GlobalComodMorphism,
}

impl IsoComodReport {
    pub fn is_iso(&self) -> bool {
        self.rows.last().is_some_and(|r| r.is_iso)
    }
}

/// Comparison `P_n ⊗ [V, N] → Q_n(A ⊗ V, N)` for a `B`-module `N`, built by
/// [`comodule_couniversal_factor`] from the measuring
/// `ρ(π ⊗ u)(a ⊗ v) = ψ(π)(a)·u(v)`.
fn isocomod_at(
    a: &Algebra,
    b: &Algebra,
    v_dim: usize,
    n: &Module,
    opts: &TruncationOptions,
) -> Result<(IsoComodRow, GlobalComodMorphism), MeasError> {
    let f = a.field();
    let p = measuring_comonoid_truncated(a, b, opts)?;
    let av = free_module(a, v_dim);
    let q = measuring_comodule_truncated(&av, n, &p)?;
    let (db, dn) = (b.dim(), n.dim());
    let du = v_dim * dn;
    let dp = p.p_n.dim();
    let x = Comodule::cofree(&p.p_n, du).with_name("P⊗[V,N]");
    let act_n = sparse_cols(n.action());
    let dav = a.dim() * v_dim;
    let mut rho = Mat::zeros(f, dav * dn, dp * du);
    for pi in 0..dp {
        for v0 in 0..v_dim {
            for t0 in 0..dn {
                let col = pi * du + v0 * dn + t0;
                for aa in 0..a.dim() {
                    for w in 0..db {
                        let bw = p.proj.get(aa * db + w, pi);
                        if bw.is_zero() {
                            continue;
                        }
                        for (t, s) in &act_n[w * dn + t0] {
                            rho.add_at((aa * v_dim + v0) * dn + t, col, &f.mul(bw, s));
                        }
                    }
                }
            }
        }
    }
    let r = ModuleMeasuringMap::new(p.canonical_measuring.clone(), x.clone(), av, n.clone(), rho)?;
    let mor = comodule_couniversal_factor(&q, &r)?;
    let is_iso = mor.g.matrix().is_identity() && mor.k.rows() == mor.k.cols() && mor.k.is_invertible();
    Ok((
        IsoComodRow {
            degree: opts.degree,
            p_dim: dp,
            source_dim: x.dim(),
            q_dim: q.q_n.dim(),
            is_iso,
        },
        mor,
    ))
}

/// Checks `P_n ⊗ [V, N] ≅ Q_n(A ⊗ V, N)` at `opts.degree`, also scanning the
/// lower degrees to report where the comparison stabilised.
pub fn check_isocomod(
    a: &Algebra,
    b: &Algebra,
    v_dim: usize,
    n: &Module,
    opts: &TruncationOptions,
) -> Result<IsoComodReport, MeasError> {
    if n.over() != b {
        return Err(MeasError::BaseMismatch);
    }
    let mut rows = Vec::new();
    let mut comparison = None;
    for d in 0..=opts.degree {
        let mut o = opts.clone();
        o.degree = d;
        let (row, mor) = isocomod_at(a, b, v_dim, n, &o)?;
        rows.push(row);
        comparison = Some(mor);
    }
    let last = rows.last().expect("at least degree 0").clone();
    let mut stable_from = None;
    for r in rows.iter().rev() {
        if r.is_iso && r.p_dim == last.p_dim && r.q_dim == last.q_dim {
            stable_from = Some(r.degree);
        } else {
            break;
        }
    }
    Ok(IsoComodReport {
        rows,
        stable_from,
        comparison: comparison.expect("at least degree 0"),
    })
}

/// `Q_n → Q_{n'}` over the truncation inclusion `ι: P_n → P_{n'}`: the image
/// of `Q_n` under `ι ⊗ 1` lies in `Q_{n'}` and projections agree.
pub fn comodule_truncation_inclusion(
    small: &TruncatedMeasuringComodule,
    big: &TruncatedMeasuringComodule,
    iota: &CoalgebraMorphism,
) -> Result<GlobalComodMorphism, MeasError> {
    if small.m != big.m || small.n != big.n {
        return Err(MeasError::BaseMismatch);
    }
    let du = small.m.dim() * small.n.dim();
    let lifted = small
        .embedding
        .inclusion()
        .kron_apply(Some(iota.matrix()), None, small.p.p_n.dim(), du);
    let k = big
        .embedding
        .coordinates_of_columns(&lifted)
        .map_err(|_| MeasError::NotClosed("comodule truncation is not monotone"))?;
    let mor = GlobalComodMorphism {
        g: iota.clone(),
        source: small.q_n.clone(),
        target: big.q_n.clone(),
        k,
    };
    if !mor.check()? || big.proj.mul(&mor.k) != small.proj {
        return Err(MeasError::NotClosed("comodule projections disagree"));
    }
    Ok(mor)
}
