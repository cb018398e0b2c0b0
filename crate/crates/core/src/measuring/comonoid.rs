use crate::algcore::sparse::sparse_cols;
use crate::algcore::standard::{ground_algebra, matrix_coalgebra};
use crate::algcore::{dual_coalgebra, Algebra, AlgebraMorphism, Coalgebra, CoalgebraMorphism};
use crate::exactlin::{intersect, kernel, Field, Mat, Scalar, Subspace};

use super::cofree::PathCoalgebra;
use super::grouplikes::grouplikes;
use super::largest::{largest_subcoalgebra_sparse, restrict_coalgebra, SparseCoalgebra};
use super::map::{hom_matrix_to_vector, verify_measuring, MeasuringMap};
use super::points::{algebra_maps, matrix_valued_maps, Budget};
use super::MeasError;

/// Parameters of a truncated computation of `P(A, B)`.
#[derive(Clone, Debug)]
pub struct TruncationOptions {
    pub degree: usize,
    /// Largest `m` for which simple components `M_m(k)*` are searched.
    pub m_max: usize,
    /// Algebra maps `A → B` to use instead of enumeration (required over ℚ).
    pub hints: Option<Vec<Mat>>,
    pub budget: Budget,
}

impl TruncationOptions {
    pub fn degree(n: usize) -> TruncationOptions {
        TruncationOptions {
            degree: n,
            m_max: 1,
            hints: None,
            budget: Budget::default(),
        }
    }

    pub fn with_hints(mut self, hints: Vec<Mat>) -> TruncationOptions {
        self.hints = Some(hints);
        self
    }

    pub fn with_m_max(mut self, m: usize) -> TruncationOptions {
        self.m_max = m;
        self
    }

    pub fn with_budget(mut self, b: Budget) -> TruncationOptions {
        self.budget = b;
        self
    }
}

/// The degree-`n` approximation `P_n` of the universal measuring comonoid.
///
/// `p_n` is the pointed part (a subcoalgebra of the path coalgebra on
/// `Hom(A, B)`) followed by one simple block `M_m(k)*` per matrix-valued
/// point.
#[derive(Clone, Debug)]
pub struct TruncatedMeasuringComonoid {
    pub a: Algebra,
    pub b: Algebra,
    pub degree: usize,
    pub m_max: usize,
    pub points: Vec<AlgebraMorphism>,
    /// Algebra maps `A → M_m(B)`, `m ≥ 2`, each giving a simple block.
    pub blocks: Vec<(usize, AlgebraMorphism)>,
    pub p_n: Coalgebra,
    pub proj: Mat,
    pub canonical_measuring: MeasuringMap,
    ambient: PathCoalgebra,
    embedding: Subspace,
}

impl TruncatedMeasuringComonoid {
    pub fn field(&self) -> Field {
        self.a.field()
    }

    /// The ambient path coalgebra the pointed part lives in.
    pub fn ambient(&self) -> &PathCoalgebra {
        &self.ambient
    }

    /// The pointed part as a subspace of the ambient path coalgebra.
    pub fn embedding(&self) -> &Subspace {
        &self.embedding
    }

    pub fn pointed_dim(&self) -> usize {
        self.embedding.dim()
    }

    /// Coordinates in `P_n` of the grouplike of point `i`.
    pub fn grouplike(&self, i: usize) -> Vec<Scalar> {
        let f = self.field();
        let mut v = vec![f.zero(); self.ambient.dim()];
        v[self.ambient.grouplike(i)] = f.one();
        let mut c = self
            .embedding
            .coordinates(&v)
            .expect("grouplikes of points satisfy the measuring constraints");
        c.resize(self.p_n.dim(), f.zero());
        c
    }

    /// Index of the point whose vector in `Hom(A, B)` is `v`.
    pub fn point_index(&self, v: &[Scalar]) -> Option<usize> {
        self.ambient.points().iter().position(|p| p == v)
    }

    /// Dimension of the degree-1 part at the loop `(φ, φ)`: the primitive-type
    /// elements `x` with `Δx = x⊗g_φ + g_φ⊗x` in `P_n`.
    pub fn loop_dim(&self, point: usize) -> usize {
        let f = self.field();
        let t = &self.ambient;
        // Elements of the pointed part whose ambient support is g_φ and
        // length-1 loop words at φ, modulo g_φ.
        let d = t.dim();
        let allowed: Vec<usize> = (0..d)
            .filter(|&i| {
                let w = &t.words()[i];
                w.len() == 1 && w.vertices == [point, point]
            })
            .collect();
        let span = Mat::from_fn(f, allowed.len(), d, |r, c| {
            if allowed[r] == c {
                f.one()
            } else {
                f.zero()
            }
        });
        if allowed.is_empty() {
            return 0;
        }
        intersect(&Subspace::span(&span), &self.embedding)
            .expect("same ambient")
            .dim()
    }
}

fn hom_dim(a: &Algebra, b: &Algebra) -> usize {
    a.dim() * b.dim()
}

/// Linear measuring constraints on a coalgebra with a map to `Hom(A, B)`:
/// column `i` collects `proj(e_i)∘m_A − m_B∘(proj⊗proj)Δ(e_i)` followed by
/// `proj(e_i)(1) − ε(e_i)1_B`.
fn measuring_constraints<C: SparseCoalgebra>(a: &Algebra, b: &Algebra, c: &C, proj: &Mat) -> Mat {
    let f = a.field();
    let (da, db) = (a.dim(), b.dim());
    let n = c.dim();
    let rows = da * da * db + db;
    let ma = sparse_cols(a.mult());
    let mb = sparse_cols(b.mult());
    let pc = sparse_cols(proj);
    let mut out = Mat::zeros(f, rows, n);
    // ψ(a_i)_t for a sparse Hom(A,B) vector
    let nonzero_proj = |i: usize| !pc[i].is_empty();
    for w in 0..n {
        let pw = proj.col_vec(w);
        if nonzero_proj(w) {
            for i in 0..da {
                for j in 0..da {
                    for (l, s) in &ma[i * da + j] {
                        for t in 0..db {
                            let v = &pw[l * db + t];
                            if !v.is_zero() {
                                out.add_at((i * da + j) * db + t, w, &f.mul(s, v));
                            }
                        }
                    }
                }
            }
            for i in 0..da {
                let u = a.unit().get(i, 0);
                if u.is_zero() {
                    continue;
                }
                for t in 0..db {
                    out.add_at(da * da * db + t, w, &f.mul(u, &pw[i * db + t]));
                }
            }
        }
        let e = c.counit_of(w);
        if !e.is_zero() {
            for t in 0..db {
                out.add_at(da * da * db + t, w, &f.neg(&f.mul(&e, b.unit().get(t, 0))));
            }
        }
        for (l, r, s) in c.comult_of(w) {
            if !nonzero_proj(l) || !nonzero_proj(r) {
                continue;
            }
            for (li, lv) in &pc[l] {
                let (i, u) = (li / db, li % db);
                for (ri, rv) in &pc[r] {
                    let (j, x) = (ri / db, ri % db);
                    let coef = f.neg(&f.mul(&s, &f.mul(lv, rv)));
                    for (t, m) in &mb[u * db + x] {
                        out.add_at((i * da + j) * db + t, w, &f.mul(&coef, m));
                    }
                }
            }
        }
    }
    out
}

fn direct_sum(parts: &[Coalgebra], field: Field, name: &str) -> Result<Coalgebra, MeasError> {
    let d: usize = parts.iter().map(Coalgebra::dim).sum();
    let mut comult = Mat::zeros(field, d * d, d);
    let mut counit = Mat::zeros(field, 1, d);
    let mut labels = Vec::with_capacity(d);
    let mut off = 0;
    for (k, c) in parts.iter().enumerate() {
        let m = c.dim();
        for (i, col) in sparse_cols(c.comult()).iter().enumerate() {
            for (r, s) in col {
                let (l, rr) = (r / m, r % m);
                comult.set((off + l) * d + off + rr, off + i, s.clone());
            }
            counit.set(0, off + i, c.counit().get(0, i).clone());
        }
        for l in c.basis_labels() {
            labels.push(if k == 0 { l.clone() } else { format!("B{k}:{l}") });
        }
        off += m;
    }
    Ok(Coalgebra::new(name, field, labels, comult, counit)?)
}

/// Computes `P_n(A, B)`: the largest subcoalgebra of the truncated pointed
/// cofree coalgebra on `Hom(A, B)` inside the measuring constraints.
pub fn measuring_comonoid_truncated(
    a: &Algebra,
    b: &Algebra,
    opts: &TruncationOptions,
) -> Result<TruncatedMeasuringComonoid, MeasError> {
    if a.field() != b.field() {
        return Err(MeasError::FieldMismatch);
    }
    let f = a.field();
    let points = algebra_maps(a, b, opts.hints.as_deref(), opts.budget)?;
    let vecs: Vec<Vec<Scalar>> = points.iter().map(|p| hom_matrix_to_vector(p.matrix())).collect();
    let v_dim = hom_dim(a, b);
    let t = PathCoalgebra::new(f, v_dim, vecs, opts.degree)?;
    let proj_t = t.proj();
    let constraints = measuring_constraints(a, b, &t, &proj_t);
    let w = kernel(&constraints);
    let emb = largest_subcoalgebra_sparse(&t, &w);
    let labels = emb.pivots().iter().map(|&i| t.label(i)).collect();
    let pointed = restrict_coalgebra(&t, &emb, "P", labels)?;
    let mut proj = proj_t.mul(&emb.inclusion());

    let mut parts = vec![pointed];
    let mut blocks = Vec::new();
    let mut seen: Vec<Subspace> = Vec::new();
    for m in 2..=opts.m_max {
        if f.order().is_none() {
            return Err(MeasError::BudgetExceeded {
                needed: "matrix-valued points over Q".into(),
                budget: opts.budget.0,
            });
        }
        for rho in matrix_valued_maps(a, b, m, opts.budget)? {
            let bp = block_proj(a, b, m, rho.matrix());
            let img = Subspace::image(&bp);
            if img.dim() != m * m || seen.contains(&img) {
                continue;
            }
            seen.push(img);
            parts.push(matrix_coalgebra(f, m));
            proj = proj.hstack(&bp);
            blocks.push((m, rho));
        }
    }
    let p_n = if parts.len() == 1 {
        parts.pop().expect("pointed part")
    } else {
        direct_sum(&parts, f, "P")?
    };
    let p_n = p_n.with_name(format!("P{}({},{})", opts.degree, a.name(), b.name()));
    let canonical = MeasuringMap::new(p_n.clone(), a.clone(), b.clone(), proj.clone())?;
    if !verify_measuring(&canonical)? {
        return Err(MeasError::NotMeasuring);
    }
    Ok(TruncatedMeasuringComonoid {
        a: a.clone(),
        b: b.clone(),
        degree: opts.degree,
        m_max: opts.m_max,
        points,
        blocks,
        p_n,
        proj,
        canonical_measuring: canonical,
        ambient: t,
        embedding: emb,
    })
}

/// `M_m(k)* → Hom(A, B)`, `e_ij ↦ (a ↦ ρ(a)_ij)`.
fn block_proj(a: &Algebra, b: &Algebra, m: usize, rho: &Mat) -> Mat {
    let db = b.dim();
    Mat::from_fn(a.field(), a.dim() * db, m * m, |r, ij| {
        let (l, t) = (r / db, r % db);
        rho.get(ij * db + t, l).clone()
    })
}

/// The finite dual `A° = A*` with its evaluation measuring `A* → Hom(A, k)`.
pub fn finite_dual(a: &Algebra) -> (Coalgebra, MeasuringMap) {
    let c = dual_coalgebra(a).with_name(format!("{}°", a.name()));
    let k = ground_algebra(a.field());
    let psi = Mat::identity(a.field(), a.dim());
    let m = MeasuringMap::new(c.clone(), a.clone(), k, psi).expect("evaluation measuring");
    (c, m)
}

/// Coradical filtration of a pointed coalgebra: dimensions of `C_0 ⊆ C_1 ⊆ …`
/// up to `C`, or `None` if it stalls below `C` (a simple component of
/// dimension `> 1`).
pub fn coradical_filtration(c: &Coalgebra, grouplikes: &[Vec<Scalar>]) -> Option<Vec<usize>> {
    let f = c.field();
    let d = c.dim();
    if d == 0 {
        return Some(vec![0]);
    }
    if grouplikes.is_empty() {
        return None;
    }
    let c0 = Subspace::span(&Mat::from_rows(f, d, grouplikes.to_vec()).expect("grouplike rows"));
    let pi0 = c0.quotient_map();
    let mut dims = vec![c0.dim()];
    let mut ck = c0.clone();
    while !ck.is_full() {
        let pik = ck.quotient_map();
        let next = if pi0.rows() == 0 {
            Subspace::full(f, d)
        } else {
            kernel(&c.comult().kron_apply(Some(&pik), Some(&pi0), d, d))
        };
        if next.dim() == ck.dim() {
            return None;
        }
        dims.push(next.dim());
        ck = next;
    }
    Some(dims)
}

/// Stacked jets `[ε; π; (π⊗π)Δ; …]` of a coalgebra with a map `π` to `V`,
/// up to tensor degree `depth`.
fn jets(c: &Coalgebra, pi: &Mat, depth: usize) -> Mat {
    let d = c.dim();
    let mut out = c.counit().clone();
    let mut jk = pi.clone();
    for k in 1..=depth {
        out = out.vstack(&jk);
        if k < depth {
            jk = c.comult().kron_apply(Some(pi), Some(&jk), d, d);
        }
    }
    out
}

const JET_ROWS_LIMIT: usize = 1 << 16;

fn jet_depth(p: &TruncatedMeasuringComonoid) -> usize {
    let v = hom_dim(&p.a, &p.b).max(2);
    let wanted = p.degree + p.points.len() + 1;
    let mut depth = 1;
    let mut rows = v;
    while depth < wanted && rows * v <= JET_ROWS_LIMIT {
        rows *= v;
        depth += 1;
    }
    depth
}

/// The unique coalgebra map `h: C → P_n` with `proj ∘ h = ψ`.
///
/// `h` solves the jet equations `J(P_n)·h = J(ψ)`; the jet stack of `P_n`
/// is checked to be injective, which makes the solution unique among all
/// linear maps with `proj ∘ h = ψ` that are coalgebra maps.
pub fn couniversal_factor(
    p: &TruncatedMeasuringComonoid,
    psi: &MeasuringMap,
) -> Result<CoalgebraMorphism, MeasError> {
    if psi.a != p.a || psi.b != p.b {
        return Err(MeasError::DimMismatch("measuring between other algebras".into()));
    }
    if !verify_measuring(psi)? {
        return Err(MeasError::NotMeasuring);
    }
    let c = &psi.c;
    let gl = grouplikes(c)?;
    for g in &gl {
        let img = psi.psi.mul(&Mat::column(c.field(), g.clone())).col_vec(0);
        if p.point_index(&img).is_none() {
            return Err(MeasError::UnmatchedPoint(format!(
                "grouplike {} maps to an algebra map that is not a recorded point",
                describe(g)
            )));
        }
    }
    let filtration = coradical_filtration(c, &gl);
    match &filtration {
        Some(dims) if dims.len() - 1 > p.degree => {
            return Err(MeasError::TruncationInsufficient {
                needed: dims.len() - 1,
                degree: p.degree,
            })
        }
        None if p.blocks.is_empty() => {
            return Err(MeasError::UnmatchedPoint(
                "the coalgebra has a simple component of dimension > 1".into(),
            ))
        }
        _ => {}
    }
    let depth = jet_depth(p);
    let jp = jets(&p.p_n, &p.proj, depth);
    if jp.rank() != p.p_n.dim() {
        return Err(MeasError::NoFactorization(format!(
            "jets up to degree {depth} do not separate P_{}",
            p.degree
        )));
    }
    let jc = jets(c, &psi.psi, depth);
    let h = match jp.solve(&jc) {
        Some(h) => h,
        None if filtration.is_none() => {
            return Err(MeasError::UnmatchedPoint(
                "a simple component is not among the recorded blocks".into(),
            ))
        }
        None => return Err(MeasError::NoFactorization("jet equations are inconsistent".into())),
    };
    if p.proj.mul(&h) != psi.psi {
        return Err(MeasError::NoFactorization("projection does not recover the measuring".into()));
    }
    CoalgebraMorphism::new(c.clone(), p.p_n.clone(), h)
        .map_err(|e| MeasError::NoFactorization(e.to_string()))
}

fn describe(v: &[Scalar]) -> String {
    let parts: Vec<String> = v.iter().map(|s| s.to_string()).collect();
    format!("[{}]", parts.join(", "))
}

/// The inclusion `P_n → P_{n'}` for `n ≤ n'` computed from the same points:
/// the pointed part of `P_n`, padded with zeros, lies in that of `P_{n'}`.
pub fn truncation_inclusion(
    small: &TruncatedMeasuringComonoid,
    big: &TruncatedMeasuringComonoid,
) -> Result<CoalgebraMorphism, MeasError> {
    let f = small.field();
    if small.a != big.a
        || small.b != big.b
        || small.degree > big.degree
        || small.ambient.points() != big.ambient.points()
        || small.blocks.len() != big.blocks.len()
    {
        return Err(MeasError::DimMismatch("incomparable truncations".into()));
    }
    let (ds, db) = (small.p_n.dim(), big.p_n.dim());
    let (ps, pb) = (small.pointed_dim(), big.pointed_dim());
    let nb = big.ambient.dim();
    let mut x = Mat::zeros(f, db, ds);
    for i in 0..ps {
        let mut v = small.embedding.basis().row_slice(i).to_vec();
        v.resize(nb, f.zero());
        let coords = big
            .embedding
            .coordinates(&v)
            .map_err(|_| MeasError::NotClosed("truncation is not monotone"))?;
        for (j, s) in coords.into_iter().enumerate() {
            x.set(j, i, s);
        }
    }
    for k in 0..ds - ps {
        x.set(pb + k, ps + k, f.one());
    }
    if big.proj.mul(&x) != small.proj {
        return Err(MeasError::NotClosed("projections disagree"));
    }
    Ok(CoalgebraMorphism::new(small.p_n.clone(), big.p_n.clone(), x)?)
}
