//! Serialized truncations, their self-check, and the on-disk cache.

use std::collections::BTreeSet;
use std::path::{Path, PathBuf};

use measuring_lab::algcore::Algebra;
use measuring_lab::exactlin::{kernel, Field, Mat};
use measuring_lab::measuring::{
    grouplikes, hom_matrix_to_vector, largest_subcoalgebra_in, largest_subcomodule_in, verify_measuring,
    verify_module_measuring, MeasuringMap, ModuleMeasuringMap, TruncatedMeasuringComodule, TruncatedMeasuringComonoid,
};
use measuring_lab::modcomod::Module;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::CliError;
use crate::spec::{
    algebra_spec, coalgebra_spec, mat_rows, module_spec, sha256_hex, AlgebraSpec, CoalgebraSpec, Ctx, Loader, ModuleSpec,
    Rows, ScalarText, SpecFile,
};

/// `P_n(A, B)` as written to disk.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PBundle {
    pub a: AlgebraSpec,
    pub b: AlgebraSpec,
    pub degree: usize,
    pub m_max: usize,
    /// Algebra maps `A → B`, each `dim(B) × dim(A)`.
    pub points: Vec<Rows>,
    /// Algebra maps `A → M_m(B)` with their `m`.
    pub blocks: Vec<(usize, Rows)>,
    pub pointed_dim: usize,
    pub coalgebra: CoalgebraSpec,
    /// `dim(A)·dim(B) × dim(P_n)`.
    pub proj: Rows,
}

/// `Q_n(M, N)` as written to disk, with the `P_n` it lives over.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct QBundle {
    pub p: PBundle,
    pub m: ModuleSpec,
    pub n: ModuleSpec,
    /// Left coaction of `P_n` on `Q_n`.
    pub coaction: Rows,
    /// `dim(M)·dim(N) × dim(Q_n)`.
    pub proj: Rows,
}

pub fn p_bundle(p: &TruncatedMeasuringComonoid) -> PBundle {
    PBundle {
        a: algebra_spec(&p.a),
        b: algebra_spec(&p.b),
        degree: p.degree,
        m_max: p.m_max,
        points: p.points.iter().map(|f| mat_rows(f.matrix())).collect(),
        blocks: p.blocks.iter().map(|(m, f)| (*m, mat_rows(f.matrix()))).collect(),
        pointed_dim: p.pointed_dim(),
        coalgebra: coalgebra_spec(&p.p_n),
        proj: mat_rows(&p.proj),
    }
}

pub fn q_bundle(q: &TruncatedMeasuringComodule) -> QBundle {
    QBundle {
        p: p_bundle(&q.p),
        m: module_spec(&q.m),
        n: module_spec(&q.n),
        coaction: mat_rows(q.q_n.coaction()),
        proj: mat_rows(&q.proj),
    }
}

fn inline_ctx(field: Option<Field>) -> Ctx {
    Ctx { dir: PathBuf::new(), path: "<bundle>".into(), field }
}

fn rows_mat(rows: &Rows, field: Field) -> Result<Mat, CliError> {
    let cols = rows.first().map_or(0, Vec::len);
    let mut m = Mat::zeros(field, rows.len(), cols);
    for (i, r) in rows.iter().enumerate() {
        if r.len() != cols {
            return Err(CliError::schema("<bundle>", "ragged matrix"));
        }
        for (j, s) in r.iter().enumerate() {
            let v = match s {
                ScalarText::Text(t) => field.parse(t).map_err(|e| CliError::schema("<bundle>", e.to_string()))?,
                ScalarText::Int(i) => field.from_i64(*i),
            };
            m.set(i, j, v);
        }
    }
    Ok(m)
}

/// The checks run on a truncation before it is reported or reused from the
/// cache: `P_n` is a coalgebra, `proj` is a measuring, no nonzero
/// subcoalgebra lies in `ker proj` (so factorizations through `P_n` are
/// unique), and the grouplikes of `P_n` project exactly onto the listed
/// algebra maps.
pub fn verify_p_bundle(loader: &mut Loader, b: &PBundle) -> Result<Vec<(String, bool)>, CliError> {
    let ctx = inline_ctx(None);
    let a = loader.algebra(&SpecFile::Algebra(b.a.clone()), &ctx)?;
    let bb = loader.algebra(&SpecFile::Algebra(b.b.clone()), &ctx)?;
    let c = loader.coalgebra(&SpecFile::Coalgebra(b.coalgebra.clone()), &ctx)?;
    let f = a.field();
    let proj = rows_mat(&b.proj, f)?;
    if proj.shape() != (a.dim() * bb.dim(), c.dim()) {
        return Err(CliError::schema("<bundle>", "projection has the wrong shape"));
    }
    let mut out = Vec::new();
    let m = MeasuringMap { c: c.clone(), a: a.clone(), b: bb.clone(), psi: proj.clone() };
    out.push(("projection is a measuring".to_string(), verify_measuring(&m)?));
    let dead = largest_subcoalgebra_in(&c, &kernel(&proj));
    out.push(("no subcoalgebra in the kernel of the projection".to_string(), dead.dim() == 0));
    let listed: BTreeSet<Vec<String>> = b
        .points
        .iter()
        .map(|r| rows_mat(r, f).map(|m| hom_matrix_to_vector(&m).iter().map(|s| s.to_string()).collect()))
        .collect::<Result<_, _>>()?;
    let found: BTreeSet<Vec<String>> = grouplikes(&c)?
        .iter()
        .map(|g| proj.mul(&Mat::column(f, g.clone())).col_vec(0).iter().map(|s| s.to_string()).collect())
        .collect();
    out.push(("grouplikes project onto the algebra maps".to_string(), listed == found));
    Ok(out)
}

/// [`verify_p_bundle`] for the underlying `P_n`, then: `Q_n` is a
/// `P_n`-comodule, `proj` is a module-measuring and no nonzero subcomodule
/// lies in its kernel.
pub fn verify_q_bundle(loader: &mut Loader, b: &QBundle) -> Result<Vec<(String, bool)>, CliError> {
    let mut out = verify_p_bundle(loader, &b.p)?;
    let ctx = inline_ctx(None);
    let a = loader.algebra(&SpecFile::Algebra(b.p.a.clone()), &ctx)?;
    let bb = loader.algebra(&SpecFile::Algebra(b.p.b.clone()), &ctx)?;
    let c = loader.coalgebra(&SpecFile::Coalgebra(b.p.coalgebra.clone()), &ctx)?;
    let m = loader.module(&SpecFile::Module(b.m.clone()), &ctx)?;
    let n = loader.module(&SpecFile::Module(b.n.clone()), &ctx)?;
    let f = a.field();
    let coaction = rows_mat(&b.coaction, f)?;
    let x = measuring_lab::modcomod::check_comodule("Q_n", &c, coaction)?;
    let proj_p = rows_mat(&b.p.proj, f)?;
    let proj = rows_mat(&b.proj, f)?;
    let under = MeasuringMap { c, a, b: bb, psi: proj_p };
    let r = ModuleMeasuringMap::new(under, x.clone(), m, n, proj.clone())?;
    out.push(("projection is a module-measuring".to_string(), verify_module_measuring(&r)?));
    let dead = largest_subcomodule_in(&x, &kernel(&proj));
    out.push(("no subcomodule in the kernel of the projection".to_string(), dead.dim() == 0));
    Ok(out)
}

/// Request descriptions are hashed to name cache entries.
pub fn cache_key(request: &Value) -> String {
    sha256_hex(serde_json::to_string(request).expect("serializable request").as_bytes())
}

#[derive(Serialize, Deserialize)]
struct CacheEntry {
    request: Value,
    bundle: Value,
    bundle_sha256: String,
}

pub struct Cache {
    dir: PathBuf,
}

impl Cache {
    pub fn new(dir: &Path) -> Cache {
        Cache { dir: dir.to_path_buf() }
    }

    fn path(&self, key: &str) -> PathBuf {
        self.dir.join(format!("{key}.json"))
    }

    /// The stored bundle if the entry is intact and was made for `request`.
    pub fn get(&self, key: &str, request: &Value) -> Option<Value> {
        let text = std::fs::read_to_string(self.path(key)).ok()?;
        let entry: CacheEntry = serde_json::from_str(&text).ok()?;
        let body = serde_json::to_string(&entry.bundle).ok()?;
        (entry.request == *request && sha256_hex(body.as_bytes()) == entry.bundle_sha256).then_some(entry.bundle)
    }

    pub fn put(&self, key: &str, request: &Value, bundle: &Value) -> Result<(), CliError> {
        std::fs::create_dir_all(&self.dir)?;
        let body = serde_json::to_string(bundle).expect("serializable bundle");
        let entry = CacheEntry { request: request.clone(), bundle: bundle.clone(), bundle_sha256: sha256_hex(body.as_bytes()) };
        std::fs::write(self.path(key), serde_json::to_string_pretty(&entry).expect("serializable entry"))?;
        Ok(())
    }
}

/// Whether `m` is the free module `A ⊗ k`, i.e. `A` acting on itself.
pub fn is_regular(m: &Module, a: &Algebra) -> bool {
    m.over() == a && m.action() == a.mult()
}
