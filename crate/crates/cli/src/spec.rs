//! JSON structure files. One document per structure; structures built on
//! others refer to them by a path relative to the referencing file, or
//! embed them inline.

use std::path::{Component, Path, PathBuf};

use measuring_lab::algcore::{
    check_algebra, check_coalgebra, Algebra, AlgebraMorphism, Coalgebra, CoalgebraMorphism, RawAlgebra, RawCoalgebra,
};
use measuring_lab::exactlin::{Field, Mat, Scalar};
use measuring_lab::fibcat::FibInstanceSpec;
use measuring_lab::hopf::{
    check_bimonoid, check_comodule_monoid, check_hopf_module, check_module_comonoid, check_module_monoid, Bimonoid,
    ComoduleMonoid, HopfModule, ModuleComonoid, ModuleMonoid,
};
use measuring_lab::measuring::MeasuringMap;
use measuring_lab::modcomod::{check_comodule, check_module, Comodule, Module};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::CliError;

/// A scalar as written in a file: a string such as `"3/4"`, or a bare
/// integer. Always written back as a string.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ScalarText {
    Text(String),
    Int(i64),
}

pub type Rows = Vec<Vec<ScalarText>>;

/// A reference to another structure: a relative path or an inline document.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Ref {
    Path(String),
    Inline(Box<SpecFile>),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AlgebraSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub field: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub basis: Option<Vec<String>>,
    /// `dim × dim²`, column `i·dim+j` is `e_i·e_j`.
    pub mult: Rows,
    pub unit: Vec<ScalarText>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CoalgebraSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub field: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub basis: Option<Vec<String>>,
    /// `dim² × dim`, column `i` is `Δ(c_i)`.
    pub comult: Rows,
    pub counit: Vec<ScalarText>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ModuleSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub over: Ref,
    /// `dim × dim(A)·dim`, column `a·dim+m` is `a·m`.
    pub action: Rows,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ComoduleSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub over: Ref,
    /// `dim(C)·dim × dim`, a left coaction.
    pub coaction: Rows,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BimonoidSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub field: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub basis: Option<Vec<String>>,
    pub mult: Rows,
    pub unit: Vec<ScalarText>,
    pub comult: Rows,
    pub counit: Vec<ScalarText>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ModuleComonoidSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub bimonoid: Ref,
    pub action: Rows,
    pub comult: Rows,
    pub counit: Vec<ScalarText>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ComoduleMonoidSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub bimonoid: Ref,
    pub mult: Rows,
    pub unit: Vec<ScalarText>,
    pub coaction: Rows,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HopfModuleSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub comodule_monoid: Ref,
    pub module_comonoid: Ref,
    pub action: Rows,
    pub coaction: Rows,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ModuleMonoidSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub over: Ref,
    pub action: Rows,
    pub mult: Rows,
    pub unit: Vec<ScalarText>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MorphismSpec {
    pub source: Ref,
    pub target: Ref,
    pub matrix: Rows,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MeasuringSpec {
    pub coalgebra: Ref,
    pub source: Ref,
    pub target: Ref,
    /// `dim(A)·dim(B) × dim(C)`.
    pub psi: Rows,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FincatSpec {
    pub instance: FibInstanceSpec,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SpecFile {
    Algebra(AlgebraSpec),
    Coalgebra(CoalgebraSpec),
    Module(ModuleSpec),
    Comodule(ComoduleSpec),
    Bimonoid(BimonoidSpec),
    ModuleComonoid(ModuleComonoidSpec),
    ComoduleMonoid(ComoduleMonoidSpec),
    HopfModule(HopfModuleSpec),
    ModuleMonoid(ModuleMonoidSpec),
    FincatInstance(FincatSpec),
    AlgebraMorphism(MorphismSpec),
    CoalgebraMorphism(MorphismSpec),
    Measuring(MeasuringSpec),
}

impl SpecFile {
    pub fn kind(&self) -> &'static str {
        match self {
            SpecFile::Algebra(_) => "algebra",
            SpecFile::Coalgebra(_) => "coalgebra",
            SpecFile::Module(_) => "module",
            SpecFile::Comodule(_) => "comodule",
            SpecFile::Bimonoid(_) => "bimonoid",
            SpecFile::ModuleComonoid(_) => "module_comonoid",
            SpecFile::ComoduleMonoid(_) => "comodule_monoid",
            SpecFile::HopfModule(_) => "hopf_module",
            SpecFile::ModuleMonoid(_) => "module_monoid",
            SpecFile::FincatInstance(_) => "fincat_instance",
            SpecFile::AlgebraMorphism(_) => "algebra_morphism",
            SpecFile::CoalgebraMorphism(_) => "coalgebra_morphism",
            SpecFile::Measuring(_) => "measuring",
        }
    }
}

/// `"Q"`, `"F2"`, `"F_5"`, `"GF(7)"`.
pub fn parse_field(s: &str) -> Option<Field> {
    let t = s.trim();
    if t == "Q" || t == "QQ" {
        return Some(Field::Rationals);
    }
    let p = t
        .strip_prefix("GF(")
        .and_then(|r| r.strip_suffix(')'))
        .or_else(|| t.strip_prefix("F_"))
        .or_else(|| t.strip_prefix('F'))?;
    Field::prime(p.parse().ok()?).ok()
}

pub fn field_name(f: Field) -> String {
    match f {
        Field::Rationals => "Q".into(),
        Field::Prime { p } => format!("F{p}"),
    }
}

pub fn scalar_text(s: &Scalar) -> ScalarText {
    ScalarText::Text(s.to_string())
}

pub fn mat_rows(m: &Mat) -> Rows {
    (0..m.rows()).map(|i| m.row_slice(i).iter().map(scalar_text).collect()).collect()
}

fn vector(m: &Mat) -> Vec<ScalarText> {
    m.entries().iter().map(scalar_text).collect()
}

pub fn algebra_spec(a: &Algebra) -> AlgebraSpec {
    AlgebraSpec {
        name: Some(a.name().to_string()),
        field: Some(field_name(a.field())),
        basis: Some(a.basis_labels().to_vec()),
        mult: mat_rows(a.mult()),
        unit: vector(a.unit()),
    }
}

pub fn coalgebra_spec(c: &Coalgebra) -> CoalgebraSpec {
    CoalgebraSpec {
        name: Some(c.name().to_string()),
        field: Some(field_name(c.field())),
        basis: Some(c.basis_labels().to_vec()),
        comult: mat_rows(c.comult()),
        counit: vector(c.counit()),
    }
}

pub fn module_spec(m: &Module) -> ModuleSpec {
    ModuleSpec {
        name: Some(m.name().to_string()),
        over: Ref::Inline(Box::new(SpecFile::Algebra(algebra_spec(m.over())))),
        action: mat_rows(m.action()),
    }
}

pub fn comodule_spec(x: &Comodule) -> ComoduleSpec {
    ComoduleSpec {
        name: Some(x.name().to_string()),
        over: Ref::Inline(Box::new(SpecFile::Coalgebra(coalgebra_spec(x.over())))),
        coaction: mat_rows(x.coaction()),
    }
}

pub fn bimonoid_spec(h: &Bimonoid) -> BimonoidSpec {
    let (a, c) = (h.algebra(), h.coalgebra());
    BimonoidSpec {
        name: Some(h.name().to_string()),
        field: Some(field_name(h.field())),
        basis: Some(a.basis_labels().to_vec()),
        mult: mat_rows(a.mult()),
        unit: vector(a.unit()),
        comult: mat_rows(c.comult()),
        counit: vector(c.counit()),
    }
}

/// A structure file together with the bytes it was read from.
pub struct Loaded {
    pub spec: SpecFile,
    pub dir: PathBuf,
    pub path: String,
}

/// Reads structure files, resolving references, and records a hash of
/// every file it touches.
pub struct Loader {
    /// Overrides the field named in every file.
    pub field: Option<Field>,
    pub inputs: Vec<(String, String)>,
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

/// Rejects references that leave the directory of the referencing file.
fn check_relative(path: &str, origin: &str) -> Result<(), CliError> {
    let p = Path::new(path);
    let escapes = p.is_absolute() || p.components().any(|c| matches!(c, Component::ParentDir | Component::Prefix(_)));
    if escapes {
        return Err(CliError::schema(origin, format!("reference {path:?} leaves the workspace directory")));
    }
    Ok(())
}

impl Loader {
    pub fn new(field: Option<Field>) -> Loader {
        Loader { field, inputs: Vec::new() }
    }

    pub fn read(&mut self, path: &str) -> Result<Loaded, CliError> {
        let bytes = std::fs::read(path).map_err(|e| CliError::Io(format!("{path}: {e}")))?;
        let display = path.to_string();
        if !self.inputs.iter().any(|(p, _)| p == &display) {
            self.inputs.push((display.clone(), sha256_hex(&bytes)));
        }
        let spec: SpecFile = serde_json::from_slice(&bytes).map_err(|e| {
            if e.is_syntax() || e.is_eof() {
                CliError::Parse { path: display.clone(), message: e.to_string() }
            } else {
                CliError::schema(&display, e.to_string())
            }
        })?;
        let dir = Path::new(path).parent().map(Path::to_path_buf).unwrap_or_default();
        Ok(Loaded { spec, dir, path: display })
    }

    fn resolve(&mut self, r: &Ref, ctx: &Ctx) -> Result<(SpecFile, Ctx), CliError> {
        match r {
            Ref::Path(p) => {
                check_relative(p, &ctx.path)?;
                let full = ctx.dir.join(p);
                let loaded = self.read(&full.to_string_lossy())?;
                let ctx = Ctx { dir: loaded.dir, path: loaded.path, field: ctx.field };
                Ok((loaded.spec, ctx))
            }
            Ref::Inline(s) => Ok(((**s).clone(), ctx.clone())),
        }
    }

    pub fn context(&self, loaded: &Loaded) -> Ctx {
        Ctx { dir: loaded.dir.clone(), path: loaded.path.clone(), field: self.field }
    }
}

/// Where a document came from: relative references resolve against `dir`;
/// `field` is inherited by nested documents that do not name one.
#[derive(Clone, Debug)]
pub struct Ctx {
    pub dir: PathBuf,
    pub path: String,
    pub field: Option<Field>,
}

impl Ctx {
    fn with_field(&self, named: &Option<String>, override_field: Option<Field>) -> Result<(Ctx, Field), CliError> {
        let f = match (override_field, named) {
            (Some(f), _) => f,
            (None, Some(s)) => parse_field(s).ok_or_else(|| CliError::schema(&self.path, format!("unknown field {s:?}")))?,
            (None, None) => self.field.ok_or_else(|| CliError::schema(&self.path, "no field given"))?,
        };
        let mut c = self.clone();
        c.field = Some(f);
        Ok((c, f))
    }

    fn scalar(&self, f: Field, s: &ScalarText) -> Result<Scalar, CliError> {
        match s {
            ScalarText::Text(t) => f.parse(t).map_err(|e| CliError::schema(&self.path, e.to_string())),
            ScalarText::Int(i) => Ok(f.from_i64(*i)),
        }
    }

    /// A matrix of the stated shape, or a schema error naming `what`.
    fn mat(&self, f: Field, rows: &Rows, shape: (usize, usize), what: &str) -> Result<Mat, CliError> {
        if rows.len() != shape.0 || rows.iter().any(|r| r.len() != shape.1) {
            return Err(CliError::schema(
                &self.path,
                format!("{what} must be {}x{}", shape.0, shape.1),
            ));
        }
        let mut m = Mat::zeros(f, shape.0, shape.1);
        for (i, r) in rows.iter().enumerate() {
            for (j, s) in r.iter().enumerate() {
                m.set(i, j, self.scalar(f, s)?);
            }
        }
        Ok(m)
    }

    fn column(&self, f: Field, v: &[ScalarText], len: usize, what: &str) -> Result<Mat, CliError> {
        if v.len() != len {
            return Err(CliError::schema(&self.path, format!("{what} must have {len} entries")));
        }
        let s = v.iter().map(|x| self.scalar(f, x)).collect::<Result<Vec<_>, _>>()?;
        Ok(Mat::column(f, s))
    }

    fn positive(&self, d: usize, what: &str) -> Result<usize, CliError> {
        if d == 0 {
            return Err(CliError::schema(&self.path, format!("{what} has dimension 0")));
        }
        Ok(d)
    }
}

fn labels(basis: &Option<Vec<String>>, d: usize) -> Vec<String> {
    basis.clone().unwrap_or_else(|| (0..d).map(|i| format!("e{i}")).collect())
}

fn wrong_kind(ctx: &Ctx, want: &str, got: &SpecFile) -> CliError {
    CliError::schema(&ctx.path, format!("expected kind {want:?}, found {:?}", got.kind()))
}

impl Loader {
    fn raw_algebra(&mut self, s: &AlgebraSpec, ctx: &Ctx) -> Result<(RawAlgebra, Ctx), CliError> {
        let (ctx, f) = ctx.with_field(&s.field, self.field)?;
        let d = ctx.positive(s.unit.len(), "algebra")?;
        let raw = RawAlgebra {
            name: s.name.clone().unwrap_or_else(|| "A".into()),
            field: f,
            basis_labels: labels(&s.basis, d),
            mult: ctx.mat(f, &s.mult, (d, d * d), "mult")?,
            unit: ctx.column(f, &s.unit, d, "unit")?,
        };
        Ok((raw, ctx))
    }

    fn raw_coalgebra(&mut self, s: &CoalgebraSpec, ctx: &Ctx) -> Result<(RawCoalgebra, Ctx), CliError> {
        let (ctx, f) = ctx.with_field(&s.field, self.field)?;
        let d = ctx.positive(s.counit.len(), "coalgebra")?;
        let raw = RawCoalgebra {
            name: s.name.clone().unwrap_or_else(|| "C".into()),
            field: f,
            basis_labels: labels(&s.basis, d),
            comult: ctx.mat(f, &s.comult, (d * d, d), "comult")?,
            counit: ctx.column(f, &s.counit, d, "counit")?.transpose(),
        };
        Ok((raw, ctx))
    }

    pub fn algebra_ref(&mut self, r: &Ref, ctx: &Ctx) -> Result<Algebra, CliError> {
        let (spec, ctx) = self.resolve(r, ctx)?;
        self.algebra(&spec, &ctx)
    }

    pub fn algebra(&mut self, spec: &SpecFile, ctx: &Ctx) -> Result<Algebra, CliError> {
        match spec {
            SpecFile::Algebra(s) => Ok(check_algebra(self.raw_algebra(s, ctx)?.0)?),
            SpecFile::Bimonoid(_) => Ok(self.bimonoid(spec, ctx)?.algebra().clone()),
            other => Err(wrong_kind(ctx, "algebra", other)),
        }
    }

    pub fn coalgebra_ref(&mut self, r: &Ref, ctx: &Ctx) -> Result<Coalgebra, CliError> {
        let (spec, ctx) = self.resolve(r, ctx)?;
        self.coalgebra(&spec, &ctx)
    }

    pub fn coalgebra(&mut self, spec: &SpecFile, ctx: &Ctx) -> Result<Coalgebra, CliError> {
        match spec {
            SpecFile::Coalgebra(s) => Ok(check_coalgebra(self.raw_coalgebra(s, ctx)?.0)?),
            SpecFile::Bimonoid(_) => Ok(self.bimonoid(spec, ctx)?.coalgebra().clone()),
            other => Err(wrong_kind(ctx, "coalgebra", other)),
        }
    }

    pub fn module_ref(&mut self, r: &Ref, ctx: &Ctx) -> Result<Module, CliError> {
        let (spec, ctx) = self.resolve(r, ctx)?;
        self.module(&spec, &ctx)
    }

    pub fn module(&mut self, spec: &SpecFile, ctx: &Ctx) -> Result<Module, CliError> {
        let SpecFile::Module(s) = spec else {
            return Err(wrong_kind(ctx, "module", spec));
        };
        let a = self.algebra_ref(&s.over, ctx)?;
        let d = ctx.positive(s.action.len(), "module")?;
        let action = ctx.mat(a.field(), &s.action, (d, a.dim() * d), "action")?;
        Ok(check_module(s.name.clone().unwrap_or_else(|| "M".into()), &a, action)?)
    }

    pub fn comodule_ref(&mut self, r: &Ref, ctx: &Ctx) -> Result<Comodule, CliError> {
        let (spec, ctx) = self.resolve(r, ctx)?;
        self.comodule(&spec, &ctx)
    }

    pub fn comodule(&mut self, spec: &SpecFile, ctx: &Ctx) -> Result<Comodule, CliError> {
        let SpecFile::Comodule(s) = spec else {
            return Err(wrong_kind(ctx, "comodule", spec));
        };
        let c = self.coalgebra_ref(&s.over, ctx)?;
        let rows = s.coaction.len();
        let d = ctx.positive(rows / c.dim(), "comodule")?;
        let coaction = ctx.mat(c.field(), &s.coaction, (c.dim() * d, d), "coaction")?;
        Ok(check_comodule(s.name.clone().unwrap_or_else(|| "X".into()), &c, coaction)?)
    }

    pub fn bimonoid_ref(&mut self, r: &Ref, ctx: &Ctx) -> Result<Bimonoid, CliError> {
        let (spec, ctx) = self.resolve(r, ctx)?;
        self.bimonoid(&spec, &ctx)
    }

    pub fn bimonoid(&mut self, spec: &SpecFile, ctx: &Ctx) -> Result<Bimonoid, CliError> {
        let SpecFile::Bimonoid(s) = spec else {
            return Err(wrong_kind(ctx, "bimonoid", spec));
        };
        let (ctx, f) = ctx.with_field(&s.field, self.field)?;
        let d = ctx.positive(s.unit.len(), "bimonoid")?;
        let name = s.name.clone().unwrap_or_else(|| "H".into());
        let a = check_algebra(RawAlgebra {
            name: name.clone(),
            field: f,
            basis_labels: labels(&s.basis, d),
            mult: ctx.mat(f, &s.mult, (d, d * d), "mult")?,
            unit: ctx.column(f, &s.unit, d, "unit")?,
        })?;
        let c = check_coalgebra(RawCoalgebra {
            name,
            field: f,
            basis_labels: labels(&s.basis, d),
            comult: ctx.mat(f, &s.comult, (d * d, d), "comult")?,
            counit: ctx.column(f, &s.counit, d, "counit")?.transpose(),
        })?;
        Ok(check_bimonoid(a, c)?)
    }

    pub fn module_comonoid_ref(&mut self, r: &Ref, ctx: &Ctx) -> Result<ModuleComonoid, CliError> {
        let (spec, ctx) = self.resolve(r, ctx)?;
        self.module_comonoid(&spec, &ctx)
    }

    pub fn module_comonoid(&mut self, spec: &SpecFile, ctx: &Ctx) -> Result<ModuleComonoid, CliError> {
        let SpecFile::ModuleComonoid(s) = spec else {
            return Err(wrong_kind(ctx, "module_comonoid", spec));
        };
        let h = self.bimonoid_ref(&s.bimonoid, ctx)?;
        let f = h.field();
        let d = ctx.positive(s.counit.len(), "module comonoid")?;
        let name = s.name.clone().unwrap_or_else(|| "M".into());
        let module = check_module(name.clone(), h.algebra(), ctx.mat(f, &s.action, (d, h.dim() * d), "action")?)?;
        let coalgebra = check_coalgebra(RawCoalgebra {
            name,
            field: f,
            basis_labels: labels(&None, d),
            comult: ctx.mat(f, &s.comult, (d * d, d), "comult")?,
            counit: ctx.column(f, &s.counit, d, "counit")?.transpose(),
        })?;
        Ok(check_module_comonoid(h, module, coalgebra)?)
    }

    pub fn comodule_monoid_ref(&mut self, r: &Ref, ctx: &Ctx) -> Result<ComoduleMonoid, CliError> {
        let (spec, ctx) = self.resolve(r, ctx)?;
        self.comodule_monoid(&spec, &ctx)
    }

    pub fn comodule_monoid(&mut self, spec: &SpecFile, ctx: &Ctx) -> Result<ComoduleMonoid, CliError> {
        let SpecFile::ComoduleMonoid(s) = spec else {
            return Err(wrong_kind(ctx, "comodule_monoid", spec));
        };
        let h = self.bimonoid_ref(&s.bimonoid, ctx)?;
        let f = h.field();
        let d = ctx.positive(s.unit.len(), "comodule monoid")?;
        let name = s.name.clone().unwrap_or_else(|| "S".into());
        let algebra = check_algebra(RawAlgebra {
            name: name.clone(),
            field: f,
            basis_labels: labels(&None, d),
            mult: ctx.mat(f, &s.mult, (d, d * d), "mult")?,
            unit: ctx.column(f, &s.unit, d, "unit")?,
        })?;
        let comodule = check_comodule(name, h.coalgebra(), ctx.mat(f, &s.coaction, (h.dim() * d, d), "coaction")?)?;
        Ok(check_comodule_monoid(h, algebra, comodule)?)
    }

    pub fn hopf_module(&mut self, spec: &SpecFile, ctx: &Ctx) -> Result<HopfModule, CliError> {
        let SpecFile::HopfModule(s) = spec else {
            return Err(wrong_kind(ctx, "hopf_module", spec));
        };
        let sm = self.comodule_monoid_ref(&s.comodule_monoid, ctx)?;
        let mc = self.module_comonoid_ref(&s.module_comonoid, ctx)?;
        let f = sm.bimonoid().field();
        let d = ctx.positive(s.action.len(), "Hopf module")?;
        let name = s.name.clone().unwrap_or_else(|| "N".into());
        let action = check_module(name.clone(), sm.algebra(), ctx.mat(f, &s.action, (d, sm.algebra().dim() * d), "action")?)?;
        let dm = mc.coalgebra().dim();
        let coaction = check_comodule(name, mc.coalgebra(), ctx.mat(f, &s.coaction, (dm * d, d), "coaction")?)?;
        Ok(check_hopf_module(sm, mc, action, coaction)?)
    }

    pub fn module_monoid_ref(&mut self, r: &Ref, ctx: &Ctx) -> Result<ModuleMonoid, CliError> {
        let (spec, ctx) = self.resolve(r, ctx)?;
        self.module_monoid(&spec, &ctx)
    }

    pub fn module_monoid(&mut self, spec: &SpecFile, ctx: &Ctx) -> Result<ModuleMonoid, CliError> {
        let SpecFile::ModuleMonoid(s) = spec else {
            return Err(wrong_kind(ctx, "module_monoid", spec));
        };
        let a = self.algebra_ref(&s.over, ctx)?;
        let f = a.field();
        let d = ctx.positive(s.unit.len(), "module monoid")?;
        let name = s.name.clone().unwrap_or_else(|| "N".into());
        let module = check_module(name.clone(), &a, ctx.mat(f, &s.action, (d, a.dim() * d), "action")?)?;
        let monoid = check_algebra(RawAlgebra {
            name,
            field: f,
            basis_labels: labels(&None, d),
            mult: ctx.mat(f, &s.mult, (d, d * d), "mult")?,
            unit: ctx.column(f, &s.unit, d, "unit")?,
        })?;
        Ok(check_module_monoid(module, monoid)?)
    }

    pub fn algebra_morphism(&mut self, spec: &SpecFile, ctx: &Ctx) -> Result<AlgebraMorphism, CliError> {
        let SpecFile::AlgebraMorphism(s) = spec else {
            return Err(wrong_kind(ctx, "algebra_morphism", spec));
        };
        let a = self.algebra_ref(&s.source, ctx)?;
        let b = self.algebra_ref(&s.target, ctx)?;
        let m = ctx.mat(a.field(), &s.matrix, (b.dim(), a.dim()), "matrix")?;
        Ok(AlgebraMorphism::new(a, b, m)?)
    }

    pub fn coalgebra_morphism(&mut self, spec: &SpecFile, ctx: &Ctx) -> Result<CoalgebraMorphism, CliError> {
        let SpecFile::CoalgebraMorphism(s) = spec else {
            return Err(wrong_kind(ctx, "coalgebra_morphism", spec));
        };
        let c = self.coalgebra_ref(&s.source, ctx)?;
        let d = self.coalgebra_ref(&s.target, ctx)?;
        let m = ctx.mat(c.field(), &s.matrix, (d.dim(), c.dim()), "matrix")?;
        Ok(CoalgebraMorphism::new(c, d, m)?)
    }

    /// A measuring read without checking the measuring property.
    pub fn measuring(&mut self, spec: &SpecFile, ctx: &Ctx) -> Result<MeasuringMap, CliError> {
        let SpecFile::Measuring(s) = spec else {
            return Err(wrong_kind(ctx, "measuring", spec));
        };
        let c = self.coalgebra_ref(&s.coalgebra, ctx)?;
        let a = self.algebra_ref(&s.source, ctx)?;
        let b = self.algebra_ref(&s.target, ctx)?;
        let psi = ctx.mat(c.field(), &s.psi, (a.dim() * b.dim(), c.dim()), "psi")?;
        Ok(MeasuringMap { c, a, b, psi })
    }

    /// Matrices from a hints file: a JSON list of row lists.
    pub fn hints(&mut self, path: &str, field: Field) -> Result<Vec<Mat>, CliError> {
        let bytes = std::fs::read(path).map_err(|e| CliError::Io(format!("{path}: {e}")))?;
        self.inputs.push((path.to_string(), sha256_hex(&bytes)));
        let rows: Vec<Rows> = serde_json::from_slice(&bytes)
            .map_err(|e| CliError::Parse { path: path.to_string(), message: e.to_string() })?;
        let ctx = Ctx { dir: PathBuf::new(), path: path.to_string(), field: Some(field) };
        rows.iter()
            .map(|r| {
                let cols = r.first().map_or(0, Vec::len);
                ctx.mat(field, r, (r.len(), cols), "hint")
            })
            .collect()
    }
}
