use measuring_lab::algcore::{convolution_algebra, dual_algebra, dual_coalgebra, Algebra};
use measuring_lab::exactlin::Field;
use measuring_lab::fibcat::{factorize, fixed_base_fibred_adjoint_check, FibInstance, Side, TotalCategory, Variance};
use measuring_lab::hopf::{
    dual_bimonoid, hopf_lift_check, hopf_lift_truncations, qmn_comodule_monoid, qmn_truncations,
};
use measuring_lab::measuring::{
    adjunction_bijection_census, check_isocomod, couniversal_factor, finite_dual, measuring_comodule_truncated,
    measuring_comonoid_truncated, measuring_identities_hold, verify_measuring, Budget, TruncatedMeasuringComonoid,
    TruncationOptions,
};
use measuring_lab::modcomod::{corestrict, restrict};
use serde_json::{json, Value};

use crate::config::Budgets;
use crate::error::CliError;
use crate::report::Report;
use crate::spec::{
    algebra_spec, bimonoid_spec, coalgebra_spec, comodule_spec, mat_rows, module_spec, Loaded, Loader, SpecFile,
};
use crate::truncation::{cache_key, is_regular, p_bundle, q_bundle, verify_p_bundle, verify_q_bundle, Cache, PBundle, QBundle};

/// Flags shared by all commands.
pub struct Opts {
    pub degree: Option<usize>,
    pub m_max: usize,
    pub budgets: Budgets,
    pub hints: Option<String>,
    pub cache: Option<Cache>,
    /// Where to write a structure produced by the command.
    pub emit: Option<String>,
    pub v_dim: usize,
    pub lax: bool,
}

impl Opts {
    fn degree_or(&self, d: usize) -> usize {
        self.degree.unwrap_or(d)
    }

    fn truncation(&self, loader: &mut Loader, field: Field, degree: usize) -> Result<TruncationOptions, CliError> {
        let mut o = TruncationOptions::degree(degree)
            .with_m_max(self.m_max)
            .with_budget(Budget(self.budgets.enumeration));
        if let Some(h) = &self.hints {
            o = o.with_hints(loader.hints(h, field)?);
        }
        Ok(o)
    }
}

fn emit(opts: &Opts, report: &mut Report, spec: &SpecFile) -> Result<(), CliError> {
    report.set("structure", spec);
    if let Some(path) = &opts.emit {
        let text = serde_json::to_string_pretty(spec).expect("serializable spec") + "\n";
        std::fs::write(path, text).map_err(|e| CliError::Io(format!("{path}: {e}")))?;
    }
    Ok(())
}

fn guard(p: &TruncatedMeasuringComonoid, budgets: &Budgets) -> Result<(), CliError> {
    let d = p.ambient().words().len();
    if d > budgets.max_truncation_dim {
        return Err(CliError::Budget(format!(
            "truncation ambient of dimension {d} exceeds max_truncation_dim = {}",
            budgets.max_truncation_dim
        )));
    }
    Ok(())
}

fn record(report: &mut Report, checks: Vec<(String, bool)>) {
    for (name, ok) in checks {
        report.check(name, ok);
    }
}

// ---------------------------------------------------------------- structures

pub fn check(loader: &mut Loader, opts: &Opts, path: &str) -> Result<Report, CliError> {
    let mut report = Report::new("check");
    let loaded = loader.read(path)?;
    let ctx = loader.context(&loaded);
    let spec = &loaded.spec;
    report.set("kind", spec.kind());
    match spec {
        SpecFile::Algebra(_) => {
            if let Some(a) = report.check_result("algebra axioms", loader.algebra(spec, &ctx))? {
                report.set("dim", a.dim());
                report.set("commutative", a.is_commutative());
            }
        }
        SpecFile::Coalgebra(_) => {
            if let Some(c) = report.check_result("coalgebra axioms", loader.coalgebra(spec, &ctx))? {
                report.set("dim", c.dim());
                report.set("cocommutative", c.is_cocommutative());
            }
        }
        SpecFile::Module(_) => {
            if let Some(m) = report.check_result("module axioms", loader.module(spec, &ctx))? {
                report.set("dim", m.dim());
            }
        }
        SpecFile::Comodule(_) => {
            if let Some(x) = report.check_result("comodule axioms", loader.comodule(spec, &ctx))? {
                report.set("dim", x.dim());
            }
        }
        SpecFile::Bimonoid(_) => {
            if let Some(h) = report.check_result("bimonoid compatibility", loader.bimonoid(spec, &ctx))? {
                report.set("dim", h.dim());
            }
        }
        SpecFile::ModuleComonoid(_) => {
            report.check_result("module comonoid diagrams", loader.module_comonoid(spec, &ctx))?;
        }
        SpecFile::ComoduleMonoid(_) => {
            report.check_result("comodule monoid diagrams", loader.comodule_monoid(spec, &ctx))?;
        }
        SpecFile::HopfModule(_) => {
            if let Some(x) = report.check_result("Hopf module compatibility", loader.hopf_module(spec, &ctx))? {
                report.set("dim", x.dim());
            }
        }
        SpecFile::ModuleMonoid(_) => {
            report.check_result("module monoid diagrams", loader.module_monoid(spec, &ctx))?;
        }
        SpecFile::AlgebraMorphism(_) => {
            report.check_result("algebra morphism", loader.algebra_morphism(spec, &ctx))?;
        }
        SpecFile::CoalgebraMorphism(_) => {
            report.check_result("coalgebra morphism", loader.coalgebra_morphism(spec, &ctx))?;
        }
        SpecFile::Measuring(_) => {
            let m = loader.measuring(spec, &ctx)?;
            report.check("measuring", verify_measuring(&m)?);
        }
        SpecFile::FincatInstance(s) => {
            let inst = FibInstance::from_spec(&s.instance, opts.budgets.max_category_morphisms)?;
            fib_run(&mut report, &inst);
        }
    }
    Ok(report)
}

pub fn dual(loader: &mut Loader, opts: &Opts, path: &str) -> Result<Report, CliError> {
    let mut report = Report::new("dual");
    let loaded = loader.read(path)?;
    let ctx = loader.context(&loaded);
    let out = match &loaded.spec {
        SpecFile::Algebra(_) => {
            let a = loader.algebra(&loaded.spec, &ctx)?;
            let c = dual_coalgebra(&a);
            report.check("dual passes the coalgebra axioms", true);
            SpecFile::Coalgebra(coalgebra_spec(&c))
        }
        SpecFile::Coalgebra(_) => {
            let c = loader.coalgebra(&loaded.spec, &ctx)?;
            let a = dual_algebra(&c);
            report.check("dual passes the algebra axioms", true);
            SpecFile::Algebra(algebra_spec(&a))
        }
        SpecFile::Bimonoid(_) => {
            let h = loader.bimonoid(&loaded.spec, &ctx)?;
            let d = report.check_result("dual passes the bimonoid diagrams", dual_bimonoid(&h).map_err(CliError::from))?;
            match d {
                Some(d) => SpecFile::Bimonoid(bimonoid_spec(&d)),
                None => return Ok(report),
            }
        }
        other => return Err(CliError::schema(path, format!("no dual of a {}", other.kind()))),
    };
    emit(opts, &mut report, &out)?;
    Ok(report)
}

pub fn convolution(loader: &mut Loader, opts: &Opts, c_path: &str, a_path: &str) -> Result<Report, CliError> {
    let mut report = Report::new("convolution");
    let lc = loader.read(c_path)?;
    let c = loader.coalgebra(&lc.spec, &loader.context(&lc))?;
    let la = loader.read(a_path)?;
    let a = loader.algebra(&la.spec, &loader.context(&la))?;
    let conv = convolution_algebra(&c, &a)?;
    report.check("convolution passes the algebra axioms", true);
    report.set("dim", conv.dim());
    emit(opts, &mut report, &SpecFile::Algebra(algebra_spec(&conv)))?;
    Ok(report)
}

pub fn restrict_cmd(loader: &mut Loader, opts: &Opts, f_path: &str, n_path: &str) -> Result<Report, CliError> {
    let mut report = Report::new("restrict");
    let lf = loader.read(f_path)?;
    let f = loader.algebra_morphism(&lf.spec, &loader.context(&lf))?;
    let ln = loader.read(n_path)?;
    let n = loader.module(&ln.spec, &loader.context(&ln))?;
    let m = restrict(&f, &n)?;
    report.check("restriction passes the module axioms", true);
    emit(opts, &mut report, &SpecFile::Module(module_spec(&m)))?;
    Ok(report)
}

pub fn corestrict_cmd(loader: &mut Loader, opts: &Opts, g_path: &str, x_path: &str) -> Result<Report, CliError> {
    let mut report = Report::new("corestrict");
    let lg = loader.read(g_path)?;
    let g = loader.coalgebra_morphism(&lg.spec, &loader.context(&lg))?;
    let lx = loader.read(x_path)?;
    let x = loader.comodule(&lx.spec, &loader.context(&lx))?;
    let y = corestrict(&g, &x)?;
    report.check("corestriction passes the comodule axioms", true);
    emit(opts, &mut report, &SpecFile::Comodule(comodule_spec(&y)))?;
    Ok(report)
}

pub fn measure_verify(loader: &mut Loader, path: &str) -> Result<Report, CliError> {
    let mut report = Report::new("measure-verify");
    let loaded = loader.read(path)?;
    let m = loader.measuring(&loaded.spec, &loader.context(&loaded))?;
    let adjunct = verify_measuring(&m)?;
    let direct = measuring_identities_hold(&m);
    report.check("adjunct A → [C, B] is an algebra map", adjunct);
    report.check("measuring identities hold elementwise", direct);
    Ok(report)
}

// ---------------------------------------------------------------- truncations

fn algebra_arg(loader: &mut Loader, path: &str) -> Result<Algebra, CliError> {
    let l = loader.read(path)?;
    let ctx = loader.context(&l);
    loader.algebra(&l.spec, &ctx)
}

fn stabilization(dims: &[usize]) -> Option<usize> {
    let last = *dims.last()?;
    let mut from = dims.len() - 1;
    while from > 0 && dims[from - 1] == last {
        from -= 1;
    }
    Some(from)
}

/// `P_d(A, B)` for `d = 0..=n`; the last one is returned.
fn p_series(
    loader: &mut Loader,
    opts: &Opts,
    a: &Algebra,
    b: &Algebra,
    n: usize,
) -> Result<(TruncatedMeasuringComonoid, Vec<usize>), CliError> {
    let mut dims = Vec::new();
    let mut last = None;
    for d in 0..=n {
        let o = opts.truncation(loader, a.field(), d)?;
        let p = measuring_comonoid_truncated(a, b, &o)?;
        guard(&p, &opts.budgets)?;
        dims.push(p.p_n.dim());
        last = Some(p);
    }
    Ok((last.expect("degree range is non-empty"), dims))
}

fn request(kind: &str, inputs: &[&SpecFile], opts: &Opts, degree: usize) -> Value {
    json!({
        "kind": kind,
        "inputs": inputs,
        "degree": degree,
        "m_max": opts.m_max,
        "hints": opts.hints,
    })
}

pub fn pab(loader: &mut Loader, opts: &Opts, a_path: &str, b_path: &str) -> Result<Report, CliError> {
    let mut report = Report::new("pab");
    let a = algebra_arg(loader, a_path)?;
    let b = algebra_arg(loader, b_path)?;
    let n = opts.degree_or(2);
    let req = request(
        "pab",
        &[&SpecFile::Algebra(algebra_spec(&a)), &SpecFile::Algebra(algebra_spec(&b))],
        opts,
        n,
    );
    let key = cache_key(&req);
    let cached = opts.cache.as_ref().and_then(|c| c.get(&key, &req));
    let mut from_cache = None;
    if let Some(v) = cached {
        if let Ok((bundle, dims)) = serde_json::from_value::<(PBundle, Vec<usize>)>(v) {
            let checks = verify_p_bundle(loader, &bundle)?;
            if checks.iter().all(|c| c.1) {
                from_cache = Some((bundle, dims, checks));
            }
        }
    }
    let hit = from_cache.is_some();
    let (bundle, dims, checks) = match from_cache {
        Some(t) => t,
        None => {
            let (p, dims) = p_series(loader, opts, &a, &b, n)?;
            let id = couniversal_factor(&p, &p.canonical_measuring)?;
            if !id.matrix().is_identity() {
                return Err(CliError::check("couniversality", "the canonical measuring does not factor as the identity"));
            }
            let bundle = p_bundle(&p);
            let checks = verify_p_bundle(loader, &bundle)?;
            if let Some(c) = &opts.cache {
                c.put(&key, &req, &serde_json::to_value((&bundle, &dims)).expect("serializable bundle"))?;
            }
            (bundle, dims, checks)
        }
    };
    record(&mut report, checks);
    report.set("dim", bundle.coalgebra.counit.len());
    report.set("points", bundle.points.len());
    report.set("stabilization", json!({ "dims": dims, "stable_from": stabilization(&dims) }));
    report.set("bundle", &bundle);
    if opts.cache.is_some() {
        report.runtime.insert("cache".into(), json!(if hit { "hit" } else { "miss" }));
    }
    if let Some(path) = &opts.emit {
        std::fs::write(path, serde_json::to_string_pretty(&bundle).expect("serializable bundle") + "\n")?;
    }
    Ok(report)
}

pub fn qmn(loader: &mut Loader, opts: &Opts, m_path: &str, n_path: &str) -> Result<Report, CliError> {
    let mut report = Report::new("qmn");
    let lm = loader.read(m_path)?;
    let m = loader.module(&lm.spec, &loader.context(&lm))?;
    let ln = loader.read(n_path)?;
    let n = loader.module(&ln.spec, &loader.context(&ln))?;
    let (a, b) = (m.over().clone(), n.over().clone());
    let deg = opts.degree_or(2);
    let req = request(
        "qmn",
        &[&SpecFile::Module(module_spec(&m)), &SpecFile::Module(module_spec(&n))],
        opts,
        deg,
    );
    let key = cache_key(&req);
    let mut from_cache = None;
    if let Some(v) = opts.cache.as_ref().and_then(|c| c.get(&key, &req)) {
        if let Ok(bundle) = serde_json::from_value::<QBundle>(v) {
            let checks = verify_q_bundle(loader, &bundle)?;
            if checks.iter().all(|c| c.1) {
                from_cache = Some((bundle, checks));
            }
        }
    }
    let hit = from_cache.is_some();
    let (bundle, checks) = match from_cache {
        Some(t) => t,
        None => {
            let o = opts.truncation(loader, a.field(), deg)?;
            let p = measuring_comonoid_truncated(&a, &b, &o)?;
            guard(&p, &opts.budgets)?;
            let q = measuring_comodule_truncated(&m, &n, &p)?;
            let bundle = q_bundle(&q);
            let checks = verify_q_bundle(loader, &bundle)?;
            if let Some(c) = &opts.cache {
                c.put(&key, &req, &serde_json::to_value(&bundle).expect("serializable bundle"))?;
            }
            (bundle, checks)
        }
    };
    record(&mut report, checks);
    report.set("p_dim", bundle.p.coalgebra.counit.len());
    report.set("q_dim", bundle.coaction.first().map_or(0, Vec::len));
    if is_regular(&m, &a) {
        let o = opts.truncation(loader, a.field(), deg)?;
        let iso = check_isocomod(&a, &b, 1, &n, &o)?;
        report.check("Q_n(A, N) ≅ P_n ⊗ N as comodules", iso.is_iso());
        if b.dim() == 1 {
            let p = measuring_comonoid_truncated(&a, &b, &o)?;
            let h = couniversal_factor(&p, &finite_dual(&a).1)?;
            report.check("P_n(A, k) ≅ A°", h.matrix().is_invertible());
        }
    }
    report.set("bundle", &bundle);
    if opts.cache.is_some() {
        report.runtime.insert("cache".into(), json!(if hit { "hit" } else { "miss" }));
    }
    if let Some(path) = &opts.emit {
        std::fs::write(path, serde_json::to_string_pretty(&bundle).expect("serializable bundle") + "\n")?;
    }
    Ok(report)
}

pub fn census(loader: &mut Loader, opts: &Opts, a_path: &str, b_path: &str, c_path: &str) -> Result<Report, CliError> {
    let mut report = Report::new("census");
    let a = algebra_arg(loader, a_path)?;
    let b = algebra_arg(loader, b_path)?;
    let lc = loader.read(c_path)?;
    let c = loader.coalgebra(&lc.spec, &loader.context(&lc))?;
    let o = opts.truncation(loader, a.field(), opts.degree_or(2))?;
    let p = measuring_comonoid_truncated(&a, &b, &o)?;
    guard(&p, &opts.budgets)?;
    let r = adjunction_bijection_census(&p, &c, Budget(opts.budgets.enumeration))?;
    report.set("measurings", r.measurings);
    report.set("coalgebra_maps", r.coalgebra_maps);
    report.check("measurings and coalgebra maps are equinumerous", r.measurings == r.coalgebra_maps);
    report.check("distinct measurings factor through distinct maps", r.injective);
    report.check("every coalgebra map round-trips through the projection", r.round_trips);
    Ok(report)
}

pub fn isocomod(loader: &mut Loader, opts: &Opts, a_path: &str, b_path: &str, n_path: &str) -> Result<Report, CliError> {
    let mut report = Report::new("isocomod");
    let a = algebra_arg(loader, a_path)?;
    let b = algebra_arg(loader, b_path)?;
    let ln = loader.read(n_path)?;
    let n = loader.module(&ln.spec, &loader.context(&ln))?;
    let o = opts.truncation(loader, a.field(), opts.degree_or(2))?;
    let r = check_isocomod(&a, &b, opts.v_dim, &n, &o)?;
    report.check("P_n ⊗ [V, N] ≅ Q_n(A ⊗ V, N)", r.is_iso());
    let rows: Vec<Value> = r
        .rows
        .iter()
        .map(|row| {
            json!({
                "degree": row.degree,
                "p_dim": row.p_dim,
                "source_dim": row.source_dim,
                "q_dim": row.q_dim,
                "is_iso": row.is_iso,
            })
        })
        .collect();
    report.set("rows", rows);
    report.set("stable_from", r.stable_from);
    Ok(report)
}

// ---------------------------------------------------------------- fibrations

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum FibMode {
    Groth,
    Factor,
    Adjoint,
    Dual,
    Chi,
}

fn fib_instance(loader: &mut Loader, opts: &Opts, path: &str) -> Result<(FibInstance, Loaded), CliError> {
    let loaded = loader.read(path)?;
    let SpecFile::FincatInstance(s) = &loaded.spec else {
        return Err(CliError::schema(path, format!("expected kind \"fincat_instance\", found {:?}", loaded.spec.kind())));
    };
    let inst = FibInstance::from_spec(&s.instance, opts.budgets.max_category_morphisms)?;
    Ok((inst, loaded))
}

fn fib_run(report: &mut Report, inst: &FibInstance) {
    let r = inst.run();
    report.check("factorizations are unique", r.factorization_unique);
    report.check("fibre extraction round-trips", r.round_trip);
    report.check_with("adjoint synthesized", r.synthesized, r.error.as_ref().map(|e| json!(e)));
    report.check("ω invertible ⇔ liftings preserved", r.biconditional);
    report.check("converse extraction re-verifies the fibrewise adjunctions", r.converse);
    report.check("Cat² adjunction conditions", r.cat2);
    report.set("omega_invertible", r.omega_invertible);
    report.set("preserves_liftings", r.preserves_liftings);
    report.set("morphisms", r.morphisms);
}

fn all_factor(t: &TotalCategory) -> bool {
    (0..t.category().morphism_count()).all(|m| factorize(t, m).is_ok())
}

pub fn fib(loader: &mut Loader, opts: &Opts, mode: FibMode, path: &str) -> Result<Report, CliError> {
    let mut report = Report::new(&format!("fib {}", format!("{mode:?}").to_lowercase()));
    let (inst, _) = fib_instance(loader, opts, path)?;
    let totals = [("source", inst.cell.source()), ("target", inst.cell.target())];
    match mode {
        FibMode::Groth => {
            for (side, t) in totals {
                let ok = t.extract_indexed().map(|ic| &ic == t.indexed()).unwrap_or(false);
                report.check(format!("{side}: fibres and reindexing recovered from the total category"), ok);
                report.set(
                    side,
                    json!({
                        "objects": t.category().object_count(),
                        "morphisms": t.category().morphism_count(),
                    }),
                );
            }
        }
        FibMode::Factor => {
            for (side, t) in totals {
                report.check(format!("{side}: every morphism factors uniquely"), all_factor(t));
            }
        }
        FibMode::Adjoint => {
            fib_run(&mut report, &inst);
            if let Ok(s) = inst.synthesize() {
                report.set("adjoint_is_identity", s.adjoint.is_identity());
            }
        }
        FibMode::Dual => {
            let d = inst.dualize();
            report.check("dualizing twice is the identity", d.dualize() == inst);
            fib_run(&mut report, &d);
            report.set("structure", SpecFile::FincatInstance(crate::spec::FincatSpec { instance: d.to_spec() }));
        }
        FibMode::Chi => {
            let side = match inst.cell.variance() {
                Variance::Contravariant => Side::Left,
                Variance::Covariant => Side::Right,
            };
            let r = fixed_base_fibred_adjoint_check(&inst.cell, &inst.fibrewise, side)?;
            report.check("χ invertible ⇔ the adjoint is fibred", r.consistent());
            report.set("chi_invertible", r.chi_invertible);
            report.set("fibred_adjoint", r.fibred_adjoint);
        }
    }
    Ok(report)
}

// ---------------------------------------------------------------- Hopf structures

pub fn hopf_check(loader: &mut Loader, opts: &Opts, path: &str) -> Result<Report, CliError> {
    let mut r = check(loader, opts, path)?;
    r.command = "hopf check".into();
    Ok(r)
}

pub fn hopf_qmonoid(loader: &mut Loader, opts: &Opts, m_path: &str, n_path: &str) -> Result<Report, CliError> {
    let mut report = Report::new("hopf qmonoid");
    let lm = loader.read(m_path)?;
    let m = loader.module_comonoid(&lm.spec, &loader.context(&lm))?;
    let ln = loader.read(n_path)?;
    let n = loader.module_monoid(&ln.spec, &loader.context(&ln))?;
    let o = opts.truncation(loader, m.bimonoid().field(), opts.degree_or(2))?;
    let t = qmn_truncations(&m, &n, &o)?;
    guard(&t.q.p, &opts.budgets)?;
    guard(&t.q2.p, &opts.budgets)?;
    let s = report.check_result(
        "Q_n(M, N) is a comodule monoid over the bimonoid P_n(H, A)",
        qmn_comodule_monoid(&m, &n, &t).map_err(CliError::from),
    )?;
    if let Some(s) = s {
        report.set("p_dim", s.bimonoid.dim());
        report.set("q_dim", s.monoid.algebra().dim());
        report.set("mult", mat_rows(s.monoid.algebra().mult()));
        report.set("unit", mat_rows(s.monoid.algebra().unit()));
    }
    Ok(report)
}

pub fn hopf_lift(loader: &mut Loader, opts: &Opts, path: &str) -> Result<Report, CliError> {
    let mut report = Report::new("hopf lift");
    let l = loader.read(path)?;
    let x = loader.hopf_module(&l.spec, &loader.context(&l))?;
    let o = opts.truncation(loader, x.bimonoid().field(), opts.degree_or(2))?;
    let t = hopf_lift_truncations(&x, &o, opts.lax)?;
    guard(&t.q_x.p, &opts.budgets)?;
    let lift = report.check_result(
        "Q_n(X, k) is an H°-Hopf module with H° ≅ P_n(H, k) ≅ Q_n(H, k)",
        hopf_lift_check(&x, &t).map_err(CliError::from),
    )?;
    if let Some(lift) = lift {
        if opts.lax {
            report.check("the lax-structure route agrees", lift.lax_route_checked);
        }
        report.set("dim", lift.lifted.dim());
        report.set("to_p", mat_rows(lift.to_p.matrix()));
        report.set("to_q", mat_rows(&lift.to_q.k));
        report.set("action", mat_rows(lift.lifted.action().action()));
        report.set("coaction", mat_rows(lift.lifted.coaction().coaction()));
    }
    Ok(report)
}
