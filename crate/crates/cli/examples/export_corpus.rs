//! Regenerates the sample structure files under `corpus/`.
//!
//!     cargo run -p measuring-lab-cli --example export_corpus -- corpus

use std::path::{Path, PathBuf};

use measuring_lab::algcore::standard::{
    cyclic_group_algebra, divided_power_coalgebra, dual_numbers, ground_algebra, ground_coalgebra, matrix_coalgebra,
    truncated_polynomial,
};
use measuring_lab::algcore::Algebra;
use measuring_lab::exactlin::{Field, Mat};
use measuring_lab::fibcat::corpus;
use measuring_lab::hopf::{cyclic_group_bimonoid, ComoduleMonoid, HopfModule, ModuleComonoid, ModuleMonoid};
use measuring_lab::modcomod::{Comodule, Module};
use measuring_lab_cli::spec::{
    algebra_spec, bimonoid_spec, coalgebra_spec, comodule_spec, mat_rows, module_spec, sha256_hex, ComoduleMonoidSpec,
    ComoduleSpec, FincatSpec, HopfModuleSpec, MeasuringSpec, ModuleComonoidSpec, ModuleMonoidSpec, ModuleSpec,
    MorphismSpec, Ref, ScalarText, SpecFile,
};
use serde_json::json;

struct Writer {
    dir: PathBuf,
    manifest: Vec<serde_json::Value>,
}

impl Writer {
    fn put(&mut self, file: &str, spec: &SpecFile, expect: &str, note: &str) {
        self.raw(file, &(serde_json::to_string_pretty(spec).unwrap() + "\n"), spec.kind(), expect, note);
    }

    fn raw(&mut self, file: &str, text: &str, kind: &str, expect: &str, note: &str) {
        std::fs::write(self.dir.join(file), text).unwrap();
        self.manifest.push(json!({
            "file": file,
            "kind": kind,
            "expect": expect,
            "description": note,
            "sha256": sha256_hex(text.as_bytes()),
        }));
    }
}

fn path(p: &str) -> Ref {
    Ref::Path(p.into())
}

fn vector(m: &Mat) -> Vec<ScalarText> {
    mat_rows(m).into_iter().flatten().collect()
}

fn module_at(m: &Module, over: &str) -> SpecFile {
    SpecFile::Module(ModuleSpec { over: path(over), ..module_spec(m) })
}

fn comodule_at(x: &Comodule, over: &str) -> SpecFile {
    SpecFile::Comodule(ComoduleSpec { over: path(over), ..comodule_spec(x) })
}

fn algebra(a: &Algebra) -> SpecFile {
    SpecFile::Algebra(algebra_spec(a))
}

fn main() {
    let dir = std::env::args().nth(1).unwrap_or_else(|| "corpus".into());
    std::fs::create_dir_all(&dir).unwrap();
    let mut w = Writer { dir: Path::new(&dir).to_path_buf(), manifest: Vec::new() };
    let q = Field::Rationals;
    let f2 = Field::prime(2).unwrap();
    let f3 = Field::prime(3).unwrap();

    // algebras and coalgebras
    let k = ground_algebra(q);
    let dn = dual_numbers(q);
    w.put("k.json", &algebra(&k), "PASS", "the ground field Q");
    w.put("dual_numbers.json", &algebra(&dn), "PASS", "Q[x]/(x^2)");
    w.put("f2_c2.json", &algebra(&cyclic_group_algebra(f2, 2)), "PASS", "group algebra of C2 over F2");
    w.put("f3_c3.json", &algebra(&cyclic_group_algebra(f3, 3)), "PASS", "group algebra of C3 over F3");
    w.put("k_coalgebra.json", &SpecFile::Coalgebra(coalgebra_spec(&ground_coalgebra(q))), "PASS", "Q as a coalgebra");
    w.put(
        "divided_power_1.json",
        &SpecFile::Coalgebra(coalgebra_spec(&divided_power_coalgebra(q, 1))),
        "PASS",
        "divided powers up to degree 1, dual to the dual numbers",
    );
    w.put(
        "m2_coalgebra.json",
        &SpecFile::Coalgebra(coalgebra_spec(&matrix_coalgebra(q, 2))),
        "PASS",
        "matrix coalgebra M2(Q)*",
    );

    let mut broken = algebra_spec(&truncated_polynomial(q, 3));
    broken.name = Some("broken".into());
    // x·x² = x while x²·x = 0
    broken.mult[1][5] = ScalarText::Text("1".into());
    w.put("broken_assoc.json", &SpecFile::Algebra(broken), "FAIL", "Q[x]/(x^3) with a perturbed product");
    w.raw(
        "empty.json",
        "{\n  \"kind\": \"algebra\",\n  \"field\": \"Q\",\n  \"mult\": [],\n  \"unit\": []\n}\n",
        "algebra",
        "SchemaError",
        "a zero-dimensional algebra",
    );
    w.raw("not_json.json", "{ \"kind\": \"algebra\", \n", "algebra", "ParseError", "truncated JSON");

    // modules and comodules
    w.put("dual_numbers_regular.json", &module_at(&Module::regular(&dn), "dual_numbers.json"), "PASS", "A acting on itself");
    w.put("k_module.json", &module_at(&Module::regular(&k), "k.json"), "PASS", "Q as a module over itself");
    w.put(
        "k_comodule.json",
        &comodule_at(&Comodule::regular(&ground_coalgebra(q)), "k_coalgebra.json"),
        "PASS",
        "Q as a comodule over itself",
    );

    // morphisms and measurings
    w.put(
        "unit_map.json",
        &SpecFile::AlgebraMorphism(MorphismSpec {
            source: path("k.json"),
            target: path("dual_numbers.json"),
            matrix: mat_rows(dn.unit()),
        }),
        "PASS",
        "the unit Q -> Q[x]/(x^2)",
    );
    w.put(
        "grouplike_map.json",
        &SpecFile::CoalgebraMorphism(MorphismSpec {
            source: path("k_coalgebra.json"),
            target: path("divided_power_1.json"),
            matrix: vec![vec![ScalarText::Int(1)], vec![ScalarText::Int(0)]],
        }),
        "PASS",
        "the grouplike d0 of the divided powers",
    );
    let measuring = |psi: [i64; 4]| {
        SpecFile::Measuring(MeasuringSpec {
            coalgebra: path("k_coalgebra.json"),
            source: path("dual_numbers.json"),
            target: path("dual_numbers.json"),
            psi: psi.iter().map(|&v| vec![ScalarText::Int(v)]).collect(),
        })
    };
    w.put("identity_measuring.json", &measuring([1, 0, 0, 1]), "PASS", "Q (x) A -> A from the identity");
    w.put("bad_measuring.json", &measuring([1, 0, 1, 1]), "FAIL", "x goes to 1 + x, which does not square to 0");

    // Hopf-type structures over the group bimonoid of C2
    let h = cyclic_group_bimonoid(q, 2);
    w.put("c2_bimonoid.json", &SpecFile::Bimonoid(bimonoid_spec(&h)), "PASS", "Q[C2] with g grouplike");
    let mc = ModuleComonoid::regular(&h);
    w.put(
        "c2_module_comonoid.json",
        &SpecFile::ModuleComonoid(ModuleComonoidSpec {
            name: Some("Q[C2]".into()),
            bimonoid: path("c2_bimonoid.json"),
            action: mat_rows(mc.module().action()),
            comult: mat_rows(mc.coalgebra().comult()),
            counit: vector(mc.coalgebra().counit()),
        }),
        "PASS",
        "Q[C2] as a module comonoid over itself",
    );
    let cm = ComoduleMonoid::regular(&h);
    w.put(
        "c2_comodule_monoid.json",
        &SpecFile::ComoduleMonoid(ComoduleMonoidSpec {
            name: Some("Q[C2]".into()),
            bimonoid: path("c2_bimonoid.json"),
            mult: mat_rows(cm.algebra().mult()),
            unit: vector(cm.algebra().unit()),
            coaction: mat_rows(cm.comodule().coaction()),
        }),
        "PASS",
        "Q[C2] as a comodule monoid over itself",
    );
    let hm = HopfModule::regular(&h);
    w.put(
        "c2_hopf_module.json",
        &SpecFile::HopfModule(HopfModuleSpec {
            name: Some("Q[C2]".into()),
            comodule_monoid: path("c2_comodule_monoid.json"),
            module_comonoid: path("c2_module_comonoid.json"),
            action: mat_rows(hm.action().action()),
            coaction: mat_rows(hm.coaction().coaction()),
        }),
        "PASS",
        "the regular Hopf module over Q[C2]",
    );
    let mm = ModuleMonoid::ground(q);
    w.put(
        "k_module_monoid.json",
        &SpecFile::ModuleMonoid(ModuleMonoidSpec {
            name: Some("k".into()),
            over: path("k.json"),
            action: mat_rows(mm.module().action()),
            mult: mat_rows(mm.monoid().mult()),
            unit: vector(mm.monoid().unit()),
        }),
        "PASS",
        "Q as a module monoid over itself",
    );

    // finite category instances
    let instances = [
        ("fib_identity.json", corpus::identity_instance(), "identity adjunction on a two-object base"),
        ("fib_reflective.json", corpus::reflective_instance(), "a reflective fibrewise adjunction"),
        ("fib_omega_defect.json", corpus::omega_defect_instance(), "omega fails to be invertible"),
        ("fib_twisted_unit.json", corpus::twisted_unit_instance(), "unit twisted by an automorphism"),
        ("fib_initial_point.json", corpus::initial_point_instance(), "adjoint picks an initial object"),
        ("fib_chi_failure.json", corpus::chi_failure_instance(), "chi not invertible, adjoint not fibred"),
        ("fib_chi_strict.json", corpus::chi_strict_instance(), "chi invertible, adjoint fibred"),
    ];
    for (file, inst, note) in instances {
        w.put(file, &SpecFile::FincatInstance(FincatSpec { instance: inst.to_spec() }), "PASS", note);
    }

    w.raw(
        "dual_numbers_to_k_hints.json",
        "[\n  [[\"1\", \"0\"]]\n]\n",
        "hints",
        "-",
        "the one algebra map Q[x]/(x^2) -> Q, for --hints over Q",
    );
    w.raw("k_to_k_hints.json", "[\n  [[\"1\"]]\n]\n", "hints", "-", "the identity Q -> Q, for --hints over Q");
    w.raw("tiny_budget.toml", "[budgets]\nenumeration = 1\n", "config", "-", "an enumeration budget of one candidate");

    let manifest = serde_json::to_string_pretty(&json!({ "files": w.manifest })).unwrap() + "\n";
    std::fs::write(w.dir.join("manifest.json"), manifest).unwrap();
}
