use super::FibError;

/// Default cap on the number of morphisms of any finite category.
pub const DEFAULT_MORPHISM_CAP: usize = 40;

pub(crate) fn toggle_op(name: &str) -> String {
    match name.strip_suffix("^op") {
        Some(base) => base.to_string(),
        None => format!("{name}^op"),
    }
}

/// A finite category with a full composition table.
///
/// Morphisms are indexed `0..n`; `compose(g, f)` is `g ∘ f`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteCategory {
    name: String,
    objects: Vec<String>,
    morphisms: Vec<String>,
    src: Vec<usize>,
    tgt: Vec<usize>,
    ids: Vec<usize>,
    comp: Vec<Option<usize>>,
    homs: Vec<Vec<usize>>,
}

impl FiniteCategory {
    /// Builds and validates a category; `compose(g, f)` is queried on every
    /// composable pair, identities included.
    pub fn new<C>(
        name: &str,
        objects: Vec<String>,
        morphisms: Vec<(String, usize, usize)>,
        identities: Vec<usize>,
        compose: C,
    ) -> Result<FiniteCategory, FibError>
    where
        C: Fn(usize, usize) -> Option<usize>,
    {
        Self::new_with_cap(name, objects, morphisms, identities, compose, DEFAULT_MORPHISM_CAP)
    }

    pub fn new_with_cap<C>(
        name: &str,
        objects: Vec<String>,
        morphisms: Vec<(String, usize, usize)>,
        identities: Vec<usize>,
        compose: C,
        cap: usize,
    ) -> Result<FiniteCategory, FibError>
    where
        C: Fn(usize, usize) -> Option<usize>,
    {
        let n = morphisms.len();
        if n > cap {
            return Err(FibError::TooLarge { morphisms: n, cap });
        }
        let bad = |msg: String| FibError::InvalidCategory(format!("{name}: {msg}"));
        let nobj = objects.len();
        let mut names = Vec::with_capacity(n);
        let mut src = Vec::with_capacity(n);
        let mut tgt = Vec::with_capacity(n);
        for (m, (label, s, t)) in morphisms.into_iter().enumerate() {
            if s >= nobj || t >= nobj {
                return Err(bad(format!("morphism {m} has an endpoint out of range")));
            }
            names.push(label);
            src.push(s);
            tgt.push(t);
        }
        if identities.len() != nobj {
            return Err(bad("one identity per object required".into()));
        }
        for (x, &i) in identities.iter().enumerate() {
            if i >= n || src[i] != x || tgt[i] != x {
                return Err(bad(format!("identity of object {x} is not an endomorphism of it")));
            }
        }
        let mut comp = vec![None; n * n];
        for g in 0..n {
            for f in 0..n {
                if src[g] != tgt[f] {
                    continue;
                }
                let h = compose(g, f).ok_or_else(|| bad(format!("missing composite {g}∘{f}")))?;
                if h >= n || src[h] != src[f] || tgt[h] != tgt[g] {
                    return Err(bad(format!("composite {g}∘{f} = {h} has the wrong type")));
                }
                comp[g * n + f] = Some(h);
            }
        }
        let mut homs = vec![Vec::new(); nobj * nobj];
        for m in 0..n {
            homs[src[m] * nobj + tgt[m]].push(m);
        }
        let cat = FiniteCategory {
            name: name.to_string(),
            objects,
            morphisms: names,
            src,
            tgt,
            ids: identities,
            comp,
            homs,
        };
        cat.check_laws()?;
        Ok(cat)
    }

    /// Builds a category from the composites of non-identity pairs; pairs
    /// involving an identity are filled in.
    pub fn from_table(
        name: &str,
        objects: Vec<String>,
        morphisms: Vec<(String, usize, usize)>,
        identities: Vec<usize>,
        table: &[[usize; 3]],
        cap: usize,
    ) -> Result<FiniteCategory, FibError> {
        let n = morphisms.len();
        let mut is_id = vec![false; n];
        for &i in &identities {
            if i < n {
                is_id[i] = true;
            }
        }
        let mut lookup = vec![None; n * n];
        for &[g, f, h] in table {
            if g >= n || f >= n {
                return Err(FibError::InvalidCategory(format!("{name}: table entry out of range")));
            }
            lookup[g * n + f] = Some(h);
        }
        Self::new_with_cap(
            name,
            objects,
            morphisms,
            identities,
            |g, f| {
                if is_id[g] {
                    Some(f)
                } else if is_id[f] {
                    Some(g)
                } else {
                    lookup[g * n + f]
                }
            },
            cap,
        )
    }

    fn check_laws(&self) -> Result<(), FibError> {
        let bad = |msg: String| FibError::InvalidCategory(format!("{}: {msg}", self.name));
        let n = self.morphism_count();
        for f in 0..n {
            if self.compose(self.ids[self.tgt[f]], f) != Some(f)
                || self.compose(f, self.ids[self.src[f]]) != Some(f)
            {
                return Err(bad(format!("unit law fails at {f}")));
            }
        }
        for f in 0..n {
            for g in self.outgoing(self.tgt[f]) {
                let gf = self.comp[g * n + f].expect("composable");
                for h in self.outgoing(self.tgt[g]) {
                    let hg = self.comp[h * n + g].expect("composable");
                    if self.comp[hg * n + f] != self.comp[h * n + gf] {
                        return Err(bad(format!("associativity fails at ({h},{g},{f})")));
                    }
                }
            }
        }
        Ok(())
    }

    /// The thin category generated by `relations` (reflexive-transitive
    /// closure); cycles give isomorphic objects.
    pub fn preorder(name: &str, objects: &[&str], relations: &[(usize, usize)]) -> FiniteCategory {
        let n = objects.len();
        let mut le = vec![vec![false; n]; n];
        for (i, row) in le.iter_mut().enumerate() {
            row[i] = true;
        }
        for &(a, b) in relations {
            le[a][b] = true;
        }
        for k in 0..n {
            for i in 0..n {
                for j in 0..n {
                    if le[i][k] && le[k][j] {
                        le[i][j] = true;
                    }
                }
            }
        }
        let mut morphisms = Vec::new();
        let mut index = vec![vec![usize::MAX; n]; n];
        let mut ids = vec![0; n];
        for i in 0..n {
            for j in 0..n {
                if le[i][j] {
                    index[i][j] = morphisms.len();
                    let label = if i == j {
                        ids[i] = morphisms.len();
                        format!("1_{}", objects[i])
                    } else {
                        format!("{}->{}", objects[i], objects[j])
                    };
                    morphisms.push((label, i, j));
                }
            }
        }
        let ends: Vec<(usize, usize)> = morphisms.iter().map(|(_, s, t)| (*s, *t)).collect();
        FiniteCategory::new_with_cap(
            name,
            objects.iter().map(|s| s.to_string()).collect(),
            morphisms,
            ids,
            |g, f| Some(index[ends[f].0][ends[g].1]),
            usize::MAX,
        )
        .expect("preorders are categories")
    }

    /// A one-object category from a monoid multiplication table.
    pub fn monoid<M>(name: &str, object: &str, elements: &[&str], unit: usize, mult: M) -> Result<FiniteCategory, FibError>
    where
        M: Fn(usize, usize) -> usize,
    {
        FiniteCategory::new(
            name,
            vec![object.to_string()],
            elements.iter().map(|e| (e.to_string(), 0, 0)).collect(),
            vec![unit],
            |g, f| Some(mult(g, f)),
        )
    }

    pub fn terminal() -> FiniteCategory {
        FiniteCategory::preorder("1", &["*"], &[])
    }

    /// The arrow category `0 → 1`.
    pub fn arrow() -> FiniteCategory {
        FiniteCategory::preorder("2", &["0", "1"], &[(0, 1)])
    }

    pub fn discrete(name: &str, objects: &[&str]) -> FiniteCategory {
        FiniteCategory::preorder(name, objects, &[])
    }

    /// The opposite category; morphism indices are preserved.
    pub fn opposite(&self) -> FiniteCategory {
        let n = self.morphism_count();
        let nobj = self.object_count();
        let mut comp = vec![None; n * n];
        for g in 0..n {
            for f in 0..n {
                comp[g * n + f] = self.comp[f * n + g];
            }
        }
        let mut homs = vec![Vec::new(); nobj * nobj];
        for m in 0..n {
            homs[self.tgt[m] * nobj + self.src[m]].push(m);
        }
        FiniteCategory {
            name: toggle_op(&self.name),
            objects: self.objects.clone(),
            morphisms: self.morphisms.clone(),
            src: self.tgt.clone(),
            tgt: self.src.clone(),
            ids: self.ids.clone(),
            comp,
            homs,
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    pub fn morphism_names(&self) -> &[String] {
        &self.morphisms
    }

    pub fn object_count(&self) -> usize {
        self.objects.len()
    }

    pub fn morphism_count(&self) -> usize {
        self.morphisms.len()
    }

    pub fn src(&self, m: usize) -> usize {
        self.src[m]
    }

    pub fn tgt(&self, m: usize) -> usize {
        self.tgt[m]
    }

    pub fn id(&self, x: usize) -> usize {
        self.ids[x]
    }

    pub fn is_identity(&self, m: usize) -> bool {
        self.ids[self.src[m]] == m
    }

    /// `g ∘ f`, if composable.
    pub fn compose(&self, g: usize, f: usize) -> Option<usize> {
        self.comp[g * self.morphism_count() + f]
    }

    pub fn hom(&self, a: usize, b: usize) -> &[usize] {
        &self.homs[a * self.object_count() + b]
    }

    /// Morphisms with source `a`.
    pub fn outgoing(&self, a: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.object_count()).flat_map(move |b| self.hom(a, b).iter().copied())
    }

    /// Morphisms with target `b`.
    pub fn incoming(&self, b: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.object_count()).flat_map(move |a| self.hom(a, b).iter().copied())
    }

    pub fn inverse(&self, m: usize) -> Option<usize> {
        self.hom(self.tgt[m], self.src[m]).iter().copied().find(|&k| {
            self.compose(k, m) == Some(self.ids[self.src[m]]) && self.compose(m, k) == Some(self.ids[self.tgt[m]])
        })
    }

    pub fn is_iso(&self, m: usize) -> bool {
        self.inverse(m).is_some()
    }

    pub fn object_index(&self, name: &str) -> Option<usize> {
        self.objects.iter().position(|o| o == name)
    }

    pub fn morphism_index(&self, name: &str) -> Option<usize> {
        self.morphisms.iter().position(|m| m == name)
    }

    /// Composites of non-identity pairs, as `[g, f, g∘f]`.
    pub fn composition_table(&self) -> Vec<[usize; 3]> {
        let n = self.morphism_count();
        let mut out = Vec::new();
        for g in 0..n {
            for f in 0..n {
                if self.is_identity(g) || self.is_identity(f) {
                    continue;
                }
                if let Some(h) = self.compose(g, f) {
                    out.push([g, f, h]);
                }
            }
        }
        out
    }
}

/// A functor between finite categories, stored as object and morphism tables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteFunctor {
    source: FiniteCategory,
    target: FiniteCategory,
    obj: Vec<usize>,
    mor: Vec<usize>,
}

impl FiniteFunctor {
    pub fn new(
        source: FiniteCategory,
        target: FiniteCategory,
        obj: Vec<usize>,
        mor: Vec<usize>,
    ) -> Result<FiniteFunctor, FibError> {
        let bad = |msg: String| {
            FibError::InvalidFunctor(format!("{} → {}: {msg}", source.name(), target.name()))
        };
        if obj.len() != source.object_count() || mor.len() != source.morphism_count() {
            return Err(bad("table sizes do not match the source".into()));
        }
        if obj.iter().any(|&o| o >= target.object_count()) || mor.iter().any(|&m| m >= target.morphism_count()) {
            return Err(bad("table entry out of range".into()));
        }
        for m in 0..source.morphism_count() {
            let fm = mor[m];
            if target.src(fm) != obj[source.src(m)] || target.tgt(fm) != obj[source.tgt(m)] {
                return Err(bad(format!("morphism {m} is sent to a morphism of the wrong type")));
            }
        }
        for x in 0..source.object_count() {
            if mor[source.id(x)] != target.id(obj[x]) {
                return Err(bad(format!("identity of object {x} is not preserved")));
            }
        }
        for g in 0..source.morphism_count() {
            for f in source.incoming(source.src(g)) {
                let gf = source.compose(g, f).expect("composable");
                if target.compose(mor[g], mor[f]) != Some(mor[gf]) {
                    return Err(bad(format!("composite {g}∘{f} is not preserved")));
                }
            }
        }
        Ok(FiniteFunctor { source, target, obj, mor })
    }

    /// The functor with object map `obj` into a category whose relevant hom
    /// sets are singletons; each morphism goes to the unique candidate.
    pub fn from_object_map(
        source: &FiniteCategory,
        target: &FiniteCategory,
        obj: Vec<usize>,
    ) -> Result<FiniteFunctor, FibError> {
        if obj.len() != source.object_count() || obj.iter().any(|&o| o >= target.object_count()) {
            return Err(FibError::InvalidFunctor("object map does not fit the categories".into()));
        }
        let mut mor = Vec::with_capacity(source.morphism_count());
        for m in 0..source.morphism_count() {
            match target.hom(obj[source.src(m)], obj[source.tgt(m)]) {
                [only] => mor.push(*only),
                _ => {
                    return Err(FibError::InvalidFunctor(format!(
                        "no unique image for morphism {}",
                        source.morphism_names()[m]
                    )))
                }
            }
        }
        FiniteFunctor::new(source.clone(), target.clone(), obj, mor)
    }

    pub fn identity(c: &FiniteCategory) -> FiniteFunctor {
        FiniteFunctor {
            source: c.clone(),
            target: c.clone(),
            obj: (0..c.object_count()).collect(),
            mor: (0..c.morphism_count()).collect(),
        }
    }

    /// `self ∘ first`.
    pub fn after(&self, first: &FiniteFunctor) -> Result<FiniteFunctor, FibError> {
        if first.target != self.source {
            return Err(FibError::InvalidFunctor(format!(
                "cannot compose: {} is not {}",
                first.target.name(),
                self.source.name()
            )));
        }
        Ok(FiniteFunctor {
            source: first.source.clone(),
            target: self.target.clone(),
            obj: first.obj.iter().map(|&o| self.obj[o]).collect(),
            mor: first.mor.iter().map(|&m| self.mor[m]).collect(),
        })
    }

    pub fn opposite(&self) -> FiniteFunctor {
        FiniteFunctor {
            source: self.source.opposite(),
            target: self.target.opposite(),
            obj: self.obj.clone(),
            mor: self.mor.clone(),
        }
    }

    pub fn source(&self) -> &FiniteCategory {
        &self.source
    }

    pub fn target(&self) -> &FiniteCategory {
        &self.target
    }

    pub fn obj(&self, x: usize) -> usize {
        self.obj[x]
    }

    pub fn mor(&self, m: usize) -> usize {
        self.mor[m]
    }

    pub fn object_table(&self) -> &[usize] {
        &self.obj
    }

    pub fn morphism_table(&self) -> &[usize] {
        &self.mor
    }

    pub fn is_identity(&self) -> bool {
        self.source == self.target
            && self.obj.iter().enumerate().all(|(i, &o)| i == o)
            && self.mor.iter().enumerate().all(|(i, &m)| i == m)
    }
}

/// A natural transformation between parallel functors, by components.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NaturalTransformation {
    source: FiniteFunctor,
    target: FiniteFunctor,
    components: Vec<usize>,
}

impl NaturalTransformation {
    pub fn new(
        source: FiniteFunctor,
        target: FiniteFunctor,
        components: Vec<usize>,
    ) -> Result<NaturalTransformation, FibError> {
        check_natural(&source, &target, &components).map_err(FibError::NotNatural)?;
        Ok(NaturalTransformation { source, target, components })
    }

    pub fn source(&self) -> &FiniteFunctor {
        &self.source
    }

    pub fn target(&self) -> &FiniteFunctor {
        &self.target
    }

    pub fn component(&self, x: usize) -> usize {
        self.components[x]
    }

    pub fn components(&self) -> &[usize] {
        &self.components
    }

    pub fn is_identity(&self) -> bool {
        let c = self.source.target();
        self.components.iter().all(|&m| c.is_identity(m))
    }

    pub fn is_iso(&self) -> bool {
        let c = self.source.target();
        self.components.iter().all(|&m| c.is_iso(m))
    }
}

fn check_natural(f: &FiniteFunctor, g: &FiniteFunctor, alpha: &[usize]) -> Result<(), String> {
    if f.source != g.source || f.target != g.target {
        return Err("functors are not parallel".into());
    }
    let (c, d) = (&f.source, &f.target);
    if alpha.len() != c.object_count() {
        return Err("one component per object required".into());
    }
    for (x, &a) in alpha.iter().enumerate() {
        if a >= d.morphism_count() || d.src(a) != f.obj[x] || d.tgt(a) != g.obj[x] {
            return Err(format!("component at object {x} has the wrong type"));
        }
    }
    for m in 0..c.morphism_count() {
        let (x, y) = (c.src(m), c.tgt(m));
        if d.compose(g.mor[m], alpha[x]) != d.compose(alpha[y], f.mor[m]) {
            return Err(format!("naturality square fails at morphism {m}"));
        }
    }
    Ok(())
}

/// An adjunction `L ⊣ R` with `L: C → D`, by unit and counit components.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteAdjunction {
    left: FiniteFunctor,
    right: FiniteFunctor,
    unit: Vec<usize>,
    counit: Vec<usize>,
}

impl FiniteAdjunction {
    pub fn new(
        left: FiniteFunctor,
        right: FiniteFunctor,
        unit: Vec<usize>,
        counit: Vec<usize>,
    ) -> Result<FiniteAdjunction, FibError> {
        let bad = FibError::NotAdjunction;
        if left.source != right.target || left.target != right.source {
            return Err(bad("functors do not form a round trip".into()));
        }
        let c = left.source.clone();
        let d = left.target.clone();
        let rl = right.after(&left)?;
        let lr = left.after(&right)?;
        check_natural(&FiniteFunctor::identity(&c), &rl, &unit).map_err(|e| bad(format!("unit: {e}")))?;
        check_natural(&lr, &FiniteFunctor::identity(&d), &counit).map_err(|e| bad(format!("counit: {e}")))?;
        for x in 0..c.object_count() {
            let lx = left.obj[x];
            if d.compose(counit[lx], left.mor[unit[x]]) != Some(d.id(lx)) {
                return Err(bad(format!("triangle εL∘Lη fails at {}", c.objects()[x])));
            }
        }
        for y in 0..d.object_count() {
            let ry = right.obj[y];
            if c.compose(right.mor[counit[y]], unit[ry]) != Some(c.id(ry)) {
                return Err(bad(format!("triangle Rε∘ηR fails at {}", d.objects()[y])));
            }
        }
        Ok(FiniteAdjunction { left, right, unit, counit })
    }

    pub fn identity(c: &FiniteCategory) -> FiniteAdjunction {
        let ids: Vec<usize> = (0..c.object_count()).map(|x| c.id(x)).collect();
        FiniteAdjunction {
            left: FiniteFunctor::identity(c),
            right: FiniteFunctor::identity(c),
            unit: ids.clone(),
            counit: ids,
        }
    }

    /// `R^op ⊣ L^op`, with unit and counit exchanged.
    pub fn opposite(&self) -> FiniteAdjunction {
        FiniteAdjunction {
            left: self.right.opposite(),
            right: self.left.opposite(),
            unit: self.counit.clone(),
            counit: self.unit.clone(),
        }
    }

    pub fn left(&self) -> &FiniteFunctor {
        &self.left
    }

    pub fn right(&self) -> &FiniteFunctor {
        &self.right
    }

    pub fn unit(&self, x: usize) -> usize {
        self.unit[x]
    }

    pub fn counit(&self, y: usize) -> usize {
        self.counit[y]
    }

    pub fn units(&self) -> &[usize] {
        &self.unit
    }

    pub fn counits(&self) -> &[usize] {
        &self.counit
    }

    /// `m: Lx → y` to `Rm ∘ η_x: x → Ry`.
    pub fn left_adjunct(&self, x: usize, m: usize) -> usize {
        self.left.source.compose(self.right.mor[m], self.unit[x]).expect("composable")
    }

    /// `n: x → Ry` to `ε_y ∘ Ln: Lx → y`.
    pub fn right_adjunct(&self, y: usize, n: usize) -> usize {
        self.left.target.compose(self.counit[y], self.left.mor[n]).expect("composable")
    }
}

/// Whether `m` is cartesian for `p`: every `θ` into `tgt m` lying over
/// `p(m) ∘ g` factors as `m ∘ ψ` for exactly one `ψ` over `g`.
pub fn is_cartesian(p: &FiniteFunctor, m: usize) -> bool {
    let (e, b) = (&p.source, &p.target);
    let (a, bb) = (e.src(m), e.tgt(m));
    let h = p.mor[m];
    for theta in e.incoming(bb) {
        let a2 = e.src(theta);
        for &g in b.hom(p.obj[a2], p.obj[a]) {
            if b.compose(h, g) != Some(p.mor[theta]) {
                continue;
            }
            let count = e
                .hom(a2, a)
                .iter()
                .filter(|&&psi| p.mor[psi] == g && e.compose(m, psi) == Some(theta))
                .count();
            if count != 1 {
                return false;
            }
        }
    }
    true
}

/// Whether `m` is cocartesian for `p`: every `θ` out of `src m` lying over
/// `g ∘ p(m)` factors as `ψ ∘ m` for exactly one `ψ` over `g`.
pub fn is_cocartesian(p: &FiniteFunctor, m: usize) -> bool {
    let (e, b) = (&p.source, &p.target);
    let (a, bb) = (e.src(m), e.tgt(m));
    let h = p.mor[m];
    for theta in e.outgoing(a) {
        let b2 = e.tgt(theta);
        for &g in b.hom(p.obj[bb], p.obj[b2]) {
            if b.compose(g, h) != Some(p.mor[theta]) {
                continue;
            }
            let count = e
                .hom(bb, b2)
                .iter()
                .filter(|&&psi| p.mor[psi] == g && e.compose(psi, m) == Some(theta))
                .count();
            if count != 1 {
                return false;
            }
        }
    }
    true
}
