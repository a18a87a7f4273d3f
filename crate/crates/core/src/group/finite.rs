//! Finite groups as multiplication tables, crossed modules over them and
//! the strict 2-groups they determine. Every check here is exhaustive and
//! exact.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

const GROUP_FIXTURES: [(&str, &str); 6] = [
    ("z2", include_str!("../../fixtures/groups/z2.json")),
    ("z3", include_str!("../../fixtures/groups/z3.json")),
    ("z4", include_str!("../../fixtures/groups/z4.json")),
    ("z6", include_str!("../../fixtures/groups/z6.json")),
    ("s3", include_str!("../../fixtures/groups/s3.json")),
    ("q8", include_str!("../../fixtures/groups/q8.json")),
];

const CROSSED_MODULE_FIXTURES: &str = include_str!("../../fixtures/crossed_modules.json");

#[derive(Debug, Clone, Serialize, Deserialize)]
struct GroupFile {
    #[serde(default)]
    name: Option<String>,
    order: usize,
    table: Vec<Vec<usize>>,
}

/// A finite group on `{0, …, order-1}` given by its multiplication table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    name: String,
    table: Vec<Vec<usize>>,
    identity: usize,
    inverses: Vec<usize>,
}

impl FiniteGroup {
    /// Validates closure, associativity, identity and inverses.
    pub fn new(name: impl Into<String>, table: Vec<Vec<usize>>) -> Result<Self> {
        let name = name.into();
        let n = table.len();
        if n == 0 {
            return Err(Error::FiniteGroup(format!("{name}: empty table")));
        }
        for (a, row) in table.iter().enumerate() {
            if row.len() != n {
                return Err(Error::FiniteGroup(format!("{name}: row {a} has {} entries, expected {n}", row.len())));
            }
            if let Some(v) = row.iter().find(|&&v| v >= n) {
                return Err(Error::FiniteGroup(format!("{name}: entry {v} in row {a} is out of range")));
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(Error::FiniteGroup(format!("{name}: ({a}·{b})·{c} ≠ {a}·({b}·{c})")));
                    }
                }
            }
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|a| table[e][a] == a && table[a][e] == a))
            .ok_or_else(|| Error::FiniteGroup(format!("{name}: no identity element")))?;
        let inverses = (0..n)
            .map(|a| {
                (0..n)
                    .find(|&b| table[a][b] == identity)
                    .ok_or_else(|| Error::FiniteGroup(format!("{name}: {a} has no inverse")))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            name,
            table,
            identity,
            inverses,
        })
    }

    /// Reads `{"order": n, "table": [[…]]}` (row-major, 0-based).
    pub fn from_json_str(text: &str) -> Result<Self> {
        let file: GroupFile = serde_json::from_str(text)?;
        if file.table.len() != file.order {
            return Err(Error::FiniteGroup(format!(
                "order {} does not match a table with {} rows",
                file.order,
                file.table.len()
            )));
        }
        Self::new(file.name.unwrap_or_else(|| format!("group of order {}", file.order)), file.table)
    }

    pub fn bundled(name: &str) -> Result<Self> {
        let (_, text) = GROUP_FIXTURES
            .iter()
            .find(|(key, _)| *key == name.to_ascii_lowercase())
            .ok_or_else(|| Error::FiniteGroup(format!("no bundled group named {name}")))?;
        Self::from_json_str(text)
    }

    pub fn cyclic(n: usize) -> Result<Self> {
        Self::new(format!("Z{n}"), (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect())
    }

    pub fn trivial() -> Self {
        Self::new("1", vec![vec![0]]).expect("trivial group")
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn e(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverses[a]
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order()
    }

    pub fn is_abelian(&self) -> bool {
        self.elements().all(|a| self.elements().all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Whether `f: self → target` is a homomorphism.
    pub fn is_hom(&self, target: &FiniteGroup, f: &[usize]) -> bool {
        f.len() == self.order()
            && f.iter().all(|&v| v < target.order())
            && self
                .elements()
                .all(|a| self.elements().all(|b| f[self.mul(a, b)] == target.mul(f[a], f[b])))
    }

    /// `self / N` for a normal subgroup `N`, with the projection map.
    pub fn quotient(&self, normal: &BTreeSet<usize>) -> Result<(FiniteGroup, Vec<usize>)> {
        let closed = normal.contains(&self.e())
            && normal.iter().all(|&a| normal.iter().all(|&b| normal.contains(&self.mul(a, self.inv(b)))));
        if !closed {
            return Err(Error::FiniteGroup("quotient by a subset that is not a subgroup".into()));
        }
        let is_normal = self
            .elements()
            .all(|g| normal.iter().all(|&n| normal.contains(&self.mul(self.mul(g, n), self.inv(g)))));
        if !is_normal {
            return Err(Error::FiniteGroup("quotient by a subgroup that is not normal".into()));
        }
        let mut coset_of = vec![usize::MAX; self.order()];
        let mut reps = Vec::new();
        for g in self.elements() {
            if coset_of[g] == usize::MAX {
                for &n in normal {
                    coset_of[self.mul(g, n)] = reps.len();
                }
                reps.push(g);
            }
        }
        let table = reps
            .iter()
            .map(|&a| reps.iter().map(|&b| coset_of[self.mul(a, b)]).collect())
            .collect();
        let q = FiniteGroup::new(format!("{}/N", self.name), table)?;
        Ok((q, coset_of))
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
enum GroupSpec {
    Bundled(String),
    Inline(GroupFile),
}

impl GroupSpec {
    fn resolve(self) -> Result<FiniteGroup> {
        match self {
            GroupSpec::Bundled(name) => FiniteGroup::bundled(&name),
            GroupSpec::Inline(file) => {
                FiniteGroup::from_json_str(&serde_json::to_string(&file).expect("serializable group"))
            }
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct CrossedModuleFile {
    name: String,
    #[serde(rename = "G")]
    g: GroupSpec,
    #[serde(rename = "H")]
    h: GroupSpec,
    partial: Vec<usize>,
    alpha: Vec<Vec<usize>>,
}

/// `(G, H, ∂: H → G, α: G → Aut(H))`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteCrossedModule {
    name: String,
    g: FiniteGroup,
    h: FiniteGroup,
    partial: Vec<usize>,
    /// `alpha[g][h] = α(g)(h)`.
    alpha: Vec<Vec<usize>>,
}

fn axiom(axiom: &'static str, witness: String) -> Error {
    Error::CrossedModule { axiom, witness }
}

impl FiniteCrossedModule {
    pub fn new(
        name: impl Into<String>,
        g: FiniteGroup,
        h: FiniteGroup,
        partial: Vec<usize>,
        alpha: Vec<Vec<usize>>,
    ) -> Result<Self> {
        let cm = Self {
            name: name.into(),
            g,
            h,
            partial,
            alpha,
        };
        cm.validate()?;
        Ok(cm)
    }

    /// `(G, G, conjugation, 1)`, whose 2-group has one morphism between any
    /// two objects.
    pub fn inner(g: FiniteGroup) -> Result<Self> {
        let alpha = g
            .elements()
            .map(|a| g.elements().map(|b| g.mul(g.mul(a, b), g.inv(a))).collect())
            .collect();
        let partial = g.elements().collect();
        Self::new(format!("E{}", g.name()), g.clone(), g, partial, alpha)
    }

    /// `(G, H, trivial, trivial)` for abelian `H`.
    pub fn skeletal(g: FiniteGroup, h: FiniteGroup) -> Result<Self> {
        let partial = vec![g.e(); h.order()];
        let alpha = vec![h.elements().collect(); g.order()];
        Self::new(format!("{} x {}", g.name(), h.name()), g, h, partial, alpha)
    }

    pub fn from_json_str(text: &str) -> Result<Self> {
        let file: CrossedModuleFile = serde_json::from_str(text)?;
        Self::from_file_data(file)
    }

    fn from_file_data(file: CrossedModuleFile) -> Result<Self> {
        Self::new(file.name, file.g.resolve()?, file.h.resolve()?, file.partial, file.alpha)
    }

    /// Every bundled crossed module.
    pub fn bundled() -> Result<Vec<Self>> {
        let files: Vec<CrossedModuleFile> = serde_json::from_str(CROSSED_MODULE_FIXTURES)?;
        files.into_iter().map(Self::from_file_data).collect()
    }

    pub fn bundled_named(name: &str) -> Result<Self> {
        Self::bundled()?
            .into_iter()
            .find(|cm| cm.name == name)
            .ok_or_else(|| Error::FiniteGroup(format!("no bundled crossed module named {name}")))
    }

    pub fn name(&self) -> &str {
        &self.name
    }
    pub fn g(&self) -> &FiniteGroup {
        &self.g
    }
    pub fn h(&self) -> &FiniteGroup {
        &self.h
    }
    pub fn partial(&self, h: usize) -> usize {
        self.partial[h]
    }
    pub fn alpha(&self, g: usize, h: usize) -> usize {
        self.alpha[g][h]
    }

    /// Exhaustive check of every axiom; the first failure is reported with
    /// the offending elements.
    pub fn validate(&self) -> Result<()> {
        let (g, h) = (&self.g, &self.h);
        if self.partial.len() != h.order() || self.partial.iter().any(|&v| v >= g.order()) {
            return Err(axiom("partial is a map H → G", format!("table of length {}", self.partial.len())));
        }
        if self.alpha.len() != g.order()
            || self.alpha.iter().any(|row| row.len() != h.order() || row.iter().any(|&v| v >= h.order()))
        {
            return Err(axiom("alpha is a map G × H → H", "table shape".into()));
        }
        for a in h.elements() {
            for b in h.elements() {
                if self.partial(h.mul(a, b)) != g.mul(self.partial(a), self.partial(b)) {
                    return Err(axiom("partial is a homomorphism", format!("h1 = {a}, h2 = {b}")));
                }
            }
        }
        for x in g.elements() {
            if !h.is_hom(h, &self.alpha[x]) {
                return Err(axiom("alpha(g) is a homomorphism", format!("g = {x}")));
            }
        }
        if h.elements().any(|b| self.alpha(g.e(), b) != b) {
            return Err(axiom("alpha(1) is the identity", String::new()));
        }
        for x in g.elements() {
            for y in g.elements() {
                for b in h.elements() {
                    if self.alpha(g.mul(x, y), b) != self.alpha(x, self.alpha(y, b)) {
                        return Err(axiom("alpha is an action", format!("g1 = {x}, g2 = {y}, h = {b}")));
                    }
                }
            }
        }
        for x in g.elements() {
            for b in h.elements() {
                let lhs = self.partial(self.alpha(x, b));
                let rhs = g.mul(g.mul(x, self.partial(b)), g.inv(x));
                if lhs != rhs {
                    return Err(axiom("partial is equivariant", format!("g = {x}, h = {b}")));
                }
            }
        }
        for a in h.elements() {
            for b in h.elements() {
                if self.alpha(self.partial(a), b) != h.mul(h.mul(a, b), h.inv(a)) {
                    return Err(axiom("Peiffer identity", format!("h1 = {a}, h2 = {b}")));
                }
            }
        }
        Ok(())
    }
}

/// Sizes of what was checked while building a 2-group.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct TwoGroupReport {
    pub objects: usize,
    pub morphisms: usize,
    pub composable_pairs: usize,
    pub interchange_quadruples: usize,
}

/// The strict 2-group of a crossed module: objects `G`, morphisms `G ⋉ H`
/// indexed `p·|H| + h`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteTwoGroup {
    cm: FiniteCrossedModule,
    report: TwoGroupReport,
}

impl FiniteTwoGroup {
    pub fn crossed_module(&self) -> &FiniteCrossedModule {
        &self.cm
    }

    pub fn report(&self) -> &TwoGroupReport {
        &self.report
    }

    pub fn objects(&self) -> &FiniteGroup {
        &self.cm.g
    }

    pub fn object_count(&self) -> usize {
        self.cm.g.order()
    }

    pub fn morphism_count(&self) -> usize {
        self.cm.g.order() * self.cm.h.order()
    }

    pub fn morphism(&self, p: usize, h: usize) -> usize {
        p * self.cm.h.order() + h
    }

    pub fn split(&self, m: usize) -> (usize, usize) {
        (m / self.cm.h.order(), m % self.cm.h.order())
    }

    /// `(p₁, h₁)(p₂, h₂) = (p₁p₂, h₁ α(p₁)(h₂))`.
    pub fn mul(&self, m1: usize, m2: usize) -> usize {
        let ((p1, h1), (p2, h2)) = (self.split(m1), self.split(m2));
        let (g, h) = (&self.cm.g, &self.cm.h);
        self.morphism(g.mul(p1, p2), h.mul(h1, self.cm.alpha(p1, h2)))
    }

    pub fn s(&self, m: usize) -> usize {
        self.split(m).0
    }

    /// `t(p, h) = ∂(h) p`.
    pub fn t(&self, m: usize) -> usize {
        let (p, h) = self.split(m);
        self.cm.g.mul(self.cm.partial(h), p)
    }

    pub fn i(&self, p: usize) -> usize {
        self.morphism(p, self.cm.h.e())
    }

    /// `(p₁, h₁) ∘ (p₂, h₂) = (p₂, h₁h₂)`, defined iff `p₁ = ∂(h₂)p₂`.
    pub fn compose(&self, m1: usize, m2: usize) -> Option<usize> {
        if self.s(m1) != self.t(m2) {
            return None;
        }
        let ((_, h1), (p2, h2)) = (self.split(m1), self.split(m2));
        Some(self.morphism(p2, self.cm.h.mul(h1, h2)))
    }

    /// Number of morphisms `x → y`.
    pub fn hom_count(&self, x: usize, y: usize) -> usize {
        (0..self.morphism_count()).filter(|&m| self.s(m) == x && self.t(m) == y).count()
    }

    fn composable_pairs(&self) -> Vec<(usize, usize)> {
        let n = self.morphism_count();
        let mut out = Vec::new();
        for m1 in 0..n {
            for m2 in 0..n {
                if self.s(m1) == self.t(m2) {
                    out.push((m1, m2));
                }
            }
        }
        out
    }
}

fn law(name: &'static str, witness: String) -> Error {
    Error::CrossedModule { axiom: name, witness }
}

/// Builds the 2-group of `cm` and verifies exhaustively that `s`, `t`, `i`
/// are homomorphisms, that `∘` is a category composition defined exactly
/// on composable pairs, that `G ⋉ H` is a group and that the interchange
/// law holds on every composable quadruple.
pub fn build_two_group(cm: FiniteCrossedModule) -> Result<FiniteTwoGroup> {
    cm.validate()?;
    let mut tg = FiniteTwoGroup {
        cm,
        report: TwoGroupReport::default(),
    };
    let n = tg.morphism_count();
    let g = tg.objects().clone();

    for a in 0..n {
        for b in 0..n {
            let ab = tg.mul(a, b);
            for c in 0..n {
                if tg.mul(ab, c) != tg.mul(a, tg.mul(b, c)) {
                    return Err(law("morphism product is associative", format!("{a}, {b}, {c}")));
                }
            }
            if tg.s(ab) != g.mul(tg.s(a), tg.s(b)) {
                return Err(law("s is a homomorphism", format!("{a}, {b}")));
            }
            if tg.t(ab) != g.mul(tg.t(a), tg.t(b)) {
                return Err(law("t is a homomorphism", format!("{a}, {b}")));
            }
        }
    }
    for p in g.elements() {
        for q in g.elements() {
            if tg.i(g.mul(p, q)) != tg.mul(tg.i(p), tg.i(q)) {
                return Err(law("i is a homomorphism", format!("{p}, {q}")));
            }
        }
        if tg.s(tg.i(p)) != p || tg.t(tg.i(p)) != p {
            return Err(law("i(p) is an endomorphism of p", format!("{p}")));
        }
    }

    for m1 in 0..n {
        for m2 in 0..n {
            let composite = tg.compose(m1, m2);
            if composite.is_some() != (tg.s(m1) == tg.t(m2)) {
                return Err(law("composition is defined on composable pairs", format!("{m1}, {m2}")));
            }
            if let Some(c) = composite {
                if tg.s(c) != tg.s(m2) || tg.t(c) != tg.t(m1) {
                    return Err(law("composite has the right source and target", format!("{m1}, {m2}")));
                }
            }
        }
        if tg.compose(m1, tg.i(tg.s(m1))) != Some(m1) || tg.compose(tg.i(tg.t(m1)), m1) != Some(m1) {
            return Err(law("unit laws", format!("{m1}")));
        }
    }

    let pairs = tg.composable_pairs();
    for &(a, b) in &pairs {
        for c in 0..n {
            if let Some(bc) = tg.compose(b, c) {
                let lhs = tg.compose(tg.compose(a, b).expect("composable"), c);
                if lhs != tg.compose(a, bc) {
                    return Err(law("composition is associative", format!("{a}, {b}, {c}")));
                }
            }
        }
    }

    for &(m1, m2) in &pairs {
        let left = tg.compose(m1, m2).expect("composable");
        for &(m3, m4) in &pairs {
            let right = tg.compose(m3, m4).expect("composable");
            let lhs = tg.mul(left, right);
            match tg.compose(tg.mul(m1, m3), tg.mul(m2, m4)) {
                Some(rhs) if rhs == lhs => {}
                _ => return Err(law("interchange", format!("{m1}, {m2}, {m3}, {m4}"))),
            }
        }
    }

    tg.report = TwoGroupReport {
        objects: tg.object_count(),
        morphisms: n,
        composable_pairs: pairs.len(),
        interchange_quadruples: pairs.len() * pairs.len(),
    };
    Ok(tg)
}

/// A strict homomorphism of finite 2-groups: group homomorphisms on objects
/// and morphisms commuting with `s`, `t`, `i` and `∘`.
#[derive(Debug, Clone)]
pub struct StrictHom {
    source: FiniteTwoGroup,
    target: FiniteTwoGroup,
    on_objects: Vec<usize>,
    on_morphisms: Vec<usize>,
}

impl StrictHom {
    pub fn new(
        source: FiniteTwoGroup,
        target: FiniteTwoGroup,
        on_objects: Vec<usize>,
        on_morphisms: Vec<usize>,
    ) -> Result<Self> {
        let bad = |what: &str| Err(Error::NotHomomorphism(what.to_string()));
        if !source.objects().is_hom(target.objects(), &on_objects) {
            return bad("object map is not a group homomorphism");
        }
        if on_morphisms.len() != source.morphism_count() || on_morphisms.iter().any(|&m| m >= target.morphism_count())
        {
            return bad("morphism map has the wrong shape");
        }
        let n = source.morphism_count();
        for a in 0..n {
            for b in 0..n {
                if on_morphisms[source.mul(a, b)] != target.mul(on_morphisms[a], on_morphisms[b]) {
                    return bad("morphism map is not a group homomorphism");
                }
                if let Some(c) = source.compose(a, b) {
                    if target.compose(on_morphisms[a], on_morphisms[b]) != Some(on_morphisms[c]) {
                        return bad("morphism map does not preserve composition");
                    }
                }
            }
            if target.s(on_morphisms[a]) != on_objects[source.s(a)]
                || target.t(on_morphisms[a]) != on_objects[source.t(a)]
            {
                return bad("morphism map does not commute with source and target");
            }
        }
        for p in source.objects().elements() {
            if on_morphisms[source.i(p)] != target.i(on_objects[p]) {
                return bad("morphism map does not preserve identities");
            }
        }
        Ok(Self {
            source,
            target,
            on_objects,
            on_morphisms,
        })
    }

    /// The map induced by a pair of group maps `G → G′`, `H → H′`.
    pub fn from_crossed_module_maps(
        source: FiniteTwoGroup,
        target: FiniteTwoGroup,
        f_g: Vec<usize>,
        f_h: Vec<usize>,
    ) -> Result<Self> {
        if f_g.len() != source.object_count() || f_h.len() != source.cm.h.order() {
            return Err(Error::NotHomomorphism("component maps have the wrong shape".into()));
        }
        let on_morphisms = (0..source.morphism_count())
            .map(|m| {
                let (p, h) = source.split(m);
                target.morphism(f_g[p], f_h[h])
            })
            .collect();
        Self::new(source, target, f_g, on_morphisms)
    }

    pub fn identity(tg: FiniteTwoGroup) -> Result<Self> {
        let objects = tg.objects().elements().collect();
        let morphisms = (0..tg.morphism_count()).collect();
        Self::new(tg.clone(), tg, objects, morphisms)
    }

    /// The unique map to the trivial 2-group.
    pub fn to_trivial(tg: FiniteTwoGroup) -> Result<Self> {
        let one = build_two_group(FiniteCrossedModule::skeletal(FiniteGroup::trivial(), FiniteGroup::trivial())?)?;
        let objects = vec![0; tg.object_count()];
        let morphisms = vec![0; tg.morphism_count()];
        Self::new(tg, one, objects, morphisms)
    }

    pub fn source(&self) -> &FiniteTwoGroup {
        &self.source
    }

    pub fn target(&self) -> &FiniteTwoGroup {
        &self.target
    }

    /// Objects sent to `1` and morphisms sent to `i(1)`.
    pub fn kernel(&self) -> (BTreeSet<usize>, BTreeSet<usize>) {
        let e = self.target.objects().e();
        let unit = self.target.i(e);
        let objects = self.source.objects().elements().filter(|&p| self.on_objects[p] == e).collect();
        let morphisms = (0..self.source.morphism_count())
            .filter(|&m| self.on_morphisms[m] == unit)
            .collect();
        (objects, morphisms)
    }

    pub fn image(&self) -> (BTreeSet<usize>, BTreeSet<usize>) {
        (
            self.on_objects.iter().copied().collect(),
            self.on_morphisms.iter().copied().collect(),
        )
    }
}

/// Kernel sizes of the second map and whether they match the image of the
/// first.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct KernelReport {
    pub kernel_objects: usize,
    pub kernel_morphisms: usize,
    pub image_objects: usize,
    pub image_morphisms: usize,
    pub pass: bool,
}

/// Checks `im(first) = ker(second)` on objects and on morphisms. With
/// `first = None` the image is taken to be trivial, which tests injectivity
/// on the kernel side.
pub fn strict_kernel_exactness(first: Option<&StrictHom>, second: &StrictHom) -> Result<KernelReport> {
    let (ker_obj, ker_mor) = second.kernel();
    let (im_obj, im_mor) = match first {
        Some(f) => {
            if f.target != second.source {
                return Err(Error::NotHomomorphism("the two maps are not composable".into()));
            }
            f.image()
        }
        None => {
            let e = second.source.objects().e();
            (BTreeSet::from([e]), BTreeSet::from([second.source.i(e)]))
        }
    };
    Ok(KernelReport {
        kernel_objects: ker_obj.len(),
        kernel_morphisms: ker_mor.len(),
        image_objects: im_obj.len(),
        image_morphisms: im_mor.len(),
        pass: ker_obj == im_obj && ker_mor == im_mor,
    })
}

/// For a crossed module with `∂` injective onto a normal subgroup `N`,
/// the sequence `ℰN → 2-group(cm) → G/N` (the last one discrete), together
/// with the kernel report of that pair.
pub fn normal_subgroup_sequence(cm: &FiniteCrossedModule) -> Result<(StrictHom, StrictHom, KernelReport)> {
    let image: BTreeSet<usize> = cm.h().elements().map(|h| cm.partial(h)).collect();
    if image.len() != cm.h().order() {
        return Err(Error::FiniteGroup(format!("{}: ∂ is not injective", cm.name())));
    }
    let middle = build_two_group(cm.clone())?;
    let inner = build_two_group(FiniteCrossedModule::inner(cm.h().clone())?)?;
    let first = StrictHom::from_crossed_module_maps(
        inner,
        middle.clone(),
        cm.h().elements().map(|h| cm.partial(h)).collect(),
        cm.h().elements().collect(),
    )?;
    let (quotient, projection) = cm.g().quotient(&image)?;
    let discrete = build_two_group(FiniteCrossedModule::skeletal(quotient, FiniteGroup::trivial())?)?;
    let second =
        StrictHom::from_crossed_module_maps(middle, discrete, projection, vec![0; cm.h().order()])?;
    let report = strict_kernel_exactness(Some(&first), &second)?;
    Ok((first, second, report))
}
