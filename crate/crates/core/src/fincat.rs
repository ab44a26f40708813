//! Finite small categories and finite `Set`-valued functors on them.
//!
//! Objects and morphisms are dense indices. Composition is stored as an
//! explicit table keyed by `(g, f)` meaning `g ∘ f` (apply `f` first).

use std::collections::{BTreeMap, BTreeSet, HashMap};

use itertools::Itertools;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::report::ValidationReport;

/// Source and target of a morphism.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Arrow {
    pub src: usize,
    pub tgt: usize,
}

impl Arrow {
    pub fn new(src: usize, tgt: usize) -> Self {
        Arrow { src, tgt }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CategoryError {
    #[error("morphism {morphism} has endpoint {object} but there are only {objects} objects")]
    EndpointOutOfRange {
        morphism: usize,
        object: usize,
        objects: usize,
    },
    #[error("identity list has {found} entries for {expected} objects")]
    IdentityCount { expected: usize, found: usize },
    #[error("identity of object {object} names missing morphism {morphism}")]
    IdentityOutOfRange { object: usize, morphism: usize },
    #[error("composition entry ({g}, {f}) -> {gf} references a missing morphism")]
    ComposeOutOfRange { g: usize, f: usize, gf: usize },
    #[error("composition ({g}, {f}) is listed twice")]
    DuplicateCompose { g: usize, f: usize },
}

/// A finite category with an explicit composition table.
///
/// Construction only checks that indices are in range; the category laws
/// are checked by [`FiniteCategory::validate`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteCategory {
    object_count: usize,
    arrows: Vec<Arrow>,
    identity: Vec<usize>,
    compose: HashMap<(usize, usize), usize>,
    homs: Vec<Vec<usize>>,
}

impl FiniteCategory {
    pub fn new(
        object_count: usize,
        arrows: Vec<Arrow>,
        identity: Vec<usize>,
        compose: impl IntoIterator<Item = (usize, usize, usize)>,
    ) -> Result<Self, CategoryError> {
        for (m, a) in arrows.iter().enumerate() {
            for object in [a.src, a.tgt] {
                if object >= object_count {
                    return Err(CategoryError::EndpointOutOfRange {
                        morphism: m,
                        object,
                        objects: object_count,
                    });
                }
            }
        }
        if identity.len() != object_count {
            return Err(CategoryError::IdentityCount {
                expected: object_count,
                found: identity.len(),
            });
        }
        for (object, &morphism) in identity.iter().enumerate() {
            if morphism >= arrows.len() {
                return Err(CategoryError::IdentityOutOfRange { object, morphism });
            }
        }
        let mut table = HashMap::new();
        for (g, f, gf) in compose {
            let n = arrows.len();
            if g >= n || f >= n || gf >= n {
                return Err(CategoryError::ComposeOutOfRange { g, f, gf });
            }
            if table.insert((g, f), gf).is_some() {
                return Err(CategoryError::DuplicateCompose { g, f });
            }
        }
        let mut homs = vec![Vec::new(); object_count * object_count];
        for (m, a) in arrows.iter().enumerate() {
            homs[a.src * object_count + a.tgt].push(m);
        }
        Ok(FiniteCategory {
            object_count,
            arrows,
            identity,
            compose: table,
            homs,
        })
    }

    /// The category with one object and one morphism.
    pub fn terminal() -> Self {
        Self::new(1, vec![Arrow::new(0, 0)], vec![0], [(0, 0, 0)]).expect("terminal category")
    }

    /// The one-object category of a monoid given by its multiplication
    /// table, `table[a][b] = a·b` read as `a ∘ b`.
    pub fn from_monoid(table: &[Vec<usize>], unit: usize) -> Result<Self, CategoryError> {
        let n = table.len();
        let arrows = vec![Arrow::new(0, 0); n];
        let compose = (0..n).flat_map(|a| (0..n).map(move |b| (a, b, table[a][b])));
        Self::new(1, arrows, vec![unit], compose)
    }

    /// The thin category of a preorder on `0..n`: one morphism `x → y`
    /// whenever `leq(x, y)`. `leq` must be reflexive and transitive.
    pub fn from_preorder(n: usize, leq: impl Fn(usize, usize) -> bool) -> Self {
        let mut index = HashMap::new();
        let mut arrows = Vec::new();
        for x in 0..n {
            for y in 0..n {
                if leq(x, y) {
                    index.insert((x, y), arrows.len());
                    arrows.push(Arrow::new(x, y));
                }
            }
        }
        let identity = (0..n).map(|x| index[&(x, x)]).collect();
        let mut compose = Vec::new();
        for (&(x, y), &f) in &index {
            for z in 0..n {
                if let Some(&g) = index.get(&(y, z)) {
                    compose.push((g, f, index[&(x, z)]));
                }
            }
        }
        Self::new(n, arrows, identity, compose).expect("preorder category")
    }

    /// The indiscrete (pair) category on `n` objects: exactly one morphism
    /// `x → y` for every ordered pair, with index `x * n + y`.
    pub fn indiscrete(n: usize) -> Self {
        let arrows = (0..n)
            .flat_map(|x| (0..n).map(move |y| Arrow::new(x, y)))
            .collect();
        let identity = (0..n).map(|x| x * n + x).collect();
        let compose = (0..n).flat_map(move |x| {
            (0..n).flat_map(move |y| (0..n).map(move |z| (y * n + z, x * n + y, x * n + z)))
        });
        Self::new(n, arrows, identity, compose).expect("indiscrete category")
    }

    pub fn object_count(&self) -> usize {
        self.object_count
    }

    pub fn morphism_count(&self) -> usize {
        self.arrows.len()
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn arrow(&self, f: usize) -> Arrow {
        self.arrows[f]
    }

    pub fn src(&self, f: usize) -> usize {
        self.arrows[f].src
    }

    pub fn tgt(&self, f: usize) -> usize {
        self.arrows[f].tgt
    }

    pub fn identity(&self, x: usize) -> usize {
        self.identity[x]
    }

    pub fn identities(&self) -> &[usize] {
        &self.identity
    }

    pub fn is_identity(&self, f: usize) -> bool {
        let a = self.arrows[f];
        a.src == a.tgt && self.identity[a.src] == f
    }

    /// `g ∘ f`, defined only on composable pairs listed in the table.
    pub fn compose(&self, g: usize, f: usize) -> Option<usize> {
        self.compose.get(&(g, f)).copied()
    }

    pub fn hom(&self, x: usize, y: usize) -> &[usize] {
        &self.homs[x * self.object_count + y]
    }

    /// All entries of the composition table as `(g, f, g∘f)`, sorted.
    pub fn compose_entries(&self) -> Vec<(usize, usize, usize)> {
        let mut v: Vec<_> = self
            .compose
            .iter()
            .map(|(&(g, f), &gf)| (g, f, gf))
            .collect();
        v.sort_unstable();
        v
    }

    /// Returns an inverse of `f` if one exists.
    pub fn inverse(&self, f: usize) -> Option<usize> {
        let a = self.arrows[f];
        self.hom(a.tgt, a.src).iter().copied().find(|&g| {
            self.compose(g, f) == Some(self.identity[a.src])
                && self.compose(f, g) == Some(self.identity[a.tgt])
        })
    }

    /// An object receiving exactly one morphism from every object.
    pub fn terminal_object(&self) -> Option<usize> {
        (0..self.object_count).find(|&t| (0..self.object_count).all(|x| self.hom(x, t).len() == 1))
    }

    /// Some isomorphism `self → other`, by backtracking over object
    /// permutations and then over hom-set bijections. Meant for small
    /// categories only.
    pub fn find_isomorphism(&self, other: &FiniteCategory) -> Option<Functor> {
        let n = self.object_count;
        if n != other.object_count || self.arrows.len() != other.arrows.len() {
            return None;
        }
        for object_map in (0..n).permutations(n) {
            let sizes_match = (0..n).all(|x| {
                (0..n)
                    .all(|y| self.hom(x, y).len() == other.hom(object_map[x], object_map[y]).len())
            });
            if !sizes_match {
                continue;
            }
            let mut map = vec![usize::MAX; self.arrows.len()];
            let mut used = vec![false; other.arrows.len()];
            if self.extend_isomorphism(other, &object_map, 0, &mut map, &mut used) {
                return Some(Functor {
                    object_map,
                    morphism_map: map,
                });
            }
        }
        None
    }

    fn extend_isomorphism(
        &self,
        other: &FiniteCategory,
        objects: &[usize],
        f: usize,
        map: &mut [usize],
        used: &mut [bool],
    ) -> bool {
        if f == self.arrows.len() {
            return true;
        }
        let a = self.arrows[f];
        let candidates: Vec<usize> = if self.is_identity(f) {
            vec![other.identity(objects[a.src])]
        } else {
            other.hom(objects[a.src], objects[a.tgt]).to_vec()
        };
        for image in candidates {
            if used[image] {
                continue;
            }
            map[f] = image;
            let consistent = self.compose.iter().all(|(&(g, h), &gh)| {
                if g > f || h > f || gh > f {
                    return true;
                }
                other.compose(map[g], map[h]) == Some(map[gh])
            });
            if consistent {
                used[image] = true;
                if self.extend_isomorphism(other, objects, f + 1, map, used) {
                    return true;
                }
                used[image] = false;
            }
        }
        map[f] = usize::MAX;
        false
    }

    /// Checks the identity, composability and associativity laws.
    pub fn validate(&self) -> ValidationReport {
        let mut report = ValidationReport::new();
        for (x, &id) in self.identity.iter().enumerate() {
            let a = self.arrows[id];
            if a.src != x || a.tgt != x {
                report.push(
                    "identity-endpoints",
                    format!("identity {id} of object {x} runs {} -> {}", a.src, a.tgt),
                );
            }
        }
        for (&(g, f), &gf) in &self.compose {
            let (ag, af, agf) = (self.arrows[g], self.arrows[f], self.arrows[gf]);
            if ag.src != af.tgt {
                report.push(
                    "compose-undefined",
                    format!("({g}, {f}) is not composable but maps to {gf}"),
                );
            } else if agf.src != af.src || agf.tgt != ag.tgt {
                report.push(
                    "compose-endpoints",
                    format!("{g} ∘ {f} = {gf} has the wrong endpoints"),
                );
            }
        }
        for (f, af) in self.arrows.iter().enumerate() {
            let left = self.identity[af.tgt];
            let right = self.identity[af.src];
            if self.compose(left, f) != Some(f) {
                report.push(
                    "identity-law",
                    format!(
                        "id_{} ∘ {f} is {:?}, expected {f}",
                        af.tgt,
                        self.compose(left, f)
                    ),
                );
            }
            if self.compose(f, right) != Some(f) {
                report.push(
                    "identity-law",
                    format!(
                        "{f} ∘ id_{} is {:?}, expected {f}",
                        af.src,
                        self.compose(f, right)
                    ),
                );
            }
        }
        for (f, af) in self.arrows.iter().enumerate() {
            for y in 0..self.object_count {
                for &g in self.hom(af.tgt, y) {
                    if self.compose(g, f).is_none() {
                        report.push("compose-total", format!("{g} ∘ {f} is missing"));
                    }
                }
            }
        }
        if report.is_valid() {
            self.check_associativity(&mut report);
        }
        report
    }

    fn check_associativity(&self, report: &mut ValidationReport) {
        for (f, af) in self.arrows.iter().enumerate() {
            for y in 0..self.object_count {
                for &g in self.hom(af.tgt, y) {
                    let gf = self.compose[&(g, f)];
                    for z in 0..self.object_count {
                        for &h in self.hom(y, z) {
                            let left = self.compose[&(h, gf)];
                            let right = self.compose[&(self.compose[&(h, g)], f)];
                            if left != right {
                                report.push(
                                    "associativity",
                                    format!("{h} ∘ ({g} ∘ {f}) = {left} but ({h} ∘ {g}) ∘ {f} = {right}"),
                                );
                            }
                        }
                    }
                }
            }
        }
    }

    pub fn to_file(&self) -> CategoryFile {
        CategoryFile {
            objects: self.object_count,
            morphisms: self.arrows.clone(),
            identity: self.identity.clone(),
            compose: self
                .compose_entries()
                .into_iter()
                .map(|(g, f, gf)| [g, f, gf])
                .collect(),
        }
    }

    pub fn from_file(file: &CategoryFile) -> Result<Self, CategoryError> {
        Self::new(
            file.objects,
            file.morphisms.clone(),
            file.identity.clone(),
            file.compose.iter().map(|e| (e[0], e[1], e[2])),
        )
    }
}

/// On-disk form of a [`FiniteCategory`] (`category.json`).
///
/// `compose` lists `[g, f, g∘f]` triples; [`FiniteCategory::to_file`]
/// emits them sorted so that serialization is byte-stable.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CategoryFile {
    pub objects: usize,
    pub morphisms: Vec<Arrow>,
    pub identity: Vec<usize>,
    pub compose: Vec<[usize; 3]>,
}

/// A functor between finite categories, given on objects and morphisms.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Functor {
    pub object_map: Vec<usize>,
    pub morphism_map: Vec<usize>,
}

impl Functor {
    pub fn identity(c: &FiniteCategory) -> Self {
        Functor {
            object_map: (0..c.object_count()).collect(),
            morphism_map: (0..c.morphism_count()).collect(),
        }
    }

    /// `other ∘ self`: apply `self` first.
    pub fn then(&self, other: &Functor) -> Functor {
        Functor {
            object_map: self
                .object_map
                .iter()
                .map(|&x| other.object_map[x])
                .collect(),
            morphism_map: self
                .morphism_map
                .iter()
                .map(|&f| other.morphism_map[f])
                .collect(),
        }
    }

    /// Checks that `self` is a functor from `src` to `tgt`.
    pub fn validate(&self, src: &FiniteCategory, tgt: &FiniteCategory) -> ValidationReport {
        let mut report = ValidationReport::new();
        if self.object_map.len() != src.object_count()
            || self.morphism_map.len() != src.morphism_count()
        {
            report.push(
                "functor-shape",
                "object or morphism map has the wrong length",
            );
            return report;
        }
        if let Some(x) = self.object_map.iter().find(|&&x| x >= tgt.object_count()) {
            report.push("functor-shape", format!("object image {x} out of range"));
            return report;
        }
        if let Some(f) = self
            .morphism_map
            .iter()
            .find(|&&f| f >= tgt.morphism_count())
        {
            report.push("functor-shape", format!("morphism image {f} out of range"));
            return report;
        }
        for (f, a) in src.arrows().iter().enumerate() {
            let image = tgt.arrow(self.morphism_map[f]);
            if image.src != self.object_map[a.src] || image.tgt != self.object_map[a.tgt] {
                report.push(
                    "functor-endpoints",
                    format!("image of {f} has the wrong endpoints"),
                );
            }
        }
        for x in 0..src.object_count() {
            if self.morphism_map[src.identity(x)] != tgt.identity(self.object_map[x]) {
                report.push("functor-identity", format!("identity of {x} not preserved"));
            }
        }
        for (g, f, gf) in src.compose_entries() {
            let expected = tgt.compose(self.morphism_map[g], self.morphism_map[f]);
            if expected != Some(self.morphism_map[gf]) {
                report.push(
                    "functor-compose",
                    format!("u({g} ∘ {f}) != u({g}) ∘ u({f})"),
                );
            }
        }
        report
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FunctorError {
    #[error("no value given for object {0}")]
    MissingObject(usize),
    #[error("no function given for morphism {0}")]
    MissingMorphism(usize),
    #[error("function for morphism {morphism} has {found} entries, domain has {expected}")]
    DomainMismatch {
        morphism: usize,
        expected: usize,
        found: usize,
    },
    #[error(
        "function for morphism {morphism} sends an element to index {index}, codomain has {size}"
    )]
    ImageOutOfRange {
        morphism: usize,
        index: usize,
        size: usize,
    },
    #[error("object {object} lists label {label:?} twice")]
    DuplicateLabel { object: usize, label: String },
    #[error("no component given at object {0}")]
    MissingComponent(usize),
    #[error("component at object {object} has {found} entries, domain has {expected}")]
    ComponentMismatch {
        object: usize,
        expected: usize,
        found: usize,
    },
}

/// A functor `C → Sets` with finite values.
///
/// `morphism_maps[f][i]` is the index, in the value at `tgt(f)`, of the image
/// of the `i`-th element of the value at `src(f)`. Labels are opaque; two
/// functions are equal when their graphs agree on labels.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SetFunctor {
    pub object_sets: Vec<Vec<String>>,
    pub morphism_maps: Vec<Vec<usize>>,
}

impl SetFunctor {
    /// Constant functor with value `labels` and identity maps.
    pub fn constant(c: &FiniteCategory, labels: &[&str]) -> Self {
        let set: Vec<String> = labels.iter().map(|s| s.to_string()).collect();
        SetFunctor {
            object_sets: vec![set; c.object_count()],
            morphism_maps: vec![(0..labels.len()).collect(); c.morphism_count()],
        }
    }

    pub fn value(&self, x: usize) -> &[String] {
        &self.object_sets[x]
    }

    pub fn label_set(&self, x: usize) -> BTreeSet<&str> {
        self.object_sets[x].iter().map(String::as_str).collect()
    }

    /// The function `F(f)` as a sorted label graph.
    pub fn graph(&self, c: &FiniteCategory, f: usize) -> BTreeMap<&str, &str> {
        let a = c.arrow(f);
        self.morphism_maps[f]
            .iter()
            .enumerate()
            .map(|(i, &j)| {
                (
                    self.object_sets[a.src][i].as_str(),
                    self.object_sets[a.tgt][j].as_str(),
                )
            })
            .collect()
    }

    /// Structural checks: every object and morphism has data of the right size.
    pub fn check_shape(&self, c: &FiniteCategory) -> Result<(), FunctorError> {
        if self.object_sets.len() < c.object_count() {
            return Err(FunctorError::MissingObject(self.object_sets.len()));
        }
        if self.morphism_maps.len() < c.morphism_count() {
            return Err(FunctorError::MissingMorphism(self.morphism_maps.len()));
        }
        for (object, set) in self.object_sets.iter().enumerate() {
            let mut seen = BTreeSet::new();
            for label in set {
                if !seen.insert(label) {
                    return Err(FunctorError::DuplicateLabel {
                        object,
                        label: label.clone(),
                    });
                }
            }
        }
        for (f, a) in c.arrows().iter().enumerate() {
            let map = &self.morphism_maps[f];
            let expected = self.object_sets[a.src].len();
            if map.len() != expected {
                return Err(FunctorError::DomainMismatch {
                    morphism: f,
                    expected,
                    found: map.len(),
                });
            }
            let size = self.object_sets[a.tgt].len();
            if let Some(&index) = map.iter().find(|&&j| j >= size) {
                return Err(FunctorError::ImageOutOfRange {
                    morphism: f,
                    index,
                    size,
                });
            }
        }
        Ok(())
    }

    /// Checks functoriality: identities and composites are preserved.
    pub fn check(&self, c: &FiniteCategory) -> Result<ValidationReport, FunctorError> {
        self.check_shape(c)?;
        let mut report = ValidationReport::new();
        for x in 0..c.object_count() {
            let id = &self.morphism_maps[c.identity(x)];
            if id.iter().enumerate().any(|(i, &j)| i != j) {
                report.push("functor-identity", format!("F(id_{x}) is not the identity"));
            }
        }
        for (g, f, gf) in c.compose_entries() {
            let composite: Vec<usize> = self.morphism_maps[f]
                .iter()
                .map(|&i| self.morphism_maps[g][i])
                .collect();
            if composite != self.morphism_maps[gf] {
                report.push(
                    "functor-compose",
                    format!("F({g} ∘ {f}) != F({g}) ∘ F({f})"),
                );
            }
        }
        Ok(report)
    }
}

/// Components `η_x : F(x) → G(x)` as index maps.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NaturalTransformation {
    pub components: Vec<Vec<usize>>,
}

impl NaturalTransformation {
    pub fn identity(f: &SetFunctor) -> Self {
        NaturalTransformation {
            components: f
                .object_sets
                .iter()
                .map(|s| (0..s.len()).collect())
                .collect(),
        }
    }

    /// The component at `x` as a label graph.
    pub fn graph<'a>(
        &self,
        x: usize,
        from: &'a SetFunctor,
        to: &'a SetFunctor,
    ) -> BTreeMap<&'a str, &'a str> {
        self.components[x]
            .iter()
            .enumerate()
            .map(|(i, &j)| {
                (
                    from.object_sets[x][i].as_str(),
                    to.object_sets[x][j].as_str(),
                )
            })
            .collect()
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &NaturalTransformation) -> NaturalTransformation {
        NaturalTransformation {
            components: self
                .components
                .iter()
                .zip(&other.components)
                .map(|(a, b)| a.iter().map(|&i| b[i]).collect())
                .collect(),
        }
    }

    fn check_shape(
        &self,
        c: &FiniteCategory,
        from: &SetFunctor,
        to: &SetFunctor,
    ) -> Result<(), FunctorError> {
        for x in 0..c.object_count() {
            let comp = self
                .components
                .get(x)
                .ok_or(FunctorError::MissingComponent(x))?;
            let expected = from.object_sets[x].len();
            if comp.len() != expected {
                return Err(FunctorError::ComponentMismatch {
                    object: x,
                    expected,
                    found: comp.len(),
                });
            }
            let size = to.object_sets[x].len();
            if let Some(&index) = comp.iter().find(|&&j| j >= size) {
                return Err(FunctorError::ImageOutOfRange {
                    morphism: c.identity(x),
                    index,
                    size,
                });
            }
        }
        Ok(())
    }

    /// Checks every naturality square `G(f) ∘ η_x = η_y ∘ F(f)`.
    pub fn check(
        &self,
        c: &FiniteCategory,
        from: &SetFunctor,
        to: &SetFunctor,
    ) -> Result<ValidationReport, FunctorError> {
        from.check_shape(c)?;
        to.check_shape(c)?;
        self.check_shape(c, from, to)?;
        let mut report = ValidationReport::new();
        for (f, a) in c.arrows().iter().enumerate() {
            for i in 0..from.object_sets[a.src].len() {
                let down_right = to.morphism_maps[f][self.components[a.src][i]];
                let right_down = self.components[a.tgt][from.morphism_maps[f][i]];
                if down_right != right_down {
                    report.push(
                        "naturality",
                        format!(
                            "square for morphism {f} fails at element {:?}",
                            from.object_sets[a.src][i]
                        ),
                    );
                    break;
                }
            }
        }
        Ok(report)
    }
}

/// Checks that `c` satisfies the category laws.
pub fn validate_category(c: &FiniteCategory) -> ValidationReport {
    c.validate()
}

/// Checks that `f` is a functor on `c`.
pub fn check_functor(c: &FiniteCategory, f: &SetFunctor) -> Result<ValidationReport, FunctorError> {
    f.check(c)
}

/// Checks that `eta : f ⇒ g` is natural.
pub fn check_natural(
    c: &FiniteCategory,
    f: &SetFunctor,
    g: &SetFunctor,
    eta: &NaturalTransformation,
) -> Result<ValidationReport, FunctorError> {
    eta.check(c, f, g)
}
