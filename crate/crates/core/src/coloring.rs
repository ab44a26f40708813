//! Colored categories: a finite category together with a partition of its
//! morphisms, given as a surjective coloring map.
//!
//! Structure constants follow the composition convention of the category:
//! `p(σ, τ, μ)` counts pairs `(g, f)` with `g ∈ σ`, `f ∈ τ` and `g ∘ f = h`
//! for a fixed `h ∈ μ`.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use petgraph::unionfind::UnionFind;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::fincat::{CategoryError, CategoryFile, FiniteCategory, Functor};
use crate::report::ValidationReport;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ColoringError {
    #[error("a colored category needs at least one morphism")]
    NoMorphisms,
    #[error("coloring has {found} entries for {expected} morphisms")]
    LengthMismatch { expected: usize, found: usize },
    #[error("color {0} contains no morphism")]
    EmptyColor(usize),
    #[error(transparent)]
    Category(#[from] CategoryError),
}

/// A predicate outcome carrying a counterexample when it fails.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Verdict<W> {
    pub holds: bool,
    pub witness: Option<W>,
}

impl<W> Verdict<W> {
    pub fn yes() -> Self {
        Verdict {
            holds: true,
            witness: None,
        }
    }

    pub fn no(witness: W) -> Self {
        Verdict {
            holds: false,
            witness: Some(witness),
        }
    }
}

/// A finite category with a surjective coloring of its morphisms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColoredCategory {
    base: FiniteCategory,
    color_of: Vec<usize>,
    members: Vec<Vec<usize>>,
}

impl ColoredCategory {
    /// Colors must cover `0..k` for some `k`; every color must be used.
    pub fn new(base: FiniteCategory, color_of: Vec<usize>) -> Result<Self, ColoringError> {
        if base.morphism_count() == 0 {
            return Err(ColoringError::NoMorphisms);
        }
        if color_of.len() != base.morphism_count() {
            return Err(ColoringError::LengthMismatch {
                expected: base.morphism_count(),
                found: color_of.len(),
            });
        }
        let count = color_of.iter().max().map_or(0, |&c| c + 1);
        let mut members = vec![Vec::new(); count];
        for (f, &c) in color_of.iter().enumerate() {
            members[c].push(f);
        }
        if let Some(empty) = members.iter().position(Vec::is_empty) {
            return Err(ColoringError::EmptyColor(empty));
        }
        Ok(ColoredCategory {
            base,
            color_of,
            members,
        })
    }

    pub fn base(&self) -> &FiniteCategory {
        &self.base
    }

    pub fn color_count(&self) -> usize {
        self.members.len()
    }

    pub fn color_of(&self, f: usize) -> usize {
        self.color_of[f]
    }

    pub fn colors(&self) -> &[usize] {
        &self.color_of
    }

    pub fn members(&self, color: usize) -> &[usize] {
        &self.members[color]
    }

    pub fn same_color(&self, f: usize, g: usize) -> bool {
        self.color_of[f] == self.color_of[g]
    }

    /// Color of the identity at `x`.
    pub fn identity_color(&self, x: usize) -> usize {
        self.color_of[self.base.identity(x)]
    }

    /// Colors that contain at least one identity.
    pub fn identity_colors(&self) -> BTreeSet<usize> {
        (0..self.base.object_count())
            .map(|x| self.identity_color(x))
            .collect()
    }

    /// The partition of objects under the equivalence generated by
    /// `s(f) ~ s(g)` and `t(f) ~ t(g)` for same-colored `f, g`.
    pub fn object_classes(&self) -> ObjectPartition {
        let n = self.base.object_count();
        let mut uf = UnionFind::<usize>::new(n);
        for members in &self.members {
            let first = self.base.arrow(members[0]);
            for &f in &members[1..] {
                let a = self.base.arrow(f);
                uf.union(first.src, a.src);
                uf.union(first.tgt, a.tgt);
            }
        }
        ObjectPartition::from_labels(&(0..n).map(|x| uf.find(x)).collect::<Vec<_>>())
    }

    /// Composition fibers for every color triple, with the schemoid verdict.
    pub fn structure_constants(&self) -> StructureConstantTable {
        let c = &self.base;
        let mut fibers: HashMap<(usize, usize, usize), usize> = HashMap::new();
        for (g, f, gf) in c.compose_entries() {
            *fibers
                .entry((self.color_of[g], self.color_of[f], gf))
                .or_default() += 1;
        }
        // (σ, τ, μ) -> sizes of nonzero fibers over members of μ
        let mut grouped: BTreeMap<(usize, usize, usize), Vec<(usize, usize)>> = BTreeMap::new();
        for (&(s, t, h), &n) in &fibers {
            grouped
                .entry((s, t, self.color_of[h]))
                .or_default()
                .push((h, n));
        }
        let mut nonzero = BTreeMap::new();
        let mut inconsistent = BTreeSet::new();
        let mut witness = None;
        for (&(s, t, mu), hits) in &grouped {
            let size = self.members[mu].len();
            let first = hits[0].1;
            let uniform = hits.len() == size && hits.iter().all(|&(_, n)| n == first);
            if uniform {
                nonzero.insert((s, t, mu), first);
                continue;
            }
            inconsistent.insert((s, t, mu));
            if witness.is_none() {
                let fiber = |h: usize| hits.iter().find(|&&(k, _)| k == h).map_or(0, |&(_, n)| n);
                let f = self.members[mu][0];
                let g = self.members[mu]
                    .iter()
                    .copied()
                    .find(|&g| fiber(g) != fiber(f))
                    .expect("nonuniform fiber");
                witness = Some(SchemoidWitness {
                    sigma: s,
                    tau: t,
                    mu,
                    f,
                    g,
                    fiber_f: fiber(f),
                    fiber_g: fiber(g),
                });
            }
        }
        StructureConstantTable {
            color_count: self.color_count(),
            nonzero,
            inconsistent,
            schemoid: witness.is_none(),
            witness,
        }
    }

    /// Same-colored morphisms have same-colored source and target identities.
    pub fn is_naturally_colored(&self) -> Verdict<(usize, usize)> {
        for members in &self.members {
            let f = members[0];
            let (fs, ft) = (self.base.src(f), self.base.tgt(f));
            for &g in &members[1..] {
                let (gs, gt) = (self.base.src(g), self.base.tgt(g));
                if self.identity_color(fs) != self.identity_color(gs)
                    || self.identity_color(ft) != self.identity_color(gt)
                {
                    return Verdict::no((f, g));
                }
            }
        }
        Verdict::yes()
    }

    /// Checks T(i), T(ii) and, for schemoids, T(iii).
    pub fn tameness(&self) -> Tameness {
        let unital = self
            .identity_colors()
            .iter()
            .all(|&c| self.members[c].iter().all(|&f| self.base.is_identity(f)));
        let tii = self.is_naturally_colored().holds;
        let table = self.structure_constants();
        let tiii = (table.schemoid && tii).then(|| self.check_unique_composites(&table));
        Tameness {
            unital,
            tii,
            tiii,
            tame: unital && tiii == Some(true),
        }
    }

    fn check_unique_composites(&self, table: &StructureConstantTable) -> bool {
        let (src, tgt) = self.color_endpoints();
        for sigma in 0..self.color_count() {
            for tau in 0..self.color_count() {
                if tgt[sigma] != src[tau] {
                    continue;
                }
                let composable = self.members[sigma].iter().any(|&f| {
                    self.members[tau]
                        .iter()
                        .any(|&g| self.base.src(g) == self.base.tgt(f))
                });
                if !composable || table.complex_product(tau, sigma).len() != 1 {
                    return false;
                }
            }
        }
        true
    }

    /// Identity colors at the source and target of each color. Only
    /// meaningful for naturally colored categories.
    fn color_endpoints(&self) -> (Vec<usize>, Vec<usize>) {
        self.members
            .iter()
            .map(|m| {
                let a = self.base.arrow(m[0]);
                (self.identity_color(a.src), self.identity_color(a.tgt))
            })
            .unzip()
    }

    /// The maps `s̄, t̄` from morphism colors to identity colors.
    pub fn color_quiver(&self) -> Result<ColorQuiver, NotNaturallyColored> {
        let verdict = self.is_naturally_colored();
        if let Some((f, g)) = verdict.witness {
            return Err(NotNaturallyColored { f, g });
        }
        let (sbar, tbar) = self.color_endpoints();
        Ok(ColorQuiver {
            object_colors: self.identity_colors().into_iter().collect(),
            morphism_colors: (0..self.color_count()).collect(),
            sbar,
            tbar,
        })
    }

    pub fn to_file(&self) -> ColoredFile {
        ColoredFile {
            category: self.base.to_file(),
            colors: self.color_of.clone(),
        }
    }

    pub fn from_file(file: &ColoredFile) -> Result<Self, ColoringError> {
        let base = FiniteCategory::from_file(&file.category)?;
        Self::new(base, file.colors.clone())
    }
}

/// On-disk form of a colored category (`colored.json`): the category
/// fields plus `"colors"`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColoredFile {
    #[serde(flatten)]
    pub category: CategoryFile,
    pub colors: Vec<usize>,
}

/// A partition of `0..n` with classes ordered by their minimum element.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ObjectPartition {
    pub class_of: Vec<usize>,
    pub classes: Vec<Vec<usize>>,
}

impl ObjectPartition {
    /// Builds the canonical partition from arbitrary class labels.
    pub fn from_labels(labels: &[usize]) -> Self {
        let mut index: HashMap<usize, usize> = HashMap::new();
        let mut classes: Vec<Vec<usize>> = Vec::new();
        let mut class_of = Vec::with_capacity(labels.len());
        for (x, l) in labels.iter().enumerate() {
            let k = *index.entry(*l).or_insert_with(|| {
                classes.push(Vec::new());
                classes.len() - 1
            });
            classes[k].push(x);
            class_of.push(k);
        }
        ObjectPartition { class_of, classes }
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn representative(&self, class: usize) -> usize {
        self.classes[class][0]
    }

    pub fn same(&self, x: usize, y: usize) -> bool {
        self.class_of[x] == self.class_of[y]
    }
}

/// Counterexample to the schemoid condition: `f, g ∈ μ` have composition
/// fibers of different sizes over `σ × τ`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SchemoidWitness {
    pub sigma: usize,
    pub tau: usize,
    pub mu: usize,
    pub f: usize,
    pub g: usize,
    pub fiber_f: usize,
    pub fiber_g: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StructureConstantTable {
    pub color_count: usize,
    #[serde(skip)]
    nonzero: BTreeMap<(usize, usize, usize), usize>,
    #[serde(skip)]
    inconsistent: BTreeSet<(usize, usize, usize)>,
    pub schemoid: bool,
    pub witness: Option<SchemoidWitness>,
}

impl StructureConstantTable {
    /// `p(σ, τ, μ)`, or `None` when fibers over `μ` disagree.
    pub fn p(&self, sigma: usize, tau: usize, mu: usize) -> Option<usize> {
        if self.inconsistent.contains(&(sigma, tau, mu)) {
            return None;
        }
        Some(self.nonzero.get(&(sigma, tau, mu)).copied().unwrap_or(0))
    }

    /// Colors `μ` with a nonzero fiber over `σ × τ`.
    pub fn complex_product(&self, sigma: usize, tau: usize) -> Vec<usize> {
        let consistent = self
            .nonzero
            .range((sigma, tau, 0)..(sigma, tau + 1, 0))
            .map(|(&(_, _, m), _)| m);
        let partial = self
            .inconsistent
            .range((sigma, tau, 0)..(sigma, tau + 1, 0))
            .map(|&(_, _, m)| m);
        let set: BTreeSet<usize> = consistent.chain(partial).collect();
        set.into_iter().collect()
    }

    /// Nonzero constants as sorted `(σ, τ, μ, p)` rows.
    pub fn nonzero_entries(&self) -> Vec<(usize, usize, usize, usize)> {
        self.nonzero
            .iter()
            .map(|(&(s, t, m), &p)| (s, t, m, p))
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Tameness {
    pub unital: bool,
    pub tii: bool,
    /// `None` when T(iii) is not applicable (not a schemoid, or T(ii) fails).
    pub tiii: Option<bool>,
    pub tame: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ColorQuiver {
    /// Colors of identities.
    pub object_colors: Vec<usize>,
    pub morphism_colors: Vec<usize>,
    pub sbar: Vec<usize>,
    pub tbar: Vec<usize>,
}

impl ColorQuiver {
    /// Checks `s̄ ∘ ℓ₁ = ℓ₀ ∘ s` and `t̄ ∘ ℓ₁ = ℓ₀ ∘ t` on every morphism.
    pub fn check(&self, x: &ColoredCategory) -> ValidationReport {
        let mut report = ValidationReport::new();
        for (f, a) in x.base().arrows().iter().enumerate() {
            let c = x.color_of(f);
            if self.sbar[c] != x.identity_color(a.src) {
                report.push("quiver-source", format!("morphism {f}"));
            }
            if self.tbar[c] != x.identity_color(a.tgt) {
                report.push("quiver-target", format!("morphism {f}"));
            }
        }
        report
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("not naturally colored: morphisms {f} and {g} share a color but their endpoint identities do not")]
pub struct NotNaturallyColored {
    pub f: usize,
    pub g: usize,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ColoredMorphismError {
    #[error("not a functor: {0}")]
    NotAFunctor(ValidationReport),
    #[error("color {color} is split: u({f}) has color {image_f} but u({g}) has color {image_g}")]
    SplitColor {
        color: usize,
        f: usize,
        g: usize,
        image_f: usize,
        image_g: usize,
    },
}

/// Returns the induced map on colors when `u` sends every color of `x`
/// into a single color of `y`.
pub fn check_colored_morphism(
    u: &Functor,
    x: &ColoredCategory,
    y: &ColoredCategory,
) -> Result<Vec<usize>, ColoredMorphismError> {
    let report = u.validate(x.base(), y.base());
    if !report.is_valid() {
        return Err(ColoredMorphismError::NotAFunctor(report));
    }
    let mut map = Vec::with_capacity(x.color_count());
    for color in 0..x.color_count() {
        let f = x.members(color)[0];
        let image_f = y.color_of(u.morphism_map[f]);
        for &g in &x.members(color)[1..] {
            let image_g = y.color_of(u.morphism_map[g]);
            if image_g != image_f {
                return Err(ColoredMorphismError::SplitColor {
                    color,
                    f,
                    g,
                    image_f,
                    image_g,
                });
            }
        }
        map.push(image_f);
    }
    Ok(map)
}

/// Hypotheses of the nonvanishing criterion for maps into a binary Hamming
/// schemoid whose colors are indexed by distance: `u` is a colored
/// morphism, `τ` lands in an odd distance, and `τ` contains an invertible
/// morphism together with its inverse.
pub fn prop_app_hypotheses(
    u: &Functor,
    x: &ColoredCategory,
    hamming: &ColoredCategory,
    tau: usize,
) -> bool {
    let Ok(map) = check_colored_morphism(u, x, hamming) else {
        return false;
    };
    map[tau] % 2 == 1 && invertible_pair_in(x, tau).is_some()
}

/// Some `f ∈ τ` whose inverse is also in `τ`.
pub fn invertible_pair_in(x: &ColoredCategory, tau: usize) -> Option<(usize, usize)> {
    x.members(tau).iter().find_map(|&f| {
        x.base()
            .inverse(f)
            .filter(|&g| x.color_of(g) == tau)
            .map(|g| (f, g))
    })
}
