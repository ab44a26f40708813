//! The quotient category of a colored category: one generator per color,
//! modulo composites of colors and identifications between identity colors.

mod growth;
mod presentation;
mod rewrite;

use std::collections::{BTreeMap, HashMap, VecDeque};

use serde::Serialize;
use thiserror::Error;

use crate::coloring::{ColoredCategory, ObjectPartition};
use crate::fincat::{Arrow, FiniteCategory, Functor};
use crate::report::ValidationReport;

pub use growth::{growth_series, GrowthError};
pub use presentation::{build_presentation, CategoryPresentation, Generator, Word};
pub use rewrite::{complete, shortlex, Caps, RewriteSystem, Rule};

/// Normal forms enumerated per hom-set before giving up.
pub const HOMSET_CAP: usize = 10_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum QuotientKind {
    Group,
    Monoid,
    General,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum UndecidedReason {
    /// Completion stopped at a cap.
    Incomplete,
    /// Some hom-set has more than [`HOMSET_CAP`] normal forms.
    HomSetCap { src: usize, tgt: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteQuotient {
    pub presentation: CategoryPresentation,
    pub system: RewriteSystem,
    pub partition: ObjectPartition,
    pub category: FiniteCategory,
    /// Normal form of each morphism of `category`.
    pub words: Vec<Word>,
    /// Morphism of `category` represented by each generator.
    pub generator_embedding: Vec<usize>,
    pub kind: QuotientKind,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum QuotientResult {
    Finite(Box<FiniteQuotient>),
    Undecided {
        presentation: CategoryPresentation,
        system: RewriteSystem,
        reason: UndecidedReason,
    },
}

impl QuotientResult {
    pub fn finite(&self) -> Option<&FiniteQuotient> {
        match self {
            QuotientResult::Finite(q) => Some(q),
            QuotientResult::Undecided { .. } => None,
        }
    }

    pub fn system(&self) -> &RewriteSystem {
        match self {
            QuotientResult::Finite(q) => &q.system,
            QuotientResult::Undecided { system, .. } => system,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QuotientError {
    #[error("the quotient is undecided within the completion caps")]
    Undecided,
    #[error("the colored category is not tame")]
    NotTame,
}

impl FiniteQuotient {
    pub fn order(&self) -> usize {
        self.category.morphism_count()
    }

    /// `table[a][b]` is the index of `a ∘ b`, for one-object quotients.
    pub fn multiplication_table(&self) -> Option<Vec<Vec<usize>>> {
        if self.category.object_count() != 1 {
            return None;
        }
        let n = self.order();
        Some(
            (0..n)
                .map(|a| {
                    (0..n)
                        .map(|b| self.category.compose(a, b).expect("monoid is total"))
                        .collect()
                })
                .collect(),
        )
    }

    /// The morphism represented by an arbitrary composable word from object
    /// class `src`.
    pub fn evaluate(&self, src: usize, w: &[usize]) -> Option<usize> {
        let nf = self.system.normal_form(w);
        let tgt = self.presentation.word_tgt(&nf, src);
        (0..self.order()).find(|&m| {
            let a = self.category.arrow(m);
            a.src == src && a.tgt == tgt && self.words[m] == nf
        })
    }

    pub fn render(&self, m: usize) -> String {
        self.presentation.render(&self.words[m])
    }
}

/// Completes the presentation of `x` and enumerates its normal forms.
pub fn quotient_category(x: &ColoredCategory, caps: Caps) -> QuotientResult {
    let (presentation, partition) = build_presentation(x);
    quotient_of_presentation(presentation, partition, caps)
}

/// As [`quotient_category`], for an arbitrary presentation. `partition`
/// is carried through unchanged.
pub fn quotient_of_presentation(
    presentation: CategoryPresentation,
    partition: ObjectPartition,
    caps: Caps,
) -> QuotientResult {
    let system = complete(&presentation, caps);
    if !system.complete {
        return QuotientResult::Undecided {
            presentation,
            system,
            reason: UndecidedReason::Incomplete,
        };
    }
    let homs = match enumerate_normal_forms(&presentation, &system) {
        Ok(homs) => homs,
        Err(reason) => {
            return QuotientResult::Undecided {
                presentation,
                system,
                reason,
            }
        }
    };

    let objects = presentation.objects;
    let mut arrows = Vec::new();
    let mut words = Vec::new();
    let mut index: HashMap<(usize, Word), usize> = HashMap::new();
    for ((src, tgt), nfs) in &homs {
        for w in nfs {
            index.insert((*src, w.clone()), arrows.len());
            arrows.push(Arrow::new(*src, *tgt));
            words.push(w.clone());
        }
    }
    let identity: Vec<usize> = (0..objects).map(|a| index[&(a, Vec::new())]).collect();
    let mut compose = Vec::new();
    for f in 0..arrows.len() {
        for g in 0..arrows.len() {
            if arrows[g].src != arrows[f].tgt {
                continue;
            }
            let mut w = words[g].clone();
            w.extend_from_slice(&words[f]);
            let nf = system.normal_form(&w);
            compose.push((g, f, index[&(arrows[f].src, nf)]));
        }
    }
    let generator_embedding = presentation
        .generators
        .iter()
        .enumerate()
        .map(|(g, gen)| index[&(gen.src, system.normal_form(&[g]))])
        .collect();
    let category =
        FiniteCategory::new(objects, arrows, identity, compose).expect("quotient indices in range");
    let kind = if objects != 1 {
        QuotientKind::General
    } else if (0..category.morphism_count()).all(|m| category.inverse(m).is_some()) {
        QuotientKind::Group
    } else {
        QuotientKind::Monoid
    };
    QuotientResult::Finite(Box::new(FiniteQuotient {
        presentation,
        system,
        partition,
        category,
        words,
        generator_embedding,
        kind,
    }))
}

/// Irreducible composable words, grouped by hom-set and sorted in
/// length-lex order. Irreducible words are closed under taking factors, so
/// extending irreducible words on the left reaches all of them.
fn enumerate_normal_forms(
    p: &CategoryPresentation,
    system: &RewriteSystem,
) -> Result<BTreeMap<(usize, usize), Vec<Word>>, UndecidedReason> {
    let mut homs: BTreeMap<(usize, usize), Vec<Word>> = BTreeMap::new();
    for a in 0..p.objects {
        homs.entry((a, a)).or_default().push(Vec::new());
        let mut queue = VecDeque::from([(a, Vec::new())]);
        while let Some((tgt, w)) = queue.pop_front() {
            for (g, gen) in p.generators.iter().enumerate() {
                if gen.src != tgt {
                    continue;
                }
                let mut next = Vec::with_capacity(w.len() + 1);
                next.push(g);
                next.extend_from_slice(&w);
                if !system.is_irreducible(&next) {
                    continue;
                }
                let list = homs.entry((a, gen.tgt)).or_default();
                if list.len() >= HOMSET_CAP {
                    return Err(UndecidedReason::HomSetCap {
                        src: a,
                        tgt: gen.tgt,
                    });
                }
                list.push(next.clone());
                queue.push_back((gen.tgt, next));
            }
        }
    }
    for list in homs.values_mut() {
        list.sort_by(|a, b| shortlex(a, b));
    }
    Ok(homs)
}

/// The projection onto the quotient: objects to their classes and each
/// morphism to the class of its color.
pub fn pi_functor(x: &ColoredCategory, q: &FiniteQuotient) -> Functor {
    Functor {
        object_map: q.partition.class_of.clone(),
        morphism_map: (0..x.base().morphism_count())
            .map(|f| q.generator_embedding[x.color_of(f)])
            .collect(),
    }
}

/// The category on identity colors whose morphisms are colors, composed by
/// the unique color of composites. Objects are ordered by their least
/// underlying object so that they line up with the quotient's classes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BracketCategory {
    pub category: FiniteCategory,
    /// Identity color of each object.
    pub object_colors: Vec<usize>,
    /// Color of each morphism.
    pub morphism_colors: Vec<usize>,
}

pub fn bracket_category(x: &ColoredCategory) -> Result<BracketCategory, QuotientError> {
    if !x.tameness().tame {
        return Err(QuotientError::NotTame);
    }
    let quiver = x.color_quiver().map_err(|_| QuotientError::NotTame)?;
    let table = x.structure_constants();
    let c = x.base();
    let mut object_colors: Vec<usize> = Vec::new();
    for obj in 0..c.object_count() {
        let color = x.identity_color(obj);
        if !object_colors.contains(&color) {
            object_colors.push(color);
        }
    }
    let object_of = |color: usize| {
        object_colors
            .iter()
            .position(|&c| c == color)
            .expect("identity color")
    };
    let arrows: Vec<Arrow> = (0..x.color_count())
        .map(|s| Arrow::new(object_of(quiver.sbar[s]), object_of(quiver.tbar[s])))
        .collect();
    let identity: Vec<usize> = object_colors.clone();
    let mut compose = Vec::new();
    for sigma in 0..x.color_count() {
        for tau in 0..x.color_count() {
            if arrows[tau].src != arrows[sigma].tgt {
                continue;
            }
            let product = table.complex_product(tau, sigma);
            let [mu] = product[..] else {
                return Err(QuotientError::NotTame);
            };
            compose.push((tau, sigma, mu));
        }
    }
    let category = FiniteCategory::new(object_colors.len(), arrows, identity, compose)
        .expect("bracket indices in range");
    Ok(BracketCategory {
        category,
        morphism_colors: (0..x.color_count()).collect(),
        object_colors,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BracketComparison {
    /// The functor `[x] ↦ [x]`, `σ ↦ σ` from the bracket category to the quotient.
    pub functor: Functor,
    pub report: ValidationReport,
    pub isomorphism: bool,
}

/// Checks that `[x] ↦ [x]`, `σ ↦ σ` is an isomorphism onto the quotient.
pub fn compare_bracket_quotient(
    x: &ColoredCategory,
    caps: Caps,
) -> Result<BracketComparison, QuotientError> {
    let bracket = bracket_category(x)?;
    let result = quotient_category(x, caps);
    let q = result.finite().ok_or(QuotientError::Undecided)?;
    let c = x.base();
    let object_map: Vec<usize> = bracket
        .object_colors
        .iter()
        .map(|&color| {
            let obj = (0..c.object_count())
                .find(|&o| x.identity_color(o) == color)
                .expect("identity color has an object");
            q.partition.class_of[obj]
        })
        .collect();
    let functor = Functor {
        object_map,
        morphism_map: q.generator_embedding.clone(),
    };
    let report = functor.validate(&bracket.category, &q.category);
    let bijective = |map: &[usize], n: usize| {
        let mut seen = vec![false; n];
        map.len() == n && map.iter().all(|&i| !std::mem::replace(&mut seen[i], true))
    };
    let isomorphism = report.is_valid()
        && bijective(&functor.object_map, q.category.object_count())
        && bijective(&functor.morphism_map, q.category.morphism_count());
    Ok(BracketComparison {
        functor,
        report,
        isomorphism,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::FiniteCategory;

    fn z2_schemoid() -> ColoredCategory {
        // objects 0,1; morphism x*2+y; colors by y - x mod 2
        let c = FiniteCategory::indiscrete(2);
        let colors = (0..4).map(|m| (m / 2 + m % 2) % 2).collect();
        ColoredCategory::new(c, colors).unwrap()
    }

    #[test]
    fn z2_schemoid_presents_z2() {
        let x = z2_schemoid();
        let (p, _) = build_presentation(&x);
        assert_eq!(p.objects, 1);
        assert_eq!(p.generators.len(), 2);
        assert!(p.relations.contains(&(vec![1, 1], vec![0])));
        assert!(p.relations.contains(&(vec![0], vec![])));
        let q = quotient_category(&x, Caps::default());
        let q = q.finite().unwrap();
        assert_eq!(q.order(), 2);
        assert_eq!(q.kind, QuotientKind::Group);
        assert_eq!(q.words, vec![vec![], vec![1]]);
    }

    #[test]
    fn pi_is_a_functor_and_respects_colors() {
        let x = z2_schemoid();
        let q = quotient_category(&x, Caps::default());
        let q = q.finite().unwrap();
        let pi = pi_functor(&x, q);
        assert!(pi.validate(x.base(), &q.category).is_valid());
        // both non-identity morphisms go to the generator of order two
        assert_eq!(pi.morphism_map[1], pi.morphism_map[2]);
        assert_eq!(q.words[pi.morphism_map[1]], vec![1]);
    }

    #[test]
    fn indiscrete_singletons_give_back_the_category() {
        let c = FiniteCategory::indiscrete(2);
        let x = ColoredCategory::new(c.clone(), (0..4).collect()).unwrap();
        let q = quotient_category(&x, Caps::default());
        let q = q.finite().unwrap();
        assert_eq!(q.category.object_count(), 2);
        assert_eq!(q.order(), 4);
        assert_eq!(q.kind, QuotientKind::General);
        assert!(pi_functor(&x, q).validate(&c, &q.category).is_valid());
    }

    #[test]
    fn bracket_matches_quotient_for_group_schemoid() {
        let x = z2_schemoid();
        let b = bracket_category(&x).unwrap();
        assert_eq!(b.category.morphism_count(), 2);
        assert!(b.category.validate().is_valid());
        let cmp = compare_bracket_quotient(&x, Caps::default()).unwrap();
        assert!(cmp.isomorphism);
    }

    #[test]
    fn free_monoid_is_undecided() {
        let p = CategoryPresentation::monoid(&["a".to_string()], vec![]);
        let r = quotient_of_presentation(p, ObjectPartition::from_labels(&[0]), Caps::default());
        assert!(matches!(
            r,
            QuotientResult::Undecided {
                reason: UndecidedReason::HomSetCap { .. },
                ..
            }
        ));
        assert!(r.system().complete);
        assert!(r.system().rules.is_empty());
    }
}
