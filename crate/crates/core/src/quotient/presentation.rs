use std::collections::BTreeSet;

use serde::Serialize;

use crate::coloring::{ColoredCategory, ObjectPartition};

/// A composable string of generators, written in composition order:
/// `word[0]` is applied last. The empty word is an identity.
pub type Word = Vec<usize>;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Generator {
    pub name: String,
    pub src: usize,
    pub tgt: usize,
}

/// Generators and relations for a category whose objects are `0..objects`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CategoryPresentation {
    pub objects: usize,
    pub generators: Vec<Generator>,
    pub relations: Vec<(Word, Word)>,
    /// Generators declared equal to an identity.
    pub identity_generators: BTreeSet<usize>,
    /// Relation instances dropped because their two sides were typed differently.
    pub skipped: usize,
}

impl CategoryPresentation {
    /// Source object of a word ending at generator `w.last()`, or `empty_at`
    /// for the empty word.
    pub fn word_src(&self, w: &[usize], empty_at: usize) -> usize {
        w.last().map_or(empty_at, |&g| self.generators[g].src)
    }

    pub fn word_tgt(&self, w: &[usize], empty_at: usize) -> usize {
        w.first().map_or(empty_at, |&g| self.generators[g].tgt)
    }

    pub fn is_composable(&self, w: &[usize]) -> bool {
        w.windows(2)
            .all(|p| self.generators[p[0]].src == self.generators[p[1]].tgt)
    }

    /// Endpoints of a nonempty word, `None` for the empty word.
    fn endpoints(&self, w: &[usize]) -> Option<(usize, usize)> {
        Some((self.word_src(w, 0), self.word_tgt(w, 0))).filter(|_| !w.is_empty())
    }

    /// Both sides composable and, where determined, with equal endpoints.
    pub fn relation_is_typed(&self, lhs: &[usize], rhs: &[usize]) -> bool {
        if !self.is_composable(lhs) || !self.is_composable(rhs) {
            return false;
        }
        match (self.endpoints(lhs), self.endpoints(rhs)) {
            (Some(a), Some(b)) => a == b,
            (Some((s, t)), None) | (None, Some((s, t))) => s == t,
            (None, None) => true,
        }
    }

    /// Renders a word like `s2·s0`, or `1` for the empty word.
    pub fn render(&self, w: &[usize]) -> String {
        if w.is_empty() {
            return "1".to_string();
        }
        w.iter()
            .map(|&g| self.generators[g].name.as_str())
            .collect::<Vec<_>>()
            .join("·")
    }

    /// One-object presentation of a monoid on `names` with the given relations.
    pub fn monoid(names: &[String], relations: Vec<(Word, Word)>) -> Self {
        CategoryPresentation {
            objects: 1,
            generators: names
                .iter()
                .map(|n| Generator {
                    name: n.clone(),
                    src: 0,
                    tgt: 0,
                })
                .collect(),
            relations,
            identity_generators: BTreeSet::new(),
            skipped: 0,
        }
    }
}

/// The presentation of the quotient category: objects are the classes of
/// [`ColoredCategory::object_classes`], one generator per color, and
/// relations from composites, from identity colors over the same class, and
/// from colors containing an identity.
pub fn build_presentation(x: &ColoredCategory) -> (CategoryPresentation, ObjectPartition) {
    let classes = x.object_classes();
    let c = x.base();
    let generators: Vec<Generator> = (0..x.color_count())
        .map(|color| {
            let a = c.arrow(x.members(color)[0]);
            Generator {
                name: format!("s{color}"),
                src: classes.class_of[a.src],
                tgt: classes.class_of[a.tgt],
            }
        })
        .collect();
    let mut presentation = CategoryPresentation {
        objects: classes.len(),
        generators,
        relations: Vec::new(),
        identity_generators: BTreeSet::new(),
        skipped: 0,
    };

    let mut relations: BTreeSet<(Word, Word)> = BTreeSet::new();
    let mut skipped = 0;
    let mut add = |p: &CategoryPresentation, lhs: Word, rhs: Word| {
        if lhs == rhs {
            return;
        }
        if p.relation_is_typed(&lhs, &rhs) {
            relations.insert((lhs, rhs));
        } else {
            skipped += 1;
        }
    };

    for (g, f, gf) in c.compose_entries() {
        add(
            &presentation,
            vec![x.color_of(g), x.color_of(f)],
            vec![x.color_of(gf)],
        );
    }
    let mut identity_generators = BTreeSet::new();
    for obj in 0..c.object_count() {
        identity_generators.insert(x.identity_color(obj));
    }
    for &sigma in &identity_generators {
        add(&presentation, vec![sigma], vec![]);
    }
    for a in 0..c.object_count() {
        for b in 0..c.object_count() {
            if classes.same(a, b) {
                add(
                    &presentation,
                    vec![x.identity_color(a)],
                    vec![x.identity_color(b)],
                );
            }
        }
    }
    presentation.relations = relations.into_iter().collect();
    presentation.identity_generators = identity_generators;
    presentation.skipped = skipped;
    (presentation, classes)
}
