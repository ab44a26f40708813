//! Association schemes and the colored categories they define.

mod residue;

use std::collections::BTreeSet;

use itertools::Itertools;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::coloring::ColoredCategory;
use crate::fincat::FiniteCategory;
use crate::monoid::FiniteMonoid;
use crate::quotient::{quotient_category, Caps};
use crate::report::ValidationReport;

pub use residue::{factor_scheme, is_closed, thin_residue, ClosedSubset, FactorScheme};

/// Largest point count the generators will build.
pub const MAX_POINTS: usize = 4096;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SchemeError {
    #[error("not an association scheme:\n{0}")]
    Invalid(ValidationReport),
    #[error("parameters out of range: {0}")]
    Parameters(String),
    #[error("the subset is not closed")]
    NotClosed,
    #[error("the group table is not a group")]
    NotAGroup,
    #[error("the quotient is undecided within the completion caps")]
    Undecided,
}

/// An association scheme on `0..n`. Color 0 is the diagonal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AssociationScheme {
    relation_of: Vec<Vec<usize>>,
    adjoint: Vec<usize>,
    colors: usize,
    /// `p[(s * colors + t) * colors + u]`
    p: Vec<usize>,
}

/// On-disk form (`scheme.json`).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SchemeFile {
    pub points: usize,
    pub relations: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub adjoint: Option<Vec<usize>>,
}

/// Checks the scheme axioms on a relation matrix.
pub fn validate_relations(rel: &[Vec<usize>]) -> ValidationReport {
    let mut report = ValidationReport::new();
    let n = rel.len();
    if n == 0 {
        report.push("points", "no points");
        return report;
    }
    if let Some(x) = (0..n).find(|&x| rel[x].len() != n) {
        report.push("square", format!("row {x} has length {}", rel[x].len()));
        return report;
    }
    let colors = rel.iter().flatten().max().map_or(0, |m| m + 1);
    let used: BTreeSet<usize> = rel.iter().flatten().copied().collect();
    if used.len() != colors {
        report.push("surjective", "some color index below the maximum is unused");
    }
    for x in 0..n {
        for y in 0..n {
            if (x == y) != (rel[x][y] == 0) {
                report.push("diagonal", format!("({x},{y}) has color {}", rel[x][y]));
            }
        }
    }
    if !report.is_valid() {
        return report;
    }
    let mut adjoint = vec![None; colors];
    for x in 0..n {
        for y in 0..n {
            let (s, t) = (rel[x][y], rel[y][x]);
            match adjoint[s] {
                None => adjoint[s] = Some(t),
                Some(a) if a != t => {
                    report.push(
                        "adjoint",
                        format!("transpose of color {s} is not a single color"),
                    );
                }
                _ => {}
            }
        }
    }
    if !report.is_valid() {
        return report;
    }
    if let Err(detail) = intersection_numbers(rel, colors) {
        report.push("intersection-numbers", detail);
    }
    report
}

/// Brute-force intersection numbers, failing on the first pair where the
/// count depends on the chosen `(x, y)`.
fn intersection_numbers(rel: &[Vec<usize>], colors: usize) -> Result<Vec<usize>, String> {
    let n = rel.len();
    let mut p: Vec<Option<usize>> = vec![None; colors * colors * colors];
    let mut counts = vec![0usize; colors * colors];
    for x in 0..n {
        for y in 0..n {
            counts.iter_mut().for_each(|c| *c = 0);
            for z in 0..n {
                counts[rel[x][z] * colors + rel[z][y]] += 1;
            }
            let u = rel[x][y];
            for s in 0..colors {
                for t in 0..colors {
                    let slot = &mut p[(s * colors + t) * colors + u];
                    let count = counts[s * colors + t];
                    match *slot {
                        None => *slot = Some(count),
                        Some(c) if c != count => {
                            return Err(format!(
                                "p({s},{t},{u}) is {c} at one pair and {count} at ({x},{y})"
                            ))
                        }
                        _ => {}
                    }
                }
            }
        }
    }
    Ok(p.into_iter().map(|c| c.unwrap_or(0)).collect())
}

impl AssociationScheme {
    pub fn new(relation_of: Vec<Vec<usize>>) -> Result<Self, SchemeError> {
        let report = validate_relations(&relation_of);
        if !report.is_valid() {
            return Err(SchemeError::Invalid(report));
        }
        let n = relation_of.len();
        let colors = relation_of.iter().flatten().max().map_or(0, |m| m + 1);
        let mut adjoint = vec![0; colors];
        for x in 0..n {
            for y in 0..n {
                adjoint[relation_of[x][y]] = relation_of[y][x];
            }
        }
        let p = intersection_numbers(&relation_of, colors).expect("validated");
        Ok(AssociationScheme {
            relation_of,
            adjoint,
            colors,
            p,
        })
    }

    /// Relabels colors in order of first appearance along rows, with the
    /// diagonal first, then builds the scheme.
    pub fn from_labels(labels: &[Vec<usize>]) -> Result<Self, SchemeError> {
        let n = labels.len();
        let mut order: Vec<usize> = Vec::new();
        if let Some(d) = labels.first().and_then(|r| r.first()) {
            order.push(*d);
        }
        for row in labels {
            for &l in row {
                if !order.contains(&l) {
                    order.push(l);
                }
            }
        }
        let relabelled = (0..n)
            .map(|x| {
                labels[x]
                    .iter()
                    .map(|l| order.iter().position(|o| o == l).expect("listed"))
                    .collect()
            })
            .collect();
        Self::new(relabelled)
    }

    pub fn to_file(&self) -> SchemeFile {
        SchemeFile {
            points: self.point_count(),
            relations: self.relation_of.clone(),
            adjoint: Some(self.adjoint.clone()),
        }
    }

    pub fn from_file(file: &SchemeFile) -> Result<Self, SchemeError> {
        if file.relations.len() != file.points {
            return Err(SchemeError::Parameters(format!(
                "{} points but {} rows",
                file.points,
                file.relations.len()
            )));
        }
        let scheme = Self::new(file.relations.clone())?;
        if let Some(adjoint) = &file.adjoint {
            if *adjoint != scheme.adjoint {
                let mut report = ValidationReport::new();
                report.push(
                    "adjoint",
                    "declared adjoint map disagrees with the relations",
                );
                return Err(SchemeError::Invalid(report));
            }
        }
        Ok(scheme)
    }

    pub fn point_count(&self) -> usize {
        self.relation_of.len()
    }

    pub fn color_count(&self) -> usize {
        self.colors
    }

    pub fn relation(&self, x: usize, y: usize) -> usize {
        self.relation_of[x][y]
    }

    pub fn relations(&self) -> &[Vec<usize>] {
        &self.relation_of
    }

    pub fn adjoint(&self, s: usize) -> usize {
        self.adjoint[s]
    }

    /// `|{z : (x,z) ∈ s, (z,y) ∈ t}|` for any `(x,y) ∈ u`.
    pub fn p(&self, s: usize, t: usize, u: usize) -> usize {
        self.p[(s * self.colors + t) * self.colors + u]
    }

    pub fn valency(&self, s: usize) -> usize {
        self.p(s, self.adjoint[s], 0)
    }

    /// Colors `u` with `p(s, t, u) ≠ 0`.
    pub fn complex_product(&self, s: usize, t: usize) -> Vec<usize> {
        (0..self.colors).filter(|&u| self.p(s, t, u) != 0).collect()
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.colors).all(|s| self.adjoint[s] == s)
    }

    pub fn is_commutative(&self) -> bool {
        (0..self.colors)
            .tuple_combinations()
            .all(|(s, t)| (0..self.colors).all(|u| self.p(s, t, u) == self.p(t, s, u)))
    }

    pub fn is_thin(&self) -> bool {
        (0..self.colors).all(|s| self.valency(s) == 1)
    }

    /// The 0/1 adjacency matrix of color `s`.
    pub fn adjacency(&self, s: usize) -> Vec<Vec<i64>> {
        self.relation_of
            .iter()
            .map(|row| row.iter().map(|&c| i64::from(c == s)).collect())
            .collect()
    }

    /// For a thin scheme, the group on its colors: `s·t` is the unique `u`
    /// with `p(s, t, u) ≠ 0`.
    pub fn thin_group(&self) -> Option<FiniteMonoid> {
        if !self.is_thin() {
            return None;
        }
        let table = (0..self.colors)
            .map(|s| {
                (0..self.colors)
                    .map(|t| match self.complex_product(s, t)[..] {
                        [u] => Some(u),
                        _ => None,
                    })
                    .collect::<Option<Vec<_>>>()
            })
            .collect::<Option<Vec<_>>>()?;
        FiniteMonoid::new(table, 0).ok()
    }
}

/// Re-verifies every axiom of `a` from its relation matrix.
pub fn validate_scheme(a: &AssociationScheme) -> ValidationReport {
    let mut report = validate_relations(&a.relation_of);
    if report.is_valid() {
        match intersection_numbers(&a.relation_of, a.colors) {
            Ok(p) if p == a.p => {}
            _ => report.push(
                "intersection-numbers",
                "stored numbers disagree with the relations",
            ),
        }
    }
    report
}

fn guard(points: u128) -> Result<usize, SchemeError> {
    if points > MAX_POINTS as u128 {
        return Err(SchemeError::Parameters(format!(
            "{points} points exceeds the limit of {MAX_POINTS}"
        )));
    }
    Ok(points as usize)
}

/// Words of length `n` over `q` letters, colored by Hamming distance.
pub fn hamming(n: usize, q: usize) -> Result<AssociationScheme, SchemeError> {
    if n == 0 || q < 2 {
        return Err(SchemeError::Parameters(format!(
            "H({n},{q}) needs n ≥ 1, q ≥ 2"
        )));
    }
    let points = guard((q as u128).checked_pow(n as u32).unwrap_or(u128::MAX))?;
    let digits = |mut x: usize| -> Vec<usize> {
        (0..n)
            .map(|_| {
                let d = x % q;
                x /= q;
                d
            })
            .collect()
    };
    let words: Vec<Vec<usize>> = (0..points).map(digits).collect();
    let rel = words
        .iter()
        .map(|a| {
            words
                .iter()
                .map(|b| a.iter().zip(b).filter(|(x, y)| x != y).count())
                .collect()
        })
        .collect();
    AssociationScheme::new(rel)
}

/// `d`-subsets of a `v`-set; `(x, y)` has color `d - |x ∩ y|`.
pub fn johnson(v: usize, d: usize) -> Result<AssociationScheme, SchemeError> {
    if d == 0 || 2 * d > v {
        return Err(SchemeError::Parameters(format!(
            "J({v},{d}) needs 1 ≤ d ≤ v/2"
        )));
    }
    let subsets: Vec<Vec<usize>> = (0..v).combinations(d).collect();
    guard(subsets.len() as u128)?;
    let rel = subsets
        .iter()
        .map(|a| {
            subsets
                .iter()
                .map(|b| d - a.iter().filter(|x| b.contains(x)).count())
                .collect()
        })
        .collect();
    AssociationScheme::new(rel)
}

/// Color of group element `g` in [`group_scheme`]: the unit is color 0,
/// the other elements follow in index order.
pub fn group_color(g: usize, unit: usize) -> usize {
    match g.cmp(&unit) {
        std::cmp::Ordering::Equal => 0,
        std::cmp::Ordering::Less => g + 1,
        std::cmp::Ordering::Greater => g,
    }
}

/// The thin scheme of a group: `(x, y)` has the color of `x⁻¹y`.
pub fn group_scheme(g: &FiniteMonoid) -> Result<AssociationScheme, SchemeError> {
    if !g.is_group() {
        return Err(SchemeError::NotAGroup);
    }
    let n = g.order();
    let inv: Vec<usize> = (0..n).map(|x| g.inverse(x).expect("group")).collect();
    let rel = (0..n)
        .map(|x| {
            (0..n)
                .map(|y| group_color(g.mul(inv[x], y), g.unit()))
                .collect()
        })
        .collect();
    AssociationScheme::new(rel)
}

/// Checks `A_s A_t = Σ_u p(s,t,u) A_u` for every pair of colors.
pub fn standard_representation_check(a: &AssociationScheme) -> ValidationReport {
    let mut report = ValidationReport::new();
    let n = a.point_count();
    let k = a.color_count();
    // A_s as lists of columns per row
    let support: Vec<Vec<Vec<usize>>> = (0..k)
        .map(|s| {
            (0..n)
                .map(|x| (0..n).filter(|&y| a.relation(x, y) == s).collect())
                .collect()
        })
        .collect();
    let partition =
        (0..n).all(|x| (0..n).all(|y| (0..k).filter(|&s| support[s][x].contains(&y)).count() == 1));
    if !partition {
        report.push(
            "partition",
            "adjacency matrices do not sum to the all-ones matrix",
        );
    }
    for s in 0..k {
        for t in 0..k {
            let mut product = vec![vec![0i64; n]; n];
            for x in 0..n {
                for &z in &support[s][x] {
                    for &y in &support[t][z] {
                        product[x][y] += 1;
                    }
                }
            }
            let mut expected = vec![vec![0i64; n]; n];
            for u in 0..k {
                let c = a.p(s, t, u) as i64;
                if c == 0 {
                    continue;
                }
                for x in 0..n {
                    for &y in &support[u][x] {
                        expected[x][y] += c;
                    }
                }
            }
            if product != expected {
                report.push("standard-representation", format!("A_{s}·A_{t} differs"));
            }
        }
    }
    report
}

/// The colored category with one morphism `x → y` for each pair of points
/// (index `x * n + y`), colored by the relation containing `(x, y)`.
pub fn as_schemoid(a: &AssociationScheme) -> ColoredCategory {
    let n = a.point_count();
    let c = FiniteCategory::indiscrete(n);
    let colors = (0..n * n).map(|m| a.relation(m / n, m % n)).collect();
    ColoredCategory::new(c, colors).expect("every relation is nonempty")
}

/// Result of comparing the quotient of `as_schemoid(A)` with the group of
/// the factor scheme by the thin residue.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PropHReport {
    pub quotient_order: usize,
    pub factor_order: usize,
    /// Image of each quotient element under `[σ] ↦ (σ*)^T`.
    pub map: Vec<usize>,
    /// `[σ] ↦ (σ*)^T` is a group isomorphism.
    pub isomorphism: bool,
    /// `[σ] ↦ σ^T` reverses products and is bijective.
    pub anti_isomorphism: bool,
    /// An isomorphism found by search, independent of `map`.
    pub searched: Option<Vec<usize>>,
}

/// Compares the rewriting quotient with the thin-residue factor group.
pub fn prop_h_crosscheck(a: &AssociationScheme, caps: Caps) -> Result<PropHReport, SchemeError> {
    let x = as_schemoid(a);
    let result = quotient_category(&x, caps);
    let q = result.finite().ok_or(SchemeError::Undecided)?;
    let quotient = FiniteMonoid::from_category(&q.category).ok_or(SchemeError::Undecided)?;
    let residue = thin_residue(a);
    let factor = factor_scheme(a, &residue)?;
    let group = factor.group().ok_or(SchemeError::NotAGroup)?;

    // Evaluate a normal form letter by letter; generator σ is color σ.
    let image = |word: &[usize], letter: &dyn Fn(usize) -> usize, reversed: bool| {
        let mut acc = group.unit();
        for &s in word {
            let g = letter(s);
            acc = if reversed {
                group.mul(g, acc)
            } else {
                group.mul(acc, g)
            };
        }
        acc
    };
    let plain = |s: usize| factor.class_of_color[s];
    let starred = |s: usize| factor.class_of_color[a.adjoint(s)];
    let map: Vec<usize> = q.words.iter().map(|w| image(w, &starred, false)).collect();
    let anti: Vec<usize> = q.words.iter().map(|w| image(w, &plain, true)).collect();
    let isomorphism = quotient.is_isomorphism(&map, &group);
    let anti_isomorphism = quotient.is_isomorphism(&anti, &group.opposite());
    Ok(PropHReport {
        quotient_order: quotient.order(),
        factor_order: group.order(),
        map,
        isomorphism,
        anti_isomorphism,
        searched: quotient.find_isomorphism(&group),
    })
}

/// Named schemes shipped with the library.
pub fn builtin_schemes() -> Vec<(String, AssociationScheme)> {
    let mut out = Vec::new();
    for (n, q) in [
        (1, 2),
        (2, 2),
        (3, 2),
        (4, 2),
        (5, 2),
        (1, 3),
        (2, 3),
        (3, 3),
        (1, 4),
        (2, 4),
        (1, 5),
        (2, 5),
        (1, 6),
        (2, 6),
    ] {
        out.push((format!("H({n},{q})"), hamming(n, q).expect("catalog")));
    }
    for (v, d) in [
        (2, 1),
        (3, 1),
        (4, 1),
        (4, 2),
        (5, 1),
        (5, 2),
        (6, 2),
        (6, 3),
        (7, 2),
        (7, 3),
        (8, 2),
    ] {
        out.push((format!("J({v},{d})"), johnson(v, d).expect("catalog")));
    }
    let z2 = FiniteMonoid::cyclic(2);
    for (name, g) in [
        ("Z2", z2.clone()),
        ("Z3", FiniteMonoid::cyclic(3)),
        ("Z4", FiniteMonoid::cyclic(4)),
        ("Z2xZ2", z2.product(&z2)),
        ("Z6", FiniteMonoid::cyclic(6)),
        ("S3", FiniteMonoid::symmetric(3)),
        ("Z2xZ2xZ2", z2.product(&z2).product(&z2)),
    ] {
        out.push((format!("Cay({name})"), group_scheme(&g).expect("catalog")));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hamming_2_2_numbers() {
        let h = hamming(2, 2).unwrap();
        assert!(validate_scheme(&h).is_valid());
        assert_eq!(h.point_count(), 4);
        assert_eq!(h.p(1, 1, 0), 2);
        assert_eq!(h.valency(1), 2);
        assert_eq!(h.complex_product(1, 1), vec![0, 2]);
        assert!(h.is_symmetric());
    }

    #[test]
    fn generator_sizes() {
        let j = johnson(4, 2).unwrap();
        assert_eq!((j.point_count(), j.color_count()), (6, 3));
        assert_eq!(j.valency(1), 4);
        let j21 = johnson(2, 1).unwrap();
        assert_eq!((j21.point_count(), j21.color_count()), (2, 2));
        assert_eq!(hamming(1, 3).unwrap().valency(1), 2);
        assert!(johnson(3, 2).is_err());
        assert!(hamming(20, 2).is_err());
    }

    #[test]
    fn group_scheme_of_z3() {
        let s = group_scheme(&FiniteMonoid::cyclic(3)).unwrap();
        assert_eq!(s.p(1, 1, 2), 1);
        assert!(s.is_thin());
        let g = s.thin_group().unwrap();
        assert!(FiniteMonoid::cyclic(3).find_isomorphism(&g).is_some());
        assert_eq!(
            group_scheme(&FiniteMonoid::trivial())
                .unwrap()
                .point_count(),
            1
        );
    }

    #[test]
    fn broken_diagonal_is_reported() {
        let r = validate_relations(&[vec![0, 1], vec![1, 1]]);
        assert!(r.mentions("diagonal"));
        let r = validate_relations(&[vec![0, 1, 2], vec![1, 0, 1], vec![2, 1, 0]]);
        assert!(r.mentions("intersection-numbers"));
    }

    #[test]
    fn standard_representation_of_hamming_2_2() {
        let h = hamming(2, 2).unwrap();
        assert!(standard_representation_check(&h).is_valid());
        assert_eq!(h.p(1, 1, 0), 2);
        assert_eq!(h.p(1, 1, 2), 2);
        assert_eq!(h.p(1, 1, 1), 0);
    }

    #[test]
    fn schemoid_numbers_are_transposed_scheme_numbers() {
        let s = group_scheme(&FiniteMonoid::symmetric(3)).unwrap();
        let x = as_schemoid(&s);
        let table = x.structure_constants();
        assert!(table.schemoid);
        let k = s.color_count();
        for (a, b, c) in (0..k)
            .cartesian_product(0..k)
            .cartesian_product(0..k)
            .map(|((a, b), c)| (a, b, c))
        {
            assert_eq!(table.p(a, b, c).unwrap_or(0), s.p(b, a, c));
        }
    }

    #[test]
    fn prop_h_on_small_schemes() {
        for s in [hamming(2, 2).unwrap(), johnson(4, 2).unwrap()] {
            let r = prop_h_crosscheck(&s, Caps::default()).unwrap();
            assert!(r.isomorphism && r.anti_isomorphism);
            assert!(r.searched.is_some());
        }
        let r = prop_h_crosscheck(
            &group_scheme(&FiniteMonoid::symmetric(3)).unwrap(),
            Caps::default(),
        )
        .unwrap();
        assert_eq!(r.quotient_order, 6);
        assert!(r.isomorphism && r.anti_isomorphism);
    }
}
