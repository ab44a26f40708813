use std::collections::BTreeSet;

use serde::Serialize;

use super::{AssociationScheme, SchemeError};
use crate::monoid::FiniteMonoid;

/// A set of colors containing the diagonal, closed under adjoints and
/// complex products.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClosedSubset {
    pub colors: BTreeSet<usize>,
}

pub fn is_closed(a: &AssociationScheme, colors: &BTreeSet<usize>) -> bool {
    colors.contains(&0)
        && colors.iter().all(|&s| colors.contains(&a.adjoint(s)))
        && colors.iter().all(|&s| {
            colors
                .iter()
                .all(|&t| a.complex_product(s, t).iter().all(|u| colors.contains(u)))
        })
}

/// Smallest closed subset containing every product `s s*`.
pub fn thin_residue(a: &AssociationScheme) -> ClosedSubset {
    let mut colors: BTreeSet<usize> = BTreeSet::from([0]);
    for s in 0..a.color_count() {
        colors.extend(a.complex_product(s, a.adjoint(s)));
    }
    loop {
        let mut next = colors.clone();
        for &s in &colors {
            next.insert(a.adjoint(s));
            for &t in &colors {
                next.extend(a.complex_product(s, t));
            }
        }
        if next == colors {
            return ClosedSubset { colors };
        }
        colors = next;
    }
}

/// The factor scheme on blocks `xT`, with colors the double cosets `TsT`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactorScheme {
    pub blocks: Vec<Vec<usize>>,
    pub block_of: Vec<usize>,
    pub scheme: AssociationScheme,
    /// Factor color `s^T` of each original color.
    pub class_of_color: Vec<usize>,
}

impl FactorScheme {
    /// The group of a thin factor scheme.
    pub fn group(&self) -> Option<FiniteMonoid> {
        self.scheme.thin_group()
    }
}

pub fn factor_scheme(a: &AssociationScheme, t: &ClosedSubset) -> Result<FactorScheme, SchemeError> {
    if !is_closed(a, &t.colors) {
        return Err(SchemeError::NotClosed);
    }
    let n = a.point_count();
    let mut block_of = vec![usize::MAX; n];
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    for x in 0..n {
        if block_of[x] != usize::MAX {
            continue;
        }
        let block: Vec<usize> = (0..n)
            .filter(|&y| t.colors.contains(&a.relation(x, y)))
            .collect();
        for &y in &block {
            block_of[y] = blocks.len();
        }
        blocks.push(block);
    }

    // double coset of each color; the diagonal's is T itself
    let k = a.color_count();
    let mut class_of_color = vec![usize::MAX; k];
    let mut classes = 0;
    for s in 0..k {
        if class_of_color[s] != usize::MAX {
            continue;
        }
        let mut coset = BTreeSet::new();
        for &l in &t.colors {
            for m in a.complex_product(l, s) {
                for &r in &t.colors {
                    coset.extend(a.complex_product(m, r));
                }
            }
        }
        for u in coset {
            class_of_color[u] = classes;
        }
        classes += 1;
    }

    let b = blocks.len();
    let mut rel = vec![vec![usize::MAX; b]; b];
    for x in 0..n {
        for y in 0..n {
            let slot = &mut rel[block_of[x]][block_of[y]];
            let c = class_of_color[a.relation(x, y)];
            if *slot == usize::MAX {
                *slot = c;
            } else if *slot != c {
                return Err(SchemeError::NotClosed);
            }
        }
    }
    let scheme = AssociationScheme::new(rel)?;
    Ok(FactorScheme {
        blocks,
        block_of,
        scheme,
        class_of_color,
    })
}
