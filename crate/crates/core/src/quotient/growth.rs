use std::collections::HashMap;

use petgraph::unionfind::UnionFind;
use thiserror::Error;

use super::presentation::{CategoryPresentation, Word};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GrowthError {
    #[error("expected {expected} weights, found {found}")]
    WeightCount { expected: usize, found: usize },
    #[error("generator {0} has weight zero but is not an identity generator")]
    ZeroWeight(usize),
    #[error("relation {0} is not homogeneous for the given weights")]
    NotHomogeneous(usize),
}

/// Number of morphisms of each weighted degree `0..=max_degree` in the
/// category presented by `p`, for presentations whose relations preserve
/// total weight. Generators of weight zero must be identity generators and
/// are erased first.
///
/// Each degree is counted exactly: all composable words of that degree are
/// enumerated and glued by single relation applications, so no completion
/// is needed.
pub fn growth_series(
    p: &CategoryPresentation,
    weights: &[usize],
    max_degree: usize,
) -> Result<Vec<usize>, GrowthError> {
    if weights.len() != p.generators.len() {
        return Err(GrowthError::WeightCount {
            expected: p.generators.len(),
            found: weights.len(),
        });
    }
    if let Some(g) =
        (0..weights.len()).find(|&g| weights[g] == 0 && !p.identity_generators.contains(&g))
    {
        return Err(GrowthError::ZeroWeight(g));
    }
    let weight = |w: &[usize]| w.iter().map(|&g| weights[g]).sum::<usize>();
    let erase = |w: &[usize]| -> Word { w.iter().copied().filter(|&g| weights[g] > 0).collect() };
    let mut relations = Vec::new();
    for (i, (l, r)) in p.relations.iter().enumerate() {
        if weight(l) != weight(r) {
            return Err(GrowthError::NotHomogeneous(i));
        }
        let (l, r) = (erase(l), erase(r));
        if l != r {
            relations.push((l.clone(), r.clone()));
            relations.push((r, l));
        }
    }

    let mut series = vec![p.objects];
    for degree in 1..=max_degree {
        let words = words_of_degree(p, weights, degree);
        let index: HashMap<&Word, usize> = words.iter().enumerate().map(|(i, w)| (w, i)).collect();
        let mut uf = UnionFind::<usize>::new(words.len());
        for (i, w) in words.iter().enumerate() {
            for (l, r) in &relations {
                if l.is_empty() || l.len() > w.len() {
                    continue;
                }
                for at in 0..=w.len() - l.len() {
                    if w[at..at + l.len()] != l[..] {
                        continue;
                    }
                    let mut v = w[..at].to_vec();
                    v.extend_from_slice(r);
                    v.extend_from_slice(&w[at + l.len()..]);
                    let j = index[&v];
                    uf.union(i, j);
                }
            }
        }
        let mut roots: Vec<usize> = (0..words.len()).map(|i| uf.find(i)).collect();
        roots.sort_unstable();
        roots.dedup();
        series.push(roots.len());
    }
    Ok(series)
}

/// Composable words over positive-weight generators with total weight `degree`.
fn words_of_degree(p: &CategoryPresentation, weights: &[usize], degree: usize) -> Vec<Word> {
    let mut out = Vec::new();
    let mut stack: Vec<(Word, usize)> = vec![(Vec::new(), 0)];
    while let Some((w, total)) = stack.pop() {
        if total == degree {
            out.push(w);
            continue;
        }
        for (g, gen) in p.generators.iter().enumerate() {
            let wg = weights[g];
            if wg == 0 || total + wg > degree {
                continue;
            }
            if let Some(&last) = w.last() {
                if p.generators[last].src != gen.tgt {
                    continue;
                }
            }
            let mut next = w.clone();
            next.push(g);
            stack.push((next, total + wg));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names(n: usize) -> Vec<String> {
        (0..n).map(|i| format!("x{i}")).collect()
    }

    #[test]
    fn free_monoid_growth_is_powers() {
        let p = CategoryPresentation::monoid(&names(2), vec![]);
        assert_eq!(growth_series(&p, &[1, 1], 3).unwrap(), vec![1, 2, 4, 8]);
    }

    #[test]
    fn commuting_pair_growth_is_polynomial_ring() {
        let p = CategoryPresentation::monoid(&names(2), vec![(vec![0, 1], vec![1, 0])]);
        assert_eq!(growth_series(&p, &[1, 1], 4).unwrap(), vec![1, 2, 3, 4, 5]);
    }

    #[test]
    fn inhomogeneous_relation_is_rejected() {
        let p = CategoryPresentation::monoid(&names(1), vec![(vec![0, 0], vec![0])]);
        assert_eq!(
            growth_series(&p, &[1], 2),
            Err(GrowthError::NotHomogeneous(0))
        );
    }
}
