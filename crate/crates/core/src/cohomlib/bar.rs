//! Inhomogeneous bar cochains of a finite monoid with coefficients in a
//! left module.

use super::complex::{CochainComplex, ComplexError};
use super::matrix::SparseMatrix;
use super::module::{ModuleError, MonoidModule};
use crate::monoid::FiniteMonoid;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BarVariant {
    /// All functions `G^k → M`.
    Standard,
    /// Functions vanishing whenever some argument is the unit.
    Normalized,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum BarError {
    #[error(transparent)]
    Module(#[from] ModuleError),
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error("degree {0} bar cochains are too large to build")]
    TooLarge(usize),
}

/// Largest cochain dimension the builder will allocate.
pub const MAX_COCHAINS: usize = 2_000_000;

struct Letters {
    elements: Vec<usize>,
    position: Vec<Option<usize>>,
}

impl Letters {
    fn new(g: &FiniteMonoid, variant: BarVariant) -> Self {
        let elements: Vec<usize> = (0..g.order())
            .filter(|&x| variant == BarVariant::Standard || x != g.unit())
            .collect();
        let mut position = vec![None; g.order()];
        for (i, &x) in elements.iter().enumerate() {
            position[x] = Some(i);
        }
        Letters { elements, position }
    }

    fn count(&self, k: usize) -> Option<usize> {
        self.elements.len().checked_pow(k as u32)
    }

    /// Tuple with the first argument most significant.
    fn decode(&self, mut idx: usize, k: usize) -> Vec<usize> {
        let l = self.elements.len();
        let mut out = vec![0; k];
        for slot in out.iter_mut().rev() {
            *slot = self.elements[idx % l];
            idx /= l;
        }
        out
    }

    /// `None` when some entry is not a letter (a unit in the normalized case).
    fn encode(&self, tuple: &[usize]) -> Option<usize> {
        let l = self.elements.len();
        tuple
            .iter()
            .try_fold(0usize, |acc, &g| Some(acc * l + self.position[g]?))
    }
}

/// Cochains in degrees `0..=max_degree + 1` and differentials
/// `d^0, …, d^{max_degree}`:
///
/// `(δf)(g₁,…,g_{k+1}) = g₁·f(g₂,…) + Σᵢ (−1)ⁱ f(…, gᵢg_{i+1}, …) + (−1)^{k+1} f(g₁,…,g_k)`.
pub fn bar_cochain_complex(
    g: &FiniteMonoid,
    m: &MonoidModule,
    max_degree: usize,
    variant: BarVariant,
) -> Result<CochainComplex, BarError> {
    m.check(g)?;
    let letters = Letters::new(g, variant);
    let r = m.rank;
    let mut dims = Vec::new();
    for k in 0..=max_degree + 1 {
        let n = letters
            .count(k)
            .and_then(|c| c.checked_mul(r))
            .filter(|&d| d <= MAX_COCHAINS)
            .ok_or(BarError::TooLarge(k))?;
        dims.push(n);
    }
    let mut differentials = Vec::new();
    for k in 0..=max_degree {
        let tuples = letters.count(k + 1).expect("sized above");
        let mut entries = Vec::new();
        for idx in 0..tuples {
            let t = letters.decode(idx, k + 1);
            let row = |a: usize| idx * r + a;
            // g₁ acting on f(g₂, …)
            let tail = letters.encode(&t[1..]).expect("letters");
            for a in 0..r {
                for b in 0..r {
                    let c = m.action[t[0]][a][b];
                    if c != 0 {
                        entries.push((row(a), tail * r + b, c));
                    }
                }
            }
            for i in 0..k {
                let mut merged = Vec::with_capacity(k);
                merged.extend_from_slice(&t[..i]);
                merged.push(g.mul(t[i], t[i + 1]));
                merged.extend_from_slice(&t[i + 2..]);
                if let Some(col) = letters.encode(&merged) {
                    let sign = if (i + 1) % 2 == 0 { 1 } else { -1 };
                    for a in 0..r {
                        entries.push((row(a), col * r + a, sign));
                    }
                }
            }
            let head = letters.encode(&t[..k]).expect("letters");
            let sign = if (k + 1) % 2 == 0 { 1 } else { -1 };
            for a in 0..r {
                entries.push((row(a), head * r + a, sign));
            }
        }
        differentials.push(SparseMatrix::from_triplets(dims[k + 1], dims[k], entries));
    }
    Ok(CochainComplex::new(dims, differentials)?)
}

/// The cochain map `C^k(H) → C^k(G)`, `f ↦ f ∘ φ^k`, induced by a monoid
/// homomorphism `φ: G → H` on coefficients pulled back along `φ`, in
/// degrees `0..=max_degree + 1`.
pub fn bar_pullback(
    phi: &[usize],
    g: &FiniteMonoid,
    h: &FiniteMonoid,
    rank: usize,
    max_degree: usize,
    variant: BarVariant,
) -> Vec<SparseMatrix> {
    let (lg, lh) = (Letters::new(g, variant), Letters::new(h, variant));
    (0..=max_degree + 1)
        .map(|k| {
            let (ng, nh) = (lg.count(k).expect("sized"), lh.count(k).expect("sized"));
            let mut entries = Vec::new();
            for idx in 0..ng {
                let t: Vec<usize> = lg.decode(idx, k).into_iter().map(|x| phi[x]).collect();
                if let Some(col) = lh.encode(&t) {
                    for a in 0..rank {
                        entries.push((idx * rank + a, col * rank + a, 1));
                    }
                }
            }
            SparseMatrix::from_triplets(ng * rank, nh * rank, entries)
        })
        .collect()
}

/// True when `maps[k]: from^k → to^k` commute with the differentials.
pub fn is_chain_map(maps: &[SparseMatrix], from: &CochainComplex, to: &CochainComplex) -> bool {
    (0..from.differentials.len().min(to.differentials.len()))
        .filter(|&k| k + 1 < maps.len())
        .all(|k| {
            let left = to.differentials[k].mul(&maps[k]);
            let right = maps[k + 1].mul(&from.differentials[k]);
            left.is_some() && left == right
        })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cohomlib::complex::{cochain_cohomology, AbelianGroup, Coefficients};

    fn integral(g: &FiniteMonoid, m: &MonoidModule, n: usize, v: BarVariant) -> Vec<AbelianGroup> {
        let c = bar_cochain_complex(g, m, n, v).unwrap();
        cochain_cohomology(&c, &Coefficients::Integers).degrees
    }

    #[test]
    fn trivial_group() {
        let g = FiniteMonoid::trivial();
        let h = integral(&g, &MonoidModule::trivial(&g, 1), 3, BarVariant::Standard);
        assert_eq!(h[0], AbelianGroup::free(1));
        assert!(h[1..].iter().all(AbelianGroup::is_zero));
    }

    #[test]
    fn z3_with_integer_coefficients() {
        let g = FiniteMonoid::cyclic(3);
        let h = integral(&g, &MonoidModule::trivial(&g, 1), 2, BarVariant::Standard);
        assert_eq!(
            h,
            vec![
                AbelianGroup::free(1),
                AbelianGroup::zero(),
                AbelianGroup::cyclic(3)
            ]
        );
    }

    #[test]
    fn normalized_agrees_with_standard() {
        for g in [
            FiniteMonoid::cyclic(2),
            FiniteMonoid::cyclic(3),
            FiniteMonoid::symmetric(3),
        ] {
            let m = MonoidModule::trivial(&g, 1);
            let n = if g.order() > 3 { 2 } else { 3 };
            assert_eq!(
                integral(&g, &m, n, BarVariant::Standard),
                integral(&g, &m, n, BarVariant::Normalized)
            );
        }
    }

    #[test]
    fn identity_pullback_is_identity_on_cochains() {
        let g = FiniteMonoid::cyclic(3);
        let id: Vec<usize> = (0..3).collect();
        let c = bar_cochain_complex(&g, &MonoidModule::trivial(&g, 1), 2, BarVariant::Normalized)
            .unwrap();
        let maps = bar_pullback(&id, &g, &g, 1, 2, BarVariant::Normalized);
        assert!(is_chain_map(&maps, &c, &c));
        for (k, p) in maps.iter().enumerate() {
            let n = c.dims[k];
            let expected = SparseMatrix::from_triplets(n, n, (0..n).map(|i| (i, i, 1)));
            assert_eq!(*p, expected);
        }
    }
}
