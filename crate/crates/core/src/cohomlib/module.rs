use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::monoid::FiniteMonoid;

pub type Matrix = Vec<Vec<i64>>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModuleError {
    #[error("expected {expected} action matrices, found {found}")]
    ElementCount { expected: usize, found: usize },
    #[error("action of element {element} is not a {rank}x{rank} matrix")]
    Shape { element: usize, rank: usize },
    #[error("the unit does not act as the identity")]
    Unit,
    #[error("action of {a}·{b} is not the product of the actions")]
    NotMultiplicative { a: usize, b: usize },
    #[error("t^{n} is not the identity")]
    Period { n: usize },
    #[error("entry overflow in matrix product")]
    Overflow,
}

pub(crate) fn identity(r: usize) -> Matrix {
    (0..r)
        .map(|i| (0..r).map(|j| i64::from(i == j)).collect())
        .collect()
}

pub(crate) fn mat_mul(a: &Matrix, b: &Matrix) -> Option<Matrix> {
    let (n, k, m) = (a.len(), b.len(), b.first().map_or(0, Vec::len));
    let mut out = vec![vec![0i64; m]; n];
    for i in 0..n {
        for l in 0..k {
            for j in 0..m {
                out[i][j] = out[i][j].checked_add(a[i][l].checked_mul(b[l][j])?)?;
            }
        }
    }
    Some(out)
}

/// A left module `ℤ^rank` over a finite monoid: `action[g]` is the matrix
/// by which `g` acts.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonoidModule {
    pub rank: usize,
    pub action: Vec<Matrix>,
}

impl MonoidModule {
    /// `ℤ^rank` with every element acting as the identity; rank 1 is the
    /// constant coefficient module.
    pub fn trivial(m: &FiniteMonoid, rank: usize) -> Self {
        MonoidModule {
            rank,
            action: vec![identity(rank); m.order()],
        }
    }

    /// A module over `ℤ/n` (element `k` of [`FiniteMonoid::cyclic`]) in
    /// which the generator acts by `t`.
    pub fn cyclic(n: usize, t: Matrix) -> Result<Self, ModuleError> {
        let rank = t.len();
        if t.iter().any(|row| row.len() != rank) {
            return Err(ModuleError::Shape { element: 1, rank });
        }
        let mut action = vec![identity(rank)];
        for k in 1..=n {
            let next = mat_mul(&t, &action[k - 1]).ok_or(ModuleError::Overflow)?;
            action.push(next);
        }
        if action.pop() != Some(identity(rank)) {
            return Err(ModuleError::Period { n });
        }
        Ok(MonoidModule { rank, action })
    }

    /// `ℤ` with the generator of `ℤ/n` acting by `-1`. Only defined for
    /// even `n`; for odd `n` the only action of `ℤ/n` on `ℤ` is trivial.
    pub fn sign(n: usize) -> Result<Self, ModuleError> {
        Self::cyclic(n, vec![vec![-1]])
    }

    pub fn check(&self, m: &FiniteMonoid) -> Result<(), ModuleError> {
        if self.action.len() != m.order() {
            return Err(ModuleError::ElementCount {
                expected: m.order(),
                found: self.action.len(),
            });
        }
        for (g, a) in self.action.iter().enumerate() {
            if a.len() != self.rank || a.iter().any(|row| row.len() != self.rank) {
                return Err(ModuleError::Shape {
                    element: g,
                    rank: self.rank,
                });
            }
        }
        if self.action[m.unit()] != identity(self.rank) {
            return Err(ModuleError::Unit);
        }
        for a in 0..m.order() {
            for b in 0..m.order() {
                let prod =
                    mat_mul(&self.action[a], &self.action[b]).ok_or(ModuleError::Overflow)?;
                if prod != self.action[m.mul(a, b)] {
                    return Err(ModuleError::NotMultiplicative { a, b });
                }
            }
        }
        Ok(())
    }

    /// The same module viewed through `phi: other → self's monoid`.
    pub fn pullback(&self, phi: &[usize]) -> MonoidModule {
        MonoidModule {
            rank: self.rank,
            action: phi.iter().map(|&g| self.action[g].clone()).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sign_module_needs_even_order() {
        let s = MonoidModule::sign(2).unwrap();
        assert!(s.check(&FiniteMonoid::cyclic(2)).is_ok());
        assert_eq!(MonoidModule::sign(3), Err(ModuleError::Period { n: 3 }));
        assert!(MonoidModule::sign(4)
            .unwrap()
            .check(&FiniteMonoid::cyclic(4))
            .is_ok());
    }

    #[test]
    fn rotation_modules() {
        let omega = MonoidModule::cyclic(3, vec![vec![0, -1], vec![1, -1]]).unwrap();
        assert!(omega.check(&FiniteMonoid::cyclic(3)).is_ok());
        let quarter = MonoidModule::cyclic(4, vec![vec![0, -1], vec![1, 0]]).unwrap();
        assert!(quarter.check(&FiniteMonoid::cyclic(4)).is_ok());
        assert!(MonoidModule::cyclic(3, vec![vec![0, -1], vec![1, 0]]).is_err());
    }

    #[test]
    fn wrong_action_is_caught() {
        let mut m = MonoidModule::trivial(&FiniteMonoid::cyclic(2), 1);
        m.action[1] = vec![vec![2]];
        assert!(matches!(
            m.check(&FiniteMonoid::cyclic(2)),
            Err(ModuleError::NotMultiplicative { .. })
        ));
    }
}
