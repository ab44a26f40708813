//! Ext over the free monoid on one generator `σ`, through the two-term
//! resolution `0 → ℤ[σ] → ℤ[σ] → ℤ → 0`.

use serde::Serialize;

use super::complex::{cochain_cohomology, AbelianGroup, CochainComplex, Coefficients};
use super::matrix::SparseMatrix;
use super::module::Matrix;

/// Marker for the free category on one endomorphism, colored by length.
/// It has no finite model; cohomology goes through [`koszul_ext`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct NatLen;

/// How `σ` acts on the resolved module `ℤ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Augmentation {
    /// `σ ↦ 0`: the resolution's differential sends the generator to `σ`.
    Zero,
    /// `σ ↦ 1`: the constant coefficient module.
    One,
}

impl Augmentation {
    fn value(self) -> i64 {
        match self {
            Augmentation::Zero => 0,
            Augmentation::One => 1,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct KoszulExt {
    pub ext0: AbelianGroup,
    pub ext1: AbelianGroup,
}

impl KoszulExt {
    /// Ext in any degree. The resolution has length one, so there are no
    /// cochains above degree one.
    pub fn ext(&self, p: usize) -> AbelianGroup {
        match p {
            0 => self.ext0.clone(),
            1 => self.ext1.clone(),
            _ => AbelianGroup::zero(),
        }
    }

    /// First degree from which Ext vanishes for structural reasons.
    pub const VANISHES_FROM: usize = 2;
}

/// `Ext⁰ = ker δ` and `Ext¹ = coker δ` for `δ = S − a·1` on `M = ℤ^r`, where
/// `S` is the action of `σ` and `a` the augmentation.
pub fn koszul_ext(aug: Augmentation, action: &Matrix, coefficients: &Coefficients) -> KoszulExt {
    let r = action.len();
    let a = aug.value();
    let delta: Matrix = (0..r)
        .map(|i| {
            (0..r)
                .map(|j| action[i][j] - if i == j { a } else { 0 })
                .collect()
        })
        .collect();
    let complex = CochainComplex::new(
        vec![r, r, 0],
        vec![SparseMatrix::from_dense(&delta), SparseMatrix::zeros(0, r)],
    )
    .expect("two-term complex");
    let mut h = cochain_cohomology(&complex, coefficients)
        .degrees
        .into_iter();
    KoszulExt {
        ext0: h.next().expect("degree 0"),
        ext1: h.next().expect("degree 1"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn documented_modules() {
        let z = Coefficients::Integers;
        let e = koszul_ext(Augmentation::Zero, &vec![vec![0]], &z);
        assert_eq!(
            (e.ext0.clone(), e.ext1.clone()),
            (AbelianGroup::free(1), AbelianGroup::free(1))
        );
        let e = koszul_ext(Augmentation::One, &vec![vec![1]], &z);
        assert_eq!(
            (e.ext0.clone(), e.ext1.clone()),
            (AbelianGroup::free(1), AbelianGroup::free(1))
        );
        let e = koszul_ext(Augmentation::One, &vec![vec![2]], &z);
        assert!(e.ext0.is_zero() && e.ext1.is_zero());
        assert!(e.ext(2).is_zero() && e.ext(7).is_zero());
    }

    #[test]
    fn torsion_in_ext1() {
        let e = koszul_ext(Augmentation::Zero, &vec![vec![3]], &Coefficients::Integers);
        assert!(e.ext0.is_zero());
        assert_eq!(e.ext1, AbelianGroup::cyclic(3));
        let e = koszul_ext(Augmentation::Zero, &vec![vec![3]], &Coefficients::Mod(3));
        assert_eq!(
            (e.ext0, e.ext1),
            (AbelianGroup::cyclic(3), AbelianGroup::cyclic(3))
        );
    }
}
