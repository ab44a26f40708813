//! The periodic resolution of a cyclic group.

use super::complex::{cochain_cohomology, CochainComplex, Coefficients, CohomologyGroups};
use super::matrix::SparseMatrix;
use super::module::{identity, mat_mul, Matrix, ModuleError};

/// Cochains `M → M → M → …` with differentials alternating `t − 1` and
/// the norm `1 + t + … + t^{n−1}`, where the generator acts by `t`.
pub fn cyclic_complex(
    n: usize,
    t: &Matrix,
    max_degree: usize,
) -> Result<CochainComplex, ModuleError> {
    assert!(n >= 2, "cyclic resolution needs n >= 2");
    let r = t.len();
    let id = identity(r);
    let mut powers = vec![id.clone()];
    for k in 1..=n {
        powers.push(mat_mul(t, &powers[k - 1]).ok_or(ModuleError::Overflow)?);
    }
    if powers[n] != id {
        return Err(ModuleError::Period { n });
    }
    let mut diff = id.clone();
    let mut norm = vec![vec![0i64; r]; r];
    for i in 0..r {
        for j in 0..r {
            diff[i][j] = t[i][j] - id[i][j];
            for p in &powers[..n] {
                norm[i][j] = norm[i][j]
                    .checked_add(p[i][j])
                    .ok_or(ModuleError::Overflow)?;
            }
        }
    }
    let (diff, norm) = (
        SparseMatrix::from_dense(&diff),
        SparseMatrix::from_dense(&norm),
    );
    let differentials = (0..=max_degree)
        .map(|k| {
            if k % 2 == 0 {
                diff.clone()
            } else {
                norm.clone()
            }
        })
        .collect();
    Ok(CochainComplex::new(vec![r; max_degree + 2], differentials).expect("periodic complex"))
}

/// `H^0, …, H^{max_degree}` of `ℤ/n` with the generator acting by `t`.
pub fn cyclic_cohomology(
    n: usize,
    t: &Matrix,
    max_degree: usize,
    coefficients: &Coefficients,
) -> Result<CohomologyGroups, ModuleError> {
    Ok(cochain_cohomology(
        &cyclic_complex(n, t, max_degree)?,
        coefficients,
    ))
}
