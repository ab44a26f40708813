//! Normalized cochains on the nerve of a finite category, for cohomology
//! with constant coefficients.

use std::collections::HashMap;

use super::bar::{BarError, MAX_COCHAINS};
use super::complex::CochainComplex;
use super::matrix::SparseMatrix;
use crate::fincat::FiniteCategory;

/// Nondegenerate `k`-simplices: strings `(f₁, …, f_k)` of non-identity
/// morphisms with `tgt(fᵢ) = src(f_{i+1})`. For `k = 0`, the objects.
fn simplices(c: &FiniteCategory, max_len: usize) -> Result<Vec<Vec<Vec<usize>>>, BarError> {
    let arrows: Vec<usize> = (0..c.morphism_count())
        .filter(|&f| !c.is_identity(f))
        .collect();
    let mut out: Vec<Vec<Vec<usize>>> = vec![(0..c.object_count()).map(|x| vec![x]).collect()];
    out.push(arrows.iter().map(|&f| vec![f]).collect());
    for k in 2..=max_len {
        let mut next = Vec::new();
        for s in &out[k - 1] {
            let end = c.tgt(*s.last().expect("nonempty"));
            for &f in &arrows {
                if c.src(f) == end {
                    let mut t = s.clone();
                    t.push(f);
                    next.push(t);
                }
            }
            if next.len() > MAX_COCHAINS {
                return Err(BarError::TooLarge(k));
            }
        }
        out.push(next);
    }
    Ok(out)
}

/// Cochains in degrees `0..=max_degree + 1` with the alternating face
/// differential; faces that produce an identity are degenerate and dropped.
pub fn nerve_cochain_complex(
    c: &FiniteCategory,
    max_degree: usize,
) -> Result<CochainComplex, BarError> {
    let simplices = simplices(c, max_degree + 1)?;
    let index: Vec<HashMap<&[usize], usize>> = simplices
        .iter()
        .map(|level| {
            level
                .iter()
                .enumerate()
                .map(|(i, s)| (s.as_slice(), i))
                .collect()
        })
        .collect();
    let dims: Vec<usize> = simplices.iter().map(Vec::len).collect();
    let mut differentials = Vec::new();
    for k in 0..=max_degree {
        let mut entries = Vec::new();
        for (row, s) in simplices[k + 1].iter().enumerate() {
            if k == 0 {
                let f = s[0];
                entries.push((row, c.tgt(f), 1));
                entries.push((row, c.src(f), -1));
                continue;
            }
            entries.push((row, index[k][&s[1..]], 1));
            for i in 0..k {
                let g = c.compose(s[i + 1], s[i]).expect("composable string");
                if c.is_identity(g) {
                    continue;
                }
                let mut face = Vec::with_capacity(k);
                face.extend_from_slice(&s[..i]);
                face.push(g);
                face.extend_from_slice(&s[i + 2..]);
                let sign = if (i + 1) % 2 == 0 { 1 } else { -1 };
                entries.push((row, index[k][face.as_slice()], sign));
            }
            let sign = if (k + 1) % 2 == 0 { 1 } else { -1 };
            entries.push((row, index[k][&s[..k]], sign));
        }
        differentials.push(SparseMatrix::from_triplets(dims[k + 1], dims[k], entries));
    }
    Ok(CochainComplex::new(dims, differentials)?)
}
