use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;
use serde::{Serialize, Serializer};
use thiserror::Error;

use super::matrix::SparseMatrix;
use super::smith::elementary_divisors;

/// A finitely generated abelian group `ℤ^rank ⊕ ℤ/t₁ ⊕ … ⊕ ℤ/t_k` with
/// `t₁ | t₂ | …` and every `tᵢ ≥ 2`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AbelianGroup {
    pub rank: usize,
    #[serde(serialize_with = "as_numbers")]
    pub torsion: Vec<BigInt>,
}

fn as_numbers<S: Serializer>(xs: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(xs.len()))?;
    for x in xs {
        match u64::try_from(x) {
            Ok(v) => seq.serialize_element(&v)?,
            Err(_) => seq.serialize_element(&x.to_string())?,
        }
    }
    seq.end()
}

impl AbelianGroup {
    pub fn zero() -> Self {
        AbelianGroup {
            rank: 0,
            torsion: Vec::new(),
        }
    }

    pub fn free(rank: usize) -> Self {
        AbelianGroup {
            rank,
            torsion: Vec::new(),
        }
    }

    /// `ℤ/m` (the zero group when `m = 1`).
    pub fn cyclic(m: u64) -> Self {
        Self::new(0, vec![BigInt::from(m)])
    }

    /// Normalizes arbitrary cyclic orders to invariant factors; orders
    /// `0` and `1` are dropped.
    pub fn new(rank: usize, orders: Vec<BigInt>) -> Self {
        let mut t: Vec<BigInt> = orders.into_iter().filter(|x| *x > BigInt::one()).collect();
        for i in 0..t.len() {
            for j in i + 1..t.len() {
                let g = t[i].gcd(&t[j]);
                let l = t[i].lcm(&t[j]);
                t[i] = g;
                t[j] = l;
            }
        }
        t.retain(|x| *x > BigInt::one());
        AbelianGroup { rank, torsion: t }
    }

    pub fn is_zero(&self) -> bool {
        self.rank == 0 && self.torsion.is_empty()
    }

    /// `self ⊗ ℤ/m`.
    pub fn tensor_mod(&self, m: &BigInt) -> AbelianGroup {
        let mut orders = vec![m.clone(); self.rank];
        orders.extend(self.torsion.iter().map(|t| t.gcd(m)));
        AbelianGroup::new(0, orders)
    }

    /// `Tor(self, ℤ/m)`.
    pub fn tor_mod(&self, m: &BigInt) -> AbelianGroup {
        AbelianGroup::new(0, self.torsion.iter().map(|t| t.gcd(m)).collect())
    }

    pub fn direct_sum(&self, other: &AbelianGroup) -> AbelianGroup {
        let mut orders = self.torsion.clone();
        orders.extend(other.torsion.iter().cloned());
        AbelianGroup::new(self.rank + other.rank, orders)
    }
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        match self.rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.torsion.iter().map(|t| format!("Z/{t}")));
        write!(f, "{}", parts.join(" + "))
    }
}

/// Coefficient ring for cohomology.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Coefficients {
    Integers,
    /// `ℤ/m` with `m ≥ 2`.
    Mod(u64),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("coefficients must be Z or Z/m with m >= 2, got {0:?}")]
pub struct CoefficientsParseError(pub String);

impl FromStr for Coefficients {
    type Err = CoefficientsParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        if t == "Z" {
            return Ok(Coefficients::Integers);
        }
        t.strip_prefix("Z/")
            .and_then(|m| m.parse::<u64>().ok())
            .filter(|&m| m >= 2)
            .map(Coefficients::Mod)
            .ok_or_else(|| CoefficientsParseError(s.to_string()))
    }
}

impl fmt::Display for Coefficients {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coefficients::Integers => write!(f, "Z"),
            Coefficients::Mod(m) => write!(f, "Z/{m}"),
        }
    }
}

/// `H⁰, …, H^N`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CohomologyGroups {
    pub coefficients: String,
    pub degrees: Vec<AbelianGroup>,
}

impl CohomologyGroups {
    pub fn degree(&self, k: usize) -> Option<&AbelianGroup> {
        self.degrees.get(k)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ComplexError {
    #[error("d^{k} has shape {rows}x{cols}, expected {expected_rows}x{expected_cols}")]
    Shape {
        k: usize,
        rows: usize,
        cols: usize,
        expected_rows: usize,
        expected_cols: usize,
    },
    #[error("d^{} · d^{} is not zero", .k + 1, .k)]
    NotAComplex { k: usize },
    #[error("entry overflow while checking d^{} · d^{}", .k + 1, .k)]
    Overflow { k: usize },
}

/// A cochain complex of free abelian groups `C⁰ → C¹ → …`, with
/// `differentials[k]: C^k → C^{k+1}` as a `dims[k+1] × dims[k]` matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CochainComplex {
    pub dims: Vec<usize>,
    pub differentials: Vec<SparseMatrix>,
}

impl CochainComplex {
    /// Checks shapes and `d ∘ d = 0`.
    pub fn new(dims: Vec<usize>, differentials: Vec<SparseMatrix>) -> Result<Self, ComplexError> {
        for (k, d) in differentials.iter().enumerate() {
            let (er, ec) = (dims.get(k + 1).copied().unwrap_or(0), dims[k]);
            if d.rows() != er || d.cols() != ec {
                return Err(ComplexError::Shape {
                    k,
                    rows: d.rows(),
                    cols: d.cols(),
                    expected_rows: er,
                    expected_cols: ec,
                });
            }
        }
        for k in 0..differentials.len().saturating_sub(1) {
            let dd = differentials[k + 1]
                .mul(&differentials[k])
                .ok_or(ComplexError::Overflow { k })?;
            if !dd.is_zero() {
                return Err(ComplexError::NotAComplex { k });
            }
        }
        Ok(CochainComplex {
            dims,
            differentials,
        })
    }

    /// Degrees for which cohomology is determined: those `k` with `d^k` present.
    pub fn top_degree(&self) -> Option<usize> {
        self.differentials.len().checked_sub(1)
    }
}

/// Integral cohomology `H^k = ker d^k / im d^{k-1}` for every `k` with `d^k`
/// available, plus coefficients reduced by the universal coefficient
/// theorem: `H^k(C; ℤ/m) = H^k ⊗ ℤ/m ⊕ Tor(H^{k+1}, ℤ/m)`.
pub fn cochain_cohomology(c: &CochainComplex, coefficients: &Coefficients) -> CohomologyGroups {
    let divisors: Vec<Vec<BigInt>> = c.differentials.iter().map(elementary_divisors).collect();
    let integral = |k: usize| -> AbelianGroup {
        let rank_out = divisors[k].len();
        let (rank_in, torsion_in) = match k.checked_sub(1) {
            Some(j) => (divisors[j].len(), divisors[j].clone()),
            None => (0, Vec::new()),
        };
        AbelianGroup::new(c.dims[k] - rank_out - rank_in, torsion_in)
    };
    let n = c.differentials.len();
    let degrees = match coefficients {
        Coefficients::Integers => (0..n).map(integral).collect(),
        Coefficients::Mod(m) => {
            let m = BigInt::from(*m);
            (0..n)
                .map(|k| {
                    // torsion of H^{k+1} only needs d^k
                    let next_torsion = AbelianGroup::new(0, divisors[k].clone());
                    integral(k)
                        .tensor_mod(&m)
                        .direct_sum(&next_torsion.tor_mod(&m))
                })
                .collect()
        }
    };
    CohomologyGroups {
        coefficients: coefficients.to_string(),
        degrees,
    }
}

impl Default for AbelianGroup {
    fn default() -> Self {
        Self::zero()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(orders: &[u64]) -> Vec<BigInt> {
        orders.iter().map(|&o| BigInt::from(o)).collect()
    }

    #[test]
    fn invariant_factor_normalization() {
        assert_eq!(AbelianGroup::new(0, z(&[2, 3])).torsion, z(&[6]));
        assert_eq!(AbelianGroup::new(1, z(&[4, 2, 1])).torsion, z(&[2, 4]));
        assert_eq!(AbelianGroup::new(0, z(&[6, 4])).torsion, z(&[2, 12]));
        assert_eq!(AbelianGroup::cyclic(1), AbelianGroup::zero());
    }

    #[test]
    fn coefficients_parse() {
        assert_eq!("Z".parse(), Ok(Coefficients::Integers));
        assert_eq!("Z/2".parse(), Ok(Coefficients::Mod(2)));
        assert!("Z/1".parse::<Coefficients>().is_err());
        assert!("Q".parse::<Coefficients>().is_err());
    }

    #[test]
    fn small_complexes() {
        // 0 -> Z -> 0
        let c = CochainComplex::new(vec![1, 0], vec![SparseMatrix::zeros(0, 1)]).unwrap();
        assert_eq!(
            cochain_cohomology(&c, &Coefficients::Integers).degrees,
            vec![AbelianGroup::free(1)]
        );
        // Z --2--> Z
        let c = CochainComplex::new(
            vec![1, 1, 0],
            vec![
                SparseMatrix::from_dense(&[vec![2]]),
                SparseMatrix::zeros(0, 1),
            ],
        )
        .unwrap();
        let h = cochain_cohomology(&c, &Coefficients::Integers);
        assert_eq!(
            h.degrees,
            vec![AbelianGroup::zero(), AbelianGroup::cyclic(2)]
        );
    }

    #[test]
    fn periodic_z2_complex() {
        // Z --0--> Z --2--> Z --0--> Z --2--> Z --0--> Z
        let zero = SparseMatrix::from_dense(&[vec![0]]);
        let two = SparseMatrix::from_dense(&[vec![2]]);
        let ds = vec![
            zero.clone(),
            two.clone(),
            zero.clone(),
            two.clone(),
            zero.clone(),
        ];
        let c = CochainComplex::new(vec![1; 6], ds).unwrap();
        let h = cochain_cohomology(&c, &Coefficients::Integers);
        let expected = vec![
            AbelianGroup::free(1),
            AbelianGroup::zero(),
            AbelianGroup::cyclic(2),
            AbelianGroup::zero(),
            AbelianGroup::cyclic(2),
        ];
        assert_eq!(h.degrees, expected);
        let h2 = cochain_cohomology(&c, &Coefficients::Mod(2));
        assert!(h2.degrees.iter().all(|g| *g == AbelianGroup::cyclic(2)));
    }

    #[test]
    fn non_complex_is_rejected() {
        let one = SparseMatrix::from_dense(&[vec![1]]);
        assert_eq!(
            CochainComplex::new(vec![1, 1, 1], vec![one.clone(), one]),
            Err(ComplexError::NotAComplex { k: 0 })
        );
    }
}
