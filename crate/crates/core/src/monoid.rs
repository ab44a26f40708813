//! Finite monoids and groups given by multiplication tables.

use std::collections::VecDeque;

use itertools::Itertools;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::fincat::FiniteCategory;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MonoidError {
    #[error("the table is empty")]
    Empty,
    #[error("row {row} has length {len}, expected {expected}")]
    NotSquare {
        row: usize,
        len: usize,
        expected: usize,
    },
    #[error("entry {a}·{b} = {value} is out of range")]
    OutOfRange { a: usize, b: usize, value: usize },
    #[error("{unit} is not a two-sided unit")]
    NoUnit { unit: usize },
    #[error("({a}·{b})·{c} != {a}·({b}·{c})")]
    NotAssociative { a: usize, b: usize, c: usize },
}

/// A monoid on `0..n` with `table[a][b] = a·b`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiniteMonoid {
    table: Vec<Vec<usize>>,
    unit: usize,
}

impl FiniteMonoid {
    pub fn new(table: Vec<Vec<usize>>, unit: usize) -> Result<Self, MonoidError> {
        let n = table.len();
        if n == 0 {
            return Err(MonoidError::Empty);
        }
        for (a, row) in table.iter().enumerate() {
            if row.len() != n {
                return Err(MonoidError::NotSquare {
                    row: a,
                    len: row.len(),
                    expected: n,
                });
            }
            if let Some((b, &value)) = row.iter().enumerate().find(|(_, &v)| v >= n) {
                return Err(MonoidError::OutOfRange { a, b, value });
            }
        }
        if unit >= n || (0..n).any(|a| table[unit][a] != a || table[a][unit] != a) {
            return Err(MonoidError::NoUnit { unit });
        }
        for (a, b, c) in (0..n)
            .cartesian_product(0..n)
            .cartesian_product(0..n)
            .map(|((a, b), c)| (a, b, c))
        {
            if table[table[a][b]][c] != table[a][table[b][c]] {
                return Err(MonoidError::NotAssociative { a, b, c });
            }
        }
        Ok(FiniteMonoid { table, unit })
    }

    pub fn trivial() -> Self {
        FiniteMonoid {
            table: vec![vec![0]],
            unit: 0,
        }
    }

    /// ℤ/n with element `k` the residue `k`.
    pub fn cyclic(n: usize) -> Self {
        assert!(n > 0, "cyclic group of order zero");
        let table = (0..n)
            .map(|a| (0..n).map(|b| (a + b) % n).collect())
            .collect();
        FiniteMonoid { table, unit: 0 }
    }

    /// Direct product; the pair `(a, b)` has index `a * other.order() + b`.
    pub fn product(&self, other: &FiniteMonoid) -> Self {
        let (n, m) = (self.order(), other.order());
        let table = (0..n * m)
            .map(|x| {
                (0..n * m)
                    .map(|y| self.mul(x / m, y / m) * m + other.mul(x % m, y % m))
                    .collect()
            })
            .collect();
        FiniteMonoid {
            table,
            unit: self.unit * m + other.unit,
        }
    }

    /// Permutations of `0..k` in lexicographic order, composed as functions:
    /// `(p·q)(i) = p(q(i))`.
    pub fn symmetric(k: usize) -> Self {
        let perms: Vec<Vec<usize>> = (0..k).permutations(k).collect();
        let index = |p: &Vec<usize>| perms.iter().position(|q| q == p).expect("permutation");
        let table = perms
            .iter()
            .map(|p| {
                perms
                    .iter()
                    .map(|q| index(&q.iter().map(|&i| p[i]).collect()))
                    .collect()
            })
            .collect();
        FiniteMonoid { table, unit: 0 }
    }

    /// The endomorphism monoid of a one-object category.
    pub fn from_category(c: &FiniteCategory) -> Option<Self> {
        if c.object_count() != 1 {
            return None;
        }
        let n = c.morphism_count();
        let table = (0..n)
            .map(|a| (0..n).map(|b| c.compose(a, b)).collect::<Option<Vec<_>>>())
            .collect::<Option<Vec<_>>>()?;
        FiniteMonoid::new(table, c.identity(0)).ok()
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn unit(&self) -> usize {
        self.unit
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    pub fn inverse(&self, a: usize) -> Option<usize> {
        (0..self.order()).find(|&b| self.mul(a, b) == self.unit && self.mul(b, a) == self.unit)
    }

    pub fn is_group(&self) -> bool {
        (0..self.order()).all(|a| self.inverse(a).is_some())
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order()).all(|a| (0..a).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Least `k ≥ 1` with `a^k = 1`, or `None` if no power is the unit.
    pub fn element_order(&self, a: usize) -> Option<usize> {
        let mut x = a;
        for k in 1..=self.order() {
            if x == self.unit {
                return Some(k);
            }
            x = self.mul(x, a);
        }
        None
    }

    /// The monoid with `a·b` reversed.
    pub fn opposite(&self) -> Self {
        let n = self.order();
        let table = (0..n)
            .map(|a| (0..n).map(|b| self.mul(b, a)).collect())
            .collect();
        FiniteMonoid {
            table,
            unit: self.unit,
        }
    }

    /// True when `map` sends units to units and products to products.
    pub fn is_homomorphism(&self, map: &[usize], target: &FiniteMonoid) -> bool {
        map.len() == self.order()
            && map[self.unit] == target.unit
            && (0..self.order()).all(|a| {
                (0..self.order()).all(|b| map[self.mul(a, b)] == target.mul(map[a], map[b]))
            })
    }

    pub fn is_isomorphism(&self, map: &[usize], target: &FiniteMonoid) -> bool {
        self.order() == target.order()
            && map.iter().all(|&x| x < target.order())
            && map.iter().all_unique()
            && self.is_homomorphism(map, target)
    }

    /// A small generating set, found greedily, together with a word for
    /// every element: `spelling[x] = Some((y, g))` means `x = y·g`.
    fn generators(&self) -> (Vec<usize>, Vec<Option<(usize, usize)>>) {
        let n = self.order();
        let mut gens = Vec::new();
        let mut reached = vec![false; n];
        let mut spelling = vec![None; n];
        reached[self.unit] = true;
        while let Some(next) = (0..n).find(|&x| !reached[x]) {
            gens.push(next);
            // re-close from scratch so spellings only use listed generators
            reached = vec![false; n];
            reached[self.unit] = true;
            spelling = vec![None; n];
            let mut queue = VecDeque::from([self.unit]);
            while let Some(y) = queue.pop_front() {
                for (i, &g) in gens.iter().enumerate() {
                    let x = self.mul(y, g);
                    if !reached[x] {
                        reached[x] = true;
                        spelling[x] = Some((y, i));
                        queue.push_back(x);
                    }
                }
            }
        }
        (gens, spelling)
    }

    /// An isomorphism onto `other`, found by trying images of a generating set.
    pub fn find_isomorphism(&self, other: &FiniteMonoid) -> Option<Vec<usize>> {
        if self.order() != other.order() {
            return None;
        }
        let (gens, spelling) = self.generators();
        // elements in breadth-first order so that prefixes are mapped first
        let mut order = vec![self.unit];
        let mut i = 0;
        while i < order.len() {
            let y = order[i];
            for x in 0..self.order() {
                if matches!(spelling[x], Some((p, _)) if p == y) {
                    order.push(x);
                }
            }
            i += 1;
        }
        let candidates: Vec<Vec<usize>> = gens
            .iter()
            .map(|&g| {
                (0..other.order())
                    .filter(|&h| other.element_order(h) == self.element_order(g))
                    .collect()
            })
            .collect();
        for images in candidates.iter().multi_cartesian_product() {
            let mut map = vec![usize::MAX; self.order()];
            map[self.unit] = other.unit;
            for &x in &order[1..] {
                let (y, g) = spelling[x].expect("spelled");
                map[x] = other.mul(map[y], *images[g]);
            }
            if self.is_isomorphism(&map, other) {
                return Some(map);
            }
        }
        if gens.is_empty() && other.order() == 1 {
            return Some(vec![0]);
        }
        None
    }
}
