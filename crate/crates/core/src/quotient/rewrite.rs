//! Knuth–Bendix completion for string rewriting under the length-lex order.

use std::cmp::Ordering;
use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use super::presentation::{CategoryPresentation, Word};

/// Limits on completion. Exhausting either leaves the system incomplete.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Caps {
    pub max_rule_length: usize,
    pub max_pairs: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            max_rule_length: 12,
            max_pairs: 10_000,
        }
    }
}

/// Length first, then lexicographic by generator index.
pub fn shortlex(a: &[usize], b: &[usize]) -> Ordering {
    a.len().cmp(&b.len()).then_with(|| a.cmp(b))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Rule {
    pub lhs: Word,
    pub rhs: Word,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RewriteSystem {
    pub rules: Vec<Rule>,
    /// True when every critical pair resolved within the caps.
    pub complete: bool,
    pub caps: Caps,
    pub pairs_examined: usize,
}

impl RewriteSystem {
    /// Rewrites `w` until no left-hand side occurs in it.
    pub fn normal_form(&self, w: &[usize]) -> Word {
        reduce(&self.rules, w)
    }

    pub fn is_irreducible(&self, w: &[usize]) -> bool {
        self.rules.iter().all(|r| find(w, &r.lhs).is_none())
    }
}

fn find(haystack: &[usize], needle: &[usize]) -> Option<usize> {
    if needle.len() > haystack.len() {
        return None;
    }
    (0..=haystack.len() - needle.len()).find(|&i| haystack[i..i + needle.len()] == *needle)
}

fn reduce<'a>(rules: impl IntoIterator<Item = &'a Rule> + Clone, w: &[usize]) -> Word {
    let mut w = w.to_vec();
    'outer: loop {
        for rule in rules.clone() {
            if let Some(i) = find(&w, &rule.lhs) {
                w.splice(i..i + rule.lhs.len(), rule.rhs.iter().copied());
                continue 'outer;
            }
        }
        return w;
    }
}

struct Completion {
    rules: Vec<Option<Rule>>,
    caps: Caps,
    pairs: usize,
}

enum Stop {
    RuleTooLong,
    PairLimit,
}

impl Completion {
    fn alive(&self) -> impl Iterator<Item = &Rule> + Clone {
        self.rules.iter().flatten()
    }

    fn reduce(&self, w: &[usize]) -> Word {
        reduce(self.alive(), w)
    }

    /// Adds `a = b` and every equation displaced by interreduction.
    fn add_equation(&mut self, a: Word, b: Word) -> Result<(), Stop> {
        let mut pending = VecDeque::from([(a, b)]);
        while let Some((a, b)) = pending.pop_front() {
            let (a, b) = (self.reduce(&a), self.reduce(&b));
            let (lhs, rhs) = match shortlex(&a, &b) {
                Ordering::Equal => continue,
                Ordering::Greater => (a, b),
                Ordering::Less => (b, a),
            };
            if lhs.len() > self.caps.max_rule_length {
                return Err(Stop::RuleTooLong);
            }
            for slot in self.rules.iter_mut() {
                let Some(rule) = slot else { continue };
                if find(&rule.lhs, &lhs).is_some() {
                    let old = slot.take().expect("live rule");
                    pending.push_back((old.lhs, old.rhs));
                }
            }
            self.rules.push(Some(Rule { lhs, rhs }));
            let snapshot: Vec<Rule> = self.alive().cloned().collect();
            for rule in self.rules.iter_mut().flatten() {
                rule.rhs = reduce(&snapshot, &rule.rhs);
            }
        }
        Ok(())
    }

    /// Critical pairs from suffix/prefix overlaps of `first.lhs` with
    /// `second.lhs`, and from `second.lhs` occurring inside `first.lhs`.
    fn critical_pairs(first: &Rule, second: &Rule) -> Vec<(Word, Word)> {
        let (l1, l2) = (&first.lhs, &second.lhs);
        let mut out = Vec::new();
        for k in 1..l1.len().min(l2.len()) {
            if l1[l1.len() - k..] == l2[..k] {
                // l1 = u·v, l2 = v·w
                let mut left = first.rhs.clone();
                left.extend_from_slice(&l2[k..]);
                let mut right = l1[..l1.len() - k].to_vec();
                right.extend_from_slice(&second.rhs);
                out.push((left, right));
            }
        }
        if l1 != l2 {
            if let Some(i) = find(l1, l2) {
                let mut right = l1[..i].to_vec();
                right.extend_from_slice(&second.rhs);
                right.extend_from_slice(&l1[i + l2.len()..]);
                out.push((first.rhs.clone(), right));
            }
        }
        out
    }

    fn run(&mut self) -> Result<(), Stop> {
        let mut i = 0;
        while i < self.rules.len() {
            let mut j = 0;
            while j <= i && i < self.rules.len() {
                let (Some(a), Some(b)) = (self.rules[i].clone(), self.rules[j].clone()) else {
                    j += 1;
                    continue;
                };
                let mut pairs = Self::critical_pairs(&a, &b);
                if i != j {
                    pairs.extend(Self::critical_pairs(&b, &a));
                }
                for (p, q) in pairs {
                    self.pairs += 1;
                    if self.pairs > self.caps.max_pairs {
                        return Err(Stop::PairLimit);
                    }
                    self.add_equation(p, q)?;
                }
                j += 1;
            }
            i += 1;
        }
        Ok(())
    }
}

/// Completes the relations of `p` into a confluent, terminating rewriting
/// system. When the caps are hit the partial system is returned with
/// `complete = false`; its rules are still valid consequences of the
/// relations.
pub fn complete(p: &CategoryPresentation, caps: Caps) -> RewriteSystem {
    let mut state = Completion {
        rules: Vec::new(),
        caps,
        pairs: 0,
    };
    let mut outcome = Ok(());
    for (a, b) in &p.relations {
        outcome = state.add_equation(a.clone(), b.clone());
        if outcome.is_err() {
            break;
        }
    }
    if outcome.is_ok() {
        outcome = state.run();
    }
    let complete = match outcome {
        Ok(()) => true,
        Err(Stop::RuleTooLong) | Err(Stop::PairLimit) => false,
    };
    let mut rules: Vec<Rule> = state.rules.into_iter().flatten().collect();
    rules.sort_by(|a, b| shortlex(&a.lhs, &b.lhs));
    RewriteSystem {
        rules,
        complete,
        caps,
        pairs_examined: state.pairs,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names(n: usize) -> Vec<String> {
        (0..n).map(|i| format!("x{i}")).collect()
    }

    #[test]
    fn shortlex_orders_by_length_then_letters() {
        assert_eq!(shortlex(&[1], &[0, 0]), Ordering::Less);
        assert_eq!(shortlex(&[1, 0], &[0, 1]), Ordering::Greater);
        assert_eq!(shortlex(&[], &[]), Ordering::Equal);
    }

    #[test]
    fn free_monoid_needs_no_rules() {
        let p = CategoryPresentation::monoid(&names(1), vec![]);
        let rs = complete(&p, Caps::default());
        assert!(rs.complete);
        assert!(rs.rules.is_empty());
    }

    #[test]
    fn z2_presentation_completes() {
        // generators e=0, t=1; t·t = e, e = 1
        let p =
            CategoryPresentation::monoid(&names(2), vec![(vec![1, 1], vec![0]), (vec![0], vec![])]);
        let rs = complete(&p, Caps::default());
        assert!(rs.complete);
        let rules: Vec<_> = rs
            .rules
            .iter()
            .map(|r| (r.lhs.clone(), r.rhs.clone()))
            .collect();
        assert_eq!(rules, vec![(vec![0], vec![]), (vec![1, 1], vec![])]);
        assert_eq!(rs.normal_form(&[1, 0, 1, 1]), vec![1]);
    }

    #[test]
    fn overlap_resolution_adds_rules() {
        // <a, b | a², b³, (ab)²> is S3.
        let p = CategoryPresentation::monoid(
            &names(2),
            vec![
                (vec![0, 0], vec![]),
                (vec![1, 1, 1], vec![]),
                (vec![0, 1, 0, 1], vec![]),
            ],
        );
        let rs = complete(&p, Caps::default());
        assert!(rs.complete);
        let mut elements = std::collections::BTreeSet::new();
        for len in 0..=6usize {
            for code in 0..(1usize << len) {
                let w: Word = (0..len).map(|i| (code >> i) & 1).collect();
                elements.insert(rs.normal_form(&w));
            }
        }
        assert_eq!(elements.len(), 6);
    }

    #[test]
    fn caps_stop_divergent_completion() {
        // Trace-style presentation with commuting pairs (0,1), (1,2) under an
        // order that makes shortlex completion infinite.
        let p = CategoryPresentation::monoid(
            &names(3),
            vec![(vec![1, 0], vec![0, 1]), (vec![2, 1], vec![1, 2])],
        );
        let rs = complete(
            &p,
            Caps {
                max_rule_length: 8,
                max_pairs: 500,
            },
        );
        assert!(!rs.complete);
    }
}
