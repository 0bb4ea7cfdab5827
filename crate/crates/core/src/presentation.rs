//! Power-commutator presentations.
//!
//! A presentation lists generators `g_1, ..., g_n` in a fixed order. Each
//! generator `g_i` has a prime relative order `rel[i]`, a power rule
//! `g_i^rel[i] = pow_tail[i]`, and for each pair `j > i` a commutator rule
//! `[g_j, g_i] = comm_tail[j][i]`. Every tail is a word over generators with
//! index strictly greater than the left-hand side's largest index (the weight
//! condition), which is what makes collection terminate.
//!
//! Commutators are left-normed: `[a, b] = a^-1 b^-1 a b`, so `b a = a b [b, a]`.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::error::PcError;
use crate::numtheory::is_prime;
use crate::word::{Lit, Word};

/// A validated power-commutator presentation.
///
/// Tails are stored in normalized form: exponents reduced into
/// `0..rel[g]` and letters in strictly increasing index order. The
/// constructor accepts any syntactically valid tails and normalizes them.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PcPresentation {
    names: Vec<String>,
    rel: Vec<u32>,
    pow_tails: Vec<Word>,
    /// `comm_tails[j][i]` for `j > i` is the tail of `[g_j, g_i]`.
    comm_tails: Vec<Vec<Word>>,
}

impl PcPresentation {
    /// Build and validate a presentation.
    ///
    /// `rules` supplies the nontrivial tails: `Rule::Pow(i, tail)` for
    /// `g_i^rel[i] = tail` and `Rule::Comm(j, i, tail)` for `[g_j, g_i] = tail`
    /// with `j > i`. Omitted rules default to the trivial tail (central,
    /// order-`rel` generators).
    pub fn new(
        names: Vec<String>,
        rel: Vec<u32>,
        rules: Vec<Rule>,
    ) -> Result<Self, PcError> {
        let n = names.len();
        if n == 0 {
            return Err(PcError::EmptyPresentation);
        }
        if rel.len() != n {
            return Err(PcError::IndexOutOfRange {
                index: rel.len(),
                rank: n,
            });
        }
        for &r in &rel {
            if !is_prime(u64::from(r)) {
                return Err(PcError::NotPrime(u64::from(r)));
            }
        }
        let mut seen = HashSet::new();
        for name in &names {
            if name.is_empty() || !seen.insert(name.clone()) {
                return Err(PcError::DuplicateName(name.clone()));
            }
        }

        let mut pres = PcPresentation {
            names,
            rel,
            pow_tails: vec![Vec::new(); n],
            comm_tails: (0..n).map(|j| vec![Vec::new(); j]).collect(),
        };

        for rule in rules {
            match rule {
                Rule::Pow(i, tail) => {
                    if i >= n {
                        return Err(PcError::IndexOutOfRange { index: i, rank: n });
                    }
                    let tail = pres.normalize_tail(&tail, i, &format!("{}^{}", pres.names[i], pres.rel[i]))?;
                    pres.pow_tails[i] = tail;
                }
                Rule::Comm(j, i, tail) => {
                    if j >= n {
                        return Err(PcError::IndexOutOfRange { index: j, rank: n });
                    }
                    if i >= j {
                        return Err(PcError::IndexOutOfRange { index: i, rank: j });
                    }
                    let label = format!("[{},{}]", pres.names[j], pres.names[i]);
                    let tail = pres.normalize_tail(&tail, j, &label)?;
                    pres.comm_tails[j][i] = tail;
                }
            }
        }
        Ok(pres)
    }

    /// Normalize a tail word: check indices, fold repeated letters into
    /// sorted order (tails must already be in non-decreasing index order for
    /// this to be sound; strictly increasing after folding), reduce exponents
    /// mod the relative order, and enforce the weight condition relative to
    /// the rule's left-hand side index `lhs`.
    fn normalize_tail(&self, tail: &[Lit], lhs: usize, label: &str) -> Result<Word, PcError> {
        let n = self.names.len();
        let mut acc: Vec<(usize, i64)> = Vec::new();
        for &(g, e) in tail {
            if g >= n {
                return Err(PcError::IndexOutOfRange { index: g, rank: n });
            }
            match acc.last_mut() {
                Some(&mut (last, ref mut le)) if last == g => *le += e,
                _ => acc.push((g, e)),
            }
        }
        let mut out: Word = Vec::new();
        for (g, e) in acc {
            let r = i64::from(self.rel[g]);
            let e = e.rem_euclid(r);
            if e != 0 {
                out.push((g, e));
            }
        }
        // Tails normalize to sorted order or the presentation is malformed.
        for w in out.windows(2) {
            if w[0].0 >= w[1].0 {
                return Err(PcError::WeightViolation {
                    rule: label.to_string(),
                    offender: self.names[w[1].0].clone(),
                    limit: self.names[w[0].0].clone(),
                });
            }
        }
        if let Some(&(g, _)) = out.first() {
            if g <= lhs {
                return Err(PcError::WeightViolation {
                    rule: label.to_string(),
                    offender: self.names[g].clone(),
                    limit: self.names[lhs].clone(),
                });
            }
        }
        Ok(out)
    }

    /// Number of generators.
    pub fn rank(&self) -> usize {
        self.names.len()
    }

    /// Generator names in presentation order.
    pub fn names(&self) -> &[String] {
        &self.names
    }

    /// Index of the generator with the given name.
    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// Relative order of generator `i`.
    pub fn rel(&self, i: usize) -> u32 {
        self.rel[i]
    }

    /// All relative orders.
    pub fn rels(&self) -> &[u32] {
        &self.rel
    }

    /// The tail of `g_i^rel[i]`.
    pub fn pow_tail(&self, i: usize) -> &[Lit] {
        &self.pow_tails[i]
    }

    /// The tail of `[g_j, g_i]` for `j > i`.
    pub fn comm_tail(&self, j: usize, i: usize) -> &[Lit] {
        debug_assert!(j > i);
        &self.comm_tails[j][i]
    }

    /// True when every relative order equals `p`.
    pub fn is_homogeneous(&self) -> bool {
        self.rel.windows(2).all(|w| w[0] == w[1])
    }

    /// The common prime when the presentation is homogeneous.
    pub fn prime(&self) -> Option<u32> {
        if self.is_homogeneous() {
            Some(self.rel[0])
        } else {
            None
        }
    }

    /// Product of relative orders: the order of the group when the
    /// presentation is consistent, an upper bound otherwise.
    pub fn formal_order(&self) -> u128 {
        self.rel.iter().map(|&r| u128::from(r)).product()
    }
}

/// A defining rule passed to [`PcPresentation::new`].
#[derive(Clone, Debug)]
pub enum Rule {
    /// `Pow(i, tail)`: `g_i^rel[i] = tail`.
    Pow(usize, Word),
    /// `Comm(j, i, tail)`: `[g_j, g_i] = tail`, requires `j > i`.
    Comm(usize, usize, Word),
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names(list: &[&str]) -> Vec<String> {
        list.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn rejects_composite_relative_order() {
        let err = PcPresentation::new(names(&["x"]), vec![4], vec![]).unwrap_err();
        assert!(matches!(err, PcError::NotPrime(4)));
    }

    #[test]
    fn rejects_duplicate_names() {
        let err = PcPresentation::new(names(&["x", "x"]), vec![3, 3], vec![]).unwrap_err();
        assert!(matches!(err, PcError::DuplicateName(_)));
    }

    #[test]
    fn rejects_weight_violation() {
        // [g2, g1] = g1 refers back to the smaller index.
        let err = PcPresentation::new(
            names(&["x", "y"]),
            vec![3, 3],
            vec![Rule::Comm(1, 0, vec![(0, 1)])],
        )
        .unwrap_err();
        assert!(matches!(err, PcError::WeightViolation { .. }));
    }

    #[test]
    fn normalizes_tail_exponents() {
        let pres = PcPresentation::new(
            names(&["x", "y", "z"]),
            vec![5, 5, 5],
            vec![Rule::Comm(1, 0, vec![(2, -1)])],
        )
        .unwrap();
        assert_eq!(pres.comm_tail(1, 0), &[(2, 4)]);
    }

    #[test]
    fn defaults_are_trivial() {
        let pres = PcPresentation::new(names(&["x", "y"]), vec![7, 7], vec![]).unwrap();
        assert!(pres.pow_tail(0).is_empty());
        assert!(pres.comm_tail(1, 0).is_empty());
        assert_eq!(pres.formal_order(), 49);
        assert_eq!(pres.prime(), Some(7));
    }

    #[test]
    fn mixed_relative_orders_are_not_homogeneous() {
        let pres = PcPresentation::new(names(&["x", "y"]), vec![3, 5], vec![]).unwrap();
        assert!(!pres.is_homogeneous());
        assert_eq!(pres.prime(), None);
        assert_eq!(pres.formal_order(), 15);
    }

}
