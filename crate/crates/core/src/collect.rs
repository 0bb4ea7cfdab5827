//! Collection from the left.
//!
//! Rewrites an arbitrary word into the unique normal form
//! `g_1^{e_1} ... g_n^{e_n}` with `0 <= e_i < rel[i]`, using the power and
//! commutator rules of the presentation. The algorithm maintains a collected
//! prefix (an exponent vector) and a stack of uncollected letters; each step
//! either absorbs a letter into the prefix or rewrites it, moving weight
//! strictly toward later generators, which guarantees termination.

use crate::error::PcError;
use crate::presentation::PcPresentation;
use crate::word::{Lit, Word};

/// A collector bound to one presentation.
pub struct Collector<'a> {
    pres: &'a PcPresentation,
    budget: u64,
}

/// Default number of elementary rewrite steps allowed per collection.
pub const DEFAULT_BUDGET: u64 = 10_000_000;

impl<'a> Collector<'a> {
    pub fn new(pres: &'a PcPresentation) -> Self {
        Collector {
            pres,
            budget: DEFAULT_BUDGET,
        }
    }

    pub fn with_budget(pres: &'a PcPresentation, budget: u64) -> Self {
        Collector { pres, budget }
    }

    /// Collect a word into its normal-form exponent vector.
    pub fn collect(&self, word: &[Lit]) -> Result<Vec<u32>, PcError> {
        let n = self.pres.rank();
        let mut nf = vec![0u32; n];
        self.collect_onto(&mut nf, word)?;
        Ok(nf)
    }

    /// Collect `nf * word` where `nf` is already in normal form, updating
    /// `nf` in place.
    pub fn collect_onto(&self, nf: &mut [u32], word: &[Lit]) -> Result<(), PcError> {
        let n = self.pres.rank();
        debug_assert_eq!(nf.len(), n);

        // Uncollected suffix, stored so that the stack top is the *leftmost*
        // uncollected letter.
        let mut stack: Vec<Lit> = Vec::with_capacity(word.len() * 2 + 8);
        for &lit in word.iter().rev() {
            stack.push(lit);
        }

        // Largest index with a nonzero collected exponent, or None.
        let mut top: Option<usize> = {
            let mut t = None;
            for (i, &e) in nf.iter().enumerate() {
                if e != 0 {
                    t = Some(i);
                }
            }
            t
        };

        let mut steps: u64 = 0;
        while let Some((j, e)) = stack.pop() {
            steps += 1;
            if steps > self.budget {
                return Err(PcError::CollectionBudget(self.budget));
            }
            if e == 0 {
                continue;
            }
            if j >= n {
                return Err(PcError::IndexOutOfRange { index: j, rank: n });
            }
            let r = i64::from(self.pres.rel(j));

            // Normalize the exponent into 0..rel[j], emitting the power tail
            // once per wrap: g^e = (g^r)^q * g^rem with 0 <= rem < r when we
            // write e = q*r + rem. Reading left to right the q tail copies
            // come first, then g^rem, so push g^rem deepest.
            if e < 0 || e >= r {
                let rem = e.rem_euclid(r);
                let q = (e - rem) / r;
                if rem != 0 {
                    stack.push((j, rem));
                }
                let tail = self.pres.pow_tail(j);
                if q >= 0 {
                    for _ in 0..q {
                        for &lit in tail.iter().rev() {
                            stack.push(lit);
                        }
                    }
                } else {
                    // (g^r)^-1 = tail^-1: reversed letters, negated exponents.
                    for _ in 0..(-q) {
                        for &(g, te) in tail.iter() {
                            stack.push((g, -te));
                        }
                    }
                }
                continue;
            }
            let e = e as u32;

            match top {
                // Prefix ends at or before g_j: absorb directly.
                Some(t) if t > j => {
                    // Hard case: the prefix ends in letters with index > j.
                    // Peel one copy of g_t past g_j:
                    //   g_t g_j = g_j g_t [g_t, g_j].
                    // The prefix loses one g_t; what remains to collect, read
                    // left to right, is g_j^e' ... wait: we move g_j one step
                    // left, so the uncollected part becomes
                    //   g_j^(e-1) * g_j * g_t * [g_t,g_j]  applied after the
                    // shortened prefix -- but only the *last* g_t of the
                    // prefix swaps. Concretely: prefix = P * g_t^m. Then
                    //   P g_t^m g_j^e = P g_t^(m-1) (g_t g_j) g_j^(e-1)
                    //                 = P g_t^(m-1) g_j g_t tail g_j^(e-1).
                    // So shorten the prefix by one g_t and push, deepest
                    // first: g_j, g_t, tail letters, g_j^(e-1).
                    let t_e = nf[t];
                    debug_assert!(t_e > 0);
                    nf[t] = t_e - 1;
                    if nf[t] == 0 {
                        top = (0..t).rev().find(|&i| nf[i] != 0);
                    }
                    let tail = self.pres.comm_tail(t, j);
                    if e > 1 {
                        stack.push((j, i64::from(e) - 1));
                    }
                    for &lit in tail.iter().rev() {
                        stack.push(lit);
                    }
                    stack.push((t, 1));
                    stack.push((j, 1));
                }
                _ => {
                    // top <= j (or empty prefix): place g_j^e into the prefix.
                    let r = self.pres.rel(j);
                    let sum = nf[j] + e;
                    if sum < r {
                        nf[j] = sum;
                    } else {
                        // Overflow emits the power tail once (sum < 2r since
                        // both addends are < r).
                        nf[j] = sum - r;
                        let tail = self.pres.pow_tail(j);
                        for &lit in tail.iter().rev() {
                            stack.push(lit);
                        }
                    }
                    if nf[j] != 0 && top.map_or(true, |t| t < j) {
                        top = Some(j);
                    } else if nf[j] == 0 && top == Some(j) {
                        top = (0..j).rev().find(|&i| nf[i] != 0);
                    }
                }
            }
        }
        Ok(())
    }
}

/// Evaluate the classical associativity overlaps of a weighted presentation
/// and report every mismatch. An empty report means the rewriting system is
/// confluent: normal forms biject with elements of the presented group.
///
/// The overlaps compare both ways of collecting, for all `k > j > i`:
/// `g_k (g_j g_i)` vs `(g_k g_j) g_i`, and for the power rules:
/// `(g_j^p) g_i` vs `g_j^(p-1) (g_j g_i)`, `g_j (g_i^p)` vs
/// `(g_j g_i) g_i^(p-1)`, and `g_i (g_i^p)` vs `(g_i^p) g_i`.
pub fn overlap_violations(pres: &PcPresentation) -> Result<Vec<String>, PcError> {
    let c = Collector::new(pres);
    let n = pres.rank();
    let names = pres.names();
    let as_word = |nf: &[u32]| -> Word {
        nf.iter()
            .enumerate()
            .filter(|&(_, &e)| e != 0)
            .map(|(g, &e)| (g, i64::from(e)))
            .collect()
    };
    let mut bad = Vec::new();

    for k in 0..n {
        for j in 0..k {
            for i in 0..j {
                let inner = as_word(&c.collect(&[(j, 1), (i, 1)])?);
                let lhs = c.collect(&crate::word::concat(&[(k, 1)], &inner))?;
                let outer = as_word(&c.collect(&[(k, 1), (j, 1)])?);
                let rhs = c.collect(&crate::word::concat(&outer, &[(i, 1)]))?;
                if lhs != rhs {
                    bad.push(format!(
                        "{}*({}*{}) != ({}*{})*{}",
                        names[k], names[j], names[i], names[k], names[j], names[i]
                    ));
                }
            }
        }
    }
    for j in 0..n {
        for i in 0..j {
            let pj = i64::from(pres.rel(j));
            let pi = i64::from(pres.rel(i));
            // (g_j^p) g_i vs g_j^(p-1) (g_j g_i).
            let lhs = {
                let mut w: Word = pres.pow_tail(j).to_vec();
                w.push((i, 1));
                c.collect(&w)?
            };
            let rhs = {
                let inner = as_word(&c.collect(&[(j, 1), (i, 1)])?);
                c.collect(&crate::word::concat(&[(j, pj - 1)], &inner))?
            };
            if lhs != rhs {
                bad.push(format!("({}^{})*{} overlap", names[j], pj, names[i]));
            }
            // g_j (g_i^p) vs (g_j g_i) g_i^(p-1).
            let lhs = {
                let w = crate::word::concat(&[(j, 1)], pres.pow_tail(i));
                c.collect(&w)?
            };
            let rhs = {
                let inner = as_word(&c.collect(&[(j, 1), (i, 1)])?);
                c.collect(&crate::word::concat(&inner, &[(i, pi - 1)]))?
            };
            if lhs != rhs {
                bad.push(format!("{}*({}^{}) overlap", names[j], names[i], pi));
            }
        }
    }
    for i in 0..n {
        let lhs = {
            let w = crate::word::concat(&[(i, 1)], pres.pow_tail(i));
            c.collect(&w)?
        };
        let rhs = {
            let w = crate::word::concat(pres.pow_tail(i), &[(i, 1)]);
            c.collect(&w)?
        };
        if lhs != rhs {
            bad.push(format!(
                "{}*({}^{}) != ({}^{})*{}",
                names[i],
                names[i],
                pres.rel(i),
                names[i],
                pres.rel(i),
                names[i]
            ));
        }
    }
    Ok(bad)
}
