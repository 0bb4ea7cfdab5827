//! Quotients by normal subgroups.
//!
//! Two entry points share one construction: [`central_quotient`] insists that
//! every killed element is central (centrality makes `N` normal for free),
//! while [`normal_quotient`] divides by the normal closure of its seed and so
//! also covers normal-but-noncentral kernels such as a second-center subgroup
//! `<w, t>`. The induced presentation is computed on the generators that
//! survive, so the result is an ordinary [`Group`] plus the projection map.

use crate::error::AnalysisError;
use crate::group::Group;
use crate::presentation::{PcPresentation, Rule};
use crate::word::Word;

/// A quotient `Q = G/N` together with the data linking it back to `G`.
pub struct Quotient {
    pub group: Group,
    /// `projection[a]` = id in the quotient of the coset `aN`.
    pub projection: Vec<u32>,
    /// Image of each original generator index: `Some(i)` when it survives as
    /// quotient generator `i`, `None` when it dies into the cosets of the
    /// later generators and `N`.
    pub kept: Vec<Option<usize>>,
    /// Elements of `N`, ascending.
    pub kernel: Vec<u32>,
}

impl Quotient {
    /// Image of an element of `G` in the quotient.
    pub fn project(&self, a: u32) -> u32 {
        self.projection[a as usize]
    }

    /// Whether `<a>` meets the kernel only in the identity, i.e. whether `a`
    /// keeps its full order in the quotient.
    pub fn is_faithful(&self, g: &Group, a: u32) -> bool {
        g.element_order(a) == self.group.element_order(self.project(a))
    }
}

/// Build `G/N` for `N = <kill>`, all of `kill` central.
pub fn central_quotient(g: &Group, kill: &[u32]) -> Result<Quotient, AnalysisError> {
    for &a in kill {
        if !g.is_central(a) {
            return Err(AnalysisError::NonCentralGenerator(g.element(a).word));
        }
    }
    quotient_by_kernel(g, g.subgroup_closure(kill))
}

/// Build `G/N` for `N = <seed>^G`, the normal closure of the seed. When
/// `<seed>` is already normal (in particular when it is central) this is the
/// quotient by `<seed>` itself.
pub fn normal_quotient(g: &Group, seed: &[u32]) -> Result<Quotient, AnalysisError> {
    quotient_by_kernel(g, g.normal_closure(seed))
}

/// The shared construction. It only needs `N` normal: conjugation by `g_i`
/// fixes `N` and moves each later generator by a tail of still-later
/// generators, so `g_i` normalizes `U_{i+1} = <g_{i+1}, ..., g_{n-1}, N>`,
/// generator `g_i` survives exactly when it enlarges `U_{i+1}`, and the
/// normal form of a coset is read off by peeling one digit per surviving
/// generator. The result is rebuilt through [`Group::from_presentation`], so
/// it passes the same consistency gates as any other group.
fn quotient_by_kernel(g: &Group, kernel: Vec<u32>) -> Result<Quotient, AnalysisError> {
    let n = g.rank();
    let order = g.order();

    // membership[i][a] says whether a lies in U_i = <g_i, ..., g_{n-1}, N>;
    // the extra final level is N itself.
    let mut membership: Vec<Vec<bool>> = vec![Vec::new(); n + 1];
    let mut level_sizes = vec![0usize; n + 1];
    {
        let mut flags = vec![false; order];
        for &a in &kernel {
            flags[a as usize] = true;
        }
        level_sizes[n] = kernel.len();
        membership[n] = flags.clone();
        let mut gens: Vec<u32> = kernel.clone();
        for i in (0..n).rev() {
            gens.push(g.generator(i));
            let members = g.subgroup_closure(&gens);
            let mut f = vec![false; order];
            for &a in &members {
                f[a as usize] = true;
            }
            level_sizes[i] = members.len();
            membership[i] = f;
        }
    }

    let mut kept: Vec<Option<usize>> = vec![None; n];
    let mut kept_indices: Vec<usize> = Vec::new();
    for i in 0..n {
        // The index of U_{i+1} in U_i divides the prime rel(i), so the
        // generator either survives with its full relative order or dies.
        if level_sizes[i] != level_sizes[i + 1] {
            kept[i] = Some(kept_indices.len());
            kept_indices.push(i);
        }
    }

    // Digits of a coset: one per surviving generator, peeled left to right.
    let digits_of = |mut a: u32| -> Vec<u32> {
        let mut digits = Vec::with_capacity(kept_indices.len());
        for &i in &kept_indices {
            let r = g.pres().rel(i);
            let gi_inv = g.inv(g.generator(i));
            let mut e = 0;
            while e < r {
                if membership[i + 1][a as usize] {
                    break;
                }
                a = g.mul(gi_inv, a);
                e += 1;
            }
            debug_assert!(membership[i + 1][a as usize]);
            digits.push(e);
        }
        digits
    };

    let word_of = |a: u32| -> Word {
        digits_of(a)
            .into_iter()
            .enumerate()
            .filter(|&(_, e)| e != 0)
            .map(|(q, e)| (q, i64::from(e)))
            .collect()
    };

    let names: Vec<String> = kept_indices
        .iter()
        .map(|&i| g.pres().names()[i].clone())
        .collect();
    let rels: Vec<u32> = kept_indices.iter().map(|&i| g.pres().rel(i)).collect();
    let mut rules = Vec::new();
    for (q, &i) in kept_indices.iter().enumerate() {
        let tail = word_of(g.pow(g.generator(i), i64::from(g.pres().rel(i))));
        if !tail.is_empty() {
            rules.push(Rule::Pow(q, tail));
        }
    }
    for (qj, &j) in kept_indices.iter().enumerate() {
        for (qi, &i) in kept_indices.iter().enumerate().take(qj) {
            let tail = word_of(g.comm(g.generator(j), g.generator(i)));
            if !tail.is_empty() {
                rules.push(Rule::Comm(qj, qi, tail));
            }
        }
    }

    let pres = PcPresentation::new(names, rels, rules)?;
    let quotient = Group::from_presentation(pres)?;
    debug_assert_eq!(quotient.order() * kernel.len(), order);

    let mut projection = vec![0u32; order];
    let mut strides = vec![1u32; kept_indices.len()];
    for q in (0..kept_indices.len().saturating_sub(1)).rev() {
        strides[q] = strides[q + 1] * quotient.pres().rel(q + 1);
    }
    for a in 0..order as u32 {
        let digits = digits_of(a);
        let mut id = 0u32;
        for (q, &d) in digits.iter().enumerate() {
            id += d * strides[q];
        }
        projection[a as usize] = id;
    }

    Ok(Quotient {
        group: quotient,
        projection,
        kept,
        kernel,
    })
}
