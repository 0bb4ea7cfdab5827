//! Structure search and non-existence certification.
//!
//! Complete search enumerates generating pairs with the first component
//! restricted to conjugacy-class representatives (Σ-sets are invariant
//! under simultaneous conjugation of the pair, so every achievable Σ-set
//! is still visited), deduplicates Σ-sets, and tests every pair of
//! distinct Σ-sets for trivial intersection. Certification additionally
//! attempts rank and universal-obstruction certificates, which scale past
//! the complete-search bound.

use std::collections::hash_map::DefaultHasher;
use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};
use std::hash::{Hash, Hasher};
use std::sync::atomic::{AtomicBool, Ordering};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::config;
use crate::error::BeauvilleError;
use crate::group::Group;
use crate::sigma::{shared_class, sigma};
use crate::verdict::{Certificate, Verdict};
use crate::verify::{structure_of, verify_structure};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SearchMode {
    /// Exhaustive over generating pairs; an empty result is a proof.
    Complete,
    /// Seeded sampling; an empty result decides nothing.
    Heuristic { seed: u64, budget: u64 },
}

pub fn search_structure(g: &Group, mode: SearchMode) -> Result<Verdict, BeauvilleError> {
    match mode {
        SearchMode::Complete => complete_search(g),
        SearchMode::Heuristic { seed, budget } => Ok(heuristic_search(g, seed, budget)),
    }
}

/// One Σ-set discovered by the scan, keyed for deduplication by its sorted
/// element list; `rep_pair` is the least generating pair that produced it.
struct ScanSet {
    elements: Vec<u32>,
    class_ids: Vec<u32>,
    rep_pair: (u32, u32),
}

fn hash_elements(elements: &[u32]) -> u64 {
    let mut h = DefaultHasher::new();
    elements.hash(&mut h);
    h.finish()
}

fn complete_search(g: &Group) -> Result<Verdict, BeauvilleError> {
    let bound = config::DEFAULT_SEARCH_BOUND;
    if g.order() > bound {
        return Err(BeauvilleError::BoundExceeded {
            order: g.order() as u64,
            bound: bound as u64,
        });
    }
    let order = g.order() as u32;
    let reps: Vec<u32> = (0..g.num_classes() as u32).map(|c| g.class_rep(c)).collect();

    // Phase 1 (parallel over first components): collect distinct Σ-sets.
    // Pairs sharing the class triple (cl(x), cl(y), cl(xy)) share the Σ-set
    // and are computed once; distinct triples can still produce equal sets,
    // so sets are deduplicated by (hash of) the sorted element list.
    let per_rep: Vec<(u64, Vec<ScanSet>)> = reps
        .par_iter()
        .map(|&x| {
            let mut pairs = 0u64;
            let mut triples_seen: HashSet<(u32, u32, u32)> = HashSet::new();
            let mut local: HashMap<u64, ScanSet> = HashMap::new();
            for y in 0..order {
                if !g.generates(x, y) {
                    continue;
                }
                pairs += 1;
                let triple = (g.class_of(x), g.class_of(y), g.class_of(g.mul(x, y)));
                if !triples_seen.insert(triple) {
                    continue;
                }
                let s = sigma(g, x, y);
                let key = hash_elements(s.elements());
                // y ascends, so the first entry per set is this row's least.
                local
                    .entry(key)
                    .and_modify(|e| debug_assert_eq!(e.elements, s.elements()))
                    .or_insert_with(|| ScanSet {
                        elements: s.elements().to_vec(),
                        class_ids: s.class_ids().to_vec(),
                        rep_pair: (x, y),
                    });
            }
            (pairs, local.into_values().collect())
        })
        .collect();

    // Merge: keep the lexicographically least representative pair per set.
    let mut generating_pairs = 0u64;
    let mut merged: BTreeMap<Vec<u32>, ScanSet> = BTreeMap::new();
    for (pairs, sets) in per_rep {
        generating_pairs += pairs;
        for s in sets {
            match merged.get_mut(&s.elements) {
                Some(e) if e.rep_pair <= s.rep_pair => {}
                Some(e) => e.rep_pair = s.rep_pair,
                None => {
                    merged.insert(s.elements.clone(), s);
                }
            }
        }
    }
    let mut sets: Vec<ScanSet> = merged.into_values().collect();
    sets.sort_by_key(|s| s.rep_pair);
    let distinct_sigma_sets = sets.len() as u64;

    // Phase 2 (sequential, deterministic): first disjoint combination in
    // representative-pair order is the lexicographic minimum.
    let identity_class = g.class_of(g.identity());
    for i in 0..sets.len() {
        for j in i + 1..sets.len() {
            if shared_class(&sets[i].class_ids, &sets[j].class_ids, identity_class).is_none() {
                let structure = structure_of(g, sets[i].rep_pair, sets[j].rep_pair);
                debug_assert!(matches!(
                    verify_structure(g, sets[i].rep_pair, sets[j].rep_pair),
                    Verdict::BeauvilleVerified { .. }
                ));
                return Ok(Verdict::Found {
                    structure,
                    generating_pairs,
                    distinct_sigma_sets,
                });
            }
        }
    }
    Ok(Verdict::ExhaustedNone {
        generating_pairs,
        distinct_sigma_sets,
    })
}

/// Seeded sampling: the two recipe shapes ((x,y) against (xy², xy³) and
/// (xy², xy⁴)) on the least generating pair, then uniformly random
/// candidate structures until the budget runs out. A miss is reported as
/// inconclusive, never as non-existence.
fn heuristic_search(g: &Group, seed: u64, budget: u64) -> Verdict {
    let order = g.order() as u32;
    let base = (0..order)
        .flat_map(|a| (0..order).map(move |b| (a, b)))
        .find(|&(a, b)| g.generates(a, b));
    let Some(base) = base else {
        return Verdict::Inconclusive {
            detail: "no generating pair exists".to_string(),
        };
    };
    let mut tried = 0u64;
    let mut sigma_hashes: HashSet<u64> = HashSet::new();
    let mut attempt = |p1: (u32, u32), p2: (u32, u32), tried: &mut u64| -> Option<Verdict> {
        *tried += 1;
        if !g.generates(p1.0, p1.1) || !g.generates(p2.0, p2.1) {
            return None;
        }
        let s1 = sigma(g, p1.0, p1.1);
        let s2 = sigma(g, p2.0, p2.1);
        sigma_hashes.insert(hash_elements(s1.elements()));
        sigma_hashes.insert(hash_elements(s2.elements()));
        let identity_class = g.class_of(g.identity());
        if shared_class(s1.class_ids(), s2.class_ids(), identity_class).is_none() {
            Some(Verdict::Found {
                structure: structure_of(g, p1, p2),
                generating_pairs: *tried,
                distinct_sigma_sets: sigma_hashes.len() as u64,
            })
        } else {
            None
        }
    };

    let (a, b) = base;
    for k in [3i64, 4] {
        let second = (
            g.mul(a, g.pow(b, 2)),
            g.mul(a, g.pow(b, k)),
        );
        if let Some(found) = attempt(base, second, &mut tried) {
            return found;
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    while tried < budget {
        let mut draw = || rng.gen_range(1..order);
        let p1 = (draw(), draw());
        let p2 = (draw(), draw());
        if let Some(found) = attempt(p1, p2, &mut tried) {
            return found;
        }
    }
    Verdict::Inconclusive {
        detail: format!("heuristic search missed after {tried} samples (seed {seed})"),
    }
}

/// Scan every ordered generating pair (a, b), requiring the candidate's
/// hit-set to contain a, b, or ab. Returns the number of generating pairs
/// on success (candidate universal), `None` on the first miss.
fn scan_all_generating_pairs(g: &Group, hit: &[bool]) -> Option<u64> {
    let order = g.order() as u32;
    let miss = AtomicBool::new(false);
    let total: u64 = (0..order)
        .into_par_iter()
        .map(|a| {
            if miss.load(Ordering::Relaxed) {
                return 0;
            }
            let mut count = 0u64;
            for b in 0..order {
                if !g.generates(a, b) {
                    continue;
                }
                count += 1;
                if !(hit[a as usize] || hit[b as usize] || hit[g.mul(a, b) as usize]) {
                    miss.store(true, Ordering::Relaxed);
                    return count;
                }
            }
            count
        })
        .sum();
    // On success no row aborted, so the sum is the exact pair count and is
    // independent of scheduling.
    if miss.load(Ordering::Relaxed) {
        None
    } else {
        Some(total)
    }
}

struct UniversalScan {
    element: u32,
    gen_pairs_scanned: u64,
    candidates_tried: u64,
}

/// Look for a universal obstruction element: a nontrivial s lying in
/// Σ(a, b) for every generating pair. Candidates of order p suffice
/// (Σ-sets are power-closed), central ones are tried first with the O(1)
/// socle-map membership test, then noncentral order-p class
/// representatives with the power-class-profile test. Candidates that are
/// powers of an already-tried candidate are skipped: s and its nontrivial
/// powers lie in exactly the same Σ-sets.
fn universal_element_scan(g: &Group, p: u32) -> Option<UniversalScan> {
    let order = g.order() as u32;
    let mut candidates_tried = 0u64;
    let mut tried_subgroups: BTreeSet<u32> = BTreeSet::new();

    // Central candidates: s ∈ Σ(a,b) ⇔ s ∈ ⟨a⟩ ∪ ⟨b⟩ ∪ ⟨ab⟩, and for s of
    // order p that means the socle subgroup of one of them is ⟨s⟩.
    for &s in g.center() {
        if s == g.identity() || g.element_order(s) != p {
            continue;
        }
        let key = g.socle_sub(s);
        debug_assert!(key.is_some());
        if !tried_subgroups.insert(key.unwrap()) {
            continue;
        }
        candidates_tried += 1;
        let hit: Vec<bool> = (0..order).map(|e| g.socle_sub(e) == key).collect();
        if let Some(scanned) = scan_all_generating_pairs(g, &hit) {
            if scanned > 0 {
                return Some(UniversalScan {
                    element: s,
                    gen_pairs_scanned: scanned,
                    candidates_tried,
                });
            }
        }
    }

    // Noncentral candidates, one per conjugacy class of order-p elements:
    // s ∈ Σ(a,b) ⇔ some power of a, b, or ab falls in the class of s.
    for c in 0..g.num_classes() as u32 {
        let s = g.class_rep(c);
        if s == g.identity() || g.element_order(s) != p || g.is_central(s) {
            continue;
        }
        candidates_tried += 1;
        let hit: Vec<bool> = (0..order)
            .map(|e| g.power_class_profile(e).binary_search(&c).is_ok())
            .collect();
        if let Some(scanned) = scan_all_generating_pairs(g, &hit) {
            if scanned > 0 {
                return Some(UniversalScan {
                    element: s,
                    gen_pairs_scanned: scanned,
                    candidates_tried,
                });
            }
        }
    }
    None
}

/// Try to prove the group has no Beauville structure, in certificate
/// order: (a) not 2-generated, (b) universal obstruction element,
/// (c) exhaustive search. If the exhaustive search finds a structure
/// instead, that Found verdict is returned; when every strategy is out of
/// reach the verdict is inconclusive — never a silent "non-Beauville".
pub fn certify_non_beauville(g: &Group) -> Verdict {
    match g.frattini_rank() {
        Some(2) => {}
        Some(r) => {
            return Verdict::Certified {
                certificate: Certificate::NotTwoGenerated { frattini_rank: r },
            }
        }
        None => {
            return Verdict::Inconclusive {
                detail: "generator orders mix primes; rank certificate unavailable".to_string(),
            }
        }
    }
    if let Some(p) = g.pres().prime() {
        if let Some(scan) = universal_element_scan(g, p) {
            return Verdict::Certified {
                certificate: Certificate::UniversalElement {
                    element: g.element(scan.element),
                    gen_pairs_scanned: scan.gen_pairs_scanned,
                    candidates_tried: scan.candidates_tried,
                },
            };
        }
    }
    match complete_search(g) {
        Ok(Verdict::ExhaustedNone {
            generating_pairs,
            distinct_sigma_sets,
        }) => Verdict::Certified {
            certificate: Certificate::ExhaustiveScan {
                generating_pairs,
                distinct_sigma_sets,
            },
        },
        Ok(found) => found,
        Err(BeauvilleError::BoundExceeded { order, bound }) => Verdict::Inconclusive {
            detail: format!(
                "no universal obstruction element found and order {order} exceeds the \
                 complete-search bound {bound}"
            ),
        },
        Err(e) => Verdict::Inconclusive {
            detail: e.to_string(),
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{build_group, FamilySpec};

    fn fam(name: &str, params: &[(&str, u64)]) -> Group {
        let mut s = FamilySpec::new(name);
        for &(k, v) in params {
            s = s.with(k, v);
        }
        build_group(&s).unwrap()
    }

    #[test]
    fn complete_search_finds_heisenberg_structure() {
        let g = fam("holder_heisenberg", &[("p", 5)]);
        match search_structure(&g, SearchMode::Complete).unwrap() {
            Verdict::Found {
                structure,
                generating_pairs,
                distinct_sigma_sets,
            } => {
                assert!(generating_pairs > 0);
                assert!(distinct_sigma_sets >= 2);
                let p1 = (structure.first.x.id, structure.first.y.id);
                let p2 = (structure.second.x.id, structure.second.y.id);
                assert!(matches!(
                    verify_structure(&g, p1, p2),
                    Verdict::BeauvilleVerified { .. }
                ));
            }
            v => panic!("expected Found, got {v:?}"),
        }
    }

    #[test]
    fn complete_search_exhausts_lemma10_group() {
        let g = fam("lemma10", &[("p", 3), ("n", 2)]);
        match search_structure(&g, SearchMode::Complete).unwrap() {
            Verdict::ExhaustedNone {
                generating_pairs, ..
            } => assert!(generating_pairs > 0),
            v => panic!("expected ExhaustedNone, got {v:?}"),
        }
    }

    #[test]
    fn complete_search_on_elementary_abelian_squares() {
        let c5 = fam("cn_x_cn", &[("p", 5), ("k", 1)]);
        assert!(matches!(
            search_structure(&c5, SearchMode::Complete).unwrap(),
            Verdict::Found { .. }
        ));
        let c3 = fam("cn_x_cn", &[("p", 3), ("k", 1)]);
        assert!(matches!(
            search_structure(&c3, SearchMode::Complete).unwrap(),
            Verdict::ExhaustedNone { .. }
        ));
    }

    #[test]
    fn complete_search_respects_bound() {
        let g = fam("K_r", &[("p", 5), ("r", 1)]);
        match search_structure(&g, SearchMode::Complete) {
            Err(BeauvilleError::BoundExceeded { order: 15625, .. }) => {}
            _ => panic!("expected BoundExceeded for order 15625"),
        }
    }

    #[test]
    fn found_structure_is_deterministic() {
        let g = fam("holder_heisenberg", &[("p", 5)]);
        let ids = |v: Verdict| match v {
            Verdict::Found { structure, .. } => (
                structure.first.x.id,
                structure.first.y.id,
                structure.second.x.id,
                structure.second.y.id,
            ),
            v => panic!("expected Found, got {v:?}"),
        };
        let a = ids(search_structure(&g, SearchMode::Complete).unwrap());
        let b = ids(search_structure(&g, SearchMode::Complete).unwrap());
        assert_eq!(a, b);
    }

    #[test]
    fn heuristic_recipe_hits_heisenberg_immediately() {
        let g = fam("holder_heisenberg", &[("p", 7)]);
        match search_structure(&g, SearchMode::Heuristic { seed: 1, budget: 10 }).unwrap() {
            Verdict::Found {
                generating_pairs, ..
            } => assert!(generating_pairs <= 2, "recipes should hit: {generating_pairs}"),
            v => panic!("expected Found, got {v:?}"),
        }
    }

    #[test]
    fn heuristic_miss_is_inconclusive_and_seed_deterministic() {
        let g = fam("lemma10", &[("p", 3), ("n", 2)]);
        let run = |seed| search_structure(&g, SearchMode::Heuristic { seed, budget: 50 }).unwrap();
        match (run(7), run(7)) {
            (
                Verdict::Inconclusive { detail: d1 },
                Verdict::Inconclusive { detail: d2 },
            ) => assert_eq!(d1, d2),
            _ => panic!("expected two identical inconclusive verdicts"),
        }
    }

    #[test]
    fn certify_cyclic_group_by_rank() {
        let g = fam("cyclic", &[("p", 5), ("n", 2)]);
        match certify_non_beauville(&g) {
            Verdict::Certified {
                certificate: Certificate::NotTwoGenerated { frattini_rank: 1 },
            } => {}
            v => panic!("expected rank certificate, got {v:?}"),
        }
    }

    #[test]
    fn certify_lemma10_by_universal_element() {
        let g = fam("lemma10", &[("p", 5), ("n", 2)]);
        match certify_non_beauville(&g) {
            Verdict::Certified {
                certificate:
                    Certificate::UniversalElement {
                        element,
                        gen_pairs_scanned,
                        ..
                    },
            } => {
                // The obstruction generates ⟨x^5⟩ = ⟨x1⟩.
                let x = g.generator(0);
                let expected = g.subgroup_closure(&[g.pow(x, 5)]);
                assert_eq!(g.subgroup_closure(&[element.id]), expected);
                assert!(gen_pairs_scanned > 0);
            }
            v => panic!("expected universal-element certificate, got {v:?}"),
        }
    }

    #[test]
    fn certify_heisenberg_returns_found() {
        let g = fam("holder_heisenberg", &[("p", 5)]);
        assert!(matches!(
            certify_non_beauville(&g),
            Verdict::Found { .. }
        ));
    }

    #[test]
    fn certify_order16_groups() {
        for famname in ["table2_G4'", "table2_G5'", "table2_G6'"] {
            let g = fam(famname, &[("p", 2)]);
            match certify_non_beauville(&g) {
                Verdict::Certified { .. } => {}
                v => panic!("{famname}: expected a certificate, got {v:?}"),
            }
        }
    }

    #[test]
    fn search_and_certify_agree_on_small_groups() {
        for (name, params) in [
            ("holder_heisenberg", vec![("p", 3u64)]),
            ("holder_heisenberg", vec![("p", 5)]),
            ("lemma10", vec![("p", 2), ("n", 2)]),
            ("lemma10", vec![("p", 5), ("n", 2)]),
            ("table1_G3", vec![("p", 3)]),
            ("cn_x_cn", vec![("p", 5), ("k", 1)]),
        ] {
            let mut s = FamilySpec::new(name);
            for &(k, v) in &params {
                s = s.with(k, v);
            }
            let g = build_group(&s).unwrap();
            let searched = search_structure(&g, SearchMode::Complete).unwrap();
            let certified = certify_non_beauville(&g);
            match (&searched, &certified) {
                (Verdict::Found { .. }, Verdict::Found { .. }) => {}
                (Verdict::ExhaustedNone { .. }, Verdict::Certified { .. }) => {}
                _ => panic!("{name}: search {searched:?} vs certify {certified:?}"),
            }
        }
    }
}
