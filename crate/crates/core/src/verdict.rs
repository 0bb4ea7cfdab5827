//! Outcome types shared by verification, search, and certification.

use serde::Serialize;

use crate::group::Element;

/// An ordered pair of elements, reported with readable renderings.
#[derive(Clone, Debug, Serialize)]
pub struct Pair {
    pub x: Element,
    pub y: Element,
}

/// A candidate Beauville structure: two generating pairs whose Σ-sets must
/// be disjoint outside the identity.
#[derive(Clone, Debug, Serialize)]
pub struct Structure {
    pub first: Pair,
    pub second: Pair,
}

/// Why a candidate structure fails.
#[derive(Clone, Debug, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Reason {
    FirstPairNotGenerating,
    SecondPairNotGenerating,
    /// The Σ-sets share a nontrivial element; `witness` is the least shared
    /// element id, reported with the conjugacy data that produced it.
    SigmaOverlap { witness: Element, class_rep: Element },
}

/// A machine-checkable certificate that no Beauville structure exists.
#[derive(Clone, Debug, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Certificate {
    /// The group cannot be generated by two elements (Frattini rank != 2).
    NotTwoGenerated { frattini_rank: usize },
    /// A single element, up to power and conjugacy, lies in Σ of *every*
    /// generating pair, so no two Σ-sets can be disjoint.
    UniversalElement {
        element: Element,
        gen_pairs_scanned: u64,
        candidates_tried: u64,
    },
    /// Every generating pair was enumerated and every pair of distinct
    /// Σ-sets overlaps nontrivially.
    ExhaustiveScan {
        generating_pairs: u64,
        distinct_sigma_sets: u64,
    },
}

/// Result of asking whether a group admits (or a candidate is) a Beauville
/// structure.
#[derive(Clone, Debug, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Verdict {
    /// The supplied structure checks out.
    BeauvilleVerified {
        structure: Structure,
        sigma_size_first: u64,
        sigma_size_second: u64,
    },
    /// The supplied structure fails, with every observed reason.
    NotAStructure { reasons: Vec<Reason> },
    /// Search found a structure (lexicographically least over its scan).
    Found {
        structure: Structure,
        generating_pairs: u64,
        distinct_sigma_sets: u64,
    },
    /// Complete search exhausted all generating pairs without success.
    ExhaustedNone {
        generating_pairs: u64,
        distinct_sigma_sets: u64,
    },
    /// A proof of non-existence, independent of search order.
    Certified { certificate: Certificate },
    /// No decision: heuristics missed and no certificate was found.
    Inconclusive { detail: String },
}

impl Verdict {
    /// Process exit code conventions: 0 = positive (verified/found),
    /// 1 = negative (refuted/certified/exhausted), 2 = inconclusive.
    pub fn exit_code(&self) -> i32 {
        match self {
            Verdict::BeauvilleVerified { .. } | Verdict::Found { .. } => 0,
            Verdict::NotAStructure { .. }
            | Verdict::ExhaustedNone { .. }
            | Verdict::Certified { .. } => 1,
            Verdict::Inconclusive { .. } => 2,
        }
    }
}
