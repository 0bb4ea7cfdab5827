//! Σ-sets: for a generating pair (x, y), the union of all conjugates of
//! all powers of x, y and xy. A Beauville structure is a pair of generating
//! pairs whose Σ-sets meet only in the identity.
//!
//! Two independent implementations are kept deliberately separate: `sigma`
//! works class-by-class (a Σ-set is a union of full conjugacy classes),
//! while `sigma_brute` runs the literal double loop over conjugators and
//! exponents `1..=|G|`. The test suites require them to agree element for
//! element; neither may be "simplified" into the other.

use crate::config;
use crate::error::BeauvilleError;
use crate::group::Group;

/// Which of the three cyclic subgroups a Σ-member is conjugate into.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Base {
    X,
    Y,
    XY,
}

impl Base {
    pub fn label(self) -> &'static str {
        match self {
            Base::X => "x",
            Base::Y => "y",
            Base::XY => "xy",
        }
    }
}

/// Membership certificate: `element = conjugator⁻¹ · base^power · conjugator`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Witness {
    pub element: u32,
    pub base: Base,
    pub power: u32,
    pub conjugator: u32,
}

/// The Σ-set of one generating pair, stored as full conjugacy classes.
#[derive(Clone, Debug)]
pub struct SigmaSet {
    pub x: u32,
    pub y: u32,
    pub xy: u32,
    /// All member element ids, ascending; always contains the identity.
    elements: Vec<u32>,
    /// Covered class ids, ascending.
    class_ids: Vec<u32>,
    /// Per covered class (parallel to `class_ids`): which base power first
    /// reached it.
    class_source: Vec<(Base, u32)>,
}

impl SigmaSet {
    pub fn elements(&self) -> &[u32] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, a: u32) -> bool {
        self.elements.binary_search(&a).is_ok()
    }

    /// Covered class ids, ascending. Because classes are numbered by
    /// ascending minimal representative, this doubles as a canonical key
    /// for Σ-set equality within one group.
    pub fn class_ids(&self) -> &[u32] {
        &self.class_ids
    }

    fn base_element(&self, base: Base) -> u32 {
        match base {
            Base::X => self.x,
            Base::Y => self.y,
            Base::XY => self.xy,
        }
    }

    /// Membership certificate for `a`, if `a` belongs to this Σ-set.
    pub fn witness(&self, g: &Group, a: u32) -> Option<Witness> {
        let c = g.class_of(a);
        let k = self.class_ids.binary_search(&c).ok()?;
        let (base, power) = self.class_source[k];
        let u = g.pow(self.base_element(base), power as i64);
        debug_assert_eq!(g.class_of(u), c);
        // rep^s = u and rep^t = a give u^(s⁻¹t) = a.
        let s = g.conjugator_to(u);
        let t = g.conjugator_to(a);
        let conjugator = g.mul(g.inv(s), t);
        debug_assert_eq!(g.conj(u, conjugator), a);
        Some(Witness {
            element: a,
            base,
            power,
            conjugator,
        })
    }
}

/// Σ(x, y) via conjugacy classes: mark the class of u^i for u ∈ {x, y, xy}
/// and i ∈ [1, o(u)], then take all members of marked classes. Exponents
/// beyond o(u) repeat classes already marked, so the literal exponent range
/// [1, |G|] is covered.
pub fn sigma(g: &Group, x: u32, y: u32) -> SigmaSet {
    let xy = g.mul(x, y);
    let mut source: Vec<Option<(Base, u32)>> = vec![None; g.num_classes()];
    for (base, u) in [(Base::X, x), (Base::Y, y), (Base::XY, xy)] {
        let o = g.element_order(u);
        let mut pw = u;
        for i in 1..=o {
            let c = g.class_of(pw) as usize;
            if source[c].is_none() {
                source[c] = Some((base, i));
            }
            pw = g.mul(pw, u);
        }
        debug_assert_eq!(pw, g.mul(g.identity(), u));
    }
    let mut class_ids = Vec::new();
    let mut class_source = Vec::new();
    let mut elements = Vec::new();
    for (c, slot) in source.iter().enumerate() {
        if let Some(src) = slot {
            class_ids.push(c as u32);
            class_source.push(*src);
            elements.extend_from_slice(g.class_members(c as u32));
        }
    }
    elements.sort_unstable();
    SigmaSet {
        x,
        y,
        xy,
        elements,
        class_ids,
        class_source,
    }
}

/// Literal Σ(x, y): for every conjugator h ∈ G and every exponent
/// i ∈ [1, |G|], collect h⁻¹ u^i h for u ∈ {x, y, xy}. Quadratic in |G|
/// and gated by the brute-force bound; this is the oracle the class-based
/// implementation is tested against.
pub fn sigma_brute(g: &Group, x: u32, y: u32) -> Result<Vec<u32>, BeauvilleError> {
    let bound = config::brute_bound();
    if g.order() > bound {
        return Err(BeauvilleError::GroupTooLargeForOracle {
            order: g.order() as u64,
            bound: bound as u64,
        });
    }
    let xy = g.mul(x, y);
    let n = g.order() as u64;
    let mut seen = vec![false; g.order()];
    for u in [x, y, xy] {
        let mut pw = g.identity();
        for _ in 1..=n {
            pw = g.mul(pw, u);
            for h in g.element_ids() {
                seen[g.conj(pw, h) as usize] = true;
            }
        }
        debug_assert_eq!(pw, g.identity());
    }
    Ok((0..g.order() as u32).filter(|&a| seen[a as usize]).collect())
}

/// Smallest class id (other than the identity's) present in both sorted
/// class-id lists.
pub(crate) fn shared_class(a: &[u32], b: &[u32], identity_class: u32) -> Option<u32> {
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                if a[i] != identity_class {
                    return Some(a[i]);
                }
                i += 1;
                j += 1;
            }
        }
    }
    None
}

/// The minimal nontrivial element lying in both Σ-sets, if any.
///
/// Σ-sets are unions of full conjugacy classes, so the intersection is
/// too; the smallest shared nontrivial element is the representative of
/// the smallest shared non-identity class (classes are numbered by
/// ascending representative).
pub fn overlap_witness(g: &Group, a: &SigmaSet, b: &SigmaSet) -> Option<u32> {
    let identity_class = g.class_of(g.identity());
    shared_class(&a.class_ids, &b.class_ids, identity_class).map(|c| g.class_rep(c))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{build_group, FamilySpec};

    fn heis(p: u64) -> Group {
        build_group(&FamilySpec::new("holder_heisenberg").with("p", p)).unwrap()
    }

    #[test]
    fn sigma_matches_brute_on_heisenberg() {
        let g = heis(3);
        let x = g.generator(0);
        let y = g.generator(1);
        let s = sigma(&g, x, y);
        let brute = sigma_brute(&g, x, y).unwrap();
        assert_eq!(s.elements(), &brute[..]);
    }

    #[test]
    fn sigma_always_contains_identity() {
        let g = heis(5);
        for x in [g.generator(0), g.generator(2)] {
            let s = sigma(&g, x, g.generator(1));
            assert!(s.contains(g.identity()));
        }
    }

    #[test]
    fn sigma_is_power_and_conjugation_closed() {
        let g = heis(5);
        let s = sigma(&g, g.generator(0), g.generator(1));
        for &a in s.elements() {
            assert!(s.contains(g.pow(a, 2)));
            assert!(s.contains(g.inv(a)));
            for h in g.generator_ids() {
                assert!(s.contains(g.conj(a, *h)));
            }
        }
    }

    #[test]
    fn sigma_is_symmetric_in_the_pair() {
        let g = heis(7);
        let x = g.generator(0);
        let y = g.generator(1);
        // yx is conjugate to xy, so Σ(y, x) covers the same classes.
        assert_eq!(sigma(&g, x, y).elements(), sigma(&g, y, x).elements());
    }

    #[test]
    fn witnesses_certify_membership() {
        let g = heis(5);
        let x = g.generator(0);
        let y = g.generator(1);
        let s = sigma(&g, x, y);
        for &a in s.elements() {
            let w = s.witness(&g, a).unwrap();
            let base = match w.base {
                Base::X => x,
                Base::Y => y,
                Base::XY => g.mul(x, y),
            };
            assert_eq!(g.conj(g.pow(base, w.power as i64), w.conjugator), a);
        }
        // Non-members have no witness.
        let outside: Vec<u32> = g.element_ids().filter(|&a| !s.contains(a)).collect();
        assert!(!outside.is_empty());
        assert!(s.witness(&g, outside[0]).is_none());
    }

    #[test]
    fn brute_oracle_is_gated_by_bound() {
        let g = build_group(
            &FamilySpec::new("lemma12")
                .with("p", 5)
                .with("n", 2),
        )
        .unwrap();
        assert_eq!(g.order(), 3125);
        match sigma_brute(&g, g.generator(0), g.generator(1)) {
            Err(BeauvilleError::GroupTooLargeForOracle { order: 3125, .. }) => {}
            _ => panic!("expected the oracle bound to reject order 3125"),
        }
    }

    #[test]
    fn overlap_witness_is_minimal_shared_class_rep() {
        let g = heis(5);
        let x = g.generator(0);
        let y = g.generator(1);
        let s1 = sigma(&g, x, y);
        // Same pair: overlap everywhere; the witness is the smallest
        // nontrivial member.
        let w = overlap_witness(&g, &s1, &s1).unwrap();
        let min_nontrivial = s1
            .elements()
            .iter()
            .copied()
            .find(|&a| a != g.identity())
            .unwrap();
        assert_eq!(w, min_nontrivial);
        // Disjoint structure on the Heisenberg group at p = 5: the classic
        // second pair (xy², xy⁴).
        let x2 = g.evaluate(&[(0, 1), (1, 2)]).unwrap();
        let y2 = g.evaluate(&[(0, 1), (1, 4)]).unwrap();
        let s2 = sigma(&g, x2, y2);
        assert_eq!(overlap_witness(&g, &s1, &s2), None);
    }

    #[test]
    fn sigma_in_abelian_group_is_three_cyclic_subgroups() {
        let g = build_group(&FamilySpec::new("cn_x_cn").with("p", 5).with("k", 1)).unwrap();
        let x = g.generator(0);
        let y = g.generator(1);
        let s = sigma(&g, x, y);
        // <x> ∪ <y> ∪ <xy>: 3·(5-1) + 1 elements.
        assert_eq!(s.len(), 13);
        assert_eq!(s.elements(), &sigma_brute(&g, x, y).unwrap()[..]);
    }
}
