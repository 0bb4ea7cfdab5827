//! Direct products of two polycyclic groups.
//!
//! The product presentation is the left presentation followed by the right
//! one, with every cross commutator trivial. Because element ids are
//! mixed-radix with the leading generator most significant, the id of a pair
//! is simply `a * |B| + b`, so embedding and projecting cost nothing.

use crate::error::PcError;
use crate::group::Group;
use crate::presentation::{PcPresentation, Rule};

/// `A x B` together with the coordinate maps.
pub struct DirectProduct {
    pub group: Group,
    right_order: u32,
}

impl DirectProduct {
    /// Id of `(a, b)` in the product.
    pub fn embed(&self, a: u32, b: u32) -> u32 {
        a * self.right_order + b
    }

    /// Coordinates of a product element.
    pub fn split(&self, x: u32) -> (u32, u32) {
        (x / self.right_order, x % self.right_order)
    }
}

/// Build `A x B`. Right-hand generator names clashing with left-hand ones
/// are primed until distinct.
pub fn direct_product(a: &Group, b: &Group) -> Result<DirectProduct, PcError> {
    let ra = a.rank();
    let mut names: Vec<String> = a.pres().names().to_vec();
    for name in b.pres().names() {
        let mut candidate = name.clone();
        while names.contains(&candidate) {
            candidate.push('\'');
        }
        names.push(candidate);
    }
    let mut rel: Vec<u32> = a.pres().rels().to_vec();
    rel.extend_from_slice(b.pres().rels());

    let mut rules = Vec::new();
    for i in 0..a.rank() {
        let tail = a.pres().pow_tail(i);
        if !tail.is_empty() {
            rules.push(Rule::Pow(i, tail.to_vec()));
        }
        for j in i + 1..a.rank() {
            let tail = a.pres().comm_tail(j, i);
            if !tail.is_empty() {
                rules.push(Rule::Comm(j, i, tail.to_vec()));
            }
        }
    }
    let shift = |tail: &[(usize, i64)]| -> Vec<(usize, i64)> {
        tail.iter().map(|&(k, e)| (k + ra, e)).collect()
    };
    for i in 0..b.rank() {
        let tail = b.pres().pow_tail(i);
        if !tail.is_empty() {
            rules.push(Rule::Pow(i + ra, shift(tail)));
        }
        for j in i + 1..b.rank() {
            let tail = b.pres().comm_tail(j, i);
            if !tail.is_empty() {
                rules.push(Rule::Comm(j + ra, i + ra, shift(tail)));
            }
        }
    }

    let pres = PcPresentation::new(names, rel, rules)?;
    let group = Group::from_presentation(pres)?;
    debug_assert_eq!(group.order(), a.order() * b.order());
    Ok(DirectProduct {
        group,
        right_order: b.order() as u32,
    })
}
