//! Consistency checking: the closure count in the builder and the
//! associativity-overlap report must both reject collapsing presentations.

use bvl_core::collect::overlap_violations;
use bvl_core::{Group, PcError, PcPresentation, Rule};

fn pres(names: &[&str], rel: Vec<u32>, rules: Vec<Rule>) -> PcPresentation {
    PcPresentation::new(names.iter().map(|s| s.to_string()).collect(), rel, rules).unwrap()
}

/// x^2 = y^2 = z^2 = w^2 = 1, [y,x] = z, [z,x] = w, [z,y] = w.
///
/// Guaranteed collapse: x, y are involutions, so z = [y,x] = (yx)^2, and
/// z^2 = 1 forces (yx)^4 = 1; then z is inverted-equal-fixed by x and
/// w = [z,x] = 1 in the presented group, which is dihedral of order 8,
/// not 16.
fn collapsing_p2() -> PcPresentation {
    pres(
        &["x", "y", "z", "w"],
        vec![2, 2, 2, 2],
        vec![
            Rule::Comm(1, 0, vec![(2, 1)]),
            Rule::Comm(2, 0, vec![(3, 1)]),
            Rule::Comm(2, 1, vec![(3, 1)]),
        ],
    )
}

#[test]
fn collapsing_presentation_is_rejected_by_builder() {
    // Note the closure count alone would *accept* this presentation: all 16
    // formal ids are reachable, the tables just fail associativity. The
    // overlap gate in the builder is what rejects it.
    match Group::from_presentation(collapsing_p2()) {
        Err(PcError::OverlapViolation { overlap }) => {
            assert!(!overlap.is_empty());
        }
        Ok(g) => panic!(
            "collapsing presentation accepted with order {}",
            g.order()
        ),
        Err(e) => panic!("unexpected error: {e}"),
    }
}

#[test]
fn collapsing_presentation_fails_overlap_check() {
    let violations = overlap_violations(&collapsing_p2()).unwrap();
    assert!(
        !violations.is_empty(),
        "overlap check missed a guaranteed collapse"
    );
}

#[test]
fn consistent_presentations_pass_both_checks() {
    // Heisenberg, a cyclic tower, and a maximal-class example.
    let cases = vec![
        pres(
            &["x", "y", "z"],
            vec![5, 5, 5],
            vec![Rule::Comm(1, 0, vec![(2, 1)])],
        ),
        pres(
            &["x", "y", "z"],
            vec![3, 3, 3],
            vec![Rule::Pow(0, vec![(1, 1)]), Rule::Pow(1, vec![(2, 1)])],
        ),
        // C3 wr C3 (order 81, class 3): x the cycle, y a base coordinate.
        pres(
            &["x", "y", "z", "w"],
            vec![3, 3, 3, 3],
            vec![
                Rule::Comm(1, 0, vec![(2, 1)]),
                Rule::Comm(2, 0, vec![(3, 1)]),
            ],
        ),
    ];
    for p in cases {
        assert!(overlap_violations(&p).unwrap().is_empty());
        let g = Group::from_presentation(p).unwrap();
        assert_eq!(g.order() as u128, g.pres().formal_order());
    }
}
