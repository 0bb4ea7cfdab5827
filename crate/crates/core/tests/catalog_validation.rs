//! Every catalog family, built at a representative parameter set, must
//! re-validate against its defining relations with the exact predicted
//! order; plus the fingerprint separations the catalog is used for.

use anyhow::Result;

use bvl_core::catalog::{build_group, validate_family, FamilySpec};
use bvl_core::fingerprint::abelian_invariants;

fn spec(id: &str, params: &[(&str, u64)]) -> FamilySpec {
    let mut s = FamilySpec::new(id);
    for &(k, v) in params {
        s = s.with(k, v);
    }
    s
}

#[test]
fn every_family_builds_and_revalidates_at_its_reference_order() -> Result<()> {
    let roster: Vec<(FamilySpec, u64)> = vec![
        (spec("cyclic", &[("p", 3), ("n", 2)]), 9),
        (spec("abelian", &[("p", 3), ("e1", 1), ("e2", 2)]), 27),
        (spec("cn_x_cn", &[("p", 5)]), 25),
        (spec("cn_x_cn", &[("p", 3), ("k", 2)]), 81),
        (spec("holder_heisenberg", &[("p", 5)]), 125),
        (spec("lemma10", &[("p", 3), ("n", 2)]), 27),
        (spec("lemma10", &[("p", 5), ("n", 3)]), 625),
        (spec("lemma11", &[("p", 5), ("n", 2)]), 625),
        (spec("lemma12", &[("p", 5), ("n", 2)]), 3125),
        (spec("table1_G1", &[("p", 5)]), 625),
        (spec("table1_G2", &[("p", 5)]), 625),
        (spec("table1_G3", &[("p", 5)]), 625),
        (spec("table1_G4", &[("p", 5)]), 625),
        (spec("table1_G5", &[("p", 5)]), 625),
        (spec("table1_G6", &[("p", 5)]), 625),
        (spec("table1_G7", &[("p", 5)]), 625),
        (spec("table1_G8", &[("p", 3)]), 81),
        (spec("table2_G4'", &[("p", 2)]), 16),
        (spec("table2_G5'", &[("p", 2)]), 16),
        (spec("table2_G6'", &[("p", 2)]), 16),
        (spec("H1", &[("p", 5)]), 3125),
        (spec("H2", &[("p", 5)]), 3125),
        (spec("H3", &[("p", 5)]), 3125),
        (spec("H4", &[("p", 5)]), 3125),
        (spec("H4", &[("p", 7), ("r", 3)]), 16807),
        (spec("H5", &[("p", 5)]), 3125),
        (spec("H6", &[("p", 5)]), 3125),
        (spec("H7", &[("p", 5)]), 3125),
        (spec("H_ijkl", &[("p", 5), ("i", 1), ("j", 0), ("k", 0), ("l", 0)]), 3125),
        (spec("H_ijkl", &[("p", 5), ("i", 0), ("j", 2), ("k", 3), ("l", 4)]), 3125),
        (spec("K_r", &[("p", 5), ("r", 1)]), 15625),
        (spec("K_r", &[("p", 5), ("r", 4)]), 15625),
        (spec("example17", &[("p", 3)]), 243),
    ];
    for (s, order) in roster {
        let g = build_group(&s)?;
        assert_eq!(g.order() as u64, order, "{}: order", s.reference());
        let report = validate_family(&g, &s)?;
        assert!(
            report.all_pass(),
            "{}: {:?}",
            s.reference(),
            report
                .checks
                .iter()
                .filter(|c| !c.holds)
                .map(|c| c.relation.clone())
                .collect::<Vec<_>>()
        );
        assert!(!report.checks.is_empty(), "{}: no relations checked", s.reference());
    }
    Ok(())
}

/// The two order-625 two-generator metacyclic-flavored families share their
/// abelianization (both C_5 x C_25) — what separates them is the order
/// spectrum: one has elements of order 125, the other has exponent 25.
#[test]
fn g1_and_g2_share_abelianization_but_differ_in_spectrum() -> Result<()> {
    let g1 = build_group(&spec("table1_G1", &[("p", 5)]))?;
    let g2 = build_group(&spec("table1_G2", &[("p", 5)]))?;
    assert_eq!(abelian_invariants(&g1), vec![5, 25]);
    assert_eq!(abelian_invariants(&g2), vec![5, 25]);
    assert_eq!(g1.exponent(), 125);
    assert_eq!(g2.exponent(), 25);
    let f1 = g1.fingerprint();
    let f2 = g2.fingerprint();
    assert_eq!(f1.abelian_invariants, f2.abelian_invariants);
    assert_ne!(f1.order_spectrum, f2.order_spectrum);
    assert_ne!(f1, f2);
    Ok(())
}

/// Heisenberg and the order-125 metacyclic group: same order, separated by
/// exponent (5 vs 25).
#[test]
fn heisenberg_and_metacyclic_125_are_fingerprint_distinct() -> Result<()> {
    let heis = build_group(&spec("holder_heisenberg", &[("p", 5)]))?;
    let meta = build_group(&spec("lemma10", &[("p", 5), ("n", 2)]))?;
    assert_eq!(heis.order(), 125);
    assert_eq!(meta.order(), 125);
    assert_eq!(heis.exponent(), 5);
    assert_eq!(meta.exponent(), 25);
    assert_ne!(heis.fingerprint(), meta.fingerprint());
    Ok(())
}

/// Same spec built twice gives equal fingerprints; independent parameters
/// give distinct groups within each family.
#[test]
fn fingerprints_are_deterministic_and_separate_family_members() -> Result<()> {
    let a = build_group(&spec("H2", &[("p", 5)]))?;
    let b = build_group(&spec("H2", &[("p", 5)]))?;
    assert_eq!(a.fingerprint(), b.fingerprint());

    let h3 = build_group(&spec("H3", &[("p", 5)]))?;
    let h4 = build_group(&spec("H4", &[("p", 5)]))?;
    assert_ne!(h3.fingerprint(), h4.fingerprint());
    Ok(())
}

/// The quadratic-residue twist is invisible to the coarse invariants and
/// is caught only by the pair profile.
#[test]
fn nonresidue_twist_is_separated_only_by_the_pair_profile() -> Result<()> {
    // At p = 5 the smallest nonresidue is 2: H_{0,0,1,0} vs H_{0,0,2,0}.
    let a = build_group(&spec("H_ijkl", &[("p", 5), ("i", 0), ("j", 0), ("k", 1), ("l", 0)]))?;
    let b = build_group(&spec("H_ijkl", &[("p", 5), ("i", 0), ("j", 0), ("k", 2), ("l", 0)]))?;
    let fa = a.fingerprint();
    let fb = b.fingerprint();
    assert_eq!(fa.order_spectrum, fb.order_spectrum);
    assert_eq!(fa.class_sizes, fb.class_sizes);
    assert_eq!(fa.abelian_invariants, fb.abelian_invariants);
    assert_eq!(fa.power_profile, fb.power_profile);
    assert!(fa.pair_profile.is_some());
    assert_ne!(fa.pair_profile, fb.pair_profile);
    assert_ne!(fa, fb);
    Ok(())
}
