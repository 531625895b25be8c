//! Behavior of the randomized checks as reporting machines: determinism,
//! witness quality, and the glue conventions the CLI and the duality check
//! rely on.

use conelab::cone::{ConeDescriptor, Direction, Tolerance};
use conelab::{
    check_cross_subadditive, check_duality, check_invariance, check_isotone, check_subadditive,
    dual, reverify_witness, ConeError, Verdict,
};

fn t() -> Tolerance {
    Tolerance::default()
}

fn obtuse_wedge() -> ConeDescriptor {
    ConeDescriptor::FinitelyGenerated {
        dim: 2,
        generators: vec![vec![1.0, 0.0], vec![-1.0, 2.0]],
    }
}

#[test]
fn reports_are_deterministic_bit_for_bit() {
    let lorentz = ConeDescriptor::Lorentz { dim: 3 };
    let monotone = ConeDescriptor::Monotone { dim: 4, direction: Direction::Nondecreasing };

    let a = check_isotone(&lorentz, &lorentz, 500, 21, &t()).unwrap();
    let b = check_isotone(&lorentz, &lorentz, 500, 21, &t()).unwrap();
    assert_eq!(a, b);
    assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());

    let a = check_subadditive(&monotone, &monotone, 500, 21, &t()).unwrap();
    let b = check_subadditive(&monotone, &monotone, 500, 21, &t()).unwrap();
    assert_eq!(a, b);

    let a = check_invariance(&lorentz, &lorentz, 500, 21, &t()).unwrap();
    let b = check_invariance(&lorentz, &lorentz, 500, 21, &t()).unwrap();
    assert_eq!(a, b);

    let a = check_duality(&lorentz, 500, 21, &t()).unwrap();
    let b = check_duality(&lorentz, 500, 21, &t()).unwrap();
    assert_eq!(a, b);
}

#[test]
fn changing_the_seed_changes_the_witness() {
    let k = ConeDescriptor::Lorentz { dim: 3 };
    let a = check_isotone(&k, &k, 2_000, 1, &t()).unwrap();
    let b = check_isotone(&k, &k, 2_000, 2, &t()).unwrap();
    assert_eq!(a.verdict, Verdict::Falsified);
    assert_eq!(b.verdict, Verdict::Falsified);
    let wa = a.witness.as_ref().unwrap();
    let wb = b.witness.as_ref().unwrap();
    assert_ne!(wa.vectors["u"], wb.vectors["u"]);
}

#[test]
fn budget_is_reported_even_after_early_exit() {
    let k = ConeDescriptor::Lorentz { dim: 3 };
    let rep = check_isotone(&k, &k, 10_000, 7, &t()).unwrap();
    assert_eq!(rep.verdict, Verdict::Falsified);
    assert_eq!(rep.samples, 10_000);
    assert!(rep.witness.as_ref().unwrap().sample_index < 100);
    assert!(rep.max_violation > t().membership_tol);
    assert!(rep.note.is_none());
}

#[test]
fn verdict_witness_and_violation_move_together() {
    // across a spread of cones: falsified ⟺ witness present ⟺ violation
    // above the membership tolerance
    let cones = [
        ConeDescriptor::Orthant { dim: 4 },
        ConeDescriptor::Lorentz { dim: 4 },
        ConeDescriptor::Monotone { dim: 5, direction: Direction::Nonincreasing },
        obtuse_wedge(),
    ];
    for k in &cones {
        for rep in [
            check_isotone(k, k, 800, 13, &t()).unwrap(),
            check_subadditive(k, k, 800, 13, &t()).unwrap(),
            check_invariance(k, k, 800, 13, &t()).unwrap(),
        ] {
            match rep.verdict {
                Verdict::Falsified => {
                    assert!(rep.witness.is_some(), "{k:?} {:?}", rep.property);
                    assert!(rep.max_violation > t().membership_tol);
                    let w = rep.witness.as_ref().unwrap();
                    assert!(w.violation > t().membership_tol);
                }
                Verdict::Unfalsified => {
                    assert!(rep.witness.is_none(), "{k:?} {:?}", rep.property);
                    assert!(rep.max_violation <= t().membership_tol);
                    assert!(rep.note.unwrap().contains("not a proof"));
                }
            }
        }
    }
}

#[test]
fn witnesses_survive_reverification_at_tighter_tolerance() {
    let lorentz = ConeDescriptor::Lorentz { dim: 3 };
    let wedge = obtuse_wedge();
    let half = t().membership_tol / 2.0;

    let iso = check_isotone(&lorentz, &lorentz, 2_000, 7, &t()).unwrap();
    assert!(reverify_witness(&iso, &lorentz, &lorentz, &t()).unwrap() > half);

    let sub = check_subadditive(&lorentz, &lorentz, 2_000, 7, &t()).unwrap();
    assert!(reverify_witness(&sub, &lorentz, &lorentz, &t()).unwrap() > half);

    let iso_w = check_isotone(&wedge, &wedge, 2_000, 7, &t()).unwrap();
    assert!(reverify_witness(&iso_w, &wedge, &wedge, &t()).unwrap() > half);

    let inv = check_invariance(&wedge, &wedge, 2_000, 7, &t()).unwrap();
    assert_eq!(inv.verdict, Verdict::Falsified);
    assert!(inv.witness.as_ref().unwrap().op.is_some());
    assert!(reverify_witness(&inv, &wedge, &wedge, &t()).unwrap() > half);

    // cross-cone pair: projecting onto the orthant is not isotone for the
    // monotone order, and the orthant is not closed under monotone meets
    let c = ConeDescriptor::Orthant { dim: 3 };
    let k = ConeDescriptor::Monotone { dim: 3, direction: Direction::Nonincreasing };
    let iso_x = check_isotone(&c, &k, 2_000, 7, &t()).unwrap();
    assert_eq!(iso_x.verdict, Verdict::Falsified);
    assert!(reverify_witness(&iso_x, &c, &k, &t()).unwrap() > half);
    let inv_x = check_invariance(&c, &k, 2_000, 7, &t()).unwrap();
    assert_eq!(inv_x.verdict, Verdict::Falsified);
    assert!(reverify_witness(&inv_x, &c, &k, &t()).unwrap() > half);
}

#[test]
fn reverify_rejects_reports_without_witnesses() {
    let k = ConeDescriptor::Orthant { dim: 3 };
    let rep = check_isotone(&k, &k, 100, 5, &t()).unwrap();
    assert_eq!(rep.verdict, Verdict::Unfalsified);
    match reverify_witness(&rep, &k, &k, &t()) {
        Err(ConeError::ConsistencyFailure(_)) => {}
        other => panic!("expected a consistency failure, got {other:?}"),
    }
}

#[test]
fn duality_report_conventions() {
    // self-dual and isotone: both sides unfalsified, agreement, violation 0
    let orthant = ConeDescriptor::Orthant { dim: 4 };
    let rep = check_duality(&orthant, 1_000, 7, &t()).unwrap();
    assert_eq!(rep.verdict, Verdict::Unfalsified);
    assert_eq!(rep.max_violation, 0.0);
    assert!(rep.witness.is_none());
    let subs = rep.sub_reports.as_ref().unwrap();
    assert_eq!(subs[0].verdict, Verdict::Unfalsified);
    assert_eq!(subs[1].verdict, Verdict::Unfalsified);
    assert!(rep.note.as_ref().unwrap().contains("agree"));

    // self-dual and not isotone: both sides falsified is still agreement
    let lorentz = ConeDescriptor::Lorentz { dim: 3 };
    let rep = check_duality(&lorentz, 1_000, 7, &t()).unwrap();
    assert_eq!(rep.verdict, Verdict::Unfalsified);
    let subs = rep.sub_reports.as_ref().unwrap();
    assert_eq!(subs[0].verdict, Verdict::Falsified);
    assert_eq!(subs[1].verdict, Verdict::Falsified);
    // each side's witness re-verifies against its own cone pair
    let l = dual(&lorentz);
    assert!(reverify_witness(&subs[0], &lorentz, &lorentz, &t()).unwrap() > 0.5e-8);
    assert!(reverify_witness(&subs[1], &l, &l, &t()).unwrap() > 0.5e-8);
}

#[test]
fn cross_subadditive_is_subadditivity_against_the_dual_order() {
    let cones = [
        ConeDescriptor::Monotone { dim: 4, direction: Direction::Nonincreasing },
        ConeDescriptor::Lorentz { dim: 3 },
        obtuse_wedge(),
    ];
    for k in &cones {
        let a = check_cross_subadditive(k, 400, 17, &t()).unwrap();
        let b = check_subadditive(k, &dual(k), 400, 17, &t()).unwrap();
        assert_eq!(a, b, "{k:?}");
    }
}

/// Wherever the isotonicity check finds nothing, the proof-chain
/// intermediate (subadditivity of P_K against the dual order) must find
/// nothing either, at the same budget and seed.
#[test]
fn isotone_cones_pass_the_cross_subadditive_chain() {
    let cones = [
        ConeDescriptor::Orthant { dim: 4 },
        ConeDescriptor::Monotone { dim: 4, direction: Direction::Nonincreasing },
        ConeDescriptor::Monotone { dim: 5, direction: Direction::Nondecreasing },
        ConeDescriptor::MonotoneNonneg { dim: 4, direction: Direction::Nonincreasing },
        ConeDescriptor::FinitelyGenerated {
            dim: 2,
            generators: vec![vec![1.0, 0.0], vec![1.0, 1.0]],
        },
    ];
    for k in &cones {
        let iso = check_isotone(k, k, 2_000, 19, &t()).unwrap();
        assert_eq!(iso.verdict, Verdict::Unfalsified, "{k:?}");
        let cross = check_cross_subadditive(k, 2_000, 19, &t()).unwrap();
        assert_eq!(cross.verdict, Verdict::Unfalsified, "{k:?}");
    }
}

#[test]
fn dimension_and_tolerance_validation() {
    let c = ConeDescriptor::Orthant { dim: 2 };
    let k = ConeDescriptor::Orthant { dim: 3 };
    match check_isotone(&c, &k, 10, 1, &t()) {
        Err(ConeError::DimensionMismatch { expected: 2, got: 3 }) => {}
        other => panic!("expected a dimension mismatch, got {other:?}"),
    }

    let bad_tol = Tolerance { membership_tol: 1e-12, solver_tol: 1e-8, max_iter: 100 };
    assert!(matches!(
        check_isotone(&c, &c, 10, 1, &bad_tol),
        Err(ConeError::InvalidTolerance(_))
    ));

    let zero_gen = ConeDescriptor::FinitelyGenerated {
        dim: 2,
        generators: vec![vec![0.0, 0.0]],
    };
    assert!(matches!(
        check_isotone(&zero_gen, &zero_gen, 10, 1, &t()),
        Err(ConeError::InvalidDescriptor(_))
    ));
}
