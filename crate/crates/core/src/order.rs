//! Randomized falsifiers for order properties of projections: isotonicity,
//! subadditivity, and the duality between them.
//!
//! For mutually dual closed convex cones K and L, "P_K is K-isotone" and
//! "P_L is L-subadditive" are equivalent. The checkers here cannot prove
//! either side — an unfalsified verdict is evidence only — but a falsified
//! one comes with a concrete witness, and the two verdicts must agree.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::cone::{dual, ConeDescriptor, Tolerance};
use crate::error::{ConeError, Result};
use crate::lattice::OpKind;
use crate::projection::{distance, project, project_translated};
use crate::sample::{scaled_cone_point, scaled_gaussian, stream, TAG_ISOTONE, TAG_SUBADDITIVE};
use crate::vecs::{add, norm, sub};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Property {
    Isotone,
    Subadditive,
    Invariance,
    Duality,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Unfalsified,
    Falsified,
}

/// The inputs and intermediate vectors of a falsifying sample, keyed by
/// name (BTreeMap so serialization order is stable). `violation` is the
/// distance of the offending vector to the order cone, divided by the
/// sample's scale max(1, largest input norm).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Witness {
    pub sample_index: u64,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub op: Option<OpKind>,
    pub vectors: BTreeMap<String, Vec<f64>>,
    pub violation: f64,
}

impl Witness {
    pub(crate) fn new(sample_index: u64, violation: f64) -> Self {
        Witness { sample_index, op: None, vectors: BTreeMap::new(), violation }
    }
}

/// Outcome of one randomized check. Invariants: the verdict is falsified
/// exactly when a witness is present, exactly when max_violation exceeds
/// membership_tol; identical (descriptor, samples, seed, tolerance) inputs
/// reproduce the report bit for bit.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PropertyReport {
    pub property: Property,
    pub verdict: Verdict,
    /// the requested sample budget (falsification exits early but still
    /// reports the budget it was given)
    pub samples: u64,
    pub seed: u64,
    pub max_violation: f64,
    pub witness: Option<Witness>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub note: Option<String>,
    /// duality embeds its isotone and subadditive sub-reports here
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub sub_reports: Option<Vec<PropertyReport>>,
}

const EVIDENCE_NOTE: &str = "unfalsified by sampling; evidence, not a proof";

/// How far z sticks out of the cone, relative to the scale of the sample
/// that produced it. `anchor` is the largest input norm of the sample. The
/// divisor max(1, anchor) matches the solvers' accuracy model — absolute
/// error proportional to the scale of what they were asked to project — so
/// solver noise stays far below membership_tol at every sampled radius,
/// and the measured violation is invariant under dilating the sample.
/// Normalizing by ‖z‖ instead would amplify noise whenever the defect
/// vector is much smaller than the inputs it came from.
pub(crate) fn violation(
    z: &[f64],
    k: &ConeDescriptor,
    anchor: f64,
    tol: &Tolerance,
) -> Result<f64> {
    Ok(distance(z, k, tol)? / 1f64.max(anchor))
}

pub(crate) fn report_from_samples(
    property: Property,
    samples: u64,
    seed: u64,
    max_violation: f64,
    witness: Option<Witness>,
) -> PropertyReport {
    let verdict = if witness.is_some() { Verdict::Falsified } else { Verdict::Unfalsified };
    let note = match verdict {
        Verdict::Unfalsified => Some(EVIDENCE_NOTE.to_string()),
        Verdict::Falsified => None,
    };
    PropertyReport { property, verdict, samples, seed, max_violation, witness, note, sub_reports: None }
}

fn check_dims(c: &ConeDescriptor, k: &ConeDescriptor, tol: &Tolerance) -> Result<()> {
    c.validate()?;
    k.validate()?;
    tol.validate()?;
    if c.dim() != k.dim() {
        return Err(ConeError::DimensionMismatch { expected: c.dim(), got: k.dim() });
    }
    Ok(())
}

/// Does u ≤_K v imply P_C(u) ≤_K P_C(v)? Samples u gaussian (log-uniform
/// radius) and v = u + (cone point of K), then tests whether
/// P_C(v) − P_C(u) leaves K.
pub fn check_isotone(
    c: &ConeDescriptor,
    k: &ConeDescriptor,
    n_samples: u64,
    seed: u64,
    tol: &Tolerance,
) -> Result<PropertyReport> {
    check_dims(c, k, tol)?;
    let n = c.dim();
    let mut max_violation = 0.0_f64;
    let mut witness = None;
    for i in 0..n_samples {
        let mut rng = stream(seed, TAG_ISOTONE, i);
        let u = scaled_gaussian(&mut rng, n);
        let step = scaled_cone_point(&mut rng, k, tol)?;
        let v = add(&u, &step);
        let pu = project(&u, c, tol)?.point;
        let pv = project(&v, c, tol)?.point;
        let diff = sub(&pv, &pu);
        let viol = violation(&diff, k, norm(&u).max(norm(&v)), tol)?;
        max_violation = max_violation.max(viol);
        if viol > tol.membership_tol {
            let mut w = Witness::new(i, viol);
            w.vectors.insert("u".into(), u);
            w.vectors.insert("v".into(), v);
            w.vectors.insert("pu".into(), pu);
            w.vectors.insert("pv".into(), pv);
            w.vectors.insert("diff".into(), diff);
            witness = Some(w);
            break;
        }
    }
    Ok(report_from_samples(Property::Isotone, n_samples, seed, max_violation, witness))
}

/// Does P_C(u) + P_C(v) − P_C(u+v) stay in K? Samples independent gaussian
/// pairs at log-uniform radii.
pub fn check_subadditive(
    c: &ConeDescriptor,
    k: &ConeDescriptor,
    n_samples: u64,
    seed: u64,
    tol: &Tolerance,
) -> Result<PropertyReport> {
    check_dims(c, k, tol)?;
    let n = c.dim();
    let mut max_violation = 0.0_f64;
    let mut witness = None;
    for i in 0..n_samples {
        let mut rng = stream(seed, TAG_SUBADDITIVE, i);
        let u = scaled_gaussian(&mut rng, n);
        let v = scaled_gaussian(&mut rng, n);
        let uv = add(&u, &v);
        let pu = project(&u, c, tol)?.point;
        let pv = project(&v, c, tol)?.point;
        let puv = project(&uv, c, tol)?.point;
        let diff = sub(&add(&pu, &pv), &puv);
        let viol = violation(&diff, k, norm(&u).max(norm(&v)).max(norm(&uv)), tol)?;
        max_violation = max_violation.max(viol);
        if viol > tol.membership_tol {
            let mut w = Witness::new(i, viol);
            w.vectors.insert("u".into(), u);
            w.vectors.insert("v".into(), v);
            w.vectors.insert("pu".into(), pu);
            w.vectors.insert("pv".into(), pv);
            w.vectors.insert("puv".into(), puv);
            w.vectors.insert("diff".into(), diff);
            witness = Some(w);
            break;
        }
    }
    Ok(report_from_samples(Property::Subadditive, n_samples, seed, max_violation, witness))
}

/// The intermediate property from the duality's proof chain: is P_K
/// L-subadditive for L = dual(K)? Identical to [`check_subadditive`] with
/// projector K and order cone L.
pub fn check_cross_subadditive(
    k: &ConeDescriptor,
    n_samples: u64,
    seed: u64,
    tol: &Tolerance,
) -> Result<PropertyReport> {
    check_subadditive(k, &dual(k), n_samples, seed, tol)
}

/// Tests the duality "P_K is K-isotone ⟺ P_L is L-subadditive" by running
/// both falsifiers and comparing verdicts. Matching verdicts — both
/// unfalsified or both falsified — are consistent with the equivalence and
/// yield an unfalsified duality report; a mismatch is reported falsified
/// and indicates an implementation or tolerance defect, not a property of
/// the cone. The subadditive side gets 4× the samples because its witness
/// space (unconstrained pairs) is larger.
pub fn check_duality(
    k: &ConeDescriptor,
    n_samples: u64,
    seed: u64,
    tol: &Tolerance,
) -> Result<PropertyReport> {
    let l = dual(k);
    let iso = check_isotone(k, k, n_samples, seed, tol)?;
    let sub = check_subadditive(&l, &l, 4 * n_samples, seed, tol)?;
    let agree = iso.verdict == sub.verdict;
    let (verdict, max_violation, witness, note) = if agree {
        (
            Verdict::Unfalsified,
            0.0,
            None,
            Some(format!(
                "verdicts agree (both {}); {}",
                match iso.verdict {
                    Verdict::Unfalsified => "unfalsified",
                    Verdict::Falsified => "falsified",
                },
                EVIDENCE_NOTE
            )),
        )
    } else {
        // exactly one side is falsified; surface its witness
        let bad = if iso.verdict == Verdict::Falsified { &iso } else { &sub };
        (
            Verdict::Falsified,
            bad.max_violation,
            bad.witness.clone(),
            Some("sub-verdicts disagree: numerical inconsistency with the isotone/subadditive duality; suspect the implementation or the tolerances".to_string()),
        )
    };
    Ok(PropertyReport {
        property: Property::Duality,
        verdict,
        samples: n_samples,
        seed,
        max_violation,
        witness,
        note,
        sub_reports: Some(vec![iso, sub]),
    })
}

/// Recomputes a falsified report's violation from the witness inputs alone,
/// at a 10× tighter solver tolerance. A genuine witness stays well above
/// membership_tol/2; one manufactured by solver noise collapses.
///
/// `c` and `k` are the projector/set cone and order cone the original check
/// ran with; for a duality report, re-verify its embedded sub-reports
/// instead (isotone ran on (K, K), subadditive on (L, L)).
pub fn reverify_witness(
    report: &PropertyReport,
    c: &ConeDescriptor,
    k: &ConeDescriptor,
    tol: &Tolerance,
) -> Result<f64> {
    let w = report.witness.as_ref().ok_or_else(|| {
        ConeError::ConsistencyFailure("report has no witness to re-verify".into())
    })?;
    let tight = tol.tightened();
    let get = |name: &str| -> Result<&Vec<f64>> {
        w.vectors.get(name).ok_or_else(|| {
            ConeError::ConsistencyFailure(format!("witness lacks vector '{name}'"))
        })
    };
    match report.property {
        Property::Isotone => {
            let u = get("u")?;
            let v = get("v")?;
            let pu = project(u, c, &tight)?.point;
            let pv = project(v, c, &tight)?.point;
            violation(&sub(&pv, &pu), k, norm(u).max(norm(v)), &tight)
        }
        Property::Subadditive => {
            let u = get("u")?;
            let v = get("v")?;
            let uv = add(u, v);
            let pu = project(u, c, &tight)?.point;
            let pv = project(v, c, &tight)?.point;
            let puv = project(&uv, c, &tight)?.point;
            let anchor = norm(u).max(norm(v)).max(norm(&uv));
            violation(&sub(&add(&pu, &pv), &puv), k, anchor, &tight)
        }
        Property::Invariance => {
            let kind = w.op.ok_or_else(|| {
                ConeError::ConsistencyFailure("invariance witness lacks the operation".into())
            })?;
            let (cone, sign) = match kind {
                OpKind::MeetK => (k.clone(), crate::projection::Sign::Minus),
                OpKind::JoinK => (k.clone(), crate::projection::Sign::Plus),
                OpKind::MeetL => (dual(k), crate::projection::Sign::Minus),
                OpKind::JoinL => (dual(k), crate::projection::Sign::Plus),
            };
            let x = get("x")?;
            let y = get("y")?;
            let result = project_translated(x, &cone, sign, y, &tight)?;
            violation(&result, c, norm(x).max(norm(y)), &tight)
        }
        Property::Duality => Err(ConeError::ConsistencyFailure(
            "duality reports have no witness of their own; re-verify the sub-reports".into(),
        )),
    }
}
