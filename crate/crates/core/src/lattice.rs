//! The four lattice-like binary operations induced by a cone, and the
//! sampled invariance checker for sets.
//!
//! With L = dual(K): x ⊓_K y = P_{x−K}(y), x ⊔_K y = P_{x+K}(y), and the
//! same with L. When K is self-dual and its order is a lattice (the orthant
//! is both), ⊓ and ⊔ coincide with the order's inf and sup.

use serde::{Deserialize, Serialize};

use crate::cone::{dual, ConeDescriptor, Tolerance};
use crate::error::{ConeError, Result};
use crate::order::{report_from_samples, violation, Property, Witness};
use crate::sample::{scaled_cone_point, stream, TAG_INVARIANCE};
use crate::vecs::norm;
use crate::PropertyReport;
use crate::projection::{project_translated, Sign};

/// Which of the four operations; the L variants always use the symbolic
/// dual of the configured cone.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OpKind {
    MeetK,
    JoinK,
    MeetL,
    JoinL,
}

impl OpKind {
    pub const ALL: [OpKind; 4] = [OpKind::MeetK, OpKind::JoinK, OpKind::MeetL, OpKind::JoinL];

    /// The cone actually projected onto (K or its dual) and the translation
    /// sign.
    fn resolve(self, k: &ConeDescriptor) -> (ConeDescriptor, Sign) {
        match self {
            OpKind::MeetK => (k.clone(), Sign::Minus),
            OpKind::JoinK => (k.clone(), Sign::Plus),
            OpKind::MeetL => (dual(k), Sign::Minus),
            OpKind::JoinL => (dual(k), Sign::Plus),
        }
    }
}

/// Applies one lattice-like operation to (x, y) under the cone `k`.
pub fn lattice_op(
    kind: OpKind,
    x: &[f64],
    y: &[f64],
    k: &ConeDescriptor,
    tol: &Tolerance,
) -> Result<Vec<f64>> {
    let (cone, sign) = kind.resolve(k);
    project_translated(x, &cone, sign, y, tol)
}

/// Samples pairs from the set cone `c` and reports whether some lattice-like
/// operation under `k` maps a pair outside of `c` by more than
/// membership_tol, relative to the pair's scale. An unfalsified verdict is
/// sampled evidence, not a proof.
pub fn check_invariance(
    c: &ConeDescriptor,
    k: &ConeDescriptor,
    n_samples: u64,
    seed: u64,
    tol: &Tolerance,
) -> Result<PropertyReport> {
    c.validate()?;
    k.validate()?;
    tol.validate()?;
    if c.dim() != k.dim() {
        return Err(ConeError::DimensionMismatch { expected: c.dim(), got: k.dim() });
    }
    // resolve the four (cone, sign) pairs once; dual() is pure rewriting
    let ops: Vec<(OpKind, ConeDescriptor, Sign)> = OpKind::ALL
        .iter()
        .map(|&kind| {
            let (cone, sign) = kind.resolve(k);
            (kind, cone, sign)
        })
        .collect();

    let mut max_violation = 0.0_f64;
    let mut witness = None;
    'outer: for i in 0..n_samples {
        let mut rng = stream(seed, TAG_INVARIANCE, i);
        let x = scaled_cone_point(&mut rng, c, tol)?;
        let y = scaled_cone_point(&mut rng, c, tol)?;
        let anchor = norm(&x).max(norm(&y));
        for (kind, cone, sign) in &ops {
            let result = project_translated(&x, cone, *sign, &y, tol)?;
            let viol = violation(&result, c, anchor, tol)?;
            max_violation = max_violation.max(viol);
            if viol > tol.membership_tol {
                let mut w = Witness::new(i, viol);
                w.op = Some(*kind);
                w.vectors.insert("x".into(), x.clone());
                w.vectors.insert("y".into(), y.clone());
                w.vectors.insert("result".into(), result);
                witness = Some(w);
                break 'outer;
            }
        }
    }
    Ok(report_from_samples(
        Property::Invariance,
        n_samples,
        seed,
        max_violation,
        witness,
    ))
}
