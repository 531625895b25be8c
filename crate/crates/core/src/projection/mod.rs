//! Metric projections for every cone descriptor, the Moreau decomposition,
//! and projections onto translated cones.

mod dykstra;
mod nnls;
mod pava;

use serde::{Deserialize, Serialize};

use crate::cone::{dual, ConeDescriptor, Tolerance};
use crate::error::{ConeError, Result};
use crate::vecs::{add, all_finite, dot, neg, norm, scale, sub};

/// Which solver produced a projection.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    ClosedForm,
    Pava,
    NnlsActiveSet,
    Dykstra,
    Moreau,
}

/// A projected point with solver diagnostics. `iterations` is 0 for the
/// closed-form paths; `residual` is the solver's own stopping metric and is
/// at most `solver_tol` on success.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProjectionResult {
    pub point: Vec<f64>,
    pub iterations: u64,
    pub residual: f64,
    pub method: Method,
}

impl ProjectionResult {
    fn exact(point: Vec<f64>, method: Method) -> Self {
        ProjectionResult { point, iterations: 0, residual: 0.0, method }
    }
}

/// Direction of translation in [`project_translated`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Sign {
    Plus,
    Minus,
}

fn check_input(x: &[f64], k: &ConeDescriptor) -> Result<()> {
    k.validate()?;
    if x.len() != k.dim() {
        return Err(ConeError::DimensionMismatch { expected: k.dim(), got: x.len() });
    }
    if !all_finite(x) {
        return Err(ConeError::NonFiniteInput("projection input"));
    }
    Ok(())
}

/// The nearest point of `x` in the cone described by `k`.
///
/// Dispatch: orthant → componentwise clamp; Lorentz → closed form; monotone
/// → pool-adjacent-violators; monotone-nonneg → PAVA then clamp at 0;
/// generated → nonnegative least squares by active set; halfspace
/// intersection → Dykstra's cyclic algorithm; Dual{inner} → the Moreau
/// identity P_{K*}(x) = x + P_K(−x).
pub fn project(x: &[f64], k: &ConeDescriptor, tol: &Tolerance) -> Result<ProjectionResult> {
    check_input(x, k)?;
    tol.validate()?;
    // 0 is in every cone; never hand it to an iterative path
    if x.iter().all(|&v| v == 0.0) {
        return Ok(ProjectionResult::exact(x.to_vec(), Method::ClosedForm));
    }
    match k {
        ConeDescriptor::Orthant { .. } => Ok(ProjectionResult::exact(
            x.iter().map(|&v| v.max(0.0)).collect(),
            Method::ClosedForm,
        )),
        ConeDescriptor::Lorentz { .. } => Ok(ProjectionResult::exact(
            project_lorentz(x),
            Method::ClosedForm,
        )),
        ConeDescriptor::Monotone { direction, .. } => Ok(ProjectionResult::exact(
            pava::project_monotone(x, *direction),
            Method::Pava,
        )),
        ConeDescriptor::MonotoneNonneg { direction, .. } => {
            // clamping the isotonic fit at a constant bound preserves
            // optimality for box-constrained isotonic regression
            let p = pava::project_monotone(x, *direction);
            Ok(ProjectionResult::exact(
                p.iter().map(|&v| v.max(0.0)).collect(),
                Method::Pava,
            ))
        }
        ConeDescriptor::FinitelyGenerated { generators, .. } => {
            let (point, iterations, residual) = nnls::project(generators, x, tol)?;
            Ok(ProjectionResult { point, iterations, residual, method: Method::NnlsActiveSet })
        }
        ConeDescriptor::HalfspaceIntersection { normals, .. } => {
            let (point, iterations, residual) = dykstra::project(normals, x, tol)?;
            Ok(ProjectionResult { point, iterations, residual, method: Method::Dykstra })
        }
        ConeDescriptor::Dual { inner } => {
            // Moreau: x = P_K(x) − P_{K*}(−x), so P_{K*}(x) = x + P_K(−x)
            let r = project(&neg(x), inner, tol)?;
            Ok(ProjectionResult {
                point: add(x, &r.point),
                iterations: r.iterations,
                residual: r.residual,
                method: Method::Moreau,
            })
        }
    }
}

/// Closed-form projection onto {(u, t) : ‖u‖ ≤ t}. The branch split is
/// continuous at the boundary ties ‖u‖ = |t|.
fn project_lorentz(x: &[f64]) -> Vec<f64> {
    let n = x.len();
    let (u, t) = (&x[..n - 1], x[n - 1]);
    let r = norm(u);
    if r <= t {
        x.to_vec() // already in the cone
    } else if r <= -t {
        vec![0.0; n] // in the polar cone; nearest point is the apex
    } else {
        let s = 0.5 * (r + t);
        let mut p = scale(u, s / r);
        p.push(s);
        p
    }
}

/// Distance from x to the cone, ‖x − P_K(x)‖.
pub fn distance(x: &[f64], k: &ConeDescriptor, tol: &Tolerance) -> Result<f64> {
    let p = project(x, k, tol)?;
    Ok(norm(&sub(x, &p.point)))
}

/// The Moreau decomposition x = p − q with p = P_K(x), q = P_{K*}(−x) and
/// ⟨p, q⟩ = 0.
///
/// Both identities are re-verified before returning (reconstruction within
/// 10·membership_tol·max(1,‖x‖), orthogonality within
/// 10·membership_tol·max(1,‖x‖²)); a violation signals a broken projection,
/// not bad input, and comes back as `ConsistencyFailure`.
pub fn moreau_decompose(
    x: &[f64],
    k: &ConeDescriptor,
    tol: &Tolerance,
) -> Result<(Vec<f64>, Vec<f64>)> {
    let p = project(x, k, tol)?.point;
    let q = project(&neg(x), &dual(k), tol)?.point;
    let nx = norm(x);
    let recon = norm(&sub(x, &sub(&p, &q)));
    let ortho = dot(&p, &q).abs();
    if recon > 10.0 * tol.membership_tol * 1f64.max(nx) {
        return Err(ConeError::ConsistencyFailure(format!(
            "moreau reconstruction error {recon:.3e} for |x| = {nx:.3e}"
        )));
    }
    if ortho > 10.0 * tol.membership_tol * 1f64.max(nx * nx) {
        return Err(ConeError::ConsistencyFailure(format!(
            "moreau orthogonality defect {ortho:.3e} for |x| = {nx:.3e}"
        )));
    }
    Ok((p, q))
}

/// Projection onto the translated cone base + K (sign +) or base − K
/// (sign −): projection commutes with translation and point reflection, so
/// this is base ± P_K(±(y − base)).
pub fn project_translated(
    base: &[f64],
    k: &ConeDescriptor,
    sign: Sign,
    y: &[f64],
    tol: &Tolerance,
) -> Result<Vec<f64>> {
    if base.len() != y.len() {
        return Err(ConeError::DimensionMismatch { expected: base.len(), got: y.len() });
    }
    match sign {
        Sign::Plus => Ok(add(base, &project(&sub(y, base), k, tol)?.point)),
        Sign::Minus => Ok(sub(base, &project(&sub(base, y), k, tol)?.point)),
    }
}
