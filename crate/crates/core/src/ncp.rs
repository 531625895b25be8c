//! Projection fixed-point solver for cone complementarity problems:
//! find x ∈ K with f(x) ∈ K* and ⟨x, f(x)⟩ = 0, equivalently
//! x = P_K(x − f(x)). The iteration is x ← P_K(x − αf(x)); α = 1 is the
//! plain fixed-point map, and convergence is an empirical, per-instance
//! outcome — `converged = false` is a normal result, not an error.

use serde::{Deserialize, Serialize};

use crate::cone::{dual, ConeDescriptor, Tolerance};
use crate::error::{ConeError, Result};
use crate::projection::{distance, project};
use crate::vecs::{all_finite, dot, norm, sub};

/// An opaque user-supplied map for [`NcpMap::Callback`].
pub type NcpCallback = Box<dyn Fn(&[f64]) -> Vec<f64> + Send + Sync>;

/// The map f, either an affine f(x) = Mx + q (M row-major) or an opaque
/// callback. Only the affine form has a wire representation.
pub enum NcpMap {
    Affine { m: Vec<Vec<f64>>, q: Vec<f64> },
    Callback(NcpCallback),
}

impl std::fmt::Debug for NcpMap {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            NcpMap::Affine { m, q } => f.debug_struct("Affine").field("m", m).field("q", q).finish(),
            NcpMap::Callback(_) => f.write_str("Callback(..)"),
        }
    }
}

impl NcpMap {
    fn eval(&self, x: &[f64]) -> Vec<f64> {
        match self {
            NcpMap::Affine { m, q } => m
                .iter()
                .zip(q)
                .map(|(row, qi)| dot(row, x) + qi)
                .collect(),
            NcpMap::Callback(f) => f(x),
        }
    }
}

/// A complementarity instance: the cone, the map, and the step size α > 0
/// of the fixed-point iteration (default 1, the plain iteration).
#[derive(Debug)]
pub struct NcpProblem {
    pub cone: ConeDescriptor,
    pub f: NcpMap,
    pub step: f64,
}

impl NcpProblem {
    pub fn affine(cone: ConeDescriptor, m: Vec<Vec<f64>>, q: Vec<f64>) -> Self {
        NcpProblem { cone, f: NcpMap::Affine { m, q }, step: 1.0 }
    }

    pub fn with_step(mut self, step: f64) -> Self {
        self.step = step;
        self
    }

    fn validate(&self) -> Result<()> {
        self.cone.validate()?;
        let n = self.cone.dim();
        if !(self.step > 0.0 && self.step.is_finite()) {
            return Err(ConeError::InvalidDescriptor(format!(
                "step must be a positive real, got {}",
                self.step
            )));
        }
        if let NcpMap::Affine { m, q } = &self.f {
            if q.len() != n {
                return Err(ConeError::DimensionMismatch { expected: n, got: q.len() });
            }
            if m.len() != n || m.iter().any(|row| row.len() != n) {
                return Err(ConeError::InvalidDescriptor(format!(
                    "affine map needs a {n}x{n} matrix"
                )));
            }
            if m.iter().any(|row| !all_finite(row)) || !all_finite(q) {
                return Err(ConeError::NonFiniteInput("affine map coefficients"));
            }
        }
        Ok(())
    }

    fn apply(&self, x: &[f64]) -> Result<Vec<f64>> {
        let fx = self.f.eval(x);
        if fx.len() != x.len() {
            return Err(ConeError::DimensionMismatch { expected: x.len(), got: fx.len() });
        }
        if !all_finite(&fx) {
            return Err(ConeError::NonFiniteInput("f(x)"));
        }
        Ok(fx)
    }
}

/// A candidate solution with the full residual picture. `converged` holds
/// exactly when fixed_point_residual, primal_dist and dual_dist are all
/// ≤ solver_tol·max(1,‖x‖) and complementarity_gap ≤
/// solver_tol·max(1,‖x‖·‖f(x)‖).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NcpSolution {
    pub x: Vec<f64>,
    pub iterations: u64,
    /// ‖x − P_K(x − αf(x))‖
    pub fixed_point_residual: f64,
    /// |⟨x, f(x)⟩|
    pub complementarity_gap: f64,
    /// dist(x, K)
    pub primal_dist: f64,
    /// dist(f(x), K*)
    pub dual_dist: f64,
    pub converged: bool,
}

/// Residuals at x plus the already-projected next iterate P_K(x − αf(x)).
fn diagnostics(
    x: &[f64],
    problem: &NcpProblem,
    tol: &Tolerance,
) -> Result<(NcpSolution, Vec<f64>)> {
    let fx = problem.apply(x)?;
    let y: Vec<f64> = x
        .iter()
        .zip(&fx)
        .map(|(xi, fi)| xi - problem.step * fi)
        .collect();
    let next = project(&y, &problem.cone, tol)?.point;
    let fixed_point_residual = norm(&sub(x, &next));
    let complementarity_gap = dot(x, &fx).abs();
    let primal_dist = distance(x, &problem.cone, tol)?;
    let dual_dist = distance(&fx, &dual(&problem.cone), tol)?;
    let nx = norm(x);
    let scale = tol.solver_tol * 1f64.max(nx);
    let converged = fixed_point_residual <= scale
        && primal_dist <= scale
        && dual_dist <= scale
        && complementarity_gap <= tol.solver_tol * 1f64.max(nx * norm(&fx));
    Ok((
        NcpSolution {
            x: x.to_vec(),
            iterations: 0,
            fixed_point_residual,
            complementarity_gap,
            primal_dist,
            dual_dist,
            converged,
        },
        next,
    ))
}

/// All four residuals for an arbitrary candidate x, without iterating.
pub fn residuals(x: &[f64], problem: &NcpProblem, tol: &Tolerance) -> Result<NcpSolution> {
    problem.validate()?;
    tol.validate()?;
    if x.len() != problem.cone.dim() {
        return Err(ConeError::DimensionMismatch { expected: problem.cone.dim(), got: x.len() });
    }
    if !all_finite(x) {
        return Err(ConeError::NonFiniteInput("candidate x"));
    }
    Ok(diagnostics(x, problem, tol)?.0)
}

/// Runs x ← P_K(x − αf(x)) from P_K(x0) until the residual criteria are met
/// or max_iter steps elapse. Residuals are evaluated before each step, so a
/// fixed point is recognized without a wasted iteration. Errors only on
/// malformed input or a diverging iterate (‖x‖ > 1e12); plain
/// non-convergence is reported through `converged = false`.
pub fn solve(
    problem: &NcpProblem,
    x0: &[f64],
    max_iter: u64,
    tol: &Tolerance,
) -> Result<NcpSolution> {
    problem.validate()?;
    tol.validate()?;
    if x0.len() != problem.cone.dim() {
        return Err(ConeError::DimensionMismatch { expected: problem.cone.dim(), got: x0.len() });
    }
    if !all_finite(x0) {
        return Err(ConeError::NonFiniteInput("x0"));
    }
    let mut x = project(x0, &problem.cone, tol)?.point;
    let mut iterations: u64 = 0;
    loop {
        let (mut sol, next) = diagnostics(&x, problem, tol)?;
        sol.iterations = iterations;
        if sol.converged || iterations >= max_iter {
            return Ok(sol);
        }
        x = next;
        iterations += 1;
        let nx = norm(&x);
        if nx > 1e12 {
            return Err(ConeError::NumericalBlowup { norm: nx });
        }
    }
}

/// Largest eigenvalue of a symmetric positive semidefinite matrix by power
/// iteration (deterministic ramp start). Used for the step heuristic
/// α = 1/λ_max on affine symmetric positive definite problems.
pub fn lambda_max_estimate(m: &[Vec<f64>], steps: usize) -> f64 {
    let n = m.len();
    let mut v: Vec<f64> = (0..n).map(|i| 1.0 + i as f64 / n as f64).collect();
    let nv = norm(&v);
    v = v.iter().map(|x| x / nv).collect();
    for _ in 0..steps {
        let w: Vec<f64> = m.iter().map(|row| dot(row, &v)).collect();
        let nw = norm(&w);
        if nw == 0.0 {
            return 0.0;
        }
        v = w.iter().map(|x| x / nw).collect();
    }
    let mv: Vec<f64> = m.iter().map(|row| dot(row, &v)).collect();
    dot(&v, &mv)
}

/// Wire form of the affine map: {"type":"affine","M":[[...]],"q":[...]}.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum NcpMapSpec {
    Affine {
        #[serde(rename = "M")]
        m: Vec<Vec<f64>>,
        q: Vec<f64>,
    },
}

/// Wire form of a whole instance:
/// {"cone":{...},"f":{"type":"affine",...},"step":1.0,"x0":[...]}.
/// `step` defaults to 1 and `x0` to the origin.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NcpInstance {
    pub cone: ConeDescriptor,
    pub f: NcpMapSpec,
    #[serde(default = "default_step")]
    pub step: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub x0: Option<Vec<f64>>,
}

fn default_step() -> f64 {
    1.0
}

impl NcpInstance {
    /// Splits into the solvable problem and the start point.
    pub fn into_parts(self) -> (NcpProblem, Vec<f64>) {
        let x0 = self.x0.unwrap_or_else(|| vec![0.0; self.cone.dim()]);
        let NcpMapSpec::Affine { m, q } = self.f;
        (NcpProblem { cone: self.cone, f: NcpMap::Affine { m, q }, step: self.step }, x0)
    }
}
