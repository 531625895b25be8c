//! Cone descriptors, the induced pre-order, and the symbolic dual.

use serde::{Deserialize, Serialize};

use crate::error::{ConeError, Result};
use crate::projection;
use crate::vecs::{all_finite, norm, sub};

/// Sort order for the monotone cones.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Nonincreasing,
    Nondecreasing,
}

/// A closed convex cone in R^dim, described as data.
///
/// Descriptors are plain values: cheap to clone, serializable, compared
/// structurally. Every described set is a nonempty closed convex cone
/// containing 0. Pointedness is not required — the monotone cone contains a
/// line and is supported like any other.
///
/// JSON form (tag = `type`): `orthant`, `lorentz`, `monotone`,
/// `monotone_nonneg`, `generated`, `halfspaces`, `dual`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum ConeDescriptor {
    /// { x : x_i ≥ 0 for all i }
    Orthant { dim: usize },
    /// { (u, t) : ‖u‖ ≤ t } with t the last coordinate; dim ≥ 2
    Lorentz { dim: usize },
    /// { x : x_1 ≥ x_2 ≥ … ≥ x_dim } or the reverse
    Monotone { dim: usize, direction: Direction },
    /// Monotone intersected with the nonnegative orthant
    MonotoneNonneg { dim: usize, direction: Direction },
    /// { Σ λ_i g_i : λ_i ≥ 0 }
    #[serde(rename = "generated")]
    FinitelyGenerated { dim: usize, generators: Vec<Vec<f64>> },
    /// { x : ⟨a_i, x⟩ ≥ 0 for every normal a_i }
    #[serde(rename = "halfspaces")]
    HalfspaceIntersection { dim: usize, normals: Vec<Vec<f64>> },
    /// { y : ⟨x, y⟩ ≥ 0 for all x in `inner` } — kept symbolic when no
    /// rewrite applies; projected via the Moreau identity
    Dual { inner: Box<ConeDescriptor> },
}

use ConeDescriptor::*;

impl ConeDescriptor {
    /// Ambient dimension.
    pub fn dim(&self) -> usize {
        match self {
            Orthant { dim }
            | Lorentz { dim }
            | Monotone { dim, .. }
            | MonotoneNonneg { dim, .. }
            | FinitelyGenerated { dim, .. }
            | HalfspaceIntersection { dim, .. } => *dim,
            Dual { inner } => inner.dim(),
        }
    }

    /// Checks the structural invariants: positive dimension, embedded
    /// vectors of the right length with finite entries, no zero
    /// generators/normals, Lorentz dim ≥ 2.
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(ConeError::InvalidDescriptor(msg));
        if self.dim() == 0 {
            return bad("dimension must be positive".into());
        }
        match self {
            Orthant { .. } | Monotone { .. } | MonotoneNonneg { .. } => Ok(()),
            Lorentz { dim } => {
                if *dim < 2 {
                    bad(format!("lorentz cone needs dim >= 2, got {dim}"))
                } else {
                    Ok(())
                }
            }
            FinitelyGenerated { dim, generators: vs }
            | HalfspaceIntersection { dim, normals: vs } => {
                let what = if matches!(self, FinitelyGenerated { .. }) {
                    "generator"
                } else {
                    "normal"
                };
                if vs.is_empty() {
                    return bad(format!("at least one {what} required"));
                }
                for (i, v) in vs.iter().enumerate() {
                    if v.len() != *dim {
                        return bad(format!(
                            "{what} {i} has length {}, expected {dim}",
                            v.len()
                        ));
                    }
                    if !all_finite(v) {
                        return bad(format!("{what} {i} has non-finite entries"));
                    }
                    if norm(v) == 0.0 {
                        return bad(format!("{what} {i} is the zero vector"));
                    }
                }
                Ok(())
            }
            Dual { inner } => inner.validate(),
        }
    }
}

/// Numerical tolerances threaded through every operation.
///
/// `membership_tol` decides set-membership questions (relative to max(1,‖x‖)),
/// `solver_tol` is the stopping threshold of the iterative solvers, and
/// `max_iter` caps their iteration count. `membership_tol ≥ solver_tol ≥ 0`
/// is required so that a converged solve can never flip a membership verdict.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerance {
    pub membership_tol: f64,
    pub solver_tol: f64,
    pub max_iter: u64,
}

impl Default for Tolerance {
    fn default() -> Self {
        Tolerance {
            membership_tol: 1e-8,
            solver_tol: 1e-10,
            max_iter: 100_000,
        }
    }
}

impl Tolerance {
    pub fn new(membership_tol: f64, solver_tol: f64, max_iter: u64) -> Result<Self> {
        let t = Tolerance { membership_tol, solver_tol, max_iter };
        t.validate()?;
        Ok(t)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.membership_tol >= self.solver_tol && self.solver_tol >= 0.0) {
            return Err(ConeError::InvalidTolerance(format!(
                "need membership_tol >= solver_tol >= 0, got {} and {}",
                self.membership_tol, self.solver_tol
            )));
        }
        if self.max_iter == 0 {
            return Err(ConeError::InvalidTolerance("max_iter must be positive".into()));
        }
        Ok(())
    }

    /// Same tolerances with a 10× tighter solver threshold; used to
    /// re-verify falsification witnesses.
    pub fn tightened(&self) -> Tolerance {
        Tolerance { solver_tol: self.solver_tol / 10.0, ..*self }
    }
}

/// The dual cone K* = { y : ⟨x, y⟩ ≥ 0 for all x ∈ K } as a symbolic
/// rewrite — never a numerical approximation.
///
/// Rewrites: the orthant and Lorentz cones are self-dual; the dual of a
/// generated cone is the halfspace intersection over the same vectors and
/// vice versa (the extended Farkas lemma, i.e. (K*)* = K, makes the pair
/// involutive); the dual of the monotone cone is generated by the
/// consecutive-coordinate difference vectors; Dual{inner} collapses to
/// inner. Anything without a rewrite stays wrapped as Dual{K} and is
/// projected via the Moreau identity.
pub fn dual(k: &ConeDescriptor) -> ConeDescriptor {
    match k {
        Orthant { dim } => Orthant { dim: *dim },
        Lorentz { dim } => Lorentz { dim: *dim },
        Monotone { dim, direction } if *dim >= 2 => {
            // K = {x : ⟨d_i, x⟩ ≥ 0} for the difference vectors d_i, and the
            // dual of a halfspace-intersection cone is generated by its
            // normals.
            let sgn = match direction {
                Direction::Nonincreasing => 1.0,
                Direction::Nondecreasing => -1.0,
            };
            let generators = (0..dim - 1)
                .map(|i| {
                    let mut d = vec![0.0; *dim];
                    d[i] = sgn;
                    d[i + 1] = -sgn;
                    d
                })
                .collect();
            FinitelyGenerated { dim: *dim, generators }
        }
        FinitelyGenerated { dim, generators } => HalfspaceIntersection {
            dim: *dim,
            normals: generators.clone(),
        },
        HalfspaceIntersection { dim, normals } => FinitelyGenerated {
            dim: *dim,
            generators: normals.clone(),
        },
        Dual { inner } => (**inner).clone(),
        // no rewrite (Monotone{1} = R has no difference vectors;
        // MonotoneNonneg mixes the two constraint families)
        other => Dual { inner: Box::new(other.clone()) },
    }
}

/// Whether x lies in K, up to `membership_tol` relative to max(1, ‖x‖).
///
/// Defined uniformly through the projection distance ‖x − P_K(x)‖ so that
/// every descriptor variant gets the same semantics; there are no
/// representation-specific shortcuts.
pub fn membership(x: &[f64], k: &ConeDescriptor, tol: &Tolerance) -> Result<bool> {
    let d = projection::distance(x, k, tol)?;
    Ok(d <= tol.membership_tol * 1f64.max(norm(x)))
}

/// The pre-order induced by K: x ≤_K y ⟺ y − x ∈ K.
pub fn leq(x: &[f64], y: &[f64], k: &ConeDescriptor, tol: &Tolerance) -> Result<bool> {
    if x.len() != y.len() {
        return Err(ConeError::DimensionMismatch { expected: x.len(), got: y.len() });
    }
    membership(&sub(y, x), k, tol)
}

/// The eight cones exercised throughout the test suite and listed by the
/// CLI's `catalog` command. Every descriptor variant appears at least once;
/// the generated cone is simplicial, the halfspace cone is a tilted orthant,
/// and the dual wrapper sits on a cone with no symbolic rewrite.
pub fn catalog() -> Vec<ConeDescriptor> {
    vec![
        Orthant { dim: 3 },
        Lorentz { dim: 3 },
        Monotone { dim: 4, direction: Direction::Nonincreasing },
        Monotone { dim: 4, direction: Direction::Nondecreasing },
        MonotoneNonneg { dim: 4, direction: Direction::Nonincreasing },
        FinitelyGenerated {
            dim: 3,
            generators: vec![
                vec![1.0, 0.0, 0.0],
                vec![1.0, 1.0, 0.0],
                vec![1.0, 1.0, 1.0],
            ],
        },
        HalfspaceIntersection {
            dim: 3,
            normals: vec![
                vec![1.0, 0.0, 0.25],
                vec![-0.25, 1.0, 0.0],
                vec![0.0, -0.25, 1.0],
            ],
        },
        Dual {
            inner: Box::new(MonotoneNonneg { dim: 3, direction: Direction::Nonincreasing }),
        },
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dims_and_validation() {
        assert_eq!(Orthant { dim: 5 }.dim(), 5);
        assert_eq!(
            Dual { inner: Box::new(Lorentz { dim: 4 }) }.dim(),
            4
        );
        assert!(Lorentz { dim: 1 }.validate().is_err());
        assert!(FinitelyGenerated { dim: 2, generators: vec![] }.validate().is_err());
        assert!(FinitelyGenerated { dim: 2, generators: vec![vec![0.0, 0.0]] }
            .validate()
            .is_err());
        assert!(HalfspaceIntersection { dim: 2, normals: vec![vec![1.0]] }
            .validate()
            .is_err());
        for k in catalog() {
            k.validate().unwrap();
        }
    }

    #[test]
    fn dual_rewrites() {
        assert_eq!(dual(&Orthant { dim: 3 }), Orthant { dim: 3 });
        assert_eq!(dual(&Lorentz { dim: 4 }), Lorentz { dim: 4 });
        // double-dual collapse
        let k = FinitelyGenerated { dim: 2, generators: vec![vec![1.0, 0.0], vec![1.0, 1.0]] };
        assert_eq!(dual(&Dual { inner: Box::new(k.clone()) }), k);
        // generated <-> halfspaces over the same vectors
        assert_eq!(
            dual(&k),
            HalfspaceIntersection { dim: 2, normals: vec![vec![1.0, 0.0], vec![1.0, 1.0]] }
        );
        assert_eq!(dual(&dual(&k)), k);
    }

    #[test]
    fn monotone_dual_generators() {
        let d = dual(&Monotone { dim: 3, direction: Direction::Nonincreasing });
        assert_eq!(
            d,
            FinitelyGenerated {
                dim: 3,
                generators: vec![vec![1.0, -1.0, 0.0], vec![0.0, 1.0, -1.0]],
            }
        );
        let d = dual(&Monotone { dim: 3, direction: Direction::Nondecreasing });
        assert_eq!(
            d,
            FinitelyGenerated {
                dim: 3,
                generators: vec![vec![-1.0, 1.0, 0.0], vec![0.0, -1.0, 1.0]],
            }
        );
    }

    #[test]
    fn cones_without_rewrite_stay_symbolic() {
        let mnn = MonotoneNonneg { dim: 3, direction: Direction::Nonincreasing };
        assert_eq!(dual(&mnn), Dual { inner: Box::new(mnn.clone()) });
        assert_eq!(dual(&dual(&mnn)), mnn);
        // Monotone{1} is the whole line; its dual has no generators to list
        let line = Monotone { dim: 1, direction: Direction::Nonincreasing };
        assert_eq!(dual(&line), Dual { inner: Box::new(line.clone()) });
    }

    #[test]
    fn tolerance_invariants() {
        let t = Tolerance::default();
        assert_eq!(t.membership_tol, 1e-8);
        assert_eq!(t.solver_tol, 1e-10);
        assert_eq!(t.max_iter, 100_000);
        t.validate().unwrap();
        assert!(Tolerance::new(1e-10, 1e-8, 100).is_err());
        assert!(Tolerance::new(1e-8, -1.0, 100).is_err());
        assert!(Tolerance::new(1e-8, 1e-10, 0).is_err());
        let tight = t.tightened();
        assert_eq!(tight.solver_tol, t.solver_tol / 10.0);
        assert_eq!(tight.membership_tol, t.membership_tol);
    }
}
