//! Dykstra's cyclic algorithm for the intersection of halfspaces
//! { x : ⟨a_i, x⟩ ≥ 0 }. Plain alternating projections onto an intersection
//! converge to some feasible point; the per-set correction terms are what
//! make the limit the nearest one.

use crate::cone::Tolerance;
use crate::error::{ConeError, Result};
use crate::vecs::{norm, scale};

/// Returns (point, cycles, residual) where residual is the largest
/// per-halfspace movement of the iterate over the final cycle, divided by
/// max(1,‖x‖); the iteration stops once that drops to solver_tol. The scale
/// factor keeps the stop rule equivariant: cones are invariant under
/// dilation, so projecting 100·x must behave exactly like projecting x.
pub(super) fn project(
    normals: &[Vec<f64>],
    x: &[f64],
    tol: &Tolerance,
) -> Result<(Vec<f64>, u64, f64)> {
    let n = x.len();
    let scale_x = 1f64.max(norm(x));
    let stop = tol.solver_tol * scale_x;
    // unit normals describe the same halfspaces
    let a: Vec<Vec<f64>> = normals.iter().map(|v| scale(v, 1.0 / norm(v))).collect();
    let m = a.len();

    let mut z = x.to_vec();
    let mut corr = vec![vec![0.0; n]; m];
    let mut y = vec![0.0; n];
    let mut max_move = 0.0;
    for cycle in 1..=tol.max_iter {
        max_move = 0.0_f64;
        for i in 0..m {
            // re-add this halfspace's correction, then project onto it
            for j in 0..n {
                y[j] = z[j] + corr[i][j];
            }
            let d = a[i].iter().zip(&y).map(|(p, q)| p * q).sum::<f64>();
            let step = d.min(0.0); // 0 when already feasible
            let mut move_sq = 0.0;
            for j in 0..n {
                let znew = y[j] - step * a[i][j];
                corr[i][j] = y[j] - znew;
                let dz = znew - z[j];
                move_sq += dz * dz;
                z[j] = znew;
            }
            max_move = max_move.max(move_sq.sqrt());
        }
        if max_move <= stop {
            return Ok((z, cycle, max_move / scale_x));
        }
    }
    Err(ConeError::NonConvergence { iterations: tol.max_iter, residual: max_move / scale_x })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t() -> Tolerance {
        Tolerance::default()
    }

    #[test]
    fn orthant_as_halfspaces() {
        let normals = vec![vec![1.0, 0.0], vec![0.0, 1.0]];
        let (p, cycles, res) = project(&normals, &[3.0, -2.0], &t()).unwrap();
        assert!((p[0] - 3.0).abs() < 1e-9 && p[1].abs() < 1e-9, "{p:?}");
        assert!(cycles >= 1);
        assert!(res <= t().solver_tol);
    }

    #[test]
    fn single_halfspace_is_exact() {
        let normals = vec![vec![0.0, 2.0]];
        let (p, _, _) = project(&normals, &[1.0, -3.0], &t()).unwrap();
        assert!((p[0] - 1.0).abs() < 1e-12 && p[1].abs() < 1e-12, "{p:?}");
    }

    #[test]
    fn matches_oracle_on_the_monotone_normals() {
        let normals = vec![vec![1.0, -1.0, 0.0], vec![0.0, 1.0, -1.0]];
        for x in [
            [2.0, 1.0, 3.0],
            [-1.0, 4.0, 0.5],
            [0.0, 0.0, 1.0],
            [-3.0, -2.0, -1.0],
        ] {
            let (p, _, _) = project(&normals, &x, &t()).unwrap();
            let q = conelab_oracle::project_halfspaces(&normals, &x);
            for (a, b) in p.iter().zip(&q) {
                assert!((a - b).abs() < 1e-7, "{p:?} vs {q:?}");
            }
        }
    }

    #[test]
    fn iteration_cap_reports_non_convergence() {
        let tight = Tolerance { max_iter: 1, ..Tolerance::default() };
        // needs several cycles: the two constraints interact at the apex
        let normals = vec![vec![1.0, -1.0], vec![0.0, 1.0]];
        let out = project(&normals, &[-2.0, -3.0], &tight);
        assert!(matches!(out, Err(ConeError::NonConvergence { .. })), "{out:?}");
    }
}
