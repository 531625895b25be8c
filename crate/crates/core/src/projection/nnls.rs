//! Projection onto a finitely generated cone via nonnegative least squares:
//! min_{λ ≥ 0} ‖Gλ − x‖, projected point Gλ. Lawson–Hanson active set.

use nalgebra::{DMatrix, DVector};

use crate::cone::Tolerance;
use crate::error::{ConeError, Result};
use crate::vecs::{norm, scale};

/// Returns (point, iterations, residual). `iterations` counts least-squares
/// solves; `residual` is the worst positive dual value max_j ⟨g_j, x − Gλ⟩
/// scaled by max(1, ‖x‖), which is ≤ solver_tol at a KKT point.
pub(super) fn project(
    generators: &[Vec<f64>],
    x: &[f64],
    tol: &Tolerance,
) -> Result<(Vec<f64>, u64, f64)> {
    let n = x.len();
    let m = generators.len();
    // unit columns describe the same cone and keep the dual tolerance scale-free
    let cols: Vec<Vec<f64>> = generators.iter().map(|g| scale(g, 1.0 / norm(g))).collect();
    let g = DMatrix::from_fn(n, m, |r, c| cols[c][r]);
    let xv = DVector::from_column_slice(x);
    let scale_x = 1f64.max(norm(x));
    let eps = tol.solver_tol * scale_x;

    let mut lambda = DVector::zeros(m);
    let mut passive = vec![false; m];
    let mut iterations: u64 = 0;

    let wmax_free = |w: &DVector<f64>, passive: &[bool]| {
        (0..m)
            .filter(|&j| !passive[j])
            .map(|j| (j, w[j]))
            .max_by(|a, b| a.1.total_cmp(&b.1))
    };

    loop {
        let w = g.transpose() * (&xv - &g * &lambda);
        let candidate = wmax_free(&w, &passive);
        let done = match candidate {
            None => true,
            Some((_, wj)) => wj <= eps,
        };
        if done {
            let worst = w.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
            let point = (&g * &lambda).iter().copied().collect();
            return Ok((point, iterations, worst.max(0.0) / scale_x));
        }
        passive[candidate.unwrap().0] = true;

        // inner loop: restore λ ≥ 0 on the passive set
        loop {
            iterations += 1;
            if iterations > tol.max_iter {
                let worst = candidate.map(|c| c.1).unwrap_or(0.0);
                return Err(ConeError::NonConvergence {
                    iterations: tol.max_iter,
                    residual: worst / scale_x,
                });
            }
            let idx: Vec<usize> = (0..m).filter(|&j| passive[j]).collect();
            let gp = g.select_columns(&idx);
            let z = gp
                .clone()
                .svd(true, true)
                .solve(&xv, 1e-13)
                .expect("SVD least-squares solve cannot fail");
            if z.iter().all(|&v| v >= 0.0) {
                lambda.fill(0.0);
                for (k, &j) in idx.iter().enumerate() {
                    lambda[j] = z[k];
                }
                break;
            }
            // step toward z until the first coefficient hits zero; on ties
            // the lowest index wins (strict < keeps the first minimum)
            let mut alpha = f64::INFINITY;
            let mut drop_j = idx[0];
            for (k, &j) in idx.iter().enumerate() {
                if z[k] <= 0.0 {
                    let denom = lambda[j] - z[k];
                    let ratio = if denom > 0.0 { lambda[j] / denom } else { 0.0 };
                    if ratio < alpha {
                        alpha = ratio;
                        drop_j = j;
                    }
                }
            }
            for (k, &j) in idx.iter().enumerate() {
                lambda[j] += alpha * (z[k] - lambda[j]);
            }
            lambda[drop_j] = 0.0;
            passive[drop_j] = false;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t() -> Tolerance {
        Tolerance::default()
    }

    #[test]
    fn wedge_known_value() {
        let gens = vec![vec![1.0, 0.0], vec![1.0, 1.0]];
        let (p, _, res) = project(&gens, &[-1.0, 2.0], &t()).unwrap();
        assert!((p[0] - 0.5).abs() < 1e-12 && (p[1] - 0.5).abs() < 1e-12, "{p:?}");
        assert!(res <= t().solver_tol);
    }

    #[test]
    fn inside_point_is_fixed() {
        let gens = vec![vec![1.0, 0.0], vec![1.0, 1.0]];
        let (p, _, _) = project(&gens, &[3.0, 1.0], &t()).unwrap();
        assert!((p[0] - 3.0).abs() < 1e-10 && (p[1] - 1.0).abs() < 1e-10, "{p:?}");
    }

    #[test]
    fn polar_point_goes_to_apex() {
        // (−1,−1) has nonpositive inner product with both generators
        let gens = vec![vec![1.0, 0.0], vec![0.0, 1.0]];
        let (p, _, _) = project(&gens, &[-1.0, -1.0], &t()).unwrap();
        assert!(norm(&p) < 1e-12, "{p:?}");
    }

    #[test]
    fn redundant_generators_are_harmless() {
        // duplicated and positively dependent columns
        let gens = vec![
            vec![1.0, 0.0],
            vec![1.0, 0.0],
            vec![2.0, 0.0],
            vec![1.0, 1.0],
        ];
        let (p, _, _) = project(&gens, &[-1.0, 2.0], &t()).unwrap();
        assert!((p[0] - 0.5).abs() < 1e-10 && (p[1] - 0.5).abs() < 1e-10, "{p:?}");
    }

    #[test]
    fn matches_oracle_on_random_cones() {
        // tiny deterministic LCG so this unit test needs no rng plumbing
        let mut state = 0x2545F4914F6CDD1Du64;
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            (state >> 11) as f64 / (1u64 << 53) as f64 * 2.0 - 1.0
        };
        for _ in 0..50 {
            let n = 3;
            let gens: Vec<Vec<f64>> =
                (0..4).map(|_| (0..n).map(|_| next()).collect()).collect();
            let x: Vec<f64> = (0..n).map(|_| 3.0 * next()).collect();
            let (p, _, _) = project(&gens, &x, &t()).unwrap();
            let q = conelab_oracle::project_generated(&gens, &x);
            for (a, b) in p.iter().zip(&q) {
                assert!((a - b).abs() < 1e-8, "{p:?} vs {q:?}");
            }
        }
    }
}
