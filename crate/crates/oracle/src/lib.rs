//! Brute-force oracles for small polyhedral problems.
//!
//! Everything here trades speed for obviousness: projections are found by
//! enumerating candidate support sets, complementarity problems by
//! enumerating complementary bases. The main crate's solvers are tested
//! against these, never the other way around, so this code should stay dumb
//! and readable. Exponential in the number of generators/constraints; only
//! use it on desk-scale instances.

use nalgebra::{DMatrix, DVector};

fn norm(x: &[f64]) -> f64 {
    x.iter().map(|v| v * v).sum::<f64>().sqrt()
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Minimum-norm least-squares solution of A z = b via SVD.
fn lstsq(a: &DMatrix<f64>, b: &DVector<f64>) -> DVector<f64> {
    a.clone()
        .svd(true, true)
        .solve(b, 1e-13)
        .expect("SVD least-squares solve cannot fail")
}

/// Euclidean projection of `x` onto cone{ Σ λ_i g_i : λ_i ≥ 0 }.
///
/// Tries every subset of generators as the support of λ, fits the
/// unconstrained least squares on that subset, and keeps the nearest point
/// whose coefficients are nonnegative. The true projection is the
/// least-squares fit on its own support set (KKT), so it is always among the
/// candidates; every other candidate is some cone point, hence no closer.
pub fn project_generated(generators: &[Vec<f64>], x: &[f64]) -> Vec<f64> {
    let n = x.len();
    let m = generators.len();
    assert!(m <= 20, "subset enumeration is exponential; keep it small");
    let xv = DVector::from_column_slice(x);

    let mut best = vec![0.0; n];
    let mut best_dist = norm(x); // the subset {} candidate: the apex
    for mask in 1u32..(1 << m) {
        let idx: Vec<usize> = (0..m).filter(|j| mask >> j & 1 == 1).collect();
        let a = DMatrix::from_fn(n, idx.len(), |r, c| generators[idx[c]][r]);
        let lambda = lstsq(&a, &xv);
        if lambda.iter().any(|&l| l < -1e-9) {
            continue;
        }
        // clamp the tiny negatives so the candidate is a genuine cone point
        let lambda = lambda.map(|l| l.max(0.0));
        let p = &a * &lambda;
        let dist = (&xv - &p).norm();
        if dist < best_dist {
            best_dist = dist;
            best = p.iter().copied().collect();
        }
    }
    best
}

/// Euclidean projection of `x` onto { z : ⟨a_i, z⟩ ≥ 0 for all i }.
///
/// Tries every subset of constraints as the active set: the projection then
/// has the form p = x + Σ_{i∈S} μ_i a_i with ⟨a_i, p⟩ = 0 on S and μ ≥ 0
/// (KKT), so solving the normal equations for μ and filtering on feasibility
/// recovers it. Keeps the nearest feasible candidate.
pub fn project_halfspaces(normals: &[Vec<f64>], x: &[f64]) -> Vec<f64> {
    let n = x.len();
    let m = normals.len();
    assert!(m <= 20, "subset enumeration is exponential; keep it small");
    let scale = 1f64.max(norm(x));
    let feasible =
        |p: &[f64]| normals.iter().all(|a| dot(a, p) >= -1e-8 * scale * norm(a));

    let mut best: Option<Vec<f64>> = None;
    let mut best_dist = f64::INFINITY;
    for mask in 0u32..(1 << m) {
        let idx: Vec<usize> = (0..m).filter(|i| mask >> i & 1 == 1).collect();
        let p = if idx.is_empty() {
            x.to_vec()
        } else {
            // A_S A_S^T μ = −A_S x, then p = x + A_S^T μ
            let a = DMatrix::from_fn(idx.len(), n, |r, c| normals[idx[r]][c]);
            let rhs = -(&a * DVector::from_column_slice(x));
            let mu = lstsq(&(&a * a.transpose()), &rhs);
            if mu.iter().any(|&v| v < -1e-9) {
                continue;
            }
            let mu = mu.map(|v| v.max(0.0));
            let p = DVector::from_column_slice(x) + a.transpose() * mu;
            p.iter().copied().collect()
        };
        if !feasible(&p) {
            continue;
        }
        let dist = x.iter().zip(&p).map(|(a, b)| (a - b) * (a - b)).sum::<f64>().sqrt();
        if dist < best_dist {
            best_dist = dist;
            best = Some(p);
        }
    }
    best.expect("at least the true active set must yield a feasible candidate")
}

/// Solves w = M x + q, x ≥ 0, w ≥ 0, ⟨x, w⟩ = 0 by enumerating all 2^n
/// complementary bases. Returns None if no basis is feasible (e.g. the LCP
/// has no solution). For positive definite M the solution is unique.
pub fn lcp_enumerate(m: &[Vec<f64>], q: &[f64]) -> Option<Vec<f64>> {
    let n = q.len();
    assert!(n <= 20, "basis enumeration is exponential; keep it small");
    let mm = DMatrix::from_fn(n, n, |r, c| m[r][c]);

    let mut best: Option<(f64, Vec<f64>)> = None;
    for mask in 0u32..(1 << n) {
        let basic: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
        let mut x = vec![0.0; n];
        if !basic.is_empty() {
            // solve M_BB x_B = −q_B
            let mbb = DMatrix::from_fn(basic.len(), basic.len(), |r, c| {
                mm[(basic[r], basic[c])]
            });
            let rhs = DVector::from_fn(basic.len(), |r, _| -q[basic[r]]);
            let xb = lstsq(&mbb, &rhs);
            for (k, &i) in basic.iter().enumerate() {
                x[i] = xb[k];
            }
        }
        let w: Vec<f64> = (0..n)
            .map(|i| q[i] + (0..n).map(|j| m[i][j] * x[j]).sum::<f64>())
            .collect();
        // worst violation of x ≥ 0, w ≥ 0 (complementarity holds by basis)
        let viol = x
            .iter()
            .chain(&w)
            .map(|&v| (-v).max(0.0))
            .fold(0.0_f64, f64::max);
        if viol < 1e-8 {
            let x: Vec<f64> = x.iter().map(|&v| v.max(0.0)).collect();
            if best.as_ref().is_none_or(|(bv, _)| viol < *bv) {
                best = Some((viol, x));
            }
        }
    }
    best.map(|(_, x)| x)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn assert_close(a: &[f64], b: &[f64], tol: f64) {
        assert_eq!(a.len(), b.len());
        for (x, y) in a.iter().zip(b) {
            assert!((x - y).abs() <= tol, "{a:?} != {b:?}");
        }
    }

    #[test]
    fn generated_orthant_matches_clamp() {
        let gens = vec![vec![1.0, 0.0], vec![0.0, 1.0]];
        assert_close(&project_generated(&gens, &[3.0, -2.0]), &[3.0, 0.0], 1e-10);
        assert_close(&project_generated(&gens, &[-1.0, -1.0]), &[0.0, 0.0], 1e-10);
    }

    #[test]
    fn halfspaces_orthant_matches_clamp() {
        let normals = vec![vec![1.0, 0.0], vec![0.0, 1.0]];
        assert_close(&project_halfspaces(&normals, &[3.0, -2.0]), &[3.0, 0.0], 1e-10);
        assert_close(&project_halfspaces(&normals, &[0.5, 0.25]), &[0.5, 0.25], 1e-10);
    }

    #[test]
    fn wedge_projection_known_value() {
        // cone{(1,0),(1,1)} = {x1 ≥ x2 ≥ 0}; nearest point to (−1,2) is the
        // ray through (1,1) at parameter 1/2
        let gens = vec![vec![1.0, 0.0], vec![1.0, 1.0]];
        assert_close(&project_generated(&gens, &[-1.0, 2.0]), &[0.5, 0.5], 1e-10);
    }

    #[test]
    fn monotone_halfspace_form_known_value() {
        // {x1 ≥ x2 ≥ x3} has normals (1,−1,0), (0,1,−1); projecting (2,1,3)
        // pools everything to the mean
        let normals = vec![vec![1.0, -1.0, 0.0], vec![0.0, 1.0, -1.0]];
        assert_close(&project_halfspaces(&normals, &[2.0, 1.0, 3.0]), &[2.0, 2.0, 2.0], 1e-10);
    }

    #[test]
    fn both_representations_agree_on_a_simplicial_cone() {
        // cone generated by (1,0),(1,1); its halfspace form has normals
        // (0,1) and (1,−1)
        let gens = vec![vec![1.0, 0.0], vec![1.0, 1.0]];
        let normals = vec![vec![0.0, 1.0], vec![1.0, -1.0]];
        for x in [[-1.0, 2.0], [3.0, -2.0], [0.3, 0.1], [-5.0, -1.0]] {
            let pg = project_generated(&gens, &x);
            let ph = project_halfspaces(&normals, &x);
            assert_close(&pg, &ph, 1e-9);
        }
    }

    #[test]
    fn lcp_identity_matrix() {
        // w = x + q: solution x = max(−q, 0)
        let m = vec![vec![1.0, 0.0], vec![0.0, 1.0]];
        let x = lcp_enumerate(&m, &[-1.0, 2.0]).unwrap();
        assert_close(&x, &[1.0, 0.0], 1e-10);
    }

    #[test]
    fn lcp_spd_hand_checked() {
        // M = [[2,1],[1,2]], q = (−3,1): try basis {1}: x1 = 3/2, w2 = 1 + 3/2 ≥ 0 ✓
        let m = vec![vec![2.0, 1.0], vec![1.0, 2.0]];
        let x = lcp_enumerate(&m, &[-3.0, 1.0]).unwrap();
        assert_close(&x, &[1.5, 0.0], 1e-10);
    }
}
