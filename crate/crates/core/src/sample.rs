//! Deterministic sampling for the randomized checkers.
//!
//! Each sample index gets its own ChaCha8 stream derived from (seed, tag,
//! index): verdicts cannot depend on evaluation order, and sample loops may
//! be parallelized without changing any report. Tags namespace the property
//! families so different checkers with the same seed draw independent data.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::cone::{ConeDescriptor, Direction, Tolerance};
use crate::error::Result;
use crate::projection::project;
use crate::vecs::{norm, scale};

pub const TAG_ISOTONE: u64 = 1;
pub const TAG_SUBADDITIVE: u64 = 2;
pub const TAG_INVARIANCE: u64 = 3;

/// The RNG for one sample of one checker. The tag picks a 2^48-wide stream
/// namespace, the index the stream within it.
pub fn stream(seed: u64, tag: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream((tag << 48) | index);
    rng
}

pub fn gaussian(rng: &mut ChaCha8Rng, n: usize) -> Vec<f64> {
    (0..n).map(|_| rng.sample(StandardNormal)).collect()
}

/// Radius drawn log-uniformly from [1e-2, 1e2]. Cone properties are
/// scale-invariant but floating point is not, so the falsifiers probe both
/// near-apex and far-field behavior.
pub fn log_uniform_radius(rng: &mut ChaCha8Rng) -> f64 {
    10f64.powf(rng.gen_range(-2.0..2.0))
}

/// A gaussian direction at a log-uniform radius — the falsifier input
/// distribution.
pub fn scaled_gaussian(rng: &mut ChaCha8Rng, n: usize) -> Vec<f64> {
    let r = log_uniform_radius(rng);
    scale(&gaussian(rng, n), r)
}

/// A random point of the cone: exact constructions for the analytic
/// families, a projected gaussian for halfspace intersections and symbolic
/// duals. Cheap, and covers boundary as well as interior points.
pub fn cone_point(rng: &mut ChaCha8Rng, k: &ConeDescriptor, tol: &Tolerance) -> Result<Vec<f64>> {
    let n = k.dim();
    Ok(match k {
        ConeDescriptor::Orthant { .. } => {
            gaussian(rng, n).iter().map(|v| v.abs()).collect()
        }
        ConeDescriptor::Lorentz { .. } => {
            let u = gaussian(rng, n - 1);
            let s: f64 = rng.sample(StandardNormal);
            let mut p = u.clone();
            p.push(norm(&u) + s.abs());
            p
        }
        ConeDescriptor::Monotone { direction, .. } => {
            let mut p = gaussian(rng, n);
            sort_for(&mut p, *direction);
            p
        }
        ConeDescriptor::MonotoneNonneg { direction, .. } => {
            let mut p: Vec<f64> = gaussian(rng, n).iter().map(|v| v.abs()).collect();
            sort_for(&mut p, *direction);
            p
        }
        ConeDescriptor::FinitelyGenerated { generators, .. } => {
            // a random conic combination
            let mut p = vec![0.0; n];
            for g in generators {
                let c: f64 = rng.sample::<f64, _>(StandardNormal).abs();
                for (pi, gi) in p.iter_mut().zip(g) {
                    *pi += c * gi;
                }
            }
            p
        }
        ConeDescriptor::HalfspaceIntersection { .. } | ConeDescriptor::Dual { .. } => {
            project(&gaussian(rng, n), k, tol)?.point
        }
    })
}

/// A cone point pushed to a log-uniform radius.
pub fn scaled_cone_point(
    rng: &mut ChaCha8Rng,
    k: &ConeDescriptor,
    tol: &Tolerance,
) -> Result<Vec<f64>> {
    let r = log_uniform_radius(rng);
    Ok(scale(&cone_point(rng, k, tol)?, r))
}

/// A reproducible finitely generated cone with gaussian generators — the
/// "random generated cone" family used by the test matrices.
pub fn random_generated_cone(seed: u64, dim: usize, count: usize) -> ConeDescriptor {
    const TAG_CONE_GEN: u64 = 1001;
    let mut rng = stream(seed, TAG_CONE_GEN, 0);
    let generators = (0..count).map(|_| gaussian(&mut rng, dim)).collect();
    ConeDescriptor::FinitelyGenerated { dim, generators }
}

fn sort_for(p: &mut [f64], direction: Direction) {
    match direction {
        Direction::Nonincreasing => p.sort_by(|a, b| b.total_cmp(a)),
        Direction::Nondecreasing => p.sort_by(|a, b| a.total_cmp(b)),
    }
}
