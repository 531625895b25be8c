//! Pool-adjacent-violators: the euclidean projection onto the monotone cone
//! is unit-weight isotonic regression.

use crate::cone::Direction;

/// Least-squares nondecreasing fit of `y` with unit weights. Classic block
/// stack: push each value as its own block, merge backwards while the last
/// two blocks are out of order, then expand block means. O(n).
fn fit_nondecreasing(y: &[f64]) -> Vec<f64> {
    // (mean, count) per block
    let mut blocks: Vec<(f64, usize)> = Vec::with_capacity(y.len());
    for &v in y {
        blocks.push((v, 1));
        while blocks.len() > 1 {
            let (m2, c2) = blocks[blocks.len() - 1];
            let (m1, c1) = blocks[blocks.len() - 2];
            if m1 <= m2 {
                break;
            }
            blocks.pop();
            let c = c1 + c2;
            let last = blocks.len() - 1;
            blocks[last] = ((m1 * c1 as f64 + m2 * c2 as f64) / c as f64, c);
        }
    }
    let mut out = Vec::with_capacity(y.len());
    for (m, c) in blocks {
        out.extend(std::iter::repeat_n(m, c));
    }
    out
}

/// Projection onto {x_1 ≥ … ≥ x_n} or its reverse. The nonincreasing fit is
/// the negated nondecreasing fit of the negated data.
pub(super) fn project_monotone(x: &[f64], direction: Direction) -> Vec<f64> {
    match direction {
        Direction::Nondecreasing => fit_nondecreasing(x),
        Direction::Nonincreasing => {
            let flipped: Vec<f64> = x.iter().map(|v| -v).collect();
            fit_nondecreasing(&flipped).iter().map(|v| -v).collect()
        }
    }
}
