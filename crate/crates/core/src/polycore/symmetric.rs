//! Elementary symmetric functions and power sums.

use super::{Interval, PolyError};
use crate::rat::Rat;

/// `[e_0, e_1, ..., e_n]` of the values, with `e_0 = 1`.
pub fn elementary_symmetric_all(x: &[Rat]) -> Vec<Rat> {
    let mut e = vec![Rat::zero(); x.len() + 1];
    e[0] = Rat::one();
    for (i, xi) in x.iter().enumerate() {
        for k in (1..=i + 1).rev() {
            let t = &e[k - 1] * xi;
            e[k] += t;
        }
    }
    e
}

/// Enclosures of `[e_0, ..., e_n]` over a box of intervals.
pub fn elementary_symmetric_intervals(x: &[Interval]) -> Vec<Interval> {
    let mut e = vec![Interval::zero(); x.len() + 1];
    e[0] = Interval::one();
    for (i, xi) in x.iter().enumerate() {
        for k in (1..=i + 1).rev() {
            let t = &e[k - 1] * xi;
            e[k] = &e[k] + &t;
        }
    }
    e
}

/// `σ_k(x_1, ..., x_n)` for `1 <= k <= n`.
pub fn elementary_symmetric_eval(x: &[Rat], k: usize) -> Result<Rat, PolyError> {
    if k == 0 || k > x.len() {
        return Err(PolyError::SymmetricIndex { k, n: x.len() });
    }
    Ok(elementary_symmetric_all(x).swap_remove(k))
}

/// `Σ x_i^k`.
pub fn power_sum(x: &[Rat], k: u32) -> Rat {
    x.iter().map(|v| v.pow(k)).sum()
}
