use itertools::Itertools;

use super::space::{bit, full, points, FinSpace, PointSet};
use super::TopError;

/// Largest size for exhaustive labeled enumeration.
pub const ENUM_CAP: usize = 5;

fn is_transitive(up: &[PointSet]) -> bool {
    up.iter().all(|&u| points(u).all(|y| up[y] & !u == 0))
}

/// All preorders on exactly `n` labeled points: 1, 4, 29, 355, 6942 for
/// `n = 1..=5`.
pub fn enumerate_spaces(n: usize) -> Result<Vec<FinSpace>, TopError> {
    if n > ENUM_CAP {
        return Err(TopError::TooLarge { n, cap: ENUM_CAP });
    }
    if n == 0 {
        return Ok(vec![FinSpace::from_up_unchecked(Vec::new())]);
    }
    let off: Vec<(usize, usize)> = (0..n)
        .flat_map(|x| (0..n).filter(move |&y| y != x).map(move |y| (x, y)))
        .collect();
    let mut out = Vec::new();
    let mut up = vec![0 as PointSet; n];
    for code in 0u64..(1u64 << off.len()) {
        for (x, u) in up.iter_mut().enumerate() {
            *u = bit(x);
        }
        for (k, &(x, y)) in off.iter().enumerate() {
            if code >> k & 1 == 1 {
                up[x] |= bit(y);
            }
        }
        if is_transitive(&up) {
            out.push(FinSpace::from_up_unchecked(up.clone()));
        }
    }
    Ok(out)
}

/// All preorders on `1..=max_points` labeled points.
pub fn enumerate_spaces_up_to(max_points: usize) -> Result<Vec<FinSpace>, TopError> {
    let mut out = Vec::new();
    for n in 1..=max_points {
        out.extend(enumerate_spaces(n)?);
    }
    Ok(out)
}

fn relabel(s: &FinSpace, perm: &[usize]) -> Vec<PointSet> {
    let mut up = vec![0; s.n()];
    for x in 0..s.n() {
        up[perm[x]] = points(s.up(x)).fold(0, |a, y| a | bit(perm[y]));
    }
    up
}

/// Canonical form: the lexicographically least relabeling.
pub fn canonical(s: &FinSpace) -> FinSpace {
    let best = (0..s.n())
        .permutations(s.n())
        .map(|p| relabel(s, &p))
        .min()
        .unwrap_or_default();
    FinSpace::from_up_unchecked(best)
}

/// Preorders on exactly `n` points up to isomorphism.
pub fn enumerate_spaces_iso(n: usize) -> Result<Vec<FinSpace>, TopError> {
    let mut reps: Vec<FinSpace> = enumerate_spaces(n)?.iter().map(canonical).collect();
    reps.sort_by(|a, b| a.up_sets().cmp(b.up_sets()));
    reps.dedup();
    debug_assert!(reps.iter().all(|s| s.all() == full(n)));
    Ok(reps)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn labeled_counts() {
        let counts: Vec<usize> = (1..=4)
            .map(|n| enumerate_spaces(n).unwrap().len())
            .collect();
        assert_eq!(counts, vec![1, 4, 29, 355]);
        assert!(enumerate_spaces(6).is_err());
    }

    #[test]
    fn unlabeled_counts() {
        let counts: Vec<usize> = (1..=4)
            .map(|n| enumerate_spaces_iso(n).unwrap().len())
            .collect();
        assert_eq!(counts, vec![1, 3, 9, 33]);
    }
}
