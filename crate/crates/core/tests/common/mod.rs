#![allow(dead_code)]

use std::collections::BTreeMap;

use branchcov::polycore::MPoly;
use branchcov::Rat;
use itertools::Itertools;
use rand::Rng;

/// `e_k(x_1, ..., x_n)` built as a sum over `k`-subsets.
pub fn elementary_mpoly(n: usize, k: usize) -> MPoly {
    (0..n).combinations(k).fold(MPoly::zero(n), |acc, subset| {
        let term = subset
            .into_iter()
            .fold(MPoly::constant(n, Rat::one()), |m, i| {
                &m * &MPoly::var(n, i)
            });
        &acc + &term
    })
}

/// A small rational tuple; each coordinate repeats an earlier one with
/// probability `repeat`.
pub fn random_tuple<R: Rng>(rng: &mut R, n: usize, repeat: f64) -> Vec<Rat> {
    let mut x: Vec<Rat> = Vec::with_capacity(n);
    for i in 0..n {
        if i > 0 && rng.gen_bool(repeat) {
            let j = rng.gen_range(0..i);
            x.push(x[j].clone());
        } else {
            x.push(Rat::new(rng.gen_range(-9i64..=9), rng.gen_range(1i64..=4)));
        }
    }
    x
}

pub fn multiplicities(x: &[Rat]) -> Vec<usize> {
    let mut counts: BTreeMap<&Rat, usize> = BTreeMap::new();
    for v in x {
        *counts.entry(v).or_default() += 1;
    }
    counts.into_values().collect()
}

pub fn factorial(n: usize) -> u64 {
    (1..=n as u64).product()
}

/// `n! / ∏ k_i!` from the coordinates directly.
pub fn fiber_size(x: &[Rat]) -> u64 {
    factorial(x.len())
        / multiplicities(x)
            .iter()
            .map(|&k| factorial(k))
            .product::<u64>()
}

/// The coordinates sorted ascending.
pub fn sorted(x: &[Rat]) -> Vec<Rat> {
    let mut s = x.to_vec();
    s.sort();
    s
}
