use std::collections::BTreeSet;

use branchcov::finitetop::{
    check_all_verdicts, enumerate_spaces_up_to, fuzz_instance, is_branched_covering, random_space,
    FinMap, FinSpace, PointSet,
};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Every open set, as unions of minimal open neighborhoods.
fn topology(s: &FinSpace) -> BTreeSet<PointSet> {
    let n = s.n();
    (0u32..1 << n)
        .map(|pick| {
            (0..n)
                .filter(|&x| pick >> x & 1 == 1)
                .fold(0, |acc, x| acc | s.up(x))
        })
        .collect()
}

fn complement(s: &FinSpace, a: PointSet) -> PointSet {
    s.all() & !a
}

fn image(map: &[usize], a: PointSet) -> PointSet {
    (0..map.len())
        .filter(|&x| a >> x & 1 == 1)
        .fold(0, |acc, x| acc | 1 << map[x])
}

fn preimage(map: &[usize], b: PointSet) -> PointSet {
    (0..map.len())
        .filter(|&x| b >> map[x] & 1 == 1)
        .fold(0, |acc, x| acc | 1 << x)
}

fn continuous(x: &FinSpace, y: &FinSpace, map: &[usize]) -> bool {
    let tx = topology(x);
    topology(y).iter().all(|&v| tx.contains(&preimage(map, v)))
}

fn open_map(x: &FinSpace, y: &FinSpace, map: &[usize]) -> bool {
    let ty = topology(y);
    topology(x).iter().all(|&u| ty.contains(&image(map, u)))
}

fn closed_map(x: &FinSpace, y: &FinSpace, map: &[usize]) -> bool {
    let ty = topology(y);
    topology(x)
        .iter()
        .all(|&u| ty.contains(&complement(y, image(map, complement(x, u)))))
}

/// Points without an open neighborhood mapped homeomorphically onto an
/// open set.
fn branching_oracle(x: &FinSpace, y: &FinSpace, map: &[usize]) -> PointSet {
    let tx = topology(x);
    let ty = topology(y);
    let homeo_patch = |u: PointSet| {
        let v = image(map, u);
        if v.count_ones() != u.count_ones() || !ty.contains(&v) {
            return false;
        }
        let rel_x: BTreeSet<PointSet> = tx.iter().map(|&o| o & u).collect();
        let rel_y: BTreeSet<PointSet> = ty.iter().map(|&o| o & v).collect();
        rel_x
            .iter()
            .map(|&o| image(map, o))
            .collect::<BTreeSet<_>>()
            == rel_y
    };
    (0..x.n())
        .filter(|&p| !tx.iter().any(|&u| u >> p & 1 == 1 && homeo_patch(u)))
        .fold(0, |acc, p| acc | 1 << p)
}

fn random_map(rng: &mut ChaCha8Rng, n: usize, m: usize) -> Vec<usize> {
    (0..n).map(|_| rng.gen_range(0..m)).collect()
}

#[test]
fn predicates_match_oracles_on_small_spaces() {
    let spaces = enumerate_spaces_up_to(3).unwrap();
    for x in &spaces {
        for y in &spaces {
            let n = x.n();
            let m = y.n();
            for code in 0..m.pow(n as u32) {
                let map: Vec<usize> = (0..n).map(|i| code / m.pow(i as u32) % m).collect();
                let made = FinMap::new(x.clone(), y.clone(), map.clone());
                assert_eq!(made.is_ok(), continuous(x, y, &map));
                let Ok(f) = made else { continue };
                let v = f.view();
                assert_eq!(v.is_open_map(), open_map(x, y, &map));
                assert_eq!(v.is_closed_map(), closed_map(x, y, &map));
                assert_eq!(f.branching_locus().unwrap(), branching_oracle(x, y, &map));
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn predicates_match_oracles(seed in any::<u64>(), n in 1usize..=4, m in 1usize..=4) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = random_space(&mut rng, n);
        let y = random_space(&mut rng, m);
        let map = random_map(&mut rng, n, m);
        let made = FinMap::new(x.clone(), y.clone(), map.clone());
        prop_assert_eq!(made.is_ok(), continuous(&x, &y, &map));
        if let Ok(f) = made {
            let v = f.view();
            prop_assert_eq!(v.is_open_map(), open_map(&x, &y, &map));
            prop_assert_eq!(v.is_closed_map(), closed_map(&x, &y, &map));
            prop_assert_eq!(v.branching_exhaustive(), branching_oracle(&x, &y, &map));
            if v.is_open_map() {
                prop_assert_eq!(v.branching_open_map(), v.branching_exhaustive());
            }
        }
    }

    #[test]
    fn fuzz_instances_satisfy_the_registry(seed in any::<u64>(), trial in 0u64..1000) {
        let f = fuzz_instance(seed, trial, 6);
        prop_assert!(f.is_quasi_covering().is_ok());
        let v = f.view();
        prop_assert_eq!(v.branching_open_map(), v.branching_exhaustive());
        for verdict in check_all_verdicts(&f).unwrap() {
            prop_assert!(verdict.holds, "{:?}", verdict);
        }
        let a = is_branched_covering(&f).unwrap();
        prop_assert_eq!(a.branching, f.branching_locus().unwrap());
    }

    #[test]
    fn instance_json_round_trip(seed in any::<u64>(), trial in 0u64..1000) {
        let f = fuzz_instance(seed, trial, 7);
        let back: FinMap = serde_json::from_str(&serde_json::to_string(&f).unwrap()).unwrap();
        prop_assert_eq!(back, f);
    }
}
