use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::enumerate::enumerate_spaces;
use super::lemmas::{check_all, lemma_ids, to_lemma_verdict, LemmaVerdict, Verdict};
use super::map::FinMap;
use super::space::{bit, full, points, FinSpace, PointSet, SIZE_CAP};
use super::TopError;

/// Per-lemma counts over a batch of instances.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LemmaTally {
    pub lemma: String,
    pub qualifying: u64,
    pub holds: u64,
    pub failures: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Failure {
    pub instance_index: u64,
    pub verdict: LemmaVerdict,
}

/// Merged result of running the registry over many instances.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub instances: u64,
    pub branched: u64,
    pub uniform: u64,
    pub constructed: u64,
    pub lemmas: Vec<LemmaTally>,
    pub failures: Vec<Failure>,
}

/// Failures kept in a summary.
pub const FAILURE_KEEP: usize = 10;

impl Summary {
    pub fn empty() -> Summary {
        Summary {
            instances: 0,
            branched: 0,
            uniform: 0,
            constructed: 0,
            lemmas: lemma_ids()
                .into_iter()
                .map(|id| LemmaTally {
                    lemma: id.to_string(),
                    qualifying: 0,
                    holds: 0,
                    failures: 0,
                })
                .collect(),
            failures: Vec::new(),
        }
    }

    pub fn merge(mut self, other: Summary) -> Summary {
        self.instances += other.instances;
        self.branched += other.branched;
        self.uniform += other.uniform;
        self.constructed += other.constructed;
        for (a, b) in self.lemmas.iter_mut().zip(other.lemmas) {
            a.qualifying += b.qualifying;
            a.holds += b.holds;
            a.failures += b.failures;
        }
        self.failures.extend(other.failures);
        self.failures.sort_by(|a, b| {
            (a.instance_index, &a.verdict.lemma).cmp(&(b.instance_index, &b.verdict.lemma))
        });
        self.failures.truncate(FAILURE_KEEP);
        self
    }

    pub fn total_failures(&self) -> u64 {
        self.lemmas.iter().map(|t| t.failures).sum()
    }

    /// Runs the registry on one quasi-covering and records the outcome.
    pub fn record(index: u64, f: &FinMap) -> Result<Summary, TopError> {
        let mut s = Summary::empty();
        s.instances = 1;
        let verdicts = check_all(f)?;
        if super::cover::is_branched_covering(f)?.is_branched() {
            s.branched = 1;
        }
        for ((id, v), tally) in verdicts.into_iter().zip(s.lemmas.iter_mut()) {
            match &v {
                Verdict::NotApplicable => {}
                Verdict::Holds => {
                    tally.qualifying += 1;
                    tally.holds += 1;
                }
                Verdict::Fails { .. } => {
                    tally.qualifying += 1;
                    tally.failures += 1;
                    s.failures.push(Failure {
                        instance_index: index,
                        verdict: to_lemma_verdict(id, f, v),
                    });
                }
            }
        }
        Ok(s)
    }
}

fn transitive_closure(up: &mut [PointSet]) {
    loop {
        let mut changed = false;
        for x in 0..up.len() {
            let grown = points(up[x]).fold(up[x], |a, y| a | up[y]);
            if grown != up[x] {
                up[x] = grown;
                changed = true;
            }
        }
        if !changed {
            return;
        }
    }
}

/// A random preorder biased towards partial orders with a few equivalences.
pub fn random_space<R: Rng + ?Sized>(rng: &mut R, n: usize) -> FinSpace {
    let p: f64 = rng.gen_range(0.1..0.6);
    let mut up: Vec<PointSet> = (0..n).map(bit).collect();
    for (x, ux) in up.iter_mut().enumerate() {
        for y in 0..n {
            let chance = if x < y { p } else { p * 0.1 };
            if x != y && rng.gen_bool(chance) {
                *ux |= bit(y);
            }
        }
    }
    transitive_closure(&mut up);
    FinSpace::from_up_unchecked(up)
}

fn random_surjection<R: Rng + ?Sized>(rng: &mut R, n: usize, m: usize) -> Vec<usize> {
    let mut map: Vec<usize> = (0..n).map(|_| rng.gen_range(0..m)).collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    for (y, &x) in order.iter().take(m).enumerate() {
        map[x] = y;
    }
    map
}

/// A uniformly drawn continuous surjection that happens to be a
/// quasi-covering, if one turns up within a few attempts.
fn uniform_quasi<R: Rng + ?Sized>(rng: &mut R, max_points: usize) -> Option<FinMap> {
    for _ in 0..8 {
        let n = rng.gen_range(1..=max_points);
        let m = rng.gen_range(1..=n);
        let x = random_space(rng, n);
        let y = random_space(rng, m);
        let map = random_surjection(rng, n, m);
        let f = FinMap::new_unchecked(x, y, map);
        if f.continuity_failure().is_none() && f.view().is_quasi() {
            return Some(f);
        }
    }
    None
}

fn find(parent: &mut [usize], i: usize) -> usize {
    let mut r = i;
    while parent[r] != r {
        r = parent[r];
    }
    parent[i] = r;
    r
}

/// Glues `d` copies of a random base along a partition of the sheets over
/// each base point, coarser over more special points. The result is always a
/// quasi-covering; it is branched or not depending on the gluing.
pub fn constructed_quasi<R: Rng + ?Sized>(rng: &mut R, max_points: usize) -> FinMap {
    loop {
        let m = rng.gen_range(1..=max_points.min(4));
        let y = random_space(rng, m);
        let d = rng.gen_range(1..=3usize);
        let merge_p: f64 = rng.gen_range(0.1..0.7);
        // Base points from most to least general.
        let mut order: Vec<usize> = (0..m).collect();
        order.sort_by_key(|&b| (y.up(b).count_ones(), b));
        let mut labels: Vec<Vec<usize>> = vec![Vec::new(); m];
        for &b in &order {
            let mut parent: Vec<usize> = (0..d).collect();
            for c in points(y.up(b)) {
                if c == b || labels[c].is_empty() {
                    continue;
                }
                for s in 0..d {
                    for t in s + 1..d {
                        if labels[c][s] == labels[c][t] {
                            let (rs, rt) = (find(&mut parent, s), find(&mut parent, t));
                            parent[rs.max(rt)] = rs.min(rt);
                        }
                    }
                }
            }
            let same: Vec<usize> = points(y.up(b) & y.down(b))
                .filter(|&c| c != b && !labels[c].is_empty())
                .collect();
            if let Some(&c) = same.first() {
                labels[b] = labels[c].clone();
                continue;
            }
            for s in 0..d {
                for t in s + 1..d {
                    if rng.gen_bool(merge_p) {
                        let (rs, rt) = (find(&mut parent, s), find(&mut parent, t));
                        parent[rs.max(rt)] = rs.min(rt);
                    }
                }
            }
            labels[b] = (0..d).map(|s| find(&mut parent, s)).collect();
        }
        // Points of the total space: (base point, block representative).
        let mut pts: Vec<(usize, usize)> = Vec::new();
        for (b, lab) in labels.iter().enumerate() {
            let mut reps: Vec<usize> = lab.clone();
            reps.sort_unstable();
            reps.dedup();
            pts.extend(reps.into_iter().map(|r| (b, r)));
        }
        if pts.len() > max_points {
            continue;
        }
        pts.shuffle(rng);
        let n = pts.len();
        let mut up = vec![0 as PointSet; n];
        for (i, &(b, r)) in pts.iter().enumerate() {
            for (j, &(b2, r2)) in pts.iter().enumerate() {
                let block_inside = (0..d).any(|s| labels[b][s] == r && labels[b2][s] == r2);
                if y.leq(b, b2) && block_inside {
                    up[i] |= bit(j);
                }
            }
        }
        let x = FinSpace::from_up_sets(up).expect("glued order is a preorder");
        let map: Vec<usize> = pts.iter().map(|&(b, _)| b).collect();
        let f = FinMap::new(x, y, map).expect("gluing is continuous");
        debug_assert!(f.view().is_quasi());
        debug_assert_eq!(f.domain().all(), full(n));
        return f;
    }
}

fn instance(seed: u64, trial: u64, max_points: usize) -> (FinMap, bool) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    if rng.gen_bool(0.5) {
        if let Some(f) = uniform_quasi(&mut rng, max_points) {
            return (f, true);
        }
    }
    (constructed_quasi(&mut rng, max_points), false)
}

/// Deterministic seeded fuzzing of the registry over random quasi-coverings.
pub fn fuzz(seed: u64, trials: u64, max_points: usize) -> Result<Summary, TopError> {
    if max_points == 0 || max_points > SIZE_CAP {
        return Err(TopError::TooLarge {
            n: max_points,
            cap: SIZE_CAP,
        });
    }
    (0..trials)
        .into_par_iter()
        .map(|t| {
            let (f, uniform) = instance(seed, t, max_points);
            let mut s = Summary::record(t, &f)?;
            if uniform {
                s.uniform = 1;
            } else {
                s.constructed = 1;
            }
            Ok(s)
        })
        .try_reduce(Summary::empty, |a, b| Ok(a.merge(b)))
}

/// The fuzz instance for a given seed and trial, for replaying failures.
pub fn fuzz_instance(seed: u64, trial: u64, max_points: usize) -> FinMap {
    instance(seed, trial, max_points).0
}

/// Every labeled quasi-covering with at most `max_domain` domain points and
/// `max_codomain` codomain points.
pub fn all_quasi_coverings(
    max_domain: usize,
    max_codomain: usize,
) -> Result<Vec<FinMap>, TopError> {
    let mut spaces = Vec::new();
    for n in 1..=max_domain.max(max_codomain) {
        spaces.push(enumerate_spaces(n)?);
    }
    let pairs: Vec<(usize, usize)> = (1..=max_domain)
        .flat_map(|n| (1..=max_codomain.min(n)).map(move |m| (n, m)))
        .collect();
    let maps = pairs
        .into_par_iter()
        .flat_map_iter(|(n, m)| {
            let xs = &spaces[n - 1];
            let ys = &spaces[m - 1];
            let mut out = Vec::new();
            let total = m.pow(n as u32);
            let surj: Vec<Vec<usize>> = (0..total)
                .map(|mut code| {
                    (0..n)
                        .map(|_| {
                            let v = code % m;
                            code /= m;
                            v
                        })
                        .collect::<Vec<usize>>()
                })
                .filter(|map| map.iter().fold(0u32, |a, &y| a | bit(y)) == full(m))
                .collect();
            for x in xs {
                for y in ys {
                    for map in &surj {
                        let f = FinMap::new_unchecked(x.clone(), y.clone(), map.clone());
                        if f.continuity_failure().is_none() && f.view().is_quasi() {
                            out.push(f);
                        }
                    }
                }
            }
            out
        })
        .collect();
    Ok(maps)
}

/// Runs the registry over every labeled quasi-covering within the bounds.
pub fn sweep(max_domain: usize, max_codomain: usize) -> Result<Summary, TopError> {
    if max_domain > 5 || max_codomain > 5 {
        return Err(TopError::TooLarge {
            n: max_domain.max(max_codomain),
            cap: 5,
        });
    }
    let maps = all_quasi_coverings(max_domain, max_codomain)?;
    maps.par_iter()
        .enumerate()
        .map(|(i, f)| Summary::record(i as u64, f))
        .try_reduce(Summary::empty, |a, b| Ok(a.merge(b)))
}
