use std::collections::BTreeSet;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{PLCovering, PlError, Pt, Segment};
use crate::rat::Rat;

/// Why a covering fails to be a quasi-covering.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum QuasiFailure {
    NotSurjective {
        x: Rat,
    },
    NotOpen {
        point: Pt,
        left: usize,
        right: usize,
    },
}

/// A point over the interior of the base where the left and right germ
/// counts differ.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BranchWitness {
    pub point: Pt,
    pub left: usize,
    pub right: usize,
}

/// Fiber cardinality on an open piece `(lo, hi)` of the base.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiberPiece {
    pub lo: Rat,
    pub hi: Rat,
    pub count: usize,
}

/// Points with a singleton fiber: isolated points over critical values and
/// arcs over open pieces of fiber cardinality one.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CollapseSet {
    pub points: Vec<Pt>,
    pub arcs: Vec<Segment>,
}

impl CollapseSet {
    pub fn contains(&self, p: &Pt) -> bool {
        self.points.contains(p)
            || self
                .arcs
                .iter()
                .any(|s| s.x_lo() < &p.x && &p.x < s.x_hi() && s.contains(p))
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty() && self.arcs.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BranchReport {
    pub base: (Rat, Rat),
    pub is_quasi: bool,
    pub quasi_witness: Option<QuasiFailure>,
    pub is_branched: bool,
    pub branch_witness: Option<BranchWitness>,
    pub d: Option<usize>,
    pub critical_values: Vec<Rat>,
    pub d_profile: Vec<FiberPiece>,
    /// Fiber cardinality at each critical value.
    pub critical_fibers: Vec<(Rat, usize)>,
    #[serde(rename = "B")]
    pub branching: Vec<Pt>,
    #[serde(rename = "R")]
    pub ramification: Vec<Rat>,
    #[serde(rename = "C")]
    pub collapse: CollapseSet,
    /// Ramification index at the points of `B`; every other point has index 1.
    /// Empty unless branched.
    #[serde(rename = "b")]
    pub index: Vec<(Pt, usize)>,
}

impl BranchReport {
    pub fn in_branching(&self, p: &Pt) -> bool {
        self.branching.binary_search(p).is_ok()
    }

    /// `b(p)` for a point on the total space, when branched.
    pub fn index_at(&self, p: &Pt) -> Option<usize> {
        if !self.is_branched {
            return None;
        }
        Some(
            self.index
                .iter()
                .find(|(q, _)| q == p)
                .map_or(1, |(_, b)| *b),
        )
    }

    /// The largest fiber cardinality over the base.
    pub fn max_fiber(&self) -> usize {
        self.d_profile
            .iter()
            .map(|f| f.count)
            .chain(self.critical_fibers.iter().map(|c| c.1))
            .max()
            .unwrap_or(0)
    }
}

/// x-coordinates of segment endpoints, pairwise intersections and the base
/// endpoints, sorted and deduplicated.
pub fn critical_values(cov: &PLCovering) -> Vec<Rat> {
    let segs = cov.segments();
    let mut xs: BTreeSet<Rat> = BTreeSet::new();
    xs.insert(cov.base().0.clone());
    xs.insert(cov.base().1.clone());
    for s in segs {
        xs.insert(s.x_lo().clone());
        xs.insert(s.x_hi().clone());
    }
    for i in 0..segs.len() {
        for j in i + 1..segs.len() {
            if let Some(p) = segs[i].meet(&segs[j]) {
                xs.insert(p.x);
            }
        }
    }
    xs.into_iter().collect()
}

fn check_in_base(cov: &PLCovering, x: &Rat) -> Result<(), PlError> {
    let (a, b) = cov.base();
    if x < a || x > b {
        return Err(PlError::OutsideBase {
            x: x.clone(),
            a: a.clone(),
            b: b.clone(),
        });
    }
    Ok(())
}

/// The points over `x0`, sorted by height.
pub fn fiber_at(cov: &PLCovering, x0: &Rat) -> Result<Vec<Pt>, PlError> {
    check_in_base(cov, x0)?;
    Ok(fiber_unchecked(cov, x0))
}

fn fiber_unchecked(cov: &PLCovering, x0: &Rat) -> Vec<Pt> {
    let ys: BTreeSet<Rat> = cov
        .segments()
        .iter()
        .filter(|s| s.covers(x0))
        .map(|s| s.y_at(x0))
        .collect();
    ys.into_iter().map(|y| Pt::new(x0.clone(), y)).collect()
}

/// Numbers of distinct germs of the total space at `p` pointing left and right.
pub fn branch_counts(cov: &PLCovering, p: &Pt) -> Result<(usize, usize), PlError> {
    if !cov.contains(p) {
        return Err(PlError::NotOnTotalSpace(p.clone()));
    }
    Ok(counts_unchecked(cov, p))
}

fn counts_unchecked(cov: &PLCovering, p: &Pt) -> (usize, usize) {
    let mut left = BTreeSet::new();
    let mut right = BTreeSet::new();
    for s in cov.segments().iter().filter(|s| s.contains(p)) {
        if s.x_lo() < &p.x {
            left.insert(&s.slope);
        }
        if s.x_hi() > &p.x {
            right.insert(&s.slope);
        }
    }
    (left.len(), right.len())
}

pub fn analyze(cov: &PLCovering) -> BranchReport {
    let (a, b) = cov.base();
    let crit = critical_values(cov);

    let critical_fibers: Vec<(Rat, Vec<Pt>)> = crit
        .par_iter()
        .map(|c| (c.clone(), fiber_unchecked(cov, c)))
        .collect();
    let d_profile: Vec<FiberPiece> = crit
        .par_windows(2)
        .map(|w| FiberPiece {
            lo: w[0].clone(),
            hi: w[1].clone(),
            count: fiber_unchecked(cov, &w[0].midpoint(&w[1])).len(),
        })
        .collect();

    let mut quasi_witness = critical_fibers
        .iter()
        .find(|(_, f)| f.is_empty())
        .map(|(x, _)| x.clone())
        .into_iter()
        .chain(
            d_profile
                .iter()
                .filter(|p| p.count == 0)
                .map(|p| p.lo.midpoint(&p.hi)),
        )
        .min()
        .map(|x| QuasiFailure::NotSurjective { x });

    let mut branching = Vec::new();
    let mut branch_witness = None;
    let mut index = Vec::new();
    for (x, fiber) in &critical_fibers {
        let interior = x != a && x != b;
        for p in fiber {
            let (l, r) = counts_unchecked(cov, p);
            if interior && (l == 0 || r == 0) && quasi_witness.is_none() {
                quasi_witness = Some(QuasiFailure::NotOpen {
                    point: p.clone(),
                    left: l,
                    right: r,
                });
            }
            if l >= 2 || r >= 2 {
                branching.push(p.clone());
                index.push((p.clone(), l.max(r)));
                if interior && l != r && branch_witness.is_none() {
                    branch_witness = Some(BranchWitness {
                        point: p.clone(),
                        left: l,
                        right: r,
                    });
                }
            }
        }
    }
    let is_quasi = quasi_witness.is_none();
    let is_branched = is_quasi && branch_witness.is_none();
    if !is_quasi {
        branch_witness = None;
    }
    if !is_branched {
        index.clear();
    }

    let ramification: Vec<Rat> = branching
        .iter()
        .map(|p| p.x.clone())
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();

    let d = if is_branched {
        let mut counts = d_profile.iter().map(|p| p.count);
        let first = counts.next();
        first.filter(|c| counts.all(|k| k == *c))
    } else {
        None
    };

    let mut collapse = CollapseSet::default();
    for (_, fiber) in &critical_fibers {
        if fiber.len() == 1 {
            collapse.points.push(fiber[0].clone());
        }
    }
    for piece in d_profile.iter().filter(|p| p.count == 1) {
        collapse.arcs.extend(
            cov.segments()
                .iter()
                .filter_map(|s| s.clip(&piece.lo, &piece.hi)),
        );
    }

    BranchReport {
        base: (a.clone(), b.clone()),
        is_quasi,
        quasi_witness,
        is_branched,
        branch_witness,
        d,
        critical_values: crit,
        d_profile,
        critical_fibers: critical_fibers
            .into_iter()
            .map(|(x, f)| (x, f.len()))
            .collect(),
        branching,
        ramification,
        collapse,
        index,
    }
}

/// Checks the index laws of a branched covering against its report: over
/// every critical value and every open piece the indices of the fiber sum
/// to `d`, `b = 1` exactly off `B`, points near a point of `B` have smaller
/// index, `C` lies in `B` when `d > 1`, and fibers of maximal cardinality
/// avoid `B`. Returns one message per violation; empty when not branched.
pub fn index_law_violations(cov: &PLCovering, r: &BranchReport) -> Vec<String> {
    let mut out = Vec::new();
    if !r.is_branched {
        return out;
    }
    let Some(d) = r.d else {
        out.push("branched without a common degree".to_string());
        return out;
    };
    let max = r.max_fiber();
    let samples = r
        .critical_values
        .iter()
        .cloned()
        .chain(r.d_profile.iter().map(|p| p.lo.midpoint(&p.hi)));
    for x in samples {
        let fiber = fiber_unchecked(cov, &x);
        let b: Vec<usize> = fiber.iter().map(|p| r.index_at(p).unwrap_or(0)).collect();
        let total: usize = b.iter().sum();
        if total != d {
            out.push(format!("indices over {x} sum to {total}, not {d}"));
        }
        for (p, &bp) in fiber.iter().zip(&b) {
            if (bp == 1) == r.in_branching(p) {
                out.push(format!("b{p} = {bp} disagrees with membership in B"));
            }
            if fiber.len() == max && r.in_branching(p) {
                out.push(format!("{p} lies in a maximal fiber and in B"));
            }
        }
    }
    for p in &r.branching {
        let bp = r.index_at(p).unwrap_or(0);
        let near = r
            .d_profile
            .iter()
            .filter(|piece| piece.lo == p.x || piece.hi == p.x)
            .flat_map(|piece| fiber_unchecked(cov, &piece.lo.midpoint(&piece.hi)));
        for q in near {
            if r.index_at(&q).unwrap_or(0) > bp {
                out.push(format!("{q} near {p} has a larger index"));
            }
        }
    }
    if d > 1 {
        if !r.collapse.arcs.is_empty() {
            out.push("collapse set contains arcs".to_string());
        }
        for p in &r.collapse.points {
            if !r.in_branching(p) {
                out.push(format!("collapse point {p} is not in B"));
            }
        }
    }
    out
}
