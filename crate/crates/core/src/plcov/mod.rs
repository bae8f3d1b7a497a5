//! Piecewise-linear coverings of a closed interval.
//!
//! The total space is a finite union of non-vertical rational segments in the
//! plane and the map is the projection to the first coordinate.

#![allow(clippy::result_large_err)]

mod analyze;
mod random;

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::rat::Rat;

pub use analyze::{
    analyze, branch_counts, critical_values, fiber_at, index_law_violations, BranchReport,
    BranchWitness, CollapseSet, FiberPiece, QuasiFailure,
};
pub use random::random_covering;

/// A point of the plane, serialized as `["x", "y"]`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(from = "(Rat, Rat)", into = "(Rat, Rat)")]
pub struct Pt {
    pub x: Rat,
    pub y: Rat,
}

impl Pt {
    pub fn new(x: Rat, y: Rat) -> Pt {
        Pt { x, y }
    }
}

impl From<(Rat, Rat)> for Pt {
    fn from((x, y): (Rat, Rat)) -> Pt {
        Pt { x, y }
    }
}

impl From<Pt> for (Rat, Rat) {
    fn from(p: Pt) -> (Rat, Rat) {
        (p.x, p.y)
    }
}

impl fmt::Display for Pt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

impl fmt::Debug for Pt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// The graph of `y = slope * x + intercept` over `[x_lo, x_hi]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Segment {
    #[serde(rename = "x")]
    pub xs: (Rat, Rat),
    pub slope: Rat,
    pub intercept: Rat,
}

impl Segment {
    pub fn new(x_lo: Rat, x_hi: Rat, slope: Rat, intercept: Rat) -> Segment {
        Segment {
            xs: (x_lo, x_hi),
            slope,
            intercept,
        }
    }

    /// The segment joining two points with distinct abscissae.
    pub fn through(p: &Pt, q: &Pt) -> Segment {
        let (p, q) = if p.x <= q.x { (p, q) } else { (q, p) };
        assert!(p.x != q.x, "vertical segment");
        let slope = (&q.y - &p.y) / (&q.x - &p.x);
        let intercept = &p.y - &slope * &p.x;
        Segment::new(p.x.clone(), q.x.clone(), slope, intercept)
    }

    pub fn x_lo(&self) -> &Rat {
        &self.xs.0
    }

    pub fn x_hi(&self) -> &Rat {
        &self.xs.1
    }

    pub fn y_at(&self, x: &Rat) -> Rat {
        &self.slope * x + &self.intercept
    }

    pub fn covers(&self, x: &Rat) -> bool {
        self.x_lo() <= x && x <= self.x_hi()
    }

    pub fn contains(&self, p: &Pt) -> bool {
        self.covers(&p.x) && self.y_at(&p.x) == p.y
    }

    pub fn start(&self) -> Pt {
        Pt::new(self.x_lo().clone(), self.y_at(self.x_lo()))
    }

    pub fn end(&self) -> Pt {
        Pt::new(self.x_hi().clone(), self.y_at(self.x_hi()))
    }

    fn same_line(&self, other: &Segment) -> bool {
        self.slope == other.slope && self.intercept == other.intercept
    }

    /// The intersection with `other`, when it is a single point.
    pub fn meet(&self, other: &Segment) -> Option<Pt> {
        if self.slope == other.slope {
            if self.intercept != other.intercept {
                return None;
            }
            // collinear: only a shared endpoint counts as a point meeting
            if self.x_hi() == other.x_lo() {
                return Some(self.end());
            }
            if other.x_hi() == self.x_lo() {
                return Some(self.start());
            }
            return None;
        }
        let x = (&other.intercept - &self.intercept) / (&self.slope - &other.slope);
        (self.covers(&x) && other.covers(&x)).then(|| Pt::new(x.clone(), self.y_at(&x)))
    }

    /// Whether the two segments share at least one point.
    pub fn touches(&self, other: &Segment) -> bool {
        if self.same_line(other) {
            return self.x_lo() <= other.x_hi() && other.x_lo() <= self.x_hi();
        }
        self.meet(other).is_some()
    }

    /// Clips to `[lo, hi]`; `None` unless a nondegenerate piece remains.
    pub fn clip(&self, lo: &Rat, hi: &Rat) -> Option<Segment> {
        let a = self.x_lo().clone().max(lo.clone());
        let b = self.x_hi().clone().min(hi.clone());
        (a < b).then(|| Segment::new(a, b, self.slope.clone(), self.intercept.clone()))
    }
}

/// One problem found while validating a covering.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Issue {
    pub segment: Option<usize>,
    pub other: Option<usize>,
    pub reason: String,
}

impl fmt::Display for Issue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.segment, self.other) {
            (Some(i), Some(j)) => write!(f, "segments {i} and {j}: {}", self.reason),
            (Some(i), None) => write!(f, "segment {i}: {}", self.reason),
            _ => write!(f, "{}", self.reason),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PlError {
    #[error("invalid covering: {}", .0.iter().map(Issue::to_string).collect::<Vec<_>>().join("; "))]
    Invalid(Vec<Issue>),
    #[error("x = {x} lies outside the base [{a}, {b}]")]
    OutsideBase { x: Rat, a: Rat, b: Rat },
    #[error("point {0} is not on the total space")]
    NotOnTotalSpace(Pt),
    #[error("invalid subinterval [{lo}, {hi}]")]
    BadSubinterval { lo: Rat, hi: Rat },
    #[error("component index {index} out of range ({count} components)")]
    BadComponent { index: usize, count: usize },
    #[error("no components selected")]
    EmptySelection,
}

/// Projection of a union of segments onto the base `[a, b]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "PLCoveringRepr", into = "PLCoveringRepr")]
pub struct PLCovering {
    base: (Rat, Rat),
    segments: Vec<Segment>,
}

#[derive(Serialize, Deserialize)]
struct PLCoveringRepr {
    base: (Rat, Rat),
    segments: Vec<Segment>,
}

impl TryFrom<PLCoveringRepr> for PLCovering {
    type Error = PlError;
    fn try_from(r: PLCoveringRepr) -> Result<Self, PlError> {
        PLCovering::new(r.base.0, r.base.1, r.segments)
    }
}

impl From<PLCovering> for PLCoveringRepr {
    fn from(c: PLCovering) -> Self {
        PLCoveringRepr {
            base: c.base,
            segments: c.segments,
        }
    }
}

impl PLCovering {
    /// Validates and builds a covering. All problems are reported together.
    pub fn new(a: Rat, b: Rat, segments: Vec<Segment>) -> Result<PLCovering, PlError> {
        let mut issues = Vec::new();
        if a >= b {
            issues.push(Issue {
                segment: None,
                other: None,
                reason: format!("base [{a}, {b}] is empty or inverted"),
            });
        }
        for (i, s) in segments.iter().enumerate() {
            if s.x_lo() >= s.x_hi() {
                issues.push(Issue {
                    segment: Some(i),
                    other: None,
                    reason: format!("x range [{}, {}] is not increasing", s.x_lo(), s.x_hi()),
                });
            }
            if s.x_lo() < &a || s.x_hi() > &b {
                issues.push(Issue {
                    segment: Some(i),
                    other: None,
                    reason: "extends outside the base".into(),
                });
            }
        }
        for i in 0..segments.len() {
            for j in i + 1..segments.len() {
                let (s, t) = (&segments[i], &segments[j]);
                if s.same_line(t) && s.x_lo() < t.x_hi() && t.x_lo() < s.x_hi() {
                    issues.push(Issue {
                        segment: Some(i),
                        other: Some(j),
                        reason: "collinear overlap".into(),
                    });
                }
            }
        }
        if !issues.is_empty() {
            return Err(PlError::Invalid(issues));
        }
        Ok(PLCovering {
            base: (a, b),
            segments,
        })
    }

    pub fn base(&self) -> (&Rat, &Rat) {
        (&self.base.0, &self.base.1)
    }

    pub fn segments(&self) -> &[Segment] {
        &self.segments
    }

    /// Whether `p` lies on the total space.
    pub fn contains(&self, p: &Pt) -> bool {
        self.segments.iter().any(|s| s.contains(p))
    }

    /// The covering over `[lo, hi]`: the preimage of that subinterval.
    /// Segments meeting it in a single point are dropped; for an open map
    /// such a point always lies on another kept segment.
    pub fn restrict(&self, lo: &Rat, hi: &Rat) -> Result<PLCovering, PlError> {
        if lo >= hi || lo < &self.base.0 || hi > &self.base.1 {
            return Err(PlError::BadSubinterval {
                lo: lo.clone(),
                hi: hi.clone(),
            });
        }
        let segs = self
            .segments
            .iter()
            .filter_map(|s| s.clip(lo, hi))
            .collect();
        PLCovering::new(lo.clone(), hi.clone(), segs)
    }

    /// Connected components of the total space as lists of segment indices,
    /// ordered by their smallest segment index.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.segments.len();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut [usize], i: usize) -> usize {
            let mut r = i;
            while parent[r] != r {
                r = parent[r];
            }
            let mut k = i;
            while parent[k] != r {
                let next = parent[k];
                parent[k] = r;
                k = next;
            }
            r
        }
        for i in 0..n {
            for j in i + 1..n {
                if self.segments[i].touches(&self.segments[j]) {
                    let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
                    if ri != rj {
                        parent[ri.max(rj)] = ri.min(rj);
                    }
                }
            }
        }
        let mut comps: Vec<Vec<usize>> = Vec::new();
        let mut root_slot = vec![usize::MAX; n];
        for i in 0..n {
            let r = find(&mut parent, i);
            if root_slot[r] == usize::MAX {
                root_slot[r] = comps.len();
                comps.push(Vec::new());
            }
            comps[root_slot[r]].push(i);
        }
        comps
    }

    /// The sub-covering formed by the chosen components, over the hull of
    /// their projection.
    pub fn select_components(&self, which: &[usize]) -> Result<PLCovering, PlError> {
        let comps = self.components();
        if which.is_empty() {
            return Err(PlError::EmptySelection);
        }
        let mut chosen = BTreeSet::new();
        for &w in which {
            let comp = comps.get(w).ok_or(PlError::BadComponent {
                index: w,
                count: comps.len(),
            })?;
            chosen.extend(comp.iter().copied());
        }
        let segs: Vec<Segment> = chosen.iter().map(|&i| self.segments[i].clone()).collect();
        let lo = segs.iter().map(|s| s.x_lo().clone()).min().unwrap();
        let hi = segs.iter().map(|s| s.x_hi().clone()).max().unwrap();
        PLCovering::new(lo, hi, segs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::q;

    fn seg(lo: i64, hi: i64, m: Rat, c: Rat) -> Segment {
        Segment::new(Rat::from(lo), Rat::from(hi), m, c)
    }

    #[test]
    fn validation_lists_every_problem() {
        let err = PLCovering::new(
            q(0, 1),
            q(1, 1),
            vec![
                seg(0, 1, q(0, 1), q(0, 1)),
                seg(0, 2, q(0, 1), q(1, 1)),
                seg(0, 1, q(0, 1), q(0, 1)),
                seg(1, 1, q(0, 1), q(5, 1)),
            ],
        )
        .unwrap_err();
        let PlError::Invalid(issues) = err else {
            panic!()
        };
        assert_eq!(issues.len(), 3);
        assert!(issues
            .iter()
            .any(|i| i.segment == Some(0) && i.other == Some(2)));
        assert!(issues.iter().any(|i| i.segment == Some(1)));
        assert!(issues.iter().any(|i| i.segment == Some(3)));
    }

    #[test]
    fn collinear_continuation_is_allowed() {
        let c = PLCovering::new(
            q(0, 1),
            q(2, 1),
            vec![seg(0, 1, q(1, 1), q(0, 1)), seg(1, 2, q(1, 1), q(0, 1))],
        )
        .unwrap();
        assert_eq!(c.components(), vec![vec![0, 1]]);
    }

    #[test]
    fn json_shape() {
        let c = PLCovering::new(q(0, 1), q(1, 1), vec![seg(0, 1, q(1, 2), q(-3, 1))]).unwrap();
        let s = serde_json::to_string(&c).unwrap();
        assert_eq!(
            s,
            r#"{"base":["0","1"],"segments":[{"x":["0","1"],"slope":"1/2","intercept":"-3"}]}"#
        );
        let back: PLCovering = serde_json::from_str(&s).unwrap();
        assert_eq!(back, c);
        assert!(serde_json::from_str::<PLCovering>(r#"{"base":["1","0"],"segments":[]}"#).is_err());
    }

    #[test]
    fn meets_and_clips() {
        let a = Segment::through(&Pt::new(q(-1, 1), q(-1, 1)), &Pt::new(q(1, 1), q(1, 1)));
        let b = Segment::through(&Pt::new(q(-1, 1), q(1, 1)), &Pt::new(q(1, 1), q(-1, 1)));
        assert_eq!(a.meet(&b), Some(Pt::new(q(0, 1), q(0, 1))));
        assert_eq!(a.clip(&q(0, 1), &q(2, 1)).unwrap().xs, (q(0, 1), q(1, 1)));
        assert!(a.clip(&q(1, 1), &q(2, 1)).is_none());
    }
}
