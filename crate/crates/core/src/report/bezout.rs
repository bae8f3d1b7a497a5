use serde::{Deserialize, Serialize};

use crate::bezoutian::{fiber_from_certificate, is_hyperbolic, BezError, SigmaPoint, FIBER_CAP};
use crate::polycore::AlgebraicReal;
use crate::rat::Rat;

/// Width to which irrational fiber coordinates are refined before reporting.
pub fn coord_width() -> Rat {
    Rat::new(1, 1_000_000)
}

/// A fiber coordinate: an exact rational or an isolating interval.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Coord {
    Exact(Rat),
    Interval(Rat, Rat),
}

impl Coord {
    fn of(r: &AlgebraicReal) -> Coord {
        match r.exact() {
            Some(v) => Coord::Exact(v.clone()),
            None => Coord::Interval(r.lo().clone(), r.hi().clone()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BezoutReport {
    pub n: usize,
    pub point: Vec<Rat>,
    pub hyperbolic: bool,
    pub profile: Option<Vec<u32>>,
    /// Distinct roots of the Vieta polynomial in ascending order.
    pub roots: Option<Vec<Coord>>,
    pub fiber: Option<Vec<Vec<Coord>>>,
    pub index: Option<u64>,
    /// Fiber cardinality.
    pub d: Option<u64>,
    pub collapse: Option<bool>,
    pub branch: Option<bool>,
}

pub fn bezout_report(a: &SigmaPoint) -> Result<BezoutReport, BezError> {
    let n = a.n();
    if n > FIBER_CAP {
        return Err(BezError::DegreeCap { n, cap: FIBER_CAP });
    }
    let mut report = BezoutReport {
        n,
        point: a.coords().to_vec(),
        hyperbolic: false,
        profile: None,
        roots: None,
        fiber: None,
        index: None,
        d: None,
        collapse: None,
        branch: None,
    };
    let Some(cert) = is_hyperbolic(a) else {
        return Ok(report);
    };
    let fib = fiber_from_certificate(&cert);
    let width = coord_width();
    let roots: Vec<Coord> = fib
        .roots
        .iter()
        .map(|r| {
            let mut r = r.clone();
            r.refine_to(&width);
            Coord::of(&r)
        })
        .collect();
    report.hyperbolic = true;
    report.fiber = Some(
        fib.points
            .iter()
            .map(|p| p.iter().map(|&j| roots[j].clone()).collect())
            .collect(),
    );
    report.roots = Some(roots);
    report.index = Some(fib.index);
    report.d = Some(fib.len() as u64);
    report.collapse = Some(cert.profile.len() == 1);
    report.branch = Some(fib.index > 1);
    report.profile = Some(cert.profile);
    Ok(report)
}
