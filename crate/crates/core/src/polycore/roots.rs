//! Real algebraic numbers and real-root isolation.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_traits::Signed;
use serde::{Deserialize, Serialize};

use super::sturm::{squarefree_decompose, sturm_count_closed, Bound, SturmSequence};
use super::{Interval, PolyError, UniPoly};
use crate::rat::Rat;

/// A real root of a rational polynomial, pinned by an isolating interval.
///
/// Invariant: the (squarefree) defining polynomial has exactly one root in
/// `[lo, hi]`; when `lo < hi` neither endpoint is a root, so the polynomial
/// changes sign across the interval.
#[derive(Clone, Serialize, Deserialize)]
#[serde(try_from = "AlgebraicRealRepr", into = "AlgebraicRealRepr")]
pub struct AlgebraicReal {
    defining: UniPoly,
    lo: Rat,
    hi: Rat,
}

#[derive(Serialize, Deserialize)]
struct AlgebraicRealRepr {
    poly: UniPoly,
    interval: (Rat, Rat),
}

impl TryFrom<AlgebraicRealRepr> for AlgebraicReal {
    type Error = PolyError;
    fn try_from(r: AlgebraicRealRepr) -> Result<Self, PolyError> {
        AlgebraicReal::new(r.poly, r.interval.0, r.interval.1)
    }
}

impl From<AlgebraicReal> for AlgebraicRealRepr {
    fn from(a: AlgebraicReal) -> Self {
        AlgebraicRealRepr {
            poly: a.defining,
            interval: (a.lo, a.hi),
        }
    }
}

impl AlgebraicReal {
    pub fn new(defining: UniPoly, lo: Rat, hi: Rat) -> Result<AlgebraicReal, PolyError> {
        if defining.is_zero() {
            return Err(PolyError::UndefinedRootCount);
        }
        if lo > hi {
            return Err(PolyError::NotIsolating);
        }
        let defining = defining.squarefree_part();
        if sturm_count_closed(&defining, &lo, &hi)? != 1 {
            return Err(PolyError::NotIsolating);
        }
        if defining.eval(&hi).is_zero() {
            return Ok(AlgebraicReal::from_rational(hi));
        }
        if defining.eval(&lo).is_zero() {
            return Ok(AlgebraicReal::from_rational(lo));
        }
        Ok(AlgebraicReal { defining, lo, hi })
    }

    pub fn from_rational(r: Rat) -> AlgebraicReal {
        AlgebraicReal {
            defining: UniPoly::linear_root(&r),
            lo: r.clone(),
            hi: r,
        }
    }

    pub fn defining(&self) -> &UniPoly {
        &self.defining
    }

    pub fn lo(&self) -> &Rat {
        &self.lo
    }

    pub fn hi(&self) -> &Rat {
        &self.hi
    }

    pub fn enclosure(&self) -> Interval {
        Interval {
            lo: self.lo.clone(),
            hi: self.hi.clone(),
        }
    }

    pub fn width(&self) -> Rat {
        &self.hi - &self.lo
    }

    /// The exact value when the root is known to be rational.
    pub fn exact(&self) -> Option<&Rat> {
        (self.lo == self.hi).then_some(&self.lo)
    }

    /// Halves the isolating interval (or collapses it onto a rational root
    /// hit by the midpoint).
    pub fn refine(&mut self) {
        if self.lo == self.hi {
            return;
        }
        let mid = self.lo.midpoint(&self.hi);
        let s = self.defining.sign_at(&mid);
        if s == 0 {
            *self = AlgebraicReal::from_rational(mid);
        } else if s * self.defining.sign_at(&self.lo) < 0 {
            self.hi = mid;
        } else {
            self.lo = mid;
        }
    }

    /// Refines until the interval width is at most `width`.
    pub fn refine_to(&mut self, width: &Rat) {
        while &self.width() > width {
            self.refine();
        }
    }

    /// Decides whether the root is rational; if so the interval collapses onto
    /// it and the defining polynomial becomes linear.
    ///
    /// A rational root `p/q` of a primitive integer polynomial has `q` dividing
    /// the leading coefficient `c`, and distinct such rationals are at least
    /// `1/c^2` apart, so after refining below that width the simplest rational
    /// in the interval is the only candidate.
    pub fn try_rationalize(&mut self) -> Option<Rat> {
        if let Some(r) = self.exact() {
            return Some(r.clone());
        }
        if self.defining.degree() == Some(1) {
            let c = self.defining.coeffs();
            let r = -(&c[0] / &c[1]);
            *self = AlgebraicReal::from_rational(r.clone());
            return Some(r);
        }
        let ints = self.defining.primitive_integer();
        let lc: BigInt = ints.last().unwrap().abs();
        let sep = Rat::from_int(lc.clone() * lc).recip();
        while self.width() >= sep {
            self.refine();
            if let Some(r) = self.exact() {
                return Some(r.clone());
            }
        }
        let cand = Rat::simplest_between(&self.lo, &self.hi);
        if self.defining.eval(&cand).is_zero() {
            *self = AlgebraicReal::from_rational(cand.clone());
            Some(cand)
        } else {
            None
        }
    }

    /// Exact sign of `p` at this number.
    pub fn sign_of(&self, p: &UniPoly) -> i32 {
        if let Some(r) = self.exact() {
            return p.sign_at(r);
        }
        if p.is_zero() {
            return 0;
        }
        let g = self.defining.gcd(p);
        if g.degree().unwrap_or(0) > 0
            && sturm_count_closed(&g, &self.lo, &self.hi).unwrap_or(0) > 0
        {
            return 0;
        }
        let mut me = self.clone();
        let pure = p.squarefree_part();
        loop {
            // p has no root in the closed interval once the count drops to zero
            if sturm_count_closed(&pure, &me.lo, &me.hi).unwrap_or(1) == 0 {
                return p.sign_at(&me.lo.midpoint(&me.hi));
            }
            me.refine();
            if let Some(r) = me.exact() {
                return p.sign_at(r);
            }
        }
    }

    fn overlaps(&self, other: &AlgebraicReal) -> bool {
        self.lo <= other.hi && other.lo <= self.hi
    }
}

impl PartialEq for AlgebraicReal {
    fn eq(&self, other: &Self) -> bool {
        if let (Some(a), Some(b)) = (self.exact(), other.exact()) {
            return a == b;
        }
        if !self.overlaps(other) {
            return false;
        }
        let g = self.defining.gcd(&other.defining);
        if g.degree().unwrap_or(0) == 0 {
            return false;
        }
        let lo = (&self.lo).max(&other.lo).clone();
        let hi = (&self.hi).min(&other.hi).clone();
        sturm_count_closed(&g, &lo, &hi).unwrap_or(0) > 0
    }
}

impl Eq for AlgebraicReal {}

impl PartialOrd for AlgebraicReal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for AlgebraicReal {
    fn cmp(&self, other: &Self) -> Ordering {
        if self == other {
            return Ordering::Equal;
        }
        let mut a = self.clone();
        let mut b = other.clone();
        while a.overlaps(&b) {
            a.refine();
            b.refine();
        }
        a.lo.cmp(&b.lo)
    }
}

impl fmt::Display for AlgebraicReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.exact() {
            Some(r) => write!(f, "{r}"),
            None => write!(f, "root of {} in [{}, {}]", self.defining, self.lo, self.hi),
        }
    }
}

impl fmt::Debug for AlgebraicReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Distinct real roots with multiplicities, in ascending order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootMultiset {
    pub roots: Vec<(AlgebraicReal, u32)>,
}

impl RootMultiset {
    pub fn distinct(&self) -> usize {
        self.roots.len()
    }

    pub fn total_multiplicity(&self) -> u32 {
        self.roots.iter().map(|(_, m)| m).sum()
    }

    /// Multiplicities sorted descending.
    pub fn profile(&self) -> Vec<u32> {
        let mut p: Vec<u32> = self.roots.iter().map(|(_, m)| *m).collect();
        p.sort_unstable_by(|a, b| b.cmp(a));
        p
    }

    pub fn all_rational(&self) -> bool {
        self.roots.iter().all(|(r, _)| r.exact().is_some())
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }
}

/// Isolates every real root of `p`, with multiplicities.
///
/// Sturm bisection on the squarefree part starting from the Cauchy bound;
/// multiplicities come from the squarefree decomposition; rational roots are
/// returned as degenerate intervals.
pub fn isolate_real_roots(p: &UniPoly) -> Result<RootMultiset, PolyError> {
    if p.is_zero() {
        return Err(PolyError::UndefinedRootCount);
    }
    let factors = squarefree_decompose(p)?;
    if factors.is_empty() {
        return Ok(RootMultiset { roots: Vec::new() });
    }
    let sqf = factors.iter().fold(UniPoly::one(), |acc, (f, _)| &acc * f);
    let seq = SturmSequence::new(&sqf)?;
    let bound = sqf.cauchy_bound();
    let lo = -&bound;
    let total = seq.count(&Bound::At(lo.clone()), &Bound::At(bound.clone()));
    let mut cells = Vec::new();
    bisect(&seq, &sqf, lo, bound, total, &mut cells);

    let mut roots = Vec::with_capacity(cells.len());
    for (lo, hi) in cells {
        let (factor, mult) = factors
            .iter()
            .find(|(f, _)| {
                if lo == hi {
                    f.eval(&lo).is_zero()
                } else {
                    f.sign_at(&lo) * f.sign_at(&hi) < 0
                }
            })
            .expect("every isolated root belongs to exactly one squarefree factor");
        let mut root = if lo == hi {
            AlgebraicReal::from_rational(lo)
        } else {
            AlgebraicReal {
                defining: factor.clone(),
                lo,
                hi,
            }
        };
        root.try_rationalize();
        roots.push((root, *mult));
    }
    Ok(RootMultiset { roots })
}

fn bisect(
    seq: &SturmSequence,
    p: &UniPoly,
    lo: Rat,
    hi: Rat,
    count: usize,
    out: &mut Vec<(Rat, Rat)>,
) {
    if count == 0 {
        return;
    }
    if count == 1 {
        if p.eval(&hi).is_zero() {
            out.push((hi.clone(), hi));
            return;
        }
        if !p.eval(&lo).is_zero() {
            out.push((lo, hi));
            return;
        }
    }
    let mid = lo.midpoint(&hi);
    let left = seq.count(&Bound::At(lo.clone()), &Bound::At(mid.clone()));
    bisect(seq, p, lo, mid.clone(), left, out);
    bisect(seq, p, mid, hi, count - left, out);
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::q;

    fn values(rm: &RootMultiset) -> Vec<(Rat, u32)> {
        rm.roots
            .iter()
            .map(|(r, m)| (r.exact().cloned().expect("rational root"), *m))
            .collect()
    }

    #[test]
    fn isolates_examples() {
        let rm = isolate_real_roots(&UniPoly::from_ints(&[-1, 0, 1])).unwrap();
        assert_eq!(values(&rm), vec![(q(-1, 1), 1), (q(1, 1), 1)]);
        let rm = isolate_real_roots(&UniPoly::from_ints(&[-2, 5, -4, 1])).unwrap();
        assert_eq!(values(&rm), vec![(q(1, 1), 2), (q(2, 1), 1)]);
        let rm = isolate_real_roots(&UniPoly::from_ints(&[1, 0, 1])).unwrap();
        assert!(rm.is_empty());
        assert!(isolate_real_roots(&UniPoly::zero()).is_err());
    }

    #[test]
    fn rational_roots_with_odd_denominators_are_exact() {
        let p = UniPoly::from_roots(&[q(1, 3), q(-2, 7), q(5, 11)]);
        let rm = isolate_real_roots(&p).unwrap();
        assert_eq!(
            values(&rm),
            vec![(q(-2, 7), 1), (q(1, 3), 1), (q(5, 11), 1)]
        );
    }

    #[test]
    fn irrational_roots_stay_intervals() {
        let p = UniPoly::from_ints(&[-2, 0, 1]);
        let rm = isolate_real_roots(&p).unwrap();
        assert_eq!(rm.distinct(), 2);
        for (r, _) in &rm.roots {
            assert!(r.exact().is_none());
            let mut r = r.clone();
            r.refine_to(&q(1, 1_000_000));
            let approx = r.lo().to_f64().abs();
            assert!((approx - 2f64.sqrt()).abs() < 1e-5);
        }
    }

    #[test]
    fn equality_and_order() {
        let sqrt2 = AlgebraicReal::new(UniPoly::from_ints(&[-2, 0, 1]), q(1, 1), q(2, 1)).unwrap();
        let also = AlgebraicReal::new(
            &UniPoly::from_ints(&[-2, 0, 1]) * &UniPoly::from_ints(&[-3, 1]),
            q(5, 4),
            q(3, 2),
        )
        .unwrap();
        assert_eq!(sqrt2, also);
        let three_halves = AlgebraicReal::from_rational(q(3, 2));
        assert!(sqrt2 < three_halves);
        assert!(AlgebraicReal::from_rational(q(7, 5)) < sqrt2);
        assert!(AlgebraicReal::new(UniPoly::from_ints(&[-2, 0, 1]), q(0, 1), q(1, 1)).is_err());
    }

    #[test]
    fn sign_of_polynomial_at_algebraic_point() {
        let sqrt2 = AlgebraicReal::new(UniPoly::from_ints(&[-2, 0, 1]), q(1, 1), q(2, 1)).unwrap();
        assert_eq!(sqrt2.sign_of(&UniPoly::from_ints(&[-2, 0, 1])), 0);
        assert_eq!(sqrt2.sign_of(&UniPoly::from_ints(&[-1, 1])), 1);
        assert_eq!(sqrt2.sign_of(&UniPoly::from_ints(&[-3, 2])), -1);
    }
}
