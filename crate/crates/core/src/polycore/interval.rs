//! Closed intervals with exact rational endpoints.
//!
//! Endpoints are exact, so every operation yields a true enclosure without
//! any rounding-mode bookkeeping.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::rat::Rat;

#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(from = "(Rat, Rat)", into = "(Rat, Rat)")]
pub struct Interval {
    pub lo: Rat,
    pub hi: Rat,
}

impl From<(Rat, Rat)> for Interval {
    fn from((lo, hi): (Rat, Rat)) -> Self {
        Interval::new(lo, hi)
    }
}

impl From<Interval> for (Rat, Rat) {
    fn from(i: Interval) -> Self {
        (i.lo, i.hi)
    }
}

impl Interval {
    /// Builds `[min(a, b), max(a, b)]`.
    pub fn new(a: Rat, b: Rat) -> Interval {
        if a <= b {
            Interval { lo: a, hi: b }
        } else {
            Interval { lo: b, hi: a }
        }
    }

    pub fn point(x: Rat) -> Interval {
        Interval {
            lo: x.clone(),
            hi: x,
        }
    }

    pub fn zero() -> Interval {
        Interval::point(Rat::zero())
    }

    pub fn one() -> Interval {
        Interval::point(Rat::one())
    }

    pub fn width(&self) -> Rat {
        &self.hi - &self.lo
    }

    pub fn contains(&self, x: &Rat) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn contains_zero(&self) -> bool {
        self.lo.signum() <= 0 && self.hi.signum() >= 0
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    pub fn intersects(&self, other: &Interval) -> bool {
        self.lo <= other.hi && other.lo <= self.hi
    }

    pub fn hull(&self, other: &Interval) -> Interval {
        Interval {
            lo: self.lo.clone().min(other.lo.clone()),
            hi: self.hi.clone().max(other.hi.clone()),
        }
    }

    pub fn scale(&self, c: &Rat) -> Interval {
        Interval::new(&self.lo * c, &self.hi * c)
    }

    pub fn pow(&self, e: u32) -> Interval {
        if e == 0 {
            return Interval::one();
        }
        let a = self.lo.pow(e);
        let b = self.hi.pow(e);
        if e % 2 == 1 {
            return Interval { lo: a, hi: b };
        }
        if self.contains_zero() {
            Interval {
                lo: Rat::zero(),
                hi: a.max(b),
            }
        } else {
            Interval::new(a, b)
        }
    }
}

impl Add for &Interval {
    type Output = Interval;
    fn add(self, rhs: &Interval) -> Interval {
        Interval {
            lo: &self.lo + &rhs.lo,
            hi: &self.hi + &rhs.hi,
        }
    }
}

impl Sub for &Interval {
    type Output = Interval;
    fn sub(self, rhs: &Interval) -> Interval {
        Interval {
            lo: &self.lo - &rhs.hi,
            hi: &self.hi - &rhs.lo,
        }
    }
}

impl Mul for &Interval {
    type Output = Interval;
    fn mul(self, rhs: &Interval) -> Interval {
        if self.is_point() {
            return rhs.scale(&self.lo);
        }
        if rhs.is_point() {
            return self.scale(&rhs.lo);
        }
        let cands = [
            &self.lo * &rhs.lo,
            &self.lo * &rhs.hi,
            &self.hi * &rhs.lo,
            &self.hi * &rhs.hi,
        ];
        let lo = cands.iter().min().unwrap().clone();
        let hi = cands.iter().max().unwrap().clone();
        Interval { lo, hi }
    }
}

impl Neg for &Interval {
    type Output = Interval;
    fn neg(self) -> Interval {
        Interval {
            lo: -&self.hi,
            hi: -&self.lo,
        }
    }
}

impl fmt::Debug for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}
