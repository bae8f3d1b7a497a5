use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::Interval;
use crate::rat::Rat;

/// Dense univariate polynomial over the rationals, coefficients in ascending
/// degree order. The zero polynomial has no coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(from = "Vec<Rat>", into = "Vec<Rat>")]
pub struct UniPoly {
    coeffs: Vec<Rat>,
}

impl From<Vec<Rat>> for UniPoly {
    fn from(coeffs: Vec<Rat>) -> Self {
        UniPoly::new(coeffs)
    }
}

impl From<UniPoly> for Vec<Rat> {
    fn from(p: UniPoly) -> Self {
        p.coeffs
    }
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<Rat>) -> UniPoly {
        while coeffs.last().is_some_and(Rat::is_zero) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> UniPoly {
        UniPoly::new(coeffs.iter().map(|&c| Rat::from(c)).collect())
    }

    pub fn zero() -> UniPoly {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn constant(c: Rat) -> UniPoly {
        UniPoly::new(vec![c])
    }

    pub fn one() -> UniPoly {
        UniPoly::constant(Rat::one())
    }

    /// `t`
    pub fn t() -> UniPoly {
        UniPoly::new(vec![Rat::zero(), Rat::one()])
    }

    /// `t - r`
    pub fn linear_root(r: &Rat) -> UniPoly {
        UniPoly::new(vec![-r, Rat::one()])
    }

    /// `c * t^k`
    pub fn monomial(c: Rat, k: usize) -> UniPoly {
        let mut coeffs = vec![Rat::zero(); k];
        coeffs.push(c);
        UniPoly::new(coeffs)
    }

    /// `prod (t - r_i)`
    pub fn from_roots<'a>(roots: impl IntoIterator<Item = &'a Rat>) -> UniPoly {
        roots
            .into_iter()
            .fold(UniPoly::one(), |acc, r| &acc * &UniPoly::linear_root(r))
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Rat {
        self.coeffs.get(k).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&Rat> {
        self.coeffs.last()
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn sign_at(&self, x: &Rat) -> i32 {
        self.eval(x).signum()
    }

    /// Horner enclosure over an interval.
    pub fn eval_interval(&self, x: &Interval) -> Interval {
        let mut acc = Interval::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * x) + &Interval::point(c.clone());
        }
        acc
    }

    pub fn derivative(&self) -> UniPoly {
        UniPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * Rat::from(i))
                .collect(),
        )
    }

    pub fn scale(&self, c: &Rat) -> UniPoly {
        UniPoly::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn monic(&self) -> UniPoly {
        match self.leading() {
            None => UniPoly::zero(),
            Some(lc) => self.scale(&lc.recip()),
        }
    }

    pub fn pow(&self, e: u32) -> UniPoly {
        (0..e).fold(UniPoly::one(), |acc, _| &acc * self)
    }

    /// Euclidean division. Panics on a zero divisor.
    pub fn div_rem(&self, divisor: &UniPoly) -> (UniPoly, UniPoly) {
        let dd = divisor.degree().expect("division by the zero polynomial");
        let lc = divisor.leading().unwrap().clone();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (UniPoly::zero(), self.clone());
        }
        let mut quot = vec![Rat::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = &rem[k + dd] / &lc;
            if c.is_zero() {
                continue;
            }
            for (j, dc) in divisor.coeffs.iter().enumerate() {
                rem[k + j] -= &(&c * dc);
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        (UniPoly::new(quot), UniPoly::new(rem))
    }

    pub fn rem(&self, divisor: &UniPoly) -> UniPoly {
        self.div_rem(divisor).1
    }

    /// Exact quotient; panics if the division leaves a remainder.
    pub fn exact_div(&self, divisor: &UniPoly) -> UniPoly {
        let (q, r) = self.div_rem(divisor);
        assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    /// Monic greatest common divisor (zero if both inputs are zero).
    pub fn gcd(&self, other: &UniPoly) -> UniPoly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r.monic();
        }
        a.monic()
    }

    /// Squarefree part `p / gcd(p, p')`, monic.
    pub fn squarefree_part(&self) -> UniPoly {
        if self.degree().unwrap_or(0) == 0 {
            return self.monic();
        }
        let g = self.gcd(&self.derivative());
        self.exact_div(&g).monic()
    }

    pub fn is_squarefree(&self) -> bool {
        self.gcd(&self.derivative()).degree() == Some(0)
    }

    /// Integer polynomial with the same roots: denominators cleared and the
    /// content removed, leading coefficient positive.
    pub fn primitive_integer(&self) -> Vec<BigInt> {
        let den = Rat::common_denominator(&self.coeffs);
        let mut ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| c.numer() * (&den / c.denom()))
            .collect();
        let content = ints.iter().fold(BigInt::zero(), |g, c| g.gcd(c));
        if !content.is_zero() && !content.is_one() {
            for c in ints.iter_mut() {
                *c = &*c / &content;
            }
        }
        if ints.last().is_some_and(|c| c.is_negative()) {
            for c in ints.iter_mut() {
                *c = -&*c;
            }
        }
        ints
    }

    /// Cauchy bound: every real root has absolute value strictly below it.
    pub fn cauchy_bound(&self) -> Rat {
        let lc = self.leading().expect("bound of the zero polynomial");
        let max = self.coeffs[..self.coeffs.len() - 1]
            .iter()
            .map(|c| (c / lc).abs())
            .max()
            .unwrap_or_else(Rat::zero);
        Rat::one() + max
    }

    /// Substitute `t -> c * t` (used for the sign flip `t -> -t`).
    pub fn scale_variable(&self, c: &Rat) -> UniPoly {
        let mut pw = Rat::one();
        let mut out = Vec::with_capacity(self.coeffs.len());
        for a in &self.coeffs {
            out.push(a * &pw);
            pw = &pw * c;
        }
        UniPoly::new(out)
    }
}

impl Add for &UniPoly {
    type Output = UniPoly;
    fn add(self, rhs: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UniPoly::new((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl Sub for &UniPoly {
    type Output = UniPoly;
    fn sub(self, rhs: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UniPoly::new((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl Mul for &UniPoly {
    type Output = UniPoly;
    fn mul(self, rhs: &UniPoly) -> UniPoly {
        if self.is_zero() || rhs.is_zero() {
            return UniPoly::zero();
        }
        let mut out = vec![Rat::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += &(a * b);
            }
        }
        UniPoly::new(out)
    }
}

impl Neg for &UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        UniPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.signum() < 0;
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            let show_coeff = k == 0 || !mag.is_one();
            if show_coeff {
                write!(f, "{mag}")?;
            }
            match k {
                0 => {}
                1 => write!(f, "{}t", if show_coeff { "*" } else { "" })?,
                _ => write!(f, "{}t^{k}", if show_coeff { "*" } else { "" })?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "UniPoly({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::q;

    #[test]
    fn arithmetic_and_display() {
        let p = UniPoly::from_ints(&[-1, 0, 1]);
        assert_eq!(p.to_string(), "t^2 - 1");
        let r = UniPoly::from_ints(&[-2, 5, -4, 1]);
        assert_eq!(r.to_string(), "t^3 - 4*t^2 + 5*t - 2");
        let (qt, rm) = r.div_rem(&UniPoly::from_ints(&[-1, 1]));
        assert!(rm.is_zero());
        assert_eq!(qt, UniPoly::from_ints(&[2, -3, 1]));
        assert_eq!(p.eval(&q(3, 1)), q(8, 1));
        assert_eq!(p.derivative(), UniPoly::from_ints(&[0, 2]));
    }

    #[test]
    fn gcd_and_squarefree() {
        let a = UniPoly::from_ints(&[-2, 5, -4, 1]); // (t-1)^2 (t-2)
        let g = a.gcd(&a.derivative());
        assert_eq!(g, UniPoly::from_ints(&[-1, 1]));
        assert_eq!(a.squarefree_part(), UniPoly::from_ints(&[2, -3, 1]));
        assert!(!a.is_squarefree());
        assert!(UniPoly::from_ints(&[-1, 0, 1]).is_squarefree());
    }

    #[test]
    fn primitive_integer_form() {
        let p = UniPoly::new(vec![q(-1, 2), q(0, 1), q(-3, 4)]);
        let ints = p.primitive_integer();
        assert_eq!(
            ints,
            vec![BigInt::from(2), BigInt::from(0), BigInt::from(3)]
        );
    }

    #[test]
    fn cauchy_bound_dominates_roots() {
        let p = UniPoly::from_roots(&[q(3, 1), q(-7, 2), q(1, 5)]);
        let b = p.cauchy_bound();
        assert!(b > q(7, 2));
    }
}
