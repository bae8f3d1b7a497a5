//! Sparse multivariate polynomials with rational coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use super::{Interval, UniPoly};
use crate::rat::Rat;

/// A polynomial in `nvars` variables as a map from exponent vectors to
/// nonzero coefficients. Exponent vectors compare lexicographically, so the
/// last entry is the leading term with variable 0 most significant.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MPoly {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, Rat>,
}

impl MPoly {
    pub fn zero(nvars: usize) -> MPoly {
        MPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: Rat) -> MPoly {
        let mut p = MPoly::zero(nvars);
        p.add_term(vec![0; nvars], c);
        p
    }

    /// The variable with 0-based index `i`.
    pub fn var(nvars: usize, i: usize) -> MPoly {
        assert!(i < nvars, "variable index out of range");
        let mut e = vec![0; nvars];
        e[i] = 1;
        MPoly::monomial(e, Rat::one())
    }

    pub fn monomial(exps: Vec<u32>, c: Rat) -> MPoly {
        let mut p = MPoly::zero(exps.len());
        p.add_term(exps, c);
        p
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Vec<u32>, Rat)>) -> MPoly {
        let mut p = MPoly::zero(nvars);
        for (e, c) in terms {
            assert_eq!(e.len(), nvars, "exponent vector length");
            p.add_term(e, c);
        }
        p
    }

    fn add_term(&mut self, exps: Vec<u32>, c: Rat) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(exps).or_insert_with(Rat::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &Rat)> {
        self.terms.iter()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    pub fn degree_in(&self, var: usize) -> Option<u32> {
        self.terms.keys().map(|e| e[var]).max()
    }

    /// The constant value, if the polynomial has no variables in use.
    pub fn as_constant(&self) -> Option<Rat> {
        match self.terms.len() {
            0 => Some(Rat::zero()),
            1 => {
                let (e, c) = self.terms.iter().next().unwrap();
                e.iter().all(|&k| k == 0).then(|| c.clone())
            }
            _ => None,
        }
    }

    /// Adds variables at the end (or drops unused trailing ones when
    /// shrinking), keeping the existing exponents.
    pub fn with_nvars(&self, nvars: usize) -> MPoly {
        let mut p = MPoly::zero(nvars);
        for (e, c) in &self.terms {
            let mut e2 = vec![0; nvars];
            for (i, &k) in e.iter().enumerate() {
                if k > 0 {
                    assert!(i < nvars, "variable {i} in use");
                    e2[i] = k;
                }
            }
            p.add_term(e2, c.clone());
        }
        p
    }

    pub fn scale(&self, c: &Rat) -> MPoly {
        MPoly::from_terms(
            self.nvars,
            self.terms.iter().map(|(e, a)| (e.clone(), a * c)),
        )
    }

    pub fn pow(&self, e: u32) -> MPoly {
        let mut acc = MPoly::constant(self.nvars, Rat::one());
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn eval(&self, point: &[Rat]) -> Rat {
        assert_eq!(point.len(), self.nvars, "evaluation point length");
        let mut total = Rat::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (x, &k) in point.iter().zip(e) {
                if k > 0 {
                    t = t * x.pow(k);
                }
            }
            total += t;
        }
        total
    }

    /// Enclosure of the values over a box.
    pub fn eval_interval(&self, point: &[Interval]) -> Interval {
        assert_eq!(point.len(), self.nvars, "evaluation point length");
        let mut total = Interval::zero();
        for (e, c) in &self.terms {
            let mut t = Interval::point(c.clone());
            for (x, &k) in point.iter().zip(e) {
                if k > 0 {
                    t = &t * &x.pow(k);
                }
            }
            total = &total + &t;
        }
        total
    }

    /// Substitutes `subs[i]` for variable `i`; all substitutes must share a
    /// variable count, which becomes that of the result.
    pub fn compose(&self, subs: &[MPoly]) -> MPoly {
        assert_eq!(subs.len(), self.nvars, "substitution length");
        let target = subs.first().map_or(0, MPoly::nvars);
        let mut out = MPoly::zero(target);
        for (e, c) in &self.terms {
            let mut t = MPoly::constant(target, c.clone());
            for (s, &k) in subs.iter().zip(e) {
                if k > 0 {
                    t = &t * &s.pow(k);
                }
            }
            out = &out + &t;
        }
        out
    }

    /// Fixes variable `var` to `value`, keeping the variable count.
    pub fn specialize(&self, var: usize, value: &Rat) -> MPoly {
        let mut out = MPoly::zero(self.nvars);
        for (e, c) in &self.terms {
            let mut e2 = e.clone();
            let k = std::mem::replace(&mut e2[var], 0);
            out.add_term(e2, c * value.pow(k));
        }
        out
    }

    /// Reads the polynomial as univariate in `var`; `None` if any other
    /// variable occurs.
    pub fn to_univariate(&self, var: usize) -> Option<UniPoly> {
        let deg = self.degree_in(var).unwrap_or(0) as usize;
        let mut coeffs = vec![Rat::zero(); deg + 1];
        for (e, c) in &self.terms {
            if e.iter().enumerate().any(|(i, &k)| i != var && k > 0) {
                return None;
            }
            coeffs[e[var] as usize] = c.clone();
        }
        Some(UniPoly::new(coeffs))
    }

    pub fn from_univariate(p: &UniPoly, nvars: usize, var: usize) -> MPoly {
        MPoly::from_terms(
            nvars,
            p.coeffs().iter().enumerate().map(|(k, c)| {
                let mut e = vec![0; nvars];
                e[var] = k as u32;
                (e, c.clone())
            }),
        )
    }

    fn leading(&self) -> Option<(&Vec<u32>, &Rat)> {
        self.terms.last_key_value()
    }

    /// Exact quotient by lexicographic division; panics when `divisor` does
    /// not divide `self`.
    pub fn exact_div(&self, divisor: &MPoly) -> MPoly {
        let (de, dc) = divisor.leading().expect("division by the zero polynomial");
        let mut rem = self.clone();
        let mut quot = MPoly::zero(self.nvars);
        while let Some((e, c)) = rem.leading() {
            let shift: Vec<u32> = e
                .iter()
                .zip(de)
                .map(|(&a, &b)| a.checked_sub(b).expect("inexact polynomial division"))
                .collect();
            let t = MPoly::monomial(shift, c / dc);
            rem = &rem - &(&t * divisor);
            quot = &quot + &t;
        }
        quot
    }

    /// Renders with the given variable names.
    pub fn display_with(&self, names: &[&str]) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (e, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.signum() < 0;
            let mag = c.abs();
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let vars: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &k)| k > 0)
                .map(|(v, &k)| {
                    if k == 1 {
                        names[v].to_string()
                    } else {
                        format!("{}^{k}", names[v])
                    }
                })
                .collect();
            if vars.is_empty() {
                out.push_str(&mag.to_string());
            } else {
                if !mag.is_one() {
                    out.push_str(&format!("{mag}*"));
                }
                out.push_str(&vars.join("*"));
            }
        }
        out
    }
}

impl Add for &MPoly {
    type Output = MPoly;
    fn add(self, rhs: &MPoly) -> MPoly {
        assert_eq!(self.nvars, rhs.nvars, "variable count mismatch");
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl Sub for &MPoly {
    type Output = MPoly;
    fn sub(self, rhs: &MPoly) -> MPoly {
        self + &(-rhs)
    }
}

impl Mul for &MPoly {
    type Output = MPoly;
    fn mul(self, rhs: &MPoly) -> MPoly {
        assert_eq!(self.nvars, rhs.nvars, "variable count mismatch");
        let mut acc: BTreeMap<Vec<u32>, Rat> = BTreeMap::new();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let e: Vec<u32> = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                *acc.entry(e).or_insert_with(Rat::zero) += ca * cb;
            }
        }
        acc.retain(|_, v| !v.is_zero());
        MPoly {
            nvars: self.nvars,
            terms: acc,
        }
    }
}

impl Neg for &MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        MPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }
}

impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (1..=self.nvars).map(|i| format!("x{i}")).collect();
        let refs: Vec<&str> = names.iter().map(String::as_str).collect();
        f.write_str(&self.display_with(&refs))
    }
}

impl fmt::Debug for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MPoly({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::q;

    #[test]
    fn arithmetic_and_division() {
        let x = MPoly::var(2, 0);
        let y = MPoly::var(2, 1);
        let a = &(&x + &y) * &(&x - &y);
        assert_eq!(a.to_string(), "x1^2 - x2^2");
        assert_eq!(a.exact_div(&(&x - &y)), &x + &y);
        assert_eq!(a.eval(&[q(3, 1), q(1, 1)]), q(8, 1));
        let sq = a.compose(&[y.clone(), x.clone()]);
        assert_eq!(sq, -&a);
        assert_eq!(
            a.specialize(1, &q(2, 1)).to_univariate(0).unwrap(),
            UniPoly::from_ints(&[-4, 0, 1])
        );
    }

    #[test]
    #[should_panic(expected = "inexact")]
    fn inexact_division_panics() {
        let x = MPoly::var(2, 0);
        let y = MPoly::var(2, 1);
        let _ = x.exact_div(&y);
    }
}
