//! The eliminant whose zeros contain the real parts of the roots.
//!
//! With `P(u, z) = z^n + Σ u_j z^(n-j)` and `z = x + iy`, write
//! `P = P_1 + i P_2` with real polynomials `P_1, P_2` in `(u, x, y)`. Their
//! resultant with respect to `y` is `R(u, x)`.

use serde::{Deserialize, Serialize};

use super::{BezError, SigmaPoint};
use crate::polycore::{subresultant_resultant, AlgebraicReal, Interval, MPoly, UniPoly};
use crate::rat::Rat;

pub const RESULTANT_CAP: usize = 4;

/// `R(u_1, ..., u_n, x)`; variable `n` (0-based) is `x`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RealPartResultant {
    pub n: usize,
    pub poly: MPoly,
}

fn binomial(m: usize, k: usize) -> u64 {
    (0..k).fold(1u64, |acc, i| acc * (m - i) as u64 / (i + 1) as u64)
}

/// The real and imaginary parts of `P(u, x + iy)` as polynomials in `y`
/// with coefficients in `Q[u, x]`.
pub fn real_imag_parts(n: usize) -> (Vec<MPoly>, Vec<MPoly>) {
    let nv = n + 1;
    let x = MPoly::var(nv, n);
    let mut re = vec![MPoly::zero(nv); n + 1];
    let mut im = vec![MPoly::zero(nv); n + 1];
    for m in 0..=n {
        let mult = if m == n {
            MPoly::constant(nv, Rat::one())
        } else {
            MPoly::var(nv, n - m - 1)
        };
        for k in 0..=m {
            let c = Rat::from(binomial(m, k));
            let term = (&mult * &x.pow((m - k) as u32)).scale(&c);
            match k % 4 {
                0 => re[k] = &re[k] + &term,
                1 => im[k] = &im[k] + &term,
                2 => re[k] = &re[k] - &term,
                _ => im[k] = &im[k] - &term,
            }
        }
    }
    let trim = |mut v: Vec<MPoly>| {
        while v.last().is_some_and(MPoly::is_zero) {
            v.pop();
        }
        v
    };
    (trim(re), trim(im))
}

pub fn real_part_resultant(n: usize) -> Result<RealPartResultant, BezError> {
    if n == 0 {
        return Err(BezError::EmptyPoint);
    }
    if n > RESULTANT_CAP {
        return Err(BezError::DegreeCap {
            n,
            cap: RESULTANT_CAP,
        });
    }
    let (re, im) = real_imag_parts(n);
    Ok(RealPartResultant {
        n,
        poly: subresultant_resultant(&re, &im),
    })
}

impl RealPartResultant {
    /// The parameters `u` at which `P(u, ·)` is the Vieta polynomial of `a`:
    /// `u_j = (-1)^j a_j`.
    pub fn parameters_for(a: &SigmaPoint) -> Vec<Rat> {
        a.coords()
            .iter()
            .enumerate()
            .map(|(i, c)| if (i + 1) % 2 == 0 { c.clone() } else { -c })
            .collect()
    }

    /// `R(u, x)` as a polynomial in `x` for fixed `u`.
    pub fn at_parameters(&self, u: &[Rat]) -> UniPoly {
        assert_eq!(u.len(), self.n, "parameter count");
        let mut p = self.poly.clone();
        for (j, v) in u.iter().enumerate() {
            p = p.specialize(j, v);
        }
        p.to_univariate(self.n).expect("only x remains")
    }

    /// `R` restricted to the Vieta polynomial of `a`.
    pub fn at_point(&self, a: &SigmaPoint) -> UniPoly {
        self.at_parameters(&RealPartResultant::parameters_for(a))
    }

    /// Exact vanishing test at a real algebraic `x`.
    pub fn vanishes_at(&self, a: &SigmaPoint, zeta: &AlgebraicReal) -> bool {
        zeta.sign_of(&self.at_point(a)) == 0
    }

    /// Enclosure of `R(a, ζ)` no wider than `width`.
    pub fn enclose_at(&self, a: &SigmaPoint, zeta: &AlgebraicReal, width: &Rat) -> Interval {
        let p = self.at_point(a);
        let mut z = zeta.clone();
        let mut delta = width.clone();
        loop {
            z.refine_to(&delta);
            let e = p.eval_interval(&z.enclosure());
            if &e.width() <= width {
                return e;
            }
            delta = delta * Rat::new(1, 16);
        }
    }
}
