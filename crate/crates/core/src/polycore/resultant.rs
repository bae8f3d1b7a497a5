//! Resultants over an integral domain.

use super::{MPoly, PolyError, UniPoly};
use crate::rat::Rat;

/// The operations a coefficient domain needs for fraction-free elimination.
pub trait Ring: Clone + PartialEq {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Division known to be exact.
    fn exact_div(&self, rhs: &Self) -> Self;

    fn pow(&self, e: usize) -> Self {
        (0..e).fold(self.one_like(), |acc, _| acc.mul(self))
    }
}

impl Ring for Rat {
    fn zero_like(&self) -> Self {
        Rat::zero()
    }
    fn one_like(&self) -> Self {
        Rat::one()
    }
    fn is_zero(&self) -> bool {
        Rat::is_zero(self)
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg(&self) -> Self {
        -self
    }
    fn exact_div(&self, rhs: &Self) -> Self {
        self / rhs
    }
}

impl Ring for MPoly {
    fn zero_like(&self) -> Self {
        MPoly::zero(self.nvars())
    }
    fn one_like(&self) -> Self {
        MPoly::constant(self.nvars(), Rat::one())
    }
    fn is_zero(&self) -> bool {
        MPoly::is_zero(self)
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg(&self) -> Self {
        -self
    }
    fn exact_div(&self, rhs: &Self) -> Self {
        MPoly::exact_div(self, rhs)
    }
}

fn trim<R: Ring>(mut p: Vec<R>) -> Vec<R> {
    while p.last().is_some_and(Ring::is_zero) {
        p.pop();
    }
    p
}

/// Pseudo-remainder `lc(b)^(deg a - deg b + 1) * a mod b`.
fn prem<R: Ring>(a: &[R], b: &[R]) -> Vec<R> {
    let db = b.len() - 1;
    let lb = &b[db];
    let mut r = a.to_vec();
    let mut e = (a.len() - b.len() + 1) as i64;
    while r.len() > db && !r.is_empty() {
        let shift = r.len() - 1 - db;
        let lead = r.last().unwrap().clone();
        let mut next: Vec<R> = r.iter().map(|c| c.mul(lb)).collect();
        for (j, bc) in b.iter().enumerate() {
            next[shift + j] = next[shift + j].sub(&lead.mul(bc));
        }
        r = trim(next);
        e -= 1;
    }
    let f = lb.pow(e.max(0) as usize);
    r.iter().map(|c| c.mul(&f)).collect()
}

/// Resultant of two coefficient vectors (ascending degree) by the
/// subresultant pseudo-remainder sequence. Inputs must be nonzero.
pub fn subresultant_resultant<R: Ring>(a: &[R], b: &[R]) -> R {
    let mut a = trim(a.to_vec());
    let mut b = trim(b.to_vec());
    assert!(
        !a.is_empty() && !b.is_empty(),
        "resultant of a zero polynomial"
    );
    let unit = a[0].one_like();
    let mut negate = false;
    if a.len() < b.len() {
        if (a.len() - 1) % 2 == 1 && (b.len() - 1) % 2 == 1 {
            negate = true;
        }
        std::mem::swap(&mut a, &mut b);
    }
    if b.len() == 1 {
        let r = b[0].pow(a.len() - 1);
        return if negate { r.neg() } else { r };
    }
    let mut g = unit.clone();
    let mut h = unit;
    loop {
        let da = a.len() - 1;
        let db = b.len() - 1;
        let delta = da - db;
        if da % 2 == 1 && db % 2 == 1 {
            negate = !negate;
        }
        let r = prem(&a, &b);
        if r.is_empty() {
            return a[0].zero_like();
        }
        let div = g.mul(&h.pow(delta));
        a = b;
        b = r.iter().map(|c| c.exact_div(&div)).collect();
        g = a.last().unwrap().clone();
        h = if delta == 0 {
            h
        } else {
            g.pow(delta).exact_div(&h.pow(delta - 1))
        };
        if b.len() == 1 {
            break;
        }
    }
    let da = a.len() - 1;
    let res = b[0].pow(da).exact_div(&h.pow(da - 1));
    if negate {
        res.neg()
    } else {
        res
    }
}

/// Resultant of two nonzero univariate rational polynomials, normalized as the
/// Sylvester determinant with the coefficients of `p` in the first rows.
pub fn resultant(p: &UniPoly, q: &UniPoly) -> Result<Rat, PolyError> {
    if p.is_zero() || q.is_zero() {
        return Err(PolyError::ZeroPolynomial("resultant"));
    }
    Ok(subresultant_resultant(p.coeffs(), q.coeffs()))
}

/// Resultant as the determinant of the Sylvester matrix, by fraction-free
/// Gaussian elimination. Kept as an independent reference.
pub fn sylvester_resultant(p: &UniPoly, q: &UniPoly) -> Result<Rat, PolyError> {
    if p.is_zero() || q.is_zero() {
        return Err(PolyError::ZeroPolynomial("resultant"));
    }
    let m = p.degree().unwrap();
    let n = q.degree().unwrap();
    let size = m + n;
    if size == 0 {
        return Ok(Rat::one());
    }
    let mut rows = vec![vec![Rat::zero(); size]; size];
    for i in 0..n {
        for (j, c) in p.coeffs().iter().rev().enumerate() {
            rows[i][i + j] = c.clone();
        }
    }
    for i in 0..m {
        for (j, c) in q.coeffs().iter().rev().enumerate() {
            rows[n + i][i + j] = c.clone();
        }
    }
    Ok(determinant(rows))
}

fn determinant(mut a: Vec<Vec<Rat>>) -> Rat {
    let n = a.len();
    let mut det = Rat::one();
    for col in 0..n {
        let Some(pivot) = (col..n).find(|&r| !a[r][col].is_zero()) else {
            return Rat::zero();
        };
        if pivot != col {
            a.swap(pivot, col);
            det = -det;
        }
        let p = a[col][col].clone();
        det *= &p;
        for r in col + 1..n {
            if a[r][col].is_zero() {
                continue;
            }
            let f = &a[r][col] / &p;
            let (top, bottom) = a.split_at_mut(r);
            for (dst, src) in bottom[0][col..].iter_mut().zip(&top[col][col..]) {
                *dst -= &(&f * src);
            }
        }
    }
    det
}
