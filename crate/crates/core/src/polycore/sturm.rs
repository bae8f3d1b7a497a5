//! Sturm sequences and squarefree decomposition.

use serde::{Deserialize, Serialize};

use super::{PolyError, UniPoly};
use crate::rat::Rat;

/// An endpoint of a counting interval on the extended real line.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum Bound {
    NegInf,
    At(Rat),
    PosInf,
}

impl From<Rat> for Bound {
    fn from(r: Rat) -> Bound {
        Bound::At(r)
    }
}

/// The signed remainder sequence `p, p', -rem(p, p'), ...` of a squarefree
/// polynomial.
#[derive(Debug, Clone)]
pub struct SturmSequence {
    seq: Vec<UniPoly>,
}

impl SturmSequence {
    /// Builds the sequence of the squarefree part of `p`.
    pub fn new(p: &UniPoly) -> Result<SturmSequence, PolyError> {
        if p.is_zero() {
            return Err(PolyError::UndefinedRootCount);
        }
        let base = p.squarefree_part();
        let mut seq = vec![base.clone(), base.derivative()];
        loop {
            let n = seq.len();
            if seq[n - 1].is_zero() {
                seq.pop();
                break;
            }
            let r = seq[n - 2].rem(&seq[n - 1]);
            if r.is_zero() {
                break;
            }
            seq.push(-&r);
        }
        Ok(SturmSequence { seq })
    }

    fn signs_at(&self, b: &Bound) -> Vec<i32> {
        self.seq
            .iter()
            .map(|p| match b {
                Bound::At(x) => p.sign_at(x),
                Bound::PosInf => p.leading().map_or(0, Rat::signum),
                Bound::NegInf => {
                    let s = p.leading().map_or(0, Rat::signum);
                    if p.degree().unwrap_or(0) % 2 == 1 {
                        -s
                    } else {
                        s
                    }
                }
            })
            .collect()
    }

    /// Sign variations, zeros skipped.
    pub fn variations(&self, b: &Bound) -> usize {
        let mut last = 0;
        let mut count = 0;
        for s in self.signs_at(b) {
            if s == 0 {
                continue;
            }
            if last != 0 && s != last {
                count += 1;
            }
            last = s;
        }
        count
    }

    /// Number of distinct real roots in the half-open interval `(lo, hi]`.
    pub fn count(&self, lo: &Bound, hi: &Bound) -> usize {
        self.variations(lo).saturating_sub(self.variations(hi))
    }

    pub fn polys(&self) -> &[UniPoly] {
        &self.seq
    }
}

/// Number of distinct real roots of `p` in `(lo, hi]`.
pub fn sturm_count(p: &UniPoly, lo: &Bound, hi: &Bound) -> Result<usize, PolyError> {
    Ok(SturmSequence::new(p)?.count(lo, hi))
}

/// Number of distinct real roots of `p` in the closed interval `[lo, hi]`.
pub fn sturm_count_closed(p: &UniPoly, lo: &Rat, hi: &Rat) -> Result<usize, PolyError> {
    let s = SturmSequence::new(p)?;
    let at_lo = usize::from(p.eval(lo).is_zero());
    Ok(s.count(&Bound::At(lo.clone()), &Bound::At(hi.clone())) + at_lo)
}

/// Yun's squarefree decomposition. Factors are monic, squarefree and
/// pairwise coprime, listed by increasing multiplicity; their product with
/// multiplicities equals `p` up to the leading coefficient.
pub fn squarefree_decompose(p: &UniPoly) -> Result<Vec<(UniPoly, u32)>, PolyError> {
    if p.is_zero() {
        return Err(PolyError::ZeroPolynomial("squarefree decomposition"));
    }
    if p.degree() == Some(0) {
        return Ok(Vec::new());
    }
    let f = p.monic();
    let df = f.derivative();
    let b = f.gcd(&df);
    let mut c = f.exact_div(&b);
    let mut d = &df.exact_div(&b) - &c.derivative();
    let mut out = Vec::new();
    let mut i = 1;
    while c.degree().unwrap_or(0) > 0 {
        let a = c.gcd(&d);
        if a.degree().unwrap_or(0) > 0 {
            out.push((a.clone(), i));
        }
        c = c.exact_div(&a);
        d = &d.exact_div(&a) - &c.derivative();
        i += 1;
    }
    Ok(out)
}
