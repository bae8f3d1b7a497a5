//! The covering of coefficient space by the elementary symmetric functions.
//!
//! A point `a` of coefficient space is hyperbolic when its Vieta polynomial
//! `t^n - a_1 t^(n-1) + a_2 t^(n-2) - ... ± a_n` has only real roots. The fiber
//! over such a point is the set of distinct orderings of the root multiset.

mod eval;
mod realpart;

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::polycore::{
    elementary_symmetric_all, isolate_real_roots, AlgebraicReal, MPoly, PolyError, RootMultiset,
    UniPoly,
};
use crate::rat::Rat;

pub use eval::{eval_on_fiber, integral_poly, mu_eval, symfun_eval, EvalMode, Value};
pub use realpart::{real_part_resultant, RealPartResultant, RESULTANT_CAP};

/// Polynomial functions on the total space, in variables `x1..xn`.
pub type PolyFunction = MPoly;

/// Largest `n` for which fibers are enumerated.
pub const FIBER_CAP: usize = 6;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BezError {
    #[error("point outside N")]
    NotHyperbolic,
    #[error("degree cap exceeded: n = {n} > {cap}")]
    DegreeCap { n: usize, cap: usize },
    #[error("irrational fiber coordinates; use interval mode")]
    UseIntervalMode,
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("symmetric index k = {k} outside 1..={d}")]
    SymmetricIndex { k: usize, d: usize },
    #[error("function has {got} variables, expected {expected}")]
    Arity { expected: usize, got: usize },
    #[error("a point needs at least one coordinate")]
    EmptyPoint,
    #[error("target width must be positive")]
    NonPositiveWidth,
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// A point of coefficient space.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "SigmaPointRepr")]
pub struct SigmaPoint {
    n: usize,
    coords: Vec<Rat>,
}

#[derive(Deserialize)]
struct SigmaPointRepr {
    n: usize,
    coords: Vec<Rat>,
}

impl TryFrom<SigmaPointRepr> for SigmaPoint {
    type Error = String;
    fn try_from(r: SigmaPointRepr) -> Result<Self, String> {
        if r.n != r.coords.len() {
            return Err(format!("n = {} but {} coordinates", r.n, r.coords.len()));
        }
        SigmaPoint::new(r.coords).map_err(|e| e.to_string())
    }
}

impl SigmaPoint {
    pub fn new(coords: Vec<Rat>) -> Result<SigmaPoint, BezError> {
        if coords.is_empty() {
            return Err(BezError::EmptyPoint);
        }
        Ok(SigmaPoint {
            n: coords.len(),
            coords,
        })
    }

    pub fn from_ints(coords: &[i64]) -> SigmaPoint {
        SigmaPoint::new(coords.iter().map(|&c| Rat::from(c)).collect()).expect("nonempty point")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn coords(&self) -> &[Rat] {
        &self.coords
    }
}

impl fmt::Display for SigmaPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(Rat::to_string).collect();
        write!(f, "({})", parts.join(", "))
    }
}

/// Proof that a point is hyperbolic: the real roots of its Vieta polynomial
/// account for the full degree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HyperbolicCertificate {
    pub point: SigmaPoint,
    pub roots: RootMultiset,
    pub profile: Vec<u32>,
}

impl HyperbolicCertificate {
    /// `∏ k_i!`
    pub fn ramification_index(&self) -> u64 {
        self.profile
            .iter()
            .map(|&k| factorial(k as usize))
            .product()
    }

    /// `n! / ∏ k_i!`
    pub fn fiber_size(&self) -> u64 {
        factorial(self.point.n) / self.ramification_index()
    }
}

/// The fiber over a hyperbolic point. Each point is stored as a tuple of
/// indices into the ascending list of distinct roots.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BezFiber {
    pub roots: Vec<AlgebraicReal>,
    pub points: Vec<Vec<usize>>,
    pub index: u64,
    pub sheet_total: u64,
}

impl BezFiber {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn point(&self, i: usize) -> Vec<AlgebraicReal> {
        self.points[i]
            .iter()
            .map(|&j| self.roots[j].clone())
            .collect()
    }

    /// Exact coordinates of a point when all roots are rational.
    pub fn rational_point(&self, i: usize) -> Option<Vec<Rat>> {
        self.points[i]
            .iter()
            .map(|&j| self.roots[j].exact().cloned())
            .collect()
    }

    /// Position of `x` in the fiber, if present.
    pub fn position(&self, x: &[AlgebraicReal]) -> Option<usize> {
        if self.points.first().map(Vec::len) != Some(x.len()) {
            return None;
        }
        let idx: Option<Vec<usize>> = x
            .iter()
            .map(|c| self.roots.iter().position(|r| r == c))
            .collect();
        let idx = idx?;
        self.points.iter().position(|p| *p == idx)
    }

    pub fn contains_rational(&self, x: &[Rat]) -> bool {
        let alg: Vec<AlgebraicReal> = x
            .iter()
            .cloned()
            .map(AlgebraicReal::from_rational)
            .collect();
        self.position(&alg).is_some()
    }

    /// Sum of the indices over the fiber.
    pub fn index_total(&self) -> u64 {
        self.index * self.points.len() as u64
    }
}

pub fn factorial(n: usize) -> u64 {
    (1..=n as u64).product()
}

/// `t^n + Σ (-1)^k a_k t^(n-k)`.
pub fn vieta_poly(a: &SigmaPoint) -> UniPoly {
    let n = a.n;
    let mut coeffs = vec![Rat::zero(); n + 1];
    coeffs[n] = Rat::one();
    for (i, ak) in a.coords.iter().enumerate() {
        let k = i + 1;
        coeffs[n - k] = if k % 2 == 0 { ak.clone() } else { -ak };
    }
    UniPoly::new(coeffs)
}

/// `x ↦ (σ_1(x), ..., σ_n(x))`.
pub fn sigma_map(x: &[Rat]) -> Result<SigmaPoint, BezError> {
    let mut e = elementary_symmetric_all(x);
    e.remove(0);
    SigmaPoint::new(e)
}

/// A certificate when every root of the Vieta polynomial is real.
pub fn is_hyperbolic(a: &SigmaPoint) -> Option<HyperbolicCertificate> {
    let roots = isolate_real_roots(&vieta_poly(a)).expect("Vieta polynomials are monic");
    if roots.total_multiplicity() as usize != a.n {
        return None;
    }
    let profile = roots.profile();
    Some(HyperbolicCertificate {
        point: a.clone(),
        roots,
        profile,
    })
}

fn certify(a: &SigmaPoint) -> Result<HyperbolicCertificate, BezError> {
    is_hyperbolic(a).ok_or(BezError::NotHyperbolic)
}

/// Advances `v` to the next lexicographic permutation; false at the last one.
fn next_permutation(v: &mut [usize]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

pub fn fiber(a: &SigmaPoint) -> Result<BezFiber, BezError> {
    if a.n > FIBER_CAP {
        return Err(BezError::DegreeCap {
            n: a.n,
            cap: FIBER_CAP,
        });
    }
    let cert = certify(a)?;
    Ok(fiber_from_certificate(&cert))
}

pub fn fiber_from_certificate(cert: &HyperbolicCertificate) -> BezFiber {
    let mut base = Vec::with_capacity(cert.point.n);
    for (j, (_, m)) in cert.roots.roots.iter().enumerate() {
        base.extend(std::iter::repeat_n(j, *m as usize));
    }
    let mut points = vec![base.clone()];
    while next_permutation(&mut base) {
        points.push(base.clone());
    }
    BezFiber {
        roots: cert.roots.roots.iter().map(|(r, _)| r.clone()).collect(),
        points,
        index: cert.ramification_index(),
        sheet_total: factorial(cert.point.n),
    }
}

pub fn ramification_index(a: &SigmaPoint) -> Result<u64, BezError> {
    Ok(certify(a)?.ramification_index())
}

/// Some pair of coordinates coincides.
pub fn is_branch_point(x: &[Rat]) -> bool {
    let mut v: Vec<&Rat> = x.iter().collect();
    v.sort();
    v.windows(2).any(|w| w[0] == w[1])
}

/// All coordinates coincide.
pub fn is_collapse_point(x: &[Rat]) -> bool {
    x.windows(2).all(|w| w[0] == w[1])
}

/// The roots in ascending order, each repeated by its multiplicity.
pub fn section(a: &SigmaPoint) -> Result<Vec<AlgebraicReal>, BezError> {
    let cert = certify(a)?;
    Ok(section_of(&cert))
}

fn section_of(cert: &HyperbolicCertificate) -> Vec<AlgebraicReal> {
    let mut out = Vec::with_capacity(cert.point.n);
    for (r, m) in &cert.roots.roots {
        for _ in 0..*m {
            out.push(r.clone());
        }
    }
    out
}

/// Checks that `gamma` lists `1..=n` in some order.
pub fn validate_permutation(gamma: &[usize], n: usize) -> Result<(), BezError> {
    if gamma.len() != n {
        return Err(BezError::InvalidPermutation(format!(
            "expected {n} entries, got {}",
            gamma.len()
        )));
    }
    let mut seen = vec![false; n];
    for &g in gamma {
        if g == 0 || g > n || seen[g - 1] {
            return Err(BezError::InvalidPermutation(format!(
                "{gamma:?} is not a permutation of 1..={n}"
            )));
        }
        seen[g - 1] = true;
    }
    Ok(())
}

/// `(s_γ(1), ..., s_γ(n))` where `s` is the ascending section and `gamma`
/// is a permutation of `1..=n`.
pub fn section_gamma(a: &SigmaPoint, gamma: &[usize]) -> Result<Vec<AlgebraicReal>, BezError> {
    validate_permutation(gamma, a.n)?;
    let s = section(a)?;
    Ok(gamma.iter().map(|&g| s[g - 1].clone()).collect())
}
