//! Fiber averages, symmetric functions of fiber values and the integral
//! dependence polynomial.

use num_bigint::BigInt;
use num_integer::Integer;
use serde::{Deserialize, Serialize};

use super::{factorial, fiber, BezError, BezFiber, PolyFunction, SigmaPoint};
use crate::polycore::{
    elementary_symmetric_all, elementary_symmetric_intervals, AlgebraicReal, Interval, UniPoly,
};
use crate::rat::Rat;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EvalMode {
    Exact,
    Interval { width: Rat },
}

/// An exact value or a certified enclosure.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Value {
    Exact(Rat),
    Enclosure(Interval),
}

impl Value {
    pub fn contains(&self, x: &Rat) -> bool {
        match self {
            Value::Exact(v) => v == x,
            Value::Enclosure(i) => i.contains(x),
        }
    }

    pub fn width(&self) -> Rat {
        match self {
            Value::Exact(_) => Rat::zero(),
            Value::Enclosure(i) => i.width(),
        }
    }

    pub fn exact(&self) -> Option<&Rat> {
        match self {
            Value::Exact(v) => Some(v),
            Value::Enclosure(_) => None,
        }
    }
}

fn check_arity(a: &SigmaPoint, f: &PolyFunction) -> Result<(), BezError> {
    if f.nvars() != a.n() {
        return Err(BezError::Arity {
            expected: a.n(),
            got: f.nvars(),
        });
    }
    Ok(())
}

fn check_width(w: &Rat) -> Result<(), BezError> {
    if w.signum() <= 0 {
        return Err(BezError::NonPositiveWidth);
    }
    Ok(())
}

/// Values of `f` at the fiber points, in fiber order.
fn exact_values(fib: &BezFiber, f: &PolyFunction) -> Result<Vec<Rat>, BezError> {
    (0..fib.len())
        .map(|i| {
            fib.rational_point(i)
                .map(|x| f.eval(&x))
                .ok_or(BezError::UseIntervalMode)
        })
        .collect()
}

/// Refines the roots until `compute`, fed the root enclosures, reports a
/// width no larger than `target`.
fn refine_until<T>(
    roots: &[AlgebraicReal],
    target: &Rat,
    mut compute: impl FnMut(&[Interval]) -> (T, Rat),
) -> T {
    let mut roots = roots.to_vec();
    let mut delta = target.clone();
    loop {
        for r in roots.iter_mut() {
            r.refine_to(&delta);
        }
        let boxes: Vec<Interval> = roots.iter().map(AlgebraicReal::enclosure).collect();
        let (v, w) = compute(&boxes);
        if &w <= target {
            return v;
        }
        delta = delta * Rat::new(1, 16);
    }
}

fn point_box(fib: &BezFiber, boxes: &[Interval], i: usize) -> Vec<Interval> {
    fib.points[i].iter().map(|&j| boxes[j].clone()).collect()
}

fn value_enclosures(fib: &BezFiber, f: &PolyFunction, boxes: &[Interval]) -> Vec<Interval> {
    (0..fib.len())
        .map(|i| f.eval_interval(&point_box(fib, boxes, i)))
        .collect()
}

fn repeat<T: Clone>(values: &[T], times: u64) -> Vec<T> {
    values
        .iter()
        .flat_map(|v| std::iter::repeat_n(v.clone(), times as usize))
        .collect()
}

/// `(1/n!) Σ_x b(x) f(x)` over the fiber.
pub fn mu_eval(a: &SigmaPoint, f: &PolyFunction, mode: &EvalMode) -> Result<Value, BezError> {
    check_arity(a, f)?;
    let fib = fiber(a)?;
    let weight = Rat::new(fib.index, fib.sheet_total);
    match mode {
        EvalMode::Exact => {
            let vals = exact_values(&fib, f)?;
            Ok(Value::Exact(vals.iter().sum::<Rat>() * weight))
        }
        EvalMode::Interval { width } => {
            check_width(width)?;
            Ok(refine_until(&fib.roots, width, |boxes| {
                let total = value_enclosures(&fib, f, boxes)
                    .iter()
                    .fold(Interval::zero(), |acc, v| &acc + v)
                    .scale(&weight);
                let w = total.width();
                (Value::Enclosure(total), w)
            }))
        }
    }
}

fn check_k(k: usize, d: u64) -> Result<(), BezError> {
    if k == 0 || k as u64 > d {
        return Err(BezError::SymmetricIndex { k, d: d as usize });
    }
    Ok(())
}

/// `σ_k` of the `n!` fiber values, each point's value repeated by its index.
pub fn symfun_eval(
    a: &SigmaPoint,
    f: &PolyFunction,
    k: usize,
    mode: &EvalMode,
) -> Result<Value, BezError> {
    check_arity(a, f)?;
    check_k(k, factorial(a.n()))?;
    let fib = fiber(a)?;
    match mode {
        EvalMode::Exact => {
            let vals = repeat(&exact_values(&fib, f)?, fib.index);
            Ok(Value::Exact(elementary_symmetric_all(&vals).swap_remove(k)))
        }
        EvalMode::Interval { width } => {
            check_width(width)?;
            Ok(refine_until(&fib.roots, width, |boxes| {
                let vals = repeat(&value_enclosures(&fib, f, boxes), fib.index);
                let e = elementary_symmetric_intervals(&vals).swap_remove(k);
                let w = e.width();
                (Value::Enclosure(e), w)
            }))
        }
    }
}

fn from_elementary(e: &[Rat]) -> UniPoly {
    let d = e.len() - 1;
    let mut coeffs = vec![Rat::zero(); d + 1];
    for (k, ek) in e.iter().enumerate() {
        coeffs[d - k] = if k % 2 == 0 { ek.clone() } else { -ek };
    }
    UniPoly::new(coeffs)
}

/// `p(t) = t^d + Σ (-1)^k σ_k(f) t^(d-k)` with `d = n!`.
///
/// The coefficients are always rational. In interval mode they are recovered
/// exactly: with `L` the common denominator of the Vieta coefficients and `D`
/// that of `f`, each `(D L^deg f)^k σ_k(f)` is a rational algebraic integer,
/// so an enclosure narrower than `(D L^deg f)^-k` pins it down.
pub fn integral_poly(
    a: &SigmaPoint,
    f: &PolyFunction,
    mode: &EvalMode,
) -> Result<UniPoly, BezError> {
    check_arity(a, f)?;
    let fib = fiber(a)?;
    let d = fib.sheet_total;
    if let Ok(vals) = exact_values(&fib, f) {
        return Ok(from_elementary(&elementary_symmetric_all(&repeat(
            &vals, fib.index,
        ))));
    }
    if *mode == EvalMode::Exact {
        return Err(BezError::UseIntervalMode);
    }
    let vieta = super::vieta_poly(a);
    let l = Rat::common_denominator(vieta.coeffs());
    let den_f = f
        .terms()
        .fold(BigInt::from(1), |acc, (_, c)| acc.lcm(c.denom()));
    let scale = den_f * num_traits::pow(l, f.total_degree().unwrap_or(0) as usize);
    let scale_d = Rat::from_int(num_traits::pow(scale.clone(), d as usize));
    let target = (scale_d * Rat::from(2)).recip();
    let e = refine_until(&fib.roots, &target, |boxes| {
        let vals = repeat(&value_enclosures(&fib, f, boxes), fib.index);
        let e = elementary_symmetric_intervals(&vals);
        let w = e
            .iter()
            .map(Interval::width)
            .max()
            .unwrap_or_else(Rat::zero);
        (e, w)
    });
    let mut exact = Vec::with_capacity(e.len());
    let mut m = Rat::one();
    for ek in &e {
        let cand = (&ek.lo * &m).ceil() / &m;
        assert!(ek.contains(&cand), "integrality bound violated");
        exact.push(cand);
        m = m * Rat::from_int(scale.clone());
    }
    Ok(from_elementary(&exact))
}

/// `p(f(x))` at every fiber point: exact values, or enclosures no wider
/// than the requested width.
pub fn eval_on_fiber(
    a: &SigmaPoint,
    f: &PolyFunction,
    p: &UniPoly,
    mode: &EvalMode,
) -> Result<Vec<Value>, BezError> {
    check_arity(a, f)?;
    let fib = fiber(a)?;
    match mode {
        EvalMode::Exact => Ok(exact_values(&fib, f)?
            .iter()
            .map(|v| Value::Exact(p.eval(v)))
            .collect()),
        EvalMode::Interval { width } => {
            check_width(width)?;
            Ok(refine_until(&fib.roots, width, |boxes| {
                let vals: Vec<Interval> = value_enclosures(&fib, f, boxes)
                    .iter()
                    .map(|v| p.eval_interval(v))
                    .collect();
                let w = vals
                    .iter()
                    .map(Interval::width)
                    .max()
                    .unwrap_or_else(Rat::zero);
                (vals.into_iter().map(Value::Enclosure).collect(), w)
            }))
        }
    }
}
