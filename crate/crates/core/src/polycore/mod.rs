//! Exact rational and polynomial arithmetic.

mod interval;
mod mpoly;
mod parse;
mod resultant;
mod roots;
mod sturm;
mod symmetric;
mod unipoly;

use thiserror::Error;

pub use interval::Interval;
pub use mpoly::MPoly;
pub use parse::{parse_poly, parse_poly_with};
pub use resultant::{resultant, subresultant_resultant, sylvester_resultant, Ring};
pub use roots::{isolate_real_roots, AlgebraicReal, RootMultiset};
pub use sturm::{squarefree_decompose, sturm_count, sturm_count_closed, Bound, SturmSequence};
pub use symmetric::{
    elementary_symmetric_all, elementary_symmetric_eval, elementary_symmetric_intervals, power_sum,
};
pub use unipoly::UniPoly;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("undefined root count")]
    UndefinedRootCount,
    #[error("zero polynomial in {0}")]
    ZeroPolynomial(&'static str),
    #[error("interval does not isolate exactly one root")]
    NotIsolating,
    #[error("symmetric index k = {k} outside 1..={n}")]
    SymmetricIndex { k: usize, n: usize },
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}
