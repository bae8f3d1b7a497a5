//! Exact construction and verification of branched coverings: the covering
//! of coefficient space by elementary symmetric functions, piecewise-linear
//! coverings of an interval, and finite topological spaces.

pub mod bezoutian;
pub mod finitetop;
pub mod plcov;
pub mod polycore;
pub mod rat;
pub mod report;

pub use rat::Rat;
