//! Finite topological spaces as preorders, continuous maps between them, and
//! exhaustive decision procedures for quasi-coverings and branched coverings.

mod cover;
mod enumerate;
mod fuzz;
mod lemmas;
mod map;
mod space;

use thiserror::Error;

pub use cover::{
    distinguished_neighborhood, is_branched_covering, v0, Analysis, BranchFailure, Engine,
    NeighborhoodFamily, NeighborhoodKind,
};
pub use enumerate::{
    canonical, enumerate_spaces, enumerate_spaces_iso, enumerate_spaces_up_to, ENUM_CAP,
};
pub use fuzz::{
    all_quasi_coverings, constructed_quasi, fuzz, fuzz_instance, random_space, sweep, Failure,
    LemmaTally, Summary,
};
pub use lemmas::{
    check_all, check_all_verdicts, check_lemma, describe, lemma_ids, LemmaVerdict, Verdict,
    PARAM_LIMIT,
};
pub use map::{FinMap, QuasiWitness, View};
pub use space::{bit, card, full, has, points, subsets, FinSpace, PointSet, SIZE_CAP};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TopError {
    #[error("relation is not reflexive at {x}")]
    NotReflexive { x: usize },
    #[error("relation is not transitive: {x} <= {y} <= {z}")]
    NotTransitive { x: usize, y: usize, z: usize },
    #[error("relation matrix row {row} has the wrong length")]
    NotSquare { row: usize },
    #[error("space has {n} points, above the cap of {cap}")]
    TooLarge { n: usize, cap: usize },
    #[error("map lists {got} values for {expected} points")]
    MapArity { expected: usize, got: usize },
    #[error("map sends {x} to {y}, which is not a codomain point")]
    MapOutOfRange { x: usize, y: usize },
    #[error("map is not continuous: {x} <= {x2} but their images are not ordered")]
    NotContinuous { x: usize, x2: usize },
    #[error("map is not a quasi-covering: {0:?}")]
    NotQuasi(QuasiWitness),
    #[error("invalid neighborhood family: {0}")]
    BadFamily(String),
    #[error("unknown lemma id {0:?}")]
    UnknownLemma(String),
}

/// Small named maps used in examples and tests.
pub mod examples {
    use super::{FinMap, FinSpace};

    /// Two isolated points onto one point.
    pub fn two_points_to_point() -> FinMap {
        FinMap::new(FinSpace::discrete(2), FinSpace::discrete(1), vec![0, 0]).unwrap()
    }

    /// Two indiscrete points onto one point (not separated).
    pub fn indiscrete_to_point() -> FinMap {
        FinMap::new(FinSpace::indiscrete(2), FinSpace::discrete(1), vec![0, 0]).unwrap()
    }

    /// The finite model of two lines crossing over an interval.
    ///
    /// Points `a, b, c, d, e = 0..5` with `c` below all others, onto
    /// `p, q, r = 0..3` with `q` below `p` and `r`; `a, b -> p`, `c -> q`,
    /// `d, e -> r`.
    pub fn finite_x() -> FinMap {
        let c_up = 0b11111;
        let x = FinSpace::from_up_sets(vec![0b00001, 0b00010, c_up, 0b01000, 0b10000]).unwrap();
        let y = FinSpace::from_up_sets(vec![0b001, 0b111, 0b100]).unwrap();
        FinMap::new(x, y, vec![0, 0, 1, 2, 2]).unwrap()
    }

    /// Two copies of a space mapped onto it.
    pub fn double_cover(base: &FinSpace) -> FinMap {
        let n = base.n();
        let mut up = Vec::with_capacity(2 * n);
        for copy in 0..2 {
            for x in 0..n {
                up.push(base.up(x) << (copy * n));
            }
        }
        let x = FinSpace::from_up_sets(up).unwrap();
        FinMap::new(x, base.clone(), (0..2 * n).map(|i| i % n).collect()).unwrap()
    }
}

#[cfg(test)]
mod tests {
    use super::examples::*;
    use super::*;

    #[test]
    fn finite_x_is_two_branched() {
        let f = finite_x();
        assert!(f.is_quasi_covering().is_ok());
        assert_eq!(f.branching_locus().unwrap(), bit(2));
        let a = is_branched_covering(&f).unwrap();
        assert!(a.is_branched());
        assert_eq!(a.degree(), Some(2));
        assert_eq!(a.b(2), Some(2));
        assert_eq!(a.collapse, bit(2));
        assert_eq!(a.branching, bit(2));
        assert_eq!(a.ramification, bit(1));
    }

    #[test]
    fn stacked_y_model_is_not_branched() {
        // Base 0 below L and R. One sheet over L splitting into two over R,
        // and a second piece mirrored.
        let y = FinSpace::from_up_sets(vec![0b111, 0b010, 0b100]).unwrap();
        let x = FinSpace::from_up_sets(vec![
            0b0000_1111,
            0b0000_0010,
            0b0000_0100,
            0b0000_1000,
            0b1111_0000,
            0b0010_0000,
            0b0100_0000,
            0b1000_0000,
        ])
        .unwrap();
        let f = FinMap::new(x, y, vec![0, 1, 2, 2, 0, 1, 1, 2]).unwrap();
        assert!(f.is_quasi_covering().is_ok());
        let a = is_branched_covering(&f).unwrap();
        assert!(a.is_quasi() && !a.is_branched());
        assert_eq!(a.branching, bit(0) | bit(4));
        assert_eq!(a.ramification, bit(0));
        assert!((1..3).all(|y| card(f.preimage(bit(y))) == 3));
        assert_eq!(card(f.preimage(bit(0))), 2);
    }

    #[test]
    fn point_examples() {
        let a = is_branched_covering(&two_points_to_point()).unwrap();
        assert!(a.is_branched());
        assert_eq!(a.degree(), Some(2));
        assert_eq!(a.branching, 0);
        assert!((0..2).all(|x| a.b(x) == Some(1)));
        assert_eq!(two_points_to_point().branching_locus().unwrap(), 0);
        let d = is_branched_covering(&double_cover(&FinSpace::chain(3))).unwrap();
        assert_eq!(d.degree(), Some(2));
        assert_eq!(d.branching, 0);
    }

    #[test]
    fn distinguished_examples() {
        let f = two_points_to_point();
        let (v0, fams) = distinguished_neighborhood(&f, 0, &[bit(0), bit(1)]).unwrap();
        assert_eq!(v0, 1);
        assert_eq!(fams.len(), 1);
        let f = finite_x();
        let (v0, fams) = distinguished_neighborhood(&f, 1, &[f.domain().up(2)]).unwrap();
        assert_eq!(v0, 0b111);
        assert_eq!(fams[0].u, vec![0b11111]);
        assert!(distinguished_neighborhood(&two_points_to_point(), 0, &[0b11, 0b10]).is_err());
        assert!(distinguished_neighborhood(&two_points_to_point(), 0, &[bit(0)]).is_err());
        let id = FinMap::identity(FinSpace::chain(3));
        for y in 0..3 {
            let (v0, _) = distinguished_neighborhood(&id, y, &[id.domain().up(y)]).unwrap();
            assert_eq!(v0 & id.codomain().up(y), id.codomain().up(y));
        }
    }

    #[test]
    fn lemma_examples() {
        let v = check_lemma("trivial", &two_points_to_point()).unwrap();
        assert!(v.applicable && v.holds);
        let v = check_lemma("genbranch", &finite_x()).unwrap();
        assert!(v.applicable && v.holds);
        let v = check_lemma("colapseinB", &finite_x()).unwrap();
        assert!(v.applicable && v.holds);
        assert!(matches!(
            check_lemma("nope", &finite_x()),
            Err(TopError::UnknownLemma(_))
        ));
        for v in check_all_verdicts(&finite_x()).unwrap() {
            assert!(v.holds, "{v:?}");
        }
    }
}
