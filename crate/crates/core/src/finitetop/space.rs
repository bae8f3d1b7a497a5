use std::fmt;

use serde::{Deserialize, Serialize};

use super::TopError;

/// A set of points, one bit per point.
pub type PointSet = u32;

/// Largest space handled by the exhaustive searches.
pub const SIZE_CAP: usize = 10;

/// Largest space any `FinSpace` may have.
pub const HARD_CAP: usize = 32;

pub fn bit(x: usize) -> PointSet {
    1 << x
}

pub fn has(s: PointSet, x: usize) -> bool {
    s >> x & 1 == 1
}

pub fn card(s: PointSet) -> usize {
    s.count_ones() as usize
}

/// The points of `s` in increasing order.
pub fn points(s: PointSet) -> impl Iterator<Item = usize> {
    let mut rest = s;
    std::iter::from_fn(move || {
        if rest == 0 {
            return None;
        }
        let x = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        Some(x)
    })
}

/// Every subset of `s`, starting from the empty set.
pub fn subsets(s: PointSet) -> impl Iterator<Item = PointSet> {
    let mut next = Some(0 as PointSet);
    std::iter::from_fn(move || {
        let cur = next?;
        next = if cur == s {
            None
        } else {
            Some(cur.wrapping_sub(s) & s)
        };
        Some(cur)
    })
}

pub fn full(n: usize) -> PointSet {
    if n >= 32 {
        u32::MAX
    } else {
        (1 << n) - 1
    }
}

/// A finite space given by its specialization preorder: `x <= y` when every
/// open set containing `x` contains `y`. Open sets are the up-sets.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vec<u8>>", into = "Vec<Vec<u8>>")]
pub struct FinSpace {
    up: Vec<PointSet>,
    down: Vec<PointSet>,
}

impl FinSpace {
    /// Builds a space from its relation matrix, `leq[x][y]` meaning `x <= y`.
    pub fn from_leq(leq: &[Vec<bool>]) -> Result<FinSpace, TopError> {
        let n = leq.len();
        if n > HARD_CAP {
            return Err(TopError::TooLarge { n, cap: HARD_CAP });
        }
        let mut up = vec![0; n];
        for (x, row) in leq.iter().enumerate() {
            if row.len() != n {
                return Err(TopError::NotSquare { row: x });
            }
            for (y, &b) in row.iter().enumerate() {
                if b {
                    up[x] |= bit(y);
                }
            }
        }
        FinSpace::from_up_sets(up)
    }

    /// Builds a space from the minimal open sets `U_x`.
    pub fn from_up_sets(up: Vec<PointSet>) -> Result<FinSpace, TopError> {
        let n = up.len();
        if n > HARD_CAP {
            return Err(TopError::TooLarge { n, cap: HARD_CAP });
        }
        for (x, &u) in up.iter().enumerate() {
            if u & !full(n) != 0 {
                return Err(TopError::NotSquare { row: x });
            }
            if !has(u, x) {
                return Err(TopError::NotReflexive { x });
            }
            for y in points(u) {
                if up[y] & !u != 0 {
                    let z = (up[y] & !u).trailing_zeros() as usize;
                    return Err(TopError::NotTransitive { x, y, z });
                }
            }
        }
        Ok(FinSpace::from_up_unchecked(up))
    }

    pub(crate) fn from_up_unchecked(up: Vec<PointSet>) -> FinSpace {
        let n = up.len();
        let mut down = vec![0; n];
        for (x, &u) in up.iter().enumerate() {
            for y in points(u) {
                down[y] |= bit(x);
            }
        }
        FinSpace { up, down }
    }

    pub fn discrete(n: usize) -> FinSpace {
        FinSpace::from_up_unchecked((0..n).map(bit).collect())
    }

    pub fn indiscrete(n: usize) -> FinSpace {
        FinSpace::from_up_unchecked(vec![full(n); n])
    }

    /// `0 <= 1 <= ... <= n-1`.
    pub fn chain(n: usize) -> FinSpace {
        FinSpace::from_up_unchecked((0..n).map(|x| full(n) & !full(x)).collect())
    }

    pub fn n(&self) -> usize {
        self.up.len()
    }

    pub fn all(&self) -> PointSet {
        full(self.n())
    }

    pub fn leq(&self, x: usize, y: usize) -> bool {
        has(self.up[x], y)
    }

    /// The minimal open set containing `x`.
    pub fn up(&self, x: usize) -> PointSet {
        self.up[x]
    }

    /// The closure of `{x}`.
    pub fn down(&self, x: usize) -> PointSet {
        self.down[x]
    }

    pub fn up_sets(&self) -> &[PointSet] {
        &self.up
    }

    pub fn up_closure(&self, s: PointSet) -> PointSet {
        points(s).fold(0, |acc, x| acc | self.up[x])
    }

    pub fn closure(&self, s: PointSet) -> PointSet {
        points(s).fold(0, |acc, x| acc | self.down[x])
    }

    pub fn interior(&self, s: PointSet) -> PointSet {
        points(s)
            .filter(|&x| self.up[x] & !s == 0)
            .fold(0, |acc, x| acc | bit(x))
    }

    pub fn is_open(&self, s: PointSet) -> bool {
        points(s).all(|x| self.up[x] & !s == 0)
    }

    pub fn is_closed(&self, s: PointSet) -> bool {
        points(s).all(|x| self.down[x] & !s == 0)
    }

    /// Whether `s` is open in the subspace `a`.
    pub fn is_open_in(&self, s: PointSet, a: PointSet) -> bool {
        points(s).all(|x| self.up[x] & a & !s == 0)
    }

    pub fn is_closed_in(&self, s: PointSet, a: PointSet) -> bool {
        points(s).all(|x| self.down[x] & a & !s == 0)
    }

    /// Closure of `s` inside the subspace `a`.
    pub fn closure_in(&self, s: PointSet, a: PointSet) -> PointSet {
        self.closure(s) & a
    }

    pub fn interior_in(&self, s: PointSet, a: PointSet) -> PointSet {
        points(s)
            .filter(|&x| self.up[x] & a & !s == 0)
            .fold(0, |acc, x| acc | bit(x))
    }

    /// All open sets of the subspace `a`.
    pub fn opens_in(&self, a: PointSet) -> Vec<PointSet> {
        subsets(a).filter(|&s| self.is_open_in(s, a)).collect()
    }

    pub fn opens(&self) -> Vec<PointSet> {
        self.opens_in(self.all())
    }

    /// Connected components of the subspace `s`, each given as a set.
    pub fn components(&self, s: PointSet) -> Vec<PointSet> {
        let mut rest = s;
        let mut comps = Vec::new();
        while rest != 0 {
            let mut comp = bit(rest.trailing_zeros() as usize);
            loop {
                let grown =
                    points(comp).fold(comp, |acc, x| acc | ((self.up[x] | self.down[x]) & s));
                if grown == comp {
                    break;
                }
                comp = grown;
            }
            comps.push(comp);
            rest &= !comp;
        }
        comps
    }

    /// Connectedness of the subspace `s`; the empty set counts as connected.
    pub fn is_connected(&self, s: PointSet) -> bool {
        self.components(s).len() <= 1
    }

    pub fn leq_matrix(&self) -> Vec<Vec<u8>> {
        (0..self.n())
            .map(|x| (0..self.n()).map(|y| self.leq(x, y) as u8).collect())
            .collect()
    }
}

impl TryFrom<Vec<Vec<u8>>> for FinSpace {
    type Error = TopError;
    fn try_from(m: Vec<Vec<u8>>) -> Result<Self, TopError> {
        let rows: Vec<Vec<bool>> = m
            .iter()
            .map(|r| r.iter().map(|&v| v != 0).collect())
            .collect();
        FinSpace::from_leq(&rows)
    }
}

impl From<FinSpace> for Vec<Vec<u8>> {
    fn from(s: FinSpace) -> Self {
        s.leq_matrix()
    }
}

impl fmt::Debug for FinSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FinSpace[")?;
        for (x, &u) in self.up.iter().enumerate() {
            if x > 0 {
                write!(f, "; ")?;
            }
            write!(f, "{x}<=")?;
            let v: Vec<String> = points(u)
                .filter(|&y| y != x)
                .map(|y| y.to_string())
                .collect();
            write!(f, "{{{}}}", v.join(","))?;
        }
        write!(f, "]")
    }
}
