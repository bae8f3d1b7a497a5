use serde::{Deserialize, Serialize};

use super::space::{bit, card, has, points, subsets, FinSpace, PointSet, SIZE_CAP};
use super::TopError;

/// A continuous map of finite spaces.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "FinMapRepr", into = "FinMapRepr")]
pub struct FinMap {
    domain: FinSpace,
    codomain: FinSpace,
    map: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
struct FinMapRepr {
    domain: FinSpace,
    codomain: FinSpace,
    map: Vec<usize>,
}

impl TryFrom<FinMapRepr> for FinMap {
    type Error = TopError;
    fn try_from(r: FinMapRepr) -> Result<Self, TopError> {
        FinMap::new(r.domain, r.codomain, r.map)
    }
}

impl From<FinMap> for FinMapRepr {
    fn from(f: FinMap) -> Self {
        FinMapRepr {
            domain: f.domain,
            codomain: f.codomain,
            map: f.map,
        }
    }
}

/// Why a map fails to be a finite quasi-covering.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum QuasiWitness {
    NotSurjective { y: usize },
    NotOpen { x: usize },
    NotClosed { x: usize },
    NotSeparated { x1: usize, x2: usize },
}

impl FinMap {
    /// Checks arity, range and continuity (order preservation).
    pub fn new(domain: FinSpace, codomain: FinSpace, map: Vec<usize>) -> Result<FinMap, TopError> {
        if map.len() != domain.n() {
            return Err(TopError::MapArity {
                expected: domain.n(),
                got: map.len(),
            });
        }
        if let Some((x, &y)) = map.iter().enumerate().find(|(_, &y)| y >= codomain.n()) {
            return Err(TopError::MapOutOfRange { x, y });
        }
        let f = FinMap {
            domain,
            codomain,
            map,
        };
        if let Some((x, x2)) = f.continuity_failure() {
            return Err(TopError::NotContinuous { x, x2 });
        }
        Ok(f)
    }

    /// Builds without checking continuity; callers must check it.
    pub(crate) fn new_unchecked(domain: FinSpace, codomain: FinSpace, map: Vec<usize>) -> FinMap {
        FinMap {
            domain,
            codomain,
            map,
        }
    }

    pub(crate) fn continuity_failure(&self) -> Option<(usize, usize)> {
        for x in 0..self.domain.n() {
            let target = self.codomain.up(self.map[x]);
            for x2 in points(self.domain.up(x)) {
                if !has(target, self.map[x2]) {
                    return Some((x, x2));
                }
            }
        }
        None
    }

    pub fn identity(space: FinSpace) -> FinMap {
        let map = (0..space.n()).collect();
        FinMap {
            codomain: space.clone(),
            domain: space,
            map,
        }
    }

    pub fn domain(&self) -> &FinSpace {
        &self.domain
    }

    pub fn codomain(&self) -> &FinSpace {
        &self.codomain
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    pub fn at(&self, x: usize) -> usize {
        self.map[x]
    }

    /// The map on its whole domain.
    pub fn view(&self) -> View<'_> {
        View {
            f: self,
            dom: self.domain.all(),
            cod: self.codomain.all(),
        }
    }

    /// The restriction `π⁻¹(z) → z`.
    pub fn over(&self, z: PointSet) -> View<'_> {
        View {
            f: self,
            dom: self.preimage(z),
            cod: z,
        }
    }

    /// The restriction of the map to `t`, onto its image.
    pub fn on(&self, t: PointSet) -> View<'_> {
        View {
            f: self,
            dom: t,
            cod: self.image(t),
        }
    }

    pub fn image(&self, s: PointSet) -> PointSet {
        points(s).fold(0, |acc, x| acc | bit(self.map[x]))
    }

    pub fn preimage(&self, q: PointSet) -> PointSet {
        (0..self.map.len())
            .filter(|&x| has(q, self.map[x]))
            .fold(0, |acc, x| acc | bit(x))
    }

    pub fn is_quasi_covering(&self) -> Result<(), QuasiWitness> {
        match self.view().quasi_failure() {
            Some(w) => Err(w),
            None => Ok(()),
        }
    }

    /// Points where the map is not a local homeomorphism, by exhaustive
    /// search over all open neighborhoods.
    pub fn branching_locus(&self) -> Result<PointSet, TopError> {
        if self.domain.n() > SIZE_CAP {
            return Err(TopError::TooLarge {
                n: self.domain.n(),
                cap: SIZE_CAP,
            });
        }
        Ok(self.view().branching_exhaustive())
    }
}

/// A map restricted to a subspace `dom` of the domain with values in a
/// subspace `cod` of the codomain (`f(dom) ⊆ cod`). Subspaces carry the
/// induced topology.
#[derive(Debug, Clone, Copy)]
pub struct View<'a> {
    pub f: &'a FinMap,
    pub dom: PointSet,
    pub cod: PointSet,
}

impl<'a> View<'a> {
    pub fn new(f: &'a FinMap, dom: PointSet, cod: PointSet) -> View<'a> {
        debug_assert_eq!(f.image(dom) & !cod, 0);
        View { f, dom, cod }
    }

    pub fn x(&self) -> &'a FinSpace {
        &self.f.domain
    }

    pub fn y(&self) -> &'a FinSpace {
        &self.f.codomain
    }

    /// Minimal open neighborhood of `x` in the domain subspace.
    pub fn up_x(&self, x: usize) -> PointSet {
        self.f.domain.up(x) & self.dom
    }

    pub fn down_x(&self, x: usize) -> PointSet {
        self.f.domain.down(x) & self.dom
    }

    pub fn up_y(&self, y: usize) -> PointSet {
        self.f.codomain.up(y) & self.cod
    }

    pub fn down_y(&self, y: usize) -> PointSet {
        self.f.codomain.down(y) & self.cod
    }

    pub fn image(&self, s: PointSet) -> PointSet {
        self.f.image(s & self.dom)
    }

    pub fn preimage(&self, q: PointSet) -> PointSet {
        self.f.preimage(q) & self.dom
    }

    pub fn fiber(&self, y: usize) -> PointSet {
        self.preimage(bit(y))
    }

    pub fn fiber_card(&self, y: usize) -> usize {
        card(self.fiber(y))
    }

    pub fn is_open_x(&self, s: PointSet) -> bool {
        self.f.domain.is_open_in(s, self.dom)
    }

    pub fn is_open_y(&self, s: PointSet) -> bool {
        self.f.codomain.is_open_in(s, self.cod)
    }

    pub fn is_closed_x(&self, s: PointSet) -> bool {
        self.f.domain.is_closed_in(s, self.dom)
    }

    pub fn is_closed_y(&self, s: PointSet) -> bool {
        self.f.codomain.is_closed_in(s, self.cod)
    }

    pub fn closure_x(&self, s: PointSet) -> PointSet {
        self.f.domain.closure_in(s, self.dom)
    }

    pub fn closure_y(&self, s: PointSet) -> PointSet {
        self.f.codomain.closure_in(s, self.cod)
    }

    pub fn opens_x(&self) -> Vec<PointSet> {
        self.f.domain.opens_in(self.dom)
    }

    pub fn opens_y(&self) -> Vec<PointSet> {
        self.f.codomain.opens_in(self.cod)
    }

    /// Open sets of the codomain subspace containing `y`.
    pub fn open_nbhds_y(&self, y: usize) -> Vec<PointSet> {
        let base = self.up_y(y);
        subsets(self.cod & !base)
            .map(|s| s | base)
            .filter(|&s| self.is_open_y(s))
            .collect()
    }

    pub fn open_nbhds_x(&self, x: usize) -> Vec<PointSet> {
        let base = self.up_x(x);
        subsets(self.dom & !base)
            .map(|s| s | base)
            .filter(|&s| self.is_open_x(s))
            .collect()
    }

    pub fn components_x(&self, s: PointSet) -> Vec<PointSet> {
        self.f.domain.components(s & self.dom)
    }

    pub fn components_y(&self, s: PointSet) -> Vec<PointSet> {
        self.f.codomain.components(s & self.cod)
    }

    pub fn is_surjective(&self) -> bool {
        self.image(self.dom) == self.cod
    }

    pub fn is_open_map(&self) -> bool {
        points(self.dom).all(|x| self.is_open_y(self.image(self.up_x(x))))
    }

    pub fn is_closed_map(&self) -> bool {
        points(self.dom).all(|x| self.is_closed_y(self.image(self.down_x(x))))
    }

    pub fn quasi_failure(&self) -> Option<QuasiWitness> {
        if let Some(y) = points(self.cod & !self.image(self.dom)).next() {
            return Some(QuasiWitness::NotSurjective { y });
        }
        for x in points(self.dom) {
            if !self.is_open_y(self.image(self.up_x(x))) {
                return Some(QuasiWitness::NotOpen { x });
            }
        }
        for x in points(self.dom) {
            if !self.is_closed_y(self.image(self.down_x(x))) {
                return Some(QuasiWitness::NotClosed { x });
            }
        }
        for x1 in points(self.dom) {
            let same = self.fiber(self.f.map[x1]);
            for x2 in points(same & !(bit(x1 + 1) - 1)) {
                if self.up_x(x1) & self.up_x(x2) != 0 {
                    return Some(QuasiWitness::NotSeparated { x1, x2 });
                }
            }
        }
        None
    }

    pub fn is_quasi(&self) -> bool {
        self.quasi_failure().is_none()
    }

    /// Whether `f` maps the open set `u` homeomorphically onto an open set.
    pub fn is_homeomorphic_patch(&self, u: PointSet) -> bool {
        let img = self.image(u);
        if card(img) != card(u) || !self.is_open_y(img) {
            return false;
        }
        points(u).all(|a| {
            let above = self.f.preimage(self.f.codomain.up(self.f.map[a])) & u;
            above & !self.f.domain.up(a) == 0
        })
    }

    /// Branching locus by trying every open neighborhood of every point.
    pub fn branching_exhaustive(&self) -> PointSet {
        points(self.dom)
            .filter(|&x| {
                !self
                    .open_nbhds_x(x)
                    .into_iter()
                    .any(|u| self.is_homeomorphic_patch(u))
            })
            .fold(0, |acc, x| acc | bit(x))
    }

    /// Branching locus of an open map: only the minimal neighborhood needs
    /// checking, because the image of any open subset is open and a
    /// homeomorphic patch stays one on open subsets.
    pub fn branching_open_map(&self) -> PointSet {
        points(self.dom)
            .filter(|&x| !self.is_homeomorphic_patch(self.up_x(x)))
            .fold(0, |acc, x| acc | bit(x))
    }

    pub fn branching(&self) -> PointSet {
        if self.is_open_map() {
            self.branching_open_map()
        } else {
            self.branching_exhaustive()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quasi_examples() {
        let to_point = |s: FinSpace| {
            let n = s.n();
            FinMap::new(s, FinSpace::discrete(1), vec![0; n]).unwrap()
        };
        assert!(to_point(FinSpace::discrete(2)).is_quasi_covering().is_ok());
        assert_eq!(
            to_point(FinSpace::indiscrete(2)).is_quasi_covering(),
            Err(QuasiWitness::NotSeparated { x1: 0, x2: 1 })
        );
        assert!(FinMap::identity(FinSpace::chain(3))
            .is_quasi_covering()
            .is_ok());
        assert_eq!(
            FinMap::identity(FinSpace::chain(3))
                .branching_locus()
                .unwrap(),
            0
        );
    }

    #[test]
    fn continuity_is_checked() {
        let err = FinMap::new(FinSpace::chain(2), FinSpace::chain(2), vec![1, 0]).unwrap_err();
        assert!(matches!(err, TopError::NotContinuous { .. }));
        let err = FinMap::new(FinSpace::chain(2), FinSpace::chain(2), vec![0]).unwrap_err();
        assert!(matches!(err, TopError::MapArity { .. }));
    }
}
