use std::cell::RefCell;
use std::collections::HashMap;
use std::rc::Rc;

use serde::{Deserialize, Serialize};

use super::map::{FinMap, QuasiWitness, View};
use super::space::{bit, card, has, points, PointSet, SIZE_CAP};
use super::TopError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NeighborhoodKind {
    Distinguished,
    Characteristic,
    Exceptional,
    Special,
}

/// An open set `V` of the base and open sets `U_j` of the total space, one
/// per fiber point of the chosen base point, in fiber order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NeighborhoodFamily {
    pub y: usize,
    pub v: PointSet,
    pub u: Vec<PointSet>,
    pub kind: NeighborhoodKind,
}

/// Why a quasi-covering candidate is not a branched covering.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum BranchFailure {
    NotQuasi { witness: QuasiWitness },
    RegularNotDense { x: usize },
    NoSpecialNeighborhood { y: usize },
}

/// Everything known about a view as a covering.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Analysis {
    pub dom: PointSet,
    pub cod: PointSet,
    pub failure: Option<BranchFailure>,
    pub branching: PointSet,
    pub ramification: PointSet,
    pub regular: PointSet,
    pub collapse: PointSet,
    /// Ramification index per domain point (indexed by point), when branched.
    pub index: Vec<Option<usize>>,
    /// Each connected component of the base with its fiber cardinality off
    /// the ramification set, when that cardinality is constant.
    pub degrees: Vec<(PointSet, Option<usize>)>,
    /// A special neighborhood family per base point, when branched.
    pub special: Vec<Option<NeighborhoodFamily>>,
}

impl Analysis {
    pub fn is_quasi(&self) -> bool {
        !matches!(self.failure, Some(BranchFailure::NotQuasi { .. }))
    }

    pub fn is_branched(&self) -> bool {
        self.failure.is_none()
    }

    /// The common degree when branched with the same degree on every base
    /// component.
    pub fn degree(&self) -> Option<usize> {
        if !self.is_branched() {
            return None;
        }
        let mut ds = self.degrees.iter().map(|(_, d)| *d);
        let first = ds.next()??;
        ds.all(|d| d == Some(first)).then_some(first)
    }

    pub fn b(&self, x: usize) -> Option<usize> {
        self.index.get(x).copied().flatten()
    }
}

/// Covering computations for one map, with memoized sub-results.
pub struct Engine<'a> {
    pub f: &'a FinMap,
    exceptional: RefCell<HashMap<PointSet, Option<usize>>>,
    analyses: RefCell<HashMap<(PointSet, PointSet), Rc<Analysis>>>,
}

impl<'a> Engine<'a> {
    pub fn new(f: &'a FinMap) -> Result<Engine<'a>, TopError> {
        if f.domain().n() > SIZE_CAP || f.codomain().n() > SIZE_CAP {
            return Err(TopError::TooLarge {
                n: f.domain().n().max(f.codomain().n()),
                cap: SIZE_CAP,
            });
        }
        Ok(Engine {
            f,
            exceptional: RefCell::new(HashMap::new()),
            analyses: RefCell::new(HashMap::new()),
        })
    }

    pub fn view(&self, dom: PointSet, cod: PointSet) -> View<'a> {
        View::new(self.f, dom, cod)
    }

    pub fn whole(&self) -> View<'a> {
        self.f.view()
    }

    /// All characteristic families of `view` over the open set `v ∋ y`:
    /// partitions of `π⁻¹(v)` into disjoint open sets, one around each fiber
    /// point, each mapping onto `v`.
    pub fn characteristic_families(
        &self,
        view: View<'a>,
        y: usize,
        v: PointSet,
    ) -> Vec<Vec<PointSet>> {
        let fiber: Vec<usize> = points(view.fiber(y)).collect();
        let p = view.preimage(v);
        let comps = view.components_x(p);
        let mut owner = vec![usize::MAX; comps.len()];
        for (j, &x) in fiber.iter().enumerate() {
            let c = comps.iter().position(|&c| has(c, x)).unwrap();
            if owner[c] != usize::MAX {
                return Vec::new();
            }
            owner[c] = j;
        }
        let free: Vec<usize> = (0..comps.len())
            .filter(|&c| owner[c] == usize::MAX)
            .collect();
        let r = fiber.len();
        let mut out = Vec::new();
        let total = r.checked_pow(free.len() as u32).unwrap_or(usize::MAX);
        for code in 0..total {
            let mut fam = vec![0 as PointSet; r];
            for (c, &o) in owner.iter().enumerate() {
                if o != usize::MAX {
                    fam[o] |= comps[c];
                }
            }
            let mut k = code;
            for &c in &free {
                fam[k % r] |= comps[c];
                k /= r;
            }
            if fam.iter().all(|&u| view.image(u) == v) {
                out.push(fam);
            }
        }
        out
    }

    pub fn is_distinguished(&self, view: View<'a>, y: usize, v: PointSet) -> bool {
        has(v, y) && view.is_open_y(v) && !self.characteristic_families(view, y, v).is_empty()
    }

    /// Distinguished open neighborhoods of `y`, the minimal one first.
    pub fn distinguished(&self, view: View<'a>, y: usize) -> Vec<(PointSet, Vec<Vec<PointSet>>)> {
        let mut nbhds = view.open_nbhds_y(y);
        nbhds.sort_by_key(|&v| card(v));
        nbhds
            .into_iter()
            .filter_map(|v| {
                let fams = self.characteristic_families(view, y, v);
                (!fams.is_empty()).then_some((v, fams))
            })
            .collect()
    }

    /// The number of sheets when the characteristic neighborhood `u` is
    /// exceptional, `None` otherwise.
    pub fn exceptional_index(&self, u: PointSet) -> Option<usize> {
        if let Some(&r) = self.exceptional.borrow().get(&u) {
            return r;
        }
        let r = self.exceptional_uncached(u);
        self.exceptional.borrow_mut().insert(u, r);
        r
    }

    fn exceptional_uncached(&self, u: PointSet) -> Option<usize> {
        let v = self.f.image(u);
        let inner = self.view(u, v);
        let ram = inner.image(inner.branching());
        let reg = inner.dom & !inner.preimage(ram);
        let reg_view = self.view(reg, v & !ram);
        if reg == 0 || !reg_view.is_quasi() || reg_view.branching() != 0 {
            return None;
        }
        let mut counts = points(reg_view.cod).map(|z| reg_view.fiber_card(z));
        let d = counts.next()?;
        counts.all(|c| c == d).then_some(d)
    }

    /// A characteristic family over `v` all of whose members are exceptional.
    pub fn special_family(&self, view: View<'a>, y: usize, v: PointSet) -> Option<Vec<PointSet>> {
        self.characteristic_families(view, y, v)
            .into_iter()
            .find(|fam| fam.iter().all(|&u| self.exceptional_index(u).is_some()))
    }

    /// Special neighborhoods of `y` with one exceptional family each.
    pub fn specials(&self, view: View<'a>, y: usize) -> Vec<(PointSet, Vec<PointSet>)> {
        self.distinguished(view, y)
            .into_iter()
            .filter_map(|(v, fams)| {
                fams.into_iter()
                    .find(|fam| fam.iter().all(|&u| self.exceptional_index(u).is_some()))
                    .map(|fam| (v, fam))
            })
            .collect()
    }

    /// Every exceptional neighborhood of `x` in `view`, with its sheet count.
    pub fn exceptional_nbhds(&self, view: View<'a>, x: usize) -> Vec<(PointSet, usize)> {
        let y = self.f.at(x);
        let j = points(view.fiber(y)).position(|p| p == x).unwrap();
        let mut out: Vec<(PointSet, usize)> = Vec::new();
        for (_, fams) in self.distinguished(view, y) {
            for fam in fams {
                let u = fam[j];
                if out.iter().any(|(w, _)| *w == u) {
                    continue;
                }
                if let Some(b) = self.exceptional_index(u) {
                    out.push((u, b));
                }
            }
        }
        out
    }

    pub fn analysis(&self, dom: PointSet, cod: PointSet) -> Rc<Analysis> {
        if let Some(a) = self.analyses.borrow().get(&(dom, cod)) {
            return a.clone();
        }
        let a = Rc::new(self.analyze(self.view(dom, cod)));
        self.analyses.borrow_mut().insert((dom, cod), a.clone());
        a
    }

    pub fn whole_analysis(&self) -> Rc<Analysis> {
        let v = self.whole();
        self.analysis(v.dom, v.cod)
    }

    fn analyze(&self, view: View<'a>) -> Analysis {
        let n = self.f.domain().n();
        let mut out = Analysis {
            dom: view.dom,
            cod: view.cod,
            failure: None,
            branching: 0,
            ramification: 0,
            regular: 0,
            collapse: 0,
            index: vec![None; n],
            degrees: Vec::new(),
            special: vec![None; self.f.codomain().n()],
        };
        if let Some(w) = view.quasi_failure() {
            out.failure = Some(BranchFailure::NotQuasi { witness: w });
            return out;
        }
        out.branching = view.branching_open_map();
        out.ramification = view.image(out.branching);
        out.regular = view.dom & !view.preimage(out.ramification);
        out.collapse = points(view.dom)
            .filter(|&x| view.fiber(self.f.at(x)) == bit(x))
            .fold(0, |acc, x| acc | bit(x));
        out.degrees = view
            .components_y(view.cod)
            .into_iter()
            .map(|comp| {
                let mut cs = points(comp & !out.ramification).map(|z| view.fiber_card(z));
                let d = cs.next();
                (comp, d.filter(|d| cs.all(|c| c == *d)))
            })
            .collect();
        let dense = view.closure_x(out.regular);
        if let Some(x) = points(view.dom & !dense).next() {
            out.failure = Some(BranchFailure::RegularNotDense { x });
            return out;
        }
        let mut special = vec![None; self.f.codomain().n()];
        for y in points(view.cod) {
            let found = view
                .open_nbhds_y(y)
                .into_iter()
                .find_map(|v| self.special_family(view, y, v).map(|fam| (v, fam)));
            match found {
                Some((v, fam)) => {
                    special[y] = Some(NeighborhoodFamily {
                        y,
                        v,
                        u: fam,
                        kind: NeighborhoodKind::Special,
                    })
                }
                None => {
                    out.failure = Some(BranchFailure::NoSpecialNeighborhood { y });
                    return out;
                }
            }
        }
        for fam in special.iter().flatten() {
            for (x, &u) in points(view.fiber(fam.y)).zip(&fam.u) {
                out.index[x] = self.exceptional_index(u);
            }
        }
        out.special = special;
        out
    }
}

/// The open set `V₀ = (Y \ π(X \ ∪W)) ∩ ∩π(W_j)` attached to disjoint open
/// sets `W_j` around the fiber of `y`.
pub fn v0(view: View<'_>, w: &[PointSet]) -> PointSet {
    let union = w.iter().fold(0, |a, &s| a | s);
    let outside = view.image(view.dom & !union);
    w.iter()
        .fold(view.cod & !outside, |acc, &s| acc & view.image(s))
}

/// `V₀` for the given disjoint open sets around the fiber of `y`, and the
/// characteristic family `W_j ∩ π⁻¹(V)` over each open `V ⊆ V₀` containing `y`.
pub fn distinguished_neighborhood(
    f: &FinMap,
    y: usize,
    w: &[PointSet],
) -> Result<(PointSet, Vec<NeighborhoodFamily>), TopError> {
    if f.domain().n() > SIZE_CAP {
        return Err(TopError::TooLarge {
            n: f.domain().n(),
            cap: SIZE_CAP,
        });
    }
    if y >= f.codomain().n() {
        return Err(TopError::MapOutOfRange { x: usize::MAX, y });
    }
    if let Err(witness) = f.is_quasi_covering() {
        return Err(TopError::NotQuasi(witness));
    }
    let view = f.view();
    let fiber: Vec<usize> = points(view.fiber(y)).collect();
    if w.len() != fiber.len() {
        return Err(TopError::BadFamily(format!(
            "expected {} open sets, got {}",
            fiber.len(),
            w.len()
        )));
    }
    for (j, (&x, &s)) in fiber.iter().zip(w).enumerate() {
        if !has(s, x) || !view.is_open_x(s) {
            return Err(TopError::BadFamily(format!(
                "set {j} is not an open neighborhood of {x}"
            )));
        }
        for &t in &w[j + 1..] {
            if s & t != 0 {
                return Err(TopError::BadFamily("sets are not pairwise disjoint".into()));
            }
        }
    }
    let v0 = v0(view, w);
    let fams = view
        .open_nbhds_y(y)
        .into_iter()
        .filter(|&v| v & !v0 == 0)
        .map(|v| NeighborhoodFamily {
            y,
            v,
            u: w.iter().map(|&s| s & view.preimage(v)).collect(),
            kind: NeighborhoodKind::Characteristic,
        })
        .collect();
    Ok((v0, fams))
}

/// Branched-covering verdict with `b`, `B`, `R`, `C` and per-component degree.
pub fn is_branched_covering(f: &FinMap) -> Result<Analysis, TopError> {
    let e = Engine::new(f)?;
    Ok((*e.whole_analysis()).clone())
}
