//! Executable checks of the general facts about finite quasi-coverings and
//! branched coverings. Each check decides its own hypotheses and reports
//! `NotApplicable` when they fail.

use std::cell::RefCell;
use std::rc::Rc;

use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::cover::{v0, Analysis, BranchFailure, Engine};
use super::map::{FinMap, View};
use super::space::{bit, card, has, points, subsets, PointSet};
use super::TopError;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Verdict {
    NotApplicable,
    Holds,
    Fails { detail: String },
}

impl Verdict {
    pub fn failed(&self) -> bool {
        matches!(self, Verdict::Fails { .. })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LemmaVerdict {
    pub lemma: String,
    pub instance: String,
    pub applicable: bool,
    pub holds: bool,
    pub detail: Option<String>,
    pub counterexample: Option<FinMap>,
}

/// Parameter choices per instance are capped at this many; larger families
/// are sampled deterministically from the instance.
pub const PARAM_LIMIT: usize = 48;

type Check = fn(&Ctx) -> Verdict;

const REGISTRY: &[(&str, Check)] = &[
    ("trivial", trivial),
    ("opcl", opcl),
    ("fqc", fqc),
    ("disting", disting),
    ("intersection", intersection),
    ("ccs0", ccs0),
    ("genbranch", genbranch),
    ("max", max),
    ("nowhere", nowhere),
    ("clopen-sub", clopen_sub),
    ("cuenta0", cuenta0),
    ("intersection-branched", intersection_branched),
    ("indexwell", indexwell),
    ("cuenta-i", cuenta_i),
    ("cuenta-ii", cuenta_ii),
    ("cuenta-iii", cuenta_iii),
    ("cuenta-iv", cuenta_iv),
    ("cuenta-v", cuenta_v),
    ("restr", restr),
    ("rcc", rcc),
    ("opcl2", opcl2),
    ("sc", sc),
    ("collapse-closed", collapse_closed),
    ("collapse-index", collapse_index),
    ("colapseinB", colapse_in_b),
];

pub fn lemma_ids() -> Vec<&'static str> {
    REGISTRY.iter().map(|(id, _)| *id).collect()
}

pub struct Ctx<'a> {
    e: Engine<'a>,
    whole: Rc<Analysis>,
    rng: RefCell<ChaCha8Rng>,
}

fn instance_seed(f: &FinMap) -> u64 {
    let mut h: u64 = 0x9e37_79b9_7f4a_7c15;
    let mut mix = |v: u64| {
        h ^= v
            .wrapping_add(0x9e37_79b9_7f4a_7c15)
            .wrapping_add(h << 6)
            .wrapping_add(h >> 2);
    };
    mix(f.domain().n() as u64);
    f.domain().up_sets().iter().for_each(|&u| mix(u as u64));
    mix(f.codomain().n() as u64);
    f.codomain().up_sets().iter().for_each(|&u| mix(u as u64));
    f.map().iter().for_each(|&y| mix(y as u64));
    h
}

impl<'a> Ctx<'a> {
    pub fn new(f: &'a FinMap) -> Result<Ctx<'a>, TopError> {
        let e = Engine::new(f)?;
        let whole = e.whole_analysis();
        Ok(Ctx {
            e,
            whole,
            rng: RefCell::new(ChaCha8Rng::seed_from_u64(instance_seed(f))),
        })
    }

    fn view(&self) -> View<'a> {
        self.e.whole()
    }

    fn sample<T>(&self, items: Vec<T>, limit: usize) -> Vec<T> {
        if items.len() <= limit {
            return items;
        }
        let mut idx = sample(&mut *self.rng.borrow_mut(), items.len(), limit).into_vec();
        idx.sort_unstable();
        let mut slots: Vec<Option<T>> = items.into_iter().map(Some).collect();
        idx.into_iter().map(|i| slots[i].take().unwrap()).collect()
    }

    fn quasi(&self) -> bool {
        self.whole.is_quasi()
    }

    fn branched(&self) -> bool {
        self.whole.is_branched()
    }

    fn b(&self, x: usize) -> usize {
        self.whole
            .b(x)
            .expect("index defined on branched coverings")
    }

    fn fiber_points(&self, y: usize) -> Vec<usize> {
        points(self.view().fiber(y)).collect()
    }
}

macro_rules! ensure {
    ($cond:expr, $($arg:tt)*) => {
        if !$cond {
            return Verdict::Fails { detail: format!($($arg)*) };
        }
    };
}

fn set_str(s: PointSet) -> String {
    let v: Vec<String> = points(s).map(|x| x.to_string()).collect();
    format!("{{{}}}", v.join(","))
}

/// Families of open neighborhoods, one around each point of `xs`, optionally
/// required to be pairwise disjoint. The minimal family comes first.
fn neighborhood_families(
    view: View<'_>,
    xs: &[usize],
    disjoint: bool,
    cap: usize,
) -> Vec<Vec<PointSet>> {
    let options: Vec<Vec<PointSet>> = xs.iter().map(|&x| view.open_nbhds_x(x)).collect();
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(xs.len());
    fn go(
        options: &[Vec<PointSet>],
        disjoint: bool,
        cap: usize,
        cur: &mut Vec<PointSet>,
        out: &mut Vec<Vec<PointSet>>,
    ) {
        if out.len() >= cap {
            return;
        }
        let i = cur.len();
        if i == options.len() {
            out.push(cur.clone());
            return;
        }
        for &w in &options[i] {
            if disjoint && cur.iter().any(|&c| c & w != 0) {
                continue;
            }
            cur.push(w);
            go(options, disjoint, cap, cur, out);
            cur.pop();
        }
    }
    go(&options, disjoint, cap, &mut cur, &mut out);
    out
}

fn is_characteristic(
    view: View<'_>,
    xs: &[usize],
    v: PointSet,
    fam: &[PointSet],
) -> Result<(), String> {
    let pre = view.preimage(v);
    let mut union = 0;
    for (j, (&x, &u)) in xs.iter().zip(fam).enumerate() {
        if !has(u, x) {
            return Err(format!("member {j} misses its fiber point {x}"));
        }
        if !view.is_open_x(u) {
            return Err(format!("member {j} = {} is not open", set_str(u)));
        }
        if union & u != 0 {
            return Err(format!("member {j} overlaps earlier members"));
        }
        union |= u;
        if view.image(u) != v {
            return Err(format!(
                "member {j} maps onto {} instead of {}",
                set_str(view.image(u)),
                set_str(v)
            ));
        }
    }
    if union != pre {
        return Err(format!(
            "members cover {} but the preimage is {}",
            set_str(union),
            set_str(pre)
        ));
    }
    Ok(())
}

fn trivial(c: &Ctx) -> Verdict {
    let v = c.view();
    if !v.is_surjective() {
        return Verdict::NotApplicable;
    }
    let xs = c.sample(subsets(v.dom).collect(), PARAM_LIMIT);
    let zs = c.sample(subsets(v.cod).collect(), PARAM_LIMIT);
    for &a in &xs {
        for &z in &zs {
            let t = v.preimage(z);
            ensure!(
                v.image(a & t) == v.image(a) & v.image(t),
                "image of A∩T differs from π(A)∩π(T) for A = {}, Z = {}",
                set_str(a),
                set_str(z)
            );
        }
    }
    let open = v.is_open_map();
    let closed = v.is_closed_map();
    for &z in &zs {
        let sub = c.e.view(v.preimage(z), z);
        ensure!(
            !open || sub.is_open_map(),
            "restriction over {} is not open",
            set_str(z)
        );
        ensure!(
            !closed || sub.is_closed_map(),
            "restriction over {} is not closed",
            set_str(z)
        );
    }
    Verdict::Holds
}

fn opcl(c: &Ctx) -> Verdict {
    let v = c.view();
    let open = v.is_open_map();
    let closed = v.is_closed_map();
    if !open && !closed {
        return Verdict::NotApplicable;
    }
    if open {
        for b in c.sample(subsets(v.cod).collect(), PARAM_LIMIT) {
            ensure!(
                v.closure_x(v.preimage(b)) == v.preimage(v.closure_y(b)),
                "closure does not commute with preimage for B = {}",
                set_str(b)
            );
        }
    }
    if closed {
        for a in c.sample(subsets(v.dom).collect(), PARAM_LIMIT) {
            ensure!(
                v.image(v.closure_x(a)) == v.closure_y(v.image(a)),
                "closure does not commute with image for A = {}",
                set_str(a)
            );
        }
    }
    Verdict::Holds
}

fn fqc(c: &Ctx) -> Verdict {
    if !c.quasi() {
        return Verdict::NotApplicable;
    }
    let v = c.view();
    for z in c.sample(subsets(v.cod).collect(), PARAM_LIMIT) {
        let sub = c.e.view(v.preimage(z), z);
        ensure!(
            sub.is_quasi(),
            "restriction over {} is not a quasi-covering",
            set_str(z)
        );
    }
    Verdict::Holds
}

fn disting(c: &Ctx) -> Verdict {
    if !c.quasi() {
        return Verdict::NotApplicable;
    }
    let v = c.view();
    for y in points(v.cod) {
        let xs = c.fiber_points(y);
        let r = xs.len();
        let fams = neighborhood_families(v, &xs, true, 256);
        let mut chosen = vec![fams[0].clone()];
        chosen.extend(c.sample(fams[1..].to_vec(), 8));
        for w in chosen {
            let v0 = v0(v, &w);
            let union = w.iter().fold(0, |a, &s| a | s);
            ensure!(
                has(v0, y) && v.is_open_y(v0),
                "V0 = {} is not an open neighborhood of {y}",
                set_str(v0)
            );
            ensure!(
                v.preimage(v0) & !union == 0,
                "preimage of V0 leaves the W family at {y}"
            );
            for nb in v.open_nbhds_y(y).into_iter().filter(|&nb| nb & !v0 == 0) {
                let pre = v.preimage(nb);
                let fam: Vec<PointSet> = w.iter().map(|&s| s & pre).collect();
                if let Err(e) = is_characteristic(v, &xs, nb, &fam) {
                    return Verdict::Fails {
                        detail: format!("y = {y}, V = {}: {e}", set_str(nb)),
                    };
                }
                for z in points(nb) {
                    ensure!(
                        v.fiber_card(z) >= r,
                        "fiber over {z} is smaller than over {y}"
                    );
                }
            }
        }
    }
    Verdict::Holds
}

fn intersection(c: &Ctx) -> Verdict {
    if !c.quasi() {
        return Verdict::NotApplicable;
    }
    let v = c.view();
    for y in points(v.cod) {
        let xs = c.fiber_points(y);
        let r = xs.len();
        let mut pairs = Vec::new();
        for (nb, fams) in c.e.distinguished(v, y) {
            for fam in fams {
                pairs.push((nb, fam));
            }
        }
        for (nb, fam) in c.sample(pairs, 12) {
            for k in 0..=r {
                let shrunk: Vec<PointSet> = fam
                    .iter()
                    .zip(&xs)
                    .enumerate()
                    .map(|(i, (&u, &x))| if i < k { u & v.up_x(x) } else { u })
                    .collect();
                let tilde_v = nb & v0(v, &shrunk);
                ensure!(
                    has(tilde_v, y) && v.is_open_y(tilde_v),
                    "shrunken base {} is not an open neighborhood of {y}",
                    set_str(tilde_v)
                );
                let pre = v.preimage(tilde_v);
                let tilde: Vec<PointSet> = shrunk.iter().map(|&u| u & pre).collect();
                if let Err(e) = is_characteristic(v, &xs, tilde_v, &tilde) {
                    return Verdict::Fails {
                        detail: format!("y = {y}, V = {}, k = {k}: {e}", set_str(nb)),
                    };
                }
                for z in points(tilde_v) {
                    for i in 0..r {
                        let fz = v.fiber(z);
                        ensure!(
                            card(fz & tilde[i]) == card(fz & fam[i]),
                            "sheet counts change over {z} for member {i} at y = {y}"
                        );
                    }
                }
            }
        }
    }
    Verdict::Holds
}

fn ccs0(c: &Ctx) -> Verdict {
    if !c.quasi() {
        return Verdict::NotApplicable;
    }
    let v = c.view();
    let mut applicable = false;
    for y in points(v.cod) {
        for (nb, fams) in c.e.distinguished(v, y) {
            if !v.y().is_connected(nb) {
                continue;
            }
            applicable = true;
            let mut comps = v.components_x(v.preimage(nb));
            comps.sort_unstable();
            for mut fam in fams {
                fam.sort_unstable();
                ensure!(
                    fam == comps,
                    "characteristic family over connected {} is not the component list",
                    set_str(nb)
                );
            }
        }
    }
    if applicable {
        Verdict::Holds
    } else {
        Verdict::NotApplicable
    }
}

fn genbranch(c: &Ctx) -> Verdict {
    if !c.quasi() {
        return Verdict::NotApplicable;
    }
    let v = c.view();
    for y in points(v.cod) {
        let regular = !has(c.whole.ramification, y);
        let constant = v.open_nbhds_y(y).into_iter().any(|w| {
            let k = v.fiber_card(y);
            points(w).all(|z| v.fiber_card(z) == k)
        });
        ensure!(
            regular == constant,
            "y = {y}: outside R is {regular} but locally constant fiber count is {constant}"
        );
    }
    Verdict::Holds
}

fn max(c: &Ctx) -> Verdict {
    if !c.quasi() {
        return Verdict::NotApplicable;
    }
    let v = c.view();
    let d = points(v.cod).map(|y| v.fiber_card(y)).max().unwrap_or(0);
    for y in points(v.cod).filter(|&y| v.fiber_card(y) == d) {
        ensure!(
            !has(c.whole.ramification, y),
            "y = {y} has the largest fiber but lies in R"
        );
    }
    Verdict::Holds
}

fn regular_dense(c: &Ctx) -> bool {
    c.quasi() && !matches!(c.whole.failure, Some(BranchFailure::RegularNotDense { .. }))
}

fn nowhere(c: &Ctx) -> Verdict {
    if !regular_dense(c) {
        return Verdict::NotApplicable;
    }
    let v = c.view();
    let candidates: Vec<PointSet> = subsets(v.dom)
        .filter(|&z| v.is_closed_x(z) && v.x().interior(z) == 0)
        .collect();
    for z in c.sample(candidates, PARAM_LIMIT) {
        let img = v.image(z);
        ensure!(v.is_closed_y(img), "image of {} is not closed", set_str(z));
        ensure!(
            v.y().interior(img) == 0,
            "image of {} has interior",
            set_str(z)
        );
    }
    Verdict::Holds
}

fn unions_of(comps: &[PointSet]) -> Vec<PointSet> {
    let idx = (1u32 << comps.len()) - 1;
    subsets(idx)
        .filter(|&s| s != 0)
        .map(|s| points(s).fold(0, |a, i| a | comps[i]))
        .collect()
}

fn clopen_sub(c: &Ctx) -> Verdict {
    if !c.quasi() {
        return Verdict::NotApplicable;
    }
    let v = c.view();
    for nb in c.sample(v.opens_y(), 16) {
        let comps = v.components_x(v.preimage(nb));
        if comps.len() > 12 {
            continue;
        }
        for u in c.sample(unions_of(&comps), 8) {
            let sub = c.e.view(u, v.image(u));
            ensure!(
                sub.is_quasi(),
                "restriction to {} is not a quasi-covering",
                set_str(u)
            );
            ensure!(
                sub.branching() == c.whole.branching & u,
                "branching locus of the restriction to {} is {} instead of {}",
                set_str(u),
                set_str(sub.branching()),
                set_str(c.whole.branching & u)
            );
        }
    }
    Verdict::Holds
}

fn cuenta0(c: &Ctx) -> Verdict {
    if !c.quasi() {
        return Verdict::NotApplicable;
    }
    let v = c.view();
    let mut applicable = false;
    for y in points(v.cod) {
        let mut members = Vec::new();
        for (_, fams) in c.e.distinguished(v, y) {
            for fam in fams {
                for u in fam {
                    if !members.contains(&u) {
                        members.push(u);
                    }
                }
            }
        }
        for u in c.sample(members, 8) {
            let gs: Vec<PointSet> = subsets(u)
                .filter(|&g| g != 0 && v.is_open_x(g) && v.closure_x(g) & u == u)
                .collect();
            for g in c.sample(gs, 8) {
                let mut counts = points(v.image(g)).map(|z| card(v.fiber(z) & g));
                let d = counts.next().unwrap();
                if !counts.all(|k| k == d) {
                    continue;
                }
                applicable = true;
                ensure!(
                    c.e.exceptional_index(u) == Some(d),
                    "U = {} with dense G = {} of constant degree {d} is not exceptional with {d} sheets",
                    set_str(u),
                    set_str(g)
                );
            }
        }
    }
    if applicable {
        Verdict::Holds
    } else {
        Verdict::NotApplicable
    }
}

fn disjoint_choice(options: &[Vec<PointSet>], used: PointSet) -> bool {
    match options.split_first() {
        None => true,
        Some((first, rest)) => first
            .iter()
            .any(|&u| u & used == 0 && disjoint_choice(rest, used | u)),
    }
}

fn intersection_branched(c: &Ctx) -> Verdict {
    if !c.quasi() {
        return Verdict::NotApplicable;
    }
    let v = c.view();
    let mut applicable = false;
    for y in points(v.cod) {
        let options: Vec<Vec<PointSet>> = c
            .fiber_points(y)
            .into_iter()
            .map(|x| {
                c.e.exceptional_nbhds(v, x)
                    .into_iter()
                    .map(|(u, _)| u)
                    .collect()
            })
            .collect();
        if !disjoint_choice(&options, 0) {
            continue;
        }
        applicable = true;
        let nbhds = v.open_nbhds_y(y);
        for &n in &nbhds {
            let found = nbhds
                .iter()
                .any(|&s| s & !n == 0 && c.e.special_family(v, y, s).is_some());
            ensure!(
                found,
                "y = {y} has no special neighborhood inside {}",
                set_str(n)
            );
        }
    }
    if applicable {
        Verdict::Holds
    } else {
        Verdict::NotApplicable
    }
}

fn indexwell(c: &Ctx) -> Verdict {
    if !c.branched() {
        return Verdict::NotApplicable;
    }
    let v = c.view();
    for x in points(v.dom) {
        for (u, b) in c.e.exceptional_nbhds(v, x) {
            ensure!(
                b == c.b(x),
                "x = {x}: exceptional neighborhood {} gives {b} sheets, expected {}",
                set_str(u),
                c.b(x)
            );
        }
    }
    Verdict::Holds
}

fn d_at(c: &Ctx, y: usize) -> usize {
    c.fiber_points(y).into_iter().map(|x| c.b(x)).sum()
}

fn cuenta_i(c: &Ctx) -> Verdict {
    if !c.branched() {
        return Verdict::NotApplicable;
    }
    let v = c.view();
    for y in points(v.cod) {
        let dy = d_at(c, y);
        for (nb, _) in c.sample(c.e.specials(v, y), 6) {
            let sub = c.e.analysis(v.preimage(nb), nb);
            ensure!(
                sub.is_branched() && sub.degree() == Some(dy),
                "over special {} of y = {y} the restriction is not {dy}-branched",
                set_str(nb)
            );
            for w in points(nb & !sub.ramification) {
                ensure!(
                    v.fiber_card(w) == dy,
                    "fiber over {w} does not have {dy} points"
                );
            }
            for z in points(nb) {
                ensure!(d_at(c, z) == dy, "d at {z} differs from d at {y}");
            }
        }
    }
    Verdict::Holds
}

fn cuenta_ii(c: &Ctx) -> Verdict {
    if !c.branched() {
        return Verdict::NotApplicable;
    }
    let v = c.view();
    for (comp, d) in &c.whole.degrees {
        ensure!(
            d.is_some(),
            "fiber count is not constant off R on component {}",
            set_str(*comp)
        );
    }
    let ds: Vec<usize> = points(v.cod).map(|y| d_at(c, y)).collect();
    for &d in &ds {
        let level = points(v.cod)
            .filter(|&y| d_at(c, y) == d)
            .fold(0, |a, y| a | bit(y));
        ensure!(
            v.is_open_y(level) && v.is_closed_y(level),
            "level set d = {d} is not open and closed"
        );
    }
    if v.y().is_connected(v.cod) {
        ensure!(
            c.whole.degree().is_some(),
            "connected base without a single degree"
        );
    }
    Verdict::Holds
}

fn cuenta_iii(c: &Ctx) -> Verdict {
    if !c.branched() {
        return Verdict::NotApplicable;
    }
    let v = c.view();
    for y in points(v.cod) {
        let xs = c.fiber_points(y);
        let ws = neighborhood_families(v, &xs, false, 64);
        let specials: Vec<(PointSet, Vec<PointSet>)> =
            c.e.distinguished(v, y)
                .into_iter()
                .flat_map(|(nb, fams)| fams.into_iter().map(move |f| (nb, f)))
                .filter(|(_, fam)| fam.iter().all(|&u| c.e.exceptional_index(u).is_some()))
                .collect();
        let mut chosen = vec![ws[0].clone()];
        chosen.extend(c.sample(ws[1..].to_vec(), 6));
        for w in chosen {
            let ok = specials
                .iter()
                .any(|(_, fam)| fam.iter().zip(&w).all(|(&u, &s)| u & !s == 0));
            ensure!(
                ok,
                "y = {y}: no exceptional family inside the neighborhoods {:?}",
                w
            );
        }
    }
    Verdict::Holds
}

fn cuenta_iv(c: &Ctx) -> Verdict {
    if !c.branched() {
        return Verdict::NotApplicable;
    }
    let v = c.view();
    for x in points(v.dom) {
        let bx = c.b(x);
        for (u, _) in c.e.exceptional_nbhds(v, x) {
            let m = points(v.image(u))
                .map(|z| card(v.fiber(z) & u))
                .max()
                .unwrap();
            ensure!(
                m == bx,
                "x = {x}: largest local fiber in {} is {m}, index is {bx}",
                set_str(u)
            );
            for x2 in points(u) {
                ensure!(
                    c.b(x2) <= bx,
                    "index rises from {x} to {x2} inside {}",
                    set_str(u)
                );
            }
        }
    }
    let top = points(v.dom).map(|x| c.b(x)).max().unwrap_or(0);
    for e in 0..=top {
        let level = points(v.dom)
            .filter(|&x| c.b(x) <= e)
            .fold(0, |a, x| a | bit(x));
        ensure!(
            v.is_open_x(level),
            "{{b <= {e}}} = {} is not open",
            set_str(level)
        );
    }
    Verdict::Holds
}

fn cuenta_v(c: &Ctx) -> Verdict {
    if !c.branched() {
        return Verdict::NotApplicable;
    }
    for x in points(c.view().dom) {
        ensure!(
            (c.b(x) == 1) == !has(c.whole.branching, x),
            "x = {x}: index {} but membership in B is {}",
            c.b(x),
            has(c.whole.branching, x)
        );
    }
    Verdict::Holds
}

fn restr(c: &Ctx) -> Verdict {
    if !c.branched() {
        return Verdict::NotApplicable;
    }
    let v = c.view();
    let w_all = c.sample(v.opens_y(), 16);
    for w in w_all {
        let extra = v.closure_y(w) & !w;
        for z in c.sample(subsets(extra).map(|s| s | w).collect(), 6) {
            let t = v.preimage(z);
            let sub = c.e.analysis(t, z);
            ensure!(
                sub.is_branched(),
                "restriction over Z = {} is not branched",
                set_str(z)
            );
            ensure!(
                sub.branching == c.whole.branching & t,
                "B changes over Z = {}",
                set_str(z)
            );
            ensure!(
                sub.regular == c.whole.regular & t,
                "regular locus changes over Z = {}",
                set_str(z)
            );
            ensure!(
                sub.ramification == c.whole.ramification & z,
                "R changes over Z = {}",
                set_str(z)
            );
            for x in points(t) {
                ensure!(
                    sub.b(x) == Some(c.b(x)),
                    "index of {x} changes over Z = {}",
                    set_str(z)
                );
            }
        }
    }
    Verdict::Holds
}

fn rcc(c: &Ctx) -> Verdict {
    if !c.quasi() {
        return Verdict::NotApplicable;
    }
    let v = c.view();
    let pieces = v.components_y(v.cod).into_iter().all(|yi| {
        let sub = c.e.analysis(v.preimage(yi), yi);
        sub.is_branched() && sub.degree().is_some()
    });
    ensure!(
        pieces == c.branched(),
        "branched is {} but componentwise branched is {pieces}",
        c.branched()
    );
    Verdict::Holds
}

fn opcl2(c: &Ctx) -> Verdict {
    if !c.branched() {
        return Verdict::NotApplicable;
    }
    let v = c.view();
    let comps = v.components_x(v.dom);
    if comps.len() > 12 {
        return Verdict::NotApplicable;
    }
    for t in c.sample(unions_of(&comps), 16) {
        let z = v.image(t);
        ensure!(
            v.is_open_y(z) && v.is_closed_y(z),
            "image of {} is not open and closed",
            set_str(t)
        );
        let sub = c.e.analysis(t, z);
        ensure!(
            sub.is_branched(),
            "restriction to {} is not branched",
            set_str(t)
        );
        ensure!(
            sub.branching == c.whole.branching & t,
            "B changes on T = {}",
            set_str(t)
        );
        ensure!(
            sub.ramification & !(c.whole.ramification & z) == 0,
            "R grows on T = {}",
            set_str(t)
        );
        ensure!(
            c.whole.regular & t & !sub.regular == 0,
            "regular points are lost on T = {}",
            set_str(t)
        );
    }
    Verdict::Holds
}

fn sc(c: &Ctx) -> Verdict {
    if !c.quasi() {
        return Verdict::NotApplicable;
    }
    let v = c.view();
    let off = v.cod & !c.whole.ramification;
    let hyp = points(v.cod).all(|y| {
        c.e.distinguished(v, y)
            .into_iter()
            .any(|(nb, _)| v.y().is_connected(nb & off))
    });
    if !hyp {
        return Verdict::NotApplicable;
    }
    ensure!(
        c.branched(),
        "hypotheses hold but the map is not branched: {:?}",
        c.whole.failure
    );
    Verdict::Holds
}

fn collapse_closed(c: &Ctx) -> Verdict {
    if !c.quasi() {
        return Verdict::NotApplicable;
    }
    ensure!(
        c.view().is_closed_x(c.whole.collapse),
        "collapsing set {} is not closed",
        set_str(c.whole.collapse)
    );
    Verdict::Holds
}

fn collapse_index(c: &Ctx) -> Verdict {
    let Some(d) = c.whole.degree() else {
        return Verdict::NotApplicable;
    };
    let v = c.view();
    let top = points(v.dom)
        .filter(|&x| c.b(x) == d)
        .fold(0, |a, x| a | bit(x));
    ensure!(
        top == c.whole.collapse,
        "collapsing set {} differs from {{b = {d}}} = {}",
        set_str(c.whole.collapse),
        set_str(top)
    );
    Verdict::Holds
}

fn colapse_in_b(c: &Ctx) -> Verdict {
    if !c.quasi() {
        return Verdict::NotApplicable;
    }
    let v = c.view();
    let mut applicable = false;
    let cands: Vec<PointSet> = subsets(v.dom).filter(|&s| card(s) >= 2).collect();
    for s in c.sample(cands, PARAM_LIMIT) {
        let sub = c.e.analysis(s, v.image(s));
        match sub.degree() {
            Some(d) if d > 1 => {
                applicable = true;
                ensure!(
                    sub.collapse & !c.whole.branching == 0,
                    "C = {}: collapsing points {} are outside B",
                    set_str(s),
                    set_str(sub.collapse & !c.whole.branching)
                );
            }
            _ => {}
        }
    }
    if applicable {
        Verdict::Holds
    } else {
        Verdict::NotApplicable
    }
}

pub fn describe(f: &FinMap) -> String {
    format!(
        "{} -> {} via {:?}",
        serde_json::to_string(f.domain()).unwrap(),
        serde_json::to_string(f.codomain()).unwrap(),
        f.map()
    )
}

pub fn to_lemma_verdict(id: &str, f: &FinMap, v: Verdict) -> LemmaVerdict {
    let (applicable, holds, detail) = match v {
        Verdict::NotApplicable => (false, true, None),
        Verdict::Holds => (true, true, None),
        Verdict::Fails { detail } => (true, false, Some(detail)),
    };
    LemmaVerdict {
        lemma: id.to_string(),
        instance: describe(f),
        applicable,
        holds,
        counterexample: (!holds).then(|| f.clone()),
        detail,
    }
}

/// Runs one registered check.
pub fn check_lemma(id: &str, f: &FinMap) -> Result<LemmaVerdict, TopError> {
    let check = REGISTRY
        .iter()
        .find(|(name, _)| *name == id)
        .ok_or_else(|| TopError::UnknownLemma(id.to_string()))?
        .1;
    let ctx = Ctx::new(f)?;
    Ok(to_lemma_verdict(id, f, check(&ctx)))
}

/// Runs every registered check, in registry order.
pub fn check_all(f: &FinMap) -> Result<Vec<(&'static str, Verdict)>, TopError> {
    let ctx = Ctx::new(f)?;
    Ok(REGISTRY
        .iter()
        .map(|(id, check)| (*id, check(&ctx)))
        .collect())
}

pub fn check_all_verdicts(f: &FinMap) -> Result<Vec<LemmaVerdict>, TopError> {
    Ok(check_all(f)?
        .into_iter()
        .map(|(id, v)| to_lemma_verdict(id, f, v))
        .collect())
}
