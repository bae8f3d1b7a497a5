use std::collections::BTreeMap;

use branchcov::polycore::{
    isolate_real_roots, resultant, sturm_count, sylvester_resultant, Bound, UniPoly,
};
use branchcov::Rat;
use proptest::prelude::*;

/// A polynomial with known real roots: rational linear factors with
/// multiplicity, `t^2 - s` for non-square `s`, and `t^2 + c` with no real
/// roots. Returns the polynomial and its distinct real root count.
fn known_roots() -> impl Strategy<Value = (UniPoly, usize)> {
    (
        prop::collection::vec(((-6i64..=6), (1i64..=3), (1u32..=3)), 0..4),
        prop::collection::vec(prop::sample::select(vec![2i64, 3, 5, 7]), 0..2),
        prop::collection::vec(1i64..=4, 0..2),
        -3i64..=3,
    )
        .prop_map(|(lin, sq, pos, lead)| {
            let lead = if lead == 0 { 1 } else { lead };
            let mut p = UniPoly::constant(Rat::from(lead));
            let mut distinct: BTreeMap<Rat, ()> = BTreeMap::new();
            for (num, den, m) in lin {
                let r = Rat::new(num, den);
                distinct.insert(r.clone(), ());
                p = &p * &UniPoly::linear_root(&r).pow(m);
            }
            let mut irr = std::collections::BTreeSet::new();
            for s in sq {
                irr.insert(s);
                p = &p * &UniPoly::from_ints(&[-s, 0, 1]);
            }
            for c in pos {
                p = &p * &UniPoly::from_ints(&[c, 0, 1]);
            }
            (p, distinct.len() + 2 * irr.len())
        })
}

fn small_poly() -> impl Strategy<Value = UniPoly> {
    prop::collection::vec(-5i64..=5, 1..5).prop_filter_map("nonzero", |c| {
        let p = UniPoly::from_ints(&c);
        (!p.is_zero()).then_some(p)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn sturm_count_matches_isolation((p, expected) in known_roots()) {
        let roots = isolate_real_roots(&p).unwrap();
        prop_assert_eq!(roots.distinct(), expected);
        prop_assert_eq!(sturm_count(&p, &Bound::NegInf, &Bound::PosInf).unwrap(), expected);
    }

    #[test]
    fn isolating_intervals_are_disjoint_and_isolate((p, _) in known_roots()) {
        let roots = isolate_real_roots(&p).unwrap();
        for w in roots.roots.windows(2) {
            prop_assert!(w[0].0.hi() < w[1].0.lo());
        }
        for (r, m) in &roots.roots {
            prop_assert!(*m >= 1);
            prop_assert_eq!(r.sign_of(&p), 0);
            match r.exact() {
                Some(v) => prop_assert!(p.eval(v).is_zero()),
                None => {
                    prop_assert!(r.defining().sign_at(r.lo()) * r.defining().sign_at(r.hi()) < 0);
                    prop_assert_eq!(sturm_count(&p, &Bound::At(r.lo().clone()), &Bound::At(r.hi().clone())).unwrap(), 1);
                }
            }
        }
    }

    #[test]
    fn refinement_keeps_the_root((p, _) in known_roots(), k in 1u32..40) {
        let width = Rat::new(1, 1i64 << k.min(40));
        for (r, _) in isolate_real_roots(&p).unwrap().roots {
            let mut s = r.clone();
            s.refine_to(&width);
            prop_assert!(s.width() <= width);
            prop_assert!(s.lo() >= r.lo() && s.hi() <= r.hi());
            prop_assert_eq!(s.sign_of(&p), 0);
        }
    }

    #[test]
    fn resultant_is_multiplicative(p in small_poly(), q in small_poly(), r in small_poly()) {
        let qr = &q * &r;
        prop_assert_eq!(resultant(&p, &qr).unwrap(), resultant(&p, &q).unwrap() * resultant(&p, &r).unwrap());
    }

    #[test]
    fn subresultant_matches_sylvester(p in small_poly(), q in small_poly()) {
        prop_assert_eq!(resultant(&p, &q).unwrap(), sylvester_resultant(&p, &q).unwrap());
    }

    #[test]
    fn resultant_vanishes_on_common_root(p in small_poly(), q in small_poly(), c in -4i64..=4) {
        let f = UniPoly::linear_root(&Rat::from(c));
        prop_assert!(resultant(&(&p * &f), &(&q * &f)).unwrap().is_zero());
    }
}
