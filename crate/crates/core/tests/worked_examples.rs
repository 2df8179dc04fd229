//! Hand-checked examples through the public API, each compared against a
//! brute-force enumeration where one is available.

use std::collections::BTreeSet;

use bicyclic::classify::{classify, IsoType};
use bicyclic::family::{closure_violation, is_omega_closed, Family};
use bicyclic::morphisms::{sigma_hom, to_brandt, BrandtElt};
use bicyclic::omega_sets::EpSet;
use bicyclic::semigroup::{green, Element, GreenRelation, SemigroupCtx};
use bicyclic::syntax::parse_family;

const LIMIT: i64 = 200;

fn members(s: &EpSet) -> BTreeSet<i64> {
    (0..LIMIT).filter(|&n| s.contains(n)).collect()
}

fn set(src: &str) -> EpSet {
    src.parse().unwrap()
}

fn elt(src: &str) -> Element {
    src.parse().unwrap()
}

fn ctx(src: &str) -> SemigroupCtx {
    parse_family(src).unwrap().build(64).unwrap()
}

#[test]
fn set_operations_against_enumeration() {
    assert!(EpSet::empty().shift(5).is_empty());
    for k in 0..6 {
        let shifted = members(&EpSet::ray(k).shift(-1));
        let expected: BTreeSet<i64> = (0..LIMIT).filter(|&n| n + 1 >= k as i64).collect();
        assert_eq!(shifted, expected);
    }
    assert_eq!(EpSet::finite([3]).shift(-3), EpSet::finite([0]));

    let p = set("2+3*w");
    assert_eq!(EpSet::ray(0).intersect(&p), p);
    assert!(p.shift(-1).intersect(&p).is_empty());
    let brute: BTreeSet<i64> = members(&p.shift(-1))
        .intersection(&members(&p))
        .copied()
        .collect();
    assert!(brute.is_empty());
}

#[test]
fn subset_and_shift_subset() {
    assert!(EpSet::empty().is_subset(&set("{4}")));
    assert!(EpSet::ray(3).is_subset(&EpSet::ray(1)));
    assert!(set("{0,2}").is_subset(&set("0+2*w")));
    let f = set("{1,4}|[9)");
    assert_eq!(f.exists_shift_subset(&f), Some(0));
    assert_eq!(set("{5}").exists_shift_subset(&set("{3}")), None);
    assert_eq!(EpSet::ray(4).exists_shift_subset(&EpSet::ray(0)), Some(0));
    assert_eq!(EpSet::ray(0).exists_shift_subset(&EpSet::ray(4)), Some(4));
}

#[test]
fn shapes() {
    assert!(EpSet::ray(3).is_inductive());
    assert!(!set("{0,2}").is_inductive());
    assert!(EpSet::empty().is_inductive());
    assert_eq!(set("2+3*w").as_arith_progression(), Some((2, 3)));
    assert_eq!(EpSet::ray(5).as_arith_progression(), Some((5, 1)));
    assert_eq!(set("{0,1,3}").as_arith_progression(), None);
}

/// Closedness straight from the definition, with shifts far past any bound.
fn closed_by_enumeration(family: &BTreeSet<EpSet>) -> bool {
    let as_members: Vec<BTreeSet<i64>> = family.iter().map(members).collect();
    family.iter().all(|a| {
        family.iter().all(|b| {
            (0..60).all(|n| {
                let meet: BTreeSet<i64> = members(a)
                    .into_iter()
                    .filter(|&x| x + n < LIMIT && b.contains(x + n))
                    .filter(|&x| x < LIMIT - 60)
                    .collect();
                as_members.iter().any(|m| {
                    m.iter()
                        .copied()
                        .filter(|&x| x < LIMIT - 60)
                        .collect::<BTreeSet<_>>()
                        == meet
                })
            })
        })
    })
}

#[test]
fn closures() {
    let f = Family::close([EpSet::ray(0)]).unwrap();
    assert_eq!(f.members(), &BTreeSet::from([EpSet::ray(0)]));
    let f = Family::close([set("2+3*w")]).unwrap();
    assert_eq!(f.members(), &BTreeSet::from([set("2+3*w"), EpSet::empty()]));
    let f = Family::close([set("{0,1}")]).unwrap();
    let expected = BTreeSet::from([set("{0,1}"), set("{0}"), EpSet::empty()]);
    assert_eq!(f.members(), &expected);
    assert!(closed_by_enumeration(&expected));

    assert!(is_omega_closed(&BTreeSet::from([EpSet::empty()])));
    let v = closure_violation(&BTreeSet::from([set("{0,1}")])).unwrap();
    assert_eq!((v.n, v.missing.clone()), (1, set("{0}")));

    // Rays only ever meet in rays, so a finite set of them with ∅ is closed.
    let rays = BTreeSet::from([EpSet::ray(0), EpSet::ray(1), EpSet::empty()]);
    assert!(is_omega_closed(&rays));
    assert!(closed_by_enumeration(&rays));
    assert!(is_omega_closed(&BTreeSet::from([EpSet::ray(0)])));
}

#[test]
fn products() {
    for f in ["[0)", "{0,1}|[5)", "2+3*w"] {
        let f = set(f);
        let c = SemigroupCtx::new(Family::close([f.clone()]).unwrap());
        let x = Element::triple(0, 0, f.clone());
        let y = Element::triple(1, 1, f.clone());
        let meet = f.shift(-1).intersect(&f);
        let expected = if meet.is_empty() {
            Element::Zero
        } else {
            Element::triple(1, 1, meet)
        };
        assert_eq!(c.multiply(&x, &y).unwrap(), expected);
        assert_eq!(c.multiply(&y, &y).unwrap(), y);
    }
    let c = ctx("family{{}; 2+3*w}");
    assert_eq!(
        c.multiply(&elt("(0,5;2+3*w)"), &elt("(1,0;2+3*w)"))
            .unwrap(),
        Element::Zero
    );
    let c = ctx("family{[0)}");
    assert_eq!(
        c.multiply(&elt("(-3,-1;[0))"), &elt("(2,4;[0))")).unwrap(),
        elt("(0,4;[0))")
    );
}

#[test]
fn order_and_green() {
    let c = ctx("family{[0)}");
    let (a, b) = (elt("(1,1;[0))"), elt("(0,0;[0))"));
    assert!(a.natural_leq(&b) && c.natural_leq_by_product(&a, &b).unwrap());
    assert!(!b.natural_leq(&a) && !c.natural_leq_by_product(&b, &a).unwrap());
    assert!(a.natural_leq(&a));

    let f = EpSet::ray(2);
    let e = |i, j| Element::triple(i, j, f.clone());
    assert!(green(&e(0, 3), &e(0, 7), GreenRelation::R));
    assert!(green(&e(0, 3), &e(5, 8), GreenRelation::D));
    assert!(!green(&e(0, 3), &e(5, 8), GreenRelation::H));
    assert!(green(
        &elt("(0,0;[1))"),
        &elt("(0,0;[5))"),
        GreenRelation::J
    ));
    assert_eq!(EpSet::ray(1).exists_shift_subset(&EpSet::ray(5)), Some(4));
    assert_eq!(EpSet::ray(5).exists_shift_subset(&EpSet::ray(1)), Some(0));
}

#[test]
fn classifications() {
    let r = classify(&ctx("family{[2)}"));
    assert!(r.bisimple && r.simple && r.e_unitary);
    assert_eq!(r.iso_type, IsoType::ExtendedBicyclic);

    let r = classify(&ctx("family{{}; {3}}"));
    assert!(r.zero_bisimple && r.zero_simple);
    assert_eq!(r.iso_type, IsoType::MatrixUnitsOmega);

    let r = classify(&ctx("family{{}; 2+3*w}"));
    assert!(r.zero_bisimple);
    assert_eq!(
        r.iso_type,
        IsoType::ZeroBisimpleProgression { i0: 2, j0: 3 }
    );

    let r = classify(&ctx("family{{}}"));
    assert_eq!(r.iso_type, IsoType::Trivial);
    assert!(r.has_identity);

    // {0,1} never shifts into {0}, so the two nonzero D-classes are not J-related.
    let r = classify(&ctx("closure{{0,1}}"));
    assert!(!r.zero_simple && !r.zero_bisimple);
    assert_eq!(r.nonzero_d_classes, Some(2));
    assert_eq!(set("{0,1}").exists_shift_subset(&set("{0}")), None);
}

#[test]
fn morphism_values() {
    let c = ctx("family{[0)}");
    assert_eq!(sigma_hom(&c, &elt("(2,5;[0))")), Ok(-3));
    assert_eq!(
        to_brandt(&elt("(0,0;{5})")),
        Ok(BrandtElt::Triple {
            alpha: 5,
            s: 5,
            beta: 5
        })
    );
    assert_eq!(
        to_brandt(&elt("(-2,3;{4})")),
        Ok(BrandtElt::Triple {
            alpha: 2,
            s: 4,
            beta: 7
        })
    );
}
