use std::sync::Arc;

use proptest::prelude::*;
use twistor_core::algebra::{int, ManifoldClass, Orientation, TwistorElement};
use twistor_core::intersect::{cp3_closed_form, intersection, intersection_oracle};
use twistor_core::manifold::{
    builtin, cp3_acs_name, parse_manifold, print_manifold, AcsData, SixManifold,
};
use twistor_core::twistor::{ahs_as_acs, pd_section, twistor_relation6, TwistorRing};

fn sample(index: usize) -> (SixManifold, String) {
    let m = match index {
        0 => builtin("CP3", &[]).unwrap().six().unwrap().clone(),
        1 => builtin("gS2xS4", &[2]).unwrap().six().unwrap().clone(),
        2 => builtin("gS3xS3", &[2]).unwrap().six().unwrap().clone(),
        _ => {
            let cp2 = builtin("CP2", &[]).unwrap();
            ahs_as_acs(cp2.four().unwrap(), Orientation::Negative).unwrap()
        }
    };
    let name = m.acs_names()[0].to_string();
    (m, name)
}

fn acs<'a>(m: &'a SixManifold, name: &str) -> &'a AcsData {
    m.acs(name).unwrap()
}

/// An element of degree `2d` with coefficients drawn cyclically from `seed`.
fn element(ring: &TwistorRing, d: i32, seed: &[i64]) -> TwistorElement {
    let base = ring.base().clone();
    let mut values = seed.iter().cycle();
    let components = (0..ring.module_rank())
        .map(|k| {
            let deg = 2 * d - 2 * k as i32;
            let coeffs = (0..base.rank(deg))
                .map(|_| int(*values.next().unwrap()))
                .collect();
            ManifoldClass::from_coefficients(&base, deg, coeffs).unwrap()
        })
        .collect();
    ring.quotient().element(2 * d, components).unwrap()
}

fn seed() -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-5i64..=5, 1..8)
}

fn ring_of(index: usize, sign: bool) -> TwistorRing {
    let (m, name) = sample(index);
    let sign = if sign {
        Orientation::Positive
    } else {
        Orientation::Negative
    };
    twistor_relation6(acs(&m, &name), sign).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn products_commute(i in 0usize..4, s in any::<bool>(), d1 in 0i32..4, d2 in 0i32..4,
                        a in seed(), b in seed()) {
        let r = ring_of(i, s);
        let (x, y) = (element(&r, d1, &a), element(&r, d2, &b));
        prop_assert_eq!(x.mul(&y).unwrap(), y.mul(&x).unwrap());
    }

    #[test]
    fn products_associate(i in 0usize..4, s in any::<bool>(), d in (0i32..3, 0i32..3, 0i32..3),
                          a in seed(), b in seed(), c in seed()) {
        let r = ring_of(i, s);
        let (x, y, z) = (element(&r, d.0, &a), element(&r, d.1, &b), element(&r, d.2, &c));
        let left = x.mul(&y).unwrap().mul(&z).unwrap();
        let right = x.mul(&y.mul(&z).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn products_distribute(i in 0usize..4, d1 in 0i32..4, d2 in 0i32..4,
                           a in seed(), b in seed(), c in seed()) {
        let r = ring_of(i, true);
        let (x, y, z) = (element(&r, d1, &a), element(&r, d2, &b), element(&r, d2, &c));
        let left = x.mul(&y.add(&z).unwrap()).unwrap();
        let right = x.mul(&y).unwrap().add(&x.mul(&z).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn relation_annihilates_t(i in 0usize..4, s in any::<bool>()) {
        let r = ring_of(i, s);
        let t = r.t();
        let n = r.module_rank() as u32;
        let mut sum = t.pow(n).unwrap();
        for (k, coeff) in r.relation().iter().enumerate() {
            sum = sum.add(&t.pow(k as u32).unwrap().mul_base(coeff).unwrap()).unwrap();
        }
        prop_assert!(sum.is_zero());
    }

    #[test]
    fn section_dual_kills_t(k in -6i64..=6) {
        let m = builtin("CP3", &[k, k]).unwrap().six().unwrap().clone();
        let pd = pd_section(acs(&m, &cp3_acs_name(k))).unwrap();
        prop_assert!(pd.mul(&pd.ring().t()).unwrap().is_zero());
    }

    #[test]
    fn cp3_pairs_match_all_paths(k in -6i64..=6, l in -6i64..=6) {
        let m = builtin("CP3", &[-6, 6]).unwrap().six().unwrap().clone();
        let (j, jp) = (acs(&m, &cp3_acs_name(k)), acs(&m, &cp3_acs_name(l)));
        let expected = cp3_closed_form(k, l);
        prop_assert_eq!(intersection(j, jp).unwrap(), expected.clone());
        prop_assert_eq!(intersection_oracle(j, jp).unwrap(), int(expected));
    }

    #[test]
    fn builtins_round_trip(kmin in -4i64..=0, span in 0i64..4, g in 1i64..4) {
        for (name, params) in [("CP3", vec![kmin, kmin + span]), ("gS2xS4", vec![g, kmin, kmin + span])] {
            let file = builtin(name, &params).unwrap();
            let text = print_manifold(&file);
            let again = parse_manifold(&text).unwrap();
            prop_assert_eq!(print_manifold(&again), text);
        }
    }
}

#[test]
fn sample_rings_are_shared() {
    let r = ring_of(0, true);
    assert!(Arc::ptr_eq(r.quotient(), r.t().ring()));
}
