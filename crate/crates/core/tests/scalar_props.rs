use std::collections::BTreeMap;

use proptest::prelude::*;
use qgeo::dsl::parse_scalar;
use qgeo::scalars::{Param, ParamSet, Scalar};
use qgeo::Error;

/// Polynomial in `q, h` with small Gaussian-integer coefficients.
fn poly() -> impl Strategy<Value = Scalar> {
    prop::collection::vec((-4i64..=4, any::<bool>(), 0i32..3, 0i32..2), 0..4).prop_map(|terms| {
        let (q, h) = (Scalar::param("q"), Scalar::param("h"));
        terms.into_iter().fold(Scalar::zero(), |acc, (c, imag, eq, eh)| {
            let mut t = Scalar::from_int(c);
            if imag {
                t = &t * &Scalar::i();
            }
            let t = &(&t * &q.pow(eq).unwrap()) * &h.pow(eh).unwrap();
            &acc + &t
        })
    })
}

fn ratfun() -> impl Strategy<Value = Scalar> {
    (poly(), poly()).prop_map(|(n, d)| {
        let d = if d.is_zero() { Scalar::one() } else { d };
        n.checked_div(&d).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 200, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn ring_axioms(a in ratfun(), b in ratfun(), c in ratfun()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a + &Scalar::zero(), a.clone());
        prop_assert_eq!(&a * &Scalar::one(), a.clone());
        prop_assert!((&a - &a).is_zero());
        prop_assert_eq!(-(-a.clone()), a);
    }

    #[test]
    fn inverses(a in ratfun()) {
        if a.is_zero() {
            prop_assert_eq!(a.inv().unwrap_err(), Error::DivisionByZero);
        } else {
            prop_assert!((&a * &a.inv().unwrap()).is_one());
            prop_assert_eq!(a.inv().unwrap().inv().unwrap(), a);
        }
    }

    /// Canonical form: rebuilding from numerator and denominator changes nothing,
    /// and so does a round trip through the printed form.
    #[test]
    fn canonical_form_is_stable(a in ratfun()) {
        let rebuilt = Scalar::from_fraction(a.numer().clone(), a.denom().clone()).unwrap();
        prop_assert_eq!(&rebuilt, &a);
        let params = ParamSet::new(["q", "h"]).unwrap();
        prop_assert_eq!(parse_scalar(&params, &a.to_string()).unwrap(), a);
    }

    #[test]
    fn substitution_is_a_homomorphism(a in ratfun(), b in ratfun(), v in -5i64..=5, w in 1i64..=4) {
        let at = BTreeMap::from([(Param::new("q"), Scalar::from_ratio(v, w))]);
        if let (Ok(sa), Ok(sb)) = (a.substitute(&at), b.substitute(&at)) {
            if let Ok(sab) = (&a * &b).substitute(&at) {
                prop_assert_eq!(sab, &sa * &sb);
            }
            if let Ok(s_sum) = (&a + &b).substitute(&at) {
                prop_assert_eq!(s_sum, &sa + &sb);
            }
        }
    }
}

#[test]
fn pole_is_reported() {
    let q = Scalar::param("q");
    let f = Scalar::one().checked_div(&(&q - &Scalar::one())).unwrap();
    let at1 = BTreeMap::from([(Param::new("q"), Scalar::one())]);
    assert!(matches!(f.substitute(&at1), Err(Error::Pole { .. })));
}

#[test]
fn exact_values() {
    let params = ParamSet::new(["q"]).unwrap();
    let s = |t: &str| parse_scalar(&params, t).unwrap();
    assert_eq!(s("(q^2 - 1)/(q - 1)"), s("q + 1"));
    assert_eq!(s("i*i"), s("-1"));
    assert_eq!(s("q - q^-1"), s("(q^2 - 1)/q"));
    assert_eq!(s("1/3 + 1/6"), Scalar::from_ratio(1, 2));
}
