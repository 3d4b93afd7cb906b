mod common;

use std::collections::BTreeMap;

use proptest::prelude::*;
use qgeo::braided::{
    braided_matrices, braiding_from_rmatrix, dqua_check, frt_bialgebra, non_commutator_rules, ybe_check, Braiding,
    Recursion, RMatrix,
};
use qgeo::freealg::{Gen, Word};
use qgeo::groups::{
    bicrossproduct, find_factorisations, fourier_check, function_hopf, group_hopf, matched_pair, FinGroup,
};
use qgeo::hopf::{dual_findim, find_isomorphism};
use qgeo::models::{braided_matrices_sl2, qplane};
use qgeo::scalars::{Param, Scalar};
use qgeo::Error;

fn words(ngens: usize, max_len: usize) -> Vec<Word> {
    let mut out = vec![Word::unit()];
    let mut layer = vec![Word::unit()];
    for _ in 0..max_len {
        layer = layer
            .iter()
            .flat_map(|w| (0..ngens as Gen).map(move |g| w.concat(&Word::gen(g))))
            .collect();
        out.extend(layer.iter().cloned());
    }
    out
}

fn coherent(psi: &Braiding, ngens: usize, max_len: usize) {
    let ws = words(ngens, max_len);
    for a in &ws {
        for b in &ws {
            if a.len() + b.len() > max_len + 1 {
                continue;
            }
            let l = psi.extend(a, b, Recursion::LeftFirst).unwrap();
            let r = psi.extend(a, b, Recursion::RightFirst).unwrap();
            assert_eq!(l, r, "{a:?} ⊗ {b:?}");
        }
    }
}

#[test]
fn hexagon_coherence_exhaustive() {
    coherent(qplane().unwrap().braiding.as_ref().unwrap(), 2, 3);
    coherent(braided_matrices_sl2().unwrap().braiding.as_ref().unwrap(), 4, 2);
    coherent(&Braiding::super_sign(&[true, false, true]), 3, 3);
    coherent(&Braiding::flip(3), 3, 3);
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 200, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn hexagon_coherence_random(a in common::word(4, 3), b in common::word(4, 3)) {
        let spec = braided_matrices_sl2().unwrap();
        let psi = spec.braiding.as_ref().unwrap();
        let alg = &spec.algebra;
        let l = psi.extend_reduced(alg, alg, &a, &b, Recursion::LeftFirst).unwrap();
        let r = psi.extend_reduced(alg, alg, &a, &b, Recursion::RightFirst).unwrap();
        prop_assert_eq!(l, r);
    }

    #[test]
    fn sl2_solves_ybe_at_rational_points(n in -6i64..=6, d in 1i64..=5) {
        prop_assume!(n != 0);
        let r = RMatrix::sl2_at(&Scalar::from_ratio(n, d)).unwrap();
        prop_assert!(ybe_check(&r));
        prop_assert!(r.is_biinvertible());
    }
}

#[test]
fn factorisations_close_under_swap() {
    for name in FinGroup::BUILTIN {
        let x = FinGroup::builtin(name).unwrap();
        let fs = find_factorisations(&x).unwrap();
        for f in &fs {
            let s = f.swapped();
            assert!(fs.iter().any(|o| o.g == s.g && o.m == s.m), "{name}: swap missing");
            assert_eq!(f.g.len() * f.m.len(), x.order());
            assert!(matched_pair(f).compatibility_violations().is_empty());
        }
    }
}

#[test]
fn fourier_for_every_builtin() {
    for name in FinGroup::BUILTIN {
        let g = FinGroup::builtin(name).unwrap();
        assert!(fourier_check(&g).passed(), "{name}");
    }
}

#[test]
fn bicrossproducts_of_order_8_groups() {
    for name in ["D4", "C2xC2", "C4"] {
        let x = FinGroup::builtin(name).unwrap();
        for f in find_factorisations(&x).unwrap() {
            let mp = matched_pair(&f);
            let e = bicrossproduct(&mp).unwrap();
            assert!(e.check_axioms().iter().all(|r| r.passed()));
            let sw = bicrossproduct(&matched_pair(&f.swapped())).unwrap();
            assert!(find_isomorphism(&dual_findim(&e), &sw).is_some(), "{name}");
        }
    }
}

#[test]
fn trivial_factorisations_reduce_to_function_and_group_algebras() {
    let s3 = FinGroup::builtin("S3").unwrap();
    for f in find_factorisations(&s3).unwrap().into_iter().filter(|f| f.is_trivial()) {
        let e = bicrossproduct(&matched_pair(&f)).unwrap();
        let expected = if f.g.len() == 1 { function_hopf(&s3) } else { group_hopf(&s3) };
        assert!(find_isomorphism(&e, &expected).is_some());
    }
}

#[test]
fn group_construction_errors() {
    let bad = FinGroup::from_table("bad", vec!["a".into(), "b".into()], vec![vec![0, 0], vec![1, 1]]);
    assert!(matches!(bad, Err(Error::NotAGroup(_))));
    assert!(matches!(FinGroup::builtin("C99"), Err(Error::BoundExceeded { order: 99, bound: 64 })));
    assert_eq!(FinGroup::builtin("C5").unwrap().order(), 5);
    let j = FinGroup::from_json(r#"{"name": "V", "perm_gens": ["(1 2)", "(3 4)"]}"#).unwrap();
    assert_eq!(j.order(), 4);
    assert!(FinGroup::from_json("{}").is_err());
}

#[test]
fn rmatrix_json_round_trip() {
    let r = RMatrix::sl2();
    let back = RMatrix::from_json(&r.to_json().to_string()).unwrap();
    assert_eq!(back.entries(), r.entries());
    assert!(RMatrix::from_json("[[1, 2], [3]]").is_err());
}

#[test]
fn qplane_braiding_is_the_normalised_sl2_braiding() {
    let from_r = braiding_from_rmatrix(&RMatrix::sl2(), &Scalar::param("q"));
    assert_eq!(&from_r, qplane().unwrap().braiding.as_ref().unwrap());
}

#[test]
fn q_to_one_limits_are_classical() {
    let at1 = BTreeMap::from([(Param::new("q"), Scalar::one())]);
    for spec in [qplane().unwrap(), braided_matrices(&RMatrix::sl2()).unwrap()] {
        let lim = spec.substitute(&at1).unwrap();
        assert!(lim.braiding.as_ref().unwrap().is_flip(), "{}", spec.name);
        assert!(non_commutator_rules(&lim.algebra).is_empty(), "{}", spec.name);
    }
}

#[test]
fn dqua_for_ybe_solutions() {
    for r in [RMatrix::identity(2), RMatrix::flip(2), RMatrix::sl2()] {
        let f = frt_bialgebra(&r).unwrap();
        assert!(dqua_check("frt", &f.spec.algebra, &f.bicharacter, 2).unwrap().passed());
    }
    let bad = RMatrix::sl2().perturbed(0, 0, 0, 0, &Scalar::one()).unwrap();
    assert_eq!(frt_bialgebra(&bad).unwrap_err(), Error::YbeFailure);
}
