//! Shared proptest strategies for integration tests.
#![allow(dead_code)]

use proptest::prelude::*;
use qgeo::freealg::{Element, Gen, Presentation, Word};
use qgeo::scalars::Scalar;

/// Small exact coefficient: an integer in [-3, 3], optionally times `i` and one parameter.
pub fn scalar(params: Vec<String>) -> impl Strategy<Value = Scalar> {
    let np = params.len();
    (-3i64..=3, any::<bool>(), 0..=np).prop_map(move |(n, imag, p)| {
        let mut s = Scalar::from_int(n);
        if imag {
            s = &s * &Scalar::i();
        }
        if p < np {
            s = &s * &Scalar::param(&params[p]);
        }
        s
    })
}

pub fn word(ngens: usize, max_len: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec(0..ngens as Gen, 0..=max_len).prop_map(|v| Word::from_slice(&v))
}

/// Random element with up to `terms` terms of length at most `max_len`.
pub fn element(p: &Presentation, max_len: usize, terms: usize) -> impl Strategy<Value = Element> {
    let params: Vec<String> = p.params().iter().map(|q| q.to_string()).collect();
    prop::collection::vec((word(p.num_gens(), max_len), scalar(params)), 0..=terms)
        .prop_map(Element::from_terms)
}
