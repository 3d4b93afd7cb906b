use std::collections::BTreeMap;
use std::time::Instant;

use super::algmap::{relation_residuals, word_residuals, ScalarField, Target};
use super::spec::HopfSpec;
use crate::error::Result;
use crate::freealg::{format_linear, Element, Presentation, Word};
use crate::report::CheckReport;
use crate::scalars::Scalar;

/// Sub-checks run by [`hopf_axioms`], in order.
pub const HOPF_CHECKS: [&str; 6] = [
    "coproduct-relations",
    "counit-relations",
    "antipode-relations",
    "coassociativity",
    "counit",
    "antipode",
];

fn rule_string(alg: &Presentation, k: usize) -> String {
    let r = &alg.rules()[k];
    format!("{} -> {}", alg.show_word(&r.lhs), alg.show(&r.rhs))
}

/// Run every Hopf axiom check on normal words up to `degree`.
/// Check names are `"{suite}:{sub-check}"`.
pub fn hopf_axioms(spec: &HopfSpec, suite: &str, degree: u32) -> Result<Vec<CheckReport>> {
    let alg = &spec.algebra;
    let d = degree as usize;
    let name = |c: &str| format!("{suite}:{c}");
    let mut out = Vec::new();

    let start = Instant::now();
    let sq = spec.square()?;
    let delta = spec.coproduct_map(&sq)?;
    let f = |e: &Element| delta.apply(e);
    let mut rep = CheckReport::new(&spec.name, &name("coproduct-relations"), Some(degree));
    for (k, res) in relation_residuals(alg, &f, &sq)? {
        rep.relation_violation(rule_string(alg, k), sq.show(&res));
    }
    for (w, res) in word_residuals(alg, &f, &sq, d)? {
        rep.word_violation(alg.show_word(&w), sq.show(&res));
    }
    out.push(rep.finish(start));

    let start = Instant::now();
    let eps = spec.counit_map()?;
    let g = |e: &Element| eps.apply(e);
    let mut rep = CheckReport::new(&spec.name, &name("counit-relations"), Some(degree));
    for (k, res) in relation_residuals(alg, &g, &ScalarField)? {
        rep.relation_violation(rule_string(alg, k), res.to_string());
    }
    for (w, res) in word_residuals(alg, &g, &ScalarField, d)? {
        rep.word_violation(alg.show_word(&w), res.to_string());
    }
    out.push(rep.finish(start));

    let start = Instant::now();
    let s_map = spec.antipode_map()?;
    match &s_map {
        None => out.push(CheckReport::skipped(
            &spec.name,
            &name("antipode-relations"),
            "no antipode supplied",
        )),
        Some(s) => {
            let h = |e: &Element| s.apply(e);
            let mut rep = CheckReport::new(&spec.name, &name("antipode-relations"), Some(degree));
            for (k, res) in relation_residuals(alg, &h, alg)? {
                rep.relation_violation(rule_string(alg, k), alg.show(&res));
            }
            for (w, res) in word_residuals(alg, &h, alg, d)? {
                rep.word_violation(alg.show_word(&w), alg.show(&res));
            }
            out.push(rep.finish(start));
        }
    }

    let words = alg.normal_words(d);

    let start = Instant::now();
    let mut rep = CheckReport::new(&spec.name, &name("coassociativity"), Some(degree));
    let delta_pairs = |w: &Word| -> Result<Vec<((Word, Word), Scalar)>> {
        Ok(sq.to_pairs(&delta.apply_word(w)?).into_iter().collect())
    };
    for w in &words {
        let mut left: BTreeMap<(Word, Word, Word), Scalar> = BTreeMap::new();
        let mut right: BTreeMap<(Word, Word, Word), Scalar> = BTreeMap::new();
        for ((a, b), c) in delta_pairs(w)? {
            for ((a1, a2), c1) in delta_pairs(&a)? {
                add3(&mut left, (a1, a2, b.clone()), &c * &c1);
            }
            for ((b1, b2), c2) in delta_pairs(&b)? {
                add3(&mut right, (a.clone(), b1, b2), &c * &c2);
            }
        }
        for (k, c) in right {
            add3(&mut left, k, -c);
        }
        if !left.is_empty() {
            rep.word_violation(alg.show_word(w), show_triples(alg, &left));
        }
    }
    out.push(rep.finish(start));

    let start = Instant::now();
    let mut rep = CheckReport::new(&spec.name, &name("counit"), Some(degree));
    for w in &words {
        let pairs = sq.to_pairs(&delta.apply_word(w)?);
        let mut l = Element::zero();
        let mut r = Element::zero();
        for ((a, b), c) in &pairs {
            l.add_term(b.clone(), c * &eps.apply_word(a)?);
            r.add_term(a.clone(), c * &eps.apply_word(b)?);
        }
        let target = Element::from_word(w.clone());
        for side in [l, r] {
            let res = &side - &target;
            if !res.is_zero() {
                rep.word_violation(alg.show_word(w), alg.show(&res));
            }
        }
    }
    out.push(rep.finish(start));

    let start = Instant::now();
    match &s_map {
        None => out.push(CheckReport::skipped(&spec.name, &name("antipode"), "no antipode supplied")),
        Some(s) => {
            let mut rep = CheckReport::new(&spec.name, &name("antipode"), Some(degree));
            for w in &words {
                let pairs = sq.to_pairs(&delta.apply_word(w)?);
                let mut l = Element::zero();
                let mut r = Element::zero();
                for ((a, b), c) in &pairs {
                    l.add_scaled(&alg.mul(&s.apply_word(a)?, &Element::from_word(b.clone()))?, c);
                    r.add_scaled(&alg.mul(&Element::from_word(a.clone()), &s.apply_word(b)?)?, c);
                }
                let e = Element::scalar(eps.apply_word(w)?);
                for side in [l, r] {
                    let res = alg.normalize(&side - &e)?;
                    if !res.is_zero() {
                        rep.word_violation(alg.show_word(w), alg.show(&res));
                    }
                }
            }
            out.push(rep.finish(start));
        }
    }
    Ok(out)
}

fn add3(m: &mut BTreeMap<(Word, Word, Word), Scalar>, k: (Word, Word, Word), c: Scalar) {
    let s = match m.get(&k) {
        Some(d) => d + &c,
        None => c,
    };
    if s.is_zero() {
        m.remove(&k);
    } else {
        m.insert(k, s);
    }
}

fn show_triples(alg: &Presentation, m: &BTreeMap<(Word, Word, Word), Scalar>) -> String {
    format_linear(m.iter().rev().map(|((a, b, c), s)| {
        (
            format!("{}|{}|{}", alg.show_word(a), alg.show_word(b), alg.show_word(c)),
            s,
        )
    }))
}
