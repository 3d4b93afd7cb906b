use super::spec::HopfSpec;
use crate::error::{Error, Result};
use crate::freealg::{Element, Word};
use crate::scalars::Scalar;

/// Solve `m(S ⊗ id)Δ(g) = ε(g) = m(id ⊗ S)Δ(g)` generator by generator.
///
/// For `Δg = g ⊗ B + Σ aᵢ ⊗ bᵢ` with every `S(aᵢ)` known and `B` invertible,
/// `S(g) = (ε(g) − Σ S(aᵢ) bᵢ) B⁻¹`; the mirrored form uses `Δg = A ⊗ g + …`.
/// Inverses come from single-term elements and the registered inverse pairs.
pub fn solve_antipode(spec: &HopfSpec) -> Result<Vec<Element>> {
    let alg = &spec.algebra;
    let n = alg.num_gens();
    let mut known: Vec<Option<Element>> = vec![None; n];
    loop {
        let mut progress = false;
        for g in 0..n {
            if known[g].is_some() {
                continue;
            }
            let gw = Word::gen(g as u16);
            let eps = Element::scalar(spec.counit[g].clone());
            let delta = &spec.coproduct[g];

            // Left form.
            let mut b = Element::zero();
            let mut rest = Vec::new();
            for ((l, r), c) in delta {
                if *l == gw {
                    b.add_term(r.clone(), c.clone());
                } else {
                    rest.push((l, r, c));
                }
            }
            if !b.is_zero() {
                if let (Some(binv), Some(sum)) = (
                    invert(spec, &b)?,
                    partial_sum(spec, &known, rest.iter().map(|(l, r, c)| (*l, *r, *c)), true)?,
                ) {
                    known[g] = Some(alg.mul(&(&eps - &sum), &binv)?);
                    progress = true;
                    continue;
                }
            }

            // Right form.
            let mut a = Element::zero();
            let mut rest = Vec::new();
            for ((l, r), c) in delta {
                if *r == gw {
                    a.add_term(l.clone(), c.clone());
                } else {
                    rest.push((l, r, c));
                }
            }
            if !a.is_zero() {
                if let (Some(ainv), Some(sum)) = (
                    invert(spec, &a)?,
                    partial_sum(spec, &known, rest.iter().map(|(l, r, c)| (*l, *r, *c)), false)?,
                ) {
                    known[g] = Some(alg.mul(&ainv, &(&eps - &sum))?);
                    progress = true;
                }
            }
        }
        if known.iter().all(Option::is_some) {
            return Ok(known.into_iter().map(Option::unwrap).collect());
        }
        if !progress {
            let missing: Vec<&str> = (0..n)
                .filter(|&g| known[g].is_none())
                .map(|g| alg.gen_name(g as u16))
                .collect();
            return Err(Error::ConstructionFailure(format!(
                "cannot solve for the antipode of {}",
                missing.join(", ")
            )));
        }
    }
}

/// `Σ c S(l) r` (left) or `Σ c l S(r)` (right), if all needed S-values are known.
fn partial_sum<'a>(
    spec: &HopfSpec,
    known: &[Option<Element>],
    terms: impl Iterator<Item = (&'a Word, &'a Word, &'a Scalar)>,
    left: bool,
) -> Result<Option<Element>> {
    let alg = &spec.algebra;
    let mut sum = Element::zero();
    for (l, r, c) in terms {
        let (word_s, other) = if left { (l, r) } else { (r, l) };
        let Some(s) = antipode_of_word(spec, known, word_s)? else {
            return Ok(None);
        };
        let other = Element::from_word(other.clone());
        let prod = if left { alg.mul(&s, &other)? } else { alg.mul(&other, &s)? };
        sum.add_scaled(&prod, c);
    }
    Ok(Some(sum))
}

fn antipode_of_word(spec: &HopfSpec, known: &[Option<Element>], w: &Word) -> Result<Option<Element>> {
    if w.len() > 1 && spec.braiding.as_ref().is_some_and(|b| !b.is_flip()) {
        return Ok(None);
    }
    let mut acc = Element::one();
    for &g in w.letters() {
        let Some(s) = &known[g as usize] else {
            return Ok(None);
        };
        acc = spec.algebra.mul(s, &acc)?;
    }
    Ok(Some(acc))
}

/// Two-sided inverse of `e` from scalars, generators with registered inverses
/// and registered elements (up to a scalar multiple).
fn invert(spec: &HopfSpec, e: &Element) -> Result<Option<Element>> {
    let alg = &spec.algebra;
    let e = alg.normal_form(e)?;
    if e.is_zero() {
        return Ok(None);
    }
    let lookup = |x: &Element| -> Option<Element> {
        spec.inverses.iter().find_map(|(a, b)| {
            if a == x {
                Some(b.clone())
            } else if b == x {
                Some(a.clone())
            } else {
                None
            }
        })
    };
    if let Some(inv) = lookup(&e) {
        return Ok(Some(inv));
    }
    if e.len() == 1 {
        let (w, c) = e.terms().next().unwrap();
        let cinv = c.inv()?;
        let mut acc = Element::scalar(cinv);
        for &g in w.letters() {
            let Some(ginv) = lookup(&Element::gen(g)) else {
                return Ok(None);
            };
            acc = alg.mul(&ginv, &acc)?;
        }
        return Ok(Some(acc));
    }
    // Scalar multiple of a registered element.
    for (a, b) in &spec.inverses {
        for (x, y) in [(a, b), (b, a)] {
            let Some((w, c)) = x.terms().next() else { continue };
            let k = e.coeff(w).checked_div(c)?;
            if !k.is_zero() && x.scale(&k) == e {
                return Ok(Some(y.scale(&k.inv()?)));
            }
        }
    }
    Ok(None)
}
