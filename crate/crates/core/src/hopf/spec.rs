use std::cell::RefCell;
use std::collections::{BTreeMap, HashMap};

use super::algmap::{AlgebraMap, ScalarField};
use super::tensor::TensorPower;
use crate::braided::{reduce_pairs, Braiding, Recursion, TensorTerms};
use crate::error::{Error, Result};
use crate::freealg::{format_linear, Element, Presentation, Word};
use crate::scalars::{Param, Scalar};

/// Sum of `c · a ⊗ b` over pairs of words.
pub type TensorElement = TensorTerms;

/// A presented (possibly braided) Hopf algebra: generator images of Δ, ε
/// and optionally S, plus an optional braiding on generators.
#[derive(Clone, Debug, PartialEq)]
pub struct HopfSpec {
    pub name: String,
    pub algebra: Presentation,
    pub coproduct: Vec<TensorElement>,
    pub counit: Vec<Scalar>,
    pub antipode: Option<Vec<Element>>,
    pub braiding: Option<Braiding>,
    /// Known mutually inverse pairs `(a, b)` with `ab = ba = 1`, used to solve for S.
    pub inverses: Vec<(Element, Element)>,
}

impl HopfSpec {
    pub fn new(
        name: &str,
        algebra: Presentation,
        coproduct: Vec<TensorElement>,
        counit: Vec<Scalar>,
    ) -> Result<Self> {
        let n = algebra.num_gens();
        for len in [coproduct.len(), counit.len()] {
            if len != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: len,
                });
            }
        }
        let coproduct = coproduct
            .iter()
            .map(|t| reduce_pairs(t, &algebra, &algebra))
            .collect::<Result<Vec<_>>>()?;
        Ok(HopfSpec {
            name: name.to_owned(),
            algebra,
            coproduct,
            counit,
            antipode: None,
            braiding: None,
            inverses: Vec::new(),
        })
    }

    pub fn with_antipode(mut self, images: Vec<Element>) -> Result<Self> {
        if images.len() != self.algebra.num_gens() {
            return Err(Error::DimensionMismatch {
                expected: self.algebra.num_gens(),
                found: images.len(),
            });
        }
        let images = images
            .iter()
            .map(|e| self.algebra.normal_form(e))
            .collect::<Result<Vec<_>>>()?;
        self.antipode = Some(images);
        Ok(self)
    }

    pub fn with_braiding(mut self, psi: Braiding) -> Result<Self> {
        let n = self.algebra.num_gens();
        if !psi.is_total(n, n) {
            return Err(Error::ConstructionFailure(
                "braiding must be defined on every generator pair".into(),
            ));
        }
        self.braiding = Some(psi);
        Ok(self)
    }

    /// Register `a·b = b·a = 1`; both products are verified.
    pub fn with_inverse(mut self, a: Element, b: Element) -> Result<Self> {
        let a = self.algebra.normal_form(&a)?;
        let b = self.algebra.normal_form(&b)?;
        for prod in [self.algebra.mul(&a, &b)?, self.algebra.mul(&b, &a)?] {
            if !prod.is_one() {
                return Err(Error::InvalidPresentation(format!(
                    "`{}` and `{}` are not mutually inverse",
                    self.algebra.show(&a),
                    self.algebra.show(&b)
                )));
            }
        }
        self.inverses.push((a, b));
        Ok(self)
    }

    pub fn is_braided(&self) -> bool {
        self.braiding.is_some()
    }

    /// `A ⊗ A`, braided when a braiding is present.
    pub fn square(&self) -> Result<TensorPower> {
        TensorPower::power(&self.algebra, 2, self.braiding.as_ref())
    }

    pub fn coproduct_map<'t>(&self, square: &'t TensorPower) -> Result<AlgebraMap<'t, TensorPower>> {
        AlgebraMap::new(square, self.coproduct.iter().map(|t| square.from_pairs(t)).collect())
    }

    pub fn counit_map(&self) -> Result<AlgebraMap<'static, ScalarField>> {
        AlgebraMap::new(&ScalarField, self.counit.clone())
    }

    pub fn antipode_map(&self) -> Result<Option<AntipodeMap<'_>>> {
        match &self.antipode {
            None => Ok(None),
            Some(images) => Ok(Some(AntipodeMap::new(
                &self.algebra,
                images.clone(),
                self.braiding.as_ref(),
            )?)),
        }
    }

    /// Every coefficient substituted (parameters left free stay symbolic).
    pub fn substitute(&self, bindings: &BTreeMap<Param, Scalar>) -> Result<HopfSpec> {
        let sub_pairs = |t: &TensorElement| -> Result<TensorElement> {
            let mut out = TensorElement::new();
            for (k, c) in t {
                let c = c.substitute(bindings)?;
                if !c.is_zero() {
                    out.insert(k.clone(), c);
                }
            }
            Ok(out)
        };
        let algebra = self.algebra.substitute(bindings)?;
        let mut spec = HopfSpec::new(
            &self.name,
            algebra,
            self.coproduct.iter().map(sub_pairs).collect::<Result<_>>()?,
            self.counit
                .iter()
                .map(|c| c.substitute(bindings))
                .collect::<Result<_>>()?,
        )?;
        if let Some(s) = &self.antipode {
            spec = spec.with_antipode(s.iter().map(|e| e.substitute(bindings)).collect::<Result<_>>()?)?;
        }
        if let Some(b) = &self.braiding {
            spec = spec.with_braiding(b.substitute(bindings)?)?;
        }
        for (a, b) in &self.inverses {
            spec = spec.with_inverse(a.substitute(bindings)?, b.substitute(bindings)?)?;
        }
        Ok(spec)
    }

    pub fn show_pairs(&self, t: &TensorElement) -> String {
        show_pairs(&self.algebra, t)
    }
}

/// `a|b` rendering of pair terms, larger pairs first.
pub fn show_pairs(alg: &Presentation, t: &TensorElement) -> String {
    let mut terms: Vec<(&(Word, Word), &Scalar)> = t.iter().collect();
    terms.sort_by(|x, y| {
        let (a1, b1) = x.0;
        let (a2, b2) = y.0;
        alg.cmp_words(a2, a1).then_with(|| alg.cmp_words(b2, b1))
    });
    format_linear(
        terms
            .into_iter()
            .map(|((a, b), c)| (format!("{}|{}", alg.show_word(a), alg.show_word(b)), c)),
    )
}

/// The antipode extended to words: anti-multiplicatively in the ordinary
/// case, and through `S(ab) = m∘Ψ(S(a) ⊗ S(b))` in the braided case.
pub struct AntipodeMap<'a> {
    algebra: &'a Presentation,
    braiding: Option<&'a Braiding>,
    plain: AlgebraMap<'a, Presentation>,
    cache: RefCell<HashMap<Word, Element>>,
}

impl<'a> AntipodeMap<'a> {
    pub fn new(algebra: &'a Presentation, images: Vec<Element>, braiding: Option<&'a Braiding>) -> Result<Self> {
        Ok(AntipodeMap {
            algebra,
            braiding: braiding.filter(|b| !b.is_flip()),
            plain: AlgebraMap::anti(algebra, images)?,
            cache: RefCell::new(HashMap::new()),
        })
    }

    pub fn apply_word(&self, w: &Word) -> Result<Element> {
        let Some(psi) = self.braiding else {
            return self.plain.apply_word(w);
        };
        if w.len() <= 1 {
            return self.plain.apply_word(w);
        }
        if let Some(e) = self.cache.borrow().get(w) {
            return Ok(e.clone());
        }
        let a = self.apply_word(&Word::from_slice(&w.letters()[..1]))?;
        let rest = self.apply_word(&Word::from_slice(&w.letters()[1..]))?;
        let mut acc = Element::zero();
        for (wa, ca) in a.terms() {
            for (wr, cr) in rest.terms() {
                for ((l, r), c) in psi.extend(wa, wr, Recursion::LeftFirst)? {
                    acc.add_term(l.concat(&r), &(ca * cr) * &c);
                }
            }
        }
        let e = self.algebra.normal_form(&acc)?;
        self.cache.borrow_mut().insert(w.clone(), e.clone());
        Ok(e)
    }

    pub fn apply(&self, e: &Element) -> Result<Element> {
        let mut acc = Element::zero();
        for (w, c) in e.terms() {
            acc.add_scaled(&self.apply_word(w)?, c);
        }
        Ok(acc)
    }
}
