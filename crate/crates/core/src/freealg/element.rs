use std::borrow::Borrow;
use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use smallvec::SmallVec;

use crate::error::Result;
use crate::scalars::{Param, Scalar};

/// Generator index inside a presentation.
pub type Gen = u16;

/// A monomial in noncommuting generators; the empty word is the unit.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default)]
pub struct Word(pub SmallVec<[Gen; 8]>);

impl Word {
    pub fn unit() -> Self {
        Word(SmallVec::new())
    }

    pub fn gen(g: Gen) -> Self {
        let mut v = SmallVec::new();
        v.push(g);
        Word(v)
    }

    pub fn from_slice(s: &[Gen]) -> Self {
        Word(SmallVec::from_slice(s))
    }

    pub fn is_unit(&self) -> bool {
        self.0.is_empty()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[Gen] {
        &self.0
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    /// `prefix · middle · suffix` where prefix/suffix are taken from `self`
    /// around the half-open range `at`.
    pub fn splice(&self, at: std::ops::Range<usize>, middle: &Word) -> Word {
        let mut v = SmallVec::with_capacity(self.len() - at.len() + middle.len());
        v.extend_from_slice(&self.0[..at.start]);
        v.extend_from_slice(&middle.0);
        v.extend_from_slice(&self.0[at.end..]);
        Word(v)
    }

    pub fn reversed(&self) -> Word {
        Word(self.0.iter().rev().copied().collect())
    }
}

impl Borrow<[Gen]> for Word {
    fn borrow(&self) -> &[Gen] {
        &self.0
    }
}

/// Finite Scalar-linear combination of words. Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct Element {
    terms: BTreeMap<Word, Scalar>,
}

impl Element {
    pub fn zero() -> Self {
        Element::default()
    }

    pub fn one() -> Self {
        Element::from_word(Word::unit())
    }

    pub fn from_word(w: Word) -> Self {
        Element::term(w, Scalar::one())
    }

    pub fn gen(g: Gen) -> Self {
        Element::from_word(Word::gen(g))
    }

    pub fn scalar(s: Scalar) -> Self {
        Element::term(Word::unit(), s)
    }

    pub fn term(w: Word, c: Scalar) -> Self {
        let mut e = Element::zero();
        e.add_term(w, c);
        e
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Word, Scalar)>) -> Self {
        let mut e = Element::zero();
        for (w, c) in terms {
            e.add_term(w, c);
        }
        e
    }

    pub fn add_term(&mut self, w: Word, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                let s = o.get() + &c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn add_scaled(&mut self, other: &Element, c: &Scalar) {
        for (w, d) in &other.terms {
            self.add_term(w.clone(), d * c);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&Word::unit()).is_some_and(Scalar::is_one)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &Scalar)> {
        self.terms.iter()
    }

    pub fn into_terms(self) -> impl Iterator<Item = (Word, Scalar)> {
        self.terms.into_iter()
    }

    pub fn coeff(&self, w: &Word) -> Scalar {
        self.terms.get(w).cloned().unwrap_or_else(Scalar::zero)
    }

    /// Largest word length occurring.
    pub fn degree(&self) -> usize {
        self.terms.keys().map(Word::len).max().unwrap_or(0)
    }

    /// The scalar value when the element is a multiple of the unit.
    pub fn as_scalar(&self) -> Option<Scalar> {
        match self.terms.len() {
            0 => Some(Scalar::zero()),
            1 => self.terms.get(&Word::unit()).cloned(),
            _ => None,
        }
    }

    pub fn scale(&self, c: &Scalar) -> Element {
        if c.is_zero() {
            return Element::zero();
        }
        Element {
            terms: self.terms.iter().map(|(w, d)| (w.clone(), d * c)).collect(),
        }
    }

    /// Product in the free algebra (word concatenation, no reduction).
    pub fn free_mul(&self, other: &Element) -> Element {
        let mut out = Element::zero();
        for (a, c) in &self.terms {
            for (b, d) in &other.terms {
                out.add_term(a.concat(b), c * d);
            }
        }
        out
    }

    pub fn map_coeffs(&self, mut f: impl FnMut(&Scalar) -> Result<Scalar>) -> Result<Element> {
        let mut out = Element::zero();
        for (w, c) in &self.terms {
            out.add_term(w.clone(), f(c)?);
        }
        Ok(out)
    }

    pub fn map_words(&self, mut f: impl FnMut(&Word) -> Word) -> Element {
        let mut out = Element::zero();
        for (w, c) in &self.terms {
            out.add_term(f(w), c.clone());
        }
        out
    }

    pub fn substitute(&self, bindings: &BTreeMap<Param, Scalar>) -> Result<Element> {
        self.map_coeffs(|c| c.substitute(bindings))
    }

    pub fn params(&self) -> Vec<Param> {
        let mut v: Vec<Param> = self.terms.values().flat_map(|c| c.params()).collect();
        v.sort();
        v.dedup();
        v
    }
}

impl Add for &Element {
    type Output = Element;
    fn add(self, rhs: &Element) -> Element {
        let mut out = self.clone();
        for (w, c) in &rhs.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }
}

impl Sub for &Element {
    type Output = Element;
    fn sub(self, rhs: &Element) -> Element {
        let mut out = self.clone();
        for (w, c) in &rhs.terms {
            out.add_term(w.clone(), -c);
        }
        out
    }
}

impl Neg for &Element {
    type Output = Element;
    fn neg(self) -> Element {
        Element {
            terms: self.terms.iter().map(|(w, c)| (w.clone(), -c)).collect(),
        }
    }
}

impl Mul for &Element {
    type Output = Element;
    fn mul(self, rhs: &Element) -> Element {
        self.free_mul(rhs)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for Element {
            type Output = Element;
            fn $m(self, rhs: Element) -> Element {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&Element> for Element {
            type Output = Element;
            fn $m(self, rhs: &Element) -> Element {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Element {
    type Output = Element;
    fn neg(self) -> Element {
        -&self
    }
}

impl Mul<&Scalar> for &Element {
    type Output = Element;
    fn mul(self, rhs: &Scalar) -> Element {
        self.scale(rhs)
    }
}

impl Mul<Scalar> for Element {
    type Output = Element;
    fn mul(self, rhs: Scalar) -> Element {
        self.scale(&rhs)
    }
}

impl From<Scalar> for Element {
    fn from(s: Scalar) -> Self {
        Element::scalar(s)
    }
}
