use std::cell::RefCell;
use std::collections::HashMap;

use super::tensor::TensorPower;
use crate::error::{Error, Result};
use crate::freealg::{Element, Presentation, Word};
use crate::scalars::Scalar;

/// An algebra that can receive algebra maps from a presentation.
pub trait Target {
    type Value: Clone + PartialEq + std::fmt::Debug;
    fn one(&self) -> Self::Value;
    fn zero(&self) -> Self::Value;
    fn mul(&self, a: &Self::Value, b: &Self::Value) -> Result<Self::Value>;
    fn add_scaled(&self, acc: &mut Self::Value, v: &Self::Value, c: &Scalar);
    fn is_zero(&self, v: &Self::Value) -> bool;
    /// Bring a value to canonical form (e.g. reduce an element).
    fn normalize(&self, v: Self::Value) -> Result<Self::Value>;
    fn show(&self, v: &Self::Value) -> String;
}

impl Target for Presentation {
    type Value = Element;
    fn one(&self) -> Element {
        Element::one()
    }
    fn zero(&self) -> Element {
        Element::zero()
    }
    fn mul(&self, a: &Element, b: &Element) -> Result<Element> {
        Presentation::mul(self, a, b)
    }
    fn add_scaled(&self, acc: &mut Element, v: &Element, c: &Scalar) {
        acc.add_scaled(v, c);
    }
    fn is_zero(&self, v: &Element) -> bool {
        v.is_zero()
    }
    fn normalize(&self, v: Element) -> Result<Element> {
        self.normal_form(&v)
    }
    fn show(&self, v: &Element) -> String {
        Presentation::show(self, v)
    }
}

impl Target for TensorPower {
    type Value = Element;
    fn one(&self) -> Element {
        Element::one()
    }
    fn zero(&self) -> Element {
        Element::zero()
    }
    fn mul(&self, a: &Element, b: &Element) -> Result<Element> {
        TensorPower::mul(self, a, b)
    }
    fn add_scaled(&self, acc: &mut Element, v: &Element, c: &Scalar) {
        acc.add_scaled(v, c);
    }
    fn is_zero(&self, v: &Element) -> bool {
        v.is_zero()
    }
    fn normalize(&self, v: Element) -> Result<Element> {
        self.presentation().normal_form(&v)
    }
    fn show(&self, v: &Element) -> String {
        TensorPower::show(self, v)
    }
}

/// The ground field as a target (characters, counits).
#[derive(Clone, Copy, Debug, Default)]
pub struct ScalarField;

impl Target for ScalarField {
    type Value = Scalar;
    fn one(&self) -> Scalar {
        Scalar::one()
    }
    fn zero(&self) -> Scalar {
        Scalar::zero()
    }
    fn mul(&self, a: &Scalar, b: &Scalar) -> Result<Scalar> {
        Ok(a * b)
    }
    fn add_scaled(&self, acc: &mut Scalar, v: &Scalar, c: &Scalar) {
        *acc = &*acc + &(v * c);
    }
    fn is_zero(&self, v: &Scalar) -> bool {
        v.is_zero()
    }
    fn normalize(&self, v: Scalar) -> Result<Scalar> {
        Ok(v)
    }
    fn show(&self, v: &Scalar) -> String {
        v.to_string()
    }
}

/// Multiplicative (or anti-multiplicative) extension of generator images.
pub struct AlgebraMap<'t, T: Target> {
    target: &'t T,
    images: Vec<T::Value>,
    anti: bool,
    cache: RefCell<HashMap<Word, T::Value>>,
}

impl<'t, T: Target> AlgebraMap<'t, T> {
    /// Images indexed by generator.
    pub fn new(target: &'t T, images: Vec<T::Value>) -> Result<Self> {
        Self::build(target, images, false)
    }

    /// Anti-multiplicative extension: `f(ab) = f(b) f(a)`.
    pub fn anti(target: &'t T, images: Vec<T::Value>) -> Result<Self> {
        Self::build(target, images, true)
    }

    fn build(target: &'t T, images: Vec<T::Value>, anti: bool) -> Result<Self> {
        let images = images
            .into_iter()
            .map(|v| target.normalize(v))
            .collect::<Result<Vec<_>>>()?;
        Ok(AlgebraMap {
            target,
            images,
            anti,
            cache: RefCell::new(HashMap::new()),
        })
    }

    pub fn target(&self) -> &T {
        self.target
    }

    pub fn images(&self) -> &[T::Value] {
        &self.images
    }

    pub fn apply_word(&self, w: &Word) -> Result<T::Value> {
        match w.len() {
            0 => return Ok(self.target.one()),
            1 => {
                return self
                    .images
                    .get(w.letters()[0] as usize)
                    .cloned()
                    .ok_or_else(|| Error::UnknownGenerator(format!("#{}", w.letters()[0])))
            }
            _ => {}
        }
        if let Some(v) = self.cache.borrow().get(w) {
            return Ok(v.clone());
        }
        let n = w.len();
        let head = self.apply_word(&Word::from_slice(&w.letters()[..n - 1]))?;
        let last = self.apply_word(&Word::from_slice(&w.letters()[n - 1..]))?;
        let v = if self.anti {
            self.target.mul(&last, &head)?
        } else {
            self.target.mul(&head, &last)?
        };
        self.cache.borrow_mut().insert(w.clone(), v.clone());
        Ok(v)
    }

    pub fn apply(&self, e: &Element) -> Result<T::Value> {
        let mut acc = self.target.zero();
        for (w, c) in e.terms() {
            let v = self.apply_word(w)?;
            self.target.add_scaled(&mut acc, &v, c);
        }
        Ok(acc)
    }
}

/// Extend a name-indexed generator assignment to an algebra map.
/// Every generator of `source` must be assigned exactly once.
pub fn extend_algebra_map<'t, T: Target>(
    source: &Presentation,
    target: &'t T,
    assignments: Vec<(String, T::Value)>,
) -> Result<AlgebraMap<'t, T>> {
    let mut images: Vec<Option<T::Value>> = vec![None; source.num_gens()];
    for (name, v) in assignments {
        let g = source.gen(&name)? as usize;
        if images[g].is_some() {
            return Err(Error::InvalidPresentation(format!("generator `{name}` assigned twice")));
        }
        images[g] = Some(v);
    }
    let images = images
        .into_iter()
        .enumerate()
        .map(|(g, v)| {
            v.ok_or_else(|| {
                Error::InvalidPresentation(format!(
                    "no image for generator `{}`",
                    source.gen_name(g as u16)
                ))
            })
        })
        .collect::<Result<Vec<_>>>()?;
    AlgebraMap::new(target, images)
}

/// Rules `lhs -> rhs` of `source` whose images differ, with the residual
/// `f(lhs) − f(rhs)`.
pub fn relation_residuals<T: Target>(
    source: &Presentation,
    map: &dyn Fn(&Element) -> Result<T::Value>,
    target: &T,
) -> Result<Vec<(usize, T::Value)>> {
    let mut out = Vec::new();
    for (k, r) in source.rules().iter().enumerate() {
        let mut d = map(&Element::from_word(r.lhs.clone()))?;
        let rhs = map(&r.rhs)?;
        target.add_scaled(&mut d, &rhs, &Scalar::from_int(-1));
        let d = target.normalize(d)?;
        if !target.is_zero(&d) {
            out.push((k, d));
        }
    }
    Ok(out)
}

/// Non-normal words `w` up to `max_len` with `f(w) ≠ f(NF(w))`.
pub fn word_residuals<T: Target>(
    source: &Presentation,
    map: &dyn Fn(&Element) -> Result<T::Value>,
    target: &T,
    max_len: usize,
) -> Result<Vec<(Word, T::Value)>> {
    let mut out = Vec::new();
    let n = source.num_gens() as u16;
    let mut frontier = vec![Word::unit()];
    for _ in 0..max_len {
        let mut next = Vec::with_capacity(frontier.len() * n as usize);
        for w in &frontier {
            for g in 0..n {
                let mut v = w.clone();
                v.0.push(g);
                next.push(v);
            }
        }
        for w in &next {
            if source.is_normal(w) {
                continue;
            }
            let e = Element::from_word(w.clone());
            let mut d = map(&e)?;
            let nf = map(&source.normal_form(&e)?)?;
            target.add_scaled(&mut d, &nf, &Scalar::from_int(-1));
            let d = target.normalize(d)?;
            if !target.is_zero(&d) {
                out.push((w.clone(), d));
            }
        }
        frontier = next;
    }
    Ok(out)
}
