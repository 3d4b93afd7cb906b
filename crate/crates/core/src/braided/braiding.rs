use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::freealg::{Element, Gen, Presentation, Word};
use crate::scalars::{Param, Scalar};

/// Image of one generator pair: terms `(left, right, c)`.
pub type PairImage = Vec<(Gen, Gen, Scalar)>;

/// Generator-level braiding `Ψ(u ⊗ v) = Σ c · v' ⊗ u'`.
///
/// Keys are `(u, v)` generator pairs; each image term is `(left, right, c)`
/// meaning `c · left ⊗ right`. Units braid trivially:
/// `Ψ(1 ⊗ a) = a ⊗ 1` and `Ψ(a ⊗ 1) = 1 ⊗ a`.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct Braiding {
    table: BTreeMap<(Gen, Gen), PairImage>,
}

/// Which side the word-level recursion peels first.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Recursion {
    LeftFirst,
    RightFirst,
}

pub type TensorTerms = BTreeMap<(Word, Word), Scalar>;

impl Braiding {
    pub fn new() -> Self {
        Braiding::default()
    }

    /// The flip `u ⊗ v ↦ v ⊗ u` on `n` generators.
    pub fn flip(n: usize) -> Self {
        let mut b = Braiding::new();
        for u in 0..n as Gen {
            for v in 0..n as Gen {
                b.set(u, v, vec![(v, u, Scalar::one())]);
            }
        }
        b
    }

    /// Super-transposition: `(-1)^{|u||v|} v ⊗ u` with parities per generator.
    pub fn super_sign(parity: &[bool]) -> Self {
        let mut b = Braiding::new();
        let n = parity.len() as Gen;
        for u in 0..n {
            for v in 0..n {
                let s = if parity[u as usize] && parity[v as usize] {
                    Scalar::from_int(-1)
                } else {
                    Scalar::one()
                };
                b.set(u, v, vec![(v, u, s)]);
            }
        }
        b
    }

    pub fn set(&mut self, u: Gen, v: Gen, image: PairImage) {
        let mut image: Vec<_> = image.into_iter().filter(|t| !t.2.is_zero()).collect();
        image.sort_by_key(|t| (t.0, t.1));
        self.table.insert((u, v), image);
    }

    pub fn get(&self, u: Gen, v: Gen) -> Option<&[(Gen, Gen, Scalar)]> {
        self.table.get(&(u, v)).map(Vec::as_slice)
    }

    pub fn entries(&self) -> impl Iterator<Item = (&(Gen, Gen), &PairImage)> {
        self.table.iter()
    }

    /// Every pair `(u, v)` with `u < left_n`, `v < right_n` has an image.
    pub fn is_total(&self, left_n: usize, right_n: usize) -> bool {
        (0..left_n as Gen).all(|u| (0..right_n as Gen).all(|v| self.table.contains_key(&(u, v))))
    }

    pub fn is_flip(&self) -> bool {
        self.table
            .iter()
            .all(|(&(u, v), img)| img.len() == 1 && img[0].0 == v && img[0].1 == u && img[0].2.is_one())
    }

    pub fn substitute(&self, bindings: &BTreeMap<Param, Scalar>) -> Result<Braiding> {
        let mut out = Braiding::new();
        for (&(u, v), img) in &self.table {
            let img = img
                .iter()
                .map(|(a, b, c)| Ok((*a, *b, c.substitute(bindings)?)))
                .collect::<Result<Vec<_>>>()?;
            out.set(u, v, img);
        }
        Ok(out)
    }

    /// Ψ on a pair of words, extended through the hexagon recursion
    /// `Ψ(uv ⊗ w) = (Ψ_{u,·} ⊗ id)(id ⊗ Ψ_{v,w})` and its mirror
    /// `Ψ(u ⊗ vw) = (id ⊗ Ψ_{·,w})(Ψ_{u,v} ⊗ id)`. No reduction is applied.
    pub fn extend(&self, a: &Word, b: &Word, order: Recursion) -> Result<TensorTerms> {
        let mut memo = BTreeMap::new();
        self.extend_memo(a, b, order, &mut memo)
    }

    fn extend_memo(
        &self,
        a: &Word,
        b: &Word,
        order: Recursion,
        memo: &mut BTreeMap<(Word, Word), TensorTerms>,
    ) -> Result<TensorTerms> {
        if let Some(t) = memo.get(&(a.clone(), b.clone())) {
            return Ok(t.clone());
        }
        let mut out = TensorTerms::new();
        if a.is_unit() || b.is_unit() {
            out.insert((b.clone(), a.clone()), Scalar::one());
        } else if a.len() == 1 && b.len() == 1 {
            let (u, v) = (a.letters()[0], b.letters()[0]);
            let img = self.get(u, v).ok_or_else(|| {
                Error::ConstructionFailure(format!("braiding undefined on generator pair ({u}, {v})"))
            })?;
            for (l, r, c) in img {
                add(&mut out, Word::gen(*l), Word::gen(*r), c.clone());
            }
        } else {
            let split_left = match order {
                Recursion::LeftFirst => a.len() > 1,
                Recursion::RightFirst => b.len() == 1,
            };
            if split_left {
                // a = u·v: braid w past v, then past u.
                let u = Word::from_slice(&a.letters()[..1]);
                let v = Word::from_slice(&a.letters()[1..]);
                for ((w1, v1), c1) in self.extend_memo(&v, b, order, memo)? {
                    for ((w2, u1), c2) in self.extend_memo(&u, &w1, order, memo)? {
                        add(&mut out, w2, u1.concat(&v1), &c1 * &c2);
                    }
                }
            } else {
                // b = v·w: braid a past v, then the result past w.
                let v = Word::from_slice(&b.letters()[..1]);
                let w = Word::from_slice(&b.letters()[1..]);
                for ((v1, a1), c1) in self.extend_memo(a, &v, order, memo)? {
                    for ((w1, a2), c2) in self.extend_memo(&a1, &w, order, memo)? {
                        add(&mut out, v1.concat(&w1), a2, &c1 * &c2);
                    }
                }
            }
        }
        memo.insert((a.clone(), b.clone()), out.clone());
        Ok(out)
    }

    /// Ψ on words followed by reduction of each tensor factor.
    pub fn extend_reduced(
        &self,
        left_alg: &Presentation,
        right_alg: &Presentation,
        a: &Word,
        b: &Word,
        order: Recursion,
    ) -> Result<TensorTerms> {
        let raw = self.extend(a, b, order)?;
        reduce_pairs(&raw, left_alg, right_alg)
    }

    /// Ψ on a pair of elements (bilinear extension), reduced.
    pub fn apply_elements(
        &self,
        left_alg: &Presentation,
        right_alg: &Presentation,
        a: &Element,
        b: &Element,
    ) -> Result<TensorTerms> {
        let mut out = TensorTerms::new();
        for (wa, ca) in a.terms() {
            for (wb, cb) in b.terms() {
                let c = ca * cb;
                for ((l, r), d) in self.extend(wa, wb, Recursion::LeftFirst)? {
                    add(&mut out, l, r, &c * &d);
                }
            }
        }
        reduce_pairs(&out, left_alg, right_alg)
    }
}

fn add(out: &mut TensorTerms, l: Word, r: Word, c: Scalar) {
    if c.is_zero() {
        return;
    }
    let key = (l, r);
    let s = match out.get(&key) {
        Some(d) => d + &c,
        None => c,
    };
    if s.is_zero() {
        out.remove(&key);
    } else {
        out.insert(key, s);
    }
}

/// Reduce both tensor factors of every term.
pub fn reduce_pairs(
    terms: &TensorTerms,
    left_alg: &Presentation,
    right_alg: &Presentation,
) -> Result<TensorTerms> {
    let mut out = TensorTerms::new();
    for ((l, r), c) in terms {
        let nl = left_alg.normal_form_word(l)?;
        let nr = right_alg.normal_form_word(r)?;
        for (wl, cl) in nl.terms() {
            for (wr, cr) in nr.terms() {
                add(&mut out, wl.clone(), wr.clone(), &(c * cl) * cr);
            }
        }
    }
    Ok(out)
}
