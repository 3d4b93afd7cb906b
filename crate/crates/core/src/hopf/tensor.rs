use crate::braided::{Braiding, TensorTerms};
use crate::error::{Error, Result};
use crate::freealg::{format_linear, Element, Gen, Presentation, Word};
use crate::scalars::{ParamSet, Scalar};

/// `A1 ⊗ … ⊗ Ak` as a single presentation: copy `s` of a generator `x` is
/// named `x#s` (1-based) and all copies of slot `i` precede those of slot
/// `j > i`. Cross relations move later slots to the right, either by the flip
/// or by a braiding.
#[derive(Clone, Debug)]
pub struct TensorPower {
    factors: Vec<Presentation>,
    offsets: Vec<Gen>,
    combined: Presentation,
    braided: bool,
}

impl TensorPower {
    /// Ordinary tensor product: copies in different slots commute.
    pub fn ordinary(factors: &[&Presentation]) -> Result<Self> {
        Self::build(factors, None)
    }

    /// Braided tensor product: `(1⊗b)(a⊗1) = Ψ(b⊗a)` between every pair of slots.
    pub fn braided(factors: &[&Presentation], psi: &Braiding) -> Result<Self> {
        Self::build(factors, Some(psi))
    }

    /// `A^{⊗k}`, braided when `psi` is given.
    pub fn power(a: &Presentation, k: usize, psi: Option<&Braiding>) -> Result<Self> {
        let f: Vec<&Presentation> = std::iter::repeat_n(a, k).collect();
        Self::build(&f, psi)
    }

    fn build(factors: &[&Presentation], psi: Option<&Braiding>) -> Result<Self> {
        if factors.is_empty() {
            return Err(Error::ConstructionFailure("empty tensor product".into()));
        }
        let mut params = ParamSet::default();
        let mut names = Vec::new();
        let mut offsets = Vec::new();
        for (s, f) in factors.iter().enumerate() {
            for p in f.params().iter() {
                if !params.contains(p.name()) {
                    params.push(p.name())?;
                }
            }
            offsets.push(names.len() as Gen);
            names.extend(f.gens().iter().map(|g| format!("{g}#{}", s + 1)));
        }
        let name = factors
            .iter()
            .map(|f| f.name())
            .collect::<Vec<_>>()
            .join(if psi.is_some() { "_btimes_" } else { "_otimes_" });
        let mut combined = Presentation::new(&name, params, &names)?;
        for (s, f) in factors.iter().enumerate() {
            for (g, &w) in f.weights().iter().enumerate() {
                if w != 1 {
                    combined.set_weight(&names[offsets[s] as usize + g], w)?;
                }
            }
        }
        for (s, f) in factors.iter().enumerate() {
            let off = offsets[s];
            for r in f.rules() {
                combined.add_rule(shift(&r.lhs, off), r.rhs.map_words(|w| shift(w, off)))?;
            }
        }
        for j in 0..factors.len() {
            for i in 0..j {
                let (fi, fj) = (factors[i], factors[j]);
                for u in 0..fj.num_gens() as Gen {
                    for v in 0..fi.num_gens() as Gen {
                        let lhs = Word::from_slice(&[offsets[j] + u, offsets[i] + v]);
                        let rhs = match psi {
                            None => Element::from_word(Word::from_slice(&[offsets[i] + v, offsets[j] + u])),
                            Some(b) => {
                                let img = b.get(u, v).ok_or_else(|| {
                                    Error::ConstructionFailure(format!(
                                        "braiding undefined on ({}, {})",
                                        fj.gen_name(u),
                                        fi.gen_name(v)
                                    ))
                                })?;
                                Element::from_terms(img.iter().map(|(l, r, c)| {
                                    (Word::from_slice(&[offsets[i] + l, offsets[j] + r]), c.clone())
                                }))
                            }
                        };
                        combined.add_rule(lhs, rhs)?;
                    }
                }
            }
        }
        Ok(TensorPower {
            factors: factors.iter().map(|&f| f.clone()).collect(),
            offsets,
            combined,
            braided: psi.is_some(),
        })
    }

    pub fn presentation(&self) -> &Presentation {
        &self.combined
    }

    pub fn arity(&self) -> usize {
        self.factors.len()
    }

    pub fn factor(&self, slot: usize) -> &Presentation {
        &self.factors[slot]
    }

    pub fn is_braided(&self) -> bool {
        self.braided
    }

    pub fn embed_word(&self, slot: usize, w: &Word) -> Word {
        shift(w, self.offsets[slot])
    }

    /// `1 ⊗ … ⊗ e ⊗ … ⊗ 1` with `e` in `slot`.
    pub fn embed(&self, slot: usize, e: &Element) -> Element {
        e.map_words(|w| self.embed_word(slot, w))
    }

    /// `w1 ⊗ … ⊗ wk` as a normal word of the combined presentation
    /// (each `wi` must already be normal in its factor).
    pub fn pure(&self, words: &[&Word]) -> Word {
        let mut out = Word::unit();
        for (s, w) in words.iter().enumerate() {
            out = out.concat(&self.embed_word(s, w));
        }
        out
    }

    /// Inverse of [`pure`](Self::pure) on normal words.
    pub fn split(&self, w: &Word) -> Vec<Word> {
        let mut parts = vec![Word::unit(); self.arity()];
        for &g in w.letters() {
            let s = self.slot_of(g);
            parts[s].0.push(g - self.offsets[s]);
        }
        parts
    }

    fn slot_of(&self, g: Gen) -> usize {
        self.offsets.iter().rposition(|&o| o <= g).unwrap_or(0)
    }

    /// Pair terms of a two-fold product as a combined element.
    pub fn from_pairs(&self, t: &TensorTerms) -> Element {
        Element::from_terms(t.iter().map(|((a, b), c)| (self.pure(&[a, b]), c.clone())))
    }

    /// Two-fold combined element as pair terms (element must be normal).
    pub fn to_pairs(&self, e: &Element) -> TensorTerms {
        let mut out = TensorTerms::new();
        for (w, c) in e.terms() {
            let mut parts = self.split(w).into_iter();
            let a = parts.next().unwrap_or_default();
            let b = parts.next().unwrap_or_default();
            out.insert((a, b), c.clone());
        }
        out
    }

    pub fn mul(&self, a: &Element, b: &Element) -> Result<Element> {
        self.combined.mul(a, b)
    }

    /// `a|b` rendering, terms in decreasing order of the combined presentation.
    pub fn show(&self, e: &Element) -> String {
        let mut terms: Vec<(&Word, &Scalar)> = e.terms().collect();
        terms.sort_by(|a, b| self.combined.cmp_words(b.0, a.0));
        format_linear(terms.into_iter().map(|(w, c)| (self.show_word(w), c)))
    }

    pub fn show_word(&self, w: &Word) -> String {
        self.split(w)
            .iter()
            .enumerate()
            .map(|(s, p)| self.factors[s].show_word(p))
            .collect::<Vec<_>>()
            .join("|")
    }
}

fn shift(w: &Word, off: Gen) -> Word {
    Word(w.letters().iter().map(|&g| g + off).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qplane() -> Presentation {
        let mut p = Presentation::new("qplane", ParamSet::new(["q"]).unwrap(), ["x", "y"]).unwrap();
        let yx = p.word(&["y", "x"]).unwrap();
        let xy = p.word(&["x", "y"]).unwrap();
        p.add_rule(yx, Element::term(xy, Scalar::param("q"))).unwrap();
        p
    }

    #[test]
    fn ordinary_square_commutes_slots() {
        let a = qplane();
        let t = TensorPower::power(&a, 2, None).unwrap();
        assert_eq!(t.presentation().num_gens(), 4);
        let x1 = t.embed(0, &a.gen_elem("x").unwrap());
        let y2 = t.embed(1, &a.gen_elem("y").unwrap());
        let prod = t.mul(&y2, &x1).unwrap();
        assert_eq!(t.show(&prod), "x|y");
        let yx = t.mul(&x1, &y2).unwrap();
        assert_eq!(prod, yx);
    }

    #[test]
    fn split_inverts_pure() {
        let a = qplane();
        let t = TensorPower::power(&a, 3, None).unwrap();
        let w1 = a.word(&["x", "y"]).unwrap();
        let w2 = Word::unit();
        let w3 = a.word(&["y"]).unwrap();
        let w = t.pure(&[&w1, &w2, &w3]);
        assert_eq!(t.split(&w), vec![w1, w2, w3]);
        assert_eq!(t.show_word(&w), "x.y|1|y");
    }

    #[test]
    fn braided_square_uses_psi() {
        let a = qplane();
        let q = Scalar::param("q");
        let mut psi = Braiding::new();
        psi.set(0, 0, vec![(0, 0, Scalar::from_int(2))]);
        psi.set(0, 1, vec![(1, 0, q.clone())]);
        psi.set(1, 0, vec![(0, 1, q.clone())]);
        psi.set(1, 1, vec![(1, 1, Scalar::one())]);
        let t = TensorPower::power(&a, 2, Some(&psi)).unwrap();
        let x1 = t.embed(0, &a.gen_elem("x").unwrap());
        let x2 = t.embed(1, &a.gen_elem("x").unwrap());
        assert_eq!(t.show(&t.mul(&x2, &x1).unwrap()), "2*x|x");
    }

    #[test]
    fn braided_square_requires_total_braiding() {
        let a = qplane();
        assert!(TensorPower::power(&a, 2, Some(&Braiding::new())).is_err());
    }
}
