use std::cell::RefCell;
use std::collections::HashMap;
use std::time::Instant;

use super::linalg::add_linear_relations;
use super::rmatrix::{ybe_check, RMatrix};
use crate::error::{Error, Result};
use crate::freealg::{Element, Gen, Presentation, Word};
use crate::hopf::{HopfSpec, TensorElement};
use crate::report::CheckReport;
use crate::scalars::{ParamSet, Scalar};

/// Matrix generators `{prefix}{i}{j}` for `1 ≤ i, j ≤ n`, row-major.
pub(crate) fn matrix_gens(prefix: &str, n: usize) -> Vec<String> {
    (0..n * n).map(|g| format!("{prefix}{}{}", g / n + 1, g % n + 1)).collect()
}

/// Matrix coproduct `Δt^i_j = Σ_k t^i_k ⊗ t^k_j` and counit `δ_{ij}`.
/// `gen` maps the entry `(i, j)` to its generator index.
pub(crate) fn matrix_coalgebra(n: usize, gen: impl Fn(usize, usize) -> Gen) -> (Vec<TensorElement>, Vec<Scalar>) {
    let mut cop = vec![TensorElement::new(); n * n];
    let mut eps = vec![Scalar::zero(); n * n];
    for i in 0..n {
        for j in 0..n {
            let t = &mut cop[gen(i, j) as usize];
            for k in 0..n {
                t.insert(
                    (Word::from_slice(&[gen(i, k)]), Word::from_slice(&[gen(k, j)])),
                    Scalar::one(),
                );
            }
            if i == j {
                eps[gen(i, j) as usize] = Scalar::one();
            }
        }
    }
    (cop, eps)
}

pub(crate) fn params_of(r: &RMatrix) -> Result<ParamSet> {
    ParamSet::new(r.params().iter().map(|p| p.name()))
}

/// Entrywise relations of `R t₁t₂ = t₂t₁ R`, row-reduced into rules.
pub fn frt_presentation(r: &RMatrix) -> Result<Presentation> {
    let n = r.dim();
    let mut p = Presentation::new("frt", params_of(r)?, matrix_gens("t", n))?;
    let t = |i: usize, j: usize| (i * n + j) as Gen;
    let mut rels = Vec::new();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                for l in 0..n {
                    let mut e = Element::zero();
                    for a in 0..n {
                        for b in 0..n {
                            e.add_term(Word::from_slice(&[t(a, k), t(b, l)]), r.get(i, j, a, b).clone());
                            e.add_term(Word::from_slice(&[t(j, b), t(i, a)]), -r.get(a, b, k, l).clone());
                        }
                    }
                    if !e.is_zero() {
                        rels.push(e);
                    }
                }
            }
        }
    }
    add_linear_relations(&mut p, &rels)?;
    Ok(p)
}

/// How a bicharacter extends from generators to products.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Extension {
    /// `R(ab, c) = R(a, c₁)R(b, c₂)` and `R(a, bc) = R(a₁, c)R(a₂, b)`.
    Standard,
    /// `R(ab, c) = R(a, c₂)R(b, c₁)` and `R(a, bc) = R(a₁, b)R(a₂, c)`.
    Mirror,
}

impl Extension {
    pub fn describe(self) -> &'static str {
        match self {
            Extension::Standard => "R(ab,c) = R(a,c1)R(b,c2), R(a,bc) = R(a1,c)R(a2,b)",
            Extension::Mirror => "R(ab,c) = R(a,c2)R(b,c1), R(a,bc) = R(a1,b)R(a2,c)",
        }
    }
}

/// `R(t^i_j, t^k_l) = R^{ik}_{jl}` on matrix generators, extended to words.
#[derive(Debug)]
pub struct Bicharacter {
    r: RMatrix,
    extension: Extension,
    memo: RefCell<HashMap<(Word, Word), Scalar>>,
}

impl Clone for Bicharacter {
    fn clone(&self) -> Self {
        Bicharacter::with_extension(self.r.clone(), self.extension)
    }
}

impl Bicharacter {
    pub fn new(r: RMatrix) -> Self {
        Self::with_extension(r, Extension::Standard)
    }

    pub fn with_extension(r: RMatrix, extension: Extension) -> Self {
        Bicharacter {
            r,
            extension,
            memo: RefCell::new(HashMap::new()),
        }
    }

    pub fn rmatrix(&self) -> &RMatrix {
        &self.r
    }

    pub fn extension(&self) -> Extension {
        self.extension
    }

    fn n(&self) -> usize {
        self.r.dim()
    }

    fn counit(&self, w: &Word) -> Scalar {
        let n = self.n();
        if w.letters().iter().all(|&g| g as usize / n == g as usize % n) {
            Scalar::one()
        } else {
            Scalar::zero()
        }
    }

    /// Free-level coproduct of a word of matrix generators.
    fn delta(&self, w: &Word) -> Vec<(Word, Word)> {
        let n = self.n();
        let mut acc = vec![(Word::unit(), Word::unit())];
        for &g in w.letters() {
            let (i, j) = (g as usize / n, g as usize % n);
            let mut next = Vec::with_capacity(acc.len() * n);
            for (l, r) in &acc {
                for k in 0..n {
                    next.push((
                        l.concat(&Word::from_slice(&[(i * n + k) as Gen])),
                        r.concat(&Word::from_slice(&[(k * n + j) as Gen])),
                    ));
                }
            }
            acc = next;
        }
        acc
    }

    /// Value on a pair of words.
    pub fn eval(&self, u: &Word, v: &Word) -> Scalar {
        if u.is_unit() {
            return self.counit(v);
        }
        if v.is_unit() {
            return self.counit(u);
        }
        let key = (u.clone(), v.clone());
        if let Some(c) = self.memo.borrow().get(&key) {
            return c.clone();
        }
        let n = self.n();
        let val = if u.len() == 1 && v.len() == 1 {
            let (a, b) = (u.letters()[0] as usize, v.letters()[0] as usize);
            self.r.get(a / n, b / n, a % n, b % n).clone()
        } else if u.len() >= 2 {
            let head = Word::from_slice(&u.letters()[..1]);
            let tail = Word::from_slice(&u.letters()[1..]);
            let mut s = Scalar::zero();
            for (v1, v2) in self.delta(v) {
                let (x, y) = match self.extension {
                    Extension::Standard => (self.eval(&head, &v1), self.eval(&tail, &v2)),
                    Extension::Mirror => (self.eval(&head, &v2), self.eval(&tail, &v1)),
                };
                if !x.is_zero() && !y.is_zero() {
                    s = &s + &(&x * &y);
                }
            }
            s
        } else {
            let head = Word::from_slice(&v.letters()[..1]);
            let tail = Word::from_slice(&v.letters()[1..]);
            let mut s = Scalar::zero();
            for (u1, u2) in self.delta(u) {
                let (x, y) = match self.extension {
                    Extension::Standard => (self.eval(&u1, &tail), self.eval(&u2, &head)),
                    Extension::Mirror => (self.eval(&u1, &head), self.eval(&u2, &tail)),
                };
                if !x.is_zero() && !y.is_zero() {
                    s = &s + &(&x * &y);
                }
            }
            s
        };
        self.memo.borrow_mut().insert(key, val.clone());
        val
    }

    /// Bilinear extension to elements.
    pub fn eval_elements(&self, a: &Element, b: &Element) -> Scalar {
        let mut s = Scalar::zero();
        for (u, c) in a.terms() {
            for (v, d) in b.terms() {
                let x = self.eval(u, v);
                if !x.is_zero() {
                    s = &s + &(&(c * d) * &x);
                }
            }
        }
        s
    }
}

/// The FRT bialgebra of a Yang-Baxter solution with its bicharacter.
#[derive(Clone, Debug)]
pub struct FrtBialgebra {
    pub spec: HopfSpec,
    pub bicharacter: Bicharacter,
}

pub fn frt_bialgebra(r: &RMatrix) -> Result<FrtBialgebra> {
    if !ybe_check(r) {
        return Err(Error::YbeFailure);
    }
    let alg = frt_presentation(r)?.with_name("frt");
    let n = r.dim();
    let (cop, eps) = matrix_coalgebra(n, |i, j| (i * n + j) as Gen);
    Ok(FrtBialgebra {
        spec: HopfSpec::new("frt", alg, cop, eps)?,
        bicharacter: Bicharacter::new(r.clone()),
    })
}

/// Dual quasitriangularity `g₁h₁ R(h₂, g₂) = R(h₁, g₁) h₂g₂` for all pairs of
/// normal words up to `max_degree`, plus vanishing of `R` on every rule
/// (both slots) so that it descends to the quotient.
pub fn dqua_check(model: &str, alg: &Presentation, chi: &Bicharacter, max_degree: u32) -> Result<CheckReport> {
    let start = Instant::now();
    let n = chi.n();
    if alg.num_gens() != n * n {
        return Err(Error::DimensionMismatch {
            expected: n * n,
            found: alg.num_gens(),
        });
    }
    let mut rep = CheckReport::new(model, "dqua", Some(max_degree)).with_note(format!(
        "bicharacter extension: {}",
        chi.extension().describe()
    ));
    let words = alg.normal_words(max_degree as usize);
    let nf = |w: &Word| -> Result<Element> { Ok((*alg.normal_form_word(w)?).clone()) };
    for rule in alg.rules() {
        let lhs = Element::from_word(rule.lhs.clone());
        let rel = &lhs - &rule.rhs;
        for g in &words {
            let ge = Element::from_word(g.clone());
            let shown = format!("{} - ({})", alg.show_word(&rule.lhs), alg.show(&rule.rhs));
            let a = chi.eval_elements(&rel, &ge);
            if !a.is_zero() {
                rep.relation_violation(format!("R({shown}, {})", alg.show_word(g)), a.to_string());
            }
            let b = chi.eval_elements(&ge, &rel);
            if !b.is_zero() {
                rep.relation_violation(format!("R({}, {shown})", alg.show_word(g)), b.to_string());
            }
        }
    }
    for h in &words {
        let dh = chi.delta(h);
        for g in &words {
            let dg = chi.delta(g);
            let mut res = Element::zero();
            for (h1, h2) in &dh {
                for (g1, g2) in &dg {
                    let l = chi.eval_elements(&nf(h2)?, &nf(g2)?);
                    if !l.is_zero() {
                        res.add_scaled(&nf(&g1.concat(h1))?, &l);
                    }
                    let r = chi.eval_elements(&nf(h1)?, &nf(g1)?);
                    if !r.is_zero() {
                        res.add_scaled(&nf(&h2.concat(g2))?, &-r);
                    }
                }
            }
            if !res.is_zero() {
                rep.word_violation(format!("({}, {})", alg.show_word(h), alg.show_word(g)), alg.show(&res));
            }
        }
    }
    Ok(rep.finish(start))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::freealg::overlap_confluence;

    #[test]
    fn sl2_has_six_relations() {
        let p = frt_presentation(&RMatrix::sl2()).unwrap();
        assert_eq!(p.rules().len(), 6);
        assert!(overlap_confluence(&p, 3).unwrap().is_confluent());
    }

    #[test]
    fn identity_gives_commutative_algebra() {
        let p = frt_presentation(&RMatrix::identity(2)).unwrap();
        assert_eq!(p.rules().len(), 6);
        for r in p.rules() {
            let l = r.lhs.letters();
            assert_eq!(r.rhs, Element::from_word(Word::from_slice(&[l[1], l[0]])));
        }
    }

    #[test]
    fn dqua_holds_for_solutions() {
        for r in [RMatrix::sl2(), RMatrix::identity(2)] {
            let f = frt_bialgebra(&r).unwrap();
            let rep = dqua_check("frt", &f.spec.algebra, &f.bicharacter, 2).unwrap();
            assert!(rep.passed(), "{}", rep.to_text());
        }
    }

    #[test]
    fn mirror_extension_fails() {
        let f = frt_bialgebra(&RMatrix::sl2()).unwrap();
        let chi = Bicharacter::with_extension(RMatrix::sl2(), Extension::Mirror);
        assert!(dqua_check("frt", &f.spec.algebra, &chi, 2).unwrap().failed());
    }

    #[test]
    fn perturbed_bicharacter_fails() {
        let r = RMatrix::sl2();
        let f = frt_bialgebra(&r).unwrap();
        let bad = r.perturbed(1, 0, 0, 1, &Scalar::one()).unwrap();
        assert!(frt_bialgebra(&bad).is_err());
        let rep = dqua_check("frt", &f.spec.algebra, &Bicharacter::new(bad), 1).unwrap();
        assert!(rep.failed());
    }
}
