use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, OnceLock, RwLock};

use serde_json::{json, Value};

use super::element::{Element, Gen, Word};
use crate::error::{Error, Result};
use crate::scalars::{Param, ParamSet, Scalar};

/// Default cap on rewrite steps per reduction.
pub const DEFAULT_STEP_BUDGET: u64 = 1_000_000;

/// `QGEO_STEP_BUDGET` when set to a positive integer, else [`DEFAULT_STEP_BUDGET`].
pub fn default_step_budget() -> u64 {
    static BUDGET: OnceLock<u64> = OnceLock::new();
    *BUDGET.get_or_init(|| {
        std::env::var("QGEO_STEP_BUDGET")
            .ok()
            .and_then(|v| v.trim().parse().ok())
            .filter(|&b| b > 0)
            .unwrap_or(DEFAULT_STEP_BUDGET)
    })
}

const MAX_DEPTH: usize = 20_000;

/// Oriented relation `lhs -> rhs`; every word of `rhs` is smaller than `lhs`.
#[derive(Clone, Debug, PartialEq)]
pub struct RewriteRule {
    pub lhs: Word,
    pub rhs: Element,
}

/// Generators with a weighted degree-lexicographic order plus oriented
/// rewrite rules. Immutable once shared; reductions are memoised per word.
#[derive(Clone, Debug)]
pub struct Presentation {
    name: String,
    params: ParamSet,
    gens: Vec<String>,
    weights: Vec<u32>,
    rules: Vec<RewriteRule>,
    budget: u64,
    index: HashMap<Word, usize>,
    lhs_lens: Vec<usize>,
    cache: Arc<RwLock<HashMap<Word, Arc<Element>>>>,
}

impl PartialEq for Presentation {
    fn eq(&self, other: &Self) -> bool {
        self.name == other.name
            && self.params == other.params
            && self.gens == other.gens
            && self.weights == other.weights
            && self.rules == other.rules
    }
}

impl Presentation {
    pub fn new<S: AsRef<str>>(
        name: &str,
        params: ParamSet,
        gens: impl IntoIterator<Item = S>,
    ) -> Result<Self> {
        let gens: Vec<String> = gens.into_iter().map(|s| s.as_ref().to_owned()).collect();
        for (k, g) in gens.iter().enumerate() {
            if gens[..k].contains(g) {
                return Err(Error::InvalidPresentation(format!("duplicate generator `{g}`")));
            }
            if params.contains(g) || g == "i" {
                return Err(Error::InvalidPresentation(format!(
                    "generator `{g}` clashes with a scalar symbol"
                )));
            }
        }
        if gens.len() > Gen::MAX as usize {
            return Err(Error::InvalidPresentation("too many generators".into()));
        }
        let weights = vec![1; gens.len()];
        Ok(Presentation {
            name: name.to_owned(),
            params,
            gens,
            weights,
            rules: Vec::new(),
            budget: default_step_budget(),
            index: HashMap::new(),
            lhs_lens: Vec::new(),
            cache: Default::default(),
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: &str) -> Self {
        self.name = name.to_owned();
        self
    }

    pub fn params(&self) -> &ParamSet {
        &self.params
    }

    pub fn gens(&self) -> &[String] {
        &self.gens
    }

    pub fn num_gens(&self) -> usize {
        self.gens.len()
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    pub fn rules(&self) -> &[RewriteRule] {
        &self.rules
    }

    pub fn budget(&self) -> u64 {
        self.budget
    }

    pub fn set_budget(&mut self, budget: u64) {
        self.budget = budget;
    }

    pub fn set_weight(&mut self, gen: &str, weight: u32) -> Result<()> {
        if weight == 0 {
            return Err(Error::InvalidPresentation("generator weights must be positive".into()));
        }
        if !self.rules.is_empty() {
            return Err(Error::InvalidPresentation(
                "weights must be fixed before rules are added".into(),
            ));
        }
        let g = self.gen(gen)?;
        self.weights[g as usize] = weight;
        Ok(())
    }

    pub fn gen(&self, name: &str) -> Result<Gen> {
        self.gens
            .iter()
            .position(|g| g == name)
            .map(|k| k as Gen)
            .ok_or_else(|| Error::UnknownGenerator(name.to_owned()))
    }

    pub fn gen_name(&self, g: Gen) -> &str {
        &self.gens[g as usize]
    }

    pub fn gen_elem(&self, name: &str) -> Result<Element> {
        Ok(Element::gen(self.gen(name)?))
    }

    /// Word from generator names.
    pub fn word<S: AsRef<str>>(&self, names: &[S]) -> Result<Word> {
        let mut w = Word::unit();
        for n in names {
            w.0.push(self.gen(n.as_ref())?);
        }
        Ok(w)
    }

    pub fn weight_of(&self, w: &Word) -> u32 {
        w.0.iter().map(|&g| self.weights[g as usize]).sum()
    }

    /// The monomial order: weighted degree, then lexicographic in generator order.
    pub fn cmp_words(&self, a: &Word, b: &Word) -> Ordering {
        self.weight_of(a)
            .cmp(&self.weight_of(b))
            .then_with(|| a.0.cmp(&b.0))
    }

    pub fn add_rule(&mut self, lhs: Word, rhs: Element) -> Result<()> {
        let shown = self.show_word(&lhs);
        let bad = |reason: String| Error::InvalidRule {
            lhs: shown.clone(),
            reason,
        };
        if lhs.is_unit() {
            return Err(bad("left-hand side must be a nonempty word".into()));
        }
        let n = self.gens.len() as Gen;
        if lhs.0.iter().chain(rhs.terms().flat_map(|(w, _)| w.0.iter())).any(|&g| g >= n) {
            return Err(bad("generator out of range".into()));
        }
        if self.index.contains_key(&lhs) {
            return Err(bad("duplicate left-hand side".into()));
        }
        for (w, _) in rhs.terms() {
            if self.cmp_words(w, &lhs) != Ordering::Less {
                return Err(bad(format!(
                    "right-hand side word `{}` is not smaller in the monomial order",
                    self.show_word(w)
                )));
            }
        }
        for p in rhs.params() {
            if !self.params.iter().any(|q| q == p) {
                return Err(bad(format!("undeclared parameter `{p}`")));
            }
        }
        self.index.insert(lhs.clone(), self.rules.len());
        if !self.lhs_lens.contains(&lhs.len()) {
            self.lhs_lens.push(lhs.len());
            self.lhs_lens.sort_unstable();
        }
        self.rules.push(RewriteRule { lhs, rhs });
        self.cache = Default::default();
        Ok(())
    }

    /// Leftmost (then shortest) rule occurrence in `w`.
    pub fn find_match(&self, w: &Word) -> Option<(usize, usize)> {
        let letters = w.letters();
        for start in 0..letters.len() {
            for &len in &self.lhs_lens {
                if start + len > letters.len() {
                    break;
                }
                if let Some(&r) = self.index.get(&letters[start..start + len]) {
                    return Some((start, r));
                }
            }
        }
        None
    }

    pub fn all_matches(&self, w: &Word) -> Vec<(usize, usize)> {
        let letters = w.letters();
        let mut out = Vec::new();
        for start in 0..letters.len() {
            for &len in &self.lhs_lens {
                if start + len > letters.len() {
                    break;
                }
                if let Some(&r) = self.index.get(&letters[start..start + len]) {
                    out.push((start, r));
                }
            }
        }
        out
    }

    pub fn is_normal(&self, w: &Word) -> bool {
        self.find_match(w).is_none()
    }

    /// Normal form: no rule left-hand side survives as a subword.
    pub fn normal_form(&self, e: &Element) -> Result<Element> {
        let mut steps = 0u64;
        let mut out = Element::zero();
        for (w, c) in e.terms() {
            let nf = self.nf_word(w, &mut steps, 0)?;
            out.add_scaled(&nf, c);
        }
        Ok(out)
    }

    pub fn normal_form_word(&self, w: &Word) -> Result<Arc<Element>> {
        let mut steps = 0u64;
        self.nf_word(w, &mut steps, 0)
    }

    fn nf_word(&self, w: &Word, steps: &mut u64, depth: usize) -> Result<Arc<Element>> {
        if let Some(e) = self.cache.read().unwrap().get(w) {
            return Ok(e.clone());
        }
        let result = match self.find_match(w) {
            None => Arc::new(Element::from_word(w.clone())),
            Some((pos, r)) => {
                *steps += 1;
                if *steps > self.budget || depth > MAX_DEPTH {
                    return Err(Error::BudgetExceeded {
                        budget: self.budget,
                    });
                }
                let rule = &self.rules[r];
                let mut acc = Element::zero();
                for (rw, c) in rule.rhs.terms() {
                    let next = w.splice(pos..pos + rule.lhs.len(), rw);
                    let sub = self.nf_word(&next, steps, depth + 1)?;
                    acc.add_scaled(&sub, c);
                }
                Arc::new(acc)
            }
        };
        self.cache.write().unwrap().insert(w.clone(), result.clone());
        Ok(result)
    }

    /// Reduction with a caller-chosen redex at every step (no memoisation).
    /// `pick(n)` returns an index in `0..n` among the current matches.
    pub fn normal_form_with(
        &self,
        e: &Element,
        pick: &mut dyn FnMut(usize) -> usize,
    ) -> Result<Element> {
        let mut work: Vec<(Word, Scalar)> = e.terms().map(|(w, c)| (w.clone(), c.clone())).collect();
        let mut out = Element::zero();
        let mut steps = 0u64;
        while let Some((w, c)) = work.pop() {
            let matches = self.all_matches(&w);
            if matches.is_empty() {
                out.add_term(w, c);
                continue;
            }
            steps += 1;
            if steps > self.budget {
                return Err(Error::BudgetExceeded {
                    budget: self.budget,
                });
            }
            let (pos, r) = matches[pick(matches.len()) % matches.len()];
            let rule = &self.rules[r];
            for (rw, d) in rule.rhs.terms() {
                work.push((w.splice(pos..pos + rule.lhs.len(), rw), &c * d));
            }
        }
        Ok(out)
    }

    /// Reduced product `NF(a·b)`.
    pub fn mul(&self, a: &Element, b: &Element) -> Result<Element> {
        self.normal_form(&a.free_mul(b))
    }

    /// `NF(a·b − b·a)`.
    pub fn commutator(&self, a: &Element, b: &Element) -> Result<Element> {
        self.normal_form(&(&a.free_mul(b) - &b.free_mul(a)))
    }

    pub fn pow(&self, a: &Element, e: u32) -> Result<Element> {
        let mut acc = Element::one();
        for _ in 0..e {
            acc = self.mul(&acc, a)?;
        }
        Ok(acc)
    }

    /// All normal words of length at most `max_len`, in increasing order.
    pub fn normal_words(&self, max_len: usize) -> Vec<Word> {
        let mut out = vec![Word::unit()];
        let mut frontier = vec![Word::unit()];
        for _ in 0..max_len {
            let mut next = Vec::new();
            for w in &frontier {
                for g in 0..self.gens.len() as Gen {
                    let mut v = w.clone();
                    v.0.push(g);
                    if self.is_normal(&v) {
                        next.push(v);
                    }
                }
            }
            out.extend(next.iter().cloned());
            frontier = next;
        }
        out.sort_by(|a, b| self.cmp_words(a, b));
        out
    }

    /// Same generators and order with every coefficient substituted.
    pub fn substitute(&self, bindings: &BTreeMap<Param, Scalar>) -> Result<Presentation> {
        let mut p = Presentation {
            rules: Vec::new(),
            index: HashMap::new(),
            lhs_lens: Vec::new(),
            cache: Default::default(),
            ..self.clone()
        };
        for r in &self.rules {
            p.add_rule(r.lhs.clone(), r.rhs.substitute(bindings)?)?;
        }
        Ok(p)
    }

    pub fn show_word(&self, w: &Word) -> String {
        if w.is_unit() {
            return "1".into();
        }
        w.letters()
            .iter()
            .map(|&g| self.gens.get(g as usize).map(String::as_str).unwrap_or("?"))
            .collect::<Vec<_>>()
            .join(".")
    }

    /// DSL-syntax rendering, terms in decreasing monomial order.
    pub fn show(&self, e: &Element) -> String {
        let mut terms: Vec<(&Word, &Scalar)> = e.terms().collect();
        terms.sort_by(|a, b| self.cmp_words(b.0, a.0));
        format_linear(terms.into_iter().map(|(w, c)| (self.show_word(w), c)))
    }

    /// Canonical JSON: `[{word: [gen, ...], coeff: "..."}]`.
    pub fn element_json(&self, e: &Element) -> Value {
        let mut terms: Vec<(&Word, &Scalar)> = e.terms().collect();
        terms.sort_by(|a, b| self.cmp_words(b.0, a.0));
        Value::Array(
            terms
                .into_iter()
                .map(|(w, c)| {
                    json!({
                        "word": w.letters().iter().map(|&g| self.gen_name(g)).collect::<Vec<_>>(),
                        "coeff": c.to_string(),
                    })
                })
                .collect(),
        )
    }
}

/// Join `coeff * basis` terms into DSL syntax. Basis strings equal to `1`
/// print the bare coefficient.
pub fn format_linear<'a>(terms: impl IntoIterator<Item = (String, &'a Scalar)>) -> String {
    let mut out = String::new();
    for (basis, c) in terms {
        let neg = c.is_atomic() && c.numer().lc().leading_negative();
        let abs = if neg { -c } else { c.clone() };
        let body = if basis == "1" {
            if abs.is_atomic() || out.is_empty() {
                abs.to_string()
            } else {
                format!("({abs})")
            }
        } else if abs.is_one() {
            basis
        } else if abs.is_atomic() {
            format!("{abs}*{basis}")
        } else {
            format!("({abs})*{basis}")
        };
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        out.push_str(&body);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}
