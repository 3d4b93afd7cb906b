//! Sparse multivariate polynomials over the Gaussian rationals.
//!
//! Terms are kept sorted in decreasing graded-lexicographic order, with
//! variables ordered by name. Zero coefficients never appear, so two
//! polynomials are equal exactly when their term lists are equal.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashSet};
use std::fmt;
use std::sync::{Mutex, OnceLock};

use smallvec::SmallVec;

use super::gauss::GaussRat;

/// A formal parameter symbol such as `q` or `hbar`. Interned, compared by name.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Param(&'static str);

impl Param {
    pub fn new(name: &str) -> Param {
        static TABLE: OnceLock<Mutex<HashSet<&'static str>>> = OnceLock::new();
        let mut table = TABLE.get_or_init(Default::default).lock().unwrap();
        if let Some(s) = table.get(name) {
            return Param(s);
        }
        let leaked: &'static str = Box::leak(name.to_owned().into_boxed_str());
        table.insert(leaked);
        Param(leaked)
    }

    pub fn name(&self) -> &'static str {
        self.0
    }
}

impl fmt::Debug for Param {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.0)
    }
}

impl fmt::Display for Param {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.0)
    }
}

/// Power product of parameters; `(param, exponent)` pairs sorted by param, exponents positive.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Monomial(pub(crate) SmallVec<[(Param, u32); 3]>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(SmallVec::new())
    }

    pub fn var(p: Param) -> Self {
        let mut v = SmallVec::new();
        v.push((p, 1));
        Monomial(v)
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|(_, e)| e).sum()
    }

    pub fn exponent(&self, p: Param) -> u32 {
        self.0
            .iter()
            .find(|(v, _)| *v == p)
            .map(|(_, e)| *e)
            .unwrap_or(0)
    }

    pub fn vars(&self) -> impl Iterator<Item = Param> + '_ {
        self.0.iter().map(|(v, _)| *v)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = SmallVec::new();
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.0, &other.0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((a[i].0, a[i].1 + b[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Monomial(out)
    }

    /// `self / other` when `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        let mut out = SmallVec::new();
        let mut j = 0;
        for &(v, e) in &self.0 {
            let mut d = 0;
            if j < other.0.len() && other.0[j].0 == v {
                d = other.0[j].1;
                j += 1;
            } else if j < other.0.len() && other.0[j].0 < v {
                return None;
            }
            if d > e {
                return None;
            }
            if e > d {
                out.push((v, e - d));
            }
        }
        if j < other.0.len() {
            return None;
        }
        Some(Monomial(out))
    }

    /// Componentwise minimum of exponents.
    pub fn gcd(&self, other: &Monomial) -> Monomial {
        let mut out = SmallVec::new();
        for &(v, e) in &self.0 {
            let f = other.exponent(v);
            if f > 0 {
                out.push((v, e.min(f)));
            }
        }
        Monomial(out)
    }

    /// Drop the variable `p`, returning the remaining monomial and the removed exponent.
    pub fn split_off(&self, p: Param) -> (Monomial, u32) {
        let mut e = 0;
        let rest = self
            .0
            .iter()
            .filter(|(v, x)| {
                if *v == p {
                    e = *x;
                    false
                } else {
                    true
                }
            })
            .copied()
            .collect();
        (Monomial(rest), e)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        match self.degree().cmp(&other.degree()) {
            Ordering::Equal => {}
            o => return o,
        }
        for (a, b) in self.0.iter().zip(other.0.iter()) {
            if a.0 != b.0 {
                // The monomial containing the smaller variable is larger.
                return if a.0 < b.0 {
                    Ordering::Greater
                } else {
                    Ordering::Less
                };
            }
            match a.1.cmp(&b.1) {
                Ordering::Equal => {}
                o => return o,
            }
        }
        self.0.len().cmp(&other.0.len())
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        for (k, (v, e)) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str("*")?;
            }
            if *e == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{e}")?;
            }
        }
        Ok(())
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Poly {
    terms: Vec<(Monomial, GaussRat)>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::constant(GaussRat::one())
    }

    pub fn constant(c: GaussRat) -> Self {
        Poly::term(Monomial::one(), c)
    }

    pub fn term(m: Monomial, c: GaussRat) -> Self {
        if c.is_zero() {
            Poly::zero()
        } else {
            Poly { terms: vec![(m, c)] }
        }
    }

    pub fn var(p: Param) -> Self {
        Poly::term(Monomial::var(p), GaussRat::one())
    }

    /// Build from arbitrary (possibly repeated) terms.
    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, GaussRat)>) -> Self {
        let mut acc: BTreeMap<Monomial, GaussRat> = BTreeMap::new();
        for (m, c) in terms {
            accumulate(&mut acc, m, c);
        }
        Poly::from_map(acc)
    }

    fn from_map(acc: BTreeMap<Monomial, GaussRat>) -> Self {
        Poly {
            terms: acc.into_iter().rev().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }

    pub fn terms(&self) -> &[(Monomial, GaussRat)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one() && self.terms[0].1.is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms[0].0.is_one())
    }

    pub fn as_constant(&self) -> Option<GaussRat> {
        match self.terms.as_slice() {
            [] => Some(GaussRat::zero()),
            [(m, c)] if m.is_one() => Some(c.clone()),
            _ => None,
        }
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Leading coefficient; zero for the zero polynomial.
    pub fn lc(&self) -> GaussRat {
        self.terms.first().map(|t| t.1.clone()).unwrap_or_else(GaussRat::zero)
    }

    pub fn lm(&self) -> Option<&Monomial> {
        self.terms.first().map(|t| &t.0)
    }

    pub fn vars(&self) -> Vec<Param> {
        let mut v: Vec<Param> = self.terms.iter().flat_map(|(m, _)| m.vars()).collect();
        v.sort();
        v.dedup();
        v
    }

    pub fn degree_in(&self, p: Param) -> u32 {
        self.terms.iter().map(|(m, _)| m.exponent(p)).max().unwrap_or(0)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.iter().map(|(m, _)| m.degree()).max().unwrap_or(0)
    }

    pub fn add(&self, other: &Poly) -> Poly {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (a, b) = (&self.terms, &other.terms);
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push(b[j].clone());
                    j += 1;
                }
                Ordering::Equal => {
                    let c = &a[i].1 + &b[j].1;
                    if !c.is_zero() {
                        out.push((a[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Poly { terms: out }
    }

    pub fn neg(&self) -> Poly {
        Poly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &GaussRat) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self.terms.iter().map(|(m, d)| (m.clone(), d * c)).collect(),
        }
    }

    pub fn mul_term(&self, m: &Monomial, c: &GaussRat) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        // Multiplying by a monomial preserves the order of terms.
        Poly {
            terms: self.terms.iter().map(|(n, d)| (n.mul(m), d * c)).collect(),
        }
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        if other.terms.len() == 1 {
            return self.mul_term(&other.terms[0].0, &other.terms[0].1);
        }
        if self.terms.len() == 1 {
            return other.mul_term(&self.terms[0].0, &self.terms[0].1);
        }
        let mut acc: BTreeMap<Monomial, GaussRat> = BTreeMap::new();
        for (m, c) in &self.terms {
            for (n, d) in &other.terms {
                accumulate(&mut acc, m.mul(n), c * d);
            }
        }
        Poly::from_map(acc)
    }

    pub fn pow(&self, mut e: u32) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Exact quotient `self / d`, or `None` when `d` does not divide `self`.
    pub fn div_exact(&self, d: &Poly) -> Option<Poly> {
        if d.is_zero() {
            return None;
        }
        if let Some(c) = d.as_constant() {
            return Some(self.scale(&c.inv()?));
        }
        let (lm, lc) = (&d.terms[0].0, &d.terms[0].1);
        let lc_inv = lc.inv()?;
        let mut r = self.clone();
        let mut q: Vec<(Monomial, GaussRat)> = Vec::new();
        while !r.is_zero() {
            let (rm, rc) = &r.terms[0];
            let t = rm.div(lm)?;
            let c = rc * &lc_inv;
            r = r.sub(&d.mul_term(&t, &c));
            q.push((t, c));
        }
        // Quotient terms are produced in decreasing order.
        Some(Poly { terms: q })
    }

    /// Divide by the leading coefficient so the result is monic.
    pub fn monic(&self) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let inv = self.lc().inv().expect("nonzero leading coefficient");
        self.scale(&inv)
    }

    /// Largest monomial dividing every term.
    pub fn monomial_content(&self) -> Monomial {
        let mut it = self.terms.iter();
        let Some((first, _)) = it.next() else {
            return Monomial::one();
        };
        let mut g = first.clone();
        for (m, _) in it {
            if g.is_one() {
                break;
            }
            g = g.gcd(m);
        }
        g
    }

    /// Coefficients of `self` viewed as a polynomial in `p`, indexed by degree.
    pub fn to_univariate(&self, p: Param) -> Vec<Poly> {
        let deg = self.degree_in(p) as usize;
        let mut buckets: Vec<Vec<(Monomial, GaussRat)>> = vec![Vec::new(); deg + 1];
        for (m, c) in &self.terms {
            let (rest, e) = m.split_off(p);
            buckets[e as usize].push((rest, c.clone()));
        }
        buckets.into_iter().map(Poly::from_terms).collect()
    }

    pub fn from_univariate(p: Param, coeffs: &[Poly]) -> Poly {
        let mut acc: BTreeMap<Monomial, GaussRat> = BTreeMap::new();
        for (e, c) in coeffs.iter().enumerate() {
            let mut pm = SmallVec::new();
            if e > 0 {
                pm.push((p, e as u32));
            }
            let pm = Monomial(pm);
            for (m, d) in &c.terms {
                accumulate(&mut acc, m.mul(&pm), d.clone());
            }
        }
        Poly::from_map(acc)
    }

    /// Formats as DSL-parsable text.
    pub fn fmt_dsl(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for (m, c) in &self.terms {
            // Complex coefficients print as a real term plus an imaginary term.
            let parts = [
                GaussRat::from_rational(c.re.clone()),
                GaussRat::new(num_traits::Zero::zero(), c.im.clone()),
            ];
            for part in parts.iter().filter(|p| !p.is_zero()) {
                let neg = part.leading_negative();
                let abs = if neg { -part } else { part.clone() };
                if first {
                    if neg {
                        f.write_str("-")?;
                    }
                } else {
                    f.write_str(if neg { " - " } else { " + " })?;
                }
                first = false;
                match (abs.is_one(), m.is_one()) {
                    (true, true) => f.write_str("1")?,
                    (true, false) => write!(f, "{m}")?,
                    (false, true) => write!(f, "{abs}")?,
                    (false, false) => write!(f, "{abs}*{m}")?,
                }
            }
        }
        Ok(())
    }
}

fn accumulate(acc: &mut BTreeMap<Monomial, GaussRat>, m: Monomial, c: GaussRat) {
    use std::collections::btree_map::Entry;
    match acc.entry(m) {
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

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_dsl(f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> Poly {
        Poly::var(Param::new("q"))
    }

    #[test]
    fn monomial_order_is_graded() {
        let q = Param::new("q");
        let h = Param::new("hbar");
        let q2 = Monomial::var(q).mul(&Monomial::var(q));
        let hq = Monomial::var(h).mul(&Monomial::var(q));
        assert!(q2 > Monomial::var(h));
        // hbar < q by name, so hbar*q > q^2 in lex tie-break.
        assert!(hq > q2);
    }

    #[test]
    fn exact_division() {
        let one = Poly::one();
        let a = q().sub(&one); // q - 1
        let b = q().add(&one); // q + 1
        let prod = a.mul(&b);
        assert_eq!(prod.div_exact(&a), Some(b.clone()));
        assert_eq!(prod.add(&one).div_exact(&a), None);
    }

    #[test]
    fn univariate_roundtrip() {
        let h = Poly::var(Param::new("hbar"));
        let p = q().mul(&q()).mul(&h).add(&h).add(&Poly::one());
        let coeffs = p.to_univariate(Param::new("q"));
        assert_eq!(coeffs.len(), 3);
        assert_eq!(Poly::from_univariate(Param::new("q"), &coeffs), p);
    }
}
