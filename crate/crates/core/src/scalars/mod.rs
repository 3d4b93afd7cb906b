//! Exact coefficients: rational functions over ℚ(i) in named parameters.
//!
//! A [`Scalar`] is a reduced fraction `num / den` whose denominator is monic
//! in the canonical monomial order, so equal values have identical
//! representations and `==` is structural.

mod gauss;
mod gcd;
mod poly;

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;

pub use gauss::GaussRat;
pub use gcd::gcd as poly_gcd;
pub use poly::{Monomial, Param, Poly};

use crate::error::{Error, Result};

/// Ordered list of distinct parameter symbols.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct ParamSet {
    names: Vec<Param>,
}

impl ParamSet {
    pub fn new<S: AsRef<str>>(names: impl IntoIterator<Item = S>) -> Result<Self> {
        let mut set = ParamSet::default();
        for n in names {
            set.push(n.as_ref())?;
        }
        Ok(set)
    }

    pub fn push(&mut self, name: &str) -> Result<Param> {
        if name == "i" {
            return Err(Error::InvalidPresentation(
                "`i` is the imaginary unit and cannot be a parameter".into(),
            ));
        }
        let p = Param::new(name);
        if self.names.contains(&p) {
            return Err(Error::InvalidPresentation(format!(
                "duplicate parameter `{name}`"
            )));
        }
        self.names.push(p);
        Ok(p)
    }

    pub fn contains(&self, name: &str) -> bool {
        self.names.iter().any(|p| p.name() == name)
    }

    pub fn get(&self, name: &str) -> Option<Param> {
        self.names.iter().copied().find(|p| p.name() == name)
    }

    pub fn iter(&self) -> impl Iterator<Item = Param> + '_ {
        self.names.iter().copied()
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Scalar {
    num: Poly,
    den: Poly,
}

impl Default for Scalar {
    fn default() -> Self {
        Scalar::zero()
    }
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar {
            num: Poly::zero(),
            den: Poly::one(),
        }
    }

    pub fn one() -> Self {
        Scalar::from_int(1)
    }

    pub fn i() -> Self {
        Scalar::from_gauss(GaussRat::i())
    }

    pub fn from_int(n: i64) -> Self {
        Scalar::from_gauss(GaussRat::from_int(n))
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        Scalar::from_gauss(GaussRat::from_ratio(num, den))
    }

    pub fn from_bigint(n: BigInt) -> Self {
        Scalar::from_gauss(GaussRat::from_rational(BigRational::from_integer(n)))
    }

    pub fn from_gauss(c: GaussRat) -> Self {
        Scalar {
            num: Poly::constant(c),
            den: Poly::one(),
        }
    }

    pub fn param(name: &str) -> Self {
        Scalar::from_poly(Poly::var(Param::new(name)))
    }

    pub fn from_poly(p: Poly) -> Self {
        Scalar {
            num: p,
            den: Poly::one(),
        }
    }

    /// Reduce `num / den`; fails when `den` is zero.
    pub fn from_fraction(num: Poly, den: Poly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Scalar::reduce(num, den))
    }

    fn reduce(num: Poly, den: Poly) -> Self {
        if num.is_zero() {
            return Scalar::zero();
        }
        if let Some(c) = den.as_constant() {
            let inv = c.inv().expect("nonzero denominator");
            return Scalar {
                num: num.scale(&inv),
                den: Poly::one(),
            };
        }
        let g = gcd::gcd(&num, &den);
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (
                num.div_exact(&g).expect("gcd divides numerator"),
                den.div_exact(&g).expect("gcd divides denominator"),
            )
        };
        let lc_inv = den.lc().inv().expect("nonzero denominator");
        Scalar {
            num: num.scale(&lc_inv),
            den: den.scale(&lc_inv),
        }
    }

    pub fn numer(&self) -> &Poly {
        &self.num
    }

    pub fn denom(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    /// The constant value when the scalar mentions no parameters.
    pub fn as_constant(&self) -> Option<GaussRat> {
        if self.den.is_one() {
            self.num.as_constant()
        } else {
            None
        }
    }

    /// The value as an ordinary rational, when it is parameter-free and real.
    pub fn as_rational(&self) -> Option<BigRational> {
        self.as_constant().filter(|c| c.is_real()).map(|c| c.re)
    }

    pub fn params(&self) -> Vec<Param> {
        let mut v = self.num.vars();
        v.extend(self.den.vars());
        v.sort();
        v.dedup();
        v
    }

    pub fn inv(&self) -> Result<Scalar> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Scalar::reduce(self.den.clone(), self.num.clone()))
    }

    pub fn checked_div(&self, rhs: &Scalar) -> Result<Scalar> {
        if rhs.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self * &rhs.inv()?)
    }

    pub fn pow(&self, e: i32) -> Result<Scalar> {
        if e < 0 {
            return self.inv()?.pow(-e);
        }
        let e = e as u32;
        Ok(Scalar {
            num: self.num.pow(e),
            den: self.den.pow(e),
        })
    }

    /// Replace parameters by scalars. The fraction is reduced before
    /// evaluation, so removable singularities never raise a pole.
    pub fn substitute(&self, bindings: &BTreeMap<Param, Scalar>) -> Result<Scalar> {
        if !self.params().iter().any(|p| bindings.contains_key(p)) {
            return Ok(self.clone());
        }
        let num = eval_poly(&self.num, bindings)?;
        let den = eval_poly(&self.den, bindings)?;
        if den.is_zero() {
            return Err(Error::Pole {
                denominator: self.den.to_string(),
            });
        }
        num.checked_div(&den)
    }

    /// Value of the reduced fraction at `param = value`; identical to
    /// [`Scalar::substitute`] with a single binding.
    pub fn limit_at(&self, param: Param, value: &Scalar) -> Result<Scalar> {
        let mut b = BTreeMap::new();
        b.insert(param, value.clone());
        self.substitute(&b)
    }

    /// Whether printing needs surrounding parentheses when used as a factor.
    pub(crate) fn is_atomic(&self) -> bool {
        self.den.is_one()
            && match self.num.terms() {
                [] => true,
                [(_, c)] => c.re == num_traits::Zero::zero() || c.im == num_traits::Zero::zero(),
                _ => false,
            }
    }
}

fn eval_poly(p: &Poly, bindings: &BTreeMap<Param, Scalar>) -> Result<Scalar> {
    let mut acc = Scalar::zero();
    for (m, c) in p.terms() {
        let mut t = Scalar::from_gauss(c.clone());
        for (v, e) in m.0.iter() {
            let factor = match bindings.get(v) {
                Some(s) => s.pow(*e as i32)?,
                None => Scalar::from_poly(Poly::var(*v)).pow(*e as i32)?,
            };
            t = &t * &factor;
        }
        acc = &acc + &t;
    }
    Ok(acc)
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            let num = self.num.add(&rhs.num);
            if self.den.is_one() {
                return Scalar {
                    num,
                    den: Poly::one(),
                };
            }
            return Scalar::reduce(num, self.den.clone());
        }
        let num = self.num.mul(&rhs.den).add(&rhs.num.mul(&self.den));
        Scalar::reduce(num, self.den.mul(&rhs.den))
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        self + &(-rhs)
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        if self.is_zero() || rhs.is_zero() {
            return Scalar::zero();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return Scalar {
                num: self.num.mul(&rhs.num),
                den: Poly::one(),
            };
        }
        // Both operands are reduced, so cross-cancellation suffices.
        let g1 = gcd::gcd(&self.num, &rhs.den);
        let g2 = gcd::gcd(&rhs.num, &self.den);
        let a = self.num.div_exact(&g1).expect("gcd divides");
        let d = rhs.den.div_exact(&g1).expect("gcd divides");
        let b = rhs.num.div_exact(&g2).expect("gcd divides");
        let c = self.den.div_exact(&g2).expect("gcd divides");
        let num = a.mul(&b);
        let den = c.mul(&d);
        let lc_inv = den.lc().inv().expect("nonzero denominator");
        Scalar {
            num: num.scale(&lc_inv),
            den: den.scale(&lc_inv),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &Scalar) -> Scalar {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_int(n)
    }
}

impl fmt::Display for Scalar {
    /// DSL syntax: `num` or `(num)/(den)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            let num = if self.num.len() == 1 && self.num.lc().is_real() {
                format!("{}", self.num)
            } else {
                format!("({})", self.num)
            };
            let den = self.den.to_string();
            if den.contains(['*', '/', '+', '-', ' ']) {
                write!(f, "{num}/({den})")
            } else {
                write!(f, "{num}/{den}")
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> Scalar {
        Scalar::param("q")
    }

    fn qinv() -> Scalar {
        q().inv().unwrap()
    }

    #[test]
    fn self_division_is_one() {
        let a = q() - qinv();
        assert!(a.checked_div(&a).unwrap().is_one());
    }

    #[test]
    fn quantum_two_over_quantum_one() {
        let q2 = &q() * &q();
        let num = &q2 - &q2.inv().unwrap();
        let den = q() - qinv();
        assert_eq!(num.checked_div(&den).unwrap(), q() + qinv());
    }

    #[test]
    fn i_hbar_squared() {
        let ih = Scalar::i() * Scalar::param("hbar");
        let hb = Scalar::param("hbar");
        assert_eq!(&ih * &ih, -(&hb * &hb));
    }

    #[test]
    fn division_by_zero() {
        assert_eq!(q().checked_div(&Scalar::zero()), Err(Error::DivisionByZero));
    }

    #[test]
    fn substitution_examples() {
        let qp = Param::new("q");
        let one = Scalar::one();
        let q2m1 = &(&q() * &q()) - &one;
        assert!(q2m1.limit_at(qp, &one).unwrap().is_zero());
        let pole = (q() - one.clone()).inv().unwrap();
        assert!(matches!(pole.limit_at(qp, &one), Err(Error::Pole { .. })));
        let removable = q2m1.checked_div(&(q() - one.clone())).unwrap();
        assert_eq!(removable.limit_at(qp, &one).unwrap(), Scalar::from_int(2));
    }

    #[test]
    fn limits_at_q_one() {
        let qp = Param::new("q");
        let one = Scalar::one();
        let q2 = &q() * &q();
        let r = (&q2 - &q2.inv().unwrap()).checked_div(&(q() - qinv())).unwrap();
        assert_eq!(r.limit_at(qp, &one).unwrap(), Scalar::from_int(2));
        let pole = (q() - qinv()).inv().unwrap();
        assert!(matches!(pole.limit_at(qp, &one), Err(Error::Pole { .. })));
    }

    #[test]
    fn hbar_cancellation_limit() {
        let hp = Param::new("hbar");
        let hb = Scalar::param("hbar");
        let lam_coeff = Scalar::from_ratio(3, 7) + Scalar::param("mu");
        let s = (Scalar::i() * hb.clone() * lam_coeff.clone()).checked_div(&hb).unwrap();
        assert_eq!(s.limit_at(hp, &Scalar::zero()).unwrap(), Scalar::i() * lam_coeff);
    }

    #[test]
    fn denominator_is_monic() {
        let s = Scalar::one().checked_div(&(Scalar::from_int(2) * q())).unwrap();
        assert!(s.denom().lc().is_one());
        assert_eq!(s.numer().as_constant().unwrap(), GaussRat::from_ratio(1, 2));
    }

    #[test]
    fn param_set_rejects_i_and_duplicates() {
        assert!(ParamSet::new(["i"]).is_err());
        assert!(ParamSet::new(["q", "q"]).is_err());
        assert_eq!(ParamSet::new(["q", "hbar"]).unwrap().len(), 2);
    }
}
