//! Multivariate polynomial gcd over ℚ(i).
//!
//! Recursive content / primitive-part splitting with a primitive
//! pseudo-remainder sequence in the main variable. Coefficient growth is
//! controlled by removing contents at every step, which is adequate for the
//! small, low-degree parameter polynomials this engine manipulates.

use super::poly::{Monomial, Param, Poly};

/// Monic gcd; `gcd(0, 0) = 0`.
pub fn gcd(a: &Poly, b: &Poly) -> Poly {
    if a.is_zero() {
        return b.monic();
    }
    if b.is_zero() {
        return a.monic();
    }
    if a.is_constant() || b.is_constant() {
        return Poly::one();
    }
    if a == b {
        return a.monic();
    }
    // Pull out monomial factors first; this settles the common case of a
    // monomial denominator such as q^k without any recursion.
    let (ma, mb) = (a.monomial_content(), b.monomial_content());
    let mg = ma.gcd(&mb);
    let ra = strip(a, &ma);
    let rb = strip(b, &mb);
    let g = if ra.len() == 1 || rb.len() == 1 {
        // One side is a pure monomial times a constant, so its only
        // divisors are monomials, which were already accounted for.
        Poly::one()
    } else {
        gcd_rec(&ra, &rb)
    };
    g.mul_term(&mg, &super::gauss::GaussRat::one()).monic()
}

fn strip(p: &Poly, m: &Monomial) -> Poly {
    if m.is_one() {
        return p.clone();
    }
    Poly::from_terms(
        p.terms()
            .iter()
            .map(|(n, c)| (n.div(m).expect("monomial content divides"), c.clone())),
    )
}

fn gcd_rec(a: &Poly, b: &Poly) -> Poly {
    if a.is_zero() {
        return b.monic();
    }
    if b.is_zero() {
        return a.monic();
    }
    if a.is_constant() || b.is_constant() {
        return Poly::one();
    }
    let va = a.vars();
    let vb = b.vars();
    // A variable present on one side only cannot occur in the gcd.
    if let Some(&v) = va.iter().find(|v| !vb.contains(v)) {
        return gcd_rec(&content(a, v), b);
    }
    if let Some(&v) = vb.iter().find(|v| !va.contains(v)) {
        return gcd_rec(a, &content(b, v));
    }
    let v = va[0];
    let ca = content(a, v);
    let cb = content(b, v);
    let pa = a.div_exact(&ca).expect("content divides");
    let pb = b.div_exact(&cb).expect("content divides");
    let gc = gcd_rec(&ca, &cb);
    let gp = primitive_prs(pa, pb, v);
    gc.mul(&gp).monic()
}

/// Gcd of the coefficients of `p` as a polynomial in `v`.
fn content(p: &Poly, v: Param) -> Poly {
    let coeffs = p.to_univariate(v);
    let mut g = Poly::zero();
    for c in coeffs.iter().filter(|c| !c.is_zero()) {
        g = gcd_rec(&g, c);
        if g.is_one() {
            break;
        }
    }
    g
}

fn primitive_part(p: &Poly, v: Param) -> Poly {
    if p.is_zero() {
        return Poly::zero();
    }
    let c = content(p, v);
    p.div_exact(&c).expect("content divides").monic()
}

/// Pseudo-remainder of `a` by `b` as polynomials in `v`.
fn prem(a: &[Poly], b: &[Poly]) -> Vec<Poly> {
    let mut r: Vec<Poly> = a.to_vec();
    let db = b.len() - 1;
    let lb = &b[db];
    while r.len() > db && !r.is_empty() {
        let dr = r.len() - 1;
        let lr = r[dr].clone();
        let shift = dr - db;
        for c in r.iter_mut() {
            *c = c.mul(lb);
        }
        for (k, bk) in b.iter().enumerate() {
            let t = lr.mul(bk);
            r[k + shift] = r[k + shift].sub(&t);
        }
        trim(&mut r);
    }
    r
}

fn trim(r: &mut Vec<Poly>) {
    while r.last().map(|c| c.is_zero()).unwrap_or(false) {
        r.pop();
    }
}

fn primitive_prs(a: Poly, b: Poly, v: Param) -> Poly {
    let (mut a, mut b) = if a.degree_in(v) >= b.degree_in(v) {
        (a, b)
    } else {
        (b, a)
    };
    loop {
        if b.is_zero() {
            return primitive_part(&a, v);
        }
        if b.degree_in(v) == 0 {
            // b is primitive in v, so a degree-0 b is a unit here.
            return Poly::one();
        }
        let r = prem(&a.to_univariate(v), &b.to_univariate(v));
        let r = Poly::from_univariate(v, &r);
        a = b;
        b = primitive_part(&r, v);
    }
}
