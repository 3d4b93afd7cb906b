use std::collections::BTreeMap;
use std::fmt;

use num_rational::BigRational;
use serde::Serialize;
use serde_json::{json, Value};

use crate::dsl::parse_document;
use crate::error::{Error, Result};
use crate::freealg::{Element, Gen, Presentation, Word};
use crate::hopf::HopfSpec;
use crate::scalars::{Param, Scalar};

pub(crate) const PLANCK_DSL: &str = include_str!("../../models/planck1d.dsl");

/// One-dimensional Planck-scale model on `x, lam, laminv, p` over `hbar, mu, m`.
#[derive(Clone, Debug, PartialEq)]
pub struct PlanckModel {
    pub spec: HopfSpec,
}

pub fn planck_model() -> Result<PlanckModel> {
    let doc = parse_document(PLANCK_DSL)?;
    let decl = doc
        .model("planck1d")
        .ok_or_else(|| Error::ConstructionFailure("planck1d block missing".into()))?;
    let spec = decl.to_hopf()?;
    if spec.antipode.is_none() {
        return Err(Error::ConstructionFailure("planck1d antipode could not be solved".into()));
    }
    Ok(PlanckModel { spec })
}

impl PlanckModel {
    pub fn algebra(&self) -> &Presentation {
        &self.spec.algebra
    }

    /// Generator by name (`x`, `lam`, `laminv`, `p`).
    pub fn gen(&self, name: &str) -> Result<Element> {
        self.algebra().gen_elem(name)
    }

    pub fn commutator(&self, a: &Element, b: &Element) -> Result<Element> {
        self.algebra().commutator(a, b)
    }

    /// `p²/2m`.
    pub fn free_fall_hamiltonian(&self) -> Result<Element> {
        let p = self.gen("p")?;
        let two_m = &Scalar::from_int(2) * &Scalar::param("m");
        Ok(self.algebra().mul(&p, &p)?.scale(&two_m.inv()?))
    }
}

/// Quantum and classical time derivative of an observable.
#[derive(Clone, Debug, PartialEq)]
pub struct Flow {
    pub quantum: Element,
    pub classical: Element,
}

/// `quantum = NF((i/ħ)(Ha − aH))`; `classical` is its commutative image with `ħ ↦ 0`.
pub fn heisenberg_flow(model: &PlanckModel, h: &Element, a: &Element) -> Result<Flow> {
    let spec = &model.spec;
    let alg = &spec.algebra;
    let hbar = Scalar::param("hbar");
    let factor = &Scalar::i() * &hbar.inv()?;
    let quantum = alg.commutator(h, a)?.scale(&factor);
    let quantum = alg.normal_form(&quantum)?;
    let classical = classical_limit(spec, &quantum)?;
    Ok(Flow { quantum, classical })
}

/// The algebra with all generators commuting, keeping declared inverse pairs.
pub fn abelianization(spec: &HopfSpec) -> Result<Presentation> {
    let alg = &spec.algebra;
    let mut p = Presentation::new(&format!("{}_ab", alg.name()), alg.params().clone(), alg.gens())?;
    for (g, &w) in alg.weights().iter().enumerate() {
        if w != 1 {
            p.set_weight(alg.gen_name(g as Gen), w)?;
        }
    }
    let n = alg.num_gens() as Gen;
    for j in 0..n {
        for i in 0..j {
            p.add_rule(Word::from_slice(&[j, i]), Element::from_word(Word::from_slice(&[i, j])))?;
        }
    }
    for (a, b) in &spec.inverses {
        let single = |e: &Element| -> Option<Gen> {
            let mut t = e.terms();
            match (t.next(), t.next()) {
                (Some((w, c)), None) if w.len() == 1 && c.is_one() => Some(w.letters()[0]),
                _ => None,
            }
        };
        if let (Some(x), Some(y)) = (single(a), single(b)) {
            p.add_rule(Word::from_slice(&[x.min(y), x.max(y)]), Element::one())?;
        }
    }
    Ok(p)
}

/// Image under the abelianization map.
pub fn abelianize(spec: &HopfSpec, e: &Element) -> Result<Element> {
    abelianization(spec)?.normal_form(e)
}

/// Abelianize, then set `ħ = 0`.
pub fn classical_limit(spec: &HopfSpec, e: &Element) -> Result<Element> {
    let ab = abelianize(spec, e)?;
    let at0 = BTreeMap::from([(Param::new("hbar"), Scalar::zero())]);
    ab.substitute(&at0)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Regime {
    Gravitational,
    Quantum,
    Boundary,
}

impl fmt::Display for Regime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Regime::Gravitational => "gravitational",
            Regime::Quantum => "quantum",
            Regime::Boundary => "boundary",
        })
    }
}

/// Comparison of `mM` with the squared Planck mass `ħ/G`.
#[derive(Clone, Debug, PartialEq)]
pub struct RegimeReport {
    pub m: BigRational,
    pub big_m: BigRational,
    pub hbar: BigRational,
    pub g: BigRational,
    pub mass_product: BigRational,
    pub planck_mass_sq: BigRational,
    pub regime: Regime,
    pub annotation: String,
}

pub const BLACK_HOLE_ANNOTATION: &str = "black-hole comparison: xdot = -(1 - (1 + x/(2*M*G))^-1)";

pub fn regime_report(m: &Scalar, big_m: &Scalar, hbar: &Scalar, g: &Scalar) -> Result<RegimeReport> {
    let rat = |s: &Scalar, name: &str| {
        s.as_rational()
            .ok_or_else(|| Error::Usage(format!("{name} must be a rational number, got {s}")))
    };
    let (m, big_m, hbar, g) = (rat(m, "m")?, rat(big_m, "M")?, rat(hbar, "hbar")?, rat(g, "G")?);
    if g == BigRational::from_integer(0.into()) {
        return Err(Error::DivisionByZero);
    }
    let mass_product = &m * &big_m;
    let planck_mass_sq = &hbar / &g;
    let regime = match mass_product.cmp(&planck_mass_sq) {
        std::cmp::Ordering::Greater => Regime::Gravitational,
        std::cmp::Ordering::Less => Regime::Quantum,
        std::cmp::Ordering::Equal => Regime::Boundary,
    };
    Ok(RegimeReport {
        m,
        big_m,
        hbar,
        g,
        mass_product,
        planck_mass_sq,
        regime,
        annotation: BLACK_HOLE_ANNOTATION.into(),
    })
}

impl RegimeReport {
    pub fn to_json(&self) -> Value {
        json!({
            "m": self.m.to_string(),
            "M": self.big_m.to_string(),
            "hbar": self.hbar.to_string(),
            "G": self.g.to_string(),
            "mM": self.mass_product.to_string(),
            "planck_mass_squared": self.planck_mass_sq.to_string(),
            "regime": self.regime,
            "annotation": self.annotation,
        })
    }

    pub fn to_text(&self) -> String {
        format!(
            "mM = {}\nm_P^2 = hbar/G = {}\nregime: {}\n{}",
            self.mass_product, self.planck_mass_sq, self.regime, self.annotation
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dsl::parse_element;

    fn model() -> PlanckModel {
        planck_model().unwrap()
    }

    #[test]
    fn commutators() {
        let m = model();
        let a = m.algebra();
        let e = |s: &str| parse_element(a, s).unwrap();
        let nf = |s: &str| a.normal_form(&e(s)).unwrap();
        let g = |s: &str| m.gen(s).unwrap();
        assert_eq!(m.commutator(&g("x"), &g("p")).unwrap(), nf("i*hbar*(1 - lam)"));
        assert_eq!(m.commutator(&g("lam"), &g("p")).unwrap(), nf("-i*hbar*mu*lam.(1 - lam)"));
        assert_eq!(m.commutator(&g("laminv"), &g("p")).unwrap(), nf("i*hbar*mu*(laminv - 1)"));
    }

    #[test]
    fn antipode_matches_closed_form() {
        let m = model();
        let s = m.spec.antipode.as_ref().unwrap();
        let a = m.algebra();
        let nf = |s: &str| a.normal_form(&parse_element(a, s).unwrap()).unwrap();
        assert_eq!(s[0], nf("-x"));
        assert_eq!(s[1], nf("laminv"));
        assert_eq!(s[2], nf("lam"));
        assert_eq!(s[3], nf("-p.laminv"));
    }

    #[test]
    fn free_fall_flow() {
        let m = model();
        let a = m.algebra();
        let nf = |s: &str| a.normal_form(&parse_element(a, s).unwrap()).unwrap();
        let f = heisenberg_flow(&m, &m.free_fall_hamiltonian().unwrap(), &m.gen("x").unwrap()).unwrap();
        assert_eq!(f.quantum, nf("(p.(1 - lam) + (1 - lam).p)/(2*m)"));
        assert_eq!(f.classical, parse_element(a, "p/m - lam.p/m").unwrap());
        let f = heisenberg_flow(&m, &m.gen("p").unwrap(), &m.gen("x").unwrap()).unwrap();
        assert_eq!(f.quantum, nf("1 - lam"));
        let h = m.free_fall_hamiltonian().unwrap();
        assert!(heisenberg_flow(&m, &h, &h).unwrap().quantum.is_zero());
    }

    #[test]
    fn regimes() {
        let s = Scalar::from_int;
        assert_eq!(regime_report(&s(4), &s(4), &s(1), &s(1)).unwrap().regime, Regime::Gravitational);
        assert_eq!(regime_report(&s(1), &s(1), &s(100), &s(1)).unwrap().regime, Regime::Quantum);
        let r = regime_report(&s(2), &s(3), &s(12), &s(2)).unwrap();
        assert_eq!(r.regime, Regime::Boundary);
        assert!(r.to_text().contains("black-hole"));
        assert!(regime_report(&Scalar::param("q"), &s(1), &s(1), &s(1)).is_err());
        assert_eq!(regime_report(&s(1), &s(1), &s(1), &s(0)).unwrap_err(), Error::DivisionByZero);
    }
}
