//! Named checks run against models, producing [`CheckReport`]s.

use std::time::Instant;

use crate::braided::{braided_hopf_check, dqua_check, ybe_report};
use crate::dsl::parse_element;
use crate::error::{Error, Result};
use crate::freealg::{overlap_confluence, Presentation};
use crate::groups::{
    bicross_inclusion, bicross_projection, bicrossproduct, fourier_check, function_hopf, group_hopf, matched_pair,
};
use crate::hopf::{dual_findim, duality_check, find_isomorphism, hopf_axioms, morphism_violations};
use crate::models::{heisenberg_flow, regime_report, Model, PlanckModel, Regime};
use crate::report::CheckReport;
use crate::scalars::Scalar;

/// Every check name accepted by [`run_suite`], in run order.
pub const CHECK_NAMES: [&str; 9] = [
    "hopf-axioms",
    "braided-hopf",
    "confluence",
    "ybe",
    "dqua",
    "duality",
    "fourier",
    "flow",
    "regime",
];

/// Expand `all` and validate names; order follows the request.
pub fn resolve_checks<S: AsRef<str>>(names: &[S]) -> Result<Vec<&'static str>> {
    let mut out: Vec<&'static str> = Vec::new();
    for n in names {
        let n = n.as_ref().trim();
        if n == "all" {
            for c in CHECK_NAMES {
                if !out.contains(&c) {
                    out.push(c);
                }
            }
            continue;
        }
        let c = CHECK_NAMES
            .iter()
            .find(|c| **c == n)
            .ok_or_else(|| Error::UnknownCheck(n.to_owned()))?;
        if !out.contains(c) {
            out.push(c);
        }
    }
    Ok(out)
}

/// Run the named checks; `degree` defaults to the model's own bound.
/// Checks that do not apply to the model are reported as skipped.
pub fn run_suite<S: AsRef<str>>(model: &Model, checks: &[S], degree: Option<u32>) -> Result<Vec<CheckReport>> {
    let checks = resolve_checks(checks)?;
    let d = degree.unwrap_or_else(|| model.default_degree());
    let mut out = Vec::new();
    for c in checks {
        out.extend(run_one(model, c, d)?);
    }
    Ok(out)
}

fn skip(model: &Model, check: &str, why: &str) -> Vec<CheckReport> {
    vec![CheckReport::skipped(model.name(), check, why)]
}

fn run_one(model: &Model, check: &str, d: u32) -> Result<Vec<CheckReport>> {
    match check {
        "hopf-axioms" => match model {
            Model::Finite { hopf, .. } => Ok(hopf.check_axioms()),
            _ => match model.hopf_spec() {
                Some(h) if h.is_braided() => Ok(skip(model, check, "braided model; see braided-hopf")),
                Some(h) => hopf_axioms(h, "hopf-axioms", d),
                None => Ok(skip(model, check, "no coproduct or counit declared")),
            },
        },
        "braided-hopf" => match model.hopf_spec() {
            Some(h) if h.is_braided() => braided_hopf_check(h, d),
            _ => Ok(skip(model, check, "no braiding declared")),
        },
        "confluence" => match model.presentation() {
            Some(p) => Ok(vec![confluence_report(model.name(), p, d)?]),
            None => Ok(skip(model, check, "finite basis; no rewriting system")),
        },
        "ybe" => match model {
            Model::Frt { r, .. } | Model::BraidedMatrices { r, .. } => Ok(vec![ybe_report(model.name(), r)]),
            _ => Ok(skip(model, check, "no R-matrix attached")),
        },
        "dqua" => match model {
            Model::Frt { frt, .. } => Ok(vec![dqua_check(model.name(), &frt.spec.algebra, &frt.bicharacter, d)?]),
            _ => Ok(skip(model, check, "no bicharacter attached")),
        },
        "duality" => match model {
            Model::Finite { hopf, matched_pair: mp, .. } => {
                let start = Instant::now();
                let dual = dual_findim(hopf);
                let mut rep = duality_check(hopf, &dual)?;
                if let Some(mp) = mp {
                    let f = &mp.factorisation;
                    let swapped = bicrossproduct(&matched_pair(&f.swapped()))?;
                    if find_isomorphism(&dual, &swapped).is_none() {
                        rep.word_violation("dual ≅ swapped bicrossproduct".into(), "no basis relabeling found".into());
                    }
                    let km = function_hopf(&f.m_group());
                    for v in morphism_violations(&km, hopf, &bicross_inclusion(mp))? {
                        rep.word_violation(format!("inclusion: {v}"), "not preserved".into());
                    }
                    let kg = group_hopf(&f.g_group());
                    for v in morphism_violations(hopf, &kg, &bicross_projection(mp))? {
                        rep.word_violation(format!("projection: {v}"), "not preserved".into());
                    }
                }
                Ok(vec![rep.finish(start)])
            }
            _ => Ok(skip(model, check, "not a finite-dimensional Hopf algebra")),
        },
        "fourier" => match model {
            Model::Finite { group: Some(g), .. } => Ok(vec![fourier_check(g)]),
            _ => Ok(skip(model, check, "no underlying finite group")),
        },
        "flow" => match model {
            Model::Planck(p) => Ok(vec![flow_report(p)?]),
            _ => Ok(skip(model, check, "Heisenberg flow is defined for planck1d")),
        },
        "regime" => match model {
            Model::Planck(_) => Ok(vec![regime_selftest(model.name())?]),
            _ => Ok(skip(model, check, "regime report is defined for planck1d")),
        },
        other => Err(Error::UnknownCheck(other.to_owned())),
    }
}

/// Raised to `2L - 1` (L the longest rule) so every pairwise overlap is inspected.
pub fn confluence_report(model: &str, p: &Presentation, degree: u32) -> Result<CheckReport> {
    let start = Instant::now();
    let longest = p.rules().iter().map(|r| r.lhs.len()).max().unwrap_or(0) as u32;
    let d = degree.max((2 * longest).saturating_sub(1));
    let c = overlap_confluence(p, d as usize)?;
    let mut rep = CheckReport::new(model, "confluence", Some(d))
        .with_note(format!("{} critical pairs checked", c.pairs_checked));
    for v in &c.violations {
        rep.word_violation(p.show_word(&v.word), p.show(&v.residual));
    }
    Ok(rep.finish(start))
}

/// Free fall `H = p²/2m` on `x`, and `H = p` on `x`, against their closed forms.
fn flow_report(m: &PlanckModel) -> Result<CheckReport> {
    let start = Instant::now();
    let a = m.algebra();
    let mut rep = CheckReport::new(&m.spec.name, "flow", None)
        .with_note("classical image: abelianize, then hbar -> 0; v_inf read as p/m");
    let x = m.gen("x")?;
    let cases = [
        (
            "H = p.p/(2*m), a = x",
            m.free_fall_hamiltonian()?,
            "(p.(1 - lam) + (1 - lam).p)/(2*m)",
            Some("p/m - lam.p/m"),
        ),
        ("H = p, a = x", m.gen("p")?, "1 - lam", None),
    ];
    for (label, h, quantum, classical) in cases {
        let f = heisenberg_flow(m, &h, &x)?;
        let want = a.normal_form(&parse_element(a, quantum)?)?;
        let res = &f.quantum - &want;
        if !res.is_zero() {
            rep.word_violation(format!("quantum flow, {label}"), a.show(&res));
        }
        if let Some(c) = classical {
            let res = &f.classical - &parse_element(a, c)?;
            if !res.is_zero() {
                rep.word_violation(format!("classical flow, {label}"), a.show(&res));
            }
        }
    }
    Ok(rep.finish(start))
}

/// The three regime labels on fixed inputs.
fn regime_selftest(model: &str) -> Result<CheckReport> {
    let start = Instant::now();
    let s = Scalar::from_int;
    let mut rep = CheckReport::new(model, "regime", None).with_note(crate::models::BLACK_HOLE_ANNOTATION);
    let cases = [
        ((4, 4, 1, 1), Regime::Gravitational),
        ((1, 1, 100, 1), Regime::Quantum),
        ((2, 3, 6, 1), Regime::Boundary),
    ];
    for ((m, mm, h, g), want) in cases {
        let r = regime_report(&s(m), &s(mm), &s(h), &s(g))?;
        if r.regime != want {
            rep.word_violation(format!("m={m}, M={mm}, hbar={h}, G={g}"), format!("{} instead of {want}", r.regime));
        }
    }
    Ok(rep.finish(start))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::braided::RMatrix;
    use crate::models::{lookup, qplane};

    #[test]
    fn unknown_check() {
        let m = lookup("fun_C2").unwrap();
        assert_eq!(run_suite(&m, &["nosuch"], None).unwrap_err(), Error::UnknownCheck("nosuch".into()));
    }

    #[test]
    fn all_expands() {
        assert_eq!(resolve_checks(&["all"]).unwrap().len(), 9);
        assert_eq!(resolve_checks(&["ybe", "all"]).unwrap()[0], "ybe");
    }

    #[test]
    fn finite_models_pass() {
        for name in ["fun_S3", "grp_S3", "bicross_S3"] {
            let m = lookup(name).unwrap();
            for r in run_suite(&m, &["all"], None).unwrap() {
                assert!(!r.failed(), "{}", r.to_text());
            }
        }
    }

    #[test]
    fn flip_braided_qplane_fails() {
        let q = qplane().unwrap();
        let flipped = q.clone().with_braiding(crate::braided::Braiding::flip(2)).unwrap();
        let reps = run_suite(&Model::Hopf(flipped), &["braided-hopf"], Some(2)).unwrap();
        let cop = reps.iter().find(|r| r.check == "braided-hopf:coproduct-relations").unwrap();
        assert!(cop.failed());
        assert_eq!(cop.violations[0].relation.as_deref(), Some("y.x -> q*x.y"));
        assert!(run_suite(&Model::Hopf(q), &["braided-hopf"], Some(2)).unwrap().iter().all(|r| !r.failed()));
    }

    #[test]
    fn identity_r_ybe() {
        assert!(ybe_report("id", &RMatrix::identity(2)).passed());
    }

    #[test]
    fn planck_flow_and_regime() {
        let m = lookup("planck1d").unwrap();
        for r in run_suite(&m, &["flow", "regime"], None).unwrap() {
            assert!(r.passed(), "{}", r.to_text());
        }
    }
}
