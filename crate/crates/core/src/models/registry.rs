use crate::braided::{braided_matrices, braiding_from_rmatrix, frt_bialgebra, FrtBialgebra, RMatrix};
use crate::dsl::{parse_document, Document, ModelDecl};
use crate::error::{Error, Result};
use crate::freealg::{Element, Presentation};
use crate::groups::{find_factorisations, function_hopf, group_hopf, matched_pair, bicrossproduct, FinGroup, MatchedPair};
use crate::hopf::{FinHopf, HopfSpec, TensorElement};
use crate::scalars::{ParamSet, Scalar};

use super::planck::{planck_model, PlanckModel};

pub(crate) const BICSO3_DSL: &str = include_str!("../../models/bicso3.dsl");
pub(crate) const QPLANE_DSL: &str = include_str!("../../models/qplane.dsl");
pub(crate) const FRT_SL2_DSL: &str = include_str!("../../models/frt_sl2.dsl");
pub(crate) const BRAIDED_MATRICES_SL2_DSL: &str = include_str!("../../models/braided_matrices_sl2.dsl");

/// Shipped model files as `(file name, contents)`.
pub const MODEL_FILES: [(&str, &str); 5] = [
    ("planck1d.dsl", super::planck::PLANCK_DSL),
    ("bicso3.dsl", BICSO3_DSL),
    ("qplane.dsl", QPLANE_DSL),
    ("frt_sl2.dsl", FRT_SL2_DSL),
    ("braided_matrices_sl2.dsl", BRAIDED_MATRICES_SL2_DSL),
];

/// Anything a check suite can run against.
#[derive(Clone, Debug)]
pub enum Model {
    Planck(PlanckModel),
    Hopf(HopfSpec),
    Frt { r: RMatrix, frt: FrtBialgebra },
    BraidedMatrices { r: RMatrix, spec: HopfSpec },
    Finite {
        hopf: FinHopf,
        group: Option<FinGroup>,
        matched_pair: Option<MatchedPair>,
    },
    Algebra(Presentation),
}

impl Model {
    pub fn name(&self) -> &str {
        match self {
            Model::Planck(p) => &p.spec.name,
            Model::Hopf(h) | Model::BraidedMatrices { spec: h, .. } => &h.name,
            Model::Frt { frt, .. } => &frt.spec.name,
            Model::Finite { hopf, .. } => &hopf.name,
            Model::Algebra(p) => p.name(),
        }
    }

    pub fn hopf_spec(&self) -> Option<&HopfSpec> {
        match self {
            Model::Planck(p) => Some(&p.spec),
            Model::Hopf(h) | Model::BraidedMatrices { spec: h, .. } => Some(h),
            Model::Frt { frt, .. } => Some(&frt.spec),
            Model::Finite { .. } | Model::Algebra(_) => None,
        }
    }

    pub fn presentation(&self) -> Option<&Presentation> {
        match self {
            Model::Algebra(p) => Some(p),
            _ => self.hopf_spec().map(|h| &h.algebra),
        }
    }

    /// Degree bound used when none is requested.
    pub fn default_degree(&self) -> u32 {
        match self {
            Model::Frt { .. } | Model::BraidedMatrices { .. } => 2,
            Model::Hopf(h) if h.is_braided() || h.name == "bicso3" => 3,
            _ => 4,
        }
    }

    pub fn set_budget(&mut self, budget: u64) {
        match self {
            Model::Planck(p) => p.spec.algebra.set_budget(budget),
            Model::Hopf(h) | Model::BraidedMatrices { spec: h, .. } => h.algebra.set_budget(budget),
            Model::Frt { frt, .. } => frt.spec.algebra.set_budget(budget),
            Model::Algebra(p) => p.set_budget(budget),
            Model::Finite { .. } => {}
        }
    }
}

fn hopf_from_dsl(src: &str, name: &str) -> Result<HopfSpec> {
    parse_document(src)?
        .model(name)
        .ok_or_else(|| Error::ConstructionFailure(format!("{name} block missing")))?
        .to_hopf()
}

pub fn bicso3_model() -> Result<HopfSpec> {
    hopf_from_dsl(BICSO3_DSL, "bicso3")
}

/// Quantum plane `yx = qxy` with additive coproduct and the braiding of the
/// standard `sl₂` R-matrix normalised by `q`.
pub fn qplane() -> Result<HopfSpec> {
    let params = ParamSet::new(["q"])?;
    let mut alg = Presentation::new("qplane", params, ["x", "y"])?;
    let q = Scalar::param("q");
    alg.add_rule(alg.word(&["y", "x"])?, Element::term(alg.word(&["x", "y"])?, q.clone()))?;
    let additive = |g: &str| -> Result<TensorElement> {
        let w = alg.word(&[g])?;
        let one = alg.word::<&str>(&[])?;
        Ok(TensorElement::from([((w.clone(), one.clone()), Scalar::one()), ((one, w), Scalar::one())]))
    };
    let cop = vec![additive("x")?, additive("y")?];
    let eps = vec![Scalar::zero(), Scalar::zero()];
    let s = vec![-alg.gen_elem("x")?, -alg.gen_elem("y")?];
    let psi = braiding_from_rmatrix(&RMatrix::sl2(), &q);
    HopfSpec::new("qplane", alg, cop, eps)?.with_braiding(psi)?.with_antipode(s)
}

fn renamed(mut spec: HopfSpec, name: &str) -> HopfSpec {
    spec.name = name.to_owned();
    spec.algebra = spec.algebra.with_name(name);
    spec
}

pub fn frt_sl2() -> Result<FrtBialgebra> {
    let mut f = frt_bialgebra(&RMatrix::sl2())?;
    f.spec = renamed(f.spec, "frt_sl2");
    Ok(f)
}

pub fn braided_matrices_sl2() -> Result<HopfSpec> {
    Ok(renamed(braided_matrices(&RMatrix::sl2())?, "braided_matrices_sl2"))
}

/// `k(M) ▶◁ kG` for the factorisation `S3 = C3·C2` with `C2 = ⟨(1 2)⟩`.
pub fn s3_bicrossproduct() -> Result<(FinHopf, MatchedPair)> {
    let s3 = FinGroup::builtin("S3")?;
    let t = s3.index_of("(1 2)").expect("transposition");
    let f = find_factorisations(&s3)?
        .into_iter()
        .find(|f| f.g.len() == 3 && f.m.contains(&t) && f.m.len() == 2)
        .ok_or_else(|| Error::ConstructionFailure("S3 = C3·C2 factorisation missing".into()))?;
    let mp = matched_pair(&f);
    let mut h = bicrossproduct(&mp)?;
    h.name = "bicross_S3".into();
    Ok((h, mp))
}

/// Names accepted by [`lookup`].
pub fn model_names() -> Vec<String> {
    let mut v: Vec<String> = ["planck1d", "bicso3", "qplane", "frt_sl2", "braided_matrices_sl2", "bicross_S3"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    for g in FinGroup::BUILTIN {
        v.push(format!("fun_{g}"));
        v.push(format!("grp_{g}"));
    }
    v
}

pub fn lookup(name: &str) -> Result<Model> {
    let finite = |g: &str, fun: bool| -> Result<Model> {
        let group = FinGroup::builtin(g)?;
        let mut hopf = if fun { function_hopf(&group) } else { group_hopf(&group) };
        hopf.name = name.to_owned();
        Ok(Model::Finite {
            hopf,
            group: Some(group),
            matched_pair: None,
        })
    };
    match name {
        "planck1d" => Ok(Model::Planck(planck_model()?)),
        "bicso3" => Ok(Model::Hopf(bicso3_model()?)),
        "qplane" => Ok(Model::Hopf(qplane()?)),
        "frt_sl2" => Ok(Model::Frt {
            r: RMatrix::sl2(),
            frt: frt_sl2()?,
        }),
        "braided_matrices_sl2" => Ok(Model::BraidedMatrices {
            r: RMatrix::sl2(),
            spec: braided_matrices_sl2()?,
        }),
        "bicross_S3" => {
            let (hopf, mp) = s3_bicrossproduct()?;
            Ok(Model::Finite {
                hopf,
                group: None,
                matched_pair: Some(mp),
            })
        }
        _ => {
            let unknown = || Error::UnknownModel(name.to_owned());
            if let Some(g) = name.strip_prefix("fun_") {
                FinGroup::BUILTIN.contains(&g).then(|| finite(g, true)).ok_or_else(unknown)?
            } else if let Some(g) = name.strip_prefix("grp_") {
                FinGroup::BUILTIN.contains(&g).then(|| finite(g, false)).ok_or_else(unknown)?
            } else {
                Err(unknown())
            }
        }
    }
}

/// Models declared in a DSL document; blocks without coproduct and counit are plain algebras.
/// A block identical to a built-in model picks up the built-in's attached data
/// (R-matrix, bicharacter, Planck helpers).
pub fn models_from_document(doc: &Document) -> Result<Vec<Model>> {
    doc.models
        .iter()
        .map(|m: &ModelDecl| {
            if m.coproduct.is_some() && m.counit.is_some() {
                let spec = m.to_hopf()?;
                if let Ok(builtin) = lookup(&spec.name) {
                    if builtin.hopf_spec() == Some(&spec) {
                        return Ok(builtin);
                    }
                }
                Ok(Model::Hopf(spec))
            } else {
                Ok(Model::Algebra(m.algebra.clone()))
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn registry_lookup() {
        assert!(matches!(lookup("qplane").unwrap(), Model::Hopf(_)));
        assert!(matches!(lookup("planck1d").unwrap(), Model::Planck(_)));
        assert_eq!(lookup("nosuch").unwrap_err(), Error::UnknownModel("nosuch".into()));
        assert!(lookup("fun_C7").is_err());
        for name in model_names() {
            if name != "bicso3" {
                assert_eq!(lookup(&name).unwrap().name(), name);
            }
        }
    }

    #[test]
    fn shipped_files_resolve_to_builtins() {
        for (file, src) in MODEL_FILES {
            let models = models_from_document(&parse_document(src).unwrap()).unwrap();
            assert_eq!(models.len(), 1, "{file}");
            let name = file.trim_end_matches(".dsl");
            assert_eq!(models[0].name(), name);
            assert!(!matches!(models[0], Model::Algebra(_)), "{file}");
            if name != "bicso3" {
                assert!(!matches!(models[0], Model::Hopf(_)) || name == "qplane", "{file}");
            }
        }
    }

    #[test]
    fn qplane_file_matches_construction() {
        assert_eq!(hopf_from_dsl(QPLANE_DSL, "qplane").unwrap(), qplane().unwrap());
    }
}
