use std::time::Instant;

use super::factor::MatchedPair;
use super::group::FinGroup;
use crate::error::{Error, Result};
use crate::hopf::{basis_vec, FinHopf, SparseTensor, SparseVec};
use crate::report::CheckReport;
use crate::scalars::Scalar;

fn delta_label(l: &str) -> String {
    format!("δ{l}")
}

/// `k(G)`: functions on `G` in the basis `δ_g`.
pub fn function_hopf(g: &FinGroup) -> FinHopf {
    let n = g.order();
    let product = (0..n)
        .map(|a| (0..n).map(|b| if a == b { basis_vec(a) } else { SparseVec::new() }).collect())
        .collect();
    let mut coproduct = vec![SparseTensor::new(); n];
    for a in 0..n {
        for b in 0..n {
            coproduct[g.mul(a, b)].insert((a, b), Scalar::one());
        }
    }
    let unit = (0..n).map(|a| (a, Scalar::one())).collect();
    let counit = (0..n)
        .map(|a| if a == g.identity() { Scalar::one() } else { Scalar::zero() })
        .collect();
    let antipode = (0..n).map(|a| basis_vec(g.inv(a))).collect();
    FinHopf::new(
        &format!("k({})", g.name()),
        g.labels().iter().map(|l| delta_label(l)).collect(),
        product,
        coproduct,
        unit,
        counit,
        antipode,
    )
    .expect("well-formed structure constants")
}

/// `kG`: the group algebra with `Δg = g⊗g`.
pub fn group_hopf(g: &FinGroup) -> FinHopf {
    let n = g.order();
    let product = (0..n).map(|a| (0..n).map(|b| basis_vec(g.mul(a, b))).collect()).collect();
    let coproduct = (0..n).map(|a| SparseTensor::from([((a, a), Scalar::one())])).collect();
    FinHopf::new(
        &format!("k{}", g.name()),
        g.labels().to_vec(),
        product,
        coproduct,
        basis_vec(g.identity()),
        vec![Scalar::one(); n],
        (0..n).map(|a| basis_vec(g.inv(a))).collect(),
    )
    .expect("well-formed structure constants")
}

/// The bicrossproduct `k(M) ▶◁ kG` on the basis `δ_s⊗u`, index `s·|G| + u`:
///
/// * `(δ_s⊗u)(δ_t⊗v) = [s◁u = t] δ_s⊗uv`
/// * `Δ(δ_s⊗u) = Σ_{ab=s} δ_a⊗(b▷u) ⊗ δ_b⊗u`
/// * `ε(δ_s⊗u) = [s = e]`, `S(δ_s⊗u) = δ_{(s◁u)⁻¹}⊗(s▷u)⁻¹`
pub fn bicrossproduct(mp: &MatchedPair) -> Result<FinHopf> {
    let (ng, nm) = (mp.g_order(), mp.m_order());
    let n = ng * nm;
    let idx = |s: usize, u: usize| s * ng + u;
    let mut product = vec![vec![SparseVec::new(); n]; n];
    for s in 0..nm {
        for u in 0..ng {
            let t = mp.act_right(s, u);
            for v in 0..ng {
                product[idx(s, u)][idx(t, v)] = basis_vec(idx(s, mp.g_mul(u, v)));
            }
        }
    }
    let mut coproduct = vec![SparseTensor::new(); n];
    for a in 0..nm {
        for b in 0..nm {
            let s = mp.m_mul(a, b);
            for u in 0..ng {
                coproduct[idx(s, u)].insert((idx(a, mp.act_left(b, u)), idx(b, u)), Scalar::one());
            }
        }
    }
    let (eg, em) = (mp.g_identity(), mp.m_identity());
    let unit = (0..nm).map(|s| (idx(s, eg), Scalar::one())).collect();
    let counit = (0..n)
        .map(|k| if k / ng == em { Scalar::one() } else { Scalar::zero() })
        .collect();
    let antipode = (0..n)
        .map(|k| {
            let (s, u) = (k / ng, k % ng);
            basis_vec(idx(mp.m_inv(mp.act_right(s, u)), mp.g_inv(mp.act_left(s, u))))
        })
        .collect();
    let labels = (0..n)
        .map(|k| format!("{}⊗{}", delta_label(mp.m_label(k / ng)), mp.g_label(k % ng)))
        .collect();
    let f = &mp.factorisation;
    let h = FinHopf::new(
        &format!("bicross({}; |G|={}, |M|={})", f.x.name(), ng, nm),
        labels,
        product,
        coproduct,
        unit,
        counit,
        antipode,
    )?;
    if let Some(bad) = h.check_axioms().iter().find(|r| r.failed()) {
        return Err(Error::AxiomFailure(format!(
            "{} has {} violations",
            bad.check,
            bad.violations.len()
        )));
    }
    Ok(h)
}

/// `k(M) → E`, `δ_s ↦ δ_s⊗e`, in the basis of `function_hopf(M)` with `M` ordered as in the factorisation.
pub fn bicross_inclusion(mp: &MatchedPair) -> Vec<SparseVec> {
    let ng = mp.g_order();
    let eg = mp.g_identity();
    (0..mp.m_order()).map(|s| basis_vec(s * ng + eg)).collect()
}

/// `E → kG`, `δ_s⊗u ↦ [s = e] u`.
pub fn bicross_projection(mp: &MatchedPair) -> Vec<SparseVec> {
    let ng = mp.g_order();
    let em = mp.m_identity();
    (0..ng * mp.m_order())
        .map(|k| if k / ng == em { basis_vec(k % ng) } else { SparseVec::new() })
        .collect()
}

fn check_len(g: &FinGroup, f: &[Scalar]) -> Result<()> {
    if f.len() != g.order() {
        return Err(Error::DimensionMismatch {
            expected: g.order(),
            found: f.len(),
        });
    }
    Ok(())
}

/// `F(f) = Σ_g f(g) g`, as coefficients in the basis of `group_hopf(G)`.
pub fn fourier(g: &FinGroup, f: &[Scalar]) -> Result<SparseVec> {
    check_len(g, f)?;
    Ok(f.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(k, c)| (k, c.clone())).collect())
}

pub fn inverse_fourier(g: &FinGroup, v: &SparseVec) -> Result<Vec<Scalar>> {
    if let Some(&k) = v.keys().find(|&&k| k >= g.order()) {
        return Err(Error::DimensionMismatch {
            expected: g.order(),
            found: k + 1,
        });
    }
    Ok((0..g.order()).map(|k| v.get(&k).cloned().unwrap_or_else(Scalar::zero)).collect())
}

/// `(f⋆f')(x) = Σ_{ab=x} f(a) f'(b)`.
pub fn convolution(g: &FinGroup, f1: &[Scalar], f2: &[Scalar]) -> Result<Vec<Scalar>> {
    check_len(g, f1)?;
    check_len(g, f2)?;
    let mut out = vec![Scalar::zero(); g.order()];
    for (a, ca) in f1.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
        for (b, cb) in f2.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            let x = g.mul(a, b);
            out[x] = &out[x] + &(ca * cb);
        }
    }
    Ok(out)
}

/// `F(δ_a ⋆ δ_b) = F(δ_a)F(δ_b)` for every basis pair.
pub fn fourier_check(g: &FinGroup) -> CheckReport {
    let start = Instant::now();
    let kg = group_hopf(g);
    let n = g.order();
    let delta = |a: usize| {
        let mut v = vec![Scalar::zero(); n];
        v[a] = Scalar::one();
        v
    };
    let mut r = CheckReport::new(g.name(), "fourier", None);
    for a in 0..n {
        for b in 0..n {
            let lhs = fourier(g, &convolution(g, &delta(a), &delta(b)).expect("sizes")).expect("sizes");
            let rhs = kg.mul(&fourier(g, &delta(a)).expect("sizes"), &fourier(g, &delta(b)).expect("sizes"));
            if lhs != rhs {
                let mut diff = lhs;
                for (k, c) in rhs {
                    let s = match diff.get(&k) {
                        Some(d) => d - &c,
                        None => -c,
                    };
                    diff.insert(k, s);
                }
                r.word_violation(format!("δ{}⋆δ{}", g.label(a), g.label(b)), kg.show(&diff));
            }
        }
    }
    r.finish(start)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::{find_factorisations, matched_pair};
    use crate::hopf::{dual_findim, find_isomorphism, morphism_violations};

    #[test]
    fn c2_function_coproduct() {
        let g = FinGroup::builtin("C2").unwrap();
        let h = function_hopf(&g);
        let expected = SparseTensor::from([((0, 0), Scalar::one()), ((1, 1), Scalar::one())]);
        assert_eq!(h.coproduct(0), &expected);
        assert_eq!(h.show2(h.coproduct(0)), "δe|δe + δg|δg");
    }

    #[test]
    fn finite_hopf_axioms() {
        for name in ["C2", "C3", "C2xC2", "S3"] {
            let g = FinGroup::builtin(name).unwrap();
            for h in [function_hopf(&g), group_hopf(&g)] {
                for r in h.check_axioms() {
                    assert!(r.passed(), "{}: {}", h.name, r.check);
                }
            }
        }
    }

    #[test]
    fn group_algebra_dual() {
        let g = FinGroup::builtin("S3").unwrap();
        let d = dual_findim(&group_hopf(&g));
        assert!(find_isomorphism(&d, &function_hopf(&g)).is_some());
    }

    #[test]
    fn fourier_basics() {
        let g = FinGroup::builtin("S3").unwrap();
        let mut f = vec![Scalar::zero(); 6];
        f[g.identity()] = Scalar::one();
        assert_eq!(fourier(&g, &f).unwrap(), basis_vec(g.identity()));
        assert_eq!(inverse_fourier(&g, &fourier(&g, &f).unwrap()).unwrap(), f);
        assert!(fourier_check(&g).passed());
        assert!(fourier(&g, &f[..2]).is_err());
    }

    #[test]
    fn s3_bicrossproducts() {
        let g = FinGroup::builtin("S3").unwrap();
        for f in find_factorisations(&g).unwrap() {
            let mp = matched_pair(&f);
            let e = bicrossproduct(&mp).unwrap();
            let km = function_hopf(&f.m_group());
            let kg = group_hopf(&f.g_group());
            assert!(morphism_violations(&km, &e, &bicross_inclusion(&mp)).unwrap().is_empty());
            assert!(morphism_violations(&e, &kg, &bicross_projection(&mp)).unwrap().is_empty());
            let sw = bicrossproduct(&matched_pair(&f.swapped())).unwrap();
            assert!(find_isomorphism(&dual_findim(&e), &sw).is_some(), "{:?}", f.to_json());
        }
    }

    #[test]
    fn trivial_actions_give_tensor_product() {
        let g = FinGroup::builtin("C2xC2").unwrap();
        let f = find_factorisations(&g)
            .unwrap()
            .into_iter()
            .find(|f| f.g.len() == 2 && f.m.len() == 2)
            .unwrap();
        let mp = matched_pair(&f);
        assert!(mp.is_trivial());
        let e = bicrossproduct(&mp).unwrap();
        // Commutative and cocommutative once both actions are trivial.
        for i in 0..4 {
            for j in 0..4 {
                assert_eq!(e.product(i, j), e.product(j, i));
            }
            assert!(e.coproduct(i).iter().all(|((a, b), c)| e.coproduct(i).get(&(*b, *a)) == Some(c)));
        }
    }
}
