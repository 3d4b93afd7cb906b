use super::braiding::Braiding;
use super::frt::{matrix_coalgebra, matrix_gens, params_of};
use super::linalg::{add_linear_relations, DenseMatrix};
use super::rmatrix::{ybe_check, RMatrix};
use crate::error::{Error, Result};
use crate::freealg::{Element, Gen, Presentation, Word};
use crate::hopf::{hopf_axioms, HopfSpec, TensorPower};
use crate::report::CheckReport;
use crate::scalars::Scalar;

/// `A ⊗ B` with cross relations `(1⊗b)(a⊗1) = Ψ(b⊗a)`; `Ψ` is keyed by
/// `(b, a)` and its images are `a'⊗b'` terms.
pub fn braided_tensor_algebra(a: &Presentation, b: &Presentation, psi: &Braiding) -> Result<Presentation> {
    Ok(TensorPower::braided(&[a, b], psi)?.presentation().clone())
}

/// Hopf checks of a braided Hopf algebra, coproduct landing in the braided tensor square.
pub fn braided_hopf_check(spec: &HopfSpec, max_degree: u32) -> Result<Vec<CheckReport>> {
    if !spec.is_braided() {
        return Err(Error::ConstructionFailure(format!("`{}` has no braiding", spec.name)));
    }
    hopf_axioms(spec, "braided-hopf", max_degree)
}

/// `R₂₁u₁Ru₂ = u₂R₂₁u₁R` on generators `u^i_j`, with `Δu = u⊗u` and the
/// braiding solved from `Ψ(u₁ ⊗ Ru₂) = Ru₂R⁻¹ ⊗ u₁R`.
pub fn braided_matrices(r: &RMatrix) -> Result<HopfSpec> {
    if !ybe_check(r) {
        return Err(Error::YbeFailure);
    }
    if !r.is_biinvertible() {
        return Err(Error::NotBiinvertible("the partial transpose of R is singular".into()));
    }
    let n = r.dim();
    // Entries are listed in reverse so that `u11` is the largest generator.
    let u = |i: usize, j: usize| (n * n - 1 - (i * n + j)) as Gen;
    let r21 = |i: usize, j: usize, k: usize, l: usize| r.get(j, i, l, k);
    let mut names = matrix_gens("u", n);
    names.reverse();
    let mut alg = Presentation::new("braided_matrices", params_of(r)?, &names)?;
    let mut rels = Vec::new();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                for l in 0..n {
                    let mut e = Element::zero();
                    for a in 0..n {
                        for b in 0..n {
                            for c in 0..n {
                                for f in 0..n {
                                    let x = r21(i, j, a, b) * r.get(c, b, k, f);
                                    e.add_term(Word::from_slice(&[u(a, c), u(f, l)]), x);
                                    let y = r21(i, a, b, c) * r.get(f, c, k, l);
                                    e.add_term(Word::from_slice(&[u(j, a), u(b, f)]), -y);
                                }
                            }
                        }
                    }
                    if !e.is_zero() {
                        rels.push(e);
                    }
                }
            }
        }
    }
    add_linear_relations(&mut alg, &rels)?;
    let psi = solve_braiding(r, u)?;
    let (cop, eps) = matrix_coalgebra(n, u);
    HopfSpec::new("braided_matrices", alg, cop, eps)?.with_braiding(psi)
}

/// For fixed `(i, l)` the unknowns `Ψ(u^i_a ⊗ u^d_l)` satisfy
/// `Σ_{a,d} R^{aj}_{kd} Ψ(u^i_a ⊗ u^d_l) = Σ R^{ij}_{cd}(R⁻¹)^{cf}_{ps}R^{es}_{kl} u^d_f ⊗ u^p_e`.
fn solve_braiding(r: &RMatrix, u: impl Fn(usize, usize) -> Gen) -> Result<Braiding> {
    let n = r.dim();
    let n2 = n * n;
    let mut m = DenseMatrix::zeros(n2, n2);
    for j in 0..n {
        for k in 0..n {
            for a in 0..n {
                for d in 0..n {
                    m.set(j * n + k, a * n + d, r.get(a, j, k, d).clone());
                }
            }
        }
    }
    let minv = m
        .inverse()
        .ok_or_else(|| Error::NotBiinvertible("the braiding system for B(R) is singular".into()))?;
    let pair = |d: usize, f: usize, p: usize, e: usize| (d * n + f) * n2 + p * n + e;
    let mut psi = Braiding::new();
    for i in 0..n {
        for l in 0..n {
            // rhs[(j,k)] as coefficients over generator pairs
            let mut rhs = vec![vec![Scalar::zero(); n2 * n2]; n2];
            for j in 0..n {
                for k in 0..n {
                    let row = &mut rhs[j * n + k];
                    for c in 0..n {
                        for d in 0..n {
                            let r1 = r.get(i, j, c, d);
                            if r1.is_zero() {
                                continue;
                            }
                            for f in 0..n {
                                for p in 0..n {
                                    for s in 0..n {
                                        let r2 = r.inv_get(c, f, p, s);
                                        if r2.is_zero() {
                                            continue;
                                        }
                                        for e in 0..n {
                                            let r3 = r.get(e, s, k, l);
                                            if !r3.is_zero() {
                                                let at = pair(d, f, p, e);
                                                row[at] = &row[at] + &(&(r1 * r2) * r3);
                                            }
                                        }
                                    }
                                }
                            }
                        }
                    }
                }
            }
            for a in 0..n {
                for d in 0..n {
                    let mut img = vec![Scalar::zero(); n2 * n2];
                    for (jk, row) in rhs.iter().enumerate() {
                        let w = minv.get(a * n + d, jk);
                        if w.is_zero() {
                            continue;
                        }
                        for (t, c) in row.iter().enumerate() {
                            if !c.is_zero() {
                                img[t] = &img[t] + &(w * c);
                            }
                        }
                    }
                    let terms = img
                        .into_iter()
                        .enumerate()
                        .filter(|(_, c)| !c.is_zero())
                        .map(|(t, c)| (u(t / n2 / n, t / n2 % n), u(t % n2 / n, t % n), c))
                        .collect();
                    psi.set(u(i, a), u(d, l), terms);
                }
            }
        }
    }
    Ok(psi)
}

/// Rules that are not of the form `ba -> ab`, shown as `lhs -> rhs`.
pub fn non_commutator_rules(p: &Presentation) -> Vec<String> {
    p.rules()
        .iter()
        .filter(|r| {
            let l = r.lhs.letters();
            !(l.len() == 2 && r.rhs == Element::from_word(Word::from_slice(&[l[1], l[0]])))
        })
        .map(|r| format!("{} -> {}", p.show_word(&r.lhs), p.show(&r.rhs)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::freealg::overlap_confluence;
    use crate::scalars::Param;
    use std::collections::BTreeMap;

    #[test]
    fn identity_gives_commutative_matrices() {
        let b = braided_matrices(&RMatrix::identity(2)).unwrap();
        assert!(b.braiding.as_ref().unwrap().is_flip());
        assert_eq!(b.algebra.rules().len(), 6);
        assert!(non_commutator_rules(&b.algebra).is_empty());
    }

    #[test]
    fn rejects_non_solutions() {
        let bad = RMatrix::sl2().perturbed(0, 1, 0, 1, &Scalar::one()).unwrap();
        assert_eq!(braided_matrices(&bad).unwrap_err(), Error::YbeFailure);
    }

    #[test]
    fn super_sign_cross_relations() {
        let p = Presentation::new("E", Default::default(), ["th"]).unwrap();
        let t = braided_tensor_algebra(&p, &p, &Braiding::super_sign(&[true])).unwrap();
        let r = &t.rules()[0];
        assert_eq!(t.show_word(&r.lhs), "th#2.th#1");
        assert_eq!(t.show(&r.rhs), "-th#1.th#2");
    }

    #[test]
    fn sl2_braided_matrices() {
        let b = braided_matrices(&RMatrix::sl2()).unwrap();
        assert_eq!(b.algebra.rules().len(), 6);
        assert!(overlap_confluence(&b.algebra, 3).unwrap().is_confluent());
        for rep in braided_hopf_check(&b, 2).unwrap() {
            assert!(!rep.failed(), "{}", rep.to_text());
        }
        let at1 = BTreeMap::from([(Param::new("q"), Scalar::one())]);
        let lim = b.substitute(&at1).unwrap();
        assert!(lim.braiding.as_ref().unwrap().is_flip());
        assert!(non_commutator_rules(&lim.algebra).is_empty());
        assert!(!non_commutator_rules(&b.algebra).is_empty());
    }
}
