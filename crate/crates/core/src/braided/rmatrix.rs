use std::collections::BTreeMap;
use std::time::Instant;

use serde_json::Value;

use super::braiding::Braiding;
use super::linalg::DenseMatrix;
use crate::dsl::{lex, parse_scalar, Tok};
use crate::error::{Error, Result};
use crate::freealg::Gen;
use crate::report::CheckReport;
use crate::scalars::{Param, ParamSet, Scalar};

/// An invertible operator on `V⊗V` with `dim V = n`.
///
/// `R(e_k⊗e_l) = Σ R^{ij}_{kl} e_i⊗e_j`; as an `n²×n²` matrix the entry
/// `R^{ij}_{kl}` sits in row `i·n + j`, column `k·n + l`.
#[derive(Clone, Debug, PartialEq)]
pub struct RMatrix {
    n: usize,
    entries: Vec<Scalar>,
    inverse: DenseMatrix,
}

impl RMatrix {
    /// Row-major `n²×n²` entries; fails if the matrix is singular.
    pub fn new(n: usize, entries: Vec<Scalar>) -> Result<Self> {
        let n4 = n.pow(4);
        if n == 0 || entries.len() != n4 {
            return Err(Error::DimensionMismatch {
                expected: n4.max(1),
                found: entries.len(),
            });
        }
        let mut m = DenseMatrix::zeros(n * n, n * n);
        for (k, c) in entries.iter().enumerate() {
            m.set(k / (n * n), k % (n * n), c.clone());
        }
        let inverse = m
            .inverse()
            .ok_or_else(|| Error::ConstructionFailure("R-matrix is singular".into()))?;
        Ok(RMatrix { n, entries, inverse })
    }

    pub fn from_fn(n: usize, f: impl Fn(usize, usize, usize, usize) -> Scalar) -> Result<Self> {
        let mut e = Vec::with_capacity(n.pow(4));
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    for l in 0..n {
                        e.push(f(i, j, k, l));
                    }
                }
            }
        }
        RMatrix::new(n, e)
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, |i, j, k, l| delta(i == k && j == l)).expect("invertible")
    }

    /// `e_k⊗e_l ↦ e_l⊗e_k`.
    pub fn flip(n: usize) -> Self {
        Self::from_fn(n, |i, j, k, l| delta(i == l && j == k)).expect("invertible")
    }

    /// The standard `sl₂` solution in the parameter `q`: diagonal `q, 1, 1, q`
    /// with `R^{21}_{12} = q − q⁻¹`.
    pub fn sl2() -> Self {
        Self::sl2_at(&Scalar::param("q")).expect("invertible for generic q")
    }

    pub fn sl2_at(q: &Scalar) -> Result<Self> {
        let qinv = q.inv()?;
        let off = q - &qinv;
        let mut e = vec![Scalar::zero(); 16];
        e[0] = q.clone();
        e[5] = Scalar::one();
        e[2 * 4 + 1] = off;
        e[10] = Scalar::one();
        e[15] = q.clone();
        RMatrix::new(2, e)
    }

    /// JSON input: an `n²×n²` array of scalars (numbers or strings), or an
    /// object `{"params": [...], "matrix": [[...]]}`. Without `params`,
    /// identifiers in the entries other than `i` are taken as parameters.
    pub fn from_json(text: &str) -> Result<Self> {
        let v: Value = serde_json::from_str(text).map_err(|e| Error::Usage(format!("invalid R-matrix JSON: {e}")))?;
        let (rows, declared) = match &v {
            Value::Array(rows) => (rows.clone(), None),
            Value::Object(o) => {
                let rows = o
                    .get("matrix")
                    .and_then(Value::as_array)
                    .ok_or_else(|| Error::Usage("R-matrix JSON needs a `matrix` array".into()))?
                    .clone();
                let params = o
                    .get("params")
                    .and_then(Value::as_array)
                    .map(|ps| ps.iter().filter_map(Value::as_str).map(str::to_owned).collect::<Vec<_>>());
                (rows, params)
            }
            _ => return Err(Error::Usage("R-matrix JSON must be an array or object".into())),
        };
        let cells: Vec<String> = rows
            .iter()
            .map(|r| r.as_array().cloned().ok_or_else(|| Error::Usage("R-matrix rows must be arrays".into())))
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .flat_map(|r| r.into_iter())
            .map(|c| match c {
                Value::String(s) => Ok(s),
                Value::Number(n) => Ok(n.to_string()),
                _ => Err(Error::Usage("R-matrix entries must be numbers or strings".into())),
            })
            .collect::<Result<_>>()?;
        let params = match declared {
            Some(p) => ParamSet::new(p)?,
            None => {
                let mut ps = ParamSet::default();
                for c in &cells {
                    for (t, _) in lex(c)? {
                        if let Tok::Ident(name) = t {
                            if name != "i" && !ps.contains(&name) {
                                ps.push(&name)?;
                            }
                        }
                    }
                }
                ps
            }
        };
        let n2 = rows.len();
        let n = (n2 as f64).sqrt().round() as usize;
        if n * n != n2 || cells.len() != n2 * n2 {
            return Err(Error::DimensionMismatch {
                expected: n2 * n2,
                found: cells.len(),
            });
        }
        let entries = cells.iter().map(|c| parse_scalar(&params, c)).collect::<Result<_>>()?;
        RMatrix::new(n, entries)
    }

    pub fn to_json(&self) -> Value {
        let n2 = self.n * self.n;
        Value::Array(
            (0..n2)
                .map(|r| Value::Array((0..n2).map(|c| Value::String(self.entries[r * n2 + c].to_string())).collect()))
                .collect(),
        )
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    /// `R^{ij}_{kl}`.
    pub fn get(&self, i: usize, j: usize, k: usize, l: usize) -> &Scalar {
        let n = self.n;
        &self.entries[(i * n + j) * n * n + k * n + l]
    }

    /// `(R⁻¹)^{ij}_{kl}`.
    pub fn inv_get(&self, i: usize, j: usize, k: usize, l: usize) -> &Scalar {
        let n = self.n;
        self.inverse.get(i * n + j, k * n + l)
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.entries
    }

    pub fn matrix(&self) -> DenseMatrix {
        let n2 = self.n * self.n;
        let mut m = DenseMatrix::zeros(n2, n2);
        for (k, c) in self.entries.iter().enumerate() {
            m.set(k / n2, k % n2, c.clone());
        }
        m
    }

    /// Transpose in the second tensor factor: `(R^{t₂})^{ij}_{kl} = R^{il}_{kj}`.
    pub fn partial_transpose(&self) -> DenseMatrix {
        let n = self.n;
        let mut m = DenseMatrix::zeros(n * n, n * n);
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    for l in 0..n {
                        m.set(i * n + j, k * n + l, self.get(i, l, k, j).clone());
                    }
                }
            }
        }
        m
    }

    /// Both `R` and its partial transpose are invertible.
    pub fn is_biinvertible(&self) -> bool {
        self.partial_transpose().inverse().is_some()
    }

    /// Copy with one entry shifted by `delta`.
    pub fn perturbed(&self, i: usize, j: usize, k: usize, l: usize, delta: &Scalar) -> Result<RMatrix> {
        let n = self.n;
        let mut e = self.entries.clone();
        let at = (i * n + j) * n * n + k * n + l;
        e[at] = &e[at] + delta;
        RMatrix::new(n, e)
    }

    pub fn substitute(&self, bindings: &BTreeMap<Param, Scalar>) -> Result<RMatrix> {
        let e = self.entries.iter().map(|c| c.substitute(bindings)).collect::<Result<_>>()?;
        RMatrix::new(self.n, e)
    }

    pub fn params(&self) -> Vec<Param> {
        let mut ps: Vec<Param> = self.entries.iter().flat_map(|c| c.params()).collect();
        ps.sort();
        ps.dedup();
        ps
    }
}

fn delta(b: bool) -> Scalar {
    if b {
        Scalar::one()
    } else {
        Scalar::zero()
    }
}

/// Act with `R` on tensor slots `(s, t)`, `s < t`, of a vector in `V^{⊗3}`.
fn act(r: &RMatrix, s: usize, t: usize, v: &[Scalar]) -> Vec<Scalar> {
    let n = r.n;
    let mut out = vec![Scalar::zero(); n * n * n];
    for (idx, c) in v.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let digits = [idx / (n * n), (idx / n) % n, idx % n];
        for a in 0..n {
            for b in 0..n {
                let rc = r.get(a, b, digits[s], digits[t]);
                if rc.is_zero() {
                    continue;
                }
                let mut d = digits;
                d[s] = a;
                d[t] = b;
                let k = (d[0] * n + d[1]) * n + d[2];
                out[k] = &out[k] + &(rc * c);
            }
        }
    }
    out
}

/// Entries where `R₁₂R₁₃R₂₃` and `R₂₃R₁₃R₁₂` differ, as `(row, column, difference)`
/// in the basis `e_a⊗e_b⊗e_c ↦ (a·n + b)·n + c`.
pub fn ybe_violations(r: &RMatrix) -> Vec<(usize, usize, Scalar)> {
    let n3 = r.n.pow(3);
    let mut out = Vec::new();
    for col in 0..n3 {
        let mut e = vec![Scalar::zero(); n3];
        e[col] = Scalar::one();
        let lhs = act(r, 0, 1, &act(r, 0, 2, &act(r, 1, 2, &e)));
        let rhs = act(r, 1, 2, &act(r, 0, 2, &act(r, 0, 1, &e)));
        for row in 0..n3 {
            let d = &lhs[row] - &rhs[row];
            if !d.is_zero() {
                out.push((row, col, d));
            }
        }
    }
    out
}

/// Exact test of `R₁₂R₁₃R₂₃ = R₂₃R₁₃R₁₂`.
pub fn ybe_check(r: &RMatrix) -> bool {
    ybe_violations(r).is_empty()
}

pub fn ybe_report(name: &str, r: &RMatrix) -> CheckReport {
    let start = Instant::now();
    let mut rep = CheckReport::new(name, "ybe", None);
    for (row, col, d) in ybe_violations(r) {
        rep.word_violation(format!("(R12R13R23 - R23R13R12)[{row},{col}]"), d.to_string());
    }
    rep.finish(start)
}

/// `Ψ(x_i⊗x_j) = λ Σ R^{ij}_{lk} x_k⊗x_l` on the generators of a vector algebra.
pub fn braiding_from_rmatrix(r: &RMatrix, normalization: &Scalar) -> Braiding {
    let n = r.n;
    let mut psi = Braiding::new();
    for i in 0..n {
        for j in 0..n {
            let mut img = Vec::new();
            for k in 0..n {
                for l in 0..n {
                    let c = r.get(i, j, l, k);
                    if !c.is_zero() {
                        img.push((k as Gen, l as Gen, normalization * c));
                    }
                }
            }
            psi.set(i as Gen, j as Gen, img);
        }
    }
    psi
}
