use std::collections::BTreeMap;
use std::time::Instant;

use crate::error::{Error, Result};
use crate::freealg::format_linear;
use crate::report::CheckReport;
use crate::scalars::Scalar;

/// Sparse vector in a finite basis.
pub type SparseVec = BTreeMap<usize, Scalar>;
/// Sparse element of `H ⊗ H`.
pub type SparseTensor = BTreeMap<(usize, usize), Scalar>;

/// A finite-dimensional Hopf algebra given by structure constants on a basis.
#[derive(Clone, Debug, PartialEq)]
pub struct FinHopf {
    pub name: String,
    pub labels: Vec<String>,
    product: Vec<Vec<SparseVec>>,
    coproduct: Vec<SparseTensor>,
    unit: SparseVec,
    counit: Vec<Scalar>,
    antipode: Vec<SparseVec>,
}

pub(crate) fn add_to(v: &mut SparseVec, k: usize, c: Scalar) {
    if c.is_zero() {
        return;
    }
    let s = match v.get(&k) {
        Some(d) => d + &c,
        None => c,
    };
    if s.is_zero() {
        v.remove(&k);
    } else {
        v.insert(k, s);
    }
}

pub(crate) fn add_to2(v: &mut SparseTensor, k: (usize, usize), c: Scalar) {
    if c.is_zero() {
        return;
    }
    let s = match v.get(&k) {
        Some(d) => d + &c,
        None => c,
    };
    if s.is_zero() {
        v.remove(&k);
    } else {
        v.insert(k, s);
    }
}

pub fn basis_vec(i: usize) -> SparseVec {
    SparseVec::from([(i, Scalar::one())])
}

impl FinHopf {
    pub fn new(
        name: &str,
        labels: Vec<String>,
        product: Vec<Vec<SparseVec>>,
        coproduct: Vec<SparseTensor>,
        unit: SparseVec,
        counit: Vec<Scalar>,
        antipode: Vec<SparseVec>,
    ) -> Result<Self> {
        let n = labels.len();
        let mismatch = |found: usize| Error::DimensionMismatch { expected: n, found };
        for len in [product.len(), coproduct.len(), counit.len(), antipode.len()] {
            if len != n {
                return Err(mismatch(len));
            }
        }
        for row in &product {
            if row.len() != n {
                return Err(mismatch(row.len()));
            }
        }
        let in_range = |k: &usize| *k < n;
        let ok = product.iter().flatten().all(|v| v.keys().all(in_range))
            && coproduct.iter().all(|t| t.keys().all(|(a, b)| *a < n && *b < n))
            && unit.keys().all(in_range)
            && antipode.iter().all(|v| v.keys().all(in_range));
        if !ok {
            return Err(Error::ConstructionFailure("basis index out of range".into()));
        }
        let clean = |v: SparseVec| v.into_iter().filter(|(_, c)| !c.is_zero()).collect::<SparseVec>();
        Ok(FinHopf {
            name: name.to_owned(),
            labels,
            product: product.into_iter().map(|r| r.into_iter().map(clean).collect()).collect(),
            coproduct: coproduct
                .into_iter()
                .map(|t| t.into_iter().filter(|(_, c)| !c.is_zero()).collect())
                .collect(),
            unit: clean(unit),
            counit,
            antipode: antipode.into_iter().map(clean).collect(),
        })
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn product(&self, i: usize, j: usize) -> &SparseVec {
        &self.product[i][j]
    }

    pub fn coproduct(&self, i: usize) -> &SparseTensor {
        &self.coproduct[i]
    }

    pub fn unit(&self) -> &SparseVec {
        &self.unit
    }

    pub fn counit(&self, i: usize) -> &Scalar {
        &self.counit[i]
    }

    pub fn antipode(&self, i: usize) -> &SparseVec {
        &self.antipode[i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn mul(&self, a: &SparseVec, b: &SparseVec) -> SparseVec {
        let mut out = SparseVec::new();
        for (i, c) in a {
            for (j, d) in b {
                let cd = c * d;
                for (k, e) in &self.product[*i][*j] {
                    add_to(&mut out, *k, &cd * e);
                }
            }
        }
        out
    }

    pub fn delta(&self, a: &SparseVec) -> SparseTensor {
        let mut out = SparseTensor::new();
        for (i, c) in a {
            for (k, d) in &self.coproduct[*i] {
                add_to2(&mut out, *k, c * d);
            }
        }
        out
    }

    pub fn eps(&self, a: &SparseVec) -> Scalar {
        a.iter()
            .fold(Scalar::zero(), |acc, (i, c)| &acc + &(c * &self.counit[*i]))
    }

    pub fn s(&self, a: &SparseVec) -> SparseVec {
        let mut out = SparseVec::new();
        for (i, c) in a {
            for (k, d) in &self.antipode[*i] {
                add_to(&mut out, *k, c * d);
            }
        }
        out
    }

    /// Product in `H ⊗ H`.
    pub fn mul2(&self, a: &SparseTensor, b: &SparseTensor) -> SparseTensor {
        let mut out = SparseTensor::new();
        for ((a1, a2), c) in a {
            for ((b1, b2), d) in b {
                let cd = c * d;
                for (k1, e1) in &self.product[*a1][*b1] {
                    let ce = &cd * e1;
                    for (k2, e2) in &self.product[*a2][*b2] {
                        add_to2(&mut out, (*k1, *k2), &ce * e2);
                    }
                }
            }
        }
        out
    }

    pub fn show(&self, v: &SparseVec) -> String {
        format_linear(v.iter().map(|(i, c)| (self.labels[*i].clone(), c)))
    }

    pub fn show2(&self, t: &SparseTensor) -> String {
        format_linear(
            t.iter()
                .map(|((i, j), c)| (format!("{}|{}", self.labels[*i], self.labels[*j]), c)),
        )
    }

    /// Identical structure constants on the same basis order (labels ignored).
    pub fn same_structure(&self, other: &FinHopf) -> bool {
        self.product == other.product
            && self.coproduct == other.coproduct
            && self.unit == other.unit
            && self.counit == other.counit
            && self.antipode == other.antipode
    }

    /// The five Hopf axiom groups checked on all basis elements.
    pub fn check_axioms(&self) -> Vec<CheckReport> {
        let n = self.dim();
        let mut out = Vec::new();
        let e = basis_vec;

        let start = Instant::now();
        let mut r = CheckReport::new(&self.name, "hopf-axioms:algebra", None);
        for i in 0..n {
            for j in 0..n {
                let ij = &self.product[i][j];
                for k in 0..n {
                    let l = self.mul(ij, &e(k));
                    let rr = self.mul(&e(i), &self.product[j][k]);
                    if l != rr {
                        r.word_violation(
                            format!("({})({})({})", self.labels[i], self.labels[j], self.labels[k]),
                            self.show(&sub(&l, &rr)),
                        );
                    }
                }
            }
            for (side, v) in [("1*", self.mul(&self.unit, &e(i))), ("*1", self.mul(&e(i), &self.unit))] {
                if v != e(i) {
                    r.word_violation(format!("{}{side}", self.labels[i]), self.show(&sub(&v, &e(i))));
                }
            }
        }
        out.push(r.finish(start));

        let start = Instant::now();
        let mut r = CheckReport::new(&self.name, "hopf-axioms:coalgebra", None);
        for i in 0..n {
            let mut l: BTreeMap<(usize, usize, usize), Scalar> = BTreeMap::new();
            let mut rr = l.clone();
            let mut cl = SparseVec::new();
            let mut cr = SparseVec::new();
            for ((a, b), c) in &self.coproduct[i] {
                for ((a1, a2), d) in &self.coproduct[*a] {
                    add3(&mut l, (*a1, *a2, *b), c * d);
                }
                for ((b1, b2), d) in &self.coproduct[*b] {
                    add3(&mut rr, (*a, *b1, *b2), c * d);
                }
                add_to(&mut cl, *b, c * &self.counit[*a]);
                add_to(&mut cr, *a, c * &self.counit[*b]);
            }
            if l != rr {
                r.word_violation(format!("coassociativity at {}", self.labels[i]), String::from("nonzero"));
            }
            if cl != e(i) || cr != e(i) {
                r.word_violation(format!("counit at {}", self.labels[i]), self.show(&sub(&cl, &cr)));
            }
        }
        out.push(r.finish(start));

        let start = Instant::now();
        let mut r = CheckReport::new(&self.name, "hopf-axioms:coproduct-multiplicative", None);
        for i in 0..n {
            for j in 0..n {
                let l = self.delta(&self.product[i][j]);
                let rr = self.mul2(&self.coproduct[i], &self.coproduct[j]);
                if l != rr {
                    r.word_violation(format!("{}*{}", self.labels[i], self.labels[j]), self.show2(&sub2(&l, &rr)));
                }
            }
        }
        let mut one_one = SparseTensor::new();
        for (a, c) in &self.unit {
            for (b, d) in &self.unit {
                add_to2(&mut one_one, (*a, *b), c * d);
            }
        }
        if self.delta(&self.unit) != one_one {
            r.word_violation("1".into(), self.show2(&sub2(&self.delta(&self.unit), &one_one)));
        }
        out.push(r.finish(start));

        let start = Instant::now();
        let mut r = CheckReport::new(&self.name, "hopf-axioms:counit-multiplicative", None);
        for i in 0..n {
            for j in 0..n {
                let l = self.eps(&self.product[i][j]);
                let rr = &self.counit[i] * &self.counit[j];
                if l != rr {
                    r.word_violation(format!("{}*{}", self.labels[i], self.labels[j]), (&l - &rr).to_string());
                }
            }
        }
        let u = self.eps(&self.unit);
        if !u.is_one() {
            r.word_violation("1".into(), (&u - &Scalar::one()).to_string());
        }
        out.push(r.finish(start));

        let start = Instant::now();
        let mut r = CheckReport::new(&self.name, "hopf-axioms:antipode", None);
        for i in 0..n {
            let mut l = SparseVec::new();
            let mut rr = SparseVec::new();
            for ((a, b), c) in &self.coproduct[i] {
                for (k, d) in self.mul(&self.antipode[*a], &e(*b)) {
                    add_to(&mut l, k, c * &d);
                }
                for (k, d) in self.mul(&e(*a), &self.antipode[*b]) {
                    add_to(&mut rr, k, c * &d);
                }
            }
            let target: SparseVec = self
                .unit
                .iter()
                .map(|(k, c)| (*k, c * &self.counit[i]))
                .filter(|(_, c)| !c.is_zero())
                .collect();
            for side in [l, rr] {
                if side != target {
                    r.word_violation(self.labels[i].clone(), self.show(&sub(&side, &target)));
                }
            }
        }
        out.push(r.finish(start));
        out
    }
}

fn add3(m: &mut BTreeMap<(usize, usize, usize), Scalar>, k: (usize, usize, usize), c: Scalar) {
    if c.is_zero() {
        return;
    }
    let s = match m.get(&k) {
        Some(d) => d + &c,
        None => c,
    };
    if s.is_zero() {
        m.remove(&k);
    } else {
        m.insert(k, s);
    }
}

pub(crate) fn sub(a: &SparseVec, b: &SparseVec) -> SparseVec {
    let mut out = a.clone();
    for (k, c) in b {
        add_to(&mut out, *k, -c);
    }
    out
}

fn sub2(a: &SparseTensor, b: &SparseTensor) -> SparseTensor {
    let mut out = a.clone();
    for (k, c) in b {
        add_to2(&mut out, *k, -c);
    }
    out
}

/// The dual Hopf algebra on the dual basis `f_i`: structure maps transposed.
pub fn dual_findim(h: &FinHopf) -> FinHopf {
    let n = h.dim();
    let mut product = vec![vec![SparseVec::new(); n]; n];
    for (k, t) in h.coproduct.iter().enumerate() {
        for ((i, j), c) in t {
            add_to(&mut product[*i][*j], k, c.clone());
        }
    }
    let mut coproduct = vec![SparseTensor::new(); n];
    for i in 0..n {
        for j in 0..n {
            for (k, c) in &h.product[i][j] {
                add_to2(&mut coproduct[*k], (i, j), c.clone());
            }
        }
    }
    let unit: SparseVec = h
        .counit
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| (i, c.clone()))
        .collect();
    let counit = (0..n)
        .map(|i| h.unit.get(&i).cloned().unwrap_or_else(Scalar::zero))
        .collect();
    let mut antipode = vec![SparseVec::new(); n];
    for (i, img) in h.antipode.iter().enumerate() {
        for (j, c) in img {
            add_to(&mut antipode[*j], i, c.clone());
        }
    }
    FinHopf {
        name: format!("dual({})", h.name),
        labels: h.labels.iter().map(|l| format!("f[{l}]")).collect(),
        product,
        coproduct,
        unit,
        counit,
        antipode,
    }
}

/// `⟨f, a⟩ = Σ f_i a_i` for `a ∈ H` and `f ∈ H*` in the dual basis.
pub fn pairing_eval(h: &FinHopf, f: &SparseVec, a: &SparseVec) -> Result<Scalar> {
    let n = h.dim();
    if let Some(&k) = f.keys().chain(a.keys()).find(|&&k| k >= n) {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: k + 1,
        });
    }
    Ok(f.iter().fold(Scalar::zero(), |acc, (i, c)| match a.get(i) {
        Some(d) => &acc + &(c * d),
        None => acc,
    }))
}

/// Duality identities between `h` and `dual` checked on all basis pairs:
/// products against coproducts, units against counits, antipodes against each other.
pub fn duality_check(h: &FinHopf, dual: &FinHopf) -> Result<CheckReport> {
    let start = Instant::now();
    let n = h.dim();
    if dual.dim() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: dual.dim(),
        });
    }
    let e = basis_vec;
    let mut r = CheckReport::new(&h.name, "duality", None);
    let pair2 = |f: &SparseTensor, t: &SparseTensor| -> Scalar {
        f.iter().fold(Scalar::zero(), |acc, (k, c)| match t.get(k) {
            Some(d) => &acc + &(c * d),
            None => acc,
        })
    };
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                // ⟨f_k, e_i e_j⟩ = ⟨Δ f_k, e_i ⊗ e_j⟩
                let l = pairing_eval(h, &e(k), h.product(i, j))?;
                let rr = pair2(dual.coproduct(k), &SparseTensor::from([((i, j), Scalar::one())]));
                if l != rr {
                    r.word_violation(
                        format!("<Δf{k}, e{i}⊗e{j}>"),
                        (&l - &rr).to_string(),
                    );
                }
                // ⟨f_i f_j, e_k⟩ = ⟨f_i ⊗ f_j, Δ e_k⟩
                let l = pairing_eval(h, dual.product(i, j), &e(k))?;
                let rr = pair2(&SparseTensor::from([((i, j), Scalar::one())]), h.coproduct(k));
                if l != rr {
                    r.word_violation(format!("<f{i}f{j}, e{k}>"), (&l - &rr).to_string());
                }
            }
        }
        let checks = [
            (pairing_eval(h, dual.unit(), &e(i))?, h.counit(i).clone(), "unit"),
            (dual.counit(i).clone(), pairing_eval(h, &e(i), h.unit())?, "counit"),
        ];
        for (l, rr, what) in checks {
            if l != rr {
                r.word_violation(format!("{what} at {i}"), (&l - &rr).to_string());
            }
        }
        for j in 0..n {
            let l = pairing_eval(h, dual.antipode(j), &e(i))?;
            let rr = pairing_eval(h, &e(j), h.antipode(i))?;
            if l != rr {
                r.word_violation(format!("<Sf{j}, e{i}>"), (&l - &rr).to_string());
            }
        }
    }
    Ok(r.finish(start))
}

/// Hopf-algebra map given on basis elements; returns a description of each failure.
pub fn morphism_violations(a: &FinHopf, b: &FinHopf, f: &[SparseVec]) -> Result<Vec<String>> {
    if f.len() != a.dim() {
        return Err(Error::DimensionMismatch {
            expected: a.dim(),
            found: f.len(),
        });
    }
    let apply = |v: &SparseVec| -> SparseVec {
        let mut out = SparseVec::new();
        for (i, c) in v {
            for (k, d) in &f[*i] {
                add_to(&mut out, *k, c * d);
            }
        }
        out
    };
    let apply2 = |t: &SparseTensor| -> SparseTensor {
        let mut out = SparseTensor::new();
        for ((i, j), c) in t {
            for (k, d) in &f[*i] {
                for (l, g) in &f[*j] {
                    add_to2(&mut out, (*k, *l), &(c * d) * g);
                }
            }
        }
        out
    };
    let mut v = Vec::new();
    let n = a.dim();
    for i in 0..n {
        for j in 0..n {
            if apply(a.product(i, j)) != b.mul(&f[i], &f[j]) {
                v.push(format!("product {}*{}", a.labels[i], a.labels[j]));
            }
        }
        if apply2(a.coproduct(i)) != b.delta(&f[i]) {
            v.push(format!("coproduct {}", a.labels[i]));
        }
        if &b.eps(&f[i]) != a.counit(i) {
            v.push(format!("counit {}", a.labels[i]));
        }
        if apply(a.antipode(i)) != b.s(&f[i]) {
            v.push(format!("antipode {}", a.labels[i]));
        }
    }
    if apply(a.unit()) != *b.unit() {
        v.push("unit".into());
    }
    Ok(v)
}

/// Search for a basis permutation `π` with `e_i ↦ e'_{π(i)}` carrying every
/// structure constant of `a` onto `b`.
pub fn find_isomorphism(a: &FinHopf, b: &FinHopf) -> Option<Vec<usize>> {
    let n = a.dim();
    if b.dim() != n {
        return None;
    }
    let sa: Vec<String> = (0..n).map(|i| signature(a, i)).collect();
    let sb: Vec<String> = (0..n).map(|i| signature(b, i)).collect();
    let cands: Vec<Vec<usize>> = (0..n)
        .map(|i| (0..n).filter(|&j| sa[i] == sb[j]).collect())
        .collect();
    if cands.iter().any(Vec::is_empty) {
        return None;
    }
    let mut st = State {
        pi: vec![None; n],
        used: vec![false; n],
    };
    if search(a, b, &cands, &mut st) {
        let pi: Vec<usize> = st.pi.into_iter().map(Option::unwrap).collect();
        let f: Vec<SparseVec> = pi.iter().map(|&j| basis_vec(j)).collect();
        if morphism_violations(a, b, &f).ok()?.is_empty() {
            return Some(pi);
        }
    }
    None
}

#[derive(Clone)]
struct State {
    pi: Vec<Option<usize>>,
    used: Vec<bool>,
}

fn signature(h: &FinHopf, i: usize) -> String {
    let n = h.dim();
    let left = (0..n).filter(|&j| !h.product(i, j).is_empty()).count();
    let right = (0..n).filter(|&j| !h.product(j, i).is_empty()).count();
    let sq = h.product(i, i);
    let sq_sig = match sq.len() {
        0 => "0".to_string(),
        1 if sq.contains_key(&i) => format!("self:{}", sq[&i]),
        k => format!("other{k}"),
    };
    let s = h.antipode(i);
    let s_sig = if s.len() == 1 && s.contains_key(&i) {
        format!("self:{}", s[&i])
    } else {
        format!("other{}", s.len())
    };
    format!(
        "{}|{}|{left}|{right}|{sq_sig}|{}|{s_sig}",
        h.counit(i),
        h.unit().get(&i).map(|c| c.to_string()).unwrap_or_default(),
        h.coproduct(i).len()
    )
}

fn search(a: &FinHopf, b: &FinHopf, cands: &[Vec<usize>], st: &mut State) -> bool {
    let next = (0..a.dim())
        .filter(|&i| st.pi[i].is_none())
        .min_by_key(|&i| cands[i].iter().filter(|&&j| !st.used[j]).count());
    let Some(i) = next else {
        return true;
    };
    for &j in &cands[i] {
        if st.used[j] {
            continue;
        }
        let saved = st.clone();
        if assign(a, b, cands, st, i, j) && search(a, b, cands, st) {
            return true;
        }
        *st = saved;
    }
    false
}

fn assign(a: &FinHopf, b: &FinHopf, cands: &[Vec<usize>], st: &mut State, i0: usize, j0: usize) -> bool {
    let mut queue = vec![(i0, j0)];
    while let Some((i, j)) = queue.pop() {
        match st.pi[i] {
            Some(k) if k == j => continue,
            Some(_) => return false,
            None => {}
        }
        if st.used[j] || !cands[i].contains(&j) {
            return false;
        }
        st.pi[i] = Some(j);
        st.used[j] = true;
        let assigned: Vec<usize> = (0..a.dim()).filter(|&k| st.pi[k].is_some()).collect();
        for &k in &assigned {
            let pk = st.pi[k].unwrap();
            for (x, y, px, py) in [(i, k, j, pk), (k, i, pk, j)] {
                let pa = a.product(x, y);
                let pb = b.product(px, py);
                if pa.len() != pb.len() {
                    return false;
                }
                if pa.len() == 1 {
                    let (m, c) = pa.iter().next().unwrap();
                    let (mb, cb) = pb.iter().next().unwrap();
                    if c != cb {
                        return false;
                    }
                    queue.push((*m, *mb));
                } else {
                    for (m, c) in pa {
                        if let Some(pm) = st.pi[*m] {
                            if pb.get(&pm) != Some(c) {
                                return false;
                            }
                        }
                    }
                }
            }
        }
        for &k in &assigned {
            let pk = st.pi[k].unwrap();
            for ((x, y), c) in a.coproduct(k) {
                if let (Some(px), Some(py)) = (st.pi[*x], st.pi[*y]) {
                    if b.coproduct(pk).get(&(px, py)) != Some(c) {
                        return false;
                    }
                }
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    /// k[Z2] with basis 1, g.
    fn kz2() -> FinHopf {
        let one = Scalar::one();
        let product = vec![
            vec![basis_vec(0), basis_vec(1)],
            vec![basis_vec(1), basis_vec(0)],
        ];
        let coproduct = vec![
            SparseTensor::from([((0, 0), one.clone())]),
            SparseTensor::from([((1, 1), one.clone())]),
        ];
        FinHopf::new(
            "kZ2",
            vec!["e".into(), "g".into()],
            product,
            coproduct,
            basis_vec(0),
            vec![one.clone(), one],
            vec![basis_vec(0), basis_vec(1)],
        )
        .unwrap()
    }

    #[test]
    fn group_algebra_axioms() {
        for r in kz2().check_axioms() {
            assert!(r.passed(), "{}", r.to_text());
        }
    }

    #[test]
    fn dual_axioms_and_double_dual() {
        let h = kz2();
        let d = dual_findim(&h);
        for r in d.check_axioms() {
            assert!(r.passed(), "{}", r.to_text());
        }
        assert!(dual_findim(&d).same_structure(&h));
        assert!(duality_check(&h, &d).unwrap().passed());
    }

    #[test]
    fn broken_antipode_detected() {
        let mut h = kz2();
        h.antipode[1] = SparseVec::from([(1, Scalar::from_int(2))]);
        let reports = h.check_axioms();
        assert!(reports.iter().find(|r| r.check.ends_with("antipode")).unwrap().failed());
    }

    #[test]
    fn pairing_dimension_checked() {
        let h = kz2();
        assert!(matches!(
            pairing_eval(&h, &basis_vec(5), &basis_vec(0)),
            Err(Error::DimensionMismatch { .. })
        ));
        assert_eq!(pairing_eval(&h, &basis_vec(1), &basis_vec(1)).unwrap(), Scalar::one());
    }

    #[test]
    fn isomorphism_to_self() {
        let h = kz2();
        assert_eq!(find_isomorphism(&h, &h), Some(vec![0, 1]));
    }
}
