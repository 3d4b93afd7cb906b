use std::collections::BTreeSet;

use crate::error::Result;
use crate::freealg::{Element, Presentation, Word};
use crate::scalars::Scalar;

/// Dense matrix over the scalar field.
#[derive(Clone, Debug, PartialEq)]
pub struct DenseMatrix {
    pub rows: usize,
    pub cols: usize,
    data: Vec<Scalar>,
}

impl DenseMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        DenseMatrix {
            rows,
            cols,
            data: vec![Scalar::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = DenseMatrix::zeros(n, n);
        for k in 0..n {
            m.set(k, k, Scalar::one());
        }
        m
    }

    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Scalar) {
        self.data[r * self.cols + c] = v;
    }

    pub fn mul(&self, other: &DenseMatrix) -> DenseMatrix {
        assert_eq!(self.cols, other.rows, "shape mismatch");
        let mut out = DenseMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let s = out.get(i, j) + &(a * b);
                        out.set(i, j, s);
                    }
                }
            }
        }
        out
    }

    /// Gauss-Jordan inverse; `None` when singular.
    pub fn inverse(&self) -> Option<DenseMatrix> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = DenseMatrix::identity(n);
        for col in 0..n {
            let piv = (col..n).find(|&r| !a.get(r, col).is_zero())?;
            a.swap_rows(piv, col);
            inv.swap_rows(piv, col);
            let p = a.get(col, col).inv().ok()?;
            a.scale_row(col, &p);
            inv.scale_row(col, &p);
            for r in 0..n {
                if r != col && !a.get(r, col).is_zero() {
                    let f = a.get(r, col).clone();
                    a.sub_row(r, col, &f);
                    inv.sub_row(r, col, &f);
                }
            }
        }
        Some(inv)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for c in 0..self.cols {
                self.data.swap(a * self.cols + c, b * self.cols + c);
            }
        }
    }

    fn scale_row(&mut self, r: usize, f: &Scalar) {
        for c in 0..self.cols {
            let v = self.get(r, c) * f;
            self.set(r, c, v);
        }
    }

    /// `row[r] -= f * row[s]`
    fn sub_row(&mut self, r: usize, s: usize, f: &Scalar) {
        for c in 0..self.cols {
            let d = self.get(s, c);
            if !d.is_zero() {
                let v = self.get(r, c) - &(f * d);
                self.set(r, c, v);
            }
        }
    }
}

/// Row-reduce linear relations among words and add one rule per pivot:
/// the largest word of each reduced row rewrites to the rest. Returns the rank.
pub fn add_linear_relations(p: &mut Presentation, relations: &[Element]) -> Result<usize> {
    let mut words: Vec<Word> = relations
        .iter()
        .flat_map(|e| e.terms().map(|(w, _)| w.clone()))
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    words.sort_by(|a, b| p.cmp_words(b, a));
    let mut m = DenseMatrix::zeros(relations.len(), words.len());
    for (r, e) in relations.iter().enumerate() {
        for (w, c) in e.terms() {
            let col = words.iter().position(|x| x == w).expect("collected");
            m.set(r, col, c.clone());
        }
    }
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..words.len() {
        let Some(piv) = (row..m.rows).find(|&r| !m.get(r, col).is_zero()) else {
            continue;
        };
        m.swap_rows(piv, row);
        let inv = m.get(row, col).inv()?;
        m.scale_row(row, &inv);
        for r in 0..m.rows {
            if r != row && !m.get(r, col).is_zero() {
                let f = m.get(r, col).clone();
                m.sub_row(r, row, &f);
            }
        }
        pivots.push((row, col));
        row += 1;
    }
    for &(r, col) in &pivots {
        let rhs = Element::from_terms(
            (col + 1..words.len())
                .filter(|&c| !m.get(r, c).is_zero())
                .map(|c| (words[c].clone(), -m.get(r, c).clone())),
        );
        p.add_rule(words[col].clone(), rhs)?;
    }
    Ok(pivots.len())
}
