use std::collections::BTreeSet;

use serde_json::{json, Value};

use super::group::{FinGroup, DEFAULT_ORDER_BOUND};
use crate::error::{Error, Result};

/// Subsets of a group of order at most 64, one bit per element.
pub type Mask = u64;

fn bit(a: usize) -> Mask {
    1 << a
}

fn members(mask: Mask) -> Vec<usize> {
    (0..64).filter(|&k| mask & bit(k) != 0).collect()
}

/// Smallest subgroup containing `gens`.
pub fn subgroup_closure(x: &FinGroup, gens: Mask) -> Mask {
    let gens = members(gens);
    let mut elems = vec![x.identity()];
    let mut mask = bit(x.identity());
    let mut k = 0;
    while k < elems.len() {
        for &g in &gens {
            let p = x.mul(elems[k], g);
            if mask & bit(p) == 0 {
                mask |= bit(p);
                elems.push(p);
            }
        }
        k += 1;
    }
    mask
}

/// Every subgroup, sorted by order then by bitmask.
pub fn subgroups(x: &FinGroup) -> Result<Vec<Mask>> {
    check_bound(x, DEFAULT_ORDER_BOUND)?;
    let n = x.order();
    let mut found = BTreeSet::from([bit(x.identity())]);
    let mut queue = vec![bit(x.identity())];
    while let Some(h) = queue.pop() {
        for a in (0..n).filter(|&a| h & bit(a) == 0) {
            let k = subgroup_closure(x, h | bit(a));
            if found.insert(k) {
                queue.push(k);
            }
        }
    }
    let mut out: Vec<Mask> = found.into_iter().collect();
    out.sort_by_key(|m| (m.count_ones(), *m));
    Ok(out)
}

fn check_bound(x: &FinGroup, bound: usize) -> Result<()> {
    if x.order() > bound || x.order() > 64 {
        return Err(Error::BoundExceeded {
            order: x.order(),
            bound: bound.min(64),
        });
    }
    Ok(())
}

/// An exact factorisation `X = G·M`: every element is uniquely `g·m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorisation {
    pub x: FinGroup,
    pub g: Vec<usize>,
    pub m: Vec<usize>,
}

impl Factorisation {
    /// Validate that `(g, m) ↦ gm` is a bijection between `G×M` and `X`.
    pub fn new(x: FinGroup, g: Vec<usize>, m: Vec<usize>) -> Result<Self> {
        let n = x.order();
        for (name, set) in [("G", &g), ("M", &m)] {
            if set.iter().any(|&a| a >= n) {
                return Err(Error::InvalidFactorisation(format!("{name} has an index outside the group")));
            }
            let mask = set.iter().fold(0u128, |acc, &a| acc | (1u128 << a));
            if mask.count_ones() as usize != set.len() {
                return Err(Error::InvalidFactorisation(format!("{name} lists an element twice")));
            }
            for &a in set.iter() {
                for &b in set.iter() {
                    if !set.contains(&x.mul(a, b)) {
                        return Err(Error::InvalidFactorisation(format!(
                            "{name} is not a subgroup: {}*{} is missing",
                            x.label(a),
                            x.label(b)
                        )));
                    }
                }
            }
        }
        if g.len() * m.len() != n {
            return Err(Error::InvalidFactorisation(format!(
                "|G||M| = {} but |X| = {n}",
                g.len() * m.len()
            )));
        }
        let mut hit = vec![false; n];
        for &a in &g {
            for &b in &m {
                let p = x.mul(a, b);
                if hit[p] {
                    return Err(Error::InvalidFactorisation(format!(
                        "{} is hit twice by G·M",
                        x.label(p)
                    )));
                }
                hit[p] = true;
            }
        }
        Ok(Factorisation { x, g, m })
    }

    /// `X = M·G` with the roles exchanged.
    pub fn swapped(&self) -> Factorisation {
        Factorisation {
            x: self.x.clone(),
            g: self.m.clone(),
            m: self.g.clone(),
        }
    }

    pub fn g_group(&self) -> FinGroup {
        self.x.restrict("G", &self.g).expect("validated subgroup")
    }

    pub fn m_group(&self) -> FinGroup {
        self.x.restrict("M", &self.m).expect("validated subgroup")
    }

    pub fn is_trivial(&self) -> bool {
        self.g.len() == 1 || self.m.len() == 1
    }

    pub fn to_json(&self) -> Value {
        let labels = |s: &[usize]| s.iter().map(|&a| self.x.label(a).to_owned()).collect::<Vec<_>>();
        json!({ "group": self.x.name(), "G": labels(&self.g), "M": labels(&self.m) })
    }
}

/// All ordered pairs of subgroups `(G, M)` with `G ∩ M = {e}` and `|G||M| = |X|`.
pub fn find_factorisations(x: &FinGroup) -> Result<Vec<Factorisation>> {
    find_factorisations_bounded(x, DEFAULT_ORDER_BOUND)
}

pub fn find_factorisations_bounded(x: &FinGroup, bound: usize) -> Result<Vec<Factorisation>> {
    check_bound(x, bound)?;
    let n = x.order() as u32;
    let subs = subgroups(x)?;
    let e = bit(x.identity());
    let mut out = Vec::new();
    for &g in &subs {
        for &m in &subs {
            if g.count_ones() * m.count_ones() == n && g & m == e {
                out.push(Factorisation::new(x.clone(), members(g), members(m))?);
            }
        }
    }
    Ok(out)
}

/// Mutual actions `▷: M×G → G` and `◁: M×G → M` from `m·g = (m▷g)(m◁g)`.
/// Tables are indexed by positions in `F.m` and `F.g`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatchedPair {
    pub factorisation: Factorisation,
    left: Vec<Vec<usize>>,
    right: Vec<Vec<usize>>,
}

pub fn matched_pair(f: &Factorisation) -> MatchedPair {
    let x = &f.x;
    let mut split = vec![(0, 0); x.order()];
    for (gi, &g) in f.g.iter().enumerate() {
        for (mi, &m) in f.m.iter().enumerate() {
            split[x.mul(g, m)] = (gi, mi);
        }
    }
    let mut left = vec![vec![0; f.g.len()]; f.m.len()];
    let mut right = vec![vec![0; f.g.len()]; f.m.len()];
    for (mi, &m) in f.m.iter().enumerate() {
        for (gi, &g) in f.g.iter().enumerate() {
            let (a, b) = split[x.mul(m, g)];
            left[mi][gi] = a;
            right[mi][gi] = b;
        }
    }
    MatchedPair {
        factorisation: f.clone(),
        left,
        right,
    }
}

impl MatchedPair {
    /// `m ▷ g` on positions.
    pub fn act_left(&self, m: usize, g: usize) -> usize {
        self.left[m][g]
    }

    /// `m ◁ g` on positions.
    pub fn act_right(&self, m: usize, g: usize) -> usize {
        self.right[m][g]
    }

    pub fn g_order(&self) -> usize {
        self.factorisation.g.len()
    }

    pub fn m_order(&self) -> usize {
        self.factorisation.m.len()
    }

    /// Multiplication of `G` on positions.
    pub fn g_mul(&self, a: usize, b: usize) -> usize {
        let f = &self.factorisation;
        let p = f.x.mul(f.g[a], f.g[b]);
        f.g.iter().position(|&c| c == p).expect("closed")
    }

    pub fn m_mul(&self, a: usize, b: usize) -> usize {
        let f = &self.factorisation;
        let p = f.x.mul(f.m[a], f.m[b]);
        f.m.iter().position(|&c| c == p).expect("closed")
    }

    pub fn g_inv(&self, a: usize) -> usize {
        let f = &self.factorisation;
        let p = f.x.inv(f.g[a]);
        f.g.iter().position(|&c| c == p).expect("closed")
    }

    pub fn m_inv(&self, a: usize) -> usize {
        let f = &self.factorisation;
        let p = f.x.inv(f.m[a]);
        f.m.iter().position(|&c| c == p).expect("closed")
    }

    pub fn g_identity(&self) -> usize {
        let f = &self.factorisation;
        f.g.iter().position(|&c| c == f.x.identity()).expect("subgroup")
    }

    pub fn m_identity(&self) -> usize {
        let f = &self.factorisation;
        f.m.iter().position(|&c| c == f.x.identity()).expect("subgroup")
    }

    pub fn g_label(&self, a: usize) -> &str {
        self.factorisation.x.label(self.factorisation.g[a])
    }

    pub fn m_label(&self, a: usize) -> &str {
        self.factorisation.x.label(self.factorisation.m[a])
    }

    pub fn is_trivial(&self) -> bool {
        (0..self.m_order()).all(|m| (0..self.g_order()).all(|g| self.left[m][g] == g && self.right[m][g] == m))
    }

    /// Failing instances of the matched-pair identities, by enumeration.
    pub fn compatibility_violations(&self) -> Vec<String> {
        let (ng, nm) = (self.g_order(), self.m_order());
        let (eg, em) = (self.g_identity(), self.m_identity());
        let x = &self.factorisation.x;
        let f = &self.factorisation;
        let mut v = Vec::new();
        for m in 0..nm {
            for g in 0..ng {
                let lhs = x.mul(f.m[m], f.g[g]);
                let rhs = x.mul(f.g[self.left[m][g]], f.m[self.right[m][g]]);
                if lhs != rhs {
                    v.push(format!("refactorisation at ({}, {})", self.m_label(m), self.g_label(g)));
                }
                for h in 0..ng {
                    // m ▷ (gh) = (m ▷ g)((m ◁ g) ▷ h)
                    let l = self.left[m][self.g_mul(g, h)];
                    let r = self.g_mul(self.left[m][g], self.left[self.right[m][g]][h]);
                    if l != r {
                        v.push(format!("left action on product at ({}, {}, {})", self.m_label(m), self.g_label(g), self.g_label(h)));
                    }
                    // m ◁ (gh) = (m ◁ g) ◁ h
                    if self.right[m][self.g_mul(g, h)] != self.right[self.right[m][g]][h] {
                        v.push(format!("right action is not an action at ({}, {}, {})", self.m_label(m), self.g_label(g), self.g_label(h)));
                    }
                }
                for n in 0..nm {
                    // (mn) ◁ g = (m ◁ (n ▷ g))(n ◁ g)
                    let l = self.right[self.m_mul(m, n)][g];
                    let r = self.m_mul(self.right[m][self.left[n][g]], self.right[n][g]);
                    if l != r {
                        v.push(format!("right action on product at ({}, {}, {})", self.m_label(m), self.m_label(n), self.g_label(g)));
                    }
                    // (mn) ▷ g = m ▷ (n ▷ g)
                    if self.left[self.m_mul(m, n)][g] != self.left[m][self.left[n][g]] {
                        v.push(format!("left action is not an action at ({}, {}, {})", self.m_label(m), self.m_label(n), self.g_label(g)));
                    }
                }
            }
            if self.left[m][eg] != eg || self.right[m][eg] != m {
                v.push(format!("identity of G not fixed by {}", self.m_label(m)));
            }
        }
        for g in 0..ng {
            if self.left[em][g] != g || self.right[em][g] != em {
                v.push(format!("identity of M acts nontrivially on {}", self.g_label(g)));
            }
        }
        v
    }

    pub fn to_json(&self) -> Value {
        let mut left = serde_json::Map::new();
        let mut right = serde_json::Map::new();
        for m in 0..self.m_order() {
            for g in 0..self.g_order() {
                let key = format!("{}|{}", self.m_label(m), self.g_label(g));
                left.insert(key.clone(), json!(self.g_label(self.left[m][g])));
                right.insert(key, json!(self.m_label(self.right[m][g])));
            }
        }
        json!({
            "factorisation": self.factorisation.to_json(),
            "left_action": left,
            "right_action": right,
        })
    }
}
