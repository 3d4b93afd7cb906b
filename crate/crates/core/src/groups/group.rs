use std::collections::HashMap;

use serde_json::Value;

use crate::error::{Error, Result};

/// Largest group order accepted by default.
pub const DEFAULT_ORDER_BOUND: usize = 64;

/// A finite group given by its multiplication table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinGroup {
    name: String,
    labels: Vec<String>,
    table: Vec<Vec<usize>>,
    identity: usize,
    inverses: Vec<usize>,
}

/// Validate a Cayley table: closure, identity, inverses and associativity.
pub fn group_from_table(labels: Vec<String>, table: Vec<Vec<usize>>) -> Result<FinGroup> {
    FinGroup::from_table("G", labels, table)
}

impl FinGroup {
    pub fn from_table(name: &str, labels: Vec<String>, table: Vec<Vec<usize>>) -> Result<Self> {
        let n = labels.len();
        if n == 0 {
            return Err(Error::NotAGroup("empty element list".into()));
        }
        if n > DEFAULT_ORDER_BOUND {
            return Err(Error::BoundExceeded {
                order: n,
                bound: DEFAULT_ORDER_BOUND,
            });
        }
        for (k, l) in labels.iter().enumerate() {
            if labels[..k].contains(l) {
                return Err(Error::NotAGroup(format!("duplicate label `{l}`")));
            }
        }
        if table.len() != n || table.iter().any(|r| r.len() != n) {
            return Err(Error::NotAGroup(format!("table is not {n}×{n}")));
        }
        if let Some((a, b)) = (0..n).flat_map(|a| (0..n).map(move |b| (a, b))).find(|&(a, b)| table[a][b] >= n) {
            return Err(Error::NotAGroup(format!(
                "product {}*{} is out of range",
                labels[a], labels[b]
            )));
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|x| table[e][x] == x && table[x][e] == x))
            .ok_or_else(|| Error::NotAGroup("no identity element".into()))?;
        let mut inverses = Vec::with_capacity(n);
        for a in 0..n {
            let inv = (0..n)
                .find(|&b| table[a][b] == identity && table[b][a] == identity)
                .ok_or_else(|| Error::NotAGroup(format!("`{}` has no inverse", labels[a])))?;
            inverses.push(inv);
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(Error::NotAGroup(format!(
                            "associativity fails at ({}, {}, {})",
                            labels[a], labels[b], labels[c]
                        )));
                    }
                }
            }
        }
        Ok(FinGroup {
            name: name.to_owned(),
            labels,
            table,
            identity,
            inverses,
        })
    }

    /// Group generated by permutations in cycle notation, e.g. `"(1 2 3)(4 5)"`.
    /// Products compose right to left: `(ab)(x) = a(b(x))`.
    /// Elements are labelled by their cycle notation, the identity by `e`.
    pub fn from_permutations<S: AsRef<str>>(name: &str, gens: &[S]) -> Result<Self> {
        let cycles: Vec<Vec<Vec<usize>>> = gens.iter().map(|g| parse_cycles(g.as_ref())).collect::<Result<_>>()?;
        let degree = cycles.iter().flatten().flatten().copied().max().unwrap_or(0);
        let perms: Vec<Vec<usize>> = cycles.iter().map(|c| cycles_to_perm(c, degree)).collect();
        let id: Vec<usize> = (0..degree).collect();
        let mut elems = vec![id.clone()];
        let mut index: HashMap<Vec<usize>, usize> = HashMap::from([(id, 0)]);
        let mut k = 0;
        while k < elems.len() {
            for p in &perms {
                let q = compose(&elems[k], p);
                if !index.contains_key(&q) {
                    if elems.len() >= DEFAULT_ORDER_BOUND {
                        return Err(Error::BoundExceeded {
                            order: elems.len() + 1,
                            bound: DEFAULT_ORDER_BOUND,
                        });
                    }
                    index.insert(q.clone(), elems.len());
                    elems.push(q);
                }
            }
            k += 1;
        }
        let table = elems
            .iter()
            .map(|a| elems.iter().map(|b| index[&compose(a, b)]).collect())
            .collect();
        let labels = elems.iter().map(|p| cycle_notation(p)).collect();
        FinGroup::from_table(name, labels, table)
    }

    /// `Z/n` with labels `e, g, g^2, …`.
    pub fn cyclic(n: usize) -> Result<Self> {
        let labels = (0..n)
            .map(|k| match k {
                0 => "e".to_string(),
                1 => "g".to_string(),
                _ => format!("g^{k}"),
            })
            .collect();
        let table = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        FinGroup::from_table(&format!("C{n}"), labels, table)
    }

    /// Direct product with labels `(a,b)`.
    pub fn direct_product(a: &FinGroup, b: &FinGroup) -> Result<Self> {
        let (na, nb) = (a.order(), b.order());
        let labels = (0..na * nb)
            .map(|k| format!("({},{})", a.labels[k / nb], b.labels[k % nb]))
            .collect();
        let table = (0..na * nb)
            .map(|x| {
                (0..na * nb)
                    .map(|y| a.mul(x / nb, y / nb) * nb + b.mul(x % nb, y % nb))
                    .collect()
            })
            .collect();
        FinGroup::from_table(&format!("{}x{}", a.name, b.name), labels, table)
    }

    /// Built-in groups: `C2`, `C3`, `C4`, `C2xC2`, `S3`, `D4`, `S4`, and `Cn` for any n.
    pub fn builtin(name: &str) -> Result<Self> {
        match name {
            "C2xC2" => {
                let c2 = FinGroup::cyclic(2)?;
                let mut g = FinGroup::direct_product(&c2, &c2)?;
                g.name = name.into();
                Ok(g)
            }
            "S3" => FinGroup::from_permutations(name, &["(1 2 3)", "(1 2)"]),
            "D4" => FinGroup::from_permutations(name, &["(1 2 3 4)", "(1 3)"]),
            "S4" => FinGroup::from_permutations(name, &["(1 2 3 4)", "(1 2)"]),
            _ => match name.strip_prefix('C').and_then(|n| n.parse::<usize>().ok()) {
                Some(n) if n >= 1 => FinGroup::cyclic(n),
                _ => Err(Error::UnknownModel(name.to_owned())),
            },
        }
    }

    pub const BUILTIN: [&'static str; 7] = ["C2", "C3", "C4", "C2xC2", "S3", "D4", "S4"];

    /// JSON input: `{"labels": [...], "table": [[...]]}` or
    /// `{"perm_gens": ["(1 2 3)", ["(1 2)", "(3 4)"], ...]}`.
    pub fn from_json(text: &str) -> Result<Self> {
        let v: Value = serde_json::from_str(text).map_err(|e| Error::Usage(format!("invalid group JSON: {e}")))?;
        let name = v.get("name").and_then(Value::as_str).unwrap_or("G");
        if let Some(gens) = v.get("perm_gens").and_then(Value::as_array) {
            let gens = gens
                .iter()
                .map(|g| match g {
                    Value::String(s) => Ok(s.clone()),
                    Value::Array(parts) => parts
                        .iter()
                        .map(|p| p.as_str().map(str::to_owned))
                        .collect::<Option<Vec<_>>>()
                        .map(|v| v.concat())
                        .ok_or_else(|| Error::Usage("perm_gens entries must be strings".into())),
                    _ => Err(Error::Usage("perm_gens entries must be strings".into())),
                })
                .collect::<Result<Vec<_>>>()?;
            return FinGroup::from_permutations(name, &gens);
        }
        let labels: Vec<String> = v
            .get("labels")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Usage("group JSON needs `labels` and `table`, or `perm_gens`".into()))?
            .iter()
            .map(|l| l.as_str().map(str::to_owned).ok_or_else(|| Error::Usage("labels must be strings".into())))
            .collect::<Result<_>>()?;
        let table: Vec<Vec<usize>> = serde_json::from_value(v.get("table").cloned().unwrap_or(Value::Null))
            .map_err(|e| Error::Usage(format!("invalid table: {e}")))?;
        FinGroup::from_table(name, labels, table)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, a: usize) -> &str {
        &self.labels[a]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverses[a]
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    /// The subgroup on `elems` as a group in its own right, basis order as given.
    pub fn restrict(&self, name: &str, elems: &[usize]) -> Result<FinGroup> {
        let pos: HashMap<usize, usize> = elems.iter().enumerate().map(|(k, &x)| (x, k)).collect();
        let mut table = Vec::with_capacity(elems.len());
        for &a in elems {
            let mut row = Vec::with_capacity(elems.len());
            for &b in elems {
                let p = self.mul(a, b);
                row.push(*pos.get(&p).ok_or_else(|| {
                    Error::NotAGroup(format!("{}*{} leaves the subset", self.label(a), self.label(b)))
                })?);
            }
            table.push(row);
        }
        FinGroup::from_table(name, elems.iter().map(|&x| self.labels[x].clone()).collect(), table)
    }
}

fn parse_cycles(s: &str) -> Result<Vec<Vec<usize>>> {
    let bad = || Error::Usage(format!("invalid cycle notation `{s}`"));
    let mut out = Vec::new();
    let mut rest = s.trim();
    while !rest.is_empty() {
        let body = rest.strip_prefix('(').ok_or_else(bad)?;
        let end = body.find(')').ok_or_else(bad)?;
        let pts = body[..end]
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .map(|t| t.parse::<usize>().ok().filter(|&p| p >= 1).ok_or_else(bad))
            .collect::<Result<Vec<_>>>()?;
        let mut seen = pts.clone();
        seen.sort_unstable();
        seen.dedup();
        if seen.len() != pts.len() {
            return Err(bad());
        }
        out.push(pts);
        rest = body[end + 1..].trim_start();
    }
    Ok(out)
}

fn cycles_to_perm(cycles: &[Vec<usize>], degree: usize) -> Vec<usize> {
    // Cycles compose right to left as well.
    let mut p: Vec<usize> = (0..degree).collect();
    for c in cycles.iter().rev() {
        let mut q: Vec<usize> = (0..degree).collect();
        for k in 0..c.len() {
            q[c[k] - 1] = c[(k + 1) % c.len()] - 1;
        }
        p = compose(&q, &p);
    }
    p
}

/// `(a∘b)(x) = a(b(x))`.
fn compose(a: &[usize], b: &[usize]) -> Vec<usize> {
    b.iter().map(|&x| a[x]).collect()
}

fn cycle_notation(p: &[usize]) -> String {
    let mut seen = vec![false; p.len()];
    let mut out = String::new();
    for start in 0..p.len() {
        if seen[start] || p[start] == start {
            continue;
        }
        let mut cyc = Vec::new();
        let mut x = start;
        while !seen[x] {
            seen[x] = true;
            cyc.push((x + 1).to_string());
            x = p[x];
        }
        out.push_str(&format!("({})", cyc.join(" ")));
    }
    if out.is_empty() {
        "e".into()
    } else {
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_orders() {
        for (name, n) in [("C2", 2), ("C3", 3), ("C4", 4), ("C2xC2", 4), ("S3", 6), ("D4", 8), ("S4", 24)] {
            assert_eq!(FinGroup::builtin(name).unwrap().order(), n, "{name}");
        }
        assert!(FinGroup::builtin("nosuch").is_err());
    }

    #[test]
    fn s3_dihedral_identity() {
        let g = FinGroup::builtin("S3").unwrap();
        let c = g.index_of("(1 2 3)").unwrap();
        let t = g.index_of("(1 2)").unwrap();
        let c2 = g.mul(c, c);
        assert_eq!(g.mul(t, c), g.mul(c2, t));
    }

    #[test]
    fn right_to_left_composition() {
        let g = FinGroup::builtin("S3").unwrap();
        let a = g.index_of("(1 2)").unwrap();
        let b = g.index_of("(2 3)").unwrap();
        // (1 2)(2 3): 1 -> 1 -> 2, 2 -> 3 -> 3, 3 -> 2 -> 1
        assert_eq!(g.label(g.mul(a, b)), "(1 2 3)");
    }

    #[test]
    fn broken_associativity_rejected() {
        // A Latin square with identity that is not associative (order 5 loop).
        let t = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ];
        let labels = (0..5).map(|k| k.to_string()).collect();
        let e = group_from_table(labels, t).unwrap_err();
        assert!(matches!(e, Error::NotAGroup(ref m) if m.contains("associativity")), "{e}");
    }

    #[test]
    fn json_inputs() {
        let g = FinGroup::from_json(r#"{"labels": ["e", "u"], "table": [[0, 1], [1, 0]]}"#).unwrap();
        assert_eq!(g.order(), 2);
        let h = FinGroup::from_json(r#"{"perm_gens": [["(1 2)", "(3 4)"], "(1 3)(2 4)"]}"#).unwrap();
        assert_eq!(h.order(), 4);
        assert!(FinGroup::from_json(r#"{"labels": ["e"]}"#).is_err());
    }

    #[test]
    fn order_bound() {
        let e = FinGroup::from_permutations("S5", &["(1 2 3 4 5)", "(1 2)"]).unwrap_err();
        assert!(matches!(e, Error::BoundExceeded { .. }));
    }
}
