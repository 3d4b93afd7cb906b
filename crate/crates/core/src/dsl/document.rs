use std::fmt::Write as _;

use num_traits::ToPrimitive;

use super::expr::{Ctx, ExprParser, Value};
use super::lexer::{lex, Pos, Tok};
use crate::braided::{Braiding, TensorTerms};
use crate::error::{Error, Result};
use crate::freealg::{Element, Presentation, Word};
use crate::hopf::{show_pairs, solve_antipode, HopfSpec};
use crate::scalars::{ParamSet, Scalar};

/// One algebra together with the optional blocks attached to it.
#[derive(Clone, Debug, PartialEq)]
pub struct ModelDecl {
    pub algebra: Presentation,
    pub coproduct: Option<Vec<TensorTerms>>,
    pub counit: Option<Vec<Scalar>>,
    pub antipode: Option<Vec<Element>>,
    pub inverses: Vec<(Element, Element)>,
    pub braiding: Option<Braiding>,
}

impl ModelDecl {
    pub fn new(algebra: Presentation) -> Self {
        ModelDecl {
            algebra,
            coproduct: None,
            counit: None,
            antipode: None,
            inverses: Vec::new(),
            braiding: None,
        }
    }

    pub fn name(&self) -> &str {
        self.algebra.name()
    }

    /// Declaration for an existing Hopf data set (`HopfSpec`).
    pub fn from_hopf(spec: &HopfSpec) -> Self {
        ModelDecl {
            algebra: spec.algebra.clone(),
            coproduct: Some(spec.coproduct.clone()),
            counit: Some(spec.counit.clone()),
            antipode: spec.antipode.clone(),
            inverses: spec.inverses.clone(),
            braiding: spec.braiding.clone(),
        }
    }

    /// Hopf data of this model. A missing antipode is solved for when possible.
    pub fn to_hopf(&self) -> Result<HopfSpec> {
        let (Some(cop), Some(eps)) = (&self.coproduct, &self.counit) else {
            return Err(Error::InvalidPresentation(format!(
                "model `{}` needs coproduct and counit blocks",
                self.name()
            )));
        };
        let mut spec = HopfSpec::new(self.name(), self.algebra.clone(), cop.clone(), eps.clone())?;
        if let Some(b) = &self.braiding {
            spec = spec.with_braiding(b.clone())?;
        }
        for (a, b) in &self.inverses {
            spec = spec.with_inverse(a.clone(), b.clone())?;
        }
        match &self.antipode {
            Some(s) => spec = spec.with_antipode(s.clone())?,
            None => {
                if let Ok(s) = solve_antipode(&spec) {
                    spec = spec.with_antipode(s)?;
                }
            }
        }
        Ok(spec)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckDecl {
    pub suites: Vec<String>,
    pub degree: Option<u32>,
}

#[derive(Clone, Debug, PartialEq, Default)]
pub struct Document {
    pub params: ParamSet,
    pub models: Vec<ModelDecl>,
    pub checks: Vec<CheckDecl>,
}

impl Document {
    pub fn model(&self, name: &str) -> Option<&ModelDecl> {
        self.models.iter().find(|m| m.name() == name)
    }
}

pub fn parse_document(src: &str) -> Result<Document> {
    let toks = lex(src)?;
    let mut p = DocParser {
        toks: &toks,
        at: 0,
        doc: Document::default(),
    };
    p.document()?;
    Ok(p.doc)
}

struct DocParser<'a> {
    toks: &'a [(Tok, Pos)],
    at: usize,
    doc: Document,
}

fn at_pos<T>(r: Result<T>, pos: Pos) -> Result<T> {
    r.map_err(|e| match e {
        Error::Parse { .. } => e,
        other => pos.error(other.to_string()),
    })
}

impl DocParser<'_> {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].0
    }

    fn bump(&mut self) -> (Tok, Pos) {
        let t = self.toks[self.at].clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn expect(&mut self, want: Tok) -> Result<Pos> {
        let (t, p) = self.bump();
        if t != want {
            return Err(p.error(format!("expected {}, found {}", want.describe(), t.describe())));
        }
        Ok(p)
    }

    fn ident(&mut self) -> Result<(String, Pos)> {
        match self.bump() {
            (Tok::Ident(s), p) => Ok((s, p)),
            (t, p) => Err(p.error(format!("expected an identifier, found {}", t.describe()))),
        }
    }

    fn keyword(&mut self, kw: &str) -> Result<()> {
        let (s, p) = self.ident()?;
        if s != kw {
            return Err(p.error(format!("expected `{kw}`, found `{s}`")));
        }
        Ok(())
    }

    fn ident_list(&mut self) -> Result<Vec<(String, Pos)>> {
        let mut out = vec![self.ident()?];
        while *self.peek() == Tok::Comma {
            self.bump();
            out.push(self.ident()?);
        }
        Ok(out)
    }

    fn expr_value(&mut self, algebra: Option<&Presentation>) -> Result<(Value, Pos)> {
        let mut ep = ExprParser::new(self.toks, self.at);
        let e = ep.expr()?;
        self.at = ep.at;
        let ctx = Ctx {
            params: &self.doc.params,
            algebra,
        };
        Ok((ctx.eval(&e)?, e.pos()))
    }

    fn document(&mut self) -> Result<()> {
        loop {
            let (t, p) = self.toks[self.at].clone();
            let Tok::Ident(kw) = t else {
                if t == Tok::Eof {
                    return Ok(());
                }
                return Err(p.error(format!("expected a statement, found {}", t.describe())));
            };
            match kw.as_str() {
                "params" => {
                    self.bump();
                    for (name, q) in self.ident_list()? {
                        at_pos(self.doc.params.push(&name).map(drop), q)?;
                    }
                    self.expect(Tok::Semi)?;
                }
                "algebra" => self.algebra()?,
                "coproduct" | "counit" | "antipode" | "inverse" | "braiding" => self.block(&kw)?,
                "check" => self.check()?,
                other => return Err(p.error(format!("unknown statement `{other}`"))),
            }
        }
    }

    fn algebra(&mut self) -> Result<()> {
        self.bump();
        let (name, np) = self.ident()?;
        if self.doc.model(&name).is_some() {
            return Err(np.error(format!("algebra `{name}` declared twice")));
        }
        self.expect(Tok::LBrace)?;
        let mut pres: Option<Presentation> = None;
        loop {
            if *self.peek() == Tok::RBrace {
                self.bump();
                break;
            }
            let (kw, kp) = self.ident()?;
            match kw.as_str() {
                "gens" => {
                    if pres.is_some() {
                        return Err(kp.error("generators declared twice"));
                    }
                    let gens: Vec<String> = self.ident_list()?.into_iter().map(|g| g.0).collect();
                    pres = Some(at_pos(Presentation::new(&name, self.doc.params.clone(), &gens), kp)?);
                }
                "order" => {
                    let (o, op) = self.ident()?;
                    if o != "deglex" {
                        return Err(op.error(format!("unsupported monomial order `{o}`")));
                    }
                }
                "weights" => {
                    let p = pres.as_mut().ok_or_else(|| kp.error("weights before gens"))?;
                    loop {
                        let (g, gp) = self.ident()?;
                        self.expect(Tok::Eq)?;
                        let (t, tp) = self.bump();
                        let Tok::Int(w) = t else {
                            return Err(tp.error("expected a positive integer weight"));
                        };
                        let w = w.to_u32().ok_or_else(|| tp.error("weight out of range"))?;
                        at_pos(p.set_weight(&g, w), gp)?;
                        if *self.peek() != Tok::Comma {
                            break;
                        }
                        self.bump();
                    }
                }
                "rule" => {
                    let Some(p) = pres.take() else {
                        return Err(kp.error("rule before gens"));
                    };
                    let (lhs, lp) = self.expr_value(Some(&p))?;
                    self.expect(Tok::Arrow)?;
                    let (rhs, rp) = self.expr_value(Some(&p))?;
                    let lhs = single_word(lhs).ok_or_else(|| lp.error("rule left-hand side must be a word"))?;
                    let rhs = as_elem(rhs).ok_or_else(|| rp.error("rule right-hand side cannot be a tensor"))?;
                    let mut p = p;
                    at_pos(p.add_rule(lhs, rhs), lp)?;
                    pres = Some(p);
                }
                other => return Err(kp.error(format!("unknown algebra item `{other}`"))),
            }
            self.expect(Tok::Semi)?;
        }
        let p = pres.ok_or_else(|| np.error(format!("algebra `{name}` has no gens")))?;
        self.doc.models.push(ModelDecl::new(p));
        Ok(())
    }

    fn block(&mut self, kind: &str) -> Result<()> {
        self.bump();
        let (name, np) = self.ident()?;
        let idx = self
            .doc
            .models
            .iter()
            .position(|m| m.name() == name)
            .ok_or_else(|| np.error(format!("unknown algebra `{name}`")))?;
        let alg = self.doc.models[idx].algebra.clone();
        let n = alg.num_gens();
        self.expect(Tok::LBrace)?;
        let mut per_gen: Vec<Option<(Value, Pos)>> = vec![None; n];
        let mut inverses = Vec::new();
        let mut braid = Braiding::new();
        let close;
        loop {
            if *self.peek() == Tok::RBrace {
                close = self.bump().1;
                break;
            }
            match kind {
                "inverse" => {
                    let (a, ap) = self.expr_value(Some(&alg))?;
                    self.expect(Tok::Arrow)?;
                    let (b, bp) = self.expr_value(Some(&alg))?;
                    let a = as_elem(a).ok_or_else(|| ap.error("expected an algebra element"))?;
                    let b = as_elem(b).ok_or_else(|| bp.error("expected an algebra element"))?;
                    inverses.push((a, b));
                }
                "braiding" => {
                    let (lhs, lp) = self.expr_value(Some(&alg))?;
                    let (u, v) = gen_pair(&lhs).ok_or_else(|| lp.error("expected `gen|gen`"))?;
                    self.expect(Tok::Arrow)?;
                    let (rhs, rp) = self.expr_value(Some(&alg))?;
                    let Value::Tensor(t) = rhs else {
                        return Err(rp.error("braiding image must be a tensor"));
                    };
                    let mut img = Vec::new();
                    for ((l, r), c) in t {
                        match (l.letters(), r.letters()) {
                            ([a], [b]) => img.push((*a, *b, c)),
                            _ => return Err(rp.error("braiding images must be sums of gen|gen terms")),
                        }
                    }
                    if braid.get(u, v).is_some() {
                        return Err(lp.error("braiding given twice for this pair"));
                    }
                    braid.set(u, v, img);
                }
                _ => {
                    let (g, gp) = self.ident()?;
                    let gi = at_pos(alg.gen(&g), gp)? as usize;
                    if per_gen[gi].is_some() {
                        return Err(gp.error(format!("`{g}` assigned twice")));
                    }
                    self.expect(Tok::Arrow)?;
                    per_gen[gi] = Some(self.expr_value(Some(&alg))?);
                }
            }
            self.expect(Tok::Semi)?;
        }
        let m = &mut self.doc.models[idx];
        let dup = || np.error(format!("duplicate {kind} block for `{name}`"));
        match kind {
            "inverse" => m.inverses.extend(inverses),
            "braiding" => {
                if m.braiding.is_some() {
                    return Err(dup());
                }
                if !braid.is_total(n, n) {
                    return Err(close.error("braiding must cover every generator pair"));
                }
                m.braiding = Some(braid);
            }
            _ => {
                let mut vals = Vec::with_capacity(n);
                for (g, v) in per_gen.into_iter().enumerate() {
                    let Some(v) = v else {
                        return Err(close.error(format!("{kind} missing for `{}`", alg.gen_name(g as u16))));
                    };
                    vals.push(v);
                }
                match kind {
                    "coproduct" => {
                        if m.coproduct.is_some() {
                            return Err(dup());
                        }
                        let mut out = Vec::new();
                        for (v, p) in vals {
                            match v {
                                Value::Tensor(t) => out.push(t),
                                _ => return Err(p.error("coproduct images must be tensors")),
                            }
                        }
                        m.coproduct = Some(out);
                    }
                    "counit" => {
                        if m.counit.is_some() {
                            return Err(dup());
                        }
                        let mut out = Vec::new();
                        for (v, p) in vals {
                            let s = as_elem(v).and_then(|e| e.as_scalar());
                            out.push(s.ok_or_else(|| p.error("counit images must be scalars"))?);
                        }
                        m.counit = Some(out);
                    }
                    _ => {
                        if m.antipode.is_some() {
                            return Err(dup());
                        }
                        let mut out = Vec::new();
                        for (v, p) in vals {
                            out.push(as_elem(v).ok_or_else(|| p.error("antipode images must be elements"))?);
                        }
                        m.antipode = Some(out);
                    }
                }
            }
        }
        Ok(())
    }

    fn check(&mut self) -> Result<()> {
        self.bump();
        let mut suites = Vec::new();
        let mut degree = None;
        loop {
            let (mut s, _) = self.ident()?;
            while *self.peek() == Tok::Minus {
                self.bump();
                s.push('-');
                s.push_str(&self.ident()?.0);
            }
            suites.push(s);
            if *self.peek() != Tok::Comma {
                break;
            }
            self.bump();
        }
        if let Tok::Ident(kw) = self.peek() {
            if kw == "degree" {
                self.keyword("degree")?;
                let (t, p) = self.bump();
                let Tok::Int(d) = t else {
                    return Err(p.error("expected a degree bound"));
                };
                degree = Some(d.to_u32().ok_or_else(|| p.error("degree out of range"))?);
            }
        }
        self.expect(Tok::Semi)?;
        self.doc.checks.push(CheckDecl { suites, degree });
        Ok(())
    }
}

fn as_elem(v: Value) -> Option<Element> {
    match v {
        Value::Scalar(s) => Some(Element::scalar(s)),
        Value::Elem(e) => Some(e),
        Value::Tensor(_) => None,
    }
}

fn single_word(v: Value) -> Option<Word> {
    let Value::Elem(e) = v else { return None };
    if e.len() != 1 {
        return None;
    }
    let (w, c) = e.terms().next()?;
    (c.is_one() && !w.is_unit()).then(|| w.clone())
}

fn gen_pair(v: &Value) -> Option<(u16, u16)> {
    let Value::Tensor(t) = v else { return None };
    if t.len() != 1 {
        return None;
    }
    let ((l, r), c) = t.iter().next()?;
    match (l.letters(), r.letters(), c.is_one()) {
        ([a], [b], true) => Some((*a, *b)),
        _ => None,
    }
}

/// Parse a single element of `alg` (products are not reduced).
pub fn parse_element(alg: &Presentation, src: &str) -> Result<Element> {
    match parse_value(alg.params(), Some(alg), src)? {
        Value::Tensor(_) => Err(Pos { line: 1, column: 1 }.error("expected an element, found a tensor")),
        v => Ok(as_elem(v).unwrap()),
    }
}

pub fn parse_scalar(params: &ParamSet, src: &str) -> Result<Scalar> {
    match parse_value(params, None, src)? {
        Value::Scalar(s) => Ok(s),
        _ => Err(Pos { line: 1, column: 1 }.error("expected a scalar")),
    }
}

pub fn parse_tensor(alg: &Presentation, src: &str) -> Result<TensorTerms> {
    match parse_value(alg.params(), Some(alg), src)? {
        Value::Tensor(t) => Ok(t),
        _ => Err(Pos { line: 1, column: 1 }.error("expected a tensor `a|b`")),
    }
}

fn parse_value(params: &ParamSet, alg: Option<&Presentation>, src: &str) -> Result<Value> {
    let toks = lex(src)?;
    let mut ep = ExprParser::new(&toks, 0);
    let e = ep.expr()?;
    if toks[ep.at].0 != Tok::Eof {
        let (t, p) = &toks[ep.at];
        return Err(p.error(format!("unexpected {}", t.describe())));
    }
    Ctx { params, algebra: alg }.eval(&e)
}

/// Render a document in the syntax accepted by [`parse_document`].
pub fn print_document(doc: &Document) -> String {
    let mut s = String::new();
    if !doc.params.is_empty() {
        let names: Vec<&str> = doc.params.iter().map(|p| p.name()).collect();
        let _ = writeln!(s, "params {};\n", names.join(", "));
    }
    for m in &doc.models {
        let a = &m.algebra;
        let name = a.name();
        let _ = writeln!(s, "algebra {name} {{");
        let _ = writeln!(s, "    gens {};", a.gens().join(", "));
        let _ = writeln!(s, "    order deglex;");
        let heavy: Vec<String> = a
            .gens()
            .iter()
            .zip(a.weights())
            .filter(|(_, w)| **w != 1)
            .map(|(g, w)| format!("{g} = {w}"))
            .collect();
        if !heavy.is_empty() {
            let _ = writeln!(s, "    weights {};", heavy.join(", "));
        }
        for r in a.rules() {
            let _ = writeln!(s, "    rule {} -> {};", a.show_word(&r.lhs), a.show(&r.rhs));
        }
        let _ = writeln!(s, "}}\n");
        if let Some(c) = &m.coproduct {
            let _ = writeln!(s, "coproduct {name} {{");
            for (g, t) in c.iter().enumerate() {
                let _ = writeln!(s, "    {} -> {};", a.gen_name(g as u16), show_pairs(a, t));
            }
            let _ = writeln!(s, "}}\n");
        }
        if let Some(c) = &m.counit {
            let _ = writeln!(s, "counit {name} {{");
            for (g, v) in c.iter().enumerate() {
                let _ = writeln!(s, "    {} -> {};", a.gen_name(g as u16), v);
            }
            let _ = writeln!(s, "}}\n");
        }
        if let Some(c) = &m.antipode {
            let _ = writeln!(s, "antipode {name} {{");
            for (g, v) in c.iter().enumerate() {
                let _ = writeln!(s, "    {} -> {};", a.gen_name(g as u16), a.show(v));
            }
            let _ = writeln!(s, "}}\n");
        }
        if !m.inverses.is_empty() {
            let _ = writeln!(s, "inverse {name} {{");
            for (x, y) in &m.inverses {
                let _ = writeln!(s, "    {} -> {};", a.show(x), a.show(y));
            }
            let _ = writeln!(s, "}}\n");
        }
        if let Some(b) = &m.braiding {
            let _ = writeln!(s, "braiding {name} {{");
            for (&(u, v), img) in b.entries() {
                let t: TensorTerms = img
                    .iter()
                    .map(|(l, r, c)| ((Word::gen(*l), Word::gen(*r)), c.clone()))
                    .collect();
                let _ = writeln!(s, "    {}|{} -> {};", a.gen_name(u), a.gen_name(v), show_pairs(a, &t));
            }
            let _ = writeln!(s, "}}\n");
        }
    }
    for c in &doc.checks {
        let _ = write!(s, "check {}", c.suites.join(", "));
        if let Some(d) = c.degree {
            let _ = write!(s, " degree {d}");
        }
        let _ = writeln!(s, ";");
    }
    s
}
