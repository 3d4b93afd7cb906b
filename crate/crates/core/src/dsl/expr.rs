use num_bigint::BigInt;
use num_traits::ToPrimitive;

use super::lexer::{Pos, Tok};
use crate::braided::TensorTerms;
use crate::error::Result;
use crate::freealg::{Element, Presentation, Word};
use crate::scalars::{ParamSet, Scalar};

#[derive(Clone, Debug)]
pub enum Expr {
    Int(BigInt, Pos),
    Ident(String, Pos),
    Neg(Box<Expr>, Pos),
    Bin(Op, Box<Expr>, Box<Expr>, Pos),
    Pow(Box<Expr>, i64, Pos),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Op {
    Add,
    Sub,
    Mul,
    Div,
    Dot,
    Bar,
}

impl Expr {
    pub fn pos(&self) -> Pos {
        match self {
            Expr::Int(_, p) | Expr::Ident(_, p) | Expr::Neg(_, p) | Expr::Bin(_, _, _, p) | Expr::Pow(_, _, p) => *p,
        }
    }
}

/// Recursive-descent expression parser over a token slice.
pub struct ExprParser<'a> {
    toks: &'a [(Tok, Pos)],
    pub at: usize,
}

impl<'a> ExprParser<'a> {
    pub fn new(toks: &'a [(Tok, Pos)], at: usize) -> Self {
        ExprParser { toks, at }
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.at].0
    }

    fn pos(&self) -> Pos {
        self.toks[self.at].1
    }

    fn bump(&mut self) -> (Tok, Pos) {
        let t = self.toks[self.at].clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    /// `sum := term (('+'|'-') term)*`
    pub fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.product()?;
        loop {
            let op = match self.peek() {
                Tok::Plus => Op::Add,
                Tok::Minus => Op::Sub,
                _ => return Ok(lhs),
            };
            let (_, p) = self.bump();
            let rhs = self.product()?;
            lhs = Expr::Bin(op, Box::new(lhs), Box::new(rhs), p);
        }
    }

    fn product(&mut self) -> Result<Expr> {
        let mut lhs = self.tensor()?;
        loop {
            let op = match self.peek() {
                Tok::Star => Op::Mul,
                Tok::Slash => Op::Div,
                _ => return Ok(lhs),
            };
            let (_, p) = self.bump();
            let rhs = self.tensor()?;
            lhs = Expr::Bin(op, Box::new(lhs), Box::new(rhs), p);
        }
    }

    fn tensor(&mut self) -> Result<Expr> {
        let lhs = self.dotted()?;
        if *self.peek() == Tok::Bar {
            let (_, p) = self.bump();
            let rhs = self.dotted()?;
            if *self.peek() == Tok::Bar {
                return Err(self.pos().error("only two-fold tensors are supported"));
            }
            return Ok(Expr::Bin(Op::Bar, Box::new(lhs), Box::new(rhs), p));
        }
        Ok(lhs)
    }

    fn dotted(&mut self) -> Result<Expr> {
        let mut lhs = self.unary()?;
        while *self.peek() == Tok::Dot {
            let (_, p) = self.bump();
            let rhs = self.unary()?;
            lhs = Expr::Bin(Op::Dot, Box::new(lhs), Box::new(rhs), p);
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Expr> {
        if *self.peek() == Tok::Minus {
            let (_, p) = self.bump();
            let inner = self.unary()?;
            return Ok(Expr::Neg(Box::new(inner), p));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr> {
        let base = self.atom()?;
        if *self.peek() != Tok::Caret {
            return Ok(base);
        }
        let (_, p) = self.bump();
        let neg = if *self.peek() == Tok::Minus {
            self.bump();
            true
        } else {
            false
        };
        let (t, ep) = self.bump();
        let Tok::Int(n) = t else {
            return Err(ep.error(format!("expected an integer exponent, found {}", t.describe())));
        };
        let n = n.to_i64().filter(|n| *n <= i32::MAX as i64).ok_or_else(|| ep.error("exponent too large"))?;
        Ok(Expr::Pow(Box::new(base), if neg { -n } else { n }, p))
    }

    fn atom(&mut self) -> Result<Expr> {
        let (t, p) = self.bump();
        match t {
            Tok::Int(n) => Ok(Expr::Int(n, p)),
            Tok::Ident(s) => Ok(Expr::Ident(s, p)),
            Tok::LParen => {
                let e = self.expr()?;
                let (t, q) = self.bump();
                if t != Tok::RParen {
                    return Err(q.error(format!("expected `)`, found {}", t.describe())));
                }
                Ok(e)
            }
            other => Err(p.error(format!("expected an expression, found {}", other.describe()))),
        }
    }
}

/// Values an expression can denote.
#[derive(Clone, Debug, PartialEq)]
pub enum Value {
    Scalar(Scalar),
    Elem(Element),
    Tensor(TensorTerms),
}

impl Value {
    fn into_elem(self) -> Option<Element> {
        match self {
            Value::Scalar(s) => Some(Element::scalar(s)),
            Value::Elem(e) => Some(e),
            Value::Tensor(_) => None,
        }
    }
}

/// Evaluation context: parameters and, optionally, an algebra's generators.
pub struct Ctx<'a> {
    pub params: &'a ParamSet,
    pub algebra: Option<&'a Presentation>,
}

fn add_pair(t: &mut TensorTerms, k: (Word, Word), c: Scalar) {
    if c.is_zero() {
        return;
    }
    let s = match t.get(&k) {
        Some(d) => d + &c,
        None => c,
    };
    if s.is_zero() {
        t.remove(&k);
    } else {
        t.insert(k, s);
    }
}

fn scale_tensor(t: &TensorTerms, c: &Scalar) -> TensorTerms {
    let mut out = TensorTerms::new();
    for (k, d) in t {
        add_pair(&mut out, k.clone(), d * c);
    }
    out
}

impl Ctx<'_> {
    pub fn eval(&self, e: &Expr) -> Result<Value> {
        match e {
            Expr::Int(n, _) => Ok(Value::Scalar(Scalar::from_bigint(n.clone()))),
            Expr::Ident(name, p) => {
                if name == "i" {
                    return Ok(Value::Scalar(Scalar::i()));
                }
                if self.params.contains(name) {
                    return Ok(Value::Scalar(Scalar::param(name)));
                }
                if let Some(a) = self.algebra {
                    if let Ok(g) = a.gen(name) {
                        return Ok(Value::Elem(Element::gen(g)));
                    }
                }
                Err(p.error(format!("unknown identifier `{name}`")))
            }
            Expr::Neg(inner, _) => Ok(match self.eval(inner)? {
                Value::Scalar(s) => Value::Scalar(-s),
                Value::Elem(x) => Value::Elem(-x),
                Value::Tensor(t) => Value::Tensor(scale_tensor(&t, &Scalar::from_int(-1))),
            }),
            Expr::Pow(base, n, p) => match self.eval(base)? {
                Value::Scalar(s) => Ok(Value::Scalar(s.pow(*n as i32).map_err(|err| p.error(err.to_string()))?)),
                Value::Elem(x) => {
                    if *n < 0 {
                        return Err(p.error("negative powers apply to scalars only"));
                    }
                    let mut acc = Element::one();
                    for _ in 0..*n {
                        acc = acc.free_mul(&x);
                    }
                    Ok(Value::Elem(acc))
                }
                Value::Tensor(_) => Err(p.error("cannot raise a tensor to a power")),
            },
            Expr::Bin(op, a, b, p) => {
                let (va, vb) = (self.eval(a)?, self.eval(b)?);
                self.binary(*op, va, vb, *p)
            }
        }
    }

    fn binary(&self, op: Op, a: Value, b: Value, p: Pos) -> Result<Value> {
        use Value::*;
        match op {
            Op::Add | Op::Sub => {
                let sign = if op == Op::Add { crate::scalars::Scalar::one() } else { crate::scalars::Scalar::from_int(-1) };
                match (a, b) {
                    (Scalar(x), Scalar(y)) => Ok(Scalar(&x + &(&y * &sign))),
                    (Tensor(x), Tensor(y)) => {
                        let mut out = x;
                        for (k, c) in y {
                            add_pair(&mut out, k, &c * &sign);
                        }
                        Ok(Tensor(out))
                    }
                    (Tensor(_), _) | (_, Tensor(_)) => Err(p.error("cannot add a tensor and a non-tensor")),
                    (x, y) => {
                        let mut out = x.into_elem().unwrap();
                        out.add_scaled(&y.into_elem().unwrap(), &sign);
                        Ok(Elem(out))
                    }
                }
            }
            Op::Mul | Op::Dot => match (a, b) {
                (Scalar(x), Scalar(y)) => Ok(Scalar(&x * &y)),
                (Scalar(s), Elem(e)) | (Elem(e), Scalar(s)) => Ok(Elem(e.scale(&s))),
                (Scalar(s), Tensor(t)) | (Tensor(t), Scalar(s)) => Ok(Tensor(scale_tensor(&t, &s))),
                (Elem(x), Elem(y)) => Ok(Elem(x.free_mul(&y))),
                _ => Err(p.error("tensors can only be scaled")),
            },
            Op::Div => {
                let Scalar(d) = b else {
                    return Err(p.error("division is by scalars only"));
                };
                let inv = d.inv().map_err(|e| p.error(e.to_string()))?;
                match a {
                    Scalar(x) => Ok(Scalar(&x * &inv)),
                    Elem(e) => Ok(Elem(e.scale(&inv))),
                    Tensor(t) => Ok(Tensor(scale_tensor(&t, &inv))),
                }
            }
            Op::Bar => {
                let (Some(x), Some(y)) = (a.into_elem(), b.into_elem()) else {
                    return Err(p.error("nested tensor products are not supported"));
                };
                let mut out = TensorTerms::new();
                for (wa, ca) in x.terms() {
                    for (wb, cb) in y.terms() {
                        add_pair(&mut out, (wa.clone(), wb.clone()), ca * cb);
                    }
                }
                Ok(Tensor(out))
            }
        }
    }
}
