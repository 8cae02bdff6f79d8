//! A small language for virtual-bundle combinations.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := factor ('*' factor)*
//! factor := '-' factor | integer | T | V | L | LamK(expr) | SymK(expr) | '(' expr ')'
//! ```
//!
//! `T`, `V`, `L` are the rank-reduced complexified tangent, auxiliary and
//! line bundles; an integer n is the trivial bundle of rank n, so `2*T` is
//! T ⊕ T; `*` is the tensor product.

use crate::algebra::Family;
use crate::error::{Error, Result};
use crate::lambda::{lambda_power, sym_power, VirtualBundle};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BundleExpr {
    Trivial(i64),
    Tangent,
    Aux,
    Line,
    Lambda(u32, Box<BundleExpr>),
    Sym(u32, Box<BundleExpr>),
    Neg(Box<BundleExpr>),
    Sum(Box<BundleExpr>, Box<BundleExpr>),
    Diff(Box<BundleExpr>, Box<BundleExpr>),
    Tensor(Box<BundleExpr>, Box<BundleExpr>),
}

/// The bundles the atoms stand for.
#[derive(Clone, Debug)]
pub struct BundleContext {
    pub trunc: u32,
    pub tangent: VirtualBundle,
    pub aux: Option<VirtualBundle>,
    pub line: Option<VirtualBundle>,
}

impl BundleContext {
    pub fn new(trunc: u32, with_aux: bool, with_line: bool) -> Self {
        BundleContext {
            trunc,
            tangent: VirtualBundle::reduced_complexified(Family::X, trunc),
            aux: with_aux.then(|| VirtualBundle::reduced_complexified(Family::V, trunc)),
            line: with_line.then(|| VirtualBundle::reduced_complexified(Family::Line, trunc)),
        }
    }
}

impl BundleExpr {
    pub fn parse(s: &str) -> Result<BundleExpr> {
        let mut p = Parser { src: s.as_bytes(), pos: 0 };
        let e = p.expr()?;
        p.skip_ws();
        if p.pos != p.src.len() {
            return Err(p.error("trailing input"));
        }
        Ok(e)
    }

    pub fn eval(&self, ctx: &BundleContext) -> Result<VirtualBundle> {
        Ok(match self {
            BundleExpr::Trivial(n) => VirtualBundle::trivial(*n, ctx.trunc),
            BundleExpr::Tangent => ctx.tangent.clone(),
            BundleExpr::Aux => ctx.aux.clone().ok_or(Error::MissingAuxBundle("V"))?,
            BundleExpr::Line => ctx.line.clone().ok_or(Error::MissingAuxBundle("L"))?,
            BundleExpr::Lambda(k, e) => lambda_power(*k, &e.eval(ctx)?),
            BundleExpr::Sym(k, e) => sym_power(*k, &e.eval(ctx)?),
            BundleExpr::Neg(e) => e.eval(ctx)?.multiple(-1),
            BundleExpr::Sum(a, b) => a.eval(ctx)?.direct_sum(&b.eval(ctx)?),
            BundleExpr::Diff(a, b) => a.eval(ctx)?.difference(&b.eval(ctx)?),
            BundleExpr::Tensor(a, b) => a.eval(ctx)?.tensor(&b.eval(ctx)?),
        })
    }

    pub fn uses_aux(&self) -> bool {
        self.any(&|e| matches!(e, BundleExpr::Aux))
    }

    pub fn uses_line(&self) -> bool {
        self.any(&|e| matches!(e, BundleExpr::Line))
    }

    fn any(&self, pred: &dyn Fn(&BundleExpr) -> bool) -> bool {
        if pred(self) {
            return true;
        }
        match self {
            BundleExpr::Lambda(_, e) | BundleExpr::Sym(_, e) | BundleExpr::Neg(e) => e.any(pred),
            BundleExpr::Sum(a, b) | BundleExpr::Diff(a, b) | BundleExpr::Tensor(a, b) => a.any(pred) || b.any(pred),
            _ => false,
        }
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn error(&self, what: &str) -> Error {
        Error::Parse(format!("{what} at offset {} in bundle expression", self.pos))
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> Result<()> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(&format!("expected `{}`", c as char)))
        }
    }

    fn number(&mut self) -> Result<u64> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .unwrap()
            .parse()
            .map_err(|_| self.error("expected a number"))
    }

    fn expr(&mut self) -> Result<BundleExpr> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc = BundleExpr::Sum(Box::new(acc), Box::new(self.term()?));
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc = BundleExpr::Diff(Box::new(acc), Box::new(self.term()?));
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<BundleExpr> {
        let mut acc = self.factor()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            acc = BundleExpr::Tensor(Box::new(acc), Box::new(self.factor()?));
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<BundleExpr> {
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                Ok(BundleExpr::Neg(Box::new(self.factor()?)))
            }
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                self.eat(b')')?;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.number()?;
                i64::try_from(n)
                    .map(BundleExpr::Trivial)
                    .map_err(|_| self.error("rank out of range"))
            }
            Some(_) => {
                let rest = &self.src[self.pos..];
                for (name, atom) in [("T", BundleExpr::Tangent), ("V", BundleExpr::Aux), ("L", BundleExpr::Line)] {
                    let next = rest.get(1).copied();
                    if rest.starts_with(name.as_bytes()) && !next.is_some_and(|c| c.is_ascii_alphanumeric()) {
                        self.pos += 1;
                        return Ok(atom);
                    }
                }
                for op in ["Lam", "Sym"] {
                    if rest.starts_with(op.as_bytes()) {
                        self.pos += op.len();
                        let k = self.number()? as u32;
                        self.eat(b'(')?;
                        let e = Box::new(self.expr()?);
                        self.eat(b')')?;
                        return Ok(if op == "Lam" {
                            BundleExpr::Lambda(k, e)
                        } else {
                            BundleExpr::Sym(k, e)
                        });
                    }
                }
                Err(self.error("unexpected token"))
            }
            None => Err(self.error("unexpected end")),
        }
    }
}
