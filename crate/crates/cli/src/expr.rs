//! Expressions over generators, with `*` the stuffle product.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary ('*' unary)*
//! unary  := '-' unary | power
//! power  := atom ('^' nat)?
//! atom   := rational | G[k,…] | G[{k,…},{d,…}] | b-letters | op '(' expr ')' | '(' expr ')'
//! ```

use std::fmt;

use fmes_core::arith::{fmt_rational, parse_rational};
use fmes_core::balanced::phi_lc;
use fmes_core::derivations::{apply_d, apply_delta, apply_omega, apply_t, apply_w};
use fmes_core::qshuffle::stuffle_lc;
use fmes_core::swap::swap;
use fmes_core::{AWord, BLetter, BWord, LinComb, Rational};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExprError {
    #[error("syntax error at column {col}: {msg}")]
    Syntax { col: usize, msg: String },
    #[error("unknown operator `{name}` at column {col}")]
    UnknownOperator { name: String, col: usize },
    #[error(transparent)]
    Core(#[from] fmes_core::Error),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Operator {
    D,
    W,
    Delta,
    Omega,
    T,
    Swap,
}

impl Operator {
    pub fn parse(name: &str) -> Option<Operator> {
        Some(match name {
            "D" => Operator::D,
            "W" => Operator::W,
            "delta" => Operator::Delta,
            "omega" => Operator::Omega,
            "t" => Operator::T,
            "swap" => Operator::Swap,
            _ => return None,
        })
    }

    pub fn name(self) -> &'static str {
        match self {
            Operator::D => "D",
            Operator::W => "W",
            Operator::Delta => "delta",
            Operator::Omega => "omega",
            Operator::T => "t",
            Operator::Swap => "swap",
        }
    }

    pub fn apply(self, x: &LinComb<AWord>) -> LinComb<AWord> {
        match self {
            Operator::D => apply_d(x),
            Operator::W => apply_w(x),
            Operator::Delta => apply_delta(x),
            Operator::Omega => apply_omega(x),
            Operator::T => apply_t(x),
            Operator::Swap => swap(x),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Num(Rational),
    Gen(AWord),
    Balanced(BWord),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Neg(Box<Expr>),
    Pow(Box<Expr>, u32),
    Apply(Operator, Box<Expr>),
}

impl Expr {
    fn precedence(&self) -> u8 {
        match self {
            Expr::Add(..) | Expr::Sub(..) => 1,
            Expr::Mul(..) => 2,
            Expr::Neg(..) => 3,
            Expr::Pow(..) => 4,
            _ => 5,
        }
    }

    /// Evaluates to a combination of bi-indexed words, refusing weights above `cutoff`.
    pub fn evaluate(&self, cutoff: u32) -> Result<LinComb<AWord>, ExprError> {
        let x = match self {
            Expr::Num(q) => LinComb::constant(q.clone()),
            Expr::Gen(w) => LinComb::single(w.clone()),
            Expr::Balanced(w) => phi_lc(&LinComb::single(w.clone()))?,
            Expr::Add(a, b) => a.evaluate(cutoff)? + b.evaluate(cutoff)?,
            Expr::Sub(a, b) => a.evaluate(cutoff)? - b.evaluate(cutoff)?,
            Expr::Mul(a, b) => {
                let (x, y) = (a.evaluate(cutoff)?, b.evaluate(cutoff)?);
                within(x.max_weight().unwrap_or(0) + y.max_weight().unwrap_or(0), cutoff)?;
                stuffle_lc(&x, &y)
            }
            Expr::Neg(a) => -a.evaluate(cutoff)?,
            Expr::Pow(a, n) => {
                let x = a.evaluate(cutoff)?;
                within(x.max_weight().unwrap_or(0) * n, cutoff)?;
                (0..*n).fold(LinComb::one(), |acc, _| stuffle_lc(&acc, &x))
            }
            Expr::Apply(op, a) => op.apply(&a.evaluate(cutoff)?),
        };
        within(x.max_weight().unwrap_or(0), cutoff)?;
        Ok(x)
    }
}

fn within(weight: u32, cutoff: u32) -> Result<(), ExprError> {
    if weight > cutoff {
        return Err(fmes_core::Error::CutoffExceeded { weight, cutoff }.into());
    }
    Ok(())
}

fn join(xs: &[u32]) -> String {
    xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = self.precedence();
        let wrap = |e: &Expr, need: bool| if need { format!("({e})") } else { e.to_string() };
        match self {
            Expr::Num(q) => write!(f, "{}", fmt_rational(q)),
            Expr::Gen(w) if w.is_empty() => write!(f, "G[]"),
            Expr::Gen(w) if w.lwt() == 0 => write!(f, "G[{}]", join(&w.ks())),
            Expr::Gen(w) => write!(f, "G[{{{}}},{{{}}}]", join(&w.ks()), join(&w.ds())),
            Expr::Balanced(w) => write!(f, "{w}"),
            Expr::Add(a, b) => write!(f, "{} + {}", wrap(a, a.precedence() < p), wrap(b, b.precedence() <= p)),
            Expr::Sub(a, b) => write!(f, "{} - {}", wrap(a, a.precedence() < p), wrap(b, b.precedence() <= p)),
            Expr::Mul(a, b) => write!(f, "{}*{}", wrap(a, a.precedence() < p), wrap(b, b.precedence() <= p)),
            Expr::Neg(a) => write!(f, "-{}", wrap(a, a.precedence() < p)),
            Expr::Pow(a, n) => write!(f, "{}^{n}", wrap(a, a.precedence() <= p)),
            Expr::Apply(op, a) => write!(f, "{}({a})", op.name()),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(String),
    Ident(String),
    Sym(char),
}

fn lex(s: &str) -> Result<Vec<(Tok, usize)>, ExprError> {
    let chars: Vec<char> = s.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            if i + 1 < chars.len() && chars[i] == '/' && chars[i + 1].is_ascii_digit() {
                i += 1;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
            }
            out.push((Tok::Num(chars[start..i].iter().collect()), col));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push((Tok::Ident(chars[start..i].iter().collect()), col));
        } else if "+-*^()[]{},".contains(c) {
            out.push((Tok::Sym(c), col));
            i += 1;
        } else {
            return Err(ExprError::Syntax { col, msg: format!("unexpected character `{c}`") });
        }
    }
    Ok(out)
}

fn b_index(name: &str) -> Option<u32> {
    name.strip_prefix('b')
        .filter(|r| !r.is_empty() && r.chars().all(|c| c.is_ascii_digit()))
        .and_then(|r| r.parse().ok())
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.0)
    }

    fn col(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |t| t.1)
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T, ExprError> {
        Err(ExprError::Syntax { col: self.col(), msg: msg.into() })
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<(), ExprError> {
        if self.eat(c) {
            Ok(())
        } else {
            self.err(format!("expected `{c}`"))
        }
    }

    fn expr(&mut self) -> Result<Expr, ExprError> {
        let mut lhs = self.term()?;
        loop {
            if self.eat('+') {
                lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
            } else if self.eat('-') {
                lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> Result<Expr, ExprError> {
        let mut lhs = self.unary()?;
        while self.eat('*') {
            lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Expr, ExprError> {
        if self.eat('-') {
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        let base = self.atom()?;
        if self.eat('^') {
            let n = self.nat()?;
            return Ok(Expr::Pow(Box::new(base), n));
        }
        Ok(base)
    }

    fn nat(&mut self) -> Result<u32, ExprError> {
        match self.peek().cloned() {
            Some(Tok::Num(s)) if !s.contains('/') => match s.parse() {
                Ok(n) => {
                    self.pos += 1;
                    Ok(n)
                }
                Err(_) => self.err("integer too large"),
            },
            _ => self.err("expected a nonnegative integer"),
        }
    }

    fn list(&mut self, close: char) -> Result<Vec<u32>, ExprError> {
        let mut out = Vec::new();
        if self.eat(close) {
            return Ok(out);
        }
        loop {
            out.push(self.nat()?);
            if self.eat(close) {
                return Ok(out);
            }
            if !self.eat(',') {
                return self.err(format!("expected `,` or `{close}`"));
            }
        }
    }

    fn generator(&mut self) -> Result<Expr, ExprError> {
        let col = self.col();
        self.expect('[')?;
        let (ks, ds) = if self.eat('{') {
            let ks = self.list('}')?;
            self.expect(',')?;
            self.expect('{')?;
            let ds = self.list('}')?;
            self.expect(']')?;
            (ks, ds)
        } else {
            let ks = self.list(']')?;
            let ds = vec![0; ks.len()];
            (ks, ds)
        };
        if ks.len() != ds.len() {
            return Err(ExprError::Syntax { col, msg: format!("{} entries k but {} entries d", ks.len(), ds.len()) });
        }
        if ks.contains(&0) {
            return Err(ExprError::Syntax { col, msg: "entries k must be at least 1".into() });
        }
        Ok(Expr::Gen(AWord::from_kd(&ks, &ds)))
    }

    fn atom(&mut self) -> Result<Expr, ExprError> {
        let col = self.col();
        match self.peek().cloned() {
            Some(Tok::Num(s)) => {
                self.pos += 1;
                match parse_rational(&s) {
                    Some(q) => Ok(Expr::Num(q)),
                    None => Err(ExprError::Syntax { col, msg: format!("bad rational `{s}`") }),
                }
            }
            Some(Tok::Sym('(')) => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect(')')?;
                Ok(e)
            }
            Some(Tok::Ident(name)) if name == "G" => {
                self.pos += 1;
                self.generator()
            }
            Some(Tok::Ident(name)) if b_index(&name).is_some() => {
                let mut letters = Vec::new();
                while let Some(Tok::Ident(n)) = self.peek() {
                    match b_index(n) {
                        Some(i) => letters.push(BLetter(i)),
                        None => break,
                    }
                    self.pos += 1;
                }
                let w = BWord::new(letters);
                if !w.is_in_b0() {
                    return Err(ExprError::Syntax { col, msg: format!("balanced word `{w}` starts with b0") });
                }
                Ok(Expr::Balanced(w))
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                let Some(op) = Operator::parse(&name) else {
                    return Err(ExprError::UnknownOperator { name, col });
                };
                self.expect('(')?;
                let e = self.expr()?;
                self.expect(')')?;
                Ok(Expr::Apply(op, Box::new(e)))
            }
            Some(Tok::Sym(c)) => self.err(format!("unexpected `{c}`")),
            None => self.err("unexpected end of input"),
        }
    }
}

pub fn parse(text: &str) -> Result<Expr, ExprError> {
    let toks = lex(text)?;
    let end = text.chars().count() + 1;
    let mut p = Parser { toks, pos: 0, end };
    let e = p.expr()?;
    if p.pos != p.toks.len() {
        return p.err("trailing input");
    }
    Ok(e)
}

/// The canonical spelling of an expression.
pub fn normalize(text: &str) -> Result<String, ExprError> {
    Ok(parse(text)?.to_string())
}

pub fn eval_str(text: &str, cutoff: u32) -> Result<LinComb<AWord>, ExprError> {
    parse(text)?.evaluate(cutoff)
}
