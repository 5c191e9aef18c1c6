//! Prenex arithmetic sentences and their text grammar.
//!
//! ```text
//! sentence  := (quant var)* ':' equation
//! quant     := 'E' | 'A'
//! equation  := expr '=' expr | '(' expr '=' expr ')'
//! expr      := term (('+' | '-') term)*
//! term      := factor ('*' factor)*
//! factor    := '-' factor | atom ('^' number)?
//! atom      := number | 'x' | 'y' digits | '(' expr ')'
//! ```
//!
//! The searched variable `x` is implicit and is never quantified in the
//! text. Quantified variables must be `y1 .. yn` in order with tags
//! alternating `E, A, E, ...`.

use std::fmt;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use super::{Polynomial, TmError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Quantifier {
    #[serde(rename = "E")]
    Exists,
    #[serde(rename = "A")]
    ForAll,
}

impl Quantifier {
    /// Tag of the `round`-th quantifier (1-based): odd rounds existential.
    pub fn for_round(round: usize) -> Self {
        if round % 2 == 1 {
            Quantifier::Exists
        } else {
            Quantifier::ForAll
        }
    }
}

/// `Q1 y1 ... Qn yn (exists x) P(x, y1..yn) = 0` over the naturals.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArithmeticSentence {
    pub quantifiers: Vec<Quantifier>,
    pub polynomial: Polynomial,
}

impl ArithmeticSentence {
    pub fn new(n: usize, polynomial: Polynomial) -> Result<Self, TmError> {
        let s = Self { quantifiers: (1..=n).map(Quantifier::for_round).collect(), polynomial };
        s.validate()?;
        Ok(s)
    }

    pub fn n(&self) -> usize {
        self.quantifiers.len()
    }

    pub fn validate(&self) -> Result<(), TmError> {
        for (i, q) in self.quantifiers.iter().enumerate() {
            if *q != Quantifier::for_round(i + 1) {
                return Err(TmError::Parse { pos: 0, msg: format!("quantifier {} breaks the E/A alternation", i + 1) });
            }
        }
        if let Some(v) = self.polynomial.max_var() {
            if v > self.n() {
                return Err(TmError::Parse { pos: 0, msg: format!("y{v} is not quantified") });
            }
        }
        Ok(())
    }
}

/// Exact value of `P(x, vals)`.
pub fn eval_polynomial(sentence: &ArithmeticSentence, x: u64, vals: &[u64]) -> Result<BigInt, TmError> {
    if vals.len() != sentence.n() {
        return Err(TmError::Arity { expected: sentence.n(), got: vals.len() });
    }
    let point: Vec<BigInt> = std::iter::once(x).chain(vals.iter().copied()).map(BigInt::from).collect();
    Ok(sentence.polynomial.eval(&point))
}

impl fmt::Display for ArithmeticSentence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, q) in self.quantifiers.iter().enumerate() {
            let tag = match q {
                Quantifier::Exists => "E",
                Quantifier::ForAll => "A",
            };
            write!(f, "{tag} y{} ", i + 1)?;
        }
        write!(f, ": ({} = 0)", self.polynomial)
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err<T>(&self, msg: impl Into<String>) -> Result<T, TmError> {
        Err(TmError::Parse { pos: self.pos, msg: msg.into() })
    }

    fn ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> Result<(), TmError> {
        if self.eat(c) {
            Ok(())
        } else {
            self.err(format!("expected '{}'", c as char))
        }
    }

    fn digits(&mut self) -> Option<&'a str> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        (self.pos > start).then(|| std::str::from_utf8(&self.src[start..self.pos]).unwrap())
    }

    fn variable(&mut self) -> Result<usize, TmError> {
        match self.peek() {
            Some(b'x') => {
                self.pos += 1;
                Ok(0)
            }
            Some(b'y') => {
                self.pos += 1;
                match self.digits().and_then(|d| d.parse::<usize>().ok()) {
                    Some(i) if i >= 1 => Ok(i),
                    _ => self.err("expected variable index after 'y'"),
                }
            }
            _ => self.err("expected variable"),
        }
    }

    fn atom(&mut self) -> Result<Polynomial, TmError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect(b')')?;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let d = self.digits().unwrap();
                Ok(Polynomial::Const(d.parse::<BigInt>().unwrap()))
            }
            Some(b'x') | Some(b'y') => Ok(Polynomial::Var(self.variable()?)),
            _ => self.err("expected number, variable or '('"),
        }
    }

    fn factor(&mut self) -> Result<Polynomial, TmError> {
        if self.eat(b'-') {
            return Ok(Polynomial::Neg(Box::new(self.factor()?)));
        }
        let base = self.atom()?;
        if self.eat(b'^') {
            self.ws();
            let Some(e) = self.digits().and_then(|d| d.parse::<u32>().ok()) else {
                return self.err("expected exponent");
            };
            if e == 0 {
                return Ok(Polynomial::constant(1));
            }
            let mut acc = base.clone();
            for _ in 1..e {
                acc = acc.mul(base.clone());
            }
            return Ok(acc);
        }
        Ok(base)
    }

    fn term(&mut self) -> Result<Polynomial, TmError> {
        let mut t = self.factor()?;
        while self.eat(b'*') {
            t = t.mul(self.factor()?);
        }
        Ok(t)
    }

    fn expr(&mut self) -> Result<Polynomial, TmError> {
        let mut e = self.term()?;
        loop {
            if self.eat(b'+') {
                e = e.add(self.term()?);
            } else if self.eat(b'-') {
                e = e.sub(self.term()?);
            } else {
                return Ok(e);
            }
        }
    }

    fn equation(&mut self) -> Result<Polynomial, TmError> {
        let start = self.pos;
        if self.eat(b'(') {
            if let Ok(lhs) = self.expr() {
                if self.eat(b'=') {
                    let rhs = self.expr()?;
                    self.expect(b')')?;
                    return Ok(lhs.sub(rhs));
                }
            }
            self.pos = start;
        }
        let lhs = self.expr()?;
        self.expect(b'=')?;
        let rhs = self.expr()?;
        Ok(lhs.sub(rhs))
    }
}

pub fn parse_sentence(text: &str) -> Result<ArithmeticSentence, TmError> {
    let mut p = Parser { src: text.as_bytes(), pos: 0 };
    let mut quantifiers = Vec::new();
    loop {
        let q = match p.peek() {
            Some(b'E') => Quantifier::Exists,
            Some(b'A') => Quantifier::ForAll,
            Some(b':') => break,
            _ => return p.err("expected 'E', 'A' or ':'"),
        };
        p.pos += 1;
        let v = p.variable()?;
        if v != quantifiers.len() + 1 {
            return p.err(format!("expected y{}", quantifiers.len() + 1));
        }
        quantifiers.push(q);
    }
    p.expect(b':')?;
    let polynomial = p.equation()?;
    if p.peek().is_some() {
        return p.err("trailing input");
    }
    let s = ArithmeticSentence { quantifiers, polynomial };
    s.validate()?;
    Ok(s)
}
