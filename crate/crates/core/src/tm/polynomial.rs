//! Integer polynomials over `x, y1, ..., yn`. Variable index 0 is `x`,
//! index `i` is `yi`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Polynomial {
    Const(BigInt),
    Var(usize),
    Neg(Box<Polynomial>),
    Add(Box<Polynomial>, Box<Polynomial>),
    Sub(Box<Polynomial>, Box<Polynomial>),
    Mul(Box<Polynomial>, Box<Polynomial>),
}

/// `coef * prod(vars)`; `vars` is sorted and may repeat.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Monomial {
    pub coef: i64,
    pub vars: Vec<usize>,
}

impl Polynomial {
    pub fn constant(c: i64) -> Self {
        Polynomial::Const(BigInt::from(c))
    }

    pub fn var(i: usize) -> Self {
        Polynomial::Var(i)
    }

    pub fn add(self, rhs: Self) -> Self {
        Polynomial::Add(Box::new(self), Box::new(rhs))
    }

    pub fn sub(self, rhs: Self) -> Self {
        Polynomial::Sub(Box::new(self), Box::new(rhs))
    }

    pub fn mul(self, rhs: Self) -> Self {
        Polynomial::Mul(Box::new(self), Box::new(rhs))
    }

    /// Highest variable index mentioned, if any.
    pub fn max_var(&self) -> Option<usize> {
        match self {
            Polynomial::Const(_) => None,
            Polynomial::Var(i) => Some(*i),
            Polynomial::Neg(a) => a.max_var(),
            Polynomial::Add(a, b) | Polynomial::Sub(a, b) | Polynomial::Mul(a, b) => a.max_var().max(b.max_var()),
        }
    }

    /// Direct evaluation of the expression tree. `point[i]` is variable `i`.
    pub fn eval(&self, point: &[BigInt]) -> BigInt {
        match self {
            Polynomial::Const(c) => c.clone(),
            Polynomial::Var(i) => point[*i].clone(),
            Polynomial::Neg(a) => -a.eval(point),
            Polynomial::Add(a, b) => a.eval(point) + b.eval(point),
            Polynomial::Sub(a, b) => a.eval(point) - b.eval(point),
            Polynomial::Mul(a, b) => a.eval(point) * b.eval(point),
        }
    }

    fn expand(&self) -> BTreeMap<Vec<usize>, BigInt> {
        let mut out = BTreeMap::new();
        match self {
            Polynomial::Const(c) => {
                out.insert(Vec::new(), c.clone());
            }
            Polynomial::Var(i) => {
                out.insert(vec![*i], BigInt::one());
            }
            Polynomial::Neg(a) => {
                for (k, v) in a.expand() {
                    out.insert(k, -v);
                }
            }
            Polynomial::Add(a, b) | Polynomial::Sub(a, b) => {
                let negate = matches!(self, Polynomial::Sub(..));
                out = a.expand();
                for (k, v) in b.expand() {
                    let v = if negate { -v } else { v };
                    *out.entry(k).or_insert_with(BigInt::zero) += v;
                }
            }
            Polynomial::Mul(a, b) => {
                let (ea, eb) = (a.expand(), b.expand());
                for (ka, va) in &ea {
                    for (kb, vb) in &eb {
                        let mut k: Vec<usize> = ka.iter().chain(kb).copied().collect();
                        k.sort_unstable();
                        *out.entry(k).or_insert_with(BigInt::zero) += va * vb;
                    }
                }
            }
        }
        out.retain(|_, v| !v.is_zero());
        out
    }

    /// Expanded sum of monomials with nonzero coefficients, in a fixed order.
    /// `None` when a coefficient does not fit in an `i64`.
    pub fn monomials(&self) -> Option<Vec<Monomial>> {
        self.expand()
            .into_iter()
            .map(|(vars, c)| c.to_i64().map(|coef| Monomial { coef, vars }))
            .collect()
    }

    pub fn degree(&self) -> usize {
        self.expand().keys().map(Vec::len).max().unwrap_or(0)
    }
}

/// Second evaluator: expand to monomials, then sum. Independent of the tree
/// walk in [`Polynomial::eval`].
pub fn eval_naive(p: &Polynomial, point: &[BigInt]) -> BigInt {
    p.expand()
        .into_iter()
        .map(|(vars, c)| vars.iter().fold(c, |acc, &i| acc * &point[i]))
        .sum()
}

fn var_name(i: usize) -> String {
    if i == 0 {
        "x".to_string()
    } else {
        format!("y{i}")
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Polynomial::Const(c) if c.is_negative() => write!(f, "({c})"),
            Polynomial::Const(c) => write!(f, "{c}"),
            Polynomial::Var(i) => f.write_str(&var_name(*i)),
            Polynomial::Neg(a) => write!(f, "-({a})"),
            Polynomial::Add(a, b) => write!(f, "({a} + {b})"),
            Polynomial::Sub(a, b) => write!(f, "({a} - {b})"),
            Polynomial::Mul(a, b) => write!(f, "{a}*{b}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn expands_product_of_sums() {
        // (x + 1) * (x - 1) = x^2 - 1
        let p = Polynomial::var(0).add(Polynomial::constant(1)).mul(Polynomial::var(0).sub(Polynomial::constant(1)));
        let m = p.monomials().unwrap();
        assert_eq!(m, vec![Monomial { coef: -1, vars: vec![] }, Monomial { coef: 1, vars: vec![0, 0] }]);
        assert_eq!(p.degree(), 2);
    }

    #[test]
    fn both_evaluators_agree_on_a_cubic() {
        let p = Polynomial::var(1).mul(Polynomial::var(2)).mul(Polynomial::var(0)).sub(Polynomial::constant(7));
        for point in [[0, 0, 0], [2, 3, 4], [5, 1, 1]] {
            assert_eq!(p.eval(&pt(&point)), eval_naive(&p, &pt(&point)));
        }
    }
}
