//! Ratio-numbers: rationals as raw integer pairs with no canonicalization.
//!
//! `(1,2)` and `(2,4)` are different instances that are label-equal. Num and
//! Denom read the components directly, so they respect instance equality but
//! not label equality.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde_json::Value;
use thiserror::Error;

use crate::term::{Format, SyntaxError, Term};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatioNumber {
    pub a: BigInt,
    pub b: BigInt,
}

impl RatioNumber {
    pub fn new(a: impl Into<BigInt>, b: impl Into<BigInt>) -> Self {
        RatioNumber { a: a.into(), b: b.into() }
    }

    pub fn to_json(&self) -> Value {
        Value::Array(vec![crate::int_json(&self.a), crate::int_json(&self.b)])
    }
}

impl fmt::Display for RatioNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.a, self.b)
    }
}

/// `s(p)`: 1, -1 or 0.
pub fn sign(p: &BigInt) -> BigInt {
    if p.is_zero() {
        BigInt::zero()
    } else if p.is_positive() {
        BigInt::one()
    } else {
        -BigInt::one()
    }
}

pub fn rn_zero() -> RatioNumber {
    RatioNumber::new(0, 1)
}

pub fn rn_one() -> RatioNumber {
    RatioNumber::new(1, 1)
}

pub fn rn_neg(x: &RatioNumber) -> RatioNumber {
    RatioNumber { a: -&x.a, b: x.b.clone() }
}

pub fn rn_mul(x: &RatioNumber, y: &RatioNumber) -> RatioNumber {
    RatioNumber { a: &x.a * &y.a, b: &x.b * &y.b }
}

/// `1/(a,b) = (b, a·s²(b))`
pub fn rn_inv(x: &RatioNumber) -> RatioNumber {
    let s = sign(&x.b);
    RatioNumber { a: x.b.clone(), b: &x.a * &s * &s }
}

pub fn rn_div(x: &RatioNumber, y: &RatioNumber) -> RatioNumber {
    rn_mul(x, &rn_inv(y))
}

/// Which formula `+` uses.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum AddRule {
    /// `(a·d + b·c, b·d)`
    #[default]
    CrossMultiply,
    /// `(a·c + b·d, b·d)`, as printed in the source algebra. Not a
    /// homomorphism to the rationals; kept for comparison.
    Verbatim,
}

pub fn rn_add(x: &RatioNumber, y: &RatioNumber) -> RatioNumber {
    rn_add_with(x, y, AddRule::CrossMultiply)
}

pub fn rn_add_with(x: &RatioNumber, y: &RatioNumber, rule: AddRule) -> RatioNumber {
    let (a, b, c, d) = (&x.a, &x.b, &y.a, &y.b);
    let first = match rule {
        AddRule::CrossMultiply => a * d + b * c,
        AddRule::Verbatim => a * c + b * d,
    };
    RatioNumber { a: first, b: b * d }
}

pub fn rn_num(x: &RatioNumber) -> RatioNumber {
    RatioNumber { a: x.a.clone(), b: BigInt::one() }
}

pub fn rn_denom(x: &RatioNumber) -> RatioNumber {
    RatioNumber { a: x.b.clone(), b: BigInt::one() }
}

/// `=_RN`: componentwise identity.
pub fn rn_instance_eq(x: &RatioNumber, y: &RatioNumber) -> bool {
    x.a == y.a && x.b == y.b
}

/// `≡_rat`: both second components zero, or both nonzero with `a·d = b·c`.
pub fn rn_label_eq(x: &RatioNumber, y: &RatioNumber) -> bool {
    let (b_zero, d_zero) = (x.b.is_zero(), y.b.is_zero());
    (b_zero && d_zero) || (!b_zero && !d_zero && &x.a * &y.b == &x.b * &y.a)
}

/// A closed term, optionally wrapped in `Num(..)` / `Denom(..)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RnExpr {
    Term(Term),
    Num(Box<RnExpr>),
    Denom(Box<RnExpr>),
}

impl RnExpr {
    /// Accepts `num(<expr>)`, `denom(<expr>)` or a plain term.
    pub fn parse(text: &str, format: Format) -> Result<RnExpr, SyntaxError> {
        let trimmed = text.trim();
        for (prefix, wrap) in [
            ("num(", RnExpr::Num as fn(Box<RnExpr>) -> RnExpr),
            ("denom(", RnExpr::Denom),
        ] {
            if let Some(rest) = trimmed.strip_prefix(prefix) {
                if let Some(inner) = rest.strip_suffix(')') {
                    if balanced(inner) {
                        return Ok(wrap(Box::new(RnExpr::parse(inner, format)?)));
                    }
                }
            }
        }
        crate::term::parse(trimmed, format).map(RnExpr::Term)
    }
}

fn balanced(s: &str) -> bool {
    let mut depth = 0i32;
    for c in s.chars() {
        match c {
            '(' => depth += 1,
            ')' => {
                depth -= 1;
                if depth < 0 {
                    return false;
                }
            }
            _ => {}
        }
    }
    depth == 0
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RnError {
    #[error("term is not closed: {0}")]
    OpenTerm(String),
}

/// Interprets a closed term as a ratio-number. Numerals `n` map to `(n, 1)`
/// and `x - y` is read as `x + (-y)`.
pub fn rn_eval_term(t: &Term, rule: AddRule) -> Result<RatioNumber, RnError> {
    Ok(match t {
        Term::Lit(n) => RatioNumber { a: n.value(), b: BigInt::one() },
        Term::Var(v) => return Err(RnError::OpenTerm(v.clone())),
        Term::Neg(a) => rn_neg(&rn_eval_term(a, rule)?),
        Term::Add(a, b) => rn_add_with(&rn_eval_term(a, rule)?, &rn_eval_term(b, rule)?, rule),
        Term::Sub(a, b) => rn_add_with(
            &rn_eval_term(a, rule)?,
            &rn_neg(&rn_eval_term(b, rule)?),
            rule,
        ),
        Term::Mul(a, b) => rn_mul(&rn_eval_term(a, rule)?, &rn_eval_term(b, rule)?),
        Term::Div(a, b, _) => rn_div(&rn_eval_term(a, rule)?, &rn_eval_term(b, rule)?),
    })
}

pub fn rn_eval(e: &RnExpr, rule: AddRule) -> Result<RatioNumber, RnError> {
    match e {
        RnExpr::Term(t) => rn_eval_term(t, rule),
        RnExpr::Num(inner) => Ok(rn_num(&rn_eval(inner, rule)?)),
        RnExpr::Denom(inner) => Ok(rn_denom(&rn_eval(inner, rule)?)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rn(a: i64, b: i64) -> RatioNumber {
        RatioNumber::new(a, b)
    }

    fn eval(s: &str) -> RatioNumber {
        rn_eval(&RnExpr::parse(s, Format::Inline).unwrap(), AddRule::CrossMultiply).unwrap()
    }

    #[test]
    fn constants() {
        assert_eq!(rn_zero(), rn(0, 1));
        assert_eq!(rn_one(), rn(1, 1));
    }

    #[test]
    fn inverse_rule() {
        assert_eq!(rn_inv(&rn(2, 4)), rn(4, 2));
        assert_eq!(rn_inv(&rn(5, 0)), rn(0, 0));
        assert_eq!(rn_inv(&rn(3, -2)), rn(-2, 3));
        assert_eq!(rn_mul(&rn(1, 2), &rn(2, 4)), rn(2, 8));
    }

    #[test]
    fn addition_rules() {
        assert_eq!(rn_add(&rn(1, 2), &rn(1, 3)), rn(5, 6));
        assert_eq!(rn_add(&rn(1, 2), &rn(1, 2)), rn(4, 4));
        assert!(rn_label_eq(&rn_add(&rn(1, 2), &rn(1, 2)), &rn(1, 1)));
        assert!(rn_label_eq(&rn_add(&rn_zero(), &rn(3, 7)), &rn(3, 7)));
        assert_eq!(rn_add_with(&rn(1, 2), &rn(1, 3), AddRule::Verbatim), rn(7, 6));
    }

    #[test]
    fn num_denom() {
        assert_eq!(rn_num(&rn(1, 2)), rn(1, 1));
        assert_eq!(rn_num(&rn(2, 4)), rn(2, 1));
        assert_eq!(rn_denom(&rn(0, 0)), rn(0, 1));
    }

    #[test]
    fn equalities() {
        assert!(!rn_instance_eq(&rn(1, 2), &rn(2, 4)));
        assert!(rn_label_eq(&rn(1, 2), &rn(2, 4)));
        assert!(rn_label_eq(&rn(1, 0), &rn(2, 0)));
        assert!(rn_instance_eq(&rn(1, 2), &rn(1, 2)));
        assert!(!rn_label_eq(&rn(1, 0), &rn(0, 1)));
    }

    #[test]
    fn evaluation() {
        let n = eval("num(2/(4/5))");
        assert_eq!(n, rn(10, 1));
        assert!(rn_label_eq(&n, &rn(10, 1)));
        // 1/0: inv((0,1)) = (1,0), then (1,1)·(1,0)
        let bottom = eval("1/0");
        assert_eq!(bottom, rn(1, 0));
        assert!(rn_label_eq(&bottom, &rn(0, 0)));
        let q = eval("2/(4/5)");
        assert_eq!(q, rn(10, 4));
        assert!(rn_label_eq(&q, &rn(5, 2)));
        assert_eq!(eval("denom(2/(4/5))"), rn(4, 1));
        assert_eq!(eval("3-1"), rn(2, 1));
    }

    #[test]
    fn open_terms_are_rejected() {
        let e = RnExpr::parse("x/2", Format::Inline).unwrap();
        assert_eq!(rn_eval(&e, AddRule::CrossMultiply), Err(RnError::OpenTerm("x".into())));
    }
}
