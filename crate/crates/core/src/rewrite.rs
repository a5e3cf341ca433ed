//! Term-to-term transformations: flattening, simplification and the
//! addition family.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;
use serde_json::{json, Value};
use thiserror::Error;

use crate::term::{self, Numeral, Term};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RewriteStep {
    pub rule: &'static str,
    #[serde(serialize_with = "inline")]
    pub before: Term,
    #[serde(serialize_with = "inline")]
    pub after: Term,
}

fn inline<S: serde::Serializer>(t: &Term, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&t.to_inline())
}

/// Whole-term snapshots, one per rule application.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct RewriteTrace {
    pub steps: Vec<RewriteStep>,
}

impl RewriteTrace {
    pub fn to_json(&self) -> Value {
        serde_json::to_value(self).expect("trace serializes")
    }

    fn push(&mut self, rule: &'static str, before: &Term, after: &Term) {
        self.steps.push(RewriteStep { rule, before: before.clone(), after: after.clone() });
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RewriteError {
    #[error("term is not closed: {0}")]
    OpenTerm(String),
    #[error("not a simple fracterm: {0}")]
    NotSimple(String),
    #[error("not a flat fracterm: {0}")]
    NotFlat(String),
    #[error("zero denominator in {0}")]
    ZeroDenominator(String),
    #[error("strategy {strategy} does not apply: {reason}")]
    StrategyInapplicable { strategy: AddStrategy, reason: String },
}

fn integer(t: &Term) -> BigInt {
    t.integer_value().expect("closed division-free component")
}

fn mul(a: &Term, b: &Term) -> Term {
    Term::mul(a.clone(), b.clone())
}

fn div(a: Term, b: Term) -> Term {
    Term::div(a, b)
}

/// One rule application at the root of `t`, if any rule matches.
fn rule_at(t: &Term) -> Option<(&'static str, Term)> {
    use Term::*;
    Some(match t {
        Neg(x) => match &**x {
            Div(a, b, _) => ("sign-lift", div(Term::neg((**a).clone()), (**b).clone())),
            _ => return None,
        },
        Add(x, y) | Sub(x, y) => {
            let (rule, combine): (_, fn(Term, Term) -> Term) = match t {
                Add(..) => ("sum-lift", Term::add),
                _ => ("difference-lift", Term::sub),
            };
            match (&**x, &**y) {
                (Div(a, b, _), Div(c, d, _)) => {
                    (rule, div(combine(mul(a, d), mul(b, c)), mul(b, d)))
                }
                (Div(a, b, _), c) => (rule, div(combine((**a).clone(), mul(b, c)), (**b).clone())),
                (c, Div(a, b, _)) => (rule, div(combine(mul(c, b), (**a).clone()), (**b).clone())),
                _ => return None,
            }
        }
        Mul(x, y) => match (&**x, &**y) {
            (Div(a, b, _), Div(c, d, _)) => ("product-lift", div(mul(a, c), mul(b, d))),
            (Div(a, b, _), c) => ("product-lift", div(mul(a, c), (**b).clone())),
            (c, Div(a, b, _)) => ("product-lift", div(mul(c, a), (**b).clone())),
            _ => return None,
        },
        Div(x, y, _) => match (&**x, &**y) {
            // a zero d would be multiplied away; keeping it in the
            // denominator preserves ⊥
            (Div(a, b, _), Div(c, d, _)) => {
                let den = if integer(d).is_zero() { mul(&mul(b, c), d) } else { mul(b, c) };
                ("quotient-collapse", div(mul(a, d), den))
            }
            (a, Div(c, d, _)) => {
                let den = if integer(d).is_zero() { mul(c, d) } else { (**c).clone() };
                ("denominator-collapse", div(mul(a, d), den))
            }
            (Div(a, b, _), c) => ("numerator-collapse", div((**a).clone(), mul(b, c))),
            _ => return None,
        },
        Lit(_) | Var(_) => return None,
    })
}

/// Leftmost-innermost single step.
fn step(t: &Term) -> Option<(&'static str, Term)> {
    let rebuild = |t: &Term, k: usize, child: Term| -> Term {
        let mut out = t.clone();
        *out.children_mut().swap_remove(k) = child;
        out
    };
    for (k, child) in t.children().into_iter().enumerate() {
        if let Some((rule, new_child)) = step(child) {
            return Some((rule, rebuild(t, k, new_child)));
        }
    }
    rule_at(t)
}

fn first_variable(t: &Term) -> Option<String> {
    match t {
        Term::Var(v) => Some(v.clone()),
        _ => t.children().into_iter().find_map(first_variable),
    }
}

/// Rewrites a closed term into a single flat fracterm, or leaves it
/// division-free if it had no division. Numerals are not folded, see
/// [`fold_numerals`].
pub fn flatten(t: &Term) -> Result<(Term, RewriteTrace), RewriteError> {
    if let Some(v) = first_variable(t) {
        return Err(RewriteError::OpenTerm(v));
    }
    let mut trace = RewriteTrace::default();
    let mut current = t.erase_decorations();
    while let Some((rule, next)) = step(&current) {
        trace.push(rule, &current, &next);
        current = next;
    }
    Ok((current, trace))
}

/// Evaluates the components of a closed flat fracterm (or a closed
/// division-free term) to numerals: `5/(1+3)` becomes `5/4`.
pub fn fold_numerals(t: &Term) -> Result<Term, RewriteError> {
    if let Some(v) = first_variable(t) {
        return Err(RewriteError::OpenTerm(v));
    }
    let lit = |x: &Term| Term::Lit(Numeral::from_int(&integer(x)));
    match t {
        Term::Div(a, b, _) if !a.contains_division() && !b.contains_division() => {
            Ok(div(lit(a), lit(b)))
        }
        _ if !t.contains_division() => Ok(lit(t)),
        _ => Err(RewriteError::NotFlat(t.to_inline())),
    }
}

fn canonical(num: BigInt, den: BigInt) -> Term {
    let g = num.gcd(&den);
    let (mut n, mut d) = (num / &g, den / &g);
    if d.is_negative() {
        n = -n;
        d = -d;
    }
    div(Term::Lit(Numeral::from_int(&n)), Term::Lit(Numeral::from_int(&d)))
}

fn simple_values(t: &Term) -> Result<(BigInt, BigInt), RewriteError> {
    term::simple_parts(t)
        .map(|(n, d)| (n.value(), d.value()))
        .ok_or_else(|| RewriteError::NotSimple(t.to_inline()))
}

/// The simplified simple fracterm label-equal to `t`: sign on the numerator,
/// gcd 1, and `n/1` for integers.
pub fn simplify(t: &Term) -> Result<Term, RewriteError> {
    let (n, d) = simple_values(t)?;
    if d.is_zero() {
        return Err(RewriteError::ZeroDenominator(t.to_inline()));
    }
    Ok(canonical(n, d))
}

/// `n/1` to the numeral `n`; anything else is returned unchanged.
pub fn demote(t: &Term) -> Term {
    match term::simple_parts(t) {
        Some((n, d)) if d.value().is_one() => Term::Lit(n.clone()),
        _ => t.clone(),
    }
}

/// Equivalence of simple fracterms: both denominators zero, or both nonzero
/// with `a·d = b·c`.
pub fn simple_fracterm_eq(t1: &Term, t2: &Term) -> Result<bool, RewriteError> {
    let ((a, b), (c, d)) = (simple_values(t1)?, simple_values(t2)?);
    let (b_zero, d_zero) = (b.is_zero(), d.is_zero());
    Ok((b_zero && d_zero) || (!b_zero && !d_zero && a * d == b * c))
}

/// One way of adding, from the family of addition operations.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum AddStrategy {
    /// flat operands: `(a·d + b·c)/(b·d)`
    CrossMultiply,
    /// flat operands: `(a+c)/b` when both denominators are the same term
    SameDenominatorFirst,
    /// simple operands: numerals `e = a·d + b·c`, `f = b·d`, giving `e/f`
    SimpleNumeral,
    /// non-fracterm operands: `P + Q`
    Trivial,
}

impl AddStrategy {
    pub const ALL: [AddStrategy; 4] = [
        AddStrategy::CrossMultiply,
        AddStrategy::SameDenominatorFirst,
        AddStrategy::SimpleNumeral,
        AddStrategy::Trivial,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            AddStrategy::CrossMultiply => "cross",
            AddStrategy::SameDenominatorFirst => "same-denom",
            AddStrategy::SimpleNumeral => "numeral",
            AddStrategy::Trivial => "trivial",
        }
    }
}

impl FromStr for AddStrategy {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        AddStrategy::ALL
            .into_iter()
            .find(|a| a.as_str() == s)
            .ok_or_else(|| format!("unknown strategy {s:?}"))
    }
}

impl fmt::Display for AddStrategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

fn flat_parts(t: &Term) -> Option<(&Term, &Term)> {
    match t {
        Term::Div(a, b, _) if !a.contains_division() && !b.contains_division() => Some((a, b)),
        _ => None,
    }
}

pub fn add_family(t1: &Term, t2: &Term, strategy: AddStrategy) -> Result<Term, RewriteError> {
    let inapplicable = |reason: &str| RewriteError::StrategyInapplicable {
        strategy,
        reason: reason.to_owned(),
    };
    match strategy {
        AddStrategy::CrossMultiply | AddStrategy::SameDenominatorFirst => {
            let (Some((a, b)), Some((c, d))) = (flat_parts(t1), flat_parts(t2)) else {
                return Err(inapplicable("both operands must be flat fracterms"));
            };
            if strategy == AddStrategy::SameDenominatorFirst
                && b.erase_decorations() == d.erase_decorations()
            {
                return Ok(div(Term::add(a.clone(), c.clone()), b.clone()));
            }
            Ok(div(Term::add(mul(a, d), mul(b, c)), mul(b, d)))
        }
        AddStrategy::SimpleNumeral => {
            let (Ok((a, b)), Ok((c, d))) = (simple_values(t1), simple_values(t2)) else {
                return Err(inapplicable("both operands must be simple fracterms"));
            };
            let e = &a * &d + &b * &c;
            let f = b * d;
            Ok(div(Term::Lit(Numeral::from_int(&e)), Term::Lit(Numeral::from_int(&f))))
        }
        AddStrategy::Trivial => {
            if term::is_fracterm(t1) || term::is_fracterm(t2) {
                return Err(inapplicable("operands must not be fracterms"));
            }
            Ok(Term::add(t1.clone(), t2.clone()))
        }
    }
}

/// Every applicable strategy with its result.
pub fn add_all(t1: &Term, t2: &Term) -> Vec<(AddStrategy, Term)> {
    AddStrategy::ALL
        .into_iter()
        .filter_map(|s| add_family(t1, t2, s).ok().map(|t| (s, t)))
        .collect()
}

pub fn add_all_json(t1: &Term, t2: &Term) -> Value {
    Value::Array(
        add_all(t1, t2)
            .into_iter()
            .map(|(s, t)| json!({ "strategy": s.as_str(), "result": t.to_inline() }))
            .collect(),
    )
}
