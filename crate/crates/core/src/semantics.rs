//! Evaluation of closed terms to fracvalues.
//!
//! A fracvalue is either a number in a rational shape or a peripheral
//! element. Only ⊥ is ever produced; the other peripherals exist so they can
//! be named and rejected.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use serde_json::{json, Value};
use thiserror::Error;

use crate::ratio::{self, AddRule};
use crate::shapes::{self, Instance, Label, ShapeError, ShapeId};
use crate::term::Term;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum Policy {
    /// division by zero is an error
    Partial,
    /// `x/0 = 0`
    SuppesOno,
    /// `x/0 = ⊥`, and ⊥ absorbs every operation
    #[default]
    CommonMeadow,
}

impl Policy {
    pub const ALL: [Policy; 3] = [Policy::Partial, Policy::SuppesOno, Policy::CommonMeadow];

    pub fn as_str(self) -> &'static str {
        match self {
            Policy::Partial => "partial",
            Policy::SuppesOno => "suppes-ono",
            Policy::CommonMeadow => "common-meadow",
        }
    }
}

impl FromStr for Policy {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Policy::ALL
            .into_iter()
            .find(|p| p.as_str() == s)
            .ok_or_else(|| format!("unknown policy {s:?}"))
    }
}

impl fmt::Display for Policy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Peripheral {
    Bot,
    Inf,
    PosInf,
    NegInf,
    NaN,
}

impl Peripheral {
    pub fn as_str(self) -> &'static str {
        match self {
            Peripheral::Bot => "bot",
            Peripheral::Inf => "inf",
            Peripheral::PosInf => "+inf",
            Peripheral::NegInf => "-inf",
            Peripheral::NaN => "nan",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Fracvalue {
    Number(Instance),
    Peripheral(Peripheral),
}

impl Fracvalue {
    pub fn bot() -> Fracvalue {
        Fracvalue::Peripheral(Peripheral::Bot)
    }

    pub fn is_bot(&self) -> bool {
        matches!(self, Fracvalue::Peripheral(Peripheral::Bot))
    }

    pub fn as_number(&self) -> Option<&Instance> {
        match self {
            Fracvalue::Number(i) => Some(i),
            Fracvalue::Peripheral(_) => None,
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            Fracvalue::Number(i) => json!({
                "kind": "number",
                "shape": i.shape().as_str(),
                "value": i.to_json(),
            }),
            Fracvalue::Peripheral(p) => json!({ "kind": "peripheral", "value": p.as_str() }),
        }
    }
}

impl fmt::Display for Fracvalue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Fracvalue::Number(i) => write!(f, "{i}"),
            Fracvalue::Peripheral(Peripheral::Bot) => f.write_str("⊥"),
            Fracvalue::Peripheral(p) => f.write_str(p.as_str()),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EvalConfig {
    pub policy: Policy,
    pub shape: ShapeId,
    /// Addition rule used when `shape` is `rat.rns`.
    pub add_rule: AddRule,
}

impl EvalConfig {
    pub fn new(policy: Policy, shape: ShapeId) -> Result<EvalConfig, EvalError> {
        if shape.label() != Label::Rat {
            return Err(EvalError::NotRational(shape));
        }
        Ok(EvalConfig { policy, shape, add_rule: AddRule::CrossMultiply })
    }
}

impl Default for EvalConfig {
    fn default() -> Self {
        EvalConfig {
            policy: Policy::CommonMeadow,
            shape: ShapeId::RatPcs,
            add_rule: AddRule::CrossMultiply,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EvalError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("term is not closed: variable {0}")]
    OpenTerm(String),
    #[error("evaluation needs a rational shape, got {0}")]
    NotRational(ShapeId),
    #[error("no arithmetic is defined on peripheral {0}")]
    UnsupportedPeripheral(&'static str),
    #[error(transparent)]
    Shape(#[from] ShapeError),
}

pub fn eval(t: &Term, cfg: &EvalConfig) -> Result<Fracvalue, EvalError> {
    if cfg.shape.label() != Label::Rat {
        return Err(EvalError::NotRational(cfg.shape));
    }
    if cfg.shape == ShapeId::RatRns {
        return eval_rns(t, cfg);
    }
    let value = eval_in(t, cfg)?;
    Ok(match value {
        Fracvalue::Number(i) if i.is_bottom() => match cfg.policy {
            // the (0,0) class reads as zero under Suppes-Ono
            Policy::SuppesOno => Fracvalue::Number(zero(cfg.shape)),
            _ => Fracvalue::bot(),
        },
        other => other,
    })
}

fn zero(shape: ShapeId) -> Instance {
    shapes::encode(&BigInt::from(0), shape).expect("rational shapes hold zero")
}

fn eval_rns(t: &Term, cfg: &EvalConfig) -> Result<Fracvalue, EvalError> {
    let r = ratio::rn_eval_term(t, cfg.add_rule).map_err(|e| match e {
        ratio::RnError::OpenTerm(v) => EvalError::OpenTerm(v),
    })?;
    // the ratio-number algebra has its own division rule, so the policy
    // does not apply; zero second components read as ⊥
    if r.b == BigInt::from(0) {
        return Ok(Fracvalue::bot());
    }
    Ok(Fracvalue::Number(Instance::Rns(r)))
}

fn number(v: Fracvalue) -> Result<Instance, EvalError> {
    match v {
        Fracvalue::Number(i) => Ok(i),
        Fracvalue::Peripheral(p) => Err(EvalError::UnsupportedPeripheral(p.as_str())),
    }
}

fn eval_in(t: &Term, cfg: &EvalConfig) -> Result<Fracvalue, EvalError> {
    let binary = |a: &Term, b: &Term| -> Result<Option<(Instance, Instance)>, EvalError> {
        let x = eval_in(a, cfg)?;
        if x.is_bot() {
            return Ok(None);
        }
        let y = eval_in(b, cfg)?;
        if y.is_bot() {
            return Ok(None);
        }
        Ok(Some((number(x)?, number(y)?)))
    };
    let num = |i: Result<Instance, ShapeError>| -> Result<Fracvalue, EvalError> {
        Ok(Fracvalue::Number(i?))
    };
    match t {
        Term::Lit(n) => num(shapes::encode(&n.value(), cfg.shape)),
        Term::Var(v) => Err(EvalError::OpenTerm(v.clone())),
        Term::Neg(a) => match eval_in(a, cfg)? {
            v if v.is_bot() => Ok(v),
            v => num(shapes::shape_neg(&number(v)?)),
        },
        Term::Add(a, b) | Term::Sub(a, b) | Term::Mul(a, b) => {
            let Some((x, y)) = binary(a, b)? else {
                return Ok(Fracvalue::bot());
            };
            num(match t {
                Term::Add(..) => shapes::shape_add(&x, &y),
                Term::Sub(..) => shapes::shape_neg(&y).and_then(|ny| shapes::shape_add(&x, &ny)),
                _ => shapes::shape_mul(&x, &y),
            })
        }
        Term::Div(a, b, _) => {
            let Some((x, y)) = binary(a, b)? else {
                return Ok(Fracvalue::bot());
            };
            if shapes::is_label_zero(&y) {
                return match cfg.policy {
                    Policy::Partial => Err(EvalError::DivisionByZero),
                    Policy::SuppesOno => Ok(Fracvalue::Number(zero(cfg.shape))),
                    Policy::CommonMeadow => Ok(Fracvalue::bot()),
                };
            }
            num(shapes::shape_div(&x, &y))
        }
    }
}

/// Label equality lifted to fracvalues; a peripheral equals only itself.
pub fn value_eq(v: &Fracvalue, w: &Fracvalue) -> Result<bool, EvalError> {
    match (v, w) {
        (Fracvalue::Number(i), Fracvalue::Number(j)) => Ok(shapes::label_eq(i, j)?),
        (Fracvalue::Peripheral(p), Fracvalue::Peripheral(q)) => Ok(p == q),
        _ => Ok(false),
    }
}

/// Fracvalues do not split into numerator and denominator: always ⊥.
pub fn value_num(_v: &Fracvalue) -> Fracvalue {
    Fracvalue::bot()
}

/// Always ⊥, see [`value_num`].
pub fn value_denom(_v: &Fracvalue) -> Fracvalue {
    Fracvalue::bot()
}
