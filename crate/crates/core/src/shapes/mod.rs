//! Labels and shapes: concrete presentations of the naturals, integers and
//! rationals.
//!
//! Each shape has its own instance equality (`=_S`, structural identity of the
//! representation) and label equality (`≡_L`, "same number"). A shape is
//! normal when the two coincide. `nat.dec` (leading zeroes allowed),
//! `int.diffpair` and `rat.rns` are subnormal; the rest are normal.

mod decimal;
mod hfset;

use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use serde_json::Value;
use thiserror::Error;

use crate::ratio::{self, RatioNumber};
use crate::term::{self, Numeral, Term};

pub use hfset::HfSet;
use hfset::{VON_NEUMANN, ZERMELO};

/// Largest value a von Neumann or Zermelo instance may carry.
pub const SET_CAPACITY: usize = 4096;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Label {
    Nat,
    Int,
    Rat,
}

impl Label {
    pub fn as_str(self) -> &'static str {
        match self {
            Label::Nat => "nat",
            Label::Int => "int",
            Label::Rat => "rat",
        }
    }
}

impl FromStr for Label {
    type Err = ShapeError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "nat" => Ok(Label::Nat),
            "int" => Ok(Label::Int),
            "rat" => Ok(Label::Rat),
            "real" | "complex" => Err(ShapeError::UnsupportedLabel(s.to_owned())),
            other => Err(ShapeError::UnknownLabel(other.to_owned())),
        }
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ShapeId {
    /// digit strings, leading zeroes allowed
    NatDec,
    /// digit strings without redundant leading zeroes
    NatSdn,
    /// successor count over 0
    NatDedekind,
    NatVonNeumann,
    NatZermelo,
    /// zero, or a sign with a nonzero strict decimal magnitude
    IntSigned,
    /// raw difference pairs of naturals
    IntDiffPair,
    /// integer pair classes, one canonical representative each
    RatPcs,
    /// simplified simple fracterms
    RatSsft,
    /// raw ratio-number pairs
    RatRns,
}

impl ShapeId {
    pub const ALL: [ShapeId; 10] = [
        ShapeId::NatDec,
        ShapeId::NatSdn,
        ShapeId::NatDedekind,
        ShapeId::NatVonNeumann,
        ShapeId::NatZermelo,
        ShapeId::IntSigned,
        ShapeId::IntDiffPair,
        ShapeId::RatPcs,
        ShapeId::RatSsft,
        ShapeId::RatRns,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            ShapeId::NatDec => "nat.dec",
            ShapeId::NatSdn => "nat.sdn",
            ShapeId::NatDedekind => "nat.dedekind",
            ShapeId::NatVonNeumann => "nat.vn",
            ShapeId::NatZermelo => "nat.zermelo",
            ShapeId::IntSigned => "int.signed",
            ShapeId::IntDiffPair => "int.diffpair",
            ShapeId::RatPcs => "rat.pcs",
            ShapeId::RatSsft => "rat.ssft",
            ShapeId::RatRns => "rat.rns",
        }
    }

    pub fn label(self) -> Label {
        match self {
            ShapeId::NatDec
            | ShapeId::NatSdn
            | ShapeId::NatDedekind
            | ShapeId::NatVonNeumann
            | ShapeId::NatZermelo => Label::Nat,
            ShapeId::IntSigned | ShapeId::IntDiffPair => Label::Int,
            ShapeId::RatPcs | ShapeId::RatSsft | ShapeId::RatRns => Label::Rat,
        }
    }
}

impl FromStr for ShapeId {
    type Err = ShapeError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        ShapeId::ALL
            .into_iter()
            .find(|id| id.as_str() == s)
            .ok_or_else(|| ShapeError::UnsupportedShape(s.to_owned()))
    }
}

impl fmt::Display for ShapeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl Serialize for ShapeId {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ShapeError {
    #[error("negative value {0} cannot be encoded as a natural")]
    NegativeIntoNat(BigInt),
    #[error("unsupported shape {0:?}")]
    UnsupportedShape(String),
    #[error("label {0:?} is recognized but has no finite shapes here")]
    UnsupportedLabel(String),
    #[error("unknown label {0:?}")]
    UnknownLabel(String),
    #[error("instances come from different shapes: {0} and {1}")]
    ShapeMismatch(ShapeId, ShapeId),
    #[error("labels differ: {0} and {1}")]
    LabelMismatch(Label, Label),
    #[error("{op} is not available on shape {shape}")]
    UnsupportedOperation { op: &'static str, shape: ShapeId },
    #[error("value {value} exceeds the capacity {cap} of shape {shape}")]
    Capacity { shape: ShapeId, value: String, cap: usize },
    #[error("value {value} is not a natural or integer, cannot be represented in {shape}")]
    NotIntegral { shape: ShapeId, value: String },
    #[error("shape {0} has no element for division by zero")]
    NoBottom(ShapeId),
    #[error("malformed {shape} instance: {detail}")]
    Malformed { shape: ShapeId, detail: String },
    #[error("normality bound must be at least 1")]
    BadBound,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum IntSign {
    Plus,
    Minus,
}

/// Zero, or `(sign, magnitude)` with a nonzero strict decimal magnitude.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum SignedDecimal {
    Zero,
    NonZero(IntSign, String),
}

impl SignedDecimal {
    fn from_int(k: &BigInt) -> Self {
        match k.sign() {
            Sign::NoSign => SignedDecimal::Zero,
            Sign::Plus => SignedDecimal::NonZero(IntSign::Plus, k.to_str_radix(10)),
            Sign::Minus => SignedDecimal::NonZero(IntSign::Minus, k.abs().to_str_radix(10)),
        }
    }

    fn to_int(&self) -> BigInt {
        match self {
            SignedDecimal::Zero => BigInt::zero(),
            SignedDecimal::NonZero(sign, mag) => {
                let m: BigInt = mag.parse().expect("strict decimal");
                if *sign == IntSign::Minus {
                    -m
                } else {
                    m
                }
            }
        }
    }
}

/// Canonical representative of an integer pair class: `b ≥ 0`; `b = 0`
/// only for the `(0,0)` class holding every `(a,0)`; otherwise `gcd(|a|,b) = 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PairClass {
    num: BigInt,
    den: BigInt,
}

impl PairClass {
    pub fn new(a: BigInt, b: BigInt) -> Self {
        if b.is_zero() {
            return PairClass { num: BigInt::zero(), den: BigInt::zero() };
        }
        let g = a.gcd(&b);
        let (mut num, mut den) = (a / &g, b / &g);
        if den.is_negative() {
            num = -num;
            den = -den;
        }
        PairClass { num, den }
    }

    pub fn bottom() -> Self {
        PairClass { num: BigInt::zero(), den: BigInt::zero() }
    }

    pub fn num(&self) -> &BigInt {
        &self.num
    }

    pub fn den(&self) -> &BigInt {
        &self.den
    }

    pub fn is_bottom(&self) -> bool {
        self.den.is_zero()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Instance {
    Decimal(String),
    StrictDecimal(String),
    Dedekind(BigUint),
    VonNeumann(HfSet),
    Zermelo(HfSet),
    Signed(SignedDecimal),
    DiffPair(BigUint, BigUint),
    Pcs(PairClass),
    Ssft(Term),
    Rns(RatioNumber),
}

impl Instance {
    pub fn shape(&self) -> ShapeId {
        match self {
            Instance::Decimal(_) => ShapeId::NatDec,
            Instance::StrictDecimal(_) => ShapeId::NatSdn,
            Instance::Dedekind(_) => ShapeId::NatDedekind,
            Instance::VonNeumann(_) => ShapeId::NatVonNeumann,
            Instance::Zermelo(_) => ShapeId::NatZermelo,
            Instance::Signed(_) => ShapeId::IntSigned,
            Instance::DiffPair(..) => ShapeId::IntDiffPair,
            Instance::Pcs(_) => ShapeId::RatPcs,
            Instance::Ssft(_) => ShapeId::RatSsft,
            Instance::Rns(_) => ShapeId::RatRns,
        }
    }

    /// The shape's division-by-zero element: the `(0,0)` pair class, or a
    /// ratio-number with zero second component.
    pub fn is_bottom(&self) -> bool {
        match self {
            Instance::Pcs(p) => p.is_bottom(),
            Instance::Rns(r) => r.b.is_zero(),
            _ => false,
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            Instance::Decimal(s) | Instance::StrictDecimal(s) => Value::String(s.clone()),
            Instance::Dedekind(k) => Value::String(dedekind_text(k)),
            Instance::VonNeumann(s) | Instance::Zermelo(s) => s.to_json(),
            Instance::Signed(s) => Value::String(s.to_int().to_str_radix(10)),
            Instance::DiffPair(a, b) => Value::Array(vec![
                crate::int_json(&BigInt::from(a.clone())),
                crate::int_json(&BigInt::from(b.clone())),
            ]),
            Instance::Pcs(p) => {
                Value::Array(vec![crate::int_json(&p.num), crate::int_json(&p.den)])
            }
            Instance::Ssft(t) => Value::String(t.to_inline()),
            Instance::Rns(r) => r.to_json(),
        }
    }

    pub fn from_json(shape: ShapeId, value: &Value) -> Result<Instance, ShapeError> {
        let bad = |detail: &str| ShapeError::Malformed { shape, detail: detail.to_owned() };
        match shape {
            ShapeId::NatDec | ShapeId::NatSdn => {
                let text = match value {
                    Value::String(s) => s.clone(),
                    Value::Number(n) if n.is_u64() => n.to_string(),
                    _ => return Err(bad("expected a digit string")),
                };
                if !decimal::is_digits(&text) {
                    return Err(bad("expected a digit string"));
                }
                if shape == ShapeId::NatDec {
                    Ok(Instance::Decimal(text))
                } else if decimal::strip(&text) != text {
                    Err(bad("redundant leading zero"))
                } else {
                    Ok(Instance::StrictDecimal(text))
                }
            }
            ShapeId::NatDedekind => {
                let count = match value {
                    Value::String(s) => parse_dedekind(s).ok_or_else(|| bad("expected S(...(0))"))?,
                    Value::Number(n) if n.is_u64() => BigUint::from(n.as_u64().expect("u64")),
                    _ => return Err(bad("expected S(...(0))")),
                };
                Ok(Instance::Dedekind(count))
            }
            ShapeId::NatVonNeumann => {
                let set = HfSet::from_json(value).ok_or_else(|| bad("expected nested arrays"))?;
                if set.len() > SET_CAPACITY || VON_NEUMANN.get(set.len()) != set {
                    return Err(bad("not a von Neumann natural"));
                }
                Ok(Instance::VonNeumann(set))
            }
            ShapeId::NatZermelo => {
                let set = HfSet::from_json(value).ok_or_else(|| bad("expected nested arrays"))?;
                zermelo_depth(&set).ok_or_else(|| bad("not a Zermelo natural"))?;
                Ok(Instance::Zermelo(set))
            }
            ShapeId::IntSigned => {
                let k = json_int(value).ok_or_else(|| bad("expected an integer"))?;
                Ok(Instance::Signed(SignedDecimal::from_int(&k)))
            }
            ShapeId::IntDiffPair => {
                let (a, b) = json_pair(value).ok_or_else(|| bad("expected [a, b]"))?;
                let (Some(a), Some(b)) = (a.to_biguint(), b.to_biguint()) else {
                    return Err(bad("difference pair components are naturals"));
                };
                Ok(Instance::DiffPair(a, b))
            }
            ShapeId::RatPcs => {
                let (a, b) = json_pair(value).ok_or_else(|| bad("expected [a, b]"))?;
                Ok(Instance::Pcs(PairClass::new(a, b)))
            }
            ShapeId::RatSsft => {
                let text = value.as_str().ok_or_else(|| bad("expected a fracterm string"))?;
                let t = term::parse(text, term::Format::Inline)
                    .map_err(|e| bad(&e.to_string()))?
                    .erase_decorations();
                if !term::classify(&t).simplified {
                    return Err(bad("not a simplified simple fracterm"));
                }
                Ok(Instance::Ssft(t))
            }
            ShapeId::RatRns => {
                let (a, b) = json_pair(value).ok_or_else(|| bad("expected [a, b]"))?;
                Ok(Instance::Rns(RatioNumber { a, b }))
            }
        }
    }
}

impl fmt::Display for Instance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Instance::Ssft(t) => write!(f, "{t}"),
            other => write!(f, "{}", other.to_json()),
        }
    }
}

fn dedekind_text(k: &BigUint) -> String {
    match k.to_usize() {
        Some(n) if n <= 8 => format!("{}0{}", "S(".repeat(n), ")".repeat(n)),
        _ => format!("S^{k}(0)"),
    }
}

fn parse_dedekind(s: &str) -> Option<BigUint> {
    let s = s.trim();
    if let Some(rest) = s.strip_prefix("S^") {
        let (count, tail) = rest.split_once('(')?;
        return (tail == "0)").then(|| count.parse().ok()).flatten();
    }
    let depth = s.chars().take_while(|&c| c == 'S').count();
    let expected = format!("{}0{}", "S(".repeat(depth), ")".repeat(depth));
    (s == expected).then(|| BigUint::from(depth))
}

fn json_int(value: &Value) -> Option<BigInt> {
    match value {
        Value::Number(n) => n.as_i64().map(BigInt::from),
        Value::String(s) => s.parse().ok(),
        _ => None,
    }
}

fn json_pair(value: &Value) -> Option<(BigInt, BigInt)> {
    match value.as_array()?.as_slice() {
        [a, b] => Some((json_int(a)?, json_int(b)?)),
        _ => None,
    }
}

fn zermelo_depth(set: &HfSet) -> Option<usize> {
    let mut depth = 0;
    let mut cur = *set;
    while !cur.is_empty() {
        cur = cur.sole_element()?;
        depth += 1;
    }
    Some(depth)
}

fn set_value(shape: ShapeId, value: &BigInt) -> Result<usize, ShapeError> {
    value
        .to_usize()
        .filter(|&k| k <= SET_CAPACITY)
        .ok_or_else(|| ShapeError::Capacity { shape, value: value.to_string(), cap: SET_CAPACITY })
}

/// Encodes an integer into its canonical instance of `shape`.
pub fn encode(k: &BigInt, shape: ShapeId) -> Result<Instance, ShapeError> {
    if shape.label() == Label::Nat && k.is_negative() {
        return Err(ShapeError::NegativeIntoNat(k.clone()));
    }
    Ok(match shape {
        ShapeId::NatDec => Instance::Decimal(k.to_str_radix(10)),
        ShapeId::NatSdn => Instance::StrictDecimal(k.to_str_radix(10)),
        ShapeId::NatDedekind => Instance::Dedekind(k.magnitude().clone()),
        ShapeId::NatVonNeumann => Instance::VonNeumann(VON_NEUMANN.get(set_value(shape, k)?)),
        ShapeId::NatZermelo => Instance::Zermelo(ZERMELO.get(set_value(shape, k)?)),
        ShapeId::IntSigned => Instance::Signed(SignedDecimal::from_int(k)),
        ShapeId::IntDiffPair => {
            if k.is_negative() {
                Instance::DiffPair(BigUint::zero(), k.magnitude().clone())
            } else {
                Instance::DiffPair(k.magnitude().clone(), BigUint::zero())
            }
        }
        ShapeId::RatPcs => Instance::Pcs(PairClass::new(k.clone(), BigInt::one())),
        ShapeId::RatSsft => Instance::Ssft(ssft_term(k, &BigInt::one())),
        ShapeId::RatRns => Instance::Rns(RatioNumber { a: k.clone(), b: BigInt::one() }),
    })
}

pub(crate) fn ssft_term(num: &BigInt, den: &BigInt) -> Term {
    Term::div(
        Term::Lit(Numeral::from_int(num)),
        Term::Lit(Numeral::from_int(den)),
    )
}

fn ssft_parts(t: &Term) -> (BigInt, BigInt) {
    let (n, d) = term::simple_parts(t).expect("SSFT instance is a simple fracterm");
    (n.value(), d.value())
}

/// The number an instance stands for; `None` for a division-by-zero element.
///
/// This is a test and conversion aid. Shape code compares instances through
/// `instance_eq` and `label_eq`, never through decoded values.
#[doc(hidden)]
pub fn decode(i: &Instance) -> Option<BigRational> {
    let int = |k: BigInt| Some(BigRational::from_integer(k));
    match i {
        Instance::Decimal(s) | Instance::StrictDecimal(s) => int(s.parse().expect("digits")),
        Instance::Dedekind(k) => int(BigInt::from(k.clone())),
        Instance::VonNeumann(s) => int(BigInt::from(s.len())),
        Instance::Zermelo(s) => int(BigInt::from(zermelo_depth(s).expect("zermelo chain"))),
        Instance::Signed(s) => int(s.to_int()),
        Instance::DiffPair(a, b) => int(BigInt::from(a.clone()) - BigInt::from(b.clone())),
        Instance::Pcs(p) if p.is_bottom() => None,
        Instance::Pcs(p) => Some(BigRational::new(p.num.clone(), p.den.clone())),
        Instance::Ssft(t) => {
            let (n, d) = ssft_parts(t);
            Some(BigRational::new(n, d))
        }
        Instance::Rns(r) if r.b.is_zero() => None,
        Instance::Rns(r) => Some(BigRational::new(r.a.clone(), r.b.clone())),
    }
}

/// Canonical instance of `shape` for a decoded value.
pub(crate) fn from_rational(q: Option<&BigRational>, shape: ShapeId) -> Result<Instance, ShapeError> {
    match (q, shape) {
        (None, ShapeId::RatPcs) => Ok(Instance::Pcs(PairClass::bottom())),
        (None, ShapeId::RatRns) => Ok(Instance::Rns(RatioNumber::new(0, 0))),
        (None, _) => Err(ShapeError::NoBottom(shape)),
        (Some(q), ShapeId::RatPcs) => {
            Ok(Instance::Pcs(PairClass::new(q.numer().clone(), q.denom().clone())))
        }
        (Some(q), ShapeId::RatSsft) => Ok(Instance::Ssft(ssft_term(q.numer(), q.denom()))),
        (Some(q), ShapeId::RatRns) => {
            Ok(Instance::Rns(RatioNumber { a: q.numer().clone(), b: q.denom().clone() }))
        }
        (Some(q), _) if q.is_integer() => encode(&q.to_integer(), shape),
        (Some(q), _) => Err(ShapeError::NotIntegral { shape, value: q.to_string() }),
    }
}

fn same_shape(i: &Instance, j: &Instance) -> Result<ShapeId, ShapeError> {
    let (a, b) = (i.shape(), j.shape());
    if a == b {
        Ok(a)
    } else {
        Err(ShapeError::ShapeMismatch(a, b))
    }
}

/// `i =_S j`: the two representations are identical.
pub fn instance_eq(i: &Instance, j: &Instance) -> Result<bool, ShapeError> {
    same_shape(i, j)?;
    Ok(i == j)
}

fn pair_label_eq(a: &BigInt, b: &BigInt, c: &BigInt, d: &BigInt) -> bool {
    let (b_zero, d_zero) = (b.is_zero(), d.is_zero());
    (b_zero && d_zero) || (!b_zero && !d_zero && a * d == b * c)
}

/// `i ≡_L j`: the two instances stand for the same number.
pub fn label_eq(i: &Instance, j: &Instance) -> Result<bool, ShapeError> {
    same_shape(i, j)?;
    Ok(match (i, j) {
        (Instance::Decimal(a), Instance::Decimal(b)) => decimal::strip(a) == decimal::strip(b),
        (Instance::DiffPair(a, b), Instance::DiffPair(c, d)) => a + d == c + b,
        (Instance::Pcs(x), Instance::Pcs(y)) => pair_label_eq(&x.num, &x.den, &y.num, &y.den),
        (Instance::Ssft(x), Instance::Ssft(y)) => {
            let ((a, b), (c, d)) = (ssft_parts(x), ssft_parts(y));
            pair_label_eq(&a, &b, &c, &d)
        }
        (Instance::Rns(x), Instance::Rns(y)) => ratio::rn_label_eq(x, y),
        // the remaining shapes are normal: one representation per number
        _ => i == j,
    })
}

/// Label-equal to the shape's zero.
pub fn is_label_zero(i: &Instance) -> bool {
    let zero = encode(&BigInt::zero(), i.shape()).expect("every shape has a zero");
    label_eq(i, &zero).expect("same shape")
}

fn vn_add(a: &HfSet, b: &HfSet) -> HfSet {
    b.elements().iter().fold(*a, |acc, _| acc.successor())
}

fn zermelo_add(a: &HfSet, b: &HfSet) -> HfSet {
    let mut acc = *a;
    let mut rest = *b;
    while let Some(inner) = rest.sole_element() {
        acc = acc.singleton();
        rest = inner;
    }
    acc
}

fn check_set_capacity(shape: ShapeId, value: usize) -> Result<(), ShapeError> {
    if value > SET_CAPACITY {
        Err(ShapeError::Capacity { shape, value: value.to_string(), cap: SET_CAPACITY })
    } else {
        Ok(())
    }
}

pub fn shape_add(i: &Instance, j: &Instance) -> Result<Instance, ShapeError> {
    let shape = same_shape(i, j)?;
    Ok(match (i, j) {
        (Instance::Decimal(a), Instance::Decimal(b)) => Instance::Decimal(decimal::add(a, b)),
        (Instance::StrictDecimal(a), Instance::StrictDecimal(b)) => {
            Instance::StrictDecimal(decimal::add(a, b))
        }
        (Instance::Dedekind(a), Instance::Dedekind(b)) => Instance::Dedekind(a + b),
        (Instance::VonNeumann(a), Instance::VonNeumann(b)) => {
            check_set_capacity(shape, a.len() + b.len())?;
            Instance::VonNeumann(vn_add(a, b))
        }
        (Instance::Zermelo(a), Instance::Zermelo(b)) => {
            let total = zermelo_depth(a).expect("chain") + zermelo_depth(b).expect("chain");
            check_set_capacity(shape, total)?;
            Instance::Zermelo(zermelo_add(a, b))
        }
        (Instance::Signed(a), Instance::Signed(b)) => {
            Instance::Signed(SignedDecimal::from_int(&(a.to_int() + b.to_int())))
        }
        (Instance::DiffPair(a, b), Instance::DiffPair(c, d)) => Instance::DiffPair(a + c, b + d),
        (Instance::Pcs(x), Instance::Pcs(y)) => Instance::Pcs(PairClass::new(
            &x.num * &y.den + &x.den * &y.num,
            &x.den * &y.den,
        )),
        (Instance::Ssft(x), Instance::Ssft(y)) => {
            let ((a, b), (c, d)) = (ssft_parts(x), ssft_parts(y));
            let p = PairClass::new(&a * &d + &b * &c, &b * &d);
            Instance::Ssft(ssft_term(&p.num, &p.den))
        }
        (Instance::Rns(x), Instance::Rns(y)) => Instance::Rns(ratio::rn_add(x, y)),
        _ => unreachable!("same_shape checked"),
    })
}

pub fn shape_mul(i: &Instance, j: &Instance) -> Result<Instance, ShapeError> {
    let shape = same_shape(i, j)?;
    Ok(match (i, j) {
        (Instance::Decimal(a), Instance::Decimal(b)) => Instance::Decimal(decimal::mul(a, b)),
        (Instance::StrictDecimal(a), Instance::StrictDecimal(b)) => {
            Instance::StrictDecimal(decimal::mul(a, b))
        }
        (Instance::Dedekind(a), Instance::Dedekind(b)) => Instance::Dedekind(a * b),
        (Instance::VonNeumann(a), Instance::VonNeumann(b)) => {
            check_set_capacity(shape, a.len() * b.len())?;
            let product = b.elements().iter().fold(HfSet::empty(), |acc, _| vn_add(&acc, a));
            Instance::VonNeumann(product)
        }
        (Instance::Zermelo(a), Instance::Zermelo(b)) => {
            let total = zermelo_depth(a).expect("chain") * zermelo_depth(b).expect("chain");
            check_set_capacity(shape, total)?;
            let mut acc = HfSet::empty();
            let mut rest = *b;
            while let Some(inner) = rest.sole_element() {
                acc = zermelo_add(&acc, a);
                rest = inner;
            }
            Instance::Zermelo(acc)
        }
        (Instance::Signed(a), Instance::Signed(b)) => {
            Instance::Signed(SignedDecimal::from_int(&(a.to_int() * b.to_int())))
        }
        (Instance::DiffPair(a, b), Instance::DiffPair(c, d)) => {
            Instance::DiffPair(a * c + b * d, a * d + b * c)
        }
        (Instance::Pcs(x), Instance::Pcs(y)) => {
            Instance::Pcs(PairClass::new(&x.num * &y.num, &x.den * &y.den))
        }
        (Instance::Ssft(x), Instance::Ssft(y)) => {
            let ((a, b), (c, d)) = (ssft_parts(x), ssft_parts(y));
            let p = PairClass::new(a * c, b * d);
            Instance::Ssft(ssft_term(&p.num, &p.den))
        }
        (Instance::Rns(x), Instance::Rns(y)) => Instance::Rns(ratio::rn_mul(x, y)),
        _ => unreachable!("same_shape checked"),
    })
}

pub fn shape_neg(i: &Instance) -> Result<Instance, ShapeError> {
    Ok(match i {
        Instance::Signed(a) => Instance::Signed(SignedDecimal::from_int(&-a.to_int())),
        Instance::DiffPair(a, b) => Instance::DiffPair(b.clone(), a.clone()),
        Instance::Pcs(x) => Instance::Pcs(PairClass::new(-&x.num, x.den.clone())),
        Instance::Ssft(x) => {
            let (a, b) = ssft_parts(x);
            Instance::Ssft(ssft_term(&-a, &b))
        }
        Instance::Rns(x) => Instance::Rns(ratio::rn_neg(x)),
        other => {
            return Err(ShapeError::UnsupportedOperation { op: "negation", shape: other.shape() })
        }
    })
}

/// Division on rational shapes. A zero or `(0,0)` divisor gives the `(0,0)`
/// class in `rat.pcs`; `rat.rns` applies its inverse rule as is; `rat.ssft`
/// has no such element and reports [`ShapeError::NoBottom`].
pub fn shape_div(i: &Instance, j: &Instance) -> Result<Instance, ShapeError> {
    let shape = same_shape(i, j)?;
    Ok(match (i, j) {
        (Instance::Pcs(x), Instance::Pcs(y)) => {
            let inverse = PairClass::new(y.den.clone(), y.num.clone());
            Instance::Pcs(PairClass::new(&x.num * &inverse.num, &x.den * &inverse.den))
        }
        (Instance::Ssft(x), Instance::Ssft(y)) => {
            let ((a, b), (c, d)) = (ssft_parts(x), ssft_parts(y));
            if c.is_zero() {
                return Err(ShapeError::NoBottom(shape));
            }
            let p = PairClass::new(a * d, b * c);
            Instance::Ssft(ssft_term(&p.num, &p.den))
        }
        (Instance::Rns(x), Instance::Rns(y)) => Instance::Rns(ratio::rn_div(x, y)),
        _ => return Err(ShapeError::UnsupportedOperation { op: "division", shape }),
    })
}

/// Moves an instance to another shape of the same label.
pub fn convert(i: &Instance, target: ShapeId) -> Result<Instance, ShapeError> {
    let (from, to) = (i.shape().label(), target.label());
    if from != to {
        return Err(ShapeError::LabelMismatch(from, to));
    }
    from_rational(decode(i).as_ref(), target)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ShapeDescriptor {
    pub label: Label,
    pub shape_id: ShapeId,
    pub normal: bool,
}

/// Bound used by [`describe`] for its normality check.
pub const DESCRIPTOR_BOUND: u32 = 10;

pub fn describe(shape: ShapeId) -> ShapeDescriptor {
    let normal = is_normal(shape, DESCRIPTOR_BOUND).expect("bound is positive").normal;
    ShapeDescriptor { label: shape.label(), shape_id: shape, normal }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Normality {
    pub shape: ShapeId,
    pub bound: u32,
    pub normal: bool,
    /// A pair with `i ≡_L j` but not `i =_S j` (or the reverse).
    pub witness: Option<(Instance, Instance)>,
    pub instances_checked: usize,
}

/// Every instance whose magnitude (or, for pairs, whose components) stays
/// within `bound`.
pub fn bounded_instances(shape: ShapeId, bound: u32) -> Vec<Instance> {
    let b = i64::from(bound);
    let enc = |k: i64| encode(&BigInt::from(k), shape).expect("within capacity");
    match shape {
        ShapeId::NatDec => {
            let max_len = bound.to_string().len() + 2;
            let mut out = Vec::new();
            for v in 0..=bound {
                let digits = v.to_string();
                for len in digits.len()..=max_len {
                    out.push(Instance::Decimal(format!("{digits:0>len$}")));
                }
            }
            out
        }
        ShapeId::NatSdn | ShapeId::NatDedekind | ShapeId::NatVonNeumann | ShapeId::NatZermelo => {
            (0..=b).map(enc).collect()
        }
        ShapeId::IntSigned => (-b..=b).map(enc).collect(),
        ShapeId::IntDiffPair => (0..=bound)
            .flat_map(|a| (0..=bound).map(move |c| Instance::DiffPair(a.into(), c.into())))
            .collect(),
        ShapeId::RatPcs | ShapeId::RatSsft => {
            let mut out = Vec::new();
            if shape == ShapeId::RatPcs {
                out.push(Instance::Pcs(PairClass::bottom()));
            }
            for den in 1..=b {
                for num in -b..=b {
                    if num.gcd(&den) != 1 {
                        continue;
                    }
                    let (n, d) = (BigInt::from(num), BigInt::from(den));
                    out.push(if shape == ShapeId::RatPcs {
                        Instance::Pcs(PairClass { num: n, den: d })
                    } else {
                        Instance::Ssft(ssft_term(&n, &d))
                    });
                }
            }
            out
        }
        ShapeId::RatRns => {
            // Small pairs first, so a witness is as small as the bound allows.
            let mut pairs: Vec<(i64, i64)> =
                (-b..=b).flat_map(|den| (-b..=b).map(move |num| (num, den))).collect();
            pairs.sort_by_key(|&(n, d)| (d == 0, n.abs().max(d.abs()), d < 0, d.abs(), n < 0, n.abs()));
            pairs.into_iter().map(|(n, d)| Instance::Rns(RatioNumber::new(n, d))).collect()
        }
    }
}

/// Checks `i =_S j ⇔ i ≡_L j` over [`bounded_instances`], stopping at the
/// first counterexample.
pub fn is_normal(shape: ShapeId, bound: u32) -> Result<Normality, ShapeError> {
    if bound == 0 {
        return Err(ShapeError::BadBound);
    }
    let instances = bounded_instances(shape, bound);
    let mut witness = None;
    'outer: for (k, i) in instances.iter().enumerate() {
        for j in &instances[k + 1..] {
            if instance_eq(i, j)? != label_eq(i, j)? {
                witness = Some((i.clone(), j.clone()));
                break 'outer;
            }
        }
    }
    Ok(Normality {
        shape,
        bound,
        normal: witness.is_none(),
        witness,
        instances_checked: instances.len(),
    })
}
