//! Fractalk: scripts of numbered assertions about fracsign occurrences.
//!
//! Checking runs in two passes. [`infer_levels`] gives every occurrence a
//! level (fracsign, fracterm, fracvalue, fraxion); [`check`] then judges each
//! assertion at the levels it was given, and blocks a conclusion that only
//! follows by mixing levels.
//!
//! ```
//! use fracterm_core::fractalk::{check, parse_script, Overall};
//!
//! let script = parse_script("1: 4/3 > 1\n2: 4/3 is simple and simplified\n").unwrap();
//! assert_eq!(check(&script).overall, Overall::Sound);
//! ```

mod check;
pub mod corpus;
mod infer;
mod parse;

use std::fmt;

use num_bigint::BigInt;
use serde_json::{json, Value};
use thiserror::Error;

use crate::shapes::ShapeId;
use crate::term::{Decoration, Level, TaxonomyFlag, Term};

pub use check::{check, Overall, Status, StepVerdict, Verdict};
pub use infer::{infer_levels, Assignment, InferError, LevelSource};
pub use parse::parse_script;

/// Checker settings, set from `#!` pragmas or by the caller.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CheckConfig {
    /// Rational shape fracvalues are drawn from.
    pub shape: ShapeId,
    /// Whether fracterms and fracvalues are disjoint collections.
    pub disjoint: bool,
}

impl CheckConfig {
    /// `rat.ssft` makes simplified simple fracterms numbers, so it is the one
    /// shape where the collections overlap.
    pub fn for_shape(shape: ShapeId) -> CheckConfig {
        CheckConfig { shape, disjoint: shape != ShapeId::RatSsft }
    }
}

impl Default for CheckConfig {
    fn default() -> Self {
        CheckConfig::for_shape(ShapeId::RatPcs)
    }
}

/// One appearance of a fracsign in a script.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Occurrence {
    /// Index of the assertion it appears in.
    pub step: usize,
    /// 1-based position within the assertion.
    pub position: usize,
    /// The sign with decorations erased.
    pub fracsign: Term,
    pub decoration: Option<Decoration>,
}

impl Occurrence {
    pub fn id(&self) -> String {
        format!("{}.{}", self.step, self.position)
    }
}

/// Handle into [`Script::occurrences`].
pub type OccId = usize;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Comparison {
    Gt,
    Lt,
    Ge,
    Le,
}

impl Comparison {
    pub fn as_str(self) -> &'static str {
        match self {
            Comparison::Gt => ">",
            Comparison::Lt => "<",
            Comparison::Ge => ">=",
            Comparison::Le => "<=",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Property {
    Rational,
    Fracterm,
    Fracvalue,
    Fraxion,
    Flag(TaxonomyFlag),
    Integer,
    EvenInteger,
    OddInteger,
    CanBeSimplified,
    MayBeRational,
    Compare(Comparison, BigInt),
}

impl Property {
    /// The level this property only makes sense at, if any.
    pub fn forced_level(&self) -> Option<Level> {
        match self {
            Property::Rational
            | Property::Fracvalue
            | Property::Integer
            | Property::EvenInteger
            | Property::OddInteger
            | Property::Compare(..) => Some(Level::Fracvalue),
            Property::Fracterm | Property::Flag(_) | Property::CanBeSimplified => {
                Some(Level::Fracterm)
            }
            Property::Fraxion | Property::MayBeRational => Some(Level::Fraxion),
        }
    }

    pub fn describe(&self) -> String {
        match self {
            Property::Rational => "rational".into(),
            Property::Fracterm => "a fracterm".into(),
            Property::Fracvalue => "a fracvalue".into(),
            Property::Fraxion => "a fraxion".into(),
            Property::Flag(TaxonomyFlag::Fracterm) => "a fracterm".into(),
            Property::Flag(f) => f.as_str().into(),
            Property::Integer => "an integer".into(),
            Property::EvenInteger => "an even integer".into(),
            Property::OddInteger => "an odd integer".into(),
            Property::CanBeSimplified => "simplifiable".into(),
            Property::MayBeRational => "possibly rational".into(),
            Property::Compare(op, n) => format!("{} {n}", op.as_str()),
        }
    }
}

/// A property claimed to hold (`holds`) or to fail.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Predicate {
    pub property: Property,
    pub holds: bool,
}

/// What a numerator/denominator claim says about the component.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ComponentClaim {
    Equals(BigInt),
    Even,
    Odd,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Component {
    Numerator,
    Denominator,
}

impl Component {
    pub fn name(self) -> &'static str {
        match self {
            Component::Numerator => "numerator",
            Component::Denominator => "denominator",
        }
    }
}

/// The closed claim vocabulary.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Claim {
    /// `num(t) = n`, `denom(t) is even`
    HasComponent { occ: OccId, component: Component, value: ComponentClaim },
    /// `fracterms have unique numerator`
    UniqueNumerator(Level),
    /// `t == u`
    Equals(OccId, OccId),
    /// `t is rational`, `t is not flat`, `t can be simplified`, `t > 1`, ...
    Properties { occ: OccId, predicates: Vec<Predicate> },
    /// `t is fracterm and fracvalue`
    BothLevels(OccId),
    /// `t can be written as flat u`
    FlatForm { occ: OccId, witness: Term },
    /// `t contradicts k`
    Contradicts { occ: OccId, target: usize },
    /// `not all fracterms are rational[, e.g. t]`
    NotAllFractermsRational { witness: Option<OccId> },
    /// `rationals are not fracterms`
    RationalsAreNotFracterms,
    /// `rationals are fraxions`
    RationalsAreFraxions,
    /// `not all fraxions are rational`
    NotAllFraxionsRational,
    /// `level(k) = ft`
    LevelDirective { target: usize, level: Level },
    /// `conclude n = m`
    Conclude(BigInt, BigInt),
    /// `def: fraction is number`
    Definitional { text: String, reading: Level },
}

impl Claim {
    pub fn occurrences(&self) -> Vec<OccId> {
        match self {
            Claim::HasComponent { occ, .. }
            | Claim::Properties { occ, .. }
            | Claim::BothLevels(occ)
            | Claim::FlatForm { occ, .. }
            | Claim::Contradicts { occ, .. } => vec![*occ],
            Claim::Equals(a, b) => vec![*a, *b],
            Claim::NotAllFractermsRational { witness } => witness.iter().copied().collect(),
            _ => vec![],
        }
    }

    /// The level the claim's own wording requires of its occurrences.
    pub fn forced_level(&self) -> Result<Option<Level>, (Level, Level)> {
        match self {
            Claim::HasComponent { .. } | Claim::FlatForm { .. } => Ok(Some(Level::Fracterm)),
            Claim::NotAllFractermsRational { witness: Some(_) } => Ok(Some(Level::Fracterm)),
            Claim::Properties { predicates, .. } => {
                let mut found: Option<Level> = None;
                for p in predicates {
                    let Some(level) = p.property.forced_level() else { continue };
                    match found {
                        Some(prev) if prev != level => return Err((prev, level)),
                        _ => found = Some(level),
                    }
                }
                Ok(found)
            }
            _ => Ok(None),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Step {
    /// The number written before the colon.
    pub index: usize,
    /// Source line, 1-based.
    pub line: usize,
    pub text: String,
    pub claim: Claim,
    /// Trailing `@ft`-style annotation.
    pub annotation: Option<Level>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Script {
    pub steps: Vec<Step>,
    pub occurrences: Vec<Occurrence>,
    pub config: CheckConfig,
}

impl Script {
    pub fn step(&self, index: usize) -> Option<&Step> {
        self.steps.iter().find(|s| s.index == index)
    }

    pub fn with_config(mut self, config: CheckConfig) -> Script {
        self.config = config;
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScriptError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("line {line}: assertion {target} does not exist")]
    DanglingReference { line: usize, target: usize },
    #[error("line {line}: assertion {index} is numbered twice")]
    DuplicateIndex { line: usize, index: usize },
}

impl ScriptError {
    pub fn to_json(&self) -> Value {
        let kind = match self {
            ScriptError::Syntax { .. } => "syntax",
            ScriptError::DanglingReference { .. } => "dangling-reference",
            ScriptError::DuplicateIndex { .. } => "duplicate-index",
        };
        json!({ "error": kind, "message": self.to_string() })
    }
}

impl fmt::Display for Occurrence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (occurrence {})", self.fracsign, self.id())
    }
}
