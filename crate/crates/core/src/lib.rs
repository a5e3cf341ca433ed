//! Executable fracterm calculus.
//!
//! * [`term`]: the term language with division, its formats and taxonomy.
//! * [`shapes`]: number shapes for the labels nat, int and rat.
//! * [`ratio`]: the subnormal algebra of integer ratio-numbers.
//! * [`semantics`]: evaluation under partial, Suppes-Ono and common-meadow division.
//! * [`rewrite`]: flattening, simplification and the addition family.
//! * [`fractalk`]: level inference and checking for assertion scripts.

pub mod fractalk;
pub mod ratio;
pub mod rewrite;
pub mod semantics;
pub mod shapes;
pub mod term;

pub use ratio::{AddRule, RatioNumber, RnExpr};
pub use rewrite::{flatten, simplify, AddStrategy, RewriteTrace};
pub use semantics::{eval, EvalConfig, Fracvalue, Policy};
pub use shapes::{Instance, Label, ShapeError, ShapeId};
pub use term::{
    classify, denom, format, is_fracterm, num, parse, Decoration, Format, Level, Numeral,
    SyntaxError, TaxonomyFlags, Term,
};

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde_json::Value;

/// JSON number when it fits in an `i64`, decimal string otherwise.
pub(crate) fn int_json(k: &BigInt) -> Value {
    match k.to_i64() {
        Some(v) => Value::from(v),
        None => Value::String(k.to_str_radix(10)),
    }
}
