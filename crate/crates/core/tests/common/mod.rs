//! Test support: an exact-rational oracle written against the term AST only,
//! and seeded random terms.
#![allow(dead_code)]

use fracterm_core::shapes::Instance;
use fracterm_core::{Fracvalue, Term};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use proptest::prelude::*;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub const SEED: u64 = 0x5EED_F4AC;

/// Common-meadow value of a closed term: `None` is ⊥.
pub fn oracle(t: &Term) -> Option<BigRational> {
    match t {
        Term::Lit(n) => Some(BigRational::from_integer(n.as_str().parse().unwrap())),
        Term::Var(v) => panic!("oracle needs a closed term, found {v}"),
        Term::Neg(a) => Some(-oracle(a)?),
        Term::Add(a, b) => Some(oracle(a)? + oracle(b)?),
        Term::Sub(a, b) => Some(oracle(a)? - oracle(b)?),
        Term::Mul(a, b) => Some(oracle(a)? * oracle(b)?),
        Term::Div(a, b, _) => {
            let (x, y) = (oracle(a)?, oracle(b)?);
            if y.is_zero() {
                None
            } else {
                Some(x / y)
            }
        }
    }
}

/// Whether evaluating `t` ever divides by zero.
pub fn hits_zero_divisor(t: &Term) -> bool {
    match t {
        Term::Div(a, b, _) => {
            hits_zero_divisor(a) || hits_zero_divisor(b) || oracle(b).is_some_and(|y| y.is_zero())
        }
        Term::Lit(_) | Term::Var(_) => false,
        Term::Neg(a) => hits_zero_divisor(a),
        Term::Add(a, b) | Term::Sub(a, b) | Term::Mul(a, b) => {
            hits_zero_divisor(a) || hits_zero_divisor(b)
        }
    }
}

fn ratio(n: &BigInt, d: &BigInt) -> Option<BigRational> {
    (!d.is_zero()).then(|| BigRational::new(n.clone(), d.clone()))
}

/// Reads a fracvalue back as a rational, `None` for ⊥ and for pairs with a
/// zero second component.
pub fn as_rational(v: &Fracvalue) -> Option<BigRational> {
    match v {
        Fracvalue::Peripheral(_) => None,
        Fracvalue::Number(Instance::Pcs(p)) => ratio(p.num(), p.den()),
        Fracvalue::Number(Instance::Rns(r)) => ratio(&r.a, &r.b),
        Fracvalue::Number(Instance::Ssft(t)) => match t {
            Term::Div(a, b, _) => ratio(&lit(a), &lit(b)),
            other => Some(BigRational::from_integer(lit(other))),
        },
        Fracvalue::Number(other) => panic!("not a rational instance: {other}"),
    }
}

fn lit(t: &Term) -> BigInt {
    match t {
        Term::Lit(n) => n.as_str().parse().unwrap(),
        Term::Neg(a) => -lit(a),
        other => panic!("not a numeral: {other}"),
    }
}

pub fn rng() -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(SEED)
}

/// A closed term of depth at most `depth` with literals in [-9, 9].
pub fn random_term(rng: &mut impl Rng, depth: usize) -> Term {
    if depth <= 1 || rng.gen_bool(0.25) {
        return Term::lit(rng.gen_range(-9..=9));
    }
    let sub = |rng: &mut _| random_term(rng, depth - 1);
    match rng.gen_range(0..9) {
        0 => Term::neg(sub(rng)),
        1 | 2 => Term::add(sub(rng), sub(rng)),
        3 => Term::sub(sub(rng), sub(rng)),
        4 | 5 => Term::mul(sub(rng), sub(rng)),
        _ => Term::div(sub(rng), sub(rng)),
    }
}

pub fn random_terms(n: usize) -> Vec<Term> {
    let mut rng = rng();
    (0..n).map(|_| random_term(&mut rng, 5)).collect()
}

/// A flat fracterm a/b with a and b division free, b nonzero as a value.
pub fn random_flat(rng: &mut impl Rng) -> Term {
    loop {
        let a = division_free(rng, 2);
        let b = division_free(rng, 2);
        if oracle(&b).is_some_and(|v| !v.is_zero()) {
            return Term::div(a, b);
        }
    }
}

fn division_free(rng: &mut impl Rng, depth: usize) -> Term {
    if depth <= 1 || rng.gen_bool(0.5) {
        return Term::lit(rng.gen_range(-9..=9));
    }
    let a = division_free(rng, depth - 1);
    let b = division_free(rng, depth - 1);
    match rng.gen_range(0..3) {
        0 => Term::add(a, b),
        1 => Term::sub(a, b),
        _ => Term::mul(a, b),
    }
}

/// Proptest strategy for closed terms of depth at most 5.
pub fn arb_term() -> impl Strategy<Value = Term> {
    let leaf = (-9i64..=9).prop_map(Term::lit);
    leaf.prop_recursive(4, 32, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(Term::neg),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Term::add(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Term::sub(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Term::mul(a, b)),
            (inner.clone(), inner).prop_map(|(a, b)| Term::div(a, b)),
        ]
    })
}
