// Line-oriented script reader.
//
//   #! shape = rat.ssft        pragma
//   # text                     comment (also after a claim)
//   3: 1/2 == 2/4 @fv          numbered claim, optional level annotation

use std::collections::HashSet;

use num_bigint::BigInt;

use super::{
    CheckConfig, Claim, Comparison, Component, ComponentClaim, OccId, Occurrence, Predicate,
    Property, Script, ScriptError, Step,
};
use crate::shapes::ShapeId;
use crate::term::{self, Format, Level, TaxonomyFlag, Term};

struct Reader {
    line: usize,
    step: usize,
    occurrences: Vec<Occurrence>,
    position: usize,
}

impl Reader {
    fn error(&self, message: impl Into<String>) -> ScriptError {
        ScriptError::Syntax { line: self.line, message: message.into() }
    }

    fn term(&self, text: &str) -> Result<Term, ScriptError> {
        term::parse(text.trim(), Format::Inline)
            .map_err(|e| self.error(format!("in term {:?}: {e}", text.trim())))
    }

    fn occurrence(&mut self, text: &str) -> Result<OccId, ScriptError> {
        let t = self.term(text)?;
        self.position += 1;
        self.occurrences.push(Occurrence {
            step: self.step,
            position: self.position,
            fracsign: t.erase_decorations(),
            decoration: t.decoration(),
        });
        Ok(self.occurrences.len() - 1)
    }

    fn integer(&self, text: &str) -> Result<BigInt, ScriptError> {
        text.trim().parse().map_err(|_| self.error(format!("expected an integer, got {:?}", text.trim())))
    }

    fn index(&self, text: &str) -> Result<usize, ScriptError> {
        text.trim()
            .parse()
            .map_err(|_| self.error(format!("expected an assertion number, got {:?}", text.trim())))
    }
}

/// Drops filler words so "is a rational number" reads as "is rational".
fn normalize(text: &str) -> String {
    text.split_whitespace()
        .filter(|w| {
            !matches!(*w, "a" | "an" | "the" | "both" | "number" | "numbers" | "fraction" | "fractions")
        })
        .collect::<Vec<_>>()
        .join(" ")
}

fn adjective(words: &[&str]) -> Option<(Property, bool)> {
    let property = match words {
        ["rational"] => Property::Rational,
        ["fracterm"] => Property::Fracterm,
        ["fracvalue"] => Property::Fracvalue,
        ["fraxion"] => Property::Fraxion,
        ["integer"] => Property::Integer,
        ["even", "integer"] => Property::EvenInteger,
        ["odd", "integer"] => Property::OddInteger,
        ["improper"] => return Some((Property::Flag(TaxonomyFlag::Proper), false)),
        [flag] => Property::Flag(flag.parse().ok()?),
        _ => return None,
    };
    Some((property, true))
}

fn predicate(part: &str) -> Option<Predicate> {
    let words: Vec<&str> = part.split_whitespace().collect();
    let (property, holds) = match words.as_slice() {
        ["can", "be", "simplified"] => (Property::CanBeSimplified, true),
        ["cannot", "be", "simplified"] | ["can", "not", "be", "simplified"] => {
            (Property::CanBeSimplified, false)
        }
        ["may", "be", "rational"] => (Property::MayBeRational, true),
        ["is", "not", rest @ ..] => {
            let (p, h) = adjective(rest)?;
            (p, !h)
        }
        ["is", rest @ ..] => adjective(rest)?,
        rest => adjective(rest)?,
    };
    Some(Predicate { property, holds })
}

fn level_word(word: &str) -> Option<Level> {
    Some(match word {
        "number" | "rational" | "fracvalue" | "value" => Level::Fracvalue,
        "fracterm" | "term" => Level::Fracterm,
        "fracsign" | "sign" => Level::Fracsign,
        "fraxion" => Level::Fraxion,
        _ => return None,
    })
}

/// Splits `text` at the first of `keys`, returning (before, key, after).
fn split_first<'a>(text: &'a str, keys: &[&'a str]) -> Option<(&'a str, &'a str, &'a str)> {
    keys.iter()
        .filter_map(|k| text.find(k).map(|at| (at, *k)))
        .min_by_key(|&(at, k)| (at, std::cmp::Reverse(k.len())))
        .map(|(at, k)| (&text[..at], k, &text[at + k.len()..]))
}

fn component_call(text: &str) -> Option<(Component, &str, &str)> {
    let (component, rest) = if let Some(r) = text.strip_prefix("num(") {
        (Component::Numerator, r)
    } else {
        (Component::Denominator, text.strip_prefix("denom(")?)
    };
    let mut depth = 1usize;
    for (at, c) in rest.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => {
                depth -= 1;
                if depth == 0 {
                    return Some((component, &rest[..at], &rest[at + 1..]));
                }
            }
            _ => {}
        }
    }
    None
}

fn claim(r: &mut Reader, text: &str) -> Result<Claim, ScriptError> {
    let norm = normalize(text);
    if let Some(rest) = text.strip_prefix("level(") {
        let (target, tag) = rest
            .split_once(')')
            .and_then(|(t, rhs)| Some((t, rhs.trim().strip_prefix('=')?.trim())))
            .ok_or_else(|| r.error("expected level(<n>) = <tag>"))?;
        let level = Level::from_tag(tag).ok_or_else(|| r.error(format!("unknown level {tag:?}")))?;
        return Ok(Claim::LevelDirective { target: r.index(target)?, level });
    }
    if let Some(rest) = text.strip_prefix("conclude ") {
        let (a, b) = rest.split_once('=').ok_or_else(|| r.error("expected conclude <n> = <m>"))?;
        return Ok(Claim::Conclude(r.integer(a)?, r.integer(b)?));
    }
    if let Some(rest) = text.strip_prefix("def:") {
        let rest = rest.split_whitespace().collect::<Vec<_>>().join(" ");
        let reading = rest
            .split_once(" is ")
            .and_then(|(_, w)| w.split_whitespace().last())
            .and_then(level_word)
            .ok_or_else(|| r.error("expected def: fraction is <number|fracterm|fracsign|fraxion>"))?;
        return Ok(Claim::Definitional { text: rest, reading });
    }
    for (subject, level) in [
        ("fracterms", Level::Fracterm),
        ("fracvalues", Level::Fracvalue),
        ("fraxions", Level::Fraxion),
        ("fracsigns", Level::Fracsign),
    ] {
        if norm == format!("{subject} have unique numerator") {
            return Ok(Claim::UniqueNumerator(level));
        }
    }
    match norm.as_str() {
        "rationals are not fracterms" | "rational are not fracterms" => {
            return Ok(Claim::RationalsAreNotFracterms)
        }
        "rationals are fraxions" | "all rational are fraxions" | "all rationals are fraxions" => {
            return Ok(Claim::RationalsAreFraxions)
        }
        "not all fraxions are rational" | "not all fraxions are rationals" => {
            return Ok(Claim::NotAllFraxionsRational)
        }
        _ => {}
    }
    if let Some(rest) = norm.strip_prefix("not all fracterms are rational") {
        let rest = rest.trim_start_matches('s').trim();
        if rest.is_empty() {
            return Ok(Claim::NotAllFractermsRational { witness: None });
        }
        let witness_text = rest
            .strip_prefix(", e.g.")
            .ok_or_else(|| r.error("expected `, e.g. <term>` after the claim"))?;
        let witness = r.occurrence(witness_text)?;
        return Ok(Claim::NotAllFractermsRational { witness: Some(witness) });
    }
    if let Some((component, inner, rest)) = component_call(text) {
        let occ = r.occurrence(inner)?;
        let rest = normalize(rest);
        let value = if let Some(n) = rest.strip_prefix('=') {
            ComponentClaim::Equals(r.integer(n)?)
        } else {
            match rest.as_str() {
                "is even" => ComponentClaim::Even,
                "is odd" => ComponentClaim::Odd,
                _ => return Err(r.error("expected `= <n>`, `is even` or `is odd`")),
            }
        };
        return Ok(Claim::HasComponent { occ, component, value });
    }
    if let Some((lhs, _, rhs)) = split_first(text, &[" contradicts "]) {
        let occ = r.occurrence(lhs)?;
        let target = rhs.trim().trim_start_matches("item").trim_start_matches("claim").trim();
        return Ok(Claim::Contradicts { occ, target: r.index(target)? });
    }
    if let Some((lhs, _, rhs)) = split_first(text, &["=="]) {
        let a = r.occurrence(lhs)?;
        let b = r.occurrence(rhs)?;
        return Ok(Claim::Equals(a, b));
    }
    if let Some((lhs, _, rhs)) = split_first(text, &[" can be written as flat "]) {
        let occ = r.occurrence(lhs)?;
        let witness = r.term(rhs)?.erase_decorations();
        return Ok(Claim::FlatForm { occ, witness });
    }
    if let Some((lhs, op, rhs)) = split_first(text, &[">=", "<=", ">", "<"]) {
        let op = match op {
            ">=" => Comparison::Ge,
            "<=" => Comparison::Le,
            ">" => Comparison::Gt,
            _ => Comparison::Lt,
        };
        let occ = r.occurrence(lhs)?;
        let bound = r.integer(rhs)?;
        let predicates = vec![Predicate { property: Property::Compare(op, bound), holds: true }];
        return Ok(Claim::Properties { occ, predicates });
    }
    if let Some((lhs, key, rhs)) = split_first(text, &[" is ", " can ", " cannot ", " may "]) {
        let phrase = normalize(&format!("{} {rhs}", key.trim()));
        let mut predicates = Vec::new();
        for part in phrase.split(" and ") {
            predicates.push(predicate(part).ok_or_else(|| r.error(format!("unknown property {part:?}")))?);
        }
        let occ = r.occurrence(lhs)?;
        let positive: Vec<&Property> =
            predicates.iter().filter(|p| p.holds).map(|p| &p.property).collect();
        if predicates.len() == 2
            && positive.contains(&&Property::Fracterm)
            && positive.contains(&&Property::Fracvalue)
        {
            return Ok(Claim::BothLevels(occ));
        }
        return Ok(Claim::Properties { occ, predicates });
    }
    Err(r.error(format!("unrecognized claim {text:?}")))
}

fn pragma(config: &mut (Option<ShapeId>, Option<bool>), text: &str, line: usize) -> Result<(), ScriptError> {
    let bad = |m: String| ScriptError::Syntax { line, message: m };
    let (key, value) = text
        .split_once('=')
        .map(|(k, v)| (k.trim(), v.trim()))
        .ok_or_else(|| bad("expected #! key = value".into()))?;
    match key {
        "shape" => {
            let shape: ShapeId = value.parse().map_err(|e: crate::shapes::ShapeError| bad(e.to_string()))?;
            if shape.label() != crate::shapes::Label::Rat {
                return Err(bad(format!("shape {shape} is not a rational shape")));
            }
            config.0 = Some(shape);
        }
        "disjoint" => {
            config.1 = Some(value.parse().map_err(|_| bad(format!("expected true or false, got {value:?}")))?);
        }
        other => return Err(bad(format!("unknown pragma {other:?}"))),
    }
    Ok(())
}

pub fn parse_script(text: &str) -> Result<Script, ScriptError> {
    let mut r = Reader { line: 0, step: 0, occurrences: Vec::new(), position: 0 };
    let mut steps: Vec<Step> = Vec::new();
    let mut pragmas = (None, None);
    let mut seen = HashSet::new();
    for (n, raw) in text.lines().enumerate() {
        r.line = n + 1;
        let trimmed = raw.trim();
        if let Some(p) = trimmed.strip_prefix("#!") {
            pragma(&mut pragmas, p, r.line)?;
            continue;
        }
        let content = trimmed.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let (index, body) = content
            .split_once(':')
            .ok_or_else(|| r.error("expected <n>: <claim>"))?;
        let index = r.index(index)?;
        if !seen.insert(index) {
            return Err(ScriptError::DuplicateIndex { line: r.line, index });
        }
        let text = body.trim().to_owned();
        let mut body = body.trim();
        let mut annotation = None;
        if let Some((head, tag)) = body.rsplit_once('@') {
            annotation = Some(
                Level::from_tag(tag.trim())
                    .ok_or_else(|| r.error(format!("unknown level annotation @{}", tag.trim())))?,
            );
            body = head.trim();
        }
        r.step = index;
        r.position = 0;
        let claim = claim(&mut r, body)?;
        steps.push(Step { index, line: r.line, text, claim, annotation });
    }

    for step in &steps {
        let target = match step.claim {
            Claim::LevelDirective { target, .. } | Claim::Contradicts { target, .. } => target,
            _ => continue,
        };
        let dangling = match steps.iter().find(|s| s.index == target) {
            None => true,
            Some(s) => {
                matches!(step.claim, Claim::LevelDirective { .. }) && s.claim.occurrences().is_empty()
            }
        };
        if dangling {
            return Err(ScriptError::DanglingReference { line: step.line, target });
        }
    }

    let mut config = CheckConfig::for_shape(pragmas.0.unwrap_or(ShapeId::RatPcs));
    if let Some(disjoint) = pragmas.1 {
        config.disjoint = disjoint;
    }
    Ok(Script { steps, occurrences: r.occurrences, config })
}
