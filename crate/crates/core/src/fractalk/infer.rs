// Level inference. Sources in priority order: explicit (annotation or root
// decoration), a level directive aimed at the assertion, the most recent
// definitional claim, the wording of the claim itself, and finally the most
// abstract reading, fracvalue.

use serde_json::{json, Value};
use thiserror::Error;

use super::{Claim, OccId, Script};
use crate::term::Level;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LevelSource {
    Annotation,
    Decoration,
    /// A `level(k) = ..` claim in the given assertion.
    Directive(usize),
    /// A `def:` claim in the given assertion.
    Definitional(usize),
    Claim,
    Default,
}

impl LevelSource {
    pub fn describe(self) -> String {
        match self {
            LevelSource::Annotation => "annotation".into(),
            LevelSource::Decoration => "decoration".into(),
            LevelSource::Directive(k) => format!("directive in assertion {k}"),
            LevelSource::Definitional(k) => format!("definitional claim in assertion {k}"),
            LevelSource::Claim => "claim".into(),
            LevelSource::Default => "default".into(),
        }
    }

    pub fn is_explicit(self) -> bool {
        matches!(self, LevelSource::Annotation | LevelSource::Decoration)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Assignment {
    pub occ: OccId,
    pub level: Level,
    pub source: LevelSource,
    /// The level the claim's wording asks for, when it asks for one.
    pub required: Option<Level>,
}

impl Assignment {
    pub fn to_json(&self, script: &Script) -> Value {
        let o = &script.occurrences[self.occ];
        json!({
            "occurrence": o.id(),
            "fracsign": o.fracsign.to_inline(),
            "level": self.level.tag(),
            "source": self.source.describe(),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("assertion {step}: occurrence {occurrence} is given both level {first} and level {second}")]
pub struct InferError {
    pub step: usize,
    pub occurrence: String,
    pub first: Level,
    pub second: Level,
}

/// Level of every occurrence, indexed like `script.occurrences`. Fails on
/// the first occurrence given two incompatible levels.
pub fn infer_levels(script: &Script) -> Result<Vec<Assignment>, InferError> {
    let (assignments, errors) = infer_all(script);
    match errors.into_iter().next() {
        Some(e) => Err(e),
        None => Ok(assignments),
    }
}

/// Like [`infer_levels`] but keeps going: a conflicting occurrence gets the
/// higher-priority level and the conflict is reported alongside.
pub(crate) fn infer_all(script: &Script) -> (Vec<Assignment>, Vec<InferError>) {
    let mut assignments: Vec<Option<Assignment>> = vec![None; script.occurrences.len()];
    let mut errors = Vec::new();
    let mut definitional: Option<(usize, Level)> = None;

    for step in &script.steps {
        let mut conflict = |occ: OccId, first: Level, second: Level| {
            errors.push(InferError {
                step: step.index,
                occurrence: script.occurrences[occ].id(),
                first,
                second,
            });
        };

        let directives: Vec<(usize, Level)> = script
            .steps
            .iter()
            .filter_map(|s| match s.claim {
                Claim::LevelDirective { target, level } if target == step.index => {
                    Some((s.index, level))
                }
                _ => None,
            })
            .collect();
        let required = step.claim.forced_level();

        for occ in step.claim.occurrences() {
            let decoration = script.occurrences[occ].decoration.map(|d| d.level());
            let explicit = match (step.annotation, decoration) {
                (Some(a), Some(d)) if a != d => {
                    conflict(occ, a, d);
                    Some((a, LevelSource::Annotation))
                }
                (Some(a), _) => Some((a, LevelSource::Annotation)),
                (None, Some(d)) => Some((d, LevelSource::Decoration)),
                (None, None) => None,
            };
            let directive = directives.first().map(|&(k, l)| (l, LevelSource::Directive(k)));
            for &(_, other) in directives.iter().skip(1) {
                if let Some((first, _)) = directive {
                    if first != other {
                        conflict(occ, first, other);
                    }
                }
            }
            if let (Some((e, _)), Some((d, _))) = (explicit, directive) {
                if e != d {
                    conflict(occ, e, d);
                }
            }
            let claimed = match required {
                Ok(level) => level,
                Err((a, b)) => {
                    conflict(occ, a, b);
                    Some(a)
                }
            };
            let (level, source) = explicit
                .or(directive)
                .or(definitional.map(|(k, l)| (l, LevelSource::Definitional(k))))
                .or(claimed.map(|l| (l, LevelSource::Claim)))
                .unwrap_or((Level::Fracvalue, LevelSource::Default));
            assignments[occ] = Some(Assignment { occ, level, source, required: claimed });
        }

        if let Claim::Definitional { reading, .. } = step.claim {
            definitional = Some((step.index, reading));
        }
    }

    let assignments = assignments
        .into_iter()
        .map(|a| a.expect("every occurrence belongs to a step"))
        .collect();
    (assignments, errors)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fractalk::parse_script;

    fn levels(text: &str) -> Vec<(Level, LevelSource)> {
        let script = parse_script(text).unwrap();
        infer_levels(&script).unwrap().into_iter().map(|a| (a.level, a.source)).collect()
    }

    #[test]
    fn claim_wording_and_default() {
        assert_eq!(levels("1: 4/3 > 1"), [(Level::Fracvalue, LevelSource::Claim)]);
        assert_eq!(
            levels("1: 4/3 is simple and simplified"),
            [(Level::Fracterm, LevelSource::Claim)]
        );
        assert_eq!(levels("1: 4/3 is improper"), [(Level::Fracterm, LevelSource::Claim)]);
        assert_eq!(
            levels("1: 1/2 == 2/4"),
            [(Level::Fracvalue, LevelSource::Default), (Level::Fracvalue, LevelSource::Default)]
        );
    }

    #[test]
    fn priorities() {
        assert_eq!(
            levels("1: level(2) = ft\n2: 2/3 is rational"),
            [(Level::Fracterm, LevelSource::Directive(1))]
        );
        assert_eq!(
            levels("1: 2/3 is rational @ft"),
            [(Level::Fracterm, LevelSource::Annotation)]
        );
        assert_eq!(
            levels("1: 2/ft 3 is rational"),
            [(Level::Fracterm, LevelSource::Decoration)]
        );
        assert_eq!(
            levels("1: def: fraction is number\n2: denom(2/6) is even"),
            [(Level::Fracvalue, LevelSource::Definitional(1))]
        );
    }

    #[test]
    fn conflicts() {
        let script = parse_script("1: 2/fv 3 is fracterm @ft").unwrap();
        let err = infer_levels(&script).unwrap_err();
        assert_eq!((err.first, err.second), (Level::Fracterm, Level::Fracvalue));
        let script = parse_script("1: 2/3 is simple and rational").unwrap();
        assert!(infer_levels(&script).is_err());
    }
}
