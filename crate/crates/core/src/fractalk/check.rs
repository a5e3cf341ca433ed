// Verdicts. Each assertion is judged at the levels inference gave its
// occurrences. When it fails there but would hold at the level its wording
// asks for, the failure is reported as a level conflict.

use std::collections::HashMap;
use std::fmt;

use num_integer::Integer;
use num_rational::BigRational;
use serde_json::{json, Value};

use super::infer::{infer_all, Assignment};
use super::{
    Claim, Comparison, Component, ComponentClaim, OccId, Property, Script, Step,
};
use crate::rewrite;
use crate::semantics::{self, EvalConfig, Fracvalue, Policy};
use crate::shapes;
use crate::term::{self, Level, Term};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Status {
    Valid,
    Invalid { reason: String },
    LevelConflict { occurrence: String, expected: Level, found: Level, reason: String },
}

impl Status {
    pub fn is_valid(&self) -> bool {
        matches!(self, Status::Valid)
    }

    pub fn tag(&self) -> &'static str {
        match self {
            Status::Valid => "valid",
            Status::Invalid { .. } => "invalid",
            Status::LevelConflict { .. } => "level-conflict",
        }
    }

    fn explanation(&self) -> String {
        match self {
            Status::Valid => String::new(),
            Status::Invalid { reason } => reason.clone(),
            Status::LevelConflict { occurrence, expected, found, reason } => format!(
                "occurrence {occurrence} is read as a {found} but the claim needs a {expected}: {reason}"
            ),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StepVerdict {
    pub index: usize,
    pub text: String,
    pub status: Status,
    pub levels: Vec<Assignment>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Overall {
    Sound,
    ParadoxBlocked { step: usize, explanation: String },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub steps: Vec<StepVerdict>,
    pub overall: Overall,
    script: Script,
}

impl Verdict {
    pub fn status_of(&self, index: usize) -> Option<&Status> {
        self.steps.iter().find(|s| s.index == index).map(|s| &s.status)
    }

    /// Indices of the assertions that did not check.
    pub fn failing_steps(&self) -> Vec<usize> {
        self.steps.iter().filter(|s| !s.status.is_valid()).map(|s| s.index).collect()
    }

    pub fn to_json(&self) -> Value {
        let steps: Vec<Value> = self
            .steps
            .iter()
            .map(|s| {
                let mut v = json!({
                    "index": s.index,
                    "claim": s.text,
                    "status": s.status.tag(),
                    "levels": s.levels.iter().map(|a| a.to_json(&self.script)).collect::<Vec<_>>(),
                });
                match &s.status {
                    Status::Valid => {}
                    Status::Invalid { reason } => v["reason"] = json!(reason),
                    Status::LevelConflict { occurrence, expected, found, reason } => {
                        v["occurrence"] = json!(occurrence);
                        v["expected"] = json!(expected.tag());
                        v["found"] = json!(found.tag());
                        v["reason"] = json!(reason);
                    }
                }
                v
            })
            .collect();
        let overall = match &self.overall {
            Overall::Sound => json!({ "status": "sound" }),
            Overall::ParadoxBlocked { step, explanation } => json!({
                "status": "paradox-blocked",
                "step": step,
                "explanation": explanation,
            }),
        };
        json!({
            "shape": self.script.config.shape.as_str(),
            "disjoint": self.script.config.disjoint,
            "steps": steps,
            "overall": overall,
        })
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.steps {
            let levels: Vec<String> = s
                .levels
                .iter()
                .map(|a| format!("{}={}", self.script.occurrences[a.occ].id(), a.level.tag()))
                .collect();
            write!(f, "{:>3}  {:<14} {}", s.index, s.status.tag(), s.text)?;
            if !levels.is_empty() {
                write!(f, "  [{}]", levels.join(", "))?;
            }
            writeln!(f)?;
            if !s.status.is_valid() {
                writeln!(f, "     {}", s.status.explanation())?;
            }
        }
        match &self.overall {
            Overall::Sound => writeln!(f, "overall: sound"),
            Overall::ParadoxBlocked { step, explanation } => {
                writeln!(f, "overall: paradox-blocked at step {step}: {explanation}")
            }
        }
    }
}

struct Checker<'a> {
    script: &'a Script,
    levels: Vec<Assignment>,
    statuses: HashMap<usize, Status>,
    eval: EvalConfig,
}

type Outcome = Result<(), String>;

fn describe_claim(holds: bool, what: &str) -> String {
    if holds {
        format!("is {what}")
    } else {
        format!("is not {what}")
    }
}

impl<'a> Checker<'a> {
    fn term(&self, occ: OccId) -> &'a Term {
        &self.script.occurrences[occ].fracsign
    }

    fn level(&self, occ: OccId) -> Level {
        self.levels[occ].level
    }

    fn value(&self, t: &Term) -> Fracvalue {
        semantics::eval(t, &self.eval).unwrap_or_else(|_| Fracvalue::bot())
    }

    fn rational(&self, t: &Term) -> Option<BigRational> {
        self.value(t).as_number().and_then(shapes::decode)
    }

    fn property_at(&self, property: &Property, t: &Term, level: Level) -> Result<bool, String> {
        let disjoint = self.script.config.disjoint;
        let flags = term::classify(t);
        let not_a_number = || format!("being {} is a property of numbers, not of fracterms", property.describe());
        match property {
            Property::Fraxion => Ok(true),
            Property::MayBeRational => Ok(self.rational(t).is_some()),
            Property::Rational => match level {
                Level::Fracvalue => Ok(self.rational(t).is_some()),
                Level::Fracterm if disjoint => Ok(false),
                Level::Fracterm => Ok(flags.simplified),
                Level::Fraxion => Err("a fraxion is only sometimes a rational number".into()),
                Level::Fracsign | Level::FracsignOccurrence => Ok(false),
            },
            Property::Fracterm => match level {
                Level::Fracterm | Level::Fraxion => Ok(flags.is_fracterm),
                Level::Fracvalue if disjoint => Ok(false),
                Level::Fracvalue => Ok(self.value(t).as_number().is_some()),
                Level::Fracsign | Level::FracsignOccurrence => Ok(false),
            },
            Property::Fracvalue => match level {
                Level::Fracvalue => Ok(true),
                Level::Fracterm if disjoint => Ok(false),
                Level::Fracterm => Ok(flags.simplified),
                _ => Ok(false),
            },
            Property::Flag(flag) => match level {
                Level::Fracvalue => {
                    Err(format!("being {} is a property of fracterms, not of fracvalues", flag.as_str()))
                }
                _ => Ok(flags.flag(*flag)),
            },
            Property::CanBeSimplified => match level {
                Level::Fracvalue => Err("simplification acts on fracterms, not on fracvalues".into()),
                _ => Ok(flags.simple && flags.safe && !flags.simplified),
            },
            Property::Integer | Property::EvenInteger | Property::OddInteger => {
                if level != Level::Fracvalue {
                    return Err(not_a_number());
                }
                Ok(match self.rational(t) {
                    Some(q) if q.is_integer() => match property {
                        Property::EvenInteger => q.to_integer().is_even(),
                        Property::OddInteger => q.to_integer().is_odd(),
                        _ => true,
                    },
                    _ => false,
                })
            }
            Property::Compare(op, bound) => {
                if level != Level::Fracvalue {
                    return Err(not_a_number());
                }
                let q = self.rational(t).ok_or_else(|| "⊥ is not ordered".to_owned())?;
                let b = BigRational::from_integer(bound.clone());
                Ok(match op {
                    Comparison::Gt => q > b,
                    Comparison::Lt => q < b,
                    Comparison::Ge => q >= b,
                    Comparison::Le => q <= b,
                })
            }
        }
    }

    fn component_at(
        &self,
        t: &Term,
        component: Component,
        value: &ComponentClaim,
        level: Level,
    ) -> Outcome {
        if level == Level::Fracvalue {
            let op = match component {
                Component::Numerator => "value_num",
                Component::Denominator => "value_denom",
            };
            return Err(format!(
                "fracvalues do not split: a fracvalue has no {}, {op} gives ⊥",
                component.name()
            ));
        }
        let part = match component {
            Component::Numerator => term::num(t),
            Component::Denominator => term::denom(t),
        }
        .map_err(|e| e.to_string())?;
        let q = self
            .rational(&part)
            .ok_or_else(|| format!("the {} {part} has no value", component.name()))?;
        let holds = match value {
            ComponentClaim::Equals(n) => q == BigRational::from_integer(n.clone()),
            ComponentClaim::Even => q.is_integer() && q.to_integer().is_even(),
            ComponentClaim::Odd => q.is_integer() && q.to_integer().is_odd(),
        };
        if holds {
            Ok(())
        } else {
            Err(format!("the {} of the fracterm {t} is {part}", component.name()))
        }
    }

    fn claim_at(&self, step: &Step, level_of: &dyn Fn(OccId) -> Level) -> Outcome {
        let disjoint = self.script.config.disjoint;
        match &step.claim {
            Claim::HasComponent { occ, component, value } => {
                self.component_at(self.term(*occ), *component, value, level_of(*occ))
            }
            Claim::Properties { occ, predicates } => {
                let t = self.term(*occ);
                for p in predicates {
                    let what = p.property.describe();
                    match self.property_at(&p.property, t, level_of(*occ)) {
                        Ok(b) if b == p.holds => {}
                        Ok(_) => {
                            return Err(format!(
                                "as a {}, {t} {}",
                                level_of(*occ),
                                describe_claim(!p.holds, &what)
                            ))
                        }
                        Err(reason) => return Err(reason),
                    }
                }
                Ok(())
            }
            Claim::BothLevels(occ) => {
                let t = self.term(*occ);
                if disjoint {
                    Err(format!("fracterms and fracvalues are disjoint, so {t} cannot be both"))
                } else if term::classify(t).simplified {
                    Ok(())
                } else {
                    Err(format!("only simplified simple fracterms are numbers, and {t} is not one"))
                }
            }
            Claim::Equals(a, b) => {
                let (la, lb) = (level_of(*a), level_of(*b));
                let (ta, tb) = (self.term(*a), self.term(*b));
                if la != lb {
                    return Err(format!("compares a {la} with a {lb}"));
                }
                let equal = match la {
                    Level::Fracvalue => {
                        semantics::value_eq(&self.value(ta), &self.value(tb)).map_err(|e| e.to_string())?
                    }
                    Level::Fracterm | Level::Fracsign => ta == tb,
                    Level::FracsignOccurrence => a == b,
                    Level::Fraxion => {
                        return Err("fraxions must be refined before they can be compared".into())
                    }
                };
                if equal {
                    Ok(())
                } else {
                    Err(format!("as {la}s, {ta} and {tb} differ"))
                }
            }
            Claim::FlatForm { occ, witness } => {
                let t = self.term(*occ);
                if level_of(*occ) == Level::Fracvalue {
                    return Err("flatness is a property of fracterms, not of fracvalues".into());
                }
                if !term::classify(witness).flat {
                    return Err(format!("{witness} is not a flat fracterm"));
                }
                let (flat, _) = rewrite::flatten(t).map_err(|e| e.to_string())?;
                let same = semantics::value_eq(&self.value(&flat), &self.value(witness))
                    .map_err(|e| e.to_string())?;
                if same {
                    Ok(())
                } else {
                    Err(format!("{t} flattens to {flat}, which does not equal {witness}"))
                }
            }
            Claim::UniqueNumerator(level) => match level {
                Level::Fracvalue => Err(
                    "fracvalues do not have unique numerators: 1/2 and 2/4 are one value with numerators 1 and 2"
                        .into(),
                ),
                _ => Ok(()),
            },
            Claim::NotAllFractermsRational { witness } => match witness {
                None => Ok(()),
                Some(occ) => {
                    let t = self.term(*occ);
                    let level = level_of(*occ);
                    if level == Level::Fracvalue {
                        return Err(format!("the witness {t} is read as a fracvalue, not a fracterm"));
                    }
                    match self.property_at(&Property::Rational, t, Level::Fracterm) {
                        Ok(false) if term::is_fracterm(t) => Ok(()),
                        _ => Err(format!("the fracterm {t} is a rational number")),
                    }
                }
            },
            Claim::RationalsAreNotFracterms => {
                if disjoint {
                    Ok(())
                } else {
                    Err("with simplified simple fracterms as rationals, every rational number is a fracterm".into())
                }
            }
            Claim::RationalsAreFraxions
            | Claim::NotAllFraxionsRational
            | Claim::LevelDirective { .. }
            | Claim::Definitional { .. } => Ok(()),
            Claim::Contradicts { occ, target } => self.contradicts(step, *occ, *target),
            Claim::Conclude(n, m) => self.conclude(step, n, m),
        }
    }

    fn failed_dependency(&self, deps: &[usize]) -> Option<String> {
        deps.iter().find_map(|k| match self.statuses.get(k) {
            Some(s) if !s.is_valid() => Some(format!("relies on assertion {k}, which does not hold")),
            _ => None,
        })
    }

    fn contradicts(&self, step: &Step, occ: OccId, target: usize) -> Outcome {
        let target_claim = &self.script.step(target).expect("checked at parse time").claim;
        if !matches!(
            target_claim,
            Claim::RationalsAreNotFracterms | Claim::NotAllFractermsRational { .. }
        ) {
            return Err(format!("assertion {target} says nothing about rationals being fracterms"));
        }
        let sign = self.term(occ);
        let mut rational = Vec::new();
        let mut fracterm = Vec::new();
        let mut both = Vec::new();
        for s in &self.script.steps {
            if s.index == step.index {
                continue;
            }
            match &s.claim {
                Claim::Properties { occ: o, predicates } if self.term(*o) == sign => {
                    for p in predicates.iter().filter(|p| p.holds) {
                        match p.property {
                            Property::Rational => rational.push((s.index, self.level(*o))),
                            Property::Fracterm => fracterm.push((s.index, self.level(*o))),
                            _ => {}
                        }
                    }
                }
                Claim::BothLevels(o) if self.term(*o) == sign => both.push(s.index),
                _ => {}
            }
        }
        let deps: Vec<usize> = rational
            .iter()
            .chain(&fracterm)
            .map(|(k, _)| *k)
            .chain(both.iter().copied())
            .collect();
        if let Some(reason) = self.failed_dependency(&deps) {
            return Err(reason);
        }
        if !both.is_empty() {
            return Ok(());
        }
        if rational.iter().any(|(_, lr)| fracterm.iter().any(|(_, lt)| lr == lt)) {
            return Ok(());
        }
        if let (Some((kr, lr)), Some((kt, lt))) = (rational.first(), fracterm.first()) {
            return Err(format!(
                "same fracsign, different occurrence levels: assertion {kr} reads {sign} as a {lr}, assertion {kt} as a {lt}"
            ));
        }
        Err(format!("no assertion shows {sign} to be both a rational number and a fracterm"))
    }

    fn conclude(&self, _step: &Step, n: &num_bigint::BigInt, m: &num_bigint::BigInt) -> Outcome {
        if n == m {
            return Ok(());
        }
        let steps = &self.script.steps;
        let component_fact = |value: &num_bigint::BigInt| {
            steps.iter().find_map(|s| match &s.claim {
                Claim::HasComponent {
                    occ,
                    component: Component::Numerator,
                    value: ComponentClaim::Equals(v),
                } if v == value => Some((s.index, *occ)),
                _ => None,
            })
        };
        let (Some((kn, on)), Some((km, om))) = (component_fact(n), component_fact(m)) else {
            return Err(format!("{n} = {m} does not follow from the assertions"));
        };
        let (sn, sm) = (self.term(on), self.term(om));
        let equality = steps.iter().find_map(|s| match s.claim {
            Claim::Equals(a, b)
                if (self.term(a) == sn && self.term(b) == sm)
                    || (self.term(a) == sm && self.term(b) == sn) =>
            {
                Some((s.index, self.level(a)))
            }
            _ => None,
        });
        let uniqueness = steps.iter().find_map(|s| match s.claim {
            Claim::UniqueNumerator(level) => Some((s.index, refine(level))),
            _ => None,
        });
        let (Some((ke, le)), Some((ku, lu))) = (equality, uniqueness) else {
            return Err(format!("{n} = {m} does not follow from the assertions"));
        };
        if let Some(reason) = self.failed_dependency(&[kn, km, ke, ku]) {
            return Err(reason);
        }
        let lc = self.level(on);
        if le != lu {
            return Err(format!(
                "assertion {ke} is about {le}s and the relevant uniqueness has only been established in assertion {ku} about {lu}s, not about {le}s"
            ));
        }
        if lc != lu {
            return Err(format!(
                "assertions {kn} and {km} give numerators of {lc}s, but uniqueness in assertion {ku} is about {lu}s"
            ));
        }
        // all premises agree on one level and hold: the derivation stands
        Ok(())
    }
}

/// Fraxion claims about numerators only make sense of fracterms.
fn refine(level: Level) -> Level {
    match level {
        Level::Fraxion => Level::Fracterm,
        other => other,
    }
}

fn evaluated_late(claim: &Claim) -> bool {
    matches!(claim, Claim::Contradicts { .. } | Claim::Conclude(..))
}

pub fn check(script: &Script) -> Verdict {
    let (levels, errors) = infer_all(script);
    let eval = EvalConfig::new(Policy::CommonMeadow, script.config.shape)
        .unwrap_or_default();
    let mut checker = Checker { script, levels, statuses: HashMap::new(), eval };

    for late in [false, true] {
        for step in script.steps.iter().filter(|s| evaluated_late(&s.claim) == late) {
            let status = match errors.iter().find(|e| e.step == step.index) {
                Some(e) => Status::LevelConflict {
                    occurrence: e.occurrence.clone(),
                    expected: e.second,
                    found: e.first,
                    reason: e.to_string(),
                },
                None => checker.judge(step),
            };
            checker.statuses.insert(step.index, status);
        }
    }

    let steps: Vec<StepVerdict> = script
        .steps
        .iter()
        .map(|s| StepVerdict {
            index: s.index,
            text: s.text.clone(),
            status: checker.statuses[&s.index].clone(),
            levels: s.claim.occurrences().iter().map(|&o| checker.levels[o].clone()).collect(),
        })
        .collect();
    let overall = steps
        .iter()
        .find(|s| !s.status.is_valid())
        .map_or(Overall::Sound, |s| Overall::ParadoxBlocked {
            step: s.index,
            explanation: s.status.explanation(),
        });
    Verdict { steps, overall, script: script.clone() }
}

impl Checker<'_> {
    fn judge(&self, step: &Step) -> Status {
        let assigned = |o: OccId| self.levels[o].level;
        let reason = match self.claim_at(step, &assigned) {
            Ok(()) => return Status::Valid,
            Err(reason) => reason,
        };
        // would the claim hold at the level its own wording asks for?
        for occ in step.claim.occurrences() {
            let a = &self.levels[occ];
            let Some(required) = a.required else { continue };
            if required == a.level {
                continue;
            }
            let at_required = |o: OccId| if o == occ { required } else { self.levels[o].level };
            if self.claim_at(step, &at_required).is_ok() {
                return Status::LevelConflict {
                    occurrence: self.script.occurrences[occ].id(),
                    expected: required,
                    found: a.level,
                    reason,
                };
            }
        }
        Status::Invalid { reason }
    }
}
