//! `fracterm`: command-line front end for the fracterm calculus.

use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use num_bigint::BigInt;
use serde_json::{json, Value};

use fracterm_core::fractalk::{self, corpus, CheckConfig, Overall};
use fracterm_core::ratio::{self, AddRule, RnExpr};
use fracterm_core::rewrite::{self, AddStrategy};
use fracterm_core::semantics::{self, EvalConfig, Policy};
use fracterm_core::shapes::{self, Instance, ShapeId};
use fracterm_core::term::{self, Format, Term};

#[derive(Parser)]
#[command(name = "fracterm", version, about = "Fracterms, fracvalues and fractalk from the command line")]
struct Cli {
    /// Print JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct TermInput {
    /// The term, e.g. "2/(4/5)".
        term: String,
    /// Surface syntax of the input.
    #[arg(long, default_value = "inline")]
    format: Format,
}

#[derive(Args)]
struct ShapeArg {
    #[arg(long, env = "FRACTERM_DEFAULT_SHAPE", default_value = "rat.pcs")]
    shape: ShapeId,
}

#[derive(Subcommand)]
enum Command {
    /// Parse a term and print it in every format.
    Parse(TermInput),
    /// Report the taxonomy flags of a term.
    Classify(TermInput),
    /// Evaluate a closed term to a fracvalue.
    Eval {
        #[command(flatten)]
        input: TermInput,
        #[arg(long, default_value = "common-meadow")]
        policy: Policy,
        #[command(flatten)]
        shape: ShapeArg,
        /// Use the printed ratio-number addition rule (rat.rns only).
        #[arg(long)]
        verbatim_add: bool,
    },
    /// Flatten a closed term into a single flat fracterm.
    Flatten {
        #[command(flatten)]
        input: TermInput,
        /// Also evaluate the components to numerals.
        #[arg(long)]
        fold: bool,
    },
    /// Reduce a simple fracterm to its simplified form.
    Simplify {
        #[command(flatten)]
        input: TermInput,
        /// Print n/1 as the numeral n.
        #[arg(long)]
        demote: bool,
    },
    /// Add two terms with one strategy, or with every applicable one.
    Add {
                left: String,
                right: String,
        #[arg(long, default_value = "inline")]
        format: Format,
        #[arg(long)]
        strategy: Option<AddStrategy>,
    },
    /// Work with number shapes.
    #[command(subcommand)]
    Shape(ShapeCommand),
    /// Ratio-number evaluation, with Num and Denom.
    #[command(subcommand)]
    Rns(RnsCommand),
    /// Check fractalk scripts.
    #[command(subcommand)]
    Fractalk(FractalkCommand),
    /// Check every bundled assertion sequence.
    Demo,
}

#[derive(Subcommand)]
enum ShapeCommand {
    /// Encode an integer.
    Encode {
        #[arg(value_parser = integer)]
        value: BigInt,
        #[command(flatten)]
        shape: ShapeArg,
    },
    /// Move an instance to another shape of the same label.
    Convert {
                instance: String,
        to: ShapeId,
        #[command(flatten)]
        shape: ShapeArg,
    },
    /// Compare two instances by instance and label equality.
    Compare {
                left: String,
                right: String,
        #[command(flatten)]
        shape: ShapeArg,
    },
    /// Bounded check that instance and label equality coincide.
    Normality {
        #[command(flatten)]
        shape: ShapeArg,
        #[arg(long, default_value_t = 10)]
        bound: u32,
    },
}

#[derive(Args)]
struct RnsInput {
    #[command(flatten)]
    input: TermInput,
    #[arg(long)]
    verbatim_add: bool,
}

#[derive(Subcommand)]
enum RnsCommand {
    /// Evaluate; the term may be wrapped in num(..) or denom(..).
    Eval(RnsInput),
    /// Num of the value.
    Num(RnsInput),
    /// Denom of the value.
    Denom(RnsInput),
}

#[derive(Subcommand)]
enum FractalkCommand {
    /// Check a script file.
    Check {
        file: PathBuf,
        /// Overrides the script's shape pragma.
        #[arg(long)]
        shape: Option<ShapeId>,
        /// Overrides whether fracterms and fracvalues are disjoint.
        #[arg(long)]
        disjoint: Option<bool>,
    },
}

fn integer(s: &str) -> Result<BigInt, String> {
    s.trim().parse().map_err(|e| format!("{e}"))
}

struct Failure {
    kind: &'static str,
    message: String,
}

impl Failure {
    fn new(kind: &'static str, e: impl std::fmt::Display) -> Failure {
        Failure { kind, message: e.to_string() }
    }
}

/// What a command prints: JSON, and the text rendering of the same result.
struct Output {
    json: Value,
    text: String,
}

fn parse_term(input: &TermInput) -> Result<Term, Failure> {
    term::parse(&input.term, input.format).map_err(|e| Failure::new("syntax", e))
}

fn instance(text: &str, shape: ShapeId) -> Result<Instance, Failure> {
    let text = text.trim();
    let value = serde_json::from_str(text).unwrap_or_else(|_| Value::String(text.to_owned()));
    Instance::from_json(shape, &value).map_err(|e| Failure::new("shape", e))
}

fn flags_text(flags: &term::TaxonomyFlags) -> String {
    let proper = flags.proper.map_or("n/a".to_owned(), |p| p.to_string());
    format!(
        "fracterm: {}\nclosed: {}\nflat: {}\nsimple: {}\nsafe: {}\nsimplified: {}\nproper: {proper}",
        flags.is_fracterm, flags.closed, flags.flat, flags.simple, flags.safe, flags.simplified
    )
}

fn rns(which: &str, args: &RnsInput) -> Result<Output, Failure> {
    let expr = RnExpr::parse(&args.input.term, args.input.format).map_err(|e| Failure::new("syntax", e))?;
    let expr = match which {
        "num" => RnExpr::Num(Box::new(expr)),
        "denom" => RnExpr::Denom(Box::new(expr)),
        _ => expr,
    };
    let rule = if args.verbatim_add { AddRule::Verbatim } else { AddRule::CrossMultiply };
    let r = ratio::rn_eval(&expr, rule).map_err(|e| Failure::new("open-term", e))?;
    Ok(Output { json: json!({ "shape": "rat.rns", "value": r.to_json() }), text: r.to_string() })
}

fn run(command: Command) -> Result<Output, Failure> {
    Ok(match command {
        Command::Parse(input) => {
            let t = parse_term(&input)?;
            let forms: Vec<(Format, String)> =
                Format::ALL.iter().map(|&f| (f, term::format(&t, f))).collect();
            let mut map = serde_json::Map::new();
            for (f, s) in &forms {
                map.insert(f.as_str().to_owned(), json!(s));
            }
            Output {
                json: json!({ "term": t.to_inline(), "formats": map, "depth": t.depth() }),
                text: forms.iter().map(|(f, s)| format!("{}: {s}", f.as_str())).collect::<Vec<_>>().join("\n"),
            }
        }
        Command::Classify(input) => {
            let flags = term::classify(&parse_term(&input)?);
            Output { json: serde_json::to_value(flags).expect("flags serialize"), text: flags_text(&flags) }
        }
        Command::Eval { input, policy, shape, verbatim_add } => {
            let t = parse_term(&input)?;
            let mut cfg = EvalConfig::new(policy, shape.shape).map_err(|e| Failure::new("shape", e))?;
            if verbatim_add {
                cfg.add_rule = AddRule::Verbatim;
            }
            let v = semantics::eval(&t, &cfg).map_err(|e| {
                let kind = match e {
                    semantics::EvalError::DivisionByZero => "division-by-zero",
                    semantics::EvalError::OpenTerm(_) => "open-term",
                    _ => "eval",
                };
                Failure::new(kind, e)
            })?;
            Output { json: v.to_json(), text: v.to_string() }
        }
        Command::Flatten { input, fold } => {
            let t = parse_term(&input)?;
            let (mut flat, mut trace) = rewrite::flatten(&t).map_err(|e| Failure::new("rewrite", e))?;
            if fold {
                let folded = rewrite::fold_numerals(&flat).map_err(|e| Failure::new("rewrite", e))?;
                if folded != flat {
                    trace.steps.push(rewrite::RewriteStep {
                        rule: "numeral-fold",
                        before: flat.clone(),
                        after: folded.clone(),
                    });
                    flat = folded;
                }
            }
            let text = trace
                .steps
                .iter()
                .map(|s| format!("{}: {} => {}", s.rule, s.before, s.after))
                .chain(std::iter::once(flat.to_inline()))
                .collect::<Vec<_>>()
                .join("\n");
            Output {
                json: json!({
                    "result": flat.to_inline(),
                    "flat": term::classify(&flat).flat,
                    "trace": trace.to_json(),
                }),
                text,
            }
        }
        Command::Simplify { input, demote } => {
            let t = parse_term(&input)?;
            let mut s = rewrite::simplify(&t).map_err(|e| Failure::new("rewrite", e))?;
            if demote {
                s = rewrite::demote(&s);
            }
            Output { json: json!({ "result": s.to_inline() }), text: s.to_inline() }
        }
        Command::Add { left, right, format, strategy } => {
            let parse = |s: &str| term::parse(s, format).map_err(|e| Failure::new("syntax", e));
            let (a, b) = (parse(&left)?, parse(&right)?);
            match strategy {
                Some(strategy) => {
                    let r = rewrite::add_family(&a, &b, strategy).map_err(|e| Failure::new("strategy", e))?;
                    Output {
                        json: json!({ "strategy": strategy.as_str(), "result": r.to_inline() }),
                        text: r.to_inline(),
                    }
                }
                None => {
                    let all = rewrite::add_all(&a, &b);
                    Output {
                        json: rewrite::add_all_json(&a, &b),
                        text: all.iter().map(|(s, t)| format!("{s}: {t}")).collect::<Vec<_>>().join("\n"),
                    }
                }
            }
        }
        Command::Shape(cmd) => match cmd {
            ShapeCommand::Encode { value, shape } => {
                let i = shapes::encode(&value, shape.shape).map_err(|e| Failure::new("shape", e))?;
                Output {
                    json: json!({ "shape": shape.shape.as_str(), "value": i.to_json() }),
                    text: i.to_string(),
                }
            }
            ShapeCommand::Convert { instance: text, to, shape } => {
                let i = instance(&text, shape.shape)?;
                let j = shapes::convert(&i, to).map_err(|e| Failure::new("shape", e))?;
                Output { json: json!({ "shape": to.as_str(), "value": j.to_json() }), text: j.to_string() }
            }
            ShapeCommand::Compare { left, right, shape } => {
                let (i, j) = (instance(&left, shape.shape)?, instance(&right, shape.shape)?);
                let ie = shapes::instance_eq(&i, &j).map_err(|e| Failure::new("shape", e))?;
                let le = shapes::label_eq(&i, &j).map_err(|e| Failure::new("shape", e))?;
                Output {
                    json: json!({ "shape": shape.shape.as_str(), "instance_eq": ie, "label_eq": le }),
                    text: format!("instance_eq: {ie}\nlabel_eq: {le}"),
                }
            }
            ShapeCommand::Normality { shape, bound } => {
                let n = shapes::is_normal(shape.shape, bound).map_err(|e| Failure::new("shape", e))?;
                let witness = n.witness.as_ref().map(|(a, b)| json!([a.to_json(), b.to_json()]));
                let text = match &n.witness {
                    None => format!("{}: normal up to {bound}", shape.shape),
                    Some((a, b)) => format!("{}: subnormal, witness {a} and {b}", shape.shape),
                };
                Output {
                    json: json!({
                        "shape": shape.shape.as_str(),
                        "label": shape.shape.label().as_str(),
                        "bound": bound,
                        "normal": n.normal,
                        "witness": witness,
                        "instances_checked": n.instances_checked,
                    }),
                    text,
                }
            }
        },
        Command::Rns(cmd) => match cmd {
            RnsCommand::Eval(args) => rns("eval", &args)?,
            RnsCommand::Num(args) => rns("num", &args)?,
            RnsCommand::Denom(args) => rns("denom", &args)?,
        },
        Command::Fractalk(FractalkCommand::Check { file, shape, disjoint }) => {
            let text = fs::read_to_string(&file)
                .map_err(|e| Failure::new("io", format!("{}: {e}", file.display())))?;
            let mut script = fractalk::parse_script(&text).map_err(|e| Failure::new("script", e))?;
            if let Some(shape) = shape {
                if shape.label() != shapes::Label::Rat {
                    return Err(Failure::new("shape", format!("{shape} is not a rational shape")));
                }
                script.config = CheckConfig::for_shape(shape);
            }
            if let Some(disjoint) = disjoint {
                script.config.disjoint = disjoint;
            }
            let verdict = fractalk::check(&script);
            Output { json: verdict.to_json(), text: verdict.to_string().trim_end().to_owned() }
        }
        Command::Demo => {
            let mut results = Vec::new();
            let mut text = String::new();
            for (name, source) in corpus::ALL {
                let script = fractalk::parse_script(source).expect("bundled scripts parse");
                let verdict = fractalk::check(&script);
                let summary = match &verdict.overall {
                    Overall::Sound => "sound".to_owned(),
                    Overall::ParadoxBlocked { step, .. } => format!("paradox-blocked at step {step}"),
                };
                text.push_str(&format!("== {name}: {summary}\n{verdict}\n"));
                results.push(json!({ "file": name, "verdict": verdict.to_json() }));
            }
            Output { json: Value::Array(results), text: text.trim_end().to_owned() }
        }
    })
}

fn main() -> ExitCode {
    // Clap reads `-3/-9` as a short flag. A leading space keeps it a
    // positional, and the term and instance parsers ignore it.
    let args = std::env::args_os().map(|a| match a.to_str() {
        Some(s) if s.starts_with('-') && s[1..].starts_with(|c: char| c.is_ascii_digit() || c == '(') => {
            format!(" {s}").into()
        }
        _ => a,
    });
    let cli = Cli::parse_from(args);
    match run(cli.command) {
        Ok(out) => {
            let printed = if cli.json { out.json.to_string() } else { out.text };
            // A closed pipe (e.g. `| head`) is not an error worth a panic.
            let _ = writeln!(std::io::stdout(), "{printed}");
            ExitCode::SUCCESS
        }
        Err(f) => {
            if cli.json {
                eprintln!("{}", json!({ "error": f.kind, "message": f.message }));
            } else {
                eprintln!("error: {}", f.message);
            }
            ExitCode::from(1)
        }
    }
}
