use std::cmp::Ordering;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use sigcalc::normalizer::{ea_class, ea_to_xi, is_reduced, leq, normalize, rho, RhoMode};
use sigcalc::ordinal::Ordinal;
use sigcalc::realization::words::predicates;
use sigcalc::realization::{diagram, pl_eval, realize, GroupWord, RealizationError};
use sigcalc::signature::{SigTerm, SignatureError};
use sigcalc::{QGenSet, Rat, Signature};

#[derive(Parser)]
#[command(name = "sigcalc", version, about = "Signatures, ordinal ranks and PL realizations")]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Ordered,
    Sorted,
}

#[derive(Clone, Copy, ValueEnum)]
enum OrdOp {
    Cmp,
    Add,
    Nadd,
    Mul,
}

#[derive(Subcommand)]
enum Cmd {
    /// Parse an ordinal, optionally combining it with a second one.
    Ord {
        expr: String,
        op: Option<OrdOp>,
        rhs: Option<String>,
    },
    /// Rank of a signature.
    Rho {
        sig: String,
        #[arg(long, value_enum, default_value_t = Mode::Sorted)]
        mode: Mode,
    },
    /// Reduced representative of a signature.
    Normalize { sig: String },
    /// Whether the first signature embeds in the second.
    Leq { a: String, b: String },
    /// EA-class of the group of rank `xi`, or with `--target`, the rank
    /// whose group has class `alpha + 2`.
    Ea {
        #[arg(required_unless_present = "target")]
        xi: Option<String>,
        #[arg(long, conflicts_with = "xi")]
        target: Option<String>,
    },
    /// Build a generating set with the given signature.
    Realize {
        sig: String,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Signature of a generating set.
    Signature { genset: String },
    /// Dynamical diagram of a generating set as DOT.
    Diagram {
        genset: String,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Inflation of a signature or generating set at base element `m`.
    Inflate {
        input: String,
        #[arg(long)]
        at: usize,
    },
    /// Rotation of a signature or generating set.
    Rotate { input: String },
    /// Fastness, standardness and signature of a generating set.
    Verify { genset: String },
    /// All signatures on `n` elements with values at most `vmax`.
    Enumerate {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        vmax: u32,
    },
    /// C, D and T on words over a generating set.
    Predicates {
        genset: String,
        #[arg(long)]
        x: String,
        #[arg(long)]
        y: String,
        #[arg(long)]
        z: Option<String>,
    },
}

enum CliError {
    Parse(String),
    Domain(String),
}

type Res<T> = Result<T, CliError>;

impl From<SignatureError> for CliError {
    fn from(e: SignatureError) -> Self {
        match e {
            SignatureError::Json(_) => CliError::Parse(e.to_string()),
            _ => CliError::Domain(e.to_string()),
        }
    }
}

impl From<RealizationError> for CliError {
    fn from(e: RealizationError) -> Self {
        match e {
            RealizationError::Json(_) => CliError::Parse(e.to_string()),
            _ => CliError::Domain(e.to_string()),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(CliError::Domain(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
        Err(CliError::Parse(m)) => {
            eprintln!("parse error: {m}");
            ExitCode::from(2)
        }
    }
}

/// The argument itself, or the contents of the file it names.
fn load(arg: &str) -> Res<String> {
    let p = Path::new(arg);
    if p.is_file() {
        fs::read_to_string(p).map_err(|e| CliError::Parse(format!("{arg}: {e}")))
    } else {
        Ok(arg.to_string())
    }
}

fn parse_ordinal(s: &str) -> Res<Ordinal> {
    s.parse().map_err(|e| CliError::Parse(format!("{e} in {s:?}")))
}

fn parse_signature(arg: &str) -> Res<Signature> {
    let text = load(arg)?;
    let t = text.trim();
    if t.starts_with('{') {
        return Ok(Signature::from_json(t)?);
    }
    let term: SigTerm = t.parse().map_err(|e| CliError::Parse(format!("{e} in {t:?}")))?;
    Ok(term.eval()?)
}

fn parse_genset(arg: &str) -> Res<QGenSet> {
    Ok(QGenSet::from_json(&load(arg)?)?)
}

/// Whether the input is a generating set rather than a signature.
fn is_genset(text: &str) -> bool {
    match serde_json::from_str::<Value>(text.trim()) {
        Ok(Value::Array(_)) => true,
        Ok(Value::Object(o)) => o.contains_key("functions"),
        _ => false,
    }
}

/// Words may name generators by their set names as well as by letter.
fn parse_word(s: &QGenSet, w: &str) -> Res<GroupWord> {
    let mut out = Vec::new();
    for tok in w
        .split(|c: char| c.is_whitespace() || c == '*')
        .filter(|t| !t.is_empty())
    {
        let (base, exp) = match tok.rsplit_once('^') {
            Some((b, e)) if e.parse::<i64>().is_ok() => (b, e.parse::<i64>().unwrap()),
            _ => (tok, 1),
        };
        let base = base.strip_prefix('(').and_then(|b| b.strip_suffix(')')).unwrap_or(base);
        if let Some(i) = s.names().iter().position(|n| n == base) {
            if exp != 0 {
                out.push((i, exp));
            }
        } else {
            let g: GroupWord = tok.parse().map_err(CliError::Parse)?;
            out.extend(g.0);
        }
    }
    let word = GroupWord(out);
    if let Some(&(i, _)) = word.0.iter().find(|(i, _)| *i >= s.len()) {
        return Err(CliError::Domain(format!(
            "generator {i} is not in a set of {}",
            s.len()
        )));
    }
    Ok(word)
}

fn emit(format: Format, text: String, value: Value) -> String {
    match format {
        Format::Text => format!("{text}\n"),
        Format::Json => format!("{value}\n"),
    }
}

fn emit_signature(format: Format, a: &Signature) -> String {
    match format {
        Format::Text => format!("{}\n", a.to_json()),
        Format::Json => format!("{}\n", a.to_json_value()),
    }
}

fn write_or_return(output: &Option<PathBuf>, body: String) -> Res<String> {
    match output {
        Some(p) => {
            fs::write(p, body).map_err(|e| CliError::Domain(format!("{}: {e}", p.display())))?;
            Ok(String::new())
        }
        None => Ok(body),
    }
}

fn run(cli: &Cli) -> Res<String> {
    let f = cli.format;
    match &cli.cmd {
        Cmd::Ord { expr, op, rhs } => {
            let a = parse_ordinal(expr)?;
            let Some(op) = op else {
                return Ok(emit(f, a.to_string(), json!({ "ordinal": a.to_string() })));
            };
            let rhs = rhs
                .as_deref()
                .ok_or_else(|| CliError::Parse("missing second operand".into()))?;
            let b = parse_ordinal(rhs)?;
            let out = match op {
                OrdOp::Cmp => match a.cmp(&b) {
                    Ordering::Less => "<".to_string(),
                    Ordering::Equal => "=".to_string(),
                    Ordering::Greater => ">".to_string(),
                },
                OrdOp::Add => a.add(&b).to_string(),
                OrdOp::Nadd => a.natural_add(&b).to_string(),
                OrdOp::Mul => a.mul(&b).to_string(),
            };
            Ok(emit(f, out.clone(), json!({ "result": out })))
        }
        Cmd::Rho { sig, mode } => {
            let a = parse_signature(sig)?;
            let mode = match mode {
                Mode::Ordered => RhoMode::Ordered,
                Mode::Sorted => RhoMode::Sorted,
            };
            let r = rho(&a, mode).to_string();
            Ok(emit(f, r.clone(), json!({ "rho": r })))
        }
        Cmd::Normalize { sig } => Ok(emit_signature(f, &normalize(&parse_signature(sig)?))),
        Cmd::Leq { a, b } => {
            let r = leq(&parse_signature(a)?, &parse_signature(b)?);
            Ok(emit(f, r.to_string(), json!({ "leq": r })))
        }
        Cmd::Ea { xi, target } => {
            let (key, r) = match (xi, target) {
                (_, Some(t)) => ("xi", ea_to_xi(&parse_ordinal(t)?)),
                (Some(x), None) => ("ea_class", ea_class(&parse_ordinal(x)?)),
                (None, None) => return Err(CliError::Parse("an ordinal is required".into())),
            };
            let r = r.map_err(|e| CliError::Domain(e.to_string()))?.to_string();
            Ok(emit(f, r.clone(), json!({ key: r })))
        }
        Cmd::Realize { sig, output } => {
            let s = realize::<Rat>(&parse_signature(sig)?)?;
            let body = match f {
                Format::Text => format!("{}\n", s.to_json()),
                Format::Json => format!("{}\n", s.to_json_value()),
            };
            write_or_return(output, body)
        }
        Cmd::Signature { genset } => Ok(emit_signature(f, &parse_genset(genset)?.signature_of()?)),
        Cmd::Diagram { genset, output } => {
            let d = diagram(&parse_genset(genset)?)?;
            let body = match f {
                Format::Text => d.to_dot(),
                Format::Json => {
                    let vertices: Vec<Value> = d
                        .vertices
                        .iter()
                        .map(|v| json!({"function": d.names[v.func], "bump": v.bump, "left": v.left}))
                        .collect();
                    let edges: Vec<Value> = d
                        .edges
                        .iter()
                        .map(|e| json!({"from": e.from, "to": e.to, "positive": e.positive, "label": d.names[e.func]}))
                        .collect();
                    format!("{}\n", json!({"vertices": vertices, "edges": edges}))
                }
            };
            write_or_return(output, body)
        }
        Cmd::Inflate { input, at } => {
            let text = load(input)?;
            if is_genset(&text) {
                let s = QGenSet::from_json(&text)?.set_inflate(*at)?;
                Ok(emit(f, s.to_json(), s.to_json_value()))
            } else {
                Ok(emit_signature(f, &parse_signature(&text)?.inflate(*at)?))
            }
        }
        Cmd::Rotate { input } => {
            let text = load(input)?;
            if is_genset(&text) {
                let s = QGenSet::from_json(&text)?.set_rotate()?;
                Ok(emit(f, s.to_json(), s.to_json_value()))
            } else {
                Ok(emit_signature(f, &parse_signature(&text)?.rotate()))
            }
        }
        Cmd::Verify { genset } => {
            let s = parse_genset(genset)?;
            let fast = s.is_fast();
            let sgen = fast && s.is_sgen();
            let sig = if sgen { s.signature_of().ok() } else { None };
            let round_trip = sig
                .as_ref()
                .map(|a| realize::<Rat>(a).and_then(|r| r.signature_of()).as_ref() == Ok(a))
                .unwrap_or(false);
            let reduced = sig.as_ref().map(is_reduced);
            let out = emit(
                f,
                format!(
                    "fast: {fast}\nsgen: {sgen}\nsignature: {}\nround trip: {round_trip}",
                    sig.as_ref().map(|a| a.to_json()).unwrap_or_else(|| "none".into())
                ),
                json!({
                    "fast": fast,
                    "sgen": sgen,
                    "signature": sig.as_ref().map(|a| a.to_json_value()),
                    "round_trip": round_trip,
                    "reduced": reduced,
                }),
            );
            if sgen && round_trip {
                Ok(out)
            } else {
                print!("{out}");
                Err(CliError::Domain("generating set failed verification".into()))
            }
        }
        Cmd::Enumerate { n, vmax } => {
            let all = Signature::enumerate(*n, *vmax)?;
            Ok(match f {
                Format::Text => all.iter().map(|a| format!("{}\n", a.to_json())).collect(),
                Format::Json => {
                    let v: Vec<Value> = all.iter().map(Signature::to_json_value).collect();
                    format!("{}\n", Value::Array(v))
                }
            })
        }
        Cmd::Predicates { genset, x, y, z } => {
            let s = parse_genset(genset)?;
            let eval = |w: &str| -> Res<_> { Ok(pl_eval(&s, &parse_word(&s, w)?)?) };
            let (xm, ym) = (eval(x)?, eval(y)?);
            let zm = z.as_deref().map(eval).transpose()?;
            let p = predicates(&xm, &ym, zm.as_ref());
            let mut text = format!("C: {}\nD: {}", p.c, p.d);
            if let Some(t) = p.t {
                text.push_str(&format!("\nT: {t}"));
            }
            Ok(emit(f, text, json!({"C": p.c, "D": p.d, "T": p.t})))
        }
    }
}
