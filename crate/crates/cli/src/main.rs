//! `meadow`: parse, evaluate, check, flatten and translate terms and
//! sequential formulae over partial meadows, and run the checking suites.
//!
//! Exit status: 0 on success, 1 when a check is refuted or a suite entry
//! fails, 2 on usage, parse and evaluation errors.

use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value as Json};

use meadow::botworld::{
    check_fol_valid, eval_fol, psi, run_cm_suite, CmConfig, FolFormula, FolVerdict, PsiMode,
    PsiRules,
};
use meadow::flatten::flatten;
use meadow::semantics::{
    check_identity, check_valid, run_axiom_suite, run_invariance_suite, run_soundness_suite,
    satisfy, IdentityVerdict, Sampling, SoundnessConfig, SuiteName, SuiteReport, Verdict, Witness,
};
use meadow::structures::{EvalResult, MeadowStructure, Valuation};
use meadow::syntax::{
    parse_formula, parse_identity, parse_term, EqIdentity, Formula3, Signature, SyntaxError, Term,
};

#[derive(Parser)]
#[command(name = "meadow", version, about = "Fracterm calculus of partial meadows")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args)]
struct SamplingArgs {
    /// Valuations drawn when the carrier is infinite.
    #[arg(long, default_value_t = 10_000)]
    samples: usize,
    #[arg(long, env = "MEADOW_SEED", default_value_t = 0)]
    seed: u64,
}

impl SamplingArgs {
    fn sampling(&self) -> Sampling {
        Sampling { samples: self.samples, seed: self.seed }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Auto,
    Term,
    Formula,
    Identity,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    True,
    False,
}

#[derive(Subcommand)]
enum Cmd {
    /// Parse and print in canonical form (`bot` is accepted).
    Parse {
        input: String,
        #[arg(long, value_enum, default_value_t = Kind::Auto)]
        kind: Kind,
        #[arg(long)]
        json: bool,
    },
    /// Value of a term or status of a formula under one valuation.
    Eval {
        input: String,
        #[arg(long)]
        structure: String,
        /// `name=value`, repeatable.
        #[arg(long = "bind", value_name = "NAME=VALUE")]
        bind: Vec<String>,
        #[arg(long)]
        json: bool,
    },
    /// Validity of a formula: exhaustive on finite carriers, sampled on q.
    Check {
        input: String,
        #[arg(long)]
        structure: String,
        #[command(flatten)]
        sampling: SamplingArgs,
        #[arg(long)]
        json: bool,
    },
    /// Validity of an identity `(lhs) = (rhs)` between formulae, given as one
    /// argument or as two.
    Eq {
        #[arg(num_args = 1..=2, required = true)]
        inputs: Vec<String>,
        #[arg(long)]
        structure: String,
        #[command(flatten)]
        sampling: SamplingArgs,
        #[arg(long)]
        json: bool,
    },
    /// Guard and flat fracterm of a term.
    Flatten {
        input: String,
        /// Cancel unit factors and zero summands in the output.
        #[arg(long)]
        simplify: bool,
        /// Also print the guarded form (p*s)/(q*s).
        #[arg(long)]
        prop34: bool,
        #[arg(long)]
        json: bool,
    },
    /// Translation into classical logic over the signature with `bot`.
    Translate {
        input: String,
        #[arg(long, value_enum, default_value_t = Mode::True)]
        mode: Mode,
        /// Use the published atom and quantifier rules instead of the strict ones.
        #[arg(long)]
        published: bool,
        #[arg(long)]
        json: bool,
    },
    /// Run a checking suite.
    Axioms {
        /// eqcl, ftcpm, assertions, rationals, soundness, cm or invariance.
        #[arg(long)]
        suite: String,
        #[arg(long)]
        structure: Option<String>,
        #[command(flatten)]
        sampling: SamplingArgs,
        /// Random instances per schema (soundness) or random formulae (invariance).
        #[arg(long, default_value_t = 500)]
        count: usize,
        #[arg(long)]
        json: bool,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.cmd) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn structure(spec: &str) -> Result<MeadowStructure> {
    spec.parse::<MeadowStructure>().with_context(|| format!("structure `{spec}`"))
}

fn signature_of(s: &MeadowStructure) -> Signature {
    if s.is_enlarged() {
        Signature::Enlarged
    } else {
        Signature::Plain
    }
}

fn position(e: &SyntaxError) -> (usize, usize) {
    match e {
        SyntaxError::Parse(p) => (p.line, p.column),
        SyntaxError::Signature(s) => (s.line, s.column),
    }
}

enum Parsed {
    Term(Term),
    Formula(Formula3),
    Identity(EqIdentity),
}

/// Tries formula, term and identity in turn; on failure reports the error
/// that got furthest into the input.
fn parse_any(text: &str, sig: Signature, kinds: &[Kind]) -> Result<Parsed> {
    let mut best: Option<SyntaxError> = None;
    for k in kinds {
        let r = match k {
            Kind::Formula => parse_formula(text, sig).map(Parsed::Formula),
            Kind::Term => parse_term(text, sig).map(Parsed::Term),
            Kind::Identity => parse_identity(text, sig).map(Parsed::Identity),
            Kind::Auto => unreachable!("expanded by the caller"),
        };
        match r {
            Ok(p) => return Ok(p),
            Err(e) => {
                if best.as_ref().is_none_or(|b| position(&e) > position(b)) {
                    best = Some(e);
                }
            }
        }
    }
    Err(best.expect("at least one kind").into())
}

// Output goes through here so that a closed pipe ends the program quietly.
macro_rules! out {
    ($($arg:tt)*) => {{
        use std::io::Write;
        let _ = writeln!(std::io::stdout(), $($arg)*);
    }};
}

fn emit_json(v: &Json) {
    out!("{}", serde_json::to_string_pretty(v).expect("serialisable"));
}

fn run(cmd: Cmd) -> Result<bool> {
    match cmd {
        Cmd::Parse { input, kind, json } => {
            let kinds: &[Kind] = match kind {
                Kind::Auto => &[Kind::Formula, Kind::Term, Kind::Identity],
                Kind::Term => &[Kind::Term],
                Kind::Formula => &[Kind::Formula],
                Kind::Identity => &[Kind::Identity],
            };
            let (kind, printed, ast) = match parse_any(&input, Signature::Enlarged, kinds)? {
                Parsed::Term(t) => ("term", t.to_string(), serde_json::to_value(&t)?),
                Parsed::Formula(f) => ("formula", f.to_string(), serde_json::to_value(&f)?),
                Parsed::Identity(i) => ("identity", i.to_string(), serde_json::to_value(&i)?),
            };
            if json {
                emit_json(&json!({ "kind": kind, "printed": printed, "ast": ast }));
            } else {
                out!("{printed}");
            }
            Ok(true)
        }
        Cmd::Eval { input, structure: spec, bind, json } => {
            let s = structure(&spec)?;
            let mut sigma = Valuation::new();
            for b in &bind {
                let (name, value) =
                    b.split_once('=').ok_or_else(|| anyhow!("binding `{b}` is not of the form name=value"))?;
                sigma.set(name.trim(), s.parse_value(value)?);
            }
            let parsed = parse_any(&input, signature_of(&s), &[Kind::Formula, Kind::Term])?;
            let (kind, printed, result) = match parsed {
                Parsed::Term(t) => {
                    let r = match s.eval_term(&sigma, &t)? {
                        EvalResult::Defined(v) => v.to_string(),
                        EvalResult::Undefined => "undefined".to_string(),
                    };
                    ("term", t.to_string(), r)
                }
                Parsed::Formula(f) if s.is_enlarged() => {
                    let truth = eval_fol(&s, &sigma, &FolFormula::from_classical(&f))?;
                    ("formula", f.to_string(), truth.to_string())
                }
                Parsed::Formula(f) => {
                    let st = satisfy(&s, &sigma, &f)?;
                    ("formula", f.to_string(), st.to_string())
                }
                Parsed::Identity(_) => unreachable!("not requested"),
            };
            if json {
                let key = if kind == "term" { "value" } else { "status" };
                emit_json(&json!({
                    "kind": kind,
                    "input": printed,
                    "structure": s.to_string(),
                    "valuation": sigma,
                    key: result,
                }));
            } else {
                out!("{result}");
            }
            Ok(true)
        }
        Cmd::Check { input, structure: spec, sampling, json } => {
            let s = structure(&spec)?;
            let f = parse_formula(&input, signature_of(&s))?;
            let mut out = json!({ "formula": f.to_string(), "structure": s.to_string() });
            let (text, ok) = if s.is_enlarged() {
                match check_fol_valid(&s, &FolFormula::from_classical(&f), false)? {
                    FolVerdict::Valid => {
                        out["verdict"] = json!("valid");
                        ("valid".to_string(), true)
                    }
                    FolVerdict::Refuted { witness } => {
                        out["verdict"] = json!("refuted");
                        out["witness"] = serde_json::to_value(Witness::from(&witness))?;
                        (format!("refuted at {witness}"), false)
                    }
                }
            } else {
                let v = check_valid(&s, &f, Some(sampling.sampling()))?;
                match &v {
                    Verdict::Valid => out["verdict"] = json!("valid"),
                    Verdict::Refuted { witness, status } => {
                        out["verdict"] = json!("refuted");
                        out["witness"] = serde_json::to_value(Witness::from(witness))?;
                        out["status"] = json!(status.name());
                    }
                    Verdict::SampledClean { samples, seed } => {
                        out["verdict"] = json!("sampled-clean");
                        out["samples"] = json!(samples);
                        out["seed"] = json!(seed);
                    }
                }
                (v.to_string(), !v.is_refuted())
            };
            if json {
                emit_json(&out);
            } else {
                out!("{text}");
            }
            Ok(ok)
        }
        Cmd::Eq { inputs, structure: spec, sampling, json } => {
            let s = structure(&spec)?;
            let sig = signature_of(&s);
            let id = match inputs.as_slice() {
                [one] => parse_identity(one, sig)?,
                [l, r] => EqIdentity::new(parse_formula(l, sig)?, parse_formula(r, sig)?),
                _ => bail!("expected an identity or two formulae"),
            };
            let v = check_identity(&s, &id, Some(sampling.sampling()))?;
            let mut out = json!({ "identity": id.to_string(), "structure": s.to_string() });
            match &v {
                IdentityVerdict::Valid => out["verdict"] = json!("valid"),
                IdentityVerdict::Refuted { witness, lhs, rhs } => {
                    out["verdict"] = json!("refuted");
                    out["witness"] = serde_json::to_value(Witness::from(witness))?;
                    out["lhs"] = json!(lhs.name());
                    out["rhs"] = json!(rhs.name());
                }
                IdentityVerdict::SampledClean { samples, seed } => {
                    out["verdict"] = json!("sampled-clean");
                    out["samples"] = json!(samples);
                    out["seed"] = json!(seed);
                }
            }
            if json {
                emit_json(&out);
            } else {
                out!("{v}");
            }
            Ok(!v.is_refuted())
        }
        Cmd::Flatten { input, simplify, prop34, json } => {
            let t = parse_term(&input, Signature::Plain)?;
            let mut r = flatten(&t)?;
            if simplify {
                r = r.simplified();
            }
            if json {
                let mut out = json!({
                    "guard": r.guard.to_string(),
                    "numerator": r.numerator.to_string(),
                    "denominator": r.denominator.to_string(),
                });
                if prop34 {
                    out["prop34"] = json!(r.guarded_fracterm().to_string());
                }
                emit_json(&out);
            } else {
                out!("{r}");
                if prop34 {
                    out!("prop34: {}", r.guarded_fracterm());
                }
            }
            Ok(true)
        }
        Cmd::Translate { input, mode, published, json } => {
            let f = parse_formula(&input, Signature::Plain)?;
            let mode = match mode {
                Mode::True => PsiMode::True,
                Mode::False => PsiMode::False,
            };
            let rules = if published { PsiRules::Published } else { PsiRules::Strict };
            let g = psi(mode, &f, rules)?;
            if json {
                emit_json(&serde_json::to_value(&g)?);
            } else {
                out!("{g}");
            }
            Ok(true)
        }
        Cmd::Axioms { suite, structure: spec, sampling, count, json } => {
            let needs = || -> Result<MeadowStructure> {
                match &spec {
                    Some(spec) => structure(spec),
                    None => bail!("suite `{suite}` needs --structure"),
                }
            };
            let report: SuiteReport = match suite.as_str() {
                "cm" => {
                    let cfg = CmConfig { seed: sampling.seed, ..CmConfig::default() };
                    run_cm_suite(&needs()?, &cfg)?
                }
                "invariance" => run_invariance_suite(&needs()?, count, sampling.sampling())?,
                "soundness" => {
                    let cfg = SoundnessConfig { seed: sampling.seed, instances: count, ..SoundnessConfig::default() };
                    run_soundness_suite(&needs()?, &cfg)?
                }
                name => {
                    let name: SuiteName = name.parse()?;
                    let s = match (name, &spec) {
                        (SuiteName::Eqcl, None) => MeadowStructure::gf(2)?,
                        _ => needs()?,
                    };
                    run_axiom_suite(name, &s, sampling.sampling())?
                }
            };
            if json {
                emit_json(&serde_json::to_value(&report)?);
            } else {
                out!("{report}");
            }
            Ok(report.passed())
        }
    }
}
