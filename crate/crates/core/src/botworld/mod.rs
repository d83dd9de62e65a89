//! Classical two-valued first-order logic over the signature with ⊥: the
//! ψ translation of sequential formulae, a Tarski evaluator over enlarged
//! (or zero-totalised) structures, and the common-meadow checking suite.

mod psi;
mod suite;

use std::fmt;

use serde::ser::{Serialize, SerializeStruct, Serializer};
use thiserror::Error;

use crate::semantics::SemanticsError;
use crate::structures::{EvalError, MeadowStructure, StructureError, Valuation, Value};
use crate::syntax::{Formula3, Term};

pub use psi::{check_correspondence, correspondence, psi, psi_false, psi_true, Correspondence, PsiMode, PsiRules};
pub use suite::{run_cm_suite, CmConfig};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BotworldError {
    #[error("`bot` is not allowed in a formula of the plain signature")]
    SignatureMismatch,
    #[error("cannot quantify over the infinite carrier of {0}")]
    InfiniteCarrier(String),
    #[error("{0} is partial; classical evaluation needs an enlarged or zero-totalised structure")]
    NotTotalStructure(String),
    #[error("{0} is not an enlarged structure")]
    NotEnlarged(String),
    #[error(transparent)]
    Eval(#[from] EvalError),
    #[error(transparent)]
    Structure(#[from] StructureError),
    #[error(transparent)]
    Semantics(#[from] SemanticsError),
}

/// A classical first-order formula over the signature with ⊥.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum FolFormula {
    TrueC,
    FalseC,
    Eq(Term, Term),
    Neq(Term, Term),
    Not(Box<FolFormula>),
    And(Box<FolFormula>, Box<FolFormula>),
    Or(Box<FolFormula>, Box<FolFormula>),
    Impl(Box<FolFormula>, Box<FolFormula>),
    Forall(String, Box<FolFormula>),
    Exists(String, Box<FolFormula>),
}

impl FolFormula {
    pub fn eq(l: Term, r: Term) -> Self {
        FolFormula::Eq(l, r)
    }

    pub fn neq(l: Term, r: Term) -> Self {
        FolFormula::Neq(l, r)
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(f: FolFormula) -> Self {
        FolFormula::Not(Box::new(f))
    }

    pub fn and(l: FolFormula, r: FolFormula) -> Self {
        FolFormula::And(Box::new(l), Box::new(r))
    }

    pub fn or(l: FolFormula, r: FolFormula) -> Self {
        FolFormula::Or(Box::new(l), Box::new(r))
    }

    pub fn imp(l: FolFormula, r: FolFormula) -> Self {
        FolFormula::Impl(Box::new(l), Box::new(r))
    }

    pub fn forall(x: impl Into<String>, body: FolFormula) -> Self {
        FolFormula::Forall(x.into(), Box::new(body))
    }

    pub fn exists(x: impl Into<String>, body: FolFormula) -> Self {
        FolFormula::Exists(x.into(), Box::new(body))
    }

    /// Reads a sequential formula classically: `!(t == r)` becomes `t ≠ r`,
    /// the sequential connectives become the classical ones.
    pub fn from_classical(f: &Formula3) -> FolFormula {
        let c = FolFormula::from_classical;
        match f {
            Formula3::TrueC => FolFormula::TrueC,
            Formula3::FalseC => FolFormula::FalseC,
            Formula3::Eq(l, r) => FolFormula::eq(l.clone(), r.clone()),
            Formula3::Not(g) => match g.as_ref() {
                Formula3::Eq(l, r) => FolFormula::neq(l.clone(), r.clone()),
                g => FolFormula::not(c(g)),
            },
            Formula3::SAnd(l, r) => FolFormula::and(c(l), c(r)),
            Formula3::SOr(l, r) => FolFormula::or(c(l), c(r)),
            Formula3::SImp(l, r) => FolFormula::imp(c(l), c(r)),
            Formula3::ForallP(x, g) => FolFormula::forall(x.clone(), c(g)),
            Formula3::ExistsP(x, g) => FolFormula::exists(x.clone(), c(g)),
        }
    }

    pub fn free_vars(&self) -> Vec<String> {
        let mut out = Vec::new();
        self.collect_free(&mut Vec::new(), &mut out);
        out
    }

    fn collect_free(&self, bound: &mut Vec<String>, out: &mut Vec<String>) {
        match self {
            FolFormula::TrueC | FolFormula::FalseC => {}
            FolFormula::Eq(l, r) | FolFormula::Neq(l, r) => {
                for v in l.vars().into_iter().chain(r.vars()) {
                    if !bound.contains(&v) && !out.contains(&v) {
                        out.push(v);
                    }
                }
            }
            FolFormula::Not(g) => g.collect_free(bound, out),
            FolFormula::And(l, r) | FolFormula::Or(l, r) | FolFormula::Impl(l, r) => {
                l.collect_free(bound, out);
                r.collect_free(bound, out);
            }
            FolFormula::Forall(x, g) | FolFormula::Exists(x, g) => {
                bound.push(x.clone());
                g.collect_free(bound, out);
                bound.pop();
            }
        }
    }

    pub fn size(&self) -> usize {
        match self {
            FolFormula::TrueC | FolFormula::FalseC | FolFormula::Eq(..) | FolFormula::Neq(..) => 1,
            FolFormula::Not(g) | FolFormula::Forall(_, g) | FolFormula::Exists(_, g) => 1 + g.size(),
            FolFormula::And(l, r) | FolFormula::Or(l, r) | FolFormula::Impl(l, r) => {
                1 + l.size() + r.size()
            }
        }
    }

    /// Terms of the atoms, left to right.
    pub fn terms(&self) -> Vec<&Term> {
        let mut out = Vec::new();
        self.collect_terms(&mut out);
        out
    }

    fn collect_terms<'a>(&'a self, out: &mut Vec<&'a Term>) {
        match self {
            FolFormula::TrueC | FolFormula::FalseC => {}
            FolFormula::Eq(l, r) | FolFormula::Neq(l, r) => {
                out.push(l);
                out.push(r);
            }
            FolFormula::Not(g) | FolFormula::Forall(_, g) | FolFormula::Exists(_, g) => {
                g.collect_terms(out)
            }
            FolFormula::And(l, r) | FolFormula::Or(l, r) | FolFormula::Impl(l, r) => {
                l.collect_terms(out);
                r.collect_terms(out);
            }
        }
    }
}

// Printing: same precedences as the sequential printer, so the output parses
// back (in the enlarged signature) to a formula with the same classical
// reading. Quantifier bodies are always parenthesised unless they are atoms.

const QUANT: u8 = 0;
const IMP: u8 = 1;
const OR: u8 = 2;
const AND: u8 = 3;
const LIT: u8 = 4;

fn level(f: &FolFormula) -> u8 {
    match f {
        FolFormula::Forall(..) | FolFormula::Exists(..) => QUANT,
        FolFormula::Impl(..) => IMP,
        FolFormula::Or(..) => OR,
        FolFormula::And(..) => AND,
        _ => LIT,
    }
}

fn write_at(out: &mut String, f: &FolFormula, min: u8) {
    if level(f) < min {
        out.push('(');
        write_fol(out, f);
        out.push(')');
    } else {
        write_fol(out, f);
    }
}

fn write_fol(out: &mut String, f: &FolFormula) {
    match f {
        FolFormula::TrueC => out.push('T'),
        FolFormula::FalseC => out.push('F'),
        FolFormula::Eq(l, r) => out.push_str(&format!("{l} == {r}")),
        FolFormula::Neq(l, r) => out.push_str(&format!("{l} != {r}")),
        FolFormula::Not(g) => {
            out.push('!');
            // `!t == r` would not parse; an atom under ¬ gets parentheses too.
            if matches!(g.as_ref(), FolFormula::Eq(..) | FolFormula::Neq(..)) {
                out.push('(');
                write_fol(out, g);
                out.push(')');
            } else {
                write_at(out, g, LIT);
            }
        }
        FolFormula::And(l, r) => {
            write_at(out, l, AND);
            out.push_str(" && ");
            write_at(out, r, LIT);
        }
        FolFormula::Or(l, r) => {
            write_at(out, l, OR);
            out.push_str(" || ");
            write_at(out, r, AND);
        }
        FolFormula::Impl(l, r) => {
            write_at(out, l, OR);
            out.push_str(" -> ");
            write_at(out, r, IMP);
        }
        FolFormula::Forall(x, g) | FolFormula::Exists(x, g) => {
            out.push_str(if matches!(f, FolFormula::Forall(..)) { "forall " } else { "exists " });
            out.push_str(x);
            out.push_str(". ");
            write_at(out, g, LIT);
        }
    }
}

pub fn print_fol(f: &FolFormula) -> String {
    let mut out = String::new();
    write_fol(&mut out, f);
    out
}

impl fmt::Display for FolFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&print_fol(self))
    }
}

impl Serialize for FolFormula {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            FolFormula::TrueC | FolFormula::FalseC => {
                let mut st = s.serialize_struct("FolFormula", 1)?;
                st.serialize_field("op", if *self == FolFormula::TrueC { "true" } else { "false" })?;
                st.end()
            }
            FolFormula::Eq(l, r) | FolFormula::Neq(l, r) => {
                let mut st = s.serialize_struct("FolFormula", 3)?;
                st.serialize_field("op", if matches!(self, FolFormula::Eq(..)) { "eq" } else { "neq" })?;
                st.serialize_field("lhs", l)?;
                st.serialize_field("rhs", r)?;
                st.end()
            }
            FolFormula::Not(g) => {
                let mut st = s.serialize_struct("FolFormula", 2)?;
                st.serialize_field("op", "not")?;
                st.serialize_field("arg", g)?;
                st.end()
            }
            FolFormula::And(l, r) | FolFormula::Or(l, r) | FolFormula::Impl(l, r) => {
                let op = match self {
                    FolFormula::And(..) => "and",
                    FolFormula::Or(..) => "or",
                    _ => "imp",
                };
                let mut st = s.serialize_struct("FolFormula", 3)?;
                st.serialize_field("op", op)?;
                st.serialize_field("lhs", l)?;
                st.serialize_field("rhs", r)?;
                st.end()
            }
            FolFormula::Forall(x, g) | FolFormula::Exists(x, g) => {
                let op = if matches!(self, FolFormula::Forall(..)) { "forall" } else { "exists" };
                let mut st = s.serialize_struct("FolFormula", 3)?;
                st.serialize_field("op", op)?;
                st.serialize_field("var", x)?;
                st.serialize_field("body", g)?;
                st.end()
            }
        }
    }
}

/// Classical evaluator; quantifiers range over the whole carrier, ⊥ included.
pub(crate) struct FolEvaluator<'a> {
    s: &'a MeadowStructure,
    carrier: Vec<Value>,
}

impl<'a> FolEvaluator<'a> {
    pub(crate) fn new(s: &'a MeadowStructure) -> Result<Self, BotworldError> {
        if !s.is_total() {
            return Err(BotworldError::NotTotalStructure(s.to_string()));
        }
        Ok(FolEvaluator { s, carrier: s.carrier().unwrap_or_default() })
    }

    fn term(&self, sigma: &Valuation, t: &Term) -> Result<Value, BotworldError> {
        self.s
            .eval_opt(sigma, t)?
            .ok_or_else(|| BotworldError::NotTotalStructure(self.s.to_string()))
    }

    pub(crate) fn eval(&self, sigma: &mut Valuation, f: &FolFormula) -> Result<bool, BotworldError> {
        Ok(match f {
            FolFormula::TrueC => true,
            FolFormula::FalseC => false,
            FolFormula::Eq(l, r) => self.term(sigma, l)? == self.term(sigma, r)?,
            FolFormula::Neq(l, r) => self.term(sigma, l)? != self.term(sigma, r)?,
            FolFormula::Not(g) => !self.eval(sigma, g)?,
            FolFormula::And(l, r) => self.eval(sigma, l)? && self.eval(sigma, r)?,
            FolFormula::Or(l, r) => self.eval(sigma, l)? || self.eval(sigma, r)?,
            FolFormula::Impl(l, r) => !self.eval(sigma, l)? || self.eval(sigma, r)?,
            FolFormula::Forall(x, g) | FolFormula::Exists(x, g) => {
                if !self.s.is_finite() {
                    return Err(BotworldError::InfiniteCarrier(self.s.to_string()));
                }
                let want = matches!(f, FolFormula::Exists(..));
                for b in &self.carrier {
                    if sigma.scoped(x, b.clone(), |sigma| self.eval(sigma, g))? == want {
                        return Ok(want);
                    }
                }
                !want
            }
        })
    }
}

/// Classical truth of `f` in `s` under `sigma`.
pub fn eval_fol(s: &MeadowStructure, sigma: &Valuation, f: &FolFormula) -> Result<bool, BotworldError> {
    for v in f.free_vars() {
        if sigma.get(&v).is_none() {
            return Err(EvalError::UnboundVariable(v).into());
        }
    }
    FolEvaluator::new(s)?.eval(&mut sigma.clone(), f)
}

/// Outcome of a classical validity check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FolVerdict {
    Valid,
    Refuted { witness: Valuation },
}

impl FolVerdict {
    pub fn is_valid(&self) -> bool {
        *self == FolVerdict::Valid
    }
}

/// Checks `f` under every valuation of its free variables in the finite
/// structure `s`; with `proper` set, free variables never take the value ⊥.
pub fn check_fol_valid(s: &MeadowStructure, f: &FolFormula, proper: bool) -> Result<FolVerdict, BotworldError> {
    let ev = FolEvaluator::new(s)?;
    let vars = f.free_vars();
    let stream = if proper { s.enumerate_proper_valuations(&vars)? } else { s.enumerate_valuations(&vars)? };
    for mut sigma in stream {
        if !ev.eval(&mut sigma, f)? {
            return Ok(FolVerdict::Refuted { witness: sigma });
        }
    }
    Ok(FolVerdict::Valid)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::{parse_formula, parse_term, Signature};

    fn fol(s: &str) -> FolFormula {
        FolFormula::from_classical(&parse_formula(s, Signature::Enlarged).unwrap())
    }

    fn enl(p: u64) -> MeadowStructure {
        MeadowStructure::gf(p).unwrap().enl().unwrap()
    }

    #[test]
    fn bot_equals_bot() {
        let s = enl(3);
        let sigma: Valuation = [("x".to_string(), Value::Bot)].into_iter().collect();
        assert!(eval_fol(&s, &sigma, &fol("x == bot")).unwrap());
        assert!(eval_fol(&s, &Valuation::new(), &fol("1/0 == bot")).unwrap());
    }

    #[test]
    fn quantifiers_range_over_bot() {
        let s = enl(3);
        assert!(eval_fol(&s, &Valuation::new(), &fol("exists x. x != bot")).unwrap());
        assert!(eval_fol(&s, &Valuation::new(), &fol("exists x. x == bot")).unwrap());
        assert!(!eval_fol(&s, &Valuation::new(), &fol("forall x. 0 * x == 0")).unwrap());
        assert!(eval_fol(&s, &Valuation::new(), &fol("forall x. x + bot == bot")).unwrap());
    }

    #[test]
    fn partial_structures_are_rejected() {
        let s = MeadowStructure::gf(3).unwrap();
        assert_eq!(
            eval_fol(&s, &Valuation::new(), &FolFormula::TrueC),
            Err(BotworldError::NotTotalStructure("gf:3".into()))
        );
        let t = s.tot0().unwrap();
        assert!(eval_fol(&t, &Valuation::new(), &fol("1/0 == 0")).unwrap());
        let q = MeadowStructure::rationals().enl().unwrap();
        assert!(matches!(
            eval_fol(&q, &Valuation::new(), &fol("forall x. x == x")),
            Err(BotworldError::InfiniteCarrier(_))
        ));
        assert!(matches!(
            eval_fol(&q, &Valuation::new(), &fol("x == x")),
            Err(BotworldError::Eval(EvalError::UnboundVariable(_)))
        ));
    }

    #[test]
    fn printing_round_trips_through_the_parser() {
        let cases = [
            "forall x. (x != bot -> x == x)",
            "(exists x. (x != bot && x == 1)) && (forall x. (x != bot -> x == x || x != x))",
            "x != bot && y != bot && x == y",
            "x == bot || y == bot || x != y",
            "(a == 0 -> b == 0) -> c == 0",
            "a == 0 -> b == 0 -> c == 0",
            "x != 0 && !(T || F)",
        ];
        for c in cases {
            let f = fol(c);
            assert_eq!(f.to_string(), c);
            assert_eq!(fol(&f.to_string()), f);
        }
    }

    #[test]
    fn free_variables() {
        let f = fol("forall x. (x == y && z != x)");
        assert_eq!(f.free_vars(), ["y", "z"]);
    }

    #[test]
    fn validity_on_proper_valuations() {
        let s = enl(2);
        let f = fol("x == x + 0 * x");
        assert!(check_fol_valid(&s, &f, true).unwrap().is_valid());
        let t = parse_term("x", Signature::Plain).unwrap();
        match check_fol_valid(&s, &FolFormula::neq(t, Term::Bot), false).unwrap() {
            FolVerdict::Refuted { witness } => assert_eq!(witness.to_string(), "x=bot"),
            v => panic!("{v:?}"),
        }
    }

    #[test]
    fn json_shape() {
        let f = fol("forall x. x != bot");
        assert_eq!(
            serde_json::to_string(&f).unwrap(),
            r#"{"op":"forall","var":"x","body":{"op":"neq","lhs":{"op":"var","name":"x"},"rhs":{"op":"bot"}}}"#
        );
    }
}
