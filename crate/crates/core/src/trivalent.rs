//! The three-element algebra of short-circuit (McCarthy) connectives and
//! exhaustive checking of equational laws over it.

use std::fmt;

use serde::ser::{Serialize, SerializeMap, SerializeStruct, Serializer};

use crate::syntax::lexer::{tokenize, Tok};

/// A truth value. The derived order `TT < FF < UU` is only used for iteration.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum TriValue {
    TT,
    FF,
    UU,
}

impl TriValue {
    pub const ALL: [TriValue; 3] = [TriValue::TT, TriValue::FF, TriValue::UU];

    pub fn symbol(self) -> &'static str {
        match self {
            TriValue::TT => "T",
            TriValue::FF => "F",
            TriValue::UU => "U",
        }
    }
}

impl fmt::Display for TriValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

pub fn tri_not(a: TriValue) -> TriValue {
    match a {
        TriValue::TT => TriValue::FF,
        TriValue::FF => TriValue::TT,
        TriValue::UU => TriValue::UU,
    }
}

pub fn tri_and(a: TriValue, b: TriValue) -> TriValue {
    match a {
        TriValue::FF => TriValue::FF,
        TriValue::UU => TriValue::UU,
        TriValue::TT => b,
    }
}

pub fn tri_or(a: TriValue, b: TriValue) -> TriValue {
    match a {
        TriValue::TT => TriValue::TT,
        TriValue::UU => TriValue::UU,
        TriValue::FF => b,
    }
}

pub fn tri_imp(a: TriValue, b: TriValue) -> TriValue {
    tri_or(tri_not(a), b)
}

/// Connective terms over metavariables, the two sides of a law.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Conn {
    Meta(String),
    Const(TriValue),
    Not(Box<Conn>),
    And(Box<Conn>, Box<Conn>),
    Or(Box<Conn>, Box<Conn>),
    Imp(Box<Conn>, Box<Conn>),
}

impl Conn {
    pub fn eval(&self, env: &[(String, TriValue)]) -> TriValue {
        match self {
            Conn::Meta(m) => env
                .iter()
                .find(|(k, _)| k == m)
                .map(|(_, v)| *v)
                .unwrap_or_else(|| panic!("metavariable {m} not assigned")),
            Conn::Const(v) => *v,
            Conn::Not(a) => tri_not(a.eval(env)),
            Conn::And(a, b) => tri_and(a.eval(env), b.eval(env)),
            Conn::Or(a, b) => tri_or(a.eval(env), b.eval(env)),
            Conn::Imp(a, b) => tri_imp(a.eval(env), b.eval(env)),
        }
    }

    fn collect_metas(&self, out: &mut Vec<String>) {
        match self {
            Conn::Meta(m) => {
                if !out.contains(m) {
                    out.push(m.clone());
                }
            }
            Conn::Const(_) => {}
            Conn::Not(a) => a.collect_metas(out),
            Conn::And(a, b) | Conn::Or(a, b) | Conn::Imp(a, b) => {
                a.collect_metas(out);
                b.collect_metas(out);
            }
        }
    }

    /// Swaps `&&`/`||` and `T`/`F`. Undefined for terms containing `->`.
    pub fn dual(&self) -> Option<Conn> {
        Some(match self {
            Conn::Meta(_) => self.clone(),
            Conn::Const(v) => Conn::Const(match v {
                TriValue::TT => TriValue::FF,
                TriValue::FF => TriValue::TT,
                TriValue::UU => TriValue::UU,
            }),
            Conn::Not(a) => Conn::Not(Box::new(a.dual()?)),
            Conn::And(a, b) => Conn::Or(Box::new(a.dual()?), Box::new(b.dual()?)),
            Conn::Or(a, b) => Conn::And(Box::new(a.dual()?), Box::new(b.dual()?)),
            Conn::Imp(..) => return None,
        })
    }
}

impl fmt::Display for Conn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn lvl(c: &Conn) -> u8 {
            match c {
                Conn::Imp(..) => 1,
                Conn::Or(..) => 2,
                Conn::And(..) => 3,
                _ => 4,
            }
        }
        fn go(c: &Conn, min: u8, f: &mut fmt::Formatter<'_>) -> fmt::Result {
            if lvl(c) < min {
                f.write_str("(")?;
                go(c, 0, f)?;
                return f.write_str(")");
            }
            match c {
                Conn::Meta(m) => f.write_str(m),
                Conn::Const(v) => write!(f, "{v}"),
                Conn::Not(a) => {
                    f.write_str("!")?;
                    go(a, 4, f)
                }
                Conn::And(a, b) => {
                    go(a, 3, f)?;
                    f.write_str(" && ")?;
                    go(b, 4, f)
                }
                Conn::Or(a, b) => {
                    go(a, 2, f)?;
                    f.write_str(" || ")?;
                    go(b, 3, f)
                }
                Conn::Imp(a, b) => {
                    go(a, 2, f)?;
                    f.write_str(" -> ")?;
                    go(b, 1, f)
                }
            }
        }
        go(self, 0, f)
    }
}

/// An equational law between two connective terms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Law {
    pub name: String,
    pub lhs: Conn,
    pub rhs: Conn,
    /// `false` for laws that are expected to be refuted.
    pub expect_valid: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("cannot parse law `{text}`: {reason}")]
pub struct LawParseError {
    pub text: String,
    pub reason: String,
}

impl Law {
    /// Parses `lhs = rhs`, where lowercase identifiers are metavariables and
    /// `T`, `F`, `U` are the three constants.
    pub fn parse(name: &str, text: &str) -> Result<Law, LawParseError> {
        let err = |reason: String| LawParseError { text: text.to_string(), reason };
        let toks: Vec<Tok> = tokenize(text)
            .map_err(|e| err(format!("unexpected {} at column {}", e.found, e.column)))?
            .into_iter()
            .map(|s| s.tok)
            .collect();
        let mut p = ConnParser { toks, pos: 0 };
        let lhs = p.imp().map_err(err)?;
        p.expect(Tok::Assign).map_err(err)?;
        let rhs = p.imp().map_err(err)?;
        p.expect(Tok::Eof).map_err(err)?;
        Ok(Law { name: name.to_string(), lhs, rhs, expect_valid: true })
    }

    pub fn expecting_refutation(mut self) -> Law {
        self.expect_valid = false;
        self
    }

    pub fn dual(&self, name: &str) -> Option<Law> {
        Some(Law {
            name: name.to_string(),
            lhs: self.lhs.dual()?,
            rhs: self.rhs.dual()?,
            expect_valid: self.expect_valid,
        })
    }

    /// Metavariables in order of first occurrence, left side first.
    pub fn metas(&self) -> Vec<String> {
        let mut out = Vec::new();
        self.lhs.collect_metas(&mut out);
        self.rhs.collect_metas(&mut out);
        out
    }

    /// Evaluates both sides under every assignment. The first metavariable
    /// varies fastest; values run through `T`, `F`, `U`.
    pub fn check(&self) -> LawCheck {
        let metas = self.metas();
        let total = 3usize.pow(metas.len() as u32);
        let mut counterexample = None;
        for code in 0..total {
            let mut rest = code;
            let env: Vec<(String, TriValue)> = metas
                .iter()
                .map(|m| {
                    let v = TriValue::ALL[rest % 3];
                    rest /= 3;
                    (m.clone(), v)
                })
                .collect();
            if self.lhs.eval(&env) != self.rhs.eval(&env) {
                counterexample = Some(env);
                break;
            }
        }
        LawCheck {
            law: self.name.clone(),
            statement: format!("{} = {}", self.lhs, self.rhs),
            holds: counterexample.is_none(),
            expect_valid: self.expect_valid,
            assignments: total,
            counterexample,
        }
    }
}

struct ConnParser {
    toks: Vec<Tok>,
    pos: usize,
}

impl ConnParser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos]
    }

    fn eat(&mut self, t: &Tok) -> bool {
        if self.peek() == t {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, t: Tok) -> Result<(), String> {
        if self.eat(&t) {
            Ok(())
        } else {
            Err(format!("expected {t}, found {}", self.peek()))
        }
    }

    fn imp(&mut self) -> Result<Conn, String> {
        let l = self.or()?;
        if self.eat(&Tok::Arrow) {
            return Ok(Conn::Imp(Box::new(l), Box::new(self.imp()?)));
        }
        Ok(l)
    }

    fn or(&mut self) -> Result<Conn, String> {
        let mut acc = self.and()?;
        while self.eat(&Tok::OrOr) {
            acc = Conn::Or(Box::new(acc), Box::new(self.and()?));
        }
        Ok(acc)
    }

    fn and(&mut self) -> Result<Conn, String> {
        let mut acc = self.lit()?;
        while self.eat(&Tok::AndAnd) {
            acc = Conn::And(Box::new(acc), Box::new(self.lit()?));
        }
        Ok(acc)
    }

    fn lit(&mut self) -> Result<Conn, String> {
        match self.peek().clone() {
            Tok::Bang => {
                self.pos += 1;
                Ok(Conn::Not(Box::new(self.lit()?)))
            }
            Tok::LParen => {
                self.pos += 1;
                let c = self.imp()?;
                self.expect(Tok::RParen)?;
                Ok(c)
            }
            Tok::Ident(name) => {
                self.pos += 1;
                Ok(match name.as_str() {
                    "T" => Conn::Const(TriValue::TT),
                    "F" => Conn::Const(TriValue::FF),
                    "U" => Conn::Const(TriValue::UU),
                    _ => Conn::Meta(name),
                })
            }
            other => Err(format!("expected a connective term, found {other}")),
        }
    }
}

/// Outcome of exhaustively checking one law.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LawCheck {
    pub law: String,
    pub statement: String,
    pub holds: bool,
    pub expect_valid: bool,
    pub assignments: usize,
    pub counterexample: Option<Vec<(String, TriValue)>>,
}

impl LawCheck {
    /// The law behaved as expected (held, or was refuted when that is the point).
    pub fn ok(&self) -> bool {
        self.holds == self.expect_valid
    }
}

struct Assignment<'a>(&'a [(String, TriValue)]);

impl Serialize for Assignment<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(Some(self.0.len()))?;
        for (k, v) in self.0 {
            m.serialize_entry(k, v.symbol())?;
        }
        m.end()
    }
}

impl Serialize for LawCheck {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let n = 3 + usize::from(self.counterexample.is_some()) + usize::from(!self.expect_valid);
        let mut st = s.serialize_struct("LawCheck", n)?;
        st.serialize_field("law", &self.law)?;
        st.serialize_field("statement", &self.statement)?;
        st.serialize_field("status", if self.holds { "pass" } else { "fail" })?;
        if let Some(cx) = &self.counterexample {
            st.serialize_field("counterexample", &Assignment(cx))?;
        }
        if !self.expect_valid {
            st.serialize_field("expected", "fail")?;
        }
        st.end()
    }
}

/// The result of running a list of laws.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct LawReport {
    pub entries: Vec<LawCheck>,
}

impl LawReport {
    pub fn all_ok(&self) -> bool {
        self.entries.iter().all(LawCheck::ok)
    }

    pub fn get(&self, law: &str) -> Option<&LawCheck> {
        self.entries.iter().find(|e| e.law == law)
    }
}

const EQCL: [(&str, &str); 7] = [
    ("e1", "F = !T"),
    ("e2", "x || y = !(!x && !y)"),
    ("e3", "T && x = x"),
    ("e4", "x && (x || y) = x"),
    ("e5", "(x || y) && z = (!x && (y && z)) || (x && z)"),
    ("e6", "(x && y) || (y && x) = (y && x) || (x && y)"),
    ("e7", "x -> y = !x || y"),
];

const CONSEQUENCES: [(&str, &str); 9] = [
    ("DNE", "!!x = x"),
    ("I", "x && T = x"),
    ("I.b", "T || x = T"),
    ("II", "(x && y) && z = x && (y && z)"),
    ("III", "x && (y && x) = x && y"),
    ("III.idem", "x && x = x"),
    ("IV", "x && (y || z) = (x && y) || (x && z)"),
    ("V", "x && !x = !x && x"),
    ("VI", "(x && y) -> z = x -> (y -> z)"),
];

const REFUTED: [(&str, &str); 2] = [("or-comm", "x || y = y || x"), ("and-F", "x && F = F")];

fn law(name: &str, text: &str) -> Law {
    Law::parse(name, text).expect("built-in law parses")
}

/// The axioms, their listed consequences, the duals of the ∧/∨ consequences,
/// and two laws of two-valued logic that must fail.
pub fn eqcl_laws() -> Vec<Law> {
    let mut out: Vec<Law> = EQCL.iter().map(|(n, t)| law(n, t)).collect();
    let consequences: Vec<Law> = CONSEQUENCES.iter().map(|(n, t)| law(n, t)).collect();
    out.extend(consequences.iter().cloned());
    for c in &consequences {
        if c.name == "DNE" {
            continue;
        }
        if let Some(d) = c.dual(&format!("{}'", c.name)) {
            out.push(d);
        }
    }
    out.extend(REFUTED.iter().map(|(n, t)| law(n, t).expecting_refutation()));
    out
}

pub fn check_laws(laws: &[Law]) -> LawReport {
    LawReport { entries: laws.iter().map(Law::check).collect() }
}

pub fn check_eqcl_suite() -> LawReport {
    check_laws(&eqcl_laws())
}

#[cfg(test)]
mod tests {
    use super::TriValue::*;
    use super::*;

    #[test]
    fn negation() {
        assert_eq!(tri_not(TT), FF);
        assert_eq!(tri_not(FF), TT);
        assert_eq!(tri_not(UU), UU);
        for a in TriValue::ALL {
            assert_eq!(tri_not(tri_not(a)), a);
        }
    }

    #[test]
    fn short_circuit_tables() {
        assert_eq!(tri_and(FF, UU), FF);
        assert_eq!(tri_and(UU, FF), UU);
        assert_eq!(tri_or(UU, TT), UU);
        assert_eq!(tri_or(TT, UU), TT);
        assert_eq!(tri_and(TT, UU), UU);
        assert_eq!(tri_or(FF, UU), UU);
    }

    #[test]
    fn implication_matches_clause_table() {
        // φ → ψ holds if φ denial-holds, or φ holds and ψ holds;
        // it denial-holds if φ holds and ψ denial-holds; otherwise undefined.
        for a in TriValue::ALL {
            for b in TriValue::ALL {
                let expect = match (a, b) {
                    (FF, _) => TT,
                    (TT, TT) => TT,
                    (TT, FF) => FF,
                    _ => UU,
                };
                assert_eq!(tri_imp(a, b), expect, "{a} -> {b}");
            }
        }
    }

    #[test]
    fn two_valued_law_fails() {
        assert_ne!(tri_and(UU, FF), FF);
        let c = law("and-F", "x && F = F").check();
        assert!(!c.holds);
        assert_eq!(c.counterexample, Some(vec![("x".to_string(), UU)]));
    }

    #[test]
    fn eqcl_suite_is_exhaustive_and_passes() {
        let r = check_eqcl_suite();
        assert!(r.all_ok(), "{:#?}", r.entries.iter().filter(|e| !e.ok()).collect::<Vec<_>>());
        let e5 = r.get("e5").unwrap();
        assert!(e5.holds);
        assert_eq!(e5.assignments, 27);
        assert!(r.get("II").unwrap().holds);
        for name in ["I'", "I.b'", "II'", "III'", "IV'", "V'"] {
            assert!(r.get(name).is_some_and(|c| c.holds), "{name}");
        }
        assert!(r.get("VI'").is_none());
    }

    #[test]
    fn or_commutativity_refuted_at_u_t() {
        let c = check_eqcl_suite().get("or-comm").cloned().unwrap();
        assert!(!c.holds && c.ok());
        assert_eq!(c.counterexample, Some(vec![("x".into(), UU), ("y".into(), TT)]));
    }

    #[test]
    fn duals_swap_constants_and_connectives() {
        let i = law("I", "x && T = x").dual("I'").unwrap();
        assert_eq!(i.to_string_pair(), ("x || F".into(), "x".into()));
        assert!(law("VI", "x -> y = y").dual("VI'").is_none());
    }

    #[test]
    fn law_parser_rejects_garbage() {
        assert!(Law::parse("bad", "x &&").is_err());
        assert!(Law::parse("bad", "x = y = z").is_err());
        assert!(Law::parse("bad", "x $ y").is_err());
    }

    #[test]
    fn json_entry() {
        let c = law("or-comm", "x || y = y || x").expecting_refutation().check();
        let v = serde_json::to_value(&c).unwrap();
        assert_eq!(v["law"], "or-comm");
        assert_eq!(v["status"], "fail");
        assert_eq!(v["counterexample"], serde_json::json!({"x": "U", "y": "T"}));
        let ok = serde_json::to_value(law("e3", "T && x = x").check()).unwrap();
        assert_eq!(ok["status"], "pass");
        assert!(ok.get("counterexample").is_none());
    }

    impl Law {
        fn to_string_pair(&self) -> (String, String) {
            (self.lhs.to_string(), self.rhs.to_string())
        }
    }
}
