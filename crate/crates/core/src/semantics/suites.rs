use std::fmt;
use std::str::FromStr;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::report::{EntryVerdict, SuiteEntry, SuiteReport};
use super::{
    check_structure, check_valid, run_soundness_suite, Evaluator, Sampling, SemanticsError,
    SoundnessConfig, TriStatus,
};
use crate::random::{FormulaGen, TermGen};
use crate::structures::{MeadowStructure, StructureError, Valuation};
use crate::syntax::{parse_formula, Formula3, Signature};
use crate::trivalent::check_eqcl_suite;

const FTCPM: [(&str, &str); 11] = [
    ("pm1", "(x+y)+z == x+(y+z)"),
    ("pm2", "x+0 == x"),
    ("pm3", "x+-x == 0"),
    ("pm4", "x*(y*z) == (x*y)*z"),
    ("pm5", "x*y == y*x"),
    ("pm6", "1*x == x"),
    ("pm7", "x*(y+z) == (x*y)+(x*z)"),
    ("pm8", "y != 0 -> x/y == x*(1/y)"),
    ("pm9", "x != 0 -> x/x == 1"),
    ("pm10", "0 != 1"),
    ("pm11", "x != 0 && y != 0 -> x*y != 0"),
];

const ASSERTIONS: [(&str, &str); 10] = [
    ("A1", "x+y == y+x"),
    ("A2", "0*x == 0"),
    ("A3", "x != 0 -> -x != 0"),
    ("A4", "y != 0 -> -(x/y) == (-x)/y"),
    ("A5", "y != 0 && v != 0 -> (x/y)*(u/v) == (x*u)/(y*v)"),
    ("A6", "y != 0 && u != 0 && v != 0 -> (x/y)/(u/v) == (x*v)/(y*u)"),
    ("A7", "y != 0 && v != 0 -> (x/y)+(u/v) == ((x*v)+(y*u))/(y*v)"),
    ("d4", "x*y != 0 -> x != 0"),
    ("inverse-exists", "x != 0 -> (exists y. x*y == 1)"),
    ("reciprocal-exists", "x != 0 -> (exists y. y != 0 && x == 1/y)"),
];

const FOUR_SQUARES: &str = "1 + ((x*x + y*y) + (z*z + u*u)) != 0";

/// Closed facts about the rationals, checked by evaluation.
const RATIONAL_FACTS: [(&str, &str); 4] = [
    ("half-plus-half", "1/(1+1) + 1/(1+1) == 1"),
    ("four-not-three", "(1+1)*(1+1) != (1+1)+1"),
    ("cancel", "(1+1)/((1+1)+(1+1)) == 1/(1+1)"),
    ("minus-one", "-1 != 1"),
];

fn parse_all(list: &[(&str, &str)]) -> Vec<(String, Formula3)> {
    list.iter()
        .map(|(n, t)| {
            let f = parse_formula(t, Signature::Plain).expect("built-in formula parses");
            (n.to_string(), f)
        })
        .collect()
}

/// The eleven axioms in open form.
pub fn ftcpm_formulas() -> Vec<(String, Formula3)> {
    parse_all(&FTCPM)
}

/// The eleven axioms with every free variable universally quantified, named
/// `pm1b` to `pm11b`.
pub fn ftcpm_closed() -> Vec<(String, Formula3)> {
    ftcpm_formulas()
        .into_iter()
        .map(|(n, f)| (format!("{n}b"), f.universal_closure()))
        .collect()
}

/// The derived assertions, including the two with an existential quantifier.
pub fn assertion_formulas() -> Vec<(String, Formula3)> {
    parse_all(&ASSERTIONS)
}

pub fn four_squares() -> Formula3 {
    parse_formula(FOUR_SQUARES, Signature::Plain).expect("built-in formula parses")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SuiteName {
    Eqcl,
    Ftcpm,
    Assertions,
    Rationals,
    Soundness,
}

impl SuiteName {
    pub fn as_str(self) -> &'static str {
        match self {
            SuiteName::Eqcl => "eqcl",
            SuiteName::Ftcpm => "ftcpm",
            SuiteName::Assertions => "assertions",
            SuiteName::Rationals => "rationals",
            SuiteName::Soundness => "soundness",
        }
    }
}

impl fmt::Display for SuiteName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown suite `{0}`")]
pub struct UnknownSuite(pub String);

impl FromStr for SuiteName {
    type Err = UnknownSuite;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s {
            "eqcl" => SuiteName::Eqcl,
            "ftcpm" => SuiteName::Ftcpm,
            "assertions" => SuiteName::Assertions,
            "rationals" => SuiteName::Rationals,
            "soundness" => SuiteName::Soundness,
            other => return Err(UnknownSuite(other.to_string())),
        })
    }
}

fn validity_entries(
    report: &mut SuiteReport,
    s: &MeadowStructure,
    formulas: &[(String, Formula3)],
    sampling: Sampling,
) -> Result<(), SemanticsError> {
    for (name, f) in formulas {
        let v = check_valid(s, f, Some(sampling))?;
        report.push(SuiteEntry::from_verdict(name.clone(), f.to_string(), &v));
    }
    Ok(())
}

/// Runs a named suite on `s`. `sampling` is used for the infinite carrier
/// of the rationals and seeds the random instances of the soundness suite.
pub fn run_axiom_suite(
    name: SuiteName,
    s: &MeadowStructure,
    sampling: Sampling,
) -> Result<SuiteReport, SemanticsError> {
    let mut report = SuiteReport::new(name.as_str(), s.to_string());
    match name {
        SuiteName::Eqcl => {
            report.structure = "T,F,U".to_string();
            for c in &check_eqcl_suite().entries {
                report.push(SuiteEntry::from_law(c));
            }
        }
        SuiteName::Ftcpm => validity_entries(&mut report, s, &ftcpm_formulas(), sampling)?,
        SuiteName::Assertions => validity_entries(&mut report, s, &assertion_formulas(), sampling)?,
        SuiteName::Rationals => {
            let mut list = ftcpm_formulas();
            list.push(("4sq".to_string(), four_squares()));
            list.extend(parse_all(&RATIONAL_FACTS));
            validity_entries(&mut report, s, &list, sampling)?;
        }
        SuiteName::Soundness => {
            let cfg = SoundnessConfig { seed: sampling.seed, ..SoundnessConfig::default() };
            return run_soundness_suite(s, &cfg);
        }
    }
    Ok(report)
}

/// Checks, valuation by valuation, that a formula holding (denial-holding)
/// in `s` still holds (denial-holds) once division is totalised with `x/0 = 0`.
pub fn check_totalisation_invariance(
    s: &MeadowStructure,
    phi: &Formula3,
    sampling: Option<Sampling>,
) -> Result<SuiteReport, SemanticsError> {
    let mut report = SuiteReport::new("invariance", s.to_string());
    report.push(invariance_entry("invariance", s, phi, sampling)?);
    Ok(report)
}

fn invariance_entry(
    name: &str,
    s: &MeadowStructure,
    phi: &Formula3,
    sampling: Option<Sampling>,
) -> Result<SuiteEntry, SemanticsError> {
    if s.is_total() {
        return Err(StructureError::AlreadyTotal.into());
    }
    let t = s.tot0()?;
    check_structure(s, phi)?;
    let vars = phi.free_vars();
    let stream: Box<dyn Iterator<Item = Valuation>> = if s.is_finite() {
        Box::new(s.enumerate_valuations(&vars)?)
    } else {
        let sp = sampling.ok_or_else(|| SemanticsError::NeedsSampling(s.to_string()))?;
        Box::new(s.sample_valuations(&vars, sp.samples, sp.seed))
    };
    let (ep, et) = (Evaluator::new(s), Evaluator::new(&t));
    let (mut n, mut holds, mut denial, mut undefined, mut gained) = (0, 0, 0, 0, 0);
    let mut entry = SuiteEntry::new(name, EntryVerdict::Valid);
    entry.statement = Some(phi.to_string());
    for mut sigma in stream {
        n += 1;
        let a = ep.status(&mut sigma, phi)?;
        let b = et.status(&mut sigma, phi)?;
        match a {
            TriStatus::Holds => holds += 1,
            TriStatus::DenialHolds => denial += 1,
            TriStatus::Undefined => {
                undefined += 1;
                if b != TriStatus::Undefined {
                    gained += 1;
                }
            }
        }
        let broken = matches!(a, TriStatus::Holds | TriStatus::DenialHolds) && a != b;
        if broken && entry.verdict == EntryVerdict::Valid {
            entry.verdict = EntryVerdict::Refuted;
            entry.witness = Some((&sigma).into());
            entry.status = Some(format!("partial {a} / tot0 {b}"));
        }
    }
    if entry.verdict == EntryVerdict::Valid && !s.is_finite() {
        if let Some(sp) = sampling {
            entry.verdict = EntryVerdict::SampledClean;
            entry.samples = Some(sp.samples);
            entry.seed = Some(sp.seed);
        }
    }
    entry.note = Some(format!(
        "{n} valuations: {holds} holds, {denial} denial-holds, {undefined} undefined in partial, \
         {gained} of those defined in tot0"
    ));
    Ok(entry)
}

/// Totalisation invariance over the axioms, the assertions, `1/0 == 0` and
/// `count` seeded random formulae (quantifier-free on infinite carriers).
pub fn run_invariance_suite(
    s: &MeadowStructure,
    count: usize,
    sampling: Sampling,
) -> Result<SuiteReport, SemanticsError> {
    let mut report = SuiteReport::new("invariance", s.to_string());
    let mut list = ftcpm_formulas();
    list.extend(assertion_formulas());
    list.push(("one-over-zero".into(), parse_formula("1/0 == 0", Signature::Plain).unwrap()));
    let quants = if s.is_finite() { 2 } else { 0 };
    let gen = FormulaGen::new(TermGen::new(&["x", "y"], 3), 4, quants);
    let mut rng = ChaCha8Rng::seed_from_u64(sampling.seed);
    for i in 0..count {
        list.push((format!("random-{i}"), gen.generate(&mut rng)));
    }
    for (name, f) in &list {
        if !s.is_finite() && !f.is_quantifier_free() {
            continue;
        }
        report.push(invariance_entry(name, s, f, Some(sampling))?);
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(p: u64) -> MeadowStructure {
        MeadowStructure::gf(p).unwrap()
    }

    fn sampling() -> Sampling {
        Sampling { samples: 500, seed: 0 }
    }

    #[test]
    fn ftcpm_on_gf7() {
        let r = run_axiom_suite(SuiteName::Ftcpm, &gf(7), sampling()).unwrap();
        assert_eq!(r.entries.len(), 11);
        assert!(r.passed(), "{r}");
        assert!(r.entries.iter().all(|e| e.verdict == EntryVerdict::Valid));
    }

    #[test]
    fn assertions_on_gf5() {
        let r = run_axiom_suite(SuiteName::Assertions, &gf(5), sampling()).unwrap();
        assert!(r.passed(), "{r}");
        assert_eq!(r.entries.len(), 10);
    }

    #[test]
    fn eqcl_suite_entries() {
        let r = run_axiom_suite(SuiteName::Eqcl, &gf(2), sampling()).unwrap();
        assert!(r.passed());
        let c = r.get("or-comm").unwrap();
        assert_eq!(c.verdict, EntryVerdict::Refuted);
        assert_eq!(c.witness.as_ref().unwrap().to_string(), "x=U, y=T");
    }

    #[test]
    fn rationals_suite_sampled() {
        let q = MeadowStructure::rationals();
        let r = run_axiom_suite(SuiteName::Rationals, &q, sampling()).unwrap();
        assert!(r.passed(), "{r}");
        assert_eq!(r.get("4sq").unwrap().verdict, EntryVerdict::SampledClean);
        assert_eq!(r.get("minus-one").unwrap().verdict, EntryVerdict::Valid);
        let r2 = run_axiom_suite(SuiteName::Rationals, &gf(2), sampling()).unwrap();
        assert!(!r2.passed());
        assert_eq!(r2.get("4sq").unwrap().verdict, EntryVerdict::Refuted);
    }

    #[test]
    fn existential_assertions_need_a_finite_carrier() {
        let q = MeadowStructure::rationals();
        assert!(matches!(
            run_axiom_suite(SuiteName::Assertions, &q, sampling()),
            Err(SemanticsError::InfiniteCarrier(_))
        ));
    }

    #[test]
    fn totalisation_examples() {
        let pm9 = parse_formula("x != 0 -> x/x == 1", Signature::Plain).unwrap();
        let r = check_totalisation_invariance(&gf(5), &pm9, None).unwrap();
        assert!(r.passed());
        let e = parse_formula("1/0 == 0", Signature::Plain).unwrap();
        let r = check_totalisation_invariance(&gf(3), &e, None).unwrap();
        assert!(r.passed());
        assert!(r.entries[0].note.as_ref().unwrap().contains("1 undefined in partial, 1 of those"));
        let t = check_totalisation_invariance(&gf(3), &Formula3::TrueC, None).unwrap();
        assert!(t.passed());
        assert!(check_totalisation_invariance(&gf(3).tot0().unwrap(), &e, None).is_err());
    }

    #[test]
    fn invariance_suite() {
        let r = run_invariance_suite(&gf(3), 50, sampling()).unwrap();
        assert!(r.passed(), "{r}");
        let q = run_invariance_suite(&MeadowStructure::rationals(), 20, sampling()).unwrap();
        assert!(q.passed(), "{q}");
    }

    #[test]
    fn closed_forms_bind_every_variable() {
        for (name, f) in ftcpm_closed() {
            assert!(f.free_vars().is_empty(), "{name}");
        }
        let (n, pm4b) = &ftcpm_closed()[3];
        assert_eq!(n, "pm4b");
        assert!(pm4b.to_string().starts_with("forall x. forall y. forall z."));
    }
}
