use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{check_fol_valid, psi_true, BotworldError, FolFormula, FolVerdict};
use crate::flatten::prop34_fracterm;
use crate::random::TermGen;
use crate::semantics::{ftcpm_closed, EntryVerdict, SuiteEntry, SuiteReport};
use crate::structures::MeadowStructure;
use crate::syntax::{parse_formula, Signature};

/// Commutative unital ⊥-ring axioms.
const WCR: &[(&str, &str)] = &[
    ("c1", "(x+y)+z == x+(y+z)"),
    ("c2", "x+y == y+x"),
    ("c3", "x+0 == x"),
    ("c4", "x+-x == 0*x"),
    ("c5", "(x*y)*z == x*(y*z)"),
    ("c6", "x*y == y*x"),
    ("c7", "1*x == x"),
    ("c8", "x*(y+z) == (x*y)+(x*z)"),
    ("c9", "--x == x"),
    ("c10", "x+bot == bot"),
    ("c11", "0*(x*x) == 0*x"),
];

/// Division as a total operation.
const CM: &[(&str, &str)] = &[
    ("cm1", "x/y == x*(1/y)"),
    ("cm2", "x/x == 1+0/x"),
    ("cm3", "1/(x*y) == (1/x)*(1/y)"),
    ("cm4", "1/(1+0*x) == 1+0*x"),
    ("cm5", "bot == 1/0"),
];

const CONSEQUENCES: &[(&str, &str)] = &[
    ("over-one", "x/1 == x"),
    ("neg-frac", "-(x/y) == (-x)/y"),
    ("neg-den", "(-x)/y == x/(-y)"),
    ("frac-mul", "(x/y)*(u/v) == (x*u)/(y*v)"),
    ("frac-add", "(x/y)+(u/v) == ((x*v)+(y*u))/(y*v)"),
    ("zero-sum", "0*(x+y) == 0*(x*y)"),
    ("zero-proper", "0 != bot"),
    ("one-proper", "1 != bot"),
];

/// ⊥ absorbs every operation, in every argument position.
const ABSORPTION: &[(&str, &str)] = &[
    ("bot-neg", "-bot == bot"),
    ("bot-add", "bot+x == bot"),
    ("bot-mul-left", "bot*x == bot"),
    ("bot-mul-right", "x*bot == bot"),
    ("bot-num", "bot/x == bot"),
    ("bot-den", "x/bot == bot"),
    ("zero-den", "x/0 == bot"),
];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CmConfig {
    pub seed: u64,
    /// Random terms compared with their flattened form.
    pub flatten_terms: usize,
    pub term_depth: usize,
}

impl Default for CmConfig {
    fn default() -> Self {
        CmConfig { seed: 0, flatten_terms: 200, term_depth: 4 }
    }
}

fn entry(s: &MeadowStructure, name: &str, f: &FolFormula) -> Result<SuiteEntry, BotworldError> {
    let mut e = match check_fol_valid(s, f, false)? {
        FolVerdict::Valid => SuiteEntry::new(name, EntryVerdict::Valid),
        FolVerdict::Refuted { witness } => {
            let mut e = SuiteEntry::new(name, EntryVerdict::Refuted);
            e.witness = Some((&witness).into());
            e
        }
    };
    e.statement = Some(f.to_string());
    Ok(e)
}

/// Checks the ⊥-ring axioms, the axioms for total division, their familiar
/// consequences, the translated partial-meadow axioms and random flattening
/// instances on a finite enlarged structure.
pub fn run_cm_suite(s: &MeadowStructure, cfg: &CmConfig) -> Result<SuiteReport, BotworldError> {
    if !s.is_enlarged() {
        return Err(BotworldError::NotEnlarged(s.to_string()));
    }
    if !s.is_finite() {
        return Err(BotworldError::InfiniteCarrier(s.to_string()));
    }
    let mut report = SuiteReport::new("cm", s.to_string());
    for (name, src) in WCR.iter().chain(CM).chain(CONSEQUENCES).chain(ABSORPTION) {
        let f = parse_formula(src, Signature::Enlarged).expect("built-in formula parses");
        report.push(entry(s, name, &FolFormula::from_classical(&f))?);
    }
    for (name, f) in ftcpm_closed() {
        report.push(entry(s, &format!("psi-{name}"), &psi_true(&f)?)?);
    }

    // t equals (p*s)/(q*s) everywhere in the enlargement, ⊥ included.
    let gen = TermGen::new(&["x", "y", "z"], cfg.term_depth);
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut flat = SuiteEntry::new("flatten", EntryVerdict::Valid);
    for _ in 0..cfg.flatten_terms {
        let t = gen.generate(&mut rng);
        let r = prop34_fracterm(&t).expect("generated terms are plain");
        let f = FolFormula::eq(t, r);
        if let FolVerdict::Refuted { witness } = check_fol_valid(s, &f, false)? {
            flat.verdict = EntryVerdict::Refuted;
            flat.statement = Some(f.to_string());
            flat.witness = Some((&witness).into());
            break;
        }
    }
    report.push(flat.with_note(format!("{} random terms against their flattened form", cfg.flatten_terms)));
    Ok(report)
}
