//! Semantic checks of the equality axioms, the quantifier axioms and the
//! inference rules of the sequential calculus, on random instances over one
//! finite structure.
//!
//! Schemas of the form `guard -> conclusion` are judged in the reading their
//! soundness argument uses: under every valuation where the guard holds the
//! conclusion holds, and the instance never denial-holds. An instance whose
//! guard is undefined somewhere (say `1/0 == 1/0 -> …`) is undefined there,
//! so it is not valid in the strict sense; such instances are counted in the
//! entry note rather than reported as refutations.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::report::{EntryVerdict, SuiteEntry, SuiteReport};
use super::suites::ftcpm_formulas;
use super::{check_identity, check_valid, Evaluator, SemanticsError, TriStatus};
use crate::random::{FormulaGen, TermGen};
use crate::structures::{MeadowStructure, Valuation};
use crate::syntax::{EqIdentity, Formula3, Term};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SoundnessConfig {
    pub seed: u64,
    /// Random instances per schema and per rule.
    pub instances: usize,
    pub term_depth: usize,
}

impl Default for SoundnessConfig {
    fn default() -> Self {
        SoundnessConfig { seed: 0, instances: 500, term_depth: 4 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Op {
    Neg,
    Add,
    Mul,
    Frac,
}

impl Op {
    const TOTAL: [Op; 3] = [Op::Neg, Op::Add, Op::Mul];
    const ALL: [Op; 4] = [Op::Neg, Op::Add, Op::Mul, Op::Frac];

    fn arity(self) -> usize {
        if self == Op::Neg {
            1
        } else {
            2
        }
    }

    fn apply(self, args: &[Term]) -> Term {
        match self {
            Op::Neg => Term::neg(args[0].clone()),
            Op::Add => Term::add(args[0].clone(), args[1].clone()),
            Op::Mul => Term::mul(args[0].clone(), args[1].clone()),
            Op::Frac => Term::frac(args[0].clone(), args[1].clone()),
        }
    }
}

fn defined(t: &Term) -> Formula3 {
    Formula3::eq(t.clone(), t.clone())
}

/// A term equal to `r` wherever `r` is defined.
fn rewrite<R: Rng>(rng: &mut R, r: &Term) -> Term {
    let r = r.clone();
    match rng.gen_range(0..6) {
        0 => Term::add(r, Term::Zero),
        1 => Term::add(Term::Zero, r),
        2 => Term::mul(Term::One, r),
        3 => Term::mul(r, Term::One),
        4 => Term::neg(Term::neg(r)),
        _ => Term::add(r, Term::add(Term::var("x"), Term::neg(Term::var("x")))),
    }
}

/// A formula with the same status as `f` under every valuation.
fn eqcl_rewrite<R: Rng>(rng: &mut R, f: &Formula3) -> Formula3 {
    let f = f.clone();
    match rng.gen_range(0..7) {
        0 => Formula3::not(Formula3::not(f)),
        1 => Formula3::and(Formula3::TrueC, f),
        2 => Formula3::and(f, Formula3::TrueC),
        3 => Formula3::and(f.clone(), f),
        4 => Formula3::or(Formula3::FalseC, f),
        5 => Formula3::or(f, Formula3::FalseC),
        _ => Formula3::or(f.clone(), f),
    }
}

fn excluded_middle(f: &Formula3) -> Formula3 {
    Formula3::or(f.clone(), Formula3::not(f.clone()))
}

/// Pre-order indices of the equation atoms of `f`.
fn atom_positions(f: &Formula3) -> Vec<usize> {
    (0..f.node_count()).filter(|&i| matches!(f.subformula(i), Some(Formula3::Eq(..)))).collect()
}

struct Checker<'a> {
    s: &'a MeadowStructure,
    ev: Evaluator<'a>,
}

/// Result of judging one guarded schema instance.
enum Judgement {
    Strict,
    Excused,
    Broken(Valuation, TriStatus),
}

impl<'a> Checker<'a> {
    fn valid(&self, f: &Formula3) -> Result<bool, SemanticsError> {
        Ok(check_valid(self.s, f, None)?.is_valid())
    }

    fn same(&self, a: &Formula3, b: &Formula3) -> Result<bool, SemanticsError> {
        let id = EqIdentity::new(a.clone(), b.clone());
        Ok(!check_identity(self.s, &id, None)?.is_refuted())
    }

    fn judge(&self, guard: Option<&Formula3>, whole: &Formula3) -> Result<Judgement, SemanticsError> {
        let vars = whole.free_vars();
        let mut excused = false;
        for mut sigma in self.s.enumerate_valuations(&vars)? {
            let st = self.ev.status(&mut sigma, whole)?;
            if st == TriStatus::Holds {
                continue;
            }
            let guard_undefined = match guard {
                Some(g) => self.ev.status(&mut sigma, g)? == TriStatus::Undefined,
                None => false,
            };
            if st == TriStatus::Undefined && guard_undefined {
                excused = true;
            } else {
                return Ok(Judgement::Broken(sigma, st));
            }
        }
        Ok(if excused { Judgement::Excused } else { Judgement::Strict })
    }
}

/// Accumulates instances of one schema into a suite entry.
struct SchemaTally {
    name: String,
    instances: usize,
    strict: usize,
    excused: usize,
    broken: Option<(String, Valuation, TriStatus)>,
}

impl SchemaTally {
    fn new(name: &str) -> Self {
        SchemaTally { name: name.to_string(), instances: 0, strict: 0, excused: 0, broken: None }
    }

    fn add(&mut self, instance: &Formula3, j: Judgement) {
        self.instances += 1;
        match j {
            Judgement::Strict => self.strict += 1,
            Judgement::Excused => self.excused += 1,
            Judgement::Broken(sigma, st) => {
                if self.broken.is_none() {
                    self.broken = Some((instance.to_string(), sigma, st));
                }
            }
        }
    }

    fn entry(self) -> SuiteEntry {
        let note = format!(
            "{} instances: {} strictly valid, {} undefined only where the guard is undefined",
            self.instances, self.strict, self.excused
        );
        match self.broken {
            None => SuiteEntry::new(self.name, EntryVerdict::Valid).with_note(note),
            Some((stmt, sigma, st)) => {
                let mut e = SuiteEntry::new(self.name, EntryVerdict::Refuted).with_note(note);
                e.statement = Some(stmt);
                e.witness = Some((&sigma).into());
                e.status = Some(st.name().to_string());
                e
            }
        }
    }
}

/// Accumulates rule instances: premises valid must give a valid conclusion.
struct RuleTally {
    name: String,
    instances: usize,
    applicable: usize,
    broken: Option<String>,
}

impl RuleTally {
    fn new(name: &str) -> Self {
        RuleTally { name: name.to_string(), instances: 0, applicable: 0, broken: None }
    }

    fn add(&mut self, premises_valid: bool, conclusion_valid: impl FnOnce() -> Result<bool, SemanticsError>, describe: impl FnOnce() -> String) -> Result<(), SemanticsError> {
        self.instances += 1;
        if premises_valid {
            self.applicable += 1;
            if !conclusion_valid()? && self.broken.is_none() {
                self.broken = Some(describe());
            }
        }
        Ok(())
    }

    fn entry(self) -> SuiteEntry {
        let note = format!("{} instances, {} with valid premises", self.instances, self.applicable);
        match self.broken {
            None => SuiteEntry::new(self.name, EntryVerdict::Valid).with_note(note),
            Some(stmt) => {
                let mut e = SuiteEntry::new(self.name, EntryVerdict::Refuted).with_note(note);
                e.statement = Some(stmt);
                e
            }
        }
    }
}

/// Runs the equality axioms p1 to p7, the quantifier axioms a1 and a2, the
/// rules i1 to i5 and the congruence property of defined equal terms on `s`.
pub fn run_soundness_suite(
    s: &MeadowStructure,
    cfg: &SoundnessConfig,
) -> Result<SuiteReport, SemanticsError> {
    if !s.is_finite() {
        return Err(SemanticsError::InfiniteCarrier(s.to_string()));
    }
    let ck = Checker { s, ev: Evaluator::new(s) };
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let terms = TermGen::new(&["x", "y", "z"], cfg.term_depth);
    let mut report = SuiteReport::new("soundness", s.to_string());

    // p1, p2, a2: no guard, checked strictly.
    let mut p1 = SchemaTally::new("p1");
    for c in [Term::Zero, Term::One] {
        let f = defined(&c);
        p1.add(&f, ck.judge(None, &f)?);
    }
    report.push(p1.entry());
    let mut p2 = SchemaTally::new("p2");
    for v in ["x", "y", "z"] {
        let f = defined(&Term::var(v));
        p2.add(&f, ck.judge(None, &f)?);
    }
    report.push(p2.entry());

    let mut p3 = SchemaTally::new("p3");
    for _ in 0..cfg.instances {
        let t1 = terms.generate(&mut rng);
        let t2 = if rng.gen_bool(0.5) { rewrite(&mut rng, &t1) } else { terms.generate(&mut rng) };
        let guard = Formula3::and(defined(&t1), defined(&t2));
        let body = Formula3::imp(
            Formula3::eq(t1.clone(), t2.clone()),
            Formula3::eq(t2.clone(), t1.clone()),
        );
        let f = Formula3::imp(guard.clone(), body);
        p3.add(&f, ck.judge(Some(&guard), &f)?);
    }
    report.push(p3.entry());

    let mut p4 = SchemaTally::new("p4");
    for _ in 0..cfg.instances {
        let t1 = terms.generate(&mut rng);
        let t2 = if rng.gen_bool(0.5) { rewrite(&mut rng, &t1) } else { terms.generate(&mut rng) };
        let t3 = if rng.gen_bool(0.5) { rewrite(&mut rng, &t2) } else { terms.generate(&mut rng) };
        let guard = Formula3::and_all(vec![defined(&t1), defined(&t2), defined(&t3)]);
        let body = Formula3::imp(
            Formula3::and(
                Formula3::eq(t1.clone(), t2.clone()),
                Formula3::eq(t2.clone(), t3.clone()),
            ),
            Formula3::eq(t1.clone(), t3.clone()),
        );
        let f = Formula3::imp(guard.clone(), body);
        p4.add(&f, ck.judge(Some(&guard), &f)?);
    }
    report.push(p4.entry());

    let mut p5 = SchemaTally::new("p5");
    for i in 0..cfg.instances {
        let op = Op::TOTAL[i % Op::TOTAL.len()];
        let args: Vec<Term> = (0..op.arity()).map(|_| terms.generate(&mut rng)).collect();
        let guard = Formula3::and_all(args.iter().map(defined).collect());
        let f = Formula3::imp(guard.clone(), defined(&op.apply(&args)));
        p5.add(&f, ck.judge(Some(&guard), &f)?);
    }
    report.push(p5.entry());

    let mut p6 = SchemaTally::new("p6");
    for i in 0..cfg.instances {
        let op = Op::ALL[i % Op::ALL.len()];
        let args: Vec<Term> = (0..op.arity()).map(|_| terms.generate(&mut rng)).collect();
        let guard = defined(&op.apply(&args));
        let f = Formula3::imp(guard.clone(), Formula3::and_all(args.iter().map(defined).collect()));
        p6.add(&f, ck.judge(Some(&guard), &f)?);
    }
    report.push(p6.entry());

    let mut p7 = SchemaTally::new("p7");
    for i in 0..cfg.instances {
        let op = Op::ALL[i % Op::ALL.len()];
        let ts: Vec<Term> = (0..op.arity()).map(|_| terms.generate(&mut rng)).collect();
        let rs: Vec<Term> = ts
            .iter()
            .map(|t| if rng.gen_ratio(2, 3) { rewrite(&mut rng, t) } else { terms.generate(&mut rng) })
            .collect();
        let pairs = ts.iter().zip(&rs).map(|(t, r)| Formula3::eq(t.clone(), r.clone())).collect();
        let guard = Formula3::and(defined(&op.apply(&ts)), Formula3::and_all(pairs));
        let f = Formula3::imp(guard.clone(), Formula3::eq(op.apply(&ts), op.apply(&rs)));
        p7.add(&f, ck.judge(Some(&guard), &f)?);
    }
    report.push(p7.entry());

    // a1: bound variables of φ come from {v, w}, so they never occur in t.
    let mut a1 = SchemaTally::new("a1");
    let phis = FormulaGen {
        terms: TermGen::new(&["x", "y", "v", "w"], 2),
        max_depth: 3,
        max_quantifiers: 1,
        binders: vec!["v".into(), "w".into()],
    };
    let small = TermGen::new(&["x", "y", "z"], 3);
    for _ in 0..cfg.instances {
        let t = small.generate(&mut rng);
        let phi = phis.generate(&mut rng);
        let guard = Formula3::and(defined(&t), Formula3::forall("x", phi.clone()));
        let f = Formula3::imp(guard.clone(), phi.substitute("x", &t));
        a1.add(&f, ck.judge(Some(&guard), &f)?);
    }
    report.push(a1.entry());

    let mut a2 = SchemaTally::new("a2");
    for c in [Term::Zero, Term::One] {
        for x in ["x", "y"] {
            let xv = Term::var(x);
            let f = Formula3::forall(
                x,
                Formula3::or(Formula3::eq(xv.clone(), c.clone()), Formula3::neq(xv, c.clone())),
            );
            a2.add(&f, ck.judge(None, &f)?);
        }
    }
    report.push(a2.entry());

    report.push(rule_i1(&ck, &mut rng, cfg)?);
    report.push(rule_i2(&ck, &mut rng, cfg)?);
    report.push(rule_i3(&ck, &mut rng, cfg)?);
    report.push(rule_i4(&ck, &mut rng, cfg)?);
    report.push(rule_i5(&ck, &mut rng, cfg)?);
    report.push(congruence(&ck, &mut rng, cfg)?);
    Ok(report)
}

/// A formula that is defined everywhere: division-free atoms only.
fn total_formula<R: Rng>(rng: &mut R) -> Formula3 {
    FormulaGen::new(TermGen::new(&["x", "y"], 2).division_free(), 3, 1).generate(rng)
}

fn any_formula<R: Rng>(rng: &mut R) -> Formula3 {
    FormulaGen::new(TermGen::new(&["x", "y"], 2), 3, 1).generate(rng)
}

/// Formulae valid in every field-like partial meadow, or likely to be.
fn valid_candidate<R: Rng>(rng: &mut R) -> Formula3 {
    match rng.gen_range(0..4) {
        0 => ftcpm_formulas().choose(rng).expect("non-empty").1.clone(),
        1 => excluded_middle(&total_formula(rng)),
        2 => defined(&TermGen::new(&["x", "y"], 3).division_free().generate(rng)),
        _ => any_formula(rng),
    }
}

fn rule_i1<R: Rng>(ck: &Checker, rng: &mut R, cfg: &SoundnessConfig) -> Result<SuiteEntry, SemanticsError> {
    let mut tally = RuleTally::new("i1");
    let dfree = TermGen::new(&["x", "y"], 2).division_free();
    for _ in 0..cfg.instances {
        let t = if rng.gen_ratio(2, 3) { dfree.generate(rng) } else { TermGen::new(&["x", "y"], 2).generate(rng) };
        let r = dfree.generate(rng);
        let s = if rng.gen_ratio(4, 5) { rewrite(rng, &r) } else { dfree.generate(rng) };
        let atom = Formula3::eq(t.clone(), r.clone());
        let x = if rng.gen_bool(0.8) { total_formula(rng) } else { any_formula(rng) };
        let x = match atom_positions(&x).choose(rng) {
            Some(&i) => x.replace_at(i, &atom).expect("index in range"),
            None => Formula3::and(atom.clone(), x),
        };
        let ctx = excluded_middle(&x);
        let sites: Vec<usize> = (0..ctx.node_count()).filter(|&i| ctx.subformula(i) == Some(&atom)).collect();
        let site = *sites.choose(rng).expect("atom occurs");
        let out = ctx.replace_at(site, &Formula3::eq(t, s.clone())).expect("index in range");
        let premises = ck.valid(&ctx)? && ck.valid(&Formula3::eq(r.clone(), s.clone()))?;
        tally.add(premises, || ck.valid(&out), || format!("{ctx}  with  {r} == {s}  gives  {out}"))?;
    }
    Ok(tally.entry())
}

fn rule_i2<R: Rng>(ck: &Checker, rng: &mut R, cfg: &SoundnessConfig) -> Result<SuiteEntry, SemanticsError> {
    let mut tally = RuleTally::new("i2");
    for _ in 0..cfg.instances {
        let ctx = valid_candidate(rng);
        let site = rng.gen_range(0..ctx.node_count());
        let phi = ctx.subformula(site).expect("index in range").clone();
        let psi = if rng.gen_ratio(4, 5) { eqcl_rewrite(rng, &phi) } else { any_formula(rng) };
        let out = ctx.replace_at(site, &psi).expect("index in range");
        let premises = ck.valid(&ctx)? && ck.same(&phi, &psi)?;
        tally.add(premises, || ck.valid(&out), || format!("{ctx}  with  ({phi}) = ({psi})  gives  {out}"))?;
    }
    Ok(tally.entry())
}

fn rule_i3<R: Rng>(ck: &Checker, rng: &mut R, cfg: &SoundnessConfig) -> Result<SuiteEntry, SemanticsError> {
    let mut tally = RuleTally::new("i3");
    for _ in 0..cfg.instances {
        let phi = valid_candidate(rng);
        let psi = match rng.gen_range(0..4) {
            0 => phi.clone(),
            1 => Formula3::or(phi.clone(), any_formula(rng)),
            2 => eqcl_rewrite(rng, &phi),
            _ => valid_candidate(rng),
        };
        let imp = Formula3::imp(phi.clone(), psi.clone());
        let premises = ck.valid(&phi)? && ck.valid(&imp)?;
        tally.add(premises, || ck.valid(&psi), || format!("{phi}  and  {imp}  give  {psi}"))?;
    }
    Ok(tally.entry())
}

fn rule_i4<R: Rng>(ck: &Checker, rng: &mut R, cfg: &SoundnessConfig) -> Result<SuiteEntry, SemanticsError> {
    let mut tally = RuleTally::new("i4");
    for _ in 0..cfg.instances {
        let phi = valid_candidate(rng);
        let psi = valid_candidate(rng);
        let conj = Formula3::and(phi.clone(), psi.clone());
        let premises = ck.valid(&phi)? && ck.valid(&psi)?;
        tally.add(premises, || ck.valid(&conj), || format!("{phi}  and  {psi}  give  {conj}"))?;
    }
    Ok(tally.entry())
}

fn rule_i5<R: Rng>(ck: &Checker, rng: &mut R, cfg: &SoundnessConfig) -> Result<SuiteEntry, SemanticsError> {
    let mut tally = RuleTally::new("i5");
    for _ in 0..cfg.instances {
        let psi = if rng.gen_ratio(4, 5) { total_formula(rng) } else { any_formula(rng) };
        let xi = if rng.gen_ratio(4, 5) { total_formula(rng) } else { any_formula(rng) };
        let phi = match rng.gen_range(0..5) {
            0 => Formula3::and(psi.clone(), any_formula(rng)),
            1 => Formula3::FalseC,
            2 => psi.clone(),
            3 => Formula3::and(psi.clone(), total_formula(rng)),
            _ => any_formula(rng),
        };
        let imp = Formula3::imp(phi.clone(), psi.clone());
        let premises = ck.valid(&imp)?
            && ck.valid(&excluded_middle(&psi))?
            && ck.valid(&excluded_middle(&xi))?;
        let out = Formula3::imp(Formula3::or(phi.clone(), xi.clone()), Formula3::or(psi.clone(), xi.clone()));
        tally.add(premises, || ck.valid(&out), || format!("{imp}, {psi}, {xi}  give  {out}"))?;
    }
    Ok(tally.entry())
}

/// Defined, equal arguments give equal results under the total operations.
fn congruence<R: Rng>(ck: &Checker, rng: &mut R, cfg: &SoundnessConfig) -> Result<SuiteEntry, SemanticsError> {
    let mut tally = RuleTally::new("congruence");
    let terms = TermGen::new(&["x", "y"], 3);
    for i in 0..cfg.instances {
        let op = Op::TOTAL[i % Op::TOTAL.len()];
        let ts: Vec<Term> = (0..op.arity()).map(|_| terms.generate(rng)).collect();
        let rs: Vec<Term> = ts
            .iter()
            .map(|t| if rng.gen_ratio(4, 5) { rewrite(rng, t) } else { terms.generate(rng) })
            .collect();
        let mut premises = true;
        for (t, r) in ts.iter().zip(&rs) {
            premises = premises
                && ck.valid(&defined(t))?
                && ck.valid(&defined(r))?
                && ck.valid(&Formula3::eq(t.clone(), r.clone()))?;
        }
        let out = Formula3::eq(op.apply(&ts), op.apply(&rs));
        tally.add(premises, || ck.valid(&out), || out.to_string())?;
    }
    Ok(tally.entry())
}
