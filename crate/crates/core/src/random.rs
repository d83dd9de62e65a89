//! Seeded generators of random terms and formulae, used by the checking
//! suites and the property tests.

use rand::Rng;

use crate::syntax::{Formula3, Term};

/// Shape parameters for random terms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TermGen {
    pub vars: Vec<String>,
    pub max_depth: usize,
    pub division: bool,
    pub bot: bool,
}

impl TermGen {
    pub fn new(vars: &[&str], max_depth: usize) -> Self {
        TermGen {
            vars: vars.iter().map(|v| v.to_string()).collect(),
            max_depth,
            division: true,
            bot: false,
        }
    }

    pub fn division_free(mut self) -> Self {
        self.division = false;
        self
    }

    pub fn with_bot(mut self) -> Self {
        self.bot = true;
        self
    }

    pub fn generate<R: Rng + ?Sized>(&self, rng: &mut R) -> Term {
        self.gen_at(rng, self.max_depth)
    }

    fn leaf<R: Rng + ?Sized>(&self, rng: &mut R) -> Term {
        if self.bot && rng.gen_ratio(1, 12) {
            return Term::Bot;
        }
        match rng.gen_range(0..10) {
            0 | 1 => Term::Zero,
            2 | 3 => Term::One,
            _ if self.vars.is_empty() => Term::One,
            _ => Term::Var(self.vars[rng.gen_range(0..self.vars.len())].clone()),
        }
    }

    fn gen_at<R: Rng + ?Sized>(&self, rng: &mut R, depth: usize) -> Term {
        if depth == 0 || rng.gen_ratio(3, 10) {
            return self.leaf(rng);
        }
        let top = if self.division { 9 } else { 7 };
        match rng.gen_range(0..top) {
            0 => Term::neg(self.gen_at(rng, depth - 1)),
            1..=3 => Term::add(self.gen_at(rng, depth - 1), self.gen_at(rng, depth - 1)),
            4..=6 => Term::mul(self.gen_at(rng, depth - 1), self.gen_at(rng, depth - 1)),
            _ => Term::frac(self.gen_at(rng, depth - 1), self.gen_at(rng, depth - 1)),
        }
    }
}

/// Shape parameters for random formulae.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormulaGen {
    pub terms: TermGen,
    pub max_depth: usize,
    /// Maximum number of nested quantifiers on any path.
    pub max_quantifiers: usize,
    /// Names quantifiers may bind; defaults to the term variables.
    pub binders: Vec<String>,
}

impl FormulaGen {
    pub fn new(terms: TermGen, max_depth: usize, max_quantifiers: usize) -> Self {
        let binders = terms.vars.clone();
        FormulaGen { terms, max_depth, max_quantifiers, binders }
    }

    pub fn generate<R: Rng + ?Sized>(&self, rng: &mut R) -> Formula3 {
        self.gen_at(rng, self.max_depth, self.max_quantifiers)
    }

    pub fn atom<R: Rng + ?Sized>(&self, rng: &mut R) -> Formula3 {
        self.literal(rng, true)
    }

    // `t != r` is `!(t == r)` and so costs one level of depth.
    fn literal<R: Rng + ?Sized>(&self, rng: &mut R, negated: bool) -> Formula3 {
        match rng.gen_range(0..if negated { 20 } else { 11 }) {
            0 => Formula3::TrueC,
            1 => Formula3::FalseC,
            2..=10 => Formula3::eq(self.terms.generate(rng), self.terms.generate(rng)),
            _ => Formula3::neq(self.terms.generate(rng), self.terms.generate(rng)),
        }
    }

    fn gen_at<R: Rng + ?Sized>(&self, rng: &mut R, depth: usize, quants: usize) -> Formula3 {
        if depth == 0 || rng.gen_ratio(1, 4) {
            return self.literal(rng, depth > 0);
        }
        let top = if quants > 0 && !self.binders.is_empty() { 10 } else { 8 };
        match rng.gen_range(0..top) {
            0 | 1 => Formula3::not(self.gen_at(rng, depth - 1, quants)),
            2 | 3 => Formula3::and(
                self.gen_at(rng, depth - 1, quants),
                self.gen_at(rng, depth - 1, quants),
            ),
            4 | 5 => Formula3::or(
                self.gen_at(rng, depth - 1, quants),
                self.gen_at(rng, depth - 1, quants),
            ),
            6 | 7 => Formula3::imp(
                self.gen_at(rng, depth - 1, quants),
                self.gen_at(rng, depth - 1, quants),
            ),
            q => {
                let v = self.binders[rng.gen_range(0..self.binders.len())].clone();
                let body = self.gen_at(rng, depth - 1, quants - 1);
                if q == 8 {
                    Formula3::forall(v, body)
                } else {
                    Formula3::exists(v, body)
                }
            }
        }
    }
}

/// Number of nested quantifiers on the deepest path.
pub fn quantifier_depth(f: &Formula3) -> usize {
    match f {
        Formula3::TrueC | Formula3::FalseC | Formula3::Eq(..) => 0,
        Formula3::Not(g) => quantifier_depth(g),
        Formula3::SAnd(l, r) | Formula3::SOr(l, r) | Formula3::SImp(l, r) => {
            quantifier_depth(l).max(quantifier_depth(r))
        }
        Formula3::ForallP(_, g) | Formula3::ExistsP(_, g) => 1 + quantifier_depth(g),
    }
}
