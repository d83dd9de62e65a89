use std::collections::BTreeSet;
use std::fmt;

use serde::ser::{Serialize, SerializeStruct, Serializer};

/// Which signature a term or formula lives in.
///
/// `Plain` is the partial-meadow signature (0, 1, −, +, ·, division).
/// `Enlarged` additionally admits the absorptive constant `bot`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Signature {
    Plain,
    Enlarged,
}

impl Signature {
    pub fn admits(self, other: Signature) -> bool {
        self == Signature::Enlarged || other == Signature::Plain
    }
}

/// Terms over the meadow signature.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Term {
    Zero,
    One,
    Bot,
    Var(String),
    Neg(Box<Term>),
    Add(Box<Term>, Box<Term>),
    Mul(Box<Term>, Box<Term>),
    Frac(Box<Term>, Box<Term>),
}

impl Term {
    pub fn var(name: impl Into<String>) -> Term {
        Term::Var(name.into())
    }

    #[allow(clippy::should_implement_trait)]
    pub fn neg(t: Term) -> Term {
        Term::Neg(Box::new(t))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn add(l: Term, r: Term) -> Term {
        Term::Add(Box::new(l), Box::new(r))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn mul(l: Term, r: Term) -> Term {
        Term::Mul(Box::new(l), Box::new(r))
    }

    pub fn frac(num: Term, den: Term) -> Term {
        Term::Frac(Box::new(num), Box::new(den))
    }

    /// The desugared form of a non-negative integer literal:
    /// `0`, `1`, and `(…(1+1)+…)+1` for n ≥ 2.
    pub fn numeral(n: u64) -> Term {
        match n {
            0 => Term::Zero,
            _ => (1..n).fold(Term::One, |acc, _| Term::add(acc, Term::One)),
        }
    }

    pub fn signature(&self) -> Signature {
        if self.contains_bot() {
            Signature::Enlarged
        } else {
            Signature::Plain
        }
    }

    pub fn contains_bot(&self) -> bool {
        match self {
            Term::Bot => true,
            Term::Zero | Term::One | Term::Var(_) => false,
            Term::Neg(t) => t.contains_bot(),
            Term::Add(l, r) | Term::Mul(l, r) | Term::Frac(l, r) => {
                l.contains_bot() || r.contains_bot()
            }
        }
    }

    pub fn is_division_free(&self) -> bool {
        self.frac_count() == 0
    }

    pub fn frac_count(&self) -> usize {
        match self {
            Term::Zero | Term::One | Term::Bot | Term::Var(_) => 0,
            Term::Neg(t) => t.frac_count(),
            Term::Add(l, r) | Term::Mul(l, r) => l.frac_count() + r.frac_count(),
            Term::Frac(l, r) => 1 + l.frac_count() + r.frac_count(),
        }
    }

    pub fn size(&self) -> usize {
        match self {
            Term::Zero | Term::One | Term::Bot | Term::Var(_) => 1,
            Term::Neg(t) => 1 + t.size(),
            Term::Add(l, r) | Term::Mul(l, r) | Term::Frac(l, r) => 1 + l.size() + r.size(),
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            Term::Zero | Term::One | Term::Bot | Term::Var(_) => 0,
            Term::Neg(t) => 1 + t.depth(),
            Term::Add(l, r) | Term::Mul(l, r) | Term::Frac(l, r) => 1 + l.depth().max(r.depth()),
        }
    }

    /// Variables in order of first occurrence, left to right.
    pub fn vars(&self) -> Vec<String> {
        let mut out = Vec::new();
        self.collect_vars(&mut out);
        out
    }

    pub(crate) fn collect_vars(&self, out: &mut Vec<String>) {
        match self {
            Term::Var(v) => {
                if !out.iter().any(|x| x == v) {
                    out.push(v.clone());
                }
            }
            Term::Zero | Term::One | Term::Bot => {}
            Term::Neg(t) => t.collect_vars(out),
            Term::Add(l, r) | Term::Mul(l, r) | Term::Frac(l, r) => {
                l.collect_vars(out);
                r.collect_vars(out);
            }
        }
    }

    pub fn mentions(&self, name: &str) -> bool {
        match self {
            Term::Var(v) => v == name,
            Term::Zero | Term::One | Term::Bot => false,
            Term::Neg(t) => t.mentions(name),
            Term::Add(l, r) | Term::Mul(l, r) | Term::Frac(l, r) => {
                l.mentions(name) || r.mentions(name)
            }
        }
    }

    /// Replaces every occurrence of variable `name` by `by`.
    pub fn substitute(&self, name: &str, by: &Term) -> Term {
        match self {
            Term::Var(v) if v == name => by.clone(),
            Term::Zero | Term::One | Term::Bot | Term::Var(_) => self.clone(),
            Term::Neg(t) => Term::neg(t.substitute(name, by)),
            Term::Add(l, r) => Term::add(l.substitute(name, by), r.substitute(name, by)),
            Term::Mul(l, r) => Term::mul(l.substitute(name, by), r.substitute(name, by)),
            Term::Frac(l, r) => Term::frac(l.substitute(name, by), r.substitute(name, by)),
        }
    }
}

/// Sequential (short-circuit) first-order formulae with partial equality.
///
/// Denial inequality `t != r` has no node of its own: it is `Not(Eq(t, r))`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Formula3 {
    TrueC,
    FalseC,
    Eq(Term, Term),
    Not(Box<Formula3>),
    SAnd(Box<Formula3>, Box<Formula3>),
    SOr(Box<Formula3>, Box<Formula3>),
    SImp(Box<Formula3>, Box<Formula3>),
    ForallP(String, Box<Formula3>),
    ExistsP(String, Box<Formula3>),
}

impl Formula3 {
    pub fn eq(l: Term, r: Term) -> Formula3 {
        Formula3::Eq(l, r)
    }

    pub fn neq(l: Term, r: Term) -> Formula3 {
        Formula3::not(Formula3::Eq(l, r))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(f: Formula3) -> Formula3 {
        Formula3::Not(Box::new(f))
    }

    pub fn and(l: Formula3, r: Formula3) -> Formula3 {
        Formula3::SAnd(Box::new(l), Box::new(r))
    }

    pub fn or(l: Formula3, r: Formula3) -> Formula3 {
        Formula3::SOr(Box::new(l), Box::new(r))
    }

    pub fn imp(l: Formula3, r: Formula3) -> Formula3 {
        Formula3::SImp(Box::new(l), Box::new(r))
    }

    pub fn forall(v: impl Into<String>, body: Formula3) -> Formula3 {
        Formula3::ForallP(v.into(), Box::new(body))
    }

    pub fn exists(v: impl Into<String>, body: Formula3) -> Formula3 {
        Formula3::ExistsP(v.into(), Box::new(body))
    }

    /// Right-nested sequential conjunction `f1 && (f2 && (… && fn))`.
    pub fn and_all(parts: Vec<Formula3>) -> Formula3 {
        let mut it = parts.into_iter().rev();
        let last = it.next().unwrap_or(Formula3::TrueC);
        it.fold(last, |acc, f| Formula3::and(f, acc))
    }

    pub fn signature(&self) -> Signature {
        if self.terms().any(Term::contains_bot) {
            Signature::Enlarged
        } else {
            Signature::Plain
        }
    }

    /// All terms occurring in atoms, left to right.
    pub fn terms(&self) -> impl Iterator<Item = &Term> {
        let mut out = Vec::new();
        self.collect_terms(&mut out);
        out.into_iter()
    }

    fn collect_terms<'a>(&'a self, out: &mut Vec<&'a Term>) {
        match self {
            Formula3::TrueC | Formula3::FalseC => {}
            Formula3::Eq(l, r) => {
                out.push(l);
                out.push(r);
            }
            Formula3::Not(f) | Formula3::ForallP(_, f) | Formula3::ExistsP(_, f) => {
                f.collect_terms(out)
            }
            Formula3::SAnd(l, r) | Formula3::SOr(l, r) | Formula3::SImp(l, r) => {
                l.collect_terms(out);
                r.collect_terms(out);
            }
        }
    }

    /// Free variables in order of first occurrence.
    pub fn free_vars(&self) -> Vec<String> {
        let mut out = Vec::new();
        let mut bound = Vec::new();
        self.collect_free(&mut bound, &mut out);
        out
    }

    pub fn free_var_set(&self) -> BTreeSet<String> {
        self.free_vars().into_iter().collect()
    }

    fn collect_free(&self, bound: &mut Vec<String>, out: &mut Vec<String>) {
        match self {
            Formula3::TrueC | Formula3::FalseC => {}
            Formula3::Eq(l, r) => {
                for v in l.vars().into_iter().chain(r.vars()) {
                    if !bound.contains(&v) && !out.contains(&v) {
                        out.push(v);
                    }
                }
            }
            Formula3::Not(f) => f.collect_free(bound, out),
            Formula3::SAnd(l, r) | Formula3::SOr(l, r) | Formula3::SImp(l, r) => {
                l.collect_free(bound, out);
                r.collect_free(bound, out);
            }
            Formula3::ForallP(v, f) | Formula3::ExistsP(v, f) => {
                bound.push(v.clone());
                f.collect_free(bound, out);
                bound.pop();
            }
        }
    }

    /// Variables bound by some quantifier anywhere in the formula.
    pub fn bound_vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_bound(&mut out);
        out
    }

    fn collect_bound(&self, out: &mut BTreeSet<String>) {
        match self {
            Formula3::TrueC | Formula3::FalseC | Formula3::Eq(..) => {}
            Formula3::Not(f) => f.collect_bound(out),
            Formula3::SAnd(l, r) | Formula3::SOr(l, r) | Formula3::SImp(l, r) => {
                l.collect_bound(out);
                r.collect_bound(out);
            }
            Formula3::ForallP(v, f) | Formula3::ExistsP(v, f) => {
                out.insert(v.clone());
                f.collect_bound(out);
            }
        }
    }

    pub fn is_quantifier_free(&self) -> bool {
        match self {
            Formula3::TrueC | Formula3::FalseC | Formula3::Eq(..) => true,
            Formula3::Not(f) => f.is_quantifier_free(),
            Formula3::SAnd(l, r) | Formula3::SOr(l, r) | Formula3::SImp(l, r) => {
                l.is_quantifier_free() && r.is_quantifier_free()
            }
            Formula3::ForallP(..) | Formula3::ExistsP(..) => false,
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            Formula3::TrueC | Formula3::FalseC | Formula3::Eq(..) => 0,
            Formula3::Not(f) | Formula3::ForallP(_, f) | Formula3::ExistsP(_, f) => 1 + f.depth(),
            Formula3::SAnd(l, r) | Formula3::SOr(l, r) | Formula3::SImp(l, r) => {
                1 + l.depth().max(r.depth())
            }
        }
    }

    /// Capture-naive substitution of `by` for the free occurrences of `name`.
    /// Callers are responsible for `by` not mentioning variables bound in `self`.
    pub fn substitute(&self, name: &str, by: &Term) -> Formula3 {
        match self {
            Formula3::TrueC | Formula3::FalseC => self.clone(),
            Formula3::Eq(l, r) => Formula3::Eq(l.substitute(name, by), r.substitute(name, by)),
            Formula3::Not(f) => Formula3::not(f.substitute(name, by)),
            Formula3::SAnd(l, r) => Formula3::and(l.substitute(name, by), r.substitute(name, by)),
            Formula3::SOr(l, r) => Formula3::or(l.substitute(name, by), r.substitute(name, by)),
            Formula3::SImp(l, r) => Formula3::imp(l.substitute(name, by), r.substitute(name, by)),
            Formula3::ForallP(v, _) | Formula3::ExistsP(v, _) if v == name => self.clone(),
            Formula3::ForallP(v, f) => Formula3::forall(v.clone(), f.substitute(name, by)),
            Formula3::ExistsP(v, f) => Formula3::exists(v.clone(), f.substitute(name, by)),
        }
    }

    /// ∀p-closure over the free variables, outermost quantifier first.
    pub fn universal_closure(&self) -> Formula3 {
        self.free_vars()
            .into_iter()
            .rev()
            .fold(self.clone(), |acc, v| Formula3::forall(v, acc))
    }

    /// Number of subformula occurrences (nodes), counting `self`.
    pub fn node_count(&self) -> usize {
        match self {
            Formula3::TrueC | Formula3::FalseC | Formula3::Eq(..) => 1,
            Formula3::Not(f) | Formula3::ForallP(_, f) | Formula3::ExistsP(_, f) => {
                1 + f.node_count()
            }
            Formula3::SAnd(l, r) | Formula3::SOr(l, r) | Formula3::SImp(l, r) => {
                1 + l.node_count() + r.node_count()
            }
        }
    }

    /// The subformula occurrence at pre-order index `index` (0 is `self`).
    pub fn subformula(&self, index: usize) -> Option<&Formula3> {
        if index == 0 {
            return Some(self);
        }
        let mut rest = index - 1;
        for child in self.children() {
            let n = child.node_count();
            if rest < n {
                return child.subformula(rest);
            }
            rest -= n;
        }
        None
    }

    /// Replaces the single occurrence at pre-order index `index` by `by`.
    pub fn replace_at(&self, index: usize, by: &Formula3) -> Option<Formula3> {
        if index == 0 {
            return Some(by.clone());
        }
        let rest = index - 1;
        match self {
            Formula3::TrueC | Formula3::FalseC | Formula3::Eq(..) => None,
            Formula3::Not(f) => f.replace_at(rest, by).map(Formula3::not),
            Formula3::ForallP(v, f) => f.replace_at(rest, by).map(|f| Formula3::forall(v.clone(), f)),
            Formula3::ExistsP(v, f) => f.replace_at(rest, by).map(|f| Formula3::exists(v.clone(), f)),
            Formula3::SAnd(l, r) | Formula3::SOr(l, r) | Formula3::SImp(l, r) => {
                let n = l.node_count();
                let (nl, nr) = if rest < n {
                    (l.replace_at(rest, by)?, (**r).clone())
                } else {
                    ((**l).clone(), r.replace_at(rest - n, by)?)
                };
                Some(match self {
                    Formula3::SAnd(..) => Formula3::and(nl, nr),
                    Formula3::SOr(..) => Formula3::or(nl, nr),
                    _ => Formula3::imp(nl, nr),
                })
            }
        }
    }

    fn children(&self) -> Vec<&Formula3> {
        match self {
            Formula3::TrueC | Formula3::FalseC | Formula3::Eq(..) => vec![],
            Formula3::Not(f) | Formula3::ForallP(_, f) | Formula3::ExistsP(_, f) => vec![f],
            Formula3::SAnd(l, r) | Formula3::SOr(l, r) | Formula3::SImp(l, r) => vec![l, r],
        }
    }
}

/// An identity `lhs = rhs` between two formulae, judged by equality of status.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EqIdentity {
    pub lhs: Formula3,
    pub rhs: Formula3,
}

impl EqIdentity {
    pub fn new(lhs: Formula3, rhs: Formula3) -> Self {
        EqIdentity { lhs, rhs }
    }

    pub fn free_vars(&self) -> Vec<String> {
        let mut vars = self.lhs.free_vars();
        for v in self.rhs.free_vars() {
            if !vars.contains(&v) {
                vars.push(v);
            }
        }
        vars
    }

    pub fn signature(&self) -> Signature {
        if self.lhs.signature() == Signature::Enlarged || self.rhs.signature() == Signature::Enlarged
        {
            Signature::Enlarged
        } else {
            Signature::Plain
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&super::print_term(self))
    }
}

impl fmt::Display for Formula3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&super::print_formula(self))
    }
}

impl fmt::Display for EqIdentity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) = ({})", self.lhs, self.rhs)
    }
}

impl Serialize for Term {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Term::Zero | Term::One | Term::Bot => {
                let mut st = s.serialize_struct("Term", 1)?;
                let op = match self {
                    Term::Zero => "zero",
                    Term::One => "one",
                    _ => "bot",
                };
                st.serialize_field("op", op)?;
                st.end()
            }
            Term::Var(name) => {
                let mut st = s.serialize_struct("Term", 2)?;
                st.serialize_field("op", "var")?;
                st.serialize_field("name", name)?;
                st.end()
            }
            Term::Neg(t) => {
                let mut st = s.serialize_struct("Term", 2)?;
                st.serialize_field("op", "neg")?;
                st.serialize_field("arg", t)?;
                st.end()
            }
            Term::Add(l, r) | Term::Mul(l, r) | Term::Frac(l, r) => {
                let mut st = s.serialize_struct("Term", 3)?;
                let (op, ln, rn) = match self {
                    Term::Add(..) => ("add", "lhs", "rhs"),
                    Term::Mul(..) => ("mul", "lhs", "rhs"),
                    _ => ("frac", "num", "den"),
                };
                st.serialize_field("op", op)?;
                st.serialize_field(ln, l)?;
                st.serialize_field(rn, r)?;
                st.end()
            }
        }
    }
}

impl Serialize for Formula3 {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Formula3::TrueC | Formula3::FalseC => {
                let mut st = s.serialize_struct("Formula", 1)?;
                st.serialize_field("op", if *self == Formula3::TrueC { "true" } else { "false" })?;
                st.end()
            }
            Formula3::Eq(l, r) => {
                let mut st = s.serialize_struct("Formula", 3)?;
                st.serialize_field("op", "eq")?;
                st.serialize_field("lhs", l)?;
                st.serialize_field("rhs", r)?;
                st.end()
            }
            Formula3::Not(f) => {
                let mut st = s.serialize_struct("Formula", 2)?;
                st.serialize_field("op", "not")?;
                st.serialize_field("arg", f)?;
                st.end()
            }
            Formula3::SAnd(l, r) | Formula3::SOr(l, r) | Formula3::SImp(l, r) => {
                let mut st = s.serialize_struct("Formula", 3)?;
                let op = match self {
                    Formula3::SAnd(..) => "and",
                    Formula3::SOr(..) => "or",
                    _ => "imp",
                };
                st.serialize_field("op", op)?;
                st.serialize_field("lhs", l)?;
                st.serialize_field("rhs", r)?;
                st.end()
            }
            Formula3::ForallP(v, f) | Formula3::ExistsP(v, f) => {
                let mut st = s.serialize_struct("Formula", 3)?;
                let op = if matches!(self, Formula3::ForallP(..)) { "forall" } else { "exists" };
                st.serialize_field("op", op)?;
                st.serialize_field("var", v)?;
                st.serialize_field("body", f)?;
                st.end()
            }
        }
    }
}

impl Serialize for EqIdentity {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("EqIdentity", 2)?;
        st.serialize_field("lhs", &self.lhs)?;
        st.serialize_field("rhs", &self.rhs)?;
        st.end()
    }
}
