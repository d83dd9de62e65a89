//! Conditional fracterm flattening: every term `t` comes with a division-free
//! guard `s` and a flat fracterm `p/q` such that `t` equals `p/q` wherever `s`
//! is nonzero, and `t` is undefined wherever `s` is zero.
//!
//! The construction is the structural induction, applied literally. Nothing
//! is simplified, so guards grow quickly with depth; [`simplify_units`] is a
//! display aid only.

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::syntax::Term;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FlattenError {
    #[error("`bot` cannot be flattened: the term is not in the plain signature")]
    SignatureMismatch,
}

/// Guard and flat fracterm `numerator/denominator`, all three division-free.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FlatteningResult {
    pub guard: Term,
    pub numerator: Term,
    pub denominator: Term,
}

impl FlatteningResult {
    pub fn fracterm(&self) -> Term {
        Term::frac(self.numerator.clone(), self.denominator.clone())
    }

    /// `(p*s)/(q*s)`: equal to the input term under every valuation,
    /// undefinedness included.
    pub fn guarded_fracterm(&self) -> Term {
        Term::frac(
            Term::mul(self.numerator.clone(), self.guard.clone()),
            Term::mul(self.denominator.clone(), self.guard.clone()),
        )
    }

    /// Same result with unit factors and zero summands cancelled.
    pub fn simplified(&self) -> FlatteningResult {
        FlatteningResult {
            guard: simplify_units(&self.guard),
            numerator: simplify_units(&self.numerator),
            denominator: simplify_units(&self.denominator),
        }
    }
}

impl fmt::Display for FlatteningResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "guard: {}", self.guard)?;
        write!(f, "fracterm: {}", self.fracterm())
    }
}

pub fn flatten(t: &Term) -> Result<FlatteningResult, FlattenError> {
    let (guard, numerator, denominator) = go(t)?;
    Ok(FlatteningResult { guard, numerator, denominator })
}

fn go(t: &Term) -> Result<(Term, Term, Term), FlattenError> {
    Ok(match t {
        Term::Bot => return Err(FlattenError::SignatureMismatch),
        Term::Zero | Term::One | Term::Var(_) => (Term::One, t.clone(), Term::One),
        Term::Neg(u) => {
            let (s, n, d) = go(u)?;
            (s, Term::neg(n), d)
        }
        Term::Add(u, v) => {
            let (su, nu, du) = go(u)?;
            let (sv, nv, dv) = go(v)?;
            (
                Term::mul(su, sv),
                Term::add(Term::mul(nu, dv.clone()), Term::mul(du.clone(), nv)),
                Term::mul(du, dv),
            )
        }
        Term::Mul(u, v) => {
            let (su, nu, du) = go(u)?;
            let (sv, nv, dv) = go(v)?;
            (Term::mul(su, sv), Term::mul(nu, nv), Term::mul(du, dv))
        }
        Term::Frac(u, v) => {
            let (su, nu, du) = go(u)?;
            let (sv, nv, dv) = go(v)?;
            (
                Term::mul(Term::mul(su, sv), nv.clone()),
                Term::mul(nu, dv),
                Term::mul(du, nv),
            )
        }
    })
}

/// The term `(p*s)/(q*s)` built from the flattening of `t`.
pub fn prop34_fracterm(t: &Term) -> Result<Term, FlattenError> {
    Ok(flatten(t)?.guarded_fracterm())
}

/// Cancels `1*u`, `u*1`, `0+u` and `u+0` bottom-up. Only sound on
/// division-free terms, where every subterm is defined.
pub fn simplify_units(t: &Term) -> Term {
    match t {
        Term::Zero | Term::One | Term::Bot | Term::Var(_) => t.clone(),
        Term::Neg(u) => Term::neg(simplify_units(u)),
        Term::Add(u, v) => match (simplify_units(u), simplify_units(v)) {
            (Term::Zero, w) | (w, Term::Zero) => w,
            (a, b) => Term::add(a, b),
        },
        Term::Mul(u, v) => match (simplify_units(u), simplify_units(v)) {
            (Term::One, w) | (w, Term::One) => w,
            (a, b) => Term::mul(a, b),
        },
        Term::Frac(u, v) => Term::frac(simplify_units(u), simplify_units(v)),
    }
}
