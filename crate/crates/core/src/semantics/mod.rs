//! Three-valued satisfaction of sequential formulae in partial meadows,
//! identity checking between formulae, and validity over finite (or
//! sampled) structures.

mod report;
mod soundness;
mod suites;

use std::fmt;

use serde::{Serialize, Serializer};

use crate::structures::{EvalError, MeadowStructure, StructureError, Valuation, Value};
use crate::syntax::{EqIdentity, Formula3, Signature};
use crate::trivalent::{tri_and, tri_imp, tri_not, tri_or, TriValue};

pub use report::{EntryVerdict, SuiteEntry, SuiteReport, Witness};
pub use soundness::{run_soundness_suite, SoundnessConfig};
pub use suites::{
    assertion_formulas, check_totalisation_invariance, ftcpm_closed, ftcpm_formulas,
    four_squares, run_axiom_suite, run_invariance_suite, SuiteName, UnknownSuite,
};

/// Satisfaction status of a formula under a valuation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TriStatus {
    Holds,
    DenialHolds,
    Undefined,
}

impl TriStatus {
    pub fn to_tri(self) -> TriValue {
        match self {
            TriStatus::Holds => TriValue::TT,
            TriStatus::DenialHolds => TriValue::FF,
            TriStatus::Undefined => TriValue::UU,
        }
    }

    pub fn from_tri(v: TriValue) -> TriStatus {
        match v {
            TriValue::TT => TriStatus::Holds,
            TriValue::FF => TriStatus::DenialHolds,
            TriValue::UU => TriStatus::Undefined,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            TriStatus::Holds => "holds",
            TriStatus::DenialHolds => "denial-holds",
            TriStatus::Undefined => "undefined",
        }
    }
}

impl fmt::Display for TriStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl Serialize for TriStatus {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SemanticsError {
    #[error("quantifier over the infinite carrier of {0}")]
    InfiniteCarrier(String),
    #[error("validity over {0} needs sampling parameters")]
    NeedsSampling(String),
    #[error("three-valued satisfaction is not defined on the enlarged structure {0}")]
    EnlargedStructure(String),
    #[error(transparent)]
    Eval(#[from] EvalError),
    #[error(transparent)]
    Structure(#[from] StructureError),
}

/// Parameters for checking validity by sampling an infinite carrier.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Sampling {
    pub samples: usize,
    pub seed: u64,
}

/// Outcome of a validity check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Valid,
    /// First valuation (in enumeration or sampling order) where the formula
    /// does not hold.
    Refuted { witness: Valuation, status: TriStatus },
    /// Every sampled valuation satisfied the formula.
    SampledClean { samples: usize, seed: u64 },
}

impl Verdict {
    pub fn is_refuted(&self) -> bool {
        matches!(self, Verdict::Refuted { .. })
    }

    pub fn is_valid(&self) -> bool {
        matches!(self, Verdict::Valid)
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Valid => f.write_str("valid"),
            Verdict::Refuted { witness, status } => write!(f, "refuted ({status}) at {witness}"),
            Verdict::SampledClean { samples, seed } => {
                write!(f, "sampled-clean ({samples} samples, seed {seed})")
            }
        }
    }
}

/// Outcome of checking an identity `lhs = rhs` between formulae.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IdentityVerdict {
    Valid,
    Refuted { witness: Valuation, lhs: TriStatus, rhs: TriStatus },
    SampledClean { samples: usize, seed: u64 },
}

impl IdentityVerdict {
    pub fn is_refuted(&self) -> bool {
        matches!(self, IdentityVerdict::Refuted { .. })
    }
}

impl fmt::Display for IdentityVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IdentityVerdict::Valid => f.write_str("valid"),
            IdentityVerdict::Refuted { witness, lhs, rhs } => {
                write!(f, "refuted at {witness}: left {lhs}, right {rhs}")
            }
            IdentityVerdict::SampledClean { samples, seed } => {
                write!(f, "sampled-clean ({samples} samples, seed {seed})")
            }
        }
    }
}

pub(crate) fn check_structure(s: &MeadowStructure, f: &Formula3) -> Result<(), SemanticsError> {
    if s.is_enlarged() {
        return Err(SemanticsError::EnlargedStructure(s.to_string()));
    }
    if f.signature() == Signature::Enlarged {
        return Err(EvalError::SignatureMismatch.into());
    }
    if !s.is_finite() && !f.is_quantifier_free() {
        return Err(SemanticsError::InfiniteCarrier(s.to_string()));
    }
    Ok(())
}

fn check_bound(sigma: &Valuation, f: &Formula3) -> Result<(), SemanticsError> {
    for v in f.free_vars() {
        if sigma.get(&v).is_none() {
            return Err(EvalError::UnboundVariable(v).into());
        }
    }
    Ok(())
}

/// The status of `phi` in `s` under `sigma`.
pub fn satisfy(
    s: &MeadowStructure,
    sigma: &Valuation,
    phi: &Formula3,
) -> Result<TriStatus, SemanticsError> {
    check_structure(s, phi)?;
    check_bound(sigma, phi)?;
    Evaluator::new(s).status(&mut sigma.clone(), phi)
}

/// Whether both sides of the identity have the same status under `sigma`.
pub fn eq_identity(
    s: &MeadowStructure,
    sigma: &Valuation,
    id: &EqIdentity,
) -> Result<bool, SemanticsError> {
    Ok(satisfy(s, sigma, &id.lhs)? == satisfy(s, sigma, &id.rhs)?)
}

/// Evaluator with the carrier cached for repeated quantifier expansion.
pub(crate) struct Evaluator<'a> {
    s: &'a MeadowStructure,
    carrier: Vec<Value>,
}

impl<'a> Evaluator<'a> {
    pub(crate) fn new(s: &'a MeadowStructure) -> Self {
        Evaluator { s, carrier: s.carrier().unwrap_or_default() }
    }

    pub(crate) fn status(
        &self,
        sigma: &mut Valuation,
        phi: &Formula3,
    ) -> Result<TriStatus, SemanticsError> {
        Ok(TriStatus::from_tri(self.tri(sigma, phi)?))
    }

    fn tri(&self, sigma: &mut Valuation, phi: &Formula3) -> Result<TriValue, SemanticsError> {
        Ok(match phi {
            Formula3::TrueC => TriValue::TT,
            Formula3::FalseC => TriValue::FF,
            Formula3::Eq(l, r) => {
                let a = self.s.eval_opt(sigma, l)?;
                let b = self.s.eval_opt(sigma, r)?;
                match (a, b) {
                    (Some(a), Some(b)) if a == b => TriValue::TT,
                    (Some(_), Some(_)) => TriValue::FF,
                    _ => TriValue::UU,
                }
            }
            Formula3::Not(f) => tri_not(self.tri(sigma, f)?),
            // Sequential connectives: the right operand is only consulted
            // when the left one does not decide the result.
            Formula3::SAnd(l, r) => match self.tri(sigma, l)? {
                TriValue::TT => self.tri(sigma, r)?,
                other => tri_and(other, TriValue::UU),
            },
            Formula3::SOr(l, r) => match self.tri(sigma, l)? {
                TriValue::FF => self.tri(sigma, r)?,
                other => tri_or(other, TriValue::UU),
            },
            Formula3::SImp(l, r) => match self.tri(sigma, l)? {
                TriValue::TT => self.tri(sigma, r)?,
                other => tri_imp(other, TriValue::UU),
            },
            Formula3::ForallP(x, body) => self.forall(sigma, x, body, false)?,
            // ∃x.φ is read as ¬∀x.¬φ.
            Formula3::ExistsP(x, body) => tri_not(self.forall(sigma, x, body, true)?),
        })
    }

    /// `∀x.φ`, or `∀x.¬φ` when `negate` is set: undefined as soon as one
    /// instance is undefined, otherwise false if one instance is false.
    fn forall(
        &self,
        sigma: &mut Valuation,
        x: &str,
        body: &Formula3,
        negate: bool,
    ) -> Result<TriValue, SemanticsError> {
        if !self.s.is_finite() {
            return Err(SemanticsError::InfiniteCarrier(self.s.to_string()));
        }
        let mut acc = TriValue::TT;
        for b in &self.carrier {
            let v = sigma.scoped(x, b.clone(), |sigma| self.tri(sigma, body))?;
            let v = if negate { tri_not(v) } else { v };
            match v {
                TriValue::UU => return Ok(TriValue::UU),
                TriValue::FF => acc = TriValue::FF,
                TriValue::TT => {}
            }
        }
        Ok(acc)
    }
}

/// Checks that `phi` holds under every valuation of its free variables.
///
/// Finite structures are enumerated exhaustively; infinite ones need
/// `sampling`, and then a clean run is reported as `SampledClean`.
pub fn check_valid(
    s: &MeadowStructure,
    phi: &Formula3,
    sampling: Option<Sampling>,
) -> Result<Verdict, SemanticsError> {
    check_structure(s, phi)?;
    let vars = phi.free_vars();
    let ev = Evaluator::new(s);
    let (stream, sampled): (Box<dyn Iterator<Item = Valuation>>, _) = if vars.is_empty() {
        (Box::new(std::iter::once(Valuation::new())), None)
    } else if s.is_finite() {
        (Box::new(s.enumerate_valuations(&vars)?), None)
    } else {
        let sp = sampling.ok_or_else(|| SemanticsError::NeedsSampling(s.to_string()))?;
        (Box::new(s.sample_valuations(&vars, sp.samples, sp.seed)), Some(sp))
    };
    for mut sigma in stream {
        let status = ev.status(&mut sigma, phi)?;
        if status != TriStatus::Holds {
            return Ok(Verdict::Refuted { witness: sigma, status });
        }
    }
    Ok(match sampled {
        None => Verdict::Valid,
        Some(sp) => Verdict::SampledClean { samples: sp.samples, seed: sp.seed },
    })
}

/// Checks an identity under every valuation of the free variables of both sides.
pub fn check_identity(
    s: &MeadowStructure,
    id: &EqIdentity,
    sampling: Option<Sampling>,
) -> Result<IdentityVerdict, SemanticsError> {
    check_structure(s, &id.lhs)?;
    check_structure(s, &id.rhs)?;
    let vars = id.free_vars();
    let ev = Evaluator::new(s);
    let (stream, sampled): (Box<dyn Iterator<Item = Valuation>>, _) = if vars.is_empty() {
        (Box::new(std::iter::once(Valuation::new())), None)
    } else if s.is_finite() {
        (Box::new(s.enumerate_valuations(&vars)?), None)
    } else {
        let sp = sampling.ok_or_else(|| SemanticsError::NeedsSampling(s.to_string()))?;
        (Box::new(s.sample_valuations(&vars, sp.samples, sp.seed)), Some(sp))
    };
    for mut sigma in stream {
        let lhs = ev.status(&mut sigma, &id.lhs)?;
        let rhs = ev.status(&mut sigma, &id.rhs)?;
        if lhs != rhs {
            return Ok(IdentityVerdict::Refuted { witness: sigma, lhs, rhs });
        }
    }
    Ok(match sampled {
        None => IdentityVerdict::Valid,
        Some(sp) => IdentityVerdict::SampledClean { samples: sp.samples, seed: sp.seed },
    })
}
