use super::{BotworldError, FolEvaluator, FolFormula};
use crate::semantics::{satisfy, TriStatus};
use crate::structures::{MeadowStructure, Valuation};
use crate::syntax::{Formula3, Signature, Term};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PsiMode {
    True,
    False,
}

/// Which rule set the translation follows.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum PsiRules {
    /// `ψ_false(t = r)` also requires both sides to be defined, and the
    /// definedness conjunct of the quantifier rules is guarded by `x ≠ ⊥`.
    /// With these rules a formula is undefined exactly when neither image
    /// holds.
    #[default]
    Strict,
    /// `ψ_false(t = r) ≡ t = ⊥ ∨ r = ⊥ ∨ t ≠ r` and an unguarded definedness
    /// conjunct. Here `ψ_false` is the classical negation of `ψ_true` on
    /// atoms, so undefined atoms under `¬` come out true.
    Published,
}

fn not_bot(t: &Term) -> FolFormula {
    FolFormula::neq(t.clone(), Term::Bot)
}

fn is_bot(t: &Term) -> FolFormula {
    FolFormula::eq(t.clone(), Term::Bot)
}

struct Psi {
    rules: PsiRules,
}

impl Psi {
    fn tr(&self, f: &Formula3) -> FolFormula {
        match f {
            Formula3::TrueC => FolFormula::TrueC,
            Formula3::FalseC => FolFormula::FalseC,
            Formula3::Eq(t, r) => FolFormula::and(
                FolFormula::and(not_bot(t), not_bot(r)),
                FolFormula::eq(t.clone(), r.clone()),
            ),
            Formula3::Not(g) => self.fa(g),
            Formula3::SOr(a, b) => {
                FolFormula::or(self.tr(a), FolFormula::and(self.fa(a), self.tr(b)))
            }
            Formula3::SAnd(a, b) => FolFormula::and(self.tr(a), self.tr(b)),
            // φ₁ → φ₂ is ¬φ₁ ∨ φ₂.
            Formula3::SImp(a, b) => {
                FolFormula::or(self.fa(a), FolFormula::and(self.tr(a), self.tr(b)))
            }
            Formula3::ForallP(x, g) => {
                FolFormula::forall(x.clone(), FolFormula::imp(not_bot(&Term::var(x)), self.tr(g)))
            }
            Formula3::ExistsP(x, g) => FolFormula::and(
                FolFormula::exists(
                    x.clone(),
                    FolFormula::and(not_bot(&Term::var(x)), self.tr(g)),
                ),
                self.defined_everywhere(x, g),
            ),
        }
    }

    fn fa(&self, f: &Formula3) -> FolFormula {
        match f {
            Formula3::TrueC => FolFormula::FalseC,
            Formula3::FalseC => FolFormula::TrueC,
            Formula3::Eq(t, r) => match self.rules {
                PsiRules::Strict => FolFormula::and(
                    FolFormula::and(not_bot(t), not_bot(r)),
                    FolFormula::neq(t.clone(), r.clone()),
                ),
                PsiRules::Published => FolFormula::or(
                    FolFormula::or(is_bot(t), is_bot(r)),
                    FolFormula::neq(t.clone(), r.clone()),
                ),
            },
            Formula3::Not(g) => self.tr(g),
            Formula3::SOr(a, b) => FolFormula::and(self.fa(a), self.fa(b)),
            Formula3::SAnd(a, b) => {
                FolFormula::or(self.fa(a), FolFormula::and(self.tr(a), self.fa(b)))
            }
            Formula3::SImp(a, b) => FolFormula::and(self.tr(a), self.fa(b)),
            Formula3::ForallP(x, g) => FolFormula::and(
                FolFormula::exists(
                    x.clone(),
                    FolFormula::and(not_bot(&Term::var(x)), self.fa(g)),
                ),
                self.defined_everywhere(x, g),
            ),
            Formula3::ExistsP(x, g) => {
                FolFormula::forall(x.clone(), FolFormula::imp(not_bot(&Term::var(x)), self.fa(g)))
            }
        }
    }

    /// `∀x.ψ_true(φ ∨ ¬φ)`: φ is defined for every value of `x`.
    fn defined_everywhere(&self, x: &str, g: &Formula3) -> FolFormula {
        let em = self.tr(&Formula3::or(g.clone(), Formula3::not(g.clone())));
        match self.rules {
            PsiRules::Strict => FolFormula::forall(x, FolFormula::imp(not_bot(&Term::var(x)), em)),
            PsiRules::Published => FolFormula::forall(x, em),
        }
    }
}

/// Translates a sequential formula of the plain signature into classical
/// logic over the signature with ⊥.
pub fn psi(mode: PsiMode, f: &Formula3, rules: PsiRules) -> Result<FolFormula, BotworldError> {
    if f.signature() != Signature::Plain {
        return Err(BotworldError::SignatureMismatch);
    }
    let p = Psi { rules };
    Ok(match mode {
        PsiMode::True => p.tr(f),
        PsiMode::False => p.fa(f),
    })
}

pub fn psi_true(f: &Formula3) -> Result<FolFormula, BotworldError> {
    psi(PsiMode::True, f, PsiRules::Strict)
}

pub fn psi_false(f: &Formula3) -> Result<FolFormula, BotworldError> {
    psi(PsiMode::False, f, PsiRules::Strict)
}

/// Status of a formula in a partial meadow next to the truth of its two
/// images in the enlargement, under one valuation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Correspondence {
    pub status: TriStatus,
    pub psi_true: bool,
    pub psi_false: bool,
}

impl Correspondence {
    /// Holds iff ψ_true, denial-holds iff ψ_false, undefined iff neither.
    pub fn ok(&self) -> bool {
        match self.status {
            TriStatus::Holds => self.psi_true && !self.psi_false,
            TriStatus::DenialHolds => self.psi_false && !self.psi_true,
            TriStatus::Undefined => !self.psi_true && !self.psi_false,
        }
    }
}

pub fn correspondence(
    s: &MeadowStructure,
    f: &Formula3,
    sigma: &Valuation,
    rules: PsiRules,
) -> Result<Correspondence, BotworldError> {
    if s.is_enlarged() {
        return Err(crate::structures::StructureError::AlreadyEnlarged.into());
    }
    let status = satisfy(s, sigma, f)?;
    let e = s.enl()?;
    let ev = FolEvaluator::new(&e)?;
    let mut sigma = sigma.clone();
    let psi_true = ev.eval(&mut sigma, &psi(PsiMode::True, f, rules)?)?;
    let psi_false = ev.eval(&mut sigma, &psi(PsiMode::False, f, rules)?)?;
    Ok(Correspondence { status, psi_true, psi_false })
}

/// The three biconditionals linking `satisfy` in `s` with the ψ images in
/// the enlargement of `s`, for the strict rules.
pub fn check_correspondence(s: &MeadowStructure, f: &Formula3, sigma: &Valuation) -> Result<bool, BotworldError> {
    Ok(correspondence(s, f, sigma, PsiRules::Strict)?.ok())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::botworld::{check_fol_valid, eval_fol};
    use crate::random::{FormulaGen, TermGen};
    use crate::structures::Value;
    use crate::syntax::parse_formula;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn f(s: &str) -> Formula3 {
        parse_formula(s, Signature::Plain).unwrap()
    }

    fn gf(p: u64) -> MeadowStructure {
        MeadowStructure::gf(p).unwrap()
    }

    fn sigma(pairs: &[(&str, Value)]) -> Valuation {
        pairs.iter().map(|(k, v)| (k.to_string(), v.clone())).collect()
    }

    #[test]
    fn atom_and_quantifier_shapes() {
        assert_eq!(psi_true(&f("x == y")).unwrap().to_string(), "x != bot && y != bot && x == y");
        assert_eq!(psi_true(&f("T")).unwrap(), FolFormula::TrueC);
        assert_eq!(
            psi_true(&f("forall x. x == 0")).unwrap().to_string(),
            "forall x. (x != bot -> x != bot && 0 != bot && x == 0)"
        );
        assert_eq!(psi_true(&f("x != y")).unwrap().to_string(), "x != bot && y != bot && x != y");
        let published = psi(PsiMode::True, &f("x != y"), PsiRules::Published).unwrap();
        assert_eq!(published.to_string(), "x == bot || y == bot || x != y");
    }

    #[test]
    fn exists_gets_a_definedness_conjunct() {
        let g = psi_true(&f("exists x. x == 1")).unwrap();
        assert_eq!(
            g.to_string(),
            "(exists x. (x != bot && (x != bot && 1 != bot && x == 1))) && \
             (forall x. (x != bot -> x != bot && 1 != bot && x == 1 || \
             x != bot && 1 != bot && x != 1 && (x != bot && 1 != bot && x != 1)))"
        );
    }

    #[test]
    fn bot_is_rejected() {
        let g = parse_formula("x == bot", Signature::Enlarged).unwrap();
        assert_eq!(psi_true(&g), Err(BotworldError::SignatureMismatch));
    }

    #[test]
    fn examples() {
        let s = gf(3);
        let e = s.enl().unwrap();
        let empty = Valuation::new();
        assert!(!eval_fol(&e, &empty, &psi_true(&f("1/0 == 1/0")).unwrap()).unwrap());
        let zero = sigma(&[("x", Value::fp(0, 3))]);
        let c = correspondence(&s, &f("x/x == 1"), &zero, PsiRules::Strict).unwrap();
        assert_eq!(c, Correspondence { status: TriStatus::Undefined, psi_true: false, psi_false: false });
        assert!(check_correspondence(&s, &f("0 != 1"), &zero).unwrap());
        assert!(check_correspondence(&gf(2), &f("forall x. x == 0 || x != 0"), &empty).unwrap());
    }

    #[test]
    fn published_rules_break_on_undefined_negations() {
        let s = gf(3);
        let c = correspondence(&s, &f("1/0 != 1"), &Valuation::new(), PsiRules::Published).unwrap();
        assert_eq!(c.status, TriStatus::Undefined);
        assert!(c.psi_true);
        assert!(!c.ok());
        assert!(check_correspondence(&s, &f("1/0 != 1"), &Valuation::new()).unwrap());
    }

    #[test]
    fn rule_sets_agree_on_division_free_formulae() {
        let s = gf(3);
        let e = s.enl().unwrap();
        let gen = FormulaGen::new(TermGen::new(&["x", "y"], 2).division_free(), 3, 1);
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for _ in 0..200 {
            let g = gen.generate(&mut rng);
            for mode in [PsiMode::True, PsiMode::False] {
                let a = psi(mode, &g, PsiRules::Strict).unwrap();
                let b = psi(mode, &g, PsiRules::Published).unwrap();
                for sg in s.enumerate_valuations(&g.free_vars()).unwrap() {
                    assert_eq!(eval_fol(&e, &sg, &a).unwrap(), eval_fol(&e, &sg, &b).unwrap(), "{g}");
                }
            }
        }
    }

    #[test]
    fn random_correspondence_gf2() {
        let s = gf(2);
        let gen = FormulaGen::new(TermGen::new(&["x", "y"], 2), 4, 2);
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..300 {
            let g = gen.generate(&mut rng);
            for sg in s.enumerate_valuations(&g.free_vars()).unwrap() {
                let c = correspondence(&s, &g, &sg, PsiRules::Strict).unwrap();
                assert!(c.ok(), "{g} at {sg}: {c:?}");
            }
        }
    }

    #[test]
    fn validity_transfers_to_the_enlargement() {
        let s = gf(3);
        let e = s.enl().unwrap();
        for (src, valid) in [("x != 0 -> x/x == 1", true), ("x/x == 1", false), ("forall x. x*0 == 0", true)] {
            let g = f(src);
            let img = psi_true(&g).unwrap();
            assert_eq!(check_fol_valid(&e, &img, true).unwrap().is_valid(), valid, "{src}");
        }
    }
}
