//! Concrete partial meadows (rationals, prime fields), their totalisation
//! with `x/0 = 0`, ⊥-enlargements, and term evaluation over them.

mod valuation;
mod value;

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::syntax::Term;

pub use valuation::Valuation;
pub use value::Value;
pub(crate) use value::is_prime;

/// Largest modulus accepted for prime fields.
pub const MAX_MODULUS: u64 = 1 << 31;

/// Magnitude bound for sampled numerators and denominators.
pub const SAMPLE_BOUND: i64 = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Base {
    Rationals,
    Prime(u64),
}

/// A partial meadow, optionally totalised (`x/0 = 0`) and optionally
/// ⊥-enlarged. Totalisation, when present, sits inside the enlargement.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct MeadowStructure {
    base: Base,
    totalised: bool,
    enlarged: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum StructureError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("modulus {0} exceeds 2^31")]
    ModulusTooLarge(u64),
    #[error("structure is already total")]
    AlreadyTotal,
    #[error("structure is already enlarged")]
    AlreadyEnlarged,
    #[error("structure is not enlarged")]
    NotEnlarged,
    #[error("carrier too small")]
    CarrierTooSmall,
    #[error("the carrier of {0} is infinite")]
    InfiniteCarrier(String),
    #[error("bad structure specifier `{0}` (expected q, gf:<p>, tot0:<spec> or enl:<spec>)")]
    BadSpec(String),
    #[error("bad value `{text}` for {structure}")]
    BadValue { text: String, structure: String },
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum EvalError {
    #[error("unbound variable `{0}`")]
    UnboundVariable(String),
    #[error("`bot` can only be evaluated in an enlarged structure")]
    SignatureMismatch,
    #[error("value {value} bound to `{name}` is not in the carrier of {structure}")]
    ForeignValue { name: String, value: Value, structure: String },
}

/// Result of evaluating a term: a value, or undefined (division by zero in a
/// partial structure).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum EvalResult {
    Defined(Value),
    Undefined,
}

impl EvalResult {
    pub fn value(&self) -> Option<&Value> {
        match self {
            EvalResult::Defined(v) => Some(v),
            EvalResult::Undefined => None,
        }
    }

    pub fn is_defined(&self) -> bool {
        matches!(self, EvalResult::Defined(_))
    }
}

impl fmt::Display for EvalResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EvalResult::Defined(v) => write!(f, "{v}"),
            EvalResult::Undefined => f.write_str("undefined"),
        }
    }
}

impl MeadowStructure {
    pub fn rationals() -> Self {
        MeadowStructure { base: Base::Rationals, totalised: false, enlarged: false }
    }

    pub fn gf(p: u64) -> Result<Self, StructureError> {
        if p > MAX_MODULUS {
            return Err(StructureError::ModulusTooLarge(p));
        }
        if !is_prime(p) {
            return Err(StructureError::NotPrime(p));
        }
        Ok(MeadowStructure { base: Base::Prime(p), totalised: false, enlarged: false })
    }

    /// Suppes-Ono totalisation: same carrier, `x/0 = 0`.
    pub fn tot0(&self) -> Result<Self, StructureError> {
        if self.totalised || self.enlarged {
            return Err(StructureError::AlreadyTotal);
        }
        Ok(MeadowStructure { totalised: true, ..*self })
    }

    pub fn enl(&self) -> Result<Self, StructureError> {
        if self.enlarged {
            return Err(StructureError::AlreadyEnlarged);
        }
        Ok(MeadowStructure { enlarged: true, ..*self })
    }

    /// Removes ⊥ again, making the operations that produced it partial.
    pub fn pdt(&self) -> Result<Self, StructureError> {
        if !self.enlarged {
            return Err(StructureError::NotEnlarged);
        }
        if self.carrier_size().is_some_and(|n| n < 2) {
            return Err(StructureError::CarrierTooSmall);
        }
        Ok(MeadowStructure { enlarged: false, ..*self })
    }

    pub fn base(&self) -> Base {
        self.base
    }

    pub fn is_enlarged(&self) -> bool {
        self.enlarged
    }

    pub fn is_totalised(&self) -> bool {
        self.totalised
    }

    /// Division is total (totalised or enlarged).
    pub fn is_total(&self) -> bool {
        self.totalised || self.enlarged
    }

    pub fn modulus(&self) -> Option<u64> {
        match self.base {
            Base::Prime(p) => Some(p),
            Base::Rationals => None,
        }
    }

    pub fn is_finite(&self) -> bool {
        self.modulus().is_some()
    }

    /// Number of carrier elements, ⊥ included; `None` when infinite.
    pub fn carrier_size(&self) -> Option<usize> {
        self.modulus().map(|p| p as usize + usize::from(self.enlarged))
    }

    /// Carrier elements in canonical order: residues ascending, ⊥ last.
    pub fn carrier(&self) -> Result<Vec<Value>, StructureError> {
        let p = self.modulus().ok_or_else(|| StructureError::InfiniteCarrier(self.to_string()))?;
        let mut out: Vec<Value> = (0..p).map(|r| Value::Fp { residue: r, modulus: p }).collect();
        if self.enlarged {
            out.push(Value::Bot);
        }
        Ok(out)
    }

    /// Carrier without ⊥.
    pub fn proper_carrier(&self) -> Result<Vec<Value>, StructureError> {
        let mut c = self.carrier()?;
        c.retain(|v| !v.is_bot());
        Ok(c)
    }

    pub fn contains(&self, v: &Value) -> bool {
        match (v, self.base) {
            (Value::Bot, _) => self.enlarged,
            (Value::Rat(_), Base::Rationals) => true,
            (Value::Fp { residue, modulus }, Base::Prime(p)) => *modulus == p && *residue < p,
            _ => false,
        }
    }

    pub fn zero(&self) -> Value {
        match self.base {
            Base::Rationals => Value::Rat(BigRational::zero()),
            Base::Prime(p) => Value::Fp { residue: 0, modulus: p },
        }
    }

    pub fn one(&self) -> Value {
        match self.base {
            Base::Rationals => Value::int(1),
            Base::Prime(p) => Value::Fp { residue: 1 % p, modulus: p },
        }
    }

    pub fn neg(&self, a: &Value) -> Value {
        match a {
            Value::Rat(x) => Value::Rat(-x),
            Value::Fp { residue, modulus } => Value::Fp { residue: (modulus - residue) % modulus, modulus: *modulus },
            Value::Bot => Value::Bot,
        }
    }

    pub fn add(&self, a: &Value, b: &Value) -> Value {
        match (a, b) {
            (Value::Rat(x), Value::Rat(y)) => Value::Rat(x + y),
            (Value::Fp { residue: x, modulus: p }, Value::Fp { residue: y, .. }) => {
                Value::Fp { residue: (x + y) % p, modulus: *p }
            }
            _ => Value::Bot,
        }
    }

    pub fn mul(&self, a: &Value, b: &Value) -> Value {
        match (a, b) {
            (Value::Rat(x), Value::Rat(y)) => Value::Rat(x * y),
            (Value::Fp { residue: x, modulus: p }, Value::Fp { residue: y, .. }) => {
                Value::Fp { residue: x * y % p, modulus: *p }
            }
            _ => Value::Bot,
        }
    }

    /// `None` exactly when the quotient is undefined in this structure.
    pub fn div(&self, a: &Value, b: &Value) -> Option<Value> {
        if a.is_bot() || b.is_bot() {
            return Some(Value::Bot);
        }
        if b.is_zero() {
            return if self.totalised {
                Some(self.zero())
            } else if self.enlarged {
                Some(Value::Bot)
            } else {
                None
            };
        }
        Some(match (a, b) {
            (Value::Rat(x), Value::Rat(y)) => Value::Rat(x / y),
            (Value::Fp { residue: x, modulus: p }, Value::Fp { residue: y, .. }) => {
                Value::Fp { residue: x * value::pow_mod(*y, p - 2, *p) % p, modulus: *p }
            }
            _ => unreachable!("mixed carriers"),
        })
    }

    /// Strict bottom-up evaluation of `t` under `sigma`.
    pub fn eval_term(&self, sigma: &Valuation, t: &Term) -> Result<EvalResult, EvalError> {
        Ok(match self.eval_opt(sigma, t)? {
            Some(v) => EvalResult::Defined(v),
            None => EvalResult::Undefined,
        })
    }

    pub(crate) fn eval_opt(&self, sigma: &Valuation, t: &Term) -> Result<Option<Value>, EvalError> {
        Ok(match t {
            Term::Zero => Some(self.zero()),
            Term::One => Some(self.one()),
            Term::Bot => {
                if !self.enlarged {
                    return Err(EvalError::SignatureMismatch);
                }
                Some(Value::Bot)
            }
            Term::Var(name) => {
                let v = sigma.get(name).ok_or_else(|| EvalError::UnboundVariable(name.clone()))?;
                if !self.contains(v) {
                    return Err(EvalError::ForeignValue {
                        name: name.clone(),
                        value: v.clone(),
                        structure: self.to_string(),
                    });
                }
                Some(v.clone())
            }
            Term::Neg(a) => self.eval_opt(sigma, a)?.map(|a| self.neg(&a)),
            Term::Add(a, b) | Term::Mul(a, b) | Term::Frac(a, b) => {
                let a = self.eval_opt(sigma, a)?;
                let b = self.eval_opt(sigma, b)?;
                match (a, b) {
                    (Some(a), Some(b)) => match t {
                        Term::Add(..) => Some(self.add(&a, &b)),
                        Term::Mul(..) => Some(self.mul(&a, &b)),
                        _ => self.div(&a, &b),
                    },
                    _ => None,
                }
            }
        })
    }

    /// Every assignment of carrier elements to `vars`. The first variable
    /// varies fastest.
    pub fn enumerate_valuations(&self, vars: &[String]) -> Result<Valuations, StructureError> {
        Ok(Valuations::new(vars.to_vec(), self.carrier()?))
    }

    /// Like [`enumerate_valuations`](Self::enumerate_valuations) but never
    /// assigns ⊥.
    pub fn enumerate_proper_valuations(&self, vars: &[String]) -> Result<Valuations, StructureError> {
        Ok(Valuations::new(vars.to_vec(), self.proper_carrier()?))
    }

    /// `n` pseudo-random valuations, reproducible from `seed`.
    pub fn sample_valuations(&self, vars: &[String], n: usize, seed: u64) -> Samples {
        Samples { structure: *self, vars: vars.to_vec(), rng: ChaCha8Rng::seed_from_u64(seed), left: n }
    }

    fn sample_value(&self, rng: &mut ChaCha8Rng) -> Value {
        match self.base {
            Base::Rationals => {
                if self.enlarged && rng.gen_ratio(1, 16) {
                    return Value::Bot;
                }
                if rng.gen_ratio(1, 8) {
                    return self.zero();
                }
                let num = rng.gen_range(-SAMPLE_BOUND..=SAMPLE_BOUND);
                let den = rng.gen_range(1..=SAMPLE_BOUND);
                Value::Rat(BigRational::new(BigInt::from(num), BigInt::from(den)))
            }
            Base::Prime(p) => {
                let size = p + u64::from(self.enlarged);
                let i = rng.gen_range(0..size);
                if i == p {
                    Value::Bot
                } else {
                    Value::Fp { residue: i, modulus: p }
                }
            }
        }
    }

    /// Parses a carrier element: `bot` (enlarged only), an integer, or for
    /// the rationals `a/b`. Integers are reduced modulo p in prime fields.
    pub fn parse_value(&self, text: &str) -> Result<Value, StructureError> {
        let bad = || StructureError::BadValue { text: text.to_string(), structure: self.to_string() };
        let text = text.trim();
        if text == "bot" {
            return if self.enlarged { Ok(Value::Bot) } else { Err(bad()) };
        }
        match self.base {
            Base::Rationals => {
                let (n, d) = match text.split_once('/') {
                    Some((n, d)) => (n.trim(), d.trim()),
                    None => (text, "1"),
                };
                let n: BigInt = n.parse().map_err(|_| bad())?;
                let d: BigInt = d.parse().map_err(|_| bad())?;
                if d.is_zero() {
                    return Err(bad());
                }
                Ok(Value::Rat(BigRational::new(n, d)))
            }
            Base::Prime(p) => {
                let n: BigInt = text.parse().map_err(|_| bad())?;
                let r = ((n % BigInt::from(p)) + BigInt::from(p)) % BigInt::from(p);
                let r: u64 = r.abs().try_into().map_err(|_| bad())?;
                Ok(Value::Fp { residue: r, modulus: p })
            }
        }
    }
}

impl fmt::Display for MeadowStructure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.enlarged {
            f.write_str("enl:")?;
        }
        if self.totalised {
            f.write_str("tot0:")?;
        }
        match self.base {
            Base::Rationals => f.write_str("q"),
            Base::Prime(p) => write!(f, "gf:{p}"),
        }
    }
}

impl FromStr for MeadowStructure {
    type Err = StructureError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if let Some(rest) = s.strip_prefix("enl:") {
            return rest.parse::<MeadowStructure>()?.enl();
        }
        if let Some(rest) = s.strip_prefix("tot0:") {
            return rest.parse::<MeadowStructure>()?.tot0();
        }
        if s == "q" {
            return Ok(MeadowStructure::rationals());
        }
        if let Some(p) = s.strip_prefix("gf:") {
            let p: u64 = p.parse().map_err(|_| StructureError::BadSpec(s.to_string()))?;
            return MeadowStructure::gf(p);
        }
        Err(StructureError::BadSpec(s.to_string()))
    }
}

/// Odometer over all assignments of a finite carrier.
#[derive(Debug, Clone)]
pub struct Valuations {
    vars: Vec<String>,
    carrier: Vec<Value>,
    digits: Vec<usize>,
    done: bool,
}

impl Valuations {
    fn new(vars: Vec<String>, carrier: Vec<Value>) -> Self {
        let done = carrier.is_empty() && !vars.is_empty();
        Valuations { digits: vec![0; vars.len()], vars, carrier, done }
    }

    /// Total number of valuations this stream yields from the start.
    pub fn total(&self) -> usize {
        self.carrier.len().pow(self.vars.len() as u32)
    }
}

impl Iterator for Valuations {
    type Item = Valuation;

    fn next(&mut self) -> Option<Valuation> {
        if self.done {
            return None;
        }
        let v: Valuation = self
            .vars
            .iter()
            .zip(&self.digits)
            .map(|(name, &d)| (name.clone(), self.carrier[d].clone()))
            .collect();
        self.done = true;
        for d in self.digits.iter_mut() {
            *d += 1;
            if *d < self.carrier.len() {
                self.done = false;
                break;
            }
            *d = 0;
        }
        Some(v)
    }
}

/// Seeded stream of sampled valuations.
#[derive(Debug, Clone)]
pub struct Samples {
    structure: MeadowStructure,
    vars: Vec<String>,
    rng: ChaCha8Rng,
    left: usize,
}

impl Iterator for Samples {
    type Item = Valuation;

    fn next(&mut self) -> Option<Valuation> {
        if self.left == 0 {
            return None;
        }
        self.left -= 1;
        let mut v = Valuation::new();
        for name in &self.vars {
            v.set(name.clone(), self.structure.sample_value(&mut self.rng));
        }
        Some(v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::{parse_term, Signature};

    fn ev(s: &MeadowStructure, sigma: &Valuation, text: &str) -> EvalResult {
        let t = parse_term(text, Signature::Enlarged).unwrap();
        s.eval_term(sigma, &t).unwrap()
    }

    fn gf(p: u64) -> MeadowStructure {
        MeadowStructure::gf(p).unwrap()
    }

    #[test]
    fn one_over_zero_undefined_in_rationals() {
        let q = MeadowStructure::rationals();
        assert_eq!(ev(&q, &Valuation::new(), "1/0"), EvalResult::Undefined);
        assert_eq!(ev(&q, &Valuation::new(), "(1/0)*0"), EvalResult::Undefined);
        let half = ev(&q, &Valuation::new(), "1/(1+1)");
        assert_eq!(half, EvalResult::Defined(Value::rat(1, 2)));
    }

    #[test]
    fn self_division_in_gf7() {
        let s = gf(7);
        let sigma = Valuation::new().with("x", Value::fp(3, 7));
        assert_eq!(ev(&s, &sigma, "x/x"), EvalResult::Defined(Value::fp(1, 7)));
    }

    #[test]
    fn enlarged_absorbs() {
        let s = gf(3).enl().unwrap();
        let sigma = Valuation::new().with("x", Value::fp(2, 3));
        assert_eq!(ev(&s, &sigma, "x + bot"), EvalResult::Defined(Value::Bot));
        assert_eq!(ev(&s, &sigma, "1/0"), EvalResult::Defined(Value::Bot));
        assert_eq!(ev(&s, &sigma, "0*(1/0)"), EvalResult::Defined(Value::Bot));
    }

    #[test]
    fn absorption_is_exhaustive() {
        for p in [2, 3, 5, 7] {
            let s = gf(p).enl().unwrap();
            for x in s.carrier().unwrap() {
                let b = Value::Bot;
                assert_eq!(s.neg(&b), b);
                assert_eq!(s.add(&x, &b), b);
                assert_eq!(s.add(&b, &x), b);
                assert_eq!(s.mul(&x, &b), b);
                assert_eq!(s.mul(&b, &x), b);
                assert_eq!(s.div(&x, &b), Some(b.clone()));
                assert_eq!(s.div(&b, &x), Some(b.clone()));
            }
        }
    }

    #[test]
    fn totalisation() {
        let s = gf(5).tot0().unwrap();
        let e = Valuation::new();
        assert_eq!(ev(&s, &e, "1/0"), EvalResult::Defined(Value::fp(0, 5)));
        assert_eq!(ev(&s, &e, "2/3"), EvalResult::Defined(Value::fp(4, 5)));
        assert_eq!(s.tot0(), Err(StructureError::AlreadyTotal));
        assert_eq!(gf(5).enl().unwrap().tot0(), Err(StructureError::AlreadyTotal));
        let q0 = MeadowStructure::rationals().tot0().unwrap();
        assert_eq!(ev(&q0, &e, "(1+1)/0"), EvalResult::Defined(Value::int(0)));
    }

    #[test]
    fn enlargement_round_trips() {
        for p in [2, 3, 5] {
            let s = gf(p);
            assert_eq!(s.enl().unwrap().pdt().unwrap(), s);
            let e = s.enl().unwrap();
            assert_eq!(e.pdt().unwrap().enl().unwrap(), e);
        }
        let e2 = gf(2).enl().unwrap();
        assert_eq!(
            e2.carrier().unwrap(),
            vec![Value::fp(0, 2), Value::fp(1, 2), Value::Bot]
        );
        assert_eq!(e2.enl(), Err(StructureError::AlreadyEnlarged));
        assert_eq!(gf(2).pdt(), Err(StructureError::NotEnlarged));
        let q = MeadowStructure::rationals().enl().unwrap().pdt().unwrap();
        assert_eq!(ev(&q, &Valuation::new(), "1/0"), EvalResult::Undefined);
    }

    #[test]
    fn enlargement_of_totalisation_divides_to_zero() {
        let s = gf(3).tot0().unwrap().enl().unwrap();
        assert_eq!(s.to_string(), "enl:tot0:gf:3");
        assert_eq!(ev(&s, &Valuation::new(), "1/0"), EvalResult::Defined(Value::fp(0, 3)));
        assert_eq!(ev(&s, &Valuation::new(), "1/bot"), EvalResult::Defined(Value::Bot));
    }

    #[test]
    fn primes_only() {
        assert_eq!(MeadowStructure::gf(4), Err(StructureError::NotPrime(4)));
        assert_eq!(MeadowStructure::gf(1), Err(StructureError::NotPrime(1)));
        assert!(matches!(MeadowStructure::gf((1 << 31) + 11), Err(StructureError::ModulusTooLarge(_))));
        assert!(MeadowStructure::gf(2_147_483_647).is_ok());
    }

    #[test]
    fn large_prime_division() {
        let p = 2_147_483_647;
        let s = gf(p);
        let a = Value::fp(p - 1, p);
        let inv = s.div(&s.one(), &a).unwrap();
        assert_eq!(s.mul(&inv, &a), s.one());
    }

    #[test]
    fn spec_strings() {
        for spec in ["q", "gf:7", "tot0:gf:5", "enl:gf:7", "enl:q", "tot0:q", "enl:tot0:gf:2"] {
            let s: MeadowStructure = spec.parse().unwrap();
            assert_eq!(s.to_string(), spec);
        }
        assert!("gf:x".parse::<MeadowStructure>().is_err());
        assert!("tot0:enl:gf:3".parse::<MeadowStructure>().is_err());
        assert!("enl:enl:gf:3".parse::<MeadowStructure>().is_err());
        assert!("r".parse::<MeadowStructure>().is_err());
    }

    #[test]
    fn errors() {
        let s = gf(3);
        let t = parse_term("x + y", Signature::Plain).unwrap();
        let sigma = Valuation::new().with("x", Value::fp(1, 3));
        assert_eq!(s.eval_term(&sigma, &t), Err(EvalError::UnboundVariable("y".into())));
        let b = parse_term("bot", Signature::Enlarged).unwrap();
        assert_eq!(s.eval_term(&sigma, &b), Err(EvalError::SignatureMismatch));
        let bad = Valuation::new().with("x", Value::Bot).with("y", Value::fp(0, 3));
        assert!(matches!(s.eval_term(&bad, &t), Err(EvalError::ForeignValue { .. })));
        let wrong = Valuation::new().with("x", Value::fp(1, 5)).with("y", Value::fp(0, 3));
        assert!(matches!(s.eval_term(&wrong, &t), Err(EvalError::ForeignValue { .. })));
    }

    #[test]
    fn enumeration_counts_and_order() {
        let s = gf(3);
        let vars = vec!["x".to_string(), "y".to_string()];
        let all: Vec<Valuation> = s.enumerate_valuations(&vars).unwrap().collect();
        assert_eq!(all.len(), 9);
        assert_eq!(all[1].to_string(), "x=1, y=0");
        assert_eq!(all[3].to_string(), "x=0, y=1");
        let mut dedup = all.clone();
        dedup.dedup();
        assert_eq!(dedup.len(), 9);
        let none: Vec<Valuation> = gf(2).enumerate_valuations(&[]).unwrap().collect();
        assert_eq!(none, vec![Valuation::new()]);
        assert!(matches!(
            MeadowStructure::rationals().enumerate_valuations(&["x".to_string()]),
            Err(StructureError::InfiniteCarrier(_))
        ));
        let e: Vec<Valuation> = gf(2).enl().unwrap().enumerate_valuations(&vars[..1]).unwrap().collect();
        assert_eq!(e.last().unwrap().get("x"), Some(&Value::Bot));
        assert_eq!(gf(5).enl().unwrap().enumerate_valuations(&vars).unwrap().total(), 36);
    }

    #[test]
    fn sampling_is_reproducible() {
        let q = MeadowStructure::rationals();
        let vars = vec!["x".to_string()];
        let a: Vec<Valuation> = q.sample_valuations(&vars, 3, 1).collect();
        let b: Vec<Valuation> = q.sample_valuations(&vars, 3, 1).collect();
        assert_eq!(a.len(), 3);
        assert_eq!(a, b);
        let c: Vec<Valuation> = gf(5).sample_valuations(&vars, 10, 0).collect();
        assert_eq!(c.len(), 10);
        assert!(c.iter().all(|v| gf(5).contains(v.get("x").unwrap())));
    }

    #[test]
    fn sampled_rationals_hit_zero_and_negatives() {
        let q = MeadowStructure::rationals();
        let vars = vec!["x".to_string()];
        let vals: Vec<Value> = q.sample_valuations(&vars, 2000, 9).map(|v| v.get("x").unwrap().clone()).collect();
        let zeros = vals.iter().filter(|v| v.is_zero()).count();
        assert!(zeros >= 2000 / 16, "{zeros}");
        assert!(vals.iter().any(|v| matches!(v, Value::Rat(r) if r.is_negative())));
        for v in &vals {
            if let Value::Rat(r) = v {
                assert!(r.numer().abs() <= BigInt::from(SAMPLE_BOUND));
                assert!(*r.denom() >= BigInt::from(1) && *r.denom() <= BigInt::from(SAMPLE_BOUND));
            }
        }
    }

    #[test]
    fn value_parsing() {
        let q = MeadowStructure::rationals();
        assert_eq!(q.parse_value("-2/4").unwrap(), Value::rat(-1, 2));
        assert_eq!(q.parse_value("5").unwrap(), Value::int(5));
        assert!(q.parse_value("1/0").is_err());
        assert!(q.parse_value("bot").is_err());
        let g = gf(5);
        assert_eq!(g.parse_value("7").unwrap(), Value::fp(2, 5));
        assert_eq!(g.parse_value("-1").unwrap(), Value::fp(4, 5));
        assert_eq!(g.enl().unwrap().parse_value("bot").unwrap(), Value::Bot);
        assert_eq!(Value::rat(3, -6).to_string(), "-1/2");
    }
}
