//! A deliberately naive second implementation of the semantics, used as an
//! oracle: residues mod p as plain integers, `None` for undefined, ⊥ as a
//! separate variant, truth tables written out case by case.

#![allow(dead_code)]

use std::collections::HashMap;

use meadow::botworld::FolFormula;
use meadow::structures::Value;
use meadow::syntax::{Formula3, Term};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Tri {
    T,
    F,
    U,
}

/// Element of an enlarged carrier.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum E {
    N(u64),
    Bot,
}

#[derive(Debug, Clone, Copy)]
pub struct Field {
    pub p: u64,
    /// x/0 = 0 instead of undefined.
    pub tot0: bool,
}

impl Field {
    pub fn partial(p: u64) -> Self {
        Field { p, tot0: false }
    }

    pub fn tot0(p: u64) -> Self {
        Field { p, tot0: true }
    }

    /// Inverse by trial, independent of any exponentiation trick.
    pub fn inv(&self, a: u64) -> Option<u64> {
        (1..self.p).find(|b| (a * b) % self.p == 1)
    }

    pub fn term(&self, env: &HashMap<String, u64>, t: &Term) -> Option<u64> {
        let p = self.p;
        match t {
            Term::Zero => Some(0),
            Term::One => Some(1 % p),
            Term::Bot => panic!("bot in a partial term"),
            Term::Var(x) => Some(env[x]),
            Term::Neg(a) => Some((p - self.term(env, a)?) % p),
            Term::Add(a, b) => Some((self.term(env, a)? + self.term(env, b)?) % p),
            Term::Mul(a, b) => Some((self.term(env, a)? * self.term(env, b)?) % p),
            Term::Frac(a, b) => {
                let n = self.term(env, a)?;
                let d = self.term(env, b)?;
                if d == 0 {
                    if self.tot0 {
                        Some(0)
                    } else {
                        None
                    }
                } else {
                    Some(n * self.inv(d)? % p)
                }
            }
        }
    }

    pub fn formula(&self, env: &mut HashMap<String, u64>, f: &Formula3) -> Tri {
        match f {
            Formula3::TrueC => Tri::T,
            Formula3::FalseC => Tri::F,
            Formula3::Eq(a, b) => match (self.term(env, a), self.term(env, b)) {
                (Some(x), Some(y)) if x == y => Tri::T,
                (Some(_), Some(_)) => Tri::F,
                _ => Tri::U,
            },
            Formula3::Not(g) => match self.formula(env, g) {
                Tri::T => Tri::F,
                Tri::F => Tri::T,
                Tri::U => Tri::U,
            },
            Formula3::SAnd(a, b) => match self.formula(env, a) {
                Tri::T => self.formula(env, b),
                Tri::F => Tri::F,
                Tri::U => Tri::U,
            },
            Formula3::SOr(a, b) => match self.formula(env, a) {
                Tri::T => Tri::T,
                Tri::F => self.formula(env, b),
                Tri::U => Tri::U,
            },
            Formula3::SImp(a, b) => match self.formula(env, a) {
                Tri::T => self.formula(env, b),
                Tri::F => Tri::T,
                Tri::U => Tri::U,
            },
            Formula3::ForallP(x, g) | Formula3::ExistsP(x, g) => {
                let outer = env.get(x).copied();
                let mut seen = Vec::new();
                for b in 0..self.p {
                    env.insert(x.clone(), b);
                    seen.push(self.formula(env, g));
                }
                match outer {
                    Some(v) => env.insert(x.clone(), v),
                    None => env.remove(x),
                };
                let universal = matches!(f, Formula3::ForallP(..));
                if seen.contains(&Tri::U) {
                    Tri::U
                } else if universal {
                    if seen.contains(&Tri::F) {
                        Tri::F
                    } else {
                        Tri::T
                    }
                } else if seen.contains(&Tri::T) {
                    Tri::T
                } else {
                    Tri::F
                }
            }
        }
    }

    /// Evaluation in the ⊥-enlargement: ⊥ absorbs, x/0 = ⊥.
    pub fn eterm(&self, env: &HashMap<String, E>, t: &Term) -> E {
        let p = self.p;
        let bin = |a: E, b: E, f: &dyn Fn(u64, u64) -> E| match (a, b) {
            (E::N(x), E::N(y)) => f(x, y),
            _ => E::Bot,
        };
        match t {
            Term::Zero => E::N(0),
            Term::One => E::N(1 % p),
            Term::Bot => E::Bot,
            Term::Var(x) => env[x],
            Term::Neg(a) => match self.eterm(env, a) {
                E::N(x) => E::N((p - x) % p),
                E::Bot => E::Bot,
            },
            Term::Add(a, b) => bin(self.eterm(env, a), self.eterm(env, b), &|x, y| E::N((x + y) % p)),
            Term::Mul(a, b) => bin(self.eterm(env, a), self.eterm(env, b), &|x, y| E::N(x * y % p)),
            Term::Frac(a, b) => bin(self.eterm(env, a), self.eterm(env, b), &|x, y| {
                if y == 0 {
                    if self.tot0 {
                        E::N(0)
                    } else {
                        E::Bot
                    }
                } else {
                    E::N(x * self.inv(y).unwrap() % p)
                }
            }),
        }
    }

    /// Classical truth in the enlargement; quantifiers include ⊥.
    pub fn fol(&self, env: &mut HashMap<String, E>, f: &FolFormula) -> bool {
        match f {
            FolFormula::TrueC => true,
            FolFormula::FalseC => false,
            FolFormula::Eq(a, b) => self.eterm(env, a) == self.eterm(env, b),
            FolFormula::Neq(a, b) => self.eterm(env, a) != self.eterm(env, b),
            FolFormula::Not(g) => !self.fol(env, g),
            FolFormula::And(a, b) => {
                let x = self.fol(env, a);
                let y = self.fol(env, b);
                x && y
            }
            FolFormula::Or(a, b) => {
                let x = self.fol(env, a);
                let y = self.fol(env, b);
                x || y
            }
            FolFormula::Impl(a, b) => {
                let x = self.fol(env, a);
                let y = self.fol(env, b);
                !x || y
            }
            FolFormula::Forall(x, g) | FolFormula::Exists(x, g) => {
                let outer = env.get(x).copied();
                let mut all = true;
                let mut any = false;
                for b in self.ecarrier() {
                    env.insert(x.clone(), b);
                    let v = self.fol(env, g);
                    all &= v;
                    any |= v;
                }
                match outer {
                    Some(v) => env.insert(x.clone(), v),
                    None => env.remove(x),
                };
                if matches!(f, FolFormula::Forall(..)) {
                    all
                } else {
                    any
                }
            }
        }
    }

    pub fn ecarrier(&self) -> Vec<E> {
        (0..self.p).map(E::N).chain([E::Bot]).collect()
    }

    /// All assignments of `vars` to residues.
    pub fn envs(&self, vars: &[String]) -> Vec<HashMap<String, u64>> {
        let mut out = vec![HashMap::new()];
        for v in vars {
            out = out
                .into_iter()
                .flat_map(|m| {
                    (0..self.p).map(move |b| {
                        let mut m = m.clone();
                        m.insert(v.clone(), b);
                        m
                    })
                })
                .collect();
        }
        out
    }

    /// All assignments of `vars` into the enlarged carrier.
    pub fn eenvs(&self, vars: &[String]) -> Vec<HashMap<String, E>> {
        let mut out = vec![HashMap::new()];
        for v in vars {
            out = out
                .into_iter()
                .flat_map(|m| {
                    self.ecarrier().into_iter().map(move |b| {
                        let mut m = m.clone();
                        m.insert(v.clone(), b);
                        m
                    })
                })
                .collect();
        }
        out
    }

    /// Validity by the oracle: holds under every assignment.
    pub fn valid(&self, f: &Formula3) -> bool {
        self.envs(&f.free_vars()).into_iter().all(|mut env| self.formula(&mut env, f) == Tri::T)
    }
}

/// Residue assignment as a library valuation over gf:p.
pub fn valuation(env: &HashMap<String, u64>, order: &[String], p: u64) -> meadow::structures::Valuation {
    order.iter().map(|v| (v.clone(), Value::fp(env[v], p))).collect()
}

pub fn evaluation(env: &HashMap<String, E>, order: &[String], p: u64) -> meadow::structures::Valuation {
    order
        .iter()
        .map(|v| {
            let x = match env[v] {
                E::N(r) => Value::fp(r, p),
                E::Bot => Value::Bot,
            };
            (v.clone(), x)
        })
        .collect()
}

pub fn tri_of(s: meadow::semantics::TriStatus) -> Tri {
    match s {
        meadow::semantics::TriStatus::Holds => Tri::T,
        meadow::semantics::TriStatus::DenialHolds => Tri::F,
        meadow::semantics::TriStatus::Undefined => Tri::U,
    }
}
