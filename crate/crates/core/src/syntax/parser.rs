use std::collections::BTreeSet;
use std::fmt;

use super::ast::{EqIdentity, Formula3, Signature, Term};
use super::lexer::{tokenize, Spanned, Tok};

/// Largest integer literal accepted; literals desugar to terms of linear size.
pub const MAX_LITERAL: u64 = 10_000;

pub const RESERVED: [&str; 5] = ["T", "F", "forall", "exists", "bot"];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub expected: Vec<String>,
    pub found: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "parse error at {}:{}: ", self.line, self.column)?;
        match self.expected.len() {
            0 => write!(f, "unexpected {}", self.found),
            1 => write!(f, "expected {}, found {}", self.expected[0], self.found),
            _ => write!(f, "expected one of {}, found {}", self.expected.join(", "), self.found),
        }
    }
}

impl std::error::Error for ParseError {}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignatureError {
    pub line: usize,
    pub column: usize,
}

impl fmt::Display for SignatureError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "signature error at {}:{}: `bot` is only available in the enlarged signature",
            self.line, self.column
        )
    }
}

impl std::error::Error for SignatureError {}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SyntaxError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Signature(#[from] SignatureError),
}

pub fn parse_term(text: &str, sig: Signature) -> Result<Term, SyntaxError> {
    let mut p = Parser::new(text, sig)?;
    let t = p.run(|p| p.term())?;
    p.finish()?;
    Ok(t)
}

pub fn parse_formula(text: &str, sig: Signature) -> Result<Formula3, SyntaxError> {
    let mut p = Parser::new(text, sig)?;
    let f = p.run(|p| p.formula())?;
    p.finish()?;
    Ok(f)
}

/// Parses `lhs = rhs`, an identity between two formulae.
pub fn parse_identity(text: &str, sig: Signature) -> Result<EqIdentity, SyntaxError> {
    let mut p = Parser::new(text, sig)?;
    let lhs = p.run(|p| p.formula())?;
    p.run(|p| p.expect(Tok::Assign, "`=`"))?;
    let rhs = p.run(|p| p.formula())?;
    p.finish()?;
    Ok(EqIdentity::new(lhs, rhs))
}

#[derive(Debug)]
enum Failure {
    Syntax,
    Signature(SignatureError),
}

type PResult<T> = Result<T, Failure>;

struct Parser {
    toks: Vec<Spanned>,
    pos: usize,
    sig: Signature,
    furthest: usize,
    expected: BTreeSet<String>,
}

impl Parser {
    fn new(text: &str, sig: Signature) -> Result<Self, SyntaxError> {
        let toks = tokenize(text).map_err(|e| ParseError {
            line: e.line,
            column: e.column,
            expected: vec![],
            found: e.found,
        })?;
        Ok(Parser { toks, pos: 0, sig, furthest: 0, expected: BTreeSet::new() })
    }

    fn run<T>(&mut self, f: impl FnOnce(&mut Self) -> PResult<T>) -> Result<T, SyntaxError> {
        f(self).map_err(|e| self.to_error(e))
    }

    fn finish(&mut self) -> Result<(), SyntaxError> {
        if self.peek() == &Tok::Eof {
            Ok(())
        } else {
            let e = self.fail("end of input");
            Err(self.to_error(e))
        }
    }

    fn to_error(&self, f: Failure) -> SyntaxError {
        match f {
            Failure::Signature(e) => SyntaxError::Signature(e),
            Failure::Syntax => {
                let at = &self.toks[self.furthest];
                SyntaxError::Parse(ParseError {
                    line: at.line,
                    column: at.column,
                    expected: self.expected.iter().cloned().collect(),
                    found: at.tok.to_string(),
                })
            }
        }
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].tok.clone();
        if t != Tok::Eof {
            self.pos += 1;
        }
        t
    }

    fn fail(&mut self, what: &str) -> Failure {
        if self.pos > self.furthest {
            self.furthest = self.pos;
            self.expected.clear();
        }
        if self.pos == self.furthest {
            self.expected.insert(what.to_string());
        }
        Failure::Syntax
    }

    fn expect(&mut self, tok: Tok, what: &str) -> PResult<()> {
        if *self.peek() == tok {
            self.bump();
            Ok(())
        } else {
            Err(self.fail(what))
        }
    }

    fn eat(&mut self, tok: &Tok) -> bool {
        if self.peek() == tok {
            self.bump();
            true
        } else {
            false
        }
    }

    // term := mul {("+"|"-") mul}
    fn term(&mut self) -> PResult<Term> {
        let mut acc = self.mul()?;
        loop {
            if self.eat(&Tok::Plus) {
                acc = Term::add(acc, self.mul()?);
            } else if self.eat(&Tok::Minus) {
                acc = Term::add(acc, Term::neg(self.mul()?));
            } else {
                return Ok(acc);
            }
        }
    }

    fn mul(&mut self) -> PResult<Term> {
        let mut acc = self.unary()?;
        loop {
            if self.eat(&Tok::Star) {
                acc = Term::mul(acc, self.unary()?);
            } else if self.eat(&Tok::Slash) {
                acc = Term::frac(acc, self.unary()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> PResult<Term> {
        if self.eat(&Tok::Minus) {
            return Ok(Term::neg(self.unary()?));
        }
        self.atom()
    }

    fn atom(&mut self) -> PResult<Term> {
        let at = self.pos;
        match self.peek().clone() {
            Tok::LParen => {
                self.bump();
                let t = self.term()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(t)
            }
            Tok::Num(digits) => {
                let n = digits.parse::<u64>().ok().filter(|n| *n <= MAX_LITERAL);
                match n {
                    Some(n) => {
                        self.bump();
                        Ok(Term::numeral(n))
                    }
                    None => Err(self.fail(&format!("integer literal at most {MAX_LITERAL}"))),
                }
            }
            Tok::Ident(name) if name == "bot" => {
                if self.sig == Signature::Plain {
                    let s = &self.toks[at];
                    return Err(Failure::Signature(SignatureError { line: s.line, column: s.column }));
                }
                self.bump();
                Ok(Term::Bot)
            }
            Tok::Ident(name) if !RESERVED.contains(&name.as_str()) => {
                self.bump();
                Ok(Term::Var(name))
            }
            _ => Err(self.fail("term")),
        }
    }

    fn formula(&mut self) -> PResult<Formula3> {
        let quant = match self.peek() {
            Tok::Ident(k) if k == "forall" => Some(true),
            Tok::Ident(k) if k == "exists" => Some(false),
            _ => None,
        };
        match quant {
            Some(universal) => {
                self.bump();
                let v = match self.peek().clone() {
                    Tok::Ident(v) if !RESERVED.contains(&v.as_str()) => {
                        self.bump();
                        v
                    }
                    _ => return Err(self.fail("variable")),
                };
                self.expect(Tok::Dot, "`.`")?;
                let body = self.formula()?;
                Ok(if universal { Formula3::forall(v, body) } else { Formula3::exists(v, body) })
            }
            None => self.imp(),
        }
    }

    fn imp(&mut self) -> PResult<Formula3> {
        let l = self.or()?;
        if self.eat(&Tok::Arrow) {
            let r = self.imp()?;
            return Ok(Formula3::imp(l, r));
        }
        Ok(l)
    }

    fn or(&mut self) -> PResult<Formula3> {
        let mut acc = self.and()?;
        while self.eat(&Tok::OrOr) {
            acc = Formula3::or(acc, self.and()?);
        }
        Ok(acc)
    }

    fn and(&mut self) -> PResult<Formula3> {
        let mut acc = self.lit()?;
        while self.eat(&Tok::AndAnd) {
            acc = Formula3::and(acc, self.lit()?);
        }
        Ok(acc)
    }

    fn lit(&mut self) -> PResult<Formula3> {
        match self.peek().clone() {
            Tok::Bang => {
                self.bump();
                Ok(Formula3::not(self.lit()?))
            }
            Tok::Ident(k) if k == "T" => {
                self.bump();
                Ok(Formula3::TrueC)
            }
            Tok::Ident(k) if k == "F" => {
                self.bump();
                Ok(Formula3::FalseC)
            }
            Tok::LParen => {
                // A parenthesis may open either a term or a formula; try the
                // comparison first and fall back to a parenthesised formula.
                let start = self.pos;
                match self.comparison() {
                    Ok(f) => Ok(f),
                    Err(Failure::Signature(e)) => Err(Failure::Signature(e)),
                    Err(Failure::Syntax) => {
                        self.pos = start;
                        self.bump();
                        let f = self.formula()?;
                        self.expect(Tok::RParen, "`)`")?;
                        Ok(f)
                    }
                }
            }
            _ => self.comparison(),
        }
    }

    fn comparison(&mut self) -> PResult<Formula3> {
        let l = self.term()?;
        if self.eat(&Tok::EqEq) {
            Ok(Formula3::eq(l, self.term()?))
        } else if self.eat(&Tok::NotEq) {
            Ok(Formula3::neq(l, self.term()?))
        } else {
            self.fail("`==`");
            Err(self.fail("`!=`"))
        }
    }
}
