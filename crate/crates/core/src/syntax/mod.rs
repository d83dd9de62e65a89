//! Terms and sequential formulae over the partial-meadow signature:
//! abstract syntax, a recursive-descent parser and a printer whose output
//! parses back to the same tree.

mod ast;
pub(crate) mod lexer;
mod parser;
mod printer;

pub use ast::{EqIdentity, Formula3, Signature, Term};
pub use parser::{
    parse_formula, parse_identity, parse_term, ParseError, SignatureError, SyntaxError,
    MAX_LITERAL, RESERVED,
};
pub use printer::{print_formula, print_term};
