use super::ast::{Formula3, Term};

/// Prints a term in the concrete syntax accepted by `parse_term`.
///
/// Literals are not re-sugared, and an operand of a binary operator is
/// parenthesised whenever it is itself a binary operation.
pub fn print_term(t: &Term) -> String {
    let mut out = String::new();
    write_term(t, &mut out);
    out
}

pub(crate) fn is_binary(t: &Term) -> bool {
    matches!(t, Term::Add(..) | Term::Mul(..) | Term::Frac(..))
}

fn write_term(t: &Term, out: &mut String) {
    match t {
        Term::Zero => out.push('0'),
        Term::One => out.push('1'),
        Term::Bot => out.push_str("bot"),
        Term::Var(v) => out.push_str(v),
        Term::Neg(inner) => {
            out.push('-');
            if is_binary(inner) {
                out.push('(');
                write_term(inner, out);
                out.push(')');
            } else {
                write_term(inner, out);
            }
        }
        Term::Add(l, r) | Term::Mul(l, r) | Term::Frac(l, r) => {
            write_operand(l, out);
            out.push(match t {
                Term::Add(..) => '+',
                Term::Mul(..) => '*',
                _ => '/',
            });
            write_operand(r, out);
        }
    }
}

fn write_operand(t: &Term, out: &mut String) {
    if is_binary(t) {
        out.push('(');
        write_term(t, out);
        out.push(')');
    } else {
        write_term(t, out);
    }
}

fn level(f: &Formula3) -> u8 {
    match f {
        Formula3::ForallP(..) | Formula3::ExistsP(..) => 0,
        Formula3::SImp(..) => 1,
        Formula3::SOr(..) => 2,
        Formula3::SAnd(..) => 3,
        _ => 4,
    }
}

/// Prints a formula with the fewest parentheses the grammar needs.
pub fn print_formula(f: &Formula3) -> String {
    let mut out = String::new();
    write_formula(f, 0, &mut out);
    out
}

fn write_formula(f: &Formula3, min: u8, out: &mut String) {
    if level(f) < min {
        out.push('(');
        write_formula(f, 0, out);
        out.push(')');
        return;
    }
    match f {
        Formula3::TrueC => out.push('T'),
        Formula3::FalseC => out.push('F'),
        Formula3::Eq(l, r) => {
            write_term(l, out);
            out.push_str(" == ");
            write_term(r, out);
        }
        Formula3::Not(inner) => match &**inner {
            Formula3::Eq(l, r) => {
                write_term(l, out);
                out.push_str(" != ");
                write_term(r, out);
            }
            g => {
                out.push('!');
                write_formula(g, 4, out);
            }
        },
        Formula3::SAnd(l, r) => {
            write_formula(l, 3, out);
            out.push_str(" && ");
            write_formula(r, 4, out);
        }
        Formula3::SOr(l, r) => {
            write_formula(l, 2, out);
            out.push_str(" || ");
            write_formula(r, 3, out);
        }
        Formula3::SImp(l, r) => {
            write_formula(l, 2, out);
            out.push_str(" -> ");
            write_formula(r, 1, out);
        }
        Formula3::ForallP(v, body) | Formula3::ExistsP(v, body) => {
            out.push_str(if matches!(f, Formula3::ForallP(..)) { "forall " } else { "exists " });
            out.push_str(v);
            out.push_str(". ");
            write_formula(body, 0, out);
        }
    }
}
