use std::fmt::{self, Write};

use super::formula::{Formula, Term};

// Context levels: a quantifier body or the top of a formula, an operand of
// `|`, an operand of `&` or `~`.
const TOP: u8 = 0;
const DISJUNCT: u8 = 1;
const UNIT: u8 = 2;

/// Canonical rendering; re-parses to the same AST for every parser-producible
/// formula. Element constants print as `@k`, which the parser rejects.
pub fn render_formula(f: &Formula) -> String {
    f.to_string()
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Var(v) => write!(f, "{v}"),
            Term::Elem(e) => write!(f, "@{e}"),
        }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_at(self, TOP, f)
    }
}

fn write_at(node: &Formula, level: u8, out: &mut impl Write) -> fmt::Result {
    match node {
        Formula::True => out.write_str("true"),
        Formula::False => out.write_str("false"),
        Formula::Atom(a) => {
            write!(out, "{}(", a.relation)?;
            for (i, t) in a.args.iter().enumerate() {
                if i > 0 {
                    out.write_char(',')?;
                }
                write!(out, "{t}")?;
            }
            out.write_char(')')
        }
        Formula::Not(c) => {
            out.write_char('~')?;
            write_at(c, UNIT, out)
        }
        Formula::Exists(v, b) | Formula::Forall(v, b) => {
            let kw = if matches!(node, Formula::Exists(..)) {
                "exists"
            } else {
                "forall"
            };
            paren(level > TOP, out, |out| {
                write!(out, "{kw} {v}. ")?;
                write_at(b, TOP, out)
            })
        }
        Formula::Or(cs) => match cs.len() {
            0 => out.write_str("false"),
            1 => write_at(&cs[0], level, out),
            _ => paren(level > TOP, out, |out| {
                for (i, c) in cs.iter().enumerate() {
                    if i > 0 {
                        out.write_str(" | ")?;
                    }
                    write_at(c, DISJUNCT, out)?;
                }
                Ok(())
            }),
        },
        // `&` binds tighter than `|`, but a conjunction under a disjunction
        // is still parenthesized for readability.
        Formula::And(cs) => match cs.len() {
            0 => out.write_str("true"),
            1 => write_at(&cs[0], level, out),
            _ => paren(level > TOP, out, |out| {
                for (i, c) in cs.iter().enumerate() {
                    if i > 0 {
                        out.write_str(" & ")?;
                    }
                    write_at(c, UNIT, out)?;
                }
                Ok(())
            }),
        },
    }
}

fn paren<W: Write>(wrap: bool, out: &mut W, body: impl FnOnce(&mut W) -> fmt::Result) -> fmt::Result {
    if wrap {
        out.write_char('(')?;
        body(out)?;
        out.write_char(')')
    } else {
        body(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::{parse_formula, Fragment, Signature};

    #[test]
    fn renders_quantifiers_and_atoms() {
        let f = Formula::forall("x", Formula::atom("E", &["x", "x"]));
        assert_eq!(render_formula(&f), "forall x. E(x,x)");
    }

    #[test]
    fn conjunction_under_disjunction_is_parenthesized() {
        let f = Formula::Or(vec![
            Formula::And(vec![Formula::atom("A", &["x"]), Formula::atom("B", &["x"])]),
            Formula::atom("C", &["x"]),
        ]);
        assert_eq!(render_formula(&f), "(A(x) & B(x)) | C(x)");
    }

    #[test]
    fn nested_same_connective_survives_round_trip() {
        let sig = Signature::digraph();
        let f = Formula::And(vec![
            Formula::atom("E", &["x", "y"]),
            Formula::And(vec![Formula::atom("E", &["y", "x"]), Formula::atom("E", &["x", "x"])]),
            Formula::not(Formula::Or(vec![Formula::True, Formula::False])),
            Formula::exists("z", Formula::atom("E", &["z", "z"])),
        ]);
        let text = render_formula(&f);
        assert_eq!(
            text,
            "E(x,y) & (E(y,x) & E(x,x)) & ~(true | false) & (exists z. E(z,z))"
        );
        assert_eq!(parse_formula(&text, &sig, Fragment::EQUALITY_FREE).unwrap(), f);
    }

    #[test]
    fn degenerate_connectives() {
        assert_eq!(render_formula(&Formula::And(vec![])), "true");
        assert_eq!(render_formula(&Formula::Or(vec![])), "false");
    }
}
