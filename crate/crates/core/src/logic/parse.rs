//! Recursive-descent parser for the formula grammar:
//!
//! ```text
//! formula := quant | disj
//! quant   := ("forall" | "exists") IDENT "." formula
//! disj    := conj ("|" conj)*
//! conj    := unit ("&" unit)*
//! unit    := atom | "~" unit | "(" formula ")" | "true" | "false"
//! atom    := IDENT "(" IDENT ("," IDENT)* ")"
//! ```
//!
//! `#` starts a comment running to the end of the line.

use thiserror::Error;

use super::formula::{Atom, Formula, Fragment, Term, Var};
use super::signature::Signature;

const KEYWORDS: [&str; 4] = ["forall", "exists", "true", "false"];

pub(crate) fn is_keyword(s: &str) -> bool {
    KEYWORDS.contains(&s)
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        offset: usize,
        line: usize,
        column: usize,
        message: String,
    },
    #[error("unknown relation `{name}` at line {line}, column {column}")]
    UnknownRelation { name: String, line: usize, column: usize },
    #[error("arity mismatch for `{name}` at line {line}, column {column}: expected {expected}, found {found}")]
    ArityMismatch {
        name: String,
        expected: usize,
        found: usize,
        line: usize,
        column: usize,
    },
    #[error("connective outside fragment: `{connective}` at line {line}, column {column}")]
    OutsideFragment {
        connective: String,
        line: usize,
        column: usize,
    },
}

impl ParseError {
    /// Syntax errors are lexical/grammatical; the rest are semantic
    /// (signature or fragment violations).
    pub fn is_syntax(&self) -> bool {
        matches!(self, ParseError::Syntax { .. })
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Ident(String),
    LParen,
    RParen,
    Comma,
    Dot,
    Amp,
    Bar,
    Tilde,
    Eof,
}

struct Lexer {
    toks: Vec<(Tok, usize)>,
}

impl Lexer {
    fn run(src: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
        let mut lx = Lexer { toks: Vec::new() };
        let bytes = src.as_bytes();
        let mut i = 0;
        while i < bytes.len() {
            let c = bytes[i];
            match c {
                b' ' | b'\t' | b'\r' | b'\n' => i += 1,
                b'#' => {
                    while i < bytes.len() && bytes[i] != b'\n' {
                        i += 1;
                    }
                }
                b'(' => lx.push(Tok::LParen, &mut i),
                b')' => lx.push(Tok::RParen, &mut i),
                b',' => lx.push(Tok::Comma, &mut i),
                b'.' => lx.push(Tok::Dot, &mut i),
                b'&' => lx.push(Tok::Amp, &mut i),
                b'|' => lx.push(Tok::Bar, &mut i),
                b'~' => lx.push(Tok::Tilde, &mut i),
                c if c.is_ascii_alphabetic() || c == b'_' => {
                    let start = i;
                    while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_' || bytes[i] == b'\'')
                    {
                        i += 1;
                    }
                    lx.toks.push((Tok::Ident(src[start..i].to_string()), start));
                }
                _ => {
                    let ch = src[i..].chars().next().unwrap_or('?');
                    return Err(syntax(src, i, format!("unexpected character `{ch}`")));
                }
            }
        }
        lx.toks.push((Tok::Eof, src.len()));
        Ok(lx.toks)
    }

    fn push(&mut self, t: Tok, i: &mut usize) {
        self.toks.push((t, *i));
        *i += 1;
    }
}

fn line_col(src: &str, offset: usize) -> (usize, usize) {
    let before = &src[..offset.min(src.len())];
    let line = before.matches('\n').count() + 1;
    let column = before.rfind('\n').map_or(before.len(), |p| before.len() - p - 1) + 1;
    (line, column)
}

fn syntax(src: &str, offset: usize, message: String) -> ParseError {
    let (line, column) = line_col(src, offset);
    ParseError::Syntax {
        offset,
        line,
        column,
        message,
    }
}

struct Parser<'a> {
    src: &'a str,
    toks: Vec<(Tok, usize)>,
    pos: usize,
    sig: &'a Signature,
    frag: Fragment,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn offset(&self) -> usize {
        self.toks[self.pos].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].0.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn err(&self, msg: impl Into<String>) -> ParseError {
        syntax(self.src, self.offset(), msg.into())
    }

    fn expect(&mut self, t: Tok, what: &str) -> Result<(), ParseError> {
        if *self.peek() == t {
            self.bump();
            Ok(())
        } else {
            Err(self.err(format!("expected {what}, found {}", describe(self.peek()))))
        }
    }

    fn gate(&self, allowed: bool, connective: &str, offset: usize) -> Result<(), ParseError> {
        if allowed {
            return Ok(());
        }
        let (line, column) = line_col(self.src, offset);
        Err(ParseError::OutsideFragment {
            connective: connective.into(),
            line,
            column,
        })
    }

    fn formula(&mut self) -> Result<Formula, ParseError> {
        if let Tok::Ident(kw) = self.peek().clone() {
            if kw == "forall" || kw == "exists" {
                let at = self.offset();
                if kw == "forall" {
                    self.gate(self.frag.allow_universal, "forall", at)?;
                }
                self.bump();
                let var = match self.bump() {
                    Tok::Ident(v) if !is_keyword(&v) => Var::from(v),
                    other => {
                        self.pos -= 1;
                        return Err(self.err(format!("expected variable, found {}", describe(&other))));
                    }
                };
                self.expect(Tok::Dot, "`.`")?;
                let body = self.formula()?;
                return Ok(if kw == "forall" {
                    Formula::Forall(var, Box::new(body))
                } else {
                    Formula::Exists(var, Box::new(body))
                });
            }
        }
        self.disj()
    }

    fn disj(&mut self) -> Result<Formula, ParseError> {
        let first = self.conj()?;
        if *self.peek() != Tok::Bar {
            return Ok(first);
        }
        let mut parts = vec![first];
        while *self.peek() == Tok::Bar {
            let at = self.offset();
            self.gate(self.frag.allow_disjunction, "|", at)?;
            self.bump();
            parts.push(self.conj()?);
        }
        Ok(Formula::Or(parts))
    }

    fn conj(&mut self) -> Result<Formula, ParseError> {
        let first = self.unit()?;
        if *self.peek() != Tok::Amp {
            return Ok(first);
        }
        let mut parts = vec![first];
        while *self.peek() == Tok::Amp {
            self.bump();
            parts.push(self.unit()?);
        }
        Ok(Formula::And(parts))
    }

    fn unit(&mut self) -> Result<Formula, ParseError> {
        let at = self.offset();
        match self.peek().clone() {
            Tok::Tilde => {
                self.gate(self.frag.allow_negation, "~", at)?;
                self.bump();
                Ok(Formula::Not(Box::new(self.unit()?)))
            }
            Tok::LParen => {
                self.bump();
                let f = self.formula()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(f)
            }
            Tok::Ident(name) => match name.as_str() {
                "true" => {
                    self.bump();
                    Ok(Formula::True)
                }
                "false" => {
                    self.bump();
                    Ok(Formula::False)
                }
                "forall" | "exists" => {
                    Err(self.err("a quantifier must be parenthesized when it follows `&`, `|` or `~`"))
                }
                _ => self.atom(name, at),
            },
            other => Err(self.err(format!("expected a formula, found {}", describe(&other)))),
        }
    }

    fn atom(&mut self, name: String, at: usize) -> Result<Formula, ParseError> {
        self.bump();
        self.expect(Tok::LParen, "`(` after relation name")?;
        let mut args = Vec::new();
        loop {
            match self.bump() {
                Tok::Ident(v) if !is_keyword(&v) => args.push(Term::Var(Var::from(v))),
                other => {
                    self.pos -= 1;
                    return Err(self.err(format!("expected variable, found {}", describe(&other))));
                }
            }
            match self.peek() {
                Tok::Comma => {
                    self.bump();
                }
                Tok::RParen => {
                    self.bump();
                    break;
                }
                other => return Err(self.err(format!("expected `,` or `)`, found {}", describe(other)))),
            }
        }
        let (line, column) = line_col(self.src, at);
        match self.sig.arity(&name) {
            None => Err(ParseError::UnknownRelation { name, line, column }),
            Some(k) if k != args.len() => Err(ParseError::ArityMismatch {
                name,
                expected: k,
                found: args.len(),
                line,
                column,
            }),
            Some(_) => Ok(Formula::Atom(Atom { relation: name, args })),
        }
    }
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Ident(s) => format!("`{s}`"),
        Tok::LParen => "`(`".into(),
        Tok::RParen => "`)`".into(),
        Tok::Comma => "`,`".into(),
        Tok::Dot => "`.`".into(),
        Tok::Amp => "`&`".into(),
        Tok::Bar => "`|`".into(),
        Tok::Tilde => "`~`".into(),
        Tok::Eof => "end of input".into(),
    }
}

/// Parses `text` against `sig`, rejecting connectives outside `frag`.
pub fn parse_formula(text: &str, sig: &Signature, frag: Fragment) -> Result<Formula, ParseError> {
    let toks = Lexer::run(text)?;
    let mut p = Parser {
        src: text,
        toks,
        pos: 0,
        sig,
        frag,
    };
    let f = p.formula()?;
    if *p.peek() != Tok::Eof {
        return Err(p.err(format!("unexpected {} after formula", describe(p.peek()))));
    }
    Ok(f)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dg(text: &str) -> Result<Formula, ParseError> {
        parse_formula(text, &Signature::digraph(), Fragment::POSITIVE)
    }

    #[test]
    fn quantifier_prefix() {
        let f = dg("forall x. exists y. E(x,y)").unwrap();
        assert_eq!(
            f,
            Formula::forall("x", Formula::exists("y", Formula::atom("E", &["x", "y"])))
        );
    }

    #[test]
    fn three_way_disjunction() {
        let f = dg("E(x,y) | E(y,z) | E(x,z)").unwrap();
        match &f {
            Formula::Or(cs) => assert_eq!(cs.len(), 3),
            other => panic!("expected Or, got {other:?}"),
        }
        let fv: Vec<_> = f.free_vars().iter().map(|v| v.to_string()).collect();
        assert_eq!(fv, ["x", "y", "z"]);
    }

    #[test]
    fn and_binds_tighter() {
        let f = dg("E(x,x) & E(y,y) | E(z,z)").unwrap();
        assert_eq!(
            f,
            Formula::Or(vec![
                Formula::And(vec![Formula::atom("E", &["x", "x"]), Formula::atom("E", &["y", "y"])]),
                Formula::atom("E", &["z", "z"]),
            ])
        );
    }

    #[test]
    fn negation_gated_by_fragment() {
        assert!(matches!(
            dg("~E(x,y)"),
            Err(ParseError::OutsideFragment { ref connective, .. }) if connective == "~"
        ));
        let f = parse_formula("~E(x,y)", &Signature::digraph(), Fragment::EQUALITY_FREE).unwrap();
        assert_eq!(f, Formula::not(Formula::atom("E", &["x", "y"])));
    }

    #[test]
    fn signature_errors() {
        assert!(matches!(dg("R(x)"), Err(ParseError::UnknownRelation { ref name, .. }) if name == "R"));
        assert!(matches!(
            dg("E(x,y,z)"),
            Err(ParseError::ArityMismatch {
                expected: 2,
                found: 3,
                ..
            })
        ));
    }

    #[test]
    fn syntax_errors_report_position() {
        match dg("forall x E(x,x)") {
            Err(ParseError::Syntax { line, column, .. }) => assert_eq!((line, column), (1, 10)),
            other => panic!("{other:?}"),
        }
        match dg("E(x,x) &\n  $") {
            Err(ParseError::Syntax { line, column, .. }) => assert_eq!((line, column), (2, 3)),
            other => panic!("{other:?}"),
        }
        assert!(dg("E(x,x) & exists y. E(y,y)").unwrap_err().is_syntax());
        assert!(dg("E(x,x))").unwrap_err().is_syntax());
    }

    #[test]
    fn comments_and_constants() {
        let f = dg("# leading comment\ntrue | E(x,x) # trailing\n").unwrap();
        assert_eq!(f, Formula::Or(vec![Formula::True, Formula::atom("E", &["x", "x"])]));
    }
}
