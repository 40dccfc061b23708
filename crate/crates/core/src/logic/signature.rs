use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SignatureError {
    #[error("duplicate relation name `{0}`")]
    Duplicate(String),
    #[error("relation `{0}` must have arity at least 1")]
    ZeroArity(String),
    #[error("`{0}` is not a valid relation name")]
    BadName(String),
}

/// A relation symbol together with its arity.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct RelationSymbol {
    pub name: String,
    pub arity: usize,
}

/// An ordered relational signature. Names are unique and arities positive.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Signature {
    relations: Vec<RelationSymbol>,
}

pub(crate) fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '\'')
}

impl Signature {
    pub fn new<I, S>(relations: I) -> Result<Self, SignatureError>
    where
        I: IntoIterator<Item = (S, usize)>,
        S: Into<String>,
    {
        let mut sig = Signature::default();
        for (name, arity) in relations {
            sig.push(name.into(), arity)?;
        }
        Ok(sig)
    }

    /// The single-binary-relation signature `<E:2>`.
    pub fn digraph() -> Self {
        Signature {
            relations: vec![RelationSymbol {
                name: "E".into(),
                arity: 2,
            }],
        }
    }

    pub fn push(&mut self, name: String, arity: usize) -> Result<(), SignatureError> {
        if !is_identifier(&name) || super::parse::is_keyword(&name) {
            return Err(SignatureError::BadName(name));
        }
        if arity == 0 {
            return Err(SignatureError::ZeroArity(name));
        }
        if self.index_of(&name).is_some() {
            return Err(SignatureError::Duplicate(name));
        }
        self.relations.push(RelationSymbol { name, arity });
        Ok(())
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.relations.iter().position(|r| r.name == name)
    }

    pub fn arity(&self, name: &str) -> Option<usize> {
        self.index_of(name).map(|i| self.relations[i].arity)
    }

    pub fn relations(&self) -> &[RelationSymbol] {
        &self.relations
    }

    pub fn len(&self) -> usize {
        self.relations.len()
    }

    pub fn is_empty(&self) -> bool {
        self.relations.is_empty()
    }

    pub fn total_arity(&self) -> usize {
        self.relations.iter().map(|r| r.arity).sum()
    }

    pub fn is_digraph(&self) -> bool {
        self.relations.len() == 1 && self.relations[0].name == "E" && self.relations[0].arity == 2
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<")?;
        for (i, r) in self.relations.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}:{}", r.name, r.arity)?;
        }
        write!(f, ">")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_duplicates_and_zero_arity() {
        assert_eq!(
            Signature::new([("E", 2), ("E", 3)]),
            Err(SignatureError::Duplicate("E".into()))
        );
        assert_eq!(Signature::new([("R", 0)]), Err(SignatureError::ZeroArity("R".into())));
        assert!(matches!(
            Signature::new([("forall", 1)]),
            Err(SignatureError::BadName(_))
        ));
    }

    #[test]
    fn digraph_signature() {
        let sig = Signature::digraph();
        assert!(sig.is_digraph());
        assert_eq!(sig.arity("E"), Some(2));
        assert_eq!(sig.to_string(), "<E:2>");
    }
}
