use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::logic::{Signature, SignatureError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum StructureError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("line {line}: element {value} of relation `{relation}` is outside the universe of size {size}")]
    OutOfRange {
        relation: String,
        line: usize,
        value: u64,
        size: usize,
    },
    #[error("line {line}: relation `{relation}` has arity {expected} but the tuple has {found} entries")]
    ArityMismatch {
        relation: String,
        line: usize,
        expected: usize,
        found: usize,
    },
    #[error("line {line}: {source}")]
    Signature {
        line: usize,
        #[source]
        source: SignatureError,
    },
    #[error("unknown relation `{0}`")]
    UnknownRelation(String),
}

impl StructureError {
    pub fn is_syntax(&self) -> bool {
        matches!(self, StructureError::Syntax { .. })
    }
}

/// A finite relational structure over the universe `{0, .., size-1}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Structure {
    sig: Signature,
    size: usize,
    tables: Vec<BTreeSet<Vec<u32>>>,
}

impl Structure {
    /// A structure with every relation empty.
    pub fn new(sig: Signature, size: usize) -> Self {
        let tables = vec![BTreeSet::new(); sig.len()];
        Structure { sig, size, tables }
    }

    pub fn from_tables<I, T>(sig: Signature, size: usize, tables: I) -> Result<Self, StructureError>
    where
        I: IntoIterator<Item = T>,
        T: IntoIterator<Item = Vec<u32>>,
    {
        let mut s = Structure::new(sig, size);
        for (i, tuples) in tables.into_iter().enumerate() {
            if i >= s.sig.len() {
                return Err(StructureError::UnknownRelation(format!("#{i}")));
            }
            for t in tuples {
                s.insert(i, t)?;
            }
        }
        Ok(s)
    }

    pub fn signature(&self) -> &Signature {
        &self.sig
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn table(&self, rel: usize) -> &BTreeSet<Vec<u32>> {
        &self.tables[rel]
    }

    pub fn table_by_name(&self, name: &str) -> Option<&BTreeSet<Vec<u32>>> {
        self.sig.index_of(name).map(|i| &self.tables[i])
    }

    pub fn tables(&self) -> &[BTreeSet<Vec<u32>>] {
        &self.tables
    }

    pub fn contains(&self, rel: usize, tuple: &[u32]) -> bool {
        self.tables[rel].contains(tuple)
    }

    pub fn insert(&mut self, rel: usize, tuple: Vec<u32>) -> Result<bool, StructureError> {
        let sym = &self.sig.relations()[rel];
        if tuple.len() != sym.arity {
            return Err(StructureError::ArityMismatch {
                relation: sym.name.clone(),
                line: 0,
                expected: sym.arity,
                found: tuple.len(),
            });
        }
        if let Some(&v) = tuple.iter().find(|&&v| v as usize >= self.size) {
            return Err(StructureError::OutOfRange {
                relation: sym.name.clone(),
                line: 0,
                value: v as u64,
                size: self.size,
            });
        }
        Ok(self.tables[rel].insert(tuple))
    }

    /// True when the universe is `{0, 1}`.
    pub fn is_boolean(&self) -> bool {
        self.size == 2
    }

    /// Number of tuples a relation of this arity could hold.
    pub fn full_count(&self, rel: usize) -> usize {
        self.size.pow(self.sig.relations()[rel].arity as u32)
    }

    pub fn is_full(&self, rel: usize) -> bool {
        self.tables[rel].len() == self.full_count(rel)
    }

    /// The structure restricted to the relations in `keep`, in order.
    pub fn restrict(&self, keep: &[usize]) -> Structure {
        let sig = Signature::new(
            keep.iter()
                .map(|&i| (self.sig.relations()[i].name.clone(), self.sig.relations()[i].arity)),
        )
        .expect("sub-signature of a valid signature");
        Structure {
            sig,
            size: self.size,
            tables: keep.iter().map(|&i| self.tables[i].clone()).collect(),
        }
    }
}

/// Renders the text format; tuples come out in lexicographic order.
pub fn render_structure(s: &Structure) -> String {
    s.to_string()
}

pub fn parse_structure(text: &str) -> Result<Structure, StructureError> {
    text.parse()
}

impl fmt::Display for Structure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "universe {}", self.size)?;
        for (sym, table) in self.sig.relations().iter().zip(&self.tables) {
            writeln!(f, "rel {} {}", sym.name, sym.arity)?;
            for t in table {
                let row: Vec<String> = t.iter().map(u32::to_string).collect();
                writeln!(f, "{}", row.join(" "))?;
            }
            writeln!(f, "end")?;
        }
        Ok(())
    }
}

impl FromStr for Structure {
    type Err = StructureError;

    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let syntax = |line: usize, message: String| StructureError::Syntax { line, message };
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
            .filter(|(_, l)| !l.is_empty());

        let (line, header) = lines
            .next()
            .ok_or_else(|| syntax(1, "expected `universe <n>`".into()))?;
        let words: Vec<&str> = header.split_whitespace().collect();
        let size = match words.as_slice() {
            ["universe", n] => n
                .parse::<usize>()
                .map_err(|_| syntax(line, format!("invalid universe size `{n}`")))?,
            _ => return Err(syntax(line, "expected `universe <n>`".into())),
        };

        let mut sig = Signature::default();
        let mut tables: Vec<BTreeSet<Vec<u32>>> = Vec::new();
        let mut open: Option<usize> = None;
        for (line, l) in lines {
            let words: Vec<&str> = l.split_whitespace().collect();
            match open {
                None => {
                    let [kw, name, arity] = words.as_slice() else {
                        return Err(syntax(line, "expected `rel <name> <arity>`".into()));
                    };
                    if *kw != "rel" {
                        return Err(syntax(line, "expected `rel <name> <arity>`".into()));
                    }
                    let arity = arity
                        .parse::<usize>()
                        .map_err(|_| syntax(line, format!("invalid arity `{arity}`")))?;
                    sig.push(name.to_string(), arity)
                        .map_err(|source| StructureError::Signature { line, source })?;
                    tables.push(BTreeSet::new());
                    open = Some(sig.len() - 1);
                }
                Some(rel) => {
                    if words == ["end"] {
                        open = None;
                        continue;
                    }
                    let sym = &sig.relations()[rel];
                    let mut tuple = Vec::with_capacity(words.len());
                    for w in &words {
                        let v = w
                            .parse::<u64>()
                            .map_err(|_| syntax(line, format!("expected an element, found `{w}`")))?;
                        if v >= size as u64 {
                            return Err(StructureError::OutOfRange {
                                relation: sym.name.clone(),
                                line,
                                value: v,
                                size,
                            });
                        }
                        tuple.push(v as u32);
                    }
                    if tuple.len() != sym.arity {
                        return Err(StructureError::ArityMismatch {
                            relation: sym.name.clone(),
                            line,
                            expected: sym.arity,
                            found: tuple.len(),
                        });
                    }
                    tables[rel].insert(tuple);
                }
            }
        }
        if open.is_some() {
            let last = text.lines().count().max(1);
            return Err(syntax(last, "missing `end`".into()));
        }
        Ok(Structure { sig, size, tables })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_k2() {
        let s: Structure = "universe 2\nrel E 2\n0 1\n1 0\nend\n".parse().unwrap();
        assert_eq!(s.size(), 2);
        assert!(s.contains(0, &[0, 1]) && s.contains(0, &[1, 0]));
        assert_eq!(s.table(0).len(), 2);
    }

    #[test]
    fn render_is_sorted_and_round_trips() {
        let text = "# loops only\nuniverse 2\nrel E 2\n1 1\n0 0 # both\nend\n";
        let s: Structure = text.parse().unwrap();
        let out = render_structure(&s);
        assert_eq!(out, "universe 2\nrel E 2\n0 0\n1 1\nend\n");
        assert_eq!(parse_structure(&out).unwrap(), s);
    }

    #[test]
    fn empty_relation_block_is_legal() {
        let s: Structure = "universe 3\nrel E 2\nend\nrel R 3\n0 1 2\nend".parse().unwrap();
        assert!(s.table(0).is_empty());
        assert_eq!(s.signature().len(), 2);
        assert_eq!(s.to_string(), "universe 3\nrel E 2\nend\nrel R 3\n0 1 2\nend\n");
    }

    #[test]
    fn errors() {
        let e = "universe 2\nrel E 2\n0 2\nend".parse::<Structure>().unwrap_err();
        assert!(matches!(e, StructureError::OutOfRange { line: 3, value: 2, .. }));
        let e = "universe 2\nrel E 2\n0 1 1\nend".parse::<Structure>().unwrap_err();
        assert!(matches!(
            e,
            StructureError::ArityMismatch {
                expected: 2,
                found: 3,
                ..
            }
        ));
        let e = "universe 2\nrel E 2\nend\nrel E 1\nend"
            .parse::<Structure>()
            .unwrap_err();
        assert!(matches!(e, StructureError::Signature { line: 4, .. }));
        let e = "universe two".parse::<Structure>().unwrap_err();
        assert!(e.is_syntax());
        let e = "universe 2\nrel E 2\n0 1".parse::<Structure>().unwrap_err();
        assert!(e.is_syntax());
        let e = "universe 2\nrel E 2\n0 x\nend".parse::<Structure>().unwrap_err();
        assert!(e.is_syntax());
    }
}
