use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::logic::Signature;

use super::relational::Structure;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DigraphError {
    #[error("expected a single binary relation named E, found signature {0}")]
    NotADigraph(String),
    #[error("vertices {0} and {1} are not twins")]
    NotTwins(u32, u32),
    #[error("vertex {0} is out of range")]
    VertexOutOfRange(u32),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ClosureKind {
    Sym,
    Tran,
    Doub,
}

impl ClosureKind {
    pub const ALL: [ClosureKind; 3] = [ClosureKind::Sym, ClosureKind::Tran, ClosureKind::Doub];

    pub fn name(self) -> &'static str {
        match self {
            ClosureKind::Sym => "symclos",
            ClosureKind::Tran => "tranclos",
            ClosureKind::Doub => "doub",
        }
    }
}

impl fmt::Display for ClosureKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A digraph on `{0, .., n-1}` stored as a dense adjacency matrix.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Digraph {
    n: usize,
    adj: Vec<bool>,
}

impl Digraph {
    pub fn empty(n: usize) -> Self {
        Digraph {
            n,
            adj: vec![false; n * n],
        }
    }

    pub fn from_edges(n: usize, edges: &[(u32, u32)]) -> Self {
        let mut g = Digraph::empty(n);
        for &(x, y) in edges {
            g.add_edge(x, y);
        }
        g
    }

    /// Decodes the row-major adjacency bit string, most significant bit first,
    /// so that increasing codes list digraphs in lexicographic encoding order.
    pub fn from_code(n: usize, code: u64) -> Self {
        let m = n * n;
        let mut g = Digraph::empty(n);
        for k in 0..m {
            g.adj[k] = code >> (m - 1 - k) & 1 == 1;
        }
        g
    }

    pub fn code(&self) -> u64 {
        self.adj.iter().fold(0, |c, &b| c << 1 | b as u64)
    }

    /// Every labelled digraph on `n` vertices in code order.
    pub fn all(n: usize) -> impl Iterator<Item = Digraph> {
        assert!(n * n < 64, "too many vertices to enumerate");
        (0..1u64 << (n * n)).map(move |c| Digraph::from_code(n, c))
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn has_edge(&self, x: u32, y: u32) -> bool {
        self.adj[x as usize * self.n + y as usize]
    }

    pub fn add_edge(&mut self, x: u32, y: u32) {
        assert!((x as usize) < self.n && (y as usize) < self.n, "vertex out of range");
        self.adj[x as usize * self.n + y as usize] = true;
    }

    pub fn vertices(&self) -> impl Iterator<Item = u32> {
        0..self.n as u32
    }

    /// Edges in lexicographic order.
    pub fn edges(&self) -> Vec<(u32, u32)> {
        let mut out = Vec::new();
        for x in self.vertices() {
            for y in self.vertices() {
                if self.has_edge(x, y) {
                    out.push((x, y));
                }
            }
        }
        out
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().filter(|&&b| b).count()
    }

    pub fn has_any_edge(&self) -> bool {
        self.adj.iter().any(|&b| b)
    }

    pub fn is_complete(&self) -> bool {
        self.adj.iter().all(|&b| b)
    }

    pub fn loops(&self) -> Vec<u32> {
        self.vertices().filter(|&v| self.has_edge(v, v)).collect()
    }

    pub fn is_reflexive(&self) -> bool {
        self.vertices().all(|v| self.has_edge(v, v))
    }

    pub fn is_antireflexive(&self) -> bool {
        self.vertices().all(|v| !self.has_edge(v, v))
    }

    /// Every vertex has an edge to `y`.
    pub fn column_full(&self, y: u32) -> bool {
        self.vertices().all(|z| self.has_edge(z, y))
    }

    /// `y` has an edge to every vertex.
    pub fn row_full(&self, y: u32) -> bool {
        self.vertices().all(|z| self.has_edge(y, z))
    }

    pub fn complement(&self) -> Digraph {
        Digraph {
            n: self.n,
            adj: self.adj.iter().map(|b| !b).collect(),
        }
    }

    pub fn closure(&self, kind: ClosureKind) -> Digraph {
        match kind {
            ClosureKind::Sym => self.sym_closure(),
            ClosureKind::Tran => self.tran_closure(),
            ClosureKind::Doub => self.doub(),
        }
    }

    pub fn sym_closure(&self) -> Digraph {
        let mut g = self.clone();
        for (x, y) in self.edges() {
            g.add_edge(y, x);
        }
        g
    }

    pub fn tran_closure(&self) -> Digraph {
        let mut g = self.clone();
        let n = self.n;
        for k in 0..n {
            for i in 0..n {
                if g.adj[i * n + k] {
                    for j in 0..n {
                        if g.adj[k * n + j] {
                            g.adj[i * n + j] = true;
                        }
                    }
                }
            }
        }
        g
    }

    /// The double edges: `(x,y)` with both `E(x,y)` and `E(y,x)`.
    pub fn doub(&self) -> Digraph {
        let mut g = Digraph::empty(self.n);
        for (x, y) in self.edges() {
            if self.has_edge(y, x) {
                g.add_edge(x, y);
            }
        }
        g
    }

    /// A vertex with no incident edge, a loop included.
    pub fn is_isolated(&self, x: u32) -> bool {
        self.vertices().all(|y| !self.has_edge(x, y) && !self.has_edge(y, x))
    }

    pub fn isolated_vertices(&self) -> Vec<u32> {
        self.vertices().filter(|&x| self.is_isolated(x)).collect()
    }

    /// Weakly connected components, each sorted, ordered by least vertex.
    pub fn components(&self) -> Vec<Vec<u32>> {
        let mut comp = vec![usize::MAX; self.n];
        let mut out: Vec<Vec<u32>> = Vec::new();
        for start in 0..self.n {
            if comp[start] != usize::MAX {
                continue;
            }
            let id = out.len();
            let mut members = vec![start as u32];
            comp[start] = id;
            let mut stack = vec![start];
            while let Some(v) = stack.pop() {
                for (w, cw) in comp.iter_mut().enumerate() {
                    let linked = self.adj[v * self.n + w] || self.adj[w * self.n + v];
                    if linked && *cw == usize::MAX {
                        *cw = id;
                        members.push(w as u32);
                        stack.push(w);
                    }
                }
            }
            members.sort_unstable();
            out.push(members);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// Relabels vertex `v` as `perm[v]`.
    pub fn permute(&self, perm: &[u32]) -> Digraph {
        let mut g = Digraph::empty(self.n);
        for (x, y) in self.edges() {
            g.add_edge(perm[x as usize], perm[y as usize]);
        }
        g
    }

    /// A bijection `p` with `E(x,y)` iff `E'(p[x],p[y])`, found by trying
    /// every permutation.
    pub fn find_isomorphism(&self, other: &Digraph) -> Option<Vec<u32>> {
        if self.n != other.n || self.edge_count() != other.edge_count() || self.loops().len() != other.loops().len() {
            return None;
        }
        let mut perm: Vec<u32> = self.vertices().collect();
        loop {
            if self
                .edges()
                .iter()
                .all(|&(x, y)| other.has_edge(perm[x as usize], perm[y as usize]))
            {
                return Some(perm);
            }
            if !next_permutation(&mut perm) {
                return None;
            }
        }
    }

    pub fn is_isomorphic(&self, other: &Digraph) -> bool {
        self.find_isomorphism(other).is_some()
    }

    /// The least code over all relabellings; equal exactly for isomorphic
    /// digraphs.
    pub fn canonical_code(&self) -> u64 {
        let mut perm: Vec<u32> = self.vertices().collect();
        let mut best = u64::MAX;
        loop {
            best = best.min(self.permute(&perm).code());
            if !next_permutation(&mut perm) {
                return best;
            }
        }
    }

    pub fn are_twins(&self, x: u32, y: u32) -> bool {
        x != y
            && self
                .vertices()
                .all(|z| self.has_edge(x, z) == self.has_edge(y, z) && self.has_edge(z, x) == self.has_edge(z, y))
    }

    /// Unordered twin pairs `(x, y)` with `x < y`.
    pub fn find_twins(&self) -> Vec<(u32, u32)> {
        let mut out = Vec::new();
        for x in self.vertices() {
            for y in x + 1..self.n as u32 {
                if self.are_twins(x, y) {
                    out.push((x, y));
                }
            }
        }
        out
    }

    /// Removes `x`, which must be a twin of `y`.
    pub fn contract_twin(&self, x: u32, y: u32) -> Result<Digraph, DigraphError> {
        for v in [x, y] {
            if v as usize >= self.n {
                return Err(DigraphError::VertexOutOfRange(v));
            }
        }
        if !self.are_twins(x, y) {
            return Err(DigraphError::NotTwins(x, y));
        }
        let keep: Vec<u32> = self.vertices().filter(|&v| v != x).collect();
        Ok(self.induced(&keep))
    }

    /// Induced subdigraph on `keep`, relabelled `0..keep.len()` in order.
    pub fn induced(&self, keep: &[u32]) -> Digraph {
        let mut g = Digraph::empty(keep.len());
        for (i, &a) in keep.iter().enumerate() {
            for (j, &b) in keep.iter().enumerate() {
                if self.has_edge(a, b) {
                    g.add_edge(i as u32, j as u32);
                }
            }
        }
        g
    }

    /// Disjoint union; the vertices of `other` follow those of `self`.
    pub fn disjoint_union(&self, other: &Digraph) -> Digraph {
        let off = self.n as u32;
        let mut g = Digraph::empty(self.n + other.n);
        for (x, y) in self.edges() {
            g.add_edge(x, y);
        }
        for (x, y) in other.edges() {
            g.add_edge(x + off, y + off);
        }
        g
    }

    pub fn to_structure(&self) -> Structure {
        let tables = [self.edges().into_iter().map(|(x, y)| vec![x, y])];
        Structure::from_tables(Signature::digraph(), self.n, tables).expect("edges are in range")
    }

    pub fn from_structure(s: &Structure) -> Result<Digraph, DigraphError> {
        if !s.signature().is_digraph() {
            return Err(DigraphError::NotADigraph(s.signature().to_string()));
        }
        let mut g = Digraph::empty(s.size());
        for t in s.table(0) {
            g.add_edge(t[0], t[1]);
        }
        Ok(g)
    }

    /// Adjacency rows joined by `/`, e.g. `010/101/010`.
    pub fn encoding(&self) -> String {
        let rows: Vec<String> = (0..self.n)
            .map(|x| {
                (0..self.n)
                    .map(|y| if self.adj[x * self.n + y] { '1' } else { '0' })
                    .collect()
            })
            .collect();
        rows.join("/")
    }

    pub fn from_encoding(s: &str) -> Option<Digraph> {
        let rows: Vec<&str> = s.split('/').collect();
        let n = rows.len();
        let mut g = Digraph::empty(n);
        for (x, row) in rows.iter().enumerate() {
            if row.len() != n {
                return None;
            }
            for (y, ch) in row.chars().enumerate() {
                match ch {
                    '1' => g.add_edge(x as u32, y as u32),
                    '0' => {}
                    _ => return None,
                }
            }
        }
        Some(g)
    }
}

impl fmt::Debug for Digraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Digraph({})", self.encoding())
    }
}

impl fmt::Display for Digraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let edges: Vec<String> = self.edges().iter().map(|(x, y)| format!("{x}{y}")).collect();
        write!(f, "n={} {{{}}}", self.n, edges.join(","))
    }
}

impl TryFrom<&Structure> for Digraph {
    type Error = DigraphError;

    fn try_from(s: &Structure) -> Result<Self, Self::Error> {
        Digraph::from_structure(s)
    }
}

impl From<&Digraph> for Structure {
    fn from(g: &Digraph) -> Self {
        g.to_structure()
    }
}

fn next_permutation(p: &mut [u32]) -> bool {
    if p.len() < 2 {
        return false;
    }
    let mut i = p.len() - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = p.len() - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}
