//! Partitioned binary relations and their basic constructors.
//!
//! A [`Pbr`] on `(X, Y)` is an arbitrary binary relation on the disjoint
//! union `X ⊔ Y`. Vertices are addressed either by [`Vertex`] (label plus
//! side) or by a dense index: domain labels occupy `0..|X|` in declared
//! order, codomain labels follow at `|X|..|X|+|Y|`.

use std::collections::HashSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::bits::BitMatrix;
use crate::error::{Error, Result};

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Side {
    #[serde(rename = "d")]
    Domain,
    #[serde(rename = "c")]
    Codomain,
}

impl Side {
    pub fn flip(self) -> Side {
        match self {
            Side::Domain => Side::Codomain,
            Side::Codomain => Side::Domain,
        }
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::Domain => "d",
            Side::Codomain => "c",
        })
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct Vertex {
    pub label: String,
    pub side: Side,
}

impl Vertex {
    pub fn new(label: impl Into<String>, side: Side) -> Self {
        Vertex {
            label: label.into(),
            side,
        }
    }

    pub fn dom(label: impl Into<String>) -> Self {
        Vertex::new(label, Side::Domain)
    }

    pub fn cod(label: impl Into<String>) -> Self {
        Vertex::new(label, Side::Codomain)
    }
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}@{}", self.label, self.side)
    }
}

/// A directed edge; self-loops are allowed.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct Edge {
    pub source: Vertex,
    pub target: Vertex,
}

impl Edge {
    pub fn new(source: Vertex, target: Vertex) -> Self {
        Edge { source, target }
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} -> {}", self.source, self.target)
    }
}

/// Builds the label list `prefix0, prefix1, …` of length `n`.
pub fn labels(prefix: &str, n: usize) -> Vec<String> {
    (0..n).map(|i| format!("{prefix}{i}")).collect()
}

pub(crate) fn check_distinct(labels: &[String], side: Side) -> Result<()> {
    let mut seen = HashSet::with_capacity(labels.len());
    for l in labels {
        if !seen.insert(l.as_str()) {
            return Err(Error::DuplicateLabel { label: l.clone(), side });
        }
    }
    Ok(())
}

/// Checks that `(domain, codomain, edges)` describes a well-formed PBR.
///
/// Reports the first violated invariant: repeated labels on one side, an
/// edge endpoint that is not declared, or an edge listed twice.
pub fn validate(domain: &[String], codomain: &[String], edges: &[Edge]) -> Result<()> {
    check_distinct(domain, Side::Domain)?;
    check_distinct(codomain, Side::Codomain)?;
    let mut seen = HashSet::with_capacity(edges.len());
    for e in edges {
        for v in [&e.source, &e.target] {
            let declared = match v.side {
                Side::Domain => domain,
                Side::Codomain => codomain,
            };
            if !declared.contains(&v.label) {
                return Err(Error::DanglingEdgeEndpoint {
                    label: v.label.clone(),
                    side: v.side,
                });
            }
        }
        if !seen.insert(e) {
            return Err(Error::DuplicateEdge {
                source_label: e.source.label.clone(),
                source_side: e.source.side,
                target_label: e.target.label.clone(),
                target_side: e.target.side,
            });
        }
    }
    Ok(())
}

/// A partitioned binary relation on `(domain, codomain)`.
///
/// Equality compares the ordered label lists and the edge set.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Pbr {
    domain: Vec<String>,
    codomain: Vec<String>,
    adj: BitMatrix,
}

impl Pbr {
    /// The edgeless PBR on `(domain, codomain)`.
    pub fn empty(domain: Vec<String>, codomain: Vec<String>) -> Result<Pbr> {
        check_distinct(&domain, Side::Domain)?;
        check_distinct(&codomain, Side::Codomain)?;
        let n = domain.len() + codomain.len();
        Ok(Pbr {
            domain,
            codomain,
            adj: BitMatrix::new(n, n),
        })
    }

    /// Validates and builds a PBR from labelled edges.
    pub fn from_edges(domain: Vec<String>, codomain: Vec<String>, edges: &[Edge]) -> Result<Pbr> {
        validate(&domain, &codomain, edges)?;
        let mut p = Pbr::empty(domain, codomain)?;
        for e in edges {
            let (u, v) = (p.index_of(&e.source).unwrap(), p.index_of(&e.target).unwrap());
            p.adj.set(u, v);
        }
        Ok(p)
    }

    /// Builds a PBR from index pairs; duplicate pairs collapse.
    ///
    /// Panics if an index is out of range.
    pub fn from_indices(
        domain: Vec<String>,
        codomain: Vec<String>,
        edges: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Pbr> {
        let mut p = Pbr::empty(domain, codomain)?;
        for (u, v) in edges {
            p.adj.set(u, v);
        }
        Ok(p)
    }

    /// Wraps an adjacency matrix over the index space of `(domain, codomain)`.
    pub fn from_adjacency(domain: Vec<String>, codomain: Vec<String>, adj: BitMatrix) -> Result<Pbr> {
        let n = domain.len() + codomain.len();
        assert_eq!((adj.rows(), adj.cols()), (n, n), "adjacency shape mismatch");
        check_distinct(&domain, Side::Domain)?;
        check_distinct(&codomain, Side::Codomain)?;
        Ok(Pbr { domain, codomain, adj })
    }

    /// Identity `ε_X`: the arrows `x@d → x@c` and `x@c → x@d`.
    pub fn identity(x: &[String]) -> Result<Pbr> {
        let n = x.len();
        Pbr::from_indices(x.to_vec(), x.to_vec(), (0..n).flat_map(|i| [(i, n + i), (n + i, i)]))
    }

    /// `ε̄_X`: the identity plus a loop at every vertex.
    pub fn identity_bar(x: &[String]) -> Result<Pbr> {
        let mut p = Pbr::identity(x)?;
        for i in 0..p.len() {
            p.adj.set(i, i);
        }
        Ok(p)
    }

    /// `ε̂_X`: only the arrows `x@d → x@c`.
    pub fn identity_hat(x: &[String]) -> Result<Pbr> {
        let n = x.len();
        Pbr::from_indices(x.to_vec(), x.to_vec(), (0..n).map(|i| (i, n + i)))
    }

    /// The maximum PBR on `(X, Y)`: every ordered pair is an edge.
    pub fn full(x: &[String], y: &[String]) -> Result<Pbr> {
        let n = x.len() + y.len();
        Pbr::from_adjacency(x.to_vec(), y.to_vec(), BitMatrix::full(n, n))
    }

    pub fn domain(&self) -> &[String] {
        &self.domain
    }

    pub fn codomain(&self) -> &[String] {
        &self.codomain
    }

    #[inline]
    pub fn dom_len(&self) -> usize {
        self.domain.len()
    }

    #[inline]
    pub fn cod_len(&self) -> usize {
        self.codomain.len()
    }

    /// Number of vertices, `|X| + |Y|`.
    #[inline]
    pub fn len(&self) -> usize {
        self.domain.len() + self.codomain.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn adjacency(&self) -> &BitMatrix {
        &self.adj
    }

    #[inline]
    pub fn side_of(&self, i: usize) -> Side {
        if i < self.domain.len() {
            Side::Domain
        } else {
            Side::Codomain
        }
    }

    pub fn vertex(&self, i: usize) -> Vertex {
        let d = self.domain.len();
        if i < d {
            Vertex::dom(self.domain[i].clone())
        } else {
            Vertex::cod(self.codomain[i - d].clone())
        }
    }

    pub fn index_of(&self, v: &Vertex) -> Option<usize> {
        match v.side {
            Side::Domain => self.domain.iter().position(|l| *l == v.label),
            Side::Codomain => self
                .codomain
                .iter()
                .position(|l| *l == v.label)
                .map(|j| self.domain.len() + j),
        }
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj.get(u, v)
    }

    pub fn contains(&self, e: &Edge) -> bool {
        match (self.index_of(&e.source), self.index_of(&e.target)) {
            (Some(u), Some(v)) => self.adj.get(u, v),
            _ => false,
        }
    }

    pub fn insert(&mut self, u: usize, v: usize) {
        self.adj.set(u, v);
    }

    pub fn remove(&mut self, u: usize, v: usize) {
        self.adj.unset(u, v);
    }

    pub fn edge_count(&self) -> usize {
        self.adj.count()
    }

    /// Edges as index pairs, sorted by source then target.
    pub fn index_edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj.ones()
    }

    /// Edges as labelled vertices, in index order.
    pub fn edges(&self) -> Vec<Edge> {
        self.index_edges()
            .map(|(u, v)| Edge::new(self.vertex(u), self.vertex(v)))
            .collect()
    }

    /// Same label lists, so `self` and `other` live in the same hom-set.
    pub fn same_shape(&self, other: &Pbr) -> bool {
        self.domain == other.domain && self.codomain == other.codomain
    }

    /// Mirror image `α⋆` on `(Y, X)`: every vertex changes side, arrows keep
    /// their direction.
    pub fn star(&self) -> Pbr {
        let (d, c) = (self.dom_len(), self.cod_len());
        let remap = |i: usize| if i < d { c + i } else { i - d };
        let mut adj = BitMatrix::new(self.len(), self.len());
        for (u, v) in self.index_edges() {
            adj.set(remap(u), remap(v));
        }
        Pbr {
            domain: self.codomain.clone(),
            codomain: self.domain.clone(),
            adj,
        }
    }

    /// Monoidal product: the two diagrams side by side on `(X ⊔ X', Y ⊔ Y')`.
    ///
    /// When a label of `other` collides with one of `self` on the same side,
    /// every label of `other` on that side is qualified with the prefix `#1/`
    /// (repeated until the lists are disjoint).
    pub fn tensor(&self, other: &Pbr) -> Pbr {
        let domain = disjoint_concat(&self.domain, &other.domain);
        let codomain = disjoint_concat(&self.codomain, &other.codomain);
        let (d1, c1) = (self.dom_len(), self.cod_len());
        let (d2, _) = (other.dom_len(), other.cod_len());
        let left = |i: usize| if i < d1 { i } else { d1 + d2 + (i - d1) };
        let right = |i: usize| {
            if i < d2 {
                d1 + i
            } else {
                d1 + d2 + c1 + (i - d2)
            }
        };
        let n = self.len() + other.len();
        let mut adj = BitMatrix::new(n, n);
        for (u, v) in self.index_edges() {
            adj.set(left(u), left(v));
        }
        for (u, v) in other.index_edges() {
            adj.set(right(u), right(v));
        }
        Pbr { domain, codomain, adj }
    }

    /// Edges with both endpoints on `from` and `to` sides respectively, as a
    /// `|from| × |to|` matrix over side-local indices.
    pub fn block(&self, from: Side, to: Side) -> BitMatrix {
        let d = self.dom_len();
        let range = |s: Side| match s {
            Side::Domain => (0, d),
            Side::Codomain => (d, self.len()),
        };
        let (fa, fb) = range(from);
        let (ta, tb) = range(to);
        let mut m = BitMatrix::new(fb - fa, tb - ta);
        for u in fa..fb {
            for v in self.adj.row_ones(u) {
                if v >= ta && v < tb {
                    m.set(u - fa, v - ta);
                }
            }
        }
        m
    }
}

fn disjoint_concat(first: &[String], second: &[String]) -> Vec<String> {
    let taken: HashSet<&String> = first.iter().collect();
    let mut renamed: Vec<String> = second.to_vec();
    while renamed.iter().any(|l| taken.contains(l)) {
        renamed = renamed.iter().map(|l| format!("#1/{l}")).collect();
    }
    first.iter().cloned().chain(renamed).collect()
}

impl fmt::Display for Pbr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PBR {:?} -> {:?} {{", self.domain, self.codomain)?;
        for (k, e) in self.edges().iter().enumerate() {
            if k > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{e}")?;
        }
        f.write_str("}")
    }
}
