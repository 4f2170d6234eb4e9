//! Frothy edges, frothy-cycle classes and the deformed composition.
//!
//! An edge of a composable sequence is frothy when no connected walk between
//! two boundary vertices uses it. Closed alternating walks of frothy edges
//! are frothy cycles; two cycles are equivalent when linked by a chain of
//! cycles sharing an edge of the same factor. The number of classes `𝔣(ℵ)`
//! is the exponent picked up by the deformed composition.
//!
//! Classes are counted through the alternation graph: its nodes are frothy
//! tagged edges, with an arc `e₁ → e₂` when `e₁` ends where `e₂` starts and
//! the two come from different factors. Closed walks of this graph are
//! exactly the frothy cycles. Cycles inside one strongly connected component
//! can be spliced together at a shared edge, and distinct components share
//! no edge, so `𝔣` is the number of components that carry a closed walk.
//! The graph has no self-arcs, so those are the components with at least two
//! nodes.

use std::fmt;

use crate::bits::BitSet;
use crate::compose::{backward_reach, forward_reach, AlephSequence};
use crate::error::Result;
use crate::pbr::{Edge, Pbr};

/// An edge together with the position of the factor it belongs to.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct TaggedEdge {
    pub factor: usize,
    /// Source and target as indices local to the factor.
    pub source: usize,
    pub target: usize,
}

impl TaggedEdge {
    pub fn edge(&self, seq: &AlephSequence) -> Edge {
        let p = &seq.factors()[self.factor];
        Edge::new(p.vertex(self.source), p.vertex(self.target))
    }
}

impl fmt::Display for TaggedEdge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}:({}, {})", self.factor, self.source, self.target)
    }
}

/// All tagged edges of the sequence that lie on no boundary-to-boundary
/// connected walk, in (factor, source, target) order.
///
/// An edge `(u, w)` of factor `p` is used by such a walk iff state
/// "at `u`, about to use `p`" is reachable from the boundary and state
/// "at `w`, just used `p`" reaches the boundary.
pub fn frothy_edges(seq: &AlephSequence) -> Vec<TaggedEdge> {
    let adj = seq.global_adjacency();
    let boundary = seq.boundary();
    let fwd = forward_reach(seq, &adj, &boundary);
    let bwd = backward_reach(seq, &adj);
    let mut out = Vec::new();
    for (p, factor) in seq.factors().iter().enumerate() {
        for (u, w) in factor.index_edges() {
            let (gu, gw) = (seq.global(p, u), seq.global(p, w));
            let entered = boundary.contains(gu) || seq.factors_at(gu).any(|f| f != p && fwd[f].contains(gu));
            let leaves = bwd[p].contains(gw);
            if !(entered && leaves) {
                out.push(TaggedEdge {
                    factor: p,
                    source: u,
                    target: w,
                });
            }
        }
    }
    out
}

/// Adjacency lists of the alternation graph over `edges`.
fn alternation_graph(seq: &AlephSequence, edges: &[TaggedEdge]) -> Vec<Vec<usize>> {
    let n = seq.vertex_count();
    let mut by_source: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (i, e) in edges.iter().enumerate() {
        by_source[seq.global(e.factor, e.source)].push(i);
    }
    edges
        .iter()
        .map(|e| {
            by_source[seq.global(e.factor, e.target)]
                .iter()
                .copied()
                .filter(|&j| edges[j].factor != e.factor)
                .collect()
        })
        .collect()
}

/// Strongly connected components (iterative Tarjan); returns the component
/// id of every node.
fn scc(graph: &[Vec<usize>]) -> (usize, Vec<usize>) {
    const UNSEEN: usize = usize::MAX;
    let n = graph.len();
    let mut index = vec![UNSEEN; n];
    let mut low = vec![0; n];
    let mut on_stack = BitSet::new(n);
    let mut stack = Vec::new();
    let mut comp = vec![UNSEEN; n];
    let mut next_index = 0;
    let mut ncomp = 0;
    // (node, position in its adjacency list)
    let mut call: Vec<(usize, usize)> = Vec::new();
    for root in 0..n {
        if index[root] != UNSEEN {
            continue;
        }
        call.push((root, 0));
        index[root] = next_index;
        low[root] = next_index;
        next_index += 1;
        stack.push(root);
        on_stack.insert(root);
        while let Some(&mut (v, ref mut pos)) = call.last_mut() {
            if let Some(&w) = graph[v].get(*pos) {
                *pos += 1;
                if index[w] == UNSEEN {
                    index[w] = next_index;
                    low[w] = next_index;
                    next_index += 1;
                    stack.push(w);
                    on_stack.insert(w);
                    call.push((w, 0));
                } else if on_stack.contains(w) {
                    low[v] = low[v].min(index[w]);
                }
                continue;
            }
            call.pop();
            if let Some(&(parent, _)) = call.last() {
                low[parent] = low[parent].min(low[v]);
            }
            if low[v] == index[v] {
                loop {
                    let w = stack.pop().unwrap();
                    on_stack.remove(w);
                    comp[w] = ncomp;
                    if w == v {
                        break;
                    }
                }
                ncomp += 1;
            }
        }
    }
    (ncomp, comp)
}

/// Frothy edges grouped by cycle class; edges on no frothy cycle are omitted.
pub fn frothy_classes(seq: &AlephSequence) -> Vec<Vec<TaggedEdge>> {
    let edges = frothy_edges(seq);
    let graph = alternation_graph(seq, &edges);
    let (ncomp, comp) = scc(&graph);
    let mut groups: Vec<Vec<TaggedEdge>> = vec![Vec::new(); ncomp];
    for (i, &c) in comp.iter().enumerate() {
        groups[c].push(edges[i]);
    }
    groups.retain(|g| g.len() >= 2);
    groups.sort();
    groups
}

/// `𝔣(ℵ)`: the number of equivalence classes of frothy cycles.
pub fn frothy_class_count(seq: &AlephSequence) -> usize {
    frothy_classes(seq).len()
}

/// `𝔣((α, β))` for a composable pair.
pub fn frothy_pair(alpha: &Pbr, beta: &Pbr) -> Result<usize> {
    Ok(frothy_class_count(&AlephSequence::pair(alpha, beta)?))
}

/// A morphism of the deformed category: a PBR with a power of the
/// deformation parameter.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct DeformedMorphism {
    pub pbr: Pbr,
    pub exponent: u64,
}

impl DeformedMorphism {
    pub fn new(pbr: Pbr, exponent: u64) -> Self {
        DeformedMorphism { pbr, exponent }
    }

    /// `(ε_X, 0)`.
    pub fn identity(x: &[String]) -> Result<Self> {
        Ok(DeformedMorphism::new(Pbr::identity(x)?, 0))
    }
}

/// `(β, m) ⋄ (α, k) = (β ∘ α, m + k + 𝔣(α, β))`.
pub fn compose_deformed(b: &DeformedMorphism, a: &DeformedMorphism) -> Result<DeformedMorphism> {
    let seq = AlephSequence::pair(&a.pbr, &b.pbr)?;
    let extra = frothy_class_count(&seq) as u64;
    Ok(DeformedMorphism {
        pbr: seq.composite(),
        exponent: a.exponent + b.exponent + extra,
    })
}
