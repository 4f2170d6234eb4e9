//! Composition by reachability over tagged states.
//!
//! Given a composable sequence `α₁, …, α_k`, glue the factors along their
//! shared objects to get the vertex space `X₁ ⊔ … ⊔ X_{k+1}`. A connected
//! sequence is a walk that never uses the same factor twice in a row, so a
//! walk is determined by states `(vertex, last factor used)`. A shortest
//! connecting walk never revisits a state, which makes breadth-first search
//! over at most `2·|X₁ ⊔ … ⊔ X_{k+1}|` states complete.

use crate::bits::{BitMatrix, BitSet};
use crate::error::{Error, Result};
use crate::pbr::Pbr;

/// A non-empty composable sequence of PBRs.
#[derive(Clone, Debug)]
pub struct AlephSequence {
    factors: Vec<Pbr>,
    /// `offsets[j]` is the first global index of layer `j`; one extra entry
    /// holds the total vertex count.
    offsets: Vec<usize>,
}

impl AlephSequence {
    pub fn new(factors: Vec<Pbr>) -> Result<Self> {
        if factors.is_empty() {
            return Err(Error::EmptySequence);
        }
        for w in factors.windows(2) {
            if w[0].codomain() != w[1].domain() {
                return Err(Error::IncomposableShapes {
                    left: w[0].codomain().to_vec(),
                    right: w[1].domain().to_vec(),
                });
            }
        }
        let mut offsets = Vec::with_capacity(factors.len() + 2);
        let mut acc = 0;
        offsets.push(0);
        for f in &factors {
            acc += f.dom_len();
            offsets.push(acc);
        }
        acc += factors.last().unwrap().cod_len();
        offsets.push(acc);
        Ok(AlephSequence { factors, offsets })
    }

    /// The pair `(α, β)`, i.e. the sequence whose composite is `β ∘ α`.
    pub fn pair(alpha: &Pbr, beta: &Pbr) -> Result<Self> {
        AlephSequence::new(vec![alpha.clone(), beta.clone()])
    }

    pub fn factors(&self) -> &[Pbr] {
        &self.factors
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    /// Size of the glued vertex space.
    pub fn vertex_count(&self) -> usize {
        *self.offsets.last().unwrap()
    }

    /// Layer (object position) of a global vertex.
    pub fn layer_of(&self, v: usize) -> usize {
        // offsets has k+2 entries; the last is the total
        self.offsets[..self.offsets.len() - 1]
            .iter()
            .rposition(|&o| o <= v)
            .unwrap()
    }

    /// Global index of factor `f`'s local vertex `i`.
    #[inline]
    pub fn global(&self, f: usize, i: usize) -> usize {
        let d = self.factors[f].dom_len();
        if i < d {
            self.offsets[f] + i
        } else {
            self.offsets[f + 1] + (i - d)
        }
    }

    /// True for vertices of the outer objects `X₁` and `X_{k+1}`.
    #[inline]
    pub fn is_boundary(&self, v: usize) -> bool {
        let k = self.factors.len();
        v < self.offsets[1] || v >= self.offsets[k]
    }

    pub fn boundary(&self) -> BitSet {
        let n = self.vertex_count();
        let mut b = BitSet::new(n);
        for v in (0..n).filter(|&v| self.is_boundary(v)) {
            b.insert(v);
        }
        b
    }

    /// Factors whose vertex set contains global vertex `v` (one or two).
    pub fn factors_at(&self, v: usize) -> impl Iterator<Item = usize> {
        let j = self.layer_of(v);
        let k = self.factors.len();
        let lo = j.saturating_sub(1);
        let hi = j.min(k - 1);
        (lo..=hi).filter(move |&f| f + 1 == j || f == j)
    }

    /// Each factor's adjacency lifted to the glued vertex space.
    pub(crate) fn global_adjacency(&self) -> Vec<BitMatrix> {
        let n = self.vertex_count();
        self.factors
            .iter()
            .enumerate()
            .map(|(f, p)| {
                let mut m = BitMatrix::new(n, n);
                for (u, v) in p.index_edges() {
                    m.set(self.global(f, u), self.global(f, v));
                }
                m
            })
            .collect()
    }

    /// Composite of the whole sequence, a PBR on `(X₁, X_{k+1})`.
    pub fn composite(&self) -> Pbr {
        let adj = self.global_adjacency();
        let n = self.vertex_count();
        let k = self.factors.len();
        let (first, last) = (&self.factors[0], &self.factors[k - 1]);
        let dom = first.dom_len();
        let to_local = |v: usize| if v < dom { v } else { dom + (v - self.offsets[k]) };
        let boundary = self.boundary();
        let mut out = BitMatrix::new(dom + last.cod_len(), dom + last.cod_len());
        let mut start = BitSet::new(n);
        for a in boundary.iter() {
            start.clear();
            start.insert(a);
            let reached = forward_reach(self, &adj, &start);
            for r in &reached {
                for b in r.iter().filter(|&b| boundary.contains(b)) {
                    out.set(to_local(a), to_local(b));
                }
            }
        }
        Pbr::from_adjacency(first.domain().to_vec(), last.codomain().to_vec(), out)
            .expect("labels come from validated factors")
    }
}

/// States reachable from the given start vertices: entry `f` holds the
/// vertices reached by a walk whose last edge came from factor `f`.
pub(crate) fn forward_reach(seq: &AlephSequence, adj: &[BitMatrix], starts: &BitSet) -> Vec<BitSet> {
    let n = seq.vertex_count();
    let mut reached = vec![BitSet::new(n); adj.len()];
    let mut queue: Vec<(usize, Option<usize>)> = starts.iter().map(|v| (v, None)).collect();
    let mut fresh = BitSet::new(n);
    while let Some((v, last)) = queue.pop() {
        for g in seq.factors_at(v) {
            if Some(g) == last {
                continue;
            }
            fresh.clear();
            for (w, (f, r)) in fresh
                .words_mut()
                .iter_mut()
                .zip(adj[g].row(v).iter().zip(reached[g].words()))
            {
                *w = f & !r;
            }
            if fresh.is_empty() {
                continue;
            }
            reached[g].union_with(&fresh);
            queue.extend(fresh.iter().map(|w| (w, Some(g))));
        }
    }
    reached
}

/// States from which a boundary vertex can be reached: entry `f` holds the
/// vertices `w` such that a walk arriving at `w` through factor `f` extends
/// to a walk ending on the boundary (possibly with no further edges).
pub(crate) fn backward_reach(seq: &AlephSequence, adj: &[BitMatrix]) -> Vec<BitSet> {
    let n = seq.vertex_count();
    let k = adj.len();
    let transposed: Vec<BitMatrix> = adj.iter().map(BitMatrix::transpose).collect();
    let mut good = vec![BitSet::new(n); k];
    let mut queue = Vec::new();
    for v in (0..n).filter(|&v| seq.is_boundary(v)) {
        for f in seq.factors_at(v) {
            good[f].insert(v);
            queue.push((v, f));
        }
    }
    while let Some((x, g)) = queue.pop() {
        for w in transposed[g].row_ones(x) {
            for f in seq.factors_at(w) {
                if f != g && good[f].insert(w) {
                    queue.push((w, f));
                }
            }
        }
    }
    good
}

/// `β ∘ α` for `α` on `(X, Y)` and `β` on `(Y, Z)`.
///
/// `(a, b)` is an edge of the result iff some walk from `a` to `b` through
/// the glued graph alternates strictly between edges of `α` and `β`, with
/// `a, b ∈ X ⊔ Z`.
pub fn compose(beta: &Pbr, alpha: &Pbr) -> Result<Pbr> {
    Ok(AlephSequence::pair(alpha, beta)?.composite())
}

/// Composite of `factors[0]`, then `factors[1]`, and so on.
pub fn compose_all(factors: &[Pbr]) -> Result<Pbr> {
    Ok(AlephSequence::new(factors.to_vec())?.composite())
}
