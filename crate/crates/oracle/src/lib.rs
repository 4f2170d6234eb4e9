//! Reference implementations by explicit enumeration.
//!
//! Everything here works on plain edge lists over `(layer, index)` vertices
//! and shares no code with the bitset engine beyond reading a factor's
//! edges. The functions are exponential in the worst case and only meant for
//! tests on small inputs.

use std::collections::{BTreeSet, HashMap, HashSet};

use pbr_core::classical::{BinaryRelation, Partition};
use pbr_core::deform::TaggedEdge;
use pbr_core::{Error as CoreError, Pbr};

/// Frothy edge limit for [`naive_frothy_classes`].
pub const MAX_FROTHY_EDGES: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum OracleError {
    #[error("instance too large: {0} frothy edges (limit {MAX_FROTHY_EDGES})")]
    InstanceTooLarge(usize),
    #[error(transparent)]
    Core(#[from] CoreError),
}

/// A vertex of the glued space: object position and index inside it.
type V = (usize, usize);

/// One edge of one factor, with glued endpoints.
#[derive(Clone, Copy, Debug)]
struct E {
    factor: usize,
    local: (usize, usize),
    from: V,
    to: V,
}

/// A composable sequence as explicit edge lists.
struct Glued {
    layers: usize,
    edges: Vec<E>,
}

impl Glued {
    fn new(seq: &[Pbr]) -> Result<Glued, OracleError> {
        if seq.is_empty() {
            return Err(CoreError::EmptySequence.into());
        }
        for w in seq.windows(2) {
            if w[0].codomain() != w[1].domain() {
                return Err(CoreError::IncomposableShapes {
                    left: w[0].codomain().to_vec(),
                    right: w[1].domain().to_vec(),
                }
                .into());
            }
        }
        let mut edges = Vec::new();
        for (f, p) in seq.iter().enumerate() {
            let d = p.dom_len();
            let place = |i: usize| if i < d { (f, i) } else { (f + 1, i - d) };
            for e in p.edges() {
                let u = p.index_of(&e.source).expect("edge of p");
                let w = p.index_of(&e.target).expect("edge of p");
                edges.push(E {
                    factor: f,
                    local: (u, w),
                    from: place(u),
                    to: place(w),
                });
            }
        }
        Ok(Glued {
            layers: seq.len() + 1,
            edges,
        })
    }

    fn is_boundary(&self, v: V) -> bool {
        v.0 == 0 || v.0 == self.layers - 1
    }

    /// Every vertex at the end of a connected sequence that starts at
    /// `start` (or continues from `start` after an edge of factor `last`),
    /// with the factor of the final edge. Depth-first over walks that never
    /// repeat a (vertex, last factor) state.
    fn walks_from(&self, start: V, last: Option<usize>) -> HashSet<(V, usize)> {
        fn go(g: &Glued, at: V, last: Option<usize>, seen: &mut HashSet<(V, usize)>) {
            for e in &g.edges {
                if e.from == at && Some(e.factor) != last && seen.insert((e.to, e.factor)) {
                    go(g, e.to, Some(e.factor), seen);
                }
            }
        }
        let mut seen = HashSet::new();
        go(self, start, last, &mut seen);
        seen
    }

    /// Some connected sequence from a boundary vertex arrives at `v` with a
    /// last edge not from `factor`.
    fn reachable_avoiding(&self, v: V, factor: usize) -> bool {
        if self.is_boundary(v) {
            return true;
        }
        (0..self.layers)
            .flat_map(|l| self.layer_vertices(l))
            .filter(|&b| self.is_boundary(b))
            .any(|b| self.walks_from(b, None).iter().any(|&(w, f)| w == v && f != factor))
    }

    /// Some connected sequence leaves `v` by an edge not from `factor` and
    /// ends on the boundary.
    fn coreachable_avoiding(&self, v: V, factor: usize) -> bool {
        self.is_boundary(v)
            || self
                .walks_from(v, Some(factor))
                .iter()
                .any(|&(w, _)| self.is_boundary(w))
    }

    fn layer_vertices(&self, l: usize) -> Vec<V> {
        let mut vs: BTreeSet<V> = BTreeSet::new();
        for e in &self.edges {
            for v in [e.from, e.to] {
                if v.0 == l {
                    vs.insert(v);
                }
            }
        }
        vs.into_iter().collect()
    }

    fn frothy(&self) -> Vec<E> {
        self.edges
            .iter()
            .copied()
            .filter(|e| !(self.reachable_avoiding(e.from, e.factor) && self.coreachable_avoiding(e.to, e.factor)))
            .collect()
    }
}

/// `b ∘ a` by enumerating connected sequences from each boundary vertex.
pub fn naive_compose(b: &Pbr, a: &Pbr) -> Result<Pbr, OracleError> {
    let g = Glued::new(&[a.clone(), b.clone()])?;
    let d = a.dom_len();
    let index = |v: V| if v.0 == 0 { v.1 } else { d + v.1 };
    let mut out = Vec::new();
    let starts = (0..d).map(|i| (0, i)).chain((0..b.cod_len()).map(|i| (2, i)));
    for s in starts {
        for (w, _) in g.walks_from(s, None) {
            if g.is_boundary(w) {
                out.push((index(s), index(w)));
            }
        }
    }
    Ok(Pbr::from_indices(a.domain().to_vec(), b.codomain().to_vec(), out)?)
}

/// Edges lying on no boundary-to-boundary connected sequence.
pub fn naive_frothy(seq: &[Pbr]) -> Result<BTreeSet<TaggedEdge>, OracleError> {
    let g = Glued::new(seq)?;
    Ok(g.frothy()
        .into_iter()
        .map(|e| TaggedEdge {
            factor: e.factor,
            source: e.local.0,
            target: e.local.1,
        })
        .collect())
}

/// Number of classes of frothy cycles.
///
/// Enumerates every simple cycle of frothy edges (each edge used at most
/// once, consecutive edges from different factors, including the wrap
/// around) and merges the edges of each cycle. Every closed alternating walk
/// splits into such simple cycles that pairwise chain through shared edges,
/// so the merged groups are exactly the classes.
pub fn naive_frothy_classes(seq: &[Pbr]) -> Result<usize, OracleError> {
    let g = Glued::new(seq)?;
    let frothy = g.frothy();
    if frothy.len() > MAX_FROTHY_EDGES {
        return Err(OracleError::InstanceTooLarge(frothy.len()));
    }
    let n = frothy.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        if p[x] == x {
            x
        } else {
            let r = find(p, p[x]);
            p[x] = r;
            r
        }
    }
    let mut on_cycle = vec![false; n];
    // cycles are rooted at their smallest edge index
    fn extend(es: &[E], root: usize, path: &mut Vec<usize>, used: &mut [bool], cycles: &mut Vec<Vec<usize>>) {
        let last = es[*path.last().unwrap()];
        for j in root..es.len() {
            let e = es[j];
            if e.from != last.to || e.factor == last.factor {
                continue;
            }
            if j == root {
                if path.len() >= 2 {
                    cycles.push(path.clone());
                }
                continue;
            }
            if !used[j] {
                used[j] = true;
                path.push(j);
                extend(es, root, path, used, cycles);
                path.pop();
                used[j] = false;
            }
        }
    }
    let mut cycles = Vec::new();
    for root in 0..n {
        let mut used = vec![false; n];
        used[root] = true;
        extend(&frothy, root, &mut vec![root], &mut used, &mut cycles);
    }
    for c in &cycles {
        for &e in c {
            on_cycle[e] = true;
            let (ra, rb) = (find(&mut parent, c[0]), find(&mut parent, e));
            parent[ra] = rb;
        }
    }
    let roots: HashSet<usize> = (0..n).filter(|&e| on_cycle[e]).map(|e| find(&mut parent, e)).collect();
    Ok(roots.len())
}

/// `b ∘ a` for relations as `{(x, z) : ∃y. (x, y) ∈ a ∧ (y, z) ∈ b}`.
pub fn naive_brel_compose(b: &BinaryRelation, a: &BinaryRelation) -> Result<BinaryRelation, OracleError> {
    let pa = a.pairs();
    let pb = b.pairs();
    let mut out = BTreeSet::new();
    for (x, y) in &pa {
        for (y2, z) in &pb {
            if y == y2 {
                out.insert((x.clone(), z.clone()));
            }
        }
    }
    let pairs: Vec<(String, String)> = out.into_iter().collect();
    Ok(BinaryRelation::from_pairs(
        a.domain().to_vec(),
        b.codomain().to_vec(),
        &pairs,
    )?)
}

/// Components of the glued partitions by breadth-first search: the
/// composite and the number of components inside `Y`.
pub fn naive_partition_compose(b: &Partition, a: &Partition) -> Result<(Partition, usize), OracleError> {
    if a.codomain() != b.domain() {
        return Err(CoreError::IncomposableShapes {
            left: a.codomain().to_vec(),
            right: b.domain().to_vec(),
        }
        .into());
    }
    let (nx, ny, nz) = (a.domain().len(), a.codomain().len(), b.codomain().len());
    let n = nx + ny + nz;
    let mut adj: HashMap<usize, Vec<usize>> = HashMap::new();
    for (part, off) in [(a, 0), (b, nx)] {
        let ids = part.block_ids();
        for i in 0..ids.len() {
            for j in 0..ids.len() {
                if ids[i] == ids[j] {
                    adj.entry(off + i).or_default().push(off + j);
                }
            }
        }
    }
    let mut comp = vec![usize::MAX; n];
    let mut count = 0;
    for s in 0..n {
        if comp[s] != usize::MAX {
            continue;
        }
        let mut queue = std::collections::VecDeque::from([s]);
        comp[s] = count;
        while let Some(v) = queue.pop_front() {
            for &w in adj.get(&v).into_iter().flatten() {
                if comp[w] == usize::MAX {
                    comp[w] = count;
                    queue.push_back(w);
                }
            }
        }
        count += 1;
    }
    let outer: Vec<usize> = (0..nx).chain(nx + ny..n).collect();
    let touching: HashSet<usize> = outer.iter().map(|&v| comp[v]).collect();
    let inner: HashSet<usize> = (nx..nx + ny)
        .map(|v| comp[v])
        .filter(|c| !touching.contains(c))
        .collect();
    let ids: Vec<usize> = outer.iter().map(|&v| comp[v]).collect();
    let p = Partition::from_block_ids(a.domain().to_vec(), b.codomain().to_vec(), &ids)?;
    Ok((p, inner.len()))
}

/// All PBRs on `(domain, codomain)`; only for tiny shapes.
pub fn all_pbrs(domain: &[String], codomain: &[String]) -> Vec<Pbr> {
    let n = domain.len() + codomain.len();
    let cells = n * n;
    assert!(cells <= 20, "too many PBRs to enumerate");
    (0u32..1 << cells)
        .map(|mask| {
            let edges = (0..cells).filter(|c| mask >> c & 1 == 1).map(|c| (c / n, c % n));
            Pbr::from_indices(domain.to_vec(), codomain.to_vec(), edges).expect("distinct labels")
        })
        .collect()
}

/// All relations `domain → codomain`; only for tiny shapes.
pub fn all_relations(domain: &[String], codomain: &[String]) -> Vec<BinaryRelation> {
    let (n, m) = (domain.len(), codomain.len());
    let cells = n * m;
    assert!(cells <= 20, "too many relations to enumerate");
    (0u32..1 << cells)
        .map(|mask| {
            let mut r = BinaryRelation::empty(domain.to_vec(), codomain.to_vec()).expect("distinct labels");
            for c in (0..cells).filter(|c| mask >> c & 1 == 1) {
                r.insert(c / m, c % m);
            }
            r
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use pbr_core::{labels, Edge, Vertex};

    #[test]
    fn loop_pair_has_one_class() {
        let y = vec!["y".to_string()];
        let a = Pbr::from_edges(vec![], y.clone(), &[Edge::new(Vertex::cod("y"), Vertex::cod("y"))]).unwrap();
        let b = Pbr::from_edges(y, vec![], &[Edge::new(Vertex::dom("y"), Vertex::dom("y"))]).unwrap();
        assert_eq!(naive_frothy_classes(&[a.clone(), b.clone()]).unwrap(), 1);
        assert_eq!(naive_frothy(&[a, b]).unwrap().len(), 2);
    }

    #[test]
    fn identity_is_neutral() {
        let x = labels("x", 2);
        let e = Pbr::identity(&x).unwrap();
        let f = Pbr::full(&x, &x).unwrap();
        assert_eq!(naive_compose(&e, &f).unwrap(), f);
        assert_eq!(naive_compose(&f, &e).unwrap(), f);
        assert_eq!(naive_frothy_classes(&[e, f]).unwrap(), 0);
    }

    #[test]
    fn too_large_is_rejected() {
        let y = labels("y", 3);
        let a = Pbr::full(&[], &y).unwrap();
        let b = Pbr::full(&y, &[]).unwrap();
        assert!(matches!(
            naive_frothy_classes(&[a, b]),
            Err(OracleError::InstanceTooLarge(18))
        ));
    }

    #[test]
    fn enumerations_have_expected_sizes() {
        let x = labels("x", 1);
        assert_eq!(all_pbrs(&x, &x).len(), 16);
        assert_eq!(all_relations(&labels("x", 2), &labels("y", 2)).len(), 16);
    }
}
