//! The partition category, its map into PBRs, and the loop-counting defect.

use crate::deform::DeformedMorphism;
use crate::error::{Error, Result};
use crate::pbr::{check_distinct, Pbr, Side, Vertex};

/// Minimal disjoint-set forest with path halving.
#[derive(Clone, Debug)]
pub(crate) struct DisjointSets {
    parent: Vec<usize>,
}

impl DisjointSets {
    pub(crate) fn new(n: usize) -> Self {
        DisjointSets {
            parent: (0..n).collect(),
        }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    pub(crate) fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            // keep the smaller index as root
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi] = lo;
        }
    }
}

/// A set partition of `X ⊔ Y`.
///
/// Vertices use the PBR index convention (domain first). Blocks are numbered
/// in order of their least vertex, so equal partitions compare equal.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Partition {
    domain: Vec<String>,
    codomain: Vec<String>,
    block_of: Vec<usize>,
}

impl Partition {
    /// Canonicalises an arbitrary block labelling of the `|X| + |Y|` vertices.
    pub fn from_block_ids(domain: Vec<String>, codomain: Vec<String>, ids: &[usize]) -> Result<Self> {
        check_distinct(&domain, Side::Domain)?;
        check_distinct(&codomain, Side::Codomain)?;
        if ids.len() != domain.len() + codomain.len() {
            return Err(Error::InvalidPartition(format!(
                "{} block ids for {} vertices",
                ids.len(),
                domain.len() + codomain.len()
            )));
        }
        Ok(Partition {
            domain,
            codomain,
            block_of: canonical(ids),
        })
    }

    /// Builds from explicit blocks of vertices; blocks must be non-empty,
    /// disjoint and cover `X ⊔ Y`.
    pub fn from_blocks(domain: Vec<String>, codomain: Vec<String>, blocks: &[Vec<Vertex>]) -> Result<Self> {
        let shape = Pbr::empty(domain.clone(), codomain.clone())?;
        let mut ids = vec![usize::MAX; shape.len()];
        for (b, block) in blocks.iter().enumerate() {
            if block.is_empty() {
                return Err(Error::InvalidPartition("empty block".into()));
            }
            for v in block {
                let i = shape.index_of(v).ok_or_else(|| Error::DanglingEdgeEndpoint {
                    label: v.label.clone(),
                    side: v.side,
                })?;
                if ids[i] != usize::MAX {
                    return Err(Error::InvalidPartition(format!("{v} lies in two blocks")));
                }
                ids[i] = b;
            }
        }
        if let Some(i) = ids.iter().position(|&b| b == usize::MAX) {
            return Err(Error::InvalidPartition(format!("{} is in no block", shape.vertex(i))));
        }
        Partition::from_block_ids(domain, codomain, &ids)
    }

    /// `π_X`: the blocks `{x@d, x@c}`.
    pub fn identity(x: &[String]) -> Result<Self> {
        let n = x.len();
        let ids: Vec<usize> = (0..2 * n).map(|i| i % n.max(1)).collect();
        Partition::from_block_ids(x.to_vec(), x.to_vec(), &ids)
    }

    pub fn singletons(domain: Vec<String>, codomain: Vec<String>) -> Result<Self> {
        let ids: Vec<usize> = (0..domain.len() + codomain.len()).collect();
        Partition::from_block_ids(domain, codomain, &ids)
    }

    pub fn domain(&self) -> &[String] {
        &self.domain
    }

    pub fn codomain(&self) -> &[String] {
        &self.codomain
    }

    pub fn len(&self) -> usize {
        self.block_of.len()
    }

    pub fn is_empty(&self) -> bool {
        self.block_of.is_empty()
    }

    pub fn block_ids(&self) -> &[usize] {
        &self.block_of
    }

    pub fn block_count(&self) -> usize {
        self.block_of.iter().max().map_or(0, |m| m + 1)
    }

    /// Blocks as vertex lists, in canonical order.
    pub fn blocks(&self) -> Vec<Vec<Vertex>> {
        let shape = Pbr::empty(self.domain.clone(), self.codomain.clone()).expect("validated");
        let mut out = vec![Vec::new(); self.block_count()];
        for (i, &b) in self.block_of.iter().enumerate() {
            out[b].push(shape.vertex(i));
        }
        out
    }
}

fn canonical(ids: &[usize]) -> Vec<usize> {
    let mut map = std::collections::HashMap::new();
    ids.iter()
        .map(|id| {
            let next = map.len();
            *map.entry(*id).or_insert(next)
        })
        .collect()
}

/// Glues `a` on `(X, Y)` and `b` on `(Y, Z)` along `Y`; returns the forest
/// over `X ⊔ Y ⊔ Z` (indices in that order) after merging blocks.
fn glue(b: &Partition, a: &Partition) -> Result<(DisjointSets, usize, usize, usize)> {
    if a.codomain != b.domain {
        return Err(Error::IncomposableShapes {
            left: a.codomain.clone(),
            right: b.domain.clone(),
        });
    }
    let (nx, ny, nz) = (a.domain.len(), a.codomain.len(), b.codomain.len());
    let mut ds = DisjointSets::new(nx + ny + nz);
    for (part, offset) in [(a, 0), (b, nx)] {
        let mut first: Vec<Option<usize>> = vec![None; part.block_count()];
        for (i, &blk) in part.block_of.iter().enumerate() {
            match first[blk] {
                Some(r) => ds.union(r, offset + i),
                None => first[blk] = Some(offset + i),
            }
        }
    }
    Ok((ds, nx, ny, nz))
}

/// `b ∘ a`: connected components of the glued diagram restricted to `X ⊔ Z`.
pub fn partition_compose(b: &Partition, a: &Partition) -> Result<Partition> {
    let (mut ds, nx, ny, nz) = glue(b, a)?;
    let ids: Vec<usize> = (0..nx).chain(nx + ny..nx + ny + nz).map(|v| ds.find(v)).collect();
    Partition::from_block_ids(a.domain.clone(), b.codomain.clone(), &ids)
}

/// `𝔭(a, b)`: the number of glued components lying entirely inside `Y`.
pub fn partition_defect(b: &Partition, a: &Partition) -> Result<usize> {
    let (mut ds, nx, ny, nz) = glue(b, a)?;
    let n = nx + ny + nz;
    let mut touches_boundary = vec![false; n];
    for v in (0..nx).chain(nx + ny..n) {
        let r = ds.find(v);
        touches_boundary[r] = true;
    }
    let mut roots: Vec<usize> = (nx..nx + ny)
        .map(|v| ds.find(v))
        .filter(|&r| !touches_boundary[r])
        .collect();
    roots.sort_unstable();
    roots.dedup();
    Ok(roots.len())
}

/// `Ψ`: the partition read as an equivalence relation on `X ⊔ Y`.
pub fn psi(a: &Partition) -> Pbr {
    let n = a.len();
    let edges = (0..n).flat_map(|u| {
        (0..n)
            .filter(move |&v| a.block_of[u] == a.block_of[v])
            .map(move |v| (u, v))
    });
    Pbr::from_indices(a.domain.clone(), a.codomain.clone(), edges).expect("validated labels")
}

/// A morphism of the deformed partition category.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct DeformedPartition {
    pub partition: Partition,
    pub exponent: u64,
}

impl DeformedPartition {
    pub fn new(partition: Partition, exponent: u64) -> Self {
        DeformedPartition { partition, exponent }
    }

    /// `Ψ̄((α, k)) = (Ψ(α), k)`.
    pub fn psi_bar(&self) -> DeformedMorphism {
        DeformedMorphism::new(psi(&self.partition), self.exponent)
    }
}

/// `(b, m) ⋄ (a, k) = (b ∘ a, m + k + 𝔭(a, b))`.
pub fn compose_deformed_partition(b: &DeformedPartition, a: &DeformedPartition) -> Result<DeformedPartition> {
    let defect = partition_defect(&b.partition, &a.partition)? as u64;
    Ok(DeformedPartition {
        partition: partition_compose(&b.partition, &a.partition)?,
        exponent: a.exponent + b.exponent + defect,
    })
}
