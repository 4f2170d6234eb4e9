//! Binary relations as Boolean matrices and their two embeddings into PBRs.

use crate::bits::BitMatrix;
use crate::compose::compose;
use crate::error::{Error, Result};
use crate::pbr::{check_distinct, Pbr, Side};

/// A binary relation from `X` to `Y`.
///
/// Stored as successor sets: row `x` holds the `y` with `(x, y)` related.
/// [`BinaryRelation::matrix`] gives the `|Y| × |X|` column-indexed-by-`X`
/// view.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct BinaryRelation {
    domain: Vec<String>,
    codomain: Vec<String>,
    succ: BitMatrix,
}

/// Structural kinds of a relation read as a (partial) map `X → Y`.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub struct RelationKind {
    pub map: bool,
    pub injective_map: bool,
    pub partial_injective: bool,
    pub surjective_map: bool,
    pub partial_surjective: bool,
}

impl BinaryRelation {
    pub fn from_successors(domain: Vec<String>, codomain: Vec<String>, succ: BitMatrix) -> Result<Self> {
        check_distinct(&domain, Side::Domain)?;
        check_distinct(&codomain, Side::Codomain)?;
        if (succ.rows(), succ.cols()) != (domain.len(), codomain.len()) {
            return Err(Error::InvalidRelation(format!(
                "matrix is {}x{}, expected {}x{}",
                succ.rows(),
                succ.cols(),
                domain.len(),
                codomain.len()
            )));
        }
        Ok(BinaryRelation { domain, codomain, succ })
    }

    pub fn empty(domain: Vec<String>, codomain: Vec<String>) -> Result<Self> {
        let succ = BitMatrix::new(domain.len(), codomain.len());
        BinaryRelation::from_successors(domain, codomain, succ)
    }

    /// The equality relation on `x`.
    pub fn identity(x: &[String]) -> Result<Self> {
        BinaryRelation::from_successors(x.to_vec(), x.to_vec(), BitMatrix::identity(x.len()))
    }

    /// `ω`: everything related to everything.
    pub fn full(x: &[String], y: &[String]) -> Result<Self> {
        BinaryRelation::from_successors(x.to_vec(), y.to_vec(), BitMatrix::full(x.len(), y.len()))
    }

    /// Builds from `(x, y)` label pairs.
    pub fn from_pairs(domain: Vec<String>, codomain: Vec<String>, pairs: &[(String, String)]) -> Result<Self> {
        let mut r = BinaryRelation::empty(domain, codomain)?;
        for (x, y) in pairs {
            let i = r
                .domain
                .iter()
                .position(|l| l == x)
                .ok_or_else(|| Error::DanglingEdgeEndpoint {
                    label: x.clone(),
                    side: Side::Domain,
                })?;
            let j = r
                .codomain
                .iter()
                .position(|l| l == y)
                .ok_or_else(|| Error::DanglingEdgeEndpoint {
                    label: y.clone(),
                    side: Side::Codomain,
                })?;
            if r.succ.get(i, j) {
                return Err(Error::InvalidRelation(format!("pair ({x}, {y}) listed twice")));
            }
            r.succ.set(i, j);
        }
        Ok(r)
    }

    pub fn domain(&self) -> &[String] {
        &self.domain
    }

    pub fn codomain(&self) -> &[String] {
        &self.codomain
    }

    pub fn successors(&self) -> &BitMatrix {
        &self.succ
    }

    #[inline]
    pub fn related(&self, x: usize, y: usize) -> bool {
        self.succ.get(x, y)
    }

    pub fn insert(&mut self, x: usize, y: usize) {
        self.succ.set(x, y);
    }

    /// Related pairs as label pairs, in index order.
    pub fn pairs(&self) -> Vec<(String, String)> {
        self.succ
            .ones()
            .map(|(i, j)| (self.domain[i].clone(), self.codomain[j].clone()))
            .collect()
    }

    /// Boolean matrix with rows indexed by `Y` and columns by `X`.
    pub fn matrix(&self) -> Vec<Vec<bool>> {
        (0..self.codomain.len())
            .map(|y| (0..self.domain.len()).map(|x| self.succ.get(x, y)).collect())
            .collect()
    }

    pub fn is_full(&self) -> bool {
        self.succ.is_full()
    }

    /// The involution `⋈`.
    pub fn transpose(&self) -> BinaryRelation {
        BinaryRelation {
            domain: self.codomain.clone(),
            codomain: self.domain.clone(),
            succ: self.succ.transpose(),
        }
    }

    /// Column and row counts as in the classical map subcategories.
    pub fn kind(&self) -> RelationKind {
        let (nx, ny) = (self.domain.len(), self.codomain.len());
        let col: Vec<usize> = (0..nx).map(|x| self.succ.row_ones(x).count()).collect();
        let row: Vec<usize> = {
            let t = self.succ.transpose();
            (0..ny).map(|y| t.row_ones(y).count()).collect()
        };
        let map = col.iter().all(|&c| c == 1);
        let cols_le1 = col.iter().all(|&c| c <= 1);
        let rows_le1 = row.iter().all(|&r| r <= 1);
        let rows_ge1 = row.iter().all(|&r| r >= 1);
        RelationKind {
            map,
            injective_map: map && rows_le1,
            partial_injective: cols_le1 && rows_le1,
            surjective_map: map && rows_ge1,
            partial_surjective: cols_le1 && rows_ge1,
        }
    }
}

/// `b ∘ a`: first `a`, then `b`.
pub fn brel_compose(b: &BinaryRelation, a: &BinaryRelation) -> Result<BinaryRelation> {
    if a.codomain != b.domain {
        return Err(Error::IncomposableShapes {
            left: a.codomain.clone(),
            right: b.domain.clone(),
        });
    }
    Ok(BinaryRelation {
        domain: a.domain.clone(),
        codomain: b.codomain.clone(),
        succ: a.succ.then(&b.succ),
    })
}

/// First inclusion: each related pair `(x, y)` becomes the arrow `x@d → y@c`.
pub fn phi1(a: &BinaryRelation) -> Pbr {
    let d = a.domain.len();
    Pbr::from_indices(
        a.domain.clone(),
        a.codomain.clone(),
        a.succ.ones().map(|(x, y)| (x, d + y)),
    )
    .expect("relation labels are distinct")
}

/// Second inclusion: `Φ₁(θ) ∪ Φ₁(θ⋈)` read on the same `(X, Y)`, so every
/// pair contributes the two arrows `x@d → y@c` and `y@c → x@d`.
pub fn phi2(a: &BinaryRelation) -> Pbr {
    let d = a.domain.len();
    Pbr::from_indices(
        a.domain.clone(),
        a.codomain.clone(),
        a.succ.ones().flat_map(|(x, y)| [(x, d + y), (d + y, x)]),
    )
    .expect("relation labels are distinct")
}

/// Membership in the idempotent subcategory cut out by the `ε̂`:
/// `p = ε̂_Y ∘ p ∘ ε̂_X`.
pub fn is_in_subcategory_e_hat(p: &Pbr) -> bool {
    let ex = Pbr::identity_hat(p.domain()).expect("validated labels");
    let ey = Pbr::identity_hat(p.codomain()).expect("validated labels");
    let sandwich = compose(&ey, &compose(p, &ex).expect("shapes agree")).expect("shapes agree");
    sandwich == *p
}

/// Direct reading of the same subcategory: every edge runs `X@d → Y@c`.
pub fn is_phi1_image(p: &Pbr) -> bool {
    p.index_edges()
        .all(|(u, v)| p.side_of(u) == Side::Domain && p.side_of(v) == Side::Codomain)
}
