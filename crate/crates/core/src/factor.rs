//! Pure PBRs, polarized idempotents, the polarized factorization and
//! block-wise composition.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bits::BitMatrix;
use crate::classical::{brel_compose, BinaryRelation};
use crate::compose::compose;
use crate::error::{Error, Result};
use crate::pbr::{Pbr, Side};

/// Every edge joins a domain vertex and a codomain vertex.
pub fn is_pure(p: &Pbr) -> bool {
    p.index_edges().all(|(u, v)| p.side_of(u) != p.side_of(v))
}

/// A PBR known to be pure.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct PurePbr(Pbr);

impl PurePbr {
    pub fn new(p: Pbr) -> Option<Self> {
        is_pure(&p).then_some(PurePbr(p))
    }

    pub fn as_pbr(&self) -> &Pbr {
        &self.0
    }

    pub fn into_pbr(self) -> Pbr {
        self.0
    }
}

/// Composes two pure PBRs and checks the result is pure.
pub fn pure_closure_check(b: &PurePbr, a: &PurePbr) -> Result<PurePbr> {
    let c = compose(&b.0, &a.0)?;
    PurePbr::new(c).ok_or_else(|| Error::ClosureViolation("composite of pure PBRs is not pure".into()))
}

/// A pair of relations `X → Y` and `Y → X`; the first composes covariantly,
/// the second contravariantly.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct DoubleMorphism {
    pub forward: BinaryRelation,
    pub backward: BinaryRelation,
}

impl DoubleMorphism {
    pub fn new(forward: BinaryRelation, backward: BinaryRelation) -> Result<Self> {
        if forward.domain() != backward.codomain() || forward.codomain() != backward.domain() {
            return Err(Error::InvalidRelation(
                "forward and backward parts have mismatched shapes".into(),
            ));
        }
        Ok(DoubleMorphism { forward, backward })
    }

    pub fn identity(x: &[String]) -> Result<Self> {
        Ok(DoubleMorphism {
            forward: BinaryRelation::identity(x)?,
            backward: BinaryRelation::identity(x)?,
        })
    }
}

/// `(β', γ') · (β, γ) = (β'β, γγ')`.
pub fn double_compose(q: &DoubleMorphism, p: &DoubleMorphism) -> Result<DoubleMorphism> {
    Ok(DoubleMorphism {
        forward: brel_compose(&q.forward, &p.forward)?,
        backward: brel_compose(&p.backward, &q.backward)?,
    })
}

/// Splits a pure PBR into its left-to-right and right-to-left arrows.
pub fn pure_to_double(p: &PurePbr) -> DoubleMorphism {
    let p = &p.0;
    let forward = BinaryRelation::from_successors(
        p.domain().to_vec(),
        p.codomain().to_vec(),
        p.block(Side::Domain, Side::Codomain),
    )
    .expect("validated labels");
    let backward = BinaryRelation::from_successors(
        p.codomain().to_vec(),
        p.domain().to_vec(),
        p.block(Side::Codomain, Side::Domain),
    )
    .expect("validated labels");
    DoubleMorphism { forward, backward }
}

pub fn double_to_pure(m: &DoubleMorphism) -> PurePbr {
    let d = m.forward.domain().len();
    let edges = m
        .forward
        .successors()
        .ones()
        .map(|(x, y)| (x, d + y))
        .chain(m.backward.successors().ones().map(|(y, x)| (d + y, x)));
    let p =
        Pbr::from_indices(m.forward.domain().to_vec(), m.forward.codomain().to_vec(), edges).expect("validated labels");
    PurePbr(p)
}

/// Which side carries the extra edges of a polarized idempotent.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Polarity {
    /// Extra edges inside the codomain.
    Left,
    /// Extra edges inside the domain.
    Right,
}

impl Polarity {
    fn side(self) -> Side {
        match self {
            Polarity::Left => Side::Codomain,
            Polarity::Right => Side::Domain,
        }
    }
}

fn is_polarized(p: &Pbr, pol: Polarity) -> bool {
    if p.domain() != p.codomain() {
        return false;
    }
    let n = p.dom_len();
    let id = BitMatrix::identity(n);
    let cross_ok = p.block(Side::Domain, Side::Codomain) == id && p.block(Side::Codomain, Side::Domain) == id;
    let other = pol.side().flip();
    cross_ok && p.block(other, other).is_empty()
}

/// Contains `ε_X`; every other edge lies inside the codomain.
pub fn is_left_polarized(p: &Pbr) -> bool {
    is_polarized(p, Polarity::Left)
}

/// Contains `ε_X`; every other edge lies inside the domain.
pub fn is_right_polarized(p: &Pbr) -> bool {
    is_polarized(p, Polarity::Right)
}

/// `ε_X` plus `extra` (a relation on `X`, as successor rows) placed inside
/// one side.
pub fn polarized(x: &[String], extra: &BitMatrix, pol: Polarity) -> Result<Pbr> {
    let n = x.len();
    let off = match pol {
        Polarity::Left => n,
        Polarity::Right => 0,
    };
    let mut p = Pbr::identity(x)?;
    for (i, j) in extra.ones() {
        p.insert(off + i, off + j);
    }
    Ok(p)
}

/// All polarized idempotents on `x`, indexed by their extra-edge relation
/// read as a bit mask. Only meant for small `x`.
pub fn all_polarized(x: &[String], pol: Polarity) -> Vec<(BitMatrix, Pbr)> {
    let n = x.len();
    let cells = n * n;
    assert!(cells < 32, "too many polarized idempotents to enumerate");
    (0u64..1 << cells)
        .map(|mask| {
            let mut extra = BitMatrix::new(n, n);
            for c in 0..cells {
                if mask >> c & 1 == 1 {
                    extra.set(c / n, c % n);
                }
            }
            let p = polarized(x, &extra, pol).expect("validated labels");
            (extra, p)
        })
        .collect()
}

/// Checks that polarized idempotents of one polarity form a commutative
/// band isomorphic to relations on `x` under union. Exhaustive for
/// `|x| ≤ 3`, otherwise run on 64 seeded random elements. Returns the number
/// of elements examined.
pub fn polarized_monoid_check(x: &[String], pol: Polarity) -> Result<usize> {
    let elems = if x.len() <= 3 {
        all_polarized(x, pol)
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let n = x.len();
        (0..64)
            .map(|_| {
                let mut extra = BitMatrix::new(n, n);
                for i in 0..n {
                    for j in 0..n {
                        if rng.random::<bool>() {
                            extra.set(i, j);
                        }
                    }
                }
                let p = polarized(x, &extra, pol).expect("validated labels");
                (extra, p)
            })
            .collect()
    };
    let fail = |msg: String| Err(Error::AssertionFailure(msg));
    for (ea, a) in &elems {
        if compose(a, a)? != *a {
            return fail(format!("{a} is not idempotent"));
        }
        for (eb, b) in &elems {
            let ab = compose(a, b)?;
            if !is_polarized(&ab, pol) {
                return fail(format!("{a} ∘ {b} is not polarized"));
            }
            if ab != compose(b, a)? {
                return fail(format!("{a} and {b} do not commute"));
            }
            if ab != polarized(x, &ea.union(eb), pol)? {
                return fail(format!("{a} ∘ {b} is not the union of extra edges"));
            }
        }
    }
    Ok(elems.len())
}

/// The three factors of `α = left ∘ pure ∘ right`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Factorization {
    /// Left polarized on `(Y, Y)`.
    pub left: Pbr,
    pub pure: PurePbr,
    /// Right polarized on `(X, X)`.
    pub right: Pbr,
}

impl Factorization {
    pub fn recompose(&self) -> Pbr {
        let inner = compose(self.pure.as_pbr(), &self.right).expect("shapes agree");
        compose(&self.left, &inner).expect("shapes agree")
    }
}

/// Splits `a` into the domain-internal edges, the crossing edges and the
/// codomain-internal edges.
pub fn factorize(a: &Pbr) -> Factorization {
    let b = decompose_blocks(a);
    let left = polarized(a.codomain(), &b.a22, Polarity::Left).expect("validated labels");
    let right = polarized(a.domain(), &b.a11, Polarity::Right).expect("validated labels");
    let pure = BlockDecomposition {
        a11: BitMatrix::new(b.a11.rows(), b.a11.cols()),
        a22: BitMatrix::new(b.a22.rows(), b.a22.cols()),
        ..b
    }
    .to_pbr();
    Factorization {
        left,
        pure: PurePbr(pure),
        right,
    }
}

/// The four edge blocks of a PBR on `(X, Y)` as successor matrices:
/// `a11` on `X × X`, `a12` on `X × Y`, `a21` on `Y × X`, `a22` on `Y × Y`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct BlockDecomposition {
    pub domain: Vec<String>,
    pub codomain: Vec<String>,
    pub a11: BitMatrix,
    pub a12: BitMatrix,
    pub a21: BitMatrix,
    pub a22: BitMatrix,
}

impl BlockDecomposition {
    pub fn to_pbr(&self) -> Pbr {
        let d = self.domain.len();
        let edges = self
            .a11
            .ones()
            .chain(self.a12.ones().map(|(i, j)| (i, d + j)))
            .chain(self.a21.ones().map(|(i, j)| (d + i, j)))
            .chain(self.a22.ones().map(|(i, j)| (d + i, d + j)));
        Pbr::from_indices(self.domain.clone(), self.codomain.clone(), edges).expect("validated labels")
    }
}

pub fn decompose_blocks(a: &Pbr) -> BlockDecomposition {
    BlockDecomposition {
        domain: a.domain().to_vec(),
        codomain: a.codomain().to_vec(),
        a11: a.block(Side::Domain, Side::Domain),
        a12: a.block(Side::Domain, Side::Codomain),
        a21: a.block(Side::Codomain, Side::Domain),
        a22: a.block(Side::Codomain, Side::Codomain),
    }
}

/// Blocks of `b ∘ a` from the blocks of `a` on `(X, Y)` and `b` on `(Y, Z)`.
///
/// With `S = (b11 a22)*` and `T = (a22 b11)*`, written in application order:
/// `12 = a12 S b12`, `21 = b21 T a21`, `11 = a11 ∪ a12 b11 T a21`,
/// `22 = b22 ∪ b21 a22 S b12`.
pub fn compose_blocks(b: &BlockDecomposition, a: &BlockDecomposition) -> Result<BlockDecomposition> {
    if a.codomain != b.domain {
        return Err(Error::IncomposableShapes {
            left: a.codomain.clone(),
            right: b.domain.clone(),
        });
    }
    let s = b.a11.then(&a.a22).star();
    let t = a.a22.then(&b.a11).star();
    Ok(BlockDecomposition {
        domain: a.domain.clone(),
        codomain: b.codomain.clone(),
        a11: a.a11.union(&a.a12.then(&b.a11).then(&t).then(&a.a21)),
        a12: a.a12.then(&s).then(&b.a12),
        a21: b.a21.then(&t).then(&a.a21),
        a22: b.a22.union(&b.a21.then(&a.a22).then(&s).then(&b.a12)),
    })
}

/// The four block conditions that force `b ∘ a` to be the full PBR:
/// `a12 b12`, `b21 a21`, `a12 b11 a21` and `b21 a22 b12` are all full.
pub fn full_product_conditions(b: &Pbr, a: &Pbr) -> bool {
    let (a, b) = (decompose_blocks(a), decompose_blocks(b));
    a.a12.then(&b.a12).is_full()
        && b.a21.then(&a.a21).is_full()
        && a.a12.then(&b.a11).then(&a.a21).is_full()
        && b.a21.then(&a.a22).then(&b.a12).is_full()
}

/// Relation view used by the double-morphism correspondence on diagonal
/// elements `(θ, θ⋈)`.
pub fn diagonal(theta: &BinaryRelation) -> DoubleMorphism {
    DoubleMorphism {
        forward: theta.clone(),
        backward: theta.transpose(),
    }
}
