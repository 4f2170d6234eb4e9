//! Oriented (partial) Brauer diagrams and the oriented Brauer category.
//!
//! Objects are nested pairs `X₁ ⊆ X₂`. A morphism `(X₁, X₂) → (Y₁, Y₂)` is an
//! oriented Brauer diagram on `(X₂, Y₂)` whose arrows all leave
//! `X₁@d ∪ (Y₂∖Y₁)@c` and enter `Y₁@c ∪ (X₂∖X₁)@d`, paired with an exponent.

use std::collections::HashSet;

use crate::compose::{compose, AlephSequence};
use crate::deform::frothy_class_count;
use crate::error::{Error, Result};
use crate::pbr::{check_distinct, Pbr, Side};

/// Number of edges incident to each vertex; a loop counts twice.
fn degrees(p: &Pbr) -> Vec<usize> {
    let mut deg = vec![0; p.len()];
    for (u, v) in p.index_edges() {
        deg[u] += 1;
        deg[v] += 1;
    }
    deg
}

/// Every vertex lies on at most one edge (loops disqualify their vertex).
pub fn is_oriented_partial_brauer(p: &Pbr) -> bool {
    degrees(p).iter().all(|&d| d <= 1)
}

/// Every vertex lies on exactly one edge.
pub fn is_oriented_brauer(p: &Pbr) -> bool {
    degrees(p).iter().all(|&d| d == 1)
}

/// Composes two oriented partial Brauer diagrams and checks the result is one
/// too. A [`Error::ClosureViolation`] here means the composition engine is
/// wrong, not the input.
pub fn closure_partial_brauer(b: &Pbr, a: &Pbr) -> Result<Pbr> {
    if !is_oriented_partial_brauer(a) || !is_oriented_partial_brauer(b) {
        return Err(Error::NotABrauerDiagram);
    }
    let c = compose(b, a)?;
    if !is_oriented_partial_brauer(&c) {
        return Err(Error::ClosureViolation(format!(
            "composite of partial Brauer diagrams has a vertex of degree > 1: {c}"
        )));
    }
    Ok(c)
}

/// Directed cycles of the glued middle layer that alternate `a`- and
/// `b`-edges. Both inputs must be oriented partial Brauer diagrams, so every
/// middle vertex has at most one edge from each factor and cycles cannot
/// share vertices.
fn middle_cycles(b: &Pbr, a: &Pbr) -> usize {
    let ny = a.cod_len();
    let ax = a.dom_len();
    // out-edge within Y, per factor, in Y-local indices
    let mut a_next = vec![None; ny];
    for (u, v) in a.index_edges() {
        if u >= ax && v >= ax {
            a_next[u - ax] = Some(v - ax);
        }
    }
    let mut b_next = vec![None; ny];
    for (u, v) in b.index_edges() {
        if u < ny && v < ny {
            b_next[u] = Some(v);
        }
    }
    let mut seen = vec![false; ny];
    let mut cycles = 0;
    for start in 0..ny {
        if seen[start] {
            continue;
        }
        // follow a, b, a, b, ... from `start`; a cycle must come back to
        // `start` right after a b-edge
        let mut path = vec![start];
        let mut cur = start;
        let mut use_a = true;
        let closed = loop {
            let next = if use_a { a_next[cur] } else { b_next[cur] };
            match next {
                None => break false,
                Some(w) => {
                    use_a = !use_a;
                    if w == start && use_a {
                        break true;
                    }
                    if path.len() > 2 * ny {
                        break false;
                    }
                    path.push(w);
                    cur = w;
                }
            }
        };
        if closed {
            cycles += 1;
            for v in path {
                seen[v] = true;
            }
        }
    }
    cycles
}

/// `𝔣((a, b))` for oriented partial Brauer diagrams, cross-checked against
/// a direct count of alternating middle cycles.
pub fn cycle_count_check(b: &Pbr, a: &Pbr) -> Result<usize> {
    if !is_oriented_partial_brauer(a) || !is_oriented_partial_brauer(b) {
        return Err(Error::NotABrauerDiagram);
    }
    let f = frothy_class_count(&AlephSequence::pair(a, b)?);
    let direct = middle_cycles(b, a);
    if f != direct {
        return Err(Error::AssertionFailure(format!(
            "frothy class count {f} differs from {direct} oriented middle cycles"
        )));
    }
    Ok(f)
}

/// Chord positions on the boundary circle: codomain top to bottom down the
/// left side, then domain bottom to top up the right side.
fn circle_position(p: &Pbr, i: usize) -> usize {
    let (d, c) = (p.dom_len(), p.cod_len());
    if i < d {
        c + (d - 1 - i)
    } else {
        i - d
    }
}

/// Whether the diagram can be drawn without crossings with both sides in
/// their declared order. Arrow direction is ignored.
pub fn is_planar(p: &Pbr) -> Result<bool> {
    if !is_oriented_partial_brauer(p) {
        return Err(Error::NotABrauerDiagram);
    }
    let chords: Vec<(usize, usize)> = p
        .index_edges()
        .map(|(u, v)| {
            let (a, b) = (circle_position(p, u), circle_position(p, v));
            (a.min(b), a.max(b))
        })
        .collect();
    for (i, &(a, b)) in chords.iter().enumerate() {
        for &(c, d) in &chords[i + 1..] {
            if (a < c && c < b && b < d) || (c < a && a < d && d < b) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// A nested pair `inner ⊆ outer`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct OObject {
    outer: Vec<String>,
    inner: Vec<bool>,
}

impl OObject {
    pub fn new(outer: Vec<String>, inner: &[String]) -> Result<Self> {
        check_distinct(&outer, Side::Domain)?;
        let inner_set: HashSet<&String> = inner.iter().collect();
        if inner_set.len() != inner.len() {
            return Err(Error::InvalidObject("inner set lists a label twice".into()));
        }
        if let Some(l) = inner.iter().find(|l| !outer.contains(l)) {
            return Err(Error::InvalidObject(format!(
                "inner label `{l}` is not in the outer set"
            )));
        }
        let mask = outer.iter().map(|l| inner_set.contains(l)).collect();
        Ok(OObject { outer, inner: mask })
    }

    pub fn outer(&self) -> &[String] {
        &self.outer
    }

    pub fn inner(&self) -> Vec<String> {
        self.outer
            .iter()
            .zip(&self.inner)
            .filter(|(_, &m)| m)
            .map(|(l, _)| l.clone())
            .collect()
    }

    #[inline]
    pub fn is_inner(&self, i: usize) -> bool {
        self.inner[i]
    }
}

/// Arrow polarity for diagrams `source → target`: arrows leave
/// `X₁@d ∪ (Y₂∖Y₁)@c` and enter `Y₁@c ∪ (X₂∖X₁)@d`. Isolated vertices are
/// unconstrained.
pub fn satisfies_polarity(p: &Pbr, source: &OObject, target: &OObject) -> bool {
    if p.domain() != source.outer() || p.codomain() != target.outer() {
        return false;
    }
    let d = p.dom_len();
    let may_leave = |i: usize| {
        if i < d {
            source.is_inner(i)
        } else {
            !target.is_inner(i - d)
        }
    };
    let may_enter = |i: usize| {
        if i < d {
            !source.is_inner(i)
        } else {
            target.is_inner(i - d)
        }
    };
    p.index_edges().all(|(u, v)| may_leave(u) && may_enter(v))
}

/// Whether a morphism requires every vertex to be covered.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Coverage {
    Total,
    Partial,
}

/// A morphism of the oriented Brauer category (or its partial variant).
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct OMorphism {
    source: OObject,
    target: OObject,
    diagram: Pbr,
    exponent: u64,
    coverage: Coverage,
}

impl OMorphism {
    pub fn new(source: OObject, target: OObject, diagram: Pbr, exponent: u64) -> Result<Self> {
        OMorphism::with_coverage(source, target, diagram, exponent, Coverage::Total)
    }

    pub fn new_partial(source: OObject, target: OObject, diagram: Pbr, exponent: u64) -> Result<Self> {
        OMorphism::with_coverage(source, target, diagram, exponent, Coverage::Partial)
    }

    pub fn with_coverage(
        source: OObject,
        target: OObject,
        diagram: Pbr,
        exponent: u64,
        coverage: Coverage,
    ) -> Result<Self> {
        check_morphism(&source, &target, &diagram, coverage)?;
        Ok(OMorphism {
            source,
            target,
            diagram,
            exponent,
            coverage,
        })
    }

    pub fn source(&self) -> &OObject {
        &self.source
    }

    pub fn target(&self) -> &OObject {
        &self.target
    }

    pub fn diagram(&self) -> &Pbr {
        &self.diagram
    }

    pub fn exponent(&self) -> u64 {
        self.exponent
    }

    pub fn coverage(&self) -> Coverage {
        self.coverage
    }
}

fn check_morphism(source: &OObject, target: &OObject, diagram: &Pbr, coverage: Coverage) -> Result<()> {
    if diagram.domain() != source.outer() || diagram.codomain() != target.outer() {
        return Err(Error::InvalidOMorphism(
            "diagram shape does not match the outer sets of its objects".into(),
        ));
    }
    let ok = match coverage {
        Coverage::Total => is_oriented_brauer(diagram),
        Coverage::Partial => is_oriented_partial_brauer(diagram),
    };
    if !ok {
        return Err(Error::InvalidOMorphism(match coverage {
            Coverage::Total => "not an oriented Brauer diagram".into(),
            Coverage::Partial => "not an oriented partial Brauer diagram".into(),
        }));
    }
    if !satisfies_polarity(diagram, source, target) {
        return Err(Error::InvalidOMorphism("an arrow violates the object polarity".into()));
    }
    Ok(())
}

/// `ε̌_X`: `x@d → x@c` for `x ∈ X₁` and `x@c → x@d` for `x ∈ X₂∖X₁`.
pub fn epsilon_check(obj: &OObject) -> OMorphism {
    let n = obj.outer.len();
    let edges = (0..n).map(|i| if obj.inner[i] { (i, n + i) } else { (n + i, i) });
    let diagram = Pbr::from_indices(obj.outer.clone(), obj.outer.clone(), edges).expect("validated labels");
    OMorphism {
        source: obj.clone(),
        target: obj.clone(),
        diagram,
        exponent: 0,
        coverage: Coverage::Total,
    }
}

/// `(b, m) ⋄ (a, k)` in the oriented Brauer category; the composite diagram
/// is re-checked against the morphism conditions.
pub fn o_compose(b: &OMorphism, a: &OMorphism) -> Result<OMorphism> {
    if a.target != b.source {
        return Err(Error::IncomposableShapes {
            left: a.target.outer.clone(),
            right: b.source.outer.clone(),
        });
    }
    let seq = AlephSequence::pair(&a.diagram, &b.diagram)?;
    let extra = frothy_class_count(&seq) as u64;
    let diagram = seq.composite();
    let coverage = if a.coverage == Coverage::Total && b.coverage == Coverage::Total {
        Coverage::Total
    } else {
        Coverage::Partial
    };
    check_morphism(&a.source, &b.target, &diagram, coverage)
        .map_err(|e| Error::ClosureViolation(format!("composite is not a morphism: {e}")))?;
    Ok(OMorphism {
        source: a.source.clone(),
        target: b.target.clone(),
        diagram,
        exponent: a.exponent + b.exponent + extra,
        coverage,
    })
}
