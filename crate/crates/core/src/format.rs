//! JSON interchange for PBRs, relations, partitions and oriented morphisms.
//!
//! A PBR is `{"domain": [..], "codomain": [..], "edges": [[src, side, dst, side], ..]}`
//! with sides `"d"` or `"c"`, plus an optional `"exponent"`. Output lists
//! edges in index order (domain vertices first, each side in declared order),
//! so printing is canonical.

use serde::{Deserialize, Serialize};

use crate::classical::{BinaryRelation, Partition};
use crate::deform::DeformedMorphism;
use crate::error::{Error, Result};
use crate::factor::Factorization;
use crate::oriented::{OMorphism, OObject};
use crate::pbr::{Edge, Pbr, Side, Vertex};

type EdgeJson = (String, Side, String, Side);

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct PbrJson {
    pub domain: Vec<String>,
    pub codomain: Vec<String>,
    pub edges: Vec<EdgeJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub exponent: Option<u64>,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct RelationJson {
    pub domain: Vec<String>,
    pub codomain: Vec<String>,
    pub pairs: Vec<(String, String)>,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct PartitionJson {
    pub domain: Vec<String>,
    pub codomain: Vec<String>,
    pub blocks: Vec<Vec<(String, Side)>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub exponent: Option<u64>,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct OObjectJson {
    pub outer: Vec<String>,
    pub inner: Vec<String>,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct OMorphismJson {
    pub source: OObjectJson,
    pub target: OObjectJson,
    pub edges: Vec<EdgeJson>,
    #[serde(default)]
    pub exponent: u64,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct FactorizationJson {
    pub left: PbrJson,
    pub pure: PbrJson,
    pub right: PbrJson,
}

fn edge_json(e: Edge) -> EdgeJson {
    (e.source.label, e.source.side, e.target.label, e.target.side)
}

fn edges_from_json(edges: &[EdgeJson]) -> Vec<Edge> {
    edges
        .iter()
        .map(|(a, sa, b, sb)| Edge::new(Vertex::new(a.clone(), *sa), Vertex::new(b.clone(), *sb)))
        .collect()
}

fn parse<'a, T: Deserialize<'a>>(text: &'a str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
}

fn print<T: Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("plain data serializes")
}

impl From<&Pbr> for PbrJson {
    fn from(p: &Pbr) -> Self {
        PbrJson {
            domain: p.domain().to_vec(),
            codomain: p.codomain().to_vec(),
            edges: p.edges().into_iter().map(edge_json).collect(),
            exponent: None,
        }
    }
}

impl PbrJson {
    pub fn to_pbr(&self) -> Result<Pbr> {
        Pbr::from_edges(
            self.domain.clone(),
            self.codomain.clone(),
            &edges_from_json(&self.edges),
        )
    }
}

/// Parses a PBR; an `"exponent"` field, if present, is ignored.
pub fn parse_pbr(text: &str) -> Result<Pbr> {
    parse::<PbrJson>(text)?.to_pbr()
}

/// Parses a PBR with an optional exponent (default 0).
pub fn parse_deformed(text: &str) -> Result<DeformedMorphism> {
    let j: PbrJson = parse(text)?;
    Ok(DeformedMorphism::new(j.to_pbr()?, j.exponent.unwrap_or(0)))
}

pub fn pbr_to_json(p: &Pbr) -> String {
    print(&PbrJson::from(p))
}

pub fn deformed_to_json(m: &DeformedMorphism) -> String {
    print(&PbrJson {
        exponent: Some(m.exponent),
        ..PbrJson::from(&m.pbr)
    })
}

pub fn parse_relation(text: &str) -> Result<BinaryRelation> {
    let j: RelationJson = parse(text)?;
    BinaryRelation::from_pairs(j.domain, j.codomain, &j.pairs)
}

pub fn relation_to_json(r: &BinaryRelation) -> String {
    print(&RelationJson {
        domain: r.domain().to_vec(),
        codomain: r.codomain().to_vec(),
        pairs: r.pairs(),
    })
}

/// Parses a partition; the optional exponent is returned alongside.
pub fn parse_partition(text: &str) -> Result<(Partition, u64)> {
    let j: PartitionJson = parse(text)?;
    let blocks: Vec<Vec<Vertex>> = j
        .blocks
        .iter()
        .map(|b| b.iter().map(|(l, s)| Vertex::new(l.clone(), *s)).collect())
        .collect();
    Ok((
        Partition::from_blocks(j.domain, j.codomain, &blocks)?,
        j.exponent.unwrap_or(0),
    ))
}

pub fn partition_to_json(p: &Partition) -> String {
    print(&PartitionJson {
        domain: p.domain().to_vec(),
        codomain: p.codomain().to_vec(),
        blocks: p
            .blocks()
            .into_iter()
            .map(|b| b.into_iter().map(|v| (v.label, v.side)).collect())
            .collect(),
        exponent: None,
    })
}

impl From<&OObject> for OObjectJson {
    fn from(o: &OObject) -> Self {
        OObjectJson {
            outer: o.outer().to_vec(),
            inner: o.inner(),
        }
    }
}

impl OObjectJson {
    pub fn to_object(&self) -> Result<OObject> {
        OObject::new(self.outer.clone(), &self.inner)
    }
}

pub fn parse_o_morphism(text: &str) -> Result<OMorphism> {
    let j: OMorphismJson = parse(text)?;
    let (source, target) = (j.source.to_object()?, j.target.to_object()?);
    let diagram = Pbr::from_edges(
        source.outer().to_vec(),
        target.outer().to_vec(),
        &edges_from_json(&j.edges),
    )?;
    OMorphism::new(source, target, diagram, j.exponent)
}

pub fn o_morphism_to_json(m: &OMorphism) -> String {
    print(&OMorphismJson {
        source: m.source().into(),
        target: m.target().into(),
        edges: m.diagram().edges().into_iter().map(edge_json).collect(),
        exponent: m.exponent(),
    })
}

pub fn factorization_to_json(f: &Factorization) -> String {
    print(&FactorizationJson {
        left: (&f.left).into(),
        pure: f.pure.as_pbr().into(),
        right: (&f.right).into(),
    })
}
