use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use smallvec::SmallVec;

use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FamilyTag {
    Ladder,
    Hexagonal,
    Loop,
    Tree,
    Decorated3,
    Decorated4,
    Interpolation,
    /// Rules defined outside this crate.
    Custom,
}

/// Canonical vertex identity: a family tag plus family-specific integer
/// coordinates.
///
/// Coordinates per family:
///
/// * ladder: `(x, rail)` with `rail` in `{0, 1}`;
/// * hexagonal: `(a, b, sublattice)` in axial cell coordinates;
/// * loop graph: `(x)`;
/// * tree: the word of child indices from the root (empty for the root);
/// * decorated lines: `(x, local)` with `local = 0` on the line;
/// * interpolation: `(pos, word...)`, see [`Family::Interpolation`](super::Family).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct VertexId {
    tag: FamilyTag,
    coords: SmallVec<[i64; 4]>,
}

impl VertexId {
    pub fn new(tag: FamilyTag, coords: &[i64]) -> Self {
        VertexId {
            tag,
            coords: SmallVec::from_slice(coords),
        }
    }

    pub fn tag(&self) -> FamilyTag {
        self.tag
    }

    pub fn coords(&self) -> &[i64] {
        &self.coords
    }

    /// Parses a coordinate list such as `0,1`, `(0,1)` or `()` for the
    /// given family tag. Validation against a rule is left to the rule.
    pub fn parse(tag: FamilyTag, s: &str) -> Result<Self> {
        let trimmed = s.trim();
        let inner = trimmed
            .strip_prefix('(')
            .and_then(|t| t.strip_suffix(')'))
            .unwrap_or(trimmed)
            .trim();
        if inner.is_empty() || inner == "root" {
            return Ok(VertexId::new(tag, &[]));
        }
        let coords = inner
            .split(',')
            .map(|c| c.trim().parse::<i64>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|err| Error::InvalidArgument(format!("bad coordinates `{s}`: {err}")))?;
        Ok(VertexId::new(tag, &coords))
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str(")")
    }
}

/// An edge, identified by its unordered endpoint pair and the index that
/// distinguishes it among parallel edges.
///
/// Endpoints are stored sorted, so two `EdgeRef`s are equal iff they name
/// the same edge.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct EdgeRef {
    lo: VertexId,
    hi: VertexId,
    parallel_index: u32,
}

impl EdgeRef {
    /// Panics if `u == v`; the graphs handled here are loopless.
    pub fn new(u: VertexId, v: VertexId, parallel_index: u32) -> Self {
        Self::try_new(u, v, parallel_index).expect("loop edge")
    }

    pub fn try_new(u: VertexId, v: VertexId, parallel_index: u32) -> Result<Self> {
        match u.cmp(&v) {
            std::cmp::Ordering::Less => Ok(EdgeRef {
                lo: u,
                hi: v,
                parallel_index,
            }),
            std::cmp::Ordering::Greater => Ok(EdgeRef {
                lo: v,
                hi: u,
                parallel_index,
            }),
            std::cmp::Ordering::Equal => Err(Error::InvalidEdge {
                edge: format!("{u}-{v}#{parallel_index}"),
                reason: "endpoints coincide (loops are not allowed)".into(),
            }),
        }
    }

    pub fn endpoints(&self) -> (&VertexId, &VertexId) {
        (&self.lo, &self.hi)
    }

    pub fn parallel_index(&self) -> u32 {
        self.parallel_index
    }

    pub fn is_incident(&self, v: &VertexId) -> bool {
        &self.lo == v || &self.hi == v
    }

    /// The endpoint opposite `v`, if `v` is an endpoint.
    pub fn other(&self, v: &VertexId) -> Option<&VertexId> {
        if &self.lo == v {
            Some(&self.hi)
        } else if &self.hi == v {
            Some(&self.lo)
        } else {
            None
        }
    }

    /// Whether `other` joins the same pair of vertices.
    pub fn is_parallel_to(&self, other: &EdgeRef) -> bool {
        self.lo == other.lo && self.hi == other.hi
    }

    /// Parses `<u>:<v>[:<index>]`, e.g. `0,0:1,0` or `(0):(1):2`.
    pub fn parse(tag: FamilyTag, s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(':').collect();
        let (u, v, idx) = match parts.as_slice() {
            [u, v] => (*u, *v, 0),
            [u, v, i] => {
                let idx = i.trim().parse::<u32>().map_err(|err| {
                    Error::InvalidArgument(format!("bad parallel index in `{s}`: {err}"))
                })?;
                (*u, *v, idx)
            }
            _ => {
                return Err(Error::InvalidArgument(format!(
                    "edge spec `{s}` must look like <u>:<v>[:<index>]"
                )))
            }
        };
        EdgeRef::try_new(VertexId::parse(tag, u)?, VertexId::parse(tag, v)?, idx)
    }
}

impl fmt::Display for EdgeRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}#{}", self.lo, self.hi, self.parallel_index)
    }
}

/// An edge seen from one of its endpoints; edge colours are properties of
/// directed edges.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct DirectedEdge {
    pub from: VertexId,
    pub edge: EdgeRef,
}

impl DirectedEdge {
    pub fn new(from: VertexId, edge: EdgeRef) -> Result<Self> {
        if !edge.is_incident(&from) {
            return Err(Error::NotIncident {
                edge: edge.to_string(),
                vertex: from.to_string(),
            });
        }
        Ok(DirectedEdge { from, edge })
    }

    pub fn to(&self) -> &VertexId {
        self.edge.other(&self.from).expect("checked on construction")
    }
}

/// One incident edge together with the vertex it leads to.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Neighbor {
    pub edge: EdgeRef,
    pub vertex: VertexId,
}

impl FromStr for FamilyTag {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "ladder" => FamilyTag::Ladder,
            "hexagonal" => FamilyTag::Hexagonal,
            "loop" => FamilyTag::Loop,
            "tree" => FamilyTag::Tree,
            "decorated3" => FamilyTag::Decorated3,
            "decorated4" => FamilyTag::Decorated4,
            "interpolation" => FamilyTag::Interpolation,
            "custom" => FamilyTag::Custom,
            other => {
                return Err(Error::InvalidArgument(format!("unknown family tag `{other}`")))
            }
        })
    }
}
