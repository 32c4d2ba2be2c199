//! Built-in graph families.
//!
//! `decor3` and `decor4` hang a finite gadget from every vertex of a doubly
//! infinite line:
//!
//! * `decor3`: a copy of `K4` on `{a, b, c, d}` with the edge `ab` subdivided
//!   by `s`, and `s` joined to the line vertex. `s` is a cut vertex, so a walk
//!   entering the gadget is trapped there.
//! * `decor4`: a copy of `K5` on `{a, b, c, d, e}` minus the edge `ab`, with
//!   both `a` and `b` joined to the line vertex. A walk entering through `a`
//!   cannot leave through `b` without revisiting the line vertex.
//!
//! Both graphs are regular and quasi-transitive, and `sigma_n` stays bounded,
//! so their connective constant is 1.
//!
//! `interp:D:l` replaces every edge of the `D`-regular tree by a chain with
//! `l` single edges alternating with `l - 1` bundles of `D - 1` parallel
//! edges, single edges at both ends. `l = 1` is the tree itself; the growth
//! rate is `(D-1)^(l/(2l-1))`, decreasing to `sqrt(D-1)` as `l` grows.

use std::fmt;
use std::str::FromStr;

use super::{EdgeRef, FamilyTag, GraphRule, Neighbor, Transitivity, VertexId};
use crate::{Error, Result};

const MAX_DEGREE: usize = 64;
const MAX_SEGMENTS: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    /// The doubly infinite ladder `Z x {0, 1}`.
    Ladder,
    /// The hexagonal (honeycomb) lattice.
    Hexagonal,
    /// `Z` with edges `(2k-1, 2k)` single and `(2k, 2k+1)` of multiplicity `degree - 1`.
    Loop { degree: usize },
    /// The `degree`-regular tree.
    Tree { degree: usize },
    Decorated3,
    Decorated4,
    /// Tree edges replaced by loop-graph chains; see the module docs.
    ///
    /// Vertex coordinates are `(pos, word...)`: `pos = 0` is the branch
    /// vertex at tree word `word`; `1 <= pos <= 2l-2` is the internal chain
    /// vertex at distance `pos` from `parent(word)` on the chain to `word`.
    Interpolation { degree: usize, segments: usize },
}

impl Family {
    pub fn loop_graph(degree: usize) -> Result<Self> {
        check_degree("loop", degree)?;
        Ok(Family::Loop { degree })
    }

    pub fn tree(degree: usize) -> Result<Self> {
        check_degree("tree", degree)?;
        Ok(Family::Tree { degree })
    }

    pub fn interpolation(degree: usize, segments: usize) -> Result<Self> {
        check_degree("interp", degree)?;
        if segments == 0 || segments > MAX_SEGMENTS {
            return Err(Error::InvalidSpec {
                spec: format!("interp:{degree}:{segments}"),
                reason: format!("segment length must be in 1..={MAX_SEGMENTS}"),
            });
        }
        Ok(Family::Interpolation { degree, segments })
    }

    /// The connective constant where it is known in closed form.
    pub fn exact_mu(&self) -> Option<f64> {
        match *self {
            Family::Ladder => Some((5f64.sqrt() + 1.0) / 2.0),
            Family::Hexagonal => Some((2.0 + 2f64.sqrt()).sqrt()),
            Family::Loop { degree } => Some(((degree - 1) as f64).sqrt()),
            Family::Tree { degree } => Some((degree - 1) as f64),
            _ => None,
        }
    }

    fn invalid(&self, v: &VertexId, reason: impl Into<String>) -> Error {
        Error::InvalidVertex {
            family: self.to_string(),
            vertex: v.to_string(),
            reason: reason.into(),
        }
    }

    fn validate(&self, v: &VertexId) -> Result<()> {
        if v.tag() != self.tag() {
            return Err(self.invalid(v, format!("vertex tagged {:?}", v.tag())));
        }
        let c = v.coords();
        match *self {
            Family::Ladder => {
                if c.len() != 2 || !(0..=1).contains(&c[1]) {
                    return Err(self.invalid(v, "expected (x, rail) with rail in {0,1}"));
                }
            }
            Family::Hexagonal => {
                if c.len() != 3 || !(0..=1).contains(&c[2]) {
                    return Err(self.invalid(v, "expected (a, b, sublattice) with sublattice in {0,1}"));
                }
            }
            Family::Loop { .. } => {
                if c.len() != 1 {
                    return Err(self.invalid(v, "expected (x)"));
                }
            }
            Family::Tree { degree } => {
                if !valid_word(c, degree) {
                    return Err(self.invalid(v, "expected a word of child indices"));
                }
            }
            Family::Decorated3 | Family::Decorated4 => {
                if c.len() != 2 || !(0..6).contains(&c[1]) {
                    return Err(self.invalid(v, "expected (x, local) with local in 0..6"));
                }
            }
            Family::Interpolation { degree, segments } => {
                let chain = chain_len(segments);
                let ok = match c.split_first() {
                    Some((&pos, word)) => {
                        valid_word(word, degree) && (0..chain).contains(&pos) && (pos == 0 || !word.is_empty())
                    }
                    None => false,
                };
                if !ok {
                    return Err(self.invalid(v, "expected (pos, word...) with 0 <= pos < 2l-1"));
                }
            }
        }
        Ok(())
    }

    fn vertex(&self, coords: &[i64]) -> VertexId {
        VertexId::new(self.tag(), coords)
    }
}

fn check_degree(kind: &str, degree: usize) -> Result<()> {
    if !(2..=MAX_DEGREE).contains(&degree) {
        return Err(Error::InvalidSpec {
            spec: format!("{kind}:{degree}"),
            reason: format!("degree must be in 2..={MAX_DEGREE}"),
        });
    }
    Ok(())
}

fn valid_word(word: &[i64], degree: usize) -> bool {
    word.iter().enumerate().all(|(i, &c)| {
        let arity = if i == 0 { degree } else { degree - 1 } as i64;
        (0..arity).contains(&c)
    })
}

/// Index of the child branch vertex along an interpolation chain.
fn chain_len(segments: usize) -> i64 {
    2 * segments as i64 - 1
}

fn push_edges(out: &mut Vec<Neighbor>, from: &VertexId, to: VertexId, multiplicity: usize) {
    for k in 0..multiplicity {
        out.push(Neighbor {
            edge: EdgeRef::new(from.clone(), to.clone(), k as u32),
            vertex: to.clone(),
        });
    }
}

impl GraphRule for Family {
    fn name(&self) -> String {
        self.to_string()
    }

    fn tag(&self) -> FamilyTag {
        match self {
            Family::Ladder => FamilyTag::Ladder,
            Family::Hexagonal => FamilyTag::Hexagonal,
            Family::Loop { .. } => FamilyTag::Loop,
            Family::Tree { .. } => FamilyTag::Tree,
            Family::Decorated3 => FamilyTag::Decorated3,
            Family::Decorated4 => FamilyTag::Decorated4,
            Family::Interpolation { .. } => FamilyTag::Interpolation,
        }
    }

    fn max_degree(&self) -> usize {
        match *self {
            Family::Ladder | Family::Hexagonal | Family::Decorated3 => 3,
            Family::Decorated4 => 4,
            Family::Loop { degree } | Family::Tree { degree } | Family::Interpolation { degree, .. } => degree,
        }
    }

    fn degree(&self, v: &VertexId) -> Result<usize> {
        self.validate(v)?;
        Ok(self.max_degree())
    }

    fn neighbors(&self, v: &VertexId) -> Result<Vec<Neighbor>> {
        self.validate(v)?;
        let c = v.coords();
        let mut out = Vec::with_capacity(self.max_degree());
        match *self {
            Family::Ladder => {
                let (x, r) = (c[0], c[1]);
                push_edges(&mut out, v, self.vertex(&[x - 1, r]), 1);
                push_edges(&mut out, v, self.vertex(&[x + 1, r]), 1);
                push_edges(&mut out, v, self.vertex(&[x, 1 - r]), 1);
            }
            Family::Hexagonal => {
                let (a, b) = (c[0], c[1]);
                if c[2] == 0 {
                    push_edges(&mut out, v, self.vertex(&[a, b, 1]), 1);
                    push_edges(&mut out, v, self.vertex(&[a - 1, b, 1]), 1);
                    push_edges(&mut out, v, self.vertex(&[a, b - 1, 1]), 1);
                } else {
                    push_edges(&mut out, v, self.vertex(&[a, b, 0]), 1);
                    push_edges(&mut out, v, self.vertex(&[a + 1, b, 0]), 1);
                    push_edges(&mut out, v, self.vertex(&[a, b + 1, 0]), 1);
                }
            }
            Family::Loop { degree } => {
                let x = c[0];
                let (left, right) = if x.rem_euclid(2) == 0 { (1, degree - 1) } else { (degree - 1, 1) };
                push_edges(&mut out, v, self.vertex(&[x - 1]), left);
                push_edges(&mut out, v, self.vertex(&[x + 1]), right);
            }
            Family::Tree { degree } => {
                if let Some((_, parent)) = c.split_last() {
                    push_edges(&mut out, v, self.vertex(parent), 1);
                }
                let arity = if c.is_empty() { degree } else { degree - 1 };
                let mut child = c.to_vec();
                child.push(0);
                for i in 0..arity {
                    *child.last_mut().unwrap() = i as i64;
                    push_edges(&mut out, v, self.vertex(&child), 1);
                }
            }
            Family::Decorated3 => {
                const GADGET: [&[i64]; 6] = [&[], &[0, 2, 3], &[1, 4, 5], &[1, 4, 5], &[2, 3, 5], &[2, 3, 4]];
                let (x, local) = (c[0], c[1]);
                if local == 0 {
                    push_edges(&mut out, v, self.vertex(&[x - 1, 0]), 1);
                    push_edges(&mut out, v, self.vertex(&[x + 1, 0]), 1);
                    push_edges(&mut out, v, self.vertex(&[x, 1]), 1);
                } else {
                    for &u in GADGET[local as usize] {
                        push_edges(&mut out, v, self.vertex(&[x, u]), 1);
                    }
                }
            }
            Family::Decorated4 => {
                const GADGET: [&[i64]; 6] = [&[], &[0, 3, 4, 5], &[0, 3, 4, 5], &[1, 2, 4, 5], &[1, 2, 3, 5], &[1, 2, 3, 4]];
                let (x, local) = (c[0], c[1]);
                if local == 0 {
                    push_edges(&mut out, v, self.vertex(&[x - 1, 0]), 1);
                    push_edges(&mut out, v, self.vertex(&[x + 1, 0]), 1);
                    push_edges(&mut out, v, self.vertex(&[x, 1]), 1);
                    push_edges(&mut out, v, self.vertex(&[x, 2]), 1);
                } else {
                    for &u in GADGET[local as usize] {
                        push_edges(&mut out, v, self.vertex(&[x, u]), 1);
                    }
                }
            }
            Family::Interpolation { degree, segments } => {
                let chain = chain_len(segments);
                let bundle = |j: i64| if j % 2 == 0 { 1 } else { degree - 1 };
                // Vertex at position j on the chain ending at branch vertex `word`.
                let on_chain = |word: &[i64], j: i64| -> VertexId {
                    if j == 0 {
                        let mut coords = vec![0];
                        coords.extend_from_slice(&word[..word.len() - 1]);
                        self.vertex(&coords)
                    } else if j == chain {
                        let mut coords = vec![0];
                        coords.extend_from_slice(word);
                        self.vertex(&coords)
                    } else {
                        let mut coords = vec![j];
                        coords.extend_from_slice(word);
                        self.vertex(&coords)
                    }
                };
                let (pos, word) = (c[0], &c[1..]);
                if pos == 0 {
                    if !word.is_empty() {
                        push_edges(&mut out, v, on_chain(word, chain - 1), 1);
                    }
                    let arity = if word.is_empty() { degree } else { degree - 1 };
                    let mut child = word.to_vec();
                    child.push(0);
                    for i in 0..arity {
                        *child.last_mut().unwrap() = i as i64;
                        push_edges(&mut out, v, on_chain(&child, 1), 1);
                    }
                } else {
                    push_edges(&mut out, v, on_chain(word, pos - 1), bundle(pos - 1));
                    push_edges(&mut out, v, on_chain(word, pos + 1), bundle(pos));
                }
            }
        }
        Ok(out)
    }

    fn orbit_reps(&self) -> Vec<VertexId> {
        match *self {
            Family::Ladder => vec![self.vertex(&[0, 0])],
            Family::Hexagonal => vec![self.vertex(&[0, 0, 0])],
            Family::Loop { .. } => vec![self.vertex(&[0])],
            Family::Tree { .. } => vec![self.vertex(&[])],
            // line, s, {a, b}, {c, d}
            Family::Decorated3 => [0, 1, 2, 4].iter().map(|&l| self.vertex(&[0, l])).collect(),
            // line, {a, b}, {c, d, e}
            Family::Decorated4 => [0, 1, 3].iter().map(|&l| self.vertex(&[0, l])).collect(),
            Family::Interpolation { segments, .. } => {
                // Chain positions j and 2l-1-j are swapped by an automorphism.
                let mut reps = vec![self.vertex(&[0])];
                reps.extend((1..segments as i64).map(|j| self.vertex(&[j, 0])));
                reps
            }
        }
    }

    fn transitivity(&self) -> Transitivity {
        match *self {
            Family::Decorated3 | Family::Decorated4 => Transitivity::QuasiTransitive,
            Family::Interpolation { segments, .. } if segments > 1 => Transitivity::QuasiTransitive,
            _ => Transitivity::VertexTransitive,
        }
    }

    fn is_simple(&self) -> bool {
        match *self {
            Family::Loop { degree } => degree == 2,
            Family::Interpolation { degree, segments } => degree == 2 || segments == 1,
            _ => true,
        }
    }

    fn has_cycle(&self) -> bool {
        match *self {
            Family::Tree { .. } => false,
            Family::Loop { degree } => degree > 2,
            Family::Interpolation { degree, segments } => degree > 2 && segments > 1,
            _ => true,
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::Ladder => f.write_str("ladder"),
            Family::Hexagonal => f.write_str("hex"),
            Family::Loop { degree } => write!(f, "loop:{degree}"),
            Family::Tree { degree } => write!(f, "tree:{degree}"),
            Family::Decorated3 => f.write_str("decor3"),
            Family::Decorated4 => f.write_str("decor4"),
            Family::Interpolation { degree, segments } => write!(f, "interp:{degree}:{segments}"),
        }
    }
}

/// Grammar: `ladder | hex | decor3 | decor4 | loop:<D> | tree:<D> | interp:<D>:<l>`
/// with `2 <= D <= 64` and `1 <= l <= 64`.
impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = |reason: &str| Error::InvalidSpec {
            spec: s.to_string(),
            reason: reason.to_string(),
        };
        let int = |t: &str| t.parse::<usize>().map_err(|_| bad("expected a positive integer parameter"));
        let parts: Vec<&str> = s.trim().split(':').collect();
        match parts.as_slice() {
            ["ladder"] => Ok(Family::Ladder),
            ["hex"] => Ok(Family::Hexagonal),
            ["decor3"] => Ok(Family::Decorated3),
            ["decor4"] => Ok(Family::Decorated4),
            ["loop", d] => Family::loop_graph(int(d)?),
            ["tree", d] => Family::tree(int(d)?),
            ["interp", d, l] => Family::interpolation(int(d)?, int(l)?),
            _ => Err(bad(
                "expected one of ladder, hex, decor3, decor4, loop:<D>, tree:<D>, interp:<D>:<l>",
            )),
        }
    }
}
