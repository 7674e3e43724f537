//! Graph inverse semigroups `P_G` of finite directed graphs.
//!
//! A nonzero element is `u v⁻¹` for paths with `d(u) = d(v)`. It acts on
//! paths by `v w ↦ u w`, mirroring the polycyclic case where the graph has a
//! single vertex.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::words::{branches_covered, slice_relation, DirectedGraph, EdgeId, Path, SliceRelation};

/// The nonzero element `u v⁻¹`, with `range = u` and `domain = v`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PathPair {
    pub range: Path,
    pub domain: Path,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GraphISGElement {
    Zero,
    NonZero(PathPair),
}

impl From<Option<PathPair>> for GraphISGElement {
    fn from(o: Option<PathPair>) -> Self {
        o.map_or(GraphISGElement::Zero, GraphISGElement::NonZero)
    }
}

impl GraphISGElement {
    pub fn as_pair(&self) -> Option<&PathPair> {
        match self {
            GraphISGElement::Zero => None,
            GraphISGElement::NonZero(p) => Some(p),
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, GraphISGElement::Zero)
    }

    pub fn inverse(&self) -> GraphISGElement {
        self.as_pair()
            .map(|p| PathPair { range: p.domain.clone(), domain: p.range.clone() })
            .into()
    }

    pub fn is_idempotent(&self) -> bool {
        self.as_pair().is_none_or(|p| p.range == p.domain)
    }
}

fn append(p: &Path, tail: &[EdgeId]) -> Path {
    let mut edges = p.edges.clone();
    edges.extend_from_slice(tail);
    Path { anchor: p.anchor, edges }
}

/// Remainder `z` with `longer = shorter z`, when `shorter` is a prefix.
fn remainder<'a>(longer: &'a Path, shorter: &Path) -> Option<&'a [EdgeId]> {
    if longer.anchor != shorter.anchor {
        return None;
    }
    longer.edges.strip_prefix(shorter.edges.as_slice())
}

fn pair_mul(s: &PathPair, t: &PathPair) -> Option<PathPair> {
    if let Some(z) = remainder(&t.range, &s.domain) {
        Some(PathPair { range: append(&s.range, z), domain: t.domain.clone() })
    } else {
        remainder(&s.domain, &t.range).map(|z| PathPair { range: s.range.clone(), domain: append(&t.domain, z) })
    }
}

fn pair_leq(s: &PathPair, t: &PathPair) -> bool {
    match remainder(&s.domain, &t.domain) {
        Some(p) => remainder(&s.range, &t.range) == Some(p),
        None => false,
    }
}

/// `P_G` over a borrowed graph.
#[derive(Clone, Copy, Debug)]
pub struct GraphInverseSemigroup<'g> {
    pub graph: &'g DirectedGraph,
}

/// Properties of the semilattice of idempotents of `P_G`, read off the graph.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SemilatticeReport {
    /// No 0-minimal idempotents: every vertex has an incoming edge.
    pub no_zero_minimal: bool,
    /// Every vertex has in-degree 0 or at least 2.
    pub zero_disjunctive: bool,
    pub pseudofinite: bool,
    pub pre_boolean: bool,
}

pub fn semilattice_predicates(graph: &DirectedGraph) -> SemilatticeReport {
    let degrees: Vec<usize> = (0..graph.vertex_count()).map(|v| graph.in_degree(v)).collect();
    SemilatticeReport {
        no_zero_minimal: degrees.iter().all(|&d| d >= 1),
        zero_disjunctive: degrees.iter().all(|&d| d != 1),
        pseudofinite: true,
        pre_boolean: true,
    }
}

impl<'g> GraphInverseSemigroup<'g> {
    pub fn new(graph: &'g DirectedGraph) -> Self {
        GraphInverseSemigroup { graph }
    }

    /// Builds `u v⁻¹`, checking that both are paths ending at the same vertex.
    pub fn element(&self, range: Path, domain: Path) -> Result<GraphISGElement> {
        let pair = PathPair { range, domain };
        self.check(&GraphISGElement::NonZero(pair.clone()))?;
        Ok(GraphISGElement::NonZero(pair))
    }

    /// The idempotent `1_v`.
    pub fn vertex_identity(&self, v: usize) -> GraphISGElement {
        GraphISGElement::NonZero(PathPair { range: Path::identity(v), domain: Path::identity(v) })
    }

    pub fn check(&self, s: &GraphISGElement) -> Result<()> {
        if let GraphISGElement::NonZero(p) = s {
            self.graph.check_path(&p.range)?;
            self.graph.check_path(&p.domain)?;
            if self.graph.path_domain(&p.range) != self.graph.path_domain(&p.domain) {
                return Err(Error::InvalidPath(format!(
                    "`{}` and `{}` start at different vertices",
                    self.graph.format_path(&p.range),
                    self.graph.format_path(&p.domain)
                )));
            }
        }
        Ok(())
    }

    pub fn mul(&self, s: &GraphISGElement, t: &GraphISGElement) -> GraphISGElement {
        match (s, t) {
            (GraphISGElement::NonZero(a), GraphISGElement::NonZero(b)) => pair_mul(a, b).into(),
            _ => GraphISGElement::Zero,
        }
    }

    pub fn leq(&self, s: &GraphISGElement, t: &GraphISGElement) -> bool {
        match (s, t) {
            (GraphISGElement::Zero, _) => true,
            (_, GraphISGElement::Zero) => false,
            (GraphISGElement::NonZero(a), GraphISGElement::NonZero(b)) => pair_leq(a, b),
        }
    }

    /// Comparable elements meet in the smaller one; all other meets are zero.
    pub fn meet(&self, s: &GraphISGElement, t: &GraphISGElement) -> GraphISGElement {
        if self.leq(s, t) {
            s.clone()
        } else if self.leq(t, s) {
            t.clone()
        } else {
            GraphISGElement::Zero
        }
    }

    /// The partial bijection `v w ↦ u w` on paths.
    pub fn act(&self, s: &GraphISGElement, w: &Path) -> Option<Path> {
        let p = s.as_pair()?;
        remainder(w, &p.domain).map(|z| append(&p.range, z))
    }

    /// `a -> B` in `P_G`. Elements below `a = u v⁻¹` are `(u w)(v w)⁻¹` for
    /// paths `w` into `d(u)`, so the question is whether the offsets of the
    /// meets `a ∧ b` catch every branch of the tree of such paths.
    pub fn lenz_arrow(&self, a: &GraphISGElement, targets: &[GraphISGElement]) -> Result<bool> {
        self.check(a)?;
        let top = a.as_pair().ok_or(Error::ZeroArgument)?;
        for t in targets {
            self.check(t)?;
        }
        let offsets: Vec<Vec<EdgeId>> = targets
            .iter()
            .filter_map(|b| self.meet(a, b).as_pair().cloned())
            .filter_map(|c| remainder(&c.domain, &top.domain).map(<[EdgeId]>::to_vec))
            .collect();
        let root = self.graph.path_domain(&top.domain);
        let graph = self.graph;
        Ok(branches_covered(&offsets, |node: &[EdgeId]| {
            let at = node.last().map_or(root, |&e| graph.edge_domain(e));
            graph.in_edges(at).to_vec()
        }))
    }

    pub fn is_cover(&self, a: &GraphISGElement, set: &[GraphISGElement]) -> Result<bool> {
        Ok(set.iter().all(|b| self.leq(b, a)) && self.lenz_arrow(a, set)?)
    }

    pub fn format(&self, s: &GraphISGElement) -> String {
        match s {
            GraphISGElement::Zero => "0".to_string(),
            GraphISGElement::NonZero(p) => {
                format!("{}/{}", self.graph.format_path(&p.range), self.graph.format_path(&p.domain))
            }
        }
    }

    /// Parses `0` or `u/v` where `u`, `v` are dotted edge lists or `1@vertex`.
    pub fn parse(&self, s: &str) -> Result<GraphISGElement> {
        let s = s.trim();
        if s == "0" {
            return Ok(GraphISGElement::Zero);
        }
        let (u, v) = s.split_once('/').ok_or_else(|| Error::literal(s, "expected `u/v`"))?;
        self.element(self.graph.parse_path(u)?, self.graph.parse_path(v)?)
    }
}

pub fn gisg_mul(graph: &DirectedGraph, s: &GraphISGElement, t: &GraphISGElement) -> GraphISGElement {
    GraphInverseSemigroup::new(graph).mul(s, t)
}

pub fn gisg_leq(graph: &DirectedGraph, s: &GraphISGElement, t: &GraphISGElement) -> bool {
    GraphInverseSemigroup::new(graph).leq(s, t)
}

pub fn gisg_meet(graph: &DirectedGraph, s: &GraphISGElement, t: &GraphISGElement) -> GraphISGElement {
    GraphInverseSemigroup::new(graph).meet(s, t)
}

pub fn gisg_lenz_arrow(graph: &DirectedGraph, a: &GraphISGElement, targets: &[GraphISGElement]) -> Result<bool> {
    GraphInverseSemigroup::new(graph).lenz_arrow(a, targets)
}

/// Whether the two paths are comparable in the prefix order.
pub fn paths_comparable(p: &Path, q: &Path) -> bool {
    p.anchor == q.anchor && slice_relation(&p.edges, &q.edges) != SliceRelation::Incomparable
}
