//! Reduction graphs.
//!
//! For a legal string `u` and a set of identities `D ⊆ dom(u)`, write
//! `u = δ0 p1 δ1 p2 … pn δn` where the `pi` are the pointers outside `D` and
//! the `δi` are (possibly empty) strings over `D`. The reduction graph has
//! a source `s`, a target `t` and two vertices `Ii`, `I'i` per `pi`, both
//! labelled `⟦pi⟧`. Reality edges join `s–I1`, `I'i–Ii+1` and `I'n–t` and
//! carry the segments `δ0 … δn`. Desire edges are unlabelled and join
//! `I'i–Ij` and `Ii–I'j` when `pi = pj`, or `Ii–Ij` and `I'i–I'j` when
//! `pi = p̄j`.
//!
//! Every vertex meets at most one edge of each colour, so the components are
//! alternating paths and cycles: exactly one path runs from `s` to `t` and
//! the remaining components are cycles.
//!
//! Each undirected edge is stored once. A reality edge `(a, δ, b)` stands for
//! both `(a, δ, b)` and its reverse `(b, δ̄, a)`; see
//! [`ReductionGraph::directed_reality_edges`] for the closed edge set.

mod canon;
mod compact;
mod dot;
mod reduce;

pub use canon::{graphs_isomorphic, CanonicalForm};

use std::borrow::Cow;
use std::fmt;
use std::sync::OnceLock;

use crate::error::{Error, Result};
use compact::Compact;
use crate::legal::LegalString;
use crate::pointer::{PointerIdSet, PointerString};

pub type VertexId = usize;

pub const SOURCE: VertexId = 0;
pub const TARGET: VertexId = 1;

const NONE: usize = usize::MAX;

/// Names follow the construction: `Left(i)` is `Ii` and `Right(i)` is `I'i`,
/// both 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum VertexName {
    Source,
    Target,
    Left(u32),
    Right(u32),
}

impl fmt::Display for VertexName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VertexName::Source => f.write_str("s"),
            VertexName::Target => f.write_str("t"),
            VertexName::Left(i) => write!(f, "I{i}"),
            VertexName::Right(i) => write!(f, "I{i}p"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Vertex {
    pub name: VertexName,
    /// `None` exactly for `s` and `t`.
    pub label: Option<u32>,
}

/// The reality edge `(from, label, to)` together with its implied reverse.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RealityEdge {
    pub from: VertexId,
    pub to: VertexId,
    pub label: PointerString,
}

impl RealityEdge {
    /// The label read when traversing from `v` to the other end.
    pub fn label_from(&self, v: VertexId) -> PointerString {
        if v == self.from {
            self.label.clone()
        } else {
            self.label.inverse()
        }
    }

    pub fn other(&self, v: VertexId) -> VertexId {
        if v == self.from {
            self.to
        } else {
            self.from
        }
    }
}

/// An unlabelled desire edge; stands for both directions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DesireEdge {
    pub a: VertexId,
    pub b: VertexId,
}

impl DesireEdge {
    pub fn other(&self, v: VertexId) -> VertexId {
        if v == self.a {
            self.b
        } else {
            self.a
        }
    }
}

#[derive(Debug, Clone)]
pub struct ReductionGraph {
    /// Present for graphs made by [`ReductionGraph::build`].
    compact: Option<Compact>,
    /// Explicit vertices and edges, spelled out from `compact` on first use.
    parts: OnceLock<Parts>,
}

#[derive(Debug, Clone)]
pub(crate) struct Parts {
    vertices: Vec<Vertex>,
    reality: Vec<RealityEdge>,
    desire: Vec<DesireEdge>,
    /// Known up front when the parts come from a built graph.
    slots: Option<Slots>,
}

const NO_SLOT: u32 = u32::MAX;

/// Per-vertex adjacency, valid only when each vertex has at most one edge of
/// each colour: the index of its reality edge, the vertex at the far end of
/// that edge, and the vertex at the other end of its desire edge.
#[derive(Debug, Clone)]
pub(crate) struct Slots {
    cells: Vec<[u32; 3]>,
}

const EDGE: usize = 0;
const FAR: usize = 1;
const MATE: usize = 2;

impl Slots {
    fn empty(n: usize) -> Self {
        Slots {
            cells: vec![[NO_SLOT; 3]; n],
        }
    }

    fn get(&self, v: VertexId, which: usize) -> Option<usize> {
        self.cells.get(v).map(|c| c[which]).filter(|&x| x != NO_SLOT).map(|x| x as usize)
    }

    /// Records reality edge `edge` joining `a` and `b`.
    fn set_reality(&mut self, edge: usize, a: VertexId, b: VertexId) {
        self.cells[a][EDGE] = edge as u32;
        self.cells[a][FAR] = b as u32;
        self.cells[b][EDGE] = edge as u32;
        self.cells[b][FAR] = a as u32;
    }

    fn set_mates(&mut self, a: VertexId, b: VertexId) {
        self.cells[a][MATE] = b as u32;
        self.cells[b][MATE] = a as u32;
    }

    pub fn reality(&self, v: VertexId) -> Option<usize> {
        self.get(v, EDGE)
    }

    /// The reality edge at `v` and the vertex it leads to.
    pub fn reality_step(&self, v: VertexId) -> Option<(usize, VertexId)> {
        Some((self.get(v, EDGE)?, self.get(v, FAR)?))
    }

    pub fn mate(&self, v: VertexId) -> Option<VertexId> {
        self.get(v, MATE)
    }
}

impl ReductionGraph {
    /// Builds `R_{u,D}` in time linear in `|u|`.
    pub fn build(u: &LegalString, removed: &PointerIdSet) -> Result<Self> {
        Ok(ReductionGraph {
            compact: Some(Compact::build(u, removed)?),
            parts: OnceLock::new(),
        })
    }

    fn explicit(vertices: Vec<Vertex>, reality: Vec<RealityEdge>, desire: Vec<DesireEdge>) -> Self {
        ReductionGraph {
            compact: None,
            parts: OnceLock::from(Parts {
                vertices,
                reality,
                desire,
                slots: None,
            }),
        }
    }

    fn parts(&self) -> &Parts {
        self.parts.get_or_init(|| {
            self.compact
                .as_ref()
                .expect("a graph without parts is a built graph")
                .materialize()
        })
    }

    /// Assembles a graph from raw parts without checking the reduction-graph
    /// invariants (see [`ReductionGraph::validate`]). Vertices 0 and 1 must be
    /// `s` and `t`.
    pub fn from_parts(
        vertices: Vec<Vertex>,
        reality: Vec<RealityEdge>,
        desire: Vec<DesireEdge>,
    ) -> Result<Self> {
        let ends_ok = vertices.len() >= 2
            && vertices[SOURCE].name == VertexName::Source
            && vertices[TARGET].name == VertexName::Target;
        if !ends_ok {
            return Err(Error::Structure("vertices 0 and 1 must be s and t".into()));
        }
        let n = vertices.len();
        let in_range = reality.iter().all(|e| e.from < n && e.to < n)
            && desire.iter().all(|e| e.a < n && e.b < n);
        if !in_range {
            return Err(Error::Structure("edge endpoint out of range".into()));
        }
        Ok(ReductionGraph::explicit(vertices, reality, desire))
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.parts().vertices
    }

    pub fn vertex_count(&self) -> usize {
        self.parts().vertices.len()
    }

    pub fn reality_edges(&self) -> &[RealityEdge] {
        &self.parts().reality
    }

    pub fn desire_edges(&self) -> &[DesireEdge] {
        &self.parts().desire
    }

    pub fn label(&self, v: VertexId) -> Option<u32> {
        self.parts().vertices[v].label
    }

    /// The reality edge set closed under reversal, as `(from, label, to)`.
    pub fn directed_reality_edges(&self) -> impl Iterator<Item = (VertexId, PointerString, VertexId)> + '_ {
        self.parts().reality.iter().flat_map(|e| {
            [
                (e.from, e.label.clone(), e.to),
                (e.to, e.label.inverse(), e.from),
            ]
        })
    }

    /// The desire edge set closed under reversal.
    pub fn directed_desire_edges(&self) -> impl Iterator<Item = (VertexId, VertexId)> + '_ {
        self.parts().desire.iter().flat_map(|e| [(e.a, e.b), (e.b, e.a)])
    }

    pub(crate) fn slots(&self) -> Result<Cow<'_, Slots>> {
        if let Some(slots) = &self.parts().slots {
            return Ok(Cow::Borrowed(slots));
        }
        let mut slots = Slots::empty(self.parts().vertices.len());
        for (k, e) in self.parts().reality.iter().enumerate() {
            if e.from == e.to {
                return Err(Error::Structure(format!(
                    "reality edge loops at {}",
                    self.parts().vertices[e.from].name
                )));
            }
            for v in [e.from, e.to] {
                if slots.reality(v).is_some() {
                    return Err(Error::Structure(format!(
                        "vertex {} meets more than one reality edge",
                        self.parts().vertices[v].name
                    )));
                }
            }
            slots.set_reality(k, e.from, e.to);
        }
        for e in &self.parts().desire {
            if e.a == e.b {
                return Err(Error::Structure(format!(
                    "desire edge loops at {}",
                    self.parts().vertices[e.a].name
                )));
            }
            for v in [e.a, e.b] {
                if slots.mate(v).is_some() {
                    return Err(Error::Structure(format!(
                        "vertex {} meets more than one desire edge",
                        self.parts().vertices[v].name
                    )));
                }
            }
            slots.set_mates(e.a, e.b);
        }
        Ok(Cow::Owned(slots))
    }

    /// Checks every structural invariant of a reduction graph.
    pub fn validate(&self) -> Result<()> {
        let slots = self.slots()?;
        let bad = |msg: String| Err(Error::Structure(msg));
        for (v, vx) in self.parts().vertices.iter().enumerate() {
            let is_end = v == SOURCE || v == TARGET;
            if is_end != vx.label.is_none() {
                return bad(format!("vertex {} has wrong labelling", vx.name));
            }
            if slots.reality(v).is_none() {
                return bad(format!("vertex {} has no reality edge", vx.name));
            }
            if is_end && slots.mate(v).is_some() {
                return bad(format!("vertex {} has a desire edge", vx.name));
            }
            if !is_end && slots.mate(v).is_none() {
                return bad(format!("vertex {} has no desire edge", vx.name));
            }
        }
        for e in &self.parts().desire {
            if self.parts().vertices[e.a].label != self.parts().vertices[e.b].label || e.a == e.b {
                return bad(format!(
                    "desire edge {}–{} joins different labels",
                    self.parts().vertices[e.a].name, self.parts().vertices[e.b].name
                ));
            }
        }
        self.reduct().map(|_| ())
    }

    /// The label of the unique alternating walk from `s` to `t`.
    pub fn reduct(&self) -> Result<PointerString> {
        if let Some(compact) = &self.compact {
            return compact.reduct();
        }
        let slots = self.slots()?;
        let mut out = PointerString::empty();
        let mut cur = SOURCE;
        for _ in 0..=self.parts().reality.len() {
            let Some((r, next)) = slots.reality_step(cur) else {
                return Err(Error::Structure(format!(
                    "walk from s stops at {} without a reality edge",
                    self.parts().vertices[cur].name
                )));
            };
            let e = &self.parts().reality[r];
            if cur == e.from {
                out.extend_from(&e.label);
            } else {
                out.extend_inverse(&e.label);
            }
            if next == TARGET {
                return Ok(out);
            }
            let Some(mate) = slots.mate(next) else {
                return Err(Error::Structure(format!(
                    "walk from s stops at {} without a desire edge",
                    self.parts().vertices[next].name
                )));
            };
            cur = mate;
        }
        Err(Error::Structure("alternating walk from s never reaches t".into()))
    }

    /// Weakly connected components; the one containing `s` is linear.
    pub fn components(&self) -> ComponentSummary {
        let n = self.parts().vertices.len();
        let mut dsu = crate::union_find::UnionFind::new(n);
        for e in &self.parts().reality {
            dsu.union(e.from, e.to);
        }
        for e in &self.parts().desire {
            dsu.union(e.a, e.b);
        }
        let mut group_of = vec![NONE; n];
        let mut groups: Vec<Vec<VertexId>> = Vec::new();
        for v in 0..n {
            let r = dsu.find(v);
            if group_of[r] == NONE {
                group_of[r] = groups.len();
                groups.push(Vec::new());
            }
            group_of[v] = group_of[r];
            groups[group_of[v]].push(v);
        }
        let mut lambda = vec![true; groups.len()];
        for e in &self.parts().reality {
            if !e.label.is_empty() {
                lambda[group_of[e.from]] = false;
            }
        }
        let slots = self.slots().ok();
        let mut components: Vec<Component> = groups
            .into_iter()
            .zip(lambda)
            .map(|(members, lambda_labels)| {
                let linear = members[0] == SOURCE;
                let vertices = slots
                    .as_ref()
                    .and_then(|s| self.traversal(s, members[0], members.len()))
                    .unwrap_or(members);
                Component {
                    vertices,
                    linear,
                    lambda_labels,
                }
            })
            .collect();
        // linear component first, cyclic ones by smallest vertex
        components.sort_by_key(|c| (!c.linear, c.vertices.iter().min().copied()));
        ComponentSummary { components }
    }

    /// Vertices of the component of `start` in walk order: from `s` for the
    /// linear component, otherwise from `start` along its reality edge.
    fn traversal(&self, slots: &Slots, start: VertexId, size: usize) -> Option<Vec<VertexId>> {
        let start = if start == TARGET { SOURCE } else { start };
        let mut order = Vec::with_capacity(size);
        let mut cur = start;
        loop {
            order.push(cur);
            let r = slots.reality(cur)?;
            let next = self.parts().reality[r].other(cur);
            if next == start {
                break;
            }
            order.push(next);
            if next == TARGET {
                break;
            }
            cur = slots.mate(next)?;
            if cur == start || order.len() > size {
                break;
            }
        }
        (order.len() == size).then_some(order)
    }

    /// Number of cyclic components.
    pub fn cyclic_count(&self) -> usize {
        self.components().count_cyclic()
    }

    pub fn vertex_labels(&self) -> PointerIdSet {
        self.parts().vertices.iter().filter_map(|v| v.label).collect()
    }

    /// Edge sets keyed by vertex names, orientation-normalised and sorted.
    fn normalized(&self) -> NormalizedGraph {
        let name = |v: VertexId| self.parts().vertices[v].name;
        let mut vertices: Vec<(VertexName, Option<u32>)> =
            self.parts().vertices.iter().map(|v| (v.name, v.label)).collect();
        vertices.sort();
        let mut reality: Vec<(VertexName, VertexName, PointerString)> = self
            .parts()
            .reality
            .iter()
            .map(|e| {
                if name(e.from) <= name(e.to) {
                    (name(e.from), name(e.to), e.label.clone())
                } else {
                    (name(e.to), name(e.from), e.label.inverse())
                }
            })
            .collect();
        reality.sort();
        let mut desire: Vec<(VertexName, VertexName)> = self
            .parts()
            .desire
            .iter()
            .map(|e| {
                let (a, b) = (name(e.a), name(e.b));
                (a.min(b), a.max(b))
            })
            .collect();
        desire.sort();
        NormalizedGraph {
            vertices,
            reality,
            desire,
        }
    }
}

#[derive(PartialEq, Eq)]
struct NormalizedGraph {
    vertices: Vec<(VertexName, Option<u32>)>,
    reality: Vec<(VertexName, VertexName, PointerString)>,
    desire: Vec<(VertexName, VertexName)>,
}

/// Equality of vertex names, labels and both edge sets, independent of
/// storage order and of which direction of an edge pair is stored.
impl PartialEq for ReductionGraph {
    fn eq(&self, other: &Self) -> bool {
        self.normalized() == other.normalized()
    }
}

impl Eq for ReductionGraph {}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Component {
    /// In walk order when the component is a well-formed path or cycle.
    pub vertices: Vec<VertexId>,
    pub linear: bool,
    /// Whether every reality edge of the component has the empty label.
    pub lambda_labels: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentSummary {
    /// The linear component first.
    pub components: Vec<Component>,
}

impl ComponentSummary {
    pub fn count_total(&self) -> usize {
        self.components.len()
    }

    pub fn count_cyclic(&self) -> usize {
        self.components.iter().filter(|c| !c.linear).count()
    }

    pub fn cyclic(&self) -> impl Iterator<Item = &Component> {
        self.components.iter().filter(|c| !c.linear)
    }

    /// One line per component: `linear:` or `cyclic:` followed by the vertex
    /// labels in walk order (`s` and `t` omitted).
    pub fn to_text(&self, graph: &ReductionGraph) -> String {
        let mut out = String::new();
        for c in &self.components {
            out.push_str(if c.linear { "linear:" } else { "cyclic:" });
            for &v in &c.vertices {
                if let Some(l) = graph.label(v) {
                    out.push(' ');
                    out.push_str(&l.to_string());
                }
            }
            out.push('\n');
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn l(v: &[i64]) -> LegalString {
        LegalString::from_signed(v)
    }

    fn s(v: &[i64]) -> PointerString {
        PointerString::from_signed(v)
    }

    fn example() -> (LegalString, PointerIdSet) {
        (
            l(&[5, 2, 6, 8, 8, 3, -2, 5, -4, 3, 7, 7, 4, 6]),
            PointerIdSet::from([5, 6, 7, 8]),
        )
    }

    #[test]
    fn build_example_segments() {
        let (u, d) = example();
        let g = ReductionGraph::build(&u, &d).unwrap();
        assert_eq!(g.vertex_count(), 14);
        let labels: Vec<PointerString> = g.reality_edges().iter().map(|e| e.label.clone()).collect();
        assert_eq!(
            labels,
            vec![s(&[5]), s(&[6, 8, 8]), s(&[]), s(&[5]), s(&[]), s(&[7, 7]), s(&[6])]
        );
        let names = |e: &RealityEdge| (g.vertices()[e.from].name, g.vertices()[e.to].name);
        assert_eq!(names(&g.reality_edges()[0]), (VertexName::Source, VertexName::Left(1)));
        assert_eq!(names(&g.reality_edges()[1]), (VertexName::Right(1), VertexName::Left(2)));
        assert_eq!(names(&g.reality_edges()[6]), (VertexName::Right(6), VertexName::Target));
        g.validate().unwrap();
        assert_eq!(g.reduct().unwrap(), s(&[5, 6]));
        assert_eq!(g.cyclic_count(), 1);
        let c = g.components();
        assert_eq!(c.count_total(), 2);
        // the cyclic component carries the labels δ1, δ3, δ5
        assert!(!c.cyclic().next().unwrap().lambda_labels);
    }

    #[test]
    fn desire_edges_follow_orientation() {
        let (u, d) = example();
        let g = ReductionGraph::build(&u, &d).unwrap();
        let mut pairs: Vec<(VertexName, VertexName)> = g
            .desire_edges()
            .iter()
            .map(|e| (g.vertices()[e.a].name, g.vertices()[e.b].name))
            .collect();
        pairs.sort();
        use VertexName::{Left as L, Right as R};
        // 2 and -2 at 1, 3: I1–I3, I1'–I3'; 3 twice at 2, 5: I2'–I5, I2–I5';
        // -4 and 4 at 4, 6: I4–I6, I4'–I6'
        let mut expected = vec![
            (L(1), L(3)),
            (R(1), R(3)),
            (R(2), L(5)),
            (L(2), R(5)),
            (L(4), L(6)),
            (R(4), R(6)),
        ];
        expected.sort();
        assert_eq!(pairs, expected);
    }

    #[test]
    fn build_2233() {
        let g = ReductionGraph::build(&l(&[2, 2, 3, 3]), &PointerIdSet::new()).unwrap();
        assert_eq!(g.vertex_count(), 10);
        let c = g.components();
        assert_eq!(c.count_cyclic(), 2);
        assert_eq!(c.to_text(&g), "linear: 2 2 3 3\ncyclic: 2 2\ncyclic: 3 3\n");
        assert_eq!(g.reduct().unwrap(), PointerString::empty());
    }

    #[test]
    fn full_domain_gives_two_vertices() {
        let u = l(&[3, -2, 2, 3]);
        let g = ReductionGraph::build(&u, &u.domain()).unwrap();
        assert_eq!(g.vertex_count(), 2);
        assert_eq!(g.reality_edges().len(), 1);
        assert!(g.desire_edges().is_empty());
        assert_eq!(g.reduct().unwrap(), *u.as_pointer_string());
        assert_eq!(g.cyclic_count(), 0);
        let e = ReductionGraph::build(&LegalString::empty(), &PointerIdSet::new()).unwrap();
        assert_eq!(e.vertex_count(), 2);
        assert_eq!(e.reduct().unwrap(), PointerString::empty());
    }

    #[test]
    fn cyclic_counts() {
        let none = PointerIdSet::new();
        assert_eq!(ReductionGraph::build(&l(&[3, -2, 2, 3]), &none).unwrap().cyclic_count(), 1);
        assert_eq!(ReductionGraph::build(&l(&[2, 3, -2, -4, 3, 4]), &none).unwrap().cyclic_count(), 1);
        assert_eq!(ReductionGraph::build(&l(&[2, 3, 2, 3]), &none).unwrap().cyclic_count(), 0);
    }

    #[test]
    fn build_rejects_foreign_identities() {
        let r = ReductionGraph::build(&l(&[2, 2]), &PointerIdSet::from([3]));
        assert_eq!(r.unwrap_err(), Error::NotInDomain(3));
        // 3 lies inside the identity range of the string but never occurs
        let r = ReductionGraph::build(&l(&[2, 4, 2, 4, 5, 5]), &PointerIdSet::from([3, 5]));
        assert_eq!(r.unwrap_err(), Error::NotInDomain(3));
    }

    #[test]
    fn directed_closure() {
        let (u, d) = example();
        let g = ReductionGraph::build(&u, &d).unwrap();
        let directed: Vec<_> = g.directed_reality_edges().collect();
        assert_eq!(directed.len(), 14);
        for (a, label, b) in &directed {
            assert!(directed.contains(&(*b, label.inverse(), *a)));
        }
        assert_eq!(g.directed_desire_edges().count(), 12);
    }

    #[test]
    fn malformed_graphs_are_reported() {
        let v = |name, label| Vertex { name, label };
        let vertices = vec![
            v(VertexName::Source, None),
            v(VertexName::Target, None),
            v(VertexName::Left(1), Some(2)),
        ];
        let reality = vec![RealityEdge {
            from: SOURCE,
            to: 2,
            label: PointerString::empty(),
        }];
        let g = ReductionGraph::from_parts(vertices.clone(), reality.clone(), vec![]).unwrap();
        assert!(matches!(g.reduct(), Err(Error::Structure(_))));
        assert!(g.validate().is_err());

        let mut doubled = reality.clone();
        doubled.push(RealityEdge {
            from: 2,
            to: SOURCE,
            label: PointerString::empty(),
        });
        let g = ReductionGraph::from_parts(vertices.clone(), doubled, vec![]).unwrap();
        assert!(matches!(g.reduct(), Err(Error::Structure(_))));

        let looped = vec![RealityEdge {
            from: 2,
            to: 2,
            label: PointerString::empty(),
        }];
        let g = ReductionGraph::from_parts(vertices.clone(), looped, vec![DesireEdge { a: 2, b: 2 }]).unwrap();
        assert!(matches!(g.validate(), Err(Error::Structure(_))));

        assert!(ReductionGraph::from_parts(vertices[1..].to_vec(), vec![], vec![]).is_err());
    }

    proptest::proptest! {
        #[test]
        fn built_and_explicit_forms_agree(
            u in crate::testing::arb_legal(40),
            mask in proptest::prelude::any::<u64>(),
        ) {
            let d: PointerIdSet = u.domain().iter().filter(|id| mask >> (id % 64) & 1 == 1).collect();
            let g = ReductionGraph::build(&u, &d).unwrap();
            let p = g.parts();
            let copy = ReductionGraph::from_parts(p.vertices.clone(), p.reality.clone(), p.desire.clone()).unwrap();
            proptest::prop_assert_eq!(g.reduct().unwrap(), copy.reduct().unwrap());
        }
    }

    #[test]
    fn walk_matches_explicit_graph() {
        // the built form walks in pieces; the explicit copy walks one step at
        // a time
        let mut seed = 7u64;
        for len in [0u32, 1, 5, 40, 300, 3000] {
            let mut ids: Vec<u32> = (2..2 + len).flat_map(|i| [i, i]).collect();
            for i in (1..ids.len()).rev() {
                seed = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                ids.swap(i, (seed >> 33) as usize % (i + 1));
            }
            let u: LegalString = LegalString::new(
                ids.iter()
                    .enumerate()
                    .map(|(i, &id)| crate::pointer::Pointer::new(id, (seed >> (i % 60)) & 1 == 1).unwrap())
                    .collect(),
            )
            .unwrap();
            for d in [PointerIdSet::new(), (2..2 + len).filter(|id| id % 3 == 0).collect()] {
                let g = ReductionGraph::build(&u, &d).unwrap();
                let p = g.parts();
                let copy = ReductionGraph::from_parts(p.vertices.clone(), p.reality.clone(), p.desire.clone()).unwrap();
                assert_eq!(g.reduct().unwrap(), copy.reduct().unwrap());
                copy.validate().unwrap();
            }
        }
    }
}
