//! The p-reduction function: drops every vertex labelled `p` and merges each
//! alternating walk that passes through `p`-vertices into one reality edge.

use super::{DesireEdge, RealityEdge, ReductionGraph, VertexId, NONE};
use crate::error::{Error, Result};
use crate::pointer::PointerString;

impl ReductionGraph {
    /// Applies `rf_id`. For every maximal alternating walk `x → … → y` whose
    /// inner vertices are all labelled `id` and whose ends are not, a reality
    /// edge from `x` to `y` is added carrying the concatenated labels.
    pub fn reduction_function(&self, id: u32) -> Result<ReductionGraph> {
        if !self.parts().vertices.iter().any(|v| v.label == Some(id)) {
            return Err(Error::LabelAbsent(id));
        }
        let slots = self.slots()?;
        let hit = |v: VertexId| self.parts().vertices[v].label == Some(id);

        let mut remap = vec![NONE; self.parts().vertices.len()];
        let mut vertices = Vec::with_capacity(self.parts().vertices.len());
        for (v, vx) in self.parts().vertices.iter().enumerate() {
            if !hit(v) {
                remap[v] = vertices.len();
                vertices.push(vx.clone());
            }
        }

        let mut reality: Vec<RealityEdge> = self
            .parts()
            .reality
            .iter()
            .filter(|e| !hit(e.from) && !hit(e.to))
            .map(|e| RealityEdge {
                from: remap[e.from],
                to: remap[e.to],
                label: e.label.clone(),
            })
            .collect();
        let desire: Vec<DesireEdge> = self
            .parts()
            .desire
            .iter()
            .filter(|e| !hit(e.a) && !hit(e.b))
            .map(|e| DesireEdge {
                a: remap[e.a],
                b: remap[e.b],
            })
            .collect();

        for start in 0..self.parts().vertices.len() {
            let Some(r) = slots.reality(start).filter(|_| !hit(start)) else {
                continue;
            };
            let first = &self.parts().reality[r];
            if !hit(first.other(start)) {
                continue;
            }
            let mut label = PointerString::empty();
            let mut cur = start;
            let mut edge = first;
            let end = loop {
                let next = edge.other(cur);
                if cur == edge.from {
                    label.extend_from(&edge.label);
                } else {
                    label.extend_inverse(&edge.label);
                }
                if !hit(next) {
                    break next;
                }
                cur = slots.mate(next).ok_or_else(|| {
                    Error::Structure(format!("vertex {} has no desire edge", self.parts().vertices[next].name))
                })?;
                let r = slots.reality(cur).ok_or_else(|| {
                    Error::Structure(format!("vertex {} has no reality edge", self.parts().vertices[cur].name))
                })?;
                edge = &self.parts().reality[r];
            };
            // each merged walk is met from both ends; keep one
            if start < end {
                reality.push(RealityEdge {
                    from: remap[start],
                    to: remap[end],
                    label,
                });
            }
        }

        Ok(ReductionGraph::explicit(vertices, reality, desire))
    }
}
