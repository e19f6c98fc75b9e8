//! Canonical forms for reduction graphs.
//!
//! Every component is an alternating path (from `s` to `t`) or an alternating
//! cycle, so a component is determined up to isomorphism by the word read
//! along it. The linear component is read from `s`; a cycle is read from every
//! starting vertex in both directions and the least word is kept. Two graphs
//! are isomorphic iff their linear words agree and their cyclic words agree as
//! multisets.

use super::{ReductionGraph, Slots, VertexId, SOURCE, TARGET};
use crate::error::{Error, Result};
use crate::pointer::PointerString;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
enum Token {
    Vertex(Option<u32>),
    Reality(PointerString),
    Desire,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CanonicalForm {
    linear: Vec<Token>,
    cyclic: Vec<Vec<Token>>,
}

impl CanonicalForm {
    /// The same form with every reality-edge label replaced by λ.
    pub fn without_edge_labels(&self) -> CanonicalForm {
        let strip = |w: &[Token]| -> Vec<Token> {
            w.iter()
                .map(|t| match t {
                    Token::Reality(_) => Token::Reality(PointerString::empty()),
                    other => other.clone(),
                })
                .collect()
        };
        let linear = strip(&self.linear);
        let mut cyclic: Vec<Vec<Token>> = self.cyclic.iter().map(|c| least_rotation(&strip(c))).collect();
        cyclic.sort();
        CanonicalForm { linear, cyclic }
    }

    pub fn cyclic_count(&self) -> usize {
        self.cyclic.len()
    }
}

impl ReductionGraph {
    pub fn canonical_form(&self) -> Result<CanonicalForm> {
        let slots = self.slots()?;
        let n = self.parts().vertices.len();
        let mut seen = vec![false; n];

        let mut linear = vec![Token::Vertex(None)];
        seen[SOURCE] = true;
        let mut cur = SOURCE;
        loop {
            let (next, label) = self.reality_step(&slots, cur)?;
            linear.push(Token::Reality(label));
            linear.push(Token::Vertex(self.parts().vertices[next].label));
            seen[next] = true;
            if next == TARGET {
                break;
            }
            let back = self.desire_step(&slots, next)?;
            linear.push(Token::Desire);
            linear.push(Token::Vertex(self.parts().vertices[back].label));
            if seen[back] {
                return Err(Error::Structure("walk from s revisits a vertex".into()));
            }
            seen[back] = true;
            cur = back;
        }

        let mut cyclic = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            // (vertex, edge leaving it) around the cycle, reality edge first
            let mut word = Vec::new();
            let mut cur = start;
            loop {
                seen[cur] = true;
                let (next, label) = self.reality_step(&slots, cur)?;
                word.push(Token::Vertex(self.parts().vertices[cur].label));
                word.push(Token::Reality(label));
                word.push(Token::Vertex(self.parts().vertices[next].label));
                word.push(Token::Desire);
                seen[next] = true;
                let back = self.desire_step(&slots, next)?;
                if back == start {
                    break;
                }
                if seen[back] {
                    return Err(Error::Structure("component is not a simple cycle".into()));
                }
                cur = back;
            }
            cyclic.push(least_rotation(&word));
        }
        cyclic.sort();
        Ok(CanonicalForm { linear, cyclic })
    }

    fn reality_step(&self, slots: &Slots, v: VertexId) -> Result<(VertexId, PointerString)> {
        let Some(r) = slots.reality(v) else {
            return Err(Error::Structure(format!("vertex {} has no reality edge", self.parts().vertices[v].name)));
        };
        let e = &self.parts().reality[r];
        Ok((e.other(v), e.label_from(v)))
    }

    fn desire_step(&self, slots: &Slots, v: VertexId) -> Result<VertexId> {
        slots
            .mate(v)
            .ok_or_else(|| Error::Structure(format!("vertex {} has no desire edge", self.parts().vertices[v].name)))
    }
}

/// A cycle word is a sequence of blocks `[vertex, reality, vertex, desire]`.
/// Returns the least word over all block rotations of the cycle read in
/// either direction.
fn least_rotation(word: &[Token]) -> Vec<Token> {
    let blocks: Vec<&[Token]> = word.chunks(4).collect();
    let k = blocks.len();
    // reading backwards turns block (a, R(x), b, D) into (b, R(x̄), a, D) and
    // reverses the block order
    let reversed: Vec<Vec<Token>> = blocks
        .iter()
        .rev()
        .map(|b| {
            let label = match &b[1] {
                Token::Reality(l) => l.inverse(),
                _ => unreachable!("second token of a block is a reality edge"),
            };
            vec![b[2].clone(), Token::Reality(label), b[0].clone(), Token::Desire]
        })
        .collect();
    let reversed: Vec<&[Token]> = reversed.iter().map(Vec::as_slice).collect();
    let mut best: Option<Vec<Token>> = None;
    for seq in [&blocks, &reversed] {
        for shift in 0..k {
            let candidate: Vec<Token> = (0..k).flat_map(|i| seq[(shift + i) % k].iter().cloned()).collect();
            if best.as_ref().map_or(true, |b| candidate < *b) {
                best = Some(candidate);
            }
        }
    }
    best.unwrap_or_default()
}

/// Whether a bijection preserving `s`, `t`, vertex labels, edge labels and
/// edge colours exists. Graphs violating the path/cycle structure compare
/// unequal.
pub fn graphs_isomorphic(g1: &ReductionGraph, g2: &ReductionGraph) -> bool {
    match (g1.canonical_form(), g2.canonical_form()) {
        (Ok(a), Ok(b)) => a == b,
        _ => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::legal::LegalString;
    use crate::pointer::PointerIdSet;
    use crate::rules::ReductionRule;

    fn l(v: &[i64]) -> LegalString {
        LegalString::from_signed(v)
    }

    fn g(v: &[i64], d: &[u32]) -> ReductionGraph {
        ReductionGraph::build(&l(v), &d.iter().copied().collect()).unwrap()
    }

    #[test]
    fn identity_and_relabelled_builds() {
        let a = g(&[2, 3, -2, -4, 3, 4], &[]);
        assert!(graphs_isomorphic(&a, &a));
        // cyclically shifting pointer positions inside a cycle changes vertex
        // names but not the structure
        assert!(graphs_isomorphic(&g(&[2, 2, 3, 3], &[]), &g(&[2, 2, 3, 3], &[])));
        assert!(!graphs_isomorphic(&g(&[2, 2, 3, 3], &[]), &g(&[3, 3, 2, 2], &[])));
    }

    #[test]
    fn cyclic_count_distinguishes() {
        let a = g(&[2, 3, -2, -3], &[3]);
        let b = g(&[2, 2], &[]);
        assert_ne!(a.cyclic_count(), b.cyclic_count());
        assert!(!graphs_isomorphic(&a, &b));
    }

    #[test]
    fn snr_matches_rf() {
        let u = l(&[3, 2, 2, 4, 3, 4]);
        let rho: ReductionRule = "snr:2".parse().unwrap();
        let lhs = ReductionGraph::build(&u, &PointerIdSet::new()).unwrap().reduction_function(2).unwrap();
        let rhs = ReductionGraph::build(&rho.apply(&u).unwrap(), &PointerIdSet::new()).unwrap();
        assert!(graphs_isomorphic(&lhs, &rhs));
        assert_eq!(lhs.canonical_form().unwrap(), rhs.canonical_form().unwrap());
    }

    #[test]
    fn labels_matter_unless_stripped() {
        let a = g(&[5, 2, 2, 5], &[5]);
        let b = g(&[2, 2], &[]);
        assert!(!graphs_isomorphic(&a, &b));
        assert_eq!(
            a.canonical_form().unwrap().without_edge_labels(),
            b.canonical_form().unwrap().without_edge_labels()
        );
    }

    #[test]
    fn cycle_reading_direction_is_irrelevant() {
        // Same cycle written starting from different places.
        let w1 = vec![
            Token::Vertex(Some(2)),
            Token::Reality(PointerString::from_signed(&[5])),
            Token::Vertex(Some(3)),
            Token::Desire,
            Token::Vertex(Some(3)),
            Token::Reality(PointerString::empty()),
            Token::Vertex(Some(2)),
            Token::Desire,
        ];
        let w2 = vec![
            Token::Vertex(Some(3)),
            Token::Reality(PointerString::from_signed(&[-5])),
            Token::Vertex(Some(2)),
            Token::Desire,
            Token::Vertex(Some(2)),
            Token::Reality(PointerString::empty()),
            Token::Vertex(Some(3)),
            Token::Desire,
        ];
        assert_eq!(least_rotation(&w1), least_rotation(&w2));
    }
}
