//! The form `build` produces: a copy of `u` plus, for the k-th kept pointer,
//! its position in `u` and the desire partners of `Ik` and `I'k`.
//!
//! Reality edges need no storage. With kept pointers numbered from 0, edge
//! `k` joins `I'k-1` (or `s`) to `Ik` (or `t` when `k = n`) and carries the
//! stretch of `u` strictly between the two kept positions.

use super::{DesireEdge, Parts, RealityEdge, Slots, Vertex, VertexId, VertexName, SOURCE, TARGET};
use crate::error::{Error, Result};
use crate::id_table::IdTable;
use crate::legal::LegalString;
use crate::pointer::{Pointer, PointerIdSet, PointerString};

/// Longest input whose vertex numbers and table entries fit in 32 bits.
pub(crate) const MAX_POINTERS: usize = (1 << 31) - 8;

#[derive(Debug, Clone)]
pub(crate) struct Compact {
    text: Vec<Pointer>,
    /// `[position, partner of Ik, partner of I'k]`
    records: Vec<[u32; 3]>,
}

fn record_of(v: VertexId) -> usize {
    (v - 2) / 2
}

fn side_of(v: VertexId) -> usize {
    1 + (v & 1)
}

/// A desire edge is a splitter when its smaller end hashes to zero, which
/// picks roughly one edge in `1 << SPLIT_BITS` without any extra storage.
const SPLIT_BITS: u32 = 6;

fn is_splitter(a: u32, b: u32) -> bool {
    a.min(b).wrapping_mul(0x9e37_79b1) >> (32 - SPLIT_BITS) == 0
}

/// Number of walks advanced in turn by [`Compact::reduct`].
const LANES: usize = 16;

/// Steps of one walk: `steps[lane][from..to]`, from `start` to `end`.
struct Piece {
    lane: usize,
    from: usize,
    to: usize,
    start: u32,
    end: u32,
}

/// Per-lane step buffers, each step being a stretch as returned by
/// [`Compact::leaving_span`], and the pieces they are split into.
struct Walks {
    steps: Vec<Vec<[u32; 2]>>,
    pieces: Vec<Piece>,
}

impl Walks {
    /// Room for about one and a half walks over `edges` reality edges.
    fn new(edges: usize) -> Self {
        Walks {
            steps: (0..LANES).map(|_| Vec::with_capacity(edges * 3 / (2 * LANES) + 64)).collect(),
            pieces: Vec::new(),
        }
    }
}

impl Compact {
    /// One pass over `u`. The identity table holds the rank and orientation
    /// of a first occurrence, or marks an identity of `D`.
    pub(crate) fn build(u: &LegalString, removed: &PointerIdSet) -> Result<Self> {
        const REMOVED: u32 = IdTable::EMPTY - 1;
        const REMOVED_SEEN: u32 = IdTable::EMPTY - 2;
        const BAR: u32 = 1 << 31;
        if u.len() > MAX_POINTERS {
            return Err(Error::Capacity {
                size: u.len(),
                limit: MAX_POINTERS,
            });
        }

        let mut table = IdTable::for_string(u);
        for id in removed.iter() {
            if !table.covers(id) {
                return Err(Error::NotInDomain(id));
            }
            table.set(id, REMOVED);
        }

        // Every branch on a table entry would be a coin flip that waits for a
        // load, so the loop selects instead of branching. Writes that should
        // not happen go to a spare record at the end: those of removed
        // pointers, and the pairing writes at a first occurrence.
        let expected = u.len() - 2 * removed.len().min(u.len() / 2);
        let spare = expected;
        let mut records: Vec<[u32; 3]> = vec![[0; 3]; expected + 1];
        let mut k = 0usize;
        for (pos, p) in u.iter().enumerate() {
            let state = table.get(p.id());
            let dropped = (state == REMOVED) | (state == REMOVED_SEEN);
            let second = !dropped & (state != IdTable::EMPTY);
            // `k` exceeds `spare` only when some identity of `D` is missing
            // from `u`, which is reported below
            let here = k.min(spare);
            records[if dropped { spare } else { here }][0] = pos as u32;
            let mark = here as u32 | if p.is_barred() { BAR } else { 0 };
            table.set(
                p.id(),
                if dropped {
                    REMOVED_SEEN
                } else if second {
                    state
                } else {
                    mark
                },
            );

            let i = if second { (state & !BAR) as usize } else { spare };
            let (left, right) = (2 + 2 * here, 3 + 2 * here);
            let (il, ir) = (2 + 2 * i, 3 + 2 * i);
            let (to_left, to_right) = if (state & BAR != 0) == p.is_barred() { (ir, il) } else { (il, ir) };
            let at = if second { here } else { spare };
            records[at][1] = to_left as u32;
            records[at][2] = to_right as u32;
            records[i][side_of(to_left)] = left as u32;
            records[i][side_of(to_right)] = right as u32;
            k += !dropped as usize;
        }
        if let Some(id) = removed.iter().find(|&id| table.get(id) == REMOVED) {
            return Err(Error::NotInDomain(id));
        }
        records.truncate(k);
        Ok(Compact {
            text: u.symbols().to_vec(),
            records,
        })
    }

    fn kept(&self) -> usize {
        self.records.len()
    }

    fn position(&self, k: usize) -> usize {
        self.records[k][0] as usize
    }

    fn mate(&self, v: VertexId) -> VertexId {
        self.records[record_of(v)][side_of(v)] as usize
    }

    /// The other end of the reality edge at `v`.
    fn far(&self, v: VertexId) -> VertexId {
        let n = self.kept();
        match v {
            SOURCE if n == 0 => TARGET,
            SOURCE => 2,
            TARGET if n == 0 => SOURCE,
            TARGET => 2 * n + 1,
            _ => self.far_inner(v),
        }
    }

    /// [`Compact::far`] for `Ik` and `I'k`. Arithmetic rather than a branch
    /// on parity: during a walk `v` has just arrived from memory, and a
    /// mispredicted branch on it would stall until the load completes.
    #[inline]
    fn far_inner(&self, v: VertexId) -> VertexId {
        let next = v + 2 * (v & 1) - 1;
        if next == TARGET {
            SOURCE
        } else if next == 2 * self.kept() + 2 {
            TARGET
        } else {
            next
        }
    }

    /// Index of the reality edge at `v`.
    fn edge_at(&self, v: VertexId) -> usize {
        match v {
            SOURCE => 0,
            TARGET => self.kept(),
            _ => record_of(v) + (v & 1),
        }
    }

    /// The stretch of `u` carried by reality edge `k`.
    fn edge_span(&self, k: usize) -> (usize, usize) {
        let lo = if k == 0 { 0 } else { self.position(k - 1) + 1 };
        let hi = if k == self.kept() { self.text.len() } else { self.position(k) };
        (lo, hi)
    }

    /// The stretch of `u` read when leaving `v` along its reality edge, as
    /// a pair of positions in reading order: `[a, b]` with `a > b` means
    /// `u[b..a]` read backwards. Edges point away from `s`, so only `Ik`
    /// and `t` read them backwards.
    ///
    /// The two positions sit in records `k - 1` and `k`, one of which a walk
    /// loads anyway to find the next desire edge. The swap is arithmetic so
    /// that it never waits on `v`.
    #[inline]
    fn leaving_span(&self, v: VertexId) -> [u32; 2] {
        let (lo, hi) = self.edge_span(self.edge_at(v));
        let (lo, hi) = (lo as u32, hi as u32);
        let backward = (v == TARGET) | ((v != SOURCE) & (v & 1 == 0));
        let swap = (lo ^ hi) & 0u32.wrapping_sub(backward as u32);
        [lo ^ swap, hi ^ swap]
    }

    /// The label of the walk from `s` to `t`.
    ///
    /// Following the walk one vertex at a time costs a cache miss per step
    /// on large graphs, and the misses cannot overlap because each address
    /// depends on the previous load. Instead, a sparse set of desire edges
    /// cuts every component into short pieces, and several pieces are walked
    /// at once so that many loads are in flight together. Walks record the
    /// stretch of `u` behind every step; the pieces of the linear component
    /// are then chained from `s` and their stretches copied in order.
    ///
    /// A piece lies between two splitter edges. Walks first leave from the
    /// smaller end of every splitter edge, which covers a piece once if just
    /// one of its ends is a smaller end and twice if both are. The pieces
    /// between two larger ends are walked in a second round.
    pub(crate) fn reduct(&self) -> Result<PointerString> {
        let splitters = (2..2 + 2 * self.kept()).filter_map(|v| {
            let m = self.mate(v);
            is_splitter(v as u32, m as u32).then_some((v as u32, v < m))
        });
        let mut starts = vec![SOURCE as u32];
        starts.extend(splitters.clone().filter(|&(_, smaller)| smaller).map(|(v, _)| v));
        let mut walks = Walks::new(self.kept() + 1);
        self.walk(&starts, &mut walks)?;

        let mut reached = vec![false; 2 * self.kept() + 2];
        for piece in &walks.pieces {
            reached[piece.end as usize] = true;
        }
        let second: Vec<u32> = splitters
            .filter(|&(v, smaller)| !smaller && !reached[v as usize])
            .map(|(v, _)| v)
            .collect();
        self.walk(&second, &mut walks)?;

        let key = |list: &mut Vec<(u32, usize)>| list.sort_unstable();
        let mut by_start: Vec<(u32, usize)> = walks.pieces.iter().enumerate().map(|(i, p)| (p.start, i)).collect();
        let mut by_end: Vec<(u32, usize)> = walks.pieces.iter().enumerate().map(|(i, p)| (p.end, i)).collect();
        key(&mut by_start);
        key(&mut by_end);
        let find = |list: &[(u32, usize)], v: u32| {
            list.binary_search_by_key(&v, |&(w, _)| w).ok().map(|i| list[i].1)
        };

        // Chain the pieces from `s`, noting for each whether it was walked
        // towards `t` or away from it.
        let mut order = Vec::new();
        let mut at = SOURCE as u32;
        loop {
            let (piece, forward) = match (find(&by_start, at), find(&by_end, at)) {
                (Some(i), _) => (i, true),
                (None, Some(i)) => (i, false),
                (None, None) => return Err(Error::Structure("walk from s leaves the splitter set".into())),
            };
            order.push((piece, forward));
            let p = &walks.pieces[piece];
            let reached = if forward { p.end } else { p.start } as usize;
            match reached {
                TARGET => break,
                SOURCE => return Err(Error::Structure("walk from s returns to s".into())),
                v => at = self.mate(v) as u32,
            }
            if order.len() > walks.pieces.len() {
                return Err(Error::Structure("alternating walk from s never reaches t".into()));
            }
        }

        let mut out = Vec::with_capacity(self.text.len());
        let mut copy = |[a, b]: [u32; 2]| {
            if a <= b {
                out.extend_from_slice(&self.text[a as usize..b as usize]);
            } else {
                out.extend(self.text[b as usize..a as usize].iter().rev().map(|p| p.bar()));
            }
        };
        for (piece, forward) in order {
            let p = &walks.pieces[piece];
            let steps = &walks.steps[p.lane][p.from..p.to];
            if forward {
                steps.iter().for_each(|&span| copy(span));
            } else {
                steps.iter().rev().for_each(|&[a, b]| copy([b, a]));
            }
        }
        Ok(PointerString::new(out))
    }

    /// Walks from every vertex of `starts` until a splitter edge, `s` or `t`
    /// is reached, appending the pieces to `walks`. Lanes run in lockstep;
    /// a lane that finishes a piece takes the next start.
    fn walk(&self, starts: &[u32], walks: &mut Walks) -> Result<()> {
        let lanes = LANES.min(starts.len());
        let mut cur = [0usize; LANES];
        let mut piece_of = [usize::MAX; LANES];
        let mut queued = 0;
        let mut launch = |lane: usize, walks: &mut Walks, cur: &mut [usize; LANES], piece_of: &mut [usize; LANES]| {
            if queued < starts.len() {
                let v = starts[queued];
                queued += 1;
                piece_of[lane] = walks.pieces.len();
                cur[lane] = v as usize;
                walks.pieces.push(Piece {
                    lane,
                    from: walks.steps[lane].len(),
                    to: 0,
                    start: v,
                    end: 0,
                });
                true
            } else {
                piece_of[lane] = usize::MAX;
                false
            }
        };
        let mut busy = 0;
        for lane in 0..lanes {
            busy += launch(lane, walks, &mut cur, &mut piece_of) as usize;
        }
        let mut rounds = 0usize;
        while busy > 0 {
            for lane in 0..lanes {
                let piece = piece_of[lane];
                if piece == usize::MAX {
                    continue;
                }
                let v = cur[lane];
                walks.steps[lane].push(self.leaving_span(v));
                let next = if v == SOURCE { self.far(v) } else { self.far_inner(v) };
                if next != SOURCE && next != TARGET {
                    let m = self.mate(next);
                    if !is_splitter(next as u32, m as u32) {
                        cur[lane] = m;
                        continue;
                    }
                }
                let p = &mut walks.pieces[piece];
                p.to = walks.steps[lane].len();
                p.end = next as u32;
                if !launch(lane, walks, &mut cur, &mut piece_of) {
                    busy -= 1;
                }
            }
            rounds += 1;
            if rounds > 2 * self.text.len() + 4 {
                return Err(Error::Structure("walks between splitters do not terminate".into()));
            }
        }
        Ok(())
    }

    /// Spells out vertices and edges. Desire edges are listed by the later of
    /// their two ends, `Ik` before `I'k`.
    pub(crate) fn materialize(&self) -> Parts {
        let n = self.kept();
        let mut vertices = Vec::with_capacity(2 * n + 2);
        vertices.push(Vertex {
            name: VertexName::Source,
            label: None,
        });
        vertices.push(Vertex {
            name: VertexName::Target,
            label: None,
        });
        let mut desire = Vec::with_capacity(n);
        for k in 0..n {
            let label = Some(self.text[self.position(k)].id());
            vertices.push(Vertex {
                name: VertexName::Left(k as u32 + 1),
                label,
            });
            vertices.push(Vertex {
                name: VertexName::Right(k as u32 + 1),
                label,
            });
            for v in [2 + 2 * k, 3 + 2 * k] {
                let m = self.mate(v);
                if m < v {
                    desire.push(DesireEdge { a: m, b: v });
                }
            }
        }
        let reality = (0..=n)
            .map(|k| {
                let (lo, hi) = self.edge_span(k);
                RealityEdge {
                    from: if k == 0 { SOURCE } else { 1 + 2 * k },
                    to: if k == n { TARGET } else { 2 + 2 * k },
                    label: self.text[lo..hi].iter().copied().collect(),
                }
            })
            .collect::<Vec<_>>();
        let mut slots = Slots::empty(vertices.len());
        for (k, e) in reality.iter().enumerate() {
            slots.set_reality(k, e.from, e.to);
        }
        for e in &desire {
            slots.set_mates(e.a, e.b);
        }
        Parts {
            vertices,
            reality,
            desire,
            slots: Some(slots),
        }
    }
}
