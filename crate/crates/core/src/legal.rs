//! Legal strings: every identity occurs exactly twice, in either orientation.

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::ops::Deref;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::id_table::IdTable;
use crate::pointer::{Pointer, PointerIdSet, PointerString};

/// True iff every identity in `u` occurs exactly twice counting both
/// orientations. The empty string is legal.
pub fn is_legal(u: &[Pointer]) -> bool {
    let mut counts: HashMap<u32, u8> = HashMap::with_capacity(u.len() / 2);
    for p in u {
        let c = counts.entry(p.id()).or_insert(0);
        *c += 1;
        if *c > 2 {
            return false;
        }
    }
    counts.values().all(|&c| c == 2)
}

/// For every position, the position of the other occurrence of the same
/// identity. Only meaningful for legal input.
pub(crate) fn partner_positions(u: &[Pointer]) -> Vec<usize> {
    let mut first = IdTable::for_string(u);
    let mut partner = vec![usize::MAX; u.len()];
    for (j, p) in u.iter().enumerate() {
        let i = first.get(p.id());
        if i == IdTable::EMPTY {
            first.set(p.id(), j as u32);
        } else {
            partner[i as usize] = j;
            partner[j] = i as usize;
        }
    }
    partner
}

#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LegalString(PointerString);

impl LegalString {
    pub fn new(inner: PointerString) -> Result<Self> {
        if is_legal(&inner) {
            Ok(LegalString(inner))
        } else {
            Err(Error::NotLegal(inner))
        }
    }

    pub fn empty() -> Self {
        LegalString(PointerString::empty())
    }

    pub fn parse(text: &str) -> Result<Self> {
        LegalString::new(PointerString::parse(text)?)
    }

    /// Panics if the literal is not legal.
    pub fn from_signed(values: &[i64]) -> Self {
        LegalString::new(PointerString::from_signed(values)).expect("literal is not legal")
    }

    pub(crate) fn new_unchecked(inner: PointerString) -> Self {
        debug_assert!(is_legal(&inner), "`{inner}` is not legal");
        LegalString(inner)
    }

    pub fn as_pointer_string(&self) -> &PointerString {
        &self.0
    }

    pub fn into_pointer_string(self) -> PointerString {
        self.0
    }

    pub fn domain(&self) -> PointerIdSet {
        self.0.domain()
    }

    pub fn inverse(&self) -> LegalString {
        LegalString(self.0.inverse())
    }

    /// Inclusive 0-based positions of the two occurrences of `id`.
    pub fn positions(&self, id: u32) -> Result<(usize, usize)> {
        let mut found = self
            .0
            .iter()
            .enumerate()
            .filter(|(_, p)| p.id() == id)
            .map(|(i, _)| i);
        match (found.next(), found.next()) {
            (Some(i), Some(j)) => Ok((i, j)),
            _ => Err(Error::NotInDomain(id)),
        }
    }

    /// The p-interval: positions of both occurrences of `⟦p⟧`.
    pub fn interval(&self, p: Pointer) -> Result<(usize, usize)> {
        self.positions(p.id())
    }

    /// Whether both orientations of `id` occur.
    pub fn is_positive(&self, id: u32) -> Result<bool> {
        let (i, j) = self.positions(id)?;
        Ok(self.0[i] != self.0[j])
    }

    /// Whether the intervals of `id1` and `id2` interleave strictly.
    pub fn pointers_overlap(&self, id1: u32, id2: u32) -> Result<bool> {
        if id1 == id2 {
            return Err(Error::SameIdentity(id1));
        }
        let (i1, j1) = self.positions(id1)?;
        let (i2, j2) = self.positions(id2)?;
        Ok((i1 < i2 && i2 < j1 && j1 < j2) || (i2 < i1 && i1 < j2 && j2 < j1))
    }

    /// True iff every pointer in the string is negative.
    pub fn all_negative(&self) -> bool {
        let partner = partner_positions(&self.0);
        self.0
            .iter()
            .enumerate()
            .all(|(i, p)| self.0[partner[i]] == *p)
    }

    /// True iff no two pointers overlap: occurrences nest like brackets.
    pub fn is_nonoverlapping(&self) -> bool {
        let mut stack: Vec<u32> = Vec::new();
        let mut open: HashSet<u32> = HashSet::new();
        for p in self.0.iter() {
            if open.remove(&p.id()) {
                if stack.pop() != Some(p.id()) {
                    return false;
                }
            } else {
                open.insert(p.id());
                stack.push(p.id());
            }
        }
        true
    }

    /// A nonempty legal string is elementary if it has no proper nonempty
    /// legal substring.
    pub fn is_elementary(&self) -> Result<bool> {
        if self.0.is_empty() {
            return Err(Error::EmptyString);
        }
        Ok(shortest_legal_factor(&self.0).map_or(true, |(i, j)| i == 0 && j + 1 == self.0.len()))
    }

    /// Erases every pointer whose identity lies in `ids`.
    pub fn remove_pointers(&self, ids: &PointerIdSet) -> LegalString {
        LegalString(self.0.iter().copied().filter(|p| !ids.contains(p.id())).collect())
    }

    /// Removes the factor `start..=end`, which must itself be legal.
    pub(crate) fn without_factor(&self, start: usize, end: usize) -> LegalString {
        let mut v = Vec::with_capacity(self.0.len() - (end + 1 - start));
        v.extend_from_slice(&self.0[..start]);
        v.extend_from_slice(&self.0[end + 1..]);
        LegalString::new_unchecked(v.into())
    }
}

/// The shortest nonempty legal factor `(start, end)` of a legal string
/// (leftmost among equals), or `None` for the empty string. A shortest legal
/// factor is elementary.
pub(crate) fn shortest_legal_factor(u: &[Pointer]) -> Option<(usize, usize)> {
    let partner = partner_positions(u);
    let mut best: Option<(usize, usize)> = None;
    for i in 0..u.len() {
        let limit = best.map_or(usize::MAX, |(a, b)| b - a);
        let mut reach = i;
        for j in i..u.len() {
            if j - i >= limit {
                break;
            }
            let q = partner[j];
            if q < i {
                break;
            }
            reach = reach.max(q);
            if reach == j {
                best = Some((i, j));
                break;
            }
        }
    }
    best
}

impl Deref for LegalString {
    type Target = PointerString;

    fn deref(&self) -> &PointerString {
        &self.0
    }
}

impl TryFrom<PointerString> for LegalString {
    type Error = Error;

    fn try_from(u: PointerString) -> Result<Self> {
        LegalString::new(u)
    }
}

impl FromStr for LegalString {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        LegalString::parse(s)
    }
}

impl fmt::Display for LegalString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}
