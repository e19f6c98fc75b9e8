//! Pointers, raw pointer strings and identity sets.
//!
//! A pointer is an identity `k >= 2` together with an orientation. The text
//! form writes `k` for the unbarred pointer and `-k` for the barred one, with
//! tokens separated by whitespace; the empty text is the empty string.

use std::collections::BTreeSet;
use std::fmt;
use std::ops::Deref;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Smallest pointer identity; `1` is reserved for the first MDS.
pub const MIN_ID: u32 = 2;

/// Largest pointer identity, so that a pointer fits in 32 bits.
pub const MAX_ID: u32 = u32::MAX >> 1;

/// Stored as `id << 1 | barred`, which orders pointers by identity first and
/// puts `k` before `-k`. Keeping a pointer to four bytes halves the memory
/// traffic of every long string operation.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Pointer(u32);

impl Pointer {
    /// `None` when `id` lies outside `2..=MAX_ID`.
    pub fn new(id: u32, barred: bool) -> Option<Self> {
        (MIN_ID..=MAX_ID)
            .contains(&id)
            .then_some(Pointer(id << 1 | barred as u32))
    }

    /// Unbarred pointer. Panics if `id` is out of range.
    pub fn plain(id: u32) -> Self {
        Self::new(id, false).unwrap_or_else(|| panic!("pointer identity {id} outside {MIN_ID}..={MAX_ID}"))
    }

    /// Barred pointer. Panics if `id` is out of range.
    pub fn barred(id: u32) -> Self {
        Self::new(id, true).unwrap_or_else(|| panic!("pointer identity {id} outside {MIN_ID}..={MAX_ID}"))
    }

    /// The unbarred identity of the pointer.
    pub fn id(self) -> u32 {
        self.0 >> 1
    }

    pub fn is_barred(self) -> bool {
        self.0 & 1 == 1
    }

    pub fn bar(self) -> Self {
        Pointer(self.0 ^ 1)
    }
}

impl fmt::Debug for Pointer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Pointer")
            .field("id", &self.id())
            .field("barred", &self.is_barred())
            .finish()
    }
}

impl fmt::Display for Pointer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_barred() {
            write!(f, "-{}", self.id())
        } else {
            write!(f, "{}", self.id())
        }
    }
}

impl FromStr for Pointer {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_token(s, 1)
    }
}

fn parse_token(token: &str, position: usize) -> Result<Pointer> {
    let fail = |reason: &str| Error::Parse {
        token: token.to_string(),
        position,
        reason: reason.to_string(),
    };
    let (barred, digits) = match token.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, token),
    };
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(fail("expected a signed decimal integer"));
    }
    let id: u32 = digits
        .parse()
        .map_err(|_| fail("identity out of range"))?;
    if id < MIN_ID {
        return Err(fail("pointer identities start at 2"));
    }
    Pointer::new(id, barred).ok_or_else(|| fail("identity out of range"))
}

/// A string over the pointer alphabet; the empty string is λ.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PointerString(Vec<Pointer>);

impl PointerString {
    pub fn new(symbols: Vec<Pointer>) -> Self {
        PointerString(symbols)
    }

    pub fn empty() -> Self {
        PointerString(Vec::new())
    }

    /// Parses whitespace-separated signed integers.
    pub fn parse(text: &str) -> Result<Self> {
        text.split_whitespace()
            .enumerate()
            .map(|(i, tok)| parse_token(tok, i + 1))
            .collect::<Result<Vec<_>>>()
            .map(PointerString)
    }

    /// Builds a string from signed integers (`-k` is the barred pointer).
    /// Panics on identities below 2; intended for literals.
    pub fn from_signed(values: &[i64]) -> Self {
        PointerString(
            values
                .iter()
                .map(|&v| {
                    let id = u32::try_from(v.unsigned_abs()).expect("identity out of range");
                    if v < 0 {
                        Pointer::barred(id)
                    } else {
                        Pointer::plain(id)
                    }
                })
                .collect(),
        )
    }

    pub fn symbols(&self) -> &[Pointer] {
        &self.0
    }

    pub fn into_inner(self) -> Vec<Pointer> {
        self.0
    }

    /// Reversed string with every bar flipped.
    pub fn inverse(&self) -> PointerString {
        PointerString(self.0.iter().rev().map(|p| p.bar()).collect())
    }

    pub fn domain(&self) -> PointerIdSet {
        PointerIdSet(self.0.iter().map(|p| p.id()).collect())
    }

    pub fn concat(&self, other: &PointerString) -> PointerString {
        let mut v = Vec::with_capacity(self.len() + other.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        PointerString(v)
    }

    pub(crate) fn extend_from(&mut self, symbols: &[Pointer]) {
        self.0.extend_from_slice(symbols);
    }

    pub(crate) fn extend_inverse(&mut self, symbols: &[Pointer]) {
        self.0.extend(symbols.iter().rev().map(|p| p.bar()));
    }
}

impl Deref for PointerString {
    type Target = [Pointer];

    fn deref(&self) -> &[Pointer] {
        &self.0
    }
}

impl From<Vec<Pointer>> for PointerString {
    fn from(v: Vec<Pointer>) -> Self {
        PointerString(v)
    }
}

impl FromIterator<Pointer> for PointerString {
    fn from_iter<I: IntoIterator<Item = Pointer>>(iter: I) -> Self {
        PointerString(iter.into_iter().collect())
    }
}

impl FromStr for PointerString {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        PointerString::parse(s)
    }
}

impl fmt::Display for PointerString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{p}")?;
        }
        Ok(())
    }
}

/// A set of unbarred pointer identities.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PointerIdSet(BTreeSet<u32>);

impl PointerIdSet {
    pub fn new() -> Self {
        PointerIdSet(BTreeSet::new())
    }

    /// Parses a comma-separated list of identities, e.g. `5,6,7`.
    pub fn parse_list(text: &str) -> Result<Self> {
        let mut set = BTreeSet::new();
        for (i, tok) in text.split(',').map(str::trim).enumerate() {
            if tok.is_empty() && text.trim().is_empty() {
                break;
            }
            let p = parse_token(tok, i + 1)?;
            if p.is_barred() {
                return Err(Error::Parse {
                    token: tok.to_string(),
                    position: i + 1,
                    reason: "identity sets hold unbarred identities".into(),
                });
            }
            set.insert(p.id());
        }
        Ok(PointerIdSet(set))
    }

    pub fn contains(&self, id: u32) -> bool {
        self.0.contains(&id)
    }

    pub fn insert(&mut self, id: u32) -> bool {
        self.0.insert(id)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = u32> + '_ {
        self.0.iter().copied()
    }

    pub fn is_subset(&self, other: &PointerIdSet) -> bool {
        self.0.is_subset(&other.0)
    }

    pub fn union(&self, other: &PointerIdSet) -> PointerIdSet {
        PointerIdSet(self.0.union(&other.0).copied().collect())
    }

    pub fn difference(&self, other: &PointerIdSet) -> PointerIdSet {
        PointerIdSet(self.0.difference(&other.0).copied().collect())
    }

    pub fn is_disjoint(&self, other: &PointerIdSet) -> bool {
        self.0.is_disjoint(&other.0)
    }

    pub fn largest(&self) -> Option<u32> {
        self.0.last().copied()
    }
}

impl FromIterator<u32> for PointerIdSet {
    fn from_iter<I: IntoIterator<Item = u32>>(iter: I) -> Self {
        PointerIdSet(iter.into_iter().collect())
    }
}

impl<const N: usize> From<[u32; N]> for PointerIdSet {
    fn from(ids: [u32; N]) -> Self {
        PointerIdSet(ids.into_iter().collect())
    }
}

impl fmt::Display for PointerIdSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, id) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{id}")?;
        }
        f.write_str("}")
    }
}
