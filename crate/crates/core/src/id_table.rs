use std::collections::HashMap;

use crate::pointer::Pointer;

/// A `u32` slot per pointer identity. Strings over small identities (the
/// usual case) get a flat array indexed by identity; strings with huge,
/// sparse identities fall back to a hash map so memory stays proportional
/// to the input.
pub(crate) struct IdTable {
    direct: Vec<u32>,
    hashed: HashMap<u32, u32>,
    use_direct: bool,
}

impl IdTable {
    pub const EMPTY: u32 = u32::MAX;

    pub fn for_string(u: &[Pointer]) -> Self {
        let max = u.iter().map(|p| p.id()).max().unwrap_or(0) as usize;
        let use_direct = max <= 4 * u.len() + 64;
        IdTable {
            direct: if use_direct { vec![Self::EMPTY; max + 1] } else { Vec::new() },
            hashed: HashMap::new(),
            use_direct,
        }
    }

    #[inline]
    pub fn get(&self, id: u32) -> u32 {
        if self.use_direct {
            self.direct.get(id as usize).copied().unwrap_or(Self::EMPTY)
        } else {
            self.hashed.get(&id).copied().unwrap_or(Self::EMPTY)
        }
    }

    /// Stores `value` for `id`. In direct mode `id` must not exceed the
    /// largest identity of the string the table was made for.
    #[inline]
    pub fn set(&mut self, id: u32, value: u32) {
        if self.use_direct {
            self.direct[id as usize] = value;
        } else {
            self.hashed.insert(id, value);
        }
    }

    /// Whether `id` can be stored at all; identities above the string's
    /// maximum cannot occur in it.
    pub fn covers(&self, id: u32) -> bool {
        !self.use_direct || (id as usize) < self.direct.len()
    }
}
