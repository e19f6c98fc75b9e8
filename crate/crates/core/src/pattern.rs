//! Micronuclear patterns and the realistic/realizable string classes.
//!
//! A pattern is a signed permutation of the MDS indices `1..=κ`. It encodes to
//! a pointer string by mapping `M1 -> 2`, `Mκ -> κ`, `Mi -> i (i+1)` and an
//! inverted MDS to the inverse of its image.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::legal::LegalString;
use crate::pointer::{Pointer, PointerString};

/// Default cap on `|dom(u)|` for the exhaustive searches.
pub const DEFAULT_MAX_DOMAIN: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Mds {
    pub index: u32,
    pub inverted: bool,
}

impl fmt::Display for Mds {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.inverted {
            write!(f, "~M{}", self.index)
        } else {
            write!(f, "M{}", self.index)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MicronuclearPattern {
    mds: Vec<Mds>,
}

impl MicronuclearPattern {
    /// Validates that `mds` is a signed permutation of `1..=κ` with `κ >= 2`.
    pub fn new(mds: Vec<Mds>) -> Result<Self> {
        let kappa = mds.len();
        if kappa < 2 {
            return Err(Error::InvalidPattern(format!(
                "a pattern needs at least two MDSs, got {kappa}"
            )));
        }
        let mut seen = vec![false; kappa + 1];
        for m in &mds {
            let i = m.index as usize;
            if i == 0 || i > kappa {
                return Err(Error::InvalidPattern(format!(
                    "MDS index {} outside 1..={kappa}",
                    m.index
                )));
            }
            if std::mem::replace(&mut seen[i], true) {
                return Err(Error::InvalidPattern(format!("MDS index {} repeated", m.index)));
            }
        }
        Ok(MicronuclearPattern { mds })
    }

    /// Parses tokens `Mi` / `~Mi`, e.g. `M3 M4 ~M2 M1`.
    pub fn parse(text: &str) -> Result<Self> {
        let mut mds = Vec::new();
        for tok in text.split_whitespace() {
            let (inverted, rest) = match tok.strip_prefix('~') {
                Some(r) => (true, r),
                None => (false, tok),
            };
            let index = rest
                .strip_prefix('M')
                .and_then(|d| d.parse::<u32>().ok())
                .ok_or_else(|| Error::InvalidPattern(format!("bad token `{tok}`")))?;
            mds.push(Mds { index, inverted });
        }
        MicronuclearPattern::new(mds)
    }

    pub fn kappa(&self) -> u32 {
        self.mds.len() as u32
    }

    pub fn mds(&self) -> &[Mds] {
        &self.mds
    }

    /// The realistic string of the pattern.
    pub fn encode(&self) -> LegalString {
        let kappa = self.kappa();
        let mut out = PointerString::empty();
        for m in &self.mds {
            let image = mds_image(m.index, kappa);
            if m.inverted {
                out.extend_inverse(&image);
            } else {
                out.extend_from(&image);
            }
        }
        LegalString::new_unchecked(out)
    }
}

impl FromStr for MicronuclearPattern {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        MicronuclearPattern::parse(s)
    }
}

impl fmt::Display for MicronuclearPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, m) in self.mds.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{m}")?;
        }
        Ok(())
    }
}

fn mds_image(index: u32, kappa: u32) -> Vec<Pointer> {
    if index == 1 {
        vec![Pointer::plain(2)]
    } else if index == kappa {
        vec![Pointer::plain(kappa)]
    } else {
        vec![Pointer::plain(index), Pointer::plain(index + 1)]
    }
}

fn oriented_image(m: Mds, kappa: u32) -> Vec<Pointer> {
    let img = mds_image(m.index, kappa);
    if m.inverted {
        img.iter().rev().map(|p| p.bar()).collect()
    } else {
        img
    }
}

/// Returns a pattern encoding to `u` if one exists. κ is the largest identity
/// of `u`, so strings whose domain is not exactly `{2, …, κ}` are rejected
/// outright.
pub fn realistic_witness(u: &LegalString) -> Option<MicronuclearPattern> {
    let dom = u.domain();
    let kappa = dom.largest()?;
    if dom.len() as u32 != kappa - 1 {
        return None;
    }
    let mut used = vec![false; kappa as usize + 1];
    let mut chosen = Vec::with_capacity(kappa as usize);
    if segment(u, 0, kappa, &mut used, &mut chosen) {
        Some(MicronuclearPattern { mds: chosen })
    } else {
        None
    }
}

pub fn is_realistic(u: &LegalString) -> bool {
    realistic_witness(u).is_some()
}

fn segment(u: &[Pointer], pos: usize, kappa: u32, used: &mut [bool], chosen: &mut Vec<Mds>) -> bool {
    if pos == u.len() {
        return chosen.len() == kappa as usize;
    }
    for index in 1..=kappa {
        if used[index as usize] {
            continue;
        }
        for inverted in [false, true] {
            let m = Mds { index, inverted };
            let img = oriented_image(m, kappa);
            if u[pos..].starts_with(&img) {
                used[index as usize] = true;
                chosen.push(m);
                if segment(u, pos + img.len(), kappa, used, chosen) {
                    return true;
                }
                chosen.pop();
                used[index as usize] = false;
            }
        }
    }
    false
}

/// A bar-respecting renaming together with the pattern of the renamed string.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Realization {
    /// Image of every unbarred identity of the input.
    pub renaming: Vec<(u32, Pointer)>,
    pub pattern: MicronuclearPattern,
}

impl Realization {
    pub fn apply(&self, u: &[Pointer]) -> PointerString {
        let map: HashMap<u32, Pointer> = self.renaming.iter().copied().collect();
        u.iter()
            .map(|p| {
                let q = map[&p.id()];
                if p.is_barred() {
                    q.bar()
                } else {
                    q
                }
            })
            .collect()
    }
}

/// Searches for a renaming `h` (a bijection of `dom(u)` onto `{2, …, κ}` with
/// optional bar flips, `h(p̄) = h(p)̄`) such that `h(u)` is realistic.
///
/// The search walks `u` left to right, segmenting it into MDS images and
/// extending the renaming as symbols are matched, which enumerates every
/// renaming that could succeed without materialising all of them.
pub fn realization(u: &LegalString, max_domain: usize) -> Result<Option<Realization>> {
    let dom = u.domain();
    if dom.len() > max_domain {
        return Err(Error::Capacity {
            size: dom.len(),
            limit: max_domain,
        });
    }
    if u.is_empty() {
        return Ok(None);
    }
    let kappa = dom.len() as u32 + 1;
    let mut search = RenamingSearch {
        u,
        kappa,
        forward: HashMap::new(),
        taken: vec![false; kappa as usize + 1],
        used: vec![false; kappa as usize + 1],
        chosen: Vec::new(),
    };
    if !search.run(0) {
        return Ok(None);
    }
    let mut renaming: Vec<(u32, Pointer)> = search.forward.into_iter().collect();
    renaming.sort();
    Ok(Some(Realization {
        renaming,
        pattern: MicronuclearPattern { mds: search.chosen },
    }))
}

pub fn is_realizable(u: &LegalString, max_domain: usize) -> Result<bool> {
    Ok(realization(u, max_domain)?.is_some())
}

struct RenamingSearch<'a> {
    u: &'a [Pointer],
    kappa: u32,
    /// identity of `u` -> image of its unbarred pointer
    forward: HashMap<u32, Pointer>,
    /// target identities already assigned
    taken: Vec<bool>,
    used: Vec<bool>,
    chosen: Vec<Mds>,
}

impl RenamingSearch<'_> {
    fn run(&mut self, pos: usize) -> bool {
        if pos == self.u.len() {
            return self.chosen.len() == self.kappa as usize;
        }
        for index in 1..=self.kappa {
            if self.used[index as usize] {
                continue;
            }
            for inverted in [false, true] {
                let m = Mds { index, inverted };
                let img = oriented_image(m, self.kappa);
                if pos + img.len() > self.u.len() {
                    continue;
                }
                let mut added = Vec::new();
                if self.bind(pos, &img, &mut added) {
                    self.used[index as usize] = true;
                    self.chosen.push(m);
                    if self.run(pos + img.len()) {
                        return true;
                    }
                    self.chosen.pop();
                    self.used[index as usize] = false;
                }
                for id in added {
                    let q = self.forward.remove(&id).unwrap();
                    self.taken[q.id() as usize] = false;
                }
            }
        }
        false
    }

    /// Extends the renaming so that `u[pos..]` starts with `img`. Newly bound
    /// identities are recorded in `added` so the caller can undo them.
    fn bind(&mut self, pos: usize, img: &[Pointer], added: &mut Vec<u32>) -> bool {
        for (k, &target) in img.iter().enumerate() {
            let src = self.u[pos + k];
            let want = if src.is_barred() { target.bar() } else { target };
            match self.forward.get(&src.id()) {
                Some(&have) => {
                    if have != want {
                        return false;
                    }
                }
                None => {
                    if self.taken[want.id() as usize] {
                        return false;
                    }
                    self.taken[want.id() as usize] = true;
                    self.forward.insert(src.id(), want);
                    added.push(src.id());
                }
            }
        }
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn l(v: &[i64]) -> LegalString {
        LegalString::from_signed(v)
    }

    #[test]
    fn encode_examples() {
        let actin = MicronuclearPattern::parse("M3 M4 M6 M5 M7 M9 ~M2 M1 M8").unwrap();
        assert_eq!(actin.kappa(), 9);
        assert_eq!(actin.encode(), l(&[3, 4, 4, 5, 6, 7, 5, 6, 7, 8, 9, -3, -2, 2, 8, 9]));
        let p = MicronuclearPattern::parse("M1 M2 ~M3 M4 M5").unwrap();
        assert_eq!(p.encode(), l(&[2, 2, 3, -4, -3, 4, 5, 5]));
        let p = MicronuclearPattern::parse("M1 M2 M3").unwrap();
        assert_eq!(p.encode(), l(&[2, 2, 3, 3]));
    }

    #[test]
    fn pattern_validation() {
        assert!(MicronuclearPattern::parse("M1 M3").is_err());
        assert!(MicronuclearPattern::parse("M1 M1").is_err());
        assert!(MicronuclearPattern::parse("M1").is_err());
        assert!(MicronuclearPattern::parse("M1 X2").is_err());
        assert!(MicronuclearPattern::parse("M0 M1").is_err());
        let p = MicronuclearPattern::parse("M3 ~M1 M2").unwrap();
        assert_eq!(p.to_string(), "M3 ~M1 M2");
    }

    #[test]
    fn realistic_examples() {
        assert!(!is_realistic(&l(&[2, 2, 4, 4])));
        assert!(!is_realistic(&l(&[3, 3, 2, 2])));
        assert!(!is_realistic(&LegalString::empty()));
        let actin = l(&[3, 4, 4, 5, 6, 7, 5, 6, 7, 8, 9, -3, -2, 2, 8, 9]);
        let w = realistic_witness(&actin).unwrap();
        assert_eq!(w.to_string(), "M3 M4 M6 M5 M7 M9 ~M2 M1 M8");
        let w = realistic_witness(&l(&[2, 2, 3, -4, -3, 4, 5, 5])).unwrap();
        assert_eq!(w.to_string(), "M1 M2 ~M3 M4 M5");
        // κ = 2: M1 and M2 both encode to `2`.
        assert!(is_realistic(&l(&[2, 2])));
        assert!(is_realistic(&l(&[-2, 2])));
        assert!(is_realistic(&l(&[3, -2, 2, 3])));
    }

    #[test]
    fn realizable_examples() {
        assert!(!is_realizable(&l(&[2, 2, 3, -3, 5, 5]), 8).unwrap());
        assert!(is_realizable(&l(&[2, 2, 3, 3]), 8).unwrap());
        assert!(!is_realizable(&l(&[-2, -2, -3, 3, 4, 4]), 8).unwrap());
        assert!(!is_realizable(&l(&[2, 2, 3, -3, 4, 4]), 8).unwrap());
        // 3322 renames to 2233.
        let r = realization(&l(&[3, 3, 2, 2]), 8).unwrap().unwrap();
        assert!(is_realistic(&LegalString::new(r.apply(&l(&[3, 3, 2, 2]))).unwrap()));
    }

    #[test]
    fn realizable_capacity() {
        let u = l(&[2, 2, 3, 3, 4, 4]);
        assert_eq!(
            is_realizable(&u, 2),
            Err(Error::Capacity { size: 3, limit: 2 })
        );
    }
}
