//! The three string pointer reduction rules.
//!
//! * `snr:p` rewrites `u1 p p u2` to `u1 u2`;
//! * `spr:p` rewrites `u1 p u2 p̄ u3` to `u1 ū2 u3`;
//! * `sdr:p,q` rewrites `u1 p u2 q u3 p u4 q u5` to `u1 u4 u3 u2 u5`.
//!
//! Rules are indexed by oriented pointers: `snr:2` needs the factor `2 2`
//! and does not apply to `-2 -2`. A [`Reduction`] lists its steps in the
//! order they are applied; the usual composition notation `φ = φn ⋯ φ1` reads
//! the other way round.

mod search;

pub use search::{
    enumerate_successful_reductions, find_reduction, is_reducible_oracle, successful_oracle,
    SearchLimits,
};

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::legal::LegalString;
use crate::pointer::{Pointer, PointerIdSet, PointerString};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RuleKind {
    Snr,
    Spr,
    Sdr,
}

impl RuleKind {
    pub fn name(self) -> &'static str {
        match self {
            RuleKind::Snr => "snr",
            RuleKind::Spr => "spr",
            RuleKind::Sdr => "sdr",
        }
    }
}

/// Variant order gives the canonical ordering: snr before spr before sdr,
/// then by `(⟦p⟧, barred, ⟦q⟧, barred)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ReductionRule {
    Snr(Pointer),
    Spr(Pointer),
    Sdr(Pointer, Pointer),
}

impl ReductionRule {
    pub fn sdr(p: Pointer, q: Pointer) -> Result<Self> {
        if p.id() == q.id() {
            return Err(Error::SdrSameIdentity(p, q));
        }
        Ok(ReductionRule::Sdr(p, q))
    }

    pub fn kind(&self) -> RuleKind {
        match self {
            ReductionRule::Snr(_) => RuleKind::Snr,
            ReductionRule::Spr(_) => RuleKind::Spr,
            ReductionRule::Sdr(..) => RuleKind::Sdr,
        }
    }

    pub fn domain(&self) -> PointerIdSet {
        match *self {
            ReductionRule::Snr(p) | ReductionRule::Spr(p) => PointerIdSet::from([p.id()]),
            ReductionRule::Sdr(p, q) => PointerIdSet::from([p.id(), q.id()]),
        }
    }

    /// Positions of the schema match, if the rule applies.
    fn matches(&self, u: &[Pointer]) -> Option<Match> {
        match *self {
            ReductionRule::Snr(p) => {
                let (i, j) = occurrences(u, p.id())?;
                (j == i + 1 && u[i] == p && u[j] == p).then_some(Match::Snr(i))
            }
            ReductionRule::Spr(p) => {
                let (i, j) = occurrences(u, p.id())?;
                (u[i] == p && u[j] == p.bar()).then_some(Match::Spr(i, j))
            }
            ReductionRule::Sdr(p, q) => {
                if p.id() == q.id() {
                    return None;
                }
                let (i1, j1) = occurrences(u, p.id())?;
                let (i2, j2) = occurrences(u, q.id())?;
                let ok = u[i1] == p && u[j1] == p && u[i2] == q && u[j2] == q;
                (ok && i1 < i2 && i2 < j1 && j1 < j2).then_some(Match::Sdr(i1, i2, j1, j2))
            }
        }
    }

    pub fn is_applicable(&self, u: &LegalString) -> bool {
        self.matches(u).is_some()
    }

    pub fn apply(&self, u: &LegalString) -> Result<LegalString> {
        let m = self.matches(u).ok_or_else(|| Error::NotApplicable {
            rule: *self,
            string: u.as_pointer_string().clone(),
        })?;
        Ok(LegalString::new_unchecked(rewrite(u, m)))
    }
}

enum Match {
    Snr(usize),
    Spr(usize, usize),
    Sdr(usize, usize, usize, usize),
}

fn occurrences(u: &[Pointer], id: u32) -> Option<(usize, usize)> {
    let mut it = u.iter().enumerate().filter(|(_, p)| p.id() == id).map(|(i, _)| i);
    Some((it.next()?, it.next()?))
}

fn rewrite(u: &[Pointer], m: Match) -> PointerString {
    let mut out = PointerString::empty();
    match m {
        Match::Snr(i) => {
            out.extend_from(&u[..i]);
            out.extend_from(&u[i + 2..]);
        }
        Match::Spr(i, j) => {
            out.extend_from(&u[..i]);
            out.extend_inverse(&u[i + 1..j]);
            out.extend_from(&u[j + 1..]);
        }
        Match::Sdr(i1, i2, j1, j2) => {
            // u1 p u2 q u3 p u4 q u5  ->  u1 u4 u3 u2 u5
            out.extend_from(&u[..i1]);
            out.extend_from(&u[j1 + 1..j2]);
            out.extend_from(&u[i2 + 1..j1]);
            out.extend_from(&u[i1 + 1..i2]);
            out.extend_from(&u[j2 + 1..]);
        }
    }
    out
}

impl fmt::Display for ReductionRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ReductionRule::Snr(p) => write!(f, "snr:{p}"),
            ReductionRule::Spr(p) => write!(f, "spr:{p}"),
            ReductionRule::Sdr(p, q) => write!(f, "sdr:{p},{q}"),
        }
    }
}

impl FromStr for ReductionRule {
    type Err = Error;

    /// `snr:2`, `spr:-3`, `sdr:2,-3`.
    fn from_str(text: &str) -> Result<Self> {
        let bad = |reason: &str| Error::InvalidRule {
            text: text.to_string(),
            reason: reason.to_string(),
        };
        let (kind, args) = text.trim().split_once(':').ok_or_else(|| bad("expected `kind:args`"))?;
        let ptrs = args
            .split(',')
            .map(|a| a.trim().parse::<Pointer>())
            .collect::<Result<Vec<_>>>()
            .map_err(|e| bad(&e.to_string()))?;
        match (kind.trim(), ptrs.as_slice()) {
            ("snr", [p]) => Ok(ReductionRule::Snr(*p)),
            ("spr", [p]) => Ok(ReductionRule::Spr(*p)),
            ("sdr", [p, q]) => ReductionRule::sdr(*p, *q).map_err(|e| bad(&e.to_string())),
            ("snr" | "spr", _) => Err(bad("expected exactly one pointer")),
            ("sdr", _) => Err(bad("expected exactly two pointers")),
            _ => Err(bad("unknown rule kind")),
        }
    }
}

/// Rule steps in application order.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Reduction {
    steps: Vec<ReductionRule>,
}

impl Reduction {
    pub fn new(steps: Vec<ReductionRule>) -> Self {
        Reduction { steps }
    }

    /// Builds a reduction from the right-to-left composition notation, where
    /// the rightmost rule is applied first.
    pub fn from_composition(composition: Vec<ReductionRule>) -> Self {
        let mut steps = composition;
        steps.reverse();
        Reduction { steps }
    }

    pub fn steps(&self) -> &[ReductionRule] {
        &self.steps
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn domain(&self) -> PointerIdSet {
        self.steps
            .iter()
            .fold(PointerIdSet::new(), |acc, r| acc.union(&r.domain()))
    }

    pub fn count(&self, kind: RuleKind) -> usize {
        self.steps.iter().filter(|r| r.kind() == kind).count()
    }

    pub fn uses_only(&self, rules: RuleSet) -> bool {
        self.steps.iter().all(|r| rules.allows(r.kind()))
    }

    pub fn is_applicable(&self, u: &LegalString) -> bool {
        self.apply(u).is_ok()
    }

    /// Applies the steps left to right, reporting the first inapplicable one.
    pub fn apply(&self, u: &LegalString) -> Result<LegalString> {
        let mut cur = u.clone();
        for (step, rule) in self.steps.iter().enumerate() {
            cur = rule.apply(&cur).map_err(|_| Error::StepNotApplicable {
                step: step + 1,
                rule: *rule,
                string: cur.as_pointer_string().clone(),
            })?;
        }
        Ok(cur)
    }

    pub fn push(&mut self, rule: ReductionRule) {
        self.steps.push(rule);
    }

    pub fn pop(&mut self) -> Option<ReductionRule> {
        self.steps.pop()
    }
}

impl fmt::Display for Reduction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, r) in self.steps.iter().enumerate() {
            if i > 0 {
                f.write_str("; ")?;
            }
            write!(f, "{r}")?;
        }
        Ok(())
    }
}

impl FromStr for Reduction {
    type Err = Error;

    /// Semicolon-separated rules in application order.
    fn from_str(text: &str) -> Result<Self> {
        let steps = text
            .split(';')
            .map(str::trim)
            .filter(|t| !t.is_empty())
            .map(str::parse)
            .collect::<Result<Vec<_>>>()?;
        Ok(Reduction { steps })
    }
}

/// A subset of `{Snr, Spr, Sdr}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RuleSet {
    pub snr: bool,
    pub spr: bool,
    pub sdr: bool,
}

impl RuleSet {
    pub const NONE: RuleSet = RuleSet {
        snr: false,
        spr: false,
        sdr: false,
    };
    pub const ALL: RuleSet = RuleSet {
        snr: true,
        spr: true,
        sdr: true,
    };

    pub const fn new(snr: bool, spr: bool, sdr: bool) -> Self {
        RuleSet { snr, spr, sdr }
    }

    pub fn allows(&self, kind: RuleKind) -> bool {
        match kind {
            RuleKind::Snr => self.snr,
            RuleKind::Spr => self.spr,
            RuleKind::Sdr => self.sdr,
        }
    }

    pub fn is_subset(&self, other: &RuleSet) -> bool {
        (!self.snr || other.snr) && (!self.spr || other.spr) && (!self.sdr || other.sdr)
    }

    /// All eight subsets, in binary order of `(snr, spr, sdr)`.
    pub fn all_subsets() -> impl Iterator<Item = RuleSet> {
        (0u8..8).map(|b| RuleSet::new(b & 4 != 0, b & 2 != 0, b & 1 != 0))
    }

    /// Parses a comma list such as `snr,spr`; the empty string is the empty set.
    pub fn parse(text: &str) -> Result<Self> {
        let mut set = RuleSet::NONE;
        for tok in text.split(',').map(str::trim).filter(|t| !t.is_empty()) {
            match tok {
                "snr" => set.snr = true,
                "spr" => set.spr = true,
                "sdr" => set.sdr = true,
                "none" => {}
                _ => {
                    return Err(Error::InvalidRule {
                        text: tok.to_string(),
                        reason: "expected one of snr, spr, sdr".into(),
                    })
                }
            }
        }
        Ok(set)
    }
}

impl Default for RuleSet {
    fn default() -> Self {
        RuleSet::ALL
    }
}

impl fmt::Display for RuleSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<&str> = [(self.snr, "snr"), (self.spr, "spr"), (self.sdr, "sdr")]
            .iter()
            .filter(|(on, _)| *on)
            .map(|(_, n)| *n)
            .collect();
        if names.is_empty() {
            f.write_str("none")
        } else {
            f.write_str(&names.join(","))
        }
    }
}

/// Every rule from `rules` applicable to `u`, in canonical order.
pub fn applicable_rules(u: &LegalString, rules: RuleSet) -> Vec<ReductionRule> {
    let mut first: std::collections::HashMap<u32, usize> = Default::default();
    let mut pairs: Vec<(usize, usize)> = Vec::with_capacity(u.len() / 2);
    for (j, p) in u.iter().enumerate() {
        if let Some(i) = first.remove(&p.id()) {
            pairs.push((i, j));
        } else {
            first.insert(p.id(), j);
        }
    }
    let mut out = Vec::new();
    for &(i, j) in &pairs {
        let (p, q) = (u[i], u[j]);
        if rules.snr && p == q && j == i + 1 {
            out.push(ReductionRule::Snr(p));
        }
        if rules.spr && p == q.bar() {
            out.push(ReductionRule::Spr(p));
        }
    }
    if rules.sdr {
        for &(i1, j1) in &pairs {
            if u[i1] != u[j1] {
                continue;
            }
            for &(i2, j2) in &pairs {
                if u[i2] == u[j2] && i1 < i2 && i2 < j1 && j1 < j2 {
                    out.push(ReductionRule::Sdr(u[i1], u[i2]));
                }
            }
        }
    }
    out.sort();
    out
}
