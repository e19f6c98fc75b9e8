//! Exhaustive search over rule applications. This is the brute-force
//! reference the characterizations are checked against, so it only uses the
//! rule definitions themselves.

use std::collections::HashSet;

use super::{applicable_rules, Reduction, RuleSet};
use crate::error::{Error, Result};
use crate::legal::LegalString;
use crate::pattern::DEFAULT_MAX_DOMAIN;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchLimits {
    /// Largest `|dom(u)|` accepted before a capacity error.
    pub max_domain: usize,
}

impl Default for SearchLimits {
    fn default() -> Self {
        SearchLimits {
            max_domain: DEFAULT_MAX_DOMAIN,
        }
    }
}

impl SearchLimits {
    fn check(&self, u: &LegalString) -> Result<()> {
        let size = u.domain().len();
        if size > self.max_domain {
            return Err(Error::Capacity {
                size,
                limit: self.max_domain,
            });
        }
        Ok(())
    }
}

/// All successful `rules`-reductions of `u`, depth first in the order of
/// [`applicable_rules`], stopping after `limit` results.
pub fn enumerate_successful_reductions(
    u: &LegalString,
    rules: RuleSet,
    limit: usize,
    limits: &SearchLimits,
) -> Result<Vec<Reduction>> {
    limits.check(u)?;
    let mut out = Vec::new();
    let mut dead = HashSet::new();
    let mut path = Reduction::default();
    enumerate(u, rules, limit, &mut path, &mut dead, &mut out);
    Ok(out)
}

/// Returns whether some successful reduction was found below `u`.
fn enumerate(
    u: &LegalString,
    rules: RuleSet,
    limit: usize,
    path: &mut Reduction,
    dead: &mut HashSet<LegalString>,
    out: &mut Vec<Reduction>,
) -> bool {
    if out.len() >= limit {
        return true;
    }
    if u.is_empty() {
        out.push(path.clone());
        return true;
    }
    if dead.contains(u) {
        return false;
    }
    let mut found = false;
    for rule in applicable_rules(u, rules) {
        let next = rule.apply(u).expect("listed rule applies");
        path.push(rule);
        found |= enumerate(&next, rules, limit, path, dead, out);
        path.pop();
        if out.len() >= limit {
            return true;
        }
    }
    if !found {
        dead.insert(u.clone());
    }
    found
}

/// Finds some `rules`-reduction mapping `u` exactly to `v`.
pub fn find_reduction(
    u: &LegalString,
    v: &LegalString,
    rules: RuleSet,
    limits: &SearchLimits,
) -> Result<Option<Reduction>> {
    limits.check(u)?;
    let target_dom = v.domain();
    let mut visited = HashSet::new();
    let mut path = Reduction::default();
    let found = reach(u, v, &target_dom, rules, &mut visited, &mut path);
    Ok(found.then_some(path))
}

fn reach(
    u: &LegalString,
    v: &LegalString,
    target_dom: &crate::pointer::PointerIdSet,
    rules: RuleSet,
    visited: &mut HashSet<LegalString>,
    path: &mut Reduction,
) -> bool {
    if u == v {
        return true;
    }
    if u.len() <= v.len() || !visited.insert(u.clone()) {
        return false;
    }
    for rule in applicable_rules(u, rules) {
        // rules only erase identities, so every identity of v must survive
        if !rule.domain().is_disjoint(target_dom) {
            continue;
        }
        let next = rule.apply(u).expect("listed rule applies");
        path.push(rule);
        if reach(&next, v, target_dom, rules, visited, path) {
            return true;
        }
        path.pop();
    }
    false
}

pub fn is_reducible_oracle(
    u: &LegalString,
    v: &LegalString,
    rules: RuleSet,
    limits: &SearchLimits,
) -> Result<bool> {
    Ok(find_reduction(u, v, rules, limits)?.is_some())
}

pub fn successful_oracle(u: &LegalString, rules: RuleSet, limits: &SearchLimits) -> Result<bool> {
    is_reducible_oracle(u, &LegalString::empty(), rules, limits)
}
