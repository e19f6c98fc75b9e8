//! Generators shared by the integration tests.
#![allow(dead_code)]

use rand::seq::SliceRandom;
use rand::Rng;
use spr_core::{
    applicable_rules, LegalString, Pointer, PointerIdSet, PointerString, ReductionRule, RuleSet,
};

/// A uniformly shuffled legal string over identities `2..2+k` with random
/// orientations.
pub fn random_legal(rng: &mut impl Rng, k: u32) -> LegalString {
    let mut ids: Vec<u32> = (2..2 + k).flat_map(|i| [i, i]).collect();
    ids.shuffle(rng);
    let s: PointerString = ids
        .into_iter()
        .map(|id| Pointer::new(id, rng.gen()).expect("identity at least 2"))
        .collect();
    LegalString::new(s).expect("every identity placed twice")
}

/// Each identity of `u` independently with probability one half.
pub fn random_subset(rng: &mut impl Rng, u: &LegalString) -> PointerIdSet {
    u.domain().iter().filter(|_| rng.gen_bool(0.5)).collect()
}

/// A random applicable rule whose identities avoid `avoid`.
pub fn random_rule(rng: &mut impl Rng, u: &LegalString, avoid: &PointerIdSet) -> Option<ReductionRule> {
    let options: Vec<ReductionRule> = applicable_rules(u, RuleSet::ALL)
        .into_iter()
        .filter(|r| r.domain().is_disjoint(avoid))
        .collect();
    options.choose(rng).copied()
}

/// Every legal string whose domain is exactly `ids`, over all orderings and
/// orientations.
pub fn all_legal_over(ids: &[u32]) -> Vec<LegalString> {
    let mut slots: Vec<u32> = ids.iter().flat_map(|&i| [i, i]).collect();
    slots.sort_unstable();
    let mut orders = Vec::new();
    permutations(&mut slots.clone(), &mut Vec::new(), &mut vec![false; slots.len()], &mut orders);
    let n = slots.len();
    let mut out = Vec::with_capacity(orders.len() << n);
    for order in &orders {
        for bars in 0u32..(1 << n) {
            let s: PointerString = order
                .iter()
                .enumerate()
                .map(|(i, &id)| Pointer::new(id, bars & (1 << i) != 0).unwrap())
                .collect();
            out.push(LegalString::new(s).unwrap());
        }
    }
    out
}

/// Distinct permutations of a sorted multiset.
fn permutations(items: &mut Vec<u32>, cur: &mut Vec<u32>, used: &mut Vec<bool>, out: &mut Vec<Vec<u32>>) {
    if cur.len() == items.len() {
        out.push(cur.clone());
        return;
    }
    for i in 0..items.len() {
        if used[i] || (i > 0 && items[i] == items[i - 1] && !used[i - 1]) {
            continue;
        }
        used[i] = true;
        cur.push(items[i]);
        permutations(items, cur, used, out);
        cur.pop();
        used[i] = false;
    }
}

/// Every legal string whose domain is a subset of `ids`.
pub fn all_legal_within(ids: &[u32]) -> Vec<LegalString> {
    let mut out = Vec::new();
    for mask in 0u32..(1 << ids.len()) {
        let sub: Vec<u32> = ids
            .iter()
            .enumerate()
            .filter(|(i, _)| mask & (1 << i) != 0)
            .map(|(_, &id)| id)
            .collect();
        out.extend(all_legal_over(&sub));
    }
    out
}
