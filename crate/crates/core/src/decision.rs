//! Decision procedures built on reduction graphs.
//!
//! With `D = dom(v)`, a legal string `u` is reducible to `v` using rules in
//! `S` exactly when `red(u, D) = v` and `rem_D(u)` is successful in `S`. The
//! second condition has a direct characterization for every subset `S` of
//! the three rules, so none of these functions search over reductions; the
//! exhaustive search in [`crate::rules`] is kept as a reference for tests.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::error::{Error, Result};
use crate::graph::ReductionGraph;
use crate::legal::{shortest_legal_factor, LegalString};
use crate::pointer::{PointerIdSet, PointerString};
use crate::rules::{find_reduction, Reduction, RuleSet, SearchLimits};

/// `red(u, D)`: the label of the alternating walk from `s` to `t` in
/// `R_{u,D}`. Linear in `|u|`.
pub fn reduct_of(u: &LegalString, removed: &PointerIdSet) -> Result<PointerString> {
    ReductionGraph::build(u, removed)?.reduct()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum VerdictReason {
    Ok,
    DomainNotSubset,
    ReductMismatch,
    RemNotSuccessful,
}

impl VerdictReason {
    pub fn as_str(&self) -> &'static str {
        match self {
            VerdictReason::Ok => "ok",
            VerdictReason::DomainNotSubset => "domain-not-subset",
            VerdictReason::ReductMismatch => "reduct-mismatch",
            VerdictReason::RemNotSuccessful => "rem-not-successful-in-S",
        }
    }
}

impl fmt::Display for VerdictReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReducibilityVerdict {
    pub reducible: bool,
    pub reason: VerdictReason,
    /// A reduction mapping `u` to `v`, only filled in on request and when
    /// the domain of `u` is small enough to search.
    pub witness: Option<Reduction>,
}

impl ReducibilityVerdict {
    fn no(reason: VerdictReason) -> Self {
        ReducibilityVerdict {
            reducible: false,
            reason,
            witness: None,
        }
    }
}

/// Decides whether some reduction using only rules in `rules` maps `u` to `v`.
pub fn is_reducible(u: &LegalString, v: &LegalString, rules: RuleSet) -> ReducibilityVerdict {
    let d = v.domain();
    if !d.is_subset(&u.domain()) {
        return ReducibilityVerdict::no(VerdictReason::DomainNotSubset);
    }
    let red = reduct_of(u, &d).expect("dom(v) is contained in dom(u)");
    if red != *v.as_pointer_string() {
        return ReducibilityVerdict::no(VerdictReason::ReductMismatch);
    }
    let rest = u.remove_pointers(&d);
    if !successful_in(&rest, rules) {
        return ReducibilityVerdict::no(VerdictReason::RemNotSuccessful);
    }
    ReducibilityVerdict {
        reducible: true,
        reason: VerdictReason::Ok,
        witness: None,
    }
}

/// As [`is_reducible`], and when the answer is positive and `|dom(u)|` is
/// within `limits`, also searches for a witnessing reduction. Oversized
/// inputs still get a verdict, just without a witness.
pub fn is_reducible_with_witness(
    u: &LegalString,
    v: &LegalString,
    rules: RuleSet,
    limits: &SearchLimits,
) -> ReducibilityVerdict {
    let mut verdict = is_reducible(u, v, rules);
    if verdict.reducible {
        verdict.witness = match find_reduction(u, v, rules, limits) {
            Ok(found) => {
                debug_assert!(found.is_some(), "characterization and search disagree");
                found
            }
            Err(_) => None,
        };
    }
    verdict
}

/// Whether some reduction `φ` of `u` has `dom(φ(u)) = D`, i.e. stops with
/// exactly the identities of `D` left.
pub fn exists_reduction_to_domain(u: &LegalString, removed: &PointerIdSet) -> Result<bool> {
    let red = reduct_of(u, removed)?;
    Ok(crate::legal::is_legal(&red) && red.domain() == *removed)
}

/// The number of cyclic components of `R_{u,D}`, which is also the number
/// of `snr` steps in every reduction of `u` that stops at domain `D`.
pub fn snr_count(u: &LegalString, removed: &PointerIdSet) -> Result<usize> {
    Ok(ReductionGraph::build(u, removed)?.cyclic_count())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sign {
    Positive,
    Negative,
}

/// Identities of `u` with their signs, joined when their pointer intervals
/// interleave.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct OverlapGraph {
    pub signs: BTreeMap<u32, Sign>,
    /// Pairs `(p, q)` with `p < q`.
    pub edges: BTreeSet<(u32, u32)>,
}

impl OverlapGraph {
    pub fn vertices(&self) -> impl Iterator<Item = u32> + '_ {
        self.signs.keys().copied()
    }

    pub fn neighbours(&self, id: u32) -> impl Iterator<Item = u32> + '_ {
        self.edges.iter().filter_map(move |&(a, b)| {
            if a == id {
                Some(b)
            } else if b == id {
                Some(a)
            } else {
                None
            }
        })
    }

    /// Connected components as sorted identity lists, ordered by their least
    /// identity.
    pub fn components(&self) -> Vec<Vec<u32>> {
        let ids: Vec<u32> = self.vertices().collect();
        let index: BTreeMap<u32, usize> = ids.iter().enumerate().map(|(i, &id)| (id, i)).collect();
        let mut uf = crate::union_find::UnionFind::new(ids.len());
        for (a, b) in &self.edges {
            uf.union(index[a], index[b]);
        }
        let mut groups: BTreeMap<usize, Vec<u32>> = BTreeMap::new();
        for (i, &id) in ids.iter().enumerate() {
            groups.entry(uf.find(i)).or_default().push(id);
        }
        let mut out: Vec<Vec<u32>> = groups.into_values().collect();
        out.sort();
        out
    }
}

pub fn overlap_graph(u: &LegalString) -> OverlapGraph {
    // first and second occurrence of every identity, plus its sign
    let mut first: BTreeMap<u32, (usize, Option<usize>, bool)> = BTreeMap::new();
    for (i, p) in u.iter().enumerate() {
        first
            .entry(p.id())
            .and_modify(|e| {
                e.1 = Some(i);
                e.2 = e.2 != p.is_barred();
            })
            .or_insert((i, None, p.is_barred()));
    }
    let spans: Vec<(u32, usize, usize)> = first
        .iter()
        .map(|(&id, &(a, b, _))| (id, a, b.expect("legal string has two occurrences")))
        .collect();
    let signs = first
        .iter()
        .map(|(&id, &(_, _, mixed))| (id, if mixed { Sign::Positive } else { Sign::Negative }))
        .collect();
    let mut edges = BTreeSet::new();
    for (i, &(p, a1, b1)) in spans.iter().enumerate() {
        for &(q, a2, b2) in &spans[i + 1..] {
            if (a1 < a2 && a2 < b1 && b1 < b2) || (a2 < a1 && a1 < b2 && b2 < b1) {
                edges.insert((p.min(q), p.max(q)));
            }
        }
    }
    OverlapGraph { signs, edges }
}

fn has_cycles(u: &LegalString) -> bool {
    ReductionGraph::build(u, &PointerIdSet::new())
        .expect("empty removal set is always valid")
        .cyclic_count()
        > 0
}

fn has_positive(u: &[crate::pointer::Pointer]) -> bool {
    let mut seen: BTreeMap<u32, bool> = BTreeMap::new();
    u.iter().any(|p| match seen.insert(p.id(), p.is_barred()) {
        Some(barred) => barred != p.is_barred(),
        None => false,
    })
}

/// Whether `u` has a successful reduction using only rules in `rules`.
pub fn successful_in(u: &LegalString, rules: RuleSet) -> bool {
    if u.is_empty() {
        return true;
    }
    match (rules.snr, rules.spr, rules.sdr) {
        (false, false, false) => false,
        (true, false, false) => u.all_negative() && u.is_nonoverlapping(),
        (false, false, true) => u.all_negative() && !has_cycles(u),
        (true, false, true) => u.all_negative(),
        (false, true, true) => !has_cycles(u),
        (true, true, true) => true,
        (false, true, false) => decompose(u, |piece| has_positive(piece) && !has_cycles(piece)),
        (true, true, false) => decompose(u, |piece| piece.len() == 2 || has_positive(piece)),
    }
}

/// Splits `u` into elementary pieces by repeatedly cutting out a shortest
/// legal factor, and succeeds iff every piece passes `elementary`. Removing
/// a legal factor preserves success in either direction, so the order of
/// the cuts does not matter.
fn decompose(u: &LegalString, elementary: impl Fn(&LegalString) -> bool) -> bool {
    let mut rest = u.clone();
    while let Some((i, j)) = shortest_legal_factor(&rest) {
        let piece = LegalString::new_unchecked(rest[i..=j].iter().copied().collect());
        if !elementary(&piece) {
            return false;
        }
        rest = rest.without_factor(i, j);
    }
    debug_assert!(rest.is_empty());
    true
}

/// Whether `u` reduces to `v` using only `spr` and `sdr`: `R_{u,D}` has no
/// cyclic component and its reduct is `v`, with `D = dom(v)`.
pub fn is_reducible_spr_sdr(u: &LegalString, v: &LegalString) -> Result<bool> {
    let d = v.domain();
    let dom = u.domain();
    if let Some(id) = d.iter().find(|&id| !dom.contains(id)) {
        return Err(Error::NotInDomain(id));
    }
    let g = ReductionGraph::build(u, &d)?;
    Ok(g.cyclic_count() == 0 && g.reduct()? == *v.as_pointer_string())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rules::{is_reducible_oracle, successful_oracle, ReductionRule, RuleKind};
    use crate::testing::arb_legal;
    use proptest::prelude::*;

    fn l(v: &[i64]) -> LegalString {
        LegalString::from_signed(v)
    }

    fn d(ids: &[u32]) -> PointerIdSet {
        ids.iter().copied().collect()
    }

    fn lim() -> SearchLimits {
        SearchLimits::default()
    }

    const SNR_SPR: RuleSet = RuleSet {
        snr: true,
        spr: true,
        sdr: false,
    };
    const SPR_SDR: RuleSet = RuleSet {
        snr: false,
        spr: true,
        sdr: true,
    };

    #[test]
    fn reducts() {
        let u = l(&[5, 2, 6, 8, 8, 3, -2, 5, -4, 3, 7, 7, 4, 6]);
        assert_eq!(reduct_of(&u, &d(&[5, 6, 7, 8])).unwrap(), PointerString::from_signed(&[5, 6]));
        assert_eq!(reduct_of(&u, &u.domain()).unwrap(), *u.as_pointer_string());
        assert!(reduct_of(&u, &PointerIdSet::new()).unwrap().is_empty());
        assert_eq!(reduct_of(&u, &d(&[9])), Err(Error::NotInDomain(9)));
    }

    #[test]
    fn reducibility_examples() {
        let u = l(&[3, 2, 4, 5, -4, 5, -3, 6, 6, -2]);
        let v = l(&[-5, 4, -5, -4, 6, 6]);
        for s in RuleSet::all_subsets() {
            assert!(!is_reducible(&u, &v, s).reducible);
        }
        assert_eq!(is_reducible(&u, &v, RuleSet::ALL).reason, VerdictReason::ReductMismatch);

        let u = l(&[3, 2, 4, 5, -4, 5, -3, -2]);
        let v = l(&[-5, 4, -5, -4]);
        let verdict = is_reducible(&u, &v, SNR_SPR);
        assert!(verdict.reducible);
        assert_eq!(verdict.reason, VerdictReason::Ok);
        assert!(is_reducible(&u, &u, RuleSet::NONE).reducible);
        assert_eq!(
            is_reducible(&l(&[2, 2]), &l(&[3, 3]), RuleSet::ALL).reason,
            VerdictReason::DomainNotSubset
        );
        // the reduct matches but 2 2 cannot be erased without snr
        assert_eq!(
            is_reducible(&l(&[2, 2, 3, 3]), &l(&[3, 3]), SPR_SDR).reason,
            VerdictReason::RemNotSuccessful
        );
    }

    #[test]
    fn witnesses() {
        let u = l(&[3, 2, 4, 5, -4, 5, -3, -2]);
        let v = l(&[-5, 4, -5, -4]);
        let verdict = is_reducible_with_witness(&u, &v, SNR_SPR, &lim());
        let w = verdict.witness.unwrap();
        assert!(w.uses_only(SNR_SPR));
        assert_eq!(w.apply(&u).unwrap(), v);
        let capped = is_reducible_with_witness(&u, &v, SNR_SPR, &SearchLimits { max_domain: 2 });
        assert!(capped.reducible && capped.witness.is_none());
    }

    #[test]
    fn reduction_to_domain() {
        let u = l(&[5, 2, 6, 8, 8, 3, -2, 5, -4, 3, 7, 7, 4, 6]);
        // red(u, {5,6,7,8}) = 5 6 is not legal, so no reduction uses exactly {2,3,4}
        assert!(!exists_reduction_to_domain(&u, &d(&[5, 6, 7, 8])).unwrap());
        assert!(exists_reduction_to_domain(&u, &u.domain()).unwrap());
        assert!(exists_reduction_to_domain(&u, &PointerIdSet::new()).unwrap());
    }

    #[test]
    fn snr_counts() {
        let none = PointerIdSet::new();
        assert_eq!(snr_count(&l(&[2, 3, -2, -4, 3, 4]), &none).unwrap(), 1);
        assert_eq!(snr_count(&l(&[2, 2, 3, 3]), &none).unwrap(), 2);
        assert_eq!(snr_count(&l(&[3, -2, 2, 3]), &none).unwrap(), 1);
    }

    #[test]
    fn overlap_graphs() {
        let g = overlap_graph(&l(&[2, 3, -2, -3]));
        assert_eq!(g.edges, BTreeSet::from([(2, 3)]));
        assert!(g.signs.values().all(|&s| s == Sign::Positive));
        let g = overlap_graph(&l(&[2, 2, 3, 3]));
        assert!(g.edges.is_empty());
        assert!(g.signs.values().all(|&s| s == Sign::Negative));
        assert_eq!(g.components(), vec![vec![2], vec![3]]);
        assert_eq!(overlap_graph(&LegalString::empty()), OverlapGraph::default());
    }

    #[test]
    fn successful_examples() {
        assert!(!successful_in(&l(&[2, 3, -3, 2, 4, -4]), SPR_SDR));
        assert!(successful_in(&l(&[2, 2, 3, 3]), RuleSet::new(true, false, false)));
        assert!(successful_in(&l(&[3, 2, 4, 5, -4, 5, -3, -2]), SNR_SPR));
        assert!(successful_in(&LegalString::empty(), RuleSet::NONE));
        assert!(!successful_in(&l(&[2, 2]), RuleSet::NONE));
    }

    #[test]
    fn spr_sdr_reducibility() {
        let u = l(&[2, 3, -3, 2, 4, -4]);
        assert!(is_reducible_spr_sdr(&u, &l(&[2, 2])).unwrap());
        assert!(is_reducible_oracle(&u, &l(&[2, 2]), SPR_SDR, &lim()).unwrap());
        assert!(is_reducible_spr_sdr(&u, &u).unwrap());
        assert!(!is_reducible_spr_sdr(&u, &LegalString::empty()).unwrap());
        assert_eq!(is_reducible_spr_sdr(&u, &l(&[7, 7])), Err(Error::NotInDomain(7)));
    }

    /// Candidate overlap-graph form of {snr, spr} success: every component
    /// that is not a lone negative identity contains a positive identity.
    fn snr_spr_by_overlap_graph(u: &LegalString) -> bool {
        let g = overlap_graph(u);
        g.components()
            .iter()
            .all(|c| c.len() == 1 || c.iter().any(|id| g.signs[id] == Sign::Positive))
    }

    fn random_domain(u: &LegalString, mask: u32) -> PointerIdSet {
        u.domain().iter().filter(|id| mask & (1 << (id - 2)) != 0).collect()
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(300))]

        #[test]
        fn successful_matches_oracle(u in arb_legal(5)) {
            for s in RuleSet::all_subsets() {
                prop_assert_eq!(successful_in(&u, s), successful_oracle(&u, s, &lim()).unwrap(), "S = {}", s);
            }
        }

        #[test]
        fn overlap_graph_cross_check(u in arb_legal(5)) {
            prop_assert_eq!(snr_spr_by_overlap_graph(&u), successful_in(&u, SNR_SPR));
        }

        #[test]
        fn reducible_matches_oracle(u in arb_legal(5), mask in 0u32..32, via in prop::collection::vec(any::<prop::sample::Index>(), 0..5)) {
            // targets that are reachable as well as arbitrary reducts
            let dset = random_domain(&u, mask);
            let mut w = u.clone();
            for ix in &via {
                let opts: Vec<ReductionRule> = crate::rules::applicable_rules(&w, RuleSet::ALL)
                    .into_iter()
                    .filter(|r| r.domain().is_disjoint(&dset))
                    .collect();
                if opts.is_empty() { break; }
                w = ix.get(&opts).apply(&w).unwrap();
            }
            let targets = [w, u.remove_pointers(&u.domain().difference(&dset))];
            for v in &targets {
                for s in RuleSet::all_subsets() {
                    prop_assert_eq!(
                        is_reducible(&u, v, s).reducible,
                        is_reducible_oracle(&u, v, s, &lim()).unwrap(),
                        "u = {}, v = {}, S = {}", u, v, s
                    );
                }
            }
        }

        #[test]
        fn more_rules_never_hurt(u in arb_legal(6)) {
            for a in RuleSet::all_subsets() {
                for b in RuleSet::all_subsets().filter(|b| a.is_subset(b)) {
                    prop_assert!(!successful_in(&u, a) || successful_in(&u, b));
                }
            }
        }

        #[test]
        fn snr_count_is_uniform(u in arb_legal(4)) {
            let n = snr_count(&u, &PointerIdSet::new()).unwrap();
            let all = crate::rules::enumerate_successful_reductions(&u, RuleSet::ALL, 200, &lim()).unwrap();
            prop_assert!(!all.is_empty());
            for r in all {
                prop_assert_eq!(r.count(RuleKind::Snr), n);
            }
        }

        #[test]
        fn cyclic_count_per_step(u in arb_legal(6), mask in 0u32..64, ix in any::<prop::sample::Index>()) {
            let dset = random_domain(&u, mask);
            let opts: Vec<ReductionRule> = crate::rules::applicable_rules(&u, RuleSet::ALL)
                .into_iter()
                .filter(|r| r.domain().is_disjoint(&dset))
                .collect();
            prop_assume!(!opts.is_empty());
            let rho = ix.get(&opts);
            let before = snr_count(&u, &dset).unwrap();
            let after = snr_count(&rho.apply(&u).unwrap(), &dset).unwrap();
            let expected = if rho.kind() == RuleKind::Snr { before - 1 } else { before };
            prop_assert_eq!(after, expected);
        }

        #[test]
        fn removal_keeps_shape(u in arb_legal(6), mask in 0u32..64) {
            // R_{u,D} and R_{rem_D(u),∅} differ only in reality-edge labels
            let dset = random_domain(&u, mask);
            let a = ReductionGraph::build(&u, &dset).unwrap().canonical_form().unwrap();
            let b = ReductionGraph::build(&u.remove_pointers(&dset), &PointerIdSet::new())
                .unwrap()
                .canonical_form()
                .unwrap();
            prop_assert_eq!(a.without_edge_labels(), b.without_edge_labels());
        }

        #[test]
        fn legal_reduct_means_lambda_cycles(u in arb_legal(6), mask in 0u32..64) {
            let dset = random_domain(&u, mask);
            if exists_reduction_to_domain(&u, &dset).unwrap() {
                let g = ReductionGraph::build(&u, &dset).unwrap();
                prop_assert!(g.components().cyclic().all(|c| c.lambda_labels));
            }
        }

        #[test]
        fn decomposition_of_concatenations(a in arb_legal(3), b in arb_legal(3), cut in any::<prop::sample::Index>()) {
            // splice b (renamed apart) into a at an arbitrary position
            let shift = 10;
            let b: Vec<_> = b.iter()
                .map(|p| crate::pointer::Pointer::new(p.id() + shift, p.is_barred()).unwrap())
                .collect();
            let at = if a.is_empty() { 0 } else { cut.index(a.len() + 1) };
            let mut joined: Vec<_> = a[..at].to_vec();
            joined.extend_from_slice(&b);
            joined.extend_from_slice(&a[at..]);
            let u = LegalString::new(joined.into_iter().collect()).unwrap();
            for s in [SNR_SPR, RuleSet::new(false, true, false)] {
                prop_assert_eq!(successful_in(&u, s), successful_oracle(&u, s, &lim()).unwrap());
            }
        }
    }
}
