//! A string pointer reduction system for gene assembly in ciliates.
//!
//! Pointers are signed identities (`-k` is the inverted pointer `k̄`), legal
//! strings are sequences in which every identity occurs exactly twice, and the
//! three rules `snr`, `spr` and `sdr` rewrite legal strings into shorter ones.
//! The crate provides
//!
//! * parsing, legality checks and the micronuclear pattern encoding,
//! * the rules, reductions and an exhaustive reference search,
//! * reduction graphs with their reducts, components, reduction functions,
//!   isomorphism test and DOT export,
//! * decision procedures for reducibility and successfulness in every subset
//!   of the rules.

pub mod decision;
pub mod error;
pub mod graph;
mod id_table;
pub mod legal;
pub mod pattern;
pub mod pointer;
pub mod rules;
mod union_find;

pub use decision::{
    exists_reduction_to_domain, is_reducible, is_reducible_spr_sdr, is_reducible_with_witness, overlap_graph,
    reduct_of, snr_count, successful_in, OverlapGraph, ReducibilityVerdict, VerdictReason,
};
pub use error::{Error, Result};
pub use graph::{graphs_isomorphic, CanonicalForm, ComponentSummary, ReductionGraph};
pub use legal::{is_legal, LegalString};
pub use pattern::{is_realistic, is_realizable, realistic_witness, realization, MicronuclearPattern};
pub use pointer::{Pointer, PointerIdSet, PointerString};
pub use rules::{
    applicable_rules, enumerate_successful_reductions, find_reduction, is_reducible_oracle, successful_oracle,
    Reduction, ReductionRule, RuleKind, RuleSet, SearchLimits,
};
