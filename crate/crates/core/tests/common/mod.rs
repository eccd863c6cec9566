#![allow(dead_code)]

use std::collections::BTreeMap;

use hurwitz_cells::{enumerate_partitions, BranchTuple, ComponentSignature, Partition, Perm};
use proptest::prelude::*;
use proptest::sample::select;

pub fn perm_of(d: usize) -> impl Strategy<Value = Perm> {
    Just((1..=d).collect::<Vec<usize>>()).prop_shuffle().prop_map(|images| Perm::from_images(&images).unwrap())
}

pub fn perm(max_d: usize) -> impl Strategy<Value = Perm> {
    (1..=max_d).prop_flat_map(perm_of)
}

/// Signature of degree `d`: each cycle of `pi` gets a block label (cycles
/// sharing a label form one block) and each block a genus `≤ max_genus`.
pub fn signature_of(d: usize, max_genus: u32) -> impl Strategy<Value = ComponentSignature> {
    (perm_of(d), prop::collection::vec(0..d, d), prop::collection::vec(0..=max_genus, d)).prop_map(
        |(pi, labels, genus)| {
            let mut blocks: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
            for cycle in pi.cycles() {
                blocks.entry(labels[cycle[0] - 1]).or_default().extend(cycle);
            }
            let pairs = blocks
                .into_iter()
                .map(|(label, block)| {
                    let g = if block.len() > 1 { genus[label] } else { 0 };
                    (block, g)
                })
                .collect();
            ComponentSignature::from_pairs(pi, pairs).unwrap()
        },
    )
}

pub fn signature(max_d: usize, max_genus: u32) -> impl Strategy<Value = ComponentSignature> {
    (1..=max_d).prop_flat_map(move |d| signature_of(d, max_genus))
}

pub fn connected_of(d: usize, max_genus: u32) -> impl Strategy<Value = ComponentSignature> {
    (perm_of(d), 0..=max_genus).prop_map(move |(pi, g)| {
        let g = if d > 1 { g } else { 0 };
        ComponentSignature::from_pairs(pi, vec![((1..=d).collect(), g)]).unwrap()
    })
}

pub fn branch_tuple(max_d: usize, max_len: usize) -> impl Strategy<Value = BranchTuple> {
    (2..=max_d).prop_flat_map(move |d| {
        prop::collection::vec(perm_of(d).prop_filter("non-identity", |p| !p.is_identity()), 0..=max_len)
            .prop_map(move |branches| BranchTuple::new(d, branches).unwrap())
    })
}

pub fn partition_of(d: usize) -> impl Strategy<Value = Partition> {
    select(enumerate_partitions(d))
}

/// `cases` runs, no regression files written next to the sources.
pub fn config(cases: u32) -> ProptestConfig {
    ProptestConfig { cases, failure_persistence: None, ..ProptestConfig::default() }
}
