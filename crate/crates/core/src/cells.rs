//! The orbicell structure of the local branched-cover complex of degree `d`.
//!
//! One cell `e_λ` per partition `λ ⊢ d`, of real dimension `2 N(λ)`, with
//! isotropy group `∏_k μ_k^{a_k} ⋊ S_{a_k}`. Every cell is even-dimensional,
//! so the rational cellular differential vanishes and the Betti numbers are
//! cell counts. No boundary maps are stored.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::partition::{enumerate_partitions, partition_count, Partition};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CellDescriptor {
    pub lam: Partition,
    pub dim: usize,
    pub isotropy_order: u128,
    pub orientable: bool,
}

impl CellDescriptor {
    pub fn new(lam: Partition) -> Self {
        CellDescriptor {
            dim: 2 * lam.absolute_length(),
            isotropy_order: lam.centralizer_order(),
            orientable: true,
            lam,
        }
    }
}

/// One cell per partition of `d`, in reverse lexicographic order.
pub fn cell_list(d: usize) -> Vec<CellDescriptor> {
    enumerate_partitions(d).into_iter().map(CellDescriptor::new).collect()
}

/// Rational Betti numbers keyed by (even) degree `2m`, for `0 ≤ m ≤ d - 1`.
/// Odd degrees vanish and are not listed.
pub fn betti(d: usize) -> BTreeMap<usize, u64> {
    let mut out: BTreeMap<usize, u64> = (0..d.max(1)).map(|m| (2 * m, 0)).collect();
    for lam in enumerate_partitions(d) {
        *out.entry(2 * lam.absolute_length()).or_default() += 1;
    }
    out
}

/// `p(m)`: the value `betti(d)[2m]` takes once `2m ≤ d`.
pub fn stable_betti(m: usize) -> u128 {
    partition_count(m)
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct StabilityReport {
    pub d: usize,
    /// Cells of degree `d + 1` not hit by `λ ↦ λ + 1`.
    pub new_cells: Vec<Partition>,
    /// Minimum `N` over the new cells.
    pub min_new_length: usize,
    /// `⌈(d + 1) / 2⌉`.
    pub predicted_min_length: usize,
    /// Betti numbers agree in every degree `k < 2 ⌈(d + 1) / 2⌉`.
    pub stable_below: usize,
    pub violations: Vec<String>,
}

impl StabilityReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks the stabilization `λ ↦ λ + 1` from degree `d` to `d + 1`: it is a
/// dimension-preserving injection on cells, its complement is the set of
/// partitions without a part equal to 1, the smallest new cell has
/// `N = ⌈(d+1)/2⌉`, and Betti numbers agree below twice that.
pub fn stability_check(d: usize) -> StabilityReport {
    let mut violations = Vec::new();
    let source = enumerate_partitions(d);
    let target = enumerate_partitions(d + 1);

    let mut images: Vec<Partition> = Vec::with_capacity(source.len());
    for lam in &source {
        let image = lam.add_one();
        if image.absolute_length() != lam.absolute_length() {
            violations.push(format!("{lam} -> {image} changes dimension"));
        }
        images.push(image);
    }
    let mut sorted = images.clone();
    sorted.sort();
    sorted.dedup();
    if sorted.len() != images.len() {
        violations.push("stabilization is not injective on cells".into());
    }

    let new_cells: Vec<Partition> = target.iter().filter(|mu| sorted.binary_search(mu).is_err()).cloned().collect();
    for mu in &new_cells {
        if mu.fixed_points() != 0 {
            violations.push(format!("new cell {mu} has a part equal to 1"));
        }
    }
    for mu in &target {
        if mu.fixed_points() == 0 && !new_cells.contains(mu) {
            violations.push(format!("{mu} has no part 1 but is in the image"));
        }
    }

    let predicted = (d + 2) / 2;
    let min_new_length = new_cells.iter().map(Partition::absolute_length).min().unwrap_or(usize::MAX);
    if min_new_length != predicted {
        violations.push(format!("minimal new N is {min_new_length}, expected {predicted}"));
    }

    let stable_below = 2 * predicted;
    let (lower, upper) = (betti(d), betti(d + 1));
    for k in (0..stable_below).step_by(2) {
        let a = lower.get(&k).copied().unwrap_or(0);
        let b = upper.get(&k).copied().unwrap_or(0);
        if a != b {
            violations.push(format!("b_{k} differs: {a} in degree {d}, {b} in degree {}", d + 1));
        }
    }

    StabilityReport { d, new_cells, min_new_length, predicted_min_length: predicted, stable_below, violations }
}
