//! Integer partitions: conjugacy classes of `S_d` and the cells of the local
//! branched-cover complex are both indexed by them.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// A partition of `d`: weakly decreasing positive parts summing to `d`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    /// Validates that `parts` is weakly decreasing and positive.
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::InvalidPartition(format!("zero part in {parts:?}")));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidPartition(format!("parts not weakly decreasing: {parts:?}")));
        }
        Ok(Partition { parts })
    }

    /// Sorts the parts and drops zeros.
    pub fn from_unsorted(mut parts: Vec<usize>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition { parts }
    }

    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    /// `(1^d)`, the class of the identity.
    pub fn ones(d: usize) -> Self {
        Partition { parts: vec![1; d] }
    }

    /// The hook `(k, 1^{d-k})`.
    pub fn hook(k: usize, d: usize) -> Result<Self> {
        if k == 0 || k > d {
            return Err(Error::GeneratorOutOfRange { k, d });
        }
        let mut parts = vec![k];
        parts.extend(std::iter::repeat_n(1, d - k));
        Ok(Partition { parts })
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn degree(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn num_parts(&self) -> usize {
        self.parts.len()
    }

    /// Number of parts equal to `k`.
    pub fn multiplicity(&self, k: usize) -> usize {
        self.parts.iter().filter(|&&p| p == k).count()
    }

    /// Number of parts equal to 1 (fixed points of a representative).
    pub fn fixed_points(&self) -> usize {
        self.multiplicity(1)
    }

    /// Sum of the parts that are at least 2: the support size of a representative.
    pub fn support(&self) -> usize {
        self.parts.iter().filter(|&&p| p >= 2).sum()
    }

    /// `N(λ) = d - #parts`.
    pub fn absolute_length(&self) -> usize {
        self.degree() - self.num_parts()
    }

    /// `(k, a_k)` pairs for each distinct part `k`, largest first.
    pub fn multiplicities(&self) -> Vec<(usize, usize)> {
        let mut out: Vec<(usize, usize)> = Vec::new();
        for &p in &self.parts {
            match out.last_mut() {
                Some((k, a)) if *k == p => *a += 1,
                _ => out.push((p, 1)),
            }
        }
        out
    }

    /// `z_λ = ∏ k^{a_k} a_k!`, the centralizer order of a representative and
    /// the isotropy order of the cell `e_λ`.
    pub fn centralizer_order(&self) -> u128 {
        self.multiplicities().into_iter().map(|(k, a)| (k as u128).pow(a as u32) * factorial(a)).product()
    }

    /// `d! / z_λ`.
    pub fn class_size(&self) -> u128 {
        factorial(self.degree()) / self.centralizer_order()
    }

    /// `λ + 1`: append a part equal to 1.
    pub fn add_one(&self) -> Partition {
        let mut parts = self.parts.clone();
        parts.push(1);
        Partition { parts }
    }

    /// Disjoint union in ambient degree `d`: the cycle type of a product of
    /// representatives with disjoint supports, when such representatives exist.
    pub fn disjoint_union(&self, other: &Partition, d: usize) -> Result<Partition> {
        if self.degree() != d {
            return Err(Error::DegreeMismatch { left: self.degree(), right: d });
        }
        if other.degree() != d {
            return Err(Error::DegreeMismatch { left: other.degree(), right: d });
        }
        let s = self.support() + other.support();
        if s > d {
            return Err(Error::NotRepresentable { left: self.to_string(), right: other.to_string(), d });
        }
        let mut parts: Vec<usize> = self.parts.iter().chain(other.parts.iter()).copied().filter(|&p| p >= 2).collect();
        parts.extend(std::iter::repeat_n(1, d - s));
        Ok(Partition::from_unsorted(parts))
    }

    /// One hook `(λ_i, 1^{d-λ_i})` per part `λ_i ≥ 2`.
    pub fn hook_decomposition(&self) -> Vec<Partition> {
        let d = self.degree();
        self.parts
            .iter()
            .filter(|&&p| p >= 2)
            .map(|&p| Partition::hook(p, d).expect("part bounded by degree"))
            .collect()
    }

    /// At most one part exceeds 1.
    pub fn is_hook(&self) -> bool {
        self.parts.iter().skip(1).all(|&p| p == 1)
    }

    /// True iff `self` is finer than `coarser`: the parts of `self` can be
    /// grouped so that the group sums are exactly the parts of `coarser`.
    pub fn refines(&self, coarser: &Partition) -> Result<bool> {
        if self.degree() != coarser.degree() {
            return Err(Error::DegreeMismatch { left: self.degree(), right: coarser.degree() });
        }
        let mut bins = coarser.parts.clone();
        Ok(pack(&self.parts, &mut bins))
    }
}

// Places the (decreasing) `items` into `bins` of remaining capacity so every
// bin is exactly filled. Total sizes are equal, so placing all items suffices.
fn pack(items: &[usize], bins: &mut [usize]) -> bool {
    let Some((&first, rest)) = items.split_first() else {
        return true;
    };
    for i in 0..bins.len() {
        if bins[i] < first || bins[..i].contains(&bins[i]) {
            continue;
        }
        bins[i] -= first;
        let ok = pack(rest, bins);
        bins[i] += first;
        if ok {
            return true;
        }
    }
    false
}

pub(crate) fn factorial(n: usize) -> u128 {
    (1..=n as u128).product()
}

/// All partitions of `d` in reverse lexicographic order, starting with `(d)`
/// and ending with `(1^d)`. For `d = 0` this is the single empty partition.
pub fn enumerate_partitions(d: usize) -> Vec<Partition> {
    let mut out = Vec::new();
    let mut current = Vec::new();
    fill(d, d, &mut current, &mut out);
    out
}

fn fill(remaining: usize, max_part: usize, current: &mut Vec<usize>, out: &mut Vec<Partition>) {
    if remaining == 0 {
        out.push(Partition { parts: current.clone() });
        return;
    }
    for part in (1..=remaining.min(max_part)).rev() {
        current.push(part);
        fill(remaining - part, part, current, out);
        current.pop();
    }
}

/// `p(n)` by Euler's pentagonal-number recurrence; does not enumerate.
pub fn partition_count(n: usize) -> u128 {
    let mut p = vec![0i128; n + 1];
    p[0] = 1;
    for m in 1..=n {
        let mut total = 0i128;
        for k in 1.. {
            let g1 = k * (3 * k - 1) / 2;
            if g1 > m {
                break;
            }
            let sign = if k % 2 == 1 { 1 } else { -1 };
            total += sign * p[m - g1];
            let g2 = k * (3 * k + 1) / 2;
            if g2 <= m {
                total += sign * p[m - g2];
            }
        }
        p[m] = total;
    }
    p[n] as u128
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        Ok(())
    }
}

impl FromStr for Partition {
    type Err = Error;

    /// Comma-separated weakly decreasing parts, e.g. `"4,1,1"`; `""` is empty.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(Partition::empty());
        }
        let parts = s
            .split(',')
            .map(|t| t.trim().parse::<usize>().map_err(|e| Error::Parse(format!("partition part {t:?}: {e}"))))
            .collect::<Result<Vec<_>>>()?;
        Partition::new(parts)
    }
}

impl Serialize for Partition {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Partition {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    // p(n, k): partitions of n with parts at most k. Independent of both the
    // enumerator and the pentagonal recurrence.
    fn bounded_count(n: usize, k: usize) -> u128 {
        let mut table = vec![vec![0u128; k + 1]; n + 1];
        table[0].fill(1);
        for m in 1..=n {
            for j in 1..=k {
                table[m][j] = table[m][j - 1] + if j <= m { table[m - j][j] } else { 0 };
            }
        }
        table[n][k]
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(enumerate_partitions(0), vec![Partition::empty()]);
        assert_eq!(enumerate_partitions(4).len(), 5);
        assert_eq!(enumerate_partitions(10).len(), 42);
        for n in 0..=20 {
            assert_eq!(enumerate_partitions(n).len() as u128, bounded_count(n, n));
            assert_eq!(partition_count(n), bounded_count(n, n));
        }
        assert_eq!(partition_count(100), 190_569_292);
    }

    #[test]
    fn enumeration_order_is_reverse_lex() {
        let names: Vec<String> = enumerate_partitions(4).iter().map(|x| x.to_string()).collect();
        assert_eq!(names, ["4", "3,1", "2,2", "2,1,1", "1,1,1,1"]);
        for d in 1..=9 {
            let all = enumerate_partitions(d);
            assert!(all.windows(2).all(|w| w[0] > w[1]));
        }
    }

    #[test]
    fn parse_and_display() {
        assert_eq!(p("4,1,1").parts(), &[4, 1, 1]);
        assert_eq!(p("").degree(), 0);
        assert_eq!(Partition::empty().to_string(), "");
        assert!("1,2".parse::<Partition>().is_err());
        assert!("2,0".parse::<Partition>().is_err());
        assert!("a".parse::<Partition>().is_err());
    }

    #[test]
    fn absolute_length_examples() {
        assert_eq!(Partition::ones(6).absolute_length(), 0);
        assert_eq!(p("6").absolute_length(), 5);
        assert_eq!(p("3,2,2").absolute_length(), 4);
    }

    #[test]
    fn add_one_preserves_length() {
        assert_eq!(p("3,1").add_one(), p("3,1,1"));
        assert_eq!(p("1,1").add_one(), p("1,1,1"));
        for d in 0..=10 {
            for lam in enumerate_partitions(d) {
                assert_eq!(lam.add_one().absolute_length(), lam.absolute_length());
                assert_eq!(lam.add_one().degree(), d + 1);
            }
        }
    }

    #[test]
    fn disjoint_union_examples() {
        assert_eq!(p("2,1,1,1").disjoint_union(&p("2,1,1,1"), 5).unwrap(), p("2,2,1"));
        assert!(matches!(p("2,1").disjoint_union(&p("2,1"), 3), Err(Error::NotRepresentable { .. })));
        for lam in enumerate_partitions(7) {
            assert_eq!(Partition::ones(7).disjoint_union(&lam, 7).unwrap(), lam);
        }
    }

    #[test]
    fn hook_decomposition_reassembles() {
        assert_eq!(p("3,2,2").hook_decomposition(), vec![p("3,1,1,1,1"), p("2,1,1,1,1,1"), p("2,1,1,1,1,1")]);
        assert!(Partition::ones(5).hook_decomposition().is_empty());
        for d in 0..=10 {
            for lam in enumerate_partitions(d) {
                let hooks = lam.hook_decomposition();
                assert!(hooks.iter().all(Partition::is_hook));
                let rebuilt = hooks.iter().try_fold(Partition::ones(d), |acc, h| acc.disjoint_union(h, d)).unwrap();
                assert_eq!(rebuilt, lam);
            }
        }
    }

    #[test]
    fn refinement_examples() {
        assert!(p("2,1,1").refines(&p("2,2")).unwrap());
        assert!(!p("2,2").refines(&p("2,1,1")).unwrap());
        assert!(!p("3,1").refines(&p("2,2")).unwrap());
        for lam in enumerate_partitions(6) {
            assert!(Partition::ones(6).refines(&lam).unwrap());
        }
        assert!(p("2,1").refines(&p("2,2")).is_err());
    }

    #[test]
    fn refinement_is_a_partial_order() {
        for d in 0..=8 {
            let all = enumerate_partitions(d);
            let rel: Vec<Vec<bool>> = all.iter().map(|a| all.iter().map(|b| a.refines(b).unwrap()).collect()).collect();
            for i in 0..all.len() {
                assert!(rel[i][i]);
                for j in 0..all.len() {
                    if i != j && rel[i][j] {
                        assert!(!rel[j][i], "antisymmetry {} {}", all[i], all[j]);
                        assert!(all[i].absolute_length() <= all[j].absolute_length());
                    }
                    for k in 0..all.len() {
                        if rel[i][j] && rel[j][k] {
                            assert!(rel[i][k]);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn length_strata_match_bounded_partitions() {
        // subtracting 1 from every part maps {λ ⊢ d : N(λ) = m} onto
        // partitions of m with at most d - m parts
        for d in 1..=14 {
            let all = enumerate_partitions(d);
            for m in 0..d {
                let count = all.iter().filter(|l| l.absolute_length() == m).count() as u128;
                let bound = d - m;
                // partitions of m with at most `bound` parts = parts at most `bound` (conjugation)
                assert_eq!(count, bounded_count(m, bound), "d={d} m={m}");
            }
        }
    }

    #[test]
    fn centralizer_identity() {
        for d in 0..=9 {
            let total: u128 = enumerate_partitions(d).iter().map(Partition::class_size).sum();
            assert_eq!(total, factorial(d));
            for lam in enumerate_partitions(d) {
                assert_eq!(lam.centralizer_order() * lam.class_size(), factorial(d));
            }
        }
        assert_eq!(p("2,1").centralizer_order(), 2);
        assert_eq!(p("2,2").centralizer_order(), 8);
    }
}
