//! Combinatorial branched covers of the disk.
//!
//! A cover is recorded by its local monodromies around the branch points,
//! read in order (a [`BranchTuple`]). Positions of branch points are not
//! stored; at the level of connected components only the tuple matters.
//! A connected component of the moduli of such covers is labelled by a
//! [`ComponentSignature`] `(π, F, g)`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
pub use crate::perm::orbits;
use crate::perm::Perm;
pub use crate::setpart::SetPartition;

/// Local monodromies `σ_1, …, σ_k` around the branch points; each entry is
/// a non-identity permutation of degree `d`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BranchTuple {
    d: usize,
    branches: Vec<Perm>,
}

impl BranchTuple {
    pub fn new(d: usize, branches: Vec<Perm>) -> Result<Self> {
        for (i, s) in branches.iter().enumerate() {
            if s.degree() != d {
                return Err(Error::DegreeMismatch { left: s.degree(), right: d });
            }
            if s.is_identity() {
                return Err(Error::InvalidBranchTuple(format!("entry {} is the identity", i + 1)));
            }
        }
        Ok(BranchTuple { d, branches })
    }

    pub fn empty(d: usize) -> Self {
        BranchTuple { d, branches: Vec::new() }
    }

    pub fn degree(&self) -> usize {
        self.d
    }

    pub fn branches(&self) -> &[Perm] {
        &self.branches
    }

    pub fn len(&self) -> usize {
        self.branches.len()
    }

    pub fn is_empty(&self) -> bool {
        self.branches.is_empty()
    }

    /// Tuple concatenation: the branch points of `self` followed by those of `other`.
    pub fn concat(&self, other: &BranchTuple) -> Result<BranchTuple> {
        if self.d != other.d {
            return Err(Error::DegreeMismatch { left: self.d, right: other.d });
        }
        let mut branches = self.branches.clone();
        branches.extend(other.branches.iter().cloned());
        Ok(BranchTuple { d: self.d, branches })
    }

    /// `Σ N(σ_i)`.
    pub fn total_length(&self) -> usize {
        self.branches.iter().map(Perm::absolute_length).sum()
    }

    /// Swap branch points `i` and `i + 1` (0-based) by a braid move:
    /// `(σ_i, σ_{i+1}) ↦ (σ_{i+1}, σ_{i+1} σ_i σ_{i+1}⁻¹)`, the second entry
    /// written as a function. Preserves the boundary monodromy and the
    /// component signature.
    pub fn hurwitz_move(&self, i: usize) -> Result<BranchTuple> {
        if i + 1 >= self.branches.len() {
            return Err(Error::Precondition(format!("no adjacent pair at position {i}")));
        }
        let mut branches = self.branches.clone();
        let (a, b) = (&self.branches[i], &self.branches[i + 1]);
        branches[i] = b.clone();
        branches[i + 1] = a.conjugate_by(b)?;
        Ok(BranchTuple { d: self.d, branches })
    }
}

impl fmt::Display for BranchTuple {
    /// `d=3; (1 2); (1 3)`
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "d={}", self.d)?;
        for s in &self.branches {
            write!(f, "; {s}")?;
        }
        Ok(())
    }
}

impl FromStr for BranchTuple {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut fields = s.split(';').map(str::trim);
        let header = fields.next().unwrap_or_default();
        let d = header
            .strip_prefix("d=")
            .and_then(|v| v.trim().parse::<usize>().ok())
            .ok_or_else(|| Error::Parse(format!("expected degree header \"d=N\", got {header:?}")))?;
        let branches = fields.filter(|f| !f.is_empty()).map(|f| Perm::parse(f, Some(d))).collect::<Result<Vec<_>>>()?;
        BranchTuple::new(d, branches)
    }
}

#[derive(Serialize, Deserialize)]
struct BranchTupleJson {
    d: usize,
    branches: Vec<Vec<Vec<usize>>>,
}

impl Serialize for BranchTuple {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        BranchTupleJson { d: self.d, branches: self.branches.iter().map(Perm::nontrivial_cycles).collect() }
            .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for BranchTuple {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let raw = BranchTupleJson::deserialize(deserializer)?;
        let branches = raw
            .branches
            .iter()
            .map(|c| Perm::from_cycles(raw.d, c))
            .collect::<Result<Vec<_>>>()
            .map_err(serde::de::Error::custom)?;
        BranchTuple::new(raw.d, branches).map_err(serde::de::Error::custom)
    }
}

/// The label `(π, F, g)` of a connected component of branched covers of the
/// disk with a trivialization along the boundary: boundary monodromy `π`,
/// the set partition `F` of sheets into connected pieces, and the genus of
/// each piece (listed in block order).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ComponentSignature {
    pi: Perm,
    blocks: SetPartition,
    genus: Vec<u32>,
}

impl ComponentSignature {
    pub fn new(pi: Perm, blocks: SetPartition, genus: Vec<u32>) -> Result<Self> {
        let d = pi.degree();
        if blocks.degree() != d {
            return Err(Error::DegreeMismatch { left: blocks.degree(), right: d });
        }
        if genus.len() != blocks.len() {
            return Err(Error::InvalidSignature(format!("{} genus values for {} blocks", genus.len(), blocks.len())));
        }
        let labels = blocks.labels();
        for x in 1..=d {
            if labels[pi.apply(x) - 1] != labels[x - 1] {
                return Err(Error::InvalidSignature(format!("blocks {blocks} are not unions of cycles of {pi}")));
            }
        }
        for (b, &g) in blocks.blocks().iter().zip(&genus) {
            if b.len() == 1 && g != 0 {
                return Err(Error::InvalidSignature(format!("singleton block {b:?} has genus {g}")));
            }
        }
        Ok(ComponentSignature { pi, blocks, genus })
    }

    /// Builds from `(block, genus)` pairs given in any order.
    pub fn from_pairs(pi: Perm, pairs: Vec<(Vec<usize>, u32)>) -> Result<Self> {
        let mut pairs = pairs;
        for (b, _) in &mut pairs {
            b.sort_unstable();
        }
        pairs.sort_by_key(|(b, _)| b.first().copied().unwrap_or(0));
        let genus = pairs.iter().map(|(_, g)| *g).collect();
        let blocks = SetPartition::new(pi.degree(), pairs.into_iter().map(|(b, _)| b).collect())?;
        ComponentSignature::new(pi, blocks, genus)
    }

    /// The trivial cover: identity monodromy, all sheets separate.
    pub fn unit(d: usize) -> Self {
        ComponentSignature { pi: Perm::identity(d), blocks: SetPartition::discrete(d), genus: vec![0; d] }
    }

    /// Union of disks: one block per cycle of `pi`, all genus 0.
    pub fn disks(pi: Perm) -> Self {
        let d = pi.degree();
        let cycles = pi.cycles();
        let n = cycles.len();
        let blocks = SetPartition::new(d, cycles).expect("cycles partition the points");
        ComponentSignature { pi, blocks, genus: vec![0; n] }
    }

    pub fn degree(&self) -> usize {
        self.pi.degree()
    }

    /// Boundary monodromy.
    pub fn pi(&self) -> &Perm {
        &self.pi
    }

    pub fn blocks(&self) -> &SetPartition {
        &self.blocks
    }

    /// Genus per block, in block order.
    pub fn genus(&self) -> &[u32] {
        &self.genus
    }

    pub fn is_connected(&self) -> bool {
        self.blocks.len() == 1
    }

    /// Number of cycles of `π` inside each block (boundary circles per piece).
    pub fn boundary_counts(&self) -> Vec<usize> {
        cycles_per_block(&self.pi, &self.blocks)
    }

    /// `χ = Σ_T (2 - 2 g(T) - b(T))`.
    pub fn euler_characteristic(&self) -> i64 {
        self.boundary_counts().iter().zip(&self.genus).map(|(&b, &g)| 2 - 2 * g as i64 - b as i64).sum()
    }

    /// Sorted genus values.
    pub fn genus_multiset(&self) -> Vec<u32> {
        let mut g = self.genus.clone();
        g.sort_unstable();
        g
    }
}

pub(crate) fn cycles_per_block(pi: &Perm, blocks: &SetPartition) -> Vec<usize> {
    let labels = blocks.labels();
    let mut counts = vec![0; blocks.len()];
    for c in pi.cycles() {
        counts[labels[c[0] - 1]] += 1;
    }
    counts
}

impl fmt::Display for ComponentSignature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, g=[", self.pi, self.blocks)?;
        for (i, g) in self.genus.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{g}")?;
        }
        write!(f, "])")
    }
}

#[derive(Serialize, Deserialize)]
struct SignatureJson {
    d: usize,
    pi: CycleListJson,
    #[serde(rename = "F")]
    blocks: Vec<Vec<usize>>,
    g: Vec<u32>,
}

#[derive(Serialize, Deserialize)]
#[serde(transparent)]
struct CycleListJson(Vec<Vec<usize>>);

impl Serialize for ComponentSignature {
    /// `{"d":4,"pi":[[1,2,3,4]],"F":[[1,2,3,4]],"g":[3]}`
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        SignatureJson {
            d: self.degree(),
            pi: CycleListJson(self.pi.nontrivial_cycles()),
            blocks: self.blocks.blocks().to_vec(),
            g: self.genus.clone(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for ComponentSignature {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let raw = SignatureJson::deserialize(deserializer)?;
        let build = || -> Result<ComponentSignature> {
            let pi = Perm::from_cycles(raw.d, &raw.pi.0)?;
            if raw.blocks.len() != raw.g.len() {
                return Err(Error::InvalidSignature("F and g lengths differ".into()));
            }
            ComponentSignature::from_pairs(pi, raw.blocks.iter().cloned().zip(raw.g.iter().copied()).collect())
        };
        build().map_err(serde::de::Error::custom)
    }
}

/// `σ_∂ = σ_1 ⋯ σ_k`, crossing `σ_1` first: `σ_k ∘ ⋯ ∘ σ_1`.
pub fn boundary_monodromy(t: &BranchTuple) -> Perm {
    t.branches.iter().fold(Perm::identity(t.d), |acc, s| s.compose(&acc).expect("degrees checked"))
}

/// Connected pieces, boundary monodromy and per-piece genus of the cover
/// described by `t`, via Riemann–Hurwitz on each orbit `T`:
/// `2 g(T) = 2 - b_T - |T| + Σ_i N(σ_i|_T)`.
pub fn component_signature(t: &BranchTuple) -> Result<ComponentSignature> {
    let blocks = orbits(t.d, &t.branches)?;
    let pi = boundary_monodromy(t);
    let labels = blocks.labels();
    let mut branch_length = vec![0i64; blocks.len()];
    for s in &t.branches {
        for c in s.nontrivial_cycles() {
            branch_length[labels[c[0] - 1]] += c.len() as i64 - 1;
        }
    }
    let boundary = cycles_per_block(&pi, &blocks);
    let mut genus = Vec::with_capacity(blocks.len());
    for (i, block) in blocks.blocks().iter().enumerate() {
        let twice = 2 - boundary[i] as i64 - block.len() as i64 + branch_length[i];
        if twice % 2 != 0 {
            return Err(Error::NonIntegralGenus { block: block.clone() });
        }
        if twice < 0 {
            return Err(Error::NegativeGenus { block: block.clone() });
        }
        genus.push((twice / 2) as u32);
    }
    ComponentSignature::new(pi, blocks, genus)
}

/// The two equivalent additivity conditions characterizing covers by
/// disjoint unions of disks.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct LocalConditions {
    pub total_length: usize,
    pub degree_minus_components: usize,
    pub boundary_length: usize,
}

impl LocalConditions {
    /// `Σ N(σ_i) = d - r`.
    pub fn additive_over_components(&self) -> bool {
        self.total_length == self.degree_minus_components
    }

    /// `Σ N(σ_i) = N(σ_∂)`.
    pub fn additive_boundary(&self) -> bool {
        self.total_length == self.boundary_length
    }
}

pub fn local_conditions(t: &BranchTuple) -> Result<LocalConditions> {
    let sig = component_signature(t)?;
    Ok(LocalConditions {
        total_length: t.total_length(),
        degree_minus_components: t.d - sig.blocks().len(),
        boundary_length: sig.pi().absolute_length(),
    })
}

/// True iff every connected piece of the cover is a disk.
pub fn is_local(t: &BranchTuple) -> Result<bool> {
    let c = local_conditions(t)?;
    assert_eq!(c.additive_over_components(), c.additive_boundary(), "local-cover criteria disagree on {t}: {c:?}");
    Ok(c.additive_over_components())
}

/// A branch tuple whose component signature is `sig`.
///
/// Per block `T` with `b` boundary cycles and genus `g`: the single entry
/// `π|_T` (when nontrivial), then `b - 1` doubled transpositions joining
/// consecutive cycles, then `g` doubled copies of a fixed transposition in
/// `T`. The doubled pairs leave the boundary monodromy unchanged and add
/// `2(g + b - 1)` to `Σ N`, which is exactly the genus bookkeeping needed.
pub fn realize(sig: &ComponentSignature) -> BranchTuple {
    let d = sig.degree();
    let mut branches = Vec::new();
    let cycles = sig.pi.cycles();
    for (block, &g) in sig.blocks.blocks().iter().zip(&sig.genus) {
        let restricted = sig.pi.restrict(block).expect("blocks are pi-invariant");
        if !restricted.is_identity() {
            branches.push(restricted);
        }
        let mins: Vec<usize> = cycles.iter().filter(|c| block.binary_search(&c[0]).is_ok()).map(|c| c[0]).collect();
        for w in mins.windows(2) {
            let tau = Perm::transposition(d, w[0], w[1]).expect("distinct points");
            branches.push(tau.clone());
            branches.push(tau);
        }
        if g > 0 {
            let tau = Perm::transposition(d, block[0], block[1]).expect("positive genus needs two sheets");
            for _ in 0..2 * g {
                branches.push(tau.clone());
            }
        }
    }
    BranchTuple { d, branches }
}

/// Conditions on a branch tuple for it to define a point of the Hurwitz
/// space of connected genus-`g` covers with boundary monodromy `π`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum HurwitzCondition {
    /// The boundary monodromy equals the target.
    BoundaryMonodromy,
    /// Every branch point has nontrivial local monodromy.
    NontrivialBranches,
    /// `2g - 2 = -2d + Σ N(σ_i) + N(π)`.
    Genus,
    /// The monodromy group is transitive.
    Transitive,
}

impl HurwitzCondition {
    pub fn label(&self) -> &'static str {
        match self {
            HurwitzCondition::BoundaryMonodromy => "boundary monodromy",
            HurwitzCondition::NontrivialBranches => "nontrivial branching",
            HurwitzCondition::Genus => "genus",
            HurwitzCondition::Transitive => "transitivity",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HurwitzCheck {
    /// Failed conditions in checking order: boundary, branching, transitivity,
    /// genus.
    pub failures: Vec<HurwitzCondition>,
}

impl HurwitzCheck {
    pub fn is_valid(&self) -> bool {
        self.failures.is_empty()
    }

    /// The first failing condition. Transitivity is checked before the genus
    /// equation, which only makes sense for connected covers.
    pub fn diagnosis(&self) -> Option<HurwitzCondition> {
        self.failures.first().copied()
    }
}

pub fn validate_hurwitz_point(t: &BranchTuple, target_pi: &Perm, target_g: u32) -> Result<HurwitzCheck> {
    let d = t.d;
    if target_pi.degree() != d {
        return Err(Error::DegreeMismatch { left: target_pi.degree(), right: d });
    }
    let mut failures = Vec::new();
    if boundary_monodromy(t) != *target_pi {
        failures.push(HurwitzCondition::BoundaryMonodromy);
    }
    if t.branches.iter().any(Perm::is_identity) {
        failures.push(HurwitzCondition::NontrivialBranches);
    }
    if orbits(d, &t.branches)?.len() != 1 {
        failures.push(HurwitzCondition::Transitive);
    }
    let lhs = 2 * target_g as i64 - 2;
    let rhs = -2 * d as i64 + t.total_length() as i64 + target_pi.absolute_length() as i64;
    if lhs != rhs {
        failures.push(HurwitzCondition::Genus);
    }
    Ok(HurwitzCheck { failures })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tuple(s: &str) -> BranchTuple {
        s.parse().unwrap()
    }

    fn perm(d: usize, s: &str) -> Perm {
        Perm::parse(s, Some(d)).unwrap()
    }

    fn sig(d: usize, pi: &str, blocks: Vec<Vec<usize>>, g: Vec<u32>) -> ComponentSignature {
        ComponentSignature::new(perm(d, pi), SetPartition::new(d, blocks).unwrap(), g).unwrap()
    }

    #[test]
    fn boundary_monodromy_examples() {
        assert!(boundary_monodromy(&BranchTuple::empty(3)).is_identity());
        assert!(boundary_monodromy(&tuple("d=2; (1 2); (1 2)")).is_identity());
        // (1 2) is crossed first: 1 -> 2 -> 3
        assert_eq!(boundary_monodromy(&tuple("d=3; (1 2); (2 3)")), perm(3, "(1 3 2)"));
        assert_eq!(boundary_monodromy(&tuple("d=3; (2 3); (1 2)")), perm(3, "(1 2 3)"));
    }

    #[test]
    fn signature_examples() {
        assert_eq!(component_signature(&tuple("d=2; (1 2); (1 2)")).unwrap(), sig(2, "()", vec![vec![1, 2]], vec![0]));
        assert_eq!(
            component_signature(&tuple("d=3; (1 2 3)")).unwrap(),
            sig(3, "(1 2 3)", vec![vec![1, 2, 3]], vec![0])
        );
        assert_eq!(
            component_signature(&tuple("d=2; (1 2); (1 2); (1 2); (1 2)")).unwrap(),
            sig(2, "()", vec![vec![1, 2]], vec![1])
        );
        // unmoved sheets are singleton blocks
        let s = component_signature(&tuple("d=4; (1 2)")).unwrap();
        assert_eq!(s.blocks().to_string(), "{{1,2},{3},{4}}");
        assert_eq!(s.genus(), &[0, 0, 0]);
    }

    #[test]
    fn locality_examples() {
        assert!(!is_local(&tuple("d=2; (1 2); (1 2)")).unwrap());
        assert!(is_local(&tuple("d=3; (1 2); (1 3)")).unwrap());
        for d in 2..=8 {
            let t = BranchTuple::new(d, vec![Perm::long_cycle(d)]).unwrap();
            assert!(is_local(&t).unwrap());
        }
    }

    #[test]
    fn realize_examples() {
        assert_eq!(realize(&sig(2, "(1 2)", vec![vec![1, 2]], vec![1])), tuple("d=2; (1 2); (1 2); (1 2)"));
        assert!(realize(&ComponentSignature::unit(5)).is_empty());
        assert_eq!(
            realize(&sig(4, "()", vec![vec![1, 2, 3, 4]], vec![0])),
            tuple("d=4; (1 2); (1 2); (2 3); (2 3); (3 4); (3 4)")
        );
    }

    #[test]
    fn hurwitz_examples() {
        let t = tuple("d=2; (1 2)");
        assert!(validate_hurwitz_point(&t, &perm(2, "(1 2)"), 0).unwrap().is_valid());
        let bad = validate_hurwitz_point(&t, &perm(2, "(1 2)"), 1).unwrap();
        assert_eq!(bad.diagnosis(), Some(HurwitzCondition::Genus));
        let t = tuple("d=4; (1 2); (3 4)");
        for g in 0..4 {
            let c = validate_hurwitz_point(&t, &perm(4, "(1 2)(3 4)"), g).unwrap();
            assert_eq!(c.diagnosis(), Some(HurwitzCondition::Transitive));
        }
        let c = validate_hurwitz_point(&tuple("d=3; (1 2); (2 3)"), &perm(3, "(1 2 3)"), 0).unwrap();
        assert_eq!(c.diagnosis(), Some(HurwitzCondition::BoundaryMonodromy));
        assert!(validate_hurwitz_point(&t, &Perm::identity(3), 0).is_err());
    }

    #[test]
    fn signature_validation() {
        let d = 3;
        // block not a union of cycles
        assert!(ComponentSignature::new(
            perm(d, "(1 2)"),
            SetPartition::new(d, vec![vec![1], vec![2, 3]]).unwrap(),
            vec![0, 0]
        )
        .is_err());
        // singleton with genus
        assert!(ComponentSignature::new(perm(d, "()"), SetPartition::discrete(d), vec![0, 1, 0]).is_err());
        // wrong genus length
        assert!(ComponentSignature::new(perm(d, "()"), SetPartition::discrete(d), vec![0]).is_err());
    }

    #[test]
    fn text_and_json_formats() {
        let t = tuple("d=3; (1 2); (1 3)");
        assert_eq!(t.to_string(), "d=3; (1 2); (1 3)");
        let json = serde_json::to_string(&t).unwrap();
        assert_eq!(json, r#"{"d":3,"branches":[[[1,2]],[[1,3]]]}"#);
        assert_eq!(serde_json::from_str::<BranchTuple>(&json).unwrap(), t);
        assert!("d=3; ()".parse::<BranchTuple>().is_err());
        assert!("(1 2)".parse::<BranchTuple>().is_err());

        let s = sig(4, "(1 2 3 4)", vec![vec![1, 2, 3, 4]], vec![3]);
        let json = serde_json::to_string(&s).unwrap();
        assert_eq!(json, r#"{"d":4,"pi":[[1,2,3,4]],"F":[[1,2,3,4]],"g":[3]}"#);
        assert_eq!(serde_json::from_str::<ComponentSignature>(&json).unwrap(), s);
        let shuffled = r#"{"d":4,"pi":[],"F":[[4,3],[1,2]],"g":[0,1]}"#;
        let parsed: ComponentSignature = serde_json::from_str(shuffled).unwrap();
        assert_eq!(parsed.genus(), &[1, 0]);
    }

    #[test]
    fn hurwitz_move_preserves_signature() {
        let t = tuple("d=4; (1 2); (2 3); (3 4); (1 2)");
        let before = component_signature(&t).unwrap();
        for i in 0..3 {
            let moved = t.hurwitz_move(i).unwrap();
            assert_eq!(component_signature(&moved).unwrap(), before);
        }
        assert!(t.hurwitz_move(3).is_err());
    }
}
