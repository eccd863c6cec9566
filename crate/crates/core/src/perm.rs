//! Permutations of `{1, …, d}`.
//!
//! Composition convention: `compose(p, q)` applies `q` first, then `p`, so
//! `compose(p, q)(x) = p(q(x))`. Conjugacy-class valued results do not
//! depend on this choice; anything returning a specific representative does.

use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::partition::Partition;
use crate::setpart::{SetPartition, UnionFind};

/// Largest supported degree; images are stored as bytes.
pub const MAX_DEGREE: usize = 255;

/// A permutation of `{1, …, d}`, stored 0-based in one-line notation.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm {
    images: Vec<u8>,
}

impl Perm {
    pub fn identity(d: usize) -> Self {
        assert!(d <= MAX_DEGREE, "degree {d} exceeds {MAX_DEGREE}");
        Perm { images: (0..d as u8).collect() }
    }

    /// From one-line notation with 1-based values, e.g. `[2, 1, 4, 3]`.
    pub fn from_images(images: &[usize]) -> Result<Self> {
        let d = images.len();
        if d > MAX_DEGREE {
            return Err(Error::InvalidPermutation(format!("degree {d} exceeds {MAX_DEGREE}")));
        }
        let mut seen = vec![false; d];
        let mut out = Vec::with_capacity(d);
        for &x in images {
            if x == 0 || x > d || seen[x - 1] {
                return Err(Error::InvalidPermutation(format!("{images:?} is not a bijection of 1..={d}")));
            }
            seen[x - 1] = true;
            out.push((x - 1) as u8);
        }
        Ok(Perm { images: out })
    }

    /// From disjoint cycles (1-based). Singletons are allowed and ignored.
    pub fn from_cycles(d: usize, cycles: &[Vec<usize>]) -> Result<Self> {
        if d > MAX_DEGREE {
            return Err(Error::InvalidPermutation(format!("degree {d} exceeds {MAX_DEGREE}")));
        }
        let mut images: Vec<u8> = (0..d as u8).collect();
        let mut seen = vec![false; d];
        for cycle in cycles {
            for &x in cycle {
                if x == 0 || x > d {
                    return Err(Error::InvalidPermutation(format!("point {x} outside 1..={d}")));
                }
                if seen[x - 1] {
                    return Err(Error::InvalidPermutation(format!("point {x} repeated in cycles")));
                }
                seen[x - 1] = true;
            }
            for (i, &x) in cycle.iter().enumerate() {
                let next = cycle[(i + 1) % cycle.len()];
                images[x - 1] = (next - 1) as u8;
            }
        }
        Ok(Perm { images })
    }

    /// The transposition `(a b)` in `S_d`.
    pub fn transposition(d: usize, a: usize, b: usize) -> Result<Self> {
        if a == b {
            return Err(Error::InvalidPermutation(format!("degenerate transposition ({a} {b})")));
        }
        Perm::from_cycles(d, &[vec![a, b]])
    }

    /// The cycle `(1 2 … d)`.
    pub fn long_cycle(d: usize) -> Self {
        Perm::from_cycles(d, &[(1..=d).collect()]).expect("valid cycle")
    }

    pub(crate) fn from_raw(images: Vec<u8>) -> Self {
        debug_assert!(is_bijection(&images));
        Perm { images }
    }

    pub(crate) fn raw(&self) -> &[u8] {
        &self.images
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    /// Image of the 1-based point `x`.
    pub fn apply(&self, x: usize) -> usize {
        self.images[x - 1] as usize + 1
    }

    /// One-line notation, 1-based.
    pub fn images(&self) -> Vec<usize> {
        self.images.iter().map(|&x| x as usize + 1).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i == x as usize)
    }

    /// `p ∘ q`: apply `q` first, then `p`.
    pub fn compose(&self, q: &Perm) -> Result<Perm> {
        check_degree(self, q)?;
        Ok(Perm { images: q.images.iter().map(|&x| self.images[x as usize]).collect() })
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0u8; self.images.len()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x as usize] = i as u8;
        }
        Perm { images: inv }
    }

    /// `τ ∘ self ∘ τ⁻¹`: relabels every point `x` as `τ(x)`.
    pub fn conjugate_by(&self, tau: &Perm) -> Result<Perm> {
        check_degree(self, tau)?;
        let mut out = vec![0u8; self.images.len()];
        for (i, &x) in self.images.iter().enumerate() {
            out[tau.images[i] as usize] = tau.images[x as usize];
        }
        Ok(Perm { images: out })
    }

    /// All cycles including fixed points, each starting at its minimum,
    /// ordered by minimum. 1-based.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let d = self.images.len();
        let mut seen = vec![false; d];
        let mut out = Vec::new();
        for start in 0..d {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                cycle.push(x + 1);
                x = self.images[x] as usize;
            }
            out.push(cycle);
        }
        out
    }

    /// Cycles of length at least 2.
    pub fn nontrivial_cycles(&self) -> Vec<Vec<usize>> {
        self.cycles().into_iter().filter(|c| c.len() > 1).collect()
    }

    pub fn num_cycles(&self) -> usize {
        count_cycles(&self.images)
    }

    pub fn cycle_type(&self) -> Partition {
        cycle_type_raw(&self.images)
    }

    /// `N(p) = d - #cycles`, the minimal number of transpositions with product `p`.
    pub fn absolute_length(&self) -> usize {
        self.images.len() - self.num_cycles()
    }

    /// Extends by fixed points to degree `d`.
    pub fn extend(&self, d: usize) -> Result<Perm> {
        if d < self.degree() {
            return Err(Error::StabilizeDown { from: self.degree(), to: d });
        }
        let mut images = self.images.clone();
        images.extend(self.degree() as u8..d as u8);
        Ok(Perm { images })
    }

    /// The permutation agreeing with `self` on the invariant set `block`
    /// (1-based) and fixing everything else.
    pub fn restrict(&self, block: &[usize]) -> Result<Perm> {
        let mut images: Vec<u8> = (0..self.degree() as u8).collect();
        for &x in block {
            let y = self.apply(x);
            if !block.contains(&y) {
                return Err(Error::Precondition(format!("block {block:?} is not invariant under {self}")));
            }
            images[x - 1] = (y - 1) as u8;
        }
        Ok(Perm { images })
    }

    /// Parses cycle notation `"(1 2)(3 4)"` or one-line notation `"2 1 4 3"`.
    ///
    /// For cycle notation the degree is `d` if given, else the largest point
    /// mentioned. For one-line notation the degree is the length, which must
    /// equal `d` when given.
    pub fn parse(s: &str, d: Option<usize>) -> Result<Perm> {
        let s = s.trim();
        if s.starts_with('(') {
            let cycles = parse_cycles(s)?;
            let max = cycles.iter().flatten().copied().max().unwrap_or(0);
            let degree = match d {
                Some(d) if d < max => return Err(Error::Parse(format!("point {max} exceeds degree {d} in {s:?}"))),
                Some(d) => d,
                None => max.max(1),
            };
            Perm::from_cycles(degree, &cycles)
        } else {
            let images = s
                .split(|c: char| c.is_whitespace() || c == ',')
                .filter(|t| !t.is_empty())
                .map(|t| t.parse::<usize>().map_err(|e| Error::Parse(format!("{t:?}: {e}"))))
                .collect::<Result<Vec<_>>>()?;
            if let Some(d) = d {
                if d != images.len() {
                    return Err(Error::DegreeMismatch { left: images.len(), right: d });
                }
            }
            Perm::from_images(&images)
        }
    }
}

fn parse_cycles(s: &str) -> Result<Vec<Vec<usize>>> {
    let mut cycles = Vec::new();
    let mut rest = s.trim();
    while !rest.is_empty() {
        let body_end = rest
            .strip_prefix('(')
            .and_then(|r| r.find(')'))
            .ok_or_else(|| Error::Parse(format!("malformed cycle notation {s:?}")))?;
        let body = &rest[1..=body_end];
        let cycle = body
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|t| !t.is_empty())
            .map(|t| t.parse::<usize>().map_err(|e| Error::Parse(format!("{t:?}: {e}"))))
            .collect::<Result<Vec<_>>>()?;
        if !cycle.is_empty() {
            cycles.push(cycle);
        }
        rest = rest[body_end + 2..].trim_start();
    }
    Ok(cycles)
}

fn check_degree(p: &Perm, q: &Perm) -> Result<()> {
    if p.degree() != q.degree() {
        return Err(Error::DegreeMismatch { left: p.degree(), right: q.degree() });
    }
    Ok(())
}

fn is_bijection(images: &[u8]) -> bool {
    let mut seen = vec![false; images.len()];
    images.iter().all(|&x| {
        let x = x as usize;
        x < seen.len() && !std::mem::replace(&mut seen[x], true)
    })
}

pub(crate) fn count_cycles(images: &[u8]) -> usize {
    let mut seen = [false; MAX_DEGREE + 1];
    let mut count = 0;
    for start in 0..images.len() {
        if seen[start] {
            continue;
        }
        count += 1;
        let mut x = start;
        while !seen[x] {
            seen[x] = true;
            x = images[x] as usize;
        }
    }
    count
}

pub(crate) fn cycle_type_raw(images: &[u8]) -> Partition {
    let mut seen = [false; MAX_DEGREE + 1];
    let mut lengths = Vec::new();
    for start in 0..images.len() {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut x = start;
        while !seen[x] {
            seen[x] = true;
            len += 1;
            x = images[x] as usize;
        }
        lengths.push(len);
    }
    Partition::from_unsorted(lengths)
}

/// Composition as a free function; see the module convention.
pub fn compose(p: &Perm, q: &Perm) -> Result<Perm> {
    p.compose(q)
}

/// Orbits on `{1, …, d}` of the group generated by `gens`.
pub fn orbits(d: usize, gens: &[Perm]) -> Result<SetPartition> {
    let mut uf = UnionFind::new(d);
    for g in gens {
        if g.degree() != d {
            return Err(Error::DegreeMismatch { left: g.degree(), right: d });
        }
        for (i, &x) in g.images.iter().enumerate() {
            uf.union(i, x as usize);
        }
    }
    Ok(uf.into_set_partition())
}

/// Cycles of lengths `λ_1 ≥ λ_2 ≥ …` on consecutive points starting from 1.
pub fn canonical_representative(lam: &Partition) -> Perm {
    let mut images = Vec::with_capacity(lam.degree());
    let mut start = 0u8;
    for &k in lam.parts() {
        let k = k as u8;
        for i in 0..k {
            images.push(start + (i + 1) % k);
        }
        start += k;
    }
    Perm { images }
}

impl fmt::Display for Perm {
    /// Cycle notation with fixed points omitted; `()` for the identity.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.nontrivial_cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for c in cycles {
            write!(f, "(")?;
            for (i, x) in c.iter().enumerate() {
                if i > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{x}")?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Perm[d={}]{}", self.degree(), self)
    }
}

/// Serialized as the list of nontrivial cycles, e.g. `[[1,2],[3,4]]`; the
/// degree is carried by the enclosing object.
impl Serialize for Perm {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.nontrivial_cycles().serialize(serializer)
    }
}

// ---------------------------------------------------------------------------
// Conjugacy class enumeration
// ---------------------------------------------------------------------------

/// Enumerates a conjugacy class by building cycles in order of their minimum
/// point: the cycle through the smallest unused point picks a length among the
/// remaining parts and then an ordered tuple of the other points. Each
/// permutation of the class arises exactly once.
struct ClassWalker<'a> {
    d: usize,
    images: Vec<u8>,
    used: Vec<bool>,
    // remaining multiplicity per cycle length
    remaining: Vec<usize>,
    visit: &'a mut dyn FnMut(&[u8]),
}

impl ClassWalker<'_> {
    fn run(&mut self) {
        let Some(start) = self.used.iter().position(|&u| !u) else {
            (self.visit)(&self.images);
            return;
        };
        for len in 1..=self.d {
            if self.remaining[len] == 0 {
                continue;
            }
            self.remaining[len] -= 1;
            self.used[start] = true;
            let mut chosen = vec![start];
            self.extend_cycle(len, &mut chosen);
            self.used[start] = false;
            self.remaining[len] += 1;
        }
    }

    fn extend_cycle(&mut self, len: usize, chosen: &mut Vec<usize>) {
        if chosen.len() == len {
            for i in 0..len {
                self.images[chosen[i]] = chosen[(i + 1) % len] as u8;
            }
            self.run();
            return;
        }
        for x in chosen[0] + 1..self.d {
            if self.used[x] {
                continue;
            }
            self.used[x] = true;
            chosen.push(x);
            self.extend_cycle(len, chosen);
            chosen.pop();
            self.used[x] = false;
        }
    }
}

fn multiplicity_table(lam: &Partition) -> Vec<usize> {
    let d = lam.degree();
    let mut remaining = vec![0usize; d + 1];
    for &k in lam.parts() {
        remaining[k] += 1;
    }
    remaining
}

/// The possible cycles through point 1 for permutations of type `lam`. Each
/// prefix owns a disjoint slice of the class; used to split enumeration.
pub fn class_prefixes(lam: &Partition) -> Vec<Vec<usize>> {
    let d = lam.degree();
    if d == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    let remaining = multiplicity_table(lam);
    for (len, _) in remaining.iter().enumerate().filter(|&(len, &n)| len > 0 && n > 0) {
        let mut chosen = vec![0usize];
        ordered_tuples(d, len, &mut chosen, &mut |c| out.push(c.iter().map(|&x| x + 1).collect()));
    }
    out
}

fn ordered_tuples(d: usize, len: usize, chosen: &mut Vec<usize>, emit: &mut dyn FnMut(&[usize])) {
    if chosen.len() == len {
        emit(chosen);
        return;
    }
    for x in 1..d {
        if chosen.contains(&x) {
            continue;
        }
        chosen.push(x);
        ordered_tuples(d, len, chosen, emit);
        chosen.pop();
    }
}

/// Visits every permutation of type `lam` whose cycle through point 1 is
/// `prefix` (1-based, starting with 1). The slice passed to `visit` is the
/// 0-based one-line form.
pub(crate) fn visit_class_with_prefix(lam: &Partition, prefix: &[usize], visit: &mut dyn FnMut(&[u8])) {
    let d = lam.degree();
    let mut remaining = multiplicity_table(lam);
    let mut images: Vec<u8> = (0..d as u8).collect();
    let mut used = vec![false; d];
    if d > 0 {
        let len = prefix.len();
        debug_assert!(len >= 1 && prefix[0] == 1 && remaining[len] > 0);
        remaining[len] -= 1;
        for i in 0..len {
            used[prefix[i] - 1] = true;
            images[prefix[i] - 1] = (prefix[(i + 1) % len] - 1) as u8;
        }
    }
    let mut walker = ClassWalker { d, images, used, remaining, visit };
    walker.run();
}

/// Visits every permutation of cycle type `lam` exactly once, as 0-based images.
pub(crate) fn visit_class(lam: &Partition, visit: &mut dyn FnMut(&[u8])) {
    let d = lam.degree();
    let mut walker = ClassWalker {
        d,
        images: (0..d as u8).collect(),
        used: vec![false; d],
        remaining: multiplicity_table(lam),
        visit,
    };
    walker.run();
}

/// Streams the conjugacy class of type `lam`, one prefix chunk at a time.
pub fn class_enumerate(lam: &Partition) -> impl Iterator<Item = Perm> + '_ {
    class_prefixes(lam).into_iter().flat_map(move |prefix| {
        let mut chunk = Vec::new();
        visit_class_with_prefix(lam, &prefix, &mut |img| chunk.push(Perm::from_raw(img.to_vec())));
        chunk
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partition::{enumerate_partitions, factorial};
    use rand::seq::SliceRandom;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use std::collections::HashSet;

    fn cyc(d: usize, s: &str) -> Perm {
        Perm::parse(s, Some(d)).unwrap()
    }

    fn random_perm(d: usize, rng: &mut ChaCha8Rng) -> Perm {
        let mut v: Vec<usize> = (1..=d).collect();
        v.shuffle(rng);
        Perm::from_images(&v).unwrap()
    }

    #[test]
    fn composition_convention() {
        let p = cyc(3, "(1 2)");
        let q = cyc(3, "(2 3)");
        assert_eq!(p.compose(&q).unwrap(), cyc(3, "(1 2 3)"));
        let id = Perm::identity(3);
        assert_eq!(id.compose(&p).unwrap(), p);
        assert!(matches!(p.compose(&Perm::identity(4)), Err(Error::DegreeMismatch { .. })));
    }

    #[test]
    fn inverse_is_group_inverse() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..100 {
            let d = 1 + (rand::Rng::gen_range(&mut rng, 0..10));
            let p = random_perm(d, &mut rng);
            assert!(p.compose(&p.inverse()).unwrap().is_identity());
            assert!(p.inverse().compose(&p).unwrap().is_identity());
        }
    }

    #[test]
    fn cycle_type_examples() {
        assert_eq!(Perm::identity(5).cycle_type().to_string(), "1,1,1,1,1");
        assert_eq!(Perm::parse("2 1 4 3", None).unwrap().cycle_type().to_string(), "2,2");
        assert_eq!(cyc(5, "(1 2 3 4 5)").cycle_type().to_string(), "5");
    }

    #[test]
    fn absolute_length_examples() {
        assert_eq!(Perm::identity(6).absolute_length(), 0);
        assert_eq!(Perm::long_cycle(6).absolute_length(), 5);
        assert_eq!(cyc(7, "(1 2 3)(4 5)(6 7)").absolute_length(), 4);
    }

    #[test]
    fn orbit_examples() {
        assert_eq!(orbits(3, &[]).unwrap().to_string(), "{{1},{2},{3}}");
        let gens = [cyc(5, "(1 2)"), cyc(5, "(3 4)")];
        assert_eq!(orbits(5, &gens).unwrap().to_string(), "{{1,2},{3,4},{5}}");
        let gens = [cyc(3, "(1 2)"), cyc(3, "(2 3)")];
        assert_eq!(orbits(3, &gens).unwrap().len(), 1);
        assert!(orbits(4, &gens).is_err());
    }

    #[test]
    fn parse_and_display() {
        assert_eq!(cyc(4, "(1 2)(3 4)").to_string(), "(1 2)(3 4)");
        assert_eq!(Perm::identity(3).to_string(), "()");
        assert_eq!(Perm::parse("()", Some(3)).unwrap(), Perm::identity(3));
        assert_eq!(Perm::parse("2 1 4 3 5", None).unwrap(), cyc(5, "(1 2)(3 4)"));
        assert_eq!(cyc(3, "(3 1 2)").to_string(), "(1 2 3)");
        assert!(Perm::parse("(1 2)(2 3)", Some(3)).is_err());
        assert!(Perm::parse("(1 5)", Some(3)).is_err());
        assert!(Perm::parse("1 1 2", None).is_err());
        assert!(Perm::parse("(1 2", None).is_err());
    }

    #[test]
    fn class_enumeration_examples() {
        let p = |s: &str| s.parse::<Partition>().unwrap();
        assert_eq!(class_enumerate(&p("2,1")).count(), 3);
        assert_eq!(class_enumerate(&p("3")).count(), 2);
        let ids: Vec<Perm> = class_enumerate(&Partition::ones(4)).collect();
        assert_eq!(ids, vec![Perm::identity(4)]);
    }

    #[test]
    fn class_enumeration_is_exact() {
        for d in 1..=9 {
            let mut total = 0u128;
            for lam in enumerate_partitions(d) {
                let mut seen = HashSet::new();
                visit_class(&lam, &mut |img| {
                    let perm = Perm::from_raw(img.to_vec());
                    assert_eq!(perm.cycle_type(), lam);
                    if d <= 7 {
                        assert!(seen.insert(perm));
                    }
                });
                let mut count = 0u128;
                visit_class(&lam, &mut |_| count += 1);
                assert_eq!(count * lam.centralizer_order(), factorial(d), "{lam}");
                total += count;
            }
            assert_eq!(total, factorial(d));
        }
    }

    #[test]
    fn prefixes_split_the_class() {
        for d in 1..=7 {
            for lam in enumerate_partitions(d) {
                let streamed: Vec<Perm> = class_enumerate(&lam).collect();
                let mut direct = Vec::new();
                visit_class(&lam, &mut |img| direct.push(Perm::from_raw(img.to_vec())));
                let a: HashSet<_> = streamed.iter().cloned().collect();
                let b: HashSet<_> = direct.into_iter().collect();
                assert_eq!(streamed.len(), a.len());
                assert_eq!(a, b);
            }
        }
    }

    #[test]
    fn canonical_representative_round_trip() {
        let p = |s: &str| s.parse::<Partition>().unwrap();
        assert_eq!(canonical_representative(&p("3,2")), cyc(5, "(1 2 3)(4 5)"));
        assert!(canonical_representative(&Partition::ones(6)).is_identity());
        for d in 0..=12 {
            for lam in enumerate_partitions(d) {
                let rep = canonical_representative(&lam);
                assert_eq!(rep.cycle_type(), lam);
                assert_eq!(rep.absolute_length(), lam.absolute_length());
            }
        }
    }

    #[test]
    fn random_invariants() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..500 {
            let d = rand::Rng::gen_range(&mut rng, 1..=10);
            let p = random_perm(d, &mut rng);
            let q = random_perm(d, &mut rng);
            let pq = p.compose(&q).unwrap();
            assert!(pq.absolute_length() <= p.absolute_length() + q.absolute_length());
            let c = p.conjugate_by(&q).unwrap();
            assert_eq!(c.absolute_length(), p.absolute_length());
            assert_eq!(c, q.compose(&p).unwrap().compose(&q.inverse()).unwrap());
            let orb = orbits(d, std::slice::from_ref(&p)).unwrap();
            assert_eq!(orb.len(), d - p.absolute_length());
        }
    }

    #[test]
    fn restrict_and_extend() {
        let p = cyc(5, "(1 2)(3 4 5)");
        assert_eq!(p.restrict(&[3, 4, 5]).unwrap(), cyc(5, "(3 4 5)"));
        assert!(p.restrict(&[1, 3]).is_err());
        assert_eq!(p.extend(6).unwrap().to_string(), "(1 2)(3 4 5)");
        assert_eq!(p.extend(6).unwrap().degree(), 6);
        assert!(p.extend(4).is_err());
    }
}
