//! Seeded random inputs for the randomized property suites.
//!
//! Every suite derives its generator from a 64-bit base seed and a stream
//! index with [`derive_seed`] (one SplitMix64 step of `base ^ stream·φ`), so
//! a run is reproduced exactly by its base seed regardless of thread count.

use rand::seq::SliceRandom;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::cover::{BranchTuple, ComponentSignature};
use crate::perm::Perm;
use crate::setpart::SetPartition;

pub type SuiteRng = ChaCha8Rng;

const GOLDEN: u64 = 0x9E37_79B9_7F4A_7C15;

pub fn derive_seed(base: u64, stream: u64) -> u64 {
    let mut z = base ^ stream.wrapping_mul(GOLDEN);
    z = z.wrapping_add(GOLDEN);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

pub fn suite_rng(base: u64, stream: u64) -> SuiteRng {
    ChaCha8Rng::seed_from_u64(derive_seed(base, stream))
}

pub fn random_perm<R: Rng>(d: usize, rng: &mut R) -> Perm {
    let mut images: Vec<usize> = (1..=d).collect();
    images.shuffle(rng);
    Perm::from_images(&images).expect("shuffle is a bijection")
}

/// A random cycle of random length `≥ 2` on random points.
pub fn random_cycle<R: Rng>(d: usize, rng: &mut R) -> Perm {
    assert!(d >= 2);
    let len = rng.gen_range(2..=d);
    let mut points: Vec<usize> = (1..=d).collect();
    points.shuffle(rng);
    points.truncate(len);
    Perm::from_cycles(d, &[points]).expect("distinct points")
}

/// Non-identity permutation: half the time a single cycle (often a
/// transposition), otherwise uniform among non-identity elements.
pub fn random_branch<R: Rng>(d: usize, rng: &mut R) -> Perm {
    assert!(d >= 2);
    if rng.gen_bool(0.5) {
        return random_cycle(d, rng);
    }
    loop {
        let p = random_perm(d, rng);
        if !p.is_identity() {
            return p;
        }
    }
}

pub fn random_branch_tuple<R: Rng>(d: usize, max_len: usize, rng: &mut R) -> BranchTuple {
    if d < 2 {
        return BranchTuple::empty(d);
    }
    let len = rng.gen_range(0..=max_len);
    let branches = (0..len).map(|_| random_branch(d, rng)).collect();
    BranchTuple::new(d, branches).expect("non-identity entries")
}

/// Random `(π, F, g)`: uniform `π`, blocks formed by randomly merging its
/// cycles, genus uniform in `0..=max_genus` on non-singleton blocks.
pub fn random_signature<R: Rng>(d: usize, max_genus: u32, rng: &mut R) -> ComponentSignature {
    let pi = random_perm(d, rng);
    random_signature_with_pi(pi, max_genus, rng)
}

pub fn random_signature_with_pi<R: Rng>(pi: Perm, max_genus: u32, rng: &mut R) -> ComponentSignature {
    let cycles = pi.cycles();
    let n = cycles.len();
    let mut labels = vec![0usize; pi.degree()];
    for c in &cycles {
        let l = rng.gen_range(0..n);
        for &x in c {
            labels[x - 1] = l;
        }
    }
    let blocks = SetPartition::from_labels(&labels);
    let genus = blocks.blocks().iter().map(|b| if b.len() > 1 { rng.gen_range(0..=max_genus) } else { 0 }).collect();
    ComponentSignature::new(pi, blocks, genus).expect("blocks are unions of cycles")
}

/// A connected component of degree `d`.
pub fn random_connected<R: Rng>(d: usize, max_genus: u32, rng: &mut R) -> ComponentSignature {
    let pi = random_perm(d, rng);
    let g = if d > 1 { rng.gen_range(0..=max_genus) } else { 0 };
    ComponentSignature::new(pi, SetPartition::indiscrete(d), vec![g]).expect("one block")
}

/// `(r, s, t)` with `r · s == r · t`: `r` connected, `t` sharing the boundary
/// monodromy and Euler characteristic of `s` but with its own blocks and genera.
pub fn random_ore_triple<R: Rng>(
    d: usize,
    max_genus: u32,
    rng: &mut R,
) -> (ComponentSignature, ComponentSignature, ComponentSignature) {
    let r = random_connected(d, max_genus, rng);
    let s = random_signature(d, max_genus, rng);
    let chi = s.euler_characteristic();
    for _ in 0..64 {
        let shape = random_signature_with_pi(s.pi().clone(), 0, rng);
        let base: i64 = shape.boundary_counts().iter().map(|&b| 2 - b as i64).sum();
        let excess = base - chi;
        if excess < 0 || excess % 2 != 0 {
            continue;
        }
        let big: Vec<usize> =
            shape.blocks().blocks().iter().enumerate().filter(|(_, b)| b.len() > 1).map(|(i, _)| i).collect();
        if big.is_empty() && excess > 0 {
            continue;
        }
        let mut genus = vec![0u32; shape.blocks().len()];
        for _ in 0..excess / 2 {
            genus[*big.choose(rng).expect("nonempty")] += 1;
        }
        let t = ComponentSignature::new(s.pi().clone(), shape.blocks().clone(), genus).expect("valid");
        return (r, s, t);
    }
    let t = s.clone();
    (r, s, t)
}
