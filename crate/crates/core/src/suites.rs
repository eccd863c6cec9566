//! Randomized and exhaustive contract suites, runnable from the CLI.
//!
//! Trial `i` at degree `d` draws from `suite_rng(seed, stream)` with a stream
//! index built from the suite, `d` and `i`, so results do not depend on how
//! trials are scheduled across threads.

use rayon::prelude::*;
use serde::Serialize;

use crate::cover::{component_signature, local_conditions, realize, BranchTuple};
use crate::error::Result;
use crate::monoid::{commutation_check, is_good, make_good, multiply, ore_witness_1, ore_witness_2, stabilize};
use crate::perm::Perm;
use crate::sampling::{random_branch_tuple, random_ore_triple, random_signature, suite_rng};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteOutcome {
    pub suite: String,
    pub degree: usize,
    pub trials: usize,
    pub failures: usize,
    /// First failing input, if any.
    pub witness: Option<String>,
}

impl SuiteOutcome {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

fn stream(suite: u64, d: usize, trial: usize) -> u64 {
    (suite << 56) ^ ((d as u64) << 40) ^ trial as u64
}

fn run<F>(name: &str, suite: u64, seed: u64, d: usize, trials: usize, check: F) -> SuiteOutcome
where
    F: Fn(&mut crate::sampling::SuiteRng) -> Result<Option<String>> + Sync,
{
    let results: Vec<Option<String>> = (0..trials)
        .into_par_iter()
        .map(|i| {
            let mut rng = suite_rng(seed, stream(suite, d, i));
            match check(&mut rng) {
                Ok(w) => w,
                Err(e) => Some(format!("error: {e}")),
            }
        })
        .collect();
    let failures = results.iter().filter(|r| r.is_some()).count();
    let witness = results.into_iter().flatten().next();
    SuiteOutcome { suite: name.into(), degree: d, trials, failures, witness }
}

/// `multiply(a, b) == component_signature(realize(a) ++ realize(b))`.
pub fn monoid_oracle(d: usize, trials: usize, seed: u64) -> SuiteOutcome {
    run("monoid-oracle", 1, seed, d, trials, |rng| {
        let a = random_signature(d, 3, rng);
        let b = random_signature(d, 3, rng);
        let product = multiply(&a, &b)?;
        let glued = component_signature(&realize(&a).concat(&realize(&b))?)?;
        Ok((product != glued).then(|| format!("a={a} b={b}: {product} vs {glued}")))
    })
}

/// `a · b == b · a^{ϖ(b)}`.
pub fn commutation(d: usize, trials: usize, seed: u64) -> SuiteOutcome {
    run("commutation", 2, seed, d, trials, |rng| {
        let a = random_signature(d, 3, rng);
        let b = random_signature(d, 3, rng);
        Ok((!commutation_check(&a, &b)?).then(|| format!("a={a} b={b}")))
    })
}

/// Both Ore witnesses: `s·u == t·v` for the first, and `s·u == t·u` whenever
/// `r·s == r·t` for the second.
pub fn ore(d: usize, trials: usize, seed: u64) -> SuiteOutcome {
    run("ore", 3, seed, d, trials, |rng| {
        let s = random_signature(d, 3, rng);
        let t = random_signature(d, 3, rng);
        let (u, v) = ore_witness_1(&s, &t)?;
        if multiply(&s, &u)? != multiply(&t, &v)? {
            return Ok(Some(format!("first witness: s={s} t={t}")));
        }
        let (r, s, t) = random_ore_triple(d, 3, rng);
        let u = ore_witness_2(&r, &s, &t)?;
        if multiply(&s, &u)? != multiply(&t, &u)? {
            return Ok(Some(format!("second witness: r={r} s={s} t={t}")));
        }
        Ok(None)
    })
}

/// `make_good(s).result` is good and equals `stabilize(s·v, 2g)·w`.
pub fn cofinality(d: usize, trials: usize, seed: u64) -> SuiteOutcome {
    run("good", 6, seed, d, trials, |rng| {
        let s = random_signature(d, 3, rng);
        let w = make_good(&s)?;
        let sv = multiply(&s, &w.v)?;
        let rebuilt = match &w.w {
            Some(w2) => multiply(&stabilize(&sv, w2.degree())?, w2)?,
            None => sv,
        };
        Ok((!is_good(&w.result) || rebuilt != w.result).then(|| format!("s={s} -> {}", w.result)))
    })
}

/// Agreement of the two locality criteria and integrality of genus on
/// random tuples.
pub fn local_lemma_random(d: usize, trials: usize, seed: u64) -> SuiteOutcome {
    run("local-lemma", 4, seed, d, trials, |rng| {
        let t = random_branch_tuple(d, 6, rng);
        check_local(&t)
    })
}

fn check_local(t: &BranchTuple) -> Result<Option<String>> {
    let c = local_conditions(t)?;
    if c.additive_over_components() != c.additive_boundary() {
        return Ok(Some(format!("{t}: {c:?}")));
    }
    if c.total_length < c.boundary_length {
        return Ok(Some(format!("{t}: subadditivity fails")));
    }
    Ok(None)
}

/// Every tuple of at most `max_len` non-identity entries of `S_d`.
pub fn local_lemma_exhaustive(d: usize, max_len: usize) -> SuiteOutcome {
    let elements: Vec<Perm> = all_perms(d).into_iter().filter(|p| !p.is_identity()).collect();
    let mut tuples = vec![Vec::<Perm>::new()];
    let mut frontier = vec![Vec::<Perm>::new()];
    for _ in 0..max_len {
        let next: Vec<Vec<Perm>> = frontier
            .iter()
            .flat_map(|prefix| {
                elements.iter().map(move |e| {
                    let mut t = prefix.clone();
                    t.push(e.clone());
                    t
                })
            })
            .collect();
        tuples.extend(next.iter().cloned());
        frontier = next;
    }
    let results: Vec<Option<String>> = tuples
        .into_par_iter()
        .map(|branches| {
            let t = BranchTuple::new(d, branches).expect("non-identity entries");
            check_local(&t).unwrap_or_else(|e| Some(format!("error: {e}")))
        })
        .collect();
    let trials = results.len();
    let failures = results.iter().filter(|r| r.is_some()).count();
    let witness = results.into_iter().flatten().next();
    SuiteOutcome { suite: "local-lemma-exhaustive".into(), degree: d, trials, failures, witness }
}

/// Braid moves on random tuples preserve the component signature.
pub fn hurwitz_moves(d: usize, trials: usize, seed: u64) -> SuiteOutcome {
    run("hurwitz-moves", 5, seed, d, trials, |rng| {
        let t = random_branch_tuple(d, 6, rng);
        if t.len() < 2 {
            return Ok(None);
        }
        let before = component_signature(&t)?;
        for i in 0..t.len() - 1 {
            let moved = t.hurwitz_move(i)?;
            if component_signature(&moved)? != before {
                return Ok(Some(format!("{t} at {i}")));
            }
        }
        Ok(None)
    })
}

/// All permutations of `S_d` in lexicographic one-line order.
pub fn all_perms(d: usize) -> Vec<Perm> {
    let mut out = Vec::new();
    let mut current: Vec<usize> = (1..=d).collect();
    loop {
        out.push(Perm::from_images(&current).expect("permutation"));
        // next lexicographic permutation
        let Some(i) = (0..d.saturating_sub(1)).rev().find(|&i| current[i] < current[i + 1]) else {
            return out;
        };
        let j = (i + 1..d).rev().find(|&j| current[j] > current[i]).expect("exists");
        current.swap(i, j);
        current[i + 1..].reverse();
    }
}
