//! The monoid of component signatures under gluing of squares.
//!
//! `a · b` places the branch points of `a` before those of `b`: the boundary
//! monodromy of the product crosses `a` first, so it is `b.pi ∘ a.pi` in the
//! composition convention of [`crate::perm`].

use serde::Serialize;

use crate::cover::{cycles_per_block, ComponentSignature};
use crate::error::{Error, Result};
use crate::perm::Perm;
use crate::setpart::SetPartition;

/// How the genus of a glued block is computed.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum GenusRule {
    /// From Euler characteristics: gluing along one interval per sheet gives
    /// `χ(S) = Σ χ(T) + Σ χ(T') - |S|`, with `χ = 2 - 2g - #boundary circles`.
    #[default]
    EulerCharacteristic,
    /// `g(S) - 1 = |S| + Σ (g(T) - 1) + Σ (g'(T') - 1)`, without boundary
    /// terms. Disagrees with the realization oracle (two disks glued to an
    /// annulus); kept for comparison only.
    BoundaryFree,
}

fn check_degree(a: &ComponentSignature, b: &ComponentSignature) -> Result<()> {
    if a.degree() != b.degree() {
        return Err(Error::DegreeMismatch { left: a.degree(), right: b.degree() });
    }
    Ok(())
}

/// `a · b` with the default genus rule.
pub fn multiply(a: &ComponentSignature, b: &ComponentSignature) -> Result<ComponentSignature> {
    multiply_with(a, b, GenusRule::EulerCharacteristic)
}

/// `b · a`: the opposite product order, crossing `b` first.
pub fn multiply_opposite(a: &ComponentSignature, b: &ComponentSignature) -> Result<ComponentSignature> {
    multiply(b, a)
}

pub fn multiply_with(a: &ComponentSignature, b: &ComponentSignature, rule: GenusRule) -> Result<ComponentSignature> {
    check_degree(a, b)?;
    let pi = b.pi().compose(a.pi())?;
    let join = a.blocks().join(b.blocks())?;
    let labels = join.labels();

    let n = join.len();
    // per join block: Σ b(T) + Σ b'(T'), and Σ (g - 1) over both sides
    let mut boundary_in = vec![0i64; n];
    let mut genus_shift = vec![0i64; n];
    for side in [a, b] {
        let counts = side.boundary_counts();
        for ((block, &g), &c) in side.blocks().blocks().iter().zip(side.genus()).zip(&counts) {
            let s = labels[block[0] - 1];
            boundary_in[s] += c as i64;
            genus_shift[s] += g as i64 - 1;
        }
    }
    let boundary_out = cycles_per_block(&pi, &join);

    let mut genus = Vec::with_capacity(n);
    for (s, block) in join.blocks().iter().enumerate() {
        let size = block.len() as i64;
        let g = match rule {
            GenusRule::EulerCharacteristic => {
                let excess = size + boundary_in[s] - boundary_out[s] as i64;
                if excess % 2 != 0 {
                    return Err(Error::NonIntegralGenus { block: block.clone() });
                }
                1 + excess / 2 + genus_shift[s]
            }
            GenusRule::BoundaryFree => 1 + size + genus_shift[s],
        };
        if g < 0 {
            return Err(Error::NegativeGenus { block: block.clone() });
        }
        genus.push(g as u32);
    }
    ComponentSignature::new(pi, join, genus)
}

/// `a^τ`: change of trivialization, relabelling sheet `x` as `τ(x)`.
pub fn conjugate_component(a: &ComponentSignature, tau: &Perm) -> Result<ComponentSignature> {
    if a.degree() != tau.degree() {
        return Err(Error::DegreeMismatch { left: a.degree(), right: tau.degree() });
    }
    let pi = a.pi().conjugate_by(tau)?;
    let pairs = a
        .blocks()
        .blocks()
        .iter()
        .zip(a.genus())
        .map(|(block, &g)| (block.iter().map(|&x| tau.apply(x)).collect(), g))
        .collect();
    ComponentSignature::from_pairs(pi, pairs)
}

/// Checks `a · b == b · a^{ϖ(b)}` where `ϖ(b)` is the boundary monodromy of `b`.
pub fn commutation_check(a: &ComponentSignature, b: &ComponentSignature) -> Result<bool> {
    check_degree(a, b)?;
    let lhs = multiply(a, b)?;
    let rhs = multiply(b, &conjugate_component(a, b.pi())?)?;
    Ok(lhs == rhs)
}

/// Adds trivial sheets `d+1, …, d'`, each a separate disk without branching.
pub fn stabilize(a: &ComponentSignature, new_degree: usize) -> Result<ComponentSignature> {
    let d = a.degree();
    if new_degree < d {
        return Err(Error::StabilizeDown { from: d, to: new_degree });
    }
    let pi = a.pi().extend(new_degree)?;
    let mut pairs: Vec<(Vec<usize>, u32)> =
        a.blocks().blocks().iter().cloned().zip(a.genus().iter().copied()).collect();
    pairs.extend((d + 1..=new_degree).map(|x| (vec![x], 0)));
    ComponentSignature::from_pairs(pi, pairs)
}

/// Connected, boundary monodromy a `d`-cycle, and `d > 2g - 1`.
pub fn is_good(a: &ComponentSignature) -> bool {
    let d = a.degree();
    if d == 0 || a.pi().num_cycles() != 1 {
        return false;
    }
    let g = a.genus()[0] as i64;
    d as i64 > 2 * g - 1
}

/// Witnesses that every component multiplies into a good one.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GoodWitness {
    /// Same degree as the input; `s · v` has a `d`-cycle as boundary monodromy.
    pub v: ComponentSignature,
    /// Disks of degree `2g` with boundary monodromy `(d d+1 … 2g)`, needed
    /// only when `s · v` has `d ≤ 2g - 1`.
    pub w: Option<ComponentSignature>,
    pub result: ComponentSignature,
}

/// Builds `v` (and `w` when needed) with `stabilize(s · v, 2g) · w` good.
///
/// `v` is the union of disks whose monodromy turns `s.pi` into `(1 2 … d)`;
/// if `s` is already good, `v` is the unit.
pub fn make_good(s: &ComponentSignature) -> Result<GoodWitness> {
    let d = s.degree();
    if is_good(s) {
        return Ok(GoodWitness { v: ComponentSignature::unit(d), w: None, result: s.clone() });
    }
    let target = Perm::long_cycle(d);
    let v = ComponentSignature::disks(target.compose(&s.pi().inverse())?);
    let sv = multiply(s, &v)?;
    debug_assert_eq!(sv.pi(), &target);
    let g = sv.genus()[0] as usize;
    if is_good(&sv) {
        return Ok(GoodWitness { v, w: None, result: sv });
    }
    let big = 2 * g;
    let w = ComponentSignature::disks(Perm::from_cycles(big, &[(d..=big).collect()])?);
    let result = multiply(&stabilize(&sv, big)?, &w)?;
    Ok(GoodWitness { v, w: Some(w), result })
}

/// First Ore condition: `(u, v)` with `s · u == t · v`.
pub fn ore_witness_1(
    s: &ComponentSignature,
    t: &ComponentSignature,
) -> Result<(ComponentSignature, ComponentSignature)> {
    check_degree(s, t)?;
    Ok((t.clone(), conjugate_component(s, t.pi())?))
}

/// Second Ore condition: given `r · s == r · t`, a connected `u` with
/// `s · u == t · u`. The witness is the single disk with monodromy `(1 2 … d)`.
pub fn ore_witness_2(
    r: &ComponentSignature,
    s: &ComponentSignature,
    t: &ComponentSignature,
) -> Result<ComponentSignature> {
    check_degree(r, s)?;
    check_degree(s, t)?;
    if multiply(r, s)? != multiply(r, t)? {
        return Err(Error::Precondition("rs ≠ rt".into()));
    }
    Ok(connected_disk(s.degree()))
}

/// The disk `((1 2 … d), {{1, …, d}}, 0)`.
pub fn connected_disk(d: usize) -> ComponentSignature {
    ComponentSignature::new(Perm::long_cycle(d), SetPartition::indiscrete(d), vec![0; d.min(1)])
        .expect("a d-cycle on one block")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cover::{component_signature, realize};

    fn sig(d: usize, pi: &str, blocks: Vec<Vec<usize>>, g: Vec<u32>) -> ComponentSignature {
        ComponentSignature::new(Perm::parse(pi, Some(d)).unwrap(), SetPartition::new(d, blocks).unwrap(), g).unwrap()
    }

    fn oracle(a: &ComponentSignature, b: &ComponentSignature) -> ComponentSignature {
        component_signature(&realize(a).concat(&realize(b)).unwrap()).unwrap()
    }

    #[test]
    fn multiply_examples() {
        let a = sig(3, "(1 3)", vec![vec![1, 3], vec![2]], vec![2, 0]);
        assert_eq!(multiply(&a, &ComponentSignature::unit(3)).unwrap(), a);
        assert_eq!(multiply(&ComponentSignature::unit(3), &a).unwrap(), a);

        let disk = sig(2, "(1 2)", vec![vec![1, 2]], vec![0]);
        let annulus = sig(2, "()", vec![vec![1, 2]], vec![0]);
        assert_eq!(multiply(&disk, &disk).unwrap(), annulus);
        assert_eq!(oracle(&disk, &disk), annulus);

        let a = sig(3, "(1 2 3)", vec![vec![1, 2, 3]], vec![0]);
        let b = sig(3, "(1 2)", vec![vec![1, 2], vec![3]], vec![0, 0]);
        let expected = sig(3, "(2 3)", vec![vec![1, 2, 3]], vec![0]);
        assert_eq!(multiply(&a, &b).unwrap(), expected);
        assert_eq!(oracle(&a, &b), expected);

        assert!(multiply(&a, &disk).is_err());
    }

    #[test]
    fn boundary_free_rule_differs_on_annulus() {
        let disk = sig(2, "(1 2)", vec![vec![1, 2]], vec![0]);
        let glued = multiply_with(&disk, &disk, GenusRule::BoundaryFree).unwrap();
        assert_eq!(glued.genus(), &[1]);
        assert_eq!(multiply(&disk, &disk).unwrap().genus(), &[0]);
        // agreement when one side is the unit
        let u = ComponentSignature::unit(2);
        assert_eq!(multiply_with(&disk, &u, GenusRule::BoundaryFree).unwrap(), disk);
    }

    #[test]
    fn opposite_order() {
        let a = sig(3, "(1 2)", vec![vec![1, 2], vec![3]], vec![0, 0]);
        let b = sig(3, "(2 3)", vec![vec![1], vec![2, 3]], vec![0, 0]);
        assert_eq!(multiply(&a, &b).unwrap().pi(), &Perm::parse("(1 3 2)", Some(3)).unwrap());
        assert_eq!(multiply_opposite(&a, &b).unwrap().pi(), &Perm::parse("(1 2 3)", Some(3)).unwrap());
    }

    #[test]
    fn conjugation_examples() {
        let a = sig(3, "(1 2 3)", vec![vec![1, 2, 3]], vec![0]);
        assert_eq!(conjugate_component(&a, &Perm::identity(3)).unwrap(), a);
        let tau = Perm::parse("(1 3)", Some(3)).unwrap();
        assert_eq!(conjugate_component(&a, &tau).unwrap(), sig(3, "(1 3 2)", vec![vec![1, 2, 3]], vec![0]));
        let b = sig(4, "(1 2)", vec![vec![1, 2], vec![3], vec![4]], vec![2, 0, 0]);
        let tau = Perm::parse("(2 4)", Some(4)).unwrap();
        let c = conjugate_component(&b, &tau).unwrap();
        assert_eq!(c.blocks().to_string(), "{{1,4},{2},{3}}");
        assert_eq!(c.genus(), &[2, 0, 0]);
    }

    #[test]
    fn commutation_examples() {
        let u = ComponentSignature::unit(4);
        assert!(commutation_check(&u, &u).unwrap());
        let disk = sig(2, "(1 2)", vec![vec![1, 2]], vec![0]);
        assert!(commutation_check(&disk, &disk).unwrap());
    }

    #[test]
    fn stabilize_examples() {
        let a = sig(3, "(1 2 3)", vec![vec![1, 2, 3]], vec![1]);
        assert_eq!(stabilize(&a, 3).unwrap(), a);
        assert_eq!(stabilize(&ComponentSignature::unit(2), 5).unwrap(), ComponentSignature::unit(5));
        let s = stabilize(&a, 5).unwrap();
        assert_eq!(s.blocks().to_string(), "{{1,2,3},{4},{5}}");
        assert!(!is_good(&s));
        assert!(stabilize(&a, 2).is_err());
    }

    #[test]
    fn good_examples() {
        assert!(is_good(&sig(5, "(1 2 3 4 5)", vec![vec![1, 2, 3, 4, 5]], vec![2])));
        assert!(!is_good(&sig(3, "(1 2 3)", vec![vec![1, 2, 3]], vec![2])));
        assert!(!is_good(&sig(3, "()", vec![vec![1, 2, 3]], vec![0])));
        assert!(!is_good(&ComponentSignature::unit(2)));
        assert!(is_good(&ComponentSignature::unit(1)));
    }

    #[test]
    fn make_good_examples() {
        let w = make_good(&ComponentSignature::unit(2)).unwrap();
        let disk = sig(2, "(1 2)", vec![vec![1, 2]], vec![0]);
        assert_eq!(w.v, disk);
        assert_eq!(w.result, disk);
        assert!(w.w.is_none());

        let good = sig(5, "(1 3 2 4 5)", vec![vec![1, 2, 3, 4, 5]], vec![1]);
        let w = make_good(&good).unwrap();
        assert_eq!(w.v, ComponentSignature::unit(5));
        assert_eq!(w.result, good);

        // genus 2 in degree 3 needs the extra disks up to degree 4
        let s = sig(3, "(1 2 3)", vec![vec![1, 2, 3]], vec![2]);
        let w = make_good(&s).unwrap();
        let big = w.w.clone().unwrap();
        assert_eq!(big.degree(), 4);
        assert_eq!(big.pi(), &Perm::parse("(3 4)", Some(4)).unwrap());
        assert!(is_good(&w.result));
        assert_eq!(w.result.genus(), &[2]);
        let rebuilt = multiply(&stabilize(&multiply(&s, &w.v).unwrap(), 4).unwrap(), &big).unwrap();
        assert_eq!(rebuilt, w.result);
    }

    #[test]
    fn ore_examples() {
        let r = sig(4, "(1 2 3 4)", vec![vec![1, 2, 3, 4]], vec![0]);
        let s = sig(4, "()", vec![vec![1, 2], vec![3, 4]], vec![1, 0]);
        let t = sig(4, "()", vec![vec![1, 2, 3, 4]], vec![0]);
        let rs = multiply(&r, &s).unwrap();
        assert_eq!(rs, multiply(&r, &t).unwrap());
        assert_eq!(rs.genus(), &[3]);
        let u = ore_witness_2(&r, &s, &t).unwrap();
        assert_eq!(u, r);
        let su = multiply(&s, &u).unwrap();
        assert_eq!(su, multiply(&t, &u).unwrap());
        assert_eq!(su, sig(4, "(1 2 3 4)", vec![vec![1, 2, 3, 4]], vec![3]));

        assert!(matches!(ore_witness_2(&r, &s, &r), Err(Error::Precondition(_))));

        let (u, v) = ore_witness_1(&s, &s).unwrap();
        assert_eq!(multiply(&s, &u).unwrap(), multiply(&s, &v).unwrap());
        let unit = ComponentSignature::unit(4);
        let (u, v) = ore_witness_1(&unit, &t).unwrap();
        assert_eq!(u, t);
        assert_eq!(v, unit);
    }
}
