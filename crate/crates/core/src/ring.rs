//! Rational cohomology of the degree-`d` branched-cover space in the cell
//! basis `{t_λ}`, `|t_λ| = 2 N(λ)`.
//!
//! `t_μ · t_ν = Σ c_{μν}^λ t_λ` over `λ` with `N(λ) = N(μ) + N(ν)`, where
//! `c_{μν}^λ` is the number of factorizations of a fixed permutation of type
//! `λ` into types `μ` and `ν`. Classes use the crude fundamental class, so no
//! isotropy orders enter the structure constants.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::classalg::{ClassAlgebra, CountMethod, FactorizationKey};
use crate::error::{Error, Result};
use crate::partition::{enumerate_partitions, Partition};

/// A finite rational combination of the classes `t_λ`, `λ ⊢ d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RingElement {
    d: usize,
    coeffs: BTreeMap<Partition, BigRational>,
}

impl RingElement {
    pub fn zero(d: usize) -> Self {
        RingElement { d, coeffs: BTreeMap::new() }
    }

    /// `t_{(1^d)}`.
    pub fn one(d: usize) -> Self {
        RingElement::basis(Partition::ones(d)).expect("valid")
    }

    pub fn basis(lam: Partition) -> Result<Self> {
        Ok(RingElement::zero(lam.degree()).with_term(lam, BigRational::one()))
    }

    /// `t_k = t_{(k, 1^{d-k})}`.
    pub fn generator(k: usize, d: usize) -> Result<Self> {
        if k < 2 {
            return Err(Error::GeneratorOutOfRange { k, d });
        }
        RingElement::basis(Partition::hook(k, d)?)
    }

    pub fn from_terms(d: usize, terms: impl IntoIterator<Item = (Partition, BigRational)>) -> Result<Self> {
        let mut out = RingElement::zero(d);
        for (lam, c) in terms {
            if lam.degree() != d {
                return Err(Error::DegreeMismatch { left: lam.degree(), right: d });
            }
            out.add_term(lam, c);
        }
        Ok(out)
    }

    fn with_term(mut self, lam: Partition, c: BigRational) -> Self {
        self.add_term(lam, c);
        self
    }

    fn add_term(&mut self, lam: Partition, c: BigRational) {
        let entry = self.coeffs.entry(lam).or_insert_with(BigRational::zero);
        *entry += c;
        if entry.is_zero() {
            self.coeffs.retain(|_, v| !v.is_zero());
        }
    }

    pub fn degree(&self) -> usize {
        self.d
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coefficient(&self, lam: &Partition) -> BigRational {
        self.coeffs.get(lam).cloned().unwrap_or_else(BigRational::zero)
    }

    /// Nonzero terms in reverse lexicographic order of the partitions.
    pub fn terms(&self) -> impl Iterator<Item = (&Partition, &BigRational)> {
        self.coeffs.iter().rev()
    }

    /// Cohomological degrees `2 N(λ)` present.
    pub fn gradings(&self) -> Vec<usize> {
        let mut g: Vec<usize> = self.coeffs.keys().map(|l| 2 * l.absolute_length()).collect();
        g.sort_unstable();
        g.dedup();
        g
    }

    pub fn is_homogeneous(&self) -> bool {
        self.gradings().len() <= 1
    }

    pub fn add(&self, other: &RingElement) -> Result<RingElement> {
        check_degree(self, other)?;
        let mut out = self.clone();
        for (lam, c) in &other.coeffs {
            out.add_term(lam.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn scale(&self, factor: &BigRational) -> RingElement {
        if factor.is_zero() {
            return RingElement::zero(self.d);
        }
        RingElement { d: self.d, coeffs: self.coeffs.iter().map(|(l, c)| (l.clone(), c * factor)).collect() }
    }

    /// Coordinates in the rescaled basis `u_λ = z_λ t_λ`, `z_λ` the isotropy
    /// order of the cell: the coefficient of `u_λ` is `c_λ / z_λ`.
    pub fn orbifold_view(&self) -> RingElement {
        RingElement {
            d: self.d,
            coeffs: self
                .coeffs
                .iter()
                .map(|(l, c)| (l.clone(), c / BigRational::from_integer(BigInt::from(l.centralizer_order()))))
                .collect(),
        }
    }
}

fn check_degree(x: &RingElement, y: &RingElement) -> Result<()> {
    if x.d != y.d {
        return Err(Error::DegreeMismatch { left: x.d, right: y.d });
    }
    Ok(())
}

impl fmt::Display for RingElement {
    /// `3·t_{3,1} + 2·t_{2,2}`; `0` for the zero element.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (lam, c)) in self.terms().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            if c.is_one() {
                write!(f, "t_{{{lam}}}")?;
            } else {
                write!(f, "{c}·t_{{{lam}}}")?;
            }
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    lam: Partition,
    c: String,
}

#[derive(Serialize, Deserialize)]
struct RingElementJson {
    d: usize,
    coeffs: Vec<TermJson>,
}

impl Serialize for RingElement {
    /// `{"d":4,"coeffs":[{"lam":"3,1","c":"3"},{"lam":"2,2","c":"2"}]}`, rationals as `p/q`.
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        RingElementJson {
            d: self.d,
            coeffs: self.terms().map(|(l, c)| TermJson { lam: l.clone(), c: c.to_string() }).collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for RingElement {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let raw = RingElementJson::deserialize(deserializer)?;
        let terms = raw
            .coeffs
            .into_iter()
            .map(|t| t.c.parse::<BigRational>().map(|c| (t.lam, c)).map_err(serde::de::Error::custom))
            .collect::<std::result::Result<Vec<_>, _>>()?;
        RingElement::from_terms(raw.d, terms).map_err(serde::de::Error::custom)
    }
}

// ---------------------------------------------------------------------------
// Cup product
// ---------------------------------------------------------------------------

/// Cup products backed by a class-algebra store and a counting route.
pub struct Ring<'a> {
    algebra: &'a ClassAlgebra,
    method: CountMethod,
}

impl<'a> Ring<'a> {
    pub fn new(algebra: &'a ClassAlgebra, method: CountMethod) -> Self {
        Ring { algebra, method }
    }

    pub fn method(&self) -> CountMethod {
        self.method
    }

    /// `t_μ · t_ν`.
    pub fn cup_basis(&self, mu: &Partition, nu: &Partition) -> Result<RingElement> {
        let d = mu.degree();
        if nu.degree() != d {
            return Err(Error::DegreeMismatch { left: d, right: nu.degree() });
        }
        let target = mu.absolute_length() + nu.absolute_length();
        let mut out = RingElement::zero(d);
        if target >= d.max(1) {
            return Ok(out);
        }
        for lam in enumerate_partitions(d).into_iter().filter(|l| l.absolute_length() == target) {
            let key = FactorizationKey::new(mu.clone(), nu.clone(), lam.clone())?;
            let c = self.algebra.count(&key, self.method)?;
            if c > 0 {
                out.add_term(lam, BigRational::from_integer(BigInt::from(c)));
            }
        }
        Ok(out)
    }

    /// Bilinear extension of [`Ring::cup_basis`].
    pub fn cup(&self, x: &RingElement, y: &RingElement) -> Result<RingElement> {
        check_degree(x, y)?;
        let mut out = RingElement::zero(x.d);
        for (mu, a) in &x.coeffs {
            for (nu, b) in &y.coeffs {
                let prod = self.cup_basis(mu, nu)?;
                let ab = a * b;
                for (lam, c) in prod.coeffs {
                    out.add_term(lam, c * &ab);
                }
            }
        }
        Ok(out)
    }

    /// Product of the hook generators `t_k` over the multiset `ks`, taken in
    /// descending order of `k`.
    pub fn monomial_expand(&self, ks: &[usize], d: usize) -> Result<RingElement> {
        let mut ks = ks.to_vec();
        ks.sort_unstable_by(|a, b| b.cmp(a));
        let mut acc = RingElement::one(d);
        for &k in &ks {
            acc = self.cup(&acc, &RingElement::generator(k, d)?)?;
        }
        Ok(acc)
    }

    /// In `t_μ t_ν`, the term `t_{μ ∪ ν}` has positive coefficient and every
    /// other term has strictly more parts equal to 1.
    pub fn leading_term_check(&self, mu: &Partition, nu: &Partition, d: usize) -> Result<LeadingTermReport> {
        let leading = mu.disjoint_union(nu, d)?;
        let prod = self.cup_basis(mu, nu)?;
        let leading_coefficient = prod.coefficient(&leading);
        let mut violations = Vec::new();
        if leading_coefficient <= BigRational::zero() {
            violations.push(format!("coefficient of t_{{{leading}}} is {leading_coefficient}"));
        }
        for (lam, c) in prod.terms() {
            if *lam != leading && lam.fixed_points() <= leading.fixed_points() {
                violations.push(format!("term {c}·t_{{{lam}}} has too few parts equal to 1"));
            }
        }
        Ok(LeadingTermReport {
            mu: mu.clone(),
            nu: nu.clone(),
            leading,
            leading_coefficient: leading_coefficient.to_string(),
            product: prod,
            violations,
        })
    }

    /// Monomials in the hook generators are linearly independent and as many
    /// as the Betti number, in each even degree `2m ≤ d`.
    pub fn verify_polynomial(&self, d: usize) -> Result<PolynomialReport> {
        let mut degrees = Vec::new();
        for m in 1..=d / 2 {
            let basis: Vec<Partition> =
                enumerate_partitions(d).into_iter().filter(|l| l.absolute_length() == m).collect();
            // monomials t_{k_1} ⋯ t_{k_r} with Σ (k_i - 1) = m  ↔  partitions of m
            let monomials: Vec<Vec<usize>> =
                enumerate_partitions(m).iter().map(|p| p.parts().iter().map(|&x| x + 1).collect()).collect();
            let mut rows = Vec::with_capacity(monomials.len());
            let mut expansions = Vec::with_capacity(monomials.len());
            for ks in &monomials {
                let e = self.monomial_expand(ks, d)?;
                rows.push(basis.iter().map(|l| e.coefficient(l)).collect::<Vec<_>>());
                expansions.push(e);
            }
            let r = rank(rows);
            let mut violations = Vec::new();
            if monomials.len() != basis.len() {
                violations.push(format!("{} monomials but {} cells", monomials.len(), basis.len()));
            }
            if r != monomials.len() {
                violations.push(format!("monomials span rank {r} of {}", monomials.len()));
            }
            degrees.push(DegreeReport {
                degree: 2 * m,
                betti: basis.len(),
                monomials,
                expansions,
                rank: r,
                violations,
            });
        }
        Ok(PolynomialReport { d, degrees })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct LeadingTermReport {
    pub mu: Partition,
    pub nu: Partition,
    pub leading: Partition,
    pub leading_coefficient: String,
    pub product: RingElement,
    pub violations: Vec<String>,
}

impl LeadingTermReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct DegreeReport {
    pub degree: usize,
    pub betti: usize,
    pub monomials: Vec<Vec<usize>>,
    pub expansions: Vec<RingElement>,
    pub rank: usize,
    pub violations: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct PolynomialReport {
    pub d: usize,
    pub degrees: Vec<DegreeReport>,
}

impl PolynomialReport {
    pub fn passed(&self) -> bool {
        self.degrees.iter().all(|r| r.violations.is_empty())
    }
}

/// Rank over `Q` by fraction-exact Gaussian elimination.
pub fn rank(mut rows: Vec<Vec<BigRational>>) -> usize {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    for col in 0..ncols {
        let Some(pivot) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(r, pivot);
        let pivot_row = rows[r].clone();
        for row in rows.iter_mut().skip(r + 1) {
            if row[col].is_zero() {
                continue;
            }
            let factor = &row[col] / &pivot_row[col];
            for (x, p) in row.iter_mut().zip(&pivot_row).skip(col) {
                *x -= &factor * p;
            }
        }
        r += 1;
    }
    r
}
