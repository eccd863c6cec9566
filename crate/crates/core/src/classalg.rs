//! Class algebra of `S_d`: how often a fixed permutation of type `λ`
//! factors as (type `μ`) ∘ (type `ν`).
//!
//! Two independent routes are provided: direct enumeration of one conjugacy
//! class, and the character formula
//! `c = |C_μ| |C_ν| / d! · Σ_χ χ(μ) χ(ν) χ(λ) / χ(1)`
//! with characters from the Murnaghan–Nakayama rule. Everything is exact.

use std::collections::HashMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::partition::{enumerate_partitions, factorial, Partition};
use crate::perm::{canonical_representative, class_prefixes, cycle_type_raw, visit_class, visit_class_with_prefix};

/// Environment variable overriding the cache directory.
pub const CACHE_DIR_ENV: &str = "HURWITZ_CELLS_CACHE_DIR";

/// Bumped whenever the cache file layout changes.
pub const CACHE_SCHEMA_VERSION: u32 = 1;

/// Default largest degree for character tables.
pub const DEFAULT_MAX_DEGREE: usize = 12;

// ---------------------------------------------------------------------------
// Characters
// ---------------------------------------------------------------------------

/// Integer character table of `S_d`. Rows are irreducible representations,
/// columns conjugacy classes; both are indexed by `partitions` (reverse
/// lexicographic order).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CharTable {
    pub d: usize,
    pub partitions: Vec<Partition>,
    pub values: Vec<Vec<i64>>,
}

impl CharTable {
    pub fn index(&self, lam: &Partition) -> Option<usize> {
        self.partitions.binary_search_by(|p| lam.cmp(p)).ok()
    }

    /// `χ^{irrep}(class)`.
    pub fn value(&self, irrep: &Partition, class: &Partition) -> Option<i64> {
        Some(self.values[self.index(irrep)?][self.index(class)?])
    }

    /// `χ(1)` for each irreducible, in row order.
    pub fn dimensions(&self) -> Vec<i64> {
        let id = self.index(&Partition::ones(self.d)).expect("identity class");
        self.values.iter().map(|row| row[id]).collect()
    }

    /// Row and column orthogonality plus `Σ χ(1)² = d!`.
    pub fn verify(&self) -> Result<()> {
        let n = self.partitions.len();
        let order = factorial(self.d) as i128;
        let sizes: Vec<i128> = self.partitions.iter().map(|p| p.class_size() as i128).collect();
        let fail = |msg: String| Err(Error::Cache(format!("character table d={}: {msg}", self.d)));
        if self.values.len() != n || self.values.iter().any(|r| r.len() != n) {
            return fail("wrong shape".into());
        }
        for i in 0..n {
            for j in i..n {
                let s: i128 = (0..n).map(|c| self.values[i][c] as i128 * self.values[j][c] as i128 * sizes[c]).sum();
                let expected = if i == j { order } else { 0 };
                if s != expected {
                    return fail(format!("rows {i},{j} inner product {s}"));
                }
                let s: i128 = (0..n).map(|r| self.values[r][i] as i128 * self.values[r][j] as i128).sum();
                let expected = if i == j { self.partitions[i].centralizer_order() as i128 } else { 0 };
                if s != expected {
                    return fail(format!("columns {i},{j} inner product {s}"));
                }
            }
        }
        let dims = self.dimensions();
        if dims.iter().any(|&x| x <= 0) {
            return fail("nonpositive dimension".into());
        }
        let burnside: i128 = dims.iter().map(|&x| x as i128 * x as i128).sum();
        if burnside != order {
            return fail(format!("sum of squared dimensions {burnside}"));
        }
        Ok(())
    }
}

type MnMemo = HashMap<(Vec<usize>, Vec<usize>), i64>;

/// `χ^shape(class)` by recursive removal of border strips, on beta-sets.
pub fn murnaghan_nakayama(shape: &Partition, class: &Partition) -> i64 {
    let mut memo = MnMemo::new();
    mn(shape.parts(), class.parts(), &mut memo)
}

fn mn(shape: &[usize], class: &[usize], memo: &mut MnMemo) -> i64 {
    let Some((&k, rest)) = class.split_first() else {
        return if shape.is_empty() { 1 } else { 0 };
    };
    let key = (shape.to_vec(), class.to_vec());
    if let Some(&v) = memo.get(&key) {
        return v;
    }
    let n = shape.len();
    let beta: Vec<usize> = shape.iter().enumerate().map(|(i, &p)| p + (n - 1 - i)).collect();
    let mut total = 0i64;
    for (i, &b) in beta.iter().enumerate() {
        if b < k || beta.contains(&(b - k)) {
            continue;
        }
        let moved = b - k;
        let crossed = beta.iter().filter(|&&x| x > moved && x < b).count();
        let sign = if crossed % 2 == 0 { 1 } else { -1 };
        let mut next = beta.clone();
        next[i] = moved;
        next.sort_unstable_by(|a, b| b.cmp(a));
        let new_shape: Vec<usize> = next.iter().enumerate().map(|(j, &x)| x - (n - 1 - j)).filter(|&p| p > 0).collect();
        total += sign * mn(&new_shape, rest, memo);
    }
    memo.insert(key, total);
    total
}

/// Computes and verifies the character table of `S_d`.
pub fn char_table(d: usize) -> Result<CharTable> {
    let partitions = enumerate_partitions(d);
    let mut memo = MnMemo::new();
    let values = partitions
        .iter()
        .map(|irrep| partitions.iter().map(|class| mn(irrep.parts(), class.parts(), &mut memo)).collect())
        .collect();
    let table = CharTable { d, partitions, values };
    table.verify()?;
    Ok(table)
}

// ---------------------------------------------------------------------------
// Factorization counts
// ---------------------------------------------------------------------------

/// `(μ, ν, λ)`, all partitions of the same `d`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FactorizationKey {
    pub mu: Partition,
    pub nu: Partition,
    pub lam: Partition,
}

impl FactorizationKey {
    pub fn new(mu: Partition, nu: Partition, lam: Partition) -> Result<Self> {
        let d = lam.degree();
        for p in [&mu, &nu] {
            if p.degree() != d {
                return Err(Error::DegreeMismatch { left: p.degree(), right: d });
            }
        }
        Ok(FactorizationKey { mu, nu, lam })
    }

    pub fn degree(&self) -> usize {
        self.lam.degree()
    }
}

// Enumeration below this class size stays on the calling thread.
const PARALLEL_THRESHOLD: u128 = 20_000;

/// `#{(σ, τ) : type σ = μ, type τ = ν, σ ∘ τ = rep(λ)}` by enumerating the
/// smaller of the two classes and testing the forced cofactor.
pub fn factorization_count_brute(key: &FactorizationKey) -> u64 {
    let target = canonical_representative(&key.lam);
    let target = target.raw();
    let d = key.degree();
    // σ ∘ τ = π  ⇔  τ = σ⁻¹ ∘ π  ⇔  σ = π ∘ τ⁻¹
    let enumerate_mu = key.mu.class_size() <= key.nu.class_size();
    let (walked, other) = if enumerate_mu { (&key.mu, &key.nu) } else { (&key.nu, &key.mu) };

    let count_one = |img: &[u8], cofactor: &mut [u8], inv: &mut [u8]| -> bool {
        if enumerate_mu {
            for (i, &x) in img.iter().enumerate() {
                inv[x as usize] = i as u8;
            }
            for i in 0..d {
                cofactor[i] = inv[target[i] as usize];
            }
        } else {
            for (i, &x) in img.iter().enumerate() {
                inv[x as usize] = i as u8;
            }
            for i in 0..d {
                cofactor[i] = target[inv[i] as usize];
            }
        }
        cycle_type_raw(cofactor) == *other
    };

    let chunk = |prefix: Option<&[usize]>| -> u64 {
        let mut cofactor = vec![0u8; d];
        let mut inv = vec![0u8; d];
        let mut count = 0u64;
        let mut visit = |img: &[u8]| {
            if count_one(img, &mut cofactor, &mut inv) {
                count += 1;
            }
        };
        match prefix {
            Some(p) => visit_class_with_prefix(walked, p, &mut visit),
            None => visit_class(walked, &mut visit),
        }
        count
    };

    if walked.class_size() < PARALLEL_THRESHOLD {
        return chunk(None);
    }
    let prefixes = class_prefixes(walked);
    // integer sums are exact, so the reduction order cannot matter
    prefixes.par_iter().map(|p| chunk(Some(p))).sum()
}

/// The same count from the character table of `S_d`.
pub fn factorization_count_char(key: &FactorizationKey, table: &CharTable) -> Result<u64> {
    if table.d != key.degree() {
        return Err(Error::DegreeMismatch { left: table.d, right: key.degree() });
    }
    let (i_mu, i_nu, i_lam) = (
        table.index(&key.mu).expect("partition of d"),
        table.index(&key.nu).expect("partition of d"),
        table.index(&key.lam).expect("partition of d"),
    );
    let id = table.index(&Partition::ones(table.d)).expect("identity class");
    let mut sum = BigRational::zero();
    for row in &table.values {
        let numer = BigInt::from(row[i_mu]) * BigInt::from(row[i_nu]) * BigInt::from(row[i_lam]);
        sum += BigRational::new(numer, BigInt::from(row[id]));
    }
    let scale = BigRational::new(
        BigInt::from(key.mu.class_size()) * BigInt::from(key.nu.class_size()),
        BigInt::from(factorial(table.d)),
    );
    let count = sum * scale;
    if !count.is_integer() || count.is_negative() {
        return Err(Error::NonIntegralCount(count.to_string()));
    }
    count.to_integer().to_u64().ok_or_else(|| Error::NonIntegralCount(count.to_string()))
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CountMethod {
    Brute,
    #[default]
    Chars,
}

// ---------------------------------------------------------------------------
// Table store with on-disk cache
// ---------------------------------------------------------------------------

#[derive(Serialize, Deserialize)]
struct CacheFile {
    schema: u32,
    d: usize,
    partitions: Vec<Partition>,
    values: Vec<Vec<i64>>,
    /// Memoized factorization counts, as `[mu, nu, lam, count]`.
    #[serde(default)]
    counts: Vec<(Partition, Partition, Partition, u64)>,
}

/// Character tables and factorization counts, computed once per degree and
/// shared across threads. Optionally persisted as one JSON file per degree.
pub struct ClassAlgebra {
    max_degree: usize,
    cache_dir: Option<PathBuf>,
    tables: Vec<OnceLock<Arc<CharTable>>>,
    counts: Mutex<HashMap<(CountMethod, FactorizationKey), u64>>,
}

impl ClassAlgebra {
    /// In-memory only.
    pub fn new(max_degree: usize) -> Self {
        ClassAlgebra {
            max_degree,
            cache_dir: None,
            tables: (0..=max_degree).map(|_| OnceLock::new()).collect(),
            counts: Mutex::new(HashMap::new()),
        }
    }

    pub fn with_cache_dir(max_degree: usize, dir: impl Into<PathBuf>) -> Self {
        ClassAlgebra { cache_dir: Some(dir.into()), ..ClassAlgebra::new(max_degree) }
    }

    /// Cache directory from `explicit`, else the environment override, else none.
    pub fn from_env(max_degree: usize, explicit: Option<PathBuf>) -> Self {
        match explicit.or_else(|| std::env::var_os(CACHE_DIR_ENV).map(PathBuf::from)) {
            Some(dir) => ClassAlgebra::with_cache_dir(max_degree, dir),
            None => ClassAlgebra::new(max_degree),
        }
    }

    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    pub fn cache_dir(&self) -> Option<&Path> {
        self.cache_dir.as_deref()
    }

    fn cache_path(&self, d: usize) -> Option<PathBuf> {
        self.cache_dir.as_ref().map(|dir| dir.join(format!("chartab-v{CACHE_SCHEMA_VERSION}-d{d}.json")))
    }

    pub fn table(&self, d: usize) -> Result<Arc<CharTable>> {
        if d > self.max_degree {
            return Err(Error::DegreeTooLarge { d, max: self.max_degree });
        }
        if let Some(t) = self.tables[d].get() {
            return Ok(t.clone());
        }
        let table = Arc::new(match self.load(d) {
            Some(t) => t,
            None => {
                let t = char_table(d)?;
                self.store(&t)?;
                t
            }
        });
        // another thread may have won the race; both tables are identical
        Ok(self.tables[d].get_or_init(|| table).clone())
    }

    /// Tables for every degree up to `max`.
    pub fn precompute(&self, max: usize) -> Result<()> {
        (1..=max.min(self.max_degree)).into_par_iter().try_for_each(|d| self.table(d).map(|_| ()))
    }

    fn load(&self, d: usize) -> Option<CharTable> {
        let path = self.cache_path(d)?;
        let text = fs::read_to_string(&path).ok()?;
        let file: CacheFile = serde_json::from_str(&text).ok()?;
        if file.schema != CACHE_SCHEMA_VERSION || file.d != d || file.partitions != enumerate_partitions(d) {
            return None;
        }
        let table = CharTable { d, partitions: file.partitions, values: file.values };
        // corrupted or tampered tables fail orthogonality and get recomputed
        table.verify().ok()?;
        let mut counts = self.counts.lock().expect("count cache poisoned");
        for (mu, nu, lam, c) in file.counts {
            if let Ok(key) = FactorizationKey::new(mu, nu, lam) {
                counts.entry((CountMethod::Chars, key)).or_insert(c);
            }
        }
        Some(table)
    }

    fn store(&self, table: &CharTable) -> Result<()> {
        let Some(path) = self.cache_path(table.d) else {
            return Ok(());
        };
        let dir = path.parent().expect("cache file has a parent");
        fs::create_dir_all(dir).map_err(|e| Error::Cache(format!("{}: {e}", dir.display())))?;
        let file = CacheFile {
            schema: CACHE_SCHEMA_VERSION,
            d: table.d,
            partitions: table.partitions.clone(),
            values: table.values.clone(),
            counts: Vec::new(),
        };
        let text = serde_json::to_string(&file).map_err(|e| Error::Cache(e.to_string()))?;
        let tmp = path.with_extension(format!("tmp{}", std::process::id()));
        fs::write(&tmp, text).map_err(|e| Error::Cache(format!("{}: {e}", tmp.display())))?;
        fs::rename(&tmp, &path).map_err(|e| Error::Cache(format!("{}: {e}", path.display())))?;
        Ok(())
    }

    /// Writes the memoized character-route counts of degree `d` into its cache file.
    pub fn persist_counts(&self, d: usize) -> Result<()> {
        let Some(path) = self.cache_path(d) else {
            return Ok(());
        };
        let table = self.table(d)?;
        let mut counts: Vec<(Partition, Partition, Partition, u64)> = self
            .counts
            .lock()
            .expect("count cache poisoned")
            .iter()
            .filter(|((m, k), _)| *m == CountMethod::Chars && k.degree() == d)
            .map(|((_, k), &c)| (k.mu.clone(), k.nu.clone(), k.lam.clone(), c))
            .collect();
        counts.sort();
        let file = CacheFile {
            schema: CACHE_SCHEMA_VERSION,
            d,
            partitions: table.partitions.clone(),
            values: table.values.clone(),
            counts,
        };
        let text = serde_json::to_string(&file).map_err(|e| Error::Cache(e.to_string()))?;
        fs::write(&path, text).map_err(|e| Error::Cache(format!("{}: {e}", path.display())))
    }

    pub fn count(&self, key: &FactorizationKey, method: CountMethod) -> Result<u64> {
        let d = key.degree();
        if d > self.max_degree {
            return Err(Error::DegreeTooLarge { d, max: self.max_degree });
        }
        let memo_key = (method, key.clone());
        if let Some(&c) = self.counts.lock().expect("count cache poisoned").get(&memo_key) {
            return Ok(c);
        }
        let c = match method {
            CountMethod::Brute => factorization_count_brute(key),
            CountMethod::Chars => factorization_count_char(key, &*self.table(d)?)?,
        };
        self.counts.lock().expect("count cache poisoned").insert(memo_key, c);
        Ok(c)
    }
}

impl Default for ClassAlgebra {
    fn default() -> Self {
        ClassAlgebra::new(DEFAULT_MAX_DEGREE)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::{class_enumerate, Perm};

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    fn key(mu: &str, nu: &str, lam: &str) -> FactorizationKey {
        FactorizationKey::new(p(mu), p(nu), p(lam)).unwrap()
    }

    // Enumerates all of C_μ × C_ν; independent of the cofactor shortcut.
    fn naive(key: &FactorizationKey, reversed: bool) -> u64 {
        let target = canonical_representative(&key.lam);
        let nus: Vec<Perm> = class_enumerate(&key.nu).collect();
        let mut count = 0;
        for s in class_enumerate(&key.mu) {
            for t in &nus {
                let prod = if reversed { t.compose(&s).unwrap() } else { s.compose(t).unwrap() };
                if prod == target {
                    count += 1;
                }
            }
        }
        count
    }

    #[test]
    fn d3_table() {
        let t = char_table(3).unwrap();
        let classes = [p("1,1,1"), p("2,1"), p("3")];
        let row = |irrep: &str| classes.iter().map(|c| t.value(&p(irrep), c).unwrap()).collect::<Vec<_>>();
        assert_eq!(row("3"), vec![1, 1, 1]);
        assert_eq!(row("2,1"), vec![2, 0, -1]);
        assert_eq!(row("1,1,1"), vec![1, -1, 1]);
    }

    #[test]
    fn tables_verify() {
        for d in 1..=8 {
            let t = char_table(d).unwrap();
            let trivial = t.index(&Partition::hook(d, d).unwrap()).unwrap();
            assert!(t.values[trivial].iter().all(|&v| v == 1));
            let dims = t.dimensions();
            assert_eq!(dims.iter().map(|&x| (x * x) as u128).sum::<u128>(), factorial(d));
        }
        let mut bad = char_table(4).unwrap();
        bad.values[1][2] += 1;
        assert!(bad.verify().is_err());
    }

    #[test]
    fn known_character_values() {
        // dimensions by the hook length formula, S_4 values from the standard table
        assert_eq!(murnaghan_nakayama(&p("4,2"), &Partition::ones(6)), 9);
        assert_eq!(murnaghan_nakayama(&p("3,3"), &Partition::ones(6)), 5);
        assert_eq!(murnaghan_nakayama(&p("2,2"), &p("2,2")), 2);
        assert_eq!(murnaghan_nakayama(&p("2,2"), &p("3,1")), -1);
    }

    #[test]
    fn count_examples() {
        let k = key("2,1", "2,1", "3");
        assert_eq!(factorization_count_brute(&k), 3);
        assert_eq!(factorization_count_char(&k, &char_table(3).unwrap()).unwrap(), 3);
        let k = key("2,1,1", "2,1,1", "2,2");
        assert_eq!(factorization_count_brute(&k), 2);
        assert_eq!(factorization_count_char(&k, &char_table(4).unwrap()).unwrap(), 2);
        let k = key("2", "2", "1,1");
        assert_eq!(factorization_count_brute(&k), 1);
        assert_eq!(factorization_count_char(&k, &char_table(2).unwrap()).unwrap(), 1);
        for d in 1..=6 {
            let all = enumerate_partitions(d);
            for nu in &all {
                for lam in &all {
                    let k = FactorizationKey::new(Partition::ones(d), nu.clone(), lam.clone()).unwrap();
                    assert_eq!(factorization_count_brute(&k), u64::from(nu == lam));
                }
            }
        }
    }

    #[test]
    fn brute_matches_naive_both_conventions() {
        for d in 1..=5 {
            let all = enumerate_partitions(d);
            for mu in &all {
                for nu in &all {
                    for lam in &all {
                        let k = FactorizationKey::new(mu.clone(), nu.clone(), lam.clone()).unwrap();
                        let fast = factorization_count_brute(&k);
                        assert_eq!(fast, naive(&k, false));
                        assert_eq!(fast, naive(&k, true));
                    }
                }
            }
        }
    }

    #[test]
    fn parallel_path_matches_sequential() {
        // enumerates the smaller class C_nu
        let k = key("4,2,1,1", "2,2,2,2", "5,3");
        let direct = factorization_count_char(&k, &char_table(8).unwrap()).unwrap();
        assert_eq!(factorization_count_brute(&k), direct);
        // (5,2,1,1,1) in S_10 has 30240 elements, above the threshold
        let k = key("5,2,1,1,1", "5,2,1,1,1", "7,3");
        assert!(k.mu.class_size() >= PARALLEL_THRESHOLD);
        let direct = factorization_count_char(&k, &char_table(10).unwrap()).unwrap();
        assert_eq!(factorization_count_brute(&k), direct);
    }

    #[test]
    fn store_caches_and_rejects_corruption() {
        let dir = tempfile::tempdir().unwrap();
        let store = ClassAlgebra::with_cache_dir(8, dir.path());
        let t = store.table(5).unwrap();
        let path = dir.path().join(format!("chartab-v{CACHE_SCHEMA_VERSION}-d5.json"));
        assert!(path.exists());
        let c = store.count(&key("2,1,1,1", "2,1,1,1", "3,1,1"), CountMethod::Chars).unwrap();
        assert_eq!(c, 3);
        store.persist_counts(5).unwrap();

        let fresh = ClassAlgebra::with_cache_dir(8, dir.path());
        assert_eq!(*fresh.table(5).unwrap(), *t);

        // corrupt one entry; the reload must notice and recompute
        let mut file: serde_json::Value = serde_json::from_str(&fs::read_to_string(&path).unwrap()).unwrap();
        file["values"][0][0] = serde_json::json!(7);
        fs::write(&path, file.to_string()).unwrap();
        let again = ClassAlgebra::with_cache_dir(8, dir.path());
        assert_eq!(*again.table(5).unwrap(), *t);

        assert!(matches!(store.table(9), Err(Error::DegreeTooLarge { .. })));
    }
}
