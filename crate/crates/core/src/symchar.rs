//! Irreducible characters of symmetric groups by the Murnaghan-Nakayama
//! rule, memoized per `n` in process and optionally persisted to disk.

use std::collections::HashMap;
use std::path::{Path, PathBuf};
use std::sync::{Arc, OnceLock, RwLock};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::combinatorics::{partitions_of, Partition};
use crate::error::{Error, Result};

const CACHE_VERSION: u32 = 1;

/// `values[i][j] = chi^{partitions[i]}(C_{partitions[j]})`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharacterTable {
    n: u32,
    partitions: Vec<Partition>,
    index: HashMap<Partition, usize>,
    values: Vec<Vec<i64>>,
}

impl CharacterTable {
    fn from_parts(n: u32, partitions: Vec<Partition>, values: Vec<Vec<i64>>) -> Self {
        let index = partitions
            .iter()
            .enumerate()
            .map(|(i, p)| (p.clone(), i))
            .collect();
        CharacterTable {
            n,
            partitions,
            index,
            values,
        }
    }

    fn compute(n: u32) -> Self {
        let partitions = partitions_of(n);
        let mut memo = HashMap::new();
        let values = partitions
            .iter()
            .map(|lambda| {
                partitions
                    .iter()
                    .map(|mu| mn(lambda.parts(), mu.parts(), &mut memo))
                    .collect()
            })
            .collect();
        Self::from_parts(n, partitions, values)
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    /// Canonical order: `(n)` first, `(1^n)` last.
    pub fn partitions(&self) -> &[Partition] {
        &self.partitions
    }

    pub fn index_of(&self, p: &Partition) -> Option<usize> {
        self.index.get(p).copied()
    }

    pub fn values(&self) -> &[Vec<i64>] {
        &self.values
    }

    /// `chi^lambda(C_mu)`; both must be partitions of `n`.
    pub fn value(&self, lambda: &Partition, mu: &Partition) -> i64 {
        self.values[self.index[lambda]][self.index[mu]]
    }
}

/// Border-strip recursion on beta-sets, removing the largest part of `mu`
/// first. The memo key is the current shape and the remaining `mu` suffix.
fn mn(lambda: &[u32], mu: &[u32], memo: &mut HashMap<(Vec<u32>, Vec<u32>), i64>) -> i64 {
    let Some((&h, rest)) = mu.split_first() else {
        return if lambda.is_empty() { 1 } else { 0 };
    };
    let key = (lambda.to_vec(), mu.to_vec());
    if let Some(&v) = memo.get(&key) {
        return v;
    }
    let len = lambda.len() as u32;
    let beta: Vec<u32> = lambda
        .iter()
        .enumerate()
        .map(|(i, &p)| p + len - 1 - i as u32)
        .collect();
    let mut total = 0;
    for (i, &b) in beta.iter().enumerate() {
        if b < h || beta.contains(&(b - h)) {
            continue;
        }
        let target = b - h;
        let crossed = beta.iter().filter(|&&x| x > target && x < b).count();
        let sign = if crossed % 2 == 0 { 1 } else { -1 };
        let mut next = beta.clone();
        next[i] = target;
        next.sort_unstable_by(|a, b| b.cmp(a));
        let k = next.len() as u32;
        let shape: Vec<u32> = next
            .iter()
            .enumerate()
            .map(|(j, &x)| x - (k - 1 - j as u32))
            .filter(|&p| p > 0)
            .collect();
        total += sign * mn(&shape, rest, memo);
    }
    memo.insert(key, total);
    total
}

type TableStore = RwLock<HashMap<u32, Arc<CharacterTable>>>;

fn store() -> &'static TableStore {
    static STORE: OnceLock<TableStore> = OnceLock::new();
    STORE.get_or_init(Default::default)
}

fn cache_dir_slot() -> &'static RwLock<Option<PathBuf>> {
    static DIR: OnceLock<RwLock<Option<PathBuf>>> = OnceLock::new();
    DIR.get_or_init(Default::default)
}

/// Directory for persisted tables; `None` keeps everything in memory.
pub fn set_cache_dir(dir: Option<PathBuf>) {
    *cache_dir_slot().write().unwrap() = dir;
}

pub fn cache_dir() -> Option<PathBuf> {
    cache_dir_slot().read().unwrap().clone()
}

/// The character table of `S_n`, shared across threads.
pub fn character_table(n: u32) -> Arc<CharacterTable> {
    if let Some(t) = store().read().unwrap().get(&n) {
        return t.clone();
    }
    let dir = cache_dir();
    let table = dir
        .as_deref()
        .and_then(|d| load_table(d, n).ok())
        .unwrap_or_else(|| {
            let t = CharacterTable::compute(n);
            if let Some(d) = dir.as_deref() {
                // persistence is best effort
                let _ = save_table(d, &t);
            }
            t
        });
    let mut w = store().write().unwrap();
    w.entry(n).or_insert_with(|| Arc::new(table)).clone()
}

pub fn character(lambda: &Partition, mu: &Partition) -> Result<i64> {
    if lambda.size() != mu.size() {
        return Err(Error::SizeMismatch(lambda.size(), mu.size()));
    }
    Ok(character_table(lambda.size()).value(lambda, mu))
}

#[derive(Serialize, Deserialize)]
struct CacheRecord {
    version: u32,
    n: u32,
    partitions: Vec<Partition>,
    values: Vec<Vec<i64>>,
    checksum: String,
}

fn checksum(n: u32, partitions: &[Partition], values: &[Vec<i64>]) -> String {
    let body = serde_json::to_vec(&(CACHE_VERSION, n, partitions, values)).unwrap();
    hex::encode(Sha256::digest(&body))
}

pub fn cache_file(dir: &Path, n: u32) -> PathBuf {
    dir.join(format!("chartable-v{CACHE_VERSION}-n{n}.json"))
}

fn load_table(dir: &Path, n: u32) -> Result<CharacterTable> {
    let bytes = std::fs::read(cache_file(dir, n)).map_err(|e| Error::Cache(e.to_string()))?;
    let rec: CacheRecord =
        serde_json::from_slice(&bytes).map_err(|e| Error::Cache(e.to_string()))?;
    if rec.version != CACHE_VERSION || rec.n != n {
        return Err(Error::Cache("version or size mismatch".into()));
    }
    if rec.partitions != partitions_of(n) {
        return Err(Error::Cache("partition order mismatch".into()));
    }
    let m = rec.partitions.len();
    if rec.values.len() != m || rec.values.iter().any(|row| row.len() != m) {
        return Err(Error::Cache("malformed table".into()));
    }
    if checksum(n, &rec.partitions, &rec.values) != rec.checksum {
        return Err(Error::Cache("checksum mismatch".into()));
    }
    Ok(CharacterTable::from_parts(n, rec.partitions, rec.values))
}

fn save_table(dir: &Path, t: &CharacterTable) -> Result<()> {
    std::fs::create_dir_all(dir).map_err(|e| Error::Cache(e.to_string()))?;
    let rec = CacheRecord {
        version: CACHE_VERSION,
        n: t.n,
        partitions: t.partitions.clone(),
        values: t.values.clone(),
        checksum: checksum(t.n, &t.partitions, &t.values),
    };
    let path = cache_file(dir, t.n);
    let tmp = path.with_extension("json.tmp");
    std::fs::write(&tmp, serde_json::to_vec(&rec).unwrap())
        .and_then(|_| std::fs::rename(&tmp, &path))
        .map_err(|e| Error::Cache(e.to_string()))
}

/// Loads a persisted table without touching the in-process store.
pub fn read_cached_table(dir: &Path, n: u32) -> Result<CharacterTable> {
    load_table(dir, n)
}

/// Computes a table and persists it without touching the in-process store.
pub fn write_cached_table(dir: &Path, n: u32) -> Result<CharacterTable> {
    let t = CharacterTable::compute(n);
    save_table(dir, &t)?;
    Ok(t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::class_size;
    use num_bigint::BigInt;
    use num_traits::Zero;

    fn p<const N: usize>(parts: [u32; N]) -> Partition {
        Partition::from(parts)
    }

    /// Frobenius: `chi^lambda(mu)` is the coefficient of `x^{lambda + delta}`
    /// in `a_delta * p_mu`, computed with explicit polynomials.
    fn frobenius_oracle(lambda: &Partition, mu: &Partition) -> i64 {
        let vars = lambda.size().max(1) as usize;
        type Poly = HashMap<Vec<u32>, i64>;
        let mul = |a: &Poly, b: &Poly| {
            let mut out: Poly = HashMap::new();
            for (ea, ca) in a {
                for (eb, cb) in b {
                    let e: Vec<u32> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                    *out.entry(e).or_insert(0) += ca * cb;
                }
            }
            out.retain(|_, c| *c != 0);
            out
        };
        let mut poly: Poly = HashMap::from([(vec![0; vars], 1)]);
        for i in 0..vars {
            for j in i + 1..vars {
                let mut e1 = vec![0; vars];
                e1[i] = 1;
                let mut e2 = vec![0; vars];
                e2[j] = 1;
                poly = mul(&poly, &HashMap::from([(e1, 1), (e2, -1)]));
            }
        }
        for &m in mu.parts() {
            let ps: Poly = (0..vars)
                .map(|i| {
                    let mut e = vec![0; vars];
                    e[i] = m;
                    (e, 1)
                })
                .collect();
            poly = mul(&poly, &ps);
        }
        let target: Vec<u32> = (0..vars)
            .map(|i| lambda.parts().get(i).copied().unwrap_or(0) + (vars - 1 - i) as u32)
            .collect();
        poly.get(&target).copied().unwrap_or(0)
    }

    #[test]
    fn small_values() {
        assert_eq!(character(&p([3]), &p([2, 1])).unwrap(), 1);
        assert_eq!(character(&p([1, 1]), &p([2])).unwrap(), -1);
        assert_eq!(character(&p([2, 1]), &p([3])).unwrap(), -1);
        assert_eq!(
            character(&p([2, 1]), &p([3, 1])),
            Err(Error::SizeMismatch(3, 4))
        );
        assert_eq!(character_table(1).values(), &[vec![1]]);
        // columns (2), (1,1)
        assert_eq!(character_table(2).values(), &[vec![1, 1], vec![-1, 1]]);
        assert_eq!(character_table(0).values(), &[vec![1]]);
    }

    #[test]
    fn matches_frobenius_oracle() {
        for n in 1..=6 {
            for lambda in partitions_of(n) {
                for mu in partitions_of(n) {
                    assert_eq!(
                        character(&lambda, &mu).unwrap(),
                        frobenius_oracle(&lambda, &mu),
                        "{lambda} {mu}"
                    );
                }
            }
        }
    }

    #[test]
    fn orthogonality_dimension_and_conjugation() {
        for n in 1..=8 {
            let t = character_table(n);
            let sizes: Vec<BigInt> = t.partitions().iter().map(class_size).collect();
            let fact: BigInt = sizes.iter().sum();
            for (a, la) in t.partitions().iter().enumerate() {
                for b in 0..t.partitions().len() {
                    let s: BigInt = (0..sizes.len())
                        .map(|j| &sizes[j] * t.values()[a][j] * t.values()[b][j])
                        .sum();
                    let expect = if a == b { fact.clone() } else { BigInt::zero() };
                    assert_eq!(s, expect);
                }
                let last = t.partitions().len() - 1;
                assert_eq!(BigInt::from(t.values()[a][last]), la.dimension());
                for mu in t.partitions() {
                    assert_eq!(t.value(&la.conjugate(), mu), mu.sign() * t.value(la, mu));
                }
            }
        }
    }

    #[test]
    fn order_of_strip_removal_is_irrelevant() {
        let mut memo = HashMap::new();
        for n in 1..=7 {
            for lambda in partitions_of(n) {
                for mu in partitions_of(n) {
                    let mut rev = mu.parts().to_vec();
                    rev.reverse();
                    assert_eq!(
                        mn(lambda.parts(), &rev, &mut memo),
                        character(&lambda, &mu).unwrap()
                    );
                }
            }
        }
    }

    #[test]
    fn cache_round_trip_and_corruption() {
        let dir = std::env::temp_dir().join(format!("homfly-chartable-{}", std::process::id()));
        let written = write_cached_table(&dir, 5).unwrap();
        assert_eq!(read_cached_table(&dir, 5).unwrap(), written);
        let path = cache_file(&dir, 5);
        let text = std::fs::read_to_string(&path).unwrap();
        std::fs::write(&path, text.replacen("-1", "-2", 1)).unwrap();
        assert!(matches!(read_cached_table(&dir, 5), Err(Error::Cache(_))));
        std::fs::write(&path, "not json").unwrap();
        assert!(read_cached_table(&dir, 5).is_err());
        std::fs::remove_dir_all(&dir).unwrap();
    }
}
