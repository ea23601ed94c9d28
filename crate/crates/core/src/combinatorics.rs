//! Partitions and the index data attached to them: class sizes, framing
//! exponents, hooks and contents.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::Error;

/// A partition stored as weakly decreasing positive parts.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Partition(Vec<u32>);

impl Partition {
    /// Builds a partition from arbitrary parts; zeros are dropped and the
    /// parts are sorted.
    pub fn new(mut parts: Vec<u32>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition(parts)
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    /// The one-row partition `(n)`; empty for `n = 0`.
    pub fn row(n: u32) -> Self {
        Self::new(vec![n])
    }

    /// The one-column partition `(1^n)`.
    pub fn column(n: u32) -> Self {
        Partition(vec![1; n as usize])
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn size(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn length(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn conjugate(&self) -> Partition {
        let width = self.0.first().copied().unwrap_or(0);
        let parts = (1..=width)
            .map(|j| self.0.iter().filter(|&&p| p >= j).count() as u32)
            .collect();
        Partition(parts)
    }

    /// Multiplicity table `i -> m_i`.
    pub fn multiplicities(&self) -> BTreeMap<u32, u32> {
        let mut m = BTreeMap::new();
        for &p in &self.0 {
            *m.entry(p).or_insert(0) += 1;
        }
        m
    }

    /// `z_mu = prod_i i^{m_i} m_i!`, the centralizer order.
    pub fn z(&self) -> BigInt {
        let mut z = BigInt::from(1u32);
        for (part, mult) in self.multiplicities() {
            for k in 1..=mult {
                z *= BigInt::from(part) * BigInt::from(k);
            }
        }
        z
    }

    /// `1 / z_mu = |C_mu| / n!` as an exact rational.
    pub fn inv_z(&self) -> BigRational {
        BigRational::new(BigInt::from(1u32), self.z())
    }

    /// Sign of a permutation with this cycle type.
    pub fn sign(&self) -> i64 {
        if (self.size() as usize - self.length()).is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    /// Number of standard Young tableaux, by the hook length formula.
    pub fn dimension(&self) -> BigInt {
        let n = self.size();
        let mut num = BigInt::from(1u32);
        for k in 2..=n {
            num *= k;
        }
        let den: BigInt = hooks_contents(self)
            .iter()
            .map(|&(h, _)| BigInt::from(h))
            .product();
        num / den
    }

    /// Cells `(row, col)`, zero based, in row-major order.
    pub fn cells(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.0
            .iter()
            .enumerate()
            .flat_map(|(i, &p)| (0..p as usize).map(move |j| (i, j)))
    }
}

impl PartialOrd for Partition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Sorted by size first, then reverse-lexicographically, so that
/// `partitions_of(n)` is an increasing run in this order.
impl Ord for Partition {
    fn cmp(&self, other: &Self) -> Ordering {
        self.size()
            .cmp(&other.size())
            .then_with(|| other.0.cmp(&self.0))
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({self})")
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("0");
        }
        let s: Vec<String> = self.0.iter().map(|p| p.to_string()).collect();
        f.write_str(&s.join(","))
    }
}

impl FromStr for Partition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s.is_empty() || s == "0" {
            return Ok(Partition::empty());
        }
        let mut parts = Vec::new();
        for tok in s.split(',') {
            let p: u32 = tok
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad partition part {tok:?} in {s:?}")))?;
            parts.push(p);
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::Parse(format!(
                "parts of {s:?} are not weakly decreasing"
            )));
        }
        Ok(Partition::new(parts))
    }
}

impl From<&[u32]> for Partition {
    fn from(parts: &[u32]) -> Self {
        Partition::new(parts.to_vec())
    }
}

impl<const N: usize> From<[u32; N]> for Partition {
    fn from(parts: [u32; N]) -> Self {
        Partition::new(parts.to_vec())
    }
}

impl Serialize for Partition {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Partition {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// One partition per link component; empty entries are allowed.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct PartitionTuple(pub Vec<Partition>);

impl PartitionTuple {
    pub fn new(entries: Vec<Partition>) -> Self {
        PartitionTuple(entries)
    }

    pub fn entries(&self) -> &[Partition] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degrees(&self) -> Vec<u32> {
        self.0.iter().map(Partition::size).collect()
    }

    pub fn total_size(&self) -> u32 {
        self.0.iter().map(Partition::size).sum()
    }

    /// All tuples `(lambda^1, ..., lambda^l)` with `lambda^i |- degrees[i]`,
    /// in lexicographic order of the canonical per-component orders.
    pub fn all_with_degrees(degrees: &[u32]) -> Vec<PartitionTuple> {
        let mut out = vec![Vec::new()];
        for &d in degrees {
            let parts = partitions_of(d);
            out = out
                .into_iter()
                .flat_map(|prefix: Vec<Partition>| {
                    parts.iter().map(move |p| {
                        let mut v = prefix.clone();
                        v.push(p.clone());
                        v
                    })
                })
                .collect();
        }
        out.into_iter().map(PartitionTuple).collect()
    }
}

impl fmt::Debug for PartitionTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{self}]")
    }
}

impl fmt::Display for PartitionTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.0.iter().map(|p| p.to_string()).collect();
        f.write_str(&s.join("|"))
    }
}

impl FromStr for PartitionTuple {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        s.split('|')
            .map(str::parse)
            .collect::<Result<Vec<_>, _>>()
            .map(PartitionTuple)
    }
}

impl Serialize for PartitionTuple {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for PartitionTuple {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// All partitions of `n` in reverse-lexicographic order: `(n)` first,
/// `(1^n)` last.
pub fn partitions_of(n: u32) -> Vec<Partition> {
    fn go(rest: u32, max: u32, prefix: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if rest == 0 {
            out.push(Partition(prefix.clone()));
            return;
        }
        for p in (1..=rest.min(max)).rev() {
            prefix.push(p);
            go(rest - p, p, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

/// `|C_mu| = n! / z_mu`.
pub fn class_size(mu: &Partition) -> BigInt {
    let mut fact = BigInt::from(1u32);
    for k in 2..=mu.size() {
        fact *= k;
    }
    fact / mu.z()
}

/// Framing exponent: `sum over cells of 2 (col - row)`.
pub fn kappa(lambda: &Partition) -> i64 {
    lambda.cells().map(|(i, j)| 2 * (j as i64 - i as i64)).sum()
}

/// `(hook length, content)` of every cell, row-major.
pub fn hooks_contents(lambda: &Partition) -> Vec<(u32, i64)> {
    let conj = lambda.conjugate();
    lambda
        .cells()
        .map(|(i, j)| {
            let arm = lambda.0[i] as usize - j - 1;
            let leg = conj.0[j] as usize - i - 1;
            ((arm + leg + 1) as u32, j as i64 - i as i64)
        })
        .collect()
}

/// Union of parts, multiplicities added.
pub fn add_partitions(mu1: &Partition, mu2: &Partition) -> Partition {
    let mut parts = mu1.0.clone();
    parts.extend_from_slice(&mu2.0);
    Partition::new(parts)
}

/// `(r mu_1, r mu_2, ...)`.
pub fn stretch(mu: &Partition, r: u32) -> Partition {
    Partition(mu.0.iter().map(|p| p * r).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p<const N: usize>(parts: [u32; N]) -> Partition {
        Partition::from(parts)
    }

    /// Independent count via Euler's pentagonal recurrence.
    fn pentagonal_count(n: usize) -> Vec<i64> {
        let mut p = vec![0i64; n + 1];
        p[0] = 1;
        for m in 1..=n {
            let mut k = 1i64;
            loop {
                let g1 = (k * (3 * k - 1) / 2) as usize;
                if g1 > m {
                    break;
                }
                let sign = if k % 2 == 1 { 1 } else { -1 };
                p[m] += sign * p[m - g1];
                let g2 = (k * (3 * k + 1) / 2) as usize;
                if g2 <= m {
                    p[m] += sign * p[m - g2];
                }
                k += 1;
            }
        }
        p
    }

    #[test]
    fn small_enumerations() {
        assert_eq!(partitions_of(0), vec![Partition::empty()]);
        assert_eq!(partitions_of(2), vec![p([2]), p([1, 1])]);
        assert_eq!(partitions_of(6).len(), 11);
        assert_eq!(
            partitions_of(4),
            vec![p([4]), p([3, 1]), p([2, 2]), p([2, 1, 1]), p([1, 1, 1, 1])]
        );
    }

    #[test]
    fn counts_match_pentagonal_recurrence() {
        let expected = pentagonal_count(20);
        for n in 0..=20u32 {
            let parts = partitions_of(n);
            assert_eq!(parts.len() as i64, expected[n as usize], "p({n})");
            let mut sorted = parts.clone();
            sorted.sort();
            sorted.dedup();
            assert_eq!(sorted, parts, "order/duplicates at n={n}");
        }
    }

    #[test]
    fn class_sizes() {
        assert_eq!(class_size(&p([1, 1])), BigInt::from(1));
        assert_eq!(class_size(&p([2, 1])), BigInt::from(3));
        let total: BigInt = partitions_of(5).iter().map(class_size).sum();
        assert_eq!(total, BigInt::from(120));
    }

    /// Brute force: count permutations of S_n by cycle type.
    fn cycle_type(perm: &[usize]) -> Partition {
        let mut seen = vec![false; perm.len()];
        let mut parts = Vec::new();
        for s in 0..perm.len() {
            if !seen[s] {
                let mut len = 0;
                let mut x = s;
                while !seen[x] {
                    seen[x] = true;
                    x = perm[x];
                    len += 1;
                }
                parts.push(len);
            }
        }
        Partition::new(parts)
    }

    fn all_perms(n: usize) -> Vec<Vec<usize>> {
        if n == 0 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for sub in all_perms(n - 1) {
            for pos in 0..n {
                let mut v = sub.clone();
                v.insert(pos, n - 1);
                out.push(v);
            }
        }
        out
    }

    #[test]
    fn class_sizes_match_brute_force() {
        for n in 1..=6 {
            let mut counts: BTreeMap<Partition, i64> = BTreeMap::new();
            for perm in all_perms(n) {
                *counts.entry(cycle_type(&perm)).or_default() += 1;
            }
            for mu in partitions_of(n as u32) {
                assert_eq!(class_size(&mu), BigInt::from(counts[&mu]), "{mu:?}");
            }
        }
    }

    #[test]
    fn class_sizes_sum_to_factorial() {
        let mut fact = BigInt::from(1);
        for n in 1..=8u32 {
            fact *= n;
            let total: BigInt = partitions_of(n).iter().map(class_size).sum();
            assert_eq!(total, fact);
        }
    }

    #[test]
    fn kappa_values() {
        assert_eq!(kappa(&p([1])), 0);
        assert_eq!(kappa(&p([2])), 2);
        assert_eq!(kappa(&p([3, 1])), 4);
        for n in 0..=10 {
            for lam in partitions_of(n) {
                assert_eq!(kappa(&lam.conjugate()), -kappa(&lam));
            }
        }
    }

    #[test]
    fn hooks_and_contents() {
        assert_eq!(hooks_contents(&p([1])), vec![(1, 0)]);
        assert_eq!(hooks_contents(&p([2])), vec![(2, 0), (1, 1)]);
        assert_eq!(hooks_contents(&p([2, 1])), vec![(3, 0), (1, 1), (1, -1)]);
        assert_eq!(p([3, 2, 1]).dimension(), BigInt::from(16));
    }

    #[test]
    fn adding_and_stretching() {
        assert_eq!(add_partitions(&p([2, 1]), &p([1])), p([2, 1, 1]));
        assert_eq!(add_partitions(&p([3]), &p([3])), p([3, 3]));
        assert_eq!(add_partitions(&Partition::empty(), &p([2])), p([2]));
        assert_eq!(stretch(&p([2, 1]), 1), p([2, 1]));
        assert_eq!(stretch(&p([1]), 3), p([3]));
        assert_eq!(stretch(&p([2, 1]), 2), p([4, 2]));
    }

    #[test]
    fn text_syntax() {
        assert_eq!("2,1".parse::<Partition>().unwrap(), p([2, 1]));
        assert_eq!("".parse::<Partition>().unwrap(), Partition::empty());
        assert!("1,2".parse::<Partition>().is_err());
        let t: PartitionTuple = "2|1,1".parse().unwrap();
        assert_eq!(t.entries(), &[p([2]), p([1, 1])]);
        assert_eq!(t.to_string(), "2|1,1");
        let t: PartitionTuple = "|1".parse().unwrap();
        assert_eq!(t.degrees(), vec![0, 1]);
    }

    fn arb_partition() -> impl Strategy<Value = Partition> {
        prop::collection::vec(1u32..5, 0..5).prop_map(Partition::new)
    }

    proptest! {
        #[test]
        fn stretch_scales_size(mu in arb_partition(), r in 1u32..5) {
            prop_assert_eq!(stretch(&mu, r).size(), r * mu.size());
        }

        #[test]
        fn add_is_commutative_and_associative(
            a in arb_partition(), b in arb_partition(), c in arb_partition()
        ) {
            prop_assert_eq!(add_partitions(&a, &b), add_partitions(&b, &a));
            prop_assert_eq!(
                add_partitions(&add_partitions(&a, &b), &c),
                add_partitions(&a, &add_partitions(&b, &c))
            );
        }
    }
}
