//! Partitions of `n` cyclically ordered points into `k` blocks with no two
//! neighbours in the same block, their closed-form count, and the identity
//! tying them to configuration counts on `P^1(F_q)`.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::formulas::count_configurations;
use crate::gf::Field;
use crate::moduli::{self, ModuliError, SignFilter};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PartitionError {
    #[error("closed form for A({k},{n}) is not an integer; k! * A = {scaled}")]
    NonIntegralResult { k: usize, n: usize, scaled: BigInt },
    #[error("need n >= 2 and 2 <= k <= n, got k = {k}, n = {n}")]
    OutOfRange { k: usize, n: usize },
    #[error(transparent)]
    Moduli(#[from] ModuliError),
}

/// A set partition of `{1, ..., n}` with no block containing cyclic
/// neighbours, stored as a restricted growth string: `labels[i]` is the
/// block of point `i + 1`, blocks numbered by least element.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CyclicPartition {
    labels: Vec<u8>,
}

impl CyclicPartition {
    pub fn n(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[u8] {
        &self.labels
    }

    pub fn num_blocks(&self) -> usize {
        self.labels.iter().max().map_or(0, |&m| m as usize + 1)
    }

    /// Blocks as sorted lists of 1-based points, ordered by least element.
    pub fn blocks(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.num_blocks()];
        for (i, &b) in self.labels.iter().enumerate() {
            out[b as usize].push(i + 1);
        }
        out
    }

    /// Canonical restricted growth string of an arbitrary labelling.
    pub fn from_labels<T: Eq + std::hash::Hash>(labels: &[T]) -> CyclicPartition {
        let mut seen: HashMap<&T, u8> = HashMap::new();
        let labels = labels
            .iter()
            .map(|l| {
                let next = seen.len() as u8;
                *seen.entry(l).or_insert(next)
            })
            .collect();
        CyclicPartition { labels }
    }

    pub fn is_cyclically_valid(&self) -> bool {
        let n = self.labels.len();
        (0..n).all(|i| self.labels[i] != self.labels[(i + 1) % n])
    }
}

/// Calls `visit` with every valid restricted growth string for `(n, k)`.
/// A point never joins its left neighbour's block, and the last point
/// never joins block 0 (the block of point 1).
pub fn visit_cyclic_partitions(n: usize, k: usize, mut visit: impl FnMut(&[u8])) {
    if n < 2 || k == 0 || k > n {
        return;
    }
    let mut labels = vec![0u8; n];
    fn go(labels: &mut [u8], pos: usize, used: usize, k: usize, visit: &mut dyn FnMut(&[u8])) {
        let n = labels.len();
        if pos == n {
            if used == k && labels[n - 1] != 0 {
                visit(labels);
            }
            return;
        }
        // not enough points left to open the missing blocks
        if used + (n - pos) < k {
            return;
        }
        let top = used.min(k - 1);
        for b in 0..=top {
            if b as u8 == labels[pos - 1] {
                continue;
            }
            if pos == n - 1 && b == 0 {
                continue;
            }
            labels[pos] = b as u8;
            go(labels, pos + 1, used.max(b + 1), k, visit);
        }
    }
    go(&mut labels, 1, 1, k, &mut visit);
}

pub fn enumerate_cyclic_partitions(n: usize, k: usize) -> Vec<CyclicPartition> {
    let mut out = Vec::new();
    visit_cyclic_partitions(n, k, |l| out.push(CyclicPartition { labels: l.to_vec() }));
    out
}

/// Brute-force `A_{k,n}`.
pub fn count_cyclic_partitions(n: usize, k: usize) -> u64 {
    let mut count = 0;
    visit_cyclic_partitions(n, k, |_| count += 1);
    count
}

fn binomial(n: usize, k: usize) -> BigInt {
    (0..k).fold(BigInt::one(), |acc, i| acc * (n - i) / (i + 1))
}

fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * i)
}

/// `A_{k,n} = (-1)^k sum_{j=2}^k (-1)^j / (j! (k-j)!) ((j-1)^n + (-1)^n (j-1))`,
/// computed as `k! A_{k,n}` in integers followed by an exact division.
pub fn a_kn_closed_form(k: usize, n: usize) -> Result<BigInt, PartitionError> {
    if n < 2 || k < 2 || k > n {
        return Err(PartitionError::OutOfRange { k, n });
    }
    let sign = |e: usize| {
        if e.is_multiple_of(2) {
            BigInt::one()
        } else {
            -BigInt::one()
        }
    };
    let mut scaled = BigInt::zero();
    for j in 2..=k {
        let base = BigInt::from(j - 1);
        let cn = base.pow(n as u32) + sign(n) * &base;
        scaled += sign(j) * binomial(k, j) * cn;
    }
    scaled *= sign(k);
    let (quo, rem) = scaled.div_rem(&factorial(k));
    if !rem.is_zero() {
        return Err(PartitionError::NonIntegralResult { k, n, scaled });
    }
    Ok(quo)
}

/// Coefficients of a polynomial in the falling-factorial basis
/// `(q)_k = q (q - 1) ... (q - k + 1)`, stored as `k! B_k` so that the
/// expansion stays in integers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FallingFactorialExpansion {
    scaled: Vec<BigInt>,
}

impl FallingFactorialExpansion {
    pub fn degree_bound(&self) -> usize {
        self.scaled.len().saturating_sub(1)
    }

    /// `k! B_k`.
    pub fn scaled_coefficients(&self) -> &[BigInt] {
        &self.scaled
    }

    /// `B_k` when it is an integer.
    pub fn coefficient(&self, k: usize) -> Option<BigInt> {
        let (quo, rem) = self.scaled.get(k)?.div_rem(&factorial(k));
        rem.is_zero().then_some(quo)
    }

    /// Integer coefficients `B_0..B_n`, or `None` if any is fractional.
    pub fn integer_coefficients(&self) -> Option<Vec<BigInt>> {
        (0..self.scaled.len())
            .map(|k| self.coefficient(k))
            .collect()
    }

    /// `sum_k B_k (x)_k`, using `(x)_k / k! = binom(x, k)` to stay exact.
    pub fn evaluate(&self, x: &BigInt) -> BigInt {
        let mut total = BigInt::zero();
        let mut binom = BigInt::one(); // binom(x, 0)
        for (k, s) in self.scaled.iter().enumerate() {
            if k > 0 {
                binom = binom * (x - BigInt::from(k - 1)) / BigInt::from(k);
            }
            total += s * &binom;
        }
        total
    }
}

/// Expands the polynomial with samples `values[j] = P(j)`, `j = 0..=n`:
/// `B_k = (-1)^k sum_{j<=k} (-1)^j P(j) / (j! (k - j)!)`.
pub fn falling_factorial_expand(values: &[BigInt]) -> FallingFactorialExpansion {
    let scaled = (0..values.len())
        .map(|k| {
            let mut s = BigInt::zero();
            for (j, v) in values.iter().enumerate().take(k + 1) {
                let term = binomial(k, j) * v;
                if (k - j) % 2 == 0 {
                    s += term;
                } else {
                    s -= term;
                }
            }
            s
        })
        .collect();
    FallingFactorialExpansion { scaled }
}

/// Samples `c_n(t + 1) / ((t + 1)(t + 2))` at `t = 0..=n-2`; its
/// falling-factorial coefficients are `A_{2,n}, ..., A_{n,n}`.
pub fn shifted_configuration_samples(n: usize) -> Vec<BigInt> {
    (0..=n.saturating_sub(2))
        .map(|t| {
            let q = t as u64 + 1;
            let cn = BigInt::from(count_configurations(q, n));
            let (quo, rem) = cn.div_rem(&BigInt::from(q * (q + 1)));
            assert!(rem.is_zero());
            quo
        })
        .collect()
}

/// `q (q + 1) sum_{k=2}^n A_{k,n} prod_{j=1}^{k-2} (q - j)` with brute-force
/// partition counts.
pub fn configuration_count_from_partitions(q: u64, n: usize) -> BigInt {
    let qb = BigInt::from(q);
    let mut sum = BigInt::zero();
    for k in 2..=n {
        let a = count_cyclic_partitions(n, k);
        if a == 0 {
            continue;
        }
        let prod = (1..=k.saturating_sub(2)).fold(BigInt::one(), |acc, j| acc * (&qb - j));
        sum += prod * a;
    }
    &qb * (&qb + 1) * sum
}

/// Result of [`verify_partition_identity`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartitionIdentityReport {
    pub n: usize,
    pub q: u64,
    pub closed_form: BigInt,
    pub from_partitions: BigInt,
    /// Configurations grouped by the partition of positions into equal
    /// points: every pattern is cyclically valid and has the predicted size.
    pub patterns_consistent: bool,
    /// Number of distinct equality patterns seen, per block count `k`.
    pub patterns_by_blocks: Vec<(usize, u64)>,
}

impl PartitionIdentityReport {
    pub fn holds(&self) -> bool {
        self.closed_form == self.from_partitions && self.patterns_consistent
    }
}

/// Compares `c_n` with the partition sum, and classifies every configuration
/// of `C_n(F_q)` by its equality pattern.
pub fn verify_partition_identity(
    field: &Field,
    n: usize,
    budget: u64,
) -> Result<PartitionIdentityReport, PartitionError> {
    let q = field.order() as u64;
    let mut patterns: HashMap<CyclicPartition, u64> = HashMap::new();
    let mut total = 0u64;
    for cfg in moduli::enumerate_configurations(field, n, SignFilter::All, budget)? {
        let pattern = CyclicPartition::from_labels(cfg.points());
        *patterns.entry(pattern).or_default() += 1;
        total += 1;
    }
    let mut consistent = true;
    let mut by_blocks: HashMap<usize, u64> = HashMap::new();
    for (pattern, &count) in &patterns {
        let k = pattern.num_blocks();
        let predicted: BigInt = (0..k as u64).map(|j| BigInt::from(q + 1) - j).product();
        consistent &= pattern.is_cyclically_valid() && predicted == BigInt::from(count);
        *by_blocks.entry(k).or_default() += 1;
    }
    // all partitions with at most q + 1 blocks must be realized
    for k in 2..=n.min(q as usize + 1) {
        consistent &= by_blocks.get(&k).copied().unwrap_or(0) == count_cyclic_partitions(n, k);
    }
    let closed_form = BigInt::from(count_configurations(q, n));
    consistent &= BigInt::from(total) == closed_form;
    let mut patterns_by_blocks: Vec<(usize, u64)> = by_blocks.into_iter().collect();
    patterns_by_blocks.sort();
    Ok(PartitionIdentityReport {
        n,
        q,
        from_partitions: configuration_count_from_partitions(q, n),
        closed_form,
        patterns_consistent: consistent,
        patterns_by_blocks,
    })
}

/// Triangle of `A_{k,n}` for `2 <= n <= max_n`, `1 <= k <= n`.
pub fn partition_triangle(max_n: usize) -> Vec<Vec<u64>> {
    (2..=max_n)
        .map(|n| (1..=n).map(|k| count_cyclic_partitions(n, k)).collect())
        .collect()
}
