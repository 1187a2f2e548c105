//! Rank profiles (Whitney numbers) of chains and their products.
//!
//! A product of chains `[m_1] x ... x [m_n]` is ranked by coordinate sum,
//! with the minimal element `(1,...,1)` at rank `n` and the maximal element
//! at rank `sum(m_i)`. The Whitney numbers of the product are the iterated
//! convolution of the chains' profiles, and the largest antichain sits at
//! the median rank.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::numeric::{binomial, ExactInteger};
use crate::{Error, Result};

/// The tuple of chain lengths `(m_1, ..., m_n)`, all positive, `n >= 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShapeVector {
    entries: Vec<u32>,
}

impl ShapeVector {
    pub fn new(entries: Vec<u32>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::EmptyShape);
        }
        if let Some(&bad) = entries.iter().find(|&&m| m == 0) {
            return Err(Error::NonPositiveChainLength(bad as i64));
        }
        Ok(ShapeVector { entries })
    }

    /// Homogeneous shape `(m, ..., m)` with `n` entries.
    pub fn homogeneous(m: u32, n: usize) -> Result<Self> {
        Self::new(vec![m; n])
    }

    pub fn entries(&self) -> &[u32] {
        &self.entries
    }

    pub fn n(&self) -> usize {
        self.entries.len()
    }

    /// `sum(m_i)`, the rank of the maximal element.
    pub fn sum(&self) -> i64 {
        self.entries.iter().map(|&m| m as i64).sum()
    }

    /// `prod(m_i)`, the number of elements of the product poset.
    pub fn product(&self) -> ExactInteger {
        let mut p = BigInt::one();
        for &m in &self.entries {
            p *= BigInt::from(m);
        }
        p
    }

    pub fn is_homogeneous(&self) -> bool {
        self.entries.iter().all(|&m| m == self.entries[0])
    }
}

impl fmt::Display for ShapeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.entries.iter().map(|m| m.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

impl FromStr for ShapeVector {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let entries = s
            .split(',')
            .map(|part| {
                part.trim()
                    .parse::<u32>()
                    .map_err(|_| Error::MalformedShape(part.trim().to_string()))
            })
            .collect::<Result<Vec<u32>>>()?;
        ShapeVector::new(entries)
    }
}

/// Whitney numbers of a ranked poset, stored dense from the first to the
/// last nonzero rank with an explicit offset. Ranks outside the window
/// read as zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RankProfile {
    min_rank: i64,
    counts: Vec<ExactInteger>,
}

impl RankProfile {
    /// Counts must start and end with a nonzero entry.
    pub fn new(min_rank: i64, counts: Vec<ExactInteger>) -> Self {
        assert!(!counts.is_empty(), "profile must have at least one rank");
        assert!(
            !counts.first().unwrap().is_zero() && !counts.last().unwrap().is_zero(),
            "profile window must be tight"
        );
        RankProfile { min_rank, counts }
    }

    pub fn min_rank(&self) -> i64 {
        self.min_rank
    }

    pub fn max_rank(&self) -> i64 {
        self.min_rank + self.counts.len() as i64 - 1
    }

    pub fn counts(&self) -> &[ExactInteger] {
        &self.counts
    }

    /// Whitney number at `rank`; zero outside the stored window.
    pub fn get(&self, rank: i64) -> ExactInteger {
        if rank < self.min_rank || rank > self.max_rank() {
            return BigInt::zero();
        }
        self.counts[(rank - self.min_rank) as usize].clone()
    }

    /// Total mass, `sum_i p_i`.
    pub fn total(&self) -> ExactInteger {
        self.counts.iter().sum()
    }

    pub fn is_symmetric(&self) -> bool {
        let k = self.counts.len();
        (0..k / 2).all(|i| self.counts[i] == self.counts[k - 1 - i])
    }

    pub fn is_unimodal(&self) -> bool {
        let peak = self
            .counts
            .windows(2)
            .take_while(|w| w[0] <= w[1])
            .count();
        self.counts[peak..].windows(2).all(|w| w[0] >= w[1])
    }

    /// JSON form `{min_rank, counts: ["…", …]}` with counts as decimal
    /// strings so consumers never lose precision.
    pub fn to_json(&self) -> serde_json::Value {
        #[derive(Serialize)]
        struct Repr {
            min_rank: i64,
            counts: Vec<String>,
        }
        serde_json::to_value(Repr {
            min_rank: self.min_rank,
            counts: self.counts.iter().map(|c| c.to_string()).collect(),
        })
        .expect("profile serialization cannot fail")
    }
}

/// Median rank `h = floor((n + sum(m_i)) / 2)`; for a homogeneous shape this
/// equals `floor(n(m+1)/2)`.
pub fn median_rank(shape: &ShapeVector) -> i64 {
    (shape.n() as i64 + shape.sum()) / 2
}

/// Profile of a single chain `[m]`: one element at each rank `1..=m`.
pub fn chain_profile(m: u32) -> RankProfile {
    assert!(m >= 1);
    RankProfile::new(1, vec![BigInt::one(); m as usize])
}

/// Convolution of two profiles: the profile of the product poset,
/// `r_l = sum_i p_i q_{l-i}`.
pub fn convolve(p: &RankProfile, q: &RankProfile) -> RankProfile {
    let mut counts = vec![BigInt::zero(); p.counts.len() + q.counts.len() - 1];
    for (i, pc) in p.counts.iter().enumerate() {
        for (j, qc) in q.counts.iter().enumerate() {
            counts[i + j] += pc * qc;
        }
    }
    RankProfile::new(p.min_rank + q.min_rank, counts)
}

/// Profile of the full chain product: left fold of [`convolve`] over the
/// chains of `shape`.
pub fn product_profile(shape: &ShapeVector) -> RankProfile {
    let mut entries = shape.entries().iter();
    let first = chain_profile(*entries.next().expect("shape is nonempty"));
    entries.fold(first, |acc, &m| convolve(&acc, &chain_profile(m)))
}

/// The largest Whitney number of the chain product: the profile evaluated
/// at the median rank. This is the convolution route to `s(shape)`.
pub fn max_rank_size(shape: &ShapeVector) -> ExactInteger {
    product_profile(shape).get(median_rank(shape))
}

/// Signed subset-sum table of a shape: maps each achievable subset sum
/// `m_I = sum_{i in I} m_i` to `sum_{I: m_I = t} (-1)^|I|`.
///
/// Grouping by distinct chain lengths with multiplicities keeps this
/// polynomial in the shape size even when `n` is large, as long as many
/// entries coincide.
pub fn signed_subset_sums(shape: &ShapeVector) -> BTreeMap<i64, ExactInteger> {
    let mut multiplicity: BTreeMap<u32, u32> = BTreeMap::new();
    for &m in shape.entries() {
        *multiplicity.entry(m).or_insert(0) += 1;
    }
    let mut table: BTreeMap<i64, ExactInteger> = BTreeMap::new();
    table.insert(0, BigInt::one());
    for (&value, &count) in &multiplicity {
        // weights for choosing k of the `count` equal chains: C(count,k)(-1)^k
        let weights: Vec<(i64, ExactInteger)> = (0..=count as i64)
            .map(|k| {
                let w = binomial(count as i64, k);
                (k * value as i64, if k % 2 == 0 { w } else { -w })
            })
            .collect();
        let mut next: BTreeMap<i64, ExactInteger> = BTreeMap::new();
        for (sum, coeff) in &table {
            for (offset, w) in &weights {
                let entry = next.entry(sum + offset).or_insert_with(BigInt::zero);
                *entry += coeff * w;
            }
        }
        table = next;
    }
    table
}

/// Number of tuples `y` in the product with `sum(y_i) = r`, by
/// inclusion-exclusion over the coordinates that exceed their bound.
/// Equals `product_profile(shape).get(r)` for every integer `r`; ranks
/// outside the window give 0.
///
/// Homogeneous shapes take the binomial-weighted form
/// `sum_i (-1)^i C(n,i) C(r - i*m - 1, n-1)`; heterogeneous shapes sum over
/// the signed subset-sum table.
pub fn bounded_composition_count(shape: &ShapeVector, r: i64) -> ExactInteger {
    let n = shape.n() as i64;
    if r < n {
        return BigInt::zero();
    }
    if shape.is_homogeneous() {
        let m = shape.entries()[0] as i64;
        let mut acc = BigInt::zero();
        for i in 0..=n {
            let term = binomial(n, i) * binomial(r - i * m - 1, n - 1);
            if i % 2 == 0 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        acc
    } else {
        signed_subset_sums(shape)
            .iter()
            .map(|(t, w)| w * binomial(r - t - 1, n - 1))
            .sum()
    }
}
