//! Exact binomials and colexicographic rank/unrank of subsets.
//!
//! A subset `{c_1 < … < c_m}` of `[n]` has colex rank `Σ C(c_i − 1, i)`.
//! Ranks are 0-based, elements 1-based.

use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use thiserror::Error;

/// Arbitrary-precision nonnegative integer.
pub type BigNat = BigUint;

/// Threshold below which [`BinomialTable::default`] memoizes Pascal's triangle.
pub const DEFAULT_TABLE_MAX_N: u64 = 128;

/// `C(n, k)` exactly. Zero when `k > n`.
pub fn binomial(n: u64, k: u64) -> BigNat {
    if k > n {
        return BigNat::zero();
    }
    if let Some(v) = binomial_u64(n, k) {
        return BigNat::from(v);
    }
    binomial_big(&BigNat::from(n), k)
}

/// `C(n, k)` for a big upper argument, by the multiplicative formula with an
/// exact division at every step.
pub fn binomial_big(n: &BigNat, k: u64) -> BigNat {
    let k_big = BigNat::from(k);
    if &k_big > n {
        return BigNat::zero();
    }
    let complement = n - &k_big;
    let k = match complement.to_u64() {
        Some(c) if c < k => c,
        _ => k,
    };
    let mut acc = BigNat::one();
    for i in 0..k {
        acc *= n - BigNat::from(i);
        acc /= BigNat::from(i + 1);
    }
    acc
}

/// `C(n, k)` if it fits in a `u64`.
pub fn binomial_u64(n: u64, k: u64) -> Option<u64> {
    if k > n {
        return Some(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        // C(n, i) is increasing for i <= n/2, so overflow here is final.
        acc = acc * u128::from(n - i) / u128::from(i + 1);
        if acc > u128::from(u64::MAX) {
            return None;
        }
    }
    Some(acc as u64)
}

/// Memoized Pascal triangle for `n <= max_n`, falling back to the
/// multiplicative formula above it. Immutable after construction.
#[derive(Debug, Clone)]
pub struct BinomialTable {
    rows: Vec<Vec<BigNat>>,
}

impl BinomialTable {
    pub fn new(max_n: u64) -> Self {
        let mut rows: Vec<Vec<BigNat>> = Vec::with_capacity(max_n as usize + 1);
        for n in 0..=max_n as usize {
            let mut row = Vec::with_capacity(n + 1);
            row.push(BigNat::one());
            for k in 1..n {
                let prev = &rows[n - 1];
                row.push(&prev[k - 1] + &prev[k]);
            }
            if n > 0 {
                row.push(BigNat::one());
            }
            rows.push(row);
        }
        Self { rows }
    }

    pub fn max_n(&self) -> u64 {
        self.rows.len() as u64 - 1
    }

    pub fn get(&self, n: u64, k: u64) -> BigNat {
        if k > n {
            return BigNat::zero();
        }
        match self.rows.get(n as usize) {
            Some(row) => row[k as usize].clone(),
            None => binomial(n, k),
        }
    }

    pub fn colex_rank(&self, subset: &KSubset) -> BigNat {
        rank_with(&subset.elements, |n, k| self.get(n, k))
    }

    pub fn colex_unrank(&self, rank: &BigNat, m: u64, n: u64) -> Result<KSubset, RankError> {
        unrank_with(rank, m, n, |n, k| self.get(n, k))
    }
}

impl Default for BinomialTable {
    fn default() -> Self {
        Self::new(DEFAULT_TABLE_MAX_N)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SubsetError {
    #[error("element {element} is outside [1, {ground}]")]
    OutOfRange { element: u64, ground: u64 },
    #[error("element {0} appears more than once")]
    Duplicate(u64),
    #[error("elements are not in increasing order at position {0}")]
    NotIncreasing(usize),
    #[error("expected a {expected}-subset, got {actual} elements")]
    WrongSize { expected: u64, actual: u64 },
    #[error("expected ground set [{expected}], got [{actual}]")]
    WrongGround { expected: u64, actual: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RankError {
    #[error("rank {rank} out of range: must be below {bound}")]
    OutOfRange { rank: BigNat, bound: BigNat },
}

/// A subset of `[ground]` stored as strictly increasing 1-based elements.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct KSubset {
    elements: Vec<u64>,
    ground: u64,
}

impl KSubset {
    /// Builds a subset from elements that are already strictly increasing.
    pub fn new(elements: Vec<u64>, ground: u64) -> Result<Self, SubsetError> {
        for (i, pair) in elements.windows(2).enumerate() {
            match pair[0].cmp(&pair[1]) {
                Ordering::Less => {}
                Ordering::Equal => return Err(SubsetError::Duplicate(pair[0])),
                Ordering::Greater => return Err(SubsetError::NotIncreasing(i + 1)),
            }
        }
        if let Some(&bad) = elements.iter().find(|&&e| e == 0 || e > ground) {
            return Err(SubsetError::OutOfRange {
                element: bad,
                ground,
            });
        }
        Ok(Self { elements, ground })
    }

    /// Sorts first; duplicates are still rejected.
    pub fn from_unsorted(mut elements: Vec<u64>, ground: u64) -> Result<Self, SubsetError> {
        elements.sort_unstable();
        Self::new(elements, ground)
    }

    pub(crate) fn from_sorted_unchecked(elements: Vec<u64>, ground: u64) -> Self {
        debug_assert!(elements.windows(2).all(|w| w[0] < w[1]));
        Self { elements, ground }
    }

    pub fn elements(&self) -> &[u64] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn ground(&self) -> u64 {
        self.ground
    }

    pub fn contains(&self, element: u64) -> bool {
        self.elements.binary_search(&element).is_ok()
    }

    /// Sorted-merge containment test, `O(|self| + |other|)`.
    pub fn is_subset_of(&self, other: &KSubset) -> bool {
        is_sorted_subset(&self.elements, &other.elements)
    }

    pub fn intersection_len(&self, other: &KSubset) -> usize {
        let (mut i, mut j, mut count) = (0, 0, 0);
        let (a, b) = (&self.elements, &other.elements);
        while i < a.len() && j < b.len() {
            match a[i].cmp(&b[j]) {
                Ordering::Less => i += 1,
                Ordering::Greater => j += 1,
                Ordering::Equal => {
                    count += 1;
                    i += 1;
                    j += 1;
                }
            }
        }
        count
    }

    /// Checks size and ground set against an expected shape.
    pub fn check_shape(&self, size: u64, ground: u64) -> Result<(), SubsetError> {
        if self.ground != ground {
            return Err(SubsetError::WrongGround {
                expected: ground,
                actual: self.ground,
            });
        }
        if self.elements.len() as u64 != size {
            return Err(SubsetError::WrongSize {
                expected: size,
                actual: self.elements.len() as u64,
            });
        }
        Ok(())
    }

    /// Colexicographic comparison: compare largest elements first.
    pub fn colex_cmp(&self, other: &KSubset) -> Ordering {
        colex_cmp(&self.elements, &other.elements)
    }
}

impl fmt::Display for KSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, e) in self.elements.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{e}")?;
        }
        f.write_str("}")
    }
}

pub(crate) fn is_sorted_subset(small: &[u64], large: &[u64]) -> bool {
    if small.len() > large.len() {
        return false;
    }
    let mut j = 0;
    for &x in small {
        while j < large.len() && large[j] < x {
            j += 1;
        }
        if j == large.len() || large[j] != x {
            return false;
        }
        j += 1;
    }
    true
}

pub(crate) fn colex_cmp(a: &[u64], b: &[u64]) -> Ordering {
    a.len()
        .cmp(&b.len())
        .then_with(|| a.iter().rev().cmp(b.iter().rev()))
}

/// 0-based colex rank of `subset` among all subsets of the same size.
pub fn colex_rank(subset: &KSubset) -> BigNat {
    rank_with(&subset.elements, binomial)
}

/// The `m`-subset of `[n]` with the given colex rank.
pub fn colex_unrank(rank: &BigNat, m: u64, n: u64) -> Result<KSubset, RankError> {
    unrank_with(rank, m, n, binomial)
}

fn rank_with(elements: &[u64], binom: impl Fn(u64, u64) -> BigNat) -> BigNat {
    elements
        .iter()
        .enumerate()
        .map(|(i, &c)| binom(c - 1, i as u64 + 1))
        .sum()
}

fn unrank_with(
    rank: &BigNat,
    m: u64,
    n: u64,
    binom: impl Fn(u64, u64) -> BigNat,
) -> Result<KSubset, RankError> {
    let bound = binom(n, m);
    if rank >= &bound {
        return Err(RankError::OutOfRange {
            rank: rank.clone(),
            bound,
        });
    }
    let mut rest = rank.clone();
    let mut elements = alloc::vec![0u64; m as usize];
    let mut hi = n;
    for i in (1..=m).rev() {
        // Largest c in [i, hi] with C(c - 1, i) <= rest; C(i - 1, i) = 0 always qualifies.
        let (mut lo, mut top) = (i, hi);
        while lo < top {
            let mid = lo + (top - lo).div_ceil(2);
            if binom(mid - 1, i) <= rest {
                lo = mid;
            } else {
                top = mid - 1;
            }
        }
        rest -= binom(lo - 1, i);
        elements[i as usize - 1] = lo;
        hi = lo - 1;
    }
    Ok(KSubset::from_sorted_unchecked(elements, n))
}

/// Colex rank in machine arithmetic; `None` on overflow.
pub fn colex_rank_u64(elements: &[u64]) -> Option<u64> {
    elements.iter().enumerate().try_fold(0u64, |acc, (i, &c)| {
        acc.checked_add(binomial_u64(c - 1, i as u64 + 1)?)
    })
}

/// Machine-arithmetic unrank; `None` when `rank >= C(n, m)` or `C(n, m)`
/// does not fit in a `u64`.
pub fn colex_unrank_u64(rank: u64, m: u64, n: u64) -> Option<Vec<u64>> {
    if rank >= binomial_u64(n, m)? {
        return None;
    }
    let mut rest = rank;
    let mut elements = alloc::vec![0u64; m as usize];
    let mut hi = n;
    for i in (1..=m).rev() {
        let (mut lo, mut top) = (i, hi);
        while lo < top {
            let mid = lo + (top - lo).div_ceil(2);
            // Every C(c-1, i) with c <= hi is bounded by C(n, m) here, so no overflow.
            if binomial_u64(mid - 1, i)? <= rest {
                lo = mid;
            } else {
                top = mid - 1;
            }
        }
        rest -= binomial_u64(lo - 1, i)?;
        elements[i as usize - 1] = lo;
        hi = lo - 1;
    }
    Some(elements)
}

/// Advances a sorted `m`-subset of `[n]` to its colex successor in place.
/// Returns `false` (leaving the input unchanged) if it was the last one.
pub fn next_colex(elements: &mut [u64], n: u64) -> bool {
    next_colex_pivot(elements, n).is_some()
}

/// Like [`next_colex`], returning the highest position that changed. Every
/// position above it is untouched.
pub(crate) fn next_colex_pivot(elements: &mut [u64], n: u64) -> Option<usize> {
    let m = elements.len();
    for i in 0..m {
        let limit = if i + 1 < m { elements[i + 1] } else { n + 1 };
        if elements[i] + 1 < limit {
            elements[i] += 1;
            for (j, e) in elements.iter_mut().take(i).enumerate() {
                *e = j as u64 + 1;
            }
            return Some(i);
        }
    }
    None
}

/// Iterates all `m`-subsets of `[n]` in colex order.
pub fn colex_subsets(m: u64, n: u64) -> ColexSubsets {
    let first = if m <= n {
        Some((1..=m).collect())
    } else {
        None
    };
    ColexSubsets { current: first, n }
}

#[derive(Debug, Clone)]
pub struct ColexSubsets {
    current: Option<Vec<u64>>,
    n: u64,
}

impl Iterator for ColexSubsets {
    type Item = Vec<u64>;

    fn next(&mut self) -> Option<Vec<u64>> {
        let out = self.current.take()?;
        let mut succ = out.clone();
        if next_colex(&mut succ, self.n) {
            self.current = Some(succ);
        }
        Some(out)
    }
}
