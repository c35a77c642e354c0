//! The code `X(k, s, l, n)`: addressing, the entry rule, closed-form sizes
//! and dense materialization.

use alloc::vec::Vec;
use core::fmt;

use num_traits::{ToPrimitive, Zero};
use thiserror::Error;

use crate::bitmatrix::BitMatrix;
use crate::combinatorics::{
    binomial, binomial_big, binomial_u64, colex_cmp, colex_rank, colex_rank_u64, colex_subsets,
    colex_unrank, colex_unrank_u64, next_colex, BigNat, KSubset, RankError, SubsetError,
};
use crate::params::{CodeParams, ParamError};

/// Default cap on `N * t` for [`materialize`], in bits.
pub const DEFAULT_BIT_BUDGET: u64 = 1 << 30;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CodeError {
    #[error(transparent)]
    Subset(#[from] SubsetError),
    #[error(transparent)]
    Rank(#[from] RankError),
    #[error(transparent)]
    Params(#[from] ParamError),
    #[error("row label has {actual} members, expected {expected}")]
    LabelSize { expected: u64, actual: u64 },
    #[error("row label lists {0} more than once")]
    DuplicateMember(KSubset),
    #[error("C(n,s) = {0} does not fit a machine index")]
    IndexOverflow(BigNat),
    #[error("{rows} rows exceed the row limit {limit}")]
    TooManyRows { rows: BigNat, limit: u64 },
    #[error("matrix needs {required_bits} bits, budget allows {allowed_bits}")]
    BudgetExceeded { required_bits: BigNat, allowed_bits: u64 },
}

/// A set of `l` distinct `s`-subsets of `[n]`, kept in increasing colex order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RowLabel {
    members: Vec<KSubset>,
}

impl RowLabel {
    /// Canonicalizes `members` into colex order. Every member must be an
    /// `s`-subset of `[n]` and no member may repeat.
    pub fn new(mut members: Vec<KSubset>, s: u64, n: u64) -> Result<Self, CodeError> {
        for m in &members {
            m.check_shape(s, n)?;
        }
        members.sort_by(|a, b| a.colex_cmp(b));
        if let Some(pair) = members.windows(2).find(|w| w[0] == w[1]) {
            return Err(CodeError::DuplicateMember(pair[0].clone()));
        }
        Ok(Self { members })
    }

    pub fn members(&self) -> &[KSubset] {
        &self.members
    }

    /// True iff some member is contained in `col`.
    pub fn covers(&self, col: &KSubset) -> bool {
        self.members.iter().any(|m| m.is_subset_of(col))
    }
}

impl fmt::Display for RowLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, m) in self.members.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{m}")?;
        }
        f.write_str("}")
    }
}

/// Sizes of `X(k, s, l, n)`.
#[derive(Debug, Clone, PartialEq)]
pub struct CodeDimensions {
    /// `N = C(C(n,s), l)`.
    pub num_rows: BigNat,
    /// `t = C(n,k)`.
    pub num_cols: BigNat,
    /// `w = C(C(n,s), l) - C(C(n,s) - C(k,s), l)`: labels with at least one
    /// member inside a fixed column, counted by complement.
    pub column_weight: BigNat,
    /// `R = log2(t) / N`. Underflows to zero only for astronomically large `N`.
    pub rate: f64,
}

impl CodeParams {
    /// `C(n, s)`, the number of candidate label members.
    pub fn member_count(&self) -> BigNat {
        binomial(self.n(), self.s())
    }

    fn member_count_u64(&self) -> Result<u64, CodeError> {
        binomial_u64(self.n(), self.s()).ok_or_else(|| CodeError::IndexOverflow(self.member_count()))
    }

    pub fn num_rows(&self) -> BigNat {
        binomial_big(&self.member_count(), self.ell())
    }

    pub fn num_cols(&self) -> BigNat {
        binomial(self.n(), self.k())
    }

    pub fn dimensions(&self) -> CodeDimensions {
        let members = self.member_count();
        let num_rows = binomial_big(&members, self.ell());
        let num_cols = self.num_cols();
        let inside = binomial(self.k(), self.s());
        let column_weight = &num_rows - binomial_big(&(&members - inside), self.ell());
        let log2_t = log2_big(&num_cols);
        let rate = libm::exp2(libm::log2(log2_t) - log2_big(&num_rows));
        CodeDimensions {
            num_rows,
            num_cols,
            column_weight,
            rate,
        }
    }

    /// The `(row, col)` entry: `1` iff some member of `row` lies inside `col`.
    pub fn entry(&self, row: &RowLabel, col: &KSubset) -> Result<bool, CodeError> {
        self.check_row(row)?;
        col.check_shape(self.k(), self.n())?;
        Ok(row.covers(col))
    }

    fn check_row(&self, row: &RowLabel) -> Result<(), CodeError> {
        let actual = row.members.len() as u64;
        if actual != self.ell() {
            return Err(CodeError::LabelSize {
                expected: self.ell(),
                actual,
            });
        }
        for m in &row.members {
            m.check_shape(self.s(), self.n())?;
        }
        Ok(())
    }

    /// Two-level unrank: `rank` picks an `l`-subset of member indices
    /// `[C(n,s)]`, and each index picks an `s`-subset of `[n]`.
    pub fn row_label_from_rank(&self, rank: &BigNat) -> Result<RowLabel, CodeError> {
        let members = self.member_count_u64()?;
        let indices = colex_unrank(rank, self.ell(), members)?;
        let subsets = indices
            .elements()
            .iter()
            .map(|&idx| self.member_from_index(idx - 1))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(RowLabel { members: subsets })
    }

    fn member_from_index(&self, index: u64) -> Result<KSubset, CodeError> {
        let elements = colex_unrank_u64(index, self.s(), self.n()).ok_or_else(|| {
            CodeError::Rank(RankError::OutOfRange {
                rank: index.into(),
                bound: self.member_count(),
            })
        })?;
        Ok(KSubset::new(elements, self.n())?)
    }

    pub fn row_rank_from_label(&self, row: &RowLabel) -> Result<BigNat, CodeError> {
        self.check_row(row)?;
        let members = self.member_count_u64()?;
        let indices = row
            .members
            .iter()
            .map(|m| colex_rank_u64(m.elements()).map(|r| r + 1))
            .collect::<Option<Vec<u64>>>()
            .ok_or_else(|| CodeError::IndexOverflow(self.member_count()))?;
        Ok(colex_rank(&KSubset::new(indices, members)?))
    }

    pub fn column_from_rank(&self, rank: &BigNat) -> Result<KSubset, CodeError> {
        Ok(colex_unrank(rank, self.k(), self.n())?)
    }

    pub fn column_rank(&self, col: &KSubset) -> Result<BigNat, CodeError> {
        col.check_shape(self.k(), self.n())?;
        Ok(colex_rank(col))
    }
}

/// `log2` of a big integer, accurate to `f64` precision.
pub(crate) fn log2_big(x: &BigNat) -> f64 {
    let bits = x.bits();
    if bits <= 64 {
        return libm::log2(x.to_u64().unwrap_or(0) as f64);
    }
    let shift = bits - 64;
    let top = (x >> shift).to_u64().unwrap_or(u64::MAX);
    libm::log2(top as f64) + shift as f64
}

/// Materializes the full code with the default bit budget.
pub fn materialize(params: &CodeParams, row_limit: u64) -> Result<BitMatrix, CodeError> {
    materialize_with_budget(params, row_limit, DEFAULT_BIT_BUDGET)
}

/// Row `i` is the label of rank `i`, column `j` the `k`-subset of rank `j`.
pub fn materialize_with_budget(
    params: &CodeParams,
    row_limit: u64,
    bit_budget: u64,
) -> Result<BitMatrix, CodeError> {
    let rows = params.num_rows();
    if rows > BigNat::from(row_limit) {
        return Err(CodeError::TooManyRows {
            rows,
            limit: row_limit,
        });
    }
    let cols = params.num_cols();
    let required_bits = &rows * &cols;
    if required_bits > BigNat::from(bit_budget) {
        return Err(CodeError::BudgetExceeded {
            required_bits,
            allowed_bits: bit_budget,
        });
    }
    let (Some(num_rows), Some(num_cols)) = (rows.to_usize(), cols.to_usize()) else {
        return Err(CodeError::IndexOverflow(required_bits));
    };
    let members = params.member_count_u64()?;
    let (n, k, s) = (params.n(), params.k(), params.s());
    let mut matrix = BitMatrix::zeros(num_rows, num_cols);
    if num_rows == 0 {
        return Ok(matrix);
    }
    let mut indices: Vec<u64> = (1..=params.ell()).collect();

    if n <= 64 {
        let to_mask = |set: &[u64]| set.iter().fold(0u64, |m, &e| m | 1 << (e - 1));
        let col_masks: Vec<u64> = colex_subsets(k, n).map(|c| to_mask(&c)).collect();
        let member_masks: Vec<u64> = colex_subsets(s, n).map(|c| to_mask(&c)).collect();
        let mut label = Vec::with_capacity(indices.len());
        for i in 0..num_rows {
            label.clear();
            label.extend(indices.iter().map(|&idx| member_masks[idx as usize - 1]));
            let words = matrix.row_words_mut(i);
            for (j, &col) in col_masks.iter().enumerate() {
                if label.iter().any(|&m| m & !col == 0) {
                    words[j / 64] |= 1 << (j % 64);
                }
            }
            next_colex(&mut indices, members);
        }
    } else {
        let col_sets: Vec<KSubset> = colex_subsets(k, n)
            .map(|c| KSubset::from_sorted_unchecked(c, n))
            .collect();
        for i in 0..num_rows {
            let label = RowLabel {
                members: indices
                    .iter()
                    .map(|&idx| params.member_from_index(idx - 1))
                    .collect::<Result<_, _>>()?,
            };
            let words = matrix.row_words_mut(i);
            for (j, col) in col_sets.iter().enumerate() {
                if label.covers(col) {
                    words[j / 64] |= 1 << (j % 64);
                }
            }
            next_colex(&mut indices, members);
        }
    }
    Ok(matrix)
}

/// The admissible `k` maximizing `t = C(n, k)`, with its `t`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BestK {
    pub k: u64,
    pub t: BigNat,
}

/// Ties go to the smaller `k`. `C(n, k)` peaks at `⌊n/2⌋` and falls off on
/// both sides, so the answer is `⌊n/2⌋` when admissible and `s + 1` otherwise.
pub fn best_k(n: u64, s: u64, ell: u64) -> Result<BestK, ParamError> {
    let k = (n / 2).max(s + 1);
    match CodeParams::new(n, k, s, ell) {
        Ok(p) => Ok(BestK { k, t: p.num_cols() }),
        Err(e @ (ParamError::SZero | ParamError::EllZero)) => Err(e),
        Err(_) => Err(ParamError::NoAdmissibleK { n, s, ell }),
    }
}

/// Leading-order size estimates for `X(n/2, s, l, n)`.
#[derive(Debug, Clone, PartialEq)]
pub struct AsymptoticEstimates {
    /// `log2 t ≈ n`.
    pub log2_cols_estimate: f64,
    /// `N ≈ n^{sl} / ((s!)^l l!)`; infinite when it overflows `f64`.
    pub rows_estimate: f64,
    pub log2_rows_estimate: f64,
    /// `C(C(n,s), l)`.
    pub exact_rows: BigNat,
    /// `exact_rows / rows_estimate`, computed in log space.
    pub rows_ratio: f64,
}

pub fn asymptotic_estimates(n: u64, s: u64, ell: u64) -> AsymptoticEstimates {
    let log2_fact = |x: u64| libm::lgamma(x as f64 + 1.0) / core::f64::consts::LN_2;
    let log2_rows_estimate =
        (s * ell) as f64 * libm::log2(n as f64) - ell as f64 * log2_fact(s) - log2_fact(ell);
    let direct = direct_rows_estimate(n, s, ell);
    let rows_estimate = direct.unwrap_or_else(|| libm::exp2(log2_rows_estimate));
    let exact_rows = binomial_big(&binomial(n, s), ell);
    let rows_ratio = if exact_rows.is_zero() {
        0.0
    } else {
        match (direct, exact_rows.to_u64()) {
            (Some(est), Some(exact)) if exact < 1 << 53 => exact as f64 / est,
            _ => libm::exp2(log2_big(&exact_rows) - log2_rows_estimate),
        }
    };
    AsymptoticEstimates {
        log2_cols_estimate: n as f64,
        rows_estimate,
        log2_rows_estimate,
        exact_rows,
        rows_ratio,
    }
}

/// Plain floating-point evaluation when nothing overflows.
fn direct_rows_estimate(n: u64, s: u64, ell: u64) -> Option<f64> {
    let exponent = i32::try_from(s.checked_mul(ell)?).ok()?;
    let fact = |x: u64| (1..=x).fold(1.0f64, |acc, i| acc * i as f64);
    let value =
        libm::pow(n as f64, f64::from(exponent)) / (libm::pow(fact(s), ell as f64) * fact(ell));
    (value.is_finite() && value > 0.0).then_some(value)
}

impl PartialOrd for RowLabel {
    fn partial_cmp(&self, other: &Self) -> Option<core::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for RowLabel {
    /// Row-rank order for labels of equal shape.
    fn cmp(&self, other: &Self) -> core::cmp::Ordering {
        let len = self.members.len().cmp(&other.members.len());
        len.then_with(|| {
            self.members
                .iter()
                .rev()
                .zip(other.members.iter().rev())
                .map(|(a, b)| colex_cmp(a.elements(), b.elements()))
                .find(|o| o.is_ne())
                .unwrap_or(core::cmp::Ordering::Equal)
        })
    }
}
