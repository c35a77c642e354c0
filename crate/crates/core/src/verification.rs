//! Exhaustive cover-free checking, witness rows and brute-force oracles.
//!
//! A matrix is cover-free `(s, l)` when for every pair of disjoint column
//! sets `𝒮` (`|𝒮| = s`) and `ℒ` (`|ℒ| = l`) some row is `0` on all of `𝒮`
//! and `1` on all of `ℒ`. Column indices in this module are 0-based
//! column ranks.

use alloc::vec;
use alloc::vec::Vec;
use core::ops::Range;

use num_traits::ToPrimitive;
use thiserror::Error;

use crate::bitmatrix::{BitMatrix, BitRow};
use crate::code::{CodeError, RowLabel};
use crate::combinatorics::{
    binomial, binomial_u64, colex_subsets, colex_unrank_u64, next_colex, next_colex_pivot, BigNat,
    KSubset,
};
use crate::params::CodeParams;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VerifyError {
    #[error("column {col} is out of range for width {width}")]
    ColumnOutOfRange { col: usize, width: usize },
    #[error("column {0} appears in both the negative and positive sets")]
    Overlap(usize),
    #[error("column {0} is listed twice")]
    DuplicateColumn(usize),
    #[error("s and l must both be at least 1")]
    ZeroStrength,
    #[error("s + l = {needed} exceeds the {width} available columns")]
    TooFewColumns { needed: u64, width: usize },
    #[error("C({width}, {s}) negative sets do not fit a machine counter")]
    PairSpaceTooLarge { width: usize, s: u64 },
}

/// One `(𝒮, ℒ)` pair, both stored sorted ascending.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CoverFreeQuery {
    neg: Vec<usize>,
    pos: Vec<usize>,
}

impl CoverFreeQuery {
    pub fn new(mut neg: Vec<usize>, mut pos: Vec<usize>) -> Result<Self, VerifyError> {
        neg.sort_unstable();
        pos.sort_unstable();
        for list in [&neg, &pos] {
            if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
                return Err(VerifyError::DuplicateColumn(w[0]));
            }
        }
        if let Some(&c) = neg.iter().find(|c| pos.binary_search(c).is_ok()) {
            return Err(VerifyError::Overlap(c));
        }
        Ok(Self { neg, pos })
    }

    pub fn neg(&self) -> &[usize] {
        &self.neg
    }

    pub fn pos(&self) -> &[usize] {
        &self.pos
    }
}

/// True iff `row` is `0` on every negative column and `1` on every positive one.
pub fn row_satisfies(row: BitRow<'_>, query: &CoverFreeQuery) -> Result<bool, VerifyError> {
    let bit = |col: usize| {
        row.get(col).ok_or(VerifyError::ColumnOutOfRange {
            col,
            width: row.len(),
        })
    };
    for &c in &query.neg {
        if bit(c)? {
            return Ok(false);
        }
    }
    for &c in &query.pos {
        if !bit(c)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Rows of `matrix` satisfying `query`.
pub fn witnesses_for(matrix: &BitMatrix, query: &CoverFreeQuery) -> Result<Vec<usize>, VerifyError> {
    let mut out = Vec::new();
    for i in 0..matrix.num_rows() {
        if row_satisfies(matrix.row(i), query)? {
            out.push(i);
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    pub holds: bool,
    /// First failing pair in enumeration order.
    pub counterexample: Option<CoverFreeQuery>,
    /// In counting mode: the smallest number of witness rows over all pairs
    /// (zero when the property fails). `None` otherwise.
    pub witness_count: Option<u64>,
    pub pairs_checked: u64,
}

/// Result of scanning a range of negative-set ranks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScanOutcome {
    /// Earliest failure inside the range, with its negative-set rank.
    pub first_failure: Option<(u64, CoverFreeQuery)>,
    pub pairs_checked: u64,
    pub min_witnesses: Option<u64>,
}

impl ScanOutcome {
    fn empty() -> Self {
        Self {
            first_failure: None,
            pairs_checked: 0,
            min_witnesses: None,
        }
    }

    /// Combines outcomes of two ranges; the result keeps the failure with the
    /// smaller negative-set rank, so merge order does not matter.
    pub fn merge(self, other: ScanOutcome) -> ScanOutcome {
        let first_failure = match (self.first_failure, other.first_failure) {
            (Some(a), Some(b)) => Some(if b.0 < a.0 { b } else { a }),
            (a, b) => a.or(b),
        };
        let min_witnesses = match (self.min_witnesses, other.min_witnesses) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        };
        ScanOutcome {
            first_failure,
            pairs_checked: self.pairs_checked + other.pairs_checked,
            min_witnesses,
        }
    }
}

/// Column-major copy of a matrix prepared for exhaustive `(𝒮, ℒ)` scans.
///
/// Negative sets `𝒮` are enumerated in colex order of their column indices
/// and identified by that rank; for each, positive sets `ℒ` run through the
/// complement in colex order. Disjoint rank ranges may be scanned
/// independently and merged.
#[derive(Debug, Clone)]
pub struct CoverFreeVerifier {
    columns: Vec<u64>,
    words: usize,
    num_rows: usize,
    num_cols: usize,
    s: u64,
    ell: u64,
    neg_sets: u64,
    count_witnesses: bool,
}

impl CoverFreeVerifier {
    pub fn new(matrix: &BitMatrix, s: u64, ell: u64) -> Result<Self, VerifyError> {
        if s == 0 || ell == 0 {
            return Err(VerifyError::ZeroStrength);
        }
        let width = matrix.num_cols();
        if s.saturating_add(ell) > width as u64 {
            return Err(VerifyError::TooFewColumns {
                needed: s.saturating_add(ell),
                width,
            });
        }
        let neg_sets =
            binomial_u64(width as u64, s).ok_or(VerifyError::PairSpaceTooLarge { width, s })?;
        let (columns, words) = matrix.column_bitsets();
        Ok(Self {
            columns,
            words,
            num_rows: matrix.num_rows(),
            num_cols: width,
            s,
            ell,
            neg_sets,
            count_witnesses: false,
        })
    }

    /// Disables early exit and records witness multiplicities.
    pub fn counting(mut self, enabled: bool) -> Self {
        self.count_witnesses = enabled;
        self
    }

    pub fn neg_set_count(&self) -> u64 {
        self.neg_sets
    }

    fn column(&self, j: usize) -> &[u64] {
        &self.columns[j * self.words..(j + 1) * self.words]
    }

    /// Scans the negative sets whose colex rank lies in `ranks`.
    pub fn scan(&self, ranks: Range<u64>) -> ScanOutcome {
        let mut outcome = ScanOutcome::empty();
        let end = ranks.end.min(self.neg_sets);
        if ranks.start >= end {
            return outcome;
        }
        let (t, s, ell, w) = (self.num_cols as u64, self.s, self.ell as usize, self.words);
        let Some(mut neg) = colex_unrank_u64(ranks.start, s, t) else {
            return outcome;
        };
        // Rows that exist; padding bits stay clear.
        let mut live = vec![u64::MAX; w];
        let tail = self.num_rows % 64;
        if tail != 0 {
            live[w - 1] = (1u64 << tail) - 1;
        }
        if self.num_rows == 0 {
            live.fill(0);
        }
        let mut complement = Vec::with_capacity(self.num_cols);
        // acc[i] = avail & col[pos_i] & … & col[pos_{l-1}]; acc[l] = avail.
        let mut acc = vec![0u64; (ell + 1) * w];
        let mut pos: Vec<u64> = Vec::with_capacity(ell);

        for rank in ranks.start..end {
            complement.clear();
            let mut next_neg = 0;
            for j in 0..self.num_cols {
                if next_neg < neg.len() && neg[next_neg] as usize == j + 1 {
                    next_neg += 1;
                } else {
                    complement.push(j);
                }
            }
            {
                let avail = &mut acc[ell * w..];
                avail.copy_from_slice(&live);
                for &c in &neg {
                    for (a, &b) in avail.iter_mut().zip(self.column(c as usize - 1)) {
                        *a &= !b;
                    }
                }
            }
            pos.clear();
            pos.extend(1..=ell as u64);
            let mut dirty = ell;
            loop {
                for i in (0..dirty).rev() {
                    let col = complement[pos[i] as usize - 1];
                    let (lower, upper) = acc.split_at_mut((i + 1) * w);
                    let cur = &mut lower[i * w..];
                    for ((c, &u), &b) in cur.iter_mut().zip(&upper[..w]).zip(self.column(col)) {
                        *c = u & b;
                    }
                }
                outcome.pairs_checked += 1;
                let found = &acc[..w];
                let failed = if self.count_witnesses {
                    let count: u64 = found.iter().map(|x| u64::from(x.count_ones())).sum();
                    outcome.min_witnesses = Some(outcome.min_witnesses.map_or(count, |m| m.min(count)));
                    count == 0
                } else {
                    found.iter().all(|&x| x == 0)
                };
                if failed && outcome.first_failure.is_none() {
                    let query = CoverFreeQuery {
                        neg: neg.iter().map(|&c| c as usize - 1).collect(),
                        pos: pos.iter().map(|&p| complement[p as usize - 1]).collect(),
                    };
                    outcome.first_failure = Some((rank, query));
                    if !self.count_witnesses {
                        return outcome;
                    }
                }
                match next_colex_pivot(&mut pos, complement.len() as u64) {
                    Some(pivot) => dirty = pivot + 1,
                    None => break,
                }
            }
            if !next_colex(&mut neg, t) {
                break;
            }
        }
        outcome
    }

    pub fn verdict(&self, outcome: ScanOutcome) -> Verdict {
        Verdict {
            holds: outcome.first_failure.is_none(),
            counterexample: outcome.first_failure.map(|(_, q)| q),
            witness_count: if self.count_witnesses {
                Some(outcome.min_witnesses.unwrap_or(0))
            } else {
                None
            },
            pairs_checked: outcome.pairs_checked,
        }
    }

    pub fn verify(&self) -> Verdict {
        self.verdict(self.scan(0..self.neg_sets))
    }
}

/// Checks every `(𝒮, ℒ)` pair, stopping at the first failure.
pub fn verify_cover_free(matrix: &BitMatrix, s: u64, ell: u64) -> Result<Verdict, VerifyError> {
    Ok(CoverFreeVerifier::new(matrix, s, ell)?.verify())
}

/// Like [`verify_cover_free`] without early exit; reports witness multiplicity.
pub fn verify_cover_free_counting(
    matrix: &BitMatrix,
    s: u64,
    ell: u64,
) -> Result<Verdict, VerifyError> {
    Ok(CoverFreeVerifier::new(matrix, s, ell)?.counting(true).verify())
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WitnessError {
    #[error(transparent)]
    Code(#[from] CodeError),
    #[error("expected {expected} {role} columns, got {actual}")]
    ColumnCount {
        role: &'static str,
        expected: u64,
        actual: usize,
    },
    #[error("column {0} is listed more than once across the negative and positive sets")]
    RepeatedColumn(KSubset),
    #[error(
        "no witness row exists: only {free} s-subsets avoid every negative column, \
         but a row label needs l = {ell} distinct ones"
    )]
    NoWitness { free: u64, ell: u64 },
}

/// Builds a row label that is `0` on every column in `neg` and `1` on every
/// column in `pos`.
///
/// Each positive column `K'_i` gets a member `S_i ⊆ K'_i` that lies inside no
/// negative column; such members exist because distinct `k`-sets differ in
/// some element. Members are matched to columns by augmenting paths, trying
/// candidates in lexicographic order, so the result is deterministic. When no
/// assignment of pairwise distinct members exists, members are shared between
/// positive columns and the label is padded with other subsets that avoid all
/// negative columns. The only failure left is that fewer than `l` such
/// subsets exist at all, in which case no row of the code can satisfy the
/// pair.
pub fn witness_row(
    params: &CodeParams,
    neg: &[KSubset],
    pos: &[KSubset],
) -> Result<RowLabel, WitnessError> {
    let (n, k, s, ell) = (params.n(), params.k(), params.s(), params.ell());
    for (role, cols, expected) in [("negative", neg, s), ("positive", pos, ell)] {
        if cols.len() as u64 != expected {
            return Err(WitnessError::ColumnCount {
                role,
                expected,
                actual: cols.len(),
            });
        }
        for c in cols {
            c.check_shape(k, n).map_err(CodeError::from)?;
        }
    }
    let mut all: Vec<&KSubset> = neg.iter().chain(pos).collect();
    all.sort_by(|a, b| a.elements().cmp(b.elements()));
    if let Some(w) = all.windows(2).find(|w| w[0] == w[1]) {
        return Err(WitnessError::RepeatedColumn(w[0].clone()));
    }

    let avoids_neg = |cand: &[u64]| {
        neg.iter()
            .all(|kj| !crate::combinatorics::is_sorted_subset(cand, kj.elements()))
    };
    // Up to `l` candidates per positive column suffice: if a column has `l`
    // of them, some candidate is always left over for it.
    let candidates: Vec<Vec<Vec<u64>>> = pos
        .iter()
        .map(|kp| {
            lex_subsets(kp.elements(), s as usize)
                .filter(|c| avoids_neg(c))
                .take(ell as usize)
                .collect()
        })
        .collect();

    let members = match match_distinct(&candidates) {
        Some(choice) => choice,
        None => pad_shared_cover(&candidates, n, s, ell, &avoids_neg)?,
    };
    let members = members
        .into_iter()
        .map(|m| KSubset::new(m, n))
        .collect::<Result<Vec<_>, _>>()
        .map_err(CodeError::from)?;
    Ok(RowLabel::new(members, s, n)?)
}

/// Distinct representatives via Kuhn's augmenting paths.
fn match_distinct(candidates: &[Vec<Vec<u64>>]) -> Option<Vec<Vec<u64>>> {
    let mut pool: Vec<&Vec<u64>> = candidates.iter().flatten().collect();
    pool.sort();
    pool.dedup();
    let ids: Vec<Vec<usize>> = candidates
        .iter()
        .map(|cs| cs.iter().map(|c| pool.binary_search(&c).unwrap_or(0)).collect())
        .collect();
    let mut owner: Vec<Option<usize>> = vec![None; pool.len()];

    fn augment(
        i: usize,
        ids: &[Vec<usize>],
        owner: &mut [Option<usize>],
        seen: &mut [bool],
    ) -> bool {
        for &c in &ids[i] {
            if seen[c] {
                continue;
            }
            seen[c] = true;
            if owner[c].is_none_or(|j| augment(j, ids, owner, seen)) {
                owner[c] = Some(i);
                return true;
            }
        }
        false
    }

    for i in 0..ids.len() {
        let mut seen = vec![false; pool.len()];
        if !augment(i, &ids, &mut owner, &mut seen) {
            return None;
        }
    }
    let mut chosen = vec![Vec::new(); ids.len()];
    for (c, o) in owner.iter().enumerate() {
        if let Some(i) = o {
            chosen[*i] = pool[c].clone();
        }
    }
    Some(chosen)
}

fn pad_shared_cover(
    candidates: &[Vec<Vec<u64>>],
    n: u64,
    s: u64,
    ell: u64,
    avoids_neg: &dyn Fn(&[u64]) -> bool,
) -> Result<Vec<Vec<u64>>, WitnessError> {
    let mut members: Vec<Vec<u64>> = Vec::new();
    for cs in candidates {
        // Every positive column has at least one candidate; see `witness_row`.
        let Some(first) = cs.first() else {
            return Err(WitnessError::NoWitness { free: 0, ell });
        };
        if !members.contains(first) {
            members.push(first.clone());
        }
    }
    let mut free = 0u64;
    for cand in colex_subsets(s, n) {
        if !avoids_neg(&cand) {
            continue;
        }
        free += 1;
        if (members.len() as u64) < ell && !members.contains(&cand) {
            members.push(cand);
        }
    }
    if (members.len() as u64) < ell {
        return Err(WitnessError::NoWitness { free, ell });
    }
    Ok(members)
}

/// `size`-subsets of a sorted slice, in lexicographic order.
fn lex_subsets(items: &[u64], size: usize) -> impl Iterator<Item = Vec<u64>> + '_ {
    let mut idx: Option<Vec<usize>> = (size <= items.len()).then(|| (0..size).collect());
    core::iter::from_fn(move || {
        let cur = idx.as_mut()?;
        let out = cur.iter().map(|&i| items[i]).collect();
        let len = items.len();
        match (0..size).rev().find(|&i| cur[i] < len - size + i) {
            Some(i) => {
                cur[i] += 1;
                for j in i + 1..size {
                    cur[j] = cur[j - 1] + 1;
                }
            }
            None => idx = None,
        }
        Some(out)
    })
}

/// Counts row ranks whose label covers `col`, unranking each label.
pub fn brute_force_column_weight(params: &CodeParams, col: &KSubset) -> Result<BigNat, CodeError> {
    col.check_shape(params.k(), params.n())?;
    let rows = params.num_rows();
    let num_rows = rows.to_u64().ok_or(CodeError::IndexOverflow(rows))?;
    let mut count = 0u64;
    for r in 0..num_rows {
        if params.entry(&params.row_label_from_rank(&r.into())?, col)? {
            count += 1;
        }
    }
    Ok(count.into())
}

/// Smallest number of `s`-subsets of `[n]` lying inside none of `s` distinct
/// columns, over all choices of those columns.
///
/// The code is cover-free `(s, l)` exactly when this is at least `l`: a row
/// that is `0` on the negative columns draws all of its `l` distinct members
/// from these subsets, and every positive column contains one of them.
/// Enumerates all `C(t, s)` column families, so it is meant for small `t`.
pub fn min_free_subsets(params: &CodeParams) -> Result<u64, CodeError> {
    let (n, k, s) = (params.n(), params.k(), params.s());
    let t = binomial_u64(n, k).ok_or_else(|| CodeError::IndexOverflow(params.num_cols()))?;
    let total = binomial_u64(n, s).ok_or_else(|| CodeError::IndexOverflow(binomial(n, s)))?;
    let cols: Vec<Vec<u64>> = colex_subsets(k, n).collect();
    let mut best = total;
    for family in colex_subsets(s, t) {
        let sets: Vec<&[u64]> = family.iter().map(|&j| cols[j as usize - 1].as_slice()).collect();
        // Inclusion-exclusion over nonempty subfamilies J: C(|∩J|, s).
        let mut covered: i128 = 0;
        for mask in 1u32..(1 << sets.len()) {
            let mut common: Vec<u64> = sets[mask.trailing_zeros() as usize].to_vec();
            for (b, set) in sets.iter().enumerate() {
                if mask >> b & 1 == 1 {
                    common.retain(|e| set.binary_search(e).is_ok());
                }
            }
            let term = i128::from(binomial_u64(common.len() as u64, s).unwrap_or(0));
            if mask.count_ones() % 2 == 1 {
                covered += term;
            } else {
                covered -= term;
            }
        }
        best = best.min((i128::from(total) - covered) as u64);
    }
    Ok(best)
}
