//! Construction and verification of the cover-free `(s, ℓ)`-code `X(k, s, ℓ, n)`.
//!
//! Rows of the code are labelled by unordered `ℓ`-tuples of distinct `s`-subsets
//! of `[n]`, columns by the `k`-subsets of `[n]`. An entry is `1` exactly when
//! some member of the row label is contained in the column set.
//!
//! Rows and columns are addressed by 0-based colexicographic rank; set
//! elements are 1-based. Everything here is pure and allocation-only, so the
//! crate builds without `std`.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

pub mod bitmatrix;
pub mod code;
pub mod combinatorics;
pub mod params;
pub mod verification;

pub use bitmatrix::{BitMatrix, BitRow};
pub use code::{
    asymptotic_estimates, best_k, materialize, materialize_with_budget, AsymptoticEstimates,
    BestK, CodeDimensions, CodeError, RowLabel, DEFAULT_BIT_BUDGET,
};
pub use combinatorics::{
    binomial, binomial_big, binomial_u64, colex_rank, colex_unrank, BigNat, BinomialTable,
    KSubset, RankError, SubsetError,
};
pub use params::{CodeParams, ParamError, ParamWarning};
pub use verification::{
    brute_force_column_weight, min_free_subsets, row_satisfies, verify_cover_free,
    verify_cover_free_counting, witness_row, CoverFreeQuery, CoverFreeVerifier, ScanOutcome,
    Verdict, VerifyError, WitnessError,
};
