use alloc::vec::Vec;
use core::fmt;

use thiserror::Error;

use crate::combinatorics::{binomial, BigNat};

/// Rejected parameter quadruples. Each variant names the violated constraint.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParamError {
    #[error("constraint 1 <= s violated: s = 0")]
    SZero,
    #[error("constraint s < k violated: s = {s}, k = {k}")]
    SNotBelowK { s: u64, k: u64 },
    #[error("constraint k < n violated: k = {k}, n = {n}")]
    KNotBelowN { k: u64, n: u64 },
    #[error("constraint l >= 1 violated: l = 0")]
    EllZero,
    #[error("constraint l + s <= t violated: l + s = {sum}, t = C(n,k) = {t}")]
    EllPlusSExceedsT { sum: BigNat, t: BigNat },
    #[error("no admissible k for n = {n}, s = {s}, l = {ell}")]
    NoAdmissibleK { n: u64, s: u64, ell: u64 },
}

/// Valid parameters that fall outside the stricter range `1 < l < t - s`
/// under which cover-free codes are usually defined.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ParamWarning {
    /// `l = 1`: the code is an `s`-disjunct matrix.
    EllIsOne,
    /// `l = t - s`: every (𝒮, ℒ) pair partitions all columns.
    EllEqualsTMinusS,
}

impl fmt::Display for ParamWarning {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParamWarning::EllIsOne => f.write_str("l = 1 is outside the usual range 1 < l"),
            ParamWarning::EllEqualsTMinusS => {
                f.write_str("l = t - s is outside the usual range l < t - s")
            }
        }
    }
}

/// The quadruple `(n, k, s, l)` defining `X(k, s, l, n)`. Only constructible
/// through validation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CodeParams {
    n: u64,
    k: u64,
    s: u64,
    ell: u64,
}

impl CodeParams {
    pub fn new(n: u64, k: u64, s: u64, ell: u64) -> Result<Self, ParamError> {
        if s == 0 {
            return Err(ParamError::SZero);
        }
        if s >= k {
            return Err(ParamError::SNotBelowK { s, k });
        }
        if k >= n {
            return Err(ParamError::KNotBelowN { k, n });
        }
        if ell == 0 {
            return Err(ParamError::EllZero);
        }
        let t = binomial(n, k);
        let sum = BigNat::from(ell) + BigNat::from(s);
        if sum > t {
            return Err(ParamError::EllPlusSExceedsT { sum, t });
        }
        Ok(Self { n, k, s, ell })
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn k(&self) -> u64 {
        self.k
    }

    pub fn s(&self) -> u64 {
        self.s
    }

    pub fn ell(&self) -> u64 {
        self.ell
    }

    pub fn warnings(&self) -> Vec<ParamWarning> {
        let mut out = Vec::new();
        if self.ell == 1 {
            out.push(ParamWarning::EllIsOne);
        }
        if BigNat::from(self.ell + self.s) == binomial(self.n, self.k) {
            out.push(ParamWarning::EllEqualsTMinusS);
        }
        out
    }
}

impl fmt::Display for CodeParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "n={} k={} s={} l={}", self.n, self.k, self.s, self.ell)
    }
}
