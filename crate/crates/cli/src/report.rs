//! JSON report shapes for `params --json` and `verify --json`.
//!
//! Big integers are emitted as decimal strings.

use cfcode_core::{asymptotic_estimates, CodeParams, CoverFreeQuery, Verdict};
use serde::Serialize;

#[derive(Debug, Clone, Serialize)]
pub struct ParamsReport {
    pub n: u64,
    pub k: u64,
    pub s: u64,
    pub l: u64,
    pub rows: String,
    pub cols: String,
    pub column_weight: String,
    pub rate: f64,
    pub asymptotic_rows_estimate: f64,
    pub asymptotic_log2_cols_estimate: f64,
    pub rows_to_estimate_ratio: f64,
    pub best_k: Option<u64>,
    pub warnings: Vec<String>,
}

impl ParamsReport {
    pub fn new(params: &CodeParams, best_k: bool) -> Self {
        let dims = params.dimensions();
        let est = asymptotic_estimates(params.n(), params.s(), params.ell());
        Self {
            n: params.n(),
            k: params.k(),
            s: params.s(),
            l: params.ell(),
            rows: dims.num_rows.to_string(),
            cols: dims.num_cols.to_string(),
            column_weight: dims.column_weight.to_string(),
            rate: dims.rate,
            asymptotic_rows_estimate: est.rows_estimate,
            asymptotic_log2_cols_estimate: est.log2_cols_estimate,
            rows_to_estimate_ratio: est.rows_ratio,
            best_k: best_k.then_some(params.k()),
            warnings: params.warnings().iter().map(ToString::to_string).collect(),
        }
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        if let Some(k) = self.best_k {
            out.push_str(&format!("k*={k} t*={}\n", self.cols));
        }
        out.push_str(&format!(
            "n={} k={} s={} l={}\nN={}\nt={}\nw={}\nrate={}\n\
             N_estimate={} (N/N_estimate={})\nlog2_t_estimate={}\n",
            self.n,
            self.k,
            self.s,
            self.l,
            self.rows,
            self.cols,
            self.column_weight,
            sig6(self.rate),
            sig6(self.asymptotic_rows_estimate),
            sig6(self.rows_to_estimate_ratio),
            self.asymptotic_log2_cols_estimate,
        ));
        out
    }
}

/// Six significant digits, switching to exponent form outside `[1e-4, 1e6)`.
pub fn sig6(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    let mag = x.abs().log10().floor() as i32;
    if (-4..6).contains(&mag) {
        let decimals = (5 - mag).max(0) as usize;
        format!("{x:.decimals$}")
    } else {
        format!("{x:.5e}")
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct QueryReport {
    /// 0-based column ranks.
    pub neg: Vec<usize>,
    pub pos: Vec<usize>,
}

impl From<&CoverFreeQuery> for QueryReport {
    fn from(q: &CoverFreeQuery) -> Self {
        Self {
            neg: q.neg().to_vec(),
            pos: q.pos().to_vec(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifyReport {
    pub rows: usize,
    pub cols: usize,
    pub s: u64,
    pub l: u64,
    pub holds: bool,
    /// `C(t,s) * C(t-s,l)`, the number of pairs the property quantifies over.
    pub pairs_total: String,
    pub counterexample: Option<QueryReport>,
    /// Smallest witness multiplicity over all pairs, with `--count-witnesses`.
    pub min_witnesses: Option<u64>,
}

impl VerifyReport {
    pub fn new(rows: usize, cols: usize, s: u64, l: u64, verdict: &Verdict) -> Self {
        let t = cols as u64;
        let pairs = cfcode_core::binomial(t, s) * cfcode_core::binomial(t - s, l);
        Self {
            rows,
            cols,
            s,
            l,
            holds: verdict.holds,
            pairs_total: pairs.to_string(),
            counterexample: verdict.counterexample.as_ref().map(QueryReport::from),
            min_witnesses: verdict.witness_count,
        }
    }

    pub fn to_text(&self) -> String {
        let mut out = if self.holds {
            format!("COVER-FREE ({},{})\n", self.s, self.l)
        } else {
            format!("NOT COVER-FREE ({},{})\n", self.s, self.l)
        };
        out.push_str(&format!(
            "matrix {}x{}, {} (S,L) pairs\n",
            self.rows, self.cols, self.pairs_total
        ));
        if let Some(q) = &self.counterexample {
            out.push_str(&format!(
                "counterexample: zero columns {:?}, one columns {:?} (0-based column ranks)\n",
                q.neg, q.pos
            ));
        }
        if let Some(w) = self.min_witnesses {
            out.push_str(&format!("min witnesses per pair: {w}\n"));
        }
        out
    }
}
