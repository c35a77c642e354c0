//! Acceptance criteria. Each test prints one `[PASS]`/`[FAIL]` line; run with
//! `cargo test -p cfcode --test acceptance -- --nocapture --test-threads 1`.

mod common;

use std::fs;
use std::time::{Duration, Instant};

use cfcode::{parse_matrix, verify_parallel};
use cfcode_core::combinatorics::colex_subsets;
use cfcode_core::verification::witnesses_for;
use cfcode_core::{
    asymptotic_estimates, binomial, binomial_big, materialize, min_free_subsets, row_satisfies,
    verify_cover_free, verify_cover_free_counting, witness_row, BitMatrix, CodeParams,
    CoverFreeQuery, KSubset,
};
use num_traits::ToPrimitive;
use rand::rngs::StdRng;
use rand::seq::index::sample;
use rand::SeedableRng;

use common::{cfcode, gen, grid, stdout};

fn report(id: &str, name: &str, failures: &[String], detail: &str) {
    let status = if failures.is_empty() { "PASS" } else { "FAIL" };
    println!("[{status}] {id} {name}: {detail}");
    for f in failures {
        println!("    {f}");
    }
    assert!(failures.is_empty(), "{id} failed: {} failures", failures.len());
}

fn usize_of(x: &cfcode_core::BigNat) -> usize {
    x.to_usize().expect("desk-scale value")
}

#[test]
fn c1_cover_free_at_desk_scale() {
    let dir = tempfile::tempdir().unwrap();
    let params = grid();
    let mut failures = Vec::new();
    let mut largest = None;
    let start = Instant::now();
    for (idx, p) in params.iter().enumerate() {
        let path = dir.path().join(format!("m{idx}.txt"));
        let case_start = Instant::now();
        let g = gen(p, &path);
        assert_eq!(g.status.code(), Some(0), "gen {p}");
        let v = cfcode(&[
            "verify",
            path.to_str().unwrap(),
            "--s",
            &p.s().to_string(),
            "--l",
            &p.ell().to_string(),
        ]);
        let elapsed = case_start.elapsed();
        if (p.n(), p.k(), p.s(), p.ell()) == (7, 4, 2, 2) {
            largest = Some(elapsed);
        }
        if v.status.code() != Some(0) {
            let margin = min_free_subsets(p).unwrap();
            failures.push(format!(
                "{p}: verify exit {:?}; {}; fewest s-subsets avoiding s columns = {margin} < l",
                v.status.code(),
                stdout(&v).lines().nth(2).unwrap_or("").trim()
            ));
        }
    }
    let total = start.elapsed();
    let largest = largest.expect("(7,4,2,2) is in the grid");
    if params.len() < 25 {
        failures.push(format!("only {} parameter sets", params.len()));
    }
    if total >= Duration::from_secs(60) {
        failures.push(format!("total runtime {total:?} >= 60 s"));
    }
    if largest >= Duration::from_secs(10) {
        failures.push(format!("(7,4,2,2) took {largest:?} >= 10 s"));
    }
    report(
        "C1",
        "gen+verify exits 0 on every grid set",
        &failures,
        &format!(
            "{} of {} sets cover-free; total {:.1?}, (7,4,2,2) {:.1?}",
            params.len() - failures.len(),
            params.len(),
            total,
            largest
        ),
    );
}

#[test]
fn c2_constant_column_weight() {
    let mut failures = Vec::new();
    for p in grid() {
        let m = materialize(&p, u64::MAX).unwrap();
        let members = binomial(p.n(), p.s());
        let closed = binomial_big(&members, p.ell())
            - binomial_big(&(&members - binomial(p.k(), p.s())), p.ell());
        let closed = closed.to_u64().unwrap();
        let sums = m.column_sums();
        if sums.iter().any(|&c| c != closed) {
            failures.push(format!("{p}: column sums {sums:?}, closed form {closed}"));
        }
    }
    let w = CodeParams::new(5, 3, 2, 2).unwrap().dimensions().column_weight;
    if w != 24u32.into() {
        failures.push(format!("(5,3,2,2) weight {w} != 24"));
    }
    report("C2", "column sums equal the closed form", &failures, "exact integers");
}

#[test]
fn c3_dimensions() {
    let dir = tempfile::tempdir().unwrap();
    let mut failures = Vec::new();
    for (idx, p) in grid().iter().enumerate() {
        let path = dir.path().join(format!("m{idx}.txt"));
        gen(p, &path);
        let f = parse_matrix(&fs::read_to_string(&path).unwrap()).unwrap();
        let rows = binomial_big(&binomial(p.n(), p.s()), p.ell());
        let cols = binomial(p.n(), p.k());
        if (f.matrix.num_rows(), f.matrix.num_cols()) != (usize_of(&rows), usize_of(&cols)) {
            failures.push(format!(
                "{p}: file is {}x{}, expected {rows}x{cols}",
                f.matrix.num_rows(),
                f.matrix.num_cols()
            ));
        }
    }
    let m = materialize(&CodeParams::new(5, 3, 2, 2).unwrap(), u64::MAX).unwrap();
    if (m.num_rows(), m.num_cols()) != (45, 10) {
        failures.push("(5,3,2,2) is not 45x10".to_owned());
    }
    report("C3", "N = C(C(n,s),l), t = C(n,k)", &failures, "exact integers");
}

#[test]
fn c4_witness_soundness() {
    const QUERIES: usize = 1000;
    let mut failures = Vec::new();
    let mut rng = StdRng::seed_from_u64(0x5eed_cf00);
    let params = grid();
    for p in &params {
        let m = materialize(p, u64::MAX).unwrap();
        let cols: Vec<KSubset> = colex_subsets(p.k(), p.n())
            .map(|c| KSubset::new(c, p.n()).unwrap())
            .collect();
        let (s, ell) = (p.s() as usize, p.ell() as usize);
        let mut bad = 0;
        let mut first = None;
        for _ in 0..QUERIES {
            let picked = sample(&mut rng, cols.len(), s + ell).into_vec();
            let (neg_idx, pos_idx) = picked.split_at(s);
            let neg: Vec<KSubset> = neg_idx.iter().map(|&j| cols[j].clone()).collect();
            let pos: Vec<KSubset> = pos_idx.iter().map(|&j| cols[j].clone()).collect();
            let ok = match witness_row(p, &neg, &pos) {
                Ok(w) => {
                    let oracle = neg.iter().all(|c| !p.entry(&w, c).unwrap())
                        && pos.iter().all(|c| p.entry(&w, c).unwrap());
                    let r = usize_of(&p.row_rank_from_label(&w).unwrap());
                    let q = CoverFreeQuery::new(neg_idx.to_vec(), pos_idx.to_vec()).unwrap();
                    oracle && row_satisfies(m.row(r), &q).unwrap()
                }
                Err(e) => {
                    first.get_or_insert_with(|| format!("neg {neg_idx:?} pos {pos_idx:?}: {e}"));
                    false
                }
            };
            if !ok {
                bad += 1;
            }
        }
        if bad > 0 {
            failures.push(format!(
                "{p}: {bad}/{QUERIES} queries without a valid witness, e.g. {}",
                first.unwrap_or_default()
            ));
        }
    }
    report(
        "C4",
        "witness rows validate on 1000 random queries per set",
        &failures,
        &format!("{} sets, {} failing", params.len(), failures.len()),
    );
}

#[test]
fn c5_oracle_equivalence() {
    let mut failures = Vec::new();
    let mut cells = 0u64;
    for p in grid() {
        let m = materialize(&p, u64::MAX).unwrap();
        let cols: Vec<KSubset> = (0..m.num_cols())
            .map(|j| p.column_from_rank(&j.into()).unwrap())
            .collect();
        let mut mismatches = 0;
        for i in 0..m.num_rows() {
            let row = p.row_label_from_rank(&i.into()).unwrap();
            for (j, col) in cols.iter().enumerate() {
                cells += 1;
                if p.entry(&row, col).unwrap() != m.get(i, j) {
                    mismatches += 1;
                }
            }
        }
        if mismatches > 0 {
            failures.push(format!("{p}: {mismatches} mismatches"));
        }
    }
    report("C5", "entry oracle equals materialized bits", &failures, &format!("{cells} cells"));
}

#[test]
fn c6_bijection_round_trips() {
    let mut failures = Vec::new();
    let mut checked = 0u64;
    for p in grid() {
        for r in 0..p.num_rows().to_u64().unwrap() {
            checked += 1;
            let label = p.row_label_from_rank(&r.into()).unwrap();
            if p.row_rank_from_label(&label).unwrap() != r.into() {
                failures.push(format!("{p}: row rank {r}"));
            }
        }
        for c in 0..p.num_cols().to_u64().unwrap() {
            checked += 1;
            let col = p.column_from_rank(&c.into()).unwrap();
            if p.column_rank(&col).unwrap() != c.into() {
                failures.push(format!("{p}: column rank {c}"));
            }
        }
    }
    report("C6", "rank(unrank(r)) = r", &failures, &format!("{checked} ranks"));
}

#[test]
fn c7_negative_controls() {
    let mut failures = Vec::new();

    let ones = verify_cover_free(&BitMatrix::ones(4, 6), 1, 1).unwrap();
    if ones.holds || ones.counterexample.is_none() {
        failures.push("all-ones 4x6 passed or lacked a counterexample".to_owned());
    }
    if !verify_cover_free(&BitMatrix::identity(6), 1, 1).unwrap().holds {
        failures.push("6x6 identity failed".to_owned());
    }

    let p = CodeParams::new(5, 3, 2, 1).unwrap();
    let m = materialize(&p, u64::MAX).unwrap();
    if !verify_cover_free(&m, 2, 1).unwrap().holds {
        failures.push("unmutated (5,3,2,1) failed".to_owned());
    }
    let mut mutation = None;
    'search: for neg in colex_subsets(2, m.num_cols() as u64) {
        let neg: Vec<usize> = neg.iter().map(|&c| c as usize - 1).collect();
        for pos in (0..m.num_cols()).filter(|j| !neg.contains(j)) {
            let q = CoverFreeQuery::new(neg.clone(), vec![pos]).unwrap();
            if let [row] = witnesses_for(&m, &q).unwrap()[..] {
                mutation = Some((q, row, pos));
                break 'search;
            }
        }
    }
    let detail = match mutation {
        Some((q, row, col)) => {
            let mut broken = m.clone();
            broken.set(row, col, false);
            let v = verify_cover_free(&broken, 2, 1).unwrap();
            if v.holds {
                failures.push(format!("flipping ({row},{col}) for {q:?} kept the property"));
            }
            format!("flipped row {row} column {col}, unique witness for {q:?}")
        }
        None => {
            failures.push("no uniquely witnessed pair in (5,3,2,1)".to_owned());
            String::new()
        }
    };
    report("C7", "negative controls and mutation", &failures, &detail);
}

#[test]
fn c8_asymptotic_substitute_checks() {
    let mut failures = Vec::new();
    let mut prev = 0.0;
    for n in 20..=200u64 {
        let est = asymptotic_estimates(n, 2, 1);
        let ratio = est.rows_ratio;
        if !(0.9..=1.0).contains(&ratio) {
            failures.push(format!("s=2 l=1 n={n}: ratio {ratio} outside [0.9, 1.0]"));
        }
        if ratio <= prev {
            failures.push(format!("s=2 l=1 n={n}: ratio {ratio} not above {prev}"));
        }
        prev = ratio;
    }
    for n in 1..=200u64 {
        let est = asymptotic_estimates(n, 1, 1);
        if est.rows_ratio != 1.0 {
            failures.push(format!("s=1 l=1 n={n}: ratio {}", est.rows_ratio));
        }
    }
    report("C8", "leading-order N estimate ratios", &failures, "n = 20..200");
}

#[test]
fn c9_determinism() {
    let dir = tempfile::tempdir().unwrap();
    let p = CodeParams::new(5, 3, 2, 2).unwrap();
    let a = dir.path().join("a.txt");
    let b = dir.path().join("b.txt");
    gen(&p, &a);
    gen(&p, &b);
    let mut failures = Vec::new();
    if fs::read(&a).unwrap() != fs::read(&b).unwrap() {
        failures.push("gen 5 3 2 2 output differs between runs".to_owned());
    }

    // One passing and one failing matrix; the failing one checks that the
    // reported counterexample does not depend on the thread count.
    let c = dir.path().join("c.txt");
    gen(&CodeParams::new(6, 5, 2, 3).unwrap(), &c);
    for (file, s, l) in [(&a, "2", "2"), (&c, "2", "3")] {
        let run = |threads: &str| {
            cfcode(&["verify", file.to_str().unwrap(), "--s", s, "--l", l, "--threads", threads])
        };
        let (one, eight) = (run("1"), run("8"));
        if one.status.code() != eight.status.code() || one.stdout != eight.stdout {
            failures.push(format!("{}: --threads 1 and 8 disagree", file.display()));
        }
    }
    let mut m = materialize(&CodeParams::new(7, 4, 2, 2).unwrap(), u64::MAX).unwrap();
    for (i, j) in [(3, 3), (100, 20), (200, 30)] {
        m.flip(i, j);
    }
    let serial = verify_cover_free_counting(&m, 2, 2).unwrap();
    for threads in [1, 2, 8] {
        if verify_parallel(&m, 2, 2, threads, true).unwrap() != serial {
            failures.push(format!("counting verdict differs at {threads} threads"));
        }
    }
    report("C9", "byte-identical gen, thread-independent verify", &failures, "");
}
