#![allow(dead_code)]

use std::path::Path;
use std::process::{Command, Output};

use cfcode_core::CodeParams;

pub fn cfcode(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cfcode"))
        .args(args)
        .output()
        .expect("failed to run cfcode")
}

pub fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

pub fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

pub fn gen(p: &CodeParams, out: &Path) -> Output {
    let (n, k, s, l) = (p.n().to_string(), p.k().to_string(), p.s().to_string(), p.ell().to_string());
    cfcode(&["gen", &n, &k, &s, &l, "--out", out.to_str().unwrap()])
}

/// Every valid (n,k,s,l) with n <= 7, s in {1,2}, l in {1,2,3}, s < k < n,
/// s + l <= C(n,k) and N <= 5000.
pub fn grid() -> Vec<CodeParams> {
    let mut out = Vec::new();
    for n in 1..=7u64 {
        for s in 1..=2u64 {
            for ell in 1..=3u64 {
                for k in s + 1..n {
                    if let Ok(p) = CodeParams::new(n, k, s, ell) {
                        if p.num_rows() <= 5000u32.into() {
                            out.push(p);
                        }
                    }
                }
            }
        }
    }
    out
}
