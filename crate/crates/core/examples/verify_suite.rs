//! Run every verification suite over a small range and print failures.
//!
//! ```bash
//! cargo run --release -p wangsun --example verify_suite
//! ```

use wangsun::cli::verify::{run_verify, VerifyConfig};

fn main() {
    let cfg = VerifyConfig {
        k_max: 10,
        n_max: 7,
        jobs: 0,
        ..Default::default()
    };
    let report = run_verify(&cfg);
    for c in &report.checks {
        println!(
            "{} {:<16} {:<6} {}",
            if c.passed { "ok  " } else { "FAIL" },
            c.suite,
            c.name,
            c.detail
        );
    }
    let failed = report.failures().count();
    println!("{} checks, {failed} failed", report.checks.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
