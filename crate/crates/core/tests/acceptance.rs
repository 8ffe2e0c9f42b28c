//! Runs every acceptance check at full scale and prints one line per check.
//! Exits non-zero when any check fails.

use diffembed::selftest::{self, SelftestConfig};
use std::process::ExitCode;

fn main() -> ExitCode {
    let cfg = SelftestConfig::default();
    let mut failures = 0;
    for id in 1..=12 {
        let t = selftest::run_timed(id, &cfg);
        let o = &t.outcome;
        let status = if o.passed { "PASS" } else { "FAIL" };
        println!("criterion {id:>2}: {status} | {} | {} | {} ms", o.name, o.summary, t.elapsed_ms);
        for v in o.violations.iter().take(5) {
            println!("    violation: {v}");
        }
        failures += usize::from(!o.passed);
    }
    println!("acceptance: {} of 12 criteria passed", 12 - failures);
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
