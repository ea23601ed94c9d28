//! Runs every acceptance criterion and prints one pass/fail line each,
//! regardless of output capture. A criterion also fails when it overruns
//! its time budget. Positional arguments filter by `criterion_<id>`.

use std::process::ExitCode;

use homfly_core::selftest::{run, CRITERIA};

fn main() -> ExitCode {
    let filters: Vec<String> = std::env::args()
        .skip(1)
        .filter(|a| !a.starts_with('-'))
        .collect();
    let mut failed = 0;
    let mut ran = 0;
    for &(id, _, _) in CRITERIA {
        let name = format!("criterion_{id}");
        if !filters.is_empty() && !filters.iter().any(|f| name.contains(f.as_str())) {
            continue;
        }
        ran += 1;
        let o = run(id);
        let in_budget = o.elapsed_ms <= o.budget_ms;
        let status = if o.passed && in_budget { "PASS" } else { "FAIL" };
        println!(
            "criterion {}: {status} {} ({} ms, budget {} ms)",
            o.id, o.title, o.elapsed_ms, o.budget_ms
        );
        if !in_budget {
            println!("    over the time budget");
        }
        for f in o.failures.iter().take(20) {
            println!("    {f}");
        }
        if status == "FAIL" {
            failed += 1;
        }
    }
    println!("acceptance: {} passed, {failed} failed", ran - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
