//! Acceptance criteria 1–10: one PASS/FAIL line each. Exits nonzero if any
//! criterion fails or runs over its time budget.

use gentle_core::verify::{run_each, Config};

fn main() {
    let checks = run_each(&Config::default(), |c| println!("{}", c.line()));
    let failed = checks
        .iter()
        .filter(|c| !c.passed || c.seconds > c.budget_seconds)
        .count();
    println!(
        "acceptance: {} of {} criteria passed",
        checks.len() - failed,
        checks.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
