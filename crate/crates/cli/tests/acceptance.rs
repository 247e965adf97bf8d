//! Runs every acceptance criterion and prints one line per criterion.
//! Exits nonzero if any criterion fails.

use std::process::ExitCode;

use modsuper_cli::checks::{CheckContext, Verifier, CRITERIA};

fn main() -> ExitCode {
    // `cargo test -- --list` and filters from the default harness.
    let args: Vec<String> = std::env::args().skip(1).collect();
    if args.iter().any(|a| a == "--list") {
        println!("acceptance: test");
        return ExitCode::SUCCESS;
    }
    let filter = args.iter().find(|a| !a.starts_with('-'));
    if filter.is_some_and(|f| !"acceptance".contains(f.as_str())) {
        return ExitCode::SUCCESS;
    }

    let verifier = Verifier::new(CheckContext::default());
    let mut failed = 0;
    for number in CRITERIA {
        let c = verifier.criterion(number);
        let status = if c.pass() { "PASS" } else { "FAIL" };
        println!("criterion {number}: {status}  {} ({} checks, {} ms)", c.title, c.checks.len(), c.ms);
        for check in c.checks.iter().filter(|k| !k.pass) {
            println!(
                "    {}: computed {} expected {}{}",
                check.claim_id,
                check.computed,
                check.expected,
                check.note.as_deref().map(|n| format!(" ({n})")).unwrap_or_default()
            );
        }
        if !c.pass() {
            failed += 1;
        }
    }
    println!("acceptance: {} of {} criteria passed", CRITERIA.len() - failed, CRITERIA.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
