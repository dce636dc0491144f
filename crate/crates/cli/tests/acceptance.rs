//! Acceptance suite: one pass/fail line per criterion, each with its pinned
//! tolerance. Exits nonzero when any criterion fails.

use stacklab_cli::suite::{criteria, run_criterion};

fn main() {
    let mut failed = Vec::new();
    for c in criteria() {
        let outcome = run_criterion(&c);
        println!("{}", outcome.line());
        if !outcome.passed {
            failed.push(outcome.id);
        }
    }
    if failed.is_empty() {
        println!("acceptance: all {} criteria pass", criteria().len());
    } else {
        println!("acceptance: failing criteria {failed:?}");
        std::process::exit(1);
    }
}
