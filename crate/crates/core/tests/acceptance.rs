//! Runs the ten acceptance criteria and prints one line per criterion.
//! Built without the libtest harness so the lines are never captured.

use eaoaqec::reproduce::{self, CRITERIA};
use std::process::ExitCode;

fn main() -> ExitCode {
    let mut failed = Vec::new();
    for &(id, _, _) in CRITERIA {
        let out = reproduce::run(id).expect("known criterion");
        println!("{}", out.summary_line());
        for f in out.failures() {
            println!("    failed: {}: {}", f.name, f.detail);
        }
        if !out.passed {
            failed.push(out.key);
        }
    }
    if failed.is_empty() {
        println!("acceptance: {}/{} criteria passed", CRITERIA.len(), CRITERIA.len());
        ExitCode::SUCCESS
    } else {
        println!("acceptance: failed criteria: {failed:?}");
        ExitCode::FAILURE
    }
}
