//! Run every built-in verification suite and exit nonzero if any check
//! fails, mirroring `qudit-herald verify`.

use std::process::ExitCode;

use qudit_herald::verify::run_all_suites;

fn main() -> ExitCode {
    let reports = run_all_suites();
    for report in &reports {
        print!("{report}");
    }
    if reports.iter().all(|r| r.passed()) {
        ExitCode::SUCCESS
    } else {
        eprintln!("verification failed");
        ExitCode::from(2)
    }
}
