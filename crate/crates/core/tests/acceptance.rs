//! Runs every acceptance criterion and prints one line per criterion.
//! Exits non-zero if any criterion fails or cannot run.

use std::process::ExitCode;
use std::time::Instant;

use klyshko::audit::criteria;
use klyshko::rng::DEFAULT_SEED;

fn main() -> ExitCode {
    let mut failed = 0;
    for c in criteria() {
        let start = Instant::now();
        match (c.run)(DEFAULT_SEED) {
            Ok(r) => {
                failed += usize::from(!r.pass);
                println!(
                    "{} [{:>2}] {} ({:.1?}): {}",
                    if r.pass { "PASS" } else { "FAIL" },
                    r.id,
                    r.name,
                    start.elapsed(),
                    r.detail
                );
            }
            Err(e) => {
                failed += 1;
                println!("FAIL [{:>2}] {}: error: {e}", c.id, c.name);
            }
        }
    }
    println!("acceptance: {} of {} criteria passed", criteria().len() - failed, criteria().len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
