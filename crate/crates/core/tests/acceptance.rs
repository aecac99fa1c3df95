//! The ten acceptance criteria, one line each.

use std::process::ExitCode;
use std::time::Instant;

fn main() -> ExitCode {
    let mut all = true;
    for (k, (name, run)) in qosc::report::acceptance().iter().enumerate() {
        let t0 = Instant::now();
        let rep = run();
        let status = if rep.passed { "PASS" } else { "FAIL" };
        println!(
            "criterion {:>2} {status} {name}: {} assertions ({:.1}s)",
            k + 1,
            rep.assertions.len(),
            t0.elapsed().as_secs_f64()
        );
        for a in rep.failures().take(3) {
            println!("    {}: {}", a.name, a.witness.as_ref().map(|w| w.to_string()).unwrap_or_default());
        }
        all &= rep.passed;
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
