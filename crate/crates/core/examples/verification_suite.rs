//! Runs each verification group, timing it and listing failed checks and
//! findings. Pass group names as arguments to run a subset.

use std::time::Instant;

use damped_rhs::verify::{run_group, SuiteOptions, GROUPS};

fn main() -> damped_rhs::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let opts = SuiteOptions::default();
    for g in GROUPS
        .iter()
        .filter(|g| args.is_empty() || args.iter().any(|a| a == *g))
    {
        let start = Instant::now();
        let out = run_group(g, &opts)?;
        let scored: Vec<_> = out.checks.iter().map(|c| c.score(1.0)).collect();
        let failed: Vec<_> = scored.iter().filter(|e| !e.pass).collect();
        println!(
            "{g:<16} {:>4} checks, {:>3} failed, {:>7.2} s",
            scored.len(),
            failed.len(),
            start.elapsed().as_secs_f64()
        );
        for e in failed {
            println!(
                "    FAIL {} abs {:.3e} rel {:?} tol {:.1e}",
                e.check_id, e.abs_err, e.rel_err, e.tolerance
            );
        }
        for f in &out.findings {
            println!("    note {}: {:.6e}", f.id, f.measured);
        }
    }
    Ok(())
}
