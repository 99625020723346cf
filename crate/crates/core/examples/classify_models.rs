//! Memory verdicts for the three models.
//!
//! cargo run -p memristive --release --example classify_models

use memristive::commands::run_classification;
use memristive::{DeviceKind, RunConfig};

fn main() -> memristive::Result<()> {
    let sweeps: [&[f64]; 2] = [&[1.0, 10.0, 100.0], &[1.0, 100.0, 10000.0]];
    for factors in sweeps {
        println!("sweep factors {factors:?}");
        for kind in DeviceKind::ALL {
            let mut cfg = RunConfig::new(kind);
            cfg.sweep_factors = factors.to_vec();
            let (_, verdict) = run_classification(&cfg)?;
            let note = if verdict.inconclusive {
                " (inconclusive)"
            } else {
                ""
            };
            println!("  {kind:<9} -> {}{note}", verdict.label);
            for e in verdict.evidence.iter().filter(|e| e.passed) {
                println!("      {} ({:.3e})", e.criterion, e.value);
            }
        }
    }
    Ok(())
}
