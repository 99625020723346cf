//! Writes the figure data and gnuplot scripts into a directory.
//!
//! cargo run -p memristive --release --example reproduce_figures -- figures/

use std::path::PathBuf;

use memristive::commands::{cmd_reproduce, Figure};
use memristive::{DeviceKind, RunConfig};

fn main() -> memristive::Result<()> {
    let mut cfg = RunConfig::new(DeviceKind::Memristor);
    cfg.output_dir = std::env::args()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from("figures"));
    for fig in [Figure::Fig1a, Figure::Fig1b, Figure::Fig2] {
        let out = cmd_reproduce(&cfg, fig)?;
        for f in out.files {
            println!("{fig}: {}", f.display());
        }
    }
    Ok(())
}
