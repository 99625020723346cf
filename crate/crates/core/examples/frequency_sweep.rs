//! I-V loop areas across drive frequency for each model.
//!
//! The signed area of a pinched loop nearly cancels between its two lobes,
//! so the sum of unsigned lobe areas is shown alongside it.
//!
//! cargo run -p memristive --release --example frequency_sweep

use memristive::analysis::summarize_loop;
use memristive::sim::{sweep_frequencies, SweepOptions};
use memristive::{DeviceKind, DeviceModel, Waveform};

fn main() -> memristive::Result<()> {
    let factors = [1.0, 10.0, 100.0, 300.0, 1000.0, 3000.0, 10000.0];
    for kind in DeviceKind::ALL {
        let device = DeviceModel::defaults(kind);
        let sweep = sweep_frequencies(
            &device,
            &Waveform::paper_sine(),
            &factors,
            &SweepOptions::default(),
        )?;
        println!("{kind}");
        println!(
            "  {:>8} {:>12} {:>12} {:>7}",
            "nu/nu0", "lobe area", "signed", "pinched"
        );
        for p in &sweep {
            let s = summarize_loop(p.factor, &p.trace, device.level_gap())?;
            println!(
                "  {:>8} {:>12.4e} {:>12.4e} {:>7}",
                s.frequency_factor, s.hysteresis_area, s.signed_area, s.pinched
            );
        }
    }
    Ok(())
}
