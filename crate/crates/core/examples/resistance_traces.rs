//! Resistance versus time for all three models under the plain and the
//! rippled sine, with the switching events found in each trace.
//!
//! cargo run -p memristive --example resistance_traces

use memristive::analysis::{detect_switching_events, estimate_resistance_period};
use memristive::sim::{simulate, steady_state_period, SimConfig};
use memristive::{DeviceKind, DeviceModel, Waveform};

fn main() -> memristive::Result<()> {
    for (name, w) in [
        ("sine", Waveform::paper_sine()),
        ("sine + ripple", Waveform::paper_compound()),
    ] {
        println!("drive: {name}");
        for kind in DeviceKind::ALL {
            let device = DeviceModel::defaults(kind);
            let trace = simulate(&device, &w, &SimConfig::for_periods(&w, 3))?;
            let last = steady_state_period(&trace, w.period())?;
            let events = detect_switching_events(&last, device.level_gap());
            let period = match estimate_resistance_period(&last, w.period()) {
                Ok(p) => format!("{p} T"),
                Err(e) => e.to_string(),
            };
            let phases: Vec<String> = events
                .iter()
                .take(6)
                .map(|t| format!("{:.4}", (t / w.period()).fract()))
                .collect();
            println!(
                "  {kind:<9} {:>2} events/period, R period {period}, first at t/T = {}",
                events.len(),
                phases.join(" ")
            );
        }
    }
    Ok(())
}
