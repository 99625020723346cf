//! Building a run from a JSON document: a type 2 device whose comparator
//! watches a different node than its terminals.
//!
//! cargo run -p memristive --example custom_config

use memristive::analysis::detect_switching_events;
use memristive::parse_config;
use memristive::sim::simulate;

const CONFIG: &str = r#"{
  "device": "type2",
  "device_params": {
    "type2_threshold_v": 0.8,
    "type2_control": { "kind": "sine", "amplitude_v": 1.0, "period_s": 0.5 }
  },
  "waveform": { "kind": "sine", "amplitude_v": 2.0, "period_s": 1.0 },
  "sim": { "periods": 1, "dt_s": 1e-4 }
}"#;

fn main() -> memristive::Result<()> {
    let cfg = parse_config(CONFIG)?;
    let device = cfg.device_model()?;
    let trace = simulate(&device, &cfg.waveform, &cfg.sim_config())?;
    let events = detect_switching_events(&trace, device.level_gap());
    println!("{} samples, {} switching events", trace.len(), events.len());
    for t in events {
        println!("  t = {t:.4} s");
    }
    println!("effective config:\n{}", cfg.to_json());
    Ok(())
}
