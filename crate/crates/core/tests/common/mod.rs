#![allow(dead_code)]

use memristive::sim::{simulate, steady_state_period, SimConfig, Trace};
use memristive::{DeviceKind, DeviceModel, Waveform};

pub fn run(kind: DeviceKind, w: &Waveform, periods: u32) -> Trace {
    let dev = DeviceModel::defaults(kind);
    simulate(&dev, w, &SimConfig::for_periods(w, periods)).unwrap()
}

pub fn steady(kind: DeviceKind, w: &Waveform) -> Trace {
    steady_state_period(&run(kind, w, 3), w.period()).unwrap()
}

/// Times of samples whose resistance differs from the previous sample.
pub fn changes(tr: &Trace) -> Vec<f64> {
    tr.resistance
        .windows(2)
        .zip(&tr.times[1..])
        .filter(|(w, _)| w[0] != w[1])
        .map(|(_, &t)| t)
        .collect()
}
