//! Time-domain simulation of three resistive device models and a test of
//! which of them has memory.
//!
//! * a bi-state resistor switched by the sign of `dV/dt` ("type 1"),
//! * a resistor chosen by comparing an instantaneous voltage with a
//!   threshold ("type 2"),
//! * a threshold-type memristive system with one internal state variable.
//!
//! The models are driven by analytic periodic voltages ([`waveform`]),
//! integrated with a fixed-step explicit Euler loop ([`sim`]), and the
//! resulting current-voltage loops are compared across drive frequencies
//! ([`analysis`]). A device whose loop is pinched and shrinks as the
//! frequency rises is labelled memristive; a loop that does not change
//! with frequency, or that has no area at all, is not.
//!
//! ```
//! use memristive::{analysis, sim, DeviceKind, DeviceModel, Waveform};
//!
//! let device = DeviceModel::defaults(DeviceKind::Type2);
//! let drive = Waveform::paper_sine();
//! let cfg = sim::SimConfig::for_periods(&drive, 3);
//! let trace = sim::simulate(&device, &drive, &cfg).unwrap();
//! let last = sim::steady_state_period(&trace, drive.period()).unwrap();
//! assert!(analysis::hysteresis_area(&last).unwrap().abs() < 1e-9);
//! ```

pub mod analysis;
pub mod commands;
pub mod config;
pub mod device;
pub mod error;
pub mod output;
pub mod sim;
pub mod waveform;

pub use analysis::{LoopSummary, MemoryLabel, MemoryVerdict};
pub use config::{parse_config, RunConfig};
pub use device::{DeviceKind, DeviceModel};
pub use error::{Error, Result};
pub use sim::{SimConfig, Trace};
pub use waveform::Waveform;
