//! JSON run configuration.
//!
//! Every physical quantity is in SI base units with the unit in the key
//! name. All keys except `device` are optional; omitted keys take the
//! defaults below, which reproduce the reference parameter set
//! (`R_on = 100 Ohm`, `R_off = 1 kOhm`, `V_t = 1 V`, `beta*T = 2000 1/V`,
//! drive `2 sin(2 pi t / T)` with `T = 1 s`).
//!
//! ```json
//! {
//!   "device": "memristor",
//!   "device_params": { "r_on_ohm": 100.0, "r_off_ohm": 1000.0 },
//!   "waveform": { "kind": "sine", "amplitude_v": 2.0, "period_s": 1.0 },
//!   "sim": { "periods": 3, "record_stride": 1 },
//!   "sweep_factors": [1.0, 10.0, 100.0],
//!   "output_dir": "out"
//! }
//! ```

use std::path::PathBuf;

use serde::{Deserialize, Serialize};

use crate::device::{
    DeviceKind, DeviceModel, MemristorParams, MemristorState, ResistancePair, Type1State,
    Type2Device, Type2Params,
};
use crate::error::{Error, Result};
use crate::sim::{SimConfig, SweepOptions, DEFAULT_STEPS_PER_PERIOD, MIN_SWEEP_PERIODS};
use crate::waveform::Waveform;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub device: DeviceKind,
    #[serde(default)]
    pub device_params: DeviceParams,
    #[serde(default = "Waveform::paper_sine")]
    pub waveform: Waveform,
    #[serde(default)]
    pub sim: SimSettings,
    #[serde(default = "default_sweep_factors")]
    pub sweep_factors: Vec<f64>,
    #[serde(default = "default_output_dir")]
    pub output_dir: PathBuf,
}

fn default_sweep_factors() -> Vec<f64> {
    vec![1.0, 10.0, 100.0]
}

fn default_output_dir() -> PathBuf {
    PathBuf::from("out")
}

/// Parameters for all three models; each model reads only its own keys.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct DeviceParams {
    /// Type 1 and memristor low-resistance level.
    pub r_on_ohm: f64,
    /// Type 1 and memristor high-resistance level.
    pub r_off_ohm: f64,
    pub v_threshold_v: f64,
    /// `beta * T` with `T` the configured waveform period.
    pub beta_times_period_per_v: f64,
    /// Memristor `x0` in `[0, 1]`; for type 1, `0` is `r_off` and `1` is `r_on`.
    pub initial_state: f64,
    pub type2_r_above_ohm: f64,
    pub type2_r_below_ohm: f64,
    pub type2_threshold_v: f64,
    /// Separate control-node voltage for type 2; the terminal voltage when absent.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub type2_control: Option<Waveform>,
}

impl Default for DeviceParams {
    fn default() -> Self {
        DeviceParams {
            r_on_ohm: 100.0,
            r_off_ohm: 1000.0,
            v_threshold_v: 1.0,
            beta_times_period_per_v: 2000.0,
            initial_state: 0.0,
            type2_r_above_ohm: 100.0,
            type2_r_below_ohm: 1000.0,
            type2_threshold_v: 1.0,
            type2_control: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct SimSettings {
    /// Drive periods to simulate (sweeps use at least 3).
    pub periods: u32,
    /// Integration step; `T / 20000` when absent.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dt_s: Option<f64>,
    pub record_stride: usize,
}

impl Default for SimSettings {
    fn default() -> Self {
        SimSettings {
            periods: MIN_SWEEP_PERIODS,
            dt_s: None,
            record_stride: 1,
        }
    }
}

fn field_err(field: &str, e: Error) -> Error {
    let message = match e {
        Error::InvalidParameter { reason, .. } => reason,
        other => other.to_string(),
    };
    Error::Validation {
        field: field.to_string(),
        message,
    }
}

impl RunConfig {
    pub fn new(device: DeviceKind) -> Self {
        RunConfig {
            device,
            device_params: DeviceParams::default(),
            waveform: Waveform::paper_sine(),
            sim: SimSettings::default(),
            sweep_factors: default_sweep_factors(),
            output_dir: default_output_dir(),
        }
    }

    pub fn period(&self) -> f64 {
        self.waveform.period()
    }

    pub fn dt(&self) -> f64 {
        self.sim
            .dt_s
            .unwrap_or(self.period() / DEFAULT_STEPS_PER_PERIOD as f64)
    }

    pub fn validate(&self) -> Result<()> {
        self.waveform
            .validate()
            .map_err(|e| field_err("waveform", e))?;
        let p = &self.device_params;
        ResistancePair::new(p.r_on_ohm, p.r_off_ohm)
            .map_err(|e| field_err("device_params.r_on_ohm/r_off_ohm", e))?;
        if !(p.v_threshold_v.is_finite() && p.v_threshold_v > 0.0) {
            return Err(field_err(
                "device_params.v_threshold_v",
                Error::param(
                    "v_threshold",
                    format!("must be > 0, got {}", p.v_threshold_v),
                ),
            ));
        }
        if !(p.beta_times_period_per_v.is_finite() && p.beta_times_period_per_v > 0.0) {
            return Err(field_err(
                "device_params.beta_times_period_per_v",
                Error::param(
                    "beta",
                    format!("must be > 0, got {}", p.beta_times_period_per_v),
                ),
            ));
        }
        MemristorState::new(p.initial_state)
            .map_err(|e| field_err("device_params.initial_state", e))?;
        if self.device == DeviceKind::Type1 && p.initial_state != 0.0 && p.initial_state != 1.0 {
            return Err(Error::Validation {
                field: "device_params.initial_state".into(),
                message: "type 1 initial state must be 0 (r_off) or 1 (r_on)".into(),
            });
        }
        Type2Params::new(
            p.type2_r_above_ohm,
            p.type2_r_below_ohm,
            p.type2_threshold_v,
        )
        .map_err(|e| field_err("device_params.type2", e))?;
        if let Some(w) = &p.type2_control {
            w.validate()
                .map_err(|e| field_err("device_params.type2_control", e))?;
        }

        if self.sim.periods == 0 {
            return Err(Error::Validation {
                field: "sim.periods".into(),
                message: "must be >= 1".into(),
            });
        }
        if self.sim.record_stride == 0 {
            return Err(Error::Validation {
                field: "sim.record_stride".into(),
                message: "must be >= 1".into(),
            });
        }
        let dt = self.dt();
        if !(dt.is_finite() && dt > 0.0 && dt <= self.period()) {
            return Err(Error::Validation {
                field: "sim.dt_s".into(),
                message: format!("must lie in (0, period], got {dt}"),
            });
        }
        if self.sweep_factors.is_empty() {
            return Err(Error::Validation {
                field: "sweep_factors".into(),
                message: "must not be empty".into(),
            });
        }
        if let Some(f) = self
            .sweep_factors
            .iter()
            .find(|f| !(f.is_finite() && **f > 0.0))
        {
            return Err(Error::Validation {
                field: "sweep_factors".into(),
                message: format!("factors must be > 0, got {f}"),
            });
        }
        Ok(())
    }

    /// Builds the model of kind `kind` from the shared parameter block.
    pub fn device_model_of(&self, kind: DeviceKind) -> Result<DeviceModel> {
        let p = &self.device_params;
        let pair = ResistancePair::new(p.r_on_ohm, p.r_off_ohm)?;
        Ok(match kind {
            DeviceKind::Type1 => {
                DeviceModel::Type1(Type1State::with_level(pair, p.initial_state == 1.0))
            }
            DeviceKind::Type2 => DeviceModel::Type2(Type2Device {
                params: Type2Params::new(
                    p.type2_r_above_ohm,
                    p.type2_r_below_ohm,
                    p.type2_threshold_v,
                )?,
                control: p.type2_control,
            }),
            DeviceKind::Memristor => DeviceModel::Memristor {
                params: MemristorParams::from_beta_period(
                    pair,
                    p.v_threshold_v,
                    p.beta_times_period_per_v,
                    self.period(),
                )?,
                state: MemristorState::new(p.initial_state)?,
            },
        })
    }

    pub fn device_model(&self) -> Result<DeviceModel> {
        self.device_model_of(self.device)
    }

    pub fn sim_config(&self) -> SimConfig {
        SimConfig {
            t_end: self.period() * self.sim.periods as f64,
            dt: self.dt(),
            record_stride: self.sim.record_stride,
        }
    }

    pub fn sweep_options(&self) -> SweepOptions {
        SweepOptions {
            periods: self.sim.periods.max(MIN_SWEEP_PERIODS),
            steps_per_period: (self.period() / self.dt()).round().max(2.0) as u32,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("RunConfig serializes")
    }
}

/// Parses and validates a configuration document.
pub fn parse_config(text: &str) -> Result<RunConfig> {
    let de = &mut serde_json::Deserializer::from_str(text);
    let cfg: RunConfig = match serde_path_to_error::deserialize(de) {
        Ok(cfg) => cfg,
        Err(e) => {
            let path = e.path().to_string();
            let inner = e.into_inner();
            return Err(match inner.classify() {
                serde_json::error::Category::Data => Error::Validation {
                    field: path,
                    message: inner.to_string(),
                },
                _ => Error::Parse {
                    line: inner.line(),
                    column: inner.column(),
                    message: inner.to_string(),
                },
            });
        }
    };
    cfg.validate()?;
    Ok(cfg)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimal_document_gets_reference_defaults() {
        let cfg = parse_config(r#"{"device": "memristor"}"#).unwrap();
        assert_eq!(cfg, RunConfig::new(DeviceKind::Memristor));
        match cfg.device_model().unwrap() {
            DeviceModel::Memristor { params, state } => {
                assert_eq!(params.pair.r_on, 100.0);
                assert_eq!(params.pair.r_off, 1000.0);
                assert_eq!(params.v_threshold, 1.0);
                assert_eq!(params.beta * cfg.period(), 2000.0);
                assert_eq!(state.x(), 0.0);
            }
            other => panic!("unexpected model {other:?}"),
        }
        assert_eq!(cfg.waveform, Waveform::paper_sine());
        assert_eq!(cfg.dt(), 5e-5);
        assert_eq!(cfg.sweep_factors, vec![1.0, 10.0, 100.0]);
    }

    #[test]
    fn swapped_levels_name_the_field() {
        let err = parse_config(
            r#"{"device": "type1", "device_params": {"r_on_ohm": 2000, "r_off_ohm": 1000}}"#,
        )
        .unwrap_err();
        match err {
            Error::Validation { field, .. } => assert!(field.contains("r_on_ohm"), "{field}"),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn unknown_keys_are_rejected() {
        let err =
            parse_config(r#"{"device": "type2", "device_params": {"r_onn_ohm": 1}}"#).unwrap_err();
        match err {
            Error::Validation { field, message } => {
                assert_eq!(field, "device_params.r_onn_ohm");
                assert!(message.contains("r_onn_ohm"));
            }
            other => panic!("{other:?}"),
        }
        assert!(parse_config(r#"{"device": "type2", "colour": "red"}"#).is_err());
    }

    #[test]
    fn syntax_errors_carry_position() {
        let err = parse_config("{\n  \"device\": \"memristor\",\n  oops\n}").unwrap_err();
        match err {
            Error::Parse { line, column, .. } => {
                assert_eq!(line, 3);
                assert!(column > 0);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn unknown_device_is_a_validation_error() {
        let err = parse_config(r#"{"device": "capacitor"}"#).unwrap_err();
        assert!(matches!(err, Error::Validation { ref field, .. } if field == "device"));
    }

    #[test]
    fn defaults_round_trip() {
        for kind in DeviceKind::ALL {
            let cfg = RunConfig::new(kind);
            assert_eq!(parse_config(&cfg.to_json()).unwrap(), cfg);
        }
        let mut cfg = RunConfig::new(DeviceKind::Type2);
        cfg.device_params.type2_control = Some(Waveform::sine(1.5, 1.0).unwrap());
        cfg.sim.dt_s = Some(1e-4);
        assert_eq!(parse_config(&cfg.to_json()).unwrap(), cfg);
    }

    #[test]
    fn type1_seed_must_be_a_level() {
        let err = parse_config(r#"{"device": "type1", "device_params": {"initial_state": 0.5}}"#)
            .unwrap_err();
        assert!(matches!(err, Error::Validation { .. }));
        let cfg =
            parse_config(r#"{"device": "type1", "device_params": {"initial_state": 1}}"#).unwrap();
        match cfg.device_model().unwrap() {
            DeviceModel::Type1(s) => assert_eq!(s.resistance(), 100.0),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn sweep_options_follow_dt() {
        let mut cfg = RunConfig::new(DeviceKind::Memristor);
        cfg.sim.dt_s = Some(1e-4);
        assert_eq!(cfg.sweep_options().steps_per_period, 10_000);
        cfg.sim.periods = 1;
        assert_eq!(cfg.sweep_options().periods, 3);
    }
}
