//! Device models.
//!
//! Three two-terminal elements share one contract: at every time sample the
//! device is handed the instantaneous drive (terminal voltage, its exact time
//! derivative and an optional separate control voltage), reports its present
//! resistance, and then advances any internal state over the time step.
//!
//! * [`Type1State`]: a bi-state resistor latched by the sign of `dV/dt`.
//! * [`Type2Device`]: a stateless resistor selected by comparing an
//!   instantaneous control voltage against a threshold.
//! * [`MemristorParams`] / [`MemristorState`]: a voltage-controlled
//!   memristive system `I = V / R(x)`, `dx/dt = f(x, V)` with a single
//!   state variable and a threshold rate law.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::waveform::Waveform;

/// Low- and high-resistance levels of a two-state or memristive device.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ResistancePair {
    pub r_on: f64,
    pub r_off: f64,
}

impl ResistancePair {
    pub fn new(r_on: f64, r_off: f64) -> Result<Self> {
        let pair = ResistancePair { r_on, r_off };
        pair.validate()?;
        Ok(pair)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.r_on.is_finite() && self.r_on > 0.0) {
            return Err(Error::param(
                "r_on",
                format!("must be > 0, got {}", self.r_on),
            ));
        }
        if !(self.r_off.is_finite() && self.r_off > self.r_on) {
            return Err(Error::param(
                "r_off",
                format!("must exceed r_on = {}, got {}", self.r_on, self.r_off),
            ));
        }
        Ok(())
    }

    /// `r_off - r_on`.
    pub fn gap(&self) -> f64 {
        self.r_off - self.r_on
    }
}

impl Default for ResistancePair {
    fn default() -> Self {
        ResistancePair {
            r_on: 100.0,
            r_off: 1000.0,
        }
    }
}

/// Derivative-sign ("type 1") device: resistance is `r_on` while the applied
/// voltage rises, `r_off` while it falls, and held when the derivative is
/// exactly zero.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Type1State {
    resistance: f64,
    pair: ResistancePair,
}

impl Type1State {
    /// Starts in the high-resistance state.
    pub fn new(pair: ResistancePair) -> Self {
        Type1State {
            resistance: pair.r_off,
            pair,
        }
    }

    /// Starts at `r_on` when `on` is set.
    pub fn with_level(pair: ResistancePair, on: bool) -> Self {
        Type1State {
            resistance: if on { pair.r_on } else { pair.r_off },
            pair,
        }
    }

    pub fn resistance(&self) -> f64 {
        self.resistance
    }

    pub fn pair(&self) -> ResistancePair {
        self.pair
    }
}

pub fn type1_update(state: Type1State, v_dot: f64) -> Type1State {
    let resistance = if v_dot > 0.0 {
        state.pair.r_on
    } else if v_dot < 0.0 {
        state.pair.r_off
    } else {
        state.resistance
    };
    Type1State {
        resistance,
        ..state
    }
}

/// Instantaneous-threshold ("type 2") resistor parameters.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Type2Params {
    /// Used when `|v_control| > threshold`.
    pub r_above: f64,
    /// Used when `|v_control| <= threshold`.
    pub r_below: f64,
    pub threshold: f64,
}

impl Type2Params {
    pub fn new(r_above: f64, r_below: f64, threshold: f64) -> Result<Self> {
        let p = Type2Params {
            r_above,
            r_below,
            threshold,
        };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.r_above.is_finite() && self.r_above > 0.0) {
            return Err(Error::param(
                "r_above",
                format!("must be > 0, got {}", self.r_above),
            ));
        }
        if !(self.r_below.is_finite() && self.r_below > 0.0) {
            return Err(Error::param(
                "r_below",
                format!("must be > 0, got {}", self.r_below),
            ));
        }
        if !(self.threshold.is_finite() && self.threshold >= 0.0) {
            return Err(Error::param(
                "threshold",
                format!("must be >= 0, got {}", self.threshold),
            ));
        }
        Ok(())
    }
}

impl Default for Type2Params {
    fn default() -> Self {
        Type2Params {
            r_above: 100.0,
            r_below: 1000.0,
            threshold: 1.0,
        }
    }
}

/// The equality case `|v_control| == threshold` maps to `r_below`.
pub fn type2_memristance(v_control: f64, params: &Type2Params) -> f64 {
    if v_control.abs() > params.threshold {
        params.r_above
    } else {
        params.r_below
    }
}

/// A type 2 device plus the source of its control voltage. With `control`
/// unset the control node is the device terminal itself.
#[derive(Debug, Clone, PartialEq)]
pub struct Type2Device {
    pub params: Type2Params,
    pub control: Option<Waveform>,
}

/// Threshold-type memristive system.
///
/// `beta` is the state rate per volt above threshold, in `1/(V*s)`. The
/// usual way to quote it is as the product `beta * T` with the drive period
/// `T`; see [`MemristorParams::from_beta_period`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MemristorParams {
    pub pair: ResistancePair,
    pub v_threshold: f64,
    pub beta: f64,
}

impl MemristorParams {
    pub fn new(pair: ResistancePair, v_threshold: f64, beta: f64) -> Result<Self> {
        let p = MemristorParams {
            pair,
            v_threshold,
            beta,
        };
        p.validate()?;
        Ok(p)
    }

    /// Builds parameters from `beta * T` (in `1/V`) and the reference period.
    ///
    /// A memristance slew-rate quote `beta_R * T` (in ohm/V) converts via
    /// [`MemristorParams::beta_period_from_slew`].
    pub fn from_beta_period(
        pair: ResistancePair,
        v_threshold: f64,
        beta_times_period: f64,
        period: f64,
    ) -> Result<Self> {
        if !(period.is_finite() && period > 0.0) {
            return Err(Error::param("period", format!("must be > 0, got {period}")));
        }
        Self::new(pair, v_threshold, beta_times_period / period)
    }

    /// Converts a memristance slew rate `|dR/dt| = beta_R (|V| - V_t)`,
    /// quoted as `beta_R * T` in ohm/V, into the dimensionless-state form
    /// `beta * T = beta_R * T / (r_off - r_on)`. 1800 kOhm/V over a 900 Ohm
    /// window gives 2000 1/V.
    pub fn beta_period_from_slew(slew_times_period: f64, pair: &ResistancePair) -> f64 {
        slew_times_period / pair.gap()
    }

    pub fn validate(&self) -> Result<()> {
        self.pair.validate()?;
        if !(self.v_threshold.is_finite() && self.v_threshold > 0.0) {
            return Err(Error::param(
                "v_threshold",
                format!("must be > 0, got {}", self.v_threshold),
            ));
        }
        if !(self.beta.is_finite() && self.beta > 0.0) {
            return Err(Error::param(
                "beta",
                format!("must be > 0, got {}", self.beta),
            ));
        }
        Ok(())
    }
}

impl Default for MemristorParams {
    /// 100 Ohm / 1 kOhm, 1 V threshold, `beta * T = 2000 1/V` at `T = 1 s`.
    fn default() -> Self {
        MemristorParams {
            pair: ResistancePair::default(),
            v_threshold: 1.0,
            beta: 2000.0,
        }
    }
}

/// Internal state `x` in `[0, 1]`; `x = 0` is the high-resistance state.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct MemristorState {
    x: f64,
}

impl MemristorState {
    pub fn new(x: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&x) {
            return Err(Error::param("x", format!("must lie in [0, 1], got {x}")));
        }
        Ok(MemristorState { x })
    }

    pub fn x(&self) -> f64 {
        self.x
    }

    /// Explicit Euler step, clamped to `[0, 1]`.
    pub fn advance(&mut self, v: f64, dt: f64, params: &MemristorParams) {
        let rate = memristor_rate(self.x, v, params);
        self.x = (self.x + dt * rate).clamp(0.0, 1.0);
    }
}

/// `sign(v) * beta * (|v| - V_t)` above threshold, zero otherwise.
///
/// The rate does not depend on `x`; the bounds of `x` are enforced by the
/// integrator.
pub fn memristor_rate(_x: f64, v: f64, params: &MemristorParams) -> f64 {
    let excess = v.abs() - params.v_threshold;
    if excess > 0.0 {
        v.signum() * params.beta * excess
    } else {
        0.0
    }
}

pub fn memristor_resistance(x: f64, params: &MemristorParams) -> f64 {
    let ResistancePair { r_on, r_off } = params.pair;
    r_off + (r_on - r_off) * x
}

/// Ohm's law `I = V / R`.
pub fn device_current(v: f64, r: f64) -> Result<f64> {
    if r.is_nan() || r <= 0.0 {
        return Err(Error::param("resistance", format!("must be > 0, got {r}")));
    }
    Ok(v / r)
}

/// Instantaneous inputs handed to a device at one time sample.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Drive {
    pub v: f64,
    pub v_dot: f64,
    /// Voltage seen by a type 2 device's comparator.
    pub v_control: f64,
}

/// What a device reports at one time sample.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Readout {
    pub resistance: f64,
    pub x: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DeviceKind {
    Type1,
    Type2,
    Memristor,
}

impl DeviceKind {
    pub const ALL: [DeviceKind; 3] = [DeviceKind::Type1, DeviceKind::Type2, DeviceKind::Memristor];

    pub fn name(self) -> &'static str {
        match self {
            DeviceKind::Type1 => "type1",
            DeviceKind::Type2 => "type2",
            DeviceKind::Memristor => "memristor",
        }
    }
}

impl std::fmt::Display for DeviceKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.pad(self.name())
    }
}

/// Any of the three models, carrying its current state.
#[derive(Debug, Clone, PartialEq)]
pub enum DeviceModel {
    Type1(Type1State),
    Type2(Type2Device),
    Memristor {
        params: MemristorParams,
        state: MemristorState,
    },
}

impl DeviceModel {
    pub fn type1(pair: ResistancePair) -> Self {
        DeviceModel::Type1(Type1State::new(pair))
    }

    pub fn type2(params: Type2Params) -> Self {
        DeviceModel::Type2(Type2Device {
            params,
            control: None,
        })
    }

    pub fn memristor(params: MemristorParams) -> Self {
        DeviceModel::Memristor {
            params,
            state: MemristorState::default(),
        }
    }

    /// The three models at their default parameters.
    pub fn defaults(kind: DeviceKind) -> Self {
        match kind {
            DeviceKind::Type1 => Self::type1(ResistancePair::default()),
            DeviceKind::Type2 => Self::type2(Type2Params::default()),
            DeviceKind::Memristor => Self::memristor(MemristorParams::default()),
        }
    }

    pub fn kind(&self) -> DeviceKind {
        match self {
            DeviceModel::Type1(_) => DeviceKind::Type1,
            DeviceModel::Type2(_) => DeviceKind::Type2,
            DeviceModel::Memristor { .. } => DeviceKind::Memristor,
        }
    }

    /// Separation between the two resistance levels.
    pub fn level_gap(&self) -> f64 {
        match self {
            DeviceModel::Type1(s) => s.pair.gap(),
            DeviceModel::Type2(d) => (d.params.r_below - d.params.r_above).abs(),
            DeviceModel::Memristor { params, .. } => params.pair.gap(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            DeviceModel::Type1(s) => {
                s.pair.validate()?;
                if s.resistance != s.pair.r_on && s.resistance != s.pair.r_off {
                    return Err(Error::param(
                        "resistance",
                        "type 1 state must be r_on or r_off",
                    ));
                }
                Ok(())
            }
            DeviceModel::Type2(d) => {
                d.params.validate()?;
                if let Some(w) = &d.control {
                    w.validate()?;
                }
                Ok(())
            }
            DeviceModel::Memristor { params, state } => {
                params.validate()?;
                MemristorState::new(state.x).map(|_| ())
            }
        }
    }

    /// Control voltage for a sample at time `t` with terminal voltage `v`.
    pub fn control_voltage(&self, t: f64, v: f64) -> f64 {
        match self {
            DeviceModel::Type2(Type2Device {
                control: Some(w), ..
            }) => w.eval(t),
            _ => v,
        }
    }

    /// Reports the resistance at the present sample, then advances the
    /// internal state by `dt`.
    ///
    /// The type 1 latch is updated from `drive.v_dot` before readout so the
    /// reported level reflects the current derivative sign.
    pub fn step(&mut self, drive: Drive, dt: f64) -> Readout {
        match self {
            DeviceModel::Type1(state) => {
                *state = type1_update(*state, drive.v_dot);
                Readout {
                    resistance: state.resistance,
                    x: None,
                }
            }
            DeviceModel::Type2(d) => Readout {
                resistance: type2_memristance(drive.v_control, &d.params),
                x: None,
            },
            DeviceModel::Memristor { params, state } => {
                let out = Readout {
                    resistance: memristor_resistance(state.x, params),
                    x: Some(state.x),
                };
                state.advance(drive.v, dt, params);
                out
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pair() -> ResistancePair {
        ResistancePair::default()
    }

    #[test]
    fn type1_branches() {
        let off = Type1State::new(pair());
        assert_eq!(type1_update(off, 3.0).resistance(), 100.0);

        let on = Type1State::with_level(pair(), true);
        assert_eq!(type1_update(on, 0.0).resistance(), 100.0);
        assert_eq!(type1_update(on, -1.0).resistance(), 1000.0);
    }

    #[test]
    fn type2_branches_and_boundary() {
        let p = Type2Params::default();
        assert_eq!(type2_memristance(2.0, &p), 100.0);
        assert_eq!(type2_memristance(-2.0, &p), 100.0);
        assert_eq!(type2_memristance(0.0, &p), 1000.0);
        assert_eq!(type2_memristance(1.0, &p), 1000.0);
        assert_eq!(type2_memristance(-1.0, &p), 1000.0);
    }

    #[test]
    fn memristor_rate_law() {
        // beta * T = 2000 1/V with T = 1 s
        let p = MemristorParams::from_beta_period(pair(), 1.0, 2000.0, 1.0).unwrap();
        assert_eq!(memristor_rate(0.3, 0.5, &p), 0.0);
        assert_eq!(memristor_rate(0.3, 1.0, &p), 0.0);
        assert_eq!(memristor_rate(0.3, 2.0, &p), 2000.0);
        assert_eq!(memristor_rate(0.3, -2.0, &p), -2000.0);
    }

    #[test]
    fn slew_quote_converts_to_state_rate() {
        let bt = MemristorParams::beta_period_from_slew(1.8e6, &pair());
        assert!((bt - 2000.0).abs() < 1e-9);
    }

    #[test]
    fn memristor_resistance_endpoints() {
        let p = MemristorParams::default();
        assert_eq!(memristor_resistance(0.0, &p), 1000.0);
        assert_eq!(memristor_resistance(1.0, &p), 100.0);
        assert_eq!(memristor_resistance(0.5, &p), 550.0);
    }

    #[test]
    fn ohm_relation() {
        assert_eq!(device_current(1.0, 100.0).unwrap(), 0.01);
        assert_eq!(device_current(0.0, 1234.0).unwrap(), 0.0);
        assert_eq!(device_current(2.0, 1000.0).unwrap(), 0.002);
        assert!(matches!(
            device_current(1.0, 0.0),
            Err(Error::InvalidParameter { .. })
        ));
        assert!(device_current(1.0, -5.0).is_err());
    }

    #[test]
    fn parameter_validation() {
        assert!(ResistancePair::new(1000.0, 100.0).is_err());
        assert!(ResistancePair::new(0.0, 100.0).is_err());
        assert!(ResistancePair::new(100.0, 100.0).is_err());
        assert!(Type2Params::new(100.0, 1000.0, -0.1).is_err());
        assert!(Type2Params::new(100.0, 1000.0, 0.0).is_ok());
        assert!(MemristorParams::new(pair(), 0.0, 1.0).is_err());
        assert!(MemristorParams::new(pair(), 1.0, 0.0).is_err());
        assert!(MemristorState::new(1.5).is_err());
        assert!(MemristorState::new(-0.1).is_err());
    }

    #[test]
    fn euler_step_clamps() {
        let p = MemristorParams::default();
        let mut s = MemristorState::new(0.99).unwrap();
        s.advance(2.0, 1.0, &p);
        assert_eq!(s.x(), 1.0);
        s.advance(-2.0, 1.0, &p);
        assert_eq!(s.x(), 0.0);
    }

    #[test]
    fn step_reads_before_advancing_memristor() {
        let mut d = DeviceModel::defaults(DeviceKind::Memristor);
        let drive = Drive {
            v: 2.0,
            v_dot: 0.0,
            v_control: 2.0,
        };
        let r0 = d.step(drive, 1e-4);
        assert_eq!(r0.resistance, 1000.0);
        assert_eq!(r0.x, Some(0.0));
        let r1 = d.step(drive, 1e-4);
        assert!((r1.x.unwrap() - 0.2).abs() < 1e-12);
    }
}
