//! Fixed-step time-domain simulation, steady-state extraction and
//! frequency sweeps.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::device::{device_current, DeviceModel, Drive};
use crate::error::{Error, Result};
use crate::waveform::Waveform;

/// Default number of integration steps per drive period.
pub const DEFAULT_STEPS_PER_PERIOD: u32 = 20_000;
/// Minimum number of drive periods simulated before taking the last one.
pub const MIN_SWEEP_PERIODS: u32 = 3;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SimConfig {
    pub t_end: f64,
    pub dt: f64,
    /// Record every `record_stride`-th integration step.
    pub record_stride: usize,
}

impl SimConfig {
    /// `periods` drive periods at `T / 20000` per step, recording every step.
    pub fn for_periods(w: &Waveform, periods: u32) -> Self {
        let period = w.period();
        SimConfig {
            t_end: period * periods as f64,
            dt: period / DEFAULT_STEPS_PER_PERIOD as f64,
            record_stride: 1,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.dt.is_finite() && self.dt > 0.0) {
            return Err(Error::InvalidConfig(format!(
                "dt must be > 0, got {}",
                self.dt
            )));
        }
        if !(self.t_end.is_finite() && self.t_end >= self.dt) {
            return Err(Error::InvalidConfig(format!(
                "t_end must be >= dt, got t_end = {} and dt = {}",
                self.t_end, self.dt
            )));
        }
        if self.record_stride == 0 {
            return Err(Error::InvalidConfig("record_stride must be >= 1".into()));
        }
        let steps = self.t_end / self.dt;
        if steps > (usize::MAX / 2) as f64 || steps > 1e12 {
            return Err(Error::InvalidConfig(format!("{steps} steps is too many")));
        }
        Ok(())
    }

    /// Number of integration steps; `t_end / dt` is rounded when it is an
    /// integer up to floating error and truncated otherwise.
    pub fn n_steps(&self) -> usize {
        let ratio = self.t_end / self.dt;
        let rounded = ratio.round();
        if (ratio - rounded).abs() <= 1e-9 * ratio.max(1.0) {
            rounded as usize
        } else {
            ratio.floor() as usize
        }
    }
}

/// Uniformly sampled simulation record.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Trace {
    pub times: Vec<f64>,
    pub voltage: Vec<f64>,
    pub v_dot: Vec<f64>,
    pub resistance: Vec<f64>,
    pub current: Vec<f64>,
    /// Memristor state; absent for the stateless and bi-state models.
    pub state_x: Option<Vec<f64>>,
    /// Spacing of `times`.
    pub sample_interval: f64,
}

impl Trace {
    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    pub fn span(&self) -> f64 {
        match (self.times.first(), self.times.last()) {
            (Some(a), Some(b)) => b - a,
            _ => 0.0,
        }
    }

    /// Sub-trace over sample indices `range`.
    pub fn slice(&self, range: std::ops::Range<usize>) -> Trace {
        Trace {
            times: self.times[range.clone()].to_vec(),
            voltage: self.voltage[range.clone()].to_vec(),
            v_dot: self.v_dot[range.clone()].to_vec(),
            resistance: self.resistance[range.clone()].to_vec(),
            current: self.current[range.clone()].to_vec(),
            state_x: self.state_x.as_ref().map(|x| x[range].to_vec()),
            sample_interval: self.sample_interval,
        }
    }

    /// Checks equal lengths, uniform time spacing and `I = V / R` at every
    /// sample. `rel_tol` applies to the spacing and the current.
    pub fn check_invariants(&self, rel_tol: f64) -> std::result::Result<(), String> {
        let n = self.times.len();
        let lens = [
            self.voltage.len(),
            self.v_dot.len(),
            self.resistance.len(),
            self.current.len(),
        ];
        if lens.iter().any(|&l| l != n) {
            return Err(format!("column lengths differ: {n} vs {lens:?}"));
        }
        if let Some(x) = &self.state_x {
            if x.len() != n {
                return Err(format!("state_x has {} samples, expected {n}", x.len()));
            }
        }
        for (i, w) in self.times.windows(2).enumerate() {
            let step = w[1] - w[0];
            if step.is_nan()
                || step <= 0.0
                || (step - self.sample_interval).abs()
                    > rel_tol * self.sample_interval + 1e-12 * w[1].abs()
            {
                return Err(format!("non-uniform time step {step} at sample {i}"));
            }
        }
        for i in 0..n {
            let expected = self.voltage[i] / self.resistance[i];
            if (self.current[i] - expected).abs() > rel_tol * expected.abs() {
                return Err(format!(
                    "I != V/R at sample {i}: {} vs {expected}",
                    self.current[i]
                ));
            }
        }
        Ok(())
    }
}

/// Runs `device` (from its present state) under `w` with explicit Euler
/// stepping.
///
/// Sample `k` sits at `t = k dt` for `k = 0..=n_steps`. The device is not
/// modified; every call starts from the state it carries.
pub fn simulate(device: &DeviceModel, w: &Waveform, cfg: &SimConfig) -> Result<Trace> {
    cfg.validate()?;
    device.validate()?;
    w.validate()?;

    let n_steps = cfg.n_steps();
    let n_rec = n_steps / cfg.record_stride + 1;
    let has_x = matches!(device, DeviceModel::Memristor { .. });

    let mut tr = Trace {
        times: Vec::with_capacity(n_rec),
        voltage: Vec::with_capacity(n_rec),
        v_dot: Vec::with_capacity(n_rec),
        resistance: Vec::with_capacity(n_rec),
        current: Vec::with_capacity(n_rec),
        state_x: has_x.then(|| Vec::with_capacity(n_rec)),
        sample_interval: cfg.dt * cfg.record_stride as f64,
    };

    let mut dev = device.clone();
    for k in 0..=n_steps {
        let t = k as f64 * cfg.dt;
        let v = w.eval(t);
        let drive = Drive {
            v,
            v_dot: w.eval_derivative(t),
            v_control: dev.control_voltage(t, v),
        };
        let out = dev.step(drive, cfg.dt);
        if k % cfg.record_stride == 0 {
            tr.times.push(t);
            tr.voltage.push(v);
            tr.v_dot.push(drive.v_dot);
            tr.resistance.push(out.resistance);
            tr.current.push(device_current(v, out.resistance)?);
            if let (Some(xs), Some(x)) = (tr.state_x.as_mut(), out.x) {
                xs.push(x);
            }
        }
    }
    Ok(tr)
}

/// The final full period `[t_end - T, t_end]` of `tr`, both ends included.
pub fn steady_state_period(tr: &Trace, period: f64) -> Result<Trace> {
    let span = tr.span();
    if tr.len() < 2 || span < 2.0 * period * (1.0 - 1e-9) {
        return Err(Error::TraceTooShort {
            span_s: span,
            required_s: 2.0 * period,
        });
    }
    let per_period = (period / tr.sample_interval).round() as usize;
    if per_period == 0 {
        return Err(Error::InvalidConfig(
            "period is shorter than the sample interval".into(),
        ));
    }
    let n = tr.len();
    Ok(tr.slice(n - 1 - per_period..n))
}

/// Sweep settings: how long each frequency point runs and how finely it is
/// sampled. The step count per period is held fixed so every point samples
/// the drive at the same phases.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SweepOptions {
    pub periods: u32,
    pub steps_per_period: u32,
}

impl Default for SweepOptions {
    fn default() -> Self {
        SweepOptions {
            periods: MIN_SWEEP_PERIODS,
            steps_per_period: DEFAULT_STEPS_PER_PERIOD,
        }
    }
}

impl SweepOptions {
    pub fn sim_config(&self, w: &Waveform) -> SimConfig {
        let period = w.period();
        SimConfig {
            t_end: period * self.periods as f64,
            dt: period / self.steps_per_period as f64,
            record_stride: 1,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepPoint {
    pub factor: f64,
    pub trace: Trace,
}

/// Simulates `device` at each frequency factor (period `T / factor`) from
/// its initial state and returns the final-period traces in input order.
pub fn sweep_frequencies(
    device: &DeviceModel,
    base: &Waveform,
    factors: &[f64],
    opts: &SweepOptions,
) -> Result<Vec<SweepPoint>> {
    if factors.is_empty() {
        return Err(Error::InvalidConfig("no frequency factors given".into()));
    }
    if let Some(f) = factors.iter().find(|f| !(f.is_finite() && **f > 0.0)) {
        return Err(Error::InvalidConfig(format!(
            "frequency factor must be > 0, got {f}"
        )));
    }
    if opts.periods < MIN_SWEEP_PERIODS {
        return Err(Error::InvalidConfig(format!(
            "sweeps need at least {MIN_SWEEP_PERIODS} periods, got {}",
            opts.periods
        )));
    }
    if opts.steps_per_period < 2 {
        return Err(Error::InvalidConfig("steps_per_period must be >= 2".into()));
    }

    factors
        .par_iter()
        .map(|&factor| {
            let w = base.with_frequency_factor(factor);
            let cfg = opts.sim_config(&w);
            let tr = simulate(device, &w, &cfg)?;
            Ok(SweepPoint {
                factor,
                trace: steady_state_period(&tr, w.period())?,
            })
        })
        .collect()
}
