//! Analytic periodic voltage sources.

use std::f64::consts::TAU;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Samples per period used to bracket derivative roots.
pub const ROOT_SCAN_POINTS: usize = 4096;

/// Periodic drive voltage with an exact time derivative.
///
/// `Compound` adds a ripple `a_r sin(2 pi t / (f_r T))` on top of the main
/// sine. `1 / f_r` must be an integer so the sum repeats with period `T`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum Waveform {
    Sine {
        #[serde(rename = "amplitude_v")]
        amplitude: f64,
        #[serde(rename = "period_s")]
        period: f64,
    },
    Compound {
        #[serde(rename = "amplitude_v")]
        amplitude: f64,
        #[serde(rename = "period_s")]
        period: f64,
        #[serde(rename = "ripple_amplitude_v")]
        ripple_amplitude: f64,
        ripple_period_fraction: f64,
    },
}

impl Waveform {
    pub fn sine(amplitude: f64, period: f64) -> Result<Self> {
        let w = Waveform::Sine { amplitude, period };
        w.validate()?;
        Ok(w)
    }

    pub fn compound(
        amplitude: f64,
        period: f64,
        ripple_amplitude: f64,
        ripple_period_fraction: f64,
    ) -> Result<Self> {
        let w = Waveform::Compound {
            amplitude,
            period,
            ripple_amplitude,
            ripple_period_fraction,
        };
        w.validate()?;
        Ok(w)
    }

    /// `2 sin(2 pi t / T)` at `T = 1 s`.
    pub fn paper_sine() -> Self {
        Waveform::Sine {
            amplitude: 2.0,
            period: 1.0,
        }
    }

    /// `2 sin(2 pi t / T) + 0.3 sin(2 pi t / (0.1 T))` at `T = 1 s`.
    pub fn paper_compound() -> Self {
        Waveform::Compound {
            amplitude: 2.0,
            period: 1.0,
            ripple_amplitude: 0.3,
            ripple_period_fraction: 0.1,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let amplitude = self.amplitude();
        if !(amplitude.is_finite() && amplitude >= 0.0) {
            return Err(Error::param(
                "amplitude",
                format!("must be >= 0, got {amplitude}"),
            ));
        }
        let period = self.period();
        if !(period.is_finite() && period > 0.0) {
            return Err(Error::param("period", format!("must be > 0, got {period}")));
        }
        if let Waveform::Compound {
            ripple_amplitude,
            ripple_period_fraction,
            ..
        } = *self
        {
            if !(ripple_amplitude.is_finite() && ripple_amplitude >= 0.0) {
                return Err(Error::param(
                    "ripple_amplitude",
                    format!("must be >= 0, got {ripple_amplitude}"),
                ));
            }
            if !(ripple_period_fraction > 0.0 && ripple_period_fraction < 1.0) {
                return Err(Error::param(
                    "ripple_period_fraction",
                    format!("must lie in (0, 1), got {ripple_period_fraction}"),
                ));
            }
            let inv = 1.0 / ripple_period_fraction;
            if (inv - inv.round()).abs() > 1e-9 * inv {
                return Err(Error::param(
                    "ripple_period_fraction",
                    format!("1/{ripple_period_fraction} is not an integer"),
                ));
            }
        }
        Ok(())
    }

    pub fn amplitude(&self) -> f64 {
        match *self {
            Waveform::Sine { amplitude, .. } | Waveform::Compound { amplitude, .. } => amplitude,
        }
    }

    pub fn period(&self) -> f64 {
        match *self {
            Waveform::Sine { period, .. } | Waveform::Compound { period, .. } => period,
        }
    }

    /// Same shape with the period divided by `factor`.
    pub fn with_frequency_factor(&self, factor: f64) -> Self {
        let mut w = *self;
        match &mut w {
            Waveform::Sine { period, .. } | Waveform::Compound { period, .. } => *period /= factor,
        }
        w
    }

    /// Fractional phase `t / T` reduced to `[0, 1)`.
    fn phase(&self, t: f64) -> f64 {
        (t / self.period()).rem_euclid(1.0)
    }

    /// Ripple harmonic number `1 / f_r`.
    fn ripple_harmonic(fraction: f64) -> f64 {
        (1.0 / fraction).round()
    }

    pub fn eval(&self, t: f64) -> f64 {
        let p = self.phase(t);
        match *self {
            Waveform::Sine { amplitude, .. } => amplitude * (TAU * p).sin(),
            Waveform::Compound {
                amplitude,
                ripple_amplitude,
                ripple_period_fraction,
                ..
            } => {
                let m = Self::ripple_harmonic(ripple_period_fraction);
                amplitude * (TAU * p).sin() + ripple_amplitude * (TAU * m * p).sin()
            }
        }
    }

    pub fn eval_derivative(&self, t: f64) -> f64 {
        let p = self.phase(t);
        let omega = TAU / self.period();
        match *self {
            Waveform::Sine { amplitude, .. } => amplitude * omega * (TAU * p).cos(),
            Waveform::Compound {
                amplitude,
                ripple_amplitude,
                ripple_period_fraction,
                ..
            } => {
                let m = Self::ripple_harmonic(ripple_period_fraction);
                amplitude * omega * (TAU * p).cos()
                    + ripple_amplitude * m * omega * (TAU * m * p).cos()
            }
        }
    }

    /// Times in `[0, T)` where the derivative changes sign, i.e. the local
    /// extrema of the drive, sorted ascending.
    pub fn derivative_sign_changes(&self) -> Vec<f64> {
        let period = self.period();
        let n = ROOT_SCAN_POINTS;
        let h = period / n as f64;
        let tol = 1e-12 * period;
        let d: Vec<f64> = (0..=n)
            .map(|i| self.eval_derivative(i as f64 * h))
            .collect();

        let mut roots = Vec::new();
        for i in 0..n {
            let (a, b) = (d[i], d[i + 1]);
            if a == 0.0 {
                // exact root on the grid: count it only if the sign flips across it
                let prev = if i == 0 { d[n - 1] } else { d[i - 1] };
                if prev * b < 0.0 {
                    roots.push(i as f64 * h);
                }
                continue;
            }
            if a * b < 0.0 {
                roots.push(self.bisect_derivative(i as f64 * h, (i + 1) as f64 * h, tol));
            }
        }
        for r in &mut roots {
            if *r >= period {
                *r -= period;
            }
        }
        roots.sort_by(f64::total_cmp);
        roots
    }

    fn bisect_derivative(&self, mut lo: f64, mut hi: f64, tol: f64) -> f64 {
        let mut f_lo = self.eval_derivative(lo);
        while hi - lo > tol {
            let mid = 0.5 * (lo + hi);
            let f_mid = self.eval_derivative(mid);
            if f_mid == 0.0 {
                return mid;
            }
            if (f_mid > 0.0) == (f_lo > 0.0) {
                lo = mid;
                f_lo = f_mid;
            } else {
                hi = mid;
            }
        }
        0.5 * (lo + hi)
    }
}
