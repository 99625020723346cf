//! Diagnostics on simulated traces: I-V loop areas, pinch at the origin,
//! resistance switching events, resistance period, and the memory verdict
//! drawn from a frequency sweep.
//!
//! Two loop areas are computed. [`loop_area`] is the signed shoelace area of
//! the whole closed `(V, I)` polygon. For a pinched loop the two lobes are
//! traversed in opposite senses, so their signed contributions cancel for an
//! odd-symmetric device and the total says little about hysteresis.
//! [`hysteresis_area`] instead sums the unsigned areas of the `V >= 0` and
//! `V <= 0` lobes, and it is the quantity the classifier compares across
//! frequencies.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::sim::Trace;

/// Normalized distance from the origin under which a loop counts as pinched.
pub const PINCH_TOLERANCE: f64 = 1e-3;

/// Shift candidates, as divisors of the drive period, tried smallest first.
const PERIOD_DIVISORS: [usize; 4] = [8, 6, 4, 2];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LoopSummary {
    pub frequency_factor: f64,
    /// Signed shoelace area of the full loop, V*A.
    pub signed_area: f64,
    /// Sum of unsigned lobe areas, V*A.
    pub hysteresis_area: f64,
    pub pinched: bool,
    pub n_switch_events: usize,
}

fn shoelace<I>(points: I) -> f64
where
    I: IntoIterator<Item = (f64, f64)>,
{
    let mut iter = points.into_iter();
    let Some(first) = iter.next() else {
        return 0.0;
    };
    let mut prev = first;
    let mut twice = 0.0;
    for p in iter {
        twice += prev.0 * p.1 - p.0 * prev.1;
        prev = p;
    }
    twice += prev.0 * first.1 - first.0 * prev.1;
    0.5 * twice
}

fn check_closed(tr: &Trace) -> Result<()> {
    let (Some(&first), Some(&last)) = (tr.voltage.first(), tr.voltage.last()) else {
        return Ok(());
    };
    let scale = tr.voltage.iter().fold(0.0_f64, |m, v| m.max(v.abs()));
    let gap = (last - first).abs();
    if gap > 1e-9 * scale.max(1e-12) {
        return Err(Error::TraceNotClosed { gap_v: gap });
    }
    Ok(())
}

/// Signed area `1/2 sum (V_k I_{k+1} - V_{k+1} I_k)` of the `(V, I)` polygon,
/// last sample joined to the first.
pub fn loop_area(tr: &Trace) -> Result<f64> {
    check_closed(tr)?;
    Ok(shoelace(
        tr.voltage.iter().copied().zip(tr.current.iter().copied()),
    ))
}

/// `|A(V >= 0 lobe)| + |A(V <= 0 lobe)|`, each lobe taken in cyclic sample
/// order. A loop that never changes sign is a single lobe.
pub fn hysteresis_area(tr: &Trace) -> Result<f64> {
    check_closed(tr)?;
    let points = || tr.voltage.iter().copied().zip(tr.current.iter().copied());
    let upper = shoelace(points().filter(|(v, _)| *v >= 0.0));
    let lower = shoelace(points().filter(|(v, _)| *v <= 0.0));
    Ok(upper.abs() + lower.abs())
}

/// True when some sample lies within [`PINCH_TOLERANCE`] of the origin in
/// coordinates normalized by the trace's own `max|V|` and `max|I|`.
pub fn pinch_check(tr: &Trace) -> bool {
    let v_scale = tr.voltage.iter().fold(0.0_f64, |m, v| m.max(v.abs()));
    let i_scale = tr.current.iter().fold(0.0_f64, |m, i| m.max(i.abs()));
    let norm = |x: f64, s: f64| if s > 0.0 { x / s } else { 0.0 };
    tr.voltage
        .iter()
        .zip(&tr.current)
        .map(|(&v, &i)| norm(v, v_scale).hypot(norm(i, i_scale)))
        .any(|d| d <= PINCH_TOLERANCE)
}

/// Start times of resistance switching events.
///
/// The resistance record is split into maximal strictly monotone runs. A
/// run is an event when it contains a single-step jump larger than
/// `level_gap / 2`, or when it crosses the midpoint of the trace's
/// resistance range and that range exceeds `level_gap / 2`. The reported
/// time is the first sample at which the run has moved, so a piecewise
/// constant record yields the sample after each jump and a continuous
/// record yields the onset of each switching excursion.
pub fn detect_switching_events(tr: &Trace, level_gap: f64) -> Vec<f64> {
    let r = &tr.resistance;
    let n = r.len();
    if n < 2 || level_gap.is_nan() || level_gap <= 0.0 {
        return Vec::new();
    }
    let half_gap = 0.5 * level_gap;
    let (lo, hi) = r
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), &x| {
            (a.min(x), b.max(x))
        });
    let mid = 0.5 * (lo + hi);
    let wide = hi - lo > half_gap;

    let mut events = Vec::new();
    let mut k = 0;
    while k + 1 < n {
        let d = r[k + 1] - r[k];
        if d == 0.0 {
            k += 1;
            continue;
        }
        let start = k;
        let mut end = k + 1;
        let mut jump = d.abs() > half_gap;
        while end + 1 < n {
            let next = r[end + 1] - r[end];
            if next * d <= 0.0 {
                break;
            }
            jump |= next.abs() > half_gap;
            end += 1;
        }
        let (a, b) = (r[start].min(r[end]), r[start].max(r[end]));
        let crosses = wide && a < mid && b >= mid;
        if jump || crosses {
            events.push(tr.times[start + 1]);
        }
        k = end;
    }
    events
}

/// Smallest `tau` in `{T/8, T/6, T/4, T/2}` under which the one-period
/// resistance record repeats to within `1e-6` of its range, else `T`.
///
/// The trace must hold one period with both end samples, so `len - 1`
/// samples make a full cycle. Candidates whose shift is not a whole number
/// of samples are skipped.
pub fn estimate_resistance_period(tr: &Trace, period: f64) -> Result<f64> {
    let n = tr.resistance.len();
    if n < 3 {
        return Err(Error::TraceTooShort {
            span_s: tr.span(),
            required_s: period,
        });
    }
    let m = n - 1;
    let r = &tr.resistance[..m];
    let (lo, hi) = r
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), &x| {
            (a.min(x), b.max(x))
        });
    let range = hi - lo;
    if range <= 1e-12 * hi.abs() {
        return Err(Error::ConstantTrace);
    }
    let tol = 1e-6 * range;
    for d in PERIOD_DIVISORS {
        if !m.is_multiple_of(d) {
            continue;
        }
        let shift = m / d;
        let repeats = (0..m).all(|i| (r[(i + shift) % m] - r[i]).abs() <= tol);
        if repeats {
            return Ok(period / d as f64);
        }
    }
    Ok(period)
}

/// Loop diagnostics for one steady-state period.
pub fn summarize_loop(frequency_factor: f64, tr: &Trace, level_gap: f64) -> Result<LoopSummary> {
    Ok(LoopSummary {
        frequency_factor,
        signed_area: loop_area(tr)?,
        hysteresis_area: hysteresis_area(tr)?,
        pinched: pinch_check(tr),
        n_switch_events: detect_switching_events(tr, level_gap).len(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MemoryLabel {
    Memristive,
    NonlinearResistor,
    FrequencyIndependentBistable,
}

impl MemoryLabel {
    pub fn is_memristive(self) -> bool {
        self == MemoryLabel::Memristive
    }
}

impl fmt::Display for MemoryLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(match self {
            MemoryLabel::Memristive => "memristive",
            MemoryLabel::NonlinearResistor => "nonlinear_resistor",
            MemoryLabel::FrequencyIndependentBistable => "frequency_independent_bistable",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Evidence {
    pub criterion: String,
    pub value: f64,
    pub threshold: f64,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MemoryVerdict {
    pub label: MemoryLabel,
    /// Set when no rule matched outright and the label is the closest rule.
    pub inconclusive: bool,
    pub evidence: Vec<Evidence>,
}

/// Decision thresholds for [`classify_with`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ClassifyThresholds {
    /// Lobe area below which a loop has no hysteresis, V*A.
    pub eps_area: f64,
    /// Maximum relative spread `(max - min) / max` of areas across the sweep
    /// for a frequency-independent loop.
    pub max_spread: f64,
    /// Highest-frequency area must fall below this fraction of the
    /// lowest-frequency area for a closing loop.
    pub max_closure: f64,
    /// Required `max factor / min factor`.
    pub min_decades_ratio: f64,
}

impl Default for ClassifyThresholds {
    fn default() -> Self {
        ClassifyThresholds {
            eps_area: 1e-9,
            max_spread: 0.01,
            max_closure: 0.10,
            min_decades_ratio: 100.0,
        }
    }
}

pub fn classify(sweep: &[LoopSummary]) -> Result<MemoryVerdict> {
    classify_with(sweep, &ClassifyThresholds::default())
}

/// Labels a device from loop summaries taken at three or more frequencies
/// spanning at least two decades.
///
/// Rules, tried in order:
/// 1. every lobe area below `eps_area`: nonlinear resistor;
/// 2. areas non-negligible with relative spread below `max_spread`:
///    frequency-independent bistable;
/// 3. lowest-frequency area non-negligible, highest-frequency area below
///    `max_closure` of it, every loop pinched: memristive.
///
/// Otherwise the rule with the largest fraction of satisfied conditions
/// wins (ties go to the earlier rule) and the verdict is marked
/// inconclusive.
pub fn classify_with(sweep: &[LoopSummary], th: &ClassifyThresholds) -> Result<MemoryVerdict> {
    if sweep.len() < 3 {
        return Err(Error::InsufficientSweep(format!(
            "need at least 3 frequencies, got {}",
            sweep.len()
        )));
    }
    let mut points: Vec<&LoopSummary> = sweep.iter().collect();
    points.sort_by(|a, b| {
        a.frequency_factor
            .total_cmp(&b.frequency_factor)
            .then(a.hysteresis_area.total_cmp(&b.hysteresis_area))
    });
    let f_lo = points[0].frequency_factor;
    let f_hi = points[points.len() - 1].frequency_factor;
    if f_lo.is_nan() || f_lo <= 0.0 || f_hi / f_lo < th.min_decades_ratio * (1.0 - 1e-9) {
        return Err(Error::InsufficientSweep(format!(
            "frequency factors span {f_lo}..{f_hi}, need a ratio of at least {}",
            th.min_decades_ratio
        )));
    }

    let areas: Vec<f64> = points.iter().map(|p| p.hysteresis_area.abs()).collect();
    let max_a = areas.iter().copied().fold(0.0, f64::max);
    let min_a = areas.iter().copied().fold(f64::INFINITY, f64::min);
    let spread = if max_a > 0.0 {
        (max_a - min_a) / max_a
    } else {
        0.0
    };
    let low = areas[0];
    let high = areas[areas.len() - 1];
    // Kept finite so the evidence serializes as a JSON number.
    let closure = if low > 0.0 {
        high / low
    } else if high > 0.0 {
        f64::MAX
    } else {
        1.0
    };
    let pinched = points.iter().filter(|p| p.pinched).count() as f64 / points.len() as f64;

    let negligible = max_a < th.eps_area;
    let flat = spread < th.max_spread;
    let low_open = low >= th.eps_area;
    let closes = closure < th.max_closure;
    let all_pinched = pinched == 1.0;

    let evidence = vec![
        Evidence {
            criterion: "max_hysteresis_area_below_eps".into(),
            value: max_a,
            threshold: th.eps_area,
            passed: negligible,
        },
        Evidence {
            criterion: "area_relative_spread_below".into(),
            value: spread,
            threshold: th.max_spread,
            passed: flat,
        },
        Evidence {
            criterion: "low_frequency_area_at_least_eps".into(),
            value: low,
            threshold: th.eps_area,
            passed: low_open,
        },
        Evidence {
            criterion: "high_to_low_area_ratio_below".into(),
            value: closure,
            threshold: th.max_closure,
            passed: closes,
        },
        Evidence {
            criterion: "pinched_fraction_equals".into(),
            value: pinched,
            threshold: 1.0,
            passed: all_pinched,
        },
    ];

    let rules: [(MemoryLabel, &[bool]); 3] = [
        (MemoryLabel::NonlinearResistor, &[negligible]),
        (
            MemoryLabel::FrequencyIndependentBistable,
            &[!negligible, flat],
        ),
        (MemoryLabel::Memristive, &[low_open, closes, all_pinched]),
    ];

    if let Some((label, _)) = rules.iter().find(|(_, conds)| conds.iter().all(|&c| c)) {
        return Ok(MemoryVerdict {
            label: *label,
            inconclusive: false,
            evidence,
        });
    }

    let score = |conds: &[bool]| conds.iter().filter(|&&c| c).count() as f64 / conds.len() as f64;
    let mut best = rules[0];
    for rule in &rules[1..] {
        if score(rule.1) > score(best.1) {
            best = *rule;
        }
    }
    Ok(MemoryVerdict {
        label: best.0,
        inconclusive: true,
        evidence,
    })
}
