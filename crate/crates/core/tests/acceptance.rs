//! Acceptance criteria. Runs every criterion, prints one PASS/FAIL line for
//! each, and exits non-zero if any fails.

use std::process::{Command, ExitCode};

use memristive::analysis::{
    detect_switching_events, estimate_resistance_period, hysteresis_area, loop_area, pinch_check,
};
use memristive::commands::SummaryReport;
use memristive::sim::{
    simulate, steady_state_period, sweep_frequencies, SimConfig, SweepOptions, Trace,
};
use memristive::{DeviceKind, DeviceModel, MemoryLabel, Waveform};

const T: f64 = 1.0;
const DT: f64 = T / 20000.0;
/// R_off - R_on at the reference parameters.
const GAP: f64 = 900.0;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn check(ok: bool, detail: String) -> Outcome {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn dev(kind: DeviceKind) -> DeviceModel {
    DeviceModel::defaults(kind)
}

fn steady(kind: DeviceKind, w: &Waveform) -> Trace {
    let tr = simulate(&dev(kind), w, &SimConfig::for_periods(w, 3)).unwrap();
    steady_state_period(&tr, w.period()).unwrap()
}

fn sweep(kind: DeviceKind, factors: &[f64]) -> Vec<Trace> {
    sweep_frequencies(
        &dev(kind),
        &Waveform::paper_sine(),
        factors,
        &SweepOptions::default(),
    )
    .unwrap()
    .into_iter()
    .map(|p| p.trace)
    .collect()
}

/// Distance from `t` to the nearest of `targets` (fractions of T), modulo T.
fn phase_error(t: f64, targets: &[f64]) -> f64 {
    let p = (t / T).rem_euclid(1.0);
    targets
        .iter()
        .map(|&c| {
            let d = (p - c).abs();
            d.min(1.0 - d) * T
        })
        .fold(f64::INFINITY, f64::min)
}

fn type1_switching_locus() -> Outcome {
    let w = Waveform::paper_sine();
    let tr = simulate(&dev(DeviceKind::Type1), &w, &SimConfig::for_periods(&w, 3)).unwrap();
    let events = detect_switching_events(&tr, GAP);
    let worst = events
        .iter()
        .map(|&t| phase_error(t, &[0.25, 0.75]))
        .fold(0.0, f64::max);
    check(
        events.len() == 6 && worst <= 2.0 * DT,
        format!(
            "{} events over 3 periods, worst offset {:.3e} s (limit {:.3e})",
            events.len(),
            worst,
            2.0 * DT
        ),
    )
}

fn type1_frequency_independence() -> Outcome {
    let tr = sweep(DeviceKind::Type1, &[1.0, 10.0]);
    let points = |tr: &Trace| {
        let mut p: Vec<(f64, f64, f64)> = tr
            .voltage
            .iter()
            .zip(&tr.current)
            .zip(&tr.resistance)
            .map(|((&v, &i), &r)| (r, v, i))
            .collect();
        p.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.total_cmp(&b.1)));
        p
    };
    let (a, b) = (points(&tr[0]), points(&tr[1]));
    let v_scale = 2.0;
    let i_scale = tr[0].current.iter().fold(0.0_f64, |m, x| m.max(x.abs()));
    let worst = a
        .iter()
        .zip(&b)
        .map(|(p, q)| ((p.1 - q.1).abs() / v_scale).max((p.2 - q.2).abs() / i_scale))
        .fold(0.0, f64::max);
    let (h0, h1) = (
        hysteresis_area(&tr[0]).unwrap(),
        hysteresis_area(&tr[1]).unwrap(),
    );
    let (s0, s1) = (loop_area(&tr[0]).unwrap(), loop_area(&tr[1]).unwrap());
    let area_rel = (h0 - h1).abs() / h0;
    let signed_ok = (s0 - s1).abs() <= 1e-6 * h0;
    check(
        a.len() == b.len() && worst <= 1e-6 && area_rel <= 1e-6 && signed_ok,
        format!(
            "point-set max rel diff {worst:.2e}, lobe areas {h0:.6e} / {h1:.6e} (rel {area_rel:.2e}), signed {s0:.2e} / {s1:.2e}"
        ),
    )
}

fn type2_non_hysteresis() -> Outcome {
    let traces = sweep(DeviceKind::Type2, &[1.0, 10.0, 100.0]);
    let mut worst = 0.0_f64;
    for tr in &traces {
        worst = worst
            .max(loop_area(tr).unwrap().abs())
            .max(hysteresis_area(tr).unwrap());
    }
    check(
        worst < 1e-9,
        format!("max |area| over factors 1,10,100 = {worst:.3e} V*A (limit 1e-9)"),
    )
}

fn type2_frequency_doubling() -> Outcome {
    let tr = steady(DeviceKind::Type2, &Waveform::paper_sine());
    let tau = estimate_resistance_period(&tr, T).unwrap();
    check(tau == T / 2.0, format!("resistance period {tau} T"))
}

fn type2_transition_times() -> Outcome {
    let tr = steady(DeviceKind::Type2, &Waveform::paper_sine());
    let targets = [1.0 / 12.0, 5.0 / 12.0, 7.0 / 12.0, 11.0 / 12.0];
    let events = detect_switching_events(&tr, GAP);
    let worst = events
        .iter()
        .map(|&t| phase_error(t, &targets))
        .fold(0.0, f64::max);
    let mut phases: Vec<f64> = events.iter().map(|t| (t / T).rem_euclid(1.0)).collect();
    phases.sort_by(f64::total_cmp);
    let distinct = phases
        .iter()
        .zip(&targets)
        .all(|(p, c)| (p - c).abs() <= 2.0 * DT);
    check(
        events.len() == 4 && distinct && worst <= 2.0 * DT,
        format!(
            "{} events at t/T = {:.5?}, worst offset {:.3e} s",
            events.len(),
            phases,
            worst
        ),
    )
}

fn memristor_loop_closure() -> Outcome {
    let traces = sweep(DeviceKind::Memristor, &[1.0, 10.0, 100.0]);
    let areas: Vec<f64> = traces.iter().map(|t| hysteresis_area(t).unwrap()).collect();
    let signed: Vec<f64> = traces.iter().map(|t| loop_area(t).unwrap()).collect();
    let ratio = areas[2] / areas[0];
    let non_increasing = areas.windows(2).all(|w| w[1] <= w[0]);
    let pinched = traces.iter().all(pinch_check);
    check(
        ratio <= 0.10 && non_increasing && pinched,
        format!(
            "lobe areas {:.4e}, {:.4e}, {:.4e} V*A (ratio {ratio:.3}, need <= 0.10; non-increasing: {non_increasing}; pinched: {pinched}); signed {:.2e}, {:.2e}, {:.2e}",
            areas[0], areas[1], areas[2], signed[0], signed[1], signed[2]
        ),
    )
}

fn memristor_threshold_onset() -> Outcome {
    let w = Waveform::paper_sine();
    let tr = simulate(
        &dev(DeviceKind::Memristor),
        &w,
        &SimConfig::for_periods(&w, 1),
    )
    .unwrap();
    let first = detect_switching_events(&tr, GAP).first().copied();
    let first_motion = tr
        .resistance
        .windows(2)
        .position(|w| w[0] != w[1])
        .map(|k| tr.times[k + 1]);
    match (first, first_motion) {
        (Some(t), Some(m)) => check(
            (t - T / 12.0).abs() <= 2.0 * DT && t == m,
            format!(
                "first event at {t:.6} s, first motion at {m:.6} s, target {:.6} s",
                T / 12.0
            ),
        ),
        _ => Err("no resistance motion".into()),
    }
}

fn compound_drive_contrast() -> Outcome {
    let sine = Waveform::paper_sine();
    let compound = Waveform::paper_compound();
    let t1 = detect_switching_events(&steady(DeviceKind::Type1, &compound), GAP).len();
    let m_sine = detect_switching_events(&steady(DeviceKind::Memristor, &sine), GAP).len();
    let m_comp = detect_switching_events(&steady(DeviceKind::Memristor, &compound), GAP).len();
    check(
        t1 == 20 && m_sine == m_comp,
        format!("type 1: {t1} events/period; memristor: {m_comp} (compound) vs {m_sine} (sine)"),
    )
}

fn classifier_end_to_end() -> Outcome {
    let dir = tempfile::tempdir().unwrap();
    let cases = [
        ("type1", MemoryLabel::FrequencyIndependentBistable, 2),
        ("type2", MemoryLabel::NonlinearResistor, 2),
        ("memristor", MemoryLabel::Memristive, 0),
    ];
    let mut ok = true;
    let mut parts = Vec::new();
    for (device, label, code) in cases {
        let cfg = dir.path().join(format!("{device}.json"));
        let out = dir.path().join(device);
        std::fs::write(&cfg, format!(r#"{{"device":"{device}"}}"#)).unwrap();
        let status = Command::new(env!("CARGO_BIN_EXE_memristive"))
            .arg("--config")
            .arg(&cfg)
            .arg("--out")
            .arg(&out)
            .arg("classify")
            .output()
            .unwrap()
            .status
            .code();
        let text = std::fs::read_to_string(out.join("summary.json")).unwrap();
        let verdict = SummaryReport::from_json(&text).unwrap().verdict.unwrap();
        ok &= verdict.label == label && status == Some(code);
        let note = if verdict.inconclusive {
            ", inconclusive"
        } else {
            ""
        };
        parts.push(format!(
            "{device} -> {} (exit {:?}{note})",
            verdict.label, status
        ));
    }
    check(ok, parts.join("; "))
}

fn numerical_hygiene() -> Outcome {
    let w = Waveform::paper_sine();
    let coarse = SimConfig::for_periods(&w, 3);
    let fine = SimConfig {
        dt: coarse.dt / 2.0,
        ..coarse
    };
    let m = dev(DeviceKind::Memristor);
    let a = steady_state_period(&simulate(&m, &w, &coarse).unwrap(), T).unwrap();
    let b = steady_state_period(&simulate(&m, &w, &fine).unwrap(), T).unwrap();
    let r_max = a.resistance.iter().fold(0.0_f64, |x, r| x.max(*r));
    let diff = a
        .resistance
        .iter()
        .enumerate()
        .map(|(k, r)| (r - b.resistance[2 * k]).abs())
        .fold(0.0, f64::max)
        / r_max;

    let grid: Vec<f64> = (0..1024).map(|i| i as f64 / 1024.0).collect();
    let mut orders = Vec::new();
    for w in [Waveform::paper_sine(), Waveform::paper_compound()] {
        let err = |h: f64| {
            grid.iter()
                .map(|&t| {
                    ((w.eval(t + h) - w.eval(t - h)) / (2.0 * h) - w.eval_derivative(t)).abs()
                })
                .fold(0.0, f64::max)
        };
        orders.push((err(1e-3) / err(5e-4)).log2());
    }
    let second_order = orders.iter().all(|o| (o - 2.0).abs() < 0.1);
    check(
        diff < 0.01 && second_order,
        format!(
            "dt-halving max-norm change {:.3}% ; central-difference orders {:.3?}",
            100.0 * diff,
            orders
        ),
    )
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("type 1 switching locus", type1_switching_locus),
        (
            "type 1 frequency independence",
            type1_frequency_independence,
        ),
        ("type 2 non-hysteresis", type2_non_hysteresis),
        ("type 2 frequency doubling", type2_frequency_doubling),
        ("type 2 transition times", type2_transition_times),
        ("memristor loop closure", memristor_loop_closure),
        ("memristor threshold onset", memristor_threshold_onset),
        ("compound-drive contrast", compound_drive_contrast),
        ("classifier end-to-end", classifier_end_to_end),
        ("numerical hygiene", numerical_hygiene),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        match f() {
            Ok(detail) => println!("[PASS] AC{:02} {name}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("[FAIL] AC{:02} {name}: {detail}", i + 1);
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
