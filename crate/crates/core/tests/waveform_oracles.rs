use std::f64::consts::PI;

use memristive::Waveform;
use proptest::prelude::*;

/// d/dt [2 sin(2 pi t) + 0.3 sin(20 pi t)], written out by hand.
fn compound_derivative(t: f64) -> f64 {
    4.0 * PI * (2.0 * PI * t).cos() + 6.0 * PI * (20.0 * PI * t).cos()
}

#[test]
fn compound_extrema_match_brute_force_count() {
    // dense scan, independent of the 4096-point bracketing used by the library
    let n = 2_000_000;
    let d: Vec<f64> = (0..=n)
        .map(|i| compound_derivative(i as f64 / n as f64))
        .collect();
    let brute: Vec<f64> = (0..n)
        .filter(|&i| d[i] * d[i + 1] < 0.0)
        .map(|i| (i as f64 + 0.5) / n as f64)
        .collect();
    assert_eq!(brute.len(), 20);

    let roots = Waveform::paper_compound().derivative_sign_changes();
    assert_eq!(roots.len(), brute.len());
    for (r, b) in roots.iter().zip(&brute) {
        assert!((r - b).abs() < 1.0 / n as f64, "{r} vs {b}");
        assert!(compound_derivative(*r).abs() < 1e-9);
    }
}

#[test]
fn derivative_matches_central_difference_to_second_order() {
    for w in [Waveform::paper_sine(), Waveform::paper_compound()] {
        let grid: Vec<f64> = (0..1024).map(|i| i as f64 / 1024.0).collect();
        let err = |h: f64| {
            grid.iter()
                .map(|&t| {
                    let fd = (w.eval(t + h) - w.eval(t - h)) / (2.0 * h);
                    (fd - w.eval_derivative(t)).abs()
                })
                .fold(0.0, f64::max)
        };
        let (e1, e2) = (err(1e-3), err(5e-4));
        // halving h quarters the error
        let order = (e1 / e2).log2();
        assert!((order - 2.0).abs() < 0.1, "order {order}");
        // third derivative bound: A w^3 + a_r (m w)^3
        let c = match w {
            Waveform::Sine { .. } => 2.0 * (2.0 * PI).powi(3),
            _ => 2.0 * (2.0 * PI).powi(3) + 0.3 * (20.0 * PI).powi(3),
        };
        assert!(e1 <= c / 6.0 * 1e-6 * 1.01, "{e1}");
    }
}

proptest! {
    #[test]
    fn periodic_in_t(t in 0.0f64..50.0, amp in 0.1f64..5.0, period in 0.01f64..10.0) {
        for w in [
            Waveform::sine(amp, period).unwrap(),
            Waveform::compound(amp, period, 0.3, 0.1).unwrap(),
        ] {
            let a = w.eval(t);
            let b = w.eval(t + period);
            prop_assert!((a - b).abs() <= 1e-9 * amp);
        }
    }

    #[test]
    fn pure_sine_half_period_antisymmetry(t in 0.0f64..1.0, amp in 0.1f64..5.0) {
        let w = Waveform::sine(amp, 1.0).unwrap();
        prop_assert!((w.eval(0.5 + t) + w.eval(t)).abs() <= 1e-12 * amp);
    }
}
