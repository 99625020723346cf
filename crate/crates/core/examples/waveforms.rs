//! Analytic drives and their extrema.
//!
//! cargo run -p memristive --example waveforms

use memristive::Waveform;

fn main() {
    for w in [Waveform::paper_sine(), Waveform::paper_compound()] {
        println!("{w:?}");
        for t in [0.0, 0.125, 0.25, 0.5] {
            println!(
                "  t = {t:<5} V = {:+.4} V  dV/dt = {:+.4} V/s",
                w.eval(t),
                w.eval_derivative(t)
            );
        }
        let extrema = w.derivative_sign_changes();
        println!("  {} derivative sign changes per period:", extrema.len());
        let shown: Vec<String> = extrema.iter().map(|t| format!("{t:.4}")).collect();
        println!("  {}", shown.join(" "));
    }
}
