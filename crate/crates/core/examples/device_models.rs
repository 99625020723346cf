//! Pointwise laws of the three device models.
//!
//! cargo run -p memristive --example device_models

use memristive::device::{
    device_current, memristor_rate, memristor_resistance, type1_update, type2_memristance,
    MemristorParams, ResistancePair, Type1State, Type2Params,
};

fn main() -> memristive::Result<()> {
    let pair = ResistancePair::new(100.0, 1000.0)?;

    println!("type 1 (latched by the sign of dV/dt)");
    let mut s = Type1State::new(pair);
    for v_dot in [3.0, 0.0, -1.0, 0.0, 2.0] {
        s = type1_update(s, v_dot);
        println!("  dV/dt = {v_dot:+.1} V/s -> R = {} Ohm", s.resistance());
    }

    println!("type 2 (instantaneous threshold at 1 V)");
    let p2 = Type2Params::default();
    for v in [0.0, 0.5, 1.0, 1.5, -2.0] {
        println!("  V = {v:+.1} V -> R = {} Ohm", type2_memristance(v, &p2));
    }

    println!("threshold memristor (beta*T = 2000 1/V, T = 1 s)");
    let pm = MemristorParams::from_beta_period(pair, 1.0, 2000.0, 1.0)?;
    for v in [0.5, 1.0, 1.5, 2.0, -2.0] {
        println!(
            "  V = {v:+.1} V -> dx/dt = {:+.0} 1/s",
            memristor_rate(0.3, v, &pm)
        );
    }
    for x in [0.0, 0.5, 1.0] {
        let r = memristor_resistance(x, &pm);
        println!(
            "  x = {x} -> R = {r} Ohm, I(1 V) = {} A",
            device_current(1.0, r)?
        );
    }
    Ok(())
}
