//! The Wigner function of a coherent state transported along classical
//! characteristics satisfies the Liouville equation.
//!
//!     cargo run --example liouville_flow

use num_complex::Complex64;
use osc3d::coherent::CoherentLabel;
use osc3d::phase_space::{evolve_wigner_harmonic, harmonic_characteristic, liouville_residual, wigner_coherent};
use osc3d::{OscillatorParams, PhasePoint};

fn main() -> osc3d::Result<()> {
    let params = OscillatorParams::new(1.5, 0.8, 1.0)?;
    let label = CoherentLabel::new([Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.5), Complex64::new(0.0, 0.0)]);
    let w = |q: &PhasePoint, t: f64| {
        evolve_wigner_harmonic(|x: &PhasePoint| wigner_coherent(&label, x, &params), q, t, &params)
    };

    let start = PhasePoint::new([0.4, -0.2, 0.1], [0.3, 0.0, -0.5]);
    println!("{:>6} {:>12} {:>12}", "t", "W", "residual");
    for k in 0..=8 {
        let t = 0.5 * k as f64;
        let point = harmonic_characteristic(&start, -t, &params);
        println!("{t:6.2} {:12.6e} {:12.3e}", w(&point, t), liouville_residual(w, &point, t, &params, 1e-4));
    }
    println!("W is constant along the forward characteristic through the start point.");
    Ok(())
}
