//! Squeezed coherent states: position-space widths, Fock populations and
//! the parity of a squeezed vacuum.
//!
//!     cargo run --example squeezed_wavefunction

use num_complex::Complex64;
use osc3d::squeezed::{squeezed_fock_coefficients, SqueezeLabel, SqueezedState};
use osc3d::{Axis, OscillatorParams, Wavefunction};

fn main() -> osc3d::Result<()> {
    let params = OscillatorParams::NATURAL;
    let zero = Complex64::new(0.0, 0.0);
    for r in [-0.6, 0.0, 0.6] {
        let label = SqueezeLabel::vacuum([Complex64::new(r, 0.0), zero, zero]);
        let state = SqueezedState::new(&label, &params);
        let var_x: f64 = (-400..=400)
            .map(|k| {
                let x = k as f64 * 0.02;
                x * x * state.at([x, 0.0, 0.0]).norm_sqr() * 0.02
            })
            .sum::<f64>()
            / (-400..=400).map(|k| state.at([k as f64 * 0.02, 0.0, 0.0]).norm_sqr() * 0.02).sum::<f64>();
        println!("r = {r:+.1}: <x^2> = {var_x:.5}, e^(2r)/2 = {:.5}", (2.0 * r).exp() / 2.0);
    }

    let label =
        SqueezeLabel::new([Complex64::from_polar(0.5, 0.7), zero, zero], [Complex64::new(1.0, 0.0), zero, zero]);
    let coeffs = squeezed_fock_coefficients(&label, [30, 0, 0], 80)?;
    println!("\nsqueezed coherent state, x-axis populations (norm {:.10}):", coeffs.norm_sqr());
    for (n, p) in coeffs.axis_distribution(Axis::X).iter().enumerate().take(10) {
        println!("  n = {n:2}  {p:.6}");
    }

    let vacuum =
        squeezed_fock_coefficients(&SqueezeLabel::vacuum([Complex64::new(0.8, 0.0), zero, zero]), [12, 0, 0], 80)?;
    println!("\nsqueezed vacuum populations (odd entries vanish):");
    for (n, p) in vacuum.axis_distribution(Axis::X).iter().enumerate() {
        println!("  n = {n:2}  {p:.3e}");
    }
    Ok(())
}
