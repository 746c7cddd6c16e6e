//! Mandel Q of a squeezed coherent state over the relative phase and the
//! squeeze magnitude, checked against number-basis moments.
//!
//!     cargo run --example mandel_q_surface

use std::f64::consts::PI;

use num_complex::Complex64;
use osc3d::squeezed::{squeezed_fock_coefficients, SqueezeLabel};
use osc3d::statistics::{mandel_q_axis, mandel_q_oracle, DeltaConvention};

fn main() -> osc3d::Result<()> {
    let amp = 1.0;
    let zero = Complex64::new(0.0, 0.0);
    let rs = [0.0, 0.25, 0.5, 0.75, 1.0];
    print!("{:>8}", "delta\\r");
    for r in rs {
        print!("{r:>9.2}");
    }
    println!();
    for k in 0..=6 {
        let delta = k as f64 * PI / 6.0;
        print!("{delta:8.3}");
        for r in rs {
            print!("{:9.4}", mandel_q_axis(r, amp * amp, delta));
        }
        println!();
    }

    println!("\nclosed form vs number-basis moments (theta = 0.4, r = 0.5, |alpha| = 1):");
    let theta = 0.4;
    for k in 0..4 {
        let delta = k as f64 * PI / 4.0;
        let phi = DeltaConvention::Reattributed.phi_for(theta, delta);
        let label = SqueezeLabel::new(
            [Complex64::from_polar(0.5, theta), zero, zero],
            [Complex64::from_polar(amp, phi), zero, zero],
        );
        let oracle = mandel_q_oracle(&squeezed_fock_coefficients(&label, [80, 0, 0], 120)?)?[0];
        println!("  delta = {delta:.3}: closed {:.8}  moments {oracle:.8}", mandel_q_axis(0.5, amp * amp, delta));
    }

    println!("\nvacuum (alpha = 0): Q = cosh 2r for every delta");
    for r in [0.3, 0.8] {
        let qs: Vec<f64> = (0..4).map(|k| mandel_q_axis(r, 0.0, k as f64)).collect();
        println!("  r = {r}: {qs:?}  cosh 2r = {}", (2.0 * r).cosh());
    }
    Ok(())
}
