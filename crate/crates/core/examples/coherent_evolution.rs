//! A coherent state stays coherent under the oscillator Hamiltonian; its
//! centroid follows the classical orbit and it picks up a global phase.
//!
//!     cargo run --example coherent_evolution

use std::f64::consts::PI;

use num_complex::Complex64;
use osc3d::coherent::{coherent_eval_terms, coherent_position_amplitude, evolve_coherent, CoherentLabel};
use osc3d::OscillatorParams;

fn main() -> osc3d::Result<()> {
    let params = OscillatorParams::new(2.0, 0.5, 1.0)?;
    let label = CoherentLabel::new([Complex64::new(1.5, 0.0), Complex64::new(0.0, 1.0), Complex64::new(0.5, -0.5)]);
    let period = 2.0 * PI / params.omega();
    println!("{:>7} {:>9} {:>9} {:>9} {:>9} {:>9}", "t/T", "rx", "px", "ry", "py", "phase");
    for k in 0..=8 {
        let t = period * k as f64 / 8.0;
        let terms = coherent_eval_terms(&label, t, &params);
        let (_, phase) = evolve_coherent(&label, t, &params);
        println!(
            "{:7.3} {:9.4} {:9.4} {:9.4} {:9.4} {:9.4}",
            t / period,
            terms.r_bar[0],
            terms.p_bar[0],
            terms.r_bar[1],
            terms.p_bar[1],
            phase
        );
    }
    let (back, phase) = evolve_coherent(&label, period, &params);
    let drift = (0..3).map(|i| (back.alpha[i] - label.alpha[i]).norm()).fold(0.0, f64::max);
    println!("after one period: label drift {drift:.1e}, phase / pi = {}", phase / PI);

    let x = [0.3, -0.2, 0.5];
    let t = 1.7;
    let (moved, phase) = evolve_coherent(&label, t, &params);
    let direct = coherent_position_amplitude(&label, x, t, &params);
    let relabelled = Complex64::from_polar(1.0, phase) * coherent_position_amplitude(&moved, x, 0.0, &params);
    println!("amplitude at t = {t}: {direct:.6}  via relabelling: {relabelled:.6}");
    Ok(())
}
