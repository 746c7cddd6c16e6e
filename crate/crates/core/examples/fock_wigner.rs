//! Wigner function of low-lying Fock states: closed form against the
//! numerical Fourier transform of the eigenfunction, along the x axis.
//!
//!     cargo run --example fock_wigner

use osc3d::phase_space::{wigner_fock, wigner_numeric};
use osc3d::{FockState, OscillatorParams, PhasePoint, TripleIndex};

fn main() -> osc3d::Result<()> {
    let params = OscillatorParams::new(1.0, 2.0, 1.0)?;
    for index in [TripleIndex::new(0, 0, 0), TripleIndex::new(1, 0, 0), TripleIndex::new(2, 1, 0)] {
        let state = FockState::new(index, params)?;
        println!("|{},{},{}>  energy {:.3}", index.m, index.n, index.l, osc3d::energy(index, &params));
        println!("{:>8} {:>14} {:>14} {:>10}", "x", "closed", "numeric", "diff");
        for k in 0..=8 {
            let x = -2.0 + 0.5 * k as f64;
            let point = PhasePoint::new([x, 0.1, 0.0], [0.0, 0.3, 0.0]);
            let exact = wigner_fock(index, &point, &params)?;
            let numeric = wigner_numeric(&state, &point, &params, 48)?;
            println!("{x:8.2} {exact:14.6e} {:14.6e} {:10.1e}", numeric.value, (numeric.value - exact).abs());
        }
        println!();
    }
    Ok(())
}
