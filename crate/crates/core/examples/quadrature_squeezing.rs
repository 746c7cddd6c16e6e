//! Quadrature variances over the squeeze angle and magnitude, with the
//! borders of the squeezed region.
//!
//!     cargo run --example quadrature_squeezing

use std::f64::consts::PI;

use osc3d::statistics::{classify_squeezing, quadrature_variances, squeeze_border};

fn main() {
    println!("squeezed region ('#') over phi (rows) and r (columns, -1.5..1.5):");
    for k in 0..=16 {
        let phi = k as f64 * 2.0 * PI / 16.0;
        let row: String = (0..=30)
            .map(|j| {
                let r = -1.5 + 0.1 * j as f64;
                let (v1, v2) = quadrature_variances(r, phi);
                if classify_squeezing(v1, v2) {
                    '#'
                } else {
                    '.'
                }
            })
            .collect();
        let (rp, rm) = squeeze_border(phi);
        println!("{phi:6.3} {row}  borders {rp:+.3} {rm:+.3}");
    }

    let (v1, v2) = quadrature_variances(1.0, 0.0);
    println!("\nphi = 0, r = 1: var1 = {v1:.8}, var2 = {v2:.8}, product = {:.6}", v1 * v2);
    let (v1, v2) = quadrature_variances(1.0, PI / 3.0);
    println!("phi = pi/3, r = 1: product = {:.6} (> 1/16)", v1 * v2);
}
