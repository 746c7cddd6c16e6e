//! Coherent states are normalized but not orthogonal, and still resolve the
//! identity.
//!
//!     cargo run --example coherent_overcompleteness

use num_complex::Complex64;
use osc3d::coherent::{coherent_coefficients, coherent_overlap, resolve_identity_residual, CoherentLabel};
use osc3d::inner_product;

fn main() -> osc3d::Result<()> {
    let a = CoherentLabel::new([Complex64::new(1.0, 0.5), Complex64::new(0.0, -0.3), Complex64::new(0.2, 0.0)]);
    for shift in [0.0, 0.5, 1.0, 2.0, 3.0] {
        let b = CoherentLabel::new([a.alpha[0] + shift, a.alpha[1], a.alpha[2]]);
        let closed = coherent_overlap(&b, &a);
        let series = inner_product(&coherent_coefficients(&b, [40; 3]), &coherent_coefficients(&a, [40; 3]))?;
        println!(
            "|b - a| = {shift:.1}  |<b|a>|^2 = {:.6e}  exp(-|b-a|^2) = {:.6e}  series gap {:.1e}",
            closed.norm_sqr(),
            (-shift * shift).exp(),
            (closed - series).norm()
        );
    }
    for (radial, angular) in [(10, 8), (20, 12), (40, 16)] {
        println!(
            "identity residual, orders {radial}/{angular}: {:.3e}",
            resolve_identity_residual(3, radial, angular)?
        );
    }
    Ok(())
}
