//! Position-space amplitudes that can be evaluated off the real axis.
//!
//! Every state in this crate is an entire function of position, so the
//! Wigner transform may shift its integration contour into the complex
//! plane. Implementors return the analytic continuation of `Ψ(r)`.

use num_complex::Complex64;

use crate::oscillator::Axis;

/// Per-axis factors of a product state `Ψ(x, y, z) = f_x(x) f_y(y) f_z(z)`.
pub trait AxisFactors: Sync {
    fn factor(&self, axis: Axis, x: Complex64) -> Complex64;
}

pub trait Wavefunction: Sync {
    /// Analytic continuation of `Ψ` at a complex position (physical units).
    fn amplitude(&self, r: [Complex64; 3]) -> Complex64;

    /// `Ψ*` continued analytically: `conj(Ψ(conj r))`.
    fn conj_amplitude(&self, r: [Complex64; 3]) -> Complex64 {
        self.amplitude([r[0].conj(), r[1].conj(), r[2].conj()]).conj()
    }

    /// Separable view of the state, when it has one.
    fn as_product(&self) -> Option<&dyn AxisFactors> {
        None
    }

    /// Width of `|Ψ|²` per axis relative to the ground state; sets the
    /// spread of quadrature lines laid over the state.
    fn envelope_scale(&self) -> [f64; 3] {
        [1.0; 3]
    }

    /// Amplitude at a real position.
    fn at(&self, r: [f64; 3]) -> Complex64 {
        self.amplitude(real3(r))
    }
}

pub(crate) fn real3(r: [f64; 3]) -> [Complex64; 3] {
    [Complex64::new(r[0], 0.0), Complex64::new(r[1], 0.0), Complex64::new(r[2], 0.0)]
}

impl<F> Wavefunction for F
where
    F: Fn([Complex64; 3]) -> Complex64 + Sync,
{
    fn amplitude(&self, r: [Complex64; 3]) -> Complex64 {
        self(r)
    }
}
