//! Displaced squeezed vacua `|s, α⟩ = D̂(α) Ŝ(s)|0⟩`, with
//! `Ŝ(s) = exp[½(s·Â†² − s*·Â²)]`.
//!
//! Closed forms are evaluated in the κ-scaled frame `u = κx` and carried to
//! physical units with the `κ^{1/2}` per-axis Jacobian.

use std::f64::consts::{PI, SQRT_2};

use num_complex::Complex64;

use crate::coherent::{combine_tails, ComplexTriple};
use crate::error::{Error, Result};
use crate::oscillator::{Axis, FockCoefficients, OscillatorParams};
use crate::special::{gauss_hermite_rule, hermite_functions, MAX_DEGREE};
use crate::wavefunction::{AxisFactors, Wavefunction};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Squeeze parameters `s` and the displacement `α` applied after squeezing.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SqueezeLabel {
    pub s: ComplexTriple,
    pub alpha: ComplexTriple,
}

impl SqueezeLabel {
    pub const fn new(s: ComplexTriple, alpha: ComplexTriple) -> Self {
        Self { s, alpha }
    }

    /// Undisplaced squeezed vacuum.
    pub const fn vacuum(s: ComplexTriple) -> Self {
        Self { s, alpha: [ZERO; 3] }
    }

    pub fn is_finite(&self) -> bool {
        self.s.iter().chain(&self.alpha).all(|v| v.is_finite())
    }

    /// Scaled-frame centre `(ι₀, p₀)` of one axis, from `α = (ι₀ + i p₀)/√2`.
    pub fn centre(&self, axis: Axis) -> (f64, f64) {
        let a = self.alpha[axis.index()];
        (SQRT_2 * a.re, SQRT_2 * a.im)
    }
}

/// Which denominator enters the quadratic phase `h`.
///
/// `GFactor` uses `h = s₂ sinh r / (2r𝒢)` and reproduces `Ŝ(s)|0⟩` exactly.
/// `ExpFactor` uses `2r·e^{r}` in place of `2r𝒢`; the two agree only for
/// real `s`, where `h = 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ChirpForm {
    #[default]
    GFactor,
    ExpFactor,
}

/// Per-axis shape of the squeezed Gaussian.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AxisSqueezeParams {
    pub r: f64,
    pub theta: f64,
    pub g: f64,
    pub h: f64,
    pub c: Complex64,
}

impl AxisSqueezeParams {
    /// Coefficient `a` of `exp[−(u − u₀)² a]`, i.e. `1/(2𝒢C²) − ih`.
    pub fn quadratic(&self) -> Complex64 {
        1.0 / (2.0 * self.g * self.c * self.c) - Complex64::new(0.0, self.h)
    }
}

pub fn squeeze_axis_params(s: Complex64) -> AxisSqueezeParams {
    squeeze_axis_params_with(s, ChirpForm::default())
}

pub fn squeeze_axis_params_with(s: Complex64, form: ChirpForm) -> AxisSqueezeParams {
    let r = s.norm();
    let theta = if r == 0.0 { 0.0 } else { s.im.atan2(s.re) };
    let (ch, sh) = ((0.5 * theta).cos(), (0.5 * theta).sin());
    let g = r.exp() * ch * ch + (-r).exp() * sh * sh;
    // sinh(r)/r without the 0/0 at the identity squeeze
    let sinhc = if r < 1e-6 { 1.0 + r * r / 6.0 } else { r.sinh() / r };
    let denom = match form {
        ChirpForm::GFactor => g,
        ChirpForm::ExpFactor => r.exp(),
    };
    let h = s.im * sinhc / (2.0 * denom);
    let c = (g * Complex64::new(1.0, 2.0 * h)).sqrt();
    AxisSqueezeParams { r, theta, g, h, c }
}

/// A displaced squeezed vacuum as a position-space wavefunction.
#[derive(Debug, Clone, Copy)]
pub struct SqueezedState {
    label: SqueezeLabel,
    axes: [AxisSqueezeParams; 3],
    params: OscillatorParams,
}

impl SqueezedState {
    pub fn new(label: &SqueezeLabel, params: &OscillatorParams) -> Self {
        Self::with_form(label, params, ChirpForm::default())
    }

    pub fn with_form(label: &SqueezeLabel, params: &OscillatorParams, form: ChirpForm) -> Self {
        Self { label: *label, axes: label.s.map(|s| squeeze_axis_params_with(s, form)), params: *params }
    }

    pub fn axis_params(&self, axis: Axis) -> &AxisSqueezeParams {
        &self.axes[axis.index()]
    }

    pub fn label(&self) -> &SqueezeLabel {
        &self.label
    }

    /// Dimensionless one-axis factor at scaled coordinate `u`.
    fn scaled_factor(&self, axis: Axis, u: Complex64) -> Complex64 {
        let p = &self.axes[axis.index()];
        let (u0, p0) = self.label.centre(axis);
        let d = u - u0;
        let exponent = Complex64::new(0.0, -0.5 * u0 * p0) + Complex64::i() * p0 * u - d * d * p.quadratic();
        PI.powf(-0.25) / p.c * exponent.exp()
    }
}

impl AxisFactors for SqueezedState {
    fn factor(&self, axis: Axis, x: Complex64) -> Complex64 {
        let k = self.params.kappa();
        k.sqrt() * self.scaled_factor(axis, k * x)
    }
}

impl Wavefunction for SqueezedState {
    fn amplitude(&self, r: [Complex64; 3]) -> Complex64 {
        Axis::ALL.iter().map(|&a| self.factor(a, r[a.index()])).product()
    }

    fn as_product(&self) -> Option<&dyn AxisFactors> {
        Some(self)
    }

    fn envelope_scale(&self) -> [f64; 3] {
        self.axes.map(|p| (2.0 * p.quadratic().re).sqrt().recip())
    }
}

pub fn squeezed_position_amplitude(label: &SqueezeLabel, r: [f64; 3], params: &OscillatorParams) -> Complex64 {
    SqueezedState::new(label, params).at(r)
}

/// One-axis projection `⟨k|f⟩` for `k = 0..=cutoff`, integrating over a
/// Gauss-Hermite line fitted to the product envelope.
fn project_axis(state: &SqueezedState, axis: Axis, cutoff: usize, order: usize) -> Result<Vec<Complex64>> {
    let rule = gauss_hermite_rule(order)?;
    let re_a = state.axes[axis.index()].quadratic().re;
    let (u0, _) = state.label.centre(axis);
    let precision = 0.5 + re_a;
    let line = rule.unweighted_line(re_a * u0 / precision, 1.0 / precision.sqrt());
    let mut out = vec![ZERO; cutoff + 1];
    for (u, w) in line {
        let f = w * state.scaled_factor(axis, Complex64::new(u, 0.0));
        for (acc, phi) in out.iter_mut().zip(hermite_functions(cutoff, u)?) {
            *acc += f * phi;
        }
    }
    Ok(out)
}

/// Fock coefficients of `|s, α⟩` by per-axis quadrature projection.
pub fn squeezed_fock_coefficients(label: &SqueezeLabel, cutoff: [usize; 3], order: usize) -> Result<FockCoefficients> {
    squeezed_fock_coefficients_with(label, cutoff, order, ChirpForm::default())
}

pub fn squeezed_fock_coefficients_with(
    label: &SqueezeLabel,
    cutoff: [usize; 3],
    order: usize,
    form: ChirpForm,
) -> Result<FockCoefficients> {
    if let Some(&degree) = cutoff.iter().find(|&&c| c > MAX_DEGREE) {
        return Err(Error::DegreeOverflow { degree, max: MAX_DEGREE });
    }
    let state = SqueezedState::with_form(label, &OscillatorParams::NATURAL, form);
    let axes = Axis::ALL.map(|a| project_axis(&state, a, cutoff[a.index()], order));
    let [x, y, z] = axes;
    let (x, y, z) = (x?, y?, z?);
    let tails = [&x, &y, &z].map(|v| (1.0 - v.iter().map(|c| c.norm_sqr()).sum::<f64>()).max(0.0));
    Ok(FockCoefficients::from_product([&x, &y, &z], combine_tails(tails)))
}
