//! Coherent (displaced-vacuum) states `|α⟩ = D̂(α)|0⟩`.

use std::f64::consts::{PI, SQRT_2};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::oscillator::{Axis, FockCoefficients, OscillatorParams, TripleIndex};
use crate::special::{log_factorial, make_quadrature, QuadratureKind, MAX_DEGREE};
use crate::wavefunction::{AxisFactors, Wavefunction};

pub type ComplexTriple = [Complex64; 3];

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Displacement amplitudes `(α_x, α_y, α_z)`, dimensionless.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoherentLabel {
    pub alpha: ComplexTriple,
}

impl CoherentLabel {
    pub const VACUUM: CoherentLabel = CoherentLabel { alpha: [ZERO; 3] };

    pub const fn new(alpha: ComplexTriple) -> Self {
        Self { alpha }
    }

    pub fn real(alpha: [f64; 3]) -> Self {
        Self { alpha: alpha.map(|a| Complex64::new(a, 0.0)) }
    }

    /// `α*·α`, the mean total number of quanta.
    pub fn mean_quanta(&self) -> f64 {
        self.alpha.iter().map(|a| a.norm_sqr()).sum()
    }

    pub fn is_finite(&self) -> bool {
        self.alpha.iter().all(|a| a.is_finite())
    }
}

/// Centroid, zero-point phase and residual phase of `Ψ_coh(r, t)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoherentEvalTerms {
    pub r_bar: [f64; 3],
    pub p_bar: [f64; 3],
    pub phi_zp: f64,
    pub a_delta: Complex64,
}

/// `e^{-|a|²/2} a^k / √k!` for `k = 0..=cutoff`.
pub(crate) fn coherent_axis_vector(a: Complex64, cutoff: usize) -> Vec<Complex64> {
    let mut out = Vec::with_capacity(cutoff + 1);
    let mut c = Complex64::new((-0.5 * a.norm_sqr()).exp(), 0.0);
    for k in 0..=cutoff {
        out.push(c);
        c = c * a / ((k + 1) as f64).sqrt();
    }
    out
}

/// `Σ_{k > cutoff} e^{-λ} λ^k / k!`, summed upward so small tails keep full
/// relative precision.
pub(crate) fn poisson_tail(lambda: f64, cutoff: usize) -> f64 {
    if lambda == 0.0 {
        return 0.0;
    }
    let mut k = cutoff + 1;
    let mut term = (-lambda + k as f64 * lambda.ln() - log_factorial(k)).exp();
    let mut sum = 0.0;
    loop {
        sum += term;
        k += 1;
        term *= lambda / k as f64;
        if (k as f64 > lambda && term <= 1e-18 * sum) || term == 0.0 {
            return sum.min(1.0);
        }
    }
}

/// Combine independent per-axis tail probabilities into the mass outside the
/// cutoff box, `1 − Π(1 − t_ι)`.
pub(crate) fn combine_tails(tails: [f64; 3]) -> f64 {
    -tails.iter().map(|t| (-t.min(1.0)).ln_1p()).sum::<f64>().exp_m1()
}

/// Fock expansion `Ω_{mnl} = e^{-α*·α/2} α_x^m α_y^n α_z^l / √(m! n! l!)`.
pub fn coherent_coefficients(label: &CoherentLabel, cutoff: [usize; 3]) -> FockCoefficients {
    let axes: Vec<Vec<Complex64>> = (0..3).map(|i| coherent_axis_vector(label.alpha[i], cutoff[i])).collect();
    let tails = [0, 1, 2].map(|i| poisson_tail(label.alpha[i].norm_sqr(), cutoff[i]));
    FockCoefficients::from_product([&axes[0], &axes[1], &axes[2]], combine_tails(tails))
}

/// `⟨β|α⟩ = exp[½(β*·α − β·α*)] exp[−½|β − α|²]`.
pub fn coherent_overlap(beta: &CoherentLabel, alpha: &CoherentLabel) -> Complex64 {
    let mut cross = ZERO;
    let mut dist = 0.0;
    for (b, a) in beta.alpha.iter().zip(&alpha.alpha) {
        cross += b.conj() * a - b * a.conj();
        dist += (b - a).norm_sqr();
    }
    (0.5 * cross - 0.5 * dist).exp()
}

/// Per-axis `(1/π) ∫ d²α ⟨j|α⟩⟨α|k⟩` for `j, k ≤ max_index`, with the radial
/// integral over `γ = |α|²` by Gauss-Laguerre and the angle by the periodic
/// trapezoid rule.
fn axis_identity_matrix(max_index: usize, radial_order: usize, angular_order: usize) -> Result<Vec<Vec<Complex64>>> {
    if max_index > MAX_DEGREE {
        return Err(Error::DegreeOverflow { degree: max_index, max: MAX_DEGREE });
    }
    let radial = make_quadrature(QuadratureKind::GaussLaguerre, radial_order)?;
    let angular = make_quadrature(QuadratureKind::TrapezoidPeriodic, angular_order)?;
    let dim = max_index + 1;
    let mut out = vec![vec![ZERO; dim]; dim];
    for (j, row) in out.iter_mut().enumerate() {
        for (k, cell) in row.iter_mut().enumerate() {
            let power = 0.5 * (j + k) as f64;
            let ln_norm = -0.5 * (log_factorial(j) + log_factorial(k));
            let radial_part = radial.sum(|g| (power * g.ln() + ln_norm).exp());
            let dn = j as f64 - k as f64;
            let angular_part = angular.sum_complex(|th| Complex64::from_polar(1.0, dn * th));
            // d²α = ½ dγ dθ
            *cell = radial_part * angular_part * (0.5 / PI);
        }
    }
    Ok(out)
}

/// Matrix element `⟨bra| π^{-3}∫|α⟩⟨α| d⁶α |ket⟩` by the polar factorization.
pub fn resolve_identity_element(
    bra: TripleIndex,
    ket: TripleIndex,
    radial_order: usize,
    angular_order: usize,
) -> Result<Complex64> {
    let top = bra.as_array().into_iter().chain(ket.as_array()).max().unwrap_or(0);
    let m = axis_identity_matrix(top, radial_order, angular_order)?;
    Ok((0..3).map(|i| m[bra.as_array()[i]][ket.as_array()[i]]).product())
}

/// Largest deviation from the identity of `π^{-3}∫|α⟩⟨α| d⁶α` restricted to
/// basis states with every index `≤ max_index`.
pub fn resolve_identity_residual(max_index: usize, radial_order: usize, angular_order: usize) -> Result<f64> {
    let m = axis_identity_matrix(max_index, radial_order, angular_order)?;
    let dim = max_index + 1;
    let mut worst: f64 = 0.0;
    for a in 0..dim.pow(3) {
        let ia = [a / (dim * dim), (a / dim) % dim, a % dim];
        for b in 0..dim.pow(3) {
            let ib = [b / (dim * dim), (b / dim) % dim, b % dim];
            let v: Complex64 = (0..3).map(|i| m[ia[i]][ib[i]]).product();
            let target = if a == b { 1.0 } else { 0.0 };
            worst = worst.max((v - target).norm());
        }
    }
    Ok(worst)
}

/// Free evolution: `(α e^{-iωt}, −(3/2)ωt)`, the phase left unwrapped.
pub fn evolve_coherent(label: &CoherentLabel, t: f64, params: &OscillatorParams) -> (CoherentLabel, f64) {
    let rot = Complex64::from_polar(1.0, -params.omega() * t);
    (CoherentLabel::new(label.alpha.map(|a| a * rot)), -1.5 * params.omega() * t)
}

pub fn coherent_eval_terms(label: &CoherentLabel, t: f64, params: &OscillatorParams) -> CoherentEvalTerms {
    let (moved, _) = evolve_coherent(label, t, params);
    let k = params.kappa();
    let r_bar = moved.alpha.map(|b| SQRT_2 / k * b.re);
    let p_bar = moved.alpha.map(|b| SQRT_2 * params.hbar() * k * b.im);
    let rot2 = Complex64::from_polar(1.0, -2.0 * params.omega() * t);
    let aa: Complex64 = label.alpha.iter().map(|a| a * a).sum();
    let i_a_delta = 0.5 * (rot2 * label.mean_quanta() - (rot2 * aa).re);
    CoherentEvalTerms { r_bar, p_bar, phi_zp: 1.5 * params.omega() * t, a_delta: -Complex64::i() * i_a_delta }
}

/// A coherent state at time `t` as a position-space wavefunction.
#[derive(Debug, Clone, Copy)]
pub struct CoherentState {
    terms: CoherentEvalTerms,
    params: OscillatorParams,
}

impl CoherentState {
    pub fn new(label: &CoherentLabel, t: f64, params: &OscillatorParams) -> Self {
        Self { terms: coherent_eval_terms(label, t, params), params: *params }
    }

    pub fn terms(&self) -> &CoherentEvalTerms {
        &self.terms
    }
}

impl AxisFactors for CoherentState {
    fn factor(&self, axis: Axis, x: Complex64) -> Complex64 {
        let i = axis.index();
        let (k, hbar) = (self.params.kappa(), self.params.hbar());
        let (rb, pb) = (self.terms.r_bar[i], self.terms.p_bar[i]);
        let d = x - rb;
        let exponent = -0.5 * k * k * d * d + Complex64::i() * (pb * x / hbar - 0.5 * pb * rb / hbar)
            - Complex64::new(0.0, self.terms.phi_zp / 3.0);
        (k * k / PI).powf(0.25) * exponent.exp()
    }
}

impl Wavefunction for CoherentState {
    fn amplitude(&self, r: [Complex64; 3]) -> Complex64 {
        Axis::ALL.iter().map(|&a| self.factor(a, r[a.index()])).product()
    }

    fn as_product(&self) -> Option<&dyn AxisFactors> {
        Some(self)
    }
}

/// `Ψ_coh(r, t) = (κ²/π)^{3/4} e^{−κ²|r − r̄|²/2} e^{i p̄·r/ħ} e^{−i p̄·r̄/2ħ} e^{−iΦ_zp}`.
pub fn coherent_position_amplitude(label: &CoherentLabel, r: [f64; 3], t: f64, params: &OscillatorParams) -> Complex64 {
    CoherentState::new(label, t, params).at(r)
}
