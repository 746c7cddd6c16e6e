//! Wigner functions, marginals and harmonic Liouville flow.

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::coherent::{coherent_eval_terms, CoherentLabel};
use crate::error::{Error, Result};
use crate::oscillator::{Axis, OscillatorParams, PhasePoint, TripleIndex};
use crate::special::{gauss_hermite_rule, laguerre_poly};
use crate::wavefunction::Wavefunction;

/// One-axis Fock Wigner function `(−1)^q/(πħ) e^{−ρ} L_q(2ρ)`,
/// `ρ = (κx)² + (p/ħκ)²`.
pub fn wigner_fock_axis(q: usize, x: f64, p: f64, params: &OscillatorParams) -> Result<f64> {
    let (k, hbar) = (params.kappa(), params.hbar());
    let rho = (k * x).powi(2) + (p / (hbar * k)).powi(2);
    let sign = if q.is_multiple_of(2) { 1.0 } else { -1.0 };
    Ok(sign / (PI * hbar) * (-rho).exp() * laguerre_poly(q, 2.0 * rho)?)
}

/// Closed-form Wigner function of `|m, n, l⟩`.
pub fn wigner_fock(index: TripleIndex, point: &PhasePoint, params: &OscillatorParams) -> Result<f64> {
    let mut w = 1.0;
    for (i, q) in index.as_array().into_iter().enumerate() {
        w *= wigner_fock_axis(q, point.position[i], point.momentum[i], params)?;
    }
    Ok(w)
}

/// Wigner function of a coherent state: a minimum-uncertainty Gaussian
/// centred on `(r̄, p̄)` at `t = 0`.
pub fn wigner_coherent(label: &CoherentLabel, point: &PhasePoint, params: &OscillatorParams) -> f64 {
    let terms = coherent_eval_terms(label, 0.0, params);
    let (k, hbar) = (params.kappa(), params.hbar());
    let mut e = 0.0;
    for i in 0..3 {
        e += (k * (point.position[i] - terms.r_bar[i])).powi(2);
        e += ((point.momentum[i] - terms.p_bar[i]) / (hbar * k)).powi(2);
    }
    (PI * hbar).powi(-3) * (-e).exp()
}

/// Real value and residual imaginary part of a numerically evaluated Wigner
/// function.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WignerSample {
    pub value: f64,
    pub imaginary: f64,
}

/// Shifted-contour nodes `z = ξ − iv` and weights for one axis, with the
/// `e^{ξ²}` envelope already folded into the weights.
fn shifted_line(order: usize, scale: f64, shift: f64) -> Result<Vec<(Complex64, f64)>> {
    let rule = gauss_hermite_rule(order)?;
    Ok(rule.unweighted_line(0.0, scale).into_iter().map(|(xi, w)| (Complex64::new(xi, -shift), w)).collect())
}

/// `(2πħ)^{-3} ∭ d³ζ e^{−ip·ζ/ħ} Ψ*(r − ζ/2) Ψ(r + ζ/2)` by Gauss-Hermite
/// quadrature after the substitution `ζ = (2/κ)(ξ − i p/ħκ)`.
///
/// Product states are integrated axis by axis; anything else goes through the
/// full tensor rule with `order³` evaluations.
pub fn wigner_numeric(
    psi: &dyn Wavefunction,
    point: &PhasePoint,
    params: &OscillatorParams,
    order: usize,
) -> Result<WignerSample> {
    let (k, hbar) = (params.kappa(), params.hbar());
    let scale = psi.envelope_scale();
    let lines: Vec<Vec<(Complex64, f64)>> =
        (0..3).map(|i| shifted_line(order, scale[i], point.momentum[i] / (hbar * k))).collect::<Result<_>>()?;
    // e^{−ip·ζ/ħ} = e^{−2i v·z}, z = ξ − iv
    let kernel = |i: usize, z: Complex64| -> Complex64 {
        let v = point.momentum[i] / (hbar * k);
        (Complex64::new(0.0, -2.0 * v) * z).exp()
    };
    let prefactor = (PI * hbar * k).powi(-3);
    let total = match psi.as_product() {
        Some(f) => (0..3)
            .map(|i| {
                let axis = Axis::ALL[i];
                let r = point.position[i];
                lines[i]
                    .iter()
                    .map(|&(z, w)| {
                        let bra = f.factor(axis, (r - z / k).conj()).conj();
                        w * kernel(i, z) * bra * f.factor(axis, r + z / k)
                    })
                    .sum::<Complex64>()
            })
            .product::<Complex64>(),
        None => {
            let r = point.position;
            let partial: Vec<Complex64> = lines[0]
                .par_iter()
                .map(|&(zx, wx)| {
                    let mut acc = Complex64::new(0.0, 0.0);
                    for &(zy, wy) in &lines[1] {
                        for &(zz, wz) in &lines[2] {
                            let z = [zx, zy, zz];
                            let minus = std::array::from_fn(|i| r[i] - z[i] / k);
                            let plus = std::array::from_fn(|i| r[i] + z[i] / k);
                            let ker = kernel(0, zx) * kernel(1, zy) * kernel(2, zz);
                            acc += wy * wz * ker * psi.conj_amplitude(minus) * psi.amplitude(plus);
                        }
                    }
                    wx * acc
                })
                .collect();
            partial.into_iter().sum()
        }
    };
    let w = prefactor * total;
    Ok(WignerSample { value: w.re, imaginary: w.im })
}

/// `∫ W_{mnl}(r, p) d³p`, by Gauss-Hermite quadrature in `p/ħκ`.
pub fn wigner_marginal_position(
    index: TripleIndex,
    r: [f64; 3],
    params: &OscillatorParams,
    order: usize,
) -> Result<f64> {
    let rule = gauss_hermite_rule(order)?;
    let hk = params.hbar() * params.kappa();
    let mut total = 1.0;
    for (i, q) in index.as_array().into_iter().enumerate() {
        let mut s = 0.0;
        for (v, w) in rule.unweighted_line(0.0, 1.0) {
            s += w * wigner_fock_axis(q, r[i], hk * v, params)?;
        }
        total *= hk * s;
    }
    Ok(total)
}

/// `∫ W_{mnl}(r, p) d³r`, by Gauss-Hermite quadrature in `κr`.
pub fn wigner_marginal_momentum(
    index: TripleIndex,
    p: [f64; 3],
    params: &OscillatorParams,
    order: usize,
) -> Result<f64> {
    let rule = gauss_hermite_rule(order)?;
    let k = params.kappa();
    let mut total = 1.0;
    for (i, q) in index.as_array().into_iter().enumerate() {
        let mut s = 0.0;
        for (u, w) in rule.unweighted_line(0.0, 1.0) {
            s += w * wigner_fock_axis(q, u / k, p[i], params)?;
        }
        total *= s / k;
    }
    Ok(total)
}

/// `Φ(p) = (2πħ)^{-3/2} ∫ e^{−ip·r/ħ} Ψ(r) d³r` on the contour
/// `κx = ξ − i p/ħκ`.
pub fn momentum_amplitude(
    psi: &dyn Wavefunction,
    p: [f64; 3],
    params: &OscillatorParams,
    order: usize,
) -> Result<Complex64> {
    let (k, hbar) = (params.kappa(), params.hbar());
    let scale = psi.envelope_scale();
    let lines: Vec<Vec<(Complex64, f64)>> = (0..3)
        .map(|i| shifted_line(order, std::f64::consts::SQRT_2 * scale[i], p[i] / (hbar * k)))
        .collect::<Result<_>>()?;
    let kernel = |i: usize, u: Complex64| (Complex64::new(0.0, -p[i] / (hbar * k)) * u).exp();
    let prefactor = (2.0 * PI * hbar).powf(-1.5) / k.powi(3);
    let total = match psi.as_product() {
        Some(f) => (0..3)
            .map(|i| lines[i].iter().map(|&(u, w)| w * kernel(i, u) * f.factor(Axis::ALL[i], u / k)).sum::<Complex64>())
            .product::<Complex64>(),
        None => {
            let mut acc = Complex64::new(0.0, 0.0);
            for &(ux, wx) in &lines[0] {
                for &(uy, wy) in &lines[1] {
                    for &(uz, wz) in &lines[2] {
                        let ker = kernel(0, ux) * kernel(1, uy) * kernel(2, uz);
                        acc += wx * wy * wz * ker * psi.amplitude([ux / k, uy / k, uz / k]);
                    }
                }
            }
            acc
        }
    };
    Ok(prefactor * total)
}

/// Phase-space point carried backward along the classical harmonic flow for
/// time `t`.
pub fn harmonic_characteristic(point: &PhasePoint, t: f64, params: &OscillatorParams) -> PhasePoint {
    let (m, w) = (params.mass(), params.omega());
    let (s, c) = (w * t).sin_cos();
    let mut out = PhasePoint::ORIGIN;
    for i in 0..3 {
        let (r, p) = (point.position[i], point.momentum[i]);
        out.position[i] = r * c - p / (m * w) * s;
        out.momentum[i] = p * c + m * w * r * s;
    }
    out
}

/// `W(r, p, t) = W₀(r₀, p₀)` with `(r₀, p₀)` the backward characteristic.
pub fn evolve_wigner_harmonic<F>(w0: F, point: &PhasePoint, t: f64, params: &OscillatorParams) -> f64
where
    F: Fn(&PhasePoint) -> f64,
{
    w0(&harmonic_characteristic(point, t, params))
}

/// `|∂_t W + (p/M)·∇_r W − ∇U·∇_p W|` by central differences, with
/// `U = ½Mω²r²`.
pub fn liouville_residual<F>(w: F, point: &PhasePoint, t: f64, params: &OscillatorParams, fd_step: f64) -> f64
where
    F: Fn(&PhasePoint, f64) -> f64,
{
    let h = fd_step;
    let mut total = (w(point, t + h) - w(point, t - h)) / (2.0 * h);
    for i in 0..3 {
        let mut fwd = *point;
        let mut bwd = *point;
        fwd.position[i] += h;
        bwd.position[i] -= h;
        let dr = (w(&fwd, t) - w(&bwd, t)) / (2.0 * h);
        let mut fwd = *point;
        let mut bwd = *point;
        fwd.momentum[i] += h;
        bwd.momentum[i] -= h;
        let dp = (w(&fwd, t) - w(&bwd, t)) / (2.0 * h);
        let force = params.mass() * params.omega().powi(2) * point.position[i];
        total += point.momentum[i] / params.mass() * dr - force * dp;
    }
    total.abs()
}

/// One of the six phase-space coordinates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PhaseCoord {
    X,
    Y,
    Z,
    Px,
    Py,
    Pz,
}

impl PhaseCoord {
    pub fn name(self) -> &'static str {
        match self {
            PhaseCoord::X => "x",
            PhaseCoord::Y => "y",
            PhaseCoord::Z => "z",
            PhaseCoord::Px => "px",
            PhaseCoord::Py => "py",
            PhaseCoord::Pz => "pz",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Some(match s {
            "x" => PhaseCoord::X,
            "y" => PhaseCoord::Y,
            "z" => PhaseCoord::Z,
            "px" => PhaseCoord::Px,
            "py" => PhaseCoord::Py,
            "pz" => PhaseCoord::Pz,
            _ => return None,
        })
    }

    fn set(self, point: &mut PhasePoint, value: f64) {
        match self {
            PhaseCoord::X => point.position[0] = value,
            PhaseCoord::Y => point.position[1] = value,
            PhaseCoord::Z => point.position[2] = value,
            PhaseCoord::Px => point.momentum[0] = value,
            PhaseCoord::Py => point.momentum[1] = value,
            PhaseCoord::Pz => point.momentum[2] = value,
        }
    }
}

/// Evenly spaced samples `min..=max`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AxisRange {
    pub min: f64,
    pub max: f64,
    pub count: usize,
}

impl AxisRange {
    pub fn new(min: f64, max: f64, count: usize) -> Result<Self> {
        let range = Self { min, max, count };
        range.validate()?;
        Ok(range)
    }

    pub fn validate(&self) -> Result<()> {
        if self.count < 2 {
            return Err(Error::InvalidGrid(format!("count must be at least 2, got {}", self.count)));
        }
        if self.min >= self.max || !self.min.is_finite() || !self.max.is_finite() {
            return Err(Error::InvalidGrid(format!("need finite min < max, got {}..{}", self.min, self.max)));
        }
        Ok(())
    }

    pub fn value(&self, i: usize) -> f64 {
        if i + 1 == self.count {
            return self.max;
        }
        self.min + (self.max - self.min) * i as f64 / (self.count - 1) as f64
    }

    pub fn values(&self) -> Vec<f64> {
        (0..self.count).map(|i| self.value(i)).collect()
    }
}

/// A 2D slice of phase space: two varying coordinates, the other four held
/// at the values in `base`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WignerGridSpec {
    pub axes: [(PhaseCoord, AxisRange); 2],
    pub base: PhasePoint,
}

impl WignerGridSpec {
    pub fn new(first: (PhaseCoord, AxisRange), second: (PhaseCoord, AxisRange), base: PhasePoint) -> Result<Self> {
        let spec = Self { axes: [first, second], base };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        if self.axes[0].0 == self.axes[1].0 {
            return Err(Error::InvalidGrid(format!("axis `{}` bound twice", self.axes[0].0.name())));
        }
        self.axes[0].1.validate()?;
        self.axes[1].1.validate()
    }

    /// `(a, b, point)` in row-major order, first axis outermost.
    pub fn points(&self) -> Vec<(f64, f64, PhasePoint)> {
        let [(ca, ra), (cb, rb)] = self.axes;
        let mut out = Vec::with_capacity(ra.count * rb.count);
        for a in ra.values() {
            for b in rb.values() {
                let mut p = self.base;
                ca.set(&mut p, a);
                cb.set(&mut p, b);
                out.push((a, b, p));
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coherent::CoherentState;
    use crate::oscillator::{eigenfunction, FockState};
    use crate::squeezed::{SqueezeLabel, SqueezedState};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    const INV_PI3: f64 = 1.0 / (PI * PI * PI);

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn random_point(rng: &mut ChaCha8Rng, half: f64) -> PhasePoint {
        PhasePoint::new(
            std::array::from_fn(|_| rng.gen_range(-half..half)),
            std::array::from_fn(|_| rng.gen_range(-half..half)),
        )
    }

    #[test]
    fn fock_examples() {
        let nat = OscillatorParams::NATURAL;
        let w = wigner_fock(TripleIndex::new(0, 0, 0), &PhasePoint::ORIGIN, &nat).unwrap();
        assert!((w - INV_PI3).abs() < 1e-16);
        assert!((w - 0.03225153).abs() < 1e-8);
        let w = wigner_fock(TripleIndex::new(1, 0, 0), &PhasePoint::ORIGIN, &nat).unwrap();
        assert!((w + INV_PI3).abs() < 1e-16);
        let node = PhasePoint::new([std::f64::consts::FRAC_1_SQRT_2, 0.0, 0.0], [0.0; 3]);
        assert!(wigner_fock(TripleIndex::new(1, 0, 0), &node, &nat).unwrap().abs() < 1e-16);
        assert!(wigner_fock(TripleIndex::new(0, 513, 0), &node, &nat).is_err());
    }

    #[test]
    fn numeric_examples() {
        let nat = OscillatorParams::NATURAL;
        let ground = FockState::new(TripleIndex::new(0, 0, 0), nat).unwrap();
        let w = wigner_numeric(&ground, &PhasePoint::ORIGIN, &nat, 60).unwrap();
        assert!((w.value - INV_PI3).abs() < 1e-8 && w.imaginary.abs() < 1e-12);

        let idx = TripleIndex::new(2, 1, 0);
        let st = FockState::new(idx, nat).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for _ in 0..10 {
            let pt = random_point(&mut rng, 2.0);
            let exact = wigner_fock(idx, &pt, &nat).unwrap();
            let num = wigner_numeric(&st, &pt, &nat, 60).unwrap();
            assert!((num.value - exact).abs() <= 1e-6 * exact.abs().max(1e-8));
            assert!(num.imaginary.abs() <= 1e-9);
        }

        let label = CoherentLabel::real([1.0, 0.0, 0.0]);
        let coh = CoherentState::new(&label, 0.0, &nat);
        let terms = coh.terms();
        let peak = wigner_numeric(&coh, &PhasePoint::new(terms.r_bar, terms.p_bar), &nat, 60).unwrap();
        assert!((peak.value - INV_PI3).abs() < 1e-8);
    }

    #[test]
    fn tensor_path_matches_product_path() {
        let p = OscillatorParams::new(2.0, 0.5, 3.0).unwrap();
        let idx = TripleIndex::new(1, 0, 2);
        let st = FockState::new(idx, p).unwrap();
        // the closure hides the product structure
        let opaque = move |r: [Complex64; 3]| st.amplitude(r);
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        for _ in 0..3 {
            let pt = random_point(&mut rng, 1.5);
            let a = wigner_numeric(&st, &pt, &p, 20).unwrap();
            let b = wigner_numeric(&opaque, &pt, &p, 20).unwrap();
            assert!((a.value - b.value).abs() < 1e-12 * INV_PI3);
            let exact = wigner_fock(idx, &pt, &p).unwrap();
            assert!((b.value - exact).abs() <= 1e-9 * exact.abs().max(1e-8));
        }
    }

    #[test]
    fn coherent_closed_form_matches_numeric() {
        let p = OscillatorParams::new(2.0, 0.5, 3.0).unwrap();
        let label = CoherentLabel::new([c(0.5, -0.7), c(-1.0, 0.2), c(0.0, 1.3)]);
        let st = CoherentState::new(&label, 0.0, &p);
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        for _ in 0..10 {
            let pt = random_point(&mut rng, 2.5);
            let num = wigner_numeric(&st, &pt, &p, 60).unwrap();
            let exact = wigner_coherent(&label, &pt, &p);
            assert!((num.value - exact).abs() < 1e-10 * (PI * p.hbar()).powi(-3));
            assert!(num.imaginary.abs() < 1e-10 * (PI * p.hbar()).powi(-3));
        }
    }

    #[test]
    fn squeezed_vacuum_wigner_is_bounded_and_real() {
        let nat = OscillatorParams::NATURAL;
        let label =
            SqueezeLabel::new([c(0.6, 0.0), Complex64::from_polar(0.5, 1.1), c(0.0, -0.4)], [c(0.3, 0.2), CZ, CZ]);
        let st = SqueezedState::new(&label, &nat);
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        let mut peak: f64 = 0.0;
        for _ in 0..40 {
            let pt = random_point(&mut rng, 2.0);
            let w = wigner_numeric(&st, &pt, &nat, 80).unwrap();
            assert!(w.imaginary.abs() < 1e-9);
            assert!(w.value.abs() <= INV_PI3 * (1.0 + 1e-9));
            assert!(w.value >= -1e-12);
            peak = peak.max(w.value);
        }
        assert!(peak > 0.0);
    }

    const CZ: Complex64 = Complex64::new(0.0, 0.0);

    #[test]
    fn marginal_examples() {
        let nat = OscillatorParams::NATURAL;
        let m = wigner_marginal_position(TripleIndex::new(0, 0, 0), [0.0; 3], &nat, 40).unwrap();
        assert!((m - PI.powf(-1.5)).abs() < 1e-8);
        assert!((m - 0.17958712).abs() < 1e-8);
        let m = wigner_marginal_position(TripleIndex::new(1, 0, 0), [0.0; 3], &nat, 40).unwrap();
        assert!(m.abs() < 1e-10);
        let m = wigner_marginal_position(TripleIndex::new(0, 0, 0), [1.0; 3], &nat, 40).unwrap();
        assert!((m - PI.powf(-1.5) * (-3.0f64).exp()).abs() < 1e-8);
    }

    #[test]
    fn both_marginals_match_densities() {
        let p = OscillatorParams::new(2.0, 0.5, 3.0).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(14);
        for idx in TripleIndex::up_to_total(3) {
            let st = FockState::new(idx, p).unwrap();
            for _ in 0..3 {
                let r: [f64; 3] = std::array::from_fn(|_| rng.gen_range(-1.5..1.5));
                let dens = eigenfunction(idx, r, &p).unwrap().powi(2);
                assert!((wigner_marginal_position(idx, r, &p, 40).unwrap() - dens).abs() < 1e-12);
                let q: [f64; 3] = std::array::from_fn(|_| rng.gen_range(-2.0..2.0));
                let phi = momentum_amplitude(&st, q, &p, 40).unwrap();
                assert!((wigner_marginal_momentum(idx, q, &p, 40).unwrap() - phi.norm_sqr()).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn ground_state_momentum_amplitude() {
        let p = OscillatorParams::new(2.0, 0.5, 3.0).unwrap();
        let st = FockState::new(TripleIndex::new(0, 0, 0), p).unwrap();
        let q = [0.4, -1.0, 0.7];
        let hk = p.hbar() * p.kappa();
        let v2: f64 = q.iter().map(|x| (x / hk).powi(2)).sum();
        let expected = (PI * hk * hk).powf(-0.75) * (-0.5 * v2).exp();
        let got = momentum_amplitude(&st, q, &p, 20).unwrap();
        assert!((got - c(expected, 0.0)).norm() < 1e-14);
        let opaque = move |r: [Complex64; 3]| st.amplitude(r);
        assert!((momentum_amplitude(&opaque, q, &p, 12).unwrap() - got).norm() < 1e-14);
    }

    #[test]
    fn phase_space_normalization() {
        let p = OscillatorParams::new(2.0, 0.5, 3.0).unwrap();
        let rule = gauss_hermite_rule(20).unwrap();
        let line = rule.unweighted_line(0.0, 1.0);
        let (k, hk) = (p.kappa(), p.hbar() * p.kappa());
        for idx in TripleIndex::up_to_total(3) {
            let mut total = 1.0;
            for q in idx.as_array() {
                let mut s = 0.0;
                for &(u, wu) in &line {
                    for &(v, wv) in &line {
                        s += wu * wv * wigner_fock_axis(q, u / k, hk * v, &p).unwrap();
                    }
                }
                total *= s * hk / k;
            }
            assert!((total - 1.0).abs() < 1e-12, "{idx:?}");
        }
    }

    #[test]
    fn negativity_signature() {
        let nat = OscillatorParams::NATURAL;
        let grid = WignerGridSpec::new(
            (PhaseCoord::X, AxisRange::new(-3.0, 3.0, 31).unwrap()),
            (PhaseCoord::Px, AxisRange::new(-3.0, 3.0, 31).unwrap()),
            PhasePoint::ORIGIN,
        )
        .unwrap();
        let label = CoherentLabel::new([c(1.0, 0.5), CZ, CZ]);
        let mut min_fock = f64::INFINITY;
        for (_, _, pt) in grid.points() {
            min_fock = min_fock.min(wigner_fock(TripleIndex::new(1, 0, 0), &pt, &nat).unwrap());
            assert!(wigner_coherent(&label, &pt, &nat) >= -1e-12);
        }
        assert!(min_fock < 0.0);
    }

    #[test]
    fn fock_wigner_is_bounded() {
        let p = OscillatorParams::new(2.0, 0.5, 3.0).unwrap();
        let bound = (PI * p.hbar()).powi(-3);
        let mut rng = ChaCha8Rng::seed_from_u64(15);
        for idx in TripleIndex::up_to_total(6) {
            for _ in 0..20 {
                let pt = random_point(&mut rng, 3.0);
                assert!(wigner_fock(idx, &pt, &p).unwrap().abs() <= bound * (1.0 + 1e-12));
            }
        }
    }

    #[test]
    fn evolution_examples() {
        let p = OscillatorParams::new(2.0, 0.5, 3.0).unwrap();
        let pt = PhasePoint::new([0.3, -0.1, 0.8], [1.0, 0.2, -0.5]);
        let w0 = |q: &PhasePoint| wigner_fock(TripleIndex::new(1, 2, 0), q, &p).unwrap();
        assert_eq!(evolve_wigner_harmonic(w0, &pt, 0.0, &p), w0(&pt));

        let g0 = |q: &PhasePoint| wigner_fock(TripleIndex::new(0, 0, 0), q, &p).unwrap();
        for t in [0.4, 3.0, 11.0] {
            assert!((evolve_wigner_harmonic(g0, &pt, t, &p) - g0(&pt)).abs() < 1e-15);
        }

        let nat = OscillatorParams::NATURAL;
        let label = CoherentLabel::real([1.0, 0.0, 0.0]);
        let terms = coherent_eval_terms(&label, 0.0, &nat);
        let reflected = PhasePoint::new(terms.r_bar.map(|x| -x), terms.p_bar.map(|x| -x));
        let w = evolve_wigner_harmonic(|q: &PhasePoint| wigner_coherent(&label, q, &nat), &reflected, PI, &nat);
        assert!((w - INV_PI3).abs() < 1e-10);
    }

    #[test]
    fn evolved_coherent_wigner_tracks_evolved_label() {
        let p = OscillatorParams::new(2.0, 0.5, 3.0).unwrap();
        let label = CoherentLabel::new([c(0.5, -0.7), c(-1.0, 0.2), c(0.0, 1.3)]);
        let mut rng = ChaCha8Rng::seed_from_u64(16);
        for _ in 0..10 {
            let t = rng.gen_range(0.0..10.0);
            let pt = random_point(&mut rng, 2.0);
            let (moved, _) = crate::coherent::evolve_coherent(&label, t, &p);
            let via_flow = evolve_wigner_harmonic(|q: &PhasePoint| wigner_coherent(&label, q, &p), &pt, t, &p);
            assert!((via_flow - wigner_coherent(&moved, &pt, &p)).abs() < 1e-14);
        }
    }

    #[test]
    fn liouville_examples() {
        let nat = OscillatorParams::NATURAL;
        let g = |q: &PhasePoint, _t: f64| wigner_fock(TripleIndex::new(0, 0, 0), q, &nat).unwrap();
        let pt = PhasePoint::new([0.3, -0.5, 0.1], [0.7, 0.0, -0.4]);
        assert!(liouville_residual(g, &pt, 0.0, &nat, 1e-4) <= 1e-8);

        let label = CoherentLabel::new([c(1.0, 0.4), c(-0.5, 0.0), c(0.2, -0.8)]);
        let evolved = |q: &PhasePoint, t: f64| {
            evolve_wigner_harmonic(|x: &PhasePoint| wigner_coherent(&label, x, &nat), q, t, &nat)
        };
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for _ in 0..20 {
            let pt = random_point(&mut rng, 2.0);
            let t = rng.gen_range(0.0..6.0);
            assert!(liouville_residual(evolved, &pt, t, &nat, 1e-4) <= 1e-6);
        }

        // momentum term of the flow with the wrong sign
        let wrong = |q: &PhasePoint, t: f64| {
            let (s, co) = t.sin_cos();
            let back = PhasePoint::new(
                std::array::from_fn(|i| q.position[i] * co + q.momentum[i] * s),
                std::array::from_fn(|i| q.momentum[i] * co + q.position[i] * s),
            );
            wigner_coherent(&label, &back, &nat)
        };
        // on the flank of the Gaussian, away from any symmetry point
        let terms = coherent_eval_terms(&label, 0.0, &nat);
        let generic = PhasePoint::new(
            std::array::from_fn(|i| terms.r_bar[i] + 0.3),
            std::array::from_fn(|i| terms.p_bar[i] - 0.2),
        );
        let bad = liouville_residual(wrong, &generic, 0.0, &nat, 1e-4);
        println!("sign-flipped flow residual: {bad:e}");
        assert!(bad > 1e-2);
    }

    #[test]
    fn grid_spec_validation_and_order() {
        let r = AxisRange::new(0.0, 1.0, 3).unwrap();
        assert_eq!(r.values(), vec![0.0, 0.5, 1.0]);
        assert!(AxisRange::new(0.0, 1.0, 1).is_err());
        assert!(AxisRange::new(1.0, 1.0, 4).is_err());
        assert!(WignerGridSpec::new((PhaseCoord::X, r), (PhaseCoord::X, r), PhasePoint::ORIGIN).is_err());
        let base = PhasePoint::new([9.0, 8.0, 7.0], [6.0, 5.0, 4.0]);
        let g = WignerGridSpec::new((PhaseCoord::Y, r), (PhaseCoord::Pz, AxisRange::new(-1.0, 1.0, 2).unwrap()), base)
            .unwrap();
        let pts = g.points();
        assert_eq!(pts.len(), 6);
        assert_eq!((pts[1].0, pts[1].1), (0.0, 1.0));
        assert_eq!(pts[1].2, PhasePoint::new([9.0, 0.0, 7.0], [6.0, 5.0, 1.0]));
    }

    mod props {
        use super::super::*;
        use proptest::prelude::*;

        fn point() -> impl Strategy<Value = PhasePoint> {
            (proptest::array::uniform3(-3.0f64..3.0), proptest::array::uniform3(-3.0f64..3.0))
                .prop_map(|(r, p)| PhasePoint::new(r, p))
        }

        proptest! {
            #[test]
            fn ground_state_is_stationary(pt in point(), t in -20.0f64..20.0) {
                let p = OscillatorParams::new(2.0, 0.5, 3.0).unwrap();
                let g = |q: &PhasePoint| wigner_fock(TripleIndex::new(0, 0, 0), q, &p).unwrap();
                prop_assert!((evolve_wigner_harmonic(g, &pt, t, &p) - g(&pt)).abs() < 1e-15);
            }

            #[test]
            fn fock_wigner_bounded(m in 0usize..4, n in 0usize..4, l in 0usize..4, pt in point()) {
                let nat = OscillatorParams::NATURAL;
                let w = wigner_fock(TripleIndex::new(m, n, l), &pt, &nat).unwrap();
                prop_assert!(w.abs() <= (PI).powi(-3) * (1.0 + 1e-12));
            }
        }
    }
}
