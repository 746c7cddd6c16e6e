//! Per-axis photon statistics of squeezed states: Mandel's Q, quadrature
//! variances and the squeezing border.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::oscillator::{inner_product, ladder_apply, Axis, FockCoefficients, Ladder};
use crate::squeezed::SqueezeLabel;

/// Largest tail mass the Fock-moment oracles accept.
pub const ORACLE_TAIL_LIMIT: f64 = 1e-6;

/// Vacuum (and coherent-state) quadrature variance.
pub const VACUUM_VARIANCE: f64 = 0.25;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AxisStatistics {
    pub q_mandel: f64,
    pub var_quad1: f64,
    pub var_quad2: f64,
    pub squeezed: bool,
}

/// Coherent phase `φ` and the mixing angle `δ` of one axis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AxisAngles {
    pub phi: f64,
    pub delta: f64,
}

/// How `δ` is built from the squeeze phase `θ` and coherent phase `φ`.
///
/// `Printed` is `δ = θ − φ/2`. `Reattributed` is `δ = φ − θ/2`, which is the
/// combination that reproduces the number-basis moments of `D̂(α)Ŝ(s)|0⟩`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum DeltaConvention {
    #[default]
    Printed,
    Reattributed,
}

impl DeltaConvention {
    pub fn delta(self, theta: f64, phi: f64) -> f64 {
        match self {
            DeltaConvention::Printed => theta - 0.5 * phi,
            DeltaConvention::Reattributed => phi - 0.5 * theta,
        }
    }

    /// Coherent phase that realizes `delta` for squeeze phase `theta`.
    pub fn phi_for(self, theta: f64, delta: f64) -> f64 {
        match self {
            DeltaConvention::Printed => 2.0 * (theta - delta),
            DeltaConvention::Reattributed => delta + 0.5 * theta,
        }
    }
}

fn phase(z: Complex64) -> f64 {
    z.im.atan2(z.re)
}

pub fn axis_angles(label: &SqueezeLabel, axis: Axis, convention: DeltaConvention) -> AxisAngles {
    let i = axis.index();
    let phi = phase(label.alpha[i]);
    let theta = phase(label.s[i]);
    AxisAngles { phi, delta: convention.delta(theta, phi) }
}

/// Closed-form Q for one axis from `r`, `|α|²` and `δ`.
///
/// The `0/0` at `α = 0, r = 0` resolves to the coherent value 0.
pub fn mandel_q_axis(r: f64, alpha_sq: f64, delta: f64) -> f64 {
    let sh2 = r.sinh().powi(2);
    let denom = alpha_sq + sh2;
    if denom == 0.0 {
        return 0.0;
    }
    let (s, c) = delta.sin_cos();
    let num = alpha_sq * ((2.0 * r).exp() * c * c + (-2.0 * r).exp() * s * s) + 2.0 * sh2 * r.cosh().powi(2);
    num / denom - 1.0
}

pub fn mandel_q(label: &SqueezeLabel) -> [f64; 3] {
    mandel_q_with(label, DeltaConvention::Printed)
}

pub fn mandel_q_with(label: &SqueezeLabel, convention: DeltaConvention) -> [f64; 3] {
    Axis::ALL.map(|axis| {
        let i = axis.index();
        let angles = axis_angles(label, axis, convention);
        mandel_q_axis(label.s[i].norm(), label.alpha[i].norm_sqr(), angles.delta)
    })
}

fn check_tail(state: &FockCoefficients) -> Result<()> {
    if state.tail_mass() > ORACLE_TAIL_LIMIT {
        return Err(Error::Truncation { tail_mass: state.tail_mass(), limit: ORACLE_TAIL_LIMIT });
    }
    Ok(())
}

/// `(⟨n̂²⟩ − ⟨n̂⟩² − ⟨n̂⟩)/⟨n̂⟩` per axis from the number distribution; 0 when
/// `⟨n̂⟩ < 1e-14`.
pub fn mandel_q_oracle(state: &FockCoefficients) -> Result<[f64; 3]> {
    check_tail(state)?;
    let norm = state.norm_sqr();
    Ok(Axis::ALL.map(|axis| {
        let dist = state.axis_distribution(axis);
        let (mut n1, mut n2) = (0.0, 0.0);
        for (k, p) in dist.iter().enumerate() {
            let k = k as f64;
            n1 += k * p;
            n2 += k * k * p;
        }
        let (n1, n2) = (n1 / norm, n2 / norm);
        if n1 < 1e-14 {
            return 0.0;
        }
        (n2 - n1 * n1 - n1) / n1
    }))
}

/// `(¼[e^{2r}cos²(a/2) + e^{−2r}sin²(a/2)], ¼[e^{2r}sin²(a/2) + e^{−2r}cos²(a/2)])`.
pub fn quadrature_variances(r: f64, angle: f64) -> (f64, f64) {
    let (s, c) = (0.5 * angle).sin_cos();
    let (up, down) = ((2.0 * r).exp(), (-2.0 * r).exp());
    (0.25 * (up * c * c + down * s * s), 0.25 * (up * s * s + down * c * c))
}

/// Strictly below the vacuum variance in either quadrature.
pub fn classify_squeezing(var1: f64, var2: f64) -> bool {
    var1.min(var2) < VACUUM_VARIANCE
}

/// Squeeze magnitudes on the border `e^{±2r} = tan²(angle/2)`.
///
/// `r_plus` puts the first variance at exactly ¼, `r_minus = −r_plus` the
/// second. Where `tan(angle/2) = 0` neither equation has a finite root and
/// both are returned as `+∞`.
pub fn squeeze_border(angle: f64) -> (f64, f64) {
    let a = angle.rem_euclid(2.0 * std::f64::consts::PI);
    let t = (0.5 * a).tan().abs();
    if a == 0.0 || !t.is_finite() {
        return (f64::INFINITY, f64::INFINITY);
    }
    let r = t.ln();
    (r, -r)
}

/// Quadrature variances per axis from ladder-operator moments of a Fock
/// expansion.
pub fn statistics_oracle_variances(state: &FockCoefficients) -> Result<[(f64, f64); 3]> {
    check_tail(state)?;
    let norm = state.norm_sqr();
    Axis::ALL
        .map(|axis| -> Result<(f64, f64)> {
            let lowered = ladder_apply(axis, Ladder::Lower, state);
            let twice = ladder_apply(axis, Ladder::Lower, &lowered);
            let a1 = inner_product(state, &lowered)? / norm;
            let a2 = inner_product(state, &twice)? / norm;
            let n = lowered.norm_sqr() / norm;
            let var1 = 0.25 * (1.0 + 2.0 * n + 2.0 * a2.re) - a1.re * a1.re;
            let var2 = 0.25 * (1.0 + 2.0 * n - 2.0 * a2.re) - a1.im * a1.im;
            Ok((var1, var2))
        })
        .into_iter()
        .collect::<Result<Vec<_>>>()
        .map(|v| [v[0], v[1], v[2]])
}

/// Closed-form statistics of each axis, with the variance angle taken as the
/// squeeze phase `θ`.
pub fn axis_statistics(label: &SqueezeLabel, convention: DeltaConvention) -> [AxisStatistics; 3] {
    let q = mandel_q_with(label, convention);
    Axis::ALL.map(|axis| {
        let s = label.s[axis.index()];
        let (var_quad1, var_quad2) = quadrature_variances(s.norm(), phase(s));
        AxisStatistics {
            q_mandel: q[axis.index()],
            var_quad1,
            var_quad2,
            squeezed: classify_squeezing(var_quad1, var_quad2),
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coherent::{coherent_coefficients, CoherentLabel};
    use crate::oscillator::TripleIndex;
    use crate::squeezed::squeezed_fock_coefficients;
    use std::f64::consts::PI;

    const Z: Complex64 = Complex64::new(0.0, 0.0);

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn mandel_examples() {
        let coh = SqueezeLabel::new([Z; 3], [c(1.0, 0.0), c(0.0, 1.0), c(1.0, 1.0)]);
        assert_eq!(mandel_q(&coh), [0.0; 3]);

        let sq = SqueezeLabel::vacuum([c(1.0, 0.0), Z, Z]);
        let q = mandel_q(&sq)[0];
        assert!((q - 2f64.cosh()).abs() < 1e-14);
        assert!((q - 3.76219569).abs() < 1e-8);

        let r: f64 = 0.5;
        let expected = (1f64.exp() + 2.0 * r.sinh().powi(2) * r.cosh().powi(2)) / (1.0 + r.sinh().powi(2)) - 1.0;
        assert!((mandel_q_axis(r, 1.0, 0.0) - expected).abs() < 1e-15);
        assert_eq!(mandel_q_axis(0.0, 0.0, 1.3), 0.0);
    }

    #[test]
    fn mandel_oracle_examples() {
        assert_eq!(
            mandel_q_oracle(&FockCoefficients::basis([3; 3], TripleIndex::new(0, 0, 0)).unwrap()).unwrap(),
            [0.0; 3]
        );
        let two = mandel_q_oracle(&FockCoefficients::basis([3; 3], TripleIndex::new(2, 0, 0)).unwrap()).unwrap();
        assert!((two[0] + 1.0).abs() < 1e-15);
        let three = mandel_q_oracle(&FockCoefficients::basis([3; 3], TripleIndex::new(0, 3, 0)).unwrap()).unwrap();
        assert!((three[1] + 1.0).abs() < 1e-15);
        let coh = mandel_q_oracle(&coherent_coefficients(&CoherentLabel::real([1.0, 0.0, 0.0]), [40, 2, 2])).unwrap();
        assert!(coh[0].abs() < 1e-10);

        let lossy = coherent_coefficients(&CoherentLabel::real([3.0, 0.0, 0.0]), [5, 1, 1]);
        assert!(matches!(mandel_q_oracle(&lossy), Err(Error::Truncation { .. })));
    }

    #[test]
    fn vacuum_squeeze_is_flat_in_delta() {
        for r in [0.0, 0.3, 0.8, 1.5] {
            let values: Vec<f64> = (0..16).map(|k| mandel_q_axis(r, 0.0, k as f64 * 0.4)).collect();
            let spread = values.iter().cloned().fold(f64::NEG_INFINITY, f64::max)
                - values.iter().cloned().fold(f64::INFINITY, f64::min);
            assert!(spread <= 1e-12);
            if r > 0.0 {
                assert!((values[0] - (2.0 * r).cosh()).abs() <= 1e-12);
            }
        }
    }

    #[test]
    fn reattributed_delta_matches_oracle() {
        let theta = 0.6;
        for r in [0.3, 0.8] {
            for amp in [0.5, 1.5] {
                for delta in [0.0, PI / 4.0, PI / 2.0] {
                    let phi = DeltaConvention::Reattributed.phi_for(theta, delta);
                    let label = SqueezeLabel::new(
                        [Complex64::from_polar(r, theta), Z, Z],
                        [Complex64::from_polar(amp, phi), Z, Z],
                    );
                    let st = squeezed_fock_coefficients(&label, [60, 0, 0], 140).unwrap();
                    let oracle = mandel_q_oracle(&st).unwrap()[0];
                    let closed = mandel_q_with(&label, DeltaConvention::Reattributed)[0];
                    // cutoff 60 leaves a few 1e-6 of the second moment at r = 0.8, |α| = 1.5
                    assert!((oracle - closed).abs() < 1e-5, "r={r} |α|={amp} δ={delta}: {oracle} vs {closed}");
                }
            }
        }
    }

    #[test]
    fn printed_delta_departs_from_oracle() {
        let label = SqueezeLabel::new([Complex64::from_polar(0.7, 1.1), Z, Z], [c(0.6, -0.4), Z, Z]);
        let st = squeezed_fock_coefficients(&label, [60, 0, 0], 140).unwrap();
        let oracle = mandel_q_oracle(&st).unwrap()[0];
        assert!((mandel_q(&label)[0] - oracle).abs() > 0.1);
        assert!((mandel_q_with(&label, DeltaConvention::Reattributed)[0] - oracle).abs() < 1e-8);
    }

    #[test]
    fn variance_examples() {
        assert_eq!(quadrature_variances(0.0, 1.234), (0.25, 0.25));
        let (a, b) = quadrature_variances(1.0, 0.0);
        assert!((a - 1.84726402).abs() < 1e-8 && (b - 0.03383382).abs() < 1e-8);
        let (c1, c2) = quadrature_variances(1.0, PI);
        assert!((c1 - b).abs() < 1e-15 && (c2 - a).abs() < 1e-15);
    }

    #[test]
    fn classify_examples() {
        assert!(!classify_squeezing(0.25, 0.25));
        assert!(classify_squeezing(1.847, 0.0338));
        assert!(!classify_squeezing(0.3, 0.26));
    }

    #[test]
    fn border_examples() {
        let (rp, rm) = squeeze_border(PI / 2.0);
        assert!(rp.abs() < 1e-15 && rm.abs() < 1e-15);
        let (rp, _) = squeeze_border(2.0 * 1f64.exp().atan());
        assert!((rp - 1.0).abs() < 1e-14);
        assert_eq!(squeeze_border(0.0), (f64::INFINITY, f64::INFINITY));
        assert_eq!(squeeze_border(2.0 * PI), (f64::INFINITY, f64::INFINITY));
    }

    #[test]
    fn oracle_variance_examples() {
        let vac =
            statistics_oracle_variances(&FockCoefficients::basis([2; 3], TripleIndex::new(0, 0, 0)).unwrap()).unwrap();
        assert_eq!(vac, [(0.25, 0.25); 3]);

        let coh =
            statistics_oracle_variances(&coherent_coefficients(&CoherentLabel::real([2.0, 0.0, 0.0]), [60, 1, 1]))
                .unwrap();
        assert!((coh[0].0 - 0.25).abs() < 1e-8 && (coh[0].1 - 0.25).abs() < 1e-8);

        let sq = squeezed_fock_coefficients(&SqueezeLabel::vacuum([c(0.5, 0.0), Z, Z]), [60, 0, 0], 120).unwrap();
        let (v1, v2) = statistics_oracle_variances(&sq).unwrap()[0];
        assert!((v1 * v2 - 1.0 / 16.0).abs() < 1e-6);
        assert!(v1.min(v2) < 0.25);
    }

    #[test]
    fn variance_angle_is_the_squeeze_phase() {
        let (r, theta) = (0.6, 1.0);
        let label = SqueezeLabel::new([Complex64::from_polar(r, theta), Z, Z], [Complex64::from_polar(0.9, 2.4), Z, Z]);
        let st = squeezed_fock_coefficients(&label, [60, 0, 0], 140).unwrap();
        let (v1, v2) = statistics_oracle_variances(&st).unwrap()[0];
        let (t1, t2) = quadrature_variances(r, theta);
        assert!((v1 - t1).abs() < 1e-9 && (v2 - t2).abs() < 1e-9);
        let (p1, _) = quadrature_variances(r, 2.4);
        assert!((v1 - p1).abs() > 1e-2);
    }

    #[test]
    fn axis_statistics_bundle() {
        let label = SqueezeLabel::new([c(1.0, 0.0), Z, c(-0.4, 0.0)], [Z, c(1.0, 0.0), Z]);
        let st = axis_statistics(&label, DeltaConvention::Reattributed);
        assert!(st[0].squeezed && !st[1].squeezed && st[2].squeezed);
        assert!((st[1].q_mandel).abs() < 1e-15);
        for a in st {
            assert!(a.q_mandel >= -1.0 && a.var_quad1 * a.var_quad2 >= 1.0 / 16.0 - 1e-12);
        }
    }

    mod props {
        use super::super::*;
        use proptest::prelude::*;
        use std::f64::consts::PI;

        proptest! {
            #[test]
            fn uncertainty_product(r in -2.0f64..2.0, a in -7.0f64..7.0) {
                let (v1, v2) = quadrature_variances(r, a);
                let excess = v1 * v2 - 1.0 / 16.0;
                prop_assert!(excess >= -1e-15);
                let predicted = (a.sin() * (2.0 * r).sinh()).powi(2) / 16.0;
                prop_assert!((excess - predicted).abs() <= 1e-12 * (1.0 + predicted));
            }

            #[test]
            fn sign_flip_swaps_variances(r in -2.0f64..2.0, a in -7.0f64..7.0) {
                let (v1, v2) = quadrature_variances(r, a);
                let (w1, w2) = quadrature_variances(-r, a);
                prop_assert!((v1 - w2).abs() <= 1e-12 && (v2 - w1).abs() <= 1e-12);
            }

            #[test]
            fn border_substitution(a in 0.05f64..(2.0 * PI - 0.05)) {
                prop_assume!((a - PI).abs() > 0.05);
                let (rp, rm) = squeeze_border(a);
                prop_assert!((quadrature_variances(rp, a).0 - 0.25).abs() <= 1e-12);
                prop_assert!((quadrature_variances(rm, a).1 - 0.25).abs() <= 1e-12);
            }

            #[test]
            fn mandel_q_floor(r in 0.0f64..2.0, amp in 0.0f64..3.0, d in -4.0f64..4.0) {
                prop_assert!(mandel_q_axis(r, amp * amp, d) >= -1.0);
            }
        }
    }
}
