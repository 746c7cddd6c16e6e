//! Isotropic 3D oscillator: parameters, Fock-basis states, ladder operators
//! and stationary wavefunctions.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::special::{hermite_functions_complex, hermite_poly, log_factorial};
use crate::wavefunction::{AxisFactors, Wavefunction};

/// Mass, angular frequency and ħ of the oscillator, with the derived inverse
/// length `κ = √(Mω/ħ)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawParams", into = "RawParams")]
pub struct OscillatorParams {
    mass: f64,
    omega: f64,
    hbar: f64,
    kappa: f64,
}

#[derive(Serialize, Deserialize)]
struct RawParams {
    mass: f64,
    omega: f64,
    hbar: f64,
}

impl TryFrom<RawParams> for OscillatorParams {
    type Error = Error;
    fn try_from(raw: RawParams) -> Result<Self> {
        Self::new(raw.mass, raw.omega, raw.hbar)
    }
}

impl From<OscillatorParams> for RawParams {
    fn from(p: OscillatorParams) -> Self {
        RawParams { mass: p.mass, omega: p.omega, hbar: p.hbar }
    }
}

impl OscillatorParams {
    /// `M = ω = ħ = 1`.
    pub const NATURAL: Self = Self { mass: 1.0, omega: 1.0, hbar: 1.0, kappa: 1.0 };

    pub fn new(mass: f64, omega: f64, hbar: f64) -> Result<Self> {
        for (name, value) in [("mass", mass), ("omega", omega), ("hbar", hbar)] {
            if !(value > 0.0 && value.is_finite()) {
                return Err(Error::NonPositiveParameter { name, value });
            }
        }
        Ok(Self { mass, omega, hbar, kappa: (mass * omega / hbar).sqrt() })
    }

    pub fn mass(&self) -> f64 {
        self.mass
    }

    pub fn omega(&self) -> f64 {
        self.omega
    }

    pub fn hbar(&self) -> f64 {
        self.hbar
    }

    pub fn kappa(&self) -> f64 {
        self.kappa
    }
}

impl Default for OscillatorParams {
    fn default() -> Self {
        Self::NATURAL
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Axis {
    X,
    Y,
    Z,
}

impl Axis {
    pub const ALL: [Axis; 3] = [Axis::X, Axis::Y, Axis::Z];

    pub fn index(self) -> usize {
        match self {
            Axis::X => 0,
            Axis::Y => 1,
            Axis::Z => 2,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Ladder {
    Lower,
    Raise,
}

/// Quanta per Cartesian axis, `|m, n, l⟩` with `m` along x.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct TripleIndex {
    pub m: usize,
    pub n: usize,
    pub l: usize,
}

impl TripleIndex {
    pub const fn new(m: usize, n: usize, l: usize) -> Self {
        Self { m, n, l }
    }

    pub fn total(&self) -> usize {
        self.m + self.n + self.l
    }

    pub fn as_array(&self) -> [usize; 3] {
        [self.m, self.n, self.l]
    }

    pub fn from_array(a: [usize; 3]) -> Self {
        Self { m: a[0], n: a[1], l: a[2] }
    }

    /// Every index with total quanta `≤ max_total`, in lexicographic order.
    pub fn up_to_total(max_total: usize) -> Vec<TripleIndex> {
        let mut out = Vec::new();
        for m in 0..=max_total {
            for n in 0..=max_total - m {
                for l in 0..=max_total - m - n {
                    out.push(TripleIndex::new(m, n, l));
                }
            }
        }
        out
    }
}

/// Phase-space point `(r, p)` in physical units.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct PhasePoint {
    pub position: [f64; 3],
    pub momentum: [f64; 3],
}

impl PhasePoint {
    pub const fn new(position: [f64; 3], momentum: [f64; 3]) -> Self {
        Self { position, momentum }
    }

    pub const ORIGIN: PhasePoint = PhasePoint { position: [0.0; 3], momentum: [0.0; 3] };

    pub fn is_finite(&self) -> bool {
        self.position.iter().chain(&self.momentum).all(|v| v.is_finite())
    }
}

/// Dense, truncated coefficient tensor `c_{mnl}` over `0..=cutoff` per axis.
///
/// `tail_mass` estimates the probability that lies beyond the cutoff.
#[derive(Debug, Clone, PartialEq)]
pub struct FockCoefficients {
    cutoff: [usize; 3],
    coeffs: Vec<Complex64>,
    tail_mass: f64,
}

impl FockCoefficients {
    pub fn zeros(cutoff: [usize; 3]) -> Self {
        let len = cutoff.iter().map(|c| c + 1).product();
        Self { cutoff, coeffs: vec![Complex64::new(0.0, 0.0); len], tail_mass: 0.0 }
    }

    /// Pure basis state `|m, n, l⟩`.
    pub fn basis(cutoff: [usize; 3], index: TripleIndex) -> Result<Self> {
        let mut state = Self::zeros(cutoff);
        *state.get_mut(index)? = Complex64::new(1.0, 0.0);
        Ok(state)
    }

    /// Outer product `c_{mnl} = a_m b_n c_l` of three per-axis vectors.
    pub fn from_product(axes: [&[Complex64]; 3], tail_mass: f64) -> Self {
        let cutoff = [axes[0].len() - 1, axes[1].len() - 1, axes[2].len() - 1];
        let mut coeffs = Vec::with_capacity(axes.iter().map(|a| a.len()).product());
        for &a in axes[0] {
            for &b in axes[1] {
                let ab = a * b;
                coeffs.extend(axes[2].iter().map(|&c| ab * c));
            }
        }
        Self { cutoff, coeffs, tail_mass: tail_mass.max(0.0) }
    }

    pub fn cutoff(&self) -> [usize; 3] {
        self.cutoff
    }

    pub fn tail_mass(&self) -> f64 {
        self.tail_mass
    }

    pub fn with_tail_mass(mut self, tail_mass: f64) -> Self {
        self.tail_mass = tail_mass.max(0.0);
        self
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    fn offset(&self, index: [usize; 3]) -> usize {
        let [_, ny, nz] = self.cutoff;
        (index[0] * (ny + 1) + index[1]) * (nz + 1) + index[2]
    }

    fn check(&self, index: TripleIndex) -> Result<usize> {
        let a = index.as_array();
        if a.iter().zip(&self.cutoff).any(|(i, c)| i > c) {
            return Err(Error::IndexOutOfRange { index: a, cutoff: self.cutoff });
        }
        Ok(self.offset(a))
    }

    pub fn get(&self, index: TripleIndex) -> Result<Complex64> {
        Ok(self.coeffs[self.check(index)?])
    }

    pub fn get_mut(&mut self, index: TripleIndex) -> Result<&mut Complex64> {
        let at = self.check(index)?;
        Ok(&mut self.coeffs[at])
    }

    /// `(index, coefficient)` pairs in storage order.
    pub fn iter(&self) -> impl Iterator<Item = (TripleIndex, Complex64)> + '_ {
        let [nx, ny, nz] = self.cutoff;
        (0..=nx)
            .flat_map(move |m| (0..=ny).flat_map(move |n| (0..=nz).map(move |l| TripleIndex::new(m, n, l))))
            .zip(self.coeffs.iter().copied())
    }

    /// `Σ |c_{mnl}|²`.
    pub fn norm_sqr(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm_sqr()).sum()
    }

    /// Probability of each quantum number along `axis`, summed over the other
    /// two axes.
    pub fn axis_distribution(&self, axis: Axis) -> Vec<f64> {
        let mut out = vec![0.0; self.cutoff[axis.index()] + 1];
        for (idx, c) in self.iter() {
            out[idx.as_array()[axis.index()]] += c.norm_sqr();
        }
        out
    }

    /// Amplitude `Σ c_{mnl} Ψ_{mnl}(r)` at a real position.
    pub fn position_amplitude(&self, r: [f64; 3], params: &OscillatorParams) -> Result<Complex64> {
        let k = params.kappa();
        let phi: Vec<Vec<Complex64>> = (0..3)
            .map(|i| {
                hermite_functions_complex(self.cutoff[i], Complex64::new(k * r[i], 0.0))
                    .map(|v| v.into_iter().map(|f| f * k.sqrt()).collect())
            })
            .collect::<Result<_>>()?;
        Ok(self.iter().map(|(idx, c)| c * phi[0][idx.m] * phi[1][idx.n] * phi[2][idx.l]).sum())
    }
}

/// Apply `â_ν` or `â_ν†` coefficient-wise.
///
/// Raising drops amplitude pushed past the cutoff and adds its squared
/// magnitude to `tail_mass`.
pub fn ladder_apply(axis: Axis, direction: Ladder, state: &FockCoefficients) -> FockCoefficients {
    let cutoff = state.cutoff;
    let ax = axis.index();
    let mut out = FockCoefficients::zeros(cutoff);
    out.tail_mass = state.tail_mass;
    for (idx, c) in state.iter() {
        let mut a = idx.as_array();
        let k = a[ax];
        match direction {
            Ladder::Lower => {
                if k == 0 {
                    continue;
                }
                a[ax] = k - 1;
                let at = out.offset(a);
                out.coeffs[at] += c * (k as f64).sqrt();
            }
            Ladder::Raise => {
                let amp = c * ((k + 1) as f64).sqrt();
                if k == cutoff[ax] {
                    out.tail_mass += amp.norm_sqr();
                    continue;
                }
                a[ax] = k + 1;
                let at = out.offset(a);
                out.coeffs[at] += amp;
            }
        }
    }
    out
}

/// `ħω(m + n + l + 3/2)`.
pub fn energy(index: TripleIndex, params: &OscillatorParams) -> f64 {
    params.hbar() * params.omega() * (index.total() as f64 + 1.5)
}

/// Stationary wavefunction `Ψ_{mnl}(r)` (real-valued).
pub fn eigenfunction(index: TripleIndex, r: [f64; 3], params: &OscillatorParams) -> Result<f64> {
    let k = params.kappa();
    let mut value = (0.75 * (k * k / PI).ln()).exp();
    for (q, x) in index.as_array().into_iter().zip(r) {
        let u = k * x;
        let h = hermite_poly(q, u)?;
        let ln_norm = -0.5 * (q as f64 * std::f64::consts::LN_2 + log_factorial(q));
        value *= h * (ln_norm - 0.5 * u * u).exp();
    }
    Ok(value)
}

/// `⟨a|b⟩`, conjugating the first argument.
pub fn inner_product(a: &FockCoefficients, b: &FockCoefficients) -> Result<Complex64> {
    if a.cutoff != b.cutoff {
        return Err(Error::CutoffMismatch { left: a.cutoff, right: b.cutoff });
    }
    Ok(a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x.conj() * y).sum())
}

/// A Fock state as a position-space wavefunction.
#[derive(Debug, Clone, Copy)]
pub struct FockState {
    pub index: TripleIndex,
    pub params: OscillatorParams,
}

impl FockState {
    pub fn new(index: TripleIndex, params: OscillatorParams) -> Result<Self> {
        for q in index.as_array() {
            if q > crate::special::MAX_DEGREE {
                return Err(Error::DegreeOverflow { degree: q, max: crate::special::MAX_DEGREE });
            }
        }
        Ok(Self { index, params })
    }
}

impl AxisFactors for FockState {
    fn factor(&self, axis: Axis, x: Complex64) -> Complex64 {
        let k = self.params.kappa();
        let q = self.index.as_array()[axis.index()];
        let phi = hermite_functions_complex(q, k * x).expect("degree validated at construction");
        phi[q] * k.sqrt()
    }
}

impl Wavefunction for FockState {
    fn amplitude(&self, r: [Complex64; 3]) -> Complex64 {
        Axis::ALL.iter().map(|&a| self.factor(a, r[a.index()])).product()
    }

    fn as_product(&self) -> Option<&dyn AxisFactors> {
        Some(self)
    }
}
