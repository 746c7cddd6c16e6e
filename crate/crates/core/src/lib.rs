//! Quantum states of the isotropic three-dimensional harmonic oscillator:
//! Fock, coherent and squeezed states, their Wigner functions, and photon
//! statistics.
//!
//! The numerical building blocks live in [`special`]. States and their
//! number-basis coefficients are in [`oscillator`], [`coherent`] and
//! [`squeezed`]; phase-space tools in [`phase_space`]; Mandel Q and
//! quadrature variances in [`statistics`]. [`validation`] checks all of it
//! against independent oracles and [`cli`] backs the `osc3d` binary.

pub mod cli;
pub mod coherent;
pub mod error;
pub mod oscillator;
pub mod phase_space;
pub mod special;
pub mod squeezed;
pub mod statistics;
pub mod validation;
pub mod wavefunction;

pub use coherent::{CoherentLabel, CoherentState};
pub use error::{Error, Result};
pub use oscillator::{
    eigenfunction, energy, inner_product, ladder_apply, Axis, FockCoefficients, FockState, Ladder, OscillatorParams,
    PhasePoint, TripleIndex,
};
pub use squeezed::{ChirpForm, SqueezeLabel, SqueezedState};
pub use wavefunction::{AxisFactors, Wavefunction};
