//! Quantum and classical models of a two-lamp Bell box.
//!
//! The crate is organised bottom-up:
//!
//! * [`statevec`] real-amplitude kets on the local (2-dim) and product (4-dim)
//!   event spaces, with tensor products and the separability test.
//! * [`quantum`] the quantum Bell-box state built three ways: from measured
//!   amplitudes, from local rotations on the two emission branches, and from a
//!   4×2 change of basis.
//! * [`operators`] statistical operators as weighted pure-state sums, including
//!   negative quasi-probability weights, plus the Gram-matrix analysis of the
//!   underlying states and incoherent mixtures of configurations.
//! * [`bell`] event probabilities, correlation functions, the four-configuration
//!   inequality battery and the single-configuration discriminator.
//! * [`marbles`] a seeded Monte-Carlo sampler of the classical marble experiment.
//!
//! Amplitudes are real throughout. Product-basis components are ordered
//! `(yy, yn, ny, nn)`, where `y` is "lamp on" and `n` is "lamp off"; the first
//! letter belongs to side A (left), the second to side B (right).

pub mod bell;
pub mod error;
pub mod marbles;
pub mod operators;
pub mod quantum;
pub mod statevec;

pub use bell::{BellBattery, Event, EventProbabilities, Model, Verdict};
pub use error::{Error, Result};
pub use marbles::{EstimationReport, MarbleBox, MarbleProtocol, SamplingMode};
pub use operators::{GramMatrix, MixtureConfig, MixtureEntry, WeightedStateOperator};
pub use quantum::{Angle, BranchLabel, RotationMatrix, SignConvention};
pub use statevec::{Ket2, Ket4};

/// Absolute tolerance for analytic identities.
pub const IDENTITY_TOL: f64 = 1e-12;
