//! Two-qubit conditional-entropy toolkit.
//!
//! The crate computes von Neumann and conditional entropies of two-qubit
//! states, classifies states into the absolute classes that survive every
//! global unitary (non-negative conditional entropy, absolute separability,
//! absolute Bell-CHSH locality for the Werner family), constructs the
//! unitaries that drive conditional entropy negative when possible, builds
//! separating witness operators for the absolute conditional-entropy class,
//! and estimates class extremes by seeded Monte Carlo.
//!
//! Modules follow the pipeline: [`linalg`] is the dense 4x4 kernel,
//! [`states`] the validated density matrices and named families,
//! [`entropy`] the entropic functionals, [`classes`] the membership
//! predicates, [`orbit`] the global-unitary machinery, [`witness`] the
//! separating operators, [`mc`] the samplers, and [`demo`] the worked
//! dense-coding / state-merging scenarios behind the CLI.

pub mod classes;
pub mod demo;
pub mod entropy;
pub mod error;
pub mod linalg;
pub mod mc;
pub mod orbit;
pub mod rng;
pub mod states;
pub mod witness;

pub use classes::{classify, ClassReport, CLASS_TOL};
pub use entropy::{
    dense_coding_capacity, entropy_report, merging_cost, von_neumann, EntropyReport,
};
pub use error::{Error, Result};
pub use linalg::{Complex64, ComplexMatrix, ComplexVector, EigenSystem, Side};
pub use mc::{distance_from_i4, estimate_extreme, Objective, SampleStats};
pub use orbit::{
    apply, bell_diagonalizing_unitary, haar_unitary, min_conditional_entropy, negating_unitary,
    OrbitReport, Unitary,
};
pub use rng::SeedStream;
pub use states::{
    bell_basis, bell_diagonal, bloch_compose, bloch_decompose, comp_diagonal, correlated_bits,
    werner, BellDiagonalParams, BlochForm, DensityMatrix, Spectrum, StateJson,
};
pub use witness::{boundary_point, build_witness, eval_witness, WitnessOperator};
