//! Exact and sampled verification of joint strong elements of reality on
//! few-qubit entangled states.
//!
//! The crate is `no_std` and only needs `alloc`. It provides:
//!
//! - [`hilbert`]: dense complex vectors and operators on spaces of
//!   dimension at most 16, Hermitian spectral decomposition by cyclic
//!   Jacobi rotations, and joint-eigenspace queries.
//! - [`spin`]: Pauli observables, single-particle embeddings and the
//!   named two- and three-particle operators.
//! - [`states`]: the three entangled states the scenarios run on.
//! - [`measurement`]: Born-rule probabilities, conditional probabilities,
//!   Lüders collapse and seeded joint sampling.
//! - [`inference`]: certification of strong elements of reality and the
//!   four scenario runners producing [`inference::ScenarioReport`]s.
//!
//! Basis convention: particle 1 is the most significant bit of a basis
//! index, and bit value 0 is the `σz = +1` state `|+⟩`.

#![no_std]

extern crate alloc;

mod error;
pub mod hilbert;
pub mod inference;
pub mod measurement;
pub mod random;
pub mod spin;
pub mod states;

pub use error::{Error, ParamViolation, Result};
pub use hilbert::{Observable, Operator, SpectralDecomposition, StateVector, C64};
