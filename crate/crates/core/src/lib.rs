//! Multiobjective combinatorial optimization on a simulated adiabatic
//! quantum computer.
//!
//! The [`mco`] module holds the classical side (instances, Pareto order,
//! supported solutions, validation). [`hamiltonian`], [`spectral`] and
//! [`adiabatic`] build and analyse the interpolated Hamiltonian and simulate
//! the evolution. [`resolver`] breaks ties in the final ground state and
//! [`bench`] carries the Two-Parabolas benchmark.
//!
//! Everything on the classical side is generic over [`Scalar`], which covers
//! `f32`, `f64` and exact rationals. Spectral code needs [`Real`].

// `!(x > 0)` guards reject NaN along with the out-of-range values.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod adiabatic;
pub mod bench;
pub mod eigen;
pub mod error;
pub mod hamiltonian;
pub mod mco;
pub mod operator;
pub mod resolver;
pub mod scalar;
pub mod spectral;
pub mod walsh;

pub use error::{Error, Result};
pub use mco::{Dominance, Linearization, McoInstance, ObjectiveVector};
pub use num_rational::Rational64;
pub use operator::HermitianOperator;
pub use scalar::{Real, Scalar};

pub type Instance = McoInstance<f64>;
pub type Instance32 = McoInstance<f32>;
pub type ExactInstance = McoInstance<Rational64>;
pub type Weights = Linearization<f64>;
pub type ExactWeights = Linearization<Rational64>;
pub type Operator = HermitianOperator<f64>;
pub type State = adiabatic::StateVector<f64>;
