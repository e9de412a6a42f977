//! Optimal universal qubit cloning from the no-signaling constraint.
//!
//! The crate builds the covariant family of symmetric 1→2 cloner output
//! states, checks axial covariance, the no-signaling identity and positivity,
//! and derives the largest admissible shrink factor η_max = 2/3 (fidelity 5/6)
//! both exactly and by brute-force search. The Bužek–Hillery machine is
//! constructed explicitly and shown to reach the bound, and a Monte-Carlo
//! version of the singlet remote-preparation game measures how much a
//! hypothetical better cloner would let Bob learn about Alice's choice.
//!
//! All numerical code is generic over [`Real`] (`f32`, `f64`); the closed-form
//! bound is generic over [`Field`] and is exact on [`Rational64`]. The aliases
//! below fix `f64`, which is what the CLI uses.
//!
//! ```
//! use clone_bound::{bound, Rational64};
//!
//! let exact = bound::max_eta_closed_form::<Rational64>();
//! assert_eq!(exact.fidelity_max, Rational64::new(5, 6));
//! ```

pub mod bound;
pub mod buzek_hillery;
pub mod cloner;
pub mod error;
pub mod linalg;
pub mod pauli;
pub mod rotation;
pub mod scalar;
pub mod signaling;
pub mod state;

pub use num_rational::Rational64;

pub use error::{Error, Result};
pub use scalar::{Field, Real};

pub type Bloch = state::BlochVector<f64>;
pub type QubitState = state::OneQubitState<f64>;
pub type PairState = state::TwoQubitState<f64>;
pub type Coefficients = pauli::PauliCoefficients<f64>;
pub type Params = cloner::ClonerParams<f64>;
pub type GeneralParams = cloner::GeneralClonerParams<f64>;
pub type AnyParams = cloner::AnyClonerParams<f64>;
pub type Bound = bound::BoundResult<f64>;
pub type ExactBound = bound::BoundResult<Rational64>;
pub type Report = signaling::SignalReport<f64>;
