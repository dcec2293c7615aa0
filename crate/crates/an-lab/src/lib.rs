//! Symbolic classification of norm attainment for positive diagonal operators.
//!
//! A bounded operator is *norming* (N) when it attains its operator norm on
//! the whole space, and *absolutely norming* (AN) when it attains its norm on
//! every nontrivial closed subspace. For positive diagonalizable operators
//! both properties are decidable from the eigenvalue spectrum alone, and an
//! AN operator always splits as `alpha*I + K + F` with `alpha >= 0`, `K`
//! positive compact and `F` self-adjoint of finite rank.
//!
//! This crate works with exact rational spectra end to end:
//!
//! * [`spectrum`] — symbolic spectra ([`SpectrumSpec`]) and the four
//!   attainment conditions that characterize AN,
//! * [`classifier`] — N/AN verdicts for positive and diagonal operators,
//! * [`decompose`] — the canonical `alpha*I + K + F` splitting and its
//!   reconstruction,
//! * [`witness`] — explicit subspace recipes proving failure of norm
//!   attainment, with exact rational coefficients,
//! * [`numeric`] — floating-point verification kernels (Jacobi
//!   eigensolver, polar factorization, restricted norms, truncation
//!   studies),
//! * [`models`] — a small registry of built-in example operators,
//! * [`cli`] — the `an-lab` command line surface.
//!
//! Every runnable capability has a matching program under `examples/`; start
//! with `cargo run --example classify_builtin_models`.

pub mod classifier;
pub mod cli;
pub mod decompose;
pub mod models;
pub mod numeric;
pub mod rational;
pub mod spectrum;
pub mod witness;

pub use classifier::{ANVerdict, DiagonalOperatorSpec, Reason};
pub use decompose::Decomposition;
pub use rational::Rat;
pub use spectrum::{
    ConditionReport, EigenvalueAtom, LimitPointReport, Multiplicity, SpectrumSpec, TailSequence,
};
pub use witness::WitnessPlan;
