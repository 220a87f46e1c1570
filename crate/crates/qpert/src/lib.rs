//! Models of passive linear quantum systems written in terms of annihilation
//! operators, together with the numerical machinery to answer three questions
//! about them:
//!
//! * **Is a given state-space model a legitimate open quantum system?**
//!   [`qsys::find_commutation_matrix`] decides physical realizability by
//!   searching for a Hermitian positive-definite commutation matrix Θ
//!   certifying the equations FΘ + ΘF† + GG† = 0, G = −ΘH†K, K†K = I, and
//!   [`qsys::recover_physical`] maps a certificate back to the physical
//!   parameters (scattering matrix S, coupling matrix Λ, Hamiltonian matrix M).
//!
//! * **What happens to that structure under singular-perturbation model
//!   reduction?** [`singular`] holds the partitioned slow/fast family, the
//!   slow-subsystem reduction F₀ = F₁₁ − F₁₂F₂₂⁻¹F₂₁ (and friends), and a
//!   frequency-domain convergence study of ‖Φ_ε − Φ₀‖ with its first-order
//!   coefficient.
//!
//! * **When is the reduced model guaranteed physical?** [`adiabatic`] builds
//!   the special perturbation family that arises from scaling a block of the
//!   coupling and Hamiltonian matrices, and eliminates the fast modes in
//!   closed form, producing a reduced system that is realizable with Θ = I
//!   by construction.
//!
//! [`catalog`] ships two worked systems with frozen expected values, and
//! [`fileio`]/[`cli`] expose everything through a JSON file format and a
//! small command-line tool. The `examples/` directory contains one runnable
//! walkthrough per capability; start with `examples/realizability.rs`.
//!
//! All numerics are dense, double-precision and desk-scale (n ≤ 128); every
//! tolerance is centralized in [`linalg::Tolerances`].

pub mod adiabatic;
pub mod catalog;
pub mod cli;
pub mod error;
pub mod fileio;
pub mod linalg;
pub mod qsys;
pub mod random;
pub mod singular;

pub use adiabatic::SpecialClassParams;
pub use error::{Error, Result};
pub use linalg::{Complex64, ComplexMatrix, Tolerances};
pub use qsys::{FrequencyGrid, PhysicalRealization, QuantumLinearSystem};
pub use singular::PartitionedSystem;
