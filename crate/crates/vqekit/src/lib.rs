//! Statevector toolkit for variational ground-state search.
//!
//! The crate bundles everything needed to study how parameter initialization
//! affects the trainability of variational quantum eigensolvers on small spin
//! and molecular Hamiltonians:
//!
//! - [`pauli`] — real-weighted Pauli-string Hamiltonians, dense
//!   materialization, and exact ground-state solving for desk-scale systems.
//! - [`statevector`] — exact `2^n`-amplitude simulation: rotations, CZ,
//!   Pauli-string exponentials, expectation values, fidelity.
//! - [`ansatz`] — hardware-efficient and Hamiltonian-variational circuit
//!   builders with an explicit parameter-layout table.
//! - [`tasks`] — transverse-field Ising / XXZ model builders and the registry
//!   of benchmark tasks A–F.
//! - [`init`] — initialization strategies: cold start, network transfer,
//!   structure transfer, block-identity (BLE), and parameter pools.
//! - [`optimize`] — cost, exact adjoint gradients, BFGS with a strong-Wolfe
//!   line search, and the seeded trial/success protocol.
//! - [`analysis`] — gradient-variance and cost-concentration scans, Chebyshev
//!   bounds, fidelity diagnostics, and trial-set summaries.
//! - [`cli`] — the command-line harness behind the `vqekit` binary.
//!
//! The fastest way to get a feel for the API is the `examples/` directory;
//! each example is a runnable walkthrough of one capability:
//!
//! ```bash
//! cargo run --release --example exact_energies
//! cargo run --release --example transfer_benchmark
//! ```

pub mod analysis;
pub mod ansatz;
pub mod cli;
pub mod error;
pub mod init;
pub mod optimize;
pub mod pauli;
pub mod statevector;
pub mod tasks;

pub use error::{Error, Result};
