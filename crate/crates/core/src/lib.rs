//! Mixed-radix statevector simulation and verification tooling for
//! absolutely maximally entangled (AME) states.
//!
//! The crate is organised bottom-up:
//!
//! - [`linalg`]: registers, statevectors, partial traces, the Hermitian
//!   Jacobi eigensolver and entropy functionals.
//! - [`circuit`]: gate vocabulary, circuits, simulation with snapshots and
//!   the JSON interchange format.
//! - [`graphstates`]: graphs, the graph-state recipe and local
//!   complementation.
//! - [`quditcompile`]: lowering of qutrit/ququart circuits onto qubits.
//! - [`catalog`]: explicit reference states and hardware-shaped circuits.
//! - [`analysis`]: AME checks, minimal support, majorization along a
//!   circuit, the five-party Mermin operator and a greedy circuit search.
//! - [`cli`]: the `amecirc` command-line front end.

pub mod analysis;
pub mod catalog;
pub mod circuit;
pub mod cli;
pub mod error;
pub mod graphstates;
pub mod linalg;
pub mod quditcompile;

pub use error::{Error, Result};
