//! Fermion-to-qubit operator lowering for small electronic-structure problems.
//!
//! The pipeline is
//!
//! 1. [`fermion`]: read one- and two-electron integrals (MOLINT text files) and
//!    assemble the second-quantized Hamiltonian;
//! 2. [`transforms`]: map it to a Pauli operator with the Jordan-Wigner,
//!    Bravyi-Kitaev (Fenwick tree) or Bravyi-Kitaev superfast encoding, the
//!    last one together with its loop stabilizers and vacuum state;
//! 3. [`simulator`]: dense exact and Trotterized time evolution for up to
//!    [`simulator::MAX_QUBITS`] qubits;
//! 4. [`circuit`]: lower exponentiated Pauli terms to gates, count them and
//!    search term orderings for small Trotter error.
//!
//! Mode and qubit indices are 0-based in the API and 1-based in every text
//! format and rendering. Qubit `k` (0-based) is bit `k` of a computational
//! basis label, so qubit 1 in 1-based notation is the least significant bit.

pub mod circuit;
pub mod data;
mod error;
pub mod fermion;
pub mod pauli;
pub mod simulator;
pub mod transforms;

pub use error::{Error, ErrorKind, Result};

/// Coefficients with magnitude at or below this are dropped by canonicalization.
pub const DEFAULT_TOLERANCE: f64 = 1e-12;
