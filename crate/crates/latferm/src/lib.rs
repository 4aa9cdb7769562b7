//! Fermion-to-qubit mappings for square lattices.
//!
//! This crate encodes fermionic lattice Hamiltonian terms (hopping and
//! number operators on an N x N square lattice) into qubit Pauli operators
//! under four mappings:
//!
//! * `jw`: Jordan-Wigner, one long parity chain in row-major order.
//! * `bk`: Bravyi-Kitaev, one Fenwick tree over all N^2 modes.
//! * `hybrid`: the lattice is tiled by n x n cells, each carrying its own
//!   Fenwick tree; inter-cell parity is chained through cell roots.
//! * `hybridplus`: the hybrid mapping plus one ancilla qubit per cell and a
//!   stabilizer family that cancels long inter-cell parity chains from even
//!   operators.
//!
//! Alongside the encoders, the crate measures what the encodings cost:
//! Pauli weight of edge operators, and the number of qubits touched when
//! each operator is routed on a square-lattice architecture (Steiner trees,
//! exact via Dreyfus-Wagner or a shortest-path heuristic). A verification
//! module checks every encoder against the fermionic ladder-operator algebra
//! and against direct Fock-space action on computational basis states.
//!
//! The core is `no_std` (alloc required). IO, file formats, and the command
//! line live in the companion `latferm-cli` crate.

#![no_std]
#![deny(unsafe_code)]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod bench;
pub mod fenwick;
pub mod lattice;
pub mod mappings;
pub mod pauli;
pub mod routing;
pub mod verify;

pub use lattice::{Lattice, Pattern};
pub use mappings::{Encoder, Mapping};
pub use pauli::{PauliOperator, PauliString};

// Downstream crates read the exact rational statistics (`bench::StatRow`)
// and reuse the deterministic RNG behind `verify` sampling without
// declaring their own copies of the dependencies.
pub use num_rational;
pub use rand_chacha;
pub use rand_core;
