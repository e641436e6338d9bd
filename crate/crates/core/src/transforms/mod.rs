//! Fermion-to-qubit encodings.
//!
//! [`jordan_wigner`] and [`bravyi_kitaev`] put one qubit on each mode and map
//! every ladder operator to a Pauli sum. The superfast encoding instead puts
//! one qubit on each edge of the interaction graph ([`build_mode_graph`]) and
//! maps whole Hamiltonian terms through the edge operators `A_ij` and `B_i`.

mod bksf;
mod bravyi_kitaev;
mod graph;
mod jordan_wigner;
mod stabilizers;

pub use bksf::bksf_transform;
pub use bravyi_kitaev::{bravyi_kitaev, FenwickTree};
pub use graph::{build_mode_graph, edge_operators, EdgeOperators, ModeGraph};
pub use jordan_wigner::jordan_wigner;
pub use stabilizers::{cycle_basis, loop_stabilizer, stabilizers, vacuum_state, Loop, StabilizerSet};

use num_complex::Complex64;

use crate::fermion::{FermionOperator, LadderOp};
use crate::pauli::{Pauli, PauliOperator, PauliString, PauliTerm};
use crate::DEFAULT_TOLERANCE;

/// `(X_x Z_zx -/+ i Y_y Z_zy) / 2` style image of one ladder operator, built
/// from the two Majorana strings `c = x-part` and `d = y-part`.
fn ladder_image(op: LadderOp, majorana_x: PauliString, majorana_y: PauliString) -> PauliOperator {
    let qubits = majorana_x.qubits();
    let sign = if op.dagger { -0.5 } else { 0.5 };
    PauliOperator::from_terms(
        qubits,
        [
            PauliTerm::real(0.5, majorana_x),
            PauliTerm::new(Complex64::new(0.0, sign), majorana_y),
        ],
    )
    .expect("strings share a register")
}

fn string_with(qubits: usize, letters: impl IntoIterator<Item = (usize, Pauli)>) -> PauliString {
    PauliString::from_letters(qubits, letters)
}

/// Maps every ladder operator with `image` and expands the products.
fn map_operator(h: &FermionOperator, image: impl Fn(LadderOp) -> PauliOperator) -> PauliOperator {
    let qubits = h.modes();
    let mut out = PauliOperator::zero(qubits);
    for term in h.terms() {
        let mut product = PauliOperator::identity(qubits);
        for &f in &term.factors {
            product = &product * &image(f);
        }
        out += &product.scale(term.coefficient);
    }
    out.canonicalize(DEFAULT_TOLERANCE)
}
