use super::{ladder_image, map_operator, string_with};
use crate::fermion::{FermionOperator, LadderOp};
use crate::pauli::{Pauli, PauliOperator};

/// Image of a single ladder operator: `a_j^ = (X_j - i Y_j) Z_{<j} / 2`.
pub(crate) fn jw_ladder(qubits: usize, op: LadderOp) -> PauliOperator {
    let chain = (0..op.mode).map(|q| (q, Pauli::Z));
    let x = string_with(qubits, chain.clone().chain([(op.mode, Pauli::X)]));
    let y = string_with(qubits, chain.chain([(op.mode, Pauli::Y)]));
    ladder_image(op, x, y)
}

/// Jordan-Wigner encoding on one qubit per mode.
pub fn jordan_wigner(h: &FermionOperator) -> PauliOperator {
    let qubits = h.modes();
    map_operator(h, |op| jw_ladder(qubits, op))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fermion::FermionTerm;

    #[test]
    fn number_operator_on_one_mode() {
        let h = FermionOperator::from_terms(1, [FermionTerm::one_body(1.0, 0, 0)]).unwrap();
        let p = jordan_wigner(&h);
        assert_eq!(p.render(), "0.500000 I\n-0.500000 Z\n");
    }

    #[test]
    fn hopping_between_two_modes() {
        let h = FermionOperator::from_terms(
            2,
            [FermionTerm::one_body(1.0, 0, 1), FermionTerm::one_body(1.0, 1, 0)],
        )
        .unwrap();
        let p = jordan_wigner(&h);
        assert_eq!(p.len(), 2);
        assert!((p.coefficient_of("XX").unwrap().re - 0.5).abs() < 1e-15);
        assert!((p.coefficient_of("YY").unwrap().re - 0.5).abs() < 1e-15);
    }

    #[test]
    fn creation_operator_has_z_chain_below() {
        let p = jw_ladder(3, LadderOp::create(2));
        assert!((p.coefficient_of("XZZ").unwrap().re - 0.5).abs() < 1e-15);
        assert!((p.coefficient_of("YZZ").unwrap().im + 0.5).abs() < 1e-15);
    }
}
