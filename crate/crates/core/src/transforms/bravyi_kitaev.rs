use std::collections::BTreeSet;

use super::{ladder_image, map_operator, string_with};
use crate::fermion::{FermionOperator, LadderOp};
use crate::pauli::{Pauli, PauliOperator};

/// Binary indexed tree over modes `0..modes`.
///
/// Qubit `j` stores the parity of the modes in the tree range ending at `j`.
/// All index sets are 0-based; internally the usual 1-based arithmetic with
/// `lowbit(k) = k & -k` is used.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FenwickTree {
    modes: usize,
}

fn lowbit(k: usize) -> usize {
    k & k.wrapping_neg()
}

impl FenwickTree {
    pub fn new(modes: usize) -> Self {
        Self { modes }
    }

    pub fn modes(&self) -> usize {
        self.modes
    }

    /// Modes whose occupation parity qubit `j` stores.
    pub fn stored_modes(&self, j: usize) -> Vec<usize> {
        let k = j + 1;
        (k - lowbit(k)..k).collect()
    }

    /// Qubits other than `j` that must flip when mode `j` changes.
    pub fn update_set(&self, j: usize) -> Vec<usize> {
        let mut out = Vec::new();
        let mut k = j + 1;
        k += lowbit(k);
        while k <= self.modes {
            out.push(k - 1);
            k += lowbit(k);
        }
        out
    }

    /// Qubits whose combined parity equals the parity of modes `0..j`.
    pub fn parity_set(&self, j: usize) -> Vec<usize> {
        let mut out = Vec::new();
        let mut k = j;
        while k > 0 {
            out.push(k - 1);
            k -= lowbit(k);
        }
        out.sort_unstable();
        out
    }

    /// Qubits whose combined parity, together with qubit `j`, gives the
    /// occupation of mode `j`.
    pub fn flip_set(&self, j: usize) -> Vec<usize> {
        let top = j + 1;
        let floor = top - lowbit(top);
        let mut out = Vec::new();
        let mut k = j;
        while k > floor {
            out.push(k - 1);
            k -= lowbit(k);
        }
        out.sort_unstable();
        out
    }

    /// Parity set minus flip set.
    pub fn remainder_set(&self, j: usize) -> Vec<usize> {
        let flip: BTreeSet<_> = self.flip_set(j).into_iter().collect();
        self.parity_set(j)
            .into_iter()
            .filter(|q| !flip.contains(q))
            .collect()
    }

    /// `a_j^ = (X_U X_j Z_P - i X_U Y_j Z_R) / 2`.
    pub fn ladder(&self, op: LadderOp) -> PauliOperator {
        let j = op.mode;
        let update = self.update_set(j);
        let ups = update.iter().map(|&q| (q, Pauli::X));
        let x = string_with(
            self.modes,
            ups.clone()
                .chain(self.parity_set(j).into_iter().map(|q| (q, Pauli::Z)))
                .chain([(j, Pauli::X)]),
        );
        let y = string_with(
            self.modes,
            ups.chain(self.remainder_set(j).into_iter().map(|q| (q, Pauli::Z)))
                .chain([(j, Pauli::Y)]),
        );
        ladder_image(op, x, y)
    }
}

/// Bravyi-Kitaev encoding on one qubit per mode.
pub fn bravyi_kitaev(h: &FermionOperator) -> PauliOperator {
    let tree = FenwickTree::new(h.modes());
    map_operator(h, |op| tree.ladder(op))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fermion::FermionTerm;

    #[test]
    fn four_mode_sets() {
        let t = FenwickTree::new(4);
        assert_eq!(t.stored_modes(0), vec![0]);
        assert_eq!(t.stored_modes(1), vec![0, 1]);
        assert_eq!(t.stored_modes(2), vec![2]);
        assert_eq!(t.stored_modes(3), vec![0, 1, 2, 3]);
        assert_eq!(t.update_set(0), vec![1, 3]);
        assert_eq!(t.update_set(2), vec![3]);
        assert_eq!(t.parity_set(3), vec![1, 2]);
        assert_eq!(t.flip_set(3), vec![1, 2]);
        assert_eq!(t.flip_set(1), vec![0]);
        assert_eq!(t.remainder_set(2), vec![1]);
        assert!(t.remainder_set(3).is_empty());
    }

    #[test]
    fn single_mode_matches_jordan_wigner() {
        let h = FermionOperator::from_terms(1, [FermionTerm::one_body(1.0, 0, 0)]).unwrap();
        assert_eq!(bravyi_kitaev(&h), super::super::jordan_wigner(&h));
    }

    #[test]
    fn number_operator_on_mode_two_of_two() {
        let h = FermionOperator::from_terms(2, [FermionTerm::one_body(1.0, 1, 1)]).unwrap();
        let p = bravyi_kitaev(&h);
        // qubit 2 holds n1 + n2, so n2 = (1 - Z2 Z1) / 2
        assert!((p.coefficient_of("II").unwrap().re - 0.5).abs() < 1e-15);
        assert!((p.coefficient_of("ZZ").unwrap().re + 0.5).abs() < 1e-15);
        assert_eq!(p.len(), 2);
    }
}
