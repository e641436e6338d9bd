#![allow(dead_code)]

use fermap_core::data::H2_STO3G;
use fermap_core::fermion::{build_molecular_hamiltonian, parse_integral_file, FermionOperator};
use fermap_core::pauli::PauliOperator;
use nalgebra::DMatrix;
use num_complex::Complex64;

pub type Matrix = DMatrix<Complex64>;

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn letter_matrix(l: char) -> Matrix {
    let (o, z) = (c(1.0, 0.0), c(0.0, 0.0));
    let entries = match l {
        'I' => [o, z, z, o],
        'X' => [z, o, o, z],
        'Y' => [z, c(0.0, -1.0), c(0.0, 1.0), z],
        'Z' => [o, z, z, -o],
        _ => panic!("bad letter {l}"),
    };
    Matrix::from_row_slice(2, 2, &entries)
}

/// Kronecker product of the letters, leftmost letter on the most
/// significant bit.
pub fn kron_letters(letters: &str) -> Matrix {
    letters
        .chars()
        .fold(Matrix::identity(1, 1), |acc, l| acc.kronecker(&letter_matrix(l)))
}

pub fn kron_operator(op: &PauliOperator) -> Matrix {
    let dim = 1usize << op.qubits();
    let mut m = Matrix::zeros(dim, dim);
    for (s, coeff) in op.iter() {
        m += kron_letters(&s.letters()) * *coeff;
    }
    m
}

pub fn max_abs(m: &Matrix) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

pub fn h2() -> FermionOperator {
    build_molecular_hamiltonian(&parse_integral_file(H2_STO3G).unwrap()).unwrap()
}

/// Sorted eigenvalues of a Hermitian matrix.
pub fn eigenvalues(m: &Matrix) -> Vec<f64> {
    let mut v: Vec<f64> = m.clone().symmetric_eigenvalues().iter().copied().collect();
    v.sort_by(f64::total_cmp);
    v
}

/// `u` equals `v` up to a global phase.
pub fn equal_up_to_phase(u: &Matrix, v: &Matrix, tol: f64) -> bool {
    let (idx, _) = v
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.norm().total_cmp(&b.1.norm()))
        .unwrap();
    let phase = u.as_slice()[idx] / v.as_slice()[idx];
    (phase.norm() - 1.0).abs() < tol && max_abs(&(u - v * phase)) < tol
}
