//! Dense state-vector and operator linear algebra for registers of up to
//! [`MAX_QUBITS`] qubits.

mod trotter;

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use num_complex::Complex64;

use crate::pauli::{PauliOperator, PauliTerm};
use crate::{Error, Result};

pub use trotter::{
    fourth_order_coefficients, pauli_exponential, trotter_energy, trotter_evolution, TrotterPlan,
};

/// Largest register turned into a dense matrix.
pub const MAX_QUBITS: usize = 12;

/// Tolerance for Hermiticity checks on dense matrices.
pub const HERMITIAN_TOLERANCE: f64 = 1e-10;

/// Residual bound `|Hv - lambda v|` every eigenpair must meet.
pub const RESIDUAL_TOLERANCE: f64 = 1e-9;

pub type DenseOperator = DMatrix<Complex64>;
pub type StateVector = DVector<Complex64>;

fn check_size(qubits: usize) -> Result<()> {
    if qubits > MAX_QUBITS {
        return Err(Error::Validation(format!(
            "{qubits} qubits exceeds the dense limit of {MAX_QUBITS}"
        )));
    }
    Ok(())
}

/// Dense matrix of `op` in the computational basis, qubit 0 least significant.
pub fn to_dense_matrix(op: &PauliOperator) -> Result<DenseOperator> {
    check_size(op.qubits())?;
    let dim = 1usize << op.qubits();
    let mut m = DenseOperator::zeros(dim, dim);
    for (s, c) in op.iter() {
        for b in 0..dim {
            let (phase, out) = s.apply_to_basis(b as u64);
            m[(out as usize, b)] += c * phase;
        }
    }
    Ok(m)
}

/// `op |state>` without forming a matrix.
pub fn apply_operator(op: &PauliOperator, state: &StateVector) -> Result<StateVector> {
    let dim = 1usize << op.qubits();
    if state.len() != dim {
        return Err(Error::Dimension {
            left: op.qubits(),
            right: state.len().trailing_zeros() as usize,
        });
    }
    let mut out = StateVector::zeros(dim);
    for (s, c) in op.iter() {
        for (b, amp) in state.iter().enumerate() {
            if amp.norm_sqr() == 0.0 {
                continue;
            }
            let (phase, target) = s.apply_to_basis(b as u64);
            out[target as usize] += c * phase * amp;
        }
    }
    Ok(out)
}

/// Matrix of a single term, handy for per-term checks.
pub fn term_matrix(term: &PauliTerm) -> Result<DenseOperator> {
    to_dense_matrix(&PauliOperator::from_term(term.clone()))
}

fn max_abs(m: &DenseOperator) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

pub fn is_hermitian(m: &DenseOperator, tol: f64) -> bool {
    m.is_square() && max_abs(&(m - m.adjoint())) <= tol
}

/// `|U^dagger U - I|` in the max norm.
pub fn unitarity_error(u: &DenseOperator) -> f64 {
    let id = DenseOperator::identity(u.nrows(), u.ncols());
    max_abs(&(u.adjoint() * u - id))
}

/// Eigenvalues ascending with matching eigenvector columns.
pub fn hermitian_eigen(m: &DenseOperator) -> Result<(Vec<f64>, DenseOperator)> {
    if !is_hermitian(m, HERMITIAN_TOLERANCE) {
        return Err(Error::Validation("matrix is not Hermitian".into()));
    }
    let eig = SymmetricEigen::new(m.clone());
    let mut order: Vec<usize> = (0..eig.eigenvalues.len()).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let values: Vec<f64> = order.iter().map(|&k| eig.eigenvalues[k]).collect();
    let vectors = DenseOperator::from_columns(
        &order.iter().map(|&k| eig.eigenvectors.column(k)).collect::<Vec<_>>(),
    );
    for (k, &lambda) in values.iter().enumerate() {
        let v = vectors.column(k);
        let residual = (m * v - v * Complex64::new(lambda, 0.0)).norm();
        if residual > RESIDUAL_TOLERANCE {
            return Err(Error::Numeric(format!(
                "eigenpair {k} has residual {residual:e}"
            )));
        }
    }
    Ok((values, vectors))
}

/// Orthonormal basis (as columns) of the `+1` eigenspace of a projector.
pub fn projector_range(p: &DenseOperator) -> Result<DenseOperator> {
    let (values, vectors) = hermitian_eigen(p)?;
    let cols: Vec<_> = values
        .iter()
        .enumerate()
        .filter(|(_, &v)| v > 0.5)
        .map(|(k, _)| vectors.column(k))
        .collect();
    if cols.is_empty() {
        return Err(Error::Validation("projector has an empty range".into()));
    }
    Ok(DenseOperator::from_columns(&cols))
}

/// `prod (1 + C) / 2` over commuting involutions `C`.
pub fn stabilizer_projector(stabilizers: &[PauliOperator], qubits: usize) -> Result<DenseOperator> {
    check_size(qubits)?;
    let dim = 1usize << qubits;
    let id = DenseOperator::identity(dim, dim);
    let mut p = id.clone();
    for c in stabilizers {
        let half = (&id + to_dense_matrix(c)?) * Complex64::new(0.5, 0.0);
        p = half * p;
    }
    Ok(p)
}

/// Spectrum of `op`, restricted to the range of `projector` when given.
pub fn spectrum(op: &PauliOperator, projector: Option<&DenseOperator>) -> Result<Vec<f64>> {
    let m = to_dense_matrix(op)?;
    match projector {
        None => Ok(hermitian_eigen(&m)?.0),
        Some(p) => {
            let basis = projector_range(p)?;
            Ok(hermitian_eigen(&(basis.adjoint() * m * &basis))?.0)
        }
    }
}

/// Lowest eigenvalue and a normalized eigenvector, optionally within the
/// range of an orthogonal projector.
pub fn ground_state(
    op: &PauliOperator,
    projector: Option<&DenseOperator>,
) -> Result<(f64, StateVector)> {
    let m = to_dense_matrix(op)?;
    let (basis, restricted) = match projector {
        None => (None, m),
        Some(p) => {
            if p.shape() != m.shape() {
                return Err(Error::Dimension {
                    left: m.nrows(),
                    right: p.nrows(),
                });
            }
            let basis = projector_range(p)?;
            let r = basis.adjoint() * &m * &basis;
            (Some(basis), r)
        }
    };
    let (values, vectors) = hermitian_eigen(&restricted)?;
    let w = vectors.column(0).into_owned();
    let state = match basis {
        Some(b) => b * w,
        None => w,
    };
    let state = state.normalize();
    Ok((values[0], state))
}

/// `<psi| op |psi>` for a normalized state.
pub fn expectation(op: &PauliOperator, state: &StateVector) -> Result<Complex64> {
    let image = apply_operator(op, state)?;
    Ok(state.dotc(&image))
}

/// `exp(-i op t)` by eigendecomposition.
pub fn exact_evolution(op: &PauliOperator, t: f64) -> Result<DenseOperator> {
    let m = to_dense_matrix(op)?;
    evolve_matrix(&m, t)
}

pub(crate) fn evolve_matrix(m: &DenseOperator, t: f64) -> Result<DenseOperator> {
    let (values, v) = hermitian_eigen(m)?;
    let phases = DVector::from_iterator(
        values.len(),
        values.iter().map(|&l| Complex64::from_polar(1.0, -l * t)),
    );
    let mut scaled = v.clone();
    for (k, mut col) in scaled.column_iter_mut().enumerate() {
        col *= phases[k];
    }
    Ok(scaled * v.adjoint())
}
