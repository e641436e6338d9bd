use nalgebra::Schur;
use num_complex::Complex64;

use super::{evolve_matrix, to_dense_matrix, DenseOperator, StateVector};
use crate::pauli::{PauliOperator, PauliTerm};
use crate::{Error, Result};

/// Eigenvalues of a Trotter unitary closer than this are one level.
const CLUSTER_TOLERANCE: f64 = 1e-9;
/// Overlap weights closer than this make ground-level selection ambiguous.
const OVERLAP_TIE_TOLERANCE: f64 = 1e-9;

/// Product-formula approximation of `exp(-i H t)` with `H = sum terms`.
///
/// Orders 1 and 2 exponentiate the terms one at a time in list order. Orders
/// 3 and 4 use two-operand formulas on `partition = (A, S)`, which
/// [`TrotterPlan::new`] fills with the Z-only terms and the rest.
#[derive(Debug, Clone)]
pub struct TrotterPlan {
    pub terms: Vec<PauliTerm>,
    pub order: u8,
    pub steps: usize,
    pub time: f64,
    pub partition: Option<(PauliOperator, PauliOperator)>,
}

impl TrotterPlan {
    pub fn new(terms: Vec<PauliTerm>, order: u8, steps: usize, time: f64) -> Result<Self> {
        if !(1..=4).contains(&order) {
            return Err(Error::Validation(format!("Trotter order {order} is not in 1..=4")));
        }
        if steps == 0 {
            return Err(Error::Validation("Trotter steps must be positive".into()));
        }
        if !time.is_finite() {
            return Err(Error::Validation("evolution time must be finite".into()));
        }
        let Some(qubits) = terms.first().map(|t| t.string.qubits()) else {
            return Err(Error::Validation("Trotter plan needs at least one term".into()));
        };
        for t in &terms {
            if t.string.qubits() != qubits {
                return Err(Error::Dimension {
                    left: qubits,
                    right: t.string.qubits(),
                });
            }
            if t.coefficient.im.abs() > 1e-12 {
                return Err(Error::Validation(format!("term {t} has a complex coefficient")));
            }
        }
        let partition = if order >= 3 {
            let (z, rest): (Vec<_>, Vec<_>) = terms.iter().cloned().partition(|t| t.string.is_z_only());
            Some((
                PauliOperator::from_terms(qubits, z)?,
                PauliOperator::from_terms(qubits, rest)?,
            ))
        } else {
            None
        };
        Ok(Self {
            terms,
            order,
            steps,
            time,
            partition,
        })
    }

    pub fn qubits(&self) -> usize {
        self.terms[0].string.qubits()
    }

    pub fn step_size(&self) -> f64 {
        self.time / self.steps as f64
    }
}

/// `p_1 .. p_5` of the fourth-order formula.
pub fn fourth_order_coefficients() -> [f64; 5] {
    let p = 1.0 / (4.0 - 4f64.powf(1.0 / 3.0));
    [p, p, 1.0 - 4.0 * p, p, p]
}

/// `exp(-i c tau P) = cos(c tau) I - i sin(c tau) P` as a matrix.
pub fn pauli_exponential(term: &PauliTerm, tau: f64) -> Result<DenseOperator> {
    let dim = 1usize << term.string.qubits();
    let mut m = DenseOperator::identity(dim, dim);
    apply_exponential(term, tau, &mut m);
    Ok(m)
}

/// `m <- exp(-i c tau P) m` in `O(dim^2)`.
fn apply_exponential(term: &PauliTerm, tau: f64, m: &mut DenseOperator) {
    let theta = term.coefficient.re * tau;
    let (s, c) = theta.sin_cos();
    let dim = m.nrows();
    let mut rotated = DenseOperator::zeros(dim, m.ncols());
    for b in 0..dim {
        let (phase, out) = term.string.apply_to_basis(b as u64);
        let factor = Complex64::new(0.0, -s) * phase;
        let row = m.row(b) * factor;
        rotated.set_row(out as usize, &row);
    }
    *m *= Complex64::new(c, 0.0);
    *m += rotated;
}

fn matrix_power(step: &DenseOperator, n: usize) -> DenseOperator {
    let mut result = DenseOperator::identity(step.nrows(), step.ncols());
    let mut base = step.clone();
    let mut k = n;
    while k > 0 {
        if k & 1 == 1 {
            result = &result * &base;
        }
        k >>= 1;
        if k > 0 {
            base = &base * &base;
        }
    }
    result
}

/// The unitary of `plan`.
pub fn trotter_evolution(plan: &TrotterPlan) -> Result<DenseOperator> {
    if !(1..=4).contains(&plan.order) {
        return Err(Error::Validation(format!("Trotter order {} is not in 1..=4", plan.order)));
    }
    if plan.steps == 0 || plan.terms.is_empty() {
        return Err(Error::Validation("plan needs terms and a positive step count".into()));
    }
    super::check_size(plan.qubits())?;
    let dim = 1usize << plan.qubits();
    let delta = plan.step_size();
    let step = match plan.order {
        1 => {
            let mut u = DenseOperator::identity(dim, dim);
            for t in &plan.terms {
                apply_exponential(t, delta, &mut u);
            }
            u
        }
        2 => {
            let mut u = DenseOperator::identity(dim, dim);
            for t in plan.terms.iter().chain(plan.terms.iter().rev()) {
                apply_exponential(t, delta / 2.0, &mut u);
            }
            u
        }
        order => {
            let (a, s) = plan.partition.as_ref().ok_or_else(|| {
                Error::Validation(format!("order {order} needs an (A, S) bipartition"))
            })?;
            let a = to_dense_matrix(a)?;
            let s = to_dense_matrix(s)?;
            let factors: Vec<(f64, bool)> = if order == 3 {
                vec![
                    (7.0 / 24.0, true),
                    (2.0 / 3.0, false),
                    (3.0 / 4.0, true),
                    (-2.0 / 3.0, false),
                    (-1.0 / 24.0, true),
                    (1.0, false),
                ]
            } else {
                fourth_order_coefficients()
                    .iter()
                    .flat_map(|&p| [(p / 2.0, true), (p, false), (p / 2.0, true)])
                    .collect()
            };
            let mut u = DenseOperator::identity(dim, dim);
            for (w, is_a) in factors {
                let e = evolve_matrix(if is_a { &a } else { &s }, w * delta)?;
                u = &u * &e;
            }
            u
        }
    };
    Ok(matrix_power(&step, plan.steps))
}

/// Energy of the eigenphase of `u` whose eigenspace overlaps `reference`
/// the most: `-arg(lambda) / t`.
pub fn trotter_energy(u: &DenseOperator, t: f64, reference: &StateVector) -> Result<f64> {
    if t <= 0.0 {
        return Err(Error::Validation("evolution time must be positive".into()));
    }
    if u.nrows() != reference.len() || !u.is_square() {
        return Err(Error::Dimension {
            left: u.nrows(),
            right: reference.len(),
        });
    }
    let schur = Schur::try_new(u.clone(), 1e-15, 10_000)
        .ok_or_else(|| Error::Numeric("Schur decomposition did not converge".into()))?;
    let (q, tri) = schur.unpack();
    let dim = u.nrows();

    // (representative eigenvalue, overlap weight)
    let mut clusters: Vec<(Complex64, f64)> = Vec::new();
    for k in 0..dim {
        let lambda = tri[(k, k)];
        let weight = q.column(k).dotc(reference).norm_sqr();
        match clusters
            .iter_mut()
            .find(|(l, _)| (*l - lambda).norm() < CLUSTER_TOLERANCE)
        {
            Some(c) => c.1 += weight,
            None => clusters.push((lambda, weight)),
        }
    }
    clusters.sort_by(|a, b| b.1.total_cmp(&a.1));
    if clusters.len() > 1 && clusters[0].1 - clusters[1].1 < OVERLAP_TIE_TOLERANCE {
        return Err(Error::Numeric(format!(
            "reference overlaps two eigenphases equally ({:.3e} vs {:.3e})",
            clusters[0].1, clusters[1].1
        )));
    }
    Ok(-clusters[0].0.arg() / t)
}
