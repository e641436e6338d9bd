//! Gate-level lowering of Pauli rotations and Trotter term orderings.
//!
//! `exp(-i c tau P)` for a string `P` of weight `w` becomes a basis change
//! (`H` for X, `RX(+pi/2)` for Y), a CNOT ladder collecting the parity of the
//! support onto its highest qubit, `RZ(2 c tau)` there, and the mirror image.
//! That is `2 non_z + 2 (w - 1) + 1` gates; the identity string needs none.

mod ordering;

use std::f64::consts::FRAC_1_SQRT_2;
use std::fmt;

use num_complex::Complex64;

use crate::pauli::{Pauli, PauliOperator, PauliTerm};
use crate::simulator::DenseOperator;
use crate::{Error, Result};

pub use ordering::{
    best_curve, magnitude_ordering, magnitude_record, ordering_scan, random_orderings, OrderingRecord,
    ScanSettings, StepResult, PRNG_ALGORITHM,
};

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Gate {
    H(usize),
    /// `RX(+pi/2)` when `positive`, else `RX(-pi/2)`.
    Rx { qubit: usize, positive: bool },
    /// `RZ(angle) = exp(-i angle Z / 2)`.
    Rz { qubit: usize, angle: f64 },
    Cnot { control: usize, target: usize },
}

impl Gate {
    fn qubits(&self) -> Vec<usize> {
        match *self {
            Gate::H(q) | Gate::Rx { qubit: q, .. } | Gate::Rz { qubit: q, .. } => vec![q],
            Gate::Cnot { control, target } => vec![control, target],
        }
    }
}

impl fmt::Display for Gate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Gate::H(q) => write!(f, "H {}", q + 1),
            Gate::Rx { qubit, positive } => {
                write!(f, "RX {} {}pi/2", qubit + 1, if positive { '+' } else { '-' })
            }
            Gate::Rz { qubit, angle } => write!(f, "RZ {} {angle}", qubit + 1),
            Gate::Cnot { control, target } => write!(f, "CNOT {} {}", control + 1, target + 1),
        }
    }
}

/// Gates by kind.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct GateCount {
    pub h: usize,
    pub rx: usize,
    pub rz: usize,
    pub cnot: usize,
}

impl GateCount {
    pub fn total(&self) -> usize {
        self.h + self.rx + self.rz + self.cnot
    }
}

impl std::ops::AddAssign for GateCount {
    fn add_assign(&mut self, o: Self) {
        self.h += o.h;
        self.rx += o.rx;
        self.rz += o.rz;
        self.cnot += o.cnot;
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct Circuit {
    qubits: usize,
    gates: Vec<Gate>,
}

impl Circuit {
    pub fn new(qubits: usize) -> Self {
        Self {
            qubits,
            gates: Vec::new(),
        }
    }

    pub fn qubits(&self) -> usize {
        self.qubits
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    pub fn push(&mut self, gate: Gate) -> Result<()> {
        if let Some(q) = gate.qubits().into_iter().find(|&q| q >= self.qubits) {
            return Err(Error::Validation(format!(
                "gate {gate} touches qubit {} of a {}-qubit circuit",
                q + 1,
                self.qubits
            )));
        }
        match gate {
            Gate::Cnot { control, target } if control == target => {
                return Err(Error::Validation(format!("{gate} has control equal to target")));
            }
            Gate::Rz { angle, .. } if !angle.is_finite() => {
                return Err(Error::Validation(format!("{gate} has a non-finite angle")));
            }
            _ => {}
        }
        self.gates.push(gate);
        Ok(())
    }

    pub fn extend(&mut self, other: &Circuit) -> Result<()> {
        for &g in &other.gates {
            self.push(g)?;
        }
        Ok(())
    }

    pub fn count(&self) -> GateCount {
        let mut c = GateCount::default();
        for g in &self.gates {
            match g {
                Gate::H(_) => c.h += 1,
                Gate::Rx { .. } => c.rx += 1,
                Gate::Rz { .. } => c.rz += 1,
                Gate::Cnot { .. } => c.cnot += 1,
            }
        }
        c
    }

    /// `qubits <n>` followed by one gate per line.
    pub fn to_text(&self) -> String {
        let mut out = format!("qubits {}\n", self.qubits);
        for g in &self.gates {
            out.push_str(&g.to_string());
            out.push('\n');
        }
        out
    }

    /// Dense unitary, first gate applied first.
    pub fn unitary(&self) -> Result<DenseOperator> {
        if self.qubits > crate::simulator::MAX_QUBITS {
            return Err(Error::Validation(format!(
                "{} qubits exceeds the dense limit",
                self.qubits
            )));
        }
        let dim = 1usize << self.qubits;
        let mut u = DenseOperator::identity(dim, dim);
        for g in &self.gates {
            apply_gate(*g, &mut u);
        }
        Ok(u)
    }
}

fn apply_single(q: usize, m: [[Complex64; 2]; 2], u: &mut DenseOperator) {
    let bit = 1usize << q;
    for b in 0..u.nrows() {
        if b & bit != 0 {
            continue;
        }
        let r0 = u.row(b).into_owned();
        let r1 = u.row(b | bit).into_owned();
        u.set_row(b, &(&r0 * m[0][0] + &r1 * m[0][1]));
        u.set_row(b | bit, &(&r0 * m[1][0] + &r1 * m[1][1]));
    }
}

fn apply_gate(g: Gate, u: &mut DenseOperator) {
    let c = |re: f64, im: f64| Complex64::new(re, im);
    match g {
        Gate::H(q) => {
            let h = c(FRAC_1_SQRT_2, 0.0);
            apply_single(q, [[h, h], [h, -h]], u);
        }
        Gate::Rx { qubit, positive } => {
            let s = if positive { -FRAC_1_SQRT_2 } else { FRAC_1_SQRT_2 };
            let d = c(FRAC_1_SQRT_2, 0.0);
            apply_single(qubit, [[d, c(0.0, s)], [c(0.0, s), d]], u);
        }
        Gate::Rz { qubit, angle } => {
            let zero = c(0.0, 0.0);
            let m = [
                [Complex64::from_polar(1.0, -angle / 2.0), zero],
                [zero, Complex64::from_polar(1.0, angle / 2.0)],
            ];
            apply_single(qubit, m, u);
        }
        Gate::Cnot { control, target } => {
            let (cb, tb) = (1usize << control, 1usize << target);
            for b in 0..u.nrows() {
                if b & cb != 0 && b & tb == 0 {
                    u.swap_rows(b, b | tb);
                }
            }
        }
    }
}

/// Circuit for `exp(-i c scale P)` with `term = c P`, up to global phase.
pub fn compile_pauli_rotation(term: &PauliTerm, scale: f64) -> Result<Circuit> {
    if term.coefficient.im.abs() > 1e-12 {
        return Err(Error::Validation(format!(
            "cannot compile a rotation with complex coefficient {}",
            term.coefficient
        )));
    }
    let s = &term.string;
    let mut circuit = Circuit::new(s.qubits());
    let support = s.support();
    let Some(&top) = support.last() else {
        return Ok(circuit);
    };
    let mut basis = Vec::new();
    let mut undo = Vec::new();
    for &q in &support {
        match s.get(q) {
            Pauli::X => {
                basis.push(Gate::H(q));
                undo.push(Gate::H(q));
            }
            Pauli::Y => {
                basis.push(Gate::Rx { qubit: q, positive: true });
                undo.push(Gate::Rx { qubit: q, positive: false });
            }
            _ => {}
        }
    }
    let ladder: Vec<Gate> = support
        .windows(2)
        .map(|w| Gate::Cnot {
            control: w[0],
            target: w[1],
        })
        .collect();
    let rotation = Gate::Rz {
        qubit: top,
        angle: 2.0 * term.coefficient.re * scale,
    };
    for g in basis
        .into_iter()
        .chain(ladder.iter().copied())
        .chain([rotation])
        .chain(ladder.iter().rev().copied())
        .chain(undo)
    {
        circuit.push(g)?;
    }
    Ok(circuit)
}

/// Gates for one exponential of every non-identity term of `h`.
pub fn gate_count(h: &PauliOperator) -> GateCount {
    let mut total = GateCount::default();
    for (s, _) in h.iter().filter(|(s, _)| !s.is_identity()) {
        let (weight, _) = s.weight_profile();
        let ys = (s.x_mask() & s.z_mask()).count_ones() as usize;
        let xs = (s.x_mask() & !s.z_mask()).count_ones() as usize;
        total += GateCount {
            h: 2 * xs,
            rx: 2 * ys,
            rz: 1,
            cnot: 2 * (weight - 1),
        };
    }
    total
}

/// One first-order Trotter step over `terms` as a single circuit.
pub fn compile_trotter_step(terms: &[PauliTerm], scale: f64) -> Result<Circuit> {
    let qubits = terms.first().map_or(0, |t| t.string.qubits());
    let mut c = Circuit::new(qubits);
    for t in terms {
        c.extend(&compile_pauli_rotation(t, scale)?)?;
    }
    Ok(c)
}
