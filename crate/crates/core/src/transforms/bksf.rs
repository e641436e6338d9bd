use std::collections::BTreeMap;

use num_complex::Complex64;

use super::graph::{edge_operators, EdgeOperators, ModeGraph};
use crate::fermion::{classify_operator, FermionOperator, Template};
use crate::pauli::PauliOperator;
use crate::{Error, Result, DEFAULT_TOLERANCE};

struct Images<'a> {
    ops: &'a EdgeOperators,
    one: PauliOperator,
}

impl Images<'_> {
    fn b(&self, i: usize) -> &PauliOperator {
        self.ops.b(i)
    }

    fn a(&self, i: usize, j: usize) -> Result<&PauliOperator> {
        self.ops.a(i, j)
    }

    /// `(1 - B_i) / 2`
    fn number(&self, i: usize) -> PauliOperator {
        (&self.one - self.b(i)).scale(0.5)
    }

    /// `(-i/2) (A_ij B_j + B_i A_ij)`
    fn excitation(&self, i: usize, j: usize) -> Result<PauliOperator> {
        let a = self.a(i, j)?;
        Ok((&(a * self.b(j)) + &(self.b(i) * a)).scale(Complex64::new(0.0, -0.5)))
    }

    /// The double-excitation template drops `-(1/4) A_ij A_kl B_i B_j B_k B_l`
    /// per term. On the code space `A_ij A_kl = sign(ijkl) A_pq A_rs` for the
    /// sorted quartet `pqrs`, so the dropped pieces of all terms on one quartet
    /// sum to `w` times this operator, with `w = sum c sign(ijkl)`. For
    /// antisymmetric two-body coefficients `w = 0`.
    fn quartet_correction(&self, quartet: [usize; 4], rep: [usize; 4]) -> Result<PauliOperator> {
        let [i, j, k, l] = rep;
        let mut b = self.one.clone();
        for v in quartet {
            b = &b * self.b(v);
        }
        let aa = self.a(i, j)? * self.a(k, l)?;
        Ok((&aa * &b).scale(-0.25 * permutation_sign(rep)))
    }

    fn template(&self, t: Template) -> Result<PauliOperator> {
        Ok(match t {
            Template::Number { i } => self.number(i),
            Template::CoulombExchange { i, j } => &self.number(i) * &self.number(j),
            Template::Excitation { i, j } => self.excitation(i, j)?,
            Template::NumberExcitation { i, j, k } => &self.excitation(i, k)? * &self.number(j),
            Template::DoubleExcitation { i, j, k, l } => {
                let (bi, bj, bk, bl) = (self.b(i), self.b(j), self.b(k), self.b(l));
                let mut sum = -&self.one;
                sum = &sum - &(bi * bj);
                sum = &sum + &(bi * bk);
                sum = &sum + &(bi * bl);
                sum = &sum + &(bj * bk);
                sum = &sum + &(bj * bl);
                sum = &sum - &(bk * bl);
                sum = &sum + &(&(bi * bj) * &(bk * bl));
                (&(self.a(i, j)? * self.a(k, l)?) * &sum).scale(0.125)
            }
            Template::PairCreation { i, j } => {
                let a = self.a(i, j)?;
                (&(a * self.b(j)) - &(self.b(i) * a)).scale(Complex64::new(0.0, -0.5))
            }
        })
    }
}

/// Bravyi-Kitaev superfast encoding of `h` on the edge qubits of `g`.
///
/// Every term must fall into one of the [`Template`] families; odd or
/// unrecognized products are rejected.
pub fn bksf_transform(h: &FermionOperator, g: &ModeGraph) -> Result<PauliOperator> {
    if g.vertices() != h.modes() {
        return Err(Error::Graph(format!(
            "graph has {} vertices but the operator acts on {} modes",
            g.vertices(),
            h.modes()
        )));
    }
    let classes = classify_operator(h)?;
    let ops = edge_operators(g)?;
    let n = g.qubits();
    let images = Images {
        ops: &ops,
        one: PauliOperator::identity(n),
    };
    let mut out = PauliOperator::scalar(n, classes.constant);
    let mut quartets: BTreeMap<[usize; 4], (f64, [usize; 4])> = BTreeMap::new();
    for t in &classes.terms {
        out += &images.template(t.template)?.scale(t.coefficient);
        if let Template::DoubleExcitation { i, j, k, l } = t.template {
            let idx = [i, j, k, l];
            let mut key = idx;
            key.sort_unstable();
            let entry = quartets.entry(key).or_insert((0.0, idx));
            entry.0 += t.coefficient * permutation_sign(idx);
        }
    }
    for (key, (w, rep)) in quartets {
        if w.abs() > DEFAULT_TOLERANCE {
            out += &images.quartet_correction(key, rep)?.scale(w);
        }
    }
    Ok(out.canonicalize(DEFAULT_TOLERANCE))
}

/// Sign of the permutation sorting four distinct indices.
fn permutation_sign(mut v: [usize; 4]) -> f64 {
    let mut sign = 1.0;
    for a in 0..4 {
        for b in 0..3 - a {
            if v[b] > v[b + 1] {
                v.swap(b, b + 1);
                sign = -sign;
            }
        }
    }
    sign
}
