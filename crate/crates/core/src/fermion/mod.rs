//! Second-quantized operators, molecular integral files and the electronic
//! Hamiltonian built from them.

mod classify;
mod hamiltonian;
mod molint;

use std::collections::BTreeMap;
use std::fmt;

pub use classify::{
    classify_operator, classify_term, Classification, ClassifiedTerm, OperatorClass, Template,
};
pub use hamiltonian::build_molecular_hamiltonian;
pub use molint::{parse_integral_file, IntegralTable};

use crate::{Error, Result};

/// Creation (`dagger`) or annihilation operator on a 0-based mode.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LadderOp {
    pub mode: usize,
    pub dagger: bool,
}

impl LadderOp {
    pub fn create(mode: usize) -> Self {
        Self { mode, dagger: true }
    }

    pub fn annihilate(mode: usize) -> Self {
        Self { mode, dagger: false }
    }

    pub fn adjoint(self) -> Self {
        Self {
            mode: self.mode,
            dagger: !self.dagger,
        }
    }
}

impl fmt::Display for LadderOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.dagger {
            write!(f, "a{}^", self.mode + 1)
        } else {
            write!(f, "a{}", self.mode + 1)
        }
    }
}

/// Real coefficient times an ordered product of ladder operators.
#[derive(Debug, Clone, PartialEq)]
pub struct FermionTerm {
    pub coefficient: f64,
    pub factors: Vec<LadderOp>,
}

impl FermionTerm {
    pub fn new(coefficient: f64, factors: Vec<LadderOp>) -> Self {
        Self {
            coefficient,
            factors,
        }
    }

    /// `c a_i^ a_j` (0-based modes).
    pub fn one_body(coefficient: f64, i: usize, j: usize) -> Self {
        Self::new(coefficient, vec![LadderOp::create(i), LadderOp::annihilate(j)])
    }

    /// `c a_i^ a_j^ a_k a_l` (0-based modes).
    pub fn two_body(coefficient: f64, i: usize, j: usize, k: usize, l: usize) -> Self {
        Self::new(
            coefficient,
            vec![
                LadderOp::create(i),
                LadderOp::create(j),
                LadderOp::annihilate(k),
                LadderOp::annihilate(l),
            ],
        )
    }

    pub fn adjoint(&self) -> Self {
        Self {
            coefficient: self.coefficient,
            factors: self.factors.iter().rev().map(|f| f.adjoint()).collect(),
        }
    }

    /// All creation operators precede all annihilation operators.
    pub fn is_normal_ordered(&self) -> bool {
        let first_annihilator = self
            .factors
            .iter()
            .position(|f| !f.dagger)
            .unwrap_or(self.factors.len());
        self.factors[first_annihilator..].iter().all(|f| !f.dagger)
    }

    /// Rewrites a normal-ordered product with creation and annihilation
    /// indices each sorted ascending, tracking the permutation sign. Returns
    /// `None` when a mode repeats within either group (the product vanishes).
    pub fn sorted_normal_order(&self) -> Result<Option<Self>> {
        if !self.is_normal_ordered() {
            return Err(Error::Unsupported {
                term: self.to_string(),
                reason: "product is not normal ordered".into(),
            });
        }
        let split = self.factors.iter().position(|f| !f.dagger).unwrap_or(self.factors.len());
        let (mut creators, mut annihilators): (Vec<usize>, Vec<usize>) = (
            self.factors[..split].iter().map(|f| f.mode).collect(),
            self.factors[split..].iter().map(|f| f.mode).collect(),
        );
        let mut sign = self.coefficient;
        for group in [&mut creators, &mut annihilators] {
            if sort_with_parity(group) {
                sign = -sign;
            }
            if group.windows(2).any(|w| w[0] == w[1]) {
                return Ok(None);
            }
        }
        let factors = creators
            .into_iter()
            .map(LadderOp::create)
            .chain(annihilators.into_iter().map(LadderOp::annihilate))
            .collect();
        Ok(Some(Self::new(sign, factors)))
    }

    pub fn max_mode(&self) -> Option<usize> {
        self.factors.iter().map(|f| f.mode).max()
    }
}

/// Insertion sort returning true for an odd permutation.
fn sort_with_parity(v: &mut [usize]) -> bool {
    let mut odd = false;
    for i in 1..v.len() {
        let mut j = i;
        while j > 0 && v[j - 1] > v[j] {
            v.swap(j - 1, j);
            odd = !odd;
            j -= 1;
        }
    }
    odd
}

impl fmt::Display for FermionTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.coefficient)?;
        for op in &self.factors {
            write!(f, " {op}")?;
        }
        Ok(())
    }
}

/// Sum of [`FermionTerm`]s on `modes` modes. Identical factor sequences merge.
#[derive(Debug, Clone, PartialEq)]
pub struct FermionOperator {
    modes: usize,
    terms: BTreeMap<Vec<LadderOp>, f64>,
}

impl FermionOperator {
    pub fn new(modes: usize) -> Self {
        Self {
            modes,
            terms: BTreeMap::new(),
        }
    }

    pub fn from_terms<I: IntoIterator<Item = FermionTerm>>(modes: usize, terms: I) -> Result<Self> {
        let mut op = Self::new(modes);
        for t in terms {
            op.add_term(t)?;
        }
        Ok(op)
    }

    pub fn modes(&self) -> usize {
        self.modes
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, term: FermionTerm) -> Result<()> {
        if let Some(m) = term.max_mode() {
            if m >= self.modes {
                return Err(Error::Validation(format!(
                    "term {term} acts on mode {} of a {}-mode operator",
                    m + 1,
                    self.modes
                )));
            }
        }
        *self.terms.entry(term.factors).or_insert(0.0) += term.coefficient;
        Ok(())
    }

    pub fn terms(&self) -> impl Iterator<Item = FermionTerm> + '_ {
        self.terms
            .iter()
            .map(|(f, c)| FermionTerm::new(*c, f.clone()))
    }

    /// Constant part (the empty product).
    pub fn constant(&self) -> f64 {
        self.terms.get(&Vec::new()).copied().unwrap_or(0.0)
    }

    pub fn adjoint(&self) -> Self {
        let mut out = Self::new(self.modes);
        for t in self.terms() {
            out.add_term(t.adjoint()).expect("adjoint keeps mode range");
        }
        out
    }

    /// Every term rewritten by [`FermionTerm::sorted_normal_order`], like
    /// terms merged and terms with `|c| <= tol` dropped.
    pub fn sorted_normal_order(&self, tol: f64) -> Result<Self> {
        let mut out = Self::new(self.modes);
        for t in self.terms() {
            if let Some(s) = t.sorted_normal_order()? {
                out.add_term(s)?;
            }
        }
        out.terms.retain(|_, c| c.abs() > tol);
        Ok(out)
    }

    /// `H == H^dagger` after both are brought to sorted normal order.
    pub fn is_hermitian(&self, tol: f64) -> Result<bool> {
        let lhs = self.sorted_normal_order(tol)?;
        let rhs = self.adjoint().sorted_normal_order(tol)?;
        let keys: std::collections::BTreeSet<_> = lhs.terms.keys().chain(rhs.terms.keys()).collect();
        let same = keys.into_iter().all(|k| {
            let a = lhs.terms.get(k).copied().unwrap_or(0.0);
            let b = rhs.terms.get(k).copied().unwrap_or(0.0);
            (a - b).abs() <= tol.max(1e-12)
        });
        Ok(same)
    }
}

impl fmt::Display for FermionOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for t in self.terms() {
            writeln!(f, "{t}")?;
        }
        Ok(())
    }
}
