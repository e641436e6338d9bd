//! Pauli strings and weighted sums of them.
//!
//! A string on `n` qubits is stored as two bit masks, `x` and `z`, with the
//! letter on qubit `k` given by `(x_k, z_k)`: `I = (0,0)`, `X = (1,0)`,
//! `Z = (0,1)` and `Y = (1,1)`. As an operator the string equals
//! `i^{|x & z|} X^x Z^z`, which makes products a couple of popcounts.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};
use std::str::FromStr;

use num_complex::Complex64;

use crate::{Error, Result, DEFAULT_TOLERANCE};

/// Largest register a [`PauliString`] can describe.
pub const MAX_STRING_QUBITS: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Pauli {
    I,
    X,
    Y,
    Z,
}

impl Pauli {
    fn bits(self) -> (bool, bool) {
        match self {
            Pauli::I => (false, false),
            Pauli::X => (true, false),
            Pauli::Y => (true, true),
            Pauli::Z => (false, true),
        }
    }

    fn from_bits(x: bool, z: bool) -> Self {
        match (x, z) {
            (false, false) => Pauli::I,
            (true, false) => Pauli::X,
            (true, true) => Pauli::Y,
            (false, true) => Pauli::Z,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Pauli::I => 'I',
            Pauli::X => 'X',
            Pauli::Y => 'Y',
            Pauli::Z => 'Z',
        }
    }

    pub fn from_char(c: char) -> Option<Self> {
        match c.to_ascii_uppercase() {
            'I' => Some(Pauli::I),
            'X' => Some(Pauli::X),
            'Y' => Some(Pauli::Y),
            'Z' => Some(Pauli::Z),
            _ => None,
        }
    }
}

/// A power of `i`: `i^0 = 1`, `i^1 = i`, `i^2 = -1`, `i^3 = -i`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Phase(u8);

impl Phase {
    pub const ONE: Phase = Phase(0);
    pub const I: Phase = Phase(1);
    pub const MINUS_ONE: Phase = Phase(2);
    pub const MINUS_I: Phase = Phase(3);

    pub fn from_power(power: i64) -> Self {
        Phase(power.rem_euclid(4) as u8)
    }

    pub fn power(self) -> u8 {
        self.0
    }

    pub fn to_complex(self) -> Complex64 {
        match self.0 {
            0 => Complex64::new(1.0, 0.0),
            1 => Complex64::new(0.0, 1.0),
            2 => Complex64::new(-1.0, 0.0),
            _ => Complex64::new(0.0, -1.0),
        }
    }
}

impl Mul for Phase {
    type Output = Phase;
    fn mul(self, rhs: Phase) -> Phase {
        Phase((self.0 + rhs.0) % 4)
    }
}

/// Tensor product of single-qubit Pauli letters on a fixed register.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PauliString {
    qubits: usize,
    x: u64,
    z: u64,
}

impl PauliString {
    pub fn identity(qubits: usize) -> Self {
        assert!(
            qubits <= MAX_STRING_QUBITS,
            "Pauli strings support at most {MAX_STRING_QUBITS} qubits"
        );
        Self { qubits, x: 0, z: 0 }
    }

    /// One non-identity letter on qubit `qubit` (0-based).
    pub fn single(qubits: usize, qubit: usize, letter: Pauli) -> Self {
        let mut s = Self::identity(qubits);
        s.set(qubit, letter);
        s
    }

    /// Builds a string from `(qubit, letter)` pairs; later pairs overwrite earlier ones.
    pub fn from_letters<I: IntoIterator<Item = (usize, Pauli)>>(qubits: usize, letters: I) -> Self {
        let mut s = Self::identity(qubits);
        for (q, p) in letters {
            s.set(q, p);
        }
        s
    }

    /// Z on every listed qubit.
    pub fn z_on<I: IntoIterator<Item = usize>>(qubits: usize, support: I) -> Self {
        Self::from_letters(qubits, support.into_iter().map(|q| (q, Pauli::Z)))
    }

    pub(crate) fn from_masks(qubits: usize, x: u64, z: u64) -> Self {
        Self { qubits, x, z }
    }

    pub fn qubits(&self) -> usize {
        self.qubits
    }

    pub fn x_mask(&self) -> u64 {
        self.x
    }

    pub fn z_mask(&self) -> u64 {
        self.z
    }

    pub fn get(&self, qubit: usize) -> Pauli {
        assert!(qubit < self.qubits, "qubit {qubit} outside register of {}", self.qubits);
        Pauli::from_bits(self.x >> qubit & 1 == 1, self.z >> qubit & 1 == 1)
    }

    pub fn set(&mut self, qubit: usize, letter: Pauli) {
        assert!(qubit < self.qubits, "qubit {qubit} outside register of {}", self.qubits);
        let (x, z) = letter.bits();
        let bit = 1u64 << qubit;
        self.x = if x { self.x | bit } else { self.x & !bit };
        self.z = if z { self.z | bit } else { self.z & !bit };
    }

    pub fn is_identity(&self) -> bool {
        self.x == 0 && self.z == 0
    }

    /// True when no letter is X or Y.
    pub fn is_z_only(&self) -> bool {
        self.x == 0
    }

    /// Qubits carrying a non-identity letter, ascending.
    pub fn support(&self) -> Vec<usize> {
        let mask = self.x | self.z;
        (0..self.qubits).filter(|q| mask >> q & 1 == 1).collect()
    }

    /// `(weight, non_z)`: count of non-identity letters and of X/Y letters.
    pub fn weight_profile(&self) -> (usize, usize) {
        ((self.x | self.z).count_ones() as usize, self.x.count_ones() as usize)
    }

    fn y_count(&self) -> i64 {
        (self.x & self.z).count_ones() as i64
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.qubits != other.qubits {
            return Err(Error::Dimension {
                left: self.qubits,
                right: other.qubits,
            });
        }
        Ok(())
    }

    /// Matrix product `self * other = phase * product`.
    pub fn multiply(&self, other: &Self) -> Result<(Phase, PauliString)> {
        self.check_same(other)?;
        let x = self.x ^ other.x;
        let z = self.z ^ other.z;
        let product = PauliString::from_masks(self.qubits, x, z);
        let swaps = (self.z & other.x).count_ones() as i64;
        let power = self.y_count() + other.y_count() + 2 * swaps - product.y_count();
        Ok((Phase::from_power(power), product))
    }

    pub fn commutes(&self, other: &Self) -> Result<bool> {
        self.check_same(other)?;
        let anti = ((self.x & other.z) ^ (self.z & other.x)).count_ones();
        Ok(anti % 2 == 0)
    }

    /// Action on a computational basis label: `self |b> = phase |b'>`.
    pub fn apply_to_basis(&self, basis: u64) -> (Complex64, u64) {
        let mut power = self.y_count();
        if (self.z & basis).count_ones() % 2 == 1 {
            power += 2;
        }
        (Phase::from_power(power).to_complex(), basis ^ self.x)
    }

    /// Letters from the highest qubit down to qubit 0, the order used in text.
    pub fn letters(&self) -> String {
        (0..self.qubits).rev().map(|q| self.get(q).as_char()).collect()
    }
}

impl Ord for PauliString {
    fn cmp(&self, other: &Self) -> Ordering {
        self.qubits.cmp(&other.qubits).then_with(|| {
            for q in (0..self.qubits).rev() {
                match self.get(q).cmp(&other.get(q)) {
                    Ordering::Equal => continue,
                    ord => return ord,
                }
            }
            Ordering::Equal
        })
    }
}

impl PartialOrd for PauliString {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.letters())
    }
}

impl FromStr for PauliString {
    type Err = Error;

    /// Parses letters written highest qubit first, e.g. `"ZXXZ"`.
    fn from_str(s: &str) -> Result<Self> {
        let letters: Vec<char> = s.trim().chars().collect();
        if letters.len() > MAX_STRING_QUBITS {
            return Err(Error::Validation(format!(
                "Pauli string longer than {MAX_STRING_QUBITS} qubits"
            )));
        }
        let n = letters.len();
        let mut out = PauliString::identity(n);
        for (pos, c) in letters.into_iter().enumerate() {
            let p = Pauli::from_char(c).ok_or_else(|| Error::Parse {
                line: 0,
                message: format!("invalid Pauli letter {c:?}"),
            })?;
            out.set(n - 1 - pos, p);
        }
        Ok(out)
    }
}

/// One weighted string.
#[derive(Debug, Clone, PartialEq)]
pub struct PauliTerm {
    pub coefficient: Complex64,
    pub string: PauliString,
}

impl PauliTerm {
    pub fn new(coefficient: impl Into<Complex64>, string: PauliString) -> Self {
        Self {
            coefficient: coefficient.into(),
            string,
        }
    }

    pub fn real(coefficient: f64, string: PauliString) -> Self {
        Self::new(Complex64::new(coefficient, 0.0), string)
    }
}

impl fmt::Display for PauliTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", format_coefficient(self.coefficient), self.string)
    }
}

pub(crate) fn format_coefficient(c: Complex64) -> String {
    if c.im.abs() <= DEFAULT_TOLERANCE {
        format!("{:.6}", c.re)
    } else {
        format!("({:.6}{:+.6}i)", c.re, c.im)
    }
}

/// Complex-weighted sum of Pauli strings on a fixed register.
///
/// Terms are kept in a map keyed by string, so like terms merge on insertion.
/// Zero coefficients survive until [`PauliOperator::canonicalize`].
#[derive(Debug, Clone, PartialEq)]
pub struct PauliOperator {
    qubits: usize,
    terms: BTreeMap<PauliString, Complex64>,
}

impl PauliOperator {
    pub fn zero(qubits: usize) -> Self {
        Self {
            qubits,
            terms: BTreeMap::new(),
        }
    }

    pub fn identity(qubits: usize) -> Self {
        Self::from_term(PauliTerm::real(1.0, PauliString::identity(qubits)))
    }

    pub fn scalar(qubits: usize, c: impl Into<Complex64>) -> Self {
        Self::from_term(PauliTerm::new(c, PauliString::identity(qubits)))
    }

    pub fn from_term(term: PauliTerm) -> Self {
        let mut op = Self::zero(term.string.qubits());
        op.add_term(term.coefficient, term.string);
        op
    }

    pub fn from_string(string: PauliString) -> Self {
        Self::from_term(PauliTerm::real(1.0, string))
    }

    /// Sums a stream of terms, merging repeated strings.
    pub fn from_terms<I: IntoIterator<Item = PauliTerm>>(qubits: usize, terms: I) -> Result<Self> {
        let mut op = Self::zero(qubits);
        for t in terms {
            if t.string.qubits() != qubits {
                return Err(Error::Dimension {
                    left: qubits,
                    right: t.string.qubits(),
                });
            }
            op.add_term(t.coefficient, t.string);
        }
        Ok(op)
    }

    pub fn qubits(&self) -> usize {
        self.qubits
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, coefficient: Complex64, string: PauliString) {
        assert_eq!(string.qubits(), self.qubits, "term on a different register");
        *self.terms.entry(string).or_insert(Complex64::new(0.0, 0.0)) += coefficient;
    }

    /// Coefficient of `string`, zero when absent.
    pub fn coefficient(&self, string: &PauliString) -> Complex64 {
        self.terms
            .get(string)
            .copied()
            .unwrap_or(Complex64::new(0.0, 0.0))
    }

    pub fn coefficient_of(&self, letters: &str) -> Result<Complex64> {
        let s: PauliString = letters.parse()?;
        if s.qubits() != self.qubits {
            return Err(Error::Dimension {
                left: self.qubits,
                right: s.qubits(),
            });
        }
        Ok(self.coefficient(&s))
    }

    /// Terms in canonical (lexicographic) order.
    pub fn iter(&self) -> impl Iterator<Item = (&PauliString, &Complex64)> {
        self.terms.iter()
    }

    pub fn terms(&self) -> Vec<PauliTerm> {
        self.terms
            .iter()
            .map(|(s, c)| PauliTerm::new(*c, s.clone()))
            .collect()
    }

    /// Non-identity terms in canonical order.
    pub fn non_identity_terms(&self) -> Vec<PauliTerm> {
        self.terms
            .iter()
            .filter(|(s, _)| !s.is_identity())
            .map(|(s, c)| PauliTerm::new(*c, s.clone()))
            .collect()
    }

    pub fn identity_coefficient(&self) -> Complex64 {
        self.coefficient(&PauliString::identity(self.qubits))
    }

    /// Merged copy with every term of magnitude `<= tol` removed.
    pub fn canonicalize(&self, tol: f64) -> Self {
        Self {
            qubits: self.qubits,
            terms: self
                .terms
                .iter()
                .filter(|(_, c)| c.norm() > tol)
                .map(|(s, c)| (s.clone(), *c))
                .collect(),
        }
    }

    pub fn scale(&self, factor: impl Into<Complex64>) -> Self {
        let f = factor.into();
        Self {
            qubits: self.qubits,
            terms: self.terms.iter().map(|(s, c)| (s.clone(), c * f)).collect(),
        }
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        if self.qubits != other.qubits {
            return Err(Error::Dimension {
                left: self.qubits,
                right: other.qubits,
            });
        }
        let mut out = Self::zero(self.qubits);
        for (sa, ca) in &self.terms {
            for (sb, cb) in &other.terms {
                let (phase, s) = sa.multiply(sb)?;
                out.add_term(ca * cb * phase.to_complex(), s);
            }
        }
        Ok(out)
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        if self.qubits != other.qubits {
            return Err(Error::Dimension {
                left: self.qubits,
                right: other.qubits,
            });
        }
        let mut out = self.clone();
        for (s, c) in &other.terms {
            out.add_term(*c, s.clone());
        }
        Ok(out)
    }

    pub fn adjoint(&self) -> Self {
        Self {
            qubits: self.qubits,
            terms: self.terms.iter().map(|(s, c)| (s.clone(), c.conj())).collect(),
        }
    }

    /// Every coefficient real to within `tol`.
    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.terms.values().all(|c| c.im.abs() <= tol)
    }

    /// Largest coefficient difference over the union of both term sets.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.terms
            .keys()
            .chain(other.terms.keys())
            .map(|s| (self.coefficient(s) - other.coefficient(s)).norm())
            .fold(0.0, f64::max)
    }

    /// True when every pair of strings commutes.
    pub fn commutes_with(&self, other: &Self) -> Result<bool> {
        let product = self.checked_mul(other)?;
        let reverse = other.checked_mul(self)?;
        Ok((&product - &reverse).canonicalize(DEFAULT_TOLERANCE).is_empty())
    }

    /// One `<coeff> <letters>` line per term, canonical order.
    pub fn render(&self) -> String {
        let mut out = String::new();
        for (s, c) in &self.terms {
            out.push_str(&format_coefficient(*c));
            out.push(' ');
            out.push_str(&s.letters());
            out.push('\n');
        }
        out
    }
}

impl fmt::Display for PauliOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

// Operator sugar for building expressions on one register. Mismatched
// registers are a programming error here; use the `checked_*` methods for
// untrusted input.
impl Mul for &PauliOperator {
    type Output = PauliOperator;
    fn mul(self, rhs: &PauliOperator) -> PauliOperator {
        self.checked_mul(rhs).expect("operands on different registers")
    }
}

impl Add for &PauliOperator {
    type Output = PauliOperator;
    fn add(self, rhs: &PauliOperator) -> PauliOperator {
        self.checked_add(rhs).expect("operands on different registers")
    }
}

impl Sub for &PauliOperator {
    type Output = PauliOperator;
    fn sub(self, rhs: &PauliOperator) -> PauliOperator {
        self + &rhs.scale(-1.0)
    }
}

impl Neg for &PauliOperator {
    type Output = PauliOperator;
    fn neg(self) -> PauliOperator {
        self.scale(-1.0)
    }
}

impl AddAssign<&PauliOperator> for PauliOperator {
    fn add_assign(&mut self, rhs: &PauliOperator) {
        assert_eq!(self.qubits, rhs.qubits, "operands on different registers");
        for (s, c) in &rhs.terms {
            self.add_term(*c, s.clone());
        }
    }
}
