//! Sorting Hamiltonian terms into the operator families that the superfast
//! encoding has closed-form images for.

use std::collections::BTreeSet;

use super::{FermionOperator, FermionTerm, LadderOp};
use crate::{Error, Result, DEFAULT_TOLERANCE};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum OperatorClass {
    Number,
    CoulombExchange,
    Excitation,
    NumberExcitation,
    DoubleExcitation,
    PairCreation,
    /// `odd_parity` is set when the product has an odd number of ladder
    /// operators, which no even-algebra encoding can represent.
    Unsupported { odd_parity: bool },
}

/// Operator family with its indices in template order (0-based).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Template {
    /// `a_i^ a_i`
    Number { i: usize },
    /// `a_i^ a_j^ a_j a_i`
    CoulombExchange { i: usize, j: usize },
    /// `a_i^ a_j + a_j^ a_i`
    Excitation { i: usize, j: usize },
    /// `a_i^ a_j^ a_j a_k + a_k^ a_j^ a_j a_i`
    NumberExcitation { i: usize, j: usize, k: usize },
    /// `a_i^ a_j^ a_k a_l + a_l^ a_k^ a_j a_i`
    DoubleExcitation { i: usize, j: usize, k: usize, l: usize },
    /// `a_i^ a_j^ + a_i a_j`
    PairCreation { i: usize, j: usize },
}

impl Template {
    pub fn class(&self) -> OperatorClass {
        match self {
            Template::Number { .. } => OperatorClass::Number,
            Template::CoulombExchange { .. } => OperatorClass::CoulombExchange,
            Template::Excitation { .. } => OperatorClass::Excitation,
            Template::NumberExcitation { .. } => OperatorClass::NumberExcitation,
            Template::DoubleExcitation { .. } => OperatorClass::DoubleExcitation,
            Template::PairCreation { .. } => OperatorClass::PairCreation,
        }
    }

    /// The ladder-operator products this template stands for.
    pub fn expand(&self, coefficient: f64) -> Vec<FermionTerm> {
        use LadderOp as L;
        let c = |m| L::create(m);
        let a = |m| L::annihilate(m);
        let products: Vec<Vec<LadderOp>> = match *self {
            Template::Number { i } => vec![vec![c(i), a(i)]],
            Template::CoulombExchange { i, j } => vec![vec![c(i), c(j), a(j), a(i)]],
            Template::Excitation { i, j } => vec![vec![c(i), a(j)], vec![c(j), a(i)]],
            Template::NumberExcitation { i, j, k } => {
                vec![vec![c(i), c(j), a(j), a(k)], vec![c(k), c(j), a(j), a(i)]]
            }
            Template::DoubleExcitation { i, j, k, l } => {
                vec![vec![c(i), c(j), a(k), a(l)], vec![c(l), c(k), a(j), a(i)]]
            }
            Template::PairCreation { i, j } => vec![vec![c(i), c(j)], vec![a(i), a(j)]],
        };
        products
            .into_iter()
            .map(|f| FermionTerm::new(coefficient, f))
            .collect()
    }
}

/// `coefficient * template`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClassifiedTerm {
    pub coefficient: f64,
    pub template: Template,
}

/// A Hamiltonian split into a constant and template-shaped pieces.
#[derive(Debug, Clone, PartialEq)]
pub struct Classification {
    pub constant: f64,
    pub terms: Vec<ClassifiedTerm>,
}

#[derive(Debug, Clone, PartialEq)]
struct Normalized {
    creators: Vec<usize>,
    annihilators: Vec<usize>,
    coefficient: f64,
}

impl Normalized {
    fn of(t: &FermionTerm) -> Option<Self> {
        let s = t.sorted_normal_order().ok()??;
        let split = s.factors.iter().position(|f| !f.dagger).unwrap_or(s.factors.len());
        Some(Self {
            creators: s.factors[..split].iter().map(|f| f.mode).collect(),
            annihilators: s.factors[split..].iter().map(|f| f.mode).collect(),
            coefficient: s.coefficient,
        })
    }

    /// Sorted normal order of the adjoint. Reversing a sorted pair costs a
    /// sign on each side, so the coefficient is unchanged for 1+1 and 2+2
    /// products.
    fn is_adjoint_of(&self, other: &Self) -> bool {
        self.creators == other.annihilators
            && self.annihilators == other.creators
            && (self.coefficient - other.coefficient).abs() <= DEFAULT_TOLERANCE
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Shape {
    Number,
    CoulombExchange,
    Excitation,
    NumberExcitation,
    DoubleExcitation,
    PairCreation,
    Other,
}

fn shape(n: &Normalized) -> Shape {
    match (n.creators.as_slice(), n.annihilators.as_slice()) {
        ([i], [j]) if i == j => Shape::Number,
        ([_], [_]) => Shape::Excitation,
        ([i, j], [k, l]) => {
            let shared = [i, j].iter().filter(|x| [k, l].contains(x)).count();
            match shared {
                2 => Shape::CoulombExchange,
                1 => Shape::NumberExcitation,
                _ => Shape::DoubleExcitation,
            }
        }
        ([_, _], []) | ([], [_, _]) => Shape::PairCreation,
        _ => Shape::Other,
    }
}

/// Classifies `t`, jointly with its Hermitian-conjugate `partner` for the
/// families that come in pairs. Terms are expected in normal order.
pub fn classify_term(t: &FermionTerm, partner: Option<&FermionTerm>) -> OperatorClass {
    let odd = t.factors.len() % 2 == 1 || partner.is_some_and(|p| p.factors.len() % 2 == 1);
    if odd {
        return OperatorClass::Unsupported { odd_parity: true };
    }
    let unsupported = OperatorClass::Unsupported { odd_parity: false };
    let Some(n) = Normalized::of(t) else {
        return unsupported;
    };
    let partner = match partner {
        Some(p) => match Normalized::of(p) {
            Some(p) => Some(p),
            None => return unsupported,
        },
        None => None,
    };
    let sh = shape(&n);
    match (sh, partner) {
        (Shape::Number, None) => OperatorClass::Number,
        (Shape::CoulombExchange, None) => OperatorClass::CoulombExchange,
        (Shape::Excitation | Shape::NumberExcitation | Shape::DoubleExcitation, Some(p))
            if n.is_adjoint_of(&p) =>
        {
            match sh {
                Shape::Excitation => OperatorClass::Excitation,
                Shape::NumberExcitation => OperatorClass::NumberExcitation,
                _ => OperatorClass::DoubleExcitation,
            }
        }
        (Shape::PairCreation, Some(p)) if is_pair_partner(&n, &p) => OperatorClass::PairCreation,
        _ => unsupported,
    }
}

fn is_pair_partner(a: &Normalized, b: &Normalized) -> bool {
    let (cre, ann) = if a.annihilators.is_empty() { (a, b) } else { (b, a) };
    cre.annihilators.is_empty()
        && ann.creators.is_empty()
        && cre.creators.len() == 2
        && cre.creators == ann.annihilators
        && (cre.coefficient - ann.coefficient).abs() <= DEFAULT_TOLERANCE
}

/// Splits an operator into template pieces. Fails on the first term that
/// fits no family or lacks its conjugate partner.
pub fn classify_operator(op: &FermionOperator) -> Result<Classification> {
    let normal = op.sorted_normal_order(DEFAULT_TOLERANCE)?;
    let normalized: Vec<(FermionTerm, Normalized)> = normal
        .terms()
        .map(|t| {
            let n = Normalized::of(&t).expect("already in sorted normal order");
            (t, n)
        })
        .collect();

    let mut used = BTreeSet::new();
    let mut constant = 0.0;
    let mut terms = Vec::new();

    let unsupported = |t: &FermionTerm, reason: &str| Error::Unsupported {
        term: t.to_string(),
        reason: reason.to_string(),
    };

    for (idx, (term, n)) in normalized.iter().enumerate() {
        if used.contains(&idx) {
            continue;
        }
        used.insert(idx);
        if term.factors.is_empty() {
            constant += n.coefficient;
            continue;
        }
        if term.factors.len() % 2 == 1 {
            return Err(unsupported(
                term,
                "odd number of ladder operators; only even-parity terms are representable",
            ));
        }
        let c = n.coefficient;
        let mut take_partner = |pred: &dyn Fn(&Normalized) -> bool| -> Option<usize> {
            let found = normalized
                .iter()
                .enumerate()
                .find(|(j, (_, m))| !used.contains(j) && pred(m))
                .map(|(j, _)| j);
            if let Some(j) = found {
                used.insert(j);
            }
            found
        };
        let template = match shape(n) {
            Shape::Number => Template::Number { i: n.creators[0] },
            Shape::CoulombExchange => {
                // sorted form is a_i^ a_j^ a_i a_j = -a_i^ a_j^ a_j a_i
                terms.push(ClassifiedTerm {
                    coefficient: -c,
                    template: Template::CoulombExchange {
                        i: n.creators[0],
                        j: n.creators[1],
                    },
                });
                continue;
            }
            Shape::Excitation => {
                take_partner(&|m| n.is_adjoint_of(m))
                    .ok_or_else(|| unsupported(term, "excitation without its Hermitian conjugate"))?;
                let (i, j) = (n.creators[0], n.annihilators[0]);
                Template::Excitation {
                    i: i.min(j),
                    j: i.max(j),
                }
            }
            Shape::NumberExcitation => {
                take_partner(&|m| n.is_adjoint_of(m)).ok_or_else(|| {
                    unsupported(term, "number-excitation without its Hermitian conjugate")
                })?;
                let j = *n
                    .creators
                    .iter()
                    .find(|x| n.annihilators.contains(x))
                    .expect("one shared mode");
                let i = *n.creators.iter().find(|&&x| x != j).expect("two creators");
                let k = *n.annihilators.iter().find(|&&x| x != j).expect("two annihilators");
                // move j to the inner positions: a_i^ a_j^ a_j a_k
                let mut sign = 1.0;
                if n.creators[0] == j {
                    sign = -sign;
                }
                if n.annihilators[1] == j {
                    sign = -sign;
                }
                terms.push(ClassifiedTerm {
                    coefficient: sign * c,
                    template: Template::NumberExcitation { i, j, k },
                });
                continue;
            }
            Shape::DoubleExcitation => {
                take_partner(&|m| n.is_adjoint_of(m)).ok_or_else(|| {
                    unsupported(term, "double excitation without its Hermitian conjugate")
                })?;
                Template::DoubleExcitation {
                    i: n.creators[0],
                    j: n.creators[1],
                    k: n.annihilators[0],
                    l: n.annihilators[1],
                }
            }
            Shape::PairCreation => {
                take_partner(&|m| is_pair_partner(n, m))
                    .ok_or_else(|| unsupported(term, "pair creation without matching a_i a_j partner"))?;
                let pair = if n.creators.is_empty() {
                    &n.annihilators
                } else {
                    &n.creators
                };
                Template::PairCreation {
                    i: pair[0],
                    j: pair[1],
                }
            }
            Shape::Other => {
                return Err(unsupported(term, "no matching operator family"));
            }
        };
        terms.push(ClassifiedTerm {
            coefficient: c,
            template,
        });
    }

    Ok(Classification { constant, terms })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::data::H2_STO3G;
    use crate::fermion::{build_molecular_hamiltonian, parse_integral_file};

    fn h2() -> FermionOperator {
        build_molecular_hamiltonian(&parse_integral_file(H2_STO3G).unwrap()).unwrap()
    }

    #[test]
    fn single_terms() {
        assert_eq!(classify_term(&FermionTerm::one_body(1.0, 0, 0), None), OperatorClass::Number);
        assert_eq!(
            classify_term(&FermionTerm::two_body(1.0, 0, 1, 1, 0), None),
            OperatorClass::CoulombExchange
        );
        assert_eq!(
            classify_term(&FermionTerm::new(1.0, vec![LadderOp::create(0)]), None),
            OperatorClass::Unsupported { odd_parity: true }
        );
    }

    #[test]
    fn paired_terms() {
        let t = FermionTerm::one_body(0.2, 0, 1);
        assert_eq!(classify_term(&t, Some(&t.adjoint())), OperatorClass::Excitation);
        assert_eq!(classify_term(&t, None), OperatorClass::Unsupported { odd_parity: false });

        let t = FermionTerm::two_body(0.1, 0, 1, 1, 2);
        assert_eq!(classify_term(&t, Some(&t.adjoint())), OperatorClass::NumberExcitation);

        let t = FermionTerm::two_body(0.1, 0, 1, 3, 2);
        assert_eq!(classify_term(&t, Some(&t.adjoint())), OperatorClass::DoubleExcitation);
        let wrong = FermionTerm::two_body(0.3, 2, 3, 1, 0);
        assert_eq!(
            classify_term(&t, Some(&wrong)),
            OperatorClass::Unsupported { odd_parity: false }
        );

        let cre = FermionTerm::new(0.4, vec![LadderOp::create(0), LadderOp::create(2)]);
        let ann = FermionTerm::new(0.4, vec![LadderOp::annihilate(0), LadderOp::annihilate(2)]);
        assert_eq!(classify_term(&cre, Some(&ann)), OperatorClass::PairCreation);
        assert_eq!(classify_term(&ann, Some(&cre)), OperatorClass::PairCreation);
    }

    #[test]
    fn exchange_written_as_ijij_is_coulomb_exchange() {
        assert_eq!(
            classify_term(&FermionTerm::two_body(1.0, 0, 2, 0, 2), None),
            OperatorClass::CoulombExchange
        );
    }

    #[test]
    fn h2_classification_is_total() {
        let c = classify_operator(&h2()).unwrap();
        assert_eq!(c.constant, 0.0);
        let count = |cls: OperatorClass| c.terms.iter().filter(|t| t.template.class() == cls).count();
        assert_eq!(count(OperatorClass::Number), 4);
        // (1,3) and (2,4) carry both a Coulomb and an exchange entry
        assert_eq!(count(OperatorClass::CoulombExchange), 6);
        assert_eq!(count(OperatorClass::DoubleExcitation), 2);
        assert_eq!(c.terms.len(), 12);
    }

    #[test]
    fn templates_expand_back_to_the_operator() {
        let h = h2();
        let c = classify_operator(&h).unwrap();
        let rebuilt = FermionOperator::from_terms(
            h.modes(),
            c.terms.iter().flat_map(|t| t.template.expand(t.coefficient)),
        )
        .unwrap();
        let a = h.sorted_normal_order(1e-12).unwrap();
        let b = rebuilt.sorted_normal_order(1e-12).unwrap();
        assert_eq!(a.len(), b.len());
        for (x, y) in a.terms().zip(b.terms()) {
            assert_eq!(x.factors, y.factors);
            assert!((x.coefficient - y.coefficient).abs() < 1e-14);
        }
    }

    #[test]
    fn number_excitation_sign() {
        // a_3^ a_1^ a_1 a_2 written with the shared mode first
        let t = FermionTerm::two_body(0.5, 0, 2, 1, 0);
        let op = FermionOperator::from_terms(3, [t.clone(), t.adjoint()]).unwrap();
        let c = classify_operator(&op).unwrap();
        assert_eq!(c.terms.len(), 1);
        let rebuilt = FermionOperator::from_terms(3, c.terms[0].template.expand(c.terms[0].coefficient))
            .unwrap()
            .sorted_normal_order(1e-12)
            .unwrap();
        assert_eq!(rebuilt, op.sorted_normal_order(1e-12).unwrap());
    }

    #[test]
    fn odd_term_is_rejected() {
        let op = FermionOperator::from_terms(2, [FermionTerm::new(1.0, vec![LadderOp::create(1)])]).unwrap();
        let e = classify_operator(&op).unwrap_err();
        assert!(matches!(e, Error::Unsupported { .. }));
    }
}
