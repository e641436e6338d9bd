use super::{FermionOperator, FermionTerm, IntegralTable};
use crate::{Error, Result, DEFAULT_TOLERANCE};

/// `H = c + sum h_ij a_i^ a_j + sum (scale * h_ijkl) a_i^ a_j^ a_k a_l`
/// over exactly the entries present in `table`. No permutational symmetry is
/// applied, so the table must list every term it wants in the operator.
pub fn build_molecular_hamiltonian(table: &IntegralTable) -> Result<FermionOperator> {
    table.validate()?;
    let mut h = FermionOperator::new(table.modes);
    if table.constant != 0.0 {
        h.add_term(FermionTerm::new(table.constant, Vec::new()))?;
    }
    for (&(i, j), &v) in &table.one_body {
        if v != 0.0 {
            h.add_term(FermionTerm::one_body(v, i, j))?;
        }
    }
    for (&(i, j, k, l), &v) in &table.two_body {
        let c = table.two_body_scale * v;
        if c != 0.0 {
            h.add_term(FermionTerm::two_body(c, i, j, k, l))?;
        }
    }
    if !h.is_hermitian(DEFAULT_TOLERANCE)? {
        return Err(Error::Validation(
            "assembled Hamiltonian is not Hermitian; list every adjoint partner explicitly".into(),
        ));
    }
    Ok(h)
}
