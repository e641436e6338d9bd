//! Bundled integral files.

/// H2 in the STO-3G basis at 0.7414 Angstrom, two-electron values carrying a
/// `two_body_scale` of 2.
pub const H2_STO3G: &str = include_str!("../data/h2_sto3g.molint");
