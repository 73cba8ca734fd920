//! Equivariant polynomial maps between diagonal representations of finite
//! abelian groups, their zero loci and the product splitting maps.

mod poly;
mod rep;
mod zlocus;

pub use poly::{
    dim_poly, eval, format_gq, gq, monomials, phi_embed, psi_split, random_gq, EquivariantPolynomial, Factor, Gq,
    RepPair,
};
pub use rep::{group_elements, AbelianRep, GroupElement, Subgroup};
pub use zlocus::{
    check_dimension_formula, evaluation_matrix, kernel, rank, sample_stratum_point, sample_z_point, DimensionCase,
    DimensionReport, ZPoint, DIMENSION_TABLE,
};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum EquipolyError {
    #[error("invalid group: {0}")]
    InvalidGroup(String),
    #[error("weight has {got} components, the group has {expected} factors")]
    WeightShape { expected: usize, got: usize },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("monomial {monomial:?} in output {output} violates the weight rule or degree cap")]
    NotEquivariant { output: usize, monomial: Vec<u32> },
    #[error("no point of V has exactly this stabilizer")]
    EmptyStratum,
}
