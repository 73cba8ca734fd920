//! Dense matrices over `Z` and the Novikov ring, Smith normal form and
//! module structure.

mod io;
mod matrix;
mod ring;
mod snf;
mod structure;

use num_bigint::BigInt;

use crate::novikov::{NovikovError, NovikovSeries, Precision};

pub use io::MatrixBlock;
pub use matrix::{int_matrix, IntMatrix, LambdaMatrix, Matrix};
pub use ring::{BaseRing, EuclideanRing, Integers, Novikov};
pub use snf::{smith, SmithForm};
pub use structure::{
    check_quotient_ranks, check_submodule_bounds, cokernel, column_span_basis, kernel_basis, p_count, prime_factors,
    solve_in_span, subquotient, ModuleStructure, SubmoduleTorsionReport, TorsionRankReport,
};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LinalgError {
    #[error(transparent)]
    Novikov(#[from] NovikovError),
    #[error("division by an element that vanishes to its precision")]
    DivisionByZero,
    #[error("column {column} of the image does not lie in the span of the kernel basis")]
    NotASubmodule { column: usize },
    #[error("basis columns are linearly dependent")]
    DependentBasis,
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("cannot parse matrix block: {0}")]
    Parse(String),
}

/// Smith form over `Z` with nonnegative diagonal.
pub fn snf_int(m: &IntMatrix) -> SmithForm<BigInt> {
    smith(&Integers, m).expect("integer Smith form cannot fail")
}

/// Smith form over Λ together with the relative precision it certifies.
#[derive(Clone, Debug)]
pub struct LambdaSmith {
    pub form: SmithForm<NovikovSeries>,
    pub certified_precision: Precision,
    /// Both accumulated transform determinants are units to precision.
    pub unimodular: bool,
}

pub fn snf_lambda(m: &LambdaMatrix, precision: i64) -> Result<LambdaSmith, LinalgError> {
    let ring = Novikov::new(precision);
    let form = smith(&ring, m)?;
    let certified_precision = ring.certify(form.nonzero_diagonal()).unwrap_or(Precision::Exact);
    let unimodular = ring.is_unit(&form.left_det) && ring.is_unit(&form.right_det);
    Ok(LambdaSmith { form, certified_precision, unimodular })
}
