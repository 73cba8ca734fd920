//! Flow-category data of a Morse function on a closed manifold.

use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use super::data::{grading_class, FlowCategoryData, GeneratorSpec, Incidence};
use super::FlowcatError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CriticalPoint {
    pub id: String,
    pub morse_index: i64,
    pub value: BigRational,
}

/// A signed count of upward gradient lines from `from` to `to`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MorseIncidence {
    pub from: String,
    pub to: String,
    pub count: i64,
}

/// Generators with index `n - μ` (mod `two_n`) and action
/// `floor(ε·(f - min f))`; all counts carry `t = 0`.
pub fn morse_flow_category(
    half_dim: i64,
    two_n: i64,
    omega: i64,
    epsilon: &BigRational,
    crit: &[CriticalPoint],
    incidences: &[MorseIncidence],
) -> Result<FlowCategoryData, FlowcatError> {
    let f_min = crit.iter().map(|c| &c.value).min().cloned().unwrap_or_else(BigRational::zero);
    let mut generators = Vec::with_capacity(crit.len());
    for c in crit {
        let scaled = epsilon * (&c.value - &f_min);
        if scaled.is_negative() || scaled >= BigRational::from_integer(omega.into()) {
            return Err(FlowcatError::EpsilonTooLarge { id: c.id.clone() });
        }
        let action = scaled.numer().div_floor(scaled.denom()).to_i64().expect("below omega");
        generators.push(GeneratorSpec {
            id: c.id.clone(),
            index: grading_class(half_dim - c.morse_index, two_n),
            action,
        });
    }
    let fc = FlowCategoryData {
        two_n,
        omega,
        generators,
        incidences: incidences
            .iter()
            .map(|i| Incidence { from: i.from.clone(), to: i.to.clone(), t: 0, count: i.count })
            .collect(),
    };
    let violations = fc.validate();
    if violations.is_empty() {
        Ok(fc)
    } else {
        Err(FlowcatError::ValidationFailed(violations))
    }
}
