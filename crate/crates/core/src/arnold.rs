//! The integral Arnold bound: collapse of integral homology mod `2N`,
//! invariant-factor counts and the rank inequalities behind the bound.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::flowcat::{grading_class, FlowcatError, GradedLambdaComplex};
use crate::linalg::{cokernel, column_span_basis, kernel_basis, IntMatrix, Integers, Matrix, ModuleStructure, Novikov};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ArnoldError {
    #[error("degree {degree}: torsion coefficient {value} is below 2")]
    InvalidTorsion { degree: i64, value: i64 },
    #[error("degree key {0:?} is not an integer")]
    BadDegree(String),
    #[error("complex is graded mod {complex}, expected mod {expected}")]
    GradingMismatch { complex: i64, expected: i64 },
    #[error("inequality fails: {0}")]
    ChainBroken(Inequality),
    #[error(transparent)]
    Flowcat(#[from] FlowcatError),
}

/// `Z^betti ⊕ ⊕ Z/torsion[k]` in one degree.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DegreeGroup {
    pub betti: u64,
    #[serde(default)]
    pub torsion: Vec<i64>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GradedGroupData {
    pub degrees: BTreeMap<i64, DegreeGroup>,
}

/// Input document: `{"homology": {"0": {...}, ...}, "minimal_chern": N}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ArnoldInput {
    pub homology: BTreeMap<String, DegreeGroup>,
    pub minimal_chern: i64,
}

impl ArnoldInput {
    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }

    pub fn groups(&self) -> Result<GradedGroupData, ArnoldError> {
        let mut degrees = BTreeMap::new();
        for (k, g) in &self.homology {
            let d: i64 = k.trim().parse().map_err(|_| ArnoldError::BadDegree(k.clone()))?;
            if let Some(&value) = g.torsion.iter().find(|&&t| t < 2) {
                return Err(ArnoldError::InvalidTorsion { degree: d, value });
            }
            degrees.insert(d, g.clone());
        }
        Ok(GradedGroupData { degrees })
    }
}

impl GradedGroupData {
    pub fn betti_sum(&self) -> u64 {
        self.degrees.values().map(|g| g.betti).sum()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CollapsedClassData {
    pub residue: i64,
    pub structure: ModuleStructure<BigInt>,
}

/// `tau` of a collapsed class: the length of its invariant-factor chain.
pub fn tau(c: &CollapsedClassData) -> usize {
    c.structure.tau()
}

/// For each residue mod `2N`, the sum of all degrees in that residue with
/// its torsion renormalized to a divisibility chain. `N = 0` keeps the
/// `Z`-grading.
pub fn collapse(h: &GradedGroupData, n: i64) -> Vec<CollapsedClassData> {
    let two_n = 2 * n.max(0);
    let mut classes: BTreeMap<i64, (u64, Vec<i64>)> = BTreeMap::new();
    if two_n > 0 {
        for i in 0..two_n {
            classes.insert(i, (0, Vec::new()));
        }
    }
    for (&d, g) in &h.degrees {
        let entry = classes.entry(grading_class(d, two_n)).or_default();
        entry.0 += g.betti;
        entry.1.extend(&g.torsion);
    }
    classes
        .into_iter()
        .map(|(residue, (betti, torsion))| {
            let k = torsion.len();
            let presentation: IntMatrix =
                Matrix::from_fn(k, k, |i, j| BigInt::from(if i == j { torsion[i] } else { 0 }));
            let mut structure = cokernel(&Integers, &presentation).expect("integer Smith form");
            structure.rank += betti as usize;
            CollapsedClassData { residue, structure }
        })
        .collect()
}

/// `Σ_j b_j + 2·Σ_i τ_i` with `τ_i` the invariant-factor counts after
/// collapsing mod `2N`.
pub fn arnold_bound(h: &GradedGroupData, n: i64) -> u64 {
    let taus: usize = collapse(h, n).iter().map(tau).sum();
    h.betti_sum() + 2 * taus as u64
}

/// One inequality `lhs ≥ rhs` (or `lhs = rhs` for rank–nullity).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Inequality {
    pub name: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub class: Option<i64>,
    pub lhs: u64,
    pub rhs: u64,
    pub equality: bool,
}

impl Inequality {
    pub fn holds(&self) -> bool {
        if self.equality {
            self.lhs == self.rhs
        } else {
            self.lhs >= self.rhs
        }
    }

    pub fn slack(&self) -> i64 {
        self.lhs as i64 - self.rhs as i64
    }
}

impl std::fmt::Display for Inequality {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let op = if self.equality { "=" } else { ">=" };
        match self.class {
            Some(i) => write!(f, "[class {i}] {}: {} {op} {}", self.name, self.lhs, self.rhs),
            None => write!(f, "{}: {} {op} {}", self.name, self.lhs, self.rhs),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ChainReport {
    pub bound: u64,
    pub total_rank: u64,
    pub inequalities: Vec<Inequality>,
}

impl ChainReport {
    pub fn total_slack(&self) -> i64 {
        self.total_rank as i64 - self.bound as i64
    }
}

/// Checks, per class `i` of a complex graded mod `2N`: rank–nullity for
/// `d_i`, `rank ker d_i ≥ rank H_i + τ_i`, `rank im d_{i+1} ≥ τ_i`, and
/// finally `rank CF ≥ arnold_bound`. Fails with the first broken link.
pub fn verify_bound_chain(
    cf: &GradedLambdaComplex,
    reference: &GradedGroupData,
    n: i64,
    precision: i64,
) -> Result<ChainReport, ArnoldError> {
    let expected = 2 * n.max(0);
    if cf.two_n() != expected {
        return Err(ArnoldError::GradingMismatch { complex: cf.two_n(), expected });
    }
    let broken = cf.check_d_squared();
    if !broken.is_empty() {
        return Err(FlowcatError::DSquaredFailed(broken).into());
    }
    let ring = Novikov::new(precision);
    let collapsed: BTreeMap<i64, CollapsedClassData> =
        collapse(reference, n).into_iter().map(|c| (c.residue, c)).collect();
    let mut ker = BTreeMap::new();
    let mut img = BTreeMap::new();
    let mut inequalities = Vec::new();
    for i in cf.classes() {
        let d = cf.d(i);
        let z = kernel_basis(&ring, &d).map_err(FlowcatError::from)?.cols() as u64;
        let b = column_span_basis(&ring, &d).map_err(FlowcatError::from)?.cols() as u64;
        inequalities.push(Inequality {
            name: "rank CF = rank ker d + rank im d".into(),
            class: Some(i),
            lhs: cf.layout.size(i) as u64,
            rhs: z + b,
            equality: true,
        });
        ker.insert(i, z);
        img.insert(i, b);
    }
    let mut classes: Vec<i64> = cf.classes().collect();
    for &r in collapsed.keys() {
        if !classes.contains(&r) {
            classes.push(r);
        }
    }
    classes.sort_unstable();
    for i in classes {
        let (rank_h, t) = collapsed.get(&i).map_or((0, 0), |c| (c.structure.rank as u64, tau(c) as u64));
        let above = cf.layout.shift(i, 1);
        inequalities.push(Inequality {
            name: "rank ker d >= rank H + tau".into(),
            class: Some(i),
            lhs: ker.get(&i).copied().unwrap_or(0),
            rhs: rank_h + t,
            equality: false,
        });
        inequalities.push(Inequality {
            name: "rank im d(above) >= tau".into(),
            class: Some(i),
            lhs: img.get(&above).copied().unwrap_or(0),
            rhs: t,
            equality: false,
        });
    }
    let bound = arnold_bound(reference, n);
    let total_rank = cf.layout.rank() as u64;
    inequalities.push(Inequality {
        name: "rank CF >= arnold bound".into(),
        class: None,
        lhs: total_rank,
        rhs: bound,
        equality: false,
    });
    if let Some(bad) = inequalities.iter().find(|q| !q.holds()) {
        return Err(ArnoldError::ChainBroken(bad.clone()));
    }
    Ok(ChainReport { bound, total_rank, inequalities })
}
