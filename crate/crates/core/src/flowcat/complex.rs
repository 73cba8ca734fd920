//! Graded complexes over Λ built from flow-category counts.

use std::collections::{BTreeMap, HashMap};

use serde::Serialize;

use crate::linalg::{kernel_basis, subquotient, LambdaMatrix, Matrix, ModuleStructure, Novikov};
use crate::novikov::NovikovSeries;

use super::data::{grading_class, FlowCategoryData};
use super::FlowcatError;

/// Generators grouped by grading class, in input order within each class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Layout {
    pub two_n: i64,
    pub classes: BTreeMap<i64, Vec<String>>,
    position: HashMap<String, (i64, usize)>,
}

impl Layout {
    pub fn of(fc: &FlowCategoryData) -> Self {
        let two_n = fc.two_n;
        let mut classes: BTreeMap<i64, Vec<String>> = BTreeMap::new();
        if two_n > 0 {
            for i in 0..two_n {
                classes.insert(i, Vec::new());
            }
        } else if let (Some(lo), Some(hi)) =
            (fc.generators.iter().map(|g| g.index).min(), fc.generators.iter().map(|g| g.index).max())
        {
            for i in lo..=hi {
                classes.insert(i, Vec::new());
            }
        }
        let mut position = HashMap::new();
        for g in &fc.generators {
            let c = grading_class(g.index, two_n);
            let list = classes.get_mut(&c).expect("class in range");
            position.insert(g.id.clone(), (c, list.len()));
            list.push(g.id.clone());
        }
        Self { two_n, classes, position }
    }

    /// The class `i + k`, reduced mod `two_n`.
    pub fn shift(&self, i: i64, k: i64) -> i64 {
        grading_class(i + k, self.two_n)
    }

    pub fn size(&self, class: i64) -> usize {
        self.classes.get(&class).map_or(0, Vec::len)
    }

    pub fn position(&self, id: &str) -> Option<(i64, usize)> {
        self.position.get(id).copied()
    }

    pub fn ids(&self, class: i64) -> &[String] {
        self.classes.get(&class).map_or(&[], Vec::as_slice)
    }

    pub fn rank(&self) -> usize {
        self.position.len()
    }
}

/// `C = ⊕_i Λ^{class i}` with `d_i` mapping class `i` to class `i - 1`.
#[derive(Clone, Debug, PartialEq)]
pub struct GradedLambdaComplex {
    pub layout: Layout,
    pub differentials: BTreeMap<i64, LambdaMatrix>,
}

/// A nonzero entry where zero was required.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EntryViolation {
    /// Source class of the composite.
    pub class: i64,
    pub row: usize,
    pub col: usize,
    pub row_id: String,
    pub col_id: String,
    /// Lowest exponent with a nonzero coefficient.
    pub first_exponent: Option<i64>,
}

pub(crate) fn zero_matrix(rows: usize, cols: usize) -> LambdaMatrix {
    Matrix::filled(rows, cols, NovikovSeries::zero())
}

/// Entries of `m` that do not vanish to their precision.
pub(crate) fn nonzero_entries(
    m: &LambdaMatrix,
    class: i64,
    row_ids: &[String],
    col_ids: &[String],
) -> Vec<EntryViolation> {
    let mut out = Vec::new();
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            let e = m.get(i, j);
            if !e.is_zero_to_precision() {
                out.push(EntryViolation {
                    class,
                    row: i,
                    col: j,
                    row_id: row_ids[i].clone(),
                    col_id: col_ids[j].clone(),
                    first_exponent: e.leading().map(|(k, _)| k),
                });
            }
        }
    }
    out
}

pub fn build_complex(fc: &FlowCategoryData) -> Result<GradedLambdaComplex, FlowcatError> {
    let violations = fc.validate();
    if !violations.is_empty() {
        return Err(FlowcatError::ValidationFailed(violations));
    }
    let layout = Layout::of(fc);
    let mut differentials: BTreeMap<i64, LambdaMatrix> =
        layout.classes.keys().map(|&i| (i, zero_matrix(layout.size(layout.shift(i, -1)), layout.size(i)))).collect();
    for inc in &fc.incidences {
        let (cp, p) = layout.position(&inc.from).expect("validated");
        let (_, q) = layout.position(&inc.to).expect("validated");
        let d = differentials.get_mut(&cp).expect("class present");
        let entry = d.get(q, p).add(&NovikovSeries::monomial(inc.count, inc.t));
        d.set(q, p, entry);
    }
    Ok(GradedLambdaComplex { layout, differentials })
}

impl GradedLambdaComplex {
    pub fn two_n(&self) -> i64 {
        self.layout.two_n
    }

    pub fn classes(&self) -> impl Iterator<Item = i64> + '_ {
        self.layout.classes.keys().copied()
    }

    /// `d_i`, or an empty matrix for a class outside the range.
    pub fn d(&self, class: i64) -> LambdaMatrix {
        self.differentials
            .get(&class)
            .cloned()
            .unwrap_or_else(|| zero_matrix(self.layout.size(self.layout.shift(class, -1)), self.layout.size(class)))
    }

    /// Every composite `d_{i-1} ∘ d_i` vanishes to precision.
    pub fn check_d_squared(&self) -> Vec<EntryViolation> {
        let ring = Novikov::new(crate::novikov::DEFAULT_PRECISION);
        let mut out = Vec::new();
        for i in self.classes() {
            let below = self.layout.shift(i, -1);
            let composite = self.d(below).mul(&ring, &self.d(i));
            out.extend(nonzero_entries(&composite, i, self.layout.ids(self.layout.shift(i, -2)), self.layout.ids(i)));
        }
        out
    }

    /// `ker d_i / im d_{i+1}` for every class, computed to `precision`.
    pub fn homology(&self, precision: i64) -> Result<BTreeMap<i64, ModuleStructure<NovikovSeries>>, FlowcatError> {
        let broken = self.check_d_squared();
        if !broken.is_empty() {
            return Err(FlowcatError::DSquaredFailed(broken));
        }
        let ring = Novikov::new(precision);
        let mut out = BTreeMap::new();
        for i in self.classes() {
            let z = kernel_basis(&ring, &self.d(i))?;
            let structure = if z.cols() == 0 {
                ModuleStructure {
                    rank: 0,
                    invariant_factors: Vec::new(),
                    base_ring: crate::linalg::BaseRing::Novikov,
                    certified_precision: None,
                }
            } else {
                subquotient(&ring, &z, &self.d(self.layout.shift(i, 1)))?
            };
            out.insert(i, structure);
        }
        Ok(out)
    }

    /// Ranks of `ker d_i` and `im d_i` over the fraction field.
    pub fn ranks(&self, precision: i64) -> Result<BTreeMap<i64, (usize, usize)>, FlowcatError> {
        let ring = Novikov::new(precision);
        let mut out = BTreeMap::new();
        for i in self.classes() {
            let z = kernel_basis(&ring, &self.d(i))?.cols();
            out.insert(i, (z, self.layout.size(i) - z));
        }
        Ok(out)
    }
}
