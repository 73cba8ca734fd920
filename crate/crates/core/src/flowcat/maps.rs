//! Maps induced by flow bimodules, unitriangular inversion and the
//! homotopy identity between continuation-type maps.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::linalg::{LambdaMatrix, Matrix, Novikov};
use crate::novikov::{NovikovSeries, DEFAULT_PRECISION};

use super::complex::{nonzero_entries, zero_matrix, EntryViolation, GradedLambdaComplex, Layout};
use super::data::BimoduleCounts;
use super::FlowcatError;

/// A family of matrices, block `i` mapping source class `i` to target class
/// `i + degree`.
#[derive(Clone, Debug, PartialEq)]
pub struct GradedMap {
    pub source: Layout,
    pub target: Layout,
    pub degree: i64,
    pub blocks: BTreeMap<i64, LambdaMatrix>,
}

fn ring() -> Novikov {
    Novikov::new(DEFAULT_PRECISION)
}

impl GradedMap {
    pub fn zero(source: &Layout, target: &Layout, degree: i64) -> Self {
        let blocks = source
            .classes
            .keys()
            .map(|&i| (i, zero_matrix(target.size(target.shift(i, degree)), source.size(i))))
            .collect();
        Self { source: source.clone(), target: target.clone(), degree, blocks }
    }

    pub fn identity(layout: &Layout) -> Self {
        let mut out = Self::zero(layout, layout, 0);
        for block in out.blocks.values_mut() {
            *block = Matrix::identity(&ring(), block.rows());
        }
        out
    }

    pub fn block(&self, class: i64) -> LambdaMatrix {
        self.blocks.get(&class).cloned().unwrap_or_else(|| {
            zero_matrix(self.target.size(self.target.shift(class, self.degree)), self.source.size(class))
        })
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &GradedMap) -> Result<GradedMap, FlowcatError> {
        if other.target != self.source {
            return Err(FlowcatError::ShapeMismatch("composable maps must share the middle layout".into()));
        }
        let r = ring();
        let degree = self.degree + other.degree;
        let blocks = other
            .source
            .classes
            .keys()
            .map(|&i| {
                let mid = other.source.shift(i, other.degree);
                (i, self.block(mid).mul(&r, &other.block(i)))
            })
            .collect();
        Ok(GradedMap { source: other.source.clone(), target: self.target.clone(), degree, blocks })
    }

    fn combine(
        &self,
        other: &GradedMap,
        f: impl Fn(&LambdaMatrix, &LambdaMatrix) -> LambdaMatrix,
    ) -> Result<GradedMap, FlowcatError> {
        if self.source != other.source || self.target != other.target || self.degree != other.degree {
            return Err(FlowcatError::ShapeMismatch("maps differ in shape or degree".into()));
        }
        let blocks = self.source.classes.keys().map(|&i| (i, f(&self.block(i), &other.block(i)))).collect();
        Ok(GradedMap { blocks, ..self.clone() })
    }

    pub fn add(&self, other: &GradedMap) -> Result<GradedMap, FlowcatError> {
        self.combine(other, |a, b| a.add(&ring(), b))
    }

    pub fn sub(&self, other: &GradedMap) -> Result<GradedMap, FlowcatError> {
        self.combine(other, |a, b| a.sub(&ring(), b))
    }

    /// Entries that do not vanish to precision.
    pub fn nonzero_entries(&self) -> Vec<EntryViolation> {
        let mut out = Vec::new();
        for (&i, m) in &self.blocks {
            let t = self.target.shift(i, self.degree);
            out.extend(nonzero_entries(m, i, self.target.ids(t), self.source.ids(i)));
        }
        out
    }

    /// The map `d` of a complex, viewed as a degree `-1` graded map.
    pub fn differential(c: &GradedLambdaComplex) -> Self {
        GradedMap {
            source: c.layout.clone(),
            target: c.layout.clone(),
            degree: -1,
            blocks: c.classes().map(|i| (i, c.d(i))).collect(),
        }
    }
}

/// `Ψ(p) = Σ n_{pp'} T^t p'` for the counts of a bimodule.
pub fn chain_map(b: &BimoduleCounts) -> Result<GradedMap, FlowcatError> {
    let violations = b.validate();
    if !violations.is_empty() {
        return Err(FlowcatError::ValidationFailed(violations));
    }
    let source = Layout::of(&b.source);
    let target = Layout::of(&b.target);
    let mut map = GradedMap::zero(&source, &target, b.degree);
    for inc in &b.incidences {
        let (cp, p) = source.position(&inc.from).expect("validated");
        let (_, q) = target.position(&inc.to).expect("validated");
        let m = map.blocks.get_mut(&cp).expect("class present");
        let entry = m.get(q, p).add(&NovikovSeries::monomial(inc.count, inc.t));
        m.set(q, p, entry);
    }
    Ok(map)
}

/// Entries of `Ψ ∘ d - d' ∘ Ψ` that fail to vanish.
pub fn check_chain_map(
    psi: &GradedMap,
    source: &GradedLambdaComplex,
    target: &GradedLambdaComplex,
) -> Result<Vec<EntryViolation>, FlowcatError> {
    if psi.source != source.layout || psi.target != target.layout {
        return Err(FlowcatError::ShapeMismatch("map does not run between the given complexes".into()));
    }
    let lhs = psi.compose(&GradedMap::differential(source))?;
    let rhs = GradedMap::differential(target).compose(psi)?;
    Ok(lhs.sub(&rhs)?.nonzero_entries())
}

/// Every block is square and `m - Id` has only positive `T`-exponents.
pub fn check_unitriangular(m: &GradedMap) -> bool {
    if m.degree != 0 || m.source != m.target {
        return false;
    }
    let id = GradedMap::identity(&m.source);
    let Ok(n) = m.sub(&id) else { return false };
    n.blocks
        .values()
        .all(|b| b.entries().iter().all(|e| e.is_exact_zero() || e.valuation_lower_bound().is_some_and(|v| v >= 1)))
}

/// Drops every term of exponent `>= k`, reporting whether any was dropped.
fn cut_below(m: &LambdaMatrix, k: i64) -> (LambdaMatrix, bool) {
    let mut dropped = false;
    let out = m.map(|e| {
        if e.max_exponent().is_some_and(|top| top >= k) || !e.is_exact() {
            dropped = true;
            NovikovSeries::from_terms(
                e.terms().filter(|(x, _)| *x < k).map(|(x, c)| (x, c.clone())),
                crate::novikov::Precision::Exact,
            )
        } else {
            e.clone()
        }
    });
    (out, dropped)
}

/// `Σ_k (-N)^k` with `N = m - Id`, correct modulo `T^out_precision`. The
/// result is exact when the series terminates below that order.
pub fn invert_unitriangular(m: &GradedMap, out_precision: i64) -> Result<GradedMap, FlowcatError> {
    if !check_unitriangular(m) {
        return Err(FlowcatError::NotUnitriangular);
    }
    let r = ring();
    let id = GradedMap::identity(&m.source);
    let n = m.sub(&id)?;
    let mut blocks = BTreeMap::new();
    for (&i, nb) in &n.blocks {
        let minus_n = nb.neg(&r);
        let size = nb.rows();
        let mut acc = Matrix::identity(&r, size);
        let mut power = Matrix::identity(&r, size);
        let mut truncated = false;
        let mut terminated = false;
        for _ in 0..out_precision.max(0) {
            let (next, dropped) = cut_below(&power.mul(&r, &minus_n), out_precision);
            truncated |= dropped;
            if next.is_zero(&r) {
                terminated = true;
                break;
            }
            acc = acc.add(&r, &next);
            power = next;
        }
        let (acc, dropped) = cut_below(&acc, out_precision);
        let block = if truncated || dropped || !terminated { acc.map(|e| e.truncate(out_precision)) } else { acc };
        blocks.insert(i, block);
    }
    Ok(GradedMap { blocks, ..m.clone() })
}

/// Residual of the homotopy identity
/// `pearl - ssp ∘ pss = d ∘ h - h ∘ d`, where `h` raises the class by one.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct HomotopyReport {
    pub violations: Vec<EntryViolation>,
}

impl HomotopyReport {
    pub fn holds(&self) -> bool {
        self.violations.is_empty()
    }
}

pub fn check_homotopy(
    pearl: &GradedMap,
    ssp: &GradedMap,
    pss: &GradedMap,
    h: &GradedMap,
    morse: &GradedLambdaComplex,
) -> Result<HomotopyReport, FlowcatError> {
    let layout = &morse.layout;
    let on_morse = |m: &GradedMap, degree: i64, name: &str| {
        if &m.source != layout || &m.target != layout || m.degree != degree {
            Err(FlowcatError::ShapeMismatch(format!("{name} must be a degree {degree} map on the Morse complex")))
        } else {
            Ok(())
        }
    };
    on_morse(pearl, 0, "pearl")?;
    on_morse(h, 1, "homotopy")?;
    if &pss.source != layout || &ssp.target != layout || pss.degree != 0 || ssp.degree != 0 {
        return Err(FlowcatError::ShapeMismatch("pss must leave and ssp must return to the Morse complex".into()));
    }
    let d = GradedMap::differential(morse);
    let lhs = pearl.sub(&ssp.compose(pss)?)?;
    let rhs = d.compose(h)?.sub(&h.compose(&d)?)?;
    Ok(HomotopyReport { violations: lhs.sub(&rhs)?.nonzero_entries() })
}
