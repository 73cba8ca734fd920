//! Finite stratified sets and their outer collaring, modeled pointwise.
//!
//! A point of `X^{⊞r}` is a cell `x ∈ ∂^α X` together with coordinates
//! `t ∈ [-r, 0]^{F_α}`. Coordinates equal to `0` may be dropped by passing to
//! a larger `β` with `F_β` the remaining faces; the canonical representative
//! drops all of them. The new boundary stratum of a point is read off the
//! coordinates equal to `-r`.

use std::collections::{BTreeMap, BTreeSet};

use num_rational::BigRational;
use num_traits::{Signed, Zero};
use rand::Rng;

use super::poset::HomogeneousPoset;
use super::StrataError;

/// Cells over a homogeneous poset with a face relation respecting strata.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StratifiedSet {
    pub poset: HomogeneousPoset,
    pub cells: Vec<String>,
    pub strata: Vec<usize>,
    /// `(y, x)`: `y` is a face of `x`.
    pub faces: BTreeSet<(usize, usize)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CollaredPoint {
    pub cell: usize,
    pub alpha: usize,
    pub coords: BTreeMap<usize, BigRational>,
    pub width: BigRational,
}

impl StratifiedSet {
    pub fn new(
        poset: HomogeneousPoset,
        cells: Vec<String>,
        strata: Vec<usize>,
        faces: BTreeSet<(usize, usize)>,
    ) -> Result<Self, StrataError> {
        if strata.len() != cells.len() || strata.iter().any(|&s| s >= poset.len()) {
            return Err(StrataError::UnknownElement("stratum of a cell".into()));
        }
        for &(y, x) in &faces {
            if y >= cells.len() || x >= cells.len() {
                return Err(StrataError::UnknownElement(format!("cell #{}", y.max(x))));
            }
            if !poset.le(strata[y], strata[x]) {
                return Err(StrataError::FaceViolatesStrata { face: cells[y].clone(), cell: cells[x].clone() });
            }
        }
        Ok(Self { poset, cells, strata, faces })
    }

    /// One cell per element, faces given by the order.
    pub fn of_poset(poset: &HomogeneousPoset) -> Self {
        let n = poset.len();
        let faces = (0..n).flat_map(|x| (0..n).map(move |y| (y, x))).filter(|&(y, x)| poset.lt(y, x)).collect();
        Self {
            poset: poset.clone(),
            cells: (0..n).map(|i| poset.name(i).to_string()).collect(),
            strata: (0..n).collect(),
            faces,
        }
    }

    /// `∂^α X` over the down-set of `α`, with cell and element embeddings.
    pub fn boundary(&self, alpha: usize) -> Result<(StratifiedSet, Vec<usize>, Vec<usize>), StrataError> {
        let (down, elems) = self.poset.down_set(alpha)?;
        let cells: Vec<usize> = (0..self.cells.len()).filter(|&c| self.poset.le(self.strata[c], alpha)).collect();
        let local = |e: usize| elems.iter().position(|&x| x == e).expect("in down-set");
        let cell_local = |c: usize| cells.iter().position(|&x| x == c);
        let faces = self.faces.iter().filter_map(|&(y, x)| Some((cell_local(y)?, cell_local(x)?))).collect();
        let set = StratifiedSet::new(
            down,
            cells.iter().map(|&c| self.cells[c].clone()).collect(),
            cells.iter().map(|&c| local(self.strata[c])).collect(),
            faces,
        )?;
        Ok((set, cells, elems))
    }

    /// `X × Y` over the product poset; cell `(x, y)` has index `x·|Y| + y`.
    pub fn product(&self, other: &StratifiedSet) -> StratifiedSet {
        let m = other.cells.len();
        let pm = other.poset.len();
        let mut cells = Vec::new();
        let mut strata = Vec::new();
        for (x, cx) in self.cells.iter().enumerate() {
            for (y, cy) in other.cells.iter().enumerate() {
                cells.push(format!("({cx},{cy})"));
                strata.push(self.strata[x] * pm + other.strata[y]);
            }
        }
        let mut faces = BTreeSet::new();
        let n = self.cells.len();
        for x in 0..n {
            for y in 0..m {
                for x2 in 0..n {
                    for y2 in 0..m {
                        let fx = x == x2 || self.faces.contains(&(x2, x));
                        let fy = y == y2 || other.faces.contains(&(y2, y));
                        if (x, y) != (x2, y2) && fx && fy {
                            faces.insert((x2 * m + y2, x * m + y));
                        }
                    }
                }
            }
        }
        StratifiedSet { poset: self.poset.product(&other.poset), cells, strata, faces }
    }

    pub fn point(
        &self,
        cell: usize,
        alpha: usize,
        coords: BTreeMap<usize, BigRational>,
        width: BigRational,
    ) -> Result<CollaredPoint, StrataError> {
        if !self.poset.le(self.strata[cell], alpha) {
            return Err(StrataError::NotInClosure {
                cell: self.cells[cell].clone(),
                stratum: self.poset.name(alpha).to_string(),
            });
        }
        let keys: BTreeSet<usize> = coords.keys().copied().collect();
        if &keys != self.poset.faces(alpha) {
            return Err(StrataError::WrongCoordinates(self.poset.name(alpha).to_string()));
        }
        if width.is_negative() || coords.values().any(|t| t.is_positive() || *t < -width.clone()) {
            return Err(StrataError::CoordOutOfRange);
        }
        Ok(CollaredPoint { cell, alpha, coords, width })
    }

    /// Drops every zero coordinate, moving the base to the element whose
    /// faces are the nonzero coordinates.
    pub fn outer_collar_representative(&self, x: &CollaredPoint) -> Result<CollaredPoint, StrataError> {
        self.check(x)?;
        let coords: BTreeMap<usize, BigRational> =
            x.coords.iter().filter(|(_, t)| !t.is_zero()).map(|(&j, t)| (j, t.clone())).collect();
        let keys: BTreeSet<usize> = coords.keys().copied().collect();
        let alpha = self
            .poset
            .element_with_faces(x.alpha, &keys)
            .ok_or_else(|| StrataError::NoCanonicalStratum(self.poset.name(x.alpha).to_string()))?;
        Ok(CollaredPoint { alpha, coords, ..x.clone() })
    }

    /// The stratum of `X^{⊞r}` containing `x`: the element above the cell's
    /// stratum whose faces are the coordinates equal to `-r`, after padding
    /// down to the cell's own stratum with zeros.
    pub fn collar_stratum_label(&self, x: &CollaredPoint) -> Result<usize, StrataError> {
        self.check(x)?;
        let base = self.strata[x.cell];
        let minus_r = -x.width.clone();
        let at_edge: BTreeSet<usize> = self
            .poset
            .faces(base)
            .iter()
            .copied()
            .filter(|j| {
                let t = x.coords.get(j).cloned().unwrap_or_else(BigRational::zero);
                t == minus_r
            })
            .collect();
        self.poset
            .element_with_faces(base, &at_edge)
            .ok_or_else(|| StrataError::NoCanonicalStratum(self.poset.name(base).to_string()))
    }

    fn check(&self, x: &CollaredPoint) -> Result<(), StrataError> {
        self.point(x.cell, x.alpha, x.coords.clone(), x.width.clone()).map(|_| ())
    }

    /// Points with coordinates in `{-r, 0}` over every admissible base.
    pub fn corner_points(&self, width: &BigRational) -> Vec<CollaredPoint> {
        let mut out = Vec::new();
        for cell in 0..self.cells.len() {
            for alpha in 0..self.poset.len() {
                if !self.poset.le(self.strata[cell], alpha) {
                    continue;
                }
                let faces: Vec<usize> = self.poset.faces(alpha).iter().copied().collect();
                for mask in 0..1usize << faces.len() {
                    let coords = faces
                        .iter()
                        .enumerate()
                        .map(|(k, &j)| {
                            let t = if mask >> k & 1 == 1 { -width.clone() } else { BigRational::zero() };
                            (j, t)
                        })
                        .collect();
                    out.push(CollaredPoint { cell, alpha, coords, width: width.clone() });
                }
            }
        }
        out
    }

    /// A random point; coordinates favor the corner values `-r` and `0`.
    pub fn sample_point(&self, rng: &mut impl Rng, width: &BigRational) -> CollaredPoint {
        let cell = rng.gen_range(0..self.cells.len());
        let above: Vec<usize> = (0..self.poset.len()).filter(|&a| self.poset.le(self.strata[cell], a)).collect();
        let alpha = above[rng.gen_range(0..above.len())];
        let coords = self
            .poset
            .faces(alpha)
            .iter()
            .map(|&j| {
                let t = match rng.gen_range(0..4) {
                    0 => BigRational::zero(),
                    1 => -width.clone(),
                    _ => {
                        let den: i64 = rng.gen_range(1..=7);
                        let num: i64 = rng.gen_range(0..=den);
                        -width.clone() * BigRational::new(num.into(), den.into())
                    }
                };
                (j, t)
            })
            .collect();
        CollaredPoint { cell, alpha, coords, width: width.clone() }
    }
}

/// Identification of `(∂^α X)^{⊞r}` with `∂^α (X^{⊞r})`: a relative face
/// `β` of `γ` inside the down-set of `α` becomes the unique face of `X` in
/// `F_β \ F_α`, and the coordinates on `F_α` are set to `-r`.
pub fn boundary_to_collar(
    x: &StratifiedSet,
    alpha: usize,
    boundary: &(StratifiedSet, Vec<usize>, Vec<usize>),
    p: &CollaredPoint,
) -> Result<CollaredPoint, StrataError> {
    let (b, cells, elems) = boundary;
    let gamma = elems[p.alpha];
    let f_alpha = x.poset.faces(alpha);
    let mut coords: BTreeMap<usize, BigRational> = f_alpha.iter().map(|&j| (j, -p.width.clone())).collect();
    for (&beta, t) in &p.coords {
        let extra: Vec<usize> = x.poset.faces(elems[beta]).difference(f_alpha).copied().collect();
        match extra[..] {
            [j] => {
                coords.insert(j, t.clone());
            }
            _ => return Err(StrataError::NoCanonicalStratum(b.poset.name(beta).to_string())),
        }
    }
    x.point(cells[p.cell], gamma, coords, p.width.clone())
}

/// `(X₁^{⊞r}, X₂^{⊞r}) → (X₁ × X₂)^{⊞r}`: faces of `(α₁, α₂)` are
/// `(f, top₂)` and `(top₁, g)`.
pub fn regroup(
    x1: &StratifiedSet,
    x2: &StratifiedSet,
    product: &StratifiedSet,
    p1: &CollaredPoint,
    p2: &CollaredPoint,
) -> Result<CollaredPoint, StrataError> {
    let m = x2.poset.len();
    let top1 = x1.poset.top_above(p1.alpha).ok_or(StrataError::NoUniqueTop)?;
    let top2 = x2.poset.top_above(p2.alpha).ok_or(StrataError::NoUniqueTop)?;
    let mut coords = BTreeMap::new();
    for (&f, t) in &p1.coords {
        coords.insert(f * m + top2, t.clone());
    }
    for (&g, t) in &p2.coords {
        coords.insert(top1 * m + g, t.clone());
    }
    product.point(p1.cell * x2.cells.len() + p2.cell, p1.alpha * m + p2.alpha, coords, p1.width.clone())
}

/// Inverse of [`regroup`].
pub fn split(
    x1: &StratifiedSet,
    x2: &StratifiedSet,
    p: &CollaredPoint,
) -> Result<(CollaredPoint, CollaredPoint), StrataError> {
    let m = x2.poset.len();
    let (a1, a2) = (p.alpha / m, p.alpha % m);
    let mut c1 = BTreeMap::new();
    let mut c2 = BTreeMap::new();
    for (&k, t) in &p.coords {
        let (f, g) = (k / m, k % m);
        if x1.poset.depth(f) == 1 {
            c1.insert(f, t.clone());
        } else {
            c2.insert(g, t.clone());
        }
    }
    let mc = x2.cells.len();
    Ok((x1.point(p.cell / mc, a1, c1, p.width.clone())?, x2.point(p.cell % mc, a2, c2, p.width.clone())?))
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct OuterProductReport {
    pub boundary_points: usize,
    pub product_points: usize,
    pub failures: Vec<String>,
}

impl OuterProductReport {
    pub fn holds(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Checks `(∂^α X₁)^{⊞r} = ∂^α X₁^{⊞r}` for every `α` and
/// `X₁^{⊞r} × X₂^{⊞r} = (X₁ × X₂)^{⊞r}` on all corner points plus
/// `samples` random points.
pub fn check_outer_product(
    x1: &StratifiedSet,
    x2: &StratifiedSet,
    width: &BigRational,
    samples: usize,
    rng: &mut impl Rng,
) -> Result<OuterProductReport, StrataError> {
    let mut report = OuterProductReport::default();
    for x in [x1, x2] {
        for alpha in 0..x.poset.len() {
            let bd = x.boundary(alpha)?;
            let mut points = bd.0.corner_points(width);
            points.extend((0..samples).map(|_| bd.0.sample_point(rng, width)));
            for p in points {
                report.boundary_points += 1;
                let image = boundary_to_collar(x, alpha, &bd, &p)?;
                let canon_direct = x.outer_collar_representative(&image)?;
                let via = boundary_to_collar(x, alpha, &bd, &bd.0.outer_collar_representative(&p)?)?;
                if x.outer_collar_representative(&via)? != canon_direct {
                    report.failures.push(format!("boundary {}: canonical forms differ", x.poset.name(alpha)));
                }
                let label = bd.2[bd.0.collar_stratum_label(&p)?];
                if x.collar_stratum_label(&image)? != label || !x.poset.le(label, alpha) {
                    report.failures.push(format!("boundary {}: labels differ", x.poset.name(alpha)));
                }
            }
        }
    }
    let product = x1.product(x2);
    let (c1, c2) = (x1.corner_points(width), x2.corner_points(width));
    let mut pairs: Vec<(CollaredPoint, CollaredPoint)> =
        c1.iter().flat_map(|a| c2.iter().map(move |b| (a.clone(), b.clone()))).collect();
    pairs.extend((0..samples).map(|_| (x1.sample_point(rng, width), x2.sample_point(rng, width))));
    for (p1, p2) in &pairs {
        report.product_points += 1;
        let joined = regroup(x1, x2, &product, p1, p2)?;
        if split(x1, x2, &joined)? != (p1.clone(), p2.clone()) {
            report.failures.push("split does not invert regroup".into());
        }
        let c1 = x1.outer_collar_representative(p1)?;
        let c2 = x2.outer_collar_representative(p2)?;
        if product.outer_collar_representative(&joined)? != regroup(x1, x2, &product, &c1, &c2)? {
            report.failures.push("regrouping does not commute with canonical forms".into());
        }
        let l = x1.collar_stratum_label(p1)? * x2.poset.len() + x2.collar_stratum_label(p2)?;
        if product.collar_stratum_label(&joined)? != l {
            report.failures.push("product label is not the pair of labels".into());
        }
    }
    Ok(report)
}

/// A cellular map over a poset map `ι` with `s(f(c)) = ι(s(c))`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StratifiedMap {
    pub iota: Vec<usize>,
    pub cell_map: Vec<usize>,
}

impl StratifiedMap {
    pub fn identity(x: &StratifiedSet) -> Self {
        Self { iota: (0..x.poset.len()).collect(), cell_map: (0..x.cells.len()).collect() }
    }

    pub fn then(&self, g: &StratifiedMap) -> StratifiedMap {
        StratifiedMap {
            iota: self.iota.iter().map(|&a| g.iota[a]).collect(),
            cell_map: self.cell_map.iter().map(|&c| g.cell_map[c]).collect(),
        }
    }

    pub fn validate(&self, x1: &StratifiedSet, x2: &StratifiedSet) -> Result<(), StrataError> {
        let incompatible = |what: String| Err(StrataError::IncompatibleStrata(what));
        if self.iota.len() != x1.poset.len() || self.cell_map.len() != x1.cells.len() {
            return incompatible("map sizes".into());
        }
        for a in 0..x1.poset.len() {
            for b in 0..x1.poset.len() {
                if x1.poset.le(a, b) && !x2.poset.le(self.iota[a], self.iota[b]) {
                    return incompatible(format!("{} ≤ {}", x1.poset.name(a), x1.poset.name(b)));
                }
            }
        }
        for (c, &fc) in self.cell_map.iter().enumerate() {
            if x2.strata[fc] != self.iota[x1.strata[c]] {
                return incompatible(format!("cell {}", x1.cells[c]));
            }
        }
        for &(y, x) in &x1.faces {
            let (fy, fx) = (self.cell_map[y], self.cell_map[x]);
            if fy != fx && !x2.faces.contains(&(fy, fx)) {
                return incompatible(format!("face {} of {}", x1.cells[y], x1.cells[x]));
            }
        }
        Ok(())
    }

    /// The face of `ι(α)` carrying the coordinate of `j ∈ F_α`: the single
    /// element of `F_{ι(j)} \ F_{ι(top)}`, `top` the maximal element above `j`.
    fn face_match(
        &self,
        x1: &StratifiedSet,
        x2: &StratifiedSet,
        alpha: usize,
    ) -> Result<BTreeMap<usize, usize>, StrataError> {
        let mut out = BTreeMap::new();
        for &j in x1.poset.faces(alpha) {
            let top = x1.poset.top_above(j).ok_or(StrataError::NoUniqueTop)?;
            let new: Vec<usize> =
                x2.poset.faces(self.iota[j]).difference(x2.poset.faces(self.iota[top])).copied().collect();
            match new[..] {
                [k] if !out.values().any(|&v| v == k) => {
                    out.insert(j, k);
                }
                _ => {
                    return Err(StrataError::IncompatibleStrata(format!(
                        "face {} of {} has no unique image",
                        x1.poset.name(j),
                        x1.poset.name(alpha)
                    )))
                }
            }
        }
        Ok(out)
    }
}

/// `f^{⊞r}(x, t) = (f(x), t')` with `t'` carried along matched faces and
/// zero on the faces of `ι(α)` not hit.
pub fn collar_extend_map(
    x1: &StratifiedSet,
    x2: &StratifiedSet,
    f: &StratifiedMap,
    p: &CollaredPoint,
) -> Result<CollaredPoint, StrataError> {
    f.validate(x1, x2)?;
    x1.check(p)?;
    let matched = f.face_match(x1, x2, p.alpha)?;
    let target = f.iota[p.alpha];
    let mut coords: BTreeMap<usize, BigRational> =
        x2.poset.faces(target).iter().map(|&k| (k, BigRational::zero())).collect();
    for (j, t) in &p.coords {
        coords.insert(matched[j], t.clone());
    }
    x2.point(f.cell_map[p.cell], target, coords, p.width.clone())
}
