//! Points of `Z_d^G = {(v, P) : P(v) = 0}` and the rank test behind its
//! local dimension.

use num_traits::{One, Zero};
use rand::Rng;
use serde::Serialize;

use super::poly::{eval, random_gq, EquivariantPolynomial, Gq, RepPair};
use super::rep::{AbelianRep, Subgroup};
use super::EquipolyError;

/// Reduced row echelon form over `Q(i)`; returns the pivot columns.
fn rref(m: &mut [Vec<Gq>], cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..cols {
        let Some(p) = (row..m.len()).find(|&r| !m[r][col].is_zero()) else { continue };
        m.swap(row, p);
        let inv = Gq::one() / m[row][col].clone();
        for x in m[row].iter_mut() {
            *x = x.clone() * inv.clone();
        }
        for r in 0..m.len() {
            if r != row && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                for c in 0..cols {
                    let sub = f.clone() * m[row][c].clone();
                    m[r][c] = m[r][c].clone() - sub;
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    pivots
}

pub fn rank(m: &[Vec<Gq>], cols: usize) -> usize {
    rref(&mut m.to_vec(), cols).len()
}

/// Kernel basis of a `rows × cols` matrix over `Q(i)`.
pub fn kernel(m: &[Vec<Gq>], cols: usize) -> Vec<Vec<Gq>> {
    let mut r = m.to_vec();
    let pivots = rref(&mut r, cols);
    (0..cols)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut x = vec![Gq::zero(); cols];
            x[free] = Gq::one();
            for (i, &p) in pivots.iter().enumerate() {
                x[p] = -r[i][free].clone();
            }
            x
        })
        .collect()
}

/// The matrix of `P ↦ P(v)` in the monomial basis of `Poly_d^G`.
pub fn evaluation_matrix(pair: &RepPair, d: u32, v: &[Gq]) -> (Vec<(usize, Vec<u32>)>, Vec<Vec<Gq>>) {
    let basis = pair.basis(d);
    let mut m = vec![vec![Gq::zero(); basis.len()]; pair.w.dim()];
    for (c, (j, alpha)) in basis.iter().enumerate() {
        let mut e = EquivariantPolynomial::zero(pair.v.dim(), pair.w.dim(), d);
        e.add_term(*j, alpha.clone(), Gq::one());
        m[*j][c] = eval(v, &e).expect("shape from pair")[*j].clone();
    }
    (basis, m)
}

/// A point with stabilizer exactly `h`: random nonzero entries on `V^H`.
pub fn sample_stratum_point(v: &AbelianRep, h: &Subgroup, rng: &mut impl Rng) -> Result<Vec<Gq>, EquipolyError> {
    let support = v.stratum_support(h)?;
    Ok((0..v.dim()).map(|k| if support.contains(&k) { random_gq(rng) } else { Gq::zero() }).collect())
}

#[derive(Clone, Debug, PartialEq)]
pub struct ZPoint {
    pub v: Vec<Gq>,
    pub p: EquivariantPolynomial,
    pub stabilizer: Subgroup,
}

/// A random `(v, P)` with `v` in the `H` stratum and `P(v) = 0`: `P` is a
/// random combination of a kernel basis of `P ↦ P(v)`.
pub fn sample_z_point(pair: &RepPair, d: u32, h: &Subgroup, rng: &mut impl Rng) -> Result<ZPoint, EquipolyError> {
    let v = sample_stratum_point(&pair.v, h, rng)?;
    let (basis, m) = evaluation_matrix(pair, d, &v);
    let mut coeffs = vec![Gq::zero(); basis.len()];
    for k in kernel(&m, basis.len()) {
        let c = random_gq(rng);
        for (x, y) in coeffs.iter_mut().zip(k) {
            *x = x.clone() + c.clone() * y;
        }
    }
    let p = EquivariantPolynomial::from_coefficients(pair, d, &basis, &coeffs);
    debug_assert!(eval(&v, &p).expect("shape").iter().all(Zero::is_zero));
    let support: Vec<usize> = (0..v.len()).filter(|&k| !v[k].is_zero()).collect();
    Ok(ZPoint { stabilizer: pair.v.stabilizer(&support), v, p })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DimensionReport {
    pub dim_poly: usize,
    pub dim_v_fixed: usize,
    pub dim_w_fixed: usize,
    /// `dim Poly + dim V^H - dim W^H`.
    pub expected_dimension: i64,
    pub trials: usize,
    pub surjective_trials: usize,
    pub ranks: Vec<usize>,
    /// Smallest `d' ≤ d` at which every trial point was surjective.
    pub minimal_surjective_degree: Option<u32>,
}

impl DimensionReport {
    pub fn holds(&self) -> bool {
        self.surjective_trials == self.trials
    }
}

/// For each trial point `v` with stabilizer `h`, compares the exact rank of
/// `P ↦ P(v)` against `dim W^H`.
pub fn check_dimension_formula(
    pair: &RepPair,
    d: u32,
    h: &Subgroup,
    trials: usize,
    rng: &mut impl Rng,
) -> Result<DimensionReport, EquipolyError> {
    let points: Vec<Vec<Gq>> = (0..trials).map(|_| sample_stratum_point(&pair.v, h, rng)).collect::<Result<_, _>>()?;
    let dim_w_fixed = pair.w.fixed_coordinates(h).len();
    let ranks_at = |degree: u32| -> Vec<usize> {
        points
            .iter()
            .map(|v| {
                let (basis, m) = evaluation_matrix(pair, degree, v);
                rank(&m, basis.len())
            })
            .collect()
    };
    let ranks = ranks_at(d);
    let dim_poly = pair.basis(d).len();
    let dim_v_fixed = pair.v.fixed_coordinates(h).len();
    let surjective = |r: &[usize]| r.iter().all(|&x| x == dim_w_fixed);
    let minimal_surjective_degree =
        (0..=d).find(|&e| if e == d { surjective(&ranks) } else { surjective(&ranks_at(e)) });
    Ok(DimensionReport {
        dim_poly,
        dim_v_fixed,
        dim_w_fixed,
        expected_dimension: dim_poly as i64 + dim_v_fixed as i64 - dim_w_fixed as i64,
        trials,
        surjective_trials: ranks.iter().filter(|&&r| r == dim_w_fixed).count(),
        ranks,
        minimal_surjective_degree,
    })
}

/// A documented configuration `(G, V, W, d, H)`.
#[derive(Clone, Copy, Debug)]
pub struct DimensionCase {
    pub name: &'static str,
    pub group: &'static str,
    pub v_weights: &'static str,
    pub w_weights: &'static str,
    pub degree: u32,
    /// Generators of `H`, in the syntax of [`Subgroup::parse`].
    pub stabilizer: &'static str,
}

impl DimensionCase {
    pub fn pair(&self) -> Result<RepPair, EquipolyError> {
        RepPair::new(AbelianRep::parse(self.group, self.v_weights)?, AbelianRep::parse(self.group, self.w_weights)?)
    }

    pub fn subgroup(&self) -> Result<Subgroup, EquipolyError> {
        let pair = self.pair()?;
        Subgroup::parse(pair.group(), self.stabilizer)
    }

    pub fn run(&self, trials: usize, rng: &mut impl Rng) -> Result<DimensionReport, EquipolyError> {
        check_dimension_formula(&self.pair()?, self.degree, &self.subgroup()?, trials, rng)
    }
}

pub const DIMENSION_TABLE: &[DimensionCase] = &[
    DimensionCase {
        name: "trivial-c2",
        group: "1",
        v_weights: "0;0",
        w_weights: "0;0",
        degree: 0,
        stabilizer: "trivial",
    },
    DimensionCase {
        name: "z2-sign-free",
        group: "2",
        v_weights: "1",
        w_weights: "1",
        degree: 1,
        stabilizer: "trivial",
    },
    DimensionCase { name: "z2-sign-origin", group: "2", v_weights: "1", w_weights: "1;0", degree: 2, stabilizer: "G" },
    DimensionCase { name: "z3-cube", group: "3", v_weights: "1", w_weights: "0;1", degree: 3, stabilizer: "trivial" },
    DimensionCase { name: "z3-square", group: "3", v_weights: "1", w_weights: "2", degree: 2, stabilizer: "trivial" },
    DimensionCase { name: "z4-partial", group: "4", v_weights: "1;2", w_weights: "2", degree: 2, stabilizer: "2" },
    DimensionCase {
        name: "z2z2-free",
        group: "2,2",
        v_weights: "1,0;0,1",
        w_weights: "1,1;0,0",
        degree: 2,
        stabilizer: "trivial",
    },
    DimensionCase {
        name: "z2z2-axis",
        group: "2,2",
        v_weights: "1,0;0,1",
        w_weights: "1,1;0,0",
        degree: 2,
        stabilizer: "0,1",
    },
    DimensionCase {
        name: "z5-invariants",
        group: "5",
        v_weights: "1",
        w_weights: "0",
        degree: 4,
        stabilizer: "trivial",
    },
    DimensionCase {
        name: "z6-mixed",
        group: "6",
        v_weights: "2;3",
        w_weights: "5;0",
        degree: 3,
        stabilizer: "trivial",
    },
];
