//! Randomly generated Morse/Floer data satisfying the chain-level identities
//! by construction.
//!
//! The Morse differential is `d = A·D₀·A⁻¹` for a based differential `D₀`
//! (disjoint pairs `x ↦ c·T^k y`) and a class-preserving unipotent `A`. The
//! Floer side adds acyclic pairs with unit coefficients and conjugates by a
//! further unipotent `B`. With `P = Id + dk + kd` and `P' = Id + dk' + k'd`
//! for `T`-divisible `k, k'`,
//!
//! ```text
//! PSS = B·ι·P,   SSP = P'·π·B⁻¹,   pearl = SSP·PSS + d·h - h·d,
//! ```
//!
//! where `h = A·h₀·A⁻¹` with `D₀·h₀·D₀ = 0`, so `pearl` is itself a
//! unitriangular chain map.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use num_traits::ToPrimitive;

use crate::linalg::{LambdaMatrix, Matrix, Novikov};
use crate::novikov::{NovikovSeries, DEFAULT_PRECISION};

use super::data::{BimoduleSpec, FlowCategoryData, GeneratorSpec, Incidence};

/// Energy constant used for every synthetic bimodule.
pub const SYNTHETIC_ENERGY_CONSTANT: i64 = 2;

const CLASSES: i64 = 4;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HomotopyFixture {
    pub morse: FlowCategoryData,
    pub floer: FlowCategoryData,
    pub pss: BimoduleSpec,
    pub ssp: BimoduleSpec,
    pub pearl: BimoduleSpec,
    pub homotopy: BimoduleSpec,
}

impl HomotopyFixture {
    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }
}

struct Gens {
    ids: Vec<String>,
    class: Vec<i64>,
}

impl Gens {
    fn len(&self) -> usize {
        self.ids.len()
    }

    fn category(&self, d: &LambdaMatrix) -> FlowCategoryData {
        FlowCategoryData {
            two_n: 0,
            omega: CLASSES,
            generators: self
                .ids
                .iter()
                .zip(&self.class)
                .map(|(id, &c)| GeneratorSpec { id: id.clone(), index: c, action: CLASSES - 1 - c })
                .collect(),
            incidences: incidences(d, self, self),
        }
    }
}

fn incidences(m: &LambdaMatrix, source: &Gens, target: &Gens) -> Vec<Incidence> {
    let mut out = Vec::new();
    for col in 0..m.cols() {
        for row in 0..m.rows() {
            for (t, c) in m.get(row, col).terms() {
                out.push(Incidence {
                    from: source.ids[col].clone(),
                    to: target.ids[row].clone(),
                    t,
                    count: c.to_i64().expect("synthetic counts stay small"),
                });
            }
        }
    }
    out
}

fn spec(m: &LambdaMatrix, source: &Gens, target: &Gens, degree: i64) -> BimoduleSpec {
    BimoduleSpec { energy_constant: SYNTHETIC_ENERGY_CONSTANT, degree, incidences: incidences(m, source, target) }
}

fn ring() -> Novikov {
    Novikov::new(DEFAULT_PRECISION)
}

fn zeros(r: usize, c: usize) -> LambdaMatrix {
    Matrix::filled(r, c, NovikovSeries::zero())
}

fn nonzero_coeff(rng: &mut ChaCha8Rng, bound: i64) -> i64 {
    let v = rng.gen_range(1..=bound);
    if rng.gen_bool(0.5) {
        -v
    } else {
        v
    }
}

/// `(A, A⁻¹)` for a product of class-preserving elementary matrices.
fn unipotent(rng: &mut ChaCha8Rng, gens: &Gens, ops: usize) -> (LambdaMatrix, LambdaMatrix) {
    let r = ring();
    let n = gens.len();
    let mut a = Matrix::identity(&r, n);
    let mut inv = Matrix::identity(&r, n);
    for _ in 0..ops {
        let i = rng.gen_range(0..n);
        let same: Vec<usize> = (0..n).filter(|&j| j != i && gens.class[j] == gens.class[i]).collect();
        let Some(&j) = same.choose(rng) else { continue };
        let e = NovikovSeries::monomial(nonzero_coeff(rng, 2), rng.gen_range(0..=1));
        // A ← A·(Id + e·E_ij), A⁻¹ ← (Id - e·E_ij)·A⁻¹
        a.col_axpy(&r, j, i, &e.neg());
        inv.row_axpy(&r, i, j, &e);
    }
    (a, inv)
}

/// Random class-raising map with `T`-divisible entries on allowed positions.
fn raising(rng: &mut ChaCha8Rng, gens: &Gens, allowed: impl Fn(usize, usize) -> bool) -> LambdaMatrix {
    let n = gens.len();
    let mut m = zeros(n, n);
    for b in 0..n {
        for a in 0..n {
            if gens.class[a] == gens.class[b] + 1 && allowed(a, b) && rng.gen_bool(0.5) {
                m.set(a, b, NovikovSeries::monomial(nonzero_coeff(rng, 3), rng.gen_range(1..=2)));
            }
        }
    }
    m
}

fn col_nonzero(m: &LambdaMatrix, c: usize) -> bool {
    (0..m.rows()).any(|r| !m.get(r, c).is_exact_zero())
}

fn row_nonzero(m: &LambdaMatrix, r: usize) -> bool {
    (0..m.cols()).any(|c| !m.get(r, c).is_exact_zero())
}

struct Draw {
    morse: Gens,
    floer: Gens,
    d: LambdaMatrix,
    d_floer: LambdaMatrix,
    pss: LambdaMatrix,
    ssp: LambdaMatrix,
    pearl: LambdaMatrix,
    h: LambdaMatrix,
}

impl Draw {
    /// Every single-coefficient change of `h`, `pss` or `ssp` moves one side
    /// of the homotopy identity.
    fn detectable(&self) -> bool {
        let n = self.morse.len();
        let m = self.floer.len();
        let h_ok = (0..n).all(|b| {
            (0..n).all(|a| {
                self.morse.class[a] != self.morse.class[b] + 1 || col_nonzero(&self.d, a) || row_nonzero(&self.d, b)
            })
        });
        let pss_ok = (0..m).all(|a| col_nonzero(&self.ssp, a));
        let ssp_ok = (0..m).all(|b| row_nonzero(&self.pss, b));
        h_ok && pss_ok && ssp_ok
    }
}

fn draw(rng: &mut ChaCha8Rng) -> Draw {
    let r = ring();
    let mut morse = Gens { ids: Vec::new(), class: Vec::new() };
    for c in 0..CLASSES {
        for k in 0..rng.gen_range(1..=3) {
            morse.ids.push(format!("x{c}_{k}"));
            morse.class.push(c);
        }
    }
    let n = morse.len();

    // Based differential with disjoint pairs.
    let mut d0 = zeros(n, n);
    let mut used: BTreeSet<usize> = BTreeSet::new();
    for x in 0..n {
        if used.contains(&x) || morse.class[x] == 0 || rng.gen_bool(0.4) {
            continue;
        }
        let free: Vec<usize> = (0..n).filter(|&y| morse.class[y] == morse.class[x] - 1 && !used.contains(&y)).collect();
        if let Some(&y) = free.choose(rng) {
            d0.set(y, x, NovikovSeries::monomial(nonzero_coeff(rng, 3), rng.gen_range(0..=1)));
            used.insert(x);
            used.insert(y);
        }
    }
    let (a, a_inv) = unipotent(rng, &morse, 3 * n);
    let d = a.mul(&r, &d0).mul(&r, &a_inv);

    // Floer generators: copies of the Morse ones followed by acyclic pairs.
    let mut floer =
        Gens { ids: morse.ids.iter().map(|id| id.replacen('x', "y", 1)).collect(), class: morse.class.clone() };
    let pairs = rng.gen_range(1..=2);
    for k in 0..pairs {
        let c = rng.gen_range(1..CLASSES);
        floer.ids.push(format!("u{k}"));
        floer.class.push(c);
        floer.ids.push(format!("v{k}"));
        floer.class.push(c - 1);
    }
    let m = floer.len();
    let mut e = zeros(m, m);
    for i in 0..n {
        for j in 0..n {
            e.set(i, j, d.get(i, j).clone());
        }
    }
    for k in 0..pairs {
        let u = n + 2 * k;
        let sign = if rng.gen_bool(0.5) { 1 } else { -1 };
        e.set(u + 1, u, NovikovSeries::monomial(sign, rng.gen_range(0..=1)));
    }
    let (b, b_inv) = unipotent(rng, &floer, 3 * m);
    let d_floer = b.mul(&r, &e).mul(&r, &b_inv);

    let incl = Matrix::from_fn(m, n, |i, j| NovikovSeries::from_int(i64::from(i == j)));
    let proj = incl.transpose();
    let id = Matrix::identity(&r, n);
    let k1 = raising(rng, &morse, |_, _| true);
    let k2 = raising(rng, &morse, |_, _| true);
    let p1 = id.add(&r, &d.mul(&r, &k1)).add(&r, &k1.mul(&r, &d));
    let p2 = id.add(&r, &d.mul(&r, &k2)).add(&r, &k2.mul(&r, &d));
    let pss = b.mul(&r, &incl).mul(&r, &p1);
    let ssp = p2.mul(&r, &proj).mul(&r, &b_inv);

    // D₀·h₀·D₀ = 0 when no entry of h₀ joins a D₀-target to a D₀-source.
    let h0 = raising(rng, &morse, |x, y| !row_nonzero(&d0, y) || !col_nonzero(&d0, x));
    let h = a.mul(&r, &h0).mul(&r, &a_inv);
    let pearl = ssp.mul(&r, &pss).add(&r, &d.mul(&r, &h)).sub(&r, &h.mul(&r, &d));

    Draw { morse, floer, d, d_floer, pss, ssp, pearl, h }
}

/// A fixture whose homotopy identity detects every single-coefficient
/// perturbation of `h`, `pss` and `ssp`.
pub fn homotopy_fixture(seed: u64) -> HomotopyFixture {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut dr = draw(&mut rng);
    while !dr.detectable() {
        dr = draw(&mut rng);
    }
    HomotopyFixture {
        morse: dr.morse.category(&dr.d),
        floer: dr.floer.category(&dr.d_floer),
        pss: spec(&dr.pss, &dr.morse, &dr.floer, 0),
        ssp: spec(&dr.ssp, &dr.floer, &dr.morse, 0),
        pearl: spec(&dr.pearl, &dr.morse, &dr.morse, 0),
        homotopy: spec(&dr.h, &dr.morse, &dr.morse, 1),
    }
}
