//! Float and term-by-term oracles for the equipoly suites.

use std::f64::consts::PI;

use floer_core::equipoly::*;
use num_complex::Complex64;
use num_traits::Zero;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn rep(group: &str, weights: &str) -> AbelianRep {
    AbelianRep::parse(group, weights).unwrap()
}

pub fn pair(group: &str, v: &str, w: &str) -> RepPair {
    RepPair::new(rep(group, v), rep(group, w)).unwrap()
}

/// Mixed-radix enumeration of `Z/m₁ × ⋯`, written out independently.
pub fn elements(group: &[u32]) -> Vec<Vec<u32>> {
    let total: u32 = group.iter().product();
    (0..total)
        .map(|mut n| {
            group
                .iter()
                .map(|&m| {
                    let x = n % m;
                    n /= m;
                    x
                })
                .collect()
        })
        .collect()
}

pub fn character(group: &[u32], weight: &[u32], g: &[u32]) -> Complex64 {
    let angle: f64 = (0..group.len()).map(|i| 2.0 * PI * (weight[i] * g[i]) as f64 / group[i] as f64).sum();
    Complex64::from_polar(1.0, angle)
}

pub fn float_rank(mut m: Vec<Vec<Complex64>>) -> usize {
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..m.len()).max_by(|&a, &b| m[a][c].norm().total_cmp(&m[b][c].norm())) else { break };
        if m[p][c].norm() < 1e-8 {
            continue;
        }
        m.swap(rank, p);
        for r in 0..m.len() {
            if r != rank {
                let f = m[r][c] / m[rank][c];
                for k in 0..cols {
                    let sub = f * m[rank][k];
                    m[r][k] -= sub;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// `dim Poly_d^G` as the rank of the Reynolds projection `P ↦ avg_g g·P∘g⁻¹`
/// applied to every monomial map, each image sampled at random points.
pub fn symmetrization_oracle(group: &[u32], v: &[Vec<u32>], w: &[Vec<u32>], d: u32, rng: &mut ChaCha8Rng) -> usize {
    let n = v.len();
    let mut monos: Vec<Vec<u32>> = vec![vec![]];
    for _ in 0..n {
        monos = monos
            .into_iter()
            .flat_map(|a| (0..=d).map(move |e| [a.clone(), vec![e]].concat()))
            .filter(|a| a.iter().sum::<u32>() <= d)
            .collect();
    }
    let points: Vec<Vec<Complex64>> = (0..24)
        .map(|_| (0..n).map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))).collect())
        .collect();
    let els = elements(group);
    let mut rows = Vec::new();
    for j in 0..w.len() {
        for a in &monos {
            let mut row = Vec::new();
            for x in &points {
                for out in 0..w.len() {
                    let mut acc = Complex64::zero();
                    if out == j {
                        for g in &els {
                            let mut val = character(group, &w[j], g);
                            for k in 0..n {
                                let moved = character(group, &v[k], g).conj() * x[k];
                                val *= moved.powu(a[k]);
                            }
                            acc += val;
                        }
                    }
                    row.push(acc / els.len() as f64);
                }
            }
            rows.push(row);
        }
    }
    if rows.is_empty() {
        0
    } else {
        float_rank(rows)
    }
}

pub fn all_weights(group: &[u32], dim: usize) -> Vec<Vec<Vec<u32>>> {
    let singles = elements(group);
    let mut out = vec![vec![]];
    for _ in 0..dim {
        out = out
            .into_iter()
            .flat_map(|ws: Vec<Vec<u32>>| singles.iter().map(move |s| [ws.clone(), vec![s.clone()]].concat()))
            .collect();
    }
    out
}

/// Term-by-term evaluation with repeated multiplication.
pub fn eval_oracle(v: &[Gq], p: &EquivariantPolynomial) -> Vec<Gq> {
    p.outputs
        .iter()
        .map(|terms| {
            let mut total = Gq::zero();
            for (alpha, c) in terms {
                let mut t = c.clone();
                for (k, &e) in alpha.iter().enumerate() {
                    for _ in 0..e {
                        t *= v[k].clone();
                    }
                }
                total += t;
            }
            total
        })
        .collect()
}

pub fn random_point(n: usize, rng: &mut ChaCha8Rng) -> Vec<Gq> {
    (0..n).map(|_| if rng.gen_range(0..5) == 0 { Gq::zero() } else { random_gq(rng) }).collect()
}

/// `g·v` with `g` acting through powers of `i`; only for groups of exponent
/// dividing 4.
pub fn act(group: &[u32], weights: &[Vec<u32>], g: &[u32], v: &[Gq]) -> Vec<Gq> {
    let powers = [gq(1, 0), gq(0, 1), gq(-1, 0), gq(0, -1)];
    v.iter()
        .zip(weights)
        .map(|(x, w)| {
            let quarter: u32 = (0..group.len()).map(|i| w[i] * g[i] * (4 / group[i])).sum();
            x * powers[(quarter % 4) as usize].clone()
        })
        .collect()
}

pub fn random_instance(rng: &mut ChaCha8Rng) -> (RepPair, RepPair, u32) {
    let groups = ["1", "2", "3", "4", "2,2"];
    let side = |rng: &mut ChaCha8Rng| {
        let g = groups[rng.gen_range(0..groups.len())];
        let parts = g.split(',').count();
        let mut weights = || {
            (0..rng.gen_range(1..=2))
                .map(|_| (0..parts).map(|_| rng.gen_range(0..4).to_string()).collect::<Vec<_>>().join(","))
                .collect::<Vec<_>>()
                .join(";")
        };
        let (v, w) = (weights(), weights());
        pair(g, &v, &w)
    };
    let a = side(rng);
    let b = side(rng);
    (a, b, rng.gen_range(0..=3))
}
