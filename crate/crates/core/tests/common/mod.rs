//! Independent oracles shared by the integration tests. Nothing here calls
//! into the library's own reduction algorithms.
#![allow(dead_code)]

use std::collections::{HashSet, VecDeque};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::Rng;

pub mod equipoly;
pub mod strata;

pub type Rows = Vec<Vec<BigInt>>;

pub fn rows_of(m: &[&[i64]]) -> Rows {
    m.iter().map(|r| r.iter().map(|&v| BigInt::from(v)).collect()).collect()
}

pub fn random_rows(rng: &mut impl Rng, rows: usize, cols: usize, bound: i64) -> Rows {
    (0..rows).map(|_| (0..cols).map(|_| BigInt::from(rng.gen_range(-bound..=bound))).collect()).collect()
}

/// Fraction-free Gaussian elimination determinant.
pub fn det_bareiss(m: &Rows) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut a = m.clone();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(i, k);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// gcd of all k×k minors.
pub fn determinantal_divisor(m: &Rows, k: usize) -> BigInt {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut g = BigInt::zero();
    for rs in combinations(rows, k) {
        for cs in combinations(cols, k) {
            let sub: Rows = rs.iter().map(|&i| cs.iter().map(|&j| m[i][j].clone()).collect()).collect();
            g = g.gcd(&det_bareiss(&sub));
            if g.is_one() {
                return g;
            }
        }
    }
    g
}

/// Nonzero invariant factors from determinantal divisors `D_k / D_{k-1}`.
pub fn invariant_factors_by_minors(m: &Rows) -> Vec<BigInt> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut out = Vec::new();
    let mut prev = BigInt::one();
    for k in 1..=rows.min(cols) {
        let d = determinantal_divisor(m, k);
        if d.is_zero() {
            break;
        }
        out.push(&d / &prev);
        prev = d;
    }
    out
}

pub fn rational_rank(m: &Rows) -> usize {
    let mut a: Vec<Vec<BigRational>> =
        m.iter().map(|r| r.iter().map(|v| BigRational::from_integer(v.clone())).collect()).collect();
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(rank, p);
        for i in 0..rows {
            if i != rank && !a[i][c].is_zero() {
                let f = &a[i][c] / &a[rank][c];
                for j in c..cols {
                    let v = &a[rank][j] * &f;
                    a[i][j] -= v;
                }
            }
        }
        rank += 1;
    }
    rank
}

pub fn transpose(m: &Rows, cols: usize) -> Rows {
    (0..cols).map(|j| m.iter().map(|r| r[j].clone()).collect()).collect()
}

/// Full-rank lattice `L ⊆ Z^n` (spanned by the given vectors) in upper
/// triangular Hermite form, used to reduce vectors to canonical coset
/// representatives with `0 ≤ v_i < h_ii`.
pub struct Lattice {
    basis: Rows,
}

impl Lattice {
    /// `None` when the vectors do not span a full-rank lattice.
    pub fn new(vectors: &Rows, n: usize) -> Option<Self> {
        let mut pool: Rows = vectors.iter().filter(|v| v.iter().any(|x| !x.is_zero())).cloned().collect();
        let mut basis: Rows = Vec::new();
        for c in 0..n {
            // gcd-combine column c over the pool, keeping vectors zero before c.
            loop {
                let nonzero: Vec<usize> = (0..pool.len()).filter(|&i| !pool[i][c].is_zero()).collect();
                if nonzero.len() <= 1 {
                    break;
                }
                let piv = *nonzero.iter().min_by_key(|&&i| pool[i][c].abs()).expect("nonempty");
                for &i in &nonzero {
                    if i == piv {
                        continue;
                    }
                    let q = pool[i][c].div_floor(&pool[piv][c]);
                    let row = pool[piv].clone();
                    for (x, y) in pool[i].iter_mut().zip(&row) {
                        *x -= &q * y;
                    }
                }
            }
            let idx = (0..pool.len()).find(|&i| !pool[i][c].is_zero())?;
            let mut row = pool.remove(idx);
            if row[c].is_negative() {
                row.iter_mut().for_each(|x| *x = -x.clone());
            }
            basis.push(row);
            pool.retain(|v| v.iter().any(|x| !x.is_zero()));
        }
        Some(Self { basis })
    }

    pub fn index(&self) -> BigInt {
        self.basis.iter().enumerate().map(|(i, r)| r[i].clone()).product()
    }

    pub fn reduce(&self, v: &[BigInt]) -> Vec<BigInt> {
        let mut v = v.to_vec();
        for (i, row) in self.basis.iter().enumerate() {
            let q = v[i].div_floor(&row[i]);
            if !q.is_zero() {
                for (x, y) in v.iter_mut().zip(row) {
                    *x -= &q * y;
                }
            }
        }
        v
    }

    /// All elements of `Z^n / L`.
    pub fn elements(&self) -> Vec<Vec<BigInt>> {
        let mut out = vec![vec![]];
        for (i, row) in self.basis.iter().enumerate() {
            let h: i64 = row[i].clone().try_into().expect("small index");
            out = out
                .into_iter()
                .flat_map(|prefix| {
                    (0..h).map(move |x| {
                        let mut p = prefix.clone();
                        p.push(BigInt::from(x));
                        p
                    })
                })
                .collect();
        }
        out
    }

    /// Subgroup generated by `gens`, by breadth-first closure.
    pub fn subgroup(&self, gens: &Rows) -> Vec<Vec<BigInt>> {
        let n = self.basis.len();
        let zero = vec![BigInt::zero(); n];
        let mut seen: HashSet<Vec<BigInt>> = HashSet::from([zero.clone()]);
        let mut queue = VecDeque::from([zero]);
        let gens: Rows = gens.iter().map(|g| self.reduce(g)).collect();
        while let Some(x) = queue.pop_front() {
            for g in &gens {
                let y: Vec<BigInt> = x.iter().zip(g).map(|(a, b)| a + b).collect();
                let y = self.reduce(&y);
                if seen.insert(y.clone()) {
                    queue.push_back(y);
                }
            }
        }
        seen.into_iter().collect()
    }

    /// `log_p |{x ∈ S : p·x = 0}|`, the number of p-primary cyclic summands of S.
    pub fn p_rank(&self, elements: &[Vec<BigInt>], p: u64) -> usize {
        let pb = BigInt::from(p);
        let count = elements
            .iter()
            .filter(|x| {
                let px: Vec<BigInt> = x.iter().map(|a| a * &pb).collect();
                self.reduce(&px).iter().all(Zero::is_zero)
            })
            .count();
        let mut k = 0;
        let mut c = count;
        while c > 1 {
            assert_eq!(c % p as usize, 0, "p-torsion subgroup order is a power of p");
            c /= p as usize;
            k += 1;
        }
        k
    }
}

pub fn small_primes(limit: u64) -> Vec<u64> {
    (2..=limit).filter(|&n| (2..n).all(|d| n % d != 0)).collect()
}
