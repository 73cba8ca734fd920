//! Module structure of cokernels and subquotients, plus the two rank and
//! torsion comparisons used by the Arnold bound.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed};
use serde::Serialize;

use crate::novikov::Precision;

use super::matrix::{IntMatrix, Matrix};
use super::ring::{BaseRing, EuclideanRing, Integers};
use super::snf::smith;
use super::LinalgError;

/// `R^rank ⊕ R/(a₁) ⊕ … ⊕ R/(a_k)` with `a₁ | … | a_k` non-units.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleStructure<E> {
    pub rank: usize,
    pub invariant_factors: Vec<E>,
    pub base_ring: BaseRing,
    /// Relative precision certified for the invariant factors (Λ only).
    pub certified_precision: Option<Precision>,
}

impl<E> ModuleStructure<E> {
    /// Number of invariant factors.
    pub fn tau(&self) -> usize {
        self.invariant_factors.len()
    }

    pub fn is_zero(&self) -> bool {
        self.rank == 0 && self.invariant_factors.is_empty()
    }
}

impl<E: fmt::Display> fmt::Display for ModuleStructure<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let symbol = match self.base_ring {
            BaseRing::Integers => "Z",
            BaseRing::Novikov => "Λ",
        };
        let mut parts = Vec::new();
        match self.rank {
            0 => {}
            1 => parts.push(symbol.to_string()),
            r => parts.push(format!("{symbol}^{r}")),
        }
        for a in &self.invariant_factors {
            parts.push(format!("{symbol}/({a})"));
        }
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(" ⊕ "))
        }
    }
}

#[derive(Serialize)]
struct StructureJson {
    rank: usize,
    invariant_factors: Vec<String>,
    base_ring: BaseRing,
    #[serde(skip_serializing_if = "Option::is_none")]
    certified_precision: Option<String>,
}

impl<E: fmt::Display> ModuleStructure<E> {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(StructureJson {
            rank: self.rank,
            invariant_factors: self.invariant_factors.iter().map(|a| a.to_string()).collect(),
            base_ring: self.base_ring,
            certified_precision: self.certified_precision.map(|p| match p {
                Precision::Exact => "exact".to_string(),
                Precision::Finite(k) => k.to_string(),
            }),
        })
        .expect("serializable")
    }
}

/// Cokernel of `m` acting on row vectors: `R^cols / (row span of m)`.
pub fn cokernel<R: EuclideanRing>(ring: &R, m: &Matrix<R::Elem>) -> Result<ModuleStructure<R::Elem>, LinalgError> {
    let snf = smith(ring, m)?;
    let invariant_factors = snf.nonzero_diagonal().iter().filter(|d| !ring.is_unit(d)).cloned().collect();
    Ok(ModuleStructure {
        rank: m.cols() - snf.rank,
        invariant_factors,
        base_ring: ring.base(),
        certified_precision: ring.certify(snf.nonzero_diagonal()),
    })
}

/// Columns spanning the kernel of `m` (as a map on column vectors); they are
/// part of an invertible change of basis, hence a basis of the kernel.
pub fn kernel_basis<R: EuclideanRing>(ring: &R, m: &Matrix<R::Elem>) -> Result<Matrix<R::Elem>, LinalgError> {
    let snf = smith(ring, m)?;
    Ok(snf.right.columns(snf.rank..m.cols()))
}

/// A basis of the column span of `m`, by Euclidean column reduction.
pub fn column_span_basis<R: EuclideanRing>(ring: &R, m: &Matrix<R::Elem>) -> Result<Matrix<R::Elem>, LinalgError> {
    let mut a = m.clone();
    let mut next = 0;
    for row in 0..a.rows() {
        if next == a.cols() {
            break;
        }
        loop {
            let mut best: Option<((BigInt, i64), usize)> = None;
            for j in next..a.cols() {
                let e = a.get(row, j);
                if ring.is_zero(e) {
                    continue;
                }
                let key = ring.pivot_key(e);
                if best.as_ref().is_none_or(|(k, _)| key < *k) {
                    best = Some((key, j));
                }
            }
            let Some((_, j)) = best else { break };
            a.swap_cols(next, j);
            let mut dirty = false;
            for j in next + 1..a.cols() {
                if ring.is_zero(a.get(row, j)) {
                    continue;
                }
                let (q, _) = ring.reduce(a.get(row, j), a.get(row, next))?;
                a.col_axpy(ring, j, next, &q);
                if !ring.is_zero(a.get(row, j)) {
                    dirty = true;
                }
            }
            if !dirty {
                next += 1;
                break;
            }
        }
    }
    Ok(a.columns(0..next))
}

/// Structure of `span(ker_basis) / span(img_basis)` (column spans).
pub fn subquotient<R: EuclideanRing>(
    ring: &R,
    ker_basis: &Matrix<R::Elem>,
    img_basis: &Matrix<R::Elem>,
) -> Result<ModuleStructure<R::Elem>, LinalgError> {
    if ker_basis.rows() != img_basis.rows() {
        return Err(LinalgError::ShapeMismatch(format!(
            "kernel basis has {} rows, image basis {}",
            ker_basis.rows(),
            img_basis.rows()
        )));
    }
    let coords = solve_in_span(ring, ker_basis, img_basis)?;
    cokernel(ring, &coords.transpose())
}

/// `X` with `ker_basis · X = img` (columns of `ker_basis` independent).
pub fn solve_in_span<R: EuclideanRing>(
    ring: &R,
    basis: &Matrix<R::Elem>,
    img: &Matrix<R::Elem>,
) -> Result<Matrix<R::Elem>, LinalgError> {
    let k = basis.cols();
    let snf = smith(ring, basis)?;
    if snf.rank < k {
        return Err(LinalgError::DependentBasis);
    }
    let li = snf.left.mul(ring, img);
    let mut y = Matrix::zeros(ring, k, img.cols());
    for c in 0..img.cols() {
        for t in 0..li.rows() {
            let v = li.get(t, c);
            if t < k {
                match ring.exact_div(v, &snf.diagonal[t])? {
                    Some(q) => y.set(t, c, q),
                    None => return Err(LinalgError::NotASubmodule { column: c }),
                }
            } else if !ring.is_zero(v) {
                return Err(LinalgError::NotASubmodule { column: c });
            }
        }
    }
    Ok(snf.right.mul(ring, &y))
}

/// Prime factors of `|n|`, ascending and without repetition.
pub fn prime_factors(n: &BigInt) -> Vec<BigInt> {
    let mut n = n.abs();
    let mut out = Vec::new();
    let mut p = BigInt::from(2);
    while &p * &p <= n {
        if n.is_multiple_of(&p) {
            out.push(p.clone());
            while n.is_multiple_of(&p) {
                n /= &p;
            }
        }
        p += 1;
    }
    if n > BigInt::one() {
        out.push(n);
    }
    out
}

/// Number of invariant factors divisible by `p`, i.e. the number of
/// `p`-primary cyclic summands.
pub fn p_count(factors: &[BigInt], p: &BigInt) -> usize {
    factors.iter().filter(|a| a.is_multiple_of(p)).count()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TorsionRankReport {
    pub rank_z: usize,
    pub rank_free: usize,
    pub k: usize,
    pub rank_s: usize,
    pub holds: bool,
}

/// For `S ⊆ Z = Z^z_rank` spanned by the columns of `s_basis` with
/// `Z/S ≅ F ⊕ (k cyclic factors)`: `rank Z ≥ rank F + k` and `rank S ≥ k`.
pub fn check_quotient_ranks(z_rank: usize, s_basis: &IntMatrix) -> Result<TorsionRankReport, LinalgError> {
    if s_basis.rows() != z_rank {
        return Err(LinalgError::ShapeMismatch(format!("S has {} rows, Z has rank {z_rank}", s_basis.rows())));
    }
    let q = cokernel(&Integers, &s_basis.transpose())?;
    let rank_s = smith(&Integers, s_basis)?.rank;
    let k = q.tau();
    Ok(TorsionRankReport { rank_z: z_rank, rank_free: q.rank, k, rank_s, holds: z_rank >= q.rank + k && rank_s >= k })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubmoduleTorsionReport {
    pub m: ModuleStructure<BigInt>,
    pub n: ModuleStructure<BigInt>,
    /// `(p, count in N, count in M)` for every prime dividing a factor of N.
    pub prime_counts: Vec<(BigInt, usize, usize)>,
    pub rank_ok: bool,
    pub primes_ok: bool,
    pub tau_ok: bool,
}

impl SubmoduleTorsionReport {
    pub fn holds(&self) -> bool {
        self.rank_ok && self.primes_ok && self.tau_ok
    }
}

/// For `M = Z^n / span(relations)` and `N ⊆ M` generated by the images of
/// the columns of `generators`: rank, per-prime and invariant-factor counts
/// of `N` are bounded by those of `M`.
pub fn check_submodule_bounds(
    relations: &IntMatrix,
    generators: &IntMatrix,
) -> Result<SubmoduleTorsionReport, LinalgError> {
    if relations.rows() != generators.rows() {
        return Err(LinalgError::ShapeMismatch("relations and generators live in different ambient modules".into()));
    }
    let ring = Integers;
    let m = cokernel(&ring, &relations.transpose())?;
    let rel_basis = column_span_basis(&ring, relations)?;
    let sum_basis = column_span_basis(&ring, &generators.hcat(relations))?;
    let n = subquotient(&ring, &sum_basis, &rel_basis)?;
    let mut prime_counts = Vec::new();
    let mut primes: Vec<BigInt> = n.invariant_factors.iter().flat_map(prime_factors).collect();
    primes.sort();
    primes.dedup();
    let mut primes_ok = true;
    for p in primes {
        let cn = p_count(&n.invariant_factors, &p);
        let cm = p_count(&m.invariant_factors, &p);
        primes_ok &= cn <= cm;
        prime_counts.push((p, cn, cm));
    }
    Ok(SubmoduleTorsionReport { rank_ok: n.rank <= m.rank, tau_ok: n.tau() <= m.tau(), primes_ok, prime_counts, m, n })
}
