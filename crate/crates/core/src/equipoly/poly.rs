//! Equivariant polynomial maps with Gaussian-rational coefficients.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::Rng;

use super::rep::AbelianRep;
use super::EquipolyError;

/// A Gaussian rational `a + bi`.
pub type Gq = Complex<BigRational>;

pub fn gq(re: i64, im: i64) -> Gq {
    Complex::new(BigRational::from_integer(re.into()), BigRational::from_integer(im.into()))
}

pub fn format_gq(z: &Gq) -> String {
    match (z.re.is_zero(), z.im.is_zero()) {
        (_, true) => z.re.to_string(),
        (true, false) => format!("{}i", z.im),
        _ if z.im < BigRational::zero() => format!("{}-{}i", z.re, -z.im.clone()),
        _ => format!("{}+{}i", z.re, z.im),
    }
}

/// Nonzero, with small numerators and denominators.
pub fn random_gq(rng: &mut impl Rng) -> Gq {
    loop {
        let mut part =
            || BigRational::new(BigInt::from(rng.gen_range(-6i64..=6)), BigInt::from(rng.gen_range(1i64..=4)));
        let z = Complex::new(part(), part());
        if !z.is_zero() {
            return z;
        }
    }
}

/// `V` and `W` for the same group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RepPair {
    pub v: AbelianRep,
    pub w: AbelianRep,
}

impl RepPair {
    pub fn new(v: AbelianRep, w: AbelianRep) -> Result<Self, EquipolyError> {
        if v.group != w.group {
            return Err(EquipolyError::InvalidGroup("V and W are representations of different groups".into()));
        }
        Ok(Self { v, w })
    }

    pub fn group(&self) -> &[u32] {
        &self.v.group
    }

    /// `(G₁ × G₂, V₁ ⊕ V₂, W₁ ⊕ W₂)`.
    pub fn product(&self, other: &RepPair) -> RepPair {
        RepPair { v: self.v.direct_sum(&other.v), w: self.w.direct_sum(&other.w) }
    }

    /// `z^α e_j` is equivariant: `Σ_k α_k w(v_k) ≡ w(w_j)` in every factor.
    pub fn admits(&self, j: usize, alpha: &[u32]) -> bool {
        self.group().iter().enumerate().all(|(i, &m)| {
            let lhs: u64 = alpha.iter().zip(&self.v.weights).map(|(&a, w)| a as u64 * w[i] as u64).sum();
            lhs % m as u64 == self.w.weights[j][i] as u64
        })
    }

    /// Monomial basis `(j, α)` of `Poly_d^G(V, W)`.
    pub fn basis(&self, d: u32) -> Vec<(usize, Vec<u32>)> {
        let monos = monomials(self.v.dim(), d);
        (0..self.w.dim())
            .flat_map(|j| monos.iter().filter(move |a| self.admits(j, a)).map(move |a| (j, a.clone())))
            .collect()
    }
}

/// Exponent vectors in `n` variables of total degree at most `d`.
pub fn monomials(n: usize, d: u32) -> Vec<Vec<u32>> {
    let mut out = vec![vec![]];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|a: Vec<u32>| {
                let used: u32 = a.iter().sum();
                (0..=d - used).map(move |e| {
                    let mut a = a.clone();
                    a.push(e);
                    a
                })
            })
            .collect();
    }
    out.sort_by(|a, b| a.iter().sum::<u32>().cmp(&b.iter().sum()).then_with(|| a.cmp(b)));
    out
}

/// `dim_C Poly_d^G(V, W)`.
pub fn dim_poly(v: &AbelianRep, w: &AbelianRep, d: u32) -> Result<usize, EquipolyError> {
    Ok(RepPair::new(v.clone(), w.clone())?.basis(d).len())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquivariantPolynomial {
    pub n_vars: usize,
    pub degree_cap: u32,
    /// Per output coordinate, exponent vector to nonzero coefficient.
    pub outputs: Vec<BTreeMap<Vec<u32>, Gq>>,
}

fn monomial_value(v: &[Gq], alpha: &[u32]) -> Gq {
    alpha.iter().zip(v).fold(Gq::one(), |acc, (&a, x)| acc * x.powu(a))
}

impl EquivariantPolynomial {
    pub fn zero(n_vars: usize, n_out: usize, degree_cap: u32) -> Self {
        Self { n_vars, degree_cap, outputs: vec![BTreeMap::new(); n_out] }
    }

    pub fn add_term(&mut self, j: usize, alpha: Vec<u32>, c: Gq) {
        let entry = self.outputs[j].entry(alpha).or_insert_with(Gq::zero);
        *entry = entry.clone() + c;
        self.outputs[j].retain(|_, c| !c.is_zero());
    }

    pub fn is_zero(&self) -> bool {
        self.outputs.iter().all(BTreeMap::is_empty)
    }

    /// Membership in `Poly_d^G(V, W)`.
    pub fn validate(&self, pair: &RepPair) -> Result<(), EquipolyError> {
        if self.n_vars != pair.v.dim() || self.outputs.len() != pair.w.dim() {
            return Err(EquipolyError::ShapeMismatch("polynomial does not match V and W".into()));
        }
        for (j, terms) in self.outputs.iter().enumerate() {
            for alpha in terms.keys() {
                if alpha.len() != self.n_vars || alpha.iter().sum::<u32>() > self.degree_cap || !pair.admits(j, alpha) {
                    return Err(EquipolyError::NotEquivariant { output: j, monomial: alpha.clone() });
                }
            }
        }
        Ok(())
    }

    /// A random element of `Poly_d^G(V, W)`; each basis monomial is present
    /// with probability 3/4.
    pub fn random(pair: &RepPair, d: u32, rng: &mut impl Rng) -> Self {
        let mut p = Self::zero(pair.v.dim(), pair.w.dim(), d);
        for (j, alpha) in pair.basis(d) {
            if rng.gen_range(0..4) > 0 {
                p.add_term(j, alpha, random_gq(rng));
            }
        }
        p
    }

    pub fn from_coefficients(pair: &RepPair, d: u32, basis: &[(usize, Vec<u32>)], coeffs: &[Gq]) -> Self {
        let mut p = Self::zero(pair.v.dim(), pair.w.dim(), d);
        for ((j, alpha), c) in basis.iter().zip(coeffs) {
            p.add_term(*j, alpha.clone(), c.clone());
        }
        p
    }
}

/// `P(v)`, exactly.
pub fn eval(v: &[Gq], p: &EquivariantPolynomial) -> Result<Vec<Gq>, EquipolyError> {
    if v.len() != p.n_vars {
        return Err(EquipolyError::ShapeMismatch(format!("point has {} coordinates, P takes {}", v.len(), p.n_vars)));
    }
    Ok(p.outputs
        .iter()
        .map(|terms| terms.iter().fold(Gq::zero(), |acc, (a, c)| acc + c * monomial_value(v, a)))
        .collect())
}

/// `φ(P₁, P₂)(v₁, v₂) = (P₁(v₁), P₂(v₂))` over `G₁ × G₂`.
pub fn phi_embed(
    pair1: &RepPair,
    p1: &EquivariantPolynomial,
    pair2: &RepPair,
    p2: &EquivariantPolynomial,
) -> Result<(RepPair, EquivariantPolynomial), EquipolyError> {
    p1.validate(pair1)?;
    p2.validate(pair2)?;
    let (n1, n2) = (pair1.v.dim(), pair2.v.dim());
    let product = pair1.product(pair2);
    let mut p = EquivariantPolynomial::zero(n1 + n2, pair1.w.dim() + pair2.w.dim(), p1.degree_cap.max(p2.degree_cap));
    for (j, terms) in p1.outputs.iter().enumerate() {
        for (a, c) in terms {
            let mut alpha = a.clone();
            alpha.extend(std::iter::repeat_n(0, n2));
            p.add_term(j, alpha, c.clone());
        }
    }
    for (j, terms) in p2.outputs.iter().enumerate() {
        for (b, c) in terms {
            let mut alpha = vec![0; n1];
            alpha.extend(b);
            p.add_term(pair1.w.dim() + j, alpha, c.clone());
        }
    }
    Ok((product, p))
}

/// One factor of `ψ`: a point and a polynomial over that factor.
pub type Factor = (Vec<Gq>, EquivariantPolynomial);

/// `ψ(v₁, v₂, P) = ((v₁, P₁(·, v₂)), (v₂, P₂(v₁, ·)))`, where `P_i` is the
/// `W_i` block of `P`.
pub fn psi_split(
    pair1: &RepPair,
    pair2: &RepPair,
    v: &[Gq],
    p: &EquivariantPolynomial,
) -> Result<(Factor, Factor), EquipolyError> {
    p.validate(&pair1.product(pair2))?;
    let n1 = pair1.v.dim();
    if v.len() != p.n_vars {
        return Err(EquipolyError::ShapeMismatch("point does not lie in V₁ ⊕ V₂".into()));
    }
    let (v1, v2) = v.split_at(n1);
    let m1 = pair1.w.dim();
    let mut q1 = EquivariantPolynomial::zero(n1, m1, p.degree_cap);
    let mut q2 = EquivariantPolynomial::zero(v2.len(), pair2.w.dim(), p.degree_cap);
    for (j, terms) in p.outputs.iter().enumerate() {
        for (alpha, c) in terms {
            let (a, b) = alpha.split_at(n1);
            if j < m1 {
                q1.add_term(j, a.to_vec(), c * monomial_value(v2, b));
            } else {
                q2.add_term(j - m1, b.to_vec(), c * monomial_value(v1, a));
            }
        }
    }
    q1.validate(pair1)?;
    q2.validate(pair2)?;
    Ok(((v1.to_vec(), q1), (v2.to_vec(), q2)))
}
