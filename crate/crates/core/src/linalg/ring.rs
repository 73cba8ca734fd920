//! The two base rings: `Z` and the Novikov ring, behind one Euclidean interface.

use std::fmt::Debug;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::novikov::{canonical_associate_with_unit, long_division, NovikovError, NovikovSeries, Precision};

use super::LinalgError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub enum BaseRing {
    #[serde(rename = "Z")]
    Integers,
    #[serde(rename = "Lambda")]
    Novikov,
}

/// A Euclidean domain with a size function on which `reduce` makes progress.
pub trait EuclideanRing {
    type Elem: Clone + Debug + PartialEq;

    fn base(&self) -> BaseRing;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn is_unit(&self, a: &Self::Elem) -> bool;

    /// `Σ a_k·b_k`.
    fn dot<'a>(&self, pairs: impl IntoIterator<Item = (&'a Self::Elem, &'a Self::Elem)>) -> Self::Elem
    where
        Self::Elem: 'a,
    {
        pairs.into_iter().fold(self.zero(), |acc, (a, b)| self.add(&acc, &self.mul(a, b)))
    }

    /// Pivot preference: smaller keys first. The first component is the
    /// Euclidean size.
    fn pivot_key(&self, a: &Self::Elem) -> (BigInt, i64);

    /// `(q, r)` with `a = q·b + r` and `r` zero or of smaller size than `b`.
    fn reduce(&self, a: &Self::Elem, b: &Self::Elem) -> Result<(Self::Elem, Self::Elem), LinalgError>;

    /// Exact quotient `a / d`, or `None` when `d` does not divide `a`.
    fn exact_div(&self, a: &Self::Elem, d: &Self::Elem) -> Result<Option<Self::Elem>, LinalgError>;

    /// Canonical associate `c` of `a` and a unit `u` with `c = a·u`.
    fn normalize(&self, a: &Self::Elem) -> Result<(Self::Elem, Self::Elem), LinalgError>;

    fn divides(&self, d: &Self::Elem, a: &Self::Elem) -> Result<bool, LinalgError> {
        if self.is_zero(a) {
            return Ok(true);
        }
        if self.is_zero(d) {
            return Ok(false);
        }
        Ok(self.exact_div(a, d)?.is_some())
    }

    /// Precision certified by a list of diagonal entries (Λ only).
    fn certify(&self, _diagonal: &[Self::Elem]) -> Option<Precision> {
        None
    }
}

/// The integers.
#[derive(Clone, Copy, Debug, Default)]
pub struct Integers;

impl EuclideanRing for Integers {
    type Elem = BigInt;

    fn base(&self) -> BaseRing {
        BaseRing::Integers
    }
    fn zero(&self) -> BigInt {
        BigInt::zero()
    }
    fn one(&self) -> BigInt {
        BigInt::one()
    }
    fn is_zero(&self, a: &BigInt) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a + b
    }
    fn sub(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a - b
    }
    fn mul(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a * b
    }
    fn dot<'a>(&self, pairs: impl IntoIterator<Item = (&'a BigInt, &'a BigInt)>) -> BigInt {
        let mut acc = BigInt::zero();
        for (a, b) in pairs {
            if !a.is_zero() && !b.is_zero() {
                acc += a * b;
            }
        }
        acc
    }
    fn neg(&self, a: &BigInt) -> BigInt {
        -a
    }
    fn is_unit(&self, a: &BigInt) -> bool {
        a.abs().is_one()
    }
    fn pivot_key(&self, a: &BigInt) -> (BigInt, i64) {
        (a.abs(), 0)
    }
    fn reduce(&self, a: &BigInt, b: &BigInt) -> Result<(BigInt, BigInt), LinalgError> {
        if b.is_zero() {
            return Err(LinalgError::DivisionByZero);
        }
        Ok(a.div_rem(b))
    }
    fn exact_div(&self, a: &BigInt, d: &BigInt) -> Result<Option<BigInt>, LinalgError> {
        if d.is_zero() {
            return Ok(a.is_zero().then(BigInt::zero));
        }
        let (q, r) = a.div_rem(d);
        Ok(r.is_zero().then_some(q))
    }
    fn normalize(&self, a: &BigInt) -> Result<(BigInt, BigInt), LinalgError> {
        let u = if a.is_negative() { -BigInt::one() } else { BigInt::one() };
        Ok((a.abs(), u))
    }
}

/// The Novikov ring at a fixed working precision `K`, measured relative to
/// valuations: quotients are carried `K` orders past their leading term.
#[derive(Clone, Copy, Debug)]
pub struct Novikov {
    pub precision: i64,
}

impl Novikov {
    pub fn new(precision: i64) -> Self {
        Self { precision }
    }
}

impl EuclideanRing for Novikov {
    type Elem = NovikovSeries;

    fn base(&self) -> BaseRing {
        BaseRing::Novikov
    }
    fn zero(&self) -> NovikovSeries {
        NovikovSeries::zero()
    }
    fn one(&self) -> NovikovSeries {
        NovikovSeries::one()
    }
    fn is_zero(&self, a: &NovikovSeries) -> bool {
        a.is_zero_to_precision()
    }
    fn add(&self, a: &NovikovSeries, b: &NovikovSeries) -> NovikovSeries {
        a.add(b)
    }
    fn sub(&self, a: &NovikovSeries, b: &NovikovSeries) -> NovikovSeries {
        a.sub(b)
    }
    fn mul(&self, a: &NovikovSeries, b: &NovikovSeries) -> NovikovSeries {
        a.mul(b)
    }
    fn dot<'a>(&self, pairs: impl IntoIterator<Item = (&'a NovikovSeries, &'a NovikovSeries)>) -> NovikovSeries {
        NovikovSeries::sum_of_products(pairs)
    }
    fn neg(&self, a: &NovikovSeries) -> NovikovSeries {
        a.neg()
    }
    fn is_unit(&self, a: &NovikovSeries) -> bool {
        a.is_unit().unwrap_or(false)
    }
    fn pivot_key(&self, a: &NovikovSeries) -> (BigInt, i64) {
        match a.leading() {
            Some((e, c)) => (c.abs(), e),
            None => (BigInt::zero(), i64::MAX),
        }
    }

    /// Long division of `a` by `b`. When an integer division fails at some
    /// order, the quotient is corrected there by the floor quotient so the
    /// remainder's leading coefficient lands strictly between 0 and `|lead(b)|`.
    fn reduce(&self, a: &NovikovSeries, b: &NovikovSeries) -> Result<(NovikovSeries, NovikovSeries), LinalgError> {
        let (vb, lead_b) = match b.leading() {
            Some((e, c)) => (e, c.clone()),
            None => return Err(LinalgError::DivisionByZero),
        };
        let va = a.valuation_lower_bound().unwrap_or(vb);
        let out = va - vb + self.precision;
        let ld = long_division(a, b, out).map_err(LinalgError::Novikov)?;
        let Some(order) = ld.failed_at else {
            // The quotient is truncated; recomputing the remainder makes it
            // vanish to the precision the truncation supports.
            let r = a.sub(&ld.quotient.mul(b));
            return Ok((ld.quotient, r));
        };
        let (_, lead_r) = ld.remainder.leading().expect("failed division has a remainder");
        let s = lead_r.div_floor(&lead_b);
        let q = NovikovSeries::from_terms(
            ld.quotient.terms().map(|(e, c)| (e, c.clone())).chain([(order, s)]),
            Precision::Exact,
        );
        let r = a.sub(&q.mul(b));
        Ok((q, r))
    }

    fn exact_div(&self, a: &NovikovSeries, d: &NovikovSeries) -> Result<Option<NovikovSeries>, LinalgError> {
        let Some((vd, _)) = d.leading() else {
            return Ok(a.is_zero_to_precision().then(NovikovSeries::zero));
        };
        let va = a.valuation_lower_bound().unwrap_or(vd);
        match crate::novikov::divide(a, d, va - vd + self.precision) {
            Ok(q) => Ok(Some(q)),
            Err(NovikovError::NotDivisible { .. }) => Ok(None),
            Err(e) => Err(LinalgError::Novikov(e)),
        }
    }

    fn normalize(&self, a: &NovikovSeries) -> Result<(NovikovSeries, NovikovSeries), LinalgError> {
        canonical_associate_with_unit(a, self.precision).map_err(LinalgError::Novikov)
    }

    fn certify(&self, diagonal: &[NovikovSeries]) -> Option<Precision> {
        let mut p = Precision::Exact;
        for d in diagonal {
            if let Some(rel) = d.relative_precision() {
                p = p.min(Precision::Finite(rel));
            }
        }
        Some(p)
    }
}
