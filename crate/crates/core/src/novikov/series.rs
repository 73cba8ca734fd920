//! Precision-tracked elements of the integral Novikov ring `Z((T))`.
//!
//! An element is a finite map from exponents to nonzero integer coefficients
//! together with a [`Precision`]. A finite precision `K` means the element is
//! a jet: every coefficient at an exponent `< K` is known (absent means zero)
//! and nothing is known at or above `K`. Every operation computes the
//! precision its output actually supports from the precisions of its inputs.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::NovikovError;

/// Working precision used when a caller does not specify one.
pub const DEFAULT_PRECISION: i64 = 32;

/// How much of a series is known.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Precision {
    /// A Laurent polynomial, fully known.
    Exact,
    /// Coefficients known for all exponents `< K`.
    Finite(i64),
}

impl Precision {
    pub fn bound(self) -> Option<i64> {
        match self {
            Precision::Exact => None,
            Precision::Finite(k) => Some(k),
        }
    }

    pub fn is_exact(self) -> bool {
        matches!(self, Precision::Exact)
    }

    /// True when the coefficient at `exponent` is known.
    pub fn covers(self, exponent: i64) -> bool {
        match self {
            Precision::Exact => true,
            Precision::Finite(k) => exponent < k,
        }
    }

    /// Precision after multiplying by `T^k`.
    pub fn shift(self, k: i64) -> Precision {
        match self {
            Precision::Exact => Precision::Exact,
            Precision::Finite(p) => Precision::Finite(p + k),
        }
    }
}

impl PartialOrd for Precision {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Precision {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Precision::Exact, Precision::Exact) => Ordering::Equal,
            (Precision::Exact, Precision::Finite(_)) => Ordering::Greater,
            (Precision::Finite(_), Precision::Exact) => Ordering::Less,
            (Precision::Finite(a), Precision::Finite(b)) => a.cmp(b),
        }
    }
}

/// The T-adic valuation of a series.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Valuation {
    Finite(i64),
    /// No known nonzero coefficient. `zero_to_precision` carries the precision
    /// when the element is only known to vanish below it.
    Infinite {
        zero_to_precision: Option<i64>,
    },
}

/// Tri-state zero test. "Zero to precision" is never conflated with exact zero.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ZeroState {
    Nonzero,
    ExactZero,
    ZeroToPrecision(i64),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct NovikovSeries {
    terms: BTreeMap<i64, BigInt>,
    precision: Precision,
}

impl Default for NovikovSeries {
    fn default() -> Self {
        Self::zero()
    }
}

impl NovikovSeries {
    pub fn zero() -> Self {
        Self { terms: BTreeMap::new(), precision: Precision::Exact }
    }

    pub fn one() -> Self {
        Self::monomial(BigInt::one(), 0)
    }

    /// The formal variable `T`.
    pub fn t() -> Self {
        Self::monomial(BigInt::one(), 1)
    }

    pub fn zero_to(precision: i64) -> Self {
        Self { terms: BTreeMap::new(), precision: Precision::Finite(precision) }
    }

    pub fn monomial(coefficient: impl Into<BigInt>, exponent: i64) -> Self {
        Self::from_terms([(exponent, coefficient.into())], Precision::Exact)
    }

    pub fn from_int(c: impl Into<BigInt>) -> Self {
        Self::monomial(c, 0)
    }

    /// Builds a series from `(exponent, coefficient)` pairs. Repeated exponents
    /// are summed; zero coefficients and exponents outside the precision are dropped.
    pub fn from_terms<I>(terms: I, precision: Precision) -> Self
    where
        I: IntoIterator<Item = (i64, BigInt)>,
    {
        let mut map: BTreeMap<i64, BigInt> = BTreeMap::new();
        for (e, c) in terms {
            if !precision.covers(e) {
                continue;
            }
            *map.entry(e).or_default() += c;
        }
        map.retain(|_, c| !c.is_zero());
        Self { terms: map, precision }
    }

    /// Laurent polynomial `Σ coeffs[k] T^(start + k)`.
    pub fn laurent(start: i64, coeffs: &[i64]) -> Self {
        Self::from_terms(coeffs.iter().enumerate().map(|(k, &c)| (start + k as i64, BigInt::from(c))), Precision::Exact)
    }

    pub fn precision(&self) -> Precision {
        self.precision
    }

    pub fn is_exact(&self) -> bool {
        self.precision.is_exact()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (i64, &BigInt)> + '_ {
        self.terms.iter().map(|(&e, c)| (e, c))
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    /// Coefficient at `exponent`, or `None` when it lies beyond the precision.
    pub fn coeff(&self, exponent: i64) -> Option<BigInt> {
        if !self.precision.covers(exponent) {
            return None;
        }
        Some(self.terms.get(&exponent).cloned().unwrap_or_default())
    }

    pub fn leading(&self) -> Option<(i64, &BigInt)> {
        self.terms.iter().next().map(|(&e, c)| (e, c))
    }

    pub fn max_exponent(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    pub fn zero_state(&self) -> ZeroState {
        if !self.terms.is_empty() {
            return ZeroState::Nonzero;
        }
        match self.precision {
            Precision::Exact => ZeroState::ExactZero,
            Precision::Finite(k) => ZeroState::ZeroToPrecision(k),
        }
    }

    pub fn is_exact_zero(&self) -> bool {
        self.zero_state() == ZeroState::ExactZero
    }

    /// True for exact zero and for elements that vanish to their precision.
    pub fn is_zero_to_precision(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn valuation(&self) -> Valuation {
        match self.leading() {
            Some((e, _)) => Valuation::Finite(e),
            None => Valuation::Infinite { zero_to_precision: self.precision.bound() },
        }
    }

    /// A lower bound for the true valuation; `None` stands for `+∞` (exact zero).
    pub fn valuation_lower_bound(&self) -> Option<i64> {
        match self.leading() {
            Some((e, _)) => Some(e),
            None => self.precision.bound(),
        }
    }

    /// Precision relative to the valuation (number of known orders past the
    /// leading term). `None` when exact.
    pub fn relative_precision(&self) -> Option<i64> {
        let k = self.precision.bound()?;
        Some(k - self.valuation_lower_bound().unwrap_or(k))
    }

    pub fn truncate(&self, precision: i64) -> Self {
        let p = self.precision.min(Precision::Finite(precision));
        Self::from_terms(self.terms.iter().map(|(&e, c)| (e, c.clone())), p)
    }

    /// Same terms, precision lowered to `p` if `p` is smaller.
    pub fn with_precision_at_most(&self, p: Precision) -> Self {
        if p >= self.precision {
            return self.clone();
        }
        match p {
            Precision::Exact => self.clone(),
            Precision::Finite(k) => self.truncate(k),
        }
    }

    /// Agreement of all coefficients below `k` (both sides must know them).
    pub fn agrees_below(&self, other: &Self, k: i64) -> bool {
        let lo = self.terms.range(..k).map(|(&e, c)| (e, c)).collect::<Vec<_>>();
        let hi = other.terms.range(..k).map(|(&e, c)| (e, c)).collect::<Vec<_>>();
        lo == hi
    }

    /// Multiplication by `T^k`.
    pub fn shift(&self, k: i64) -> Self {
        Self {
            terms: self.terms.iter().map(|(&e, c)| (e + k, c.clone())).collect(),
            precision: self.precision.shift(k),
        }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            // 0·x is exactly zero regardless of what is unknown about x.
            return Self::zero();
        }
        Self { terms: self.terms.iter().map(|(&e, a)| (e, a * c)).collect(), precision: self.precision }
    }

    pub fn neg(&self) -> Self {
        Self { terms: self.terms.iter().map(|(&e, c)| (e, -c)).collect(), precision: self.precision }
    }

    pub fn add(&self, other: &Self) -> Self {
        let precision = self.precision.min(other.precision);
        Self::from_terms(self.terms.iter().chain(other.terms.iter()).map(|(&e, c)| (e, c.clone())), precision)
    }

    pub fn sub(&self, other: &Self) -> Self {
        let precision = self.precision.min(other.precision);
        Self::from_terms(
            self.terms.iter().map(|(&e, c)| (e, c.clone())).chain(other.terms.iter().map(|(&e, c)| (e, -c))),
            precision,
        )
    }

    /// Cauchy product. A factor known to `K_x` with valuation `v_x` times one
    /// known to `K_y` with valuation `v_y` is known to `min(K_x + v_y, K_y + v_x)`.
    pub fn mul(&self, other: &Self) -> Self {
        Self::sum_of_products([(self, other)])
    }

    /// `Σ a_k·b_k` in one accumulation, known to the least precision of
    /// the products.
    pub fn sum_of_products<'a>(pairs: impl IntoIterator<Item = (&'a Self, &'a Self)>) -> Self {
        let pairs: Vec<(&Self, &Self)> = pairs.into_iter().collect();
        let precision = pairs.iter().fold(Precision::Exact, |p, (a, b)| p.min(product_precision(a, b)));
        Self::small_sum_of_products(&pairs, precision).unwrap_or_else(|| Self::big_sum_of_products(&pairs, precision))
    }

    /// Machine-integer path: `None` when a coefficient leaves `i64`, the
    /// exponent span is large, or an accumulator would overflow.
    fn small_sum_of_products(pairs: &[(&Self, &Self)], precision: Precision) -> Option<Self> {
        const MAX_SPAN: i64 = 1 << 12;
        let mut lo = i64::MAX;
        let mut hi = i64::MIN;
        for (a, b) in pairs {
            if let (Some((&la, _)), Some((&lb, _))) = (a.terms.first_key_value(), b.terms.first_key_value()) {
                let (&ha, _) = a.terms.last_key_value()?;
                let (&hb, _) = b.terms.last_key_value()?;
                lo = lo.min(la.checked_add(lb)?);
                hi = hi.max(ha.checked_add(hb)?);
            }
        }
        if lo > hi {
            return Some(Self { terms: BTreeMap::new(), precision });
        }
        if hi - lo >= MAX_SPAN {
            return None;
        }
        let mut acc = vec![0i128; (hi - lo + 1) as usize];
        for (a, b) in pairs {
            let p = product_precision(a, b);
            let small = |s: &Self| s.terms.iter().map(|(&e, c)| c.to_i64().map(|c| (e, c))).collect::<Option<Vec<_>>>();
            let (xa, xb) = (small(a)?, small(b)?);
            for &(ea, ca) in &xa {
                for &(eb, cb) in &xb {
                    let e = ea + eb;
                    if !p.covers(e) {
                        break;
                    }
                    let slot = &mut acc[(e - lo) as usize];
                    *slot = slot.checked_add(ca as i128 * cb as i128)?;
                }
            }
        }
        let terms = acc
            .into_iter()
            .enumerate()
            .filter(|&(k, c)| c != 0 && precision.covers(lo + k as i64))
            .map(|(k, c)| (lo + k as i64, BigInt::from(c)))
            .collect();
        Some(Self { terms, precision })
    }

    fn big_sum_of_products(pairs: &[(&Self, &Self)], precision: Precision) -> Self {
        let mut map: BTreeMap<i64, BigInt> = BTreeMap::new();
        for &(a, b) in pairs {
            let p = product_precision(a, b);
            for (&ea, ca) in &a.terms {
                for (&eb, cb) in &b.terms {
                    let e = ea + eb;
                    if !p.covers(e) {
                        break;
                    }
                    *map.entry(e).or_default() += ca * cb;
                }
            }
        }
        map.retain(|e, c| !c.is_zero() && precision.covers(*e));
        Self { terms: map, precision }
    }

    /// `self - c·T^k·g`, the elementary step of long division.
    pub(crate) fn sub_scaled_shift(&self, g: &Self, c: &BigInt, k: i64) -> Self {
        let precision = self.precision.min(g.precision.shift(k));
        let mut map = self.terms.clone();
        for (&e, a) in &g.terms {
            let e = e + k;
            if !precision.covers(e) {
                break;
            }
            *map.entry(e).or_default() -= a * c;
        }
        map.retain(|e, c| !c.is_zero() && precision.covers(*e));
        Self { terms: map, precision }
    }

    /// `true` iff the coefficient at the valuation is `±1`.
    pub fn is_unit(&self) -> Result<bool, NovikovError> {
        match self.zero_state() {
            ZeroState::Nonzero => {
                let (_, c) = self.leading().expect("nonzero");
                Ok(c.abs().is_one())
            }
            ZeroState::ExactZero => Ok(false),
            ZeroState::ZeroToPrecision(k) => Err(NovikovError::Undecidable(k)),
        }
    }

    /// Inverse of a unit, known for exponents `< out_precision`.
    pub fn invert_unit(&self, out_precision: i64) -> Result<Self, NovikovError> {
        if !self.is_unit()? {
            return Err(NovikovError::NotAUnit);
        }
        divide(&Self::one(), self, out_precision)
    }

    /// Quotient `q` with `self = q·g` to the precision `q` reports.
    pub fn divide(&self, g: &Self, out_precision: i64) -> Result<Self, NovikovError> {
        divide(self, g, out_precision)
    }

    /// Normal form of the associate class; see [`canonical_associate_with_unit`].
    pub fn canonical_associate(&self) -> Result<Self, NovikovError> {
        canonical_associate_with_unit(self, DEFAULT_PRECISION).map(|(c, _)| c)
    }

    pub fn canonical_associate_to(&self, precision: i64) -> Result<Self, NovikovError> {
        canonical_associate_with_unit(self, precision).map(|(c, _)| c)
    }
}

fn product_precision(x: &NovikovSeries, y: &NovikovSeries) -> Precision {
    let part = |a: &NovikovSeries, b: &NovikovSeries| match (a.precision, b.valuation_lower_bound()) {
        (Precision::Exact, _) => Precision::Exact,
        // b exactly zero: the product is exactly zero whatever a is.
        (Precision::Finite(_), None) => Precision::Exact,
        (Precision::Finite(k), Some(v)) => Precision::Finite(k + v),
    };
    part(x, y).min(part(y, x))
}

/// Outcome of order-by-order long division.
#[derive(Clone, Debug)]
pub(crate) struct LongDivision {
    pub quotient: NovikovSeries,
    pub remainder: NovikovSeries,
    /// Quotient exponent at which the integer division first failed.
    pub failed_at: Option<i64>,
}

/// Long division of `x` by `g`: at each order the leading coefficient of the
/// running remainder is divided by the leading coefficient of `g`.
pub(crate) fn long_division(
    x: &NovikovSeries,
    g: &NovikovSeries,
    out_precision: i64,
) -> Result<LongDivision, NovikovError> {
    let (vg, lead_g) = match g.leading() {
        Some((e, c)) => (e, c.clone()),
        None => return Err(NovikovError::DivisionByZero),
    };
    if x.is_exact_zero() {
        return Ok(LongDivision { quotient: NovikovSeries::zero(), remainder: NovikovSeries::zero(), failed_at: None });
    }
    let x_lb = x.valuation_lower_bound().expect("not exact zero");
    let mut q_prec = Precision::Finite(out_precision);
    if let Precision::Finite(kx) = x.precision {
        q_prec = q_prec.min(Precision::Finite(kx - vg));
    }
    if let Precision::Finite(kg) = g.precision {
        q_prec = q_prec.min(Precision::Finite(x_lb - vg + (kg - vg)));
    }

    let mut quotient: BTreeMap<i64, BigInt> = BTreeMap::new();
    let mut r = x.clone();
    loop {
        let (er, cr) = match r.leading() {
            Some((e, c)) => (e, c.clone()),
            None => {
                let precision = match r.precision {
                    Precision::Exact => Precision::Exact,
                    Precision::Finite(kr) => q_prec.min(Precision::Finite(kr - vg)),
                };
                return Ok(LongDivision {
                    quotient: NovikovSeries::from_terms(quotient, precision),
                    remainder: r,
                    failed_at: None,
                });
            }
        };
        let e = er - vg;
        if !q_prec.covers(e) {
            return Ok(LongDivision {
                quotient: NovikovSeries::from_terms(quotient, q_prec),
                remainder: r,
                failed_at: None,
            });
        }
        let (c, rem) = cr.div_rem(&lead_g);
        if !rem.is_zero() {
            return Ok(LongDivision {
                quotient: NovikovSeries::from_terms(quotient, Precision::Finite(e)),
                remainder: r,
                failed_at: Some(e),
            });
        }
        r = r.sub_scaled_shift(g, &c, e);
        quotient.insert(e, c);
    }
}

pub fn divide(x: &NovikovSeries, g: &NovikovSeries, out_precision: i64) -> Result<NovikovSeries, NovikovError> {
    let ld = long_division(x, g, out_precision)?;
    match ld.failed_at {
        Some(order) => Err(NovikovError::NotDivisible { order }),
        None => Ok(ld.quotient),
    }
}

/// Normal form of the associate class of `x` together with the unit `u`
/// such that `canonical = x·u` (to the precision of `canonical`).
///
/// The normal form has valuation 0, positive leading coefficient `a₀`, and
/// every higher coefficient in `[0, a₀)`; it is `1` when `x` is a unit.
/// The unit is exact when the canonical form is a finite correction of `x`.
pub fn canonical_associate_with_unit(
    x: &NovikovSeries,
    precision: i64,
) -> Result<(NovikovSeries, NovikovSeries), NovikovError> {
    let (v, a0) = match x.leading() {
        Some((e, c)) => (e, c.clone()),
        None => return Err(NovikovError::ZeroToPrecision),
    };
    let sign = if a0.is_negative() { -BigInt::one() } else { BigInt::one() };
    if a0.abs().is_one() {
        let inverse = x.invert_unit(precision - v)?;
        return Ok((NovikovSeries::one(), inverse));
    }
    let mut unit = NovikovSeries::monomial(sign, -v);
    let mut y = x.mul(&unit);
    let a = a0.abs();
    // Relative precision of x bounds what the normal form can certify.
    let target = match y.precision {
        Precision::Exact => precision,
        Precision::Finite(k) => k.min(precision),
    };
    for k in 1..target {
        if y.is_exact() && y.max_exponent().is_none_or(|m| m < k) {
            return Ok((y, unit));
        }
        let c = y.terms.get(&k).cloned().unwrap_or_default();
        let q = c.div_floor(&a);
        if !q.is_zero() {
            let factor = NovikovSeries::from_terms([(0, BigInt::one()), (k, -q)], Precision::Exact);
            y = y.mul(&factor);
            unit = unit.mul(&factor);
        }
    }
    if y.is_exact() && y.max_exponent().is_none_or(|m| m < target) {
        return Ok((y, unit));
    }
    Ok((y.truncate(target), unit))
}
