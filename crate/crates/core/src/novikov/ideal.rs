//! Single generators for finitely generated ideals of the Novikov ring.
//!
//! After shifting every generator to valuation 0 the procedure repeats one
//! round per T-order: take the integer gcd `g` of the constant terms, form a
//! Bézout combination `w` with constant term `g`, subtract from every other
//! element the multiple of `w` that kills its constant term and divide the
//! remainder by `T`. The ideal is unchanged by each round, the gcds form a
//! divisibility chain, and after `k` rounds every input agrees with a multiple
//! of `w` to relative order `k`.

use std::collections::HashSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::series::{canonical_associate_with_unit, NovikovSeries, Precision};
use super::NovikovError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdealGenerator {
    /// Canonical associate of the generator.
    pub generator: NovikovSeries,
    /// Cofactors with `Σ witnesses[i]·gens[i] = generator` to `verified_to`.
    pub witnesses: Vec<NovikovSeries>,
    /// `Exact` when the generator is certified exactly; otherwise the
    /// precision up to which the gcd chain was followed.
    pub verified_to: Precision,
    /// Positive gcds of constant terms, one per round.
    pub gcd_chain: Vec<BigInt>,
}

#[derive(Clone, Debug)]
struct Item {
    elem: NovikovSeries,
    witness: Vec<NovikovSeries>,
}

impl Item {
    fn constant(&self) -> BigInt {
        self.elem.coeff(0).unwrap_or_default()
    }

    fn sub_multiple(&self, c: &BigInt, other: &Item) -> Item {
        let cs = NovikovSeries::from_int(c.clone());
        Item {
            elem: self.elem.sub(&other.elem.mul(&cs)),
            witness: self.witness.iter().zip(&other.witness).map(|(a, b)| a.sub(&b.mul(&cs))).collect(),
        }
    }

    fn shift(&self, k: i64) -> Item {
        Item { elem: self.elem.shift(k), witness: self.witness.iter().map(|w| w.shift(k)).collect() }
    }

    fn key(&self) -> String {
        self.elem.to_string()
    }
}

fn combine(items: &[&Item], coeffs: &[BigInt]) -> Item {
    let n = items[0].witness.len();
    let mut elem = NovikovSeries::zero();
    let mut witness = vec![NovikovSeries::zero(); n];
    for (item, c) in items.iter().zip(coeffs) {
        if c.is_zero() {
            continue;
        }
        let cs = NovikovSeries::from_int(c.clone());
        elem = elem.add(&item.elem.mul(&cs));
        for (w, iw) in witness.iter_mut().zip(&item.witness) {
            *w = w.add(&iw.mul(&cs));
        }
    }
    Item { elem, witness }
}

/// Integer Bézout coefficients: `Σ coeffs[i]·values[i] = gcd ≥ 0`.
fn bezout(values: &[BigInt]) -> (BigInt, Vec<BigInt>) {
    let mut g = BigInt::zero();
    let mut coeffs: Vec<BigInt> = Vec::with_capacity(values.len());
    for v in values {
        if g.is_zero() {
            coeffs.iter_mut().for_each(|c| *c = BigInt::zero());
            coeffs.push(if v.is_negative() { -BigInt::one() } else { BigInt::one() });
            g = v.abs();
            continue;
        }
        let e = g.extended_gcd(v);
        let (ng, x, y) = if e.gcd.is_negative() { (-e.gcd, -e.x, -e.y) } else { (e.gcd, e.x, e.y) };
        coeffs.iter_mut().for_each(|c| *c *= &x);
        coeffs.push(y);
        g = ng;
    }
    (g, coeffs)
}

/// A canonical generator of the ideal `(gens)` with Bézout witnesses,
/// following the gcd chain for at most `precision` rounds.
pub fn ideal_generator(gens: &[NovikovSeries], precision: i64) -> Result<IdealGenerator, NovikovError> {
    if gens.is_empty() {
        return Err(NovikovError::EmptyIdeal);
    }
    if gens.iter().any(|g| !g.is_exact()) {
        return Err(NovikovError::InexactGenerator);
    }
    let n = gens.len();
    let mut items: Vec<Item> = Vec::new();
    for (i, g) in gens.iter().enumerate() {
        let Some((v, _)) = g.leading() else { continue };
        let mut witness = vec![NovikovSeries::zero(); n];
        witness[i] = NovikovSeries::monomial(1, -v);
        items.push(Item { elem: g.shift(-v), witness });
    }
    if items.is_empty() {
        return Err(NovikovError::EmptyIdeal);
    }

    let mut pivot: Option<Item> = None;
    let mut chain: Vec<BigInt> = Vec::new();
    let mut seen: HashSet<Vec<String>> = HashSet::new();
    let mut exact = false;
    for _ in 0..precision.max(1) {
        let mut pool: Vec<&Item> = Vec::new();
        if let Some(p) = &pivot {
            pool.push(p);
        }
        pool.extend(items.iter());
        let constants: Vec<BigInt> = pool.iter().map(|it| it.constant()).collect();
        let (g, coeffs) = bezout(&constants);
        debug_assert!(!g.is_zero());
        let keep = pivot.as_ref().is_some_and(|p| p.constant().abs() == g);
        let mut rest: Vec<Item> = Vec::new();
        let new_pivot = if keep {
            let mut p = pivot.take().expect("kept pivot");
            if p.constant().is_negative() {
                p = combine(&[&p], &[-BigInt::one()]);
            }
            p
        } else {
            let p = combine(&pool, &coeffs);
            if let Some(old) = pivot.take() {
                rest.push(old);
            }
            p
        };
        rest.append(&mut items);
        chain.push(g.clone());
        for it in &rest {
            let c = it.constant() / &g;
            let r = it.sub_multiple(&c, &new_pivot);
            if !r.elem.is_zero_to_precision() {
                items.push(r.shift(-1));
            }
        }
        pivot = Some(new_pivot);
        if items.is_empty() {
            exact = true;
            break;
        }
        let mut key: Vec<String> = items.iter().map(Item::key).collect();
        key.sort();
        key.push(pivot.as_ref().expect("pivot").key());
        if !seen.insert(key) {
            // The state repeats, so later rounds never lower the gcd.
            exact = true;
            break;
        }
    }

    let pivot = pivot.expect("at least one round");
    let g = chain.last().cloned().expect("nonempty chain");
    if !exact {
        let next = items.iter().fold(g.clone(), |acc, it| acc.gcd(&it.constant()));
        if next < g {
            return Err(NovikovError::PrecisionExhausted(precision));
        }
    }
    let (generator, unit) = canonical_associate_with_unit(&pivot.elem, precision)?;
    let witnesses: Vec<NovikovSeries> = pivot.witness.iter().map(|w| w.mul(&unit)).collect();
    let verified_to = if exact && generator.is_exact() { Precision::Exact } else { Precision::Finite(precision) };
    let generator = match verified_to {
        Precision::Exact => generator,
        Precision::Finite(k) => generator.truncate(k),
    };
    Ok(IdealGenerator { generator, witnesses, verified_to, gcd_chain: chain })
}
