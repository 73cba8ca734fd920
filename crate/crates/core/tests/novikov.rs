use floer_core::novikov::*;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Signed;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn s(text: &str) -> NovikovSeries {
    text.parse().unwrap()
}

/// Coefficients `c_0..c_{n-1}` of a power series product, computed directly.
fn product_prefix(a: &[i64], b: &[i64], n: usize) -> Vec<i64> {
    (0..n).map(|k| (0..=k).map(|i| a.get(i).copied().unwrap_or(0) * b.get(k - i).copied().unwrap_or(0)).sum()).collect()
}

#[test]
fn divide_two_by_two_plus_t_fails_at_first_order() {
    // Exhaustive search: some integer q₀ matches 2 modulo T, but no (q₀, q₁)
    // matches modulo T².
    let g = [2, 1];
    let target = [2, 0];
    let order0 = (-20..=20).any(|q0| product_prefix(&[q0], &g, 1) == target[..1]);
    let order1 = (-20..=20)
        .flat_map(|q0| (-20..=20).map(move |q1| (q0, q1)))
        .any(|(q0, q1)| product_prefix(&[q0, q1], &g, 2) == target);
    assert!(order0 && !order1);
    assert_eq!(s("2").divide(&s("2 + T"), 8), Err(NovikovError::NotDivisible { order: 1 }));
}

#[test]
fn square_divides_back() {
    let x = s("2 + T").mul(&s("2 + T"));
    assert_eq!(x, s("4 + 4*T + T^2"));
    assert_eq!(x.divide(&s("2 + T"), 16).unwrap(), s("2 + T"));
}

#[test]
fn inverse_multiplies_back() {
    let inv = s("-1 + T").invert_unit(3).unwrap();
    assert_eq!(inv, s("-1 - T - T^2 @3"));
    assert!(inv.mul(&s("-1 + T")).agrees_below(&NovikovSeries::one(), 3));
}

#[test]
fn canonical_form_of_two_plus_five_t() {
    let x = s("2 + 5*T");
    let c = x.canonical_associate_to(12).unwrap();
    assert_eq!(c.precision(), Precision::Finite(12));
    assert!(c.agrees_below(&s("2 + T + T^3"), 4));
    for e in 1..12 {
        let v = c.coeff(e).unwrap();
        assert!(!v.is_negative() && v < BigInt::from(2));
    }
    // Associates: each divides the other with unit quotients.
    let u = x.divide(&c, 12).unwrap();
    let v = c.divide(&x, 12).unwrap();
    assert!(u.is_unit().unwrap() && v.is_unit().unwrap());
    // 2 + T itself is not an associate of 2 + 5T.
    assert!(matches!(x.divide(&s("2 + T"), 12), Err(NovikovError::NotDivisible { order: 3 })));
    assert_eq!(x.canonical_associate_to(3).unwrap(), s("2 + T @3"));
}

#[test]
fn ideal_fixtures_and_witness_oracle() {
    let cases = [
        (vec![s("2"), s("2 + T")], s("1")),
        (vec![s("4 + 2*T"), s("2 + T")], s("2 + T")),
        (vec![s("6"), s("10")], s("2")),
    ];
    for (gens, expected) in cases {
        let r = ideal_generator(&gens, 32).unwrap();
        assert_eq!(r.generator, expected);
        assert_eq!(r.verified_to, Precision::Exact);
        let mut sum = NovikovSeries::zero();
        for (w, g) in r.witnesses.iter().zip(&gens) {
            sum = sum.add(&w.mul(g));
            assert!(g.divide(&r.generator, 32).is_ok());
        }
        assert!(sum.agrees_below(&expected, 32));
    }
    // (4 + 2T) = 2·(2 + T) and 2 + T divides both.
    assert_eq!(s("4 + 2*T").divide(&s("2 + T"), 8).unwrap(), s("2"));
}

#[test]
fn ideal_chain_is_a_divisibility_chain() {
    let r = ideal_generator(&[s("12 + T"), s("18*T^-1 + 5"), s("8")], 32).unwrap();
    for w in r.gcd_chain.windows(2) {
        assert!(w[0].is_multiple_of(&w[1]));
    }
    assert!(r.gcd_chain.iter().all(|g| g.is_positive()));
}

fn random_laurent(rng: &mut impl Rng) -> NovikovSeries {
    let start = rng.gen_range(-2..=2);
    let deg = rng.gen_range(0..=4);
    let coeffs: Vec<i64> = (0..=deg).map(|_| rng.gen_range(-9..=9)).collect();
    NovikovSeries::laurent(start, &coeffs)
}

#[test]
fn random_ideals_bezout_and_divisibility() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    let mut done = 0;
    while done < 200 {
        let gens = [random_laurent(&mut rng), random_laurent(&mut rng)];
        if gens.iter().all(NovikovSeries::is_exact_zero) {
            continue;
        }
        let r = ideal_generator(&gens, 32).unwrap();
        let mut sum = NovikovSeries::zero();
        for (w, g) in r.witnesses.iter().zip(&gens) {
            sum = sum.add(&w.mul(g));
        }
        assert!(sum.agrees_below(&r.generator, 32), "{gens:?}");
        for g in &gens {
            if !g.is_exact_zero() {
                assert!(g.divide(&r.generator, 32).is_ok(), "{g} by {}", r.generator);
            }
        }
        let wide = ideal_generator(&gens, 64).unwrap();
        assert!(wide.generator.agrees_below(&r.generator, 32));
        done += 1;
    }
}

fn arb_laurent() -> impl Strategy<Value = NovikovSeries> {
    (-3i64..=3, proptest::collection::vec(-9i64..=9, 0..=5))
        .prop_map(|(start, coeffs)| NovikovSeries::laurent(start, &coeffs))
}

fn arb_unit() -> impl Strategy<Value = NovikovSeries> {
    (-3i64..=3, prop::bool::ANY, proptest::collection::vec(-9i64..=9, 0..=4)).prop_map(|(start, neg, tail)| {
        let mut coeffs = vec![if neg { -1 } else { 1 }];
        coeffs.extend(tail);
        NovikovSeries::laurent(start, &coeffs)
    })
}

proptest! {
    #[test]
    fn ring_axioms(x in arb_laurent(), y in arb_laurent(), z in arb_laurent()) {
        prop_assert_eq!(x.mul(&y), y.mul(&x));
        prop_assert_eq!(x.add(&y), y.add(&x));
        prop_assert_eq!(x.mul(&y).mul(&z), x.mul(&y.mul(&z)));
        prop_assert_eq!(x.mul(&y.add(&z)), x.mul(&y).add(&x.mul(&z)));
        prop_assert_eq!(x.sub(&x), NovikovSeries::zero());
    }

    #[test]
    fn divide_undoes_multiplication_by_unit(x in arb_laurent(), u in arb_unit()) {
        let p = x.mul(&u);
        prop_assert_eq!(p.divide(&u, 40).unwrap(), x);
    }

    #[test]
    fn inverse_times_unit_is_one(u in arb_unit(), k in 1i64..20) {
        let v = u.valuation_lower_bound().unwrap();
        let inv = u.invert_unit(k - v).unwrap();
        let prod = inv.mul(&u);
        prop_assert!(prod.agrees_below(&NovikovSeries::one(), k));
        prop_assert!(prod.precision() >= Precision::Finite(k));
    }

    #[test]
    fn canonical_associate_is_class_invariant(x in arb_laurent(), u in arb_unit()) {
        prop_assume!(!x.is_exact_zero());
        let k = 20;
        let c = x.canonical_associate_to(k).unwrap();
        let cu = x.mul(&u).canonical_associate_to(k).unwrap();
        prop_assert!(c.agrees_below(&cu, k));
        let cc = c.canonical_associate_to(k).unwrap();
        prop_assert!(cc.agrees_below(&c, k));
        let a0 = c.coeff(0).unwrap();
        prop_assert!(a0.is_positive());
        for (e, coeff) in c.terms() {
            prop_assert!(e >= 0);
            if e > 0 {
                prop_assert!(!coeff.is_negative() && coeff < &a0);
            }
        }
    }

    #[test]
    fn valuation_is_additive(x in arb_laurent(), y in arb_laurent()) {
        prop_assume!(!x.is_exact_zero() && !y.is_exact_zero());
        let (Valuation::Finite(a), Valuation::Finite(b), Valuation::Finite(c)) =
            (x.valuation(), y.valuation(), x.mul(&y).valuation()) else {
            return Err(TestCaseError::fail("finite valuations expected"));
        };
        prop_assert_eq!(a + b, c);
    }

    #[test]
    fn literal_round_trip(x in arb_laurent(), k in proptest::option::of(4i64..12)) {
        let x = match k {
            Some(k) => x.truncate(k),
            None => x,
        };
        let text = x.to_string();
        let back: NovikovSeries = text.parse().unwrap();
        prop_assert_eq!(&back, &x);
        prop_assert_eq!(back.to_string(), text);
    }

    #[test]
    fn ideal_generator_witnesses(a in arb_laurent(), b in arb_laurent()) {
        prop_assume!(!a.is_exact_zero() || !b.is_exact_zero());
        let gens = [a, b];
        let r = ideal_generator(&gens, 32).unwrap();
        let sum = r.witnesses[0].mul(&gens[0]).add(&r.witnesses[1].mul(&gens[1]));
        prop_assert!(sum.agrees_below(&r.generator, 32));
        prop_assert_eq!(r.generator.coeff(0).map(|c| c.is_positive()), Some(true));
        for g in &gens {
            if !g.is_exact_zero() {
                prop_assert!(g.divide(&r.generator, 32).is_ok());
            }
        }
    }
}

#[test]
fn zero_to_precision_is_not_exact_zero() {
    let z = s("T^5").truncate(3);
    assert_eq!(z.zero_state(), ZeroState::ZeroToPrecision(3));
    assert_eq!(NovikovSeries::zero().zero_state(), ZeroState::ExactZero);
    assert_ne!(z, NovikovSeries::zero());
}

fn schoolbook(x: &NovikovSeries, y: &NovikovSeries) -> std::collections::BTreeMap<i64, BigInt> {
    let mut out = std::collections::BTreeMap::new();
    for (ea, ca) in x.terms() {
        for (eb, cb) in y.terms() {
            *out.entry(ea + eb).or_insert_with(BigInt::default) += ca * cb;
        }
    }
    out.retain(|_, c: &mut BigInt| c.sign() != num_bigint::Sign::NoSign);
    out
}

fn arb_wide() -> impl Strategy<Value = NovikovSeries> {
    (-3i64..=3, proptest::collection::vec(any::<i64>(), 0..=4), 0u32..=2).prop_map(|(start, coeffs, shift)| {
        let scale = BigInt::from(1) << (70 * shift);
        NovikovSeries::from_terms(
            coeffs.iter().enumerate().map(|(k, &c)| (start + k as i64, BigInt::from(c) * &scale)),
            Precision::Exact,
        )
    })
}

proptest! {
    #[test]
    fn products_with_wide_coefficients(x in arb_wide(), y in arb_wide(), z in arb_wide()) {
        let got: std::collections::BTreeMap<i64, BigInt> = x.mul(&y).terms().map(|(e, c)| (e, c.clone())).collect();
        prop_assert_eq!(got, schoolbook(&x, &y));
        let sum = NovikovSeries::sum_of_products([(&x, &y), (&z, &z), (&y, &z)]);
        prop_assert_eq!(sum, x.mul(&y).add(&z.mul(&z)).add(&y.mul(&z)));
    }
}

#[test]
fn accumulator_overflow_falls_back_to_big_integers() {
    let m = NovikovSeries::from_int(i64::MAX);
    let pairs = vec![(&m, &m); 4];
    let expected = BigInt::from(i64::MAX) * BigInt::from(i64::MAX) * 4;
    assert_eq!(NovikovSeries::sum_of_products(pairs).coeff(0), Some(expected));
}
