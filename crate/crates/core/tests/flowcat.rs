mod common;

use std::collections::BTreeMap;

use common::{invariant_factors_by_minors, rational_rank, Rows};
use floer_core::fixtures::fixture;
use floer_core::flowcat::*;
use floer_core::linalg::{LambdaMatrix, Matrix, Novikov};
use floer_core::novikov::NovikovSeries;
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn load(name: &str) -> FlowCategoryData {
    FlowCategoryData::from_json(fixture(name).unwrap()).unwrap()
}

fn s(text: &str) -> NovikovSeries {
    text.parse().unwrap()
}

fn ring() -> Novikov {
    Novikov::new(32)
}

/// Integer boundary matrices read straight off the incidence list, indexed by
/// source degree; only valid for `t = 0` data.
fn integer_boundaries(fc: &FlowCategoryData) -> BTreeMap<i64, (Vec<String>, Vec<String>, Rows)> {
    let mut by_deg: BTreeMap<i64, Vec<String>> = BTreeMap::new();
    for g in &fc.generators {
        by_deg.entry(g.index).or_default().push(g.id.clone());
    }
    let lo = *by_deg.keys().next().unwrap();
    let hi = *by_deg.keys().last().unwrap();
    let mut out = BTreeMap::new();
    for i in lo..=hi + 1 {
        let src = by_deg.get(&i).cloned().unwrap_or_default();
        let tgt = by_deg.get(&(i - 1)).cloned().unwrap_or_default();
        let mut m = vec![vec![BigInt::from(0); src.len()]; tgt.len()];
        for inc in &fc.incidences {
            assert_eq!(inc.t, 0);
            if let (Some(c), Some(r)) = (src.iter().position(|x| *x == inc.from), tgt.iter().position(|x| *x == inc.to))
            {
                m[r][c] += inc.count;
            }
        }
        out.insert(i, (src, tgt, m));
    }
    out
}

/// `(rank, nonunit invariant factors)` of integral homology by minors.
fn integer_homology(fc: &FlowCategoryData) -> BTreeMap<i64, (usize, Vec<BigInt>)> {
    let d = integer_boundaries(fc);
    let mut out = BTreeMap::new();
    for (&i, (src, _, m)) in &d {
        if src.is_empty() {
            continue;
        }
        let rank_out = rational_rank(m);
        let (_, _, m_in) = &d[&(i + 1)];
        let rank_in = rational_rank(m_in);
        let torsion: Vec<BigInt> =
            invariant_factors_by_minors(m_in).into_iter().filter(|a| *a != BigInt::from(1)).collect();
        out.insert(i, (src.len() - rank_out - rank_in, torsion));
    }
    out
}

#[test]
fn fixtures_validate_and_square_to_zero() {
    for name in ["s1", "s2", "t2", "rp2", "rp3", "cp2", "rp3_cells"] {
        let fc = load(name);
        assert!(fc.validate().is_empty(), "{name}");
        let c = build_complex(&fc).unwrap();
        assert!(c.check_d_squared().is_empty(), "{name}");
        for i in c.classes() {
            let below = c.layout.shift(i, -1);
            let dd = c.d(below).mul(&ring(), &c.d(i));
            assert!(dd.entries().iter().all(NovikovSeries::is_exact_zero), "{name}");
        }
    }
}

#[test]
fn degree_and_energy_violations() {
    let mut fc = load("s2");
    fc.incidences.push(Incidence { from: "e2".into(), to: "e2".into(), t: 1, count: 1 });
    assert!(matches!(fc.validate()[..], [Violation::Degree { .. }]));
    let mut fc = load("rp2");
    fc.generators[1].action = fc.generators[2].action;
    assert!(matches!(fc.validate()[..], [Violation::Energy { incidence: 0, .. }]));
    assert!(matches!(build_complex(&fc), Err(FlowcatError::ValidationFailed(_))));
}

#[test]
fn rp2_differentials() {
    let c = build_complex(&load("rp2")).unwrap();
    assert_eq!(c.d(2), Matrix::from_rows(vec![vec![s("2")]]));
    assert_eq!(c.d(1), Matrix::from_rows(vec![vec![s("0")]]));
    assert_eq!(c.d(0).rows(), 0);
}

#[test]
fn single_incidence_transcribes() {
    let fc = FlowCategoryData {
        two_n: 0,
        omega: 1,
        generators: vec![
            GeneratorSpec { id: "p".into(), index: 1, action: 0 },
            GeneratorSpec { id: "q".into(), index: 0, action: 0 },
        ],
        incidences: vec![Incidence { from: "p".into(), to: "q".into(), t: 1, count: 3 }],
    };
    let c = build_complex(&fc).unwrap();
    assert_eq!(c.d(1), Matrix::from_rows(vec![vec![s("3*T")]]));
    let mut empty = fc.clone();
    empty.incidences.clear();
    let c = build_complex(&empty).unwrap();
    assert!(c.d(1).entries().iter().all(NovikovSeries::is_exact_zero));
}

#[test]
fn broken_fixture_is_located() {
    let c = build_complex(&load("rp3_broken")).unwrap();
    let v = c.check_d_squared();
    assert_eq!(v.len(), 1);
    assert_eq!((v[0].class, v[0].row_id.as_str(), v[0].col_id.as_str()), (3, "x1", "y3"));
    assert_eq!(v[0].first_exponent, Some(0));
    assert!(matches!(c.homology(32), Err(FlowcatError::DSquaredFailed(_))));
}

#[test]
fn fixture_homology_matches_integer_oracle() {
    let expected: &[(&str, &[(usize, &[i64])])] = &[
        ("rp2", &[(1, &[]), (0, &[2]), (0, &[])]),
        ("rp3", &[(1, &[]), (0, &[2]), (0, &[]), (1, &[])]),
        ("rp3_cells", &[(1, &[]), (0, &[2]), (0, &[]), (1, &[])]),
        ("s2", &[(1, &[]), (0, &[]), (1, &[])]),
        ("t2", &[(1, &[]), (2, &[]), (1, &[])]),
        ("cp2", &[(1, &[]), (0, &[]), (1, &[]), (0, &[]), (1, &[])]),
        ("s1", &[(1, &[]), (1, &[])]),
    ];
    for (name, table) in expected {
        let fc = load(name);
        let h = build_complex(&fc).unwrap().homology(32).unwrap();
        let oracle = integer_homology(&fc);
        for (i, (rank, tors)) in table.iter().enumerate() {
            let i = i as i64;
            let got = &h[&i];
            assert_eq!(got.rank, *rank, "{name} H{i}");
            let lead: Vec<BigInt> = got
                .invariant_factors
                .iter()
                .map(|a| {
                    assert!(a.is_exact());
                    a.coeff(0).unwrap()
                })
                .collect();
            let tors: Vec<BigInt> = tors.iter().map(|&a| BigInt::from(a)).collect();
            assert_eq!(lead, tors, "{name} H{i}");
            let (orank, otors) = oracle.get(&i).cloned().unwrap_or((0, vec![]));
            assert_eq!((orank, otors), (*rank, tors), "{name} H{i} oracle");
        }
    }
}

#[test]
fn t_multiple_normalizes_away() {
    let fc = FlowCategoryData {
        two_n: 0,
        omega: 3,
        generators: vec![
            GeneratorSpec { id: "p".into(), index: 1, action: 0 },
            GeneratorSpec { id: "q".into(), index: 0, action: 1 },
        ],
        incidences: vec![Incidence { from: "p".into(), to: "q".into(), t: 1, count: 2 }],
    };
    let h = build_complex(&fc).unwrap().homology(32).unwrap();
    assert_eq!(h[&0].to_string(), "Λ/(2)");
    assert!(h[&1].is_zero());
    // Zero differential: free on generators.
    let mut z = fc.clone();
    z.incidences.clear();
    let h = build_complex(&z).unwrap().homology(32).unwrap();
    assert_eq!((h[&0].rank, h[&1].rank), (1, 1));
}

#[test]
fn periodic_grading_collapses_classes() {
    let fc = load("rp3").regraded(2).unwrap();
    let c = build_complex(&fc).unwrap();
    assert!(c.check_d_squared().is_empty());
    let h = c.homology(32).unwrap();
    // Classes 0 = {x0, x2}, 1 = {x1, x3}.
    assert_eq!(h[&0].to_string(), "Λ");
    assert_eq!(h[&1].to_string(), "Λ ⊕ Λ/(2)");
}

fn identity_bimodule(fc: &FlowCategoryData) -> BimoduleCounts {
    BimoduleCounts {
        source: fc.clone(),
        target: fc.clone(),
        energy_constant: 1,
        degree: 0,
        incidences: fc
            .generators
            .iter()
            .map(|g| Incidence { from: g.id.clone(), to: g.id.clone(), t: 0, count: 1 })
            .collect(),
    }
}

#[test]
fn identity_and_empty_bimodules() {
    for name in ["rp2", "rp3_cells", "t2"] {
        let fc = load(name);
        let c = build_complex(&fc).unwrap();
        let id = chain_map(&identity_bimodule(&fc)).unwrap();
        assert_eq!(id, GradedMap::identity(&c.layout));
        assert!(check_chain_map(&id, &c, &c).unwrap().is_empty());
        let mut empty = identity_bimodule(&fc);
        empty.incidences.clear();
        let z = chain_map(&empty).unwrap();
        assert!(z.nonzero_entries().is_empty());
    }
}

#[test]
fn random_counts_on_rp2_are_not_chain_maps() {
    let fc = load("rp2");
    let c = build_complex(&fc).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut failures = 0;
    for _ in 0..50 {
        let mut b = identity_bimodule(&fc);
        for inc in &mut b.incidences {
            inc.count = rng.gen_range(-5..=5);
        }
        let psi = chain_map(&b).unwrap();
        // Oracle: on x2 ↦ x1 the identity reads 2·a₂ = a₁·2.
        let a1 = b.incidences[1].count;
        let a2 = b.incidences[2].count;
        let violations = check_chain_map(&psi, &c, &c).unwrap();
        assert_eq!(violations.is_empty(), a1 == a2);
        failures += usize::from(!violations.is_empty());
    }
    assert!(failures > 40);
}

#[test]
fn composite_bimodule_matches_matrix_product() {
    let h = HomotopyFixture::from_json(fixture("hmtp_demo").unwrap()).unwrap();
    let pss = h.pss.between(&h.morse, &h.floer);
    let ssp = h.ssp.between(&h.floer, &h.morse);
    // Composite counts: n_{pq} = Σ_r n_{pr} n_{rq}, exponents added.
    let mut composite: BTreeMap<(String, String, i64), i64> = BTreeMap::new();
    for a in &pss.incidences {
        for b in ssp.incidences.iter().filter(|b| b.from == a.to) {
            *composite.entry((a.from.clone(), b.to.clone(), a.t + b.t)).or_default() += a.count * b.count;
        }
    }
    let counts = BimoduleCounts {
        source: h.morse.clone(),
        target: h.morse.clone(),
        energy_constant: 4,
        degree: 0,
        incidences: composite
            .into_iter()
            .filter(|(_, c)| *c != 0)
            .map(|((from, to, t), count)| Incidence { from, to, t, count })
            .collect(),
    };
    let direct = chain_map(&counts).unwrap();
    let product = chain_map(&ssp).unwrap().compose(&chain_map(&pss).unwrap()).unwrap();
    assert!(direct.sub(&product).unwrap().nonzero_entries().is_empty());
}

fn one_by_one(layout_fc: &FlowCategoryData, entry: NovikovSeries) -> GradedMap {
    let c = build_complex(layout_fc).unwrap();
    let mut m = GradedMap::identity(&c.layout);
    for block in m.blocks.values_mut() {
        if block.rows() == 1 {
            block.set(0, 0, entry.clone());
        }
    }
    m
}

#[test]
fn unitriangular_examples() {
    let fc = load("s1");
    let c = build_complex(&fc).unwrap();
    let id = GradedMap::identity(&c.layout);
    assert!(check_unitriangular(&id));
    assert_eq!(invert_unitriangular(&id, 8).unwrap(), id);
    assert!(check_unitriangular(&one_by_one(&fc, s("1 + 7*T - T^3"))));
    assert!(!check_unitriangular(&one_by_one(&fc, s("2 + T"))));
    assert!(!check_unitriangular(&one_by_one(&fc, s("1 + T^-1"))));
    assert!(matches!(invert_unitriangular(&one_by_one(&fc, s("3")), 4), Err(FlowcatError::NotUnitriangular)));
    let inv = invert_unitriangular(&one_by_one(&fc, s("1 + 2*T")), 3).unwrap();
    assert_eq!(inv.blocks[&0].get(0, 0), &s("1 - 2*T + 4*T^2 @3"));
    // A nilpotent perturbation inverts exactly.
    let mut m = GradedMap::identity(&build_complex(&load("t2")).unwrap().layout);
    m.blocks.get_mut(&1).unwrap().set(0, 1, s("5*T^2"));
    let inv = invert_unitriangular(&m, 32).unwrap();
    assert_eq!(inv.blocks[&1].get(0, 1), &s("-5*T^2"));
    assert!(inv.blocks[&1].entries().iter().all(NovikovSeries::is_exact));
}

fn random_unitriangular(rng: &mut impl Rng, n: usize) -> LambdaMatrix {
    Matrix::from_fn(n, n, |i, j| {
        let tail: Vec<i64> = (0..3).map(|_| rng.gen_range(-4..=4)).collect();
        let t = NovikovSeries::laurent(1, &tail);
        if i == j {
            t.add(&NovikovSeries::one())
        } else {
            t
        }
    })
}

#[test]
fn random_inverses_multiply_back() {
    let fc = FlowCategoryData {
        two_n: 0,
        omega: 1,
        generators: (0..4).map(|k| GeneratorSpec { id: format!("g{k}"), index: 0, action: 0 }).collect(),
        incidences: vec![],
    };
    let layout = build_complex(&fc).unwrap().layout;
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..20 {
        let mut m = GradedMap::identity(&layout);
        m.blocks.insert(0, random_unitriangular(&mut rng, 4));
        let k = 32;
        let inv = invert_unitriangular(&m, k).unwrap();
        assert!(check_unitriangular(&inv));
        let prod = m.blocks[&0].mul(&ring(), &inv.blocks[&0]);
        for i in 0..4 {
            for j in 0..4 {
                let want = NovikovSeries::from_int(i64::from(i == j));
                assert!(prod.get(i, j).agrees_below(&want, k));
            }
        }
        let back = invert_unitriangular(&inv, k).unwrap();
        for (x, y) in back.blocks[&0].entries().iter().zip(m.blocks[&0].entries()) {
            assert!(x.agrees_below(y, k));
        }
    }
}

struct Maps {
    morse: GradedLambdaComplex,
    floer: GradedLambdaComplex,
    pss: GradedMap,
    ssp: GradedMap,
    pearl: GradedMap,
    h: GradedMap,
}

fn maps_of(h: &HomotopyFixture) -> Maps {
    Maps {
        morse: build_complex(&h.morse).unwrap(),
        floer: build_complex(&h.floer).unwrap(),
        pss: chain_map(&h.pss.between(&h.morse, &h.floer)).unwrap(),
        ssp: chain_map(&h.ssp.between(&h.floer, &h.morse)).unwrap(),
        pearl: chain_map(&h.pearl.between(&h.morse, &h.morse)).unwrap(),
        h: chain_map(&h.homotopy.between(&h.morse, &h.morse)).unwrap(),
    }
}

#[test]
fn demo_homotopy_fixture() {
    let h = HomotopyFixture::from_json(fixture("hmtp_demo").unwrap()).unwrap();
    let m = maps_of(&h);
    assert!(m.morse.check_d_squared().is_empty());
    assert!(m.floer.check_d_squared().is_empty());
    assert!(check_chain_map(&m.pss, &m.morse, &m.floer).unwrap().is_empty());
    assert!(check_chain_map(&m.ssp, &m.floer, &m.morse).unwrap().is_empty());
    assert!(check_chain_map(&m.pearl, &m.morse, &m.morse).unwrap().is_empty());
    assert!(check_unitriangular(&m.pearl));
    assert!(check_unitriangular(&m.ssp.compose(&m.pss).unwrap()));
    assert!(check_homotopy(&m.pearl, &m.ssp, &m.pss, &m.h, &m.morse).unwrap().holds());
    // Pearl equal to the composite, with zero homotopy.
    let composite = m.ssp.compose(&m.pss).unwrap();
    let zero = GradedMap::zero(&m.morse.layout, &m.morse.layout, 1);
    assert!(check_homotopy(&composite, &m.ssp, &m.pss, &zero, &m.morse).unwrap().holds());
    assert!(
        !check_homotopy(&m.pearl, &m.ssp, &m.pss, &zero, &m.morse).unwrap().holds() || m.h.nonzero_entries().is_empty()
    );
    // Shapes are checked.
    assert!(matches!(
        check_homotopy(&m.pearl, &m.ssp, &m.pss, &m.pearl, &m.morse),
        Err(FlowcatError::ShapeMismatch(_))
    ));
    // The pearl fixture is the same map.
    let pearl = BimoduleCounts::from_json(fixture("pearl_demo").unwrap()).unwrap();
    assert_eq!(chain_map(&pearl).unwrap(), m.pearl);
}

#[test]
fn homotopy_check_detects_each_perturbation_of_h() {
    let h = HomotopyFixture::from_json(fixture("hmtp_demo").unwrap()).unwrap();
    let m = maps_of(&h);
    for (&class, block) in &m.h.blocks {
        for i in 0..block.rows() {
            for j in 0..block.cols() {
                let mut bumped = m.h.clone();
                let b = bumped.blocks.get_mut(&class).unwrap();
                b.set(i, j, b.get(i, j).add(&s("T^2")));
                assert!(!check_homotopy(&m.pearl, &m.ssp, &m.pss, &bumped, &m.morse).unwrap().holds());
            }
        }
    }
}

#[test]
fn morse_data_of_standard_functions() {
    let q = |n: i64, d: i64| BigRational::new(n.into(), d.into());
    let cp = |id: &str, mu: i64, f: BigRational| CriticalPoint { id: id.into(), morse_index: mu, value: f };
    let inc = |a: &str, b: &str, c: i64| MorseIncidence { from: a.into(), to: b.into(), count: c };
    // Height function on S².
    let s2 = morse_flow_category(1, 0, 10, &q(1, 1), &[cp("min", 0, q(0, 1)), cp("max", 2, q(5, 1))], &[]).unwrap();
    assert!(s2.incidences.is_empty());
    assert_eq!(s2.generator("min").unwrap().index, 1);
    assert_eq!(s2.generator("max").unwrap().index, -1);
    // T² with four critical points; the two lines between each pair cancel.
    let t2 = morse_flow_category(
        1,
        0,
        10,
        &q(1, 2),
        &[cp("m", 0, q(0, 1)), cp("s1", 1, q(4, 1)), cp("s2", 1, q(6, 1)), cp("M", 2, q(10, 1))],
        &[inc("m", "s1", 0), inc("m", "s2", 0), inc("s1", "M", 0), inc("s2", "M", 0)],
    )
    .unwrap();
    let c = build_complex(&t2).unwrap();
    assert!(c.differentials.values().all(|d| d.entries().iter().all(NovikovSeries::is_exact_zero)));
    // Minimal RP³: coboundary ×2 from index 1 to index 2.
    let rp3 = morse_flow_category(
        3,
        0,
        10,
        &q(1, 1),
        &[cp("a", 0, q(0, 1)), cp("b", 1, q(1, 1)), cp("c", 2, q(2, 1)), cp("e", 3, q(3, 1))],
        &[inc("b", "c", 2)],
    )
    .unwrap();
    let c = build_complex(&rp3).unwrap();
    assert_eq!(c.d(2), Matrix::from_rows(vec![vec![s("2")]]));
    for i in [0, 1, 3] {
        assert!(c.d(i).entries().iter().all(NovikovSeries::is_exact_zero));
    }
    assert!(matches!(
        morse_flow_category(1, 0, 4, &q(1, 1), &[cp("m", 0, q(0, 1)), cp("M", 2, q(4, 1))], &[]),
        Err(FlowcatError::EpsilonTooLarge { .. })
    ));
}

#[test]
fn shifting_representatives_conjugates_by_t() {
    let fc = load("rp3_cells");
    let base = build_complex(&fc).unwrap();
    // Every representative moved by ω: matrices unchanged.
    let mut all = fc.clone();
    for g in &mut all.generators {
        g.action += all.omega;
    }
    assert_eq!(build_complex(&all).unwrap(), base);
    // Only x2 moved to T·x2: its column gains T, its row loses T.
    let mut one = fc.clone();
    one.generators.iter_mut().find(|g| g.id == "x2").unwrap().action += one.omega;
    for inc in &mut one.incidences {
        if inc.from == "x2" {
            inc.t += 1;
        }
        if inc.to == "x2" {
            inc.t -= 1;
        }
    }
    let moved = build_complex(&one).unwrap();
    assert_eq!(moved.d(2).get(0, 0), &s("2*T"));
    assert_eq!(moved.d(3).get(0, 1), &s("T^-1"));
    let h0 = base.homology(32).unwrap();
    let h1 = moved.homology(32).unwrap();
    assert_eq!(h0, h1);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn synthetic_fixtures_respect_grading(seed in 0u64..10_000) {
        let h = homotopy_fixture(seed);
        prop_assert!(h.morse.validate().is_empty());
        prop_assert!(h.floer.validate().is_empty());
        for (spec, src, tgt) in [
            (&h.pss, &h.morse, &h.floer),
            (&h.ssp, &h.floer, &h.morse),
            (&h.pearl, &h.morse, &h.morse),
            (&h.homotopy, &h.morse, &h.morse),
        ] {
            prop_assert!(spec.between(src, tgt).validate().is_empty());
        }
        let m = maps_of(&h);
        prop_assert!(check_homotopy(&m.pearl, &m.ssp, &m.pss, &m.h, &m.morse).unwrap().holds());
    }
}
