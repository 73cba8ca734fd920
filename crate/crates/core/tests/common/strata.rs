//! Word and collar oracles for the strata suites.

use std::collections::BTreeSet;

use floer_core::strata::*;
use num_rational::BigRational;

pub fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

pub fn chain(n: usize) -> Poset {
    let names: Vec<String> = (0..n).map(|i| format!("x{i}")).collect();
    let refs: Vec<&str> = names.iter().map(String::as_str).collect();
    Poset::chain(&refs)
}

/// Interiors of words: subsets of the open interval that are totally ordered.
pub fn word_oracle(p: &Poset, a: usize, b: usize) -> BTreeSet<BTreeSet<usize>> {
    let between: Vec<usize> = (0..p.len()).filter(|&r| p.lt(a, r) && p.lt(r, b)).collect();
    (0..1u32 << between.len())
        .map(|mask| (0..between.len()).filter(|i| mask >> i & 1 == 1).map(|i| between[i]).collect::<BTreeSet<usize>>())
        .filter(|s| s.iter().all(|&x| s.iter().all(|&y| x == y || p.lt(x, y) || p.lt(y, x))))
        .collect()
}

/// Lengths of all maximal upward chains from `a`.
pub fn upward_chain_lengths(p: &HomogeneousPoset, a: usize) -> BTreeSet<usize> {
    let up: Vec<usize> =
        (0..p.len()).filter(|&b| p.lt(a, b) && !(0..p.len()).any(|c| p.lt(a, c) && p.lt(c, b))).collect();
    if up.is_empty() {
        return [0].into();
    }
    up.iter().flat_map(|&b| upward_chain_lengths(p, b)).map(|l| l + 1).collect()
}

pub fn as_set(w: &[usize]) -> BTreeSet<usize> {
    w.iter().copied().collect()
}

/// `[0,1]²` with its corner `c`, two edges meeting at `c`, one extra edge
/// in the stratum `{0}`, and the interior.
pub fn square() -> StratifiedSet {
    let poset = subset_poset(2);
    let cells = ["c", "e0", "e1", "f0", "int"].map(String::from).to_vec();
    let strata = vec![3, 1, 2, 1, 0];
    let faces = [(0, 1), (0, 2), (0, 4), (1, 4), (2, 4), (3, 4)].into();
    StratifiedSet::new(poset, cells, strata, faces).unwrap()
}

pub fn four_chain_model() -> StratifiedSet {
    let w = enumerate_word_poset(&Poset::chain(&["p", "r", "s", "q"]), 0, 3).unwrap();
    StratifiedSet::of_poset(&w.poset)
}

pub fn point_space() -> StratifiedSet {
    StratifiedSet::of_poset(&subset_poset(0))
}
