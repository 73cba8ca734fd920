//! Word posets `A_pq`, their boundary factorization under concatenation, and
//! the energy map to ordered partitions.

use std::collections::{BTreeMap, BTreeSet};

use super::poset::{HomogeneousPoset, Poset};
use super::StrataError;

/// Words `p r₁ ⋯ r_l q` for chains `p < r₁ < ⋯ < r_l < q` in an ambient
/// poset, ordered by reverse inclusion of interiors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WordPoset {
    pub p: usize,
    pub q: usize,
    /// Interiors, each listed in increasing order.
    pub words: Vec<Vec<usize>>,
    pub poset: HomogeneousPoset,
}

impl WordPoset {
    pub fn index_of(&self, interior: &[usize]) -> Option<usize> {
        self.words.iter().position(|w| w == interior)
    }

    /// The full word including endpoints.
    pub fn letters(&self, k: usize) -> Vec<usize> {
        let mut out = vec![self.p];
        out.extend(&self.words[k]);
        out.push(self.q);
        out
    }

    pub fn top(&self) -> usize {
        self.index_of(&[]).expect("the word pq is present")
    }
}

/// All chains in `interior`, which must be listed along a linear extension.
fn chains(p: &Poset, interior: &[usize]) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = vec![vec![]];
    for &r in interior {
        let extended: Vec<Vec<usize>> = out
            .iter()
            .filter(|c| c.last().is_none_or(|&l| p.lt(l, r)))
            .map(|c| {
                let mut c = c.clone();
                c.push(r);
                c
            })
            .collect();
        out.extend(extended);
    }
    out
}

pub fn enumerate_word_poset(ambient: &Poset, p: usize, q: usize) -> Result<WordPoset, StrataError> {
    if !ambient.lt(p, q) {
        return Err(StrataError::NotBelow(ambient.name(p).into(), ambient.name(q).into()));
    }
    let mut interior: Vec<usize> = (0..ambient.len()).filter(|&r| ambient.lt(p, r) && ambient.lt(r, q)).collect();
    interior.sort_by_key(|&r| (0..ambient.len()).filter(|&s| ambient.lt(s, r)).count());
    let mut words = chains(ambient, &interior);
    words.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    let names = words
        .iter()
        .map(|w| {
            let mut s = ambient.name(p).to_string();
            for &r in w {
                s.push_str(ambient.name(r));
            }
            s.push_str(ambient.name(q));
            s
        })
        .collect();
    let sets: Vec<BTreeSet<usize>> = words.iter().map(|w| w.iter().copied().collect()).collect();
    let mut pairs = Vec::new();
    for (i, a) in sets.iter().enumerate() {
        for (j, b) in sets.iter().enumerate() {
            if i != j && b.is_subset(a) {
                pairs.push((i, j));
            }
        }
    }
    let poset = Poset::new(names, &pairs)?.homogeneous()?;
    Ok(WordPoset { p, q, words, poset })
}

/// The concatenation map `A_pr × A_rq → ∂^{prq} A_pq` and what was
/// verified about it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub left: WordPoset,
    pub right: WordPoset,
    pub whole: WordPoset,
    pub map: BTreeMap<(usize, usize), usize>,
    pub bijective: bool,
    pub order_isomorphism: bool,
    pub depth_additive: bool,
}

impl Factorization {
    pub fn holds(&self) -> bool {
        self.bijective && self.order_isomorphism && self.depth_additive
    }
}

pub fn boundary_factorization(ambient: &Poset, p: usize, r: usize, q: usize) -> Result<Factorization, StrataError> {
    let left = enumerate_word_poset(ambient, p, r)?;
    let right = enumerate_word_poset(ambient, r, q)?;
    let whole = enumerate_word_poset(ambient, p, q)?;
    let mut map = BTreeMap::new();
    for (i, a) in left.words.iter().enumerate() {
        for (j, b) in right.words.iter().enumerate() {
            let mut w = a.clone();
            w.push(r);
            w.extend(b);
            let k = whole.index_of(&w).expect("a chain through r is a word of A_pq");
            map.insert((i, j), k);
        }
    }
    let image: BTreeSet<usize> = map.values().copied().collect();
    let boundary: BTreeSet<usize> = (0..whole.words.len()).filter(|&k| whole.words[k].contains(&r)).collect();
    let bijective = image.len() == map.len() && image == boundary;
    let order_isomorphism = map.iter().all(|(&(i, j), &k)| {
        map.iter().all(|(&(i2, j2), &k2)| (left.poset.le(i, i2) && right.poset.le(j, j2)) == whole.poset.le(k, k2))
    });
    let depth_additive =
        map.iter().all(|(&(i, j), &k)| whole.poset.depth(k) == left.poset.depth(i) + right.poset.depth(j) + 1);
    Ok(Factorization { left, right, whole, map, bijective, order_isomorphism, depth_additive })
}

/// For `p < r < s < q`, splitting first at `r` then at `s` agrees with
/// splitting at `s` then at `r`.
pub fn check_associativity(ambient: &Poset, p: usize, r: usize, s: usize, q: usize) -> Result<bool, StrataError> {
    let prq = boundary_factorization(ambient, p, r, q)?;
    let rsq = boundary_factorization(ambient, r, s, q)?;
    let psq = boundary_factorization(ambient, p, s, q)?;
    let prs = boundary_factorization(ambient, p, r, s)?;
    for a in 0..prs.left.words.len() {
        for b in 0..prs.right.words.len() {
            for c in 0..rsq.right.words.len() {
                let via_r = prq.map[&(a, rsq.map[&(b, c)])];
                let via_s = psq.map[&(prs.map[&(a, b)], c)];
                if via_r != via_s {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// An ordered partition of a positive integer into positive parts.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Partition(pub Vec<i64>);

impl Partition {
    pub fn total(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn depth(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    fn cuts(&self) -> BTreeSet<i64> {
        let mut acc = 0;
        let mut out = BTreeSet::new();
        for &d in &self.0[..self.0.len().saturating_sub(1)] {
            acc += d;
            out.insert(acc);
        }
        out
    }

    /// `self ≤ other`: `other` arises by merging adjacent parts of `self`.
    pub fn refines(&self, other: &Partition) -> bool {
        self.total() == other.total() && other.cuts().is_subset(&self.cuts())
    }

    pub fn concat(&self, other: &Partition) -> Partition {
        Partition(self.0.iter().chain(&other.0).copied().collect())
    }
}

impl std::fmt::Display for Partition {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.0.iter().map(i64::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// `δ(p r₁ ⋯ r_l q) = (A(r₁) - A(p), …, A(q) - A(r_l))` for every word.
pub fn delta_map(w: &WordPoset, actions: &[i64]) -> Result<Vec<Partition>, StrataError> {
    (0..w.words.len())
        .map(|k| {
            let letters = w.letters(k);
            letters
                .windows(2)
                .map(|pair| {
                    let d = actions[pair[1]] - actions[pair[0]];
                    if d > 0 {
                        Ok(d)
                    } else {
                        Err(StrataError::NonPositiveEnergy { from: pair[0], to: pair[1] })
                    }
                })
                .collect::<Result<Vec<i64>, _>>()
                .map(Partition)
        })
        .collect()
}

/// `δ` is order- and depth-preserving on `w`.
pub fn check_delta_monotone(w: &WordPoset, actions: &[i64]) -> Result<bool, StrataError> {
    let delta = delta_map(w, actions)?;
    let n = w.words.len();
    let monotone = (0..n).all(|a| (0..n).all(|b| !w.poset.le(a, b) || delta[a].refines(&delta[b])));
    let depth = (0..n).all(|a| delta[a].depth() == w.poset.depth(a));
    Ok(monotone && depth)
}

/// `δ ∘ concat = concat ∘ (δ × δ)` on `A_pr × A_rq`.
pub fn check_delta_square(ambient: &Poset, p: usize, r: usize, q: usize, actions: &[i64]) -> Result<bool, StrataError> {
    let f = boundary_factorization(ambient, p, r, q)?;
    let dl = delta_map(&f.left, actions)?;
    let dr = delta_map(&f.right, actions)?;
    let dw = delta_map(&f.whole, actions)?;
    Ok(f.map.iter().all(|(&(i, j), &k)| dw[k] == dl[i].concat(&dr[j])))
}
