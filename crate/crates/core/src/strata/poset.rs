//! Finite posets and homogeneous posets with their depth function.

use std::collections::{BTreeSet, HashMap};

use serde::Deserialize;

use super::StrataError;

/// A finite strict order, stored transitively closed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poset {
    names: Vec<String>,
    less: Vec<Vec<bool>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct PosetJson {
    elements: Vec<serde_json::Value>,
    less: Vec<(serde_json::Value, serde_json::Value)>,
}

fn value_name(v: &serde_json::Value) -> String {
    match v {
        serde_json::Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

impl Poset {
    /// The order generated by `pairs` (`a < b`); fails on cycles.
    pub fn new(names: Vec<String>, pairs: &[(usize, usize)]) -> Result<Self, StrataError> {
        let n = names.len();
        let mut seen = HashMap::new();
        for (i, name) in names.iter().enumerate() {
            if seen.insert(name.clone(), i).is_some() {
                return Err(StrataError::DuplicateElement(name.clone()));
            }
        }
        let mut less = vec![vec![false; n]; n];
        for &(a, b) in pairs {
            if a >= n || b >= n {
                return Err(StrataError::UnknownElement(format!("#{}", a.max(b))));
            }
            less[a][b] = true;
        }
        for k in 0..n {
            for i in 0..n {
                if less[i][k] {
                    for j in 0..n {
                        if less[k][j] {
                            less[i][j] = true;
                        }
                    }
                }
            }
        }
        if let Some(i) = (0..n).find(|&i| less[i][i]) {
            return Err(StrataError::NotAnOrder(names[i].clone()));
        }
        Ok(Self { names, less })
    }

    /// `{"elements":[…],"less":[[a,b],…]}`.
    pub fn from_json(text: &str) -> Result<Self, StrataError> {
        let doc: PosetJson = serde_json::from_str(text).map_err(|e| StrataError::Parse(e.to_string()))?;
        let names: Vec<String> = doc.elements.iter().map(value_name).collect();
        let index: HashMap<&str, usize> = names.iter().enumerate().map(|(i, n)| (n.as_str(), i)).collect();
        let mut pairs = Vec::with_capacity(doc.less.len());
        for (a, b) in &doc.less {
            let (a, b) = (value_name(a), value_name(b));
            let ia = *index.get(a.as_str()).ok_or(StrataError::UnknownElement(a.clone()))?;
            let ib = *index.get(b.as_str()).ok_or(StrataError::UnknownElement(b.clone()))?;
            pairs.push((ia, ib));
        }
        Self::new(names, &pairs)
    }

    /// A total order `0 < 1 < … < n-1`.
    pub fn chain(names: &[&str]) -> Self {
        let pairs: Vec<(usize, usize)> = (1..names.len()).map(|i| (i - 1, i)).collect();
        Self::new(names.iter().map(|s| s.to_string()).collect(), &pairs).expect("a chain is an order")
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn lt(&self, a: usize, b: usize) -> bool {
        self.less[a][b]
    }

    pub fn le(&self, a: usize, b: usize) -> bool {
        a == b || self.less[a][b]
    }

    /// Elements `b > a` with nothing strictly between.
    pub fn covers(&self, a: usize) -> Vec<usize> {
        (0..self.len()).filter(|&b| self.lt(a, b) && !(0..self.len()).any(|c| self.lt(a, c) && self.lt(c, b))).collect()
    }

    pub fn maximal(&self) -> Vec<usize> {
        (0..self.len()).filter(|&a| !(0..self.len()).any(|b| self.lt(a, b))).collect()
    }

    pub fn homogeneous(self) -> Result<HomogeneousPoset, StrataError> {
        HomogeneousPoset::new(self)
    }
}

/// A poset in which all maximal chains from an element up to a maximal
/// element have the same length, its depth.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomogeneousPoset {
    poset: Poset,
    depth: Vec<usize>,
    faces: Vec<BTreeSet<usize>>,
}

impl HomogeneousPoset {
    pub fn new(poset: Poset) -> Result<Self, StrataError> {
        let n = poset.len();
        let mut depth: Vec<Option<usize>> = vec![None; n];
        // Elements with more strictly-larger elements come later.
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&a| (0..n).filter(|&b| poset.lt(a, b)).count());
        for a in order {
            let covers = poset.covers(a);
            let above: BTreeSet<usize> = covers.iter().map(|&b| depth[b].expect("processed")).collect();
            depth[a] = match above.len() {
                0 => Some(0),
                1 => Some(above.first().expect("one depth") + 1),
                _ => return Err(StrataError::NotHomogeneous(poset.name(a).to_string())),
            };
        }
        let depth: Vec<usize> = depth.into_iter().map(|d| d.expect("all processed")).collect();
        let faces = (0..n).map(|a| (0..n).filter(|&b| depth[b] == 1 && poset.le(a, b)).collect()).collect();
        Ok(Self { poset, depth, faces })
    }

    pub fn poset(&self) -> &Poset {
        &self.poset
    }

    pub fn len(&self) -> usize {
        self.poset.len()
    }

    pub fn is_empty(&self) -> bool {
        self.poset.is_empty()
    }

    pub fn name(&self, i: usize) -> &str {
        self.poset.name(i)
    }

    pub fn le(&self, a: usize, b: usize) -> bool {
        self.poset.le(a, b)
    }

    pub fn lt(&self, a: usize, b: usize) -> bool {
        self.poset.lt(a, b)
    }

    pub fn depth(&self, a: usize) -> usize {
        self.depth[a]
    }

    /// Adjacent faces `F_a`: the depth-one elements above or equal to `a`.
    pub fn faces(&self, a: usize) -> &BTreeSet<usize> {
        &self.faces[a]
    }

    /// The element `b ≥ a` with `F_b` equal to `set`, when unique.
    pub fn element_with_faces(&self, a: usize, set: &BTreeSet<usize>) -> Option<usize> {
        let mut found = (0..self.len()).filter(|&b| self.le(a, b) && &self.faces[b] == set);
        let first = found.next()?;
        found.next().is_none().then_some(first)
    }

    /// The unique maximal element above `a`, if there is exactly one.
    pub fn top_above(&self, a: usize) -> Option<usize> {
        let mut tops = (0..self.len()).filter(|&b| self.depth[b] == 0 && self.le(a, b));
        let first = tops.next()?;
        tops.next().is_none().then_some(first)
    }

    /// `{b ≤ a}` with depth measured from `a`, and its embedding.
    pub fn down_set(&self, a: usize) -> Result<(HomogeneousPoset, Vec<usize>), StrataError> {
        let members: Vec<usize> = (0..self.len()).filter(|&b| self.le(b, a)).collect();
        let names = members.iter().map(|&b| self.name(b).to_string()).collect();
        let mut pairs = Vec::new();
        for (i, &x) in members.iter().enumerate() {
            for (j, &y) in members.iter().enumerate() {
                if self.lt(x, y) {
                    pairs.push((i, j));
                }
            }
        }
        Ok((Poset::new(names, &pairs)?.homogeneous()?, members))
    }

    /// `A × B` with the product order; element `(a, b)` has index
    /// `a·|B| + b` and depth `depth(a) + depth(b)`.
    pub fn product(&self, other: &HomogeneousPoset) -> HomogeneousPoset {
        let (n, m) = (self.len(), other.len());
        let names = (0..n)
            .flat_map(|a| (0..m).map(move |b| (a, b)))
            .map(|(a, b)| format!("({},{})", self.name(a), other.name(b)))
            .collect();
        let mut pairs = Vec::new();
        for a in 0..n {
            for b in 0..m {
                for c in 0..n {
                    for d in 0..m {
                        if (a, b) != (c, d) && self.le(a, c) && other.le(b, d) {
                            pairs.push((a * m + b, c * m + d));
                        }
                    }
                }
            }
        }
        Poset::new(names, &pairs).expect("product of orders").homogeneous().expect("product of homogeneous posets")
    }
}

/// `A^{(F)}`: subsets of `{0..n}` under reverse inclusion, depth the
/// cardinality, maximal element the empty set. Element index = bitmask.
pub fn subset_poset(n: usize) -> HomogeneousPoset {
    let size = 1usize << n;
    let names = (0..size)
        .map(|mask| {
            let items: Vec<String> = (0..n).filter(|i| mask >> i & 1 == 1).map(|i| i.to_string()).collect();
            format!("{{{}}}", items.join(","))
        })
        .collect();
    let mut pairs = Vec::new();
    for s in 0..size {
        for t in 0..size {
            // s < t when t ⊊ s.
            if s != t && s & t == t {
                pairs.push((s, t));
            }
        }
    }
    Poset::new(names, &pairs).expect("inclusion order").homogeneous().expect("subset posets are homogeneous")
}
