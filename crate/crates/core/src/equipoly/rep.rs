//! Diagonal representations of finite abelian groups `Z/m₁ × ⋯ × Z/m_s`.

use std::collections::BTreeSet;

use num_rational::Rational64;
use num_traits::Zero;
use serde::Serialize;

use super::EquipolyError;

/// Coordinate `k` is scaled by `g` through `exp(2πi Σ_i g_i w_{k,i} / m_i)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct AbelianRep {
    pub group: Vec<u32>,
    pub weights: Vec<Vec<u32>>,
}

pub type GroupElement = Vec<u32>;

impl AbelianRep {
    /// Weights are reduced mod the cyclic orders.
    pub fn new(group: Vec<u32>, weights: Vec<Vec<i64>>) -> Result<Self, EquipolyError> {
        if group.contains(&0) {
            return Err(EquipolyError::InvalidGroup("cyclic orders must be positive".into()));
        }
        let weights = weights
            .into_iter()
            .map(|w| {
                if w.len() != group.len() {
                    return Err(EquipolyError::WeightShape { expected: group.len(), got: w.len() });
                }
                Ok(w.iter().zip(&group).map(|(&x, &m)| x.rem_euclid(m as i64) as u32).collect())
            })
            .collect::<Result<_, _>>()?;
        Ok(Self { group, weights })
    }

    /// `--group 2,2 --weights "1,0;0,1"`; an empty weight string is the zero
    /// representation.
    pub fn parse(group: &str, weights: &str) -> Result<Self, EquipolyError> {
        let bad = |s: &str| EquipolyError::Parse(format!("not an integer: {s:?}"));
        let group: Vec<u32> = group
            .split(',')
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .map(|s| s.parse().map_err(|_| bad(s)))
            .collect::<Result<_, _>>()?;
        let weights: Vec<Vec<i64>> = weights
            .split(';')
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .map(|c| c.split(',').map(|s| s.trim().parse().map_err(|_| bad(s))).collect())
            .collect::<Result<_, _>>()?;
        Self::new(group, weights)
    }

    pub fn dim(&self) -> usize {
        self.weights.len()
    }

    pub fn order(&self) -> usize {
        self.group.iter().map(|&m| m as usize).product()
    }

    pub fn elements(&self) -> Vec<GroupElement> {
        group_elements(&self.group)
    }

    /// `Σ_i g_i w_{k,i} / m_i mod 1`.
    pub fn phase(&self, k: usize, g: &[u32]) -> Rational64 {
        let total: Rational64 = self.weights[k]
            .iter()
            .zip(g)
            .zip(&self.group)
            .map(|((&w, &x), &m)| Rational64::new((w as i64) * (x as i64), m as i64))
            .sum();
        total - total.floor()
    }

    pub fn fixes(&self, k: usize, g: &[u32]) -> bool {
        self.phase(k, g).is_zero()
    }

    /// `V ⊕ V'` as a representation of `G × G'`.
    pub fn direct_sum(&self, other: &AbelianRep) -> AbelianRep {
        let pad = |w: &Vec<u32>, before: usize, after: usize| {
            let mut out = vec![0; before];
            out.extend(w);
            out.extend(std::iter::repeat_n(0, after));
            out
        };
        let (s1, s2) = (self.group.len(), other.group.len());
        AbelianRep {
            group: self.group.iter().chain(&other.group).copied().collect(),
            weights: self
                .weights
                .iter()
                .map(|w| pad(w, 0, s2))
                .chain(other.weights.iter().map(|w| pad(w, s1, 0)))
                .collect(),
        }
    }

    /// Coordinates on which every element of `h` acts trivially: `V^H`.
    pub fn fixed_coordinates(&self, h: &Subgroup) -> Vec<usize> {
        (0..self.dim()).filter(|&k| h.elements.iter().all(|g| self.fixes(k, g))).collect()
    }

    /// Stabilizer of any point whose nonzero coordinates are `support`.
    pub fn stabilizer(&self, support: &[usize]) -> Subgroup {
        Subgroup {
            elements: self.elements().into_iter().filter(|g| support.iter().all(|&k| self.fixes(k, g))).collect(),
        }
    }

    /// The support of the generic points with stabilizer exactly `h`: all of
    /// `V^H`, which works exactly when any support does.
    pub fn stratum_support(&self, h: &Subgroup) -> Result<Vec<usize>, EquipolyError> {
        let support = self.fixed_coordinates(h);
        if self.stabilizer(&support) == *h {
            Ok(support)
        } else {
            Err(EquipolyError::EmptyStratum)
        }
    }
}

pub fn group_elements(group: &[u32]) -> Vec<GroupElement> {
    let mut out = vec![vec![]];
    for &m in group {
        out = out
            .into_iter()
            .flat_map(|g: Vec<u32>| {
                (0..m).map(move |x| {
                    let mut g = g.clone();
                    g.push(x);
                    g
                })
            })
            .collect();
    }
    out
}

/// A subgroup, stored as its set of elements.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Subgroup {
    pub elements: BTreeSet<GroupElement>,
}

impl Subgroup {
    pub fn trivial(group: &[u32]) -> Self {
        Self { elements: [vec![0; group.len()]].into() }
    }

    pub fn whole(group: &[u32]) -> Self {
        Self { elements: group_elements(group).into_iter().collect() }
    }

    pub fn generated(group: &[u32], gens: &[GroupElement]) -> Result<Self, EquipolyError> {
        for g in gens {
            if g.len() != group.len() || g.iter().zip(group).any(|(&x, &m)| x >= m) {
                return Err(EquipolyError::InvalidGroup(format!("{g:?} is not an element")));
            }
        }
        let mut elements: BTreeSet<GroupElement> = [vec![0; group.len()]].into();
        loop {
            let next: BTreeSet<GroupElement> = elements
                .iter()
                .flat_map(|a| {
                    gens.iter().map(move |b| a.iter().zip(b).zip(group).map(|((x, y), m)| (x + y) % m).collect())
                })
                .collect();
            let before = elements.len();
            elements.extend(next);
            if elements.len() == before {
                return Ok(Self { elements });
            }
        }
    }

    /// `"0,1;1,0"`: generators separated by `;`; `"trivial"` (or `""`) and
    /// `"G"` name the two extremes.
    pub fn parse(group: &[u32], text: &str) -> Result<Self, EquipolyError> {
        match text.trim() {
            "" | "trivial" => Ok(Self::trivial(group)),
            "G" => Ok(Self::whole(group)),
            t => {
                let gens: Vec<GroupElement> = t
                    .split(';')
                    .map(|g| {
                        g.split(',')
                            .map(|s| s.trim().parse().map_err(|_| EquipolyError::Parse(format!("bad element {g:?}"))))
                            .collect()
                    })
                    .collect::<Result<_, _>>()?;
                Self::generated(group, &gens)
            }
        }
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }
}
