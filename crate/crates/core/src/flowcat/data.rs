//! Flow-category and bimodule data at the level of generators and counts.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};

/// One Π-orbit representative.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeneratorSpec {
    pub id: String,
    /// Residue mod `two_n`, or an integer degree when `two_n` is 0.
    pub index: i64,
    pub action: i64,
}

/// A signed count of rigid objects from `from` to `to`, shifted by `T^t`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Incidence {
    pub from: String,
    pub to: String,
    pub t: i64,
    pub count: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FlowCategoryData {
    pub two_n: i64,
    pub omega: i64,
    pub generators: Vec<GeneratorSpec>,
    pub incidences: Vec<Incidence>,
}

/// Counts of a flow bimodule between two flow categories. `degree` is the
/// grading shift of the induced map: 0 for chain maps, 1 for homotopies.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BimoduleCounts {
    pub source: FlowCategoryData,
    pub target: FlowCategoryData,
    pub energy_constant: i64,
    #[serde(default, skip_serializing_if = "is_zero")]
    pub degree: i64,
    pub incidences: Vec<Incidence>,
}

/// Bimodule counts whose source and target are supplied by context.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BimoduleSpec {
    pub energy_constant: i64,
    #[serde(default, skip_serializing_if = "is_zero")]
    pub degree: i64,
    pub incidences: Vec<Incidence>,
}

fn is_zero(v: &i64) -> bool {
    *v == 0
}

impl BimoduleSpec {
    pub fn between(&self, source: &FlowCategoryData, target: &FlowCategoryData) -> BimoduleCounts {
        BimoduleCounts {
            source: source.clone(),
            target: target.clone(),
            energy_constant: self.energy_constant,
            degree: self.degree,
            incidences: self.incidences.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    TwoNNotEven { two_n: i64 },
    OmegaNotPositive { omega: i64 },
    DuplicateId { id: String },
    UnknownGenerator { incidence: usize, id: String },
    Degree { incidence: usize, from: String, to: String, expected: i64, found: i64 },
    Energy { incidence: usize, from: String, to: String, lhs: i64, rhs: i64 },
    GradingMismatch { source_two_n: i64, target_two_n: i64 },
    OmegaMismatch { source_omega: i64, target_omega: i64 },
    Source { violation: Box<Violation> },
    Target { violation: Box<Violation> },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::TwoNNotEven { two_n } => write!(f, "two_n = {two_n} is not a nonnegative even integer"),
            Violation::OmegaNotPositive { omega } => write!(f, "omega = {omega} is not positive"),
            Violation::DuplicateId { id } => write!(f, "generator id {id:?} is not unique"),
            Violation::UnknownGenerator { incidence, id } => {
                write!(f, "incidence #{incidence} refers to unknown generator {id:?}")
            }
            Violation::Degree { incidence, from, to, expected, found } => {
                write!(f, "incidence #{incidence} {from} -> {to}: index of target is {found}, expected {expected}")
            }
            Violation::Energy { incidence, from, to, lhs, rhs } => {
                write!(f, "incidence #{incidence} {from} -> {to}: energy bound fails ({lhs} must exceed {rhs})")
            }
            Violation::GradingMismatch { source_two_n, target_two_n } => {
                write!(f, "source is graded mod {source_two_n}, target mod {target_two_n}")
            }
            Violation::OmegaMismatch { source_omega, target_omega } => {
                write!(f, "source has omega {source_omega}, target {target_omega}")
            }
            Violation::Source { violation } => write!(f, "source: {violation}"),
            Violation::Target { violation } => write!(f, "target: {violation}"),
        }
    }
}

/// Grading class of an index: a residue mod `two_n`, or the index itself
/// when `two_n` is 0.
pub fn grading_class(index: i64, two_n: i64) -> i64 {
    if two_n == 0 {
        index
    } else {
        index.rem_euclid(two_n)
    }
}

fn same_class(a: i64, b: i64, two_n: i64) -> bool {
    grading_class(a, two_n) == grading_class(b, two_n)
}

impl FlowCategoryData {
    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }

    pub fn generator(&self, id: &str) -> Option<&GeneratorSpec> {
        self.generators.iter().find(|g| g.id == id)
    }

    pub(crate) fn lookup(&self) -> HashMap<&str, &GeneratorSpec> {
        self.generators.iter().map(|g| (g.id.as_str(), g)).collect()
    }

    /// Checks evenness of `two_n`, positivity of `omega`, unique ids,
    /// resolvable references, the degree rule and strict energy positivity.
    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        if self.two_n < 0 || self.two_n % 2 != 0 {
            out.push(Violation::TwoNNotEven { two_n: self.two_n });
        }
        if self.omega <= 0 {
            out.push(Violation::OmegaNotPositive { omega: self.omega });
        }
        let mut seen: BTreeMap<&str, usize> = BTreeMap::new();
        for g in &self.generators {
            *seen.entry(&g.id).or_default() += 1;
        }
        for (id, n) in seen {
            if n > 1 {
                out.push(Violation::DuplicateId { id: id.to_string() });
            }
        }
        let gens = self.lookup();
        let two_n = self.two_n.max(0);
        for (k, inc) in self.incidences.iter().enumerate() {
            let (Some(p), Some(q)) = (gens.get(inc.from.as_str()), gens.get(inc.to.as_str())) else {
                for id in [&inc.from, &inc.to] {
                    if !gens.contains_key(id.as_str()) {
                        out.push(Violation::UnknownGenerator { incidence: k, id: id.clone() });
                    }
                }
                continue;
            };
            let expected = p.index - 1;
            if !same_class(q.index, expected, two_n) {
                out.push(Violation::Degree {
                    incidence: k,
                    from: p.id.clone(),
                    to: q.id.clone(),
                    expected: grading_class(expected, two_n),
                    found: grading_class(q.index, two_n),
                });
            }
            let lhs = q.action + self.omega * inc.t;
            if lhs <= p.action {
                out.push(Violation::Energy { incidence: k, from: p.id.clone(), to: q.id.clone(), lhs, rhs: p.action });
            }
        }
        out
    }

    /// The same data graded mod `two_n`. Allowed when the data is
    /// `Z`-graded or already graded mod a multiple of `two_n`.
    pub fn regraded(&self, two_n: i64) -> Option<Self> {
        let ok = two_n >= 0
            && two_n % 2 == 0
            && (self.two_n == two_n || (two_n > 0 && (self.two_n == 0 || self.two_n % two_n == 0)));
        ok.then(|| {
            let mut out = self.clone();
            out.two_n = two_n;
            for g in &mut out.generators {
                g.index = grading_class(g.index, two_n);
            }
            out
        })
    }
}

impl BimoduleCounts {
    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }

    /// Validates both categories, then the degree rule
    /// `ind(to) ≡ ind(from) + degree` and the energy bound
    /// `A(from) < A(to) + ω·t + C` for every count.
    pub fn validate(&self) -> Vec<Violation> {
        let mut out: Vec<Violation> =
            self.source.validate().into_iter().map(|v| Violation::Source { violation: Box::new(v) }).collect();
        out.extend(self.target.validate().into_iter().map(|v| Violation::Target { violation: Box::new(v) }));
        if self.source.two_n != self.target.two_n {
            out.push(Violation::GradingMismatch { source_two_n: self.source.two_n, target_two_n: self.target.two_n });
        }
        if self.source.omega != self.target.omega {
            out.push(Violation::OmegaMismatch { source_omega: self.source.omega, target_omega: self.target.omega });
        }
        let src = self.source.lookup();
        let tgt = self.target.lookup();
        let two_n = self.source.two_n.max(0);
        for (k, inc) in self.incidences.iter().enumerate() {
            let p = src.get(inc.from.as_str());
            let q = tgt.get(inc.to.as_str());
            if p.is_none() {
                out.push(Violation::UnknownGenerator { incidence: k, id: inc.from.clone() });
            }
            if q.is_none() {
                out.push(Violation::UnknownGenerator { incidence: k, id: inc.to.clone() });
            }
            let (Some(p), Some(q)) = (p, q) else { continue };
            let expected = p.index + self.degree;
            if !same_class(q.index, expected, two_n) {
                out.push(Violation::Degree {
                    incidence: k,
                    from: p.id.clone(),
                    to: q.id.clone(),
                    expected: grading_class(expected, two_n),
                    found: grading_class(q.index, two_n),
                });
            }
            let rhs = q.action + self.target.omega * inc.t + self.energy_constant;
            if p.action >= rhs {
                out.push(Violation::Energy {
                    incidence: k,
                    from: p.id.clone(),
                    to: q.id.clone(),
                    lhs: rhs,
                    rhs: p.action,
                });
            }
        }
        out
    }
}
