//! Curve configurations on a smooth projective surface: the intersection
//! pairing, fiber multiplicities and blow-downs.

mod graph;
pub mod linalg;

pub use graph::{Curve, CurveGraph};

use crate::rational::{int, serde_str_map};
use crate::Rational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DivisorError {
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("duplicate vertex `{0}`")]
    DuplicateVertex(String),
    #[error("self-loop at `{0}`")]
    SelfLoop(String),
    #[error("more than one edge between `{0}` and `{1}`")]
    MultiEdge(String, String),
    #[error("self-intersection of `{0}` is unknown")]
    UnknownSelfIntersection(String),
    #[error("`{vertex}` has self-intersection {}, not -1", show_self(.self_intersection))]
    NotMinusOne {
        vertex: String,
        self_intersection: Option<i64>,
    },
    #[error("contraction would make `{0}` and `{1}` meet twice")]
    ContractionMultiEdge(String, String),
    #[error("`{0}` is not in the support")]
    NotInSupport(String),
}

fn show_self(s: &Option<i64>) -> String {
    s.map_or_else(|| "unknown".to_string(), |v| v.to_string())
}

/// Rational combination of graph vertices. Zero coefficients are dropped.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(from = "RawDivisor", into = "RawDivisor")]
pub struct Divisor {
    coeffs: BTreeMap<String, Rational>,
}

#[derive(Serialize, Deserialize)]
#[serde(transparent)]
struct RawDivisor(#[serde(with = "serde_str_map")] BTreeMap<String, Rational>);

impl From<RawDivisor> for Divisor {
    fn from(raw: RawDivisor) -> Self {
        Divisor::new(raw.0)
    }
}

impl From<Divisor> for RawDivisor {
    fn from(d: Divisor) -> Self {
        RawDivisor(d.coeffs)
    }
}

impl Divisor {
    pub fn new(coeffs: BTreeMap<String, Rational>) -> Self {
        Self {
            coeffs: coeffs.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn vertex(name: &str) -> Self {
        Self::from_ints(&[(name, 1)])
    }

    pub fn from_ints(pairs: &[(&str, i64)]) -> Self {
        let mut coeffs = BTreeMap::new();
        for (n, c) in pairs {
            *coeffs.entry(n.to_string()).or_insert_with(Rational::zero) += int(*c);
        }
        Self::new(coeffs)
    }

    pub fn coeffs(&self) -> &BTreeMap<String, Rational> {
        &self.coeffs
    }

    pub fn coefficient(&self, name: &str) -> Rational {
        self.coeffs.get(name).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn support(&self) -> BTreeSet<String> {
        self.coeffs.keys().cloned().collect()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn add(&self, other: &Divisor) -> Divisor {
        let mut coeffs = self.coeffs.clone();
        for (n, c) in &other.coeffs {
            *coeffs.entry(n.clone()).or_insert_with(Rational::zero) += c;
        }
        Divisor::new(coeffs)
    }

    pub fn scale(&self, k: &Rational) -> Divisor {
        Divisor::new(self.coeffs.iter().map(|(n, c)| (n.clone(), c * k)).collect())
    }
}

/// Bilinear extension of the vertex pairing. Only the self-intersections
/// that actually occur (vertices in both supports) must be known.
pub fn pairing(g1: &Divisor, g2: &Divisor, graph: &CurveGraph) -> Result<Rational, DivisorError> {
    for n in g1.coeffs.keys().chain(g2.coeffs.keys()) {
        if !graph.contains(n) {
            return Err(DivisorError::UnknownVertex(n.clone()));
        }
    }
    let mut acc = Rational::zero();
    for (a, ca) in &g1.coeffs {
        for (b, cb) in &g2.coeffs {
            let e = graph.intersection(a, b)?;
            if e != 0 {
                acc += ca * cb * int(e);
            }
        }
    }
    Ok(acc)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FiberSolution {
    /// Unknown coefficients, fiber vertices first in graph order.
    pub unknowns: Vec<String>,
    pub dimension: usize,
    pub basis: Vec<Divisor>,
}

/// Solves `(G, v) = 0` for every `v` in `fiber`, with `G` supported on
/// `fiber` plus the `boundary` vertices.
///
/// Boundary vertices are free unknowns that carry no equation of their own.
/// They meet fiber vertices along graph edges and along the extra edges
/// listed in `boundary`; a boundary vertex need not belong to the graph.
pub fn fiber_solve(
    graph: &CurveGraph,
    fiber: &[String],
    boundary: &BTreeMap<String, Vec<String>>,
) -> Result<FiberSolution, DivisorError> {
    let fiber_set: BTreeSet<&str> = fiber.iter().map(String::as_str).collect();
    for v in fiber {
        graph.position(v)?;
    }
    for targets in boundary.values() {
        if let Some(t) = targets.iter().find(|t| !fiber_set.contains(t.as_str())) {
            return Err(DivisorError::UnknownVertex(t.clone()));
        }
    }
    let mut unknowns: Vec<String> = graph
        .vertex_names()
        .filter(|n| fiber_set.contains(n) || boundary.contains_key(*n))
        .map(String::from)
        .collect();
    for b in boundary.keys() {
        if !graph.contains(b) {
            unknowns.push(b.clone());
        }
    }
    let meets = |v: &str, x: &str| -> Result<i64, DivisorError> {
        if v == x {
            return graph.intersection(v, v);
        }
        let listed = boundary.get(x).is_some_and(|ts| ts.iter().any(|t| t == v));
        let drawn = graph.contains(x) && graph.meets(v, x)?;
        Ok(i64::from(listed || drawn))
    };
    let mut rows = Vec::with_capacity(fiber.len());
    for v in graph.vertex_names().filter(|n| fiber_set.contains(n)) {
        let row = unknowns
            .iter()
            .map(|x| meets(v, x).map(int))
            .collect::<Result<Vec<_>, _>>()?;
        rows.push(row);
    }
    let basis: Vec<Divisor> = linalg::nullspace(&rows, unknowns.len())
        .iter()
        .map(|v| {
            let v = linalg::primitive(v);
            Divisor::new(unknowns.iter().cloned().zip(v).collect())
        })
        .collect();
    Ok(FiberSolution {
        unknowns,
        dimension: basis.len(),
        basis,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FiberViolation {
    Empty,
    UnknownVertex { vertex: String },
    UnknownSelfIntersection { vertex: String },
    Pairing {
        vertex: String,
        #[serde(with = "crate::rational::serde_str")]
        value: Rational,
    },
    SelfPairing {
        #[serde(with = "crate::rational::serde_str")]
        value: Rational,
    },
    Disconnected { components: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FiberReport {
    pub violations: Vec<FiberViolation>,
}

impl FiberReport {
    pub fn is_pass(&self) -> bool {
        self.violations.is_empty()
    }

    /// Vertices `v` of the support with `(F, v) ≠ 0`.
    pub fn failing_vertices(&self) -> Vec<&str> {
        self.violations
            .iter()
            .filter_map(|v| match v {
                FiberViolation::Pairing { vertex, .. } => Some(vertex.as_str()),
                _ => None,
            })
            .collect()
    }
}

/// Numerical test for `F` to be a fiber: `(F, v) = 0` on the support,
/// `(F, F) = 0`, and a connected support.
pub fn validate_fiber(graph: &CurveGraph, f: &Divisor) -> FiberReport {
    let mut violations = Vec::new();
    if f.is_zero() {
        violations.push(FiberViolation::Empty);
        return FiberReport { violations };
    }
    let unknown: Vec<&String> = f.coeffs.keys().filter(|n| !graph.contains(n)).collect();
    if !unknown.is_empty() {
        violations.extend(unknown.into_iter().map(|v| FiberViolation::UnknownVertex { vertex: v.clone() }));
        return FiberReport { violations };
    }
    let mut self_pairing = Some(Rational::zero());
    for (v, c) in &f.coeffs {
        match pairing(f, &Divisor::vertex(v), graph) {
            Ok(value) => {
                if let Some(acc) = self_pairing.as_mut() {
                    *acc += c * &value;
                }
                if !value.is_zero() {
                    violations.push(FiberViolation::Pairing {
                        vertex: v.clone(),
                        value,
                    });
                }
            }
            Err(_) => {
                self_pairing = None;
                violations.push(FiberViolation::UnknownSelfIntersection { vertex: v.clone() });
            }
        }
    }
    if let Some(value) = self_pairing.filter(|s| !s.is_zero()) {
        violations.push(FiberViolation::SelfPairing { value });
    }
    let components = graph.components_of(&f.support()).map(|c| c.len()).unwrap_or(0);
    if components > 1 {
        violations.push(FiberViolation::Disconnected { components });
    }
    FiberReport { violations }
}

/// The self-intersection of `v` forced by `(F, v) = 0`.
pub fn forced_self_intersection(graph: &CurveGraph, f: &Divisor, v: &str) -> Result<Rational, DivisorError> {
    graph.position(v)?;
    let cv = f.coefficient(v);
    if cv.is_zero() {
        return Err(DivisorError::NotInSupport(v.to_string()));
    }
    let mut rest = f.coeffs.clone();
    rest.remove(v);
    let others = pairing(&Divisor::new(rest), &Divisor::vertex(v), graph)?;
    Ok(-others / cv)
}
