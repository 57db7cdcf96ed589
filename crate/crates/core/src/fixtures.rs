//! Built-in objects: the surface `S` in its `b`-chart, the graded monomial
//! algebra of its leading forms, the boundary divisor graph, two line
//! bundles over `S`, and the fibration `b: S → P¹` with its double fibers.

use crate::algebra::{evaluate, AlgebraError, ChartPresentation, Expr, LaurentPoly, Scope};
use crate::derivation::{Derivation, DerivationError};
use crate::divisor::{forced_self_intersection, CurveGraph, Divisor, DivisorError};
use crate::picard::{FibrationPresentation, PicardElement, PicardError};
use crate::semigroup::{LatticePoint, SemigroupError, SemigroupPresentation};
use crate::weights::{Weight, WeightAssignment};
use num_traits::One;
use serde::Serialize;
use std::collections::BTreeMap;

pub const FIXTURE_NAMES: [&str; 6] = [
    "surface-S",
    "graded-R",
    "divisor-graph-S",
    "bundle-skew",
    "bundle-noskew",
    "fibration-b",
];

/// Parameters used when `bundle-skew` is loaded by name alone.
pub const DEFAULT_SKEW: (u32, u32) = (3, 8);

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FixtureError {
    #[error("unknown fixture `{0}`")]
    UnknownFixture(String),
    #[error("fixture `{0}` has no {1}")]
    Missing(String, &'static str),
    #[error("relation {0}: both sides must be single monomials in the generators")]
    NotMonomial(String),
    #[error("map image of `{0}` is not a unit in the chart")]
    NotAUnit(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Derivation(#[from] DerivationError),
    #[error(transparent)]
    Divisor(#[from] DivisorError),
    #[error(transparent)]
    Picard(#[from] PicardError),
    #[error(transparent)]
    Semigroup(#[from] SemigroupError),
}

/// `lhs = rhs`, both sides polynomials in the generator names.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Relation {
    pub label: String,
    pub lhs: LaurentPoly,
    pub rhs: LaurentPoly,
}

impl Relation {
    pub fn parse(label: &str, text: &str, chart: &ChartPresentation) -> Result<Self, AlgebraError> {
        let (l, r) = text.split_once('=').ok_or(AlgebraError::Parse {
            position: text.len(),
            message: "expected `lhs = rhs`".into(),
        })?;
        let scope = generator_symbols(chart);
        Ok(Self {
            label: label.to_string(),
            lhs: evaluate(&Expr::parse(l)?, &scope)?,
            rhs: evaluate(&Expr::parse(r)?, &scope)?,
        })
    }

    /// `rhs − lhs`, still in the generator names.
    pub fn difference(&self) -> LaurentPoly {
        &self.rhs - &self.lhs
    }
}

/// Generator names as free symbols, with nothing invertible.
fn generator_symbols(chart: &ChartPresentation) -> Scope {
    Scope::new().restricted_to(chart.generator_names().map(String::from))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DerivationFixture {
    pub m: u32,
    pub n: u32,
    pub derivation: Derivation,
    /// Image of each generator as an expression in the generators.
    pub witnesses: BTreeMap<String, String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fixture {
    pub name: String,
    /// Empty for the purely combinatorial fixtures.
    pub chart: ChartPresentation,
    pub relations: Vec<Relation>,
    pub weights: Option<WeightAssignment>,
    /// Exponent vector of each generator, for monomial algebras.
    pub lattice: Vec<(String, LatticePoint)>,
    pub graph: Option<CurveGraph>,
    pub fibers: Vec<(String, Divisor)>,
    pub fibration: Option<FibrationPresentation>,
    pub classes: Vec<(String, PicardElement)>,
    pub derivation: Option<DerivationFixture>,
}

impl Fixture {
    fn bare(name: &str, chart: ChartPresentation) -> Self {
        Self {
            name: name.to_string(),
            chart,
            relations: Vec::new(),
            weights: None,
            lattice: Vec::new(),
            graph: None,
            fibers: Vec::new(),
            fibration: None,
            classes: Vec::new(),
            derivation: None,
        }
    }

    fn with_relations(mut self, rels: &[(&str, &str)]) -> Result<Self, FixtureError> {
        for (label, text) in rels {
            self.relations.push(Relation::parse(label, text, &self.chart)?);
        }
        Ok(self)
    }

    pub fn relation(&self, label: &str) -> Option<&Relation> {
        self.relations.iter().find(|r| r.label == label)
    }

    pub fn fiber(&self, name: &str) -> Option<&Divisor> {
        self.fibers.iter().find(|(n, _)| n == name).map(|(_, d)| d)
    }

    pub fn class(&self, name: &str) -> Option<&PicardElement> {
        self.classes.iter().find(|(n, _)| n == name).map(|(_, c)| c)
    }

    pub fn semigroup(&self) -> Result<SemigroupPresentation, FixtureError> {
        if self.lattice.is_empty() {
            return Err(FixtureError::Missing(self.name.clone(), "lattice"));
        }
        Ok(SemigroupPresentation::new(self.lattice.iter().map(|(_, p)| *p).collect())?)
    }

    /// Replaces relation `label` by `text`; for negative controls.
    pub fn perturbed(&self, label: &str, text: &str) -> Result<Self, FixtureError> {
        let mut fx = self.clone();
        let rel = Relation::parse(label, text, &fx.chart)?;
        match fx.relations.iter_mut().find(|r| r.label == label) {
            Some(slot) => *slot = rel,
            None => fx.relations.push(rel),
        }
        Ok(fx)
    }
}

pub fn load_fixture(name: &str) -> Result<Fixture, FixtureError> {
    match name {
        "surface-S" => surface_s(),
        "graded-R" => graded_r(),
        "divisor-graph-S" => divisor_graph_s(),
        "bundle-skew" => bundle_skew(DEFAULT_SKEW.0, DEFAULT_SKEW.1),
        "bundle-noskew" => bundle_noskew(),
        "fibration-b" => fibration_b(),
        other => Err(FixtureError::UnknownFixture(other.to_string())),
    }
}

const SURFACE_GENERATORS: [(&str, &str); 7] = [
    ("u", "u"),
    ("v", "b*(u*b-1)"),
    ("z", "u*b"),
    ("w", "b^3*(u*b-1)^2"),
    ("x", "b^2*(b^3*(u*b-1)^2-1)"),
    ("t", "u^2*b^-1"),
    ("y", "u^2*b^-3-b^-2"),
];

const SURFACE_RELATIONS: [(&str, &str); 13] = [
    ("1", "u*v = z*(z-1)"),
    ("2", "v^2*z = u*w"),
    ("3", "z^2*(w-1) = x*u^2"),
    ("4", "u^2*(z-1) = t*v"),
    ("5", "(z-1)^2*(t-1) = y*v^2"),
    ("6", "u^2*v^2 = w*t"),
    ("7", "y*z^2 = u^2*(t-1)"),
    ("8", "x*(z-1)^2 = v^2*(w-1)"),
    ("9", "v^4*x = w^2*(w-1)"),
    ("10", "u^4*y = t^2*(t-1)"),
    ("11", "v^3 = (z-1)*w"),
    ("12", "u^3 = t*z"),
    ("13", "x*y = (w-1)*(t-1)"),
];

pub fn surface_s() -> Result<Fixture, FixtureError> {
    let chart = ChartPresentation::from_exprs(&["u", "b"], &["b"], &SURFACE_GENERATORS)?;
    let mut fx = Fixture::bare("surface-S", chart).with_relations(&SURFACE_RELATIONS)?;
    fx.weights = Some(
        WeightAssignment::new()
            .with("u", Weight::ints(4, 0))
            .with("b", Weight::ints(-1, 1)),
    );
    Ok(fx)
}

pub fn graded_r() -> Result<Fixture, FixtureError> {
    let points = [
        ("u", (1, 0)),
        ("z", (0, 1)),
        ("v", (-1, 2)),
        ("w", (-3, 5)),
        ("x", (-5, 7)),
        ("t", (3, -1)),
        ("y", (5, -3)),
    ];
    let gens: Vec<(String, LaurentPoly)> = points
        .iter()
        .map(|&(n, (r, s))| {
            let m = crate::algebra::Monomial::from_exponents([("u", r), ("z", s)]);
            (n.to_string(), LaurentPoly::from(m))
        })
        .collect();
    let chart = ChartPresentation::new(
        vec!["u".into(), "z".into()],
        ["u".to_string(), "z".to_string()].into(),
        gens,
    )?;
    let mut fx = Fixture::bare("graded-R", chart).with_relations(&[
        ("f1", "u*v = z^2"),
        ("f1'", "v^2*z = u*w"),
        ("f2", "z^2*w = x*u^2"),
        ("f2'", "u^2*z = t*v"),
        ("f3", "z^2*t = y*v^2"),
        ("f3'", "u^2*v^2 = w*t"),
        ("f4", "y*z^2 = u^2*t"),
        ("f4'", "x*z^2 = v^2*w"),
        ("f5", "v^4*x = w^3"),
        ("f5'", "u^4*y = t^3"),
        ("f6", "v^3 = z*w"),
        ("f6'", "u^3 = t*z"),
        ("f7", "x*y = w*t"),
    ])?;
    fx.lattice = points
        .iter()
        .map(|&(n, (r, s))| (n.to_string(), LatticePoint::new(r, s)))
        .collect();
    Ok(fx)
}

/// The boundary graph as drawn, with `A0²`, `B0²` and `B∞²` unknown.
pub fn raw_divisor_graph() -> CurveGraph {
    let mut vertices: Vec<(String, Option<i64>)> = vec![("A0".into(), None)];
    vertices.extend((1..=12).map(|i| (format!("A{i}"), Some(-2))));
    vertices.push(("B0".into(), None));
    vertices.push(("B∞".into(), None));
    let vertices: Vec<(&str, Option<i64>)> = vertices.iter().map(|(n, s)| (n.as_str(), *s)).collect();
    CurveGraph::from_parts(
        &vertices,
        &[
            ("A9", "A8"),
            ("A8", "A7"),
            ("A7", "A0"),
            ("A0", "A1"),
            ("A1", "A2"),
            ("A2", "A3"),
            ("A2", "A4"),
            ("A4", "A5"),
            ("A5", "A6"),
            ("A8", "A10"),
            ("A10", "A11"),
            ("A11", "A12"),
            ("A6", "B0"),
            ("A12", "B∞"),
        ],
    )
    .expect("boundary graph is well formed")
}

pub fn fiber_f0() -> Divisor {
    Divisor::from_ints(&[("A1", 1), ("A3", 1), ("A2", 2), ("A4", 2), ("A5", 2), ("A6", 2), ("B0", 2)])
}

pub fn fiber_finf() -> Divisor {
    Divisor::from_ints(&[("A7", 1), ("A9", 1), ("A8", 2), ("A10", 2), ("A11", 2), ("A12", 2), ("B∞", 2)])
}

/// Boundary graph with `B0²` and `B∞²` forced by the fibers.
pub fn divisor_graph_s() -> Result<Fixture, FixtureError> {
    let mut graph = raw_divisor_graph();
    for (v, f) in [("B0", fiber_f0()), ("B∞", fiber_finf())] {
        let forced = forced_self_intersection(&graph, &f, v)?;
        graph = graph.with_self_intersection(v, Some(forced.to_integer().try_into().expect("small")))?;
    }
    let mut fx = Fixture::bare("divisor-graph-S", ChartPresentation::coordinate_ring(&[], &[]));
    fx.graph = Some(graph);
    fx.fibers = vec![("F0".into(), fiber_f0()), ("F∞".into(), fiber_finf())];
    Ok(fx)
}

fn bundle_chart(extra_inverted: &[&str], s: &str) -> Result<ChartPresentation, FixtureError> {
    let mut inverted = vec!["b"];
    inverted.extend_from_slice(extra_inverted);
    let mut gens: Vec<(&str, &str)> = SURFACE_GENERATORS.to_vec();
    gens.push(("s", s));
    gens.push(("r", "r"));
    Ok(ChartPresentation::from_exprs(&["u", "b", "r"], &inverted, &gens)?)
}

fn skew_witnesses(m: u32, n: u32) -> BTreeMap<String, String> {
    let (m, n) = (i64::from(m), i64::from(n));
    let w = |coeff: &str, sm: i64, rn: i64| format!("{coeff}s^{sm}*r^{rn}");
    BTreeMap::from([
        ("u".to_string(), w("", m, n - m)),
        ("z".to_string(), w("", m + 1, n - m - 1)),
        ("v".to_string(), w("", m + 2, n - m - 2)),
        ("w".to_string(), w("2*v*", m + 3, n - m - 3)),
        ("x".to_string(), w("2*v*", m + 5, n - m - 5)),
        ("t".to_string(), w("2*u*", m - 1, n - m + 1)),
        ("y".to_string(), w("2*u*", m - 3, n - m + 3)),
        ("s".to_string(), "0".to_string()),
        ("r".to_string(), "0".to_string()),
    ])
}

/// Line bundle with section coordinate `r` and `s = r·b`, carrying the
/// derivation `u ↦ b^m r^n`. It is well defined when `m ≥ 3`, `n ≥ m + 5`.
pub fn bundle_skew(m: u32, n: u32) -> Result<Fixture, FixtureError> {
    let chart = bundle_chart(&[], "r*b")?;
    let mut rels: Vec<(&str, &str)> = SURFACE_RELATIONS.to_vec();
    rels.push(("s1", "s*u = r*z"));
    rels.push(("s2", "s*(z-1) = r*v"));
    let mut fx = Fixture::bare("bundle-skew", chart).with_relations(&rels)?;
    let image = format!("b^{m}*r^{n}");
    let derivation = Derivation::from_exprs(fx.chart.clone(), &[("u", &image), ("b", "0"), ("r", "0")])?;
    fx.derivation = Some(DerivationFixture {
        m,
        n,
        derivation,
        witnesses: skew_witnesses(m, n),
    });
    fx.fibration = Some(FibrationPresentation::new(vec![vec![2], vec![2]])?);
    fx.classes = vec![("D".into(), PicardElement { m: 0, coeffs: vec![vec![0], vec![-2]] })];
    Ok(fx)
}

/// Line bundle with `s = r·v/u`, associated to `B0 + B∞`.
pub fn bundle_noskew() -> Result<Fixture, FixtureError> {
    let chart = bundle_chart(&["u"], "r*b*(u*b-1)*u^-1")?;
    let mut rels: Vec<(&str, &str)> = SURFACE_RELATIONS.to_vec();
    rels.push(("n1", "s*u = r*v"));
    rels.push(("n2", "s*t = r*u*(z-1)"));
    rels.push(("n3", "s*v*z = r*w"));
    let mut fx = Fixture::bare("bundle-noskew", chart).with_relations(&rels)?;
    fx.fibration = Some(FibrationPresentation::new(vec![vec![2], vec![2]])?);
    fx.classes = vec![("D".into(), PicardElement { m: 0, coeffs: vec![vec![1], vec![1]] })];
    Ok(fx)
}

/// `b: S → P¹` has two double fibers, `2B0` and `2B∞`.
pub fn fibration_b() -> Result<Fixture, FixtureError> {
    let mut fx = Fixture::bare("fibration-b", ChartPresentation::coordinate_ring(&[], &[]));
    fx.fibration = Some(FibrationPresentation::new(vec![vec![2], vec![2]])?);
    fx.classes = vec![
        ("skew".into(), PicardElement { m: 0, coeffs: vec![vec![0], vec![-2]] }),
        ("noskew".into(), PicardElement { m: 0, coeffs: vec![vec![1], vec![1]] }),
    ];
    Ok(fx)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RelationFailure {
    pub label: String,
    /// `rhs − lhs` in the chart variables.
    pub residual: LaurentPoly,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RelationReport {
    pub checked: usize,
    pub failures: Vec<RelationFailure>,
}

impl RelationReport {
    pub fn is_pass(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn failing_labels(&self) -> Vec<&str> {
        self.failures.iter().map(|f| f.label.as_str()).collect()
    }
}

fn residuals<'a>(
    chart: &ChartPresentation,
    diffs: impl Iterator<Item = (&'a str, LaurentPoly)>,
) -> Result<RelationReport, FixtureError> {
    let mut checked = 0;
    let mut failures = Vec::new();
    for (label, diff) in diffs {
        checked += 1;
        let residual = chart.pull_back(&diff)?;
        if !residual.is_zero() {
            failures.push(RelationFailure {
                label: label.to_string(),
                residual,
            });
        }
    }
    Ok(RelationReport { checked, failures })
}

/// Substitutes the chart expressions into every relation.
pub fn check_surface_relations(fx: &Fixture) -> Result<RelationReport, FixtureError> {
    residuals(
        &fx.chart,
        fx.relations.iter().map(|r| (r.label.as_str(), r.difference())),
    )
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ChartMismatch {
    pub generator: String,
    /// Chart map applied to the generator, minus the generator map.
    pub residual: LaurentPoly,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AutomorphismReport {
    pub relations: RelationReport,
    pub chart_mismatches: Vec<ChartMismatch>,
}

impl AutomorphismReport {
    pub fn is_pass(&self) -> bool {
        self.relations.is_pass() && self.chart_mismatches.is_empty()
    }
}

/// Checks that a generator map preserves every relation.
///
/// `generator_map` sends generator names to expressions in the generators;
/// absent names are fixed. When `chart_map` (ambient variable → expression
/// in the ambient variables) is given, it must realise the generator map:
/// for each generator `g`, substituting the chart map into `g` gives the
/// image of `g` pulled back to the chart.
pub fn check_automorphism(
    fx: &Fixture,
    generator_map: &BTreeMap<String, String>,
    chart_map: Option<&BTreeMap<String, String>>,
) -> Result<AutomorphismReport, FixtureError> {
    let chart = &fx.chart;
    let scope = generator_symbols(chart);
    let mut images = BTreeMap::new();
    for (g, text) in generator_map {
        if chart.generator(g).is_none() {
            return Err(AlgebraError::UnknownVariable(g.clone()).into());
        }
        images.insert(g.clone(), evaluate(&Expr::parse(text)?, &scope)?);
    }
    let mapped: Vec<(&str, LaurentPoly)> = fx
        .relations
        .iter()
        .map(|r| Ok((r.label.as_str(), r.difference().substitute(&images)?)))
        .collect::<Result<_, AlgebraError>>()?;
    let relations = residuals(chart, mapped.into_iter())?;

    let mut chart_mismatches = Vec::new();
    if let Some(cm) = chart_map {
        let mut sub = BTreeMap::new();
        for (v, text) in cm {
            if !chart.ambient_vars().contains(v) {
                return Err(AlgebraError::UnknownVariable(v.clone()).into());
            }
            let img = chart.eval_ambient(text)?;
            if chart.is_inverted(v) && img.as_single_term().is_none() {
                return Err(FixtureError::NotAUnit(v.clone()));
            }
            sub.insert(v.clone(), img);
        }
        for (g, expr) in chart.generators() {
            let via_chart = expr.substitute(&sub)?;
            let via_map = match images.get(g) {
                Some(p) => chart.pull_back(p)?,
                None => expr.clone(),
            };
            let residual = &via_chart - &via_map;
            if !residual.is_zero() {
                chart_mismatches.push(ChartMismatch {
                    generator: g.clone(),
                    residual,
                });
            }
        }
    }
    Ok(AutomorphismReport {
        relations,
        chart_mismatches,
    })
}

/// The involution of `S` exchanging the two double fibers.
pub fn involution() -> (BTreeMap<String, String>, BTreeMap<String, String>) {
    let gens = [
        ("u", "-v"),
        ("v", "-u"),
        ("z", "1-z"),
        ("t", "w"),
        ("w", "t"),
        ("x", "y"),
        ("y", "x"),
    ];
    let chart = [("b", "b^-1"), ("u", "-b*(u*b-1)")];
    (to_map(&gens), to_map(&chart))
}

pub(crate) fn to_map(pairs: &[(&str, &str)]) -> BTreeMap<String, String> {
    pairs.iter().map(|(a, b)| (a.to_string(), b.to_string())).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LatticeMismatch {
    pub label: String,
    pub lhs: LatticePoint,
    pub rhs: LatticePoint,
}

/// Checks monomial relations as identities between exponent vectors.
pub fn check_lattice_relations(fx: &Fixture) -> Result<Vec<LatticeMismatch>, FixtureError> {
    if fx.lattice.is_empty() {
        return Err(FixtureError::Missing(fx.name.clone(), "lattice"));
    }
    let point_of = |label: &str, side: &LaurentPoly| -> Result<LatticePoint, FixtureError> {
        let (_, m) = side
            .as_single_term()
            .filter(|(c, _)| c.is_one())
            .ok_or_else(|| FixtureError::NotMonomial(label.to_string()))?;
        let mut acc = LatticePoint::ORIGIN;
        for (g, e) in m.iter() {
            let p = fx
                .lattice
                .iter()
                .find(|(n, _)| n == g)
                .map(|(_, p)| *p)
                .ok_or_else(|| FixtureError::NotMonomial(label.to_string()))?;
            acc = acc + p.scale(e);
        }
        Ok(acc)
    };
    let mut out = Vec::new();
    for r in &fx.relations {
        let (lhs, rhs) = (point_of(&r.label, &r.lhs)?, point_of(&r.label, &r.rhs)?);
        if lhs != rhs {
            out.push(LatticeMismatch {
                label: r.label.clone(),
                lhs,
                rhs,
            });
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_fixture_loads() {
        for name in FIXTURE_NAMES {
            load_fixture(name).unwrap();
        }
        assert_eq!(
            load_fixture("surface-T").unwrap_err(),
            FixtureError::UnknownFixture("surface-T".into())
        );
    }

    #[test]
    fn relations_vanish_on_every_chart() {
        for name in ["surface-S", "graded-R", "bundle-skew", "bundle-noskew"] {
            let fx = load_fixture(name).unwrap();
            let report = check_surface_relations(&fx).unwrap();
            assert!(report.is_pass(), "{name}: {:?}", report.failures);
        }
    }

    #[test]
    fn empty_relation_list_passes() {
        let fx = fibration_b().unwrap();
        let report = check_surface_relations(&fx).unwrap();
        assert_eq!(report.checked, 0);
        assert!(report.is_pass());
    }

    #[test]
    fn identity_map_is_an_automorphism() {
        let fx = surface_s().unwrap();
        assert!(check_automorphism(&fx, &BTreeMap::new(), None).unwrap().is_pass());
        let id = to_map(&[("u", "u"), ("b", "b")]);
        assert!(check_automorphism(&fx, &BTreeMap::new(), Some(&id)).unwrap().is_pass());
    }

    #[test]
    fn non_unit_image_of_inverted_variable() {
        let fx = surface_s().unwrap();
        let bad = to_map(&[("b", "b+1")]);
        assert_eq!(
            check_automorphism(&fx, &BTreeMap::new(), Some(&bad)).unwrap_err(),
            FixtureError::NotAUnit("b".into())
        );
    }

    #[test]
    fn lattice_relations_hold() {
        let fx = graded_r().unwrap();
        assert!(check_lattice_relations(&fx).unwrap().is_empty());
        let broken = fx.perturbed("f1", "u*v = z").unwrap();
        let bad = check_lattice_relations(&broken).unwrap();
        assert_eq!(bad[0].label, "f1");
        assert!(matches!(
            check_lattice_relations(&surface_s().unwrap()),
            Err(FixtureError::Missing(..))
        ));
    }

    #[test]
    fn boundary_fibers_force_minus_one() {
        let fx = divisor_graph_s().unwrap();
        let g = fx.graph.unwrap();
        assert_eq!(g.self_intersection("B0").unwrap(), Some(-1));
        assert_eq!(g.self_intersection("B∞").unwrap(), Some(-1));
        assert_eq!(g.self_intersection("A0").unwrap(), None);
    }
}
