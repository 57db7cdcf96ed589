//! JSON descriptors accepted by the command-line tool.

use crate::algebra::{ChartPresentation, LaurentPoly};
use crate::derivation::Derivation;
use crate::fixtures::{bundle_skew, load_fixture, FixtureError};
use serde::Deserialize;
use std::collections::BTreeMap;

#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum ChartSpec {
    Named(String),
    Inline(InlineChart),
}

#[derive(Debug, Clone, Deserialize)]
pub struct InlineChart {
    pub ambient: Vec<String>,
    #[serde(default)]
    pub inverted: Vec<String>,
    /// `[name, expression]` pairs; defaults to the ambient variables.
    #[serde(default)]
    pub generators: Vec<(String, String)>,
}

#[derive(Debug, Clone, Copy, Deserialize)]
pub struct SkewParams {
    pub m: u32,
    pub n: u32,
}

/// A derivation to check. With a named chart, omitted images and
/// witnesses are taken from the fixture.
#[derive(Debug, Clone, Deserialize)]
pub struct DerivationDescriptor {
    pub chart: ChartSpec,
    pub params: Option<SkewParams>,
    #[serde(default)]
    pub images: BTreeMap<String, String>,
    pub witnesses: Option<BTreeMap<String, String>>,
    /// Expressions in the generators to certify; all generators if omitted.
    pub elements: Option<Vec<String>>,
}

#[derive(Debug, Clone)]
pub struct ResolvedDerivation {
    pub derivation: Derivation,
    pub witnesses: Option<BTreeMap<String, String>>,
    pub elements: Vec<(String, LaurentPoly)>,
}

impl DerivationDescriptor {
    pub fn resolve(&self) -> Result<ResolvedDerivation, FixtureError> {
        let (chart, fixture) = match &self.chart {
            ChartSpec::Named(name) => {
                let fx = match (name.as_str(), self.params) {
                    ("bundle-skew", Some(p)) => bundle_skew(p.m, p.n)?,
                    _ => load_fixture(name)?,
                };
                (fx.chart.clone(), fx.derivation)
            }
            ChartSpec::Inline(c) => {
                let ambient: Vec<&str> = c.ambient.iter().map(String::as_str).collect();
                let inverted: Vec<&str> = c.inverted.iter().map(String::as_str).collect();
                let chart = if c.generators.is_empty() {
                    ChartPresentation::coordinate_ring(&ambient, &inverted)
                } else {
                    let gens: Vec<(&str, &str)> =
                        c.generators.iter().map(|(a, b)| (a.as_str(), b.as_str())).collect();
                    ChartPresentation::from_exprs(&ambient, &inverted, &gens)?
                };
                (chart, None)
            }
        };
        let derivation = if self.images.is_empty() {
            match &fixture {
                Some(f) => f.derivation.clone(),
                None => Derivation::zero(chart.clone()),
            }
        } else {
            let pairs: Vec<(&str, &str)> = self.images.iter().map(|(a, b)| (a.as_str(), b.as_str())).collect();
            Derivation::from_exprs(chart.clone(), &pairs)?
        };
        let witnesses = self.witnesses.clone().or_else(|| fixture.map(|f| f.witnesses));
        let elements = match &self.elements {
            Some(list) => list
                .iter()
                .map(|e| Ok((e.clone(), chart.eval_generators(e)?)))
                .collect::<Result<Vec<_>, FixtureError>>()?,
            None => chart.generators().to_vec(),
        };
        Ok(ResolvedDerivation {
            derivation,
            witnesses,
            elements,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn named_chart_takes_the_fixture_derivation() {
        let d: DerivationDescriptor =
            serde_json::from_str(r#"{"chart":"bundle-skew","params":{"m":4,"n":9}}"#).unwrap();
        let r = d.resolve().unwrap();
        assert_eq!(r.derivation, bundle_skew(4, 9).unwrap().derivation.unwrap().derivation);
        assert_eq!(r.elements.len(), 9);
        assert!(r.witnesses.unwrap().contains_key("y"));
    }

    #[test]
    fn inline_chart() {
        let text = r#"{"chart":{"ambient":["x","y"]},"images":{"x":"0","y":"x"},"elements":["x*y"]}"#;
        let r: DerivationDescriptor = serde_json::from_str(text).unwrap();
        let r = r.resolve().unwrap();
        assert_eq!(r.elements[0].0, "x*y");
        assert!(r.witnesses.is_none());
        assert_eq!(r.derivation.image("y").unwrap(), &LaurentPoly::var("x"));
    }
}
