//! Derivations on chart-presented algebras.
//!
//! A derivation is determined by the images of the ambient variables and acts
//! on everything else through the Leibniz rule. For an inverted variable `v`
//! the image of `v⁻¹` is `-v⁻²·∂v`; the term-wise formula below produces it
//! without storing anything extra.

mod nilpotency;
mod regular;
mod transforms;

pub use nilpotency::{nilpotency_index, Nilpotency, NilpotencyCertificate};
pub use regular::{verify_regular, Discrepancy, RegularityFailure, RegularityReport};
pub use transforms::{bundle_lift, homogeneous_components, localize_lift, HomogeneousComponent};

use crate::algebra::{AlgebraError, ChartPresentation, LaurentPoly, Monomial};
use crate::rational::int;
use crate::weights::WeightError;
use std::collections::BTreeMap;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DerivationError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Weight(#[from] WeightError),
    #[error("no image assigned to `{0}`")]
    MissingImage(String),
    #[error("`{0}` is not an ambient variable of the chart")]
    NotAmbient(String),
    #[error("no witness given for generator `{0}`")]
    MissingWitness(String),
    #[error("`{0}` is not a generator of the chart")]
    UnknownGenerator(String),
    #[error("the derivation does not annihilate `{variable}` (image {image})")]
    DoesNotAnnihilate { variable: String, image: String },
    #[error("N = {n} does not exceed the pole order {pole_order} of the image of omega #{index} ({omega})")]
    ExponentTooSmall {
        index: usize,
        omega: String,
        pole_order: u32,
        n: u32,
    },
    #[error("`{0}` is already a variable of the chart")]
    NameClash(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Derivation {
    chart: ChartPresentation,
    images: BTreeMap<String, LaurentPoly>,
}

impl Derivation {
    /// Images may be partial; applying to a variable without one is an error.
    pub fn new(chart: ChartPresentation, images: BTreeMap<String, LaurentPoly>) -> Result<Self, DerivationError> {
        for (v, img) in &images {
            if !chart.ambient_vars().contains(v) {
                return Err(DerivationError::NotAmbient(v.clone()));
            }
            if let Some(bad) = img.variables().into_iter().find(|x| !chart.ambient_vars().contains(x)) {
                return Err(DerivationError::NotAmbient(bad));
            }
        }
        Ok(Self { chart, images })
    }

    /// Images written as expressions in the ambient variables.
    pub fn from_exprs(chart: ChartPresentation, images: &[(&str, &str)]) -> Result<Self, DerivationError> {
        let mut map = BTreeMap::new();
        for (v, e) in images {
            map.insert(v.to_string(), chart.eval_ambient(e)?);
        }
        Self::new(chart, map)
    }

    pub fn zero(chart: ChartPresentation) -> Self {
        let images = chart
            .ambient_vars()
            .iter()
            .map(|v| (v.clone(), LaurentPoly::zero()))
            .collect();
        Self { chart, images }
    }

    pub fn chart(&self) -> &ChartPresentation {
        &self.chart
    }

    pub fn images(&self) -> &BTreeMap<String, LaurentPoly> {
        &self.images
    }

    pub fn image(&self, var: &str) -> Option<&LaurentPoly> {
        self.images.get(var)
    }

    pub fn is_zero(&self) -> bool {
        self.images.values().all(LaurentPoly::is_zero)
    }

    /// Leibniz-rule image of `p`.
    pub fn apply(&self, p: &LaurentPoly) -> Result<LaurentPoly, DerivationError> {
        let mut out = LaurentPoly::zero();
        for (m, c) in p.terms() {
            for (v, e) in m.iter() {
                let dv = self
                    .images
                    .get(v)
                    .ok_or_else(|| DerivationError::MissingImage(v.to_string()))?;
                if dv.is_zero() {
                    continue;
                }
                let rest: Monomial = m.drop_one(v);
                out = out + dv.mul_monomial(&rest).scale(&(c * int(e)));
            }
        }
        Ok(out)
    }

    /// `factor · self`, still a derivation.
    pub fn scaled(&self, factor: &LaurentPoly) -> Derivation {
        Derivation {
            chart: self.chart.clone(),
            images: self.images.iter().map(|(v, p)| (v.clone(), factor * p)).collect(),
        }
    }

    /// Sum of two derivations on the same chart.
    pub fn sum(&self, other: &Derivation) -> Derivation {
        let mut images = self.images.clone();
        for (v, p) in &other.images {
            let entry = images.entry(v.clone()).or_default();
            *entry = &*entry + p;
        }
        Derivation {
            chart: self.chart.clone(),
            images,
        }
    }

    pub fn format_images(&self) -> BTreeMap<String, String> {
        self.images
            .iter()
            .map(|(v, p)| (v.clone(), p.format_with(self.chart.ambient_vars())))
            .collect()
    }
}
