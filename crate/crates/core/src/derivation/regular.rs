use super::{Derivation, DerivationError};
use crate::algebra::{evaluate, AlgebraError, Expr, LaurentPoly};
use serde::Serialize;
use std::collections::BTreeMap;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Discrepancy {
    /// The witness evaluates, but to something else.
    Residual { residual: LaurentPoly },
    /// The witness is not a polynomial in the generators.
    NotRegular { reason: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RegularityFailure {
    pub generator: String,
    pub discrepancy: Discrepancy,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RegularityReport {
    pub failures: Vec<RegularityFailure>,
}

impl RegularityReport {
    pub fn is_pass(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn failing_generators(&self) -> Vec<&str> {
        self.failures.iter().map(|f| f.generator.as_str()).collect()
    }
}

/// Checks that the derivation maps the algebra into itself.
///
/// `witnesses[g]` must be a polynomial expression in the generator names
/// whose value equals `d(g)`; the check is exact equality after both sides
/// are pulled back to the chart. Membership is never searched for.
pub fn verify_regular(
    d: &Derivation,
    witnesses: &BTreeMap<String, String>,
) -> Result<RegularityReport, DerivationError> {
    let chart = d.chart();
    if let Some(extra) = witnesses.keys().find(|k| chart.generator(k).is_none()) {
        return Err(DerivationError::UnknownGenerator(extra.clone()));
    }
    let scope = chart.generator_scope();
    let mut failures = Vec::new();
    for (name, expr) in chart.generators() {
        let text = witnesses
            .get(name)
            .ok_or_else(|| DerivationError::MissingWitness(name.clone()))?;
        let parsed = Expr::parse(text)?;
        let image = d.apply(expr)?;
        let witnessed = match evaluate(&parsed, &scope) {
            Ok(w) => w,
            Err(AlgebraError::UnknownVariable(v)) => return Err(DerivationError::UnknownGenerator(v)),
            Err(e @ (AlgebraError::NonInvertible { .. } | AlgebraError::NotAUnit { .. })) => {
                failures.push(RegularityFailure {
                    generator: name.clone(),
                    discrepancy: Discrepancy::NotRegular { reason: e.to_string() },
                });
                continue;
            }
            Err(e) => return Err(e.into()),
        };
        let residual = &witnessed - &image;
        if !residual.is_zero() {
            failures.push(RegularityFailure {
                generator: name.clone(),
                discrepancy: Discrepancy::Residual { residual },
            });
        }
    }
    Ok(RegularityReport { failures })
}
