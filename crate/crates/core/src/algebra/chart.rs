use super::expr::{evaluate, Expr, Scope};
use super::{AlgebraError, LaurentPoly};
use std::collections::{BTreeMap, BTreeSet};

/// An algebra presented inside a Laurent ring: ambient variables, the subset
/// allowed negative exponents, and named generator expressions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChartPresentation {
    ambient: Vec<String>,
    inverted: BTreeSet<String>,
    generators: Vec<(String, LaurentPoly)>,
}

impl ChartPresentation {
    pub fn new(
        ambient: Vec<String>,
        inverted: BTreeSet<String>,
        generators: Vec<(String, LaurentPoly)>,
    ) -> Result<Self, AlgebraError> {
        let mut seen = BTreeSet::new();
        for v in &ambient {
            if !seen.insert(v.clone()) {
                return Err(AlgebraError::InvalidChart(format!("duplicate ambient variable `{v}`")));
            }
        }
        if let Some(v) = inverted.iter().find(|v| !seen.contains(*v)) {
            return Err(AlgebraError::InvalidChart(format!(
                "inverted variable `{v}` is not an ambient variable"
            )));
        }
        let chart = Self {
            ambient,
            inverted,
            generators: Vec::new(),
        };
        let mut names = BTreeSet::new();
        for (name, expr) in &generators {
            if !names.insert(name.clone()) {
                return Err(AlgebraError::InvalidChart(format!("duplicate generator `{name}`")));
            }
            chart.check_regular(expr)?;
        }
        Ok(Self { generators, ..chart })
    }

    /// Builds a chart from generator expressions written in the ambient variables.
    pub fn from_exprs(ambient: &[&str], inverted: &[&str], generators: &[(&str, &str)]) -> Result<Self, AlgebraError> {
        let ambient: Vec<String> = ambient.iter().map(|s| s.to_string()).collect();
        let inverted: BTreeSet<String> = inverted.iter().map(|s| s.to_string()).collect();
        let scope = Scope::new()
            .with_invertible(inverted.iter().cloned())
            .restricted_to(ambient.iter().cloned());
        let gens = generators
            .iter()
            .map(|(n, e)| Ok((n.to_string(), evaluate(&Expr::parse(e)?, &scope)?)))
            .collect::<Result<Vec<_>, AlgebraError>>()?;
        Self::new(ambient, inverted, gens)
    }

    /// The (Laurent) polynomial ring itself: every ambient variable is a generator.
    pub fn coordinate_ring(ambient: &[&str], inverted: &[&str]) -> Self {
        let gens: Vec<(&str, &str)> = ambient.iter().map(|v| (*v, *v)).collect();
        Self::from_exprs(ambient, inverted, &gens).expect("coordinate chart is well formed")
    }

    pub fn ambient_vars(&self) -> &[String] {
        &self.ambient
    }

    pub fn inverted_vars(&self) -> &BTreeSet<String> {
        &self.inverted
    }

    pub fn is_inverted(&self, v: &str) -> bool {
        self.inverted.contains(v)
    }

    pub fn generators(&self) -> &[(String, LaurentPoly)] {
        &self.generators
    }

    pub fn generator(&self, name: &str) -> Option<&LaurentPoly> {
        self.generators.iter().find(|(n, _)| n == name).map(|(_, p)| p)
    }

    pub fn generator_names(&self) -> impl Iterator<Item = &str> {
        self.generators.iter().map(|(n, _)| n.as_str())
    }

    /// Same chart with one more ambient variable.
    pub fn with_variable(&self, name: &str, inverted: bool) -> Result<Self, AlgebraError> {
        let mut ambient = self.ambient.clone();
        ambient.push(name.to_string());
        let mut inv = self.inverted.clone();
        if inverted {
            inv.insert(name.to_string());
        }
        Self::new(ambient, inv, self.generators.clone())
    }

    /// Same chart with an extra generator appended.
    pub fn with_generator(&self, name: &str, expr: LaurentPoly) -> Result<Self, AlgebraError> {
        let mut gens = self.generators.clone();
        gens.push((name.to_string(), expr));
        Self::new(self.ambient.clone(), self.inverted.clone(), gens)
    }

    /// Ok when `p` lives in the chart ring: ambient variables only, negative
    /// exponents only on inverted ones.
    pub fn check_regular(&self, p: &LaurentPoly) -> Result<(), AlgebraError> {
        for (m, _) in p.terms() {
            for (v, e) in m.iter() {
                if !self.ambient.iter().any(|a| a == v) {
                    return Err(AlgebraError::UnknownVariable(v.to_string()));
                }
                if e < 0 && !self.inverted.contains(v) {
                    return Err(AlgebraError::NotRegular {
                        variable: v.to_string(),
                        exponent: e,
                    });
                }
            }
        }
        Ok(())
    }

    /// Scope for expressions in the ambient variables.
    pub fn ambient_scope(&self) -> Scope {
        Scope::new()
            .with_invertible(self.inverted.iter().cloned())
            .restricted_to(self.ambient.iter().cloned())
    }

    /// Scope for expressions in the generator names. Generators are not
    /// invertible: a negative power of one is an error.
    pub fn generator_scope(&self) -> Scope {
        Scope {
            invertible: BTreeSet::new(),
            bindings: self.generator_bindings(),
            known: Some(self.generators.iter().map(|(n, _)| n.clone()).collect()),
        }
    }

    pub fn generator_bindings(&self) -> BTreeMap<String, LaurentPoly> {
        self.generators.iter().cloned().collect()
    }

    pub fn eval_ambient(&self, text: &str) -> Result<LaurentPoly, AlgebraError> {
        let p = evaluate(&Expr::parse(text)?, &self.ambient_scope())?;
        self.check_regular(&p)?;
        Ok(p)
    }

    pub fn eval_generators(&self, text: &str) -> Result<LaurentPoly, AlgebraError> {
        evaluate(&Expr::parse(text)?, &self.generator_scope())
    }

    /// Rewrites a polynomial in generator names into the ambient variables.
    pub fn pull_back(&self, p: &LaurentPoly) -> Result<LaurentPoly, AlgebraError> {
        p.substitute(&self.generator_bindings())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generator_with_forbidden_pole_is_rejected() {
        let err = ChartPresentation::from_exprs(&["u", "b"], &["b"], &[("t", "u^-1")]).unwrap_err();
        assert_eq!(err, AlgebraError::NonInvertible { variable: "u".into() });
        let err = ChartPresentation::from_exprs(&["u"], &["b"], &[]).unwrap_err();
        assert!(matches!(err, AlgebraError::InvalidChart(_)));
    }

    #[test]
    fn generator_scope_forbids_inverting_generators() {
        let chart = ChartPresentation::from_exprs(&["u", "b"], &["b"], &[("s", "u*b"), ("u", "u")]).unwrap();
        assert_eq!(
            chart.eval_generators("s^-1").unwrap_err(),
            AlgebraError::NonInvertible { variable: "s".into() }
        );
        assert_eq!(chart.eval_generators("s - u").unwrap(), chart.eval_ambient("u*b - u").unwrap());
        assert!(matches!(chart.eval_generators("b"), Err(AlgebraError::UnknownVariable(_))));
    }
}
