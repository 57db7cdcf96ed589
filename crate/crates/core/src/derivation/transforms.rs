use super::{Derivation, DerivationError};
use crate::algebra::{LaurentPoly, Monomial};
use crate::weights::{weight_of, Weight, WeightAssignment};
use std::collections::BTreeMap;

fn require_kills(d: &Derivation, var: &str) -> Result<(), DerivationError> {
    let image = d
        .image(var)
        .ok_or_else(|| DerivationError::MissingImage(var.to_string()))?;
    if image.is_zero() {
        Ok(())
    } else {
        Err(DerivationError::DoesNotAnnihilate {
            variable: var.to_string(),
            image: image.format_with(d.chart().ambient_vars()),
        })
    }
}

/// Clears the poles of `d` along `r` on the listed elements: returns
/// `r^m · d` with `m` the largest pole order of an image.
pub fn localize_lift(d: &Derivation, r: &str, generators: &[LaurentPoly]) -> Result<Derivation, DerivationError> {
    require_kills(d, r)?;
    let mut m = 0u32;
    for g in generators {
        m = m.max(d.apply(g)?.pole_order(r));
    }
    if m == 0 {
        return Ok(d.clone());
    }
    Ok(d.scaled(&LaurentPoly::from(Monomial::var_pow(r, m as i64))))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomogeneousComponent {
    pub degree: Weight,
    pub derivation: Derivation,
}

/// Splits `d` into `w`-homogeneous pieces, highest degree first. A piece of
/// degree `δ` sends weight `μ` to weight `μ + δ`. The zero derivation has
/// no components.
pub fn homogeneous_components(
    d: &Derivation,
    w: &WeightAssignment,
) -> Result<Vec<HomogeneousComponent>, DerivationError> {
    let mut pieces: BTreeMap<Weight, BTreeMap<String, Vec<(Monomial, crate::Rational)>>> = BTreeMap::new();
    for (var, image) in d.images() {
        let base = weight_of(&Monomial::var(var), w)?;
        for (m, c) in image.terms() {
            let shift = &weight_of(m, w)? - &base;
            pieces
                .entry(shift)
                .or_default()
                .entry(var.clone())
                .or_default()
                .push((m.clone(), c.clone()));
        }
    }
    let mut out = Vec::with_capacity(pieces.len());
    for (degree, terms) in pieces.into_iter().rev() {
        let mut images: BTreeMap<String, LaurentPoly> =
            d.images().keys().map(|v| (v.clone(), LaurentPoly::zero())).collect();
        for (var, ts) in terms {
            images.insert(var, LaurentPoly::from_terms(ts));
        }
        out.push(HomogeneousComponent {
            degree,
            derivation: Derivation::new(d.chart().clone(), images)?,
        });
    }
    Ok(out)
}

/// Lifts a base derivation to the total space of a line bundle over the
/// base chart, trivialised away from the fiber `f = 0`.
///
/// The new variable `tau` is the fiber coordinate; the bundle generators
/// are `tau` and `tau·ωᵢ`, added to the chart as `{tau}_{i}`. Near the fiber
/// the coordinate is `t = f^(-m)·tau` with `m` the largest pole order of the
/// `ωᵢ`; every image is checked to be regular there.
pub fn bundle_lift(
    d1: &Derivation,
    omegas: &[LaurentPoly],
    f: &str,
    tau: &str,
    n: u32,
) -> Result<Derivation, DerivationError> {
    require_kills(d1, f)?;
    let base = d1.chart();
    if base.ambient_vars().iter().any(|v| v == tau) {
        return Err(DerivationError::NameClash(tau.to_string()));
    }
    let order = base.ambient_vars();
    let mut twist = 0u32;
    for (index, omega) in omegas.iter().enumerate() {
        base.check_regular(omega)?;
        twist = twist.max(omega.pole_order(f));
        let pole_order = d1.apply(omega)?.pole_order(f);
        if n <= pole_order {
            return Err(DerivationError::ExponentTooSmall {
                index,
                omega: omega.format_with(order),
                pole_order,
                n,
            });
        }
    }

    let tau_poly = LaurentPoly::var(tau);
    let mut chart = base.with_variable(tau, false)?.with_generator(tau, tau_poly.clone())?;
    for (i, omega) in omegas.iter().enumerate() {
        chart = chart.with_generator(&format!("{tau}_{i}"), &tau_poly * omega)?;
    }
    let lift = tau_poly.pow(n);
    let mut images: BTreeMap<String, LaurentPoly> =
        d1.images().iter().map(|(v, p)| (v.clone(), &lift * p)).collect();
    images.insert(tau.to_string(), LaurentPoly::zero());
    let lifted = Derivation::new(chart, images)?;

    // tau = f^m · t in the chart along the fiber; `t` keeps the name `tau`.
    let local = BTreeMap::from([(
        tau.to_string(),
        LaurentPoly::from(Monomial::from_exponents([(f, twist as i64), (tau, 1)])),
    )]);
    for (index, omega) in omegas.iter().enumerate() {
        let image = lifted.apply(&(&tau_poly * omega))?.substitute(&local)?;
        let pole_order = image.pole_order(f);
        if pole_order > 0 {
            return Err(DerivationError::ExponentTooSmall {
                index,
                omega: omega.format_with(order),
                pole_order,
                n,
            });
        }
    }
    Ok(lifted)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::ChartPresentation;

    fn xy() -> ChartPresentation {
        ChartPresentation::coordinate_ring(&["x", "y"], &["x"])
    }

    #[test]
    fn clearing_a_simple_pole() {
        let d = Derivation::from_exprs(xy(), &[("x", "0"), ("y", "x^-1")]).unwrap();
        let gens = [LaurentPoly::var("x"), LaurentPoly::var("y")];
        let e = localize_lift(&d, "x", &gens).unwrap();
        assert_eq!(e.image("y").unwrap(), &LaurentPoly::one());
        assert!(e.image("x").unwrap().is_zero());
    }

    #[test]
    fn clearing_uses_the_worst_pole() {
        let d = Derivation::from_exprs(xy(), &[("x", "0"), ("y", "x^-3+x^-1")]).unwrap();
        let gens = [LaurentPoly::var("x"), LaurentPoly::var("y")];
        let e = localize_lift(&d, "x", &gens).unwrap();
        assert_eq!(e.image("y").unwrap(), &xy().eval_ambient("1+x^2").unwrap());
    }

    #[test]
    fn regular_images_are_left_alone() {
        let d = Derivation::from_exprs(xy(), &[("x", "0"), ("y", "x")]).unwrap();
        let gens = [LaurentPoly::var("x"), LaurentPoly::var("y")];
        assert_eq!(localize_lift(&d, "x", &gens).unwrap(), d);
    }

    #[test]
    fn localizing_needs_a_kernel_variable() {
        let d = Derivation::from_exprs(xy(), &[("x", "1"), ("y", "0")]).unwrap();
        assert!(matches!(
            localize_lift(&d, "x", &[]),
            Err(DerivationError::DoesNotAnnihilate { .. })
        ));
    }

    #[test]
    fn split_by_term_weight() {
        let chart = ChartPresentation::coordinate_ring(&["t", "q"], &[]);
        let d = Derivation::from_exprs(chart.clone(), &[("t", "t^2+t"), ("q", "1")]).unwrap();
        let w = WeightAssignment::new()
            .with("t", Weight::ints(1, 0))
            .with("q", Weight::ints(0, 0));
        let parts = homogeneous_components(&d, &w).unwrap();
        assert_eq!(parts.len(), 2);
        assert_eq!(parts[0].degree, Weight::ints(1, 0));
        assert_eq!(parts[0].derivation.image("t").unwrap(), &chart.eval_ambient("t^2").unwrap());
        assert!(parts[0].derivation.image("q").unwrap().is_zero());
        assert_eq!(parts[1].degree, Weight::zero());
        assert_eq!(parts[1].derivation.image("t").unwrap(), &LaurentPoly::var("t"));
        assert_eq!(parts[1].derivation.image("q").unwrap(), &LaurentPoly::one());
        let total = parts[0].derivation.sum(&parts[1].derivation);
        assert_eq!(total.images(), d.images());
    }

    fn base() -> ChartPresentation {
        ChartPresentation::coordinate_ring(&["u", "f"], &["f"])
    }

    #[test]
    fn trivial_bundle_is_the_cylinder() {
        let d1 = Derivation::from_exprs(base(), &[("u", "f"), ("f", "0")]).unwrap();
        let lift = bundle_lift(&d1, &[LaurentPoly::one()], "f", "tau", 1).unwrap();
        assert_eq!(lift.image("u").unwrap(), &base().with_variable("tau", false).unwrap().eval_ambient("tau*f").unwrap());
        assert!(lift.image("tau").unwrap().is_zero());
    }

    #[test]
    fn pole_along_the_fiber() {
        let d1 = Derivation::from_exprs(base(), &[("u", "1"), ("f", "0")]).unwrap();
        let omega = base().eval_ambient("f^-2").unwrap();
        let lift = bundle_lift(&d1, std::slice::from_ref(&omega), "f", "tau", 3).unwrap();
        let section = &LaurentPoly::var("tau") * &omega;
        assert!(lift.apply(&section).unwrap().is_zero());
    }

    #[test]
    fn exponent_must_beat_the_pole() {
        let d1 = Derivation::from_exprs(base(), &[("u", "1"), ("f", "0")]).unwrap();
        let omega = base().eval_ambient("u*f^-2").unwrap();
        match bundle_lift(&d1, &[LaurentPoly::one(), omega], "f", "tau", 2) {
            Err(DerivationError::ExponentTooSmall { index, pole_order, .. }) => {
                assert_eq!((index, pole_order), (1, 2));
            }
            other => panic!("{other:?}"),
        }
        let d_bad = Derivation::from_exprs(base(), &[("u", "1"), ("f", "1")]).unwrap();
        assert!(matches!(
            bundle_lift(&d_bad, &[], "f", "tau", 1),
            Err(DerivationError::DoesNotAnnihilate { .. })
        ));
    }
}
