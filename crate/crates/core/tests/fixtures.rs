use lndlab::algebra::{LaurentPoly, Monomial};
use lndlab::derivation::{bundle_lift, homogeneous_components, nilpotency_index, verify_regular, Derivation};
use lndlab::fixtures::{bundle_noskew, bundle_skew, check_lattice_relations, graded_r, load_fixture, surface_s, FIXTURE_NAMES};
use lndlab::picard::{is_positive, pic_rank, standard_form};
use lndlab::weights::{leading_form, Weight, WeightAssignment};
use lndlab::{ChartPresentation, LatticePoint};

#[test]
fn skew_family_region() {
    for m in 0..=7u32 {
        for n in 0..=15u32 {
            let fx = bundle_skew(m, n).unwrap();
            let df = fx.derivation.unwrap();
            let report = verify_regular(&df.derivation, &df.witnesses).unwrap();
            let inside = m >= 3 && n >= m + 5;
            assert_eq!(report.is_pass(), inside, "(m, n) = ({m}, {n}): {:?}", report.failing_generators());
            if inside {
                for (name, g) in fx.chart.generators() {
                    let k = nilpotency_index(&df.derivation, g, 64).unwrap().index();
                    assert!(matches!(k, Some(k) if k <= 4), "{name}");
                }
            }
        }
    }
}

#[test]
fn skew_images_in_section_coordinates() {
    let fx = bundle_skew(3, 8).unwrap();
    let d = fx.derivation.unwrap().derivation;
    let s = |e: &str| fx.chart.eval_generators(e).unwrap();
    assert_eq!(d.apply(&LaurentPoly::var("u")).unwrap(), s("s^3*r^5"));
    assert_eq!(d.apply(&s("z")).unwrap(), s("s^4*r^4"));
    assert!(d.apply(&LaurentPoly::integer(5)).unwrap().is_zero());
    assert_eq!(nilpotency_index(&d, &LaurentPoly::var("u"), 10).unwrap().index(), Some(2));
    assert_eq!(nilpotency_index(&d, &LaurentPoly::one(), 10).unwrap().index(), Some(1));
    let w = nilpotency_index(&d, &s("w"), 10).unwrap().index().unwrap();
    assert!(w <= 4);
}

#[test]
fn skew_derivation_is_homogeneous_in_the_section_variable() {
    let (m, n) = (3, 8);
    let fx = bundle_skew(m, n).unwrap();
    let d = fx.derivation.unwrap().derivation;
    let w = WeightAssignment::new()
        .with("u", Weight::zero())
        .with("b", Weight::zero())
        .with("r", Weight::ints(1, 0));
    let parts = homogeneous_components(&d, &w).unwrap();
    assert_eq!(parts.len(), 1);
    assert_eq!(parts[0].degree, Weight::ints(n as i64, 0));
    assert_eq!(parts[0].derivation, d);
}

#[test]
fn noskew_class_is_positive_and_skew_class_is_not() {
    let skew = bundle_skew(3, 8).unwrap();
    let f = skew.fibration.as_ref().unwrap();
    assert_eq!(pic_rank(f), 1);
    assert!(!is_positive(skew.class("D").unwrap(), f).unwrap());
    assert_eq!(standard_form(skew.class("D").unwrap(), f).unwrap().m, -1);
    let noskew = bundle_noskew().unwrap();
    let f = noskew.fibration.as_ref().unwrap();
    let d = noskew.class("D").unwrap();
    assert_eq!(standard_form(d, f).unwrap(), *d);
    assert!(is_positive(d, f).unwrap());
}

#[test]
fn graded_generators_are_leading_forms_of_the_surface() {
    // u^i b^j has leading exponent (i - j, j) in the (u, z) lattice
    let surface = surface_s().unwrap();
    let graded = graded_r().unwrap();
    let w = surface.weights.clone().unwrap();
    for (name, point) in &graded.lattice {
        let lf = leading_form(surface.chart.generator(name).unwrap(), &w).unwrap();
        let (_, mono) = lf.as_single_term().expect("weights separate the terms");
        let (i, j) = (mono.exponent("u"), mono.exponent("b"));
        assert_eq!(LatticePoint::new(i - j, j), *point, "{name}");
    }
    assert!(check_lattice_relations(&graded).unwrap().is_empty());
}

#[test]
fn bundle_lift_over_a_pole() {
    let base = ChartPresentation::coordinate_ring(&["u", "f"], &["f"]);
    let d1 = Derivation::from_exprs(base.clone(), &[("u", "1"), ("f", "0")]).unwrap();
    let omega = base.eval_ambient("u*f^-2").unwrap();
    let lifted = bundle_lift(&d1, &[LaurentPoly::one(), omega.clone()], "f", "tau", 3).unwrap();
    let tau = LaurentPoly::var("tau");
    let image = lifted.apply(&(&tau * &omega)).unwrap();
    let expected = LaurentPoly::from(Monomial::from_exponents([("tau", 4), ("f", -2)]));
    assert_eq!(image, expected);
    assert!(lifted.chart().generator("tau_1").is_some());
}

#[test]
fn fixture_names_are_stable() {
    for name in FIXTURE_NAMES {
        assert_eq!(load_fixture(name).unwrap().name, name);
    }
}
