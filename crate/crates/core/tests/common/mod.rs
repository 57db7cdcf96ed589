#![allow(dead_code)]

use lndlab::algebra::{LaurentPoly, Monomial};
use lndlab::rational::ratio;
use lndlab::{ChartPresentation, Derivation};
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand::SeedableRng;
use std::collections::BTreeMap;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random Laurent polynomial; variables in `inverted` may get negative
/// exponents, the others not.
pub fn random_poly(rng: &mut ChaCha8Rng, vars: &[&str], inverted: &[&str], max_terms: usize) -> LaurentPoly {
    let terms = rng.gen_range(0..=max_terms);
    let mut out = LaurentPoly::zero();
    for _ in 0..terms {
        let m = Monomial::from_exponents(vars.iter().map(|v| {
            let lo = if inverted.contains(v) { -3 } else { 0 };
            (*v, rng.gen_range(lo..=3))
        }));
        let c = ratio(rng.gen_range(-9..=9), rng.gen_range(1..=4));
        out = out + LaurentPoly::term(c, m);
    }
    out
}

/// Random derivation with every ambient variable assigned an image.
pub fn random_derivation(rng: &mut ChaCha8Rng, chart: &ChartPresentation) -> Derivation {
    let vars: Vec<&str> = chart.ambient_vars().iter().map(String::as_str).collect();
    let inv: Vec<&str> = chart.inverted_vars().iter().map(String::as_str).collect();
    let images: BTreeMap<String, LaurentPoly> = vars
        .iter()
        .map(|v| (v.to_string(), random_poly(rng, &vars, &inv, 3)))
        .collect();
    Derivation::new(chart.clone(), images).unwrap()
}
