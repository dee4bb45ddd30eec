//! Shared fixtures: a corpus of small homogeneous ideals and parsing
//! helpers used across the integration suites.

use hilbmod::{parse_poly, GaussRat, IdealSpec, Poly};

pub fn p(dim: usize, text: &str) -> Poly {
    parse_poly(text, dim).unwrap()
}

pub fn ideal(dim: usize, gens: &[&str]) -> IdealSpec {
    IdealSpec::new(dim, gens.iter().map(|s| p(dim, s)).collect()).unwrap()
}

pub fn origin(dim: usize) -> Vec<GaussRat> {
    vec![num_traits::Zero::zero(); dim]
}

/// Minimal homogeneous ideals in two and three variables with degree
/// gaps up to 3; every entry is minimal as given.
pub fn minimal_corpus() -> Vec<(&'static str, IdealSpec)> {
    vec![
        ("ke", ideal(2, &["z1+z2", "z2^2"])),
        ("line_cubic", ideal(2, &["z1", "z2^3"])),
        ("gap3", ideal(2, &["z1+2*z2", "z2^4"])),
        ("diff_cube", ideal(2, &["z1-z2", "(z1+z2)^3"])),
        ("gauss", ideal(2, &["z1+i*z2", "z2^2"])),
        ("mono2", ideal(2, &["z1^2", "z2^3"])),
        ("three_vars", ideal(3, &["z1", "z2", "z3^2"])),
        ("plane_quadric", ideal(3, &["z1+z2+z3", "(z2-z3)^2"])),
        ("mono3", ideal(3, &["z1", "z2^2", "z3^3"])),
        ("coupled", ideal(3, &["z1+z2+z3", "(z2-z3)^2", "z3^3"])),
    ]
}

/// The subset of the corpus that is zero-dimensional at the origin.
pub fn zero_dimensional_corpus() -> Vec<(&'static str, IdealSpec)> {
    minimal_corpus()
        .into_iter()
        .filter(|(name, _)| *name != "plane_quadric")
        .collect()
}

/// Pairs of different minimal generating sets of the same ideal.
pub fn regenerated_pairs() -> Vec<(&'static str, IdealSpec, IdealSpec)> {
    vec![
        (
            "ke",
            ideal(2, &["z1+z2", "z2^2"]),
            ideal(2, &["z1+z2", "z2^2 + z1*(z1+z2)"]),
        ),
        (
            "line_cubic",
            ideal(2, &["z1", "z2^3"]),
            ideal(2, &["z1", "z2^3 + z1*z2^2"]),
        ),
        (
            "msquared",
            ideal(2, &["z1^2", "z1*z2", "z2^2"]),
            ideal(2, &["z1^2+z2^2", "z1^2+z1*z2", "z1^2-z2^2"]),
        ),
        (
            "gauss",
            ideal(2, &["z1+i*z2", "z2^2"]),
            ideal(2, &["z1+i*z2", "z2^2 + (1-i)*z2*(z1+i*z2)"]),
        ),
    ]
}
