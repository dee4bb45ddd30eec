//! Homogeneous ideals and their graded linear algebra: graded pieces,
//! Nullstellensatz degree, minimal generator counts, exact ideal
//! equality.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::linalg::Mat;
use crate::multiindex::{indices_of_degree, monomial_count, MultiIndex};
use crate::poly::{fock_inner, Poly};
use crate::scalar::GaussRat;

/// A finitely generated ideal, given by explicit generators. The
/// `homogeneous` flag is computed at construction, never assumed.
#[derive(Clone, Debug)]
pub struct IdealSpec {
    dim: usize,
    generators: Vec<Poly>,
    homogeneous: bool,
}

impl IdealSpec {
    pub fn new(dim: usize, generators: Vec<Poly>) -> Result<Self> {
        if generators.is_empty() {
            return Err(Error::EmptyGenerators);
        }
        for (k, g) in generators.iter().enumerate() {
            if g.dim() != dim {
                return Err(Error::DimensionMismatch(dim, g.dim()));
            }
            if g.is_zero() {
                return Err(Error::ZeroGenerator(k));
            }
        }
        let homogeneous = generators.iter().all(|g| g.homogeneous_degree().is_some());
        Ok(IdealSpec { dim, generators, homogeneous })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn generators(&self) -> &[Poly] {
        &self.generators
    }

    pub fn homogeneous(&self) -> bool {
        self.homogeneous
    }

    pub fn require_homogeneous(&self) -> Result<()> {
        if self.homogeneous {
            Ok(())
        } else {
            let bad = self
                .generators
                .iter()
                .find(|g| g.homogeneous_degree().is_none())
                .expect("some generator is inhomogeneous");
            Err(Error::NonHomogeneous(format!("generator `{bad}` mixes degrees")))
        }
    }

    pub fn max_generator_degree(&self) -> u32 {
        self.generators
            .iter()
            .filter_map(|g| g.degree())
            .max()
            .unwrap_or(0)
    }
}

/// Coordinate row of a homogeneous degree-`d` polynomial over the colex
/// monomial basis of degree `d`.
pub(crate) fn coords_of_degree(p: &Poly, d: u32, basis: &[MultiIndex]) -> Vec<GaussRat> {
    debug_assert!(p.terms().all(|(a, _)| a.total() == d));
    let index: BTreeMap<&MultiIndex, usize> =
        basis.iter().enumerate().map(|(i, a)| (a, i)).collect();
    let mut row = vec![GaussRat::zero(); basis.len()];
    for (a, c) in p.terms() {
        row[index[a]] = c.clone();
    }
    row
}

pub(crate) fn poly_from_coords(dim: usize, basis: &[MultiIndex], row: &[GaussRat]) -> Poly {
    Poly::from_terms(
        dim,
        basis
            .iter()
            .zip(row.iter())
            .filter(|(_, c)| !num_traits::Zero::is_zero(*c))
            .map(|(a, c)| (a.clone(), c.clone())),
    )
}

/// The degree-`d` graded piece of a homogeneous ideal, with a canonical
/// (row-reduced) basis and its Fock Gram matrix at the origin.
#[derive(Clone, Debug)]
pub struct GradedPiece {
    pub degree: u32,
    pub basis: Vec<Poly>,
    pub gram: Mat,
}

impl GradedPiece {
    pub fn dimension(&self) -> usize {
        self.basis.len()
    }
}

/// Coordinate matrix of the spanning set `{z^b p_i : |b| + deg p_i = d}`.
fn graded_span_matrix(ideal: &IdealSpec, d: u32, basis: &[MultiIndex]) -> Mat {
    let mut rows = Vec::new();
    for p in ideal.generators() {
        let deg = p.homogeneous_degree().expect("homogeneous generator");
        if deg > d {
            continue;
        }
        for b in indices_of_degree(ideal.dim(), d - deg) {
            let shifted = Poly::monomial(ideal.dim(), b, num_traits::One::one());
            let prod = &shifted * p;
            rows.push(coords_of_degree(&prod, d, basis));
        }
    }
    if rows.is_empty() {
        Mat::zeros(0, basis.len())
    } else {
        Mat::from_rows(rows)
    }
}

pub fn graded_piece(ideal: &IdealSpec, d: u32) -> Result<GradedPiece> {
    ideal.require_homogeneous()?;
    let monomials = indices_of_degree(ideal.dim(), d);
    let reduced = graded_span_matrix(ideal, d, &monomials).row_space_basis();
    let basis: Vec<Poly> = (0..reduced.rows())
        .map(|i| poly_from_coords(ideal.dim(), &monomials, reduced.row(i)))
        .collect();
    let gram = Mat::from_fn(basis.len(), basis.len(), |j, k| {
        fock_inner(&basis[j], &basis[k]).expect("same dimension")
    });
    if !basis.is_empty() && gram.hermitian_positive_pivots().is_none() {
        return Err(Error::Inconsistency(format!(
            "Gram matrix of graded piece {d} is not positive definite"
        )));
    }
    Ok(GradedPiece { degree: d, basis, gram })
}

pub(crate) fn graded_dimension(ideal: &IdealSpec, d: u32) -> Result<usize> {
    ideal.require_homogeneous()?;
    let monomials = indices_of_degree(ideal.dim(), d);
    Ok(graded_span_matrix(ideal, d, &monomials).rank())
}

pub(crate) fn default_nullstellensatz_bound(ideal: &IdealSpec) -> u32 {
    2 * ideal.max_generator_degree() + 4
}

/// Smallest `N` such that the degree-`N` graded piece is all of the
/// degree-`N` polynomials (equivalently the `N`-th power of the maximal
/// ideal at the origin is contained in the ideal). Errors with
/// `NotZeroDimensional` when no such `N` up to `bound` exists.
pub fn nullstellensatz_degree_with_bound(ideal: &IdealSpec, bound: u32) -> Result<u32> {
    ideal.require_homogeneous()?;
    for d in 0..=bound {
        if graded_dimension(ideal, d)? == monomial_count(ideal.dim(), d) {
            // fullness propagates upward for homogeneous ideals
            let next = graded_dimension(ideal, d + 1)?;
            if next != monomial_count(ideal.dim(), d + 1) {
                return Err(Error::Inconsistency(format!(
                    "graded piece {d} is full but piece {} is not",
                    d + 1
                )));
            }
            return Ok(d);
        }
    }
    Err(Error::NotZeroDimensional { bound })
}

pub fn nullstellensatz_degree(ideal: &IdealSpec) -> Result<u32> {
    nullstellensatz_degree_with_bound(ideal, default_nullstellensatz_bound(ideal))
}

/// Degrees in which minimality has to be inspected: between the least
/// and greatest generator degree.
fn generator_degrees(ideal: &IdealSpec) -> Vec<u32> {
    let mut degs: Vec<u32> = ideal
        .generators()
        .iter()
        .map(|g| g.homogeneous_degree().expect("homogeneous"))
        .collect();
    degs.sort_unstable();
    degs.dedup();
    degs
}

/// `sum_d dim(I_d / (m I)_d)`, the number of minimal generators by the
/// graded Nakayama lemma.
pub fn minimal_generator_count(ideal: &IdealSpec) -> Result<usize> {
    ideal.require_homogeneous()?;
    let mut count = 0;
    for d in generator_degrees(ideal) {
        let monomials = indices_of_degree(ideal.dim(), d);
        let full = graded_span_matrix(ideal, d, &monomials);
        let lower = lower_span_matrix(ideal, d, &monomials);
        count += full.rank() - lower.rank();
    }
    Ok(count)
}

/// Coordinate matrix of `(m I)_d`: the degree-`d` span of products of
/// generators with monomials of positive degree.
fn lower_span_matrix(ideal: &IdealSpec, d: u32, basis: &[MultiIndex]) -> Mat {
    let mut rows = Vec::new();
    for p in ideal.generators() {
        let deg = p.homogeneous_degree().expect("homogeneous generator");
        if deg >= d {
            continue;
        }
        for b in indices_of_degree(ideal.dim(), d - deg) {
            let shifted = Poly::monomial(ideal.dim(), b, num_traits::One::one());
            let prod = &shifted * p;
            rows.push(coords_of_degree(&prod, d, basis));
        }
    }
    if rows.is_empty() {
        Mat::zeros(0, basis.len())
    } else {
        Mat::from_rows(rows)
    }
}

/// Checks that the listed generators descend to a basis of `I / m I`.
pub fn is_minimal(ideal: &IdealSpec) -> Result<bool> {
    ideal.require_homogeneous()?;
    let total = minimal_generator_count(ideal)?;
    if total != ideal.generators().len() {
        return Ok(false);
    }
    // per degree, the classes of the given generators must be independent
    for d in generator_degrees(ideal) {
        let monomials = indices_of_degree(ideal.dim(), d);
        let mut stacked = lower_span_matrix(ideal, d, &monomials);
        let base_rank = stacked.rank();
        let mut rows: Vec<Vec<GaussRat>> = (0..stacked.rows())
            .map(|i| stacked.row(i).to_vec())
            .collect();
        let mut expected = base_rank;
        for p in ideal.generators() {
            if p.homogeneous_degree() == Some(d) {
                rows.push(coords_of_degree(p, d, &monomials));
                expected += 1;
            }
        }
        stacked = Mat::from_rows(rows);
        if stacked.rank() != expected {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Drops redundant generators, keeping the first representative of each
/// class of `I / m I` in the given order within ascending degree.
pub fn minimize_generators(ideal: &IdealSpec) -> Result<IdealSpec> {
    ideal.require_homogeneous()?;
    let mut kept: Vec<Poly> = Vec::new();
    let mut degs: Vec<(u32, Poly)> = ideal
        .generators()
        .iter()
        .map(|g| (g.homogeneous_degree().expect("homogeneous"), g.clone()))
        .collect();
    degs.sort_by_key(|(d, _)| *d); // stable: preserves given order per degree
    for (d, g) in degs {
        let monomials = indices_of_degree(ideal.dim(), d);
        let kept_ideal = if kept.is_empty() {
            None
        } else {
            Some(IdealSpec::new(ideal.dim(), kept.clone())?)
        };
        let mut rows = match &kept_ideal {
            Some(k) => {
                let m = graded_span_matrix(k, d, &monomials);
                (0..m.rows()).map(|i| m.row(i).to_vec()).collect::<Vec<_>>()
            }
            None => Vec::new(),
        };
        let before = if rows.is_empty() { 0 } else { Mat::from_rows(rows.clone()).rank() };
        rows.push(coords_of_degree(&g, d, &monomials));
        if Mat::from_rows(rows).rank() > before {
            kept.push(g);
        }
    }
    IdealSpec::new(ideal.dim(), kept)
}

/// Membership of a homogeneous polynomial in the ideal, by graded row
/// reduction.
pub fn ideal_membership(p: &Poly, ideal: &IdealSpec) -> Result<bool> {
    ideal.require_homogeneous()?;
    if p.is_zero() {
        return Ok(true);
    }
    let Some(d) = p.homogeneous_degree() else {
        return Err(Error::NonHomogeneous(format!("membership test needs a homogeneous input, got `{p}`")));
    };
    if p.dim() != ideal.dim() {
        return Err(Error::DimensionMismatch(ideal.dim(), p.dim()));
    }
    let monomials = indices_of_degree(ideal.dim(), d);
    let span = graded_span_matrix(ideal, d, &monomials);
    Ok(span.contains_in_row_space(&coords_of_degree(p, d, &monomials)))
}

/// Exact equality of two homogeneous ideals: all graded pieces up to the
/// larger maximal generator degree (and, for zero-dimensional ideals,
/// their Nullstellensatz degrees) must have equal span. Comparing up to
/// the maximal generator degree is already complete for homogeneous
/// ideals, since each generator then lies in the other ideal.
pub fn ideal_equal(a: &IdealSpec, b: &IdealSpec) -> Result<bool> {
    a.require_homogeneous()?;
    b.require_homogeneous()?;
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch(a.dim(), b.dim()));
    }
    let mut top = a.max_generator_degree().max(b.max_generator_degree());
    for ideal in [a, b] {
        if let Ok(n) = nullstellensatz_degree(ideal) {
            top = top.max(n);
        }
    }
    for d in 0..=top {
        let monomials = indices_of_degree(a.dim(), d);
        let span_a = graded_span_matrix(a, d, &monomials);
        let span_b = graded_span_matrix(b, d, &monomials);
        if !span_a.row_space_equal(&span_b) {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_poly;

    fn ideal(dim: usize, gens: &[&str]) -> IdealSpec {
        IdealSpec::new(dim, gens.iter().map(|s| parse_poly(s, dim).unwrap()).collect()).unwrap()
    }

    #[test]
    fn graded_pieces_of_the_reference_ideal() {
        let i = ideal(2, &["z1+z2", "z2^2"]);
        let p1 = graded_piece(&i, 1).unwrap();
        assert_eq!(p1.dimension(), 1);
        assert_eq!(p1.basis[0], parse_poly("z1+z2", 2).unwrap());
        let p2 = graded_piece(&i, 2).unwrap();
        assert_eq!(p2.dimension(), 3);
        let p0 = graded_piece(&i, 0).unwrap();
        assert_eq!(p0.dimension(), 0);
    }

    #[test]
    fn nullstellensatz_degrees() {
        assert_eq!(nullstellensatz_degree(&ideal(2, &["z1+z2", "z2^2"])).unwrap(), 2);
        assert_eq!(nullstellensatz_degree(&ideal(2, &["z1", "z2"])).unwrap(), 1);
        // m_0^3 in two variables
        assert_eq!(
            nullstellensatz_degree(&ideal(2, &["z1^3", "z1^2*z2", "z1*z2^2", "z2^3"])).unwrap(),
            3
        );
        // unit ideal
        assert_eq!(nullstellensatz_degree(&ideal(2, &["1"])).unwrap(), 0);
        // a non zero-dimensional ideal
        assert!(matches!(
            nullstellensatz_degree(&ideal(2, &["z1^2", "z1*z2"])),
            Err(Error::NotZeroDimensional { .. })
        ));
        // non-homogeneous input is a typed error
        assert!(matches!(
            nullstellensatz_degree(&ideal(2, &["z1*(1+z1)", "z2^2"])),
            Err(Error::NonHomogeneous(_))
        ));
    }

    #[test]
    fn minimal_generator_counts() {
        let ke = ideal(2, &["z1+z2", "z2^2"]);
        assert_eq!(minimal_generator_count(&ke).unwrap(), 2);
        assert!(is_minimal(&ke).unwrap());

        let redundant = ideal(2, &["z1", "z2", "z1+z2"]);
        assert_eq!(minimal_generator_count(&redundant).unwrap(), 2);
        assert!(!is_minimal(&redundant).unwrap());
        let minimized = minimize_generators(&redundant).unwrap();
        assert_eq!(minimized.generators().len(), 2);
        assert!(is_minimal(&minimized).unwrap());
        assert!(ideal_equal(&minimized, &ideal(2, &["z1", "z2"])).unwrap());

        // m_0^n in 2 variables needs n+1 generators
        for n in 1..=4u32 {
            let gens: Vec<String> = crate::multiindex::indices_of_degree(2, n)
                .into_iter()
                .map(|a| {
                    Poly::monomial(2, a, num_traits::One::one()).to_string()
                })
                .collect();
            let refs: Vec<&str> = gens.iter().map(|s| s.as_str()).collect();
            let m = ideal(2, &refs);
            assert_eq!(minimal_generator_count(&m).unwrap(), (n + 1) as usize);
        }
    }

    #[test]
    fn ideal_equality_examples() {
        let ke = ideal(2, &["z1+z2", "z2^2"]);
        let tilde = ideal(2, &["z1", "z2^2"]);
        assert!(!ideal_equal(&ke, &tilde).unwrap());
        let same = ideal(2, &["z1+z2", "(z1-z2)^2"]);
        assert!(ideal_equal(&ke, &same).unwrap());
        assert!(ideal_equal(&ke, &ke).unwrap());
    }

    #[test]
    fn membership() {
        let ke = ideal(2, &["z1+z2", "z2^2"]);
        assert!(ideal_membership(&parse_poly("(z1-z2)^2", 2).unwrap(), &ke).unwrap());
        assert!(ideal_membership(&parse_poly("z1^2+z1*z2", 2).unwrap(), &ke).unwrap());
        assert!(!ideal_membership(&parse_poly("z1", 2).unwrap(), &ke).unwrap());
        assert!(!ideal_membership(&parse_poly("z2", 2).unwrap(), &ke).unwrap());
    }
}
