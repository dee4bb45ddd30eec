//! Characteristic space, auxiliary space and envelope of a homogeneous
//! zero-dimensional ideal at the origin.
//!
//! The characteristic space V_0 consists of the polynomials `q` with
//! `q(D) p |_0 = 0` for every `p` in the ideal; the auxiliary space
//! consists of the polynomials all of whose first partials lie in V_0.
//! The dimension of the quotient equals the dimension of the joint
//! kernel of the adjoint multiplication operators, which is what makes
//! these spaces computable invariants.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::ideal::{
    coords_of_degree, graded_piece, nullstellensatz_degree, poly_from_coords, IdealSpec,
};
use crate::linalg::Mat;
use crate::multiindex::{indices_of_degree, MultiIndex};
use crate::poly::Poly;
use crate::scalar::{gr, GaussRat, Rat};

#[derive(Clone, Debug)]
pub struct CharSpace {
    pub point: Vec<GaussRat>,
    /// Nullstellensatz degree `N` used for the finite reduction.
    pub degree_bound: u32,
    /// Basis of the characteristic space V_0, homogeneous, degree < N.
    pub basis: Vec<Poly>,
    /// Basis of the auxiliary space, homogeneous, degree <= N.
    pub aux_basis: Vec<Poly>,
    /// Fock-orthogonal complement of V_0 inside the auxiliary space;
    /// its classes form a basis of the quotient.
    pub quotient_basis: Vec<Poly>,
}

/// Constraint rows expressing Fock-orthogonality at 0 against each of
/// the given degree-`d` coordinate rows: `<x, u> = sum a! x_a conj(u_a)`.
fn orthogonality_rows(span: &Mat, monomials: &[MultiIndex]) -> Mat {
    Mat::from_fn(span.rows(), span.cols(), |i, j| {
        span[(i, j)].conj() * gr(Rat::from_integer(monomials[j].factorial()))
    })
}

/// Matrix of the partial derivative d/dz_i from degree-`d` coordinates
/// to degree-`d-1` coordinates.
fn derivative_matrix(var: usize, from: &[MultiIndex], to: &[MultiIndex]) -> Mat {
    let index: std::collections::BTreeMap<&MultiIndex, usize> =
        to.iter().enumerate().map(|(k, a)| (a, k)).collect();
    let mut m = Mat::zeros(to.len(), from.len());
    for (j, alpha) in from.iter().enumerate() {
        let e = alpha.get(var);
        if e == 0 {
            continue;
        }
        let mut entries = alpha.entries().to_vec();
        entries[var] = e - 1;
        let beta = MultiIndex::new(entries);
        m[(index[&beta], j)] = gr(Rat::from_integer(e.into()));
    }
    m
}

fn rows_to_mat(rows: Vec<Vec<GaussRat>>, cols: usize) -> Mat {
    if rows.is_empty() {
        Mat::zeros(0, cols)
    } else {
        Mat::from_rows(rows)
    }
}

fn require_origin(ideal: &IdealSpec, w0: &[GaussRat]) -> Result<u32> {
    ideal.require_homogeneous()?;
    if w0.len() != ideal.dim() {
        return Err(Error::DimensionMismatch(ideal.dim(), w0.len()));
    }
    let n = nullstellensatz_degree(ideal)?;
    if w0.iter().any(|c| !c.is_zero()) {
        // Translating a homogeneous zero-dimensional ideal away from the
        // origin never leaves a zero-dimensional germ at 0, so the finite
        // reduction below is only available at the origin itself.
        return Err(Error::NotZeroDimensional {
            bound: crate::ideal::default_nullstellensatz_bound(ideal),
        });
    }
    Ok(n)
}

pub fn char_space(ideal: &IdealSpec, w0: &[GaussRat]) -> Result<CharSpace> {
    let n = require_origin(ideal, w0)?;
    let dim = ideal.dim();

    // per-degree bases of V_0, kept as coordinate matrices as well
    let mut v_polys: Vec<Poly> = Vec::new();
    let mut v_mats: Vec<Mat> = Vec::new(); // degree d -> basis rows (degree-d coords)
    let mut monomial_bases: Vec<Vec<MultiIndex>> = Vec::new();
    for d in 0..=n {
        let monomials = indices_of_degree(dim, d);
        let piece = graded_piece(ideal, d)?;
        let ideal_rows = rows_to_mat(
            piece
                .basis
                .iter()
                .map(|p| coords_of_degree(p, d, &monomials))
                .collect(),
            monomials.len(),
        );
        // tilde V (pre-star) = Fock-orthogonal complement of the ideal piece
        let constraints = orthogonality_rows(&ideal_rows, &monomials);
        let tilde_rows = constraints.nullspace();
        // V_0 = elementwise star of the complement
        let v_rows: Vec<Vec<GaussRat>> = tilde_rows
            .iter()
            .map(|row| row.iter().map(|c| c.conj()).collect())
            .collect();
        for row in &v_rows {
            v_polys.push(poly_from_coords(dim, &monomials, row));
        }
        v_mats.push(rows_to_mat(v_rows, monomials.len()));
        monomial_bases.push(monomials);
    }

    // auxiliary space: all first partials must land in V_0
    let mut aux_polys: Vec<Poly> = Vec::new();
    let mut quotient_polys: Vec<Poly> = Vec::new();
    for d in 0..=n {
        let monomials = &monomial_bases[d as usize];
        let aux_rows: Vec<Vec<GaussRat>> = if d == 0 {
            vec![vec![num_traits::One::one()]]
        } else {
            let lower = &v_mats[(d - 1) as usize];
            let lower_monomials = &monomial_bases[(d - 1) as usize];
            let annihilator = lower.nullspace();
            let mut constraint_rows: Vec<Vec<GaussRat>> = Vec::new();
            for var in 0..dim {
                let deriv = derivative_matrix(var, monomials, lower_monomials);
                for c in &annihilator {
                    // row of c^T * D_var as a condition on degree-d coords
                    let mut row = vec![GaussRat::zero(); monomials.len()];
                    for (j, slot) in row.iter_mut().enumerate() {
                        let mut acc = GaussRat::zero();
                        for (k, ck) in c.iter().enumerate() {
                            if !ck.is_zero() && !deriv[(k, j)].is_zero() {
                                acc += ck * &deriv[(k, j)];
                            }
                        }
                        *slot = acc;
                    }
                    constraint_rows.push(row);
                }
            }
            rows_to_mat(constraint_rows, monomials.len()).nullspace()
        };

        let aux_mat = rows_to_mat(aux_rows.clone(), monomials.len());
        for row in &aux_rows {
            aux_polys.push(poly_from_coords(dim, monomials, row));
        }

        // V_d must sit inside the auxiliary space
        let v_mat = &v_mats[d as usize];
        for i in 0..v_mat.rows() {
            if !aux_mat.contains_in_row_space(v_mat.row(i)) {
                return Err(Error::Inconsistency(
                    "characteristic space is not contained in the auxiliary space".into(),
                ));
            }
        }

        // quotient: Fock-orthogonal complement of V_d inside aux_d
        let k = aux_mat.rows();
        if k == 0 {
            continue;
        }
        let ortho = orthogonality_rows(v_mat, monomials);
        // constraints on aux coordinates y: sum_j y_j <t_j, v> = 0
        let cond = Mat::from_fn(v_mat.rows(), k, |vi, j| {
            let mut acc = GaussRat::zero();
            for col in 0..monomials.len() {
                if !aux_mat[(j, col)].is_zero() && !ortho[(vi, col)].is_zero() {
                    acc += &ortho[(vi, col)] * &aux_mat[(j, col)];
                }
            }
            acc
        });
        for y in cond.nullspace() {
            let mut row = vec![GaussRat::zero(); monomials.len()];
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                for col in 0..monomials.len() {
                    let v = &row[col] + &(yj * &aux_mat[(j, col)]);
                    row[col] = v;
                }
            }
            quotient_polys.push(poly_from_coords(dim, monomials, &row));
        }
    }

    let cs = CharSpace {
        point: w0.to_vec(),
        degree_bound: n,
        basis: v_polys,
        aux_basis: aux_polys,
        quotient_basis: quotient_polys,
    };

    if cs.quotient_basis.len() != cs.aux_basis.len() - cs.basis.len() {
        return Err(Error::Inconsistency(
            "quotient dimension does not match aux minus characteristic dimension".into(),
        ));
    }
    // defining property: every basis element annihilates the generators
    for q in &cs.basis {
        for p in ideal.generators() {
            let val = q.apply_diff(p)?.eval(w0)?;
            if !val.is_zero() {
                return Err(Error::Inconsistency(
                    "characteristic space element fails to annihilate a generator".into(),
                ));
            }
        }
    }
    Ok(cs)
}

/// `dim aux/V` at `w0`. At the origin this is computed from the finite
/// reduction; at a point where some generator does not vanish the joint
/// kernel is one-dimensional.
pub fn joint_kernel_dim(ideal: &IdealSpec, w0: &[GaussRat]) -> Result<usize> {
    ideal.require_homogeneous()?;
    if w0.len() != ideal.dim() {
        return Err(Error::DimensionMismatch(ideal.dim(), w0.len()));
    }
    // zero-dimensionality is a precondition either way
    let _n = nullstellensatz_degree(ideal)?;
    if w0.iter().all(|c| c.is_zero()) {
        return Ok(char_space(ideal, w0)?.quotient_basis.len());
    }
    let mut all_vanish = true;
    for p in ideal.generators() {
        if !p.eval(w0)?.is_zero() {
            all_vanish = false;
            break;
        }
    }
    if all_vanish {
        return Err(Error::Inconsistency(
            "all generators vanish at a nonzero point of a zero-dimensional homogeneous ideal"
                .into(),
        ));
    }
    Ok(1)
}

/// The envelope of the ideal at the origin: polynomials of degree < N
/// annihilated at 0 by the whole characteristic space, plus the implicit
/// tail of everything of degree >= N.
#[derive(Clone, Debug)]
pub struct Envelope {
    /// All polynomials of degree >= this bound belong to the envelope.
    pub degree_bound: u32,
    /// Basis of the envelope's part of degree < `degree_bound`.
    pub basis: Vec<Poly>,
}

pub fn envelope(ideal: &IdealSpec, w0: &[GaussRat]) -> Result<Envelope> {
    let cs = char_space(ideal, w0)?;
    let dim = ideal.dim();
    let mut basis = Vec::new();
    for d in 0..cs.degree_bound {
        let monomials = indices_of_degree(dim, d);
        // conditions <p, star(q)> = sum_a a! p[a] q[a] = 0 for q in V_0
        let rows: Vec<Vec<GaussRat>> = cs
            .basis
            .iter()
            .filter(|q| q.homogeneous_degree() == Some(d))
            .map(|q| {
                monomials
                    .iter()
                    .map(|a| q.coeff(a) * gr(Rat::from_integer(a.factorial())))
                    .collect()
            })
            .collect();
        let constraints = rows_to_mat(rows, monomials.len());
        for x in constraints.nullspace() {
            basis.push(poly_from_coords(dim, &monomials, &x));
        }
    }
    Ok(Envelope { degree_bound: cs.degree_bound, basis })
}

/// Test helper shared with downstream modules: coordinates of a list of
/// homogeneous polynomials in the ambient space of all monomials of
/// degree <= `top`, stacked as rows.
pub(crate) fn stack_coords(polys: &[Poly], dim: usize, top: u32) -> Mat {
    let monomials = crate::multiindex::indices_up_to(dim, top);
    let index: std::collections::BTreeMap<&MultiIndex, usize> =
        monomials.iter().enumerate().map(|(i, a)| (a, i)).collect();
    let mut m = Mat::zeros(polys.len(), monomials.len());
    for (r, p) in polys.iter().enumerate() {
        for (a, c) in p.terms() {
            m[(r, index[a])] = c.clone();
        }
    }
    m
}

/// Exact span equality for finite polynomial families.
pub fn span_equal(a: &[Poly], b: &[Poly]) -> bool {
    let dim = a.first().map(|p| p.dim()).or_else(|| b.first().map(|p| p.dim()));
    let Some(dim) = dim else { return true };
    if a.iter().chain(b.iter()).any(|p| p.dim() != dim) {
        return false;
    }
    let top = a
        .iter()
        .chain(b.iter())
        .filter_map(|p| p.degree())
        .max()
        .unwrap_or(0);
    stack_coords(a, dim, top).row_space_equal(&stack_coords(b, dim, top))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_poly;

    fn ideal(dim: usize, gens: &[&str]) -> IdealSpec {
        IdealSpec::new(dim, gens.iter().map(|s| parse_poly(s, dim).unwrap()).collect()).unwrap()
    }

    fn zero2() -> Vec<GaussRat> {
        vec![GaussRat::zero(), GaussRat::zero()]
    }

    #[test]
    fn maximal_ideal_quotient_is_the_linear_span() {
        let cs = char_space(&ideal(2, &["z1", "z2"]), &zero2()).unwrap();
        assert_eq!(cs.degree_bound, 1);
        assert_eq!(cs.quotient_basis.len(), 2);
        assert!(span_equal(
            &cs.quotient_basis,
            &[parse_poly("z1", 2).unwrap(), parse_poly("z2", 2).unwrap()]
        ));
    }

    #[test]
    fn reference_ideal_quotient_matches_the_known_pair() {
        let cs = char_space(&ideal(2, &["z1+z2", "z2^2"]), &zero2()).unwrap();
        assert_eq!(cs.degree_bound, 2);
        assert_eq!(cs.basis.len(), 2); // 1 and z1 - z2
        assert_eq!(cs.quotient_basis.len(), 2);
        assert!(span_equal(
            &cs.quotient_basis,
            &[parse_poly("z1+z2", 2).unwrap(), parse_poly("(z1-z2)^2", 2).unwrap()]
        ));
    }

    #[test]
    fn powers_of_the_maximal_ideal() {
        for n in 1..=4u32 {
            let gens: Vec<String> = indices_of_degree(2, n)
                .into_iter()
                .map(|a| Poly::monomial(2, a, num_traits::One::one()).to_string())
                .collect();
            let refs: Vec<&str> = gens.iter().map(|s| s.as_str()).collect();
            let cs = char_space(&ideal(2, &refs), &zero2()).unwrap();
            assert_eq!(cs.quotient_basis.len(), (n + 1) as usize);
        }
    }

    #[test]
    fn joint_kernel_dimension_examples() {
        assert_eq!(joint_kernel_dim(&ideal(2, &["z1", "z2"]), &zero2()).unwrap(), 2);
        let ke = ideal(2, &["z1+z2", "z2^2"]);
        assert_eq!(joint_kernel_dim(&ke, &zero2()).unwrap(), 2);
        // generic point off the zero set
        let w = vec![crate::scalar::gr_int(1), crate::scalar::gr_int(-1)];
        assert_eq!(joint_kernel_dim(&ke, &w).unwrap(), 1);
        // characteristic space away from the origin is rejected
        assert!(char_space(&ke, &w).is_err());
    }

    #[test]
    fn envelope_equals_the_ideal() {
        let ke = ideal(2, &["z1+z2", "z2^2"]);
        let env = envelope(&ke, &zero2()).unwrap();
        assert_eq!(env.degree_bound, 2);
        assert!(span_equal(&env.basis, &[parse_poly("z1+z2", 2).unwrap()]));

        // for the maximal ideal the low part is empty and the envelope is
        // exactly the degree >= 1 tail
        let max_ideal = ideal(2, &["z1", "z2"]);
        let env = envelope(&max_ideal, &zero2()).unwrap();
        assert_eq!(env.degree_bound, 1);
        assert!(env.basis.is_empty());

        // m_0^3: the low part is empty, the tail is the whole story
        let gens: Vec<String> = indices_of_degree(2, 3)
            .into_iter()
            .map(|a| Poly::monomial(2, a, num_traits::One::one()).to_string())
            .collect();
        let refs: Vec<&str> = gens.iter().map(|s| s.as_str()).collect();
        let env = envelope(&ideal(2, &refs), &zero2()).unwrap();
        assert_eq!(env.degree_bound, 3);
        assert!(env.basis.is_empty());
    }
}
