//! Diagonal reproducing-kernel modules and the exact graded
//! representation of submodule kernels.
//!
//! An ambient diagonal kernel is `K(z, w) = sum_a b_a z^a conj(w)^a`
//! with positive weights, so the monomials are orthogonal with
//! `||z^a||^2 = 1/b_a`. For a homogeneous ideal the kernel of the
//! closed submodule decomposes degree by degree; each graded piece is
//! represented by its row-reduced basis and the exact inverse of its
//! Gram matrix, avoiding square roots entirely.

use std::collections::BTreeMap;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::ideal::{graded_piece, IdealSpec};
use crate::linalg::Mat;
use crate::multiindex::MultiIndex;
use crate::poly::Poly;
use crate::scalar::{gr, GaussRat, Rat};

fn pochhammer(a: &Rat, k: u32) -> Rat {
    let mut acc = Rat::one();
    for t in 0..k {
        acc *= a + Rat::from_integer(t.into());
    }
    acc
}

/// Ambient diagonal kernel models.
#[derive(Clone, Debug)]
pub enum DiagonalKernel {
    /// Szego kernel of the polydisc: every weight is 1.
    HardyPolydisc { dim: usize },
    /// Weighted Bergman space on the two-ball with parameters
    /// `alpha, beta, theta > -1` and `alpha + beta + theta + 2 > 0`.
    BergmanBall2 { alpha: Rat, beta: Rat, theta: Rat },
    /// Explicit weight table, used by tests and as a failure hook.
    Custom { dim: usize, weights: BTreeMap<MultiIndex, Rat> },
}

impl DiagonalKernel {
    pub fn hardy(dim: usize) -> Self {
        DiagonalKernel::HardyPolydisc { dim }
    }

    pub fn bergman_ball2(alpha: Rat, beta: Rat, theta: Rat) -> Result<Self> {
        let k = DiagonalKernel::BergmanBall2 { alpha, beta, theta };
        k.validate()?;
        Ok(k)
    }

    pub fn validate(&self) -> Result<()> {
        if let DiagonalKernel::BergmanBall2 { alpha, beta, theta } = self {
            let minus_one = -Rat::one();
            if alpha <= &minus_one || beta <= &minus_one || theta <= &minus_one {
                return Err(Error::InvalidParameters(
                    "Bergman parameters must each exceed -1".into(),
                ));
            }
            let total = alpha + beta + theta + Rat::from_integer(2.into());
            if !total.is_positive() {
                return Err(Error::InvalidParameters(
                    "Bergman parameters must satisfy alpha+beta+theta+2 > 0".into(),
                ));
            }
        }
        Ok(())
    }

    pub fn dim(&self) -> usize {
        match self {
            DiagonalKernel::HardyPolydisc { dim } => *dim,
            DiagonalKernel::BergmanBall2 { .. } => 2,
            DiagonalKernel::Custom { dim, .. } => *dim,
        }
    }

    /// The weight `b_a`, checked to be positive on access.
    pub fn weight(&self, alpha: &MultiIndex) -> Result<Rat> {
        if alpha.dim() != self.dim() {
            return Err(Error::DimensionMismatch(self.dim(), alpha.dim()));
        }
        let w = match self {
            DiagonalKernel::HardyPolydisc { .. } => Rat::one(),
            DiagonalKernel::BergmanBall2 { alpha: a, beta: b, theta: t } => {
                self.validate()?;
                let i = alpha.get(0);
                let j = alpha.get(1);
                let big_a = a + b + t; // alpha + beta + theta
                let big_b = a + t;
                let big_c = t.clone();
                let two = Rat::from_integer(2.into());
                let three = Rat::from_integer(3.into());
                let jr = Rat::from_integer(j.into());
                let first = (&big_a + &jr + &two) / (&big_a + &two);
                let second = pochhammer(&(&big_b + &two), j)
                    / pochhammer(&(&big_c + &Rat::one()), j);
                let third = pochhammer(&(&big_a + &jr + &three), i)
                    / Rat::from_integer(crate::multiindex::factorial(i));
                first * second * third
            }
            DiagonalKernel::Custom { weights, .. } => weights
                .get(alpha)
                .cloned()
                .ok_or_else(|| {
                    Error::InvalidParameters(format!("no weight tabulated for index {alpha:?}"))
                })?,
        };
        if !w.is_positive() {
            return Err(Error::InvalidParameters(format!(
                "kernel weight at {alpha:?} is not positive"
            )));
        }
        Ok(w)
    }
}

/// Exact Pochhammer evaluation of a kernel coefficient.
pub fn kernel_coefficient(kernel: &DiagonalKernel, alpha: &MultiIndex) -> Result<Rat> {
    kernel.weight(alpha)
}

/// One graded piece of the submodule kernel.
#[derive(Clone, Debug)]
pub struct DegreeData {
    pub degree: u32,
    pub basis: Vec<Poly>,
    /// Module Gram matrix `G_{jk} = <f_j, f_k>` (weights `1/b_a`).
    pub gram: Mat,
    pub gram_inv: Mat,
}

#[derive(Clone, Debug)]
pub struct SubmoduleKernel {
    pub kernel: DiagonalKernel,
    pub ideal: IdealSpec,
    pub truncation: u32,
    pieces: BTreeMap<u32, DegreeData>,
}

/// Ambient module inner product of two polynomials: monomials are
/// orthogonal with `||z^a||^2 = 1/b_a`.
pub fn module_inner(kernel: &DiagonalKernel, f: &Poly, g: &Poly) -> Result<GaussRat> {
    if f.dim() != g.dim() {
        return Err(Error::DimensionMismatch(f.dim(), g.dim()));
    }
    let mut acc = GaussRat::zero();
    for (a, cf) in f.terms() {
        let cg = g.coeff(a);
        if cg.is_zero() {
            continue;
        }
        let w = kernel.weight(a)?;
        acc += cf * cg.conj() * gr(Rat::one() / w);
    }
    Ok(acc)
}

/// Bi-degree expansion of the reproducing kernel of the span of
/// `basis`, as a map `(z-index, w-index) -> coefficient`. Exposed so the
/// representation can be checked to be independent of the basis choice.
pub fn degree_kernel_from_basis(
    basis: &[Poly],
    kernel: &DiagonalKernel,
) -> Result<BTreeMap<(MultiIndex, MultiIndex), GaussRat>> {
    let mut out = BTreeMap::new();
    if basis.is_empty() {
        return Ok(out);
    }
    let gram = module_gram(basis, kernel)?;
    let gram_inv = gram
        .inverse()
        .ok_or_else(|| Error::Inconsistency("degree Gram matrix is singular".into()))?;
    expand_piece(basis, &gram_inv, &mut out);
    Ok(out)
}

fn module_gram(basis: &[Poly], kernel: &DiagonalKernel) -> Result<Mat> {
    let n = basis.len();
    let mut gram = Mat::zeros(n, n);
    for j in 0..n {
        for k in 0..n {
            gram[(j, k)] = module_inner(kernel, &basis[j], &basis[k])?;
        }
    }
    Ok(gram)
}

/// `K_d(z, w) = sum_{jk} (G^{-1})_{kj} f_j(z) conj(f_k(w))`, the unique
/// expansion with the reproducing property on the span.
fn expand_piece(
    basis: &[Poly],
    gram_inv: &Mat,
    out: &mut BTreeMap<(MultiIndex, MultiIndex), GaussRat>,
) {
    for (j, fj) in basis.iter().enumerate() {
        for (k, fk) in basis.iter().enumerate() {
            let h = &gram_inv[(k, j)];
            if h.is_zero() {
                continue;
            }
            for (a, ca) in fj.terms() {
                for (b, cb) in fk.terms() {
                    let add = h * ca * cb.conj();
                    let key = (a.clone(), b.clone());
                    let current = out.remove(&key).unwrap_or_else(GaussRat::zero);
                    let updated = current + add;
                    if !updated.is_zero() {
                        out.insert(key, updated);
                    }
                }
            }
        }
    }
}

/// Builds the graded representation of the kernel of the closure of a
/// homogeneous ideal, with every bi-degree up to `truncation` expanded
/// exactly.
pub fn submodule_kernel(
    kernel: &DiagonalKernel,
    ideal: &IdealSpec,
    truncation: u32,
) -> Result<SubmoduleKernel> {
    ideal.require_homogeneous()?;
    if kernel.dim() != ideal.dim() {
        return Err(Error::DimensionMismatch(kernel.dim(), ideal.dim()));
    }
    if truncation < ideal.max_generator_degree() {
        return Err(Error::InvalidParameters(format!(
            "truncation {truncation} is below the maximal generator degree {}",
            ideal.max_generator_degree()
        )));
    }
    let mut pieces = BTreeMap::new();
    for d in 0..=truncation {
        let piece = graded_piece(ideal, d)?;
        if piece.basis.is_empty() {
            continue;
        }
        let gram = module_gram(&piece.basis, kernel)?;
        if gram.hermitian_positive_pivots().is_none() {
            return Err(Error::Inconsistency(format!(
                "module Gram matrix at degree {d} is not positive definite"
            )));
        }
        let gram_inv = gram
            .inverse()
            .ok_or_else(|| Error::Inconsistency("positive definite Gram not invertible".into()))?;
        pieces.insert(d, DegreeData { degree: d, basis: piece.basis, gram, gram_inv });
    }
    Ok(SubmoduleKernel {
        kernel: kernel.clone(),
        ideal: ideal.clone(),
        truncation,
        pieces,
    })
}

impl SubmoduleKernel {
    pub fn dim(&self) -> usize {
        self.ideal.dim()
    }

    pub fn piece(&self, d: u32) -> Option<&DegreeData> {
        self.pieces.get(&d)
    }

    pub fn pieces(&self) -> impl Iterator<Item = &DegreeData> {
        self.pieces.values()
    }

    /// Full bi-degree expansion up to the truncation.
    pub fn expansion(&self) -> BTreeMap<(MultiIndex, MultiIndex), GaussRat> {
        let mut out = BTreeMap::new();
        for data in self.pieces.values() {
            expand_piece(&data.basis, &data.gram_inv, &mut out);
        }
        out
    }

    /// Is the homogeneous polynomial in the degree-`d` graded span?
    fn in_piece_span(&self, v: &Poly, d: u32) -> bool {
        match self.pieces.get(&d) {
            None => false,
            Some(data) => {
                let top = d;
                let mut polys = data.basis.clone();
                let before = crate::charspace::stack_coords(&polys, self.dim(), top).rank();
                polys.push(v.clone());
                crate::charspace::stack_coords(&polys, self.dim(), top).rank() == before
            }
        }
    }

    /// Orthogonal projection of a homogeneous polynomial onto the
    /// degree-`d` piece of the submodule (zero when the piece is empty).
    pub fn project(&self, v: &Poly, d: u32) -> Result<Poly> {
        let Some(data) = self.pieces.get(&d) else {
            return Ok(Poly::zero(self.dim()));
        };
        let b: Vec<GaussRat> = data
            .basis
            .iter()
            .map(|f| module_inner(&self.kernel, v, f))
            .collect::<Result<_>>()?;
        // <P v, f_k> = <v, f_k>: solve G^T c = b for the coefficients
        let coeffs = data
            .gram
            .transpose()
            .solve(&b)
            .ok_or_else(|| Error::Inconsistency("projection system is singular".into()))?;
        let mut out = Poly::zero(self.dim());
        for (c, f) in coeffs.iter().zip(data.basis.iter()) {
            if !c.is_zero() {
                out = &out + &f.scale(c);
            }
        }
        Ok(out)
    }

    /// Ambient adjoint of multiplication by `z_{var+1}` on the monomial
    /// frame: `z^a -> (b_{a-e}/b_a) z^{a-e}`.
    pub fn shift_adjoint(&self, v: &Poly, var: usize) -> Result<Poly> {
        if var >= self.dim() {
            return Err(Error::IndexOutOfRange { index: var, dim: self.dim() });
        }
        let mut out = Poly::zero(self.dim());
        for (a, c) in v.terms() {
            if a.get(var) == 0 {
                continue;
            }
            let lower = a.checked_sub(&MultiIndex::unit(self.dim(), var)).unwrap();
            let ratio = self.kernel.weight(&lower)? / self.kernel.weight(a)?;
            out = &out + &Poly::monomial(self.dim(), lower, c * gr(ratio));
        }
        Ok(out)
    }
}

/// Exact `||v||^2` in the ambient module; the polynomial must lie in the
/// computed span of the submodule.
pub fn module_norm_sq(sk: &SubmoduleKernel, v: &Poly) -> Result<Rat> {
    if v.dim() != sk.dim() {
        return Err(Error::DimensionMismatch(sk.dim(), v.dim()));
    }
    let top = v.degree().unwrap_or(0);
    if top > sk.truncation {
        return Err(Error::OutOfSpan(format!(
            "degree {top} exceeds the truncation {}",
            sk.truncation
        )));
    }
    for d in 0..=top {
        let part = v.homogeneous_part(d);
        if !part.is_zero() && !sk.in_piece_span(&part, d) {
            return Err(Error::OutOfSpan(format!(
                "degree-{d} component `{part}` is not in the submodule"
            )));
        }
    }
    let mut acc = Rat::zero();
    for (a, c) in v.terms() {
        acc += crate::scalar::norm_sqr(c) / sk.kernel.weight(a)?;
    }
    Ok(acc)
}

/// The joint-kernel vectors `q*(conj D) K(. , w) |_{w=0}` for a family
/// of homogeneous polynomials. For homogeneous data only the graded
/// piece of matching degree contributes, so no truncation error occurs.
pub fn joint_kernel_vectors(sk: &SubmoduleKernel, qs: &[Poly]) -> Result<Vec<Poly>> {
    let mut out = Vec::with_capacity(qs.len());
    for q in qs {
        if q.dim() != sk.dim() {
            return Err(Error::DimensionMismatch(sk.dim(), q.dim()));
        }
        let Some(d) = q.homogeneous_degree() else {
            return Err(Error::NonHomogeneous(format!(
                "joint-kernel vectors need homogeneous inputs, got `{q}`"
            )));
        };
        if d > sk.truncation {
            return Err(Error::OutOfSpan(format!(
                "degree {d} exceeds the truncation {}",
                sk.truncation
            )));
        }
        let Some(data) = sk.pieces.get(&d) else {
            return Err(Error::OutOfSpan(format!(
                "the ideal has no degree-{d} component to pair `{q}` with"
            )));
        };
        // t_k = sum_b b! q[b] f_k[b]; vector = sum_j (sum_k G^{-1}_{kj}
        // conj(t_k)) f_j
        let t: Vec<GaussRat> = data
            .basis
            .iter()
            .map(|f| {
                let mut acc = GaussRat::zero();
                for (b, qc) in q.terms() {
                    let fc = f.coeff(b);
                    if !fc.is_zero() {
                        acc += qc * fc * gr(Rat::from_integer(b.factorial()));
                    }
                }
                acc
            })
            .collect();
        let mut vector = Poly::zero(sk.dim());
        for (j, f) in data.basis.iter().enumerate() {
            let mut c = GaussRat::zero();
            for (k, tk) in t.iter().enumerate() {
                c += &data.gram_inv[(k, j)] * tk.conj();
            }
            if !c.is_zero() {
                vector = &vector + &f.scale(&c);
            }
        }
        out.push(vector);
    }
    // exact linear independence certificate
    let top = out.iter().filter_map(|p| p.degree()).max().unwrap_or(0);
    let rank = crate::charspace::stack_coords(&out, sk.dim(), top).rank();
    if rank != out.len() {
        return Err(Error::Inconsistency(
            "joint-kernel vectors are linearly dependent".into(),
        ));
    }
    Ok(out)
}

/// Membership of a vector of the submodule in the joint kernel of the
/// adjoint multiplication operators: all compressions `P M_j^* v` must
/// vanish exactly.
pub fn in_joint_kernel(sk: &SubmoduleKernel, v: &Poly) -> Result<bool> {
    if v.dim() != sk.dim() {
        return Err(Error::DimensionMismatch(sk.dim(), v.dim()));
    }
    let Some(d) = v.homogeneous_degree() else {
        return Err(Error::NonHomogeneous(format!(
            "joint-kernel membership needs a homogeneous input, got `{v}`"
        )));
    };
    if d > sk.truncation || !sk.in_piece_span(v, d) {
        return Err(Error::OutOfSpan(format!("`{v}` is not in the computed submodule span")));
    }
    for var in 0..sk.dim() {
        let lowered = sk.shift_adjoint(v, var)?;
        if lowered.is_zero() {
            continue;
        }
        if d == 0 {
            continue;
        }
        let projected = sk.project(&lowered, d - 1)?;
        if !projected.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}
