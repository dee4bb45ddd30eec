//! Sparse multivariate polynomials over the Gaussian rationals,
//! differential-operator application, and the Fock inner product
//! `<p, q>_{w0} = q*(D) p |_{w0}`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::multiindex::MultiIndex;
use crate::scalar::{gauss_to_string, gr, GaussRat, Rat};

/// A polynomial in canonical form: no zero coefficient is ever stored,
/// and terms iterate in graded colex order. Two polynomials are equal
/// iff their term maps are equal.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Poly {
    dim: usize,
    terms: BTreeMap<MultiIndex, GaussRat>,
}

impl Poly {
    pub fn zero(dim: usize) -> Self {
        Poly { dim, terms: BTreeMap::new() }
    }

    pub fn one(dim: usize) -> Self {
        Poly::constant(dim, GaussRat::one())
    }

    pub fn constant(dim: usize, c: GaussRat) -> Self {
        let mut p = Poly::zero(dim);
        if !c.is_zero() {
            p.terms.insert(MultiIndex::zero(dim), c);
        }
        p
    }

    /// The coordinate variable `z_{var+1}` (zero-based index).
    pub fn var(dim: usize, var: usize) -> Result<Self> {
        if var >= dim {
            return Err(Error::IndexOutOfRange { index: var, dim });
        }
        Ok(Poly::monomial(dim, MultiIndex::unit(dim, var), GaussRat::one()))
    }

    pub fn monomial(dim: usize, alpha: MultiIndex, c: GaussRat) -> Self {
        assert_eq!(alpha.dim(), dim, "monomial index has wrong dimension");
        let mut p = Poly::zero(dim);
        if !c.is_zero() {
            p.terms.insert(alpha, c);
        }
        p
    }

    pub fn from_terms<I>(dim: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (MultiIndex, GaussRat)>,
    {
        let mut p = Poly::zero(dim);
        for (alpha, c) in terms {
            p.add_term(alpha, c);
        }
        p
    }

    fn add_term(&mut self, alpha: MultiIndex, c: GaussRat) {
        assert_eq!(alpha.dim(), self.dim, "term index has wrong dimension");
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(alpha.clone()).or_insert_with(GaussRat::zero);
        *entry = entry.clone() + c;
        if entry.is_zero() {
            self.terms.remove(&alpha);
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in graded colex order.
    pub fn terms(&self) -> impl Iterator<Item = (&MultiIndex, &GaussRat)> {
        self.terms.iter()
    }

    pub fn coeff(&self, alpha: &MultiIndex) -> GaussRat {
        self.terms.get(alpha).cloned().unwrap_or_else(GaussRat::zero)
    }

    /// Total degree; `None` is the "minus infinity" marker of the zero
    /// polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|a| a.total()).max()
    }

    /// `Some(d)` when the polynomial is nonzero and all terms have total
    /// degree `d`; `None` for the zero polynomial or mixed degrees.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut degs = self.terms.keys().map(|a| a.total());
        let first = degs.next()?;
        if degs.all(|d| d == first) {
            Some(first)
        } else {
            None
        }
    }

    pub fn is_homogeneous(&self) -> bool {
        self.is_zero() || self.homogeneous_degree().is_some()
    }

    /// The degree-`d` part of the polynomial.
    pub fn homogeneous_part(&self, d: u32) -> Poly {
        Poly {
            dim: self.dim,
            terms: self
                .terms
                .iter()
                .filter(|(a, _)| a.total() == d)
                .map(|(a, c)| (a.clone(), c.clone()))
                .collect(),
        }
    }

    fn check_dim(&self, other: &Poly) -> Result<()> {
        if self.dim == other.dim {
            Ok(())
        } else {
            Err(Error::DimensionMismatch(self.dim, other.dim))
        }
    }

    pub fn checked_add(&self, other: &Poly) -> Result<Poly> {
        self.check_dim(other)?;
        let mut out = self.clone();
        for (a, c) in other.terms() {
            out.add_term(a.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Poly) -> Result<Poly> {
        self.check_dim(other)?;
        let mut out = Poly::zero(self.dim);
        for (a, ca) in self.terms() {
            for (b, cb) in other.terms() {
                out.add_term(a.add(b), ca * cb);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &GaussRat) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.dim);
        }
        Poly {
            dim: self.dim,
            terms: self
                .terms
                .iter()
                .map(|(a, v)| (a.clone(), v * c))
                .collect(),
        }
    }

    /// `q*(z) = conj(q(conj z))`: conjugates the coefficients, leaving
    /// exponents untouched. An involution.
    pub fn star(&self) -> Poly {
        Poly {
            dim: self.dim,
            terms: self.terms.iter().map(|(a, c)| (a.clone(), c.conj())).collect(),
        }
    }

    /// Formal partial derivative with respect to variable `var`
    /// (zero-based).
    pub fn partial(&self, var: usize) -> Result<Poly> {
        if var >= self.dim {
            return Err(Error::IndexOutOfRange { index: var, dim: self.dim });
        }
        let mut out = Poly::zero(self.dim);
        for (a, c) in self.terms() {
            let e = a.get(var);
            if e == 0 {
                continue;
            }
            let mut entries = a.entries().to_vec();
            entries[var] = e - 1;
            let factor = gr(Rat::from_integer(e.into()));
            out.add_term(MultiIndex::new(entries), c * &factor);
        }
        Ok(out)
    }

    /// `d^alpha`, the iterated partial derivative.
    pub fn partial_multi(&self, alpha: &MultiIndex) -> Poly {
        assert_eq!(alpha.dim(), self.dim, "derivative index has wrong dimension");
        let mut out = Poly::zero(self.dim);
        for (a, c) in self.terms() {
            if let Some(rest) = a.checked_sub(alpha) {
                let factor = gr(Rat::from_integer(a.falling(alpha)));
                out.add_term(rest, c * &factor);
            }
        }
        out
    }

    /// `q(D) p`: applies `self` as a constant-coefficient differential
    /// operator to `p`.
    pub fn apply_diff(&self, p: &Poly) -> Result<Poly> {
        self.check_dim(p)?;
        let mut out = Poly::zero(self.dim);
        for (alpha, c) in self.terms() {
            let d = p.partial_multi(alpha);
            for (b, cb) in d.terms() {
                out.add_term(b.clone(), c * cb);
            }
        }
        Ok(out)
    }

    /// Exact evaluation at a point with Gaussian-rational coordinates.
    pub fn eval(&self, point: &[GaussRat]) -> Result<GaussRat> {
        if point.len() != self.dim {
            return Err(Error::DimensionMismatch(self.dim, point.len()));
        }
        let mut acc = GaussRat::zero();
        for (a, c) in self.terms() {
            let mut term = c.clone();
            for (i, &e) in a.entries().iter().enumerate() {
                for _ in 0..e {
                    term = term * &point[i];
                }
            }
            acc += term;
        }
        Ok(acc)
    }

    /// `p(z + w0)`; `translate(translate(p, w0), -w0) = p`.
    pub fn translate(&self, w0: &[GaussRat]) -> Result<Poly> {
        if w0.len() != self.dim {
            return Err(Error::DimensionMismatch(self.dim, w0.len()));
        }
        let mut out = Poly::zero(self.dim);
        for (a, c) in self.terms() {
            // expand prod_j (z_j + w_j)^{a_j}
            let mut expansion = Poly::constant(self.dim, c.clone());
            for (j, &e) in a.entries().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let binom = Poly::from_terms(
                    self.dim,
                    [
                        (MultiIndex::unit(self.dim, j), GaussRat::one()),
                        (MultiIndex::zero(self.dim), w0[j].clone()),
                    ],
                );
                for _ in 0..e {
                    expansion = expansion.checked_mul(&binom)?;
                }
            }
            out = out.checked_add(&expansion)?;
        }
        Ok(out)
    }
}

/// Fock inner product at the origin: `sum_a a! p[a] conj(q[a])`.
/// Linear in `p`, conjugate linear in `q`, positive definite.
pub fn fock_inner(p: &Poly, q: &Poly) -> Result<GaussRat> {
    if p.dim() != q.dim() {
        return Err(Error::DimensionMismatch(p.dim(), q.dim()));
    }
    let mut acc = GaussRat::zero();
    for (a, cp) in p.terms() {
        let cq = q.coeff(a);
        if cq.is_zero() {
            continue;
        }
        let w = gr(Rat::from_integer(a.factorial()));
        acc += cp * cq.conj() * w;
    }
    Ok(acc)
}

/// Fock inner product at `w0`, computed by direct differentiation:
/// `q*(D) p` evaluated at `w0`. Agrees with `fock_inner` at the origin
/// and with `fock_inner(translate(p, w0), q)` everywhere.
pub fn fock_inner_at(p: &Poly, q: &Poly, w0: &[GaussRat]) -> Result<GaussRat> {
    q.star().apply_diff(p)?.eval(w0)
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        self.checked_add(rhs).expect("dimension mismatch in +")
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self.checked_add(&-rhs).expect("dimension mismatch in -")
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        self.checked_mul(rhs).expect("dimension mismatch in *")
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        self.scale(&-GaussRat::one())
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (alpha, c) in self.terms() {
            let mono = monomial_string(alpha);
            let (sign, body) = term_string(c, &mono);
            if first {
                if sign < 0 {
                    write!(f, "-")?;
                }
                write!(f, "{body}")?;
                first = false;
            } else if sign < 0 {
                write!(f, "-{body}")?;
            } else {
                write!(f, "+{body}")?;
            }
        }
        Ok(())
    }
}

fn monomial_string(alpha: &MultiIndex) -> String {
    let mut parts = Vec::new();
    for (i, &e) in alpha.entries().iter().enumerate() {
        match e {
            0 => {}
            1 => parts.push(format!("z{}", i + 1)),
            _ => parts.push(format!("z{}^{}", i + 1, e)),
        }
    }
    parts.join("*")
}

/// Splits a term into a printable sign and body so that the rendered
/// polynomial re-parses under the text grammar.
fn term_string(c: &GaussRat, mono: &str) -> (i32, String) {
    use num_traits::Signed;
    if mono.is_empty() {
        // constant term: print the scalar as-is (grammar accepts a+b*i sums)
        if c.im.is_zero() && c.re.is_negative() {
            return (-1, gauss_to_string(&(-c.clone())));
        }
        if c.re.is_zero() && c.im.is_negative() {
            return (-1, gauss_to_string(&(-c.clone())));
        }
        return (1, gauss_to_string(c));
    }
    if c.im.is_zero() {
        let re = &c.re;
        if re.is_one() {
            return (1, mono.to_string());
        }
        if (-re.clone()).is_one() {
            return (-1, mono.to_string());
        }
        let (sign, abs) = if re.is_negative() { (-1, -re.clone()) } else { (1, re.clone()) };
        return (sign, format!("{}*{}", crate::scalar::rat_to_string(&abs), mono));
    }
    if c.re.is_zero() {
        let im = &c.im;
        if im.is_one() {
            return (1, format!("i*{mono}"));
        }
        if (-im.clone()).is_one() {
            return (-1, format!("i*{mono}"));
        }
        let (sign, abs) = if im.is_negative() { (-1, -im.clone()) } else { (1, im.clone()) };
        return (sign, format!("{}*i*{}", crate::scalar::rat_to_string(&abs), mono));
    }
    (1, format!("({})*{}", gauss_to_string(c), mono))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{gr_frac, gr_int, gri, rat_int};

    fn z(dim: usize, var: usize) -> Poly {
        Poly::var(dim, var).unwrap()
    }

    #[test]
    fn arithmetic_identities() {
        let z1 = z(2, 0);
        let z2 = z(2, 1);
        assert!((&z1 + &-&z1).is_zero());
        let prod = &(&z1 + &z2) * &(&z1 - &z2);
        let expect = &(&z1 * &z1) - &(&z2 * &z2);
        assert_eq!(prod, expect);
        let sq = &(&z1 - &z2) * &(&z1 - &z2);
        assert_eq!(sq.scale(&gr_int(4)).scale(&gr_frac(1, 4)), sq);
    }

    #[test]
    fn star_is_involution_and_conjugates() {
        let z1 = z(2, 0);
        let z2 = z(2, 1);
        let p = &z1 + &z2.scale(&gri(rat_int(0), rat_int(1)));
        let starred = p.star();
        assert_eq!(starred, &z1 - &z2.scale(&gri(rat_int(0), rat_int(1))));
        assert_eq!(starred.star(), p);
        let sq = &z1 * &z1;
        assert_eq!(sq.star(), sq);
    }

    #[test]
    fn partial_derivatives() {
        let z1 = z(2, 0);
        let z2 = z(2, 1);
        let p = &(&z1 * &z1) * &z2; // z1^2 z2
        assert_eq!(p.partial(0).unwrap(), (&z1 * &z2).scale(&gr_int(2)));
        let q = &(&z2 * &z2) * &z2;
        assert!(q.partial(0).unwrap().is_zero());
        assert!(p.partial(5).is_err());
    }

    #[test]
    fn apply_diff_examples() {
        let z1 = z(2, 0);
        let z2 = z(2, 1);
        // (z1 z2)(D) z1^2 z2^3 = 6 z1 z2^2
        let op = &z1 * &z2;
        let target = &(&z1 * &z1) * &(&(&z2 * &z2) * &z2);
        let got = op.apply_diff(&target).unwrap();
        assert_eq!(got, (&z1 * &(&z2 * &z2)).scale(&gr_int(6)));
        // identity operator
        assert_eq!(Poly::one(2).apply_diff(&target).unwrap(), target);
    }

    #[test]
    fn fock_inner_examples() {
        let z1 = z(2, 0);
        let z2 = z(2, 1);
        let sq = &z1 * &z1;
        assert_eq!(fock_inner(&sq, &sq).unwrap(), gr_int(2));
        let s = &z1 + &z2;
        let d = &z1 - &z2;
        assert!(fock_inner(&s, &d).unwrap().is_zero());
    }

    #[test]
    fn eval_and_translate() {
        let z1 = z(2, 0);
        let z2 = z(2, 1);
        let p = &(&z1 * &z1) * &z2;
        let v = p.eval(&[gr_int(2), gr_int(3)]).unwrap();
        assert_eq!(v, gr_int(12));
        assert!(Poly::zero(2).eval(&[gr_int(1), gr_int(1)]).unwrap().is_zero());

        let t = z1.translate(&[gr_int(1), gr_int(0)]).unwrap();
        assert_eq!(t, &z1 + &Poly::one(2));
        let round = p
            .translate(&[gr_int(1), gr_int(-2)])
            .unwrap()
            .translate(&[gr_int(-1), gr_int(2)])
            .unwrap();
        assert_eq!(round, p);
        assert_eq!(p.translate(&[gr_int(0), gr_int(0)]).unwrap(), p);
    }

    #[test]
    fn display_canonical_order() {
        let z1 = z(2, 0);
        let z2 = z(2, 1);
        let p = &(&z1 * &z1).scale(&gr_frac(1, 4))
            + &(&(&z1 * &z2).scale(&gr_frac(-1, 2)) + &(&z2 * &z2).scale(&gr_frac(1, 4)));
        assert_eq!(p.to_string(), "1/4*z1^2-1/2*z1*z2+1/4*z2^2");
        assert_eq!((&z1 + &z2).to_string(), "z1+z2");
        assert_eq!(Poly::zero(2).to_string(), "0");
    }
}
