//! The line bundle on the exceptional fiber over an isolated zero of
//! the ideal: sections built from joint-kernel vectors, their exact
//! norm-square Hermitian form on each projective chart, the curvature
//! matrix, the closed-form ratio invariant for monomial ideals in the
//! weighted Bergman two-ball, and exact recovery of the Bergman
//! parameters from curvature samples.

use num_traits::{One, Signed, Zero};

use crate::charspace::char_space;
use crate::error::{Error, Result};
use crate::kernel::{joint_kernel_vectors, module_inner, DiagonalKernel, SubmoduleKernel};
use crate::linalg::Mat;
use crate::multiindex::MultiIndex;
use crate::poly::{fock_inner, Poly};
use crate::scalar::{gr, GaussRat, Rat};

/// The fiber data over the origin: one kernel vector per canonical
/// generator and its exact module Gram matrix.
#[derive(Clone, Debug)]
pub struct FiberSection {
    pub vectors: Vec<Poly>,
    pub gram: Mat,
}

/// Plain bilinear pairing `sum_b b! q[b] g[b]`; the vectors dual to the
/// generators under this pairing extract the decomposition vectors from
/// the kernel.
fn bilinear_pairing(q: &Poly, g: &Poly) -> GaussRat {
    let mut acc = GaussRat::zero();
    for (b, qc) in q.terms() {
        let gc = g.coeff(b);
        if !gc.is_zero() {
            acc += qc * gc * gr(Rat::from_integer(b.factorial()));
        }
    }
    acc
}

/// Builds the section data for the canonical generators `qs`. The
/// number of generators must equal the joint-kernel dimension at the
/// origin. The decomposition vectors are obtained by probing the kernel
/// with a quotient basis of the characteristic spaces and solving the
/// exact pairing system; the naive pairing matrix of the generators
/// themselves can be singular over the complex rationals, the probe
/// matrix never is.
pub fn fiber_section(sk: &SubmoduleKernel, qs: &[Poly]) -> Result<FiberSection> {
    if qs.is_empty() {
        return Err(Error::InvalidParameters("need at least one generator".into()));
    }
    let t = qs.len();
    let zero = vec![GaussRat::zero(); sk.dim()];
    let cs = char_space(&sk.ideal, &zero)?;
    if cs.quotient_basis.len() != t {
        return Err(Error::InvalidParameters(format!(
            "{} generators given but the joint kernel has dimension {}",
            t,
            cs.quotient_basis.len()
        )));
    }
    let probes = &cs.quotient_basis;
    // v_{probe_i} = sum_j conj(<probe_i, star q_j>_0) K^{(j)}
    let pairing = Mat::from_fn(t, t, |i, j| bilinear_pairing(&probes[i], &qs[j]).conj());
    let inv = pairing.inverse().ok_or_else(|| {
        Error::Inconsistency("probe pairing matrix is singular; classes are dependent".into())
    })?;
    let probe_vectors = joint_kernel_vectors(sk, probes)?;
    let mut vectors = Vec::with_capacity(t);
    for j in 0..t {
        let mut v = Poly::zero(sk.dim());
        for (i, pv) in probe_vectors.iter().enumerate() {
            let c = &inv[(j, i)];
            if !c.is_zero() {
                v = &v + &pv.scale(c);
            }
        }
        vectors.push(v);
    }
    let gram = Mat::from_fn(t, t, |j, k| {
        module_inner(&sk.kernel, &vectors[j], &vectors[k]).expect("vectors share the dimension")
    });
    if gram.hermitian_positive_pivots().is_none() {
        return Err(Error::Inconsistency(
            "fiber vectors are linearly dependent (Gram not positive definite)".into(),
        ));
    }
    Ok(FiberSection { vectors, gram })
}

/// The Hermitian form `h(c) = sum_{jk} conj(c_j) c_k G_{jk}` with the
/// chart coordinate pinned to 1.
#[derive(Clone, Debug)]
pub struct NormForm {
    pub gram: Mat,
    /// 1-based chart index.
    pub chart: usize,
}

pub fn norm_form(section: &FiberSection, chart: usize) -> Result<NormForm> {
    let t = section.vectors.len();
    if chart == 0 || chart > t {
        return Err(Error::InvalidParameters(format!("chart {chart} out of range 1..={t}")));
    }
    Ok(NormForm { gram: section.gram.clone(), chart })
}

impl NormForm {
    fn full_coords(&self, theta: &[GaussRat]) -> Result<Vec<GaussRat>> {
        let t = self.gram.rows();
        if theta.len() != t - 1 {
            return Err(Error::InvalidParameters(format!(
                "expected {} chart coordinates, got {}",
                t - 1,
                theta.len()
            )));
        }
        let mut c = Vec::with_capacity(t);
        let mut it = theta.iter();
        for j in 0..t {
            if j == self.chart - 1 {
                c.push(GaussRat::one());
            } else {
                c.push(it.next().expect("length checked").clone());
            }
        }
        Ok(c)
    }

    /// Exact evaluation of the squared section norm at a chart point.
    pub fn eval(&self, theta: &[GaussRat]) -> Result<Rat> {
        let c = self.full_coords(theta)?;
        let t = c.len();
        let mut acc = GaussRat::zero();
        for j in 0..t {
            for k in 0..t {
                if !self.gram[(j, k)].is_zero() {
                    acc += c[j].conj() * &c[k] * &self.gram[(j, k)];
                }
            }
        }
        if !acc.im.is_zero() {
            return Err(Error::Inconsistency("norm form evaluated to a non-real value".into()));
        }
        Ok(acc.re)
    }
}

/// Curvature of `log h` at a chart point: the Hermitian matrix
/// `(h d_a dbar_b h - d_a h dbar_b h) / h^2`, closed-form because `h`
/// is quadratic in the chart coordinates.
#[derive(Clone, Debug)]
pub struct CurvatureValue {
    pub chart: usize,
    pub point: Vec<GaussRat>,
    pub matrix: Mat,
}

impl CurvatureValue {
    /// The single entry of a rank-two fiber (projective line).
    pub fn scalar(&self) -> Option<GaussRat> {
        if self.matrix.rows() == 1 {
            Some(self.matrix[(0, 0)].clone())
        } else {
            None
        }
    }
}

pub fn curvature_at(
    section: &FiberSection,
    chart: usize,
    theta: &[GaussRat],
) -> Result<CurvatureValue> {
    let form = norm_form(section, chart)?;
    let c = form.full_coords(theta)?;
    let t = c.len();
    let h = gr(form.eval(theta)?);
    if h.is_zero() {
        return Err(Error::Inconsistency("norm form vanished at a chart point".into()));
    }
    let free: Vec<usize> = (0..t).filter(|&j| j != chart - 1).collect();
    // d_a h = sum_j conj(c_j) G_{j,a}; dbar_b h = sum_k G_{b,k} c_k
    let d = |a: usize| -> GaussRat {
        let mut acc = GaussRat::zero();
        for j in 0..t {
            if !form.gram[(j, a)].is_zero() {
                acc += c[j].conj() * &form.gram[(j, a)];
            }
        }
        acc
    };
    let dbar = |b: usize| -> GaussRat {
        let mut acc = GaussRat::zero();
        for k in 0..t {
            if !form.gram[(b, k)].is_zero() {
                acc += &form.gram[(b, k)] * &c[k];
            }
        }
        acc
    };
    let h_sq = &h * &h;
    let matrix = Mat::from_fn(t - 1, t - 1, |a_pos, b_pos| {
        let a = free[a_pos];
        let b = free[b_pos];
        (&h * &form.gram[(b, a)] - d(a) * dbar(b)) / &h_sq
    });
    Ok(CurvatureValue { chart, point: theta.to_vec(), matrix })
}

/// The closed-form invariant `a_{m,n} = b_{0n}/b_{m0}` of the monomial
/// submodule generated by `z1^m, z2^n` in a diagonal model on two
/// variables.
pub fn curvature_ratio_invariant(kernel: &DiagonalKernel, m: u32, n: u32) -> Result<Rat> {
    if kernel.dim() != 2 {
        return Err(Error::InvalidParameters("ratio invariant needs a two-variable model".into()));
    }
    if m == 0 || n == 0 {
        return Err(Error::InvalidParameters("monomial exponents must be positive".into()));
    }
    let b0n = kernel.weight(&MultiIndex::new(vec![0, n]))?;
    let bm0 = kernel.weight(&MultiIndex::new(vec![m, 0]))?;
    Ok(b0n / bm0)
}

/// Curvature samples for parameter recovery: the ratio invariants at
/// `(N,N), (N,N+1), (N,N+2), (N+1,N)`.
#[derive(Clone, Debug)]
pub struct RecoveryInput {
    pub n: u32,
    pub a_n_n: Rat,
    pub a_n_np1: Rat,
    pub a_n_np2: Rat,
    pub a_np1_n: Rat,
}

impl RecoveryInput {
    pub fn samples(&self) -> [(u32, u32, &Rat); 4] {
        [
            (self.n, self.n, &self.a_n_n),
            (self.n, self.n + 1, &self.a_n_np1),
            (self.n, self.n + 2, &self.a_n_np2),
            (self.n + 1, self.n, &self.a_np1_n),
        ]
    }
}

/// Recovers `(alpha, beta, theta)` exactly from the four ratio
/// invariants, and verifies the answer by forward recomputation of all
/// samples. Tampered samples are rejected.
pub fn recover_parameters(input: &RecoveryInput) -> Result<(Rat, Rat, Rat)> {
    if input.n < 1 {
        return Err(Error::InvalidParameters("recovery needs N >= 1".into()));
    }
    if input.samples().iter().any(|(_, _, a)| !a.is_positive()) {
        return Err(Error::InvalidParameters("curvature samples must be positive".into()));
    }
    let n = Rat::from_integer(input.n.into());
    let one = Rat::one();
    let two = Rat::from_integer(2.into());
    let three = Rat::from_integer(3.into());
    let four = Rat::from_integer(4.into());

    // ratios of weights recovered from ratios of curvature invariants
    let rho1 = &input.a_n_n / &input.a_np1_n; // b_{(N+1)0} / b_{N0}
    let rho2 = &input.a_n_np1 / &input.a_n_n; // b_{0(N+1)} / b_{0N}
    let rho3 = &input.a_n_np2 / &input.a_n_np1; // b_{0(N+2)} / b_{0(N+1)}

    // b_{(N+1)0}/b_{N0} = (A+N+3)/(N+1)
    let big_a = &rho1 * (&n + &one) - (&n + &three);
    for offset in [&two, &three, &four] {
        if (&big_a + &n + offset).is_zero() {
            return Err(Error::InconsistentSamples(
                "derived parameter sum makes a weight ratio undefined".into(),
            ));
        }
    }
    // (B+N+2)/(C+N+1) and (B+N+3)/(C+N+2)
    let r2 = &rho2 * (&big_a + &n + &two) / (&big_a + &n + &three);
    let r3 = &rho3 * (&big_a + &n + &three) / (&big_a + &n + &four);
    if r2 == r3 {
        return Err(Error::DegenerateRecovery);
    }
    let big_c = (&r3 * (&n + &two) - &r2 * (&n + &one) - &one) / (&r2 - &r3);
    let big_b = &r2 * (&big_c + &n + &one) - (&n + &two);

    let theta = big_c.clone();
    let alpha = &big_b - &big_c;
    let beta = &big_a - &big_b;

    let kernel = DiagonalKernel::bergman_ball2(alpha.clone(), beta.clone(), theta.clone())
        .map_err(|_| {
            Error::InconsistentSamples("recovered parameters are outside the valid range".into())
        })?;
    for (m, nn, sample) in input.samples() {
        let forward = curvature_ratio_invariant(&kernel, m, nn)?;
        if &forward != sample {
            return Err(Error::InconsistentSamples(format!(
                "forward check failed at (m, n) = ({m}, {nn})"
            )));
        }
    }
    Ok((alpha, beta, theta))
}

/// Fock-orthogonality helper used by the chart-consistency tests.
pub fn fock_orthogonal(p: &Poly, q: &Poly) -> bool {
    matches!(fock_inner(p, q), Ok(v) if v.is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ideal::IdealSpec;
    use crate::kernel::submodule_kernel;
    use crate::parse::parse_poly;
    use crate::scalar::{gr_frac, gr_int, gri, rat, rat_int};

    fn ideal(dim: usize, gens: &[&str]) -> IdealSpec {
        IdealSpec::new(dim, gens.iter().map(|s| parse_poly(s, dim).unwrap()).collect()).unwrap()
    }

    fn monomial_section(m: u32, n: u32, k: &DiagonalKernel) -> FiberSection {
        let gens = ideal(2, &[&format!("z1^{m}"), &format!("z2^{n}")]);
        let sk = submodule_kernel(k, &gens, m.max(n)).unwrap();
        let qs = vec![
            parse_poly(&format!("z1^{m}"), 2).unwrap(),
            parse_poly(&format!("z2^{n}"), 2).unwrap(),
        ];
        fiber_section(&sk, &qs).unwrap()
    }

    #[test]
    fn bergman_monomial_gram_is_the_weight_pair() {
        let k = DiagonalKernel::bergman_ball2(rat(1, 2), rat(1, 3), rat(1, 4)).unwrap();
        for (m, n) in [(1, 1), (2, 1), (2, 3)] {
            let section = monomial_section(m, n, &k);
            let bm0 = k.weight(&MultiIndex::new(vec![m, 0])).unwrap();
            let b0n = k.weight(&MultiIndex::new(vec![0, n])).unwrap();
            assert_eq!(section.gram[(0, 0)], gr(bm0.clone()));
            assert_eq!(section.gram[(1, 1)], gr(b0n.clone()));
            assert!(section.gram[(0, 1)].is_zero());
            // the vectors are b_{m0} z1^m and b_{0n} z2^n
            assert_eq!(
                section.vectors[0],
                parse_poly(&format!("z1^{m}"), 2).unwrap().scale(&gr(bm0))
            );
            assert_eq!(
                section.vectors[1],
                parse_poly(&format!("z2^{n}"), 2).unwrap().scale(&gr(b0n))
            );
        }
    }

    #[test]
    fn hardy_maximal_ideal_gram_is_identity() {
        let section = monomial_section(1, 1, &DiagonalKernel::hardy(2));
        assert_eq!(section.gram, Mat::identity(2));
    }

    #[test]
    fn norm_form_and_chart_consistency() {
        let k = DiagonalKernel::bergman_ball2(Rat::zero(), Rat::zero(), Rat::zero()).unwrap();
        let section = monomial_section(2, 1, &k);
        let h1 = norm_form(&section, 1).unwrap();
        let h2 = norm_form(&section, 2).unwrap();
        // h2(1/theta) |theta|^2 = h1(theta) on the overlap
        for theta in [gr_int(1), gr_frac(-2, 3), gri(rat(1, 2), rat(1, 3))] {
            let inv = GaussRat::one() / theta.clone();
            let lhs = h2.eval(&[inv]).unwrap() * crate::scalar::norm_sqr(&theta);
            let rhs = h1.eval(&[theta.clone()]).unwrap();
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn curvature_closed_form_rank_two() {
        // G = diag(1, a) gives curvature a / (1 + a|theta|^2)^2
        for a in [rat_int(1), rat(3, 2), rat(5, 7)] {
            let section = FiberSection {
                vectors: vec![
                    parse_poly("z1", 2).unwrap(),
                    parse_poly("z2", 2).unwrap(),
                ],
                gram: Mat::from_rows(vec![
                    vec![gr_int(1), gr_int(0)],
                    vec![gr_int(0), gr(a.clone())],
                ]),
            };
            for theta in [gr_int(0), gr_int(1), gri(rat(1, 3), rat(-1, 4))] {
                let got = curvature_at(&section, 1, &[theta.clone()]).unwrap();
                let s = crate::scalar::norm_sqr(&theta);
                let denom = (Rat::one() + &a * &s).pow(2);
                assert_eq!(got.scalar().unwrap(), gr(&a / denom));
            }
        }
    }

    #[test]
    fn curvature_at_origin_is_the_gram_ratio() {
        let gram = Mat::from_rows(vec![
            vec![gr_int(2), gr_int(0), gr_int(0)],
            vec![gr_int(0), gr_int(3), gr_int(0)],
            vec![gr_int(0), gr_int(0), gr_int(5)],
        ]);
        let section = FiberSection {
            vectors: vec![
                parse_poly("z1", 3).unwrap(),
                parse_poly("z2", 3).unwrap(),
                parse_poly("z3", 3).unwrap(),
            ],
            gram,
        };
        let zero = [GaussRat::zero(), GaussRat::zero()];
        let got = curvature_at(&section, 1, &zero).unwrap();
        assert_eq!(got.matrix[(0, 0)], gr(rat(3, 2)));
        assert_eq!(got.matrix[(1, 1)], gr(rat(5, 2)));
        assert!(got.matrix[(0, 1)].is_zero());
    }

    #[test]
    fn chart_change_transforms_curvature() {
        let k = DiagonalKernel::bergman_ball2(rat(1, 2), rat(1, 3), rat(1, 4)).unwrap();
        let section = monomial_section(2, 3, &k);
        for theta in [gr_int(2), gri(rat(1, 2), rat(3, 5))] {
            let inv = GaussRat::one() / theta.clone();
            let on_chart1 = curvature_at(&section, 1, &[theta.clone()]).unwrap();
            let on_chart2 = curvature_at(&section, 2, &[inv]).unwrap();
            // (1,1)-form invariance: K2(1/theta) / |theta|^4 = K1(theta)
            let s = crate::scalar::norm_sqr(&theta);
            let expect = on_chart2.scalar().unwrap() / gr(&s * &s);
            assert_eq!(on_chart1.scalar().unwrap(), expect);
        }
    }

    #[test]
    fn ratio_invariant_matches_the_pipeline() {
        let k = DiagonalKernel::bergman_ball2(Rat::zero(), Rat::zero(), Rat::zero()).unwrap();
        assert_eq!(curvature_ratio_invariant(&k, 1, 1).unwrap(), rat_int(1));
        let hardyish = DiagonalKernel::hardy(2);
        assert_eq!(curvature_ratio_invariant(&hardyish, 3, 4).unwrap(), rat_int(1));
        let k = DiagonalKernel::bergman_ball2(rat(1, 2), rat(1, 3), rat(1, 4)).unwrap();
        for (m, n) in [(1, 2), (3, 1)] {
            let a = curvature_ratio_invariant(&k, m, n).unwrap();
            let section = monomial_section(m, n, &k);
            let at_origin = curvature_at(&section, 1, &[GaussRat::zero()]).unwrap();
            assert_eq!(at_origin.scalar().unwrap(), gr(a));
        }
    }

    #[test]
    fn recovery_roundtrips_and_rejects_tampering() {
        let triples = [
            (rat(1, 2), rat(1, 3), rat(1, 4)),
            (Rat::zero(), Rat::zero(), Rat::zero()),
            (rat(-1, 2), rat_int(2), rat(3, 5)),
        ];
        for (alpha, beta, theta) in triples {
            let k = DiagonalKernel::bergman_ball2(alpha.clone(), beta.clone(), theta.clone())
                .unwrap();
            for n in 1..=3u32 {
                let input = RecoveryInput {
                    n,
                    a_n_n: curvature_ratio_invariant(&k, n, n).unwrap(),
                    a_n_np1: curvature_ratio_invariant(&k, n, n + 1).unwrap(),
                    a_n_np2: curvature_ratio_invariant(&k, n, n + 2).unwrap(),
                    a_np1_n: curvature_ratio_invariant(&k, n + 1, n).unwrap(),
                };
                let (a, b, t) = recover_parameters(&input).unwrap();
                assert_eq!((a, b, t), (alpha.clone(), beta.clone(), theta.clone()));

                let mut tampered = input.clone();
                tampered.a_n_n *= Rat::from_integer(2.into());
                assert!(recover_parameters(&tampered).is_err());
            }
        }
    }
}
