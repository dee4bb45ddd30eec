//! Canonical generators of a homogeneous ideal.
//!
//! A minimal homogeneous generating set is arranged in blocks of equal
//! degree. Generators in the lowest block are already canonical; each
//! higher generator is corrected by a combination of lower-block
//! generators with polynomial coefficients so that the starred result
//! lands in the auxiliary space at the origin. The correction
//! coefficients solve an exact Hermitian positive system built from
//! Fock inner products of derivatives of the lower generators, and the
//! corrected set is unique up to a linear transformation: equivalently,
//! the degree-n canonical generators span the Fock-orthogonal
//! complement of the lower ideal inside the degree-n graded piece.

use num_traits::{One, Zero};

use crate::charspace::span_equal;
use crate::error::{Error, Result};
use crate::ideal::{is_minimal, minimize_generators, IdealSpec};
use crate::linalg::Mat;
use crate::multiindex::{indices_of_degree, MultiIndex};
use crate::poly::{fock_inner, Poly};
use crate::scalar::{gr, GaussRat, Rat};

/// Minimal generators partitioned by ascending degree.
#[derive(Clone, Debug)]
pub struct DegreeBlocks {
    pub dim: usize,
    /// `(degree, members)` with strictly increasing degrees; the
    /// concatenation is the input generating set reordered by degree
    /// (stable within a degree).
    pub blocks: Vec<(u32, Vec<Poly>)>,
}

impl DegreeBlocks {
    pub fn generator_count(&self) -> usize {
        self.blocks.iter().map(|(_, ps)| ps.len()).sum()
    }

    pub fn flattened(&self) -> Vec<Poly> {
        self.blocks.iter().flat_map(|(_, ps)| ps.clone()).collect()
    }
}

pub fn degree_blocks(ideal: &IdealSpec) -> Result<DegreeBlocks> {
    ideal.require_homogeneous()?;
    if !is_minimal(ideal)? {
        return Err(Error::NonMinimal(format!(
            "{} generators given, {} needed",
            ideal.generators().len(),
            crate::ideal::minimal_generator_count(ideal)?
        )));
    }
    let mut tagged: Vec<(u32, Poly)> = ideal
        .generators()
        .iter()
        .map(|g| (g.homogeneous_degree().expect("homogeneous"), g.clone()))
        .collect();
    tagged.sort_by_key(|(d, _)| *d); // stable partition
    let mut blocks: Vec<(u32, Vec<Poly>)> = Vec::new();
    for (d, p) in tagged {
        match blocks.last_mut() {
            Some((deg, ps)) if *deg == d => ps.push(p),
            _ => blocks.push((d, vec![p])),
        }
    }
    Ok(DegreeBlocks { dim: ideal.dim(), blocks })
}

/// The order-`r` layer `A^d(r)` and the assembled `A^d` for one source
/// block. Rows and columns are indexed generator-major and then
/// colexicographically by multi-index of total degree `gap`.
#[derive(Clone, Debug)]
pub struct AMatrices {
    pub gap: u32,
    pub by_order: Vec<Mat>,
    pub total: Mat,
}

fn fock_pd(a: &Poly, b: &Poly) -> GaussRat {
    fock_inner(a, b).expect("same dimension")
}

/// Builds `A^d(r)`, `r = 0..=gap`, from the closed entry formula
/// `sum_{|v|=r, v<=a, i>=a-v} C(a,v) i!/(i-a+v)! <d^v p_s, d^{i-a+v} p_t>_0`,
/// and their sum `A^d`. Fails with an inconsistency if the assembled
/// matrix is not Hermitian positive definite.
pub fn build_a_matrix(block: &[Poly], gap: u32) -> Result<AMatrices> {
    if block.is_empty() {
        return Err(Error::EmptyGenerators);
    }
    let dim = block[0].dim();
    if gap == 0 {
        return Err(Error::InvalidParameters("degree gap must be positive".into()));
    }
    let idx = indices_of_degree(dim, gap);
    let count = idx.len();
    let u = block.len();
    let size = u * count;

    // cache the derivatives that occur: orders 0..=gap of each generator
    let all_orders: Vec<MultiIndex> = (0..=gap)
        .flat_map(|r| indices_of_degree(dim, r))
        .collect();
    let deriv = |s: usize, nu: &MultiIndex| block[s].partial_multi(nu);

    let mut by_order = Vec::with_capacity(gap as usize + 1);
    for r in 0..=gap {
        let mut m = Mat::zeros(size, size);
        for (t, _) in block.iter().enumerate() {
            for (a_pos, alpha) in idx.iter().enumerate() {
                for (s, _) in block.iter().enumerate() {
                    for (i_pos, i) in idx.iter().enumerate() {
                        let mut acc = GaussRat::zero();
                        for nu in all_orders.iter().filter(|nu| nu.total() == r) {
                            if !nu.leq(alpha) {
                                continue;
                            }
                            let drop = alpha.checked_sub(nu).unwrap();
                            let Some(shift) = i.checked_sub(&drop) else {
                                continue;
                            };
                            // C(a, v) * i!/(i - a + v)!
                            let coeff = gr(Rat::from_integer(
                                alpha.binomial(nu) * i.falling(&drop),
                            ));
                            let inner = fock_pd(&deriv(s, nu), &deriv(t, &shift));
                            acc += coeff * inner;
                        }
                        m[(t * count + a_pos, s * count + i_pos)] = acc;
                    }
                }
            }
        }
        by_order.push(m);
    }

    let mut total = Mat::zeros(size, size);
    for m in &by_order {
        for i in 0..size {
            for j in 0..size {
                let v = &total[(i, j)] + &m[(i, j)];
                total[(i, j)] = v;
            }
        }
    }
    if total.hermitian_positive_pivots().is_none() {
        return Err(Error::Inconsistency(
            "assembled correction matrix is not Hermitian positive definite".into(),
        ));
    }
    Ok(AMatrices { gap, by_order, total })
}

/// Independent reconstruction of `A^d(r)` as the weighted Grammian of
/// the derivative tuples `X_mu(b) = mu! C(b, b-mu) d^{b-mu} p_s`,
/// compared entrywise against the closed formula.
pub fn grammian_decomposition_check(block: &[Poly], gap: u32, r: u32) -> Result<bool> {
    if r > gap {
        return Err(Error::InvalidParameters("order exceeds the degree gap".into()));
    }
    let built = build_a_matrix(block, gap)?;
    let dim = block[0].dim();
    let idx = indices_of_degree(dim, gap);
    let count = idx.len();
    let u = block.len();
    let size = u * count;

    let mut reconstructed = Mat::zeros(size, size);
    for mu in indices_of_degree(dim, gap - r) {
        let mu_fact = gr(Rat::from_integer(mu.factorial()));
        // X[s][b] = mu! C(b, b-mu) d^{b-mu} p_s when b >= mu, else 0
        let tuple = |s: usize, beta: &MultiIndex| -> Poly {
            match beta.checked_sub(&mu) {
                Some(rest) => {
                    let c = gr(Rat::from_integer(mu.factorial() * beta.binomial(&rest)));
                    block[s].partial_multi(&rest).scale(&c)
                }
                None => Poly::zero(dim),
            }
        };
        for t in 0..u {
            for (a_pos, alpha) in idx.iter().enumerate() {
                for s in 0..u {
                    for (i_pos, i) in idx.iter().enumerate() {
                        let g = fock_pd(&tuple(s, alpha), &tuple(t, i));
                        let v = &reconstructed[(t * count + a_pos, s * count + i_pos)]
                            + &(g / &mu_fact);
                        reconstructed[(t * count + a_pos, s * count + i_pos)] = v;
                    }
                }
            }
        }
    }
    Ok(reconstructed == built.by_order[r as usize])
}

/// One corrected generator's system against one lower block.
#[derive(Clone, Debug)]
pub struct CorrectionBlock {
    pub target_block: usize,
    pub target_member: usize,
    pub source_block: usize,
    pub gap: u32,
    /// `A^d` in the paper's orientation (Hermitian positive definite).
    pub a: Mat,
    /// Right-hand side `-<p_t^d, d^a p_j^l>_0`, block layout as `a`.
    pub rhs: Vec<GaussRat>,
    /// Correction coefficients, laid out generator-major then colex.
    pub gamma: Vec<GaussRat>,
}

/// Canonical generators together with their correction data.
#[derive(Clone, Debug)]
pub struct CanonicalGens {
    pub dim: usize,
    pub blocks: DegreeBlocks,
    /// Corrected generators, one per input generator, ordered like the
    /// flattened degree blocks. The lowest block is untouched.
    pub q: Vec<Poly>,
    pub corrections: Vec<CorrectionBlock>,
}

impl CanonicalGens {
    pub fn generator_count(&self) -> usize {
        self.q.len()
    }
}

pub fn canonicalize(ideal: &IdealSpec) -> Result<CanonicalGens> {
    let blocks = degree_blocks(ideal)?;
    canonicalize_blocks(ideal, blocks)
}

/// Like `canonicalize`, but first drops redundant generators.
pub fn canonicalize_minimized(ideal: &IdealSpec) -> Result<CanonicalGens> {
    let minimized = minimize_generators(ideal)?;
    canonicalize(&minimized)
}

fn canonicalize_blocks(ideal: &IdealSpec, blocks: DegreeBlocks) -> Result<CanonicalGens> {
    let dim = blocks.dim;
    let mut q: Vec<Poly> = Vec::new();
    let mut corrections: Vec<CorrectionBlock> = Vec::new();

    // lowest block passes through unchanged
    if let Some((_, members)) = blocks.blocks.first() {
        q.extend(members.iter().cloned());
    }

    for l in 1..blocks.blocks.len() {
        let (n_l, targets) = &blocks.blocks[l];
        // column layout of the joint system: one segment per lower block
        struct Segment {
            block: usize,
            gap: u32,
            members: usize,
            indices: Vec<MultiIndex>,
            offset: usize,
        }
        let mut segments: Vec<Segment> = Vec::new();
        let mut width = 0usize;
        for f in 0..l {
            let (n_f, sources) = &blocks.blocks[f];
            let gap = n_l - n_f;
            let indices = indices_of_degree(dim, gap);
            segments.push(Segment {
                block: f,
                gap,
                members: sources.len(),
                indices,
                offset: width,
            });
            width += sources.len() * segments.last().unwrap().indices.len();
        }

        // the joint coefficient matrix <p_t^e, d^a (z^i p_s^f)>_0 is the
        // conjugate of the Gram matrix of {z^a p_t^e}; it is shared by
        // all targets of this block
        let mut system = Mat::zeros(width, width);
        for row_seg in &segments {
            let (_, row_sources) = &blocks.blocks[row_seg.block];
            for (t, p_t) in row_sources.iter().enumerate() {
                for (a_pos, alpha) in row_seg.indices.iter().enumerate() {
                    let row = row_seg.offset + t * row_seg.indices.len() + a_pos;
                    for col_seg in &segments {
                        let (_, col_sources) = &blocks.blocks[col_seg.block];
                        for (s, p_s) in col_sources.iter().enumerate() {
                            for (i_pos, i) in col_seg.indices.iter().enumerate() {
                                let col =
                                    col_seg.offset + s * col_seg.indices.len() + i_pos;
                                let shifted =
                                    &Poly::monomial(dim, i.clone(), GaussRat::one()) * p_s;
                                let derived = shifted.partial_multi(alpha);
                                system[(row, col)] = fock_pd(p_t, &derived);
                            }
                        }
                    }
                }
            }
        }

        // cross-check the diagonal blocks against the closed formula
        for seg in &segments {
            let (_, sources) = &blocks.blocks[seg.block];
            let built = build_a_matrix(sources, seg.gap)?;
            let side = seg.members * seg.indices.len();
            for i in 0..side {
                for j in 0..side {
                    if system[(seg.offset + i, seg.offset + j)] != built.total[(i, j)].conj() {
                        return Err(Error::Inconsistency(
                            "diagonal correction block disagrees with the closed formula".into(),
                        ));
                    }
                }
            }
        }

        for (j_idx, target) in targets.iter().enumerate() {
            // right-hand side per row: -<p_t^e, d^a p_j^l>_0
            let mut rhs = vec![GaussRat::zero(); width];
            for seg in &segments {
                let (_, sources) = &blocks.blocks[seg.block];
                for (t, p_t) in sources.iter().enumerate() {
                    for (a_pos, alpha) in seg.indices.iter().enumerate() {
                        let row = seg.offset + t * seg.indices.len() + a_pos;
                        rhs[row] = -fock_pd(p_t, &target.partial_multi(alpha));
                    }
                }
            }
            // system * conj(gamma) = rhs; consistent because the right
            // side is the pairing of the target against the same span
            let x = system.solve(&rhs).ok_or_else(|| {
                Error::Inconsistency("correction system is inconsistent".into())
            })?;
            let gamma: Vec<GaussRat> = x.iter().map(|c| c.conj()).collect();

            // assemble q_j^l = p_j^l + sum gamma^{fs}(z) p_s^f
            let mut corrected = target.clone();
            for seg in &segments {
                let (_, sources) = &blocks.blocks[seg.block];
                for (s, p_s) in sources.iter().enumerate() {
                    let mut coeff_poly = Poly::zero(dim);
                    for (i_pos, i) in seg.indices.iter().enumerate() {
                        let g = &gamma[seg.offset + s * seg.indices.len() + i_pos];
                        if !g.is_zero() {
                            coeff_poly =
                                &coeff_poly + &Poly::monomial(dim, i.clone(), g.clone());
                        }
                    }
                    if !coeff_poly.is_zero() {
                        corrected = &corrected + &(&coeff_poly * p_s);
                    }
                }
            }
            q.push(corrected);

            for seg in &segments {
                let (_, sources) = &blocks.blocks[seg.block];
                let built = build_a_matrix(sources, seg.gap)?;
                let side = seg.members * seg.indices.len();
                corrections.push(CorrectionBlock {
                    target_block: l,
                    target_member: j_idx,
                    source_block: seg.block,
                    gap: seg.gap,
                    a: built.total,
                    rhs: rhs[seg.offset..seg.offset + side].to_vec(),
                    gamma: gamma[seg.offset..seg.offset + side].to_vec(),
                });
            }
        }
    }

    let gens = CanonicalGens { dim, blocks, q, corrections };
    verify_aux_membership(ideal, &gens)?;
    Ok(gens)
}

/// The defining certificate: for every generator `p` and every corrected
/// `q`, all pairings `<p, d^a q>_0` with `1 <= |a| <= max gap` vanish,
/// i.e. `star(q)` lies in the auxiliary space of the ideal at 0.
fn verify_aux_membership(ideal: &IdealSpec, gens: &CanonicalGens) -> Result<()> {
    let max_gap = match (gens.blocks.blocks.first(), gens.blocks.blocks.last()) {
        (Some((lo, _)), Some((hi, _))) => hi - lo,
        _ => 0,
    };
    for q in &gens.q {
        for p in ideal.generators() {
            for r in 1..=max_gap {
                for alpha in indices_of_degree(gens.dim, r) {
                    let v = fock_pd(p, &q.partial_multi(&alpha));
                    if !v.is_zero() {
                        return Err(Error::Inconsistency(format!(
                            "corrected generator `{q}` fails the auxiliary-space certificate"
                        )));
                    }
                }
            }
        }
    }
    Ok(())
}

/// Span equality of two canonical families (exact, over the Gaussian
/// rationals). By uniqueness of canonical generators this is invariant
/// across different minimal generating inputs of the same ideal.
pub fn canonical_span_equal(g1: &CanonicalGens, g2: &CanonicalGens) -> bool {
    g1.dim == g2.dim && span_equal(&g1.q, &g2.q)
}

/// Heuristic report from the remark on the worked example: collect the
/// monomials appearing in the canonical generators and count how many
/// are algebraically independent (the rank of their exponent vectors
/// over the rationals). This is a report, not a certified decision.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialIndependenceReport {
    pub distinct_monomials: usize,
    pub independent_monomials: usize,
    pub generator_count: usize,
    pub suggests_monoidal: bool,
}

pub fn monomial_independence_report(gens: &CanonicalGens) -> MonomialIndependenceReport {
    let mut monomials: std::collections::BTreeSet<MultiIndex> = Default::default();
    for q in &gens.q {
        for (a, _) in q.terms() {
            monomials.insert(a.clone());
        }
    }
    let rows: Vec<Vec<GaussRat>> = monomials
        .iter()
        .map(|a| {
            a.entries()
                .iter()
                .map(|&e| gr(Rat::from_integer(e.into())))
                .collect()
        })
        .collect();
    let rank = if rows.is_empty() { 0 } else { Mat::from_rows(rows).rank() };
    MonomialIndependenceReport {
        distinct_monomials: monomials.len(),
        independent_monomials: rank,
        generator_count: gens.q.len(),
        suggests_monoidal: rank == gens.q.len(),
    }
}
