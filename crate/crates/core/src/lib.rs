//! Exact computations for submodules of analytic Hilbert modules given by
//! polynomial ideals: Fock inner products, characteristic and envelope
//! spaces, canonical generators, diagonal reproducing kernels, and the
//! curvature of the line bundle on the exceptional fiber of the blow-up.
//!
//! All arithmetic is over the Gaussian rationals (complex numbers with
//! rational real and imaginary parts); every equality test in the library
//! is exact.

pub mod canonical;
pub mod charspace;
pub mod curvature;
pub mod error;
pub mod ideal;
pub mod jsonio;
pub mod kernel;
pub mod linalg;
pub mod multiindex;
pub mod parse;
pub mod poly;
pub mod scalar;

pub use canonical::{
    build_a_matrix, canonical_span_equal, canonicalize, canonicalize_minimized, degree_blocks,
    grammian_decomposition_check, monomial_independence_report, CanonicalGens, CorrectionBlock,
    DegreeBlocks,
};
pub use charspace::{char_space, envelope, joint_kernel_dim, CharSpace, Envelope};
pub use curvature::{
    curvature_at, curvature_ratio_invariant, fiber_section, norm_form, recover_parameters,
    CurvatureValue, FiberSection, NormForm, RecoveryInput,
};
pub use error::{Error, Result};
pub use ideal::{
    graded_piece, ideal_equal, is_minimal, minimal_generator_count, minimize_generators,
    nullstellensatz_degree, GradedPiece, IdealSpec,
};
pub use kernel::{
    in_joint_kernel, joint_kernel_vectors, kernel_coefficient, module_norm_sq, submodule_kernel,
    DiagonalKernel, SubmoduleKernel,
};
pub use linalg::Mat;
pub use multiindex::MultiIndex;
pub use parse::{parse_ideal_file, parse_poly, parse_scalar};
pub use poly::Poly;
pub use scalar::{GaussRat, Rat};
