//! Numerics on the spectral ball: the set of square complex matrices whose
//! eigenvalues all lie in the open unit disc.

// `!(x < 1.0)` deliberately rejects NaN along with out-of-range values
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod curves;
pub mod error;
pub mod geometry;
pub mod linalg;
pub mod matching;
pub mod matcore;
pub mod matrix;
pub mod nonderog;
pub mod pick;
pub mod poly;

pub use curves::{
    iso_spectral_curve, quadratic_witness_2x2, verify_constant_spectrum, zero_metric_curve,
    AnalyticCurve,
};
pub use error::{Error, Result};
pub use geometry::{
    bottleneck_minimax, hull_membership, hull_witness, kobayashi_scalar_base, lempert_scalar_base,
    mobius, upper_bound_disc, Bottleneck, DiscWitness, HullWitness,
};
pub use matcore::*;
pub use matrix::{c64, re, CMatrix, C64};
pub use nonderog::{classify, minimal_polynomial, ClassifyOptions, Criterion, NonderogReport};
pub use pick::{
    degenerate_interpolant, gap_certificate, gn_disc_from_blaschke, is_psd, lemma8_solve,
    pick_matrix, BlaschkeProduct, GapCertificate, Interpolant, PickProblem,
};
pub use poly::PolyCoeffs;
