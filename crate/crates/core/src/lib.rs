//! Exact spectral experiments on Ramanujan's τ along the primes.
//!
//! The pipeline, end to end:
//!
//! 1. [`seq`] — primes, exact τ values, and the composition τ_p(n) = τ(p_n).
//! 2. [`newton`] — the convolution n·h_n = Σ j_r·h_{n−r} solved exactly in
//!    both directions, linking an h-sequence to its companion j-sequence.
//! 3. [`matrix`] — the lower-Hessenberg J/H matrix families attached to
//!    those sequences, their c-deformations, and exact determinants
//!    (|J_n(j̄)| = n!·h_n, |H_n(h̄)| = (−1)^{n+1}·j_n).
//! 4. [`charpoly`] — exact characteristic polynomials by three independent
//!    routes, principal-minor coefficient analysis, and the zero-eigenvalue
//!    scan (a zero eigenvalue at order n would mean τ(p_n) = 0).
//! 5. [`roots`] — all complex roots at certified multiprecision and the
//!    minimum-modulus series μ_n.
//! 6. [`envelope`] — lower envelopes of those series and residue-mod-m
//!    block tables.
//!
//! [`verify`] bundles every exact identity into one gate.

pub mod charpoly;
pub mod complex;
pub mod envelope;
pub mod error;
pub mod matrix;
pub mod newton;
pub mod roots;
pub mod scalar;
pub mod seq;
pub mod verify;

pub use charpoly::{
    berkowitz_family, charpoly_berkowitz, charpoly_closed_form, charpoly_family,
    closed_form_from_h, find_too_good_counterexample, lehmer_check, principal_minor_sum,
    principal_minor_sum_bounded, too_good_check, ExactPoly, LehmerReport, PolyRecord,
    TooGoodReport,
};
pub use complex::MpComplex;
pub use envelope::{
    block_summary, lower_envelope, residue_table, window_sweep, BlockSummary, EnvelopePoints,
    EnvelopeReport,
};
pub use error::{Error, Result};
pub use matrix::{build, det_exact, verify_lemma22, ExactMatrix, Family, Lemma22Report, MatrixSpec};
pub use newton::{h_from_j, j_from_h, verify_d2, ExactSeq, SeqRole};
pub use roots::{
    min_modulus, min_modulus_certified, min_modulus_series, roots_all, roots_all_seeded,
    vieta_residuals, MinModResult, NoCache, PrecisionProfile, RootCache, RootSet,
};
pub use seq::{
    primes_first, primes_upto, tau_p, tau_p_from_parts, tau_series, PrimeTable, TauPrimeSeq,
    TauTable,
};
pub use verify::{run_all, SuiteOutcome, VerifyParams, VerifyReport};

/// Re-exported scalar types; every exact quantity in this crate is one of
/// these.
pub use rug::{Integer, Rational};
