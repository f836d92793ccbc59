//! Modal spectral laboratory for the abstract thermoelastic plate system
//!
//! ```text
//!   u_tt + w A u_tt + A^2 u - A^s theta = 0
//!   theta_t + A theta + A^s u_t = 0
//! ```
//!
//! with A a strictly positive self-adjoint operator represented by its
//! eigenvalue sequence. In the eigenbasis the generator decouples into 3x3
//! blocks, which makes resolvent norms along the imaginary axis, witness
//! lower bounds, and exact time propagation computable to near machine
//! precision. The crate measures the regularity map of the semigroup
//! (analytic / Gevrey / exponentially stable / polynomially stable) and
//! compares fitted exponents against the predicted classification.

pub mod error;
pub mod evolution;
pub mod inequality_lab;
pub mod linalg;
pub mod modal;
pub mod resolvent;
pub mod scaling;
pub mod spectrum;
pub mod witness;

pub use error::{Error, Result};
pub use evolution::{
    fit_decay, propagate_block, propagator, random_state, simulate_decay, smoothed_state,
    DecayKind, Propagator,
};
pub use inequality_lab::{
    interpolation_check, lemma_item, lemma_ratio_scan, resolvent_identity_check,
    InterpolationCheck, LemmaItem, LemmaScanConfig, OmegaRegime, RatioReport, RatioScan,
    LEMMA_ITEMS,
};
pub use linalg::{C64, Mat3, Vec3};
pub use modal::{generator_block, ModalState, ModeBlock};
pub use resolvent::{
    block_resolvent_norm, dense_oracle_norm, resolvent_norm, solve_block, ResolventSample,
    SearchParams,
};
pub use scaling::{
    classify_regularity, fit_exponent, scan_and_verify, ExponentFit, RegionPrediction,
    Regularity, ScanReport, SweepConfig, Verdict,
};
pub use spectrum::{frac_power_coeff, resonant_eta, resonant_mode, EigenModel};
pub use witness::{
    geometric_indices, lower_bound_consistent, ratio_test, witness_omega, witness_zero,
    RatioTest, WitnessPoint,
};
