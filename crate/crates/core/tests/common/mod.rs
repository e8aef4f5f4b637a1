//! Oracles shared by the integration tests. Nothing here calls the code it checks.
#![allow(dead_code)]

use num_complex::Complex64;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rheolab::{MaterialParams, ModelKind};

/// Burgers coefficients `[p1, p2, q1, q2]` written out per model from the
/// closed-form reductions.
pub fn closed_form(params: &MaterialParams) -> [f64; 4] {
    match *params {
        MaterialParams::M1 {
            mu3,
            mu_p,
            eta1,
            eta2,
        } => [
            (eta1 * mu3 + eta2 * mu3 + eta2 * mu_p) / (2.0 * mu_p * mu3),
            eta1 * eta2 / (4.0 * mu_p * mu3),
            eta1,
            eta1 * eta2 * (mu_p + mu3) / (2.0 * mu_p * mu3),
        ],
        MaterialParams::M2 {
            mu2,
            mu3,
            eta1,
            eta_g,
        } => [
            (eta1 * mu3 + eta1 * mu2 + eta_g * mu2) / (2.0 * mu2 * mu3),
            eta1 * eta_g / (4.0 * mu2 * mu3),
            eta1 + eta_g,
            eta1 * eta_g / (2.0 * mu2),
        ],
        MaterialParams::M3 {
            mu2,
            mu3,
            eta1,
            eta2,
        } => [
            ((eta1 + eta2) * mu3 + eta1 * mu2) / (2.0 * mu2 * mu3),
            eta1 * eta2 / (4.0 * mu2 * mu3),
            eta1,
            eta1 * eta2 / (2.0 * mu2),
        ],
        MaterialParams::M4 {
            mu2,
            mu4,
            eta1,
            eta3,
        } => [
            (eta1 * mu4 + eta3 * mu2) / (2.0 * mu2 * mu4),
            eta1 * eta3 / (4.0 * mu2 * mu4),
            eta1 + eta3,
            eta1 * eta3 * (mu2 + mu4) / (2.0 * mu2 * mu4),
        ],
    }
}

/// `G*(iω)` from coefficients `[p1, p2, q1, q2]`.
pub fn modulus(c: [f64; 4], omega: f64) -> Complex64 {
    let s = Complex64::new(0.0, omega);
    (c[2] * s + c[3] * s * s) / (1.0 + c[0] * s + c[1] * s * s)
}

/// Fastest and slowest decay times of `1 + p1 s + p2 s²`.
pub fn time_scales(c: [f64; 4]) -> (f64, f64) {
    let (p1, p2) = (c[0], c[1]);
    let root = (p1 * p1 - 4.0 * p2).max(0.0).sqrt();
    let slow = 0.5 * (p1 + root);
    (p2 / slow, slow)
}

pub fn random_params(rng: &mut ChaCha8Rng, kind: ModelKind, lo: f64, hi: f64) -> MaterialParams {
    MaterialParams::from_values(kind, std::array::from_fn(|_| rng.gen_range(lo..=hi)))
}

/// One moderately contrasted parameter set per model.
pub fn reference_params(kind: ModelKind) -> MaterialParams {
    let v = match kind {
        ModelKind::M1 => [1.0, 2.0, 3.0, 0.5],
        ModelKind::M2 => [1.0, 2.0, 3.0, 0.5],
        ModelKind::M3 => [1.0, 1.5, 2.0, 0.8],
        ModelKind::M4 => [1.0, 3.0, 2.0, 0.2],
    };
    MaterialParams::from_values(kind, v)
}

pub fn rel_err(got: f64, want: f64) -> f64 {
    if want == 0.0 {
        got.abs()
    } else {
        ((got - want) / want).abs()
    }
}
