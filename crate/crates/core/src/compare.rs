//! 3D-versus-1D comparison and oscillatory moduli extraction.

use std::f64::consts::TAU;

use thiserror::Error;

use crate::burgers::{
    coeffs_from_model, integrate_burgers, BurgersCoeffs, BurgersError, BurgersInit,
};
use crate::fit::{extract_moduli, TRANSIENT_FRACTION};
use crate::kinematics::{DriveFamily, FlowProtocol, UNIAXIAL_FACTOR};
use crate::models::{simulate, MaterialParams, ParamError, SimConfig, SimError, SimRecord};
use crate::ode::{step_count, TimeGrid};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CompareError {
    #[error(transparent)]
    Sim(#[from] SimError),
    #[error(transparent)]
    Burgers(#[from] BurgersError),
    #[error(transparent)]
    Params(#[from] ParamError),
    #[error("could not fit a sinusoid to the stress at omega = {omega}")]
    Fit { omega: f64 },
    #[error(
        "oscillatory run at omega = {omega} needs {steps} steps (limit {MAX_OSCILLATION_STEPS})"
    )]
    TooManySteps { omega: f64, steps: usize },
}

/// Upper bound on the length of one oscillatory verification run.
pub const MAX_OSCILLATION_STEPS: usize = 20_000_000;

/// Recorded samples are thinned to at most this many per run.
const MAX_OSCILLATION_RECORDS: usize = 200_000;

/// The scalar the 3D stress contributes to a comparison: `T₁₂` for shear,
/// `T₁₁ − T₂₂` for uniaxial extension.
pub fn observed_stress(record: &SimRecord, family: DriveFamily) -> f64 {
    match family {
        DriveFamily::Shear => record.stress[(0, 1)],
        DriveFamily::Uniaxial => record.n1,
    }
}

/// What the 1D stress predicts for [`observed_stress`].
pub fn predicted_stress(sigma: f64, family: DriveFamily) -> f64 {
    match family {
        DriveFamily::Shear => sigma,
        DriveFamily::Uniaxial => UNIAXIAL_FACTOR * sigma,
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ComparisonSample {
    pub t: f64,
    pub observed: f64,
    pub predicted: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Comparison {
    pub coeffs: BurgersCoeffs,
    pub family: DriveFamily,
    pub samples: Vec<ComparisonSample>,
    /// `max |observed − predicted| / max |predicted|`, or 0 when the prediction vanishes.
    pub max_rel_deviation: f64,
}

/// Run the 3D model and its mapped 1D law under the same protocol and
/// measure how far the linearized prediction is from the full response.
pub fn compare_3d_1d(
    params: &MaterialParams,
    protocol: &FlowProtocol,
    config: &SimConfig,
) -> Result<Comparison, CompareError> {
    let coeffs = coeffs_from_model(params)?;
    let records = simulate(params, protocol, config)?;
    let grid = TimeGrid::new(config.t_end, config.dt).record_every(config.record_every);
    let oned = integrate_burgers(
        &coeffs,
        |t| protocol.drive_1d(t),
        &grid,
        BurgersInit::Virgin,
    )?;
    let family = protocol.family();

    let samples: Vec<ComparisonSample> = records
        .iter()
        .zip(&oned)
        .map(|(r, s)| ComparisonSample {
            t: r.t,
            observed: observed_stress(r, family),
            predicted: predicted_stress(s.sigma, family),
        })
        .collect();
    let scale = samples
        .iter()
        .map(|s| s.predicted.abs())
        .fold(0.0, f64::max);
    let worst = samples
        .iter()
        .map(|s| (s.observed - s.predicted).abs())
        .fold(0.0, f64::max);
    let max_rel_deviation = if scale > 0.0 { worst / scale } else { 0.0 };
    Ok(Comparison {
        coeffs,
        family,
        samples,
        max_rel_deviation,
    })
}

/// Time constants `τ₁ ≤ τ₂` of the homogeneous law `σ + p₁σ̇ + p₂σ̈ = 0`.
fn relaxation_times(c: &BurgersCoeffs) -> (f64, f64) {
    if c.p2 > 0.0 {
        let root = c.discriminant().max(0.0).sqrt();
        let slow = 0.5 * (c.p1 + root);
        (c.p2 / slow, slow)
    } else {
        (c.p1, c.p1)
    }
}

/// Time step and duration used for an oscillatory run at `omega`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OscillationPlan {
    pub dt: f64,
    pub t_end: f64,
}

impl OscillationPlan {
    /// Resolve both the period and the fastest relaxation, and run long enough
    /// that the fitted window starts well after the slowest transient and
    /// spans at least two periods.
    pub fn for_coeffs(coeffs: &BurgersCoeffs, omega: f64) -> OscillationPlan {
        let period = TAU / omega;
        let (fast, slow) = relaxation_times(coeffs);
        let dt = (period / 200.0).min(fast / 20.0);
        let t_end =
            (30.0 * slow / TRANSIENT_FRACTION).max(2.0 * period / (1.0 - TRANSIENT_FRACTION));
        OscillationPlan { dt, t_end }
    }
}

/// `(G′, G″)` recovered from `T₁₂` of a 3D oscillatory-shear run with shear
/// amplitude `gamma0`, normalized by the matching 1D strain amplitude `γ₀/2`.
pub fn moduli_from_3d(
    params: &MaterialParams,
    omega: f64,
    gamma0: f64,
) -> Result<(f64, f64), CompareError> {
    let coeffs = coeffs_from_model(params)?;
    let plan = OscillationPlan::for_coeffs(&coeffs, omega);
    let steps = step_count(plan.t_end, plan.dt);
    if steps > MAX_OSCILLATION_STEPS {
        return Err(CompareError::TooManySteps { omega, steps });
    }
    let protocol = FlowProtocol::OscillatoryShear { gamma0, omega };
    let config =
        SimConfig::new(plan.t_end, plan.dt).record_every(steps.div_ceil(MAX_OSCILLATION_RECORDS));
    let records = simulate(params, &protocol, &config)?;
    let times: Vec<f64> = records.iter().map(|r| r.t).collect();
    let stress: Vec<f64> = records.iter().map(|r| r.stress[(0, 1)]).collect();
    extract_moduli(&times, &stress, 0.5 * gamma0, omega).ok_or(CompareError::Fit { omega })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::burgers::complex_modulus;
    use crate::models::ModelKind;

    #[test]
    fn rest_protocol_has_zero_deviation() {
        let p = MaterialParams::from_values(ModelKind::M2, [1.0, 2.0, 0.5, 1.5]);
        let c = compare_3d_1d(&p, &FlowProtocol::Rest, &SimConfig::new(1.0, 0.01)).unwrap();
        assert_eq!(c.max_rel_deviation, 0.0);
    }

    #[test]
    fn small_shear_matches_linear_response() {
        let p = MaterialParams::from_values(ModelKind::M4, [1.0, 1.0, 2.0, 2.0]);
        let protocol = FlowProtocol::SimpleShear { rate: 1e-4 };
        let c = compare_3d_1d(&p, &protocol, &SimConfig::new(1.0, 1e-3)).unwrap();
        assert!(c.max_rel_deviation <= 1e-2, "{}", c.max_rel_deviation);
    }

    #[test]
    fn oscillatory_extraction_matches_analytic() {
        let p = MaterialParams::from_values(ModelKind::M3, [1.0, 1.0, 2.0, 2.0]);
        let coeffs = coeffs_from_model(&p).unwrap();
        let (gp, gpp) = moduli_from_3d(&p, 1.0, 1e-3).unwrap();
        let (ap, app) = complex_modulus(&coeffs, 1.0);
        assert!((gp - ap).abs() <= 0.02 * ap.abs(), "{gp} vs {ap}");
        assert!((gpp - app).abs() <= 0.02 * app.abs(), "{gpp} vs {app}");
    }
}
