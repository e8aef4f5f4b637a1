//! The four three-dimensional Burgers-class models.
//!
//! Each model carries two left Cauchy–Green tensors measured from evolving
//! natural configurations, a neo-Hookean stored energy on each of them and a
//! quadratic rate of dissipation in two internal stretching tensors. With the
//! Lagrange multipliers eliminated the internal stretchings are explicit
//! deviators of the state, so every model closes as an ODE system in its two
//! tensors driven by the velocity gradient `L(t)`.
//!
//! State tensors, internal rates and material constants are paired in a fixed
//! order per model:
//!
//! | model | state `(a, b)` | rates `(first, second)` | moduli      | viscosities  |
//! |-------|----------------|-------------------------|-------------|--------------|
//! | 1     | `(B₃, B_p)`    | `(D₁, D₂)`              | `(μ₃, μ_p)` | `(η₁, η₂)`   |
//! | 2     | `(B₂, B₃)`     | `(D₁, D_G)`             | `(μ₂, μ₃)`  | `(η₁, η_G)`  |
//! | 3     | `(B₂, B₃)`     | `(D₁, D₂)`              | `(μ₂, μ₃)`  | `(η₁, η₂)`   |
//! | 4     | `(B₂, B₄)`     | `(D₁, D₃)`              | `(μ₂, μ₄)`  | `(η₁, η₃)`   |
//!
//! The skew parts of the intermediate velocity gradients are taken to be zero.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::kinematics::FlowProtocol;
use crate::ode::{rk4_step, step_count};
use crate::tensor::{
    congruence, convect, dev, sandwich, spd_sqrt_with_inverse, SymTensor3, Tensor3, TensorError,
};

/// Largest tolerated `|det B − 1|` before a run is aborted.
pub const DET_TOLERANCE: f64 = 1e-3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ModelKind {
    M1,
    M2,
    M3,
    M4,
}

impl ModelKind {
    pub const ALL: [ModelKind; 4] = [ModelKind::M1, ModelKind::M2, ModelKind::M3, ModelKind::M4];

    pub fn number(self) -> u8 {
        match self {
            ModelKind::M1 => 1,
            ModelKind::M2 => 2,
            ModelKind::M3 => 3,
            ModelKind::M4 => 4,
        }
    }

    pub fn from_number(n: u8) -> Option<ModelKind> {
        match n {
            1 => Some(ModelKind::M1),
            2 => Some(ModelKind::M2),
            3 => Some(ModelKind::M3),
            4 => Some(ModelKind::M4),
            _ => None,
        }
    }

    /// Parameter names in the order taken by [`MaterialParams::from_values`].
    pub fn param_names(self) -> [&'static str; 4] {
        match self {
            ModelKind::M1 => ["mu3", "mup", "eta1", "eta2"],
            ModelKind::M2 => ["mu2", "mu3", "eta1", "etag"],
            ModelKind::M3 => ["mu2", "mu3", "eta1", "eta2"],
            ModelKind::M4 => ["mu2", "mu4", "eta1", "eta3"],
        }
    }
}

impl fmt::Display for ModelKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.number())
    }
}

impl FromStr for ModelKind {
    type Err = ParamError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        let t = t
            .strip_prefix('M')
            .or_else(|| t.strip_prefix('m'))
            .unwrap_or(t);
        t.parse::<u8>()
            .ok()
            .and_then(ModelKind::from_number)
            .ok_or_else(|| ParamError::UnknownModel(s.to_string()))
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ParamError {
    #[error("unknown model `{0}` (expected 1, 2, 3 or 4)")]
    UnknownModel(String),
    #[error("model {model} is missing parameter `{name}`")]
    Missing {
        model: ModelKind,
        name: &'static str,
    },
    #[error("model {model} has no parameter `{name}`")]
    Unknown { model: ModelKind, name: String },
    #[error("parameter `{name}` = {value} is out of range ({requirement})")]
    OutOfRange {
        name: &'static str,
        value: f64,
        requirement: &'static str,
    },
}

/// Elastic moduli `μ` (stress) and viscosities `η` (stress·time) of one model.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum MaterialParams {
    M1 {
        mu3: f64,
        mu_p: f64,
        eta1: f64,
        eta2: f64,
    },
    M2 {
        mu2: f64,
        mu3: f64,
        eta1: f64,
        eta_g: f64,
    },
    M3 {
        mu2: f64,
        mu3: f64,
        eta1: f64,
        eta2: f64,
    },
    M4 {
        mu2: f64,
        mu4: f64,
        eta1: f64,
        eta3: f64,
    },
}

impl MaterialParams {
    /// Build from values ordered as [`ModelKind::param_names`].
    pub fn from_values(kind: ModelKind, v: [f64; 4]) -> MaterialParams {
        match kind {
            ModelKind::M1 => MaterialParams::M1 {
                mu3: v[0],
                mu_p: v[1],
                eta1: v[2],
                eta2: v[3],
            },
            ModelKind::M2 => MaterialParams::M2 {
                mu2: v[0],
                mu3: v[1],
                eta1: v[2],
                eta_g: v[3],
            },
            ModelKind::M3 => MaterialParams::M3 {
                mu2: v[0],
                mu3: v[1],
                eta1: v[2],
                eta2: v[3],
            },
            ModelKind::M4 => MaterialParams::M4 {
                mu2: v[0],
                mu4: v[1],
                eta1: v[2],
                eta3: v[3],
            },
        }
    }

    /// Values ordered as [`ModelKind::param_names`].
    pub fn values(&self) -> [f64; 4] {
        match *self {
            MaterialParams::M1 {
                mu3,
                mu_p,
                eta1,
                eta2,
            } => [mu3, mu_p, eta1, eta2],
            MaterialParams::M2 {
                mu2,
                mu3,
                eta1,
                eta_g,
            } => [mu2, mu3, eta1, eta_g],
            MaterialParams::M3 {
                mu2,
                mu3,
                eta1,
                eta2,
            } => [mu2, mu3, eta1, eta2],
            MaterialParams::M4 {
                mu2,
                mu4,
                eta1,
                eta3,
            } => [mu2, mu4, eta1, eta3],
        }
    }

    /// Build from `name = value` pairs; names are matched case-insensitively and
    /// underscores are ignored (`eta_g` and `etaG` both name `η_G`).
    pub fn from_pairs<'a>(
        kind: ModelKind,
        pairs: impl IntoIterator<Item = (&'a str, f64)>,
    ) -> Result<MaterialParams, ParamError> {
        let names = kind.param_names();
        let mut values = [None; 4];
        for (name, value) in pairs {
            let key: String = name
                .chars()
                .filter(|c| *c != '_')
                .map(|c| c.to_ascii_lowercase())
                .collect();
            let slot = names
                .iter()
                .position(|n| *n == key)
                .ok_or_else(|| ParamError::Unknown {
                    model: kind,
                    name: name.to_string(),
                })?;
            values[slot] = Some(value);
        }
        let mut v = [0.0; 4];
        for (i, name) in names.iter().enumerate() {
            v[i] = values[i].ok_or(ParamError::Missing { model: kind, name })?;
        }
        let params = MaterialParams::from_values(kind, v);
        params.validate()?;
        Ok(params)
    }

    pub fn kind(&self) -> ModelKind {
        match self {
            MaterialParams::M1 { .. } => ModelKind::M1,
            MaterialParams::M2 { .. } => ModelKind::M2,
            MaterialParams::M3 { .. } => ModelKind::M3,
            MaterialParams::M4 { .. } => ModelKind::M4,
        }
    }

    /// Moduli paired with the state tensors `(a, b)`.
    pub fn moduli(&self) -> (f64, f64) {
        match *self {
            MaterialParams::M1 { mu3, mu_p, .. } => (mu3, mu_p),
            MaterialParams::M2 { mu2, mu3, .. } | MaterialParams::M3 { mu2, mu3, .. } => (mu2, mu3),
            MaterialParams::M4 { mu2, mu4, .. } => (mu2, mu4),
        }
    }

    /// Viscosities paired with the internal rates `(first, second)`.
    pub fn viscosities(&self) -> (f64, f64) {
        match *self {
            MaterialParams::M1 { eta1, eta2, .. } | MaterialParams::M3 { eta1, eta2, .. } => {
                (eta1, eta2)
            }
            MaterialParams::M2 { eta1, eta_g, .. } => (eta1, eta_g),
            MaterialParams::M4 { eta1, eta3, .. } => (eta1, eta3),
        }
    }

    /// Moduli must be finite and non-negative (a zero modulus switches that
    /// spring off); viscosities must be finite and strictly positive.
    pub fn validate(&self) -> Result<(), ParamError> {
        let names = self.kind().param_names();
        for (i, value) in self.values().into_iter().enumerate() {
            let is_modulus = i < 2;
            let ok = value.is_finite()
                && if is_modulus {
                    value >= 0.0
                } else {
                    value > 0.0
                };
            if !ok {
                return Err(ParamError::OutOfRange {
                    name: names[i],
                    value,
                    requirement: if is_modulus {
                        "finite, >= 0"
                    } else {
                        "finite, > 0"
                    },
                });
            }
        }
        Ok(())
    }

    /// All four constants finite and strictly positive.
    pub fn validate_positive(&self) -> Result<(), ParamError> {
        let names = self.kind().param_names();
        for (i, value) in self.values().into_iter().enumerate() {
            if !(value.is_finite() && value > 0.0) {
                return Err(ParamError::OutOfRange {
                    name: names[i],
                    value,
                    requirement: "finite, > 0",
                });
            }
        }
        Ok(())
    }
}

impl fmt::Display for MaterialParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = self.kind().param_names();
        let values = self.values();
        for (i, (n, v)) in names.iter().zip(values).enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{n}={v:?}")?;
        }
        Ok(())
    }
}

/// The model's two configuration tensors, ordered as in the module table.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelState {
    pub a: SymTensor3,
    pub b: SymTensor3,
}

impl ModelState {
    /// Virgin, stress-free body.
    pub const REST: ModelState = ModelState {
        a: SymTensor3::IDENTITY,
        b: SymTensor3::IDENTITY,
    };

    fn to_array(self) -> [f64; 12] {
        let (a, b) = (self.a.components(), self.b.components());
        std::array::from_fn(|i| if i < 6 { a[i] } else { b[i - 6] })
    }

    fn from_array(y: &[f64; 12]) -> ModelState {
        ModelState {
            a: SymTensor3::from_components(std::array::from_fn(|i| y[i])),
            b: SymTensor3::from_components(std::array::from_fn(|i| y[i + 6])),
        }
    }

    pub fn rotate(&self, q: &Tensor3) -> ModelState {
        ModelState {
            a: self.a.rotate(q),
            b: self.b.rotate(q),
        }
    }

    pub fn norm(&self) -> f64 {
        (self.a.ddot(&self.a) + self.b.ddot(&self.b)).sqrt()
    }
}

/// Internal stretching tensors, ordered as in the module table.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InternalRates {
    pub first: SymTensor3,
    pub second: SymTensor3,
}

/// Square roots `(V, V⁻¹)` of both state tensors plus the internal rates.
struct Evaluation {
    va: (SymTensor3, SymTensor3),
    vb: (SymTensor3, SymTensor3),
    rates: InternalRates,
}

fn evaluate(params: &MaterialParams, state: &ModelState) -> Result<Evaluation, TensorError> {
    let va = spd_sqrt_with_inverse(&state.a)?;
    let vb = spd_sqrt_with_inverse(&state.b)?;
    let rates = match *params {
        MaterialParams::M1 {
            mu3,
            mu_p,
            eta1,
            eta2,
        } => {
            // a = B₃, b = B_p. With F₂ = V₃⁻¹V_p the coupling term
            // ½(F₂ᵀB₃F₂⁻ᵀ + F₂⁻¹B₃F₂) is the symmetric part of V_p B₃ V_p⁻¹.
            let (vp, vp_inv) = vb;
            let coupling = SymTensor3::sym_part(&sandwich(&vp, &state.a, &vp_inv));
            InternalRates {
                first: dev(&(mu_p * state.b + mu3 * coupling)) * (1.0 / eta1),
                second: dev(&state.a) * (mu3 / eta2),
            }
        }
        MaterialParams::M2 {
            mu2,
            mu3,
            eta1,
            eta_g,
        } => InternalRates {
            first: dev(&state.a) * (mu2 / eta1),
            second: dev(&(mu3 * state.b - mu2 * state.a)) * (1.0 / eta_g),
        },
        MaterialParams::M3 {
            mu2,
            mu3,
            eta1,
            eta2,
        } => {
            // a = B₂, b = B₃
            let (v2, v2_inv) = va;
            let coupling = SymTensor3::sym_part(&sandwich(&v2, &state.b, &v2_inv));
            InternalRates {
                first: dev(&coupling) * (mu3 / eta1),
                second: dev(&(mu3 * state.b - mu2 * state.a)) * (1.0 / eta2),
            }
        }
        MaterialParams::M4 {
            mu2,
            mu4,
            eta1,
            eta3,
        } => InternalRates {
            first: dev(&state.a) * (mu2 / eta1),
            second: dev(&state.b) * (mu4 / eta3),
        },
    };
    Ok(Evaluation { va, vb, rates })
}

/// Internal stretching tensors with the multipliers eliminated.
pub fn internal_rates(
    params: &MaterialParams,
    state: &ModelState,
) -> Result<InternalRates, TensorError> {
    evaluate(params, state).map(|e| e.rates)
}

/// Time derivative of the state under velocity gradient `l`.
pub fn state_rate(
    params: &MaterialParams,
    state: &ModelState,
    l: &Tensor3,
) -> Result<ModelState, TensorError> {
    let Evaluation { va, vb, rates } = evaluate(params, state)?;
    let InternalRates { first, second } = rates;
    let (a, b) = (&state.a, &state.b);

    let (a_dot, b_dot) = match params {
        MaterialParams::M1 { .. } => {
            // a = B₃ convected with L_p = L − V_p D₁ V_p⁻¹; b = B_p with L.
            let (v3, _) = va;
            let (vp, vp_inv) = vb;
            let l_p = *l - sandwich(&vp, &first, &vp_inv);
            (
                convect(a, &l_p) - 2.0 * congruence(&v3, &second),
                convect(b, l) - 2.0 * congruence(&vp, &first),
            )
        }
        MaterialParams::M2 { .. } => {
            // a = B₂ convected with L_G = D_G; b = B₃ with L.
            let (v2, _) = va;
            let (v3, _) = vb;
            (
                convect(a, &second.to_full()) - 2.0 * congruence(&v2, &first),
                convect(b, l) - 2.0 * congruence(&v3, &second),
            )
        }
        MaterialParams::M3 { .. } => {
            // a = B₂ convected with L_G = D₂ + V₂D₁V₂⁻¹;
            // b = B₃ convected with L_p = L − (V₃V₂) D₁ (V₃V₂)⁻¹.
            let (v2, v2_inv) = va;
            let (v3, v3_inv) = vb;
            let inner = sandwich(&v2, &first, &v2_inv);
            let l_g = second.to_full() + inner;
            let l_p = *l - v3.to_full() * inner * v3_inv.to_full();
            (
                convect(a, &l_g) - 2.0 * congruence(&v2, &first),
                convect(b, &l_p) - 2.0 * congruence(&v3, &second),
            )
        }
        MaterialParams::M4 { .. } => {
            let (v2, _) = va;
            let (v4, _) = vb;
            (
                convect(a, l) - 2.0 * congruence(&v2, &first),
                convect(b, l) - 2.0 * congruence(&v4, &second),
            )
        }
    };
    Ok(ModelState { a: a_dot, b: b_dot })
}

/// Extra stress `T + pI`; the reaction pressure is left out.
pub fn extra_stress(params: &MaterialParams, state: &ModelState) -> SymTensor3 {
    match *params {
        MaterialParams::M1 { mu3, mu_p, .. } => mu3 * state.a + mu_p * state.b,
        MaterialParams::M2 { mu3, .. } | MaterialParams::M3 { mu3, .. } => mu3 * state.b,
        MaterialParams::M4 { mu2, mu4, .. } => mu2 * state.a + mu4 * state.b,
    }
}

/// Stored energy per unit volume (`ρ = 1`).
pub fn stored_energy(params: &MaterialParams, state: &ModelState) -> f64 {
    let (ma, mb) = params.moduli();
    0.5 * ma * (state.a.trace() - 3.0) + 0.5 * mb * (state.b.trace() - 3.0)
}

pub fn dissipation_rate(params: &MaterialParams, rates: &InternalRates) -> f64 {
    let (ea, eb) = params.viscosities();
    ea * rates.first.ddot(&rates.first) + eb * rates.second.ddot(&rates.second)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimConfig {
    pub t_end: f64,
    pub dt: f64,
    /// Record every `record_every` steps (the final step is always recorded).
    pub record_every: usize,
    /// Report `T` with `tr T = 0` instead of the extra stress.
    pub normalize_pressure: bool,
}

impl SimConfig {
    pub fn new(t_end: f64, dt: f64) -> SimConfig {
        SimConfig {
            t_end,
            dt,
            record_every: 1,
            normalize_pressure: false,
        }
    }

    pub fn record_every(mut self, n: usize) -> SimConfig {
        self.record_every = n;
        self
    }

    pub fn validate(&self) -> Result<(), SimError> {
        if !(self.dt > 0.0 && self.dt.is_finite()) {
            return Err(SimError::InvalidConfig(format!(
                "dt must be > 0, got {}",
                self.dt
            )));
        }
        if !(self.t_end >= 0.0 && self.t_end.is_finite()) {
            return Err(SimError::InvalidConfig(format!(
                "t_end must be >= 0, got {}",
                self.t_end
            )));
        }
        if self.record_every == 0 {
            return Err(SimError::InvalidConfig("record_every must be >= 1".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SimError {
    #[error("integration failed at t = {t}: {reason}; try a smaller dt")]
    StepFailure { t: f64, reason: String },
    #[error("invalid simulation setup: {0}")]
    InvalidConfig(String),
    #[error(transparent)]
    Params(#[from] ParamError),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimRecord {
    pub t: f64,
    /// Extra stress, or `T` with `tr T = 0` when pressure normalization is on.
    pub stress: SymTensor3,
    pub n1: f64,
    pub n2: f64,
    pub psi: f64,
    pub xi: f64,
    /// Stress power `S : D`.
    pub stress_power: f64,
    pub det_a: f64,
    pub det_b: f64,
}

/// Integrate a model under a flow protocol from the virgin state.
pub fn simulate(
    params: &MaterialParams,
    protocol: &FlowProtocol,
    config: &SimConfig,
) -> Result<Vec<SimRecord>, SimError> {
    protocol
        .validate()
        .map_err(|e| SimError::InvalidConfig(e.to_string()))?;
    simulate_with(
        params,
        ModelState::REST,
        |t| protocol.velocity_gradient(t),
        config,
    )
}

/// Integrate a model under an arbitrary velocity-gradient history.
pub fn simulate_with(
    params: &MaterialParams,
    initial: ModelState,
    velocity_gradient: impl Fn(f64) -> Tensor3,
    config: &SimConfig,
) -> Result<Vec<SimRecord>, SimError> {
    params.validate()?;
    config.validate()?;
    Ok(trajectory(params, initial, velocity_gradient, config)?
        .into_iter()
        .map(|(record, _)| record)
        .collect())
}

/// Like [`simulate_with`] but also returns the state at each record.
pub fn trajectory(
    params: &MaterialParams,
    initial: ModelState,
    velocity_gradient: impl Fn(f64) -> Tensor3,
    config: &SimConfig,
) -> Result<Vec<(SimRecord, ModelState)>, SimError> {
    params.validate()?;
    config.validate()?;
    let n = step_count(config.t_end, config.dt);
    let mut records = Vec::with_capacity(n / config.record_every + 2);
    let mut y = initial.to_array();

    records.push((
        record(params, &initial, 0.0, &velocity_gradient(0.0), config)?,
        initial,
    ));
    for k in 0..n {
        let t = k as f64 * config.dt;
        y = rk4_step(
            |ts, ys: &[f64; 12]| {
                let state = ModelState::from_array(ys);
                let rate = state_rate(params, &state, &velocity_gradient(ts)).map_err(|e| {
                    SimError::StepFailure {
                        t: ts,
                        reason: e.to_string(),
                    }
                })?;
                Ok::<_, SimError>(rate.to_array())
            },
            t,
            &y,
            config.dt,
        )?;
        let step = k + 1;
        if step.is_multiple_of(config.record_every) || step == n {
            let t_now = step as f64 * config.dt;
            let state = ModelState::from_array(&y);
            records.push((
                record(params, &state, t_now, &velocity_gradient(t_now), config)?,
                state,
            ));
        }
    }
    Ok(records)
}

fn record(
    params: &MaterialParams,
    state: &ModelState,
    t: f64,
    l: &Tensor3,
    config: &SimConfig,
) -> Result<SimRecord, SimError> {
    let failure = |reason: String| SimError::StepFailure { t, reason };
    if !state.a.is_finite() || !state.b.is_finite() {
        return Err(failure("state is not finite".into()));
    }
    let rates = internal_rates(params, state).map_err(|e| failure(e.to_string()))?;
    // both tensors must stay SPD even when a model's rates only need one root
    for (name, tensor) in [("a", &state.a), ("b", &state.b)] {
        spd_sqrt_with_inverse(tensor).map_err(|e| failure(format!("state tensor {name}: {e}")))?;
    }
    let (det_a, det_b) = (state.a.det(), state.b.det());
    for (name, det) in [("a", det_a), ("b", det_b)] {
        if (det - 1.0).abs() > DET_TOLERANCE {
            return Err(failure(format!(
                "det of state tensor {name} drifted to {det}"
            )));
        }
    }
    let extra = extra_stress(params, state);
    let stress = if config.normalize_pressure {
        dev(&extra)
    } else {
        extra
    };
    let d = SymTensor3::sym_part(l);
    Ok(SimRecord {
        t,
        stress,
        n1: extra[(0, 0)] - extra[(1, 1)],
        n2: extra[(1, 1)] - extra[(2, 2)],
        psi: stored_energy(params, state),
        xi: dissipation_rate(params, &rates),
        stress_power: extra.ddot(&d),
        det_a,
        det_b,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn unit_params(kind: ModelKind) -> MaterialParams {
        MaterialParams::from_values(kind, [1.0, 1.0, 2.0, 2.0])
    }

    #[test]
    fn rest_has_zero_rates_everywhere() {
        for kind in ModelKind::ALL {
            let p = unit_params(kind);
            let r = internal_rates(&p, &ModelState::REST).unwrap();
            assert_eq!(r.first.norm(), 0.0);
            assert_eq!(r.second.norm(), 0.0);
            let rate = state_rate(&p, &ModelState::REST, &Tensor3::ZERO).unwrap();
            assert_eq!(rate.norm(), 0.0, "{kind}");
        }
    }

    #[test]
    fn model4_direct_substitution() {
        let p = MaterialParams::M4 {
            mu2: 1.0,
            mu4: 1.0,
            eta1: 2.0,
            eta3: 2.0,
        };
        let s = ModelState {
            a: SymTensor3::diag(1.0 + 2e-3, 1.0 - 1e-3, 1.0 - 1e-3),
            b: SymTensor3::IDENTITY,
        };
        let r = internal_rates(&p, &s).unwrap();
        let expected = SymTensor3::diag(1e-3, -5e-4, -5e-4);
        assert!((r.first - expected).norm() < 1e-17);
    }

    #[test]
    fn model2_cancellation_with_equal_moduli() {
        let p = MaterialParams::M2 {
            mu2: 1.0,
            mu3: 1.0,
            eta1: 2.0,
            eta_g: 3.0,
        };
        let b = SymTensor3::new(1.2, 0.9, 1.0 / (1.2 * 0.9) + 0.01, 0.05, 0.0, -0.02);
        let s = ModelState { a: b, b };
        let r = internal_rates(&p, &s).unwrap();
        assert_eq!(r.second.norm(), 0.0);
        assert!((r.first - dev(&b) * 0.5).norm() < 1e-16);
    }

    #[test]
    fn stress_examples() {
        let p = MaterialParams::M1 {
            mu3: 1.5,
            mu_p: 0.5,
            eta1: 1.0,
            eta2: 1.0,
        };
        let s = extra_stress(&p, &ModelState::REST);
        assert_eq!(s, SymTensor3::IDENTITY * 2.0);

        let p = MaterialParams::M4 {
            mu2: 1.0,
            mu4: 1.0,
            eta1: 1.0,
            eta3: 1.0,
        };
        let b = SymTensor3::diag(2.0, 1.0, 0.5);
        assert_eq!(
            extra_stress(&p, &ModelState { a: b, b }),
            SymTensor3::diag(4.0, 2.0, 1.0)
        );

        let p = MaterialParams::M2 {
            mu2: 1.0,
            mu3: 2.0,
            eta1: 1.0,
            eta_g: 1.0,
        };
        let b3 = SymTensor3::new(1.0, 1.0, 1.0, 0.1, 0.0, 0.0);
        let s = extra_stress(
            &p,
            &ModelState {
                a: SymTensor3::IDENTITY,
                b: b3,
            },
        );
        assert!((s[(0, 1)] - 0.2).abs() < 1e-16);
    }

    #[test]
    fn energy_and_dissipation_examples() {
        assert_eq!(
            stored_energy(&unit_params(ModelKind::M3), &ModelState::REST),
            0.0
        );
        let p = MaterialParams::M4 {
            mu2: 1.0,
            mu4: 2.0,
            eta1: 2.0,
            eta3: 1.0,
        };
        let s = ModelState {
            a: SymTensor3::diag(1.2, 1.0, 1.0),
            b: SymTensor3::diag(1.1, 1.0, 1.0),
        };
        assert!((stored_energy(&p, &s) - 0.2).abs() < 1e-15);

        let d1 = SymTensor3::diag(0.5, 0.0, 0.0);
        let rates = InternalRates {
            first: d1,
            second: SymTensor3::ZERO,
        };
        assert_eq!(dissipation_rate(&p, &rates), 0.5);
        let zero = InternalRates {
            first: SymTensor3::ZERO,
            second: SymTensor3::ZERO,
        };
        assert_eq!(dissipation_rate(&p, &zero), 0.0);
    }

    #[test]
    fn model4_linearized_relaxation_rate() {
        let p = MaterialParams::M4 {
            mu2: 1.5,
            mu4: 1.0,
            eta1: 2.0,
            eta3: 1.0,
        };
        let beta = SymTensor3::new(4e-5, -1e-5, -3e-5, 5e-5, 2e-5, -4e-5);
        let beta = beta * (1e-4 / beta.norm());
        let s = ModelState {
            a: SymTensor3::IDENTITY + beta,
            b: SymTensor3::IDENTITY,
        };
        let rate = state_rate(&p, &s, &Tensor3::ZERO).unwrap();
        let linear = beta * (-2.0 * 1.5 / 2.0);
        // first-order agreement: residual is O(‖β‖²)
        assert!((rate.a - linear).norm() < 1e-7, "{:?}", rate.a - linear);
    }

    #[test]
    fn parameter_parsing() {
        let p = MaterialParams::from_pairs(
            ModelKind::M2,
            [("mu2", 1.0), ("mu3", 2.0), ("eta1", 3.0), ("eta_G", 4.0)],
        )
        .unwrap();
        assert_eq!(
            p,
            MaterialParams::M2 {
                mu2: 1.0,
                mu3: 2.0,
                eta1: 3.0,
                eta_g: 4.0
            }
        );
        assert!(matches!(
            MaterialParams::from_pairs(ModelKind::M4, [("mu2", 1.0)]),
            Err(ParamError::Missing { name: "mu4", .. })
        ));
        assert!(matches!(
            MaterialParams::from_pairs(
                ModelKind::M4,
                [("mu2", 1.0), ("mu4", 1.0), ("eta1", 0.0), ("eta3", 1.0)]
            ),
            Err(ParamError::OutOfRange { name: "eta1", .. })
        ));
        assert!("5".parse::<ModelKind>().is_err());
        assert_eq!("M3".parse::<ModelKind>().unwrap(), ModelKind::M3);
    }

    #[test]
    fn rest_protocol_is_a_fixed_point() {
        for kind in ModelKind::ALL {
            let p = unit_params(kind);
            let recs = simulate(&p, &FlowProtocol::Rest, &SimConfig::new(1.0, 0.1)).unwrap();
            assert_eq!(recs.len(), 11);
            for r in &recs {
                assert_eq!(r.stress, recs[0].stress);
                assert_eq!(r.xi, 0.0);
                assert_eq!(r.psi, 0.0);
            }
        }
    }

    #[test]
    fn record_stride_keeps_final_step() {
        let p = unit_params(ModelKind::M4);
        let cfg = SimConfig::new(1.0, 0.1).record_every(3);
        let recs = simulate(&p, &FlowProtocol::SimpleShear { rate: 0.1 }, &cfg).unwrap();
        let times: Vec<f64> = recs.iter().map(|r| (r.t * 10.0).round()).collect();
        assert_eq!(times, vec![0.0, 3.0, 6.0, 9.0, 10.0]);
    }

    #[test]
    fn blow_up_reports_step_failure() {
        let p = MaterialParams::M4 {
            mu2: 1.0,
            mu4: 1.0,
            eta1: 0.01,
            eta3: 0.01,
        };
        let err = simulate(
            &p,
            &FlowProtocol::SimpleShear { rate: 50.0 },
            &SimConfig::new(1.0, 0.05),
        )
        .unwrap_err();
        assert!(matches!(err, SimError::StepFailure { .. }), "{err}");
    }

    #[test]
    fn invalid_config_is_rejected() {
        let p = unit_params(ModelKind::M1);
        assert!(matches!(
            simulate(&p, &FlowProtocol::Rest, &SimConfig::new(1.0, 0.0)),
            Err(SimError::InvalidConfig(_))
        ));
    }
}
