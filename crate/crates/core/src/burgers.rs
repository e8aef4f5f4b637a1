//! The one-dimensional Burgers law `σ + p₁σ̇ + p₂σ̈ = q₁ε̇ + q₂ε̈`.
//!
//! This module holds the closed-form coefficient maps of the four 3D models,
//! a direct integrator of the second-order law, an integrator of the
//! corresponding spring-dashpot element networks (used as an independent
//! oracle), creep under constant stress and the analytic complex modulus.
//!
//! Springs follow `σ = 2με` and dashpots `σ = ηε̇`.

use num_complex::Complex64;
use thiserror::Error;

use crate::kinematics::Drive;
use crate::models::{MaterialParams, ModelKind, ParamError};
use crate::ode::{rk4_step, TimeGrid};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BurgersCoeffs {
    /// time
    pub p1: f64,
    /// time²
    pub p2: f64,
    /// stress·time
    pub q1: f64,
    /// stress·time²
    pub q2: f64,
}

impl BurgersCoeffs {
    pub fn new(p1: f64, p2: f64, q1: f64, q2: f64) -> BurgersCoeffs {
        BurgersCoeffs { p1, p2, q1, q2 }
    }

    pub fn as_array(&self) -> [f64; 4] {
        [self.p1, self.p2, self.q1, self.q2]
    }

    /// `p₁² − 4p₂`; non-negative when both relaxation modes are real.
    pub fn discriminant(&self) -> f64 {
        self.p1 * self.p1 - 4.0 * self.p2
    }

    /// Instantaneous (high-frequency) modulus `q₂/p₂`.
    pub fn glassy_modulus(&self) -> f64 {
        self.q2 / self.p2
    }

    fn validate(&self) -> Result<(), BurgersError> {
        let ok = self.as_array().iter().all(|c| c.is_finite() && *c >= 0.0);
        if ok {
            Ok(())
        } else {
            Err(BurgersError::InvalidCoefficients(*self))
        }
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum BurgersError {
    #[error("coefficients must be finite and non-negative, got {0:?}")]
    InvalidCoefficients(BurgersCoeffs),
    #[error("invalid time grid (dt > 0, t_end >= 0, record_every >= 1 required)")]
    InvalidGrid,
    #[error("{0}")]
    Degenerate(&'static str),
    #[error(transparent)]
    Params(#[from] ParamError),
}

/// Closed-form Burgers coefficients of each 3D model.
///
/// Model 4 uses `p₂ = η₁η₃/(4μ₂μ₄)`.
pub fn coeffs_from_model(params: &MaterialParams) -> Result<BurgersCoeffs, ParamError> {
    params.validate_positive()?;
    let c = match *params {
        MaterialParams::M1 {
            mu3,
            mu_p,
            eta1,
            eta2,
        } => BurgersCoeffs {
            p1: eta2 / (2.0 * mu_p) + eta2 / (2.0 * mu3) + eta1 / (2.0 * mu_p),
            p2: eta1 * eta2 / (4.0 * mu_p * mu3),
            q1: eta1,
            q2: eta1 * eta2 / (2.0 * mu_p) * (1.0 + mu_p / mu3),
        },
        MaterialParams::M2 {
            mu2,
            mu3,
            eta1,
            eta_g,
        } => BurgersCoeffs {
            p1: eta1 / (2.0 * mu2) + eta1 / (2.0 * mu3) + eta_g / (2.0 * mu3),
            p2: eta1 * eta_g / (4.0 * mu2 * mu3),
            q1: eta1 + eta_g,
            q2: eta1 * eta_g / (2.0 * mu2),
        },
        MaterialParams::M3 {
            mu2,
            mu3,
            eta1,
            eta2,
        } => BurgersCoeffs {
            p1: eta1 / (2.0 * mu2) + eta2 / (2.0 * mu2) + eta1 / (2.0 * mu3),
            p2: eta1 * eta2 / (4.0 * mu2 * mu3),
            q1: eta1,
            q2: eta1 * eta2 / (2.0 * mu2),
        },
        MaterialParams::M4 {
            mu2,
            mu4,
            eta1,
            eta3,
        } => BurgersCoeffs {
            p1: eta1 / (2.0 * mu2) + eta3 / (2.0 * mu4),
            p2: eta1 * eta3 / (4.0 * mu2 * mu4),
            q1: eta1 + eta3,
            q2: eta1 * eta3 / (2.0 * mu2) * (1.0 + mu2 / mu4),
        },
    };
    Ok(c)
}

/// Initial condition for [`integrate_burgers`].
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub enum BurgersInit {
    /// Body at rest before `t = 0`; `(σ, σ̇)` at `0⁺` follow from the jump
    /// conditions of the law given the drive at `t = 0`. This is `(0, 0)`
    /// whenever `ε(0) = ε̇(0) = 0`.
    #[default]
    Virgin,
    Given {
        sigma: f64,
        sigma_dot: f64,
    },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StressSample {
    pub t: f64,
    pub eps: f64,
    pub sigma: f64,
}

/// `(σ, σ̇)` at `0⁺` for a body at rest before the drive starts.
pub fn virgin_start(coeffs: &BurgersCoeffs, d0: &Drive) -> (f64, f64) {
    let BurgersCoeffs { p1, p2, q1, q2 } = *coeffs;
    if p2 > 0.0 {
        let sigma = q2 * d0.eps / p2;
        (sigma, (q1 * d0.eps + q2 * d0.eps_dot - p1 * sigma) / p2)
    } else if p1 > 0.0 {
        ((q1 * d0.eps + q2 * d0.eps_dot) / p1, 0.0)
    } else {
        (q1 * d0.eps_dot + q2 * d0.eps_ddot, 0.0)
    }
}

/// Integrate the Burgers law as a first-order system in `(σ, σ̇)` with RK4.
///
/// `p₂ = 0` reduces the law to first order in `σ`, and `p₁ = p₂ = 0` to the
/// algebraic relation `σ = q₁ε̇ + q₂ε̈`.
pub fn integrate_burgers(
    coeffs: &BurgersCoeffs,
    drive: impl Fn(f64) -> Drive,
    grid: &TimeGrid,
    init: BurgersInit,
) -> Result<Vec<StressSample>, BurgersError> {
    coeffs.validate()?;
    if !grid.is_valid() {
        return Err(BurgersError::InvalidGrid);
    }
    let BurgersCoeffs { p1, p2, q1, q2 } = *coeffs;
    let d0 = drive(0.0);
    let (sigma0, sigma_dot0) = match init {
        BurgersInit::Virgin => virgin_start(coeffs, &d0),
        BurgersInit::Given { sigma, sigma_dot } => (sigma, sigma_dot),
    };

    let mut out = Vec::with_capacity(grid.steps() / grid.record_every + 2);
    out.push(StressSample {
        t: 0.0,
        eps: d0.eps,
        sigma: sigma0,
    });

    if p2 == 0.0 && p1 == 0.0 {
        for k in 1..=grid.steps() {
            if grid.records(k) {
                let t = k as f64 * grid.dt;
                let d = drive(t);
                out.push(StressSample {
                    t,
                    eps: d.eps,
                    sigma: q1 * d.eps_dot + q2 * d.eps_ddot,
                });
            }
        }
        return Ok(out);
    }

    let rhs = |t: f64, y: &[f64; 2]| -> Result<[f64; 2], std::convert::Infallible> {
        let d = drive(t);
        let forcing = q1 * d.eps_dot + q2 * d.eps_ddot;
        if p2 > 0.0 {
            Ok([y[1], (forcing - y[0] - p1 * y[1]) / p2])
        } else {
            Ok([(forcing - y[0]) / p1, 0.0])
        }
    };
    let mut y = [sigma0, sigma_dot0];
    for k in 0..grid.steps() {
        let t = k as f64 * grid.dt;
        y = match rk4_step(rhs, t, &y, grid.dt) {
            Ok(y) => y,
            Err(never) => match never {},
        };
        if grid.records(k + 1) {
            let t = (k + 1) as f64 * grid.dt;
            out.push(StressSample {
                t,
                eps: drive(t).eps,
                sigma: y[0],
            });
        }
    }
    Ok(out)
}

/// The four spring-dashpot arrangements, one per 3D model.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Arrangement {
    /// dashpot η₁ in series with [spring μ_p ∥ (spring μ₃ – dashpot η₂)]
    A,
    /// spring μ₃ in series with [dashpot η_G ∥ (spring μ₂ – dashpot η₁)]
    B,
    /// spring μ₃ – Kelvin–Voigt (μ₂ ∥ η₂) – dashpot η₁ in series
    C,
    /// two Maxwell branches (μ₂, η₁) and (μ₄, η₃) in parallel
    D,
}

impl Arrangement {
    pub fn for_model(kind: ModelKind) -> Arrangement {
        match kind {
            ModelKind::M1 => Arrangement::A,
            ModelKind::M2 => Arrangement::B,
            ModelKind::M3 => Arrangement::C,
            ModelKind::M4 => Arrangement::D,
        }
    }
}

/// Internal strains of an arrangement.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ElementState {
    /// `ε = ε_p + ε₁`, `ε_p = ε₂ + ε₃`
    A { e1: f64, e2: f64, e3: f64, ep: f64 },
    /// `ε = ε_G + ε₃`, `ε_G = ε₂ + ε₁`
    B { e1: f64, e2: f64, e3: f64, eg: f64 },
    /// `ε = ε₁ + ε₂ + ε₃`
    C { e1: f64, e2: f64, e3: f64 },
    /// `ε = ε₂ + ε₁ = ε₃ + ε₄`
    D { e1: f64, e2: f64, e3: f64, e4: f64 },
}

impl ElementState {
    /// Largest violation of the strain-partition identities for total strain `eps`.
    pub fn partition_residual(&self, eps: f64) -> f64 {
        match *self {
            ElementState::A { e1, e2, e3, ep } => (eps - ep - e1).abs().max((ep - e2 - e3).abs()),
            ElementState::B { e1, e2, e3, eg } => (eps - eg - e3).abs().max((eg - e2 - e1).abs()),
            ElementState::C { e1, e2, e3 } => (eps - e1 - e2 - e3).abs(),
            ElementState::D { e1, e2, e3, e4 } => (eps - e2 - e1).abs().max((eps - e3 - e4).abs()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NetworkSample {
    pub t: f64,
    pub eps: f64,
    pub sigma: f64,
    pub state: ElementState,
}

/// Dashpot strains carried as ODE state, stress and the full element state.
struct Network {
    params: MaterialParams,
}

impl Network {
    /// Resolve all internal strains and the stress from the two integrated
    /// dashpot strains `x` and the total strain.
    fn resolve(&self, x: &[f64; 2], eps: f64) -> (ElementState, f64) {
        match self.params {
            MaterialParams::M1 { mu3, mu_p, .. } => {
                let (e1, e2) = (x[0], x[1]);
                let ep = eps - e1;
                let e3 = ep - e2;
                (
                    ElementState::A { e1, e2, e3, ep },
                    2.0 * mu3 * e3 + 2.0 * mu_p * ep,
                )
            }
            MaterialParams::M2 { mu3, .. } => {
                let (eg, e1) = (x[0], x[1]);
                let e3 = eps - eg;
                let e2 = eg - e1;
                (ElementState::B { e1, e2, e3, eg }, 2.0 * mu3 * e3)
            }
            MaterialParams::M3 { mu3, .. } => {
                let (e1, e2) = (x[0], x[1]);
                let e3 = eps - e1 - e2;
                (ElementState::C { e1, e2, e3 }, 2.0 * mu3 * e3)
            }
            MaterialParams::M4 { mu2, mu4, .. } => {
                let (e1, e3) = (x[0], x[1]);
                let e2 = eps - e1;
                let e4 = eps - e3;
                (
                    ElementState::D { e1, e2, e3, e4 },
                    2.0 * mu2 * e2 + 2.0 * mu4 * e4,
                )
            }
        }
    }

    /// Dashpot laws.
    fn rates(&self, x: &[f64; 2], eps: f64) -> [f64; 2] {
        let (state, sigma) = self.resolve(x, eps);
        match (self.params, state) {
            (
                MaterialParams::M1 {
                    mu3, eta1, eta2, ..
                },
                ElementState::A { e3, .. },
            ) => [sigma / eta1, 2.0 * mu3 * e3 / eta2],
            (
                MaterialParams::M2 {
                    mu2, eta1, eta_g, ..
                },
                ElementState::B { e2, .. },
            ) => [(sigma - 2.0 * mu2 * e2) / eta_g, 2.0 * mu2 * e2 / eta1],
            (
                MaterialParams::M3 {
                    mu2, eta1, eta2, ..
                },
                ElementState::C { e2, .. },
            ) => [sigma / eta1, (sigma - 2.0 * mu2 * e2) / eta2],
            (
                MaterialParams::M4 {
                    mu2,
                    mu4,
                    eta1,
                    eta3,
                },
                ElementState::D { e2, e4, .. },
            ) => [2.0 * mu2 * e2 / eta1, 2.0 * mu4 * e4 / eta3],
            _ => unreachable!("element state always matches the parameter variant"),
        }
    }
}

/// Strain-driven integration of the arrangement matching `params`' model,
/// starting from zero internal strains. Only `ε(t)` is used from the drive.
pub fn element_network_sim(
    params: &MaterialParams,
    drive: impl Fn(f64) -> Drive,
    grid: &TimeGrid,
) -> Result<Vec<NetworkSample>, BurgersError> {
    params.validate_positive()?;
    if !grid.is_valid() {
        return Err(BurgersError::InvalidGrid);
    }
    let net = Network { params: *params };
    let sample = |t: f64, x: &[f64; 2]| {
        let eps = drive(t).eps;
        let (state, sigma) = net.resolve(x, eps);
        NetworkSample {
            t,
            eps,
            sigma,
            state,
        }
    };

    let mut x = [0.0; 2];
    let mut out = Vec::with_capacity(grid.steps() / grid.record_every + 2);
    out.push(sample(0.0, &x));
    for k in 0..grid.steps() {
        let t = k as f64 * grid.dt;
        x = match rk4_step(
            |ts, xs: &[f64; 2]| Ok::<_, std::convert::Infallible>(net.rates(xs, drive(ts).eps)),
            t,
            &x,
            grid.dt,
        ) {
            Ok(x) => x,
            Err(never) => match never {},
        };
        if grid.records(k + 1) {
            out.push(sample((k + 1) as f64 * grid.dt, &x));
        }
    }
    Ok(out)
}

/// `(G′, G″)`: real and imaginary parts of
/// `G*(iω) = (q₁iω + q₂(iω)²) / (1 + p₁iω + p₂(iω)²)`.
pub fn complex_modulus(coeffs: &BurgersCoeffs, omega: f64) -> (f64, f64) {
    let s = Complex64::new(0.0, omega);
    let g = (coeffs.q1 * s + coeffs.q2 * s * s) / (1.0 + coeffs.p1 * s + coeffs.p2 * s * s);
    (g.re, g.im)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CreepSample {
    pub t: f64,
    pub eps: f64,
    pub eps_dot: f64,
}

/// Strain under a stress step `σ₀` applied at `t = 0` to a body at rest.
///
/// For `t > 0` the law reduces to `q₁ε̇ + q₂ε̈ = σ₀`. The start values are the
/// high-`s` limits of `ε(s) = σ₀ J(s)/s` with `J = (1 + p₁s + p₂s²)/(q₁s + q₂s²)`:
/// `ε(0⁺) = σ₀p₂/q₂` and `ε̇(0⁺) = σ₀(p₁q₂ − p₂q₁)/q₂²`.
pub fn creep_response(
    coeffs: &BurgersCoeffs,
    sigma0: f64,
    grid: &TimeGrid,
) -> Result<Vec<CreepSample>, BurgersError> {
    coeffs.validate()?;
    if !grid.is_valid() {
        return Err(BurgersError::InvalidGrid);
    }
    let BurgersCoeffs { p1, p2, q1, q2 } = *coeffs;
    if !(q1 > 0.0 && q2 > 0.0) {
        return Err(BurgersError::Degenerate("creep needs q1 > 0 and q2 > 0"));
    }
    let eps0 = sigma0 * p2 / q2;
    let eps_dot0 = sigma0 * (p1 * q2 - p2 * q1) / (q2 * q2);

    let mut y = [eps0, eps_dot0];
    let mut out = Vec::with_capacity(grid.steps() / grid.record_every + 2);
    out.push(CreepSample {
        t: 0.0,
        eps: y[0],
        eps_dot: y[1],
    });
    for k in 0..grid.steps() {
        let t = k as f64 * grid.dt;
        y = match rk4_step(
            |_, y: &[f64; 2]| Ok::<_, std::convert::Infallible>([y[1], (sigma0 - q1 * y[1]) / q2]),
            t,
            &y,
            grid.dt,
        ) {
            Ok(y) => y,
            Err(never) => match never {},
        };
        if grid.records(k + 1) {
            out.push(CreepSample {
                t: (k + 1) as f64 * grid.dt,
                eps: y[0],
                eps_dot: y[1],
            });
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kinematics::FlowProtocol;

    fn unit(kind: ModelKind) -> MaterialParams {
        MaterialParams::from_values(kind, [1.0, 1.0, 2.0, 2.0])
    }

    #[test]
    fn coefficient_map_examples() {
        let expect = [
            (ModelKind::M1, [3.0, 1.0, 2.0, 4.0]),
            (ModelKind::M2, [3.0, 1.0, 4.0, 2.0]),
            (ModelKind::M3, [3.0, 1.0, 2.0, 2.0]),
            (ModelKind::M4, [2.0, 1.0, 4.0, 4.0]),
        ];
        for (kind, want) in expect {
            let c = coeffs_from_model(&unit(kind)).unwrap();
            assert_eq!(c.as_array(), want, "model {kind}");
        }
    }

    #[test]
    fn coefficient_map_rejects_zero_modulus() {
        let p = MaterialParams::M1 {
            mu3: 0.0,
            mu_p: 1.0,
            eta1: 1.0,
            eta2: 1.0,
        };
        assert!(coeffs_from_model(&p).is_err());
    }

    #[test]
    fn constant_rate_reaches_viscous_balance() {
        let c = coeffs_from_model(&unit(ModelKind::M2)).unwrap();
        let p = FlowProtocol::SimpleShear { rate: 0.2 };
        let out = integrate_burgers(
            &c,
            |t| p.drive_1d(t),
            &TimeGrid::new(60.0, 1e-2),
            BurgersInit::Virgin,
        )
        .unwrap();
        let last = out.last().unwrap().sigma;
        assert!((last - c.q1 * 0.1).abs() < 1e-6 * c.q1 * 0.1);
    }

    #[test]
    fn free_decay_is_monotone_with_real_modes() {
        let c = coeffs_from_model(&unit(ModelKind::M3)).unwrap();
        assert!(c.discriminant() > 0.0);
        let out = integrate_burgers(
            &c,
            |_| Drive::default(),
            &TimeGrid::new(40.0, 1e-2),
            BurgersInit::Given {
                sigma: 1.0,
                sigma_dot: 0.0,
            },
        )
        .unwrap();
        for w in out.windows(2).skip(1) {
            assert!(w[1].sigma <= w[0].sigma);
        }
        assert!(out.last().unwrap().sigma.abs() < 1e-3);
    }

    #[test]
    fn zero_drive_network_stays_at_rest() {
        for kind in ModelKind::ALL {
            let out =
                element_network_sim(&unit(kind), |_| Drive::default(), &TimeGrid::new(1.0, 0.1))
                    .unwrap();
            for s in out {
                assert_eq!(s.sigma, 0.0);
                assert_eq!(s.state.partition_residual(0.0), 0.0);
            }
        }
    }

    #[test]
    fn arrangement_c_dashpot_carries_long_time_stress() {
        let p = MaterialParams::M3 {
            mu2: 1.0,
            mu3: 2.0,
            eta1: 3.0,
            eta2: 0.5,
        };
        let rate = 0.1;
        let out = element_network_sim(
            &p,
            |t| Drive {
                eps: rate * t,
                eps_dot: rate,
                eps_ddot: 0.0,
            },
            &TimeGrid::new(80.0, 1e-2),
        )
        .unwrap();
        let last = out.last().unwrap();
        assert!((last.sigma - 3.0 * rate).abs() < 1e-8);
    }

    #[test]
    fn modulus_limits() {
        let c = BurgersCoeffs::new(3.0, 1.0, 2.0, 4.0);
        let (gp, _) = complex_modulus(&c, 1e7);
        assert!((gp - 4.0).abs() < 1e-6);
        let w = 1e-6;
        let (_, gpp) = complex_modulus(&c, w);
        assert!((gpp / w - 2.0).abs() < 1e-5);
    }

    #[test]
    fn creep_start_and_slope() {
        let c = coeffs_from_model(&unit(ModelKind::M3)).unwrap();
        let out = creep_response(&c, 2.0, &TimeGrid::new(200.0, 1e-2)).unwrap();
        assert_eq!(out[0].eps, 2.0 * c.p2 / c.q2);
        assert!((out.last().unwrap().eps_dot - 2.0 / c.q1).abs() < 1e-9);
    }

    #[test]
    fn degenerate_orders() {
        // Maxwell-like coefficients (p₂ = q₂ = 0)
        let c = BurgersCoeffs::new(1.0, 0.0, 2.0, 0.0);
        let out = integrate_burgers(
            &c,
            |t| Drive {
                eps: t,
                eps_dot: 1.0,
                eps_ddot: 0.0,
            },
            &TimeGrid::new(30.0, 1e-2),
            BurgersInit::Virgin,
        )
        .unwrap();
        assert!((out.last().unwrap().sigma - 2.0).abs() < 1e-9);
        // Newtonian
        let c = BurgersCoeffs::new(0.0, 0.0, 3.0, 0.0);
        let out = integrate_burgers(
            &c,
            |t| Drive {
                eps: t,
                eps_dot: 1.0,
                eps_ddot: 0.0,
            },
            &TimeGrid::new(1.0, 0.5),
            BurgersInit::Virgin,
        )
        .unwrap();
        assert!(out.iter().all(|s| s.sigma == 3.0));
    }
}
