//! Prescribed isochoric deformation histories.
//!
//! Every protocol yields a trace-free velocity gradient `L(t)` for the 3D
//! models and a matched scalar strain drive for the 1D Burgers equation:
//!
//! * shear family: `ε = γ/2`, so the linearized shear stress `T₁₂` obeys the
//!   1D law driven by that `ε`;
//! * uniaxial extension: `ε` is the axial true strain and the linearized
//!   `T₁₁ − T₂₂` equals `3/2` times the 1D response.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::tensor::Tensor3;

/// Ramp duration used when a step protocol does not name one.
pub const DEFAULT_RAMP_TIME: f64 = 1e-3;

/// Ratio between the linearized `T₁₁ − T₂₂` and the 1D stress under uniaxial extension.
pub const UNIAXIAL_FACTOR: f64 = 1.5;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum FlowProtocol {
    Rest,
    SimpleShear {
        rate: f64,
    },
    OscillatoryShear {
        gamma0: f64,
        omega: f64,
    },
    UniaxialExtension {
        rate: f64,
    },
    /// Shear strain brought to `gamma` by a C¹ smoothstep over `ramp`, then held.
    RampStepShear {
        gamma: f64,
        ramp: f64,
    },
}

/// How the 3D stress is compared against the 1D stress.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DriveFamily {
    Shear,
    Uniaxial,
}

/// Scalar strain drive and its first two time derivatives.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Drive {
    pub eps: f64,
    pub eps_dot: f64,
    pub eps_ddot: f64,
}

impl FlowProtocol {
    pub fn family(&self) -> DriveFamily {
        match self {
            FlowProtocol::UniaxialExtension { .. } => DriveFamily::Uniaxial,
            _ => DriveFamily::Shear,
        }
    }

    /// Shear strain and its first two derivatives for the shear family.
    fn shear_strain(&self, t: f64) -> (f64, f64, f64) {
        match *self {
            FlowProtocol::SimpleShear { rate } => (rate * t, rate, 0.0),
            FlowProtocol::OscillatoryShear { gamma0, omega } => {
                let (s, c) = (omega * t).sin_cos();
                (gamma0 * s, gamma0 * omega * c, -gamma0 * omega * omega * s)
            }
            FlowProtocol::RampStepShear { gamma, ramp } => {
                if t >= ramp {
                    (gamma, 0.0, 0.0)
                } else {
                    let x = t / ramp;
                    (
                        gamma * x * x * (3.0 - 2.0 * x),
                        gamma * 6.0 * x * (1.0 - x) / ramp,
                        gamma * (6.0 - 12.0 * x) / (ramp * ramp),
                    )
                }
            }
            FlowProtocol::Rest | FlowProtocol::UniaxialExtension { .. } => (0.0, 0.0, 0.0),
        }
    }

    pub fn velocity_gradient(&self, t: f64) -> Tensor3 {
        match *self {
            FlowProtocol::Rest => Tensor3::ZERO,
            FlowProtocol::UniaxialExtension { rate } => {
                Tensor3::diag(rate, -0.5 * rate, -0.5 * rate)
            }
            _ => Tensor3::single(0, 1, self.shear_strain(t).1),
        }
    }

    pub fn drive_1d(&self, t: f64) -> Drive {
        match *self {
            FlowProtocol::Rest => Drive::default(),
            FlowProtocol::UniaxialExtension { rate } => Drive {
                eps: rate * t,
                eps_dot: rate,
                eps_ddot: 0.0,
            },
            _ => {
                let (g, gd, gdd) = self.shear_strain(t);
                Drive {
                    eps: 0.5 * g,
                    eps_dot: 0.5 * gd,
                    eps_ddot: 0.5 * gdd,
                }
            }
        }
    }

    pub fn validate(&self) -> Result<(), ProtocolError> {
        let finite = |name: &'static str, v: f64| {
            if v.is_finite() {
                Ok(())
            } else {
                Err(ProtocolError::InvalidValue {
                    key: name,
                    value: v,
                })
            }
        };
        match *self {
            FlowProtocol::Rest => Ok(()),
            FlowProtocol::SimpleShear { rate } | FlowProtocol::UniaxialExtension { rate } => {
                finite("rate", rate)
            }
            FlowProtocol::OscillatoryShear { gamma0, omega } => {
                finite("gamma0", gamma0)?;
                finite("omega", omega)
            }
            FlowProtocol::RampStepShear { gamma, ramp } => {
                finite("gamma", gamma)?;
                if ramp > 0.0 && ramp.is_finite() {
                    Ok(())
                } else {
                    Err(ProtocolError::InvalidValue {
                        key: "ramp",
                        value: ramp,
                    })
                }
            }
        }
    }
}

pub fn velocity_gradient(p: &FlowProtocol, t: f64) -> Tensor3 {
    p.velocity_gradient(t)
}

pub fn drive_1d(p: &FlowProtocol, t: f64) -> Drive {
    p.drive_1d(t)
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ProtocolError {
    #[error("unknown protocol kind `{0}` (expected rest, shear, osc, uniaxial or step)")]
    UnknownKind(String),
    #[error("protocol `{kind}` is missing `{key}`")]
    MissingKey {
        kind: &'static str,
        key: &'static str,
    },
    #[error("protocol `{kind}` does not accept `{key}`")]
    UnknownKey { kind: &'static str, key: String },
    #[error("malformed protocol field `{0}` (expected key=value)")]
    Malformed(String),
    #[error("invalid value {value} for `{key}`")]
    InvalidValue { key: &'static str, value: f64 },
}

impl FromStr for FlowProtocol {
    type Err = ProtocolError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let (kind, rest) = match s.split_once(':') {
            Some((k, r)) => (k.trim(), r.trim()),
            None => (s, ""),
        };
        let mut fields: Vec<(String, f64)> = Vec::new();
        for part in rest.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let (k, v) = part
                .split_once('=')
                .ok_or_else(|| ProtocolError::Malformed(part.to_string()))?;
            let v: f64 = v
                .trim()
                .parse()
                .map_err(|_| ProtocolError::Malformed(part.to_string()))?;
            fields.push((k.trim().to_ascii_lowercase(), v));
        }

        let (kind, allowed): (&'static str, &[&str]) = match kind {
            "rest" => ("rest", &[]),
            "shear" => ("shear", &["rate"]),
            "osc" => ("osc", &["gamma0", "omega"]),
            "uniaxial" => ("uniaxial", &["rate"]),
            "step" => ("step", &["gamma", "ramp"]),
            other => return Err(ProtocolError::UnknownKind(other.to_string())),
        };
        if let Some((k, _)) = fields.iter().find(|(k, _)| !allowed.contains(&k.as_str())) {
            return Err(ProtocolError::UnknownKey {
                kind,
                key: k.clone(),
            });
        }
        let get = |key: &'static str| {
            fields
                .iter()
                .rev()
                .find(|(k, _)| k == key)
                .map(|(_, v)| *v)
                .ok_or(ProtocolError::MissingKey { kind, key })
        };

        let protocol = match kind {
            "rest" => FlowProtocol::Rest,
            "shear" => FlowProtocol::SimpleShear { rate: get("rate")? },
            "osc" => FlowProtocol::OscillatoryShear {
                gamma0: get("gamma0")?,
                omega: get("omega")?,
            },
            "uniaxial" => FlowProtocol::UniaxialExtension { rate: get("rate")? },
            _ => FlowProtocol::RampStepShear {
                gamma: get("gamma")?,
                ramp: get("ramp").unwrap_or(DEFAULT_RAMP_TIME),
            },
        };
        protocol.validate()?;
        Ok(protocol)
    }
}

impl fmt::Display for FlowProtocol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FlowProtocol::Rest => write!(f, "rest"),
            FlowProtocol::SimpleShear { rate } => write!(f, "shear:rate={rate:?}"),
            FlowProtocol::OscillatoryShear { gamma0, omega } => {
                write!(f, "osc:gamma0={gamma0:?},omega={omega:?}")
            }
            FlowProtocol::UniaxialExtension { rate } => write!(f, "uniaxial:rate={rate:?}"),
            FlowProtocol::RampStepShear { gamma, ramp } => {
                write!(f, "step:gamma={gamma:?},ramp={ramp:?}")
            }
        }
    }
}
