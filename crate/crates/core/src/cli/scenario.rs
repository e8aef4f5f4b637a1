//! Scenario configuration: line-oriented `key = value` text with `#` comments.
//! Command flags are applied as the same keys after the file, so they win.

use std::path::PathBuf;

use crate::kinematics::{DriveFamily, FlowProtocol};
use crate::models::{MaterialParams, ModelKind, SimConfig};

use super::CliError;

#[derive(Debug, Clone, Default, PartialEq)]
pub struct Scenario {
    pub model: Option<ModelKind>,
    pub network: Option<String>,
    /// Parameter assignments in the order they were given.
    pub params: Vec<(String, f64)>,
    pub protocol: Option<FlowProtocol>,
    pub t_end: Option<f64>,
    pub dt: Option<f64>,
    pub record_every: Option<usize>,
    pub out: Option<PathBuf>,
    pub mode: Option<DriveFamily>,
    pub amplitude: Option<f64>,
    /// Frequencies kept as written so they can be echoed verbatim.
    pub omega: Vec<String>,
    pub verify: bool,
    pub normalize_pressure: bool,
    /// Subcommand a sweep entry runs.
    pub command: Option<String>,
}

pub const DEFAULT_DT: f64 = 1e-3;

fn number(key: &str, value: &str) -> Result<f64, CliError> {
    value
        .trim()
        .parse::<f64>()
        .map_err(|_| CliError::Usage(format!("`{key}` expects a number, got `{value}`")))
}

fn flag(key: &str, value: &str) -> Result<bool, CliError> {
    match value.trim() {
        "true" | "yes" | "1" | "" => Ok(true),
        "false" | "no" | "0" => Ok(false),
        other => Err(CliError::Usage(format!(
            "`{key}` expects true or false, got `{other}`"
        ))),
    }
}

/// `k=v` items separated by commas, semicolons or newlines, `#` comments allowed.
pub fn parse_assignments(text: &str) -> Result<Vec<(String, String)>, CliError> {
    let mut out = Vec::new();
    for line in text.lines() {
        let line = line.split('#').next().unwrap_or("");
        for item in line.split([',', ';']) {
            let item = item.trim();
            if item.is_empty() {
                continue;
            }
            let (k, v) = item
                .split_once('=')
                .ok_or_else(|| CliError::Usage(format!("expected `key = value`, got `{item}`")))?;
            out.push((k.trim().to_string(), v.trim().to_string()));
        }
    }
    Ok(out)
}

/// Inline `k=v,...` or the path of a file holding such assignments.
fn read_params(value: &str) -> Result<Vec<(String, f64)>, CliError> {
    let path = std::path::Path::new(value.trim());
    let text = if !value.contains('=') && path.is_file() {
        std::fs::read_to_string(path).map_err(|e| {
            CliError::Usage(format!("cannot read params file {}: {e}", path.display()))
        })?
    } else {
        value.to_string()
    };
    parse_assignments(&text)?
        .into_iter()
        .map(|(k, v)| Ok((k.clone(), number(&k, &v)?)))
        .collect()
}

impl Scenario {
    /// Parse a scenario file. Values may contain commas (protocols, networks),
    /// so each line holds exactly one assignment.
    pub fn from_config(text: &str) -> Result<Scenario, CliError> {
        let mut s = Scenario::default();
        for (n, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line.split_once('=').ok_or_else(|| {
                CliError::Usage(format!(
                    "line {}: expected `key = value`, got `{line}`",
                    n + 1
                ))
            })?;
            s.set(k.trim(), v.trim())?;
        }
        Ok(s)
    }

    pub fn from_file(path: &std::path::Path) -> Result<Scenario, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?;
        Scenario::from_config(&text)
    }

    /// Apply one assignment. Keys use `_` or `-` interchangeably; any material
    /// parameter name may also be given as a key of its own.
    pub fn set(&mut self, key: &str, value: &str) -> Result<(), CliError> {
        let key = key.trim().replace('-', "_").to_ascii_lowercase();
        match key.as_str() {
            "model" => {
                self.model = Some(
                    value
                        .parse()
                        .map_err(|e: crate::models::ParamError| CliError::Usage(e.to_string()))?,
                )
            }
            "network" => self.network = Some(value.to_string()),
            "params" => {
                for (k, v) in read_params(value)? {
                    self.set_param(k, v);
                }
            }
            "protocol" => {
                self.protocol = Some(value.parse().map_err(
                    |e: crate::kinematics::ProtocolError| CliError::Usage(e.to_string()),
                )?)
            }
            "t_end" => self.t_end = Some(number(&key, value)?),
            "dt" => self.dt = Some(number(&key, value)?),
            "record_every" => {
                let n = value
                    .trim()
                    .parse::<usize>()
                    .ok()
                    .filter(|n| *n > 0)
                    .ok_or_else(|| {
                        CliError::Usage(format!(
                            "`record_every` expects a positive integer, got `{value}`"
                        ))
                    })?;
                self.record_every = Some(n);
            }
            "out" => self.out = Some(PathBuf::from(value)),
            "mode" => {
                self.mode = Some(match value.trim() {
                    "shear" => DriveFamily::Shear,
                    "uniaxial" => DriveFamily::Uniaxial,
                    other => {
                        return Err(CliError::Usage(format!(
                            "`mode` must be shear or uniaxial, got `{other}`"
                        )))
                    }
                })
            }
            "amplitude" => self.amplitude = Some(number(&key, value)?),
            "omega" => {
                self.omega = value
                    .split(',')
                    .map(|w| w.trim().to_string())
                    .filter(|w| !w.is_empty())
                    .collect()
            }
            "verify" => self.verify = flag(&key, value)?,
            "normalize_pressure" => self.normalize_pressure = flag(&key, value)?,
            "command" => self.command = Some(value.trim().to_string()),
            _ if is_param_name(&key) => {
                let v = number(&key, value)?;
                self.set_param(key, v);
            }
            _ => return Err(CliError::Usage(format!("unknown key `{key}`"))),
        }
        Ok(())
    }

    fn set_param(&mut self, key: String, value: f64) {
        let key = key.replace('_', "").to_ascii_lowercase();
        match self.params.iter_mut().find(|(k, _)| *k == key) {
            Some(slot) => slot.1 = value,
            None => self.params.push((key, value)),
        }
    }

    pub fn require_model(&self) -> Result<ModelKind, CliError> {
        self.model
            .ok_or_else(|| CliError::Usage("missing `model`".into()))
    }

    pub fn material(&self) -> Result<MaterialParams, CliError> {
        let kind = self.require_model()?;
        let params =
            MaterialParams::from_pairs(kind, self.params.iter().map(|(k, v)| (k.as_str(), *v)))
                .map_err(|e| CliError::Usage(e.to_string()))?;
        params
            .validate()
            .map_err(|e| CliError::Usage(e.to_string()))?;
        Ok(params)
    }

    pub fn require_protocol(&self) -> Result<FlowProtocol, CliError> {
        self.protocol
            .ok_or_else(|| CliError::Usage("missing `protocol`".into()))
    }

    /// Time stepping, checked against `dt > 0` and `t_end ≥ dt`.
    pub fn sim_config(&self) -> Result<SimConfig, CliError> {
        let t_end = self
            .t_end
            .ok_or_else(|| CliError::Usage("missing `t_end`".into()))?;
        let dt = self.dt.unwrap_or(DEFAULT_DT);
        if !(dt > 0.0 && dt.is_finite()) {
            return Err(CliError::Usage(format!("`dt` must be > 0, got {dt}")));
        }
        if !(t_end >= dt && t_end.is_finite()) {
            return Err(CliError::Usage(format!(
                "`t_end` must be >= dt, got {t_end}"
            )));
        }
        let mut cfg = SimConfig::new(t_end, dt).record_every(self.record_every.unwrap_or(1));
        cfg.normalize_pressure = self.normalize_pressure;
        Ok(cfg)
    }
}

fn is_param_name(key: &str) -> bool {
    ModelKind::ALL
        .iter()
        .flat_map(|k| k.param_names())
        .any(|name| name == key.replace('_', ""))
}
