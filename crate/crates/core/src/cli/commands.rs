use std::fmt::Write as _;
use std::io::Write;
use std::path::PathBuf;

use crate::burgers::{
    coeffs_from_model, complex_modulus, integrate_burgers, BurgersCoeffs, BurgersInit,
};
use crate::compare::{compare_3d_1d, moduli_from_3d};
use crate::kinematics::{DriveFamily, FlowProtocol};
use crate::models::{simulate, SimRecord};
use crate::netcomp::{parse, to_burgers, transfer_function};
use crate::ode::TimeGrid;

use super::{CliError, Scenario};

const SIM3D_HEADER: &str = "t,S11,S22,S33,S12,S13,S23,N1,N2,psi,xi,det_a,det_b";
const DEFAULT_AMPLITUDE: f64 = 1e-3;

fn write_row(out: &mut String, values: &[f64]) {
    for (i, v) in values.iter().enumerate() {
        if i > 0 {
            out.push(',');
        }
        let _ = write!(out, "{v:?}");
    }
    out.push('\n');
}

fn sim3d_row(out: &mut String, r: &SimRecord) {
    let s = &r.stress;
    write_row(
        out,
        &[
            r.t,
            s[(0, 0)],
            s[(1, 1)],
            s[(2, 2)],
            s[(0, 1)],
            s[(0, 2)],
            s[(1, 2)],
            r.n1,
            r.n2,
            r.psi,
            r.xi,
            r.det_a,
            r.det_b,
        ],
    );
}

pub fn simulate3d_csv(s: &Scenario) -> Result<String, CliError> {
    let params = s.material()?;
    let protocol = s.require_protocol()?;
    let records = simulate(&params, &protocol, &s.sim_config()?)?;
    let mut out = String::with_capacity(records.len() * 200);
    out.push_str(SIM3D_HEADER);
    out.push('\n');
    for r in &records {
        sim3d_row(&mut out, r);
    }
    Ok(out)
}

/// Coefficients from `network` when given, otherwise from the model map.
fn coefficients(s: &Scenario) -> Result<BurgersCoeffs, CliError> {
    match &s.network {
        Some(text) => {
            let expr = parse(text).map_err(|e| CliError::syntax(e, text))?;
            Ok(to_burgers(&transfer_function(&expr))?)
        }
        None => Ok(coeffs_from_model(&s.material()?)?),
    }
}

pub fn simulate1d_csv(s: &Scenario) -> Result<String, CliError> {
    let coeffs = coefficients(s)?;
    let protocol = s.require_protocol()?;
    protocol
        .validate()
        .map_err(|e| CliError::Usage(e.to_string()))?;
    let cfg = s.sim_config()?;
    let grid = TimeGrid::new(cfg.t_end, cfg.dt).record_every(cfg.record_every);
    let samples = integrate_burgers(
        &coeffs,
        |t| protocol.drive_1d(t),
        &grid,
        BurgersInit::Virgin,
    )?;
    let mut out = String::from("t,eps,sigma\n");
    for p in &samples {
        write_row(&mut out, &[p.t, p.eps, p.sigma]);
    }
    Ok(out)
}

/// Report text for `compile`, printed even when the network is rejected.
pub fn compile_report(text: &str) -> (String, Result<(), CliError>) {
    let expr = match parse(text) {
        Ok(expr) => expr,
        Err(e) => return (String::new(), Err(CliError::syntax(e, text))),
    };
    let tf = transfer_function(&expr);
    let mut out = String::new();
    let _ = writeln!(out, "network: {expr}");
    let _ = writeln!(out, "transfer function: {tf}");
    let result = to_burgers(&tf).map(|c| {
        let _ = writeln!(
            out,
            "burgers: p1={:?} p2={:?} q1={:?} q2={:?}",
            c.p1, c.p2, c.q1, c.q2
        );
    });
    (out, result.map_err(CliError::from))
}

/// Compare report, plus an optional CSV of the two stress traces.
fn compare_report(s: &Scenario) -> Result<(String, String), CliError> {
    let params = s.material()?;
    let cfg = s.sim_config()?;
    let protocol = match s.protocol {
        Some(p) => p,
        None => {
            let rate = s.amplitude.unwrap_or(DEFAULT_AMPLITUDE) / cfg.t_end;
            match s.mode.unwrap_or(DriveFamily::Shear) {
                DriveFamily::Shear => FlowProtocol::SimpleShear { rate },
                DriveFamily::Uniaxial => FlowProtocol::UniaxialExtension { rate },
            }
        }
    };
    let c = compare_3d_1d(&params, &protocol, &cfg)?;
    let mut report = String::new();
    let _ = writeln!(report, "model: {}", params.kind());
    let _ = writeln!(report, "params: {params}");
    let _ = writeln!(report, "protocol: {protocol}");
    let _ = writeln!(
        report,
        "burgers: p1={:?} p2={:?} q1={:?} q2={:?}",
        c.coeffs.p1, c.coeffs.p2, c.coeffs.q1, c.coeffs.q2
    );
    let observable = match c.family {
        DriveFamily::Shear => "T12 vs sigma",
        DriveFamily::Uniaxial => "T11-T22 vs 1.5*sigma",
    };
    let _ = writeln!(report, "compared: {observable}");
    let _ = writeln!(report, "max_rel_deviation: {:?}", c.max_rel_deviation);
    let mut csv = String::from("t,observed,predicted\n");
    for p in &c.samples {
        write_row(&mut csv, &[p.t, p.observed, p.predicted]);
    }
    Ok((report, csv))
}

fn moduli_csv(s: &Scenario) -> Result<String, CliError> {
    if s.omega.is_empty() {
        return Err(CliError::Usage("missing `omega` grid".into()));
    }
    let grid: Vec<(&str, f64)> = s
        .omega
        .iter()
        .map(|w| match w.parse::<f64>() {
            Ok(v) if v > 0.0 && v.is_finite() => Ok((w.as_str(), v)),
            _ => Err(CliError::Usage(format!(
                "omega values must be positive numbers, got `{w}`"
            ))),
        })
        .collect::<Result<_, _>>()?;
    let coeffs = coefficients(s)?;
    let verified = if s.verify {
        if s.network.is_some() {
            return Err(CliError::Usage(
                "--verify needs a model, not a network".into(),
            ));
        }
        let params = s.material()?;
        let gamma0 = s.amplitude.unwrap_or(DEFAULT_AMPLITUDE);
        let runs: Vec<_> = std::thread::scope(|scope| {
            let handles: Vec<_> = grid
                .iter()
                .map(|&(_, w)| scope.spawn(move || moduli_from_3d(&params, w, gamma0)))
                .collect();
            handles
                .into_iter()
                .map(|h| h.join().expect("moduli worker panicked"))
                .collect()
        });
        Some(runs.into_iter().collect::<Result<Vec<_>, _>>()?)
    } else {
        None
    };

    let mut out = String::from("omega,Gp,Gpp");
    if verified.is_some() {
        out.push_str(",Gp_3d,Gpp_3d,dev_Gp,dev_Gpp");
    }
    out.push('\n');
    for (i, &(text, w)) in grid.iter().enumerate() {
        let (gp, gpp) = complex_modulus(&coeffs, w);
        let _ = write!(out, "{text},{gp:?},{gpp:?}");
        if let Some(v) = &verified {
            let (gp3, gpp3) = v[i];
            let rel = |a: f64, b: f64| {
                if b == 0.0 {
                    (a - b).abs()
                } else {
                    ((a - b) / b).abs()
                }
            };
            let _ = write!(
                out,
                ",{gp3:?},{gpp3:?},{:?},{:?}",
                rel(gp3, gp),
                rel(gpp3, gpp)
            );
        }
        out.push('\n');
    }
    Ok(out)
}

fn emit(out: &Option<PathBuf>, body: &str, stdout: &mut dyn Write) -> Result<(), CliError> {
    match out {
        Some(path) => std::fs::write(path, body)
            .map_err(|e| CliError::Usage(format!("cannot write {}: {e}", path.display()))),
        None => Ok(stdout.write_all(body.as_bytes())?),
    }
}

pub fn run_scenario(command: &str, s: &Scenario, stdout: &mut dyn Write) -> Result<(), CliError> {
    match command {
        "simulate3d" => emit(&s.out, &simulate3d_csv(s)?, stdout),
        "simulate1d" => emit(&s.out, &simulate1d_csv(s)?, stdout),
        "moduli" => emit(&s.out, &moduli_csv(s)?, stdout),
        "compare" => {
            let (report, csv) = compare_report(s)?;
            if s.out.is_some() {
                emit(&s.out, &csv, stdout)?;
            }
            Ok(stdout.write_all(report.as_bytes())?)
        }
        other => Err(CliError::Usage(format!(
            "unknown command `{other}` (simulate3d, simulate1d, compare, moduli)"
        ))),
    }
}

/// Run scenario files concurrently. Each owns its state and output file.
pub fn sweep(configs: &[PathBuf], stdout: &mut dyn Write) -> Result<(), CliError> {
    let scenarios = configs
        .iter()
        .map(|path| {
            let s = Scenario::from_file(path)?;
            let command = s
                .command
                .clone()
                .ok_or_else(|| CliError::Usage(format!("{}: missing `command`", path.display())))?;
            let out = s.out.clone().ok_or_else(|| {
                CliError::Usage(format!("{}: sweep entries need `out`", path.display()))
            })?;
            Ok((path, command, out, s))
        })
        .collect::<Result<Vec<_>, CliError>>()?;
    for (i, (_, _, out, _)) in scenarios.iter().enumerate() {
        if scenarios[..i].iter().any(|(_, _, o, _)| o == out) {
            return Err(CliError::Usage(format!(
                "duplicate output file {}",
                out.display()
            )));
        }
    }

    let results: Vec<Result<Vec<u8>, CliError>> = std::thread::scope(|scope| {
        let handles: Vec<_> = scenarios
            .iter()
            .map(|(_, command, _, s)| {
                scope.spawn(move || {
                    let mut report = Vec::new();
                    run_scenario(command, s, &mut report).map(|()| report)
                })
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("sweep worker panicked"))
            .collect()
    });

    let mut first_error = None;
    for ((path, _, out, _), result) in scenarios.iter().zip(results) {
        match result {
            Ok(report) => {
                writeln!(stdout, "ok {} -> {}", path.display(), out.display())?;
                stdout.write_all(&report)?;
            }
            Err(e) => {
                writeln!(stdout, "failed {}: {e}", path.display())?;
                if first_error
                    .as_ref()
                    .is_none_or(|f: &CliError| e.exit_code() > f.exit_code())
                {
                    first_error = Some(e);
                }
            }
        }
    }
    first_error.map_or(Ok(()), Err)
}
