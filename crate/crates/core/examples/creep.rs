//! Creep under a stress step: instantaneous jump, retarded response and the
//! terminal flow rate for each model's Burgers law.

use rheolab::burgers::creep_response;
use rheolab::{coeffs_from_model, MaterialParams, ModelKind, TimeGrid};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let sigma0 = 1.0;
    for kind in ModelKind::ALL {
        let coeffs = coeffs_from_model(&MaterialParams::from_values(kind, [1.0, 1.0, 2.0, 2.0]))?;
        let out = creep_response(
            &coeffs,
            sigma0,
            &TimeGrid::new(20.0, 1e-3).record_every(4000),
        )?;
        println!(
            "{kind}: jump {:.4}, terminal rate {:.4} (sigma0/q1 = {:.4})",
            out[0].eps,
            out.last().map_or(f64::NAN, |s| s.eps_dot),
            sigma0 / coeffs.q1
        );
        for s in &out {
            println!(
                "  t={:>5.1}  eps={:>9.4}  eps_dot={:.5}",
                s.t, s.eps, s.eps_dot
            );
        }
    }
    Ok(())
}
