//! Stress relaxation after a fast shear step: the 3D shear stress against the
//! mapped 1D Burgers response at a small and a large step.

use rheolab::burgers::{coeffs_from_model, integrate_burgers, BurgersInit};
use rheolab::{simulate, FlowProtocol, MaterialParams, SimConfig, TimeGrid};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let params = MaterialParams::M2 {
        mu2: 1.0,
        mu3: 2.0,
        eta1: 3.0,
        eta_g: 0.5,
    };
    let coeffs = coeffs_from_model(&params)?;
    let (t_end, dt, every) = (6.0, 1e-3, 500);

    for gamma in [0.01, 1.0] {
        let step = FlowProtocol::RampStepShear { gamma, ramp: 0.05 };
        let full = simulate(
            &params,
            &step,
            &SimConfig::new(t_end, dt).record_every(every),
        )?;
        let grid = TimeGrid::new(t_end, dt).record_every(every);
        let linear = integrate_burgers(&coeffs, |t| step.drive_1d(t), &grid, BurgersInit::Virgin)?;
        println!("{step}: G(t) = S12/gamma");
        println!("{:>6} {:>12} {:>12}", "t", "3D", "1D");
        for (r, s) in full.iter().zip(&linear) {
            println!(
                "{:>6.2} {:>12.6} {:>12.6}",
                r.t,
                r.stress[(0, 1)] / gamma,
                s.sigma / gamma
            );
        }
        println!();
    }
    Ok(())
}
