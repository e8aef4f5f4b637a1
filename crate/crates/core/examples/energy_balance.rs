//! Stored energy, dissipation and stress power along an oscillatory run, and
//! the residual of the balance S:D = dpsi/dt + xi.

use rheolab::{simulate, FlowProtocol, MaterialParams, ModelKind, SimConfig};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let dt = 1e-3;
    let protocol = FlowProtocol::OscillatoryShear {
        gamma0: 1.0,
        omega: 2.0,
    };
    for kind in ModelKind::ALL {
        let params = MaterialParams::from_values(kind, [1.0, 2.0, 1.0, 0.5]);
        let records = simulate(&params, &protocol, &SimConfig::new(6.0, dt))?;
        let mut worst: f64 = 0.0;
        let mut dissipated = 0.0;
        for w in records.windows(3) {
            let psi_dot = (w[2].psi - w[0].psi) / (2.0 * dt);
            worst = worst.max((w[1].stress_power - psi_dot - w[1].xi).abs());
            dissipated += w[1].xi * dt;
        }
        let last = records.last().expect("run has records");
        println!(
            "{kind}: psi(end) = {:.5}, dissipated = {:.5}, max |S:D - dpsi/dt - xi| = {:.2e}, det = ({:.12}, {:.12})",
            last.psi, dissipated, worst, last.det_a, last.det_b
        );
    }
    Ok(())
}
