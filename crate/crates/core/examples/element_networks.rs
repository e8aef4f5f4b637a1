//! The Burgers ODE against a direct simulation of each spring-dashpot
//! arrangement, with the internal element strains at the end of the run.

use rheolab::burgers::{element_network_sim, integrate_burgers, Arrangement, BurgersInit};
use rheolab::{coeffs_from_model, FlowProtocol, MaterialParams, ModelKind, TimeGrid};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let osc = FlowProtocol::OscillatoryShear {
        gamma0: 0.4,
        omega: 2.0,
    };
    let grid = TimeGrid::new(10.0, 1e-3);
    for kind in ModelKind::ALL {
        let params = MaterialParams::from_values(kind, [0.8, 1.7, 2.2, 0.6]);
        let coeffs = coeffs_from_model(&params)?;
        let direct = integrate_burgers(&coeffs, |t| osc.drive_1d(t), &grid, BurgersInit::Virgin)?;
        let network = element_network_sim(&params, |t| osc.drive_1d(t), &grid)?;
        let scale = network.iter().map(|s| s.sigma.abs()).fold(0.0, f64::max);
        let gap = direct
            .iter()
            .zip(&network)
            .map(|(a, b)| (a.sigma - b.sigma).abs())
            .fold(0.0, f64::max);
        let last = network.last().expect("grid has samples");
        println!(
            "{kind} arrangement {:?}: max |sigma gap| / max |sigma| = {:.2e}",
            Arrangement::for_model(kind),
            gap / scale
        );
        println!(
            "   final state {:?}, partition residual {:.1e}",
            last.state,
            last.state.partition_residual(last.eps)
        );
    }
    Ok(())
}
