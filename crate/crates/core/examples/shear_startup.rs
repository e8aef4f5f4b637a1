//! Start-up of steady shear for all four models: shear stress and normal
//! stress differences approaching their steady values.

use rheolab::{simulate, FlowProtocol, MaterialParams, ModelKind, SimConfig};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let protocol = FlowProtocol::SimpleShear { rate: 0.5 };
    let config = SimConfig::new(10.0, 1e-3).record_every(2000);
    for kind in ModelKind::ALL {
        let params = MaterialParams::from_values(kind, [1.0, 1.0, 2.0, 2.0]);
        println!("{kind} ({params}), {protocol}");
        println!("{:>6} {:>12} {:>12} {:>12}", "t", "S12", "N1", "N2");
        for r in simulate(&params, &protocol, &config)? {
            println!(
                "{:>6.2} {:>12.6} {:>12.6} {:>12.6}",
                r.t,
                r.stress[(0, 1)],
                r.n1,
                r.n2
            );
        }
        println!();
    }
    Ok(())
}
