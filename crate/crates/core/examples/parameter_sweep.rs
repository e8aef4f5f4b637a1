//! Concurrent sweep over shear rates: steady shear viscosity and first normal
//! stress coefficient of model 3, against the linear viscosity q1.

use rheolab::{coeffs_from_model, simulate, FlowProtocol, MaterialParams, SimConfig};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let params = MaterialParams::M3 {
        mu2: 1.0,
        mu3: 1.0,
        eta1: 1.0,
        eta2: 0.5,
    };
    let q1 = coeffs_from_model(&params)?.q1;
    let rates = [0.01, 0.1, 0.3, 1.0, 3.0];
    let results: Vec<_> = std::thread::scope(|scope| {
        let handles: Vec<_> = rates
            .iter()
            .map(|&rate| {
                scope.spawn(move || {
                    let shear = FlowProtocol::SimpleShear { rate };
                    let config = SimConfig::new(40.0, 1e-3).record_every(1000);
                    (rate, simulate(&params, &shear, &config))
                })
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("worker panicked"))
            .collect()
    });
    println!("linear viscosity q1 = {q1}");
    println!("{:>8} {:>12} {:>12}", "rate", "S12/rate", "N1/rate^2");
    for (rate, records) in results {
        match records {
            Ok(records) => {
                let end = records.last().expect("run has records");
                println!(
                    "{rate:>8} {:>12.6} {:>12.6}",
                    end.stress[(0, 1)] / rate,
                    end.n1 / (rate * rate)
                );
            }
            Err(e) => println!("{rate:>8} failed: {e}"),
        }
    }
    Ok(())
}
