//! Parse spring-dashpot networks, reduce them to transfer functions and read
//! off Burgers coefficients; also prints each model's canonical network.

use rheolab::netcomp::{canonical_network, parse, to_burgers, transfer_function};
use rheolab::{coeffs_from_model, MaterialParams, ModelKind};

fn main() {
    let texts = [
        "series(spring(mu=1), dashpot(eta=2))",
        "parallel(spring(mu=1), dashpot(eta=1))",
        "series(spring(mu=1), parallel(spring(mu=1), dashpot(eta=2)), dashpot(eta=2))",
        "parallel(series(spring(mu=1), dashpot(eta=1)), series(spring(mu=2), dashpot(eta=5)), \
         series(spring(mu=3), dashpot(eta=1)))",
        "series(spring(mu=1))",
    ];
    for text in texts {
        println!("{text}");
        match parse(text) {
            Err(e) => println!("  rejected: {e}"),
            Ok(expr) => {
                let tf = transfer_function(&expr);
                println!("  {tf}");
                match to_burgers(&tf) {
                    Ok(c) => println!("  p1={} p2={} q1={} q2={}", c.p1, c.p2, c.q1, c.q2),
                    Err(e) => println!("  {e}"),
                }
            }
        }
    }

    println!("\ncanonical networks at unit moduli, viscosities 2:");
    for kind in ModelKind::ALL {
        let params = MaterialParams::from_values(kind, [1.0, 1.0, 2.0, 2.0]);
        let net = canonical_network(&params);
        let compiled =
            to_burgers(&transfer_function(&net)).expect("canonical networks are Burgers");
        let direct = coeffs_from_model(&params).expect("positive parameters");
        println!("{kind}: {net}");
        println!(
            "   compiled {:?}  closed form {:?}",
            compiled.as_array(),
            direct.as_array()
        );
    }
}
