//! Storage and loss moduli: the analytic Burgers values next to those fitted
//! from small-amplitude oscillatory 3D runs.

use rheolab::compare::moduli_from_3d;
use rheolab::{coeffs_from_model, complex_modulus, MaterialParams, ModelKind};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let gamma0 = 1e-3;
    for kind in ModelKind::ALL {
        let params = MaterialParams::from_values(kind, [1.0, 2.0, 3.0, 0.5]);
        let coeffs = coeffs_from_model(&params)?;
        println!(
            "{kind} ({params}); plateau q2/p2 = {:.6}",
            coeffs.glassy_modulus()
        );
        println!(
            "{:>8} {:>11} {:>11} {:>11} {:>11}",
            "omega", "G'", "G'' ", "G' 3D", "G'' 3D"
        );
        for omega in [0.01, 0.1, 1.0, 10.0, 100.0] {
            let (gp, gpp) = complex_modulus(&coeffs, omega);
            let (gp3, gpp3) = moduli_from_3d(&params, omega, gamma0)?;
            println!("{omega:>8} {gp:>11.6} {gpp:>11.6} {gp3:>11.6} {gpp3:>11.6}");
        }
        println!();
    }
    Ok(())
}
