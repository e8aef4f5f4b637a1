//! Steady-state sinusoid fitting for oscillatory runs.

use crate::tensor::Tensor3;

/// Fraction of a run discarded as transient before fitting.
pub const TRANSIENT_FRACTION: f64 = 0.8;

/// Least-squares fit `y ≈ a·sin(ωt) + b·cos(ωt) + c`. Returns `(a, b, c)`,
/// or `None` when the samples do not determine the fit.
pub fn fit_sinusoid(times: &[f64], values: &[f64], omega: f64) -> Option<(f64, f64, f64)> {
    if times.len() != values.len() || times.len() < 3 {
        return None;
    }
    let mut ata = [[0.0; 3]; 3];
    let mut aty = [0.0; 3];
    for (&t, &y) in times.iter().zip(values) {
        let (s, c) = (omega * t).sin_cos();
        let row = [s, c, 1.0];
        for i in 0..3 {
            aty[i] += row[i] * y;
            for j in 0..3 {
                ata[i][j] += row[i] * row[j];
            }
        }
    }
    let inv = Tensor3::from_rows(ata).inverse().ok()?.rows();
    let x: [f64; 3] = std::array::from_fn(|i| (0..3).map(|j| inv[i][j] * aty[j]).sum());
    Some((x[0], x[1], x[2]))
}

/// Index range of the post-transient window: the last `1 − TRANSIENT_FRACTION`
/// of the run, shortened to a whole number of periods when it spans at least one.
pub fn steady_window(times: &[f64], omega: f64) -> std::ops::Range<usize> {
    let Some(&t_last) = times.last() else {
        return 0..0;
    };
    let t_first = times[0];
    let t_start = t_first + TRANSIENT_FRACTION * (t_last - t_first);
    let period = std::f64::consts::TAU / omega;
    let span = t_last - t_start;
    let t_start = if span >= period {
        t_last - (span / period).floor() * period
    } else {
        t_start
    };
    let begin = times.partition_point(|&t| t < t_start - 1e-12 * t_last.abs().max(1.0));
    begin..times.len()
}

/// Storage and loss moduli from a stress history under `ε = ε₀ sin(ωt)`.
pub fn extract_moduli(
    times: &[f64],
    stress: &[f64],
    eps_amplitude: f64,
    omega: f64,
) -> Option<(f64, f64)> {
    let w = steady_window(times, omega);
    let (a, b, _) = fit_sinusoid(&times[w.clone()], &stress[w], omega)?;
    Some((a / eps_amplitude, b / eps_amplitude))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn recovers_exact_sinusoid() {
        let omega = 1.7;
        let times: Vec<f64> = (0..2000).map(|k| k as f64 * 0.01).collect();
        let values: Vec<f64> = times
            .iter()
            .map(|t| 0.3 * (omega * t).sin() - 1.2 * (omega * t).cos() + 0.05)
            .collect();
        let (a, b, c) = fit_sinusoid(&times, &values, omega).unwrap();
        assert!((a - 0.3).abs() < 1e-12);
        assert!((b + 1.2).abs() < 1e-12);
        assert!((c - 0.05).abs() < 1e-12);
    }

    #[test]
    fn window_is_whole_periods_at_the_end() {
        let omega = 2.0 * std::f64::consts::PI; // period 1
        let times: Vec<f64> = (0..=1000).map(|k| k as f64 * 0.01).collect();
        let w = steady_window(&times, omega);
        assert!((times[w.start] - 8.0).abs() < 1e-9);
        assert_eq!(w.end, times.len());
    }

    #[test]
    fn too_few_samples() {
        assert!(fit_sinusoid(&[0.0, 1.0], &[0.0, 1.0], 1.0).is_none());
    }
}
