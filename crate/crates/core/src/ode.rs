//! Fixed-step classical Runge–Kutta.

/// One RK4 step of `y' = f(t, y)` over `[t, t + h]`.
///
/// `f` is fallible so that state checks inside a stage (e.g. loss of
/// positive definiteness) abort the step.
pub fn rk4_step<const N: usize, E>(
    mut f: impl FnMut(f64, &[f64; N]) -> Result<[f64; N], E>,
    t: f64,
    y: &[f64; N],
    h: f64,
) -> Result<[f64; N], E> {
    let offset = |y: &[f64; N], k: &[f64; N], s: f64| -> [f64; N] {
        std::array::from_fn(|i| y[i] + s * k[i])
    };
    let k1 = f(t, y)?;
    let k2 = f(t + 0.5 * h, &offset(y, &k1, 0.5 * h))?;
    let k3 = f(t + 0.5 * h, &offset(y, &k2, 0.5 * h))?;
    let k4 = f(t + h, &offset(y, &k3, h))?;
    Ok(std::array::from_fn(|i| {
        y[i] + h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i])
    }))
}

/// Number of whole steps of size `dt` needed to reach `t_end`, tolerating
/// rounding in `t_end / dt`.
pub fn step_count(t_end: f64, dt: f64) -> usize {
    let n = t_end / dt;
    let rounded = n.round();
    if (n - rounded).abs() <= 1e-9 * rounded.max(1.0) {
        rounded as usize
    } else {
        n.ceil() as usize
    }
}

/// Fixed time grid: `t_end`, step `dt`, and a recording stride.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TimeGrid {
    pub t_end: f64,
    pub dt: f64,
    pub record_every: usize,
}

impl TimeGrid {
    pub fn new(t_end: f64, dt: f64) -> TimeGrid {
        TimeGrid {
            t_end,
            dt,
            record_every: 1,
        }
    }

    pub fn record_every(mut self, n: usize) -> TimeGrid {
        self.record_every = n;
        self
    }

    pub fn is_valid(&self) -> bool {
        self.dt > 0.0
            && self.dt.is_finite()
            && self.t_end >= 0.0
            && self.t_end.is_finite()
            && self.record_every > 0
    }

    pub fn steps(&self) -> usize {
        step_count(self.t_end, self.dt)
    }

    /// Whether step `k` (1-based count of completed steps) is recorded.
    pub fn records(&self, k: usize) -> bool {
        k.is_multiple_of(self.record_every) || k == self.steps()
    }
}
