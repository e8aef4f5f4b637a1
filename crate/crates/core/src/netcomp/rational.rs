//! Rational functions of the transform variable `s` with real coefficients.

use std::fmt;

/// `num(s) / den(s)` with coefficients in ascending powers of `s`.
///
/// Kept reduced: trailing zeros trimmed, common factors `sᵏ` removed and,
/// when the denominator has a nonzero constant term, scaled so that term is 1.
#[derive(Debug, Clone, PartialEq)]
pub struct RationalTF {
    num: Vec<f64>,
    den: Vec<f64>,
}

fn trim(mut p: Vec<f64>) -> Vec<f64> {
    while p.len() > 1 && p.last() == Some(&0.0) {
        p.pop();
    }
    if p.is_empty() {
        p.push(0.0);
    }
    p
}

fn poly_add(a: &[f64], b: &[f64]) -> Vec<f64> {
    let n = a.len().max(b.len());
    (0..n)
        .map(|i| a.get(i).copied().unwrap_or(0.0) + b.get(i).copied().unwrap_or(0.0))
        .collect()
}

fn poly_mul(a: &[f64], b: &[f64]) -> Vec<f64> {
    let mut out = vec![0.0; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn lowest_power(p: &[f64]) -> Option<usize> {
    p.iter().position(|c| *c != 0.0)
}

impl RationalTF {
    /// Build and reduce. Panics if the denominator is identically zero.
    pub fn new(num: Vec<f64>, den: Vec<f64>) -> RationalTF {
        let mut num = trim(num);
        let mut den = trim(den);
        let den_low = lowest_power(&den).expect("denominator must not be identically zero");
        let shift = lowest_power(&num).map_or(den_low, |n| n.min(den_low));
        if shift > 0 {
            num = trim(num.split_off(shift.min(num.len() - 1)));
            den = den.split_off(shift);
        }
        if den[0] != 0.0 {
            let scale = den[0];
            num.iter_mut().for_each(|c| *c /= scale);
            den.iter_mut().for_each(|c| *c /= scale);
        }
        RationalTF { num, den }
    }

    pub fn constant(c: f64) -> RationalTF {
        RationalTF::new(vec![c], vec![1.0])
    }

    pub fn numerator(&self) -> &[f64] {
        &self.num
    }

    pub fn denominator(&self) -> &[f64] {
        &self.den
    }

    /// Moduli add: `G₁ + G₂`.
    pub fn parallel(&self, other: &RationalTF) -> RationalTF {
        RationalTF::new(
            poly_add(
                &poly_mul(&self.num, &other.den),
                &poly_mul(&other.num, &self.den),
            ),
            poly_mul(&self.den, &other.den),
        )
    }

    /// Compliances add: `1/G = 1/G₁ + 1/G₂`, i.e. `N₁N₂ / (N₁D₂ + N₂D₁)`.
    pub fn series(&self, other: &RationalTF) -> RationalTF {
        RationalTF::new(
            poly_mul(&self.num, &other.num),
            poly_add(
                &poly_mul(&self.num, &other.den),
                &poly_mul(&other.num, &self.den),
            ),
        )
    }

    pub fn eval(&self, s: num_complex::Complex64) -> num_complex::Complex64 {
        let horner = |p: &[f64]| {
            p.iter()
                .rev()
                .fold(num_complex::Complex64::new(0.0, 0.0), |acc, c| acc * s + c)
        };
        horner(&self.num) / horner(&self.den)
    }
}

impl fmt::Display for RationalTF {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list = |p: &[f64]| {
            p.iter()
                .map(|c| format!("{c:?}"))
                .collect::<Vec<_>>()
                .join(", ")
        };
        write!(
            f,
            "num = [{}]; den = [{}]",
            list(&self.num),
            list(&self.den)
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduces_common_monomials_and_normalizes() {
        let tf = RationalTF::new(vec![0.0, 0.0, 4.0], vec![0.0, 2.0, 2.0, 0.0]);
        assert_eq!(tf.numerator(), &[0.0, 2.0]);
        assert_eq!(tf.denominator(), &[1.0, 1.0]);
    }

    #[test]
    fn maxwell_element() {
        let spring = RationalTF::constant(2.0);
        let dashpot = RationalTF::new(vec![0.0, 2.0], vec![1.0]);
        let tf = spring.series(&dashpot);
        assert_eq!(tf.numerator(), &[0.0, 2.0]);
        assert_eq!(tf.denominator(), &[1.0, 1.0]);
    }

    #[test]
    fn parallel_constants_add() {
        let tf = RationalTF::constant(2.0).parallel(&RationalTF::constant(2.0));
        assert_eq!(tf.numerator(), &[4.0]);
        assert_eq!(tf.denominator(), &[1.0]);
    }
}
