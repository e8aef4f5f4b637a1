//! Spring–dashpot network compiler.
//!
//! Networks are written in a small grammar (see [`parse`]), reduced to a
//! rational transfer function `σ/ε` in the transform variable `s`, and, when
//! the function has the right shape, read off as Burgers coefficients.

mod parse;
mod rational;

use std::fmt;

use thiserror::Error;

pub use parse::{parse, ParseError};
pub use rational::RationalTF;

use crate::burgers::BurgersCoeffs;
use crate::models::MaterialParams;

#[derive(Debug, Clone, PartialEq)]
pub enum NetworkExpr {
    /// Spring of modulus `μ`, law `σ = 2με`.
    Spring(f64),
    /// Dashpot of viscosity `η`, law `σ = ηε̇`.
    Dashpot(f64),
    /// Elements sharing the stress; strains add.
    Series(Vec<NetworkExpr>),
    /// Elements sharing the strain; stresses add.
    Parallel(Vec<NetworkExpr>),
}

impl NetworkExpr {
    pub fn spring(mu: f64) -> NetworkExpr {
        NetworkExpr::Spring(mu)
    }

    pub fn dashpot(eta: f64) -> NetworkExpr {
        NetworkExpr::Dashpot(eta)
    }

    pub fn series(children: impl IntoIterator<Item = NetworkExpr>) -> NetworkExpr {
        NetworkExpr::Series(children.into_iter().collect())
    }

    pub fn parallel(children: impl IntoIterator<Item = NetworkExpr>) -> NetworkExpr {
        NetworkExpr::Parallel(children.into_iter().collect())
    }
}

impl fmt::Display for NetworkExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list = |f: &mut fmt::Formatter<'_>, name: &str, items: &[NetworkExpr]| {
            write!(f, "{name}(")?;
            for (i, item) in items.iter().enumerate() {
                if i > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{item}")?;
            }
            write!(f, ")")
        };
        match self {
            NetworkExpr::Spring(mu) => write!(f, "spring(mu={mu:?})"),
            NetworkExpr::Dashpot(eta) => write!(f, "dashpot(eta={eta:?})"),
            NetworkExpr::Series(items) => list(f, "series", items),
            NetworkExpr::Parallel(items) => list(f, "parallel", items),
        }
    }
}

pub fn transfer_function(expr: &NetworkExpr) -> RationalTF {
    match expr {
        NetworkExpr::Spring(mu) => RationalTF::constant(2.0 * mu),
        NetworkExpr::Dashpot(eta) => RationalTF::new(vec![0.0, *eta], vec![1.0]),
        NetworkExpr::Series(items) => fold(items, RationalTF::series),
        NetworkExpr::Parallel(items) => fold(items, RationalTF::parallel),
    }
}

fn fold(items: &[NetworkExpr], combine: fn(&RationalTF, &RationalTF) -> RationalTF) -> RationalTF {
    let mut iter = items.iter().map(transfer_function);
    let first = iter
        .next()
        .expect("composite networks have at least two children");
    iter.fold(first, |acc, tf| combine(&acc, &tf))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NotBurgersReason {
    SolidLike,
    OrderAboveTwo,
    NegativeCoefficient,
}

impl fmt::Display for NotBurgersReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            NotBurgersReason::SolidLike => "solid-like",
            NotBurgersReason::OrderAboveTwo => "order > 2",
            NotBurgersReason::NegativeCoefficient => "negative coefficient",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("not of Burgers form: {0}")]
pub struct NotBurgersForm(pub NotBurgersReason);

/// Read `(q₁s + q₂s²) / (1 + p₁s + p₂s²)` off a reduced transfer function.
///
/// Lower-order (Maxwell-like, Newtonian) shapes are accepted with the
/// missing coefficients set to zero; anything else is rejected.
pub fn to_burgers(tf: &RationalTF) -> Result<BurgersCoeffs, NotBurgersForm> {
    let (num, den) = (tf.numerator(), tf.denominator());
    if num[0] != 0.0 || den[0] == 0.0 {
        return Err(NotBurgersForm(NotBurgersReason::SolidLike));
    }
    if num.len() > 3 || den.len() > 3 {
        return Err(NotBurgersForm(NotBurgersReason::OrderAboveTwo));
    }
    if num.iter().chain(den).any(|c| *c < 0.0) {
        return Err(NotBurgersForm(NotBurgersReason::NegativeCoefficient));
    }
    let at = |p: &[f64], i: usize| p.get(i).copied().unwrap_or(0.0);
    Ok(BurgersCoeffs {
        p1: at(den, 1),
        p2: at(den, 2),
        q1: at(num, 1),
        q2: at(num, 2),
    })
}

/// The spring-dashpot arrangement whose 1D equations match each model's reduction.
pub fn canonical_network(params: &MaterialParams) -> NetworkExpr {
    use NetworkExpr as N;
    match *params {
        MaterialParams::M1 {
            mu3,
            mu_p,
            eta1,
            eta2,
        } => N::series([
            N::dashpot(eta1),
            N::parallel([
                N::spring(mu_p),
                N::series([N::spring(mu3), N::dashpot(eta2)]),
            ]),
        ]),
        MaterialParams::M2 {
            mu2,
            mu3,
            eta1,
            eta_g,
        } => N::series([
            N::spring(mu3),
            N::parallel([
                N::dashpot(eta_g),
                N::series([N::spring(mu2), N::dashpot(eta1)]),
            ]),
        ]),
        MaterialParams::M3 {
            mu2,
            mu3,
            eta1,
            eta2,
        } => N::series([
            N::spring(mu3),
            N::parallel([N::spring(mu2), N::dashpot(eta2)]),
            N::dashpot(eta1),
        ]),
        MaterialParams::M4 {
            mu2,
            mu4,
            eta1,
            eta3,
        } => N::parallel([
            N::series([N::spring(mu2), N::dashpot(eta1)]),
            N::series([N::spring(mu4), N::dashpot(eta3)]),
        ]),
    }
}

/// Parse and reduce in one go.
pub fn compile(text: &str) -> Result<(NetworkExpr, RationalTF), ParseError> {
    let expr = parse(text)?;
    let tf = transfer_function(&expr);
    Ok((expr, tf))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::ModelKind;

    #[test]
    fn transfer_function_examples() {
        let tf = transfer_function(&parse("spring(mu=1)").unwrap());
        assert_eq!((tf.numerator(), tf.denominator()), (&[2.0][..], &[1.0][..]));

        let tf = transfer_function(&parse("series(spring(mu=1), dashpot(eta=2))").unwrap());
        assert_eq!(
            (tf.numerator(), tf.denominator()),
            (&[0.0, 2.0][..], &[1.0, 1.0][..])
        );

        let tf = transfer_function(&parse("parallel(spring(mu=1), spring(mu=1))").unwrap());
        assert_eq!((tf.numerator(), tf.denominator()), (&[4.0][..], &[1.0][..]));
    }

    #[test]
    fn to_burgers_examples() {
        let maxwell = transfer_function(&parse("series(spring(mu=1), dashpot(eta=2))").unwrap());
        assert_eq!(
            to_burgers(&maxwell).unwrap().as_array(),
            [1.0, 0.0, 2.0, 0.0]
        );

        let spring = transfer_function(&NetworkExpr::Spring(1.0));
        assert_eq!(
            to_burgers(&spring),
            Err(NotBurgersForm(NotBurgersReason::SolidLike))
        );

        let d = MaterialParams::M4 {
            mu2: 1.0,
            mu4: 1.0,
            eta1: 2.0,
            eta3: 2.0,
        };
        let c = to_burgers(&transfer_function(&canonical_network(&d))).unwrap();
        assert_eq!(c.as_array(), [2.0, 1.0, 4.0, 4.0]);

        let m3 = MaterialParams::M3 {
            mu2: 1.0,
            mu3: 1.0,
            eta1: 2.0,
            eta2: 2.0,
        };
        let c = to_burgers(&transfer_function(&canonical_network(&m3))).unwrap();
        assert_eq!(c.as_array(), [3.0, 1.0, 2.0, 2.0]);
    }

    #[test]
    fn higher_order_is_rejected() {
        let text =
            "parallel(series(spring(mu=1), dashpot(eta=1)), series(spring(mu=2), dashpot(eta=5)), \
                    series(spring(mu=3), dashpot(eta=1)))";
        let tf = transfer_function(&parse(text).unwrap());
        assert_eq!(
            to_burgers(&tf),
            Err(NotBurgersForm(NotBurgersReason::OrderAboveTwo))
        );
    }

    #[test]
    fn kelvin_voigt_is_solid_like() {
        let tf = transfer_function(&parse("parallel(spring(mu=1), dashpot(eta=1))").unwrap());
        assert_eq!(
            to_burgers(&tf),
            Err(NotBurgersForm(NotBurgersReason::SolidLike))
        );
    }

    #[test]
    fn model4_network_is_two_parallel_maxwell_branches() {
        let net = canonical_network(&MaterialParams::from_values(
            ModelKind::M4,
            [1.0, 2.0, 3.0, 4.0],
        ));
        let NetworkExpr::Parallel(branches) = &net else {
            panic!("{net}")
        };
        assert_eq!(branches.len(), 2);
        for b in branches {
            assert!(matches!(
                b,
                NetworkExpr::Series(items)
                    if matches!(items[..], [NetworkExpr::Spring(_), NetworkExpr::Dashpot(_)])
            ));
        }
    }

    #[test]
    fn all_canonical_networks_are_burgers() {
        for kind in ModelKind::ALL {
            let p = MaterialParams::from_values(kind, [0.7, 1.3, 2.1, 0.4]);
            assert!(to_burgers(&transfer_function(&canonical_network(&p))).is_ok());
        }
    }

    #[test]
    fn printing_uses_grammar_syntax() {
        let net = NetworkExpr::series([NetworkExpr::spring(1.0), NetworkExpr::dashpot(2.5e-7)]);
        assert_eq!(
            net.to_string(),
            "series(spring(mu=1.0), dashpot(eta=2.5e-7))"
        );
        assert_eq!(parse(&net.to_string()).unwrap(), net);
    }
}
