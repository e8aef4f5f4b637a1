mod common;

use nalgebra::Matrix3;
use num_complex::Complex64;
use proptest::prelude::*;
use rheolab::models::{internal_rates, ModelState};
use rheolab::netcomp::{parse, transfer_function, NetworkExpr};
use rheolab::tensor::{dev, spd_sqrt, SymTensor3, Tensor3};
use rheolab::{canonical_network, complex_modulus, to_burgers, MaterialParams, ModelKind};

fn to_na(a: &SymTensor3) -> Matrix3<f64> {
    Matrix3::from_fn(|i, j| a[(i, j)])
}

fn spd() -> impl Strategy<Value = SymTensor3> {
    (prop::array::uniform9(-2.0..2.0f64), 0.05..1.0f64).prop_map(|(m, shift)| {
        let m = Matrix3::from_row_slice(&m);
        let a = m.transpose() * m + Matrix3::identity() * shift;
        SymTensor3::new(
            a[(0, 0)],
            a[(1, 1)],
            a[(2, 2)],
            a[(0, 1)],
            a[(0, 2)],
            a[(1, 2)],
        )
    })
}

fn unimodular_spd() -> impl Strategy<Value = SymTensor3> {
    spd().prop_map(|a| a * a.det().powf(-1.0 / 3.0))
}

fn rotation() -> impl Strategy<Value = Tensor3> {
    (prop::array::uniform3(-1.0..1.0f64), -3.0..3.0f64)
        .prop_filter("axis must be nonzero", |(v, _)| {
            v.iter().map(|x| x * x).sum::<f64>() > 1e-3
        })
        .prop_map(|(v, angle)| {
            let axis = nalgebra::Unit::new_normalize(nalgebra::Vector3::from(v));
            let r = nalgebra::Rotation3::from_axis_angle(&axis, angle).into_inner();
            Tensor3::from_rows(std::array::from_fn(|i| std::array::from_fn(|j| r[(i, j)])))
        })
}

fn network(depth: u32) -> BoxedStrategy<NetworkExpr> {
    let leaf = prop_oneof![
        (0.1..10.0f64).prop_map(NetworkExpr::Spring),
        (0.1..10.0f64).prop_map(NetworkExpr::Dashpot),
    ];
    if depth == 0 {
        return leaf.boxed();
    }
    let child = network(depth - 1);
    prop_oneof![
        2 => leaf,
        1 => prop::collection::vec(child.clone(), 2..4).prop_map(NetworkExpr::Series),
        1 => prop::collection::vec(child, 2..4).prop_map(NetworkExpr::Parallel),
    ]
    .boxed()
}

fn coeffs_close(x: &rheolab::RationalTF, y: &rheolab::RationalTF) -> bool {
    let same = |p: &[f64], q: &[f64]| {
        let scale = p.iter().chain(q).fold(0.0f64, |m, c| m.max(c.abs()));
        p.len() == q.len() && p.iter().zip(q).all(|(a, b)| (a - b).abs() <= 1e-12 * scale)
    };
    same(x.numerator(), y.numerator()) && same(x.denominator(), y.denominator())
}

fn params() -> impl Strategy<Value = MaterialParams> {
    (0usize..4, prop::array::uniform4(0.1..10.0f64))
        .prop_map(|(k, v)| MaterialParams::from_values(ModelKind::ALL[k], v))
}

proptest! {
    #[test]
    fn sqrt_squares_back(a in spd()) {
        let v = spd_sqrt(&a).unwrap();
        let back = to_na(&v) * to_na(&v);
        prop_assert!((back - to_na(&a)).norm() <= 1e-12 * to_na(&a).norm());
    }

    #[test]
    fn sqrt_matches_reference_eigensolver(a in spd()) {
        let eig = to_na(&a).symmetric_eigen();
        let root = eig.eigenvectors
            * Matrix3::from_diagonal(&eig.eigenvalues.map(f64::sqrt))
            * eig.eigenvectors.transpose();
        prop_assert!((to_na(&spd_sqrt(&a).unwrap()) - root).norm() <= 1e-10 * root.norm());
    }

    #[test]
    fn sqrt_commutes_with_rotation(a in spd(), q in rotation()) {
        let lhs = spd_sqrt(&a.rotate(&q)).unwrap();
        let rhs = spd_sqrt(&a).unwrap().rotate(&q);
        prop_assert!((lhs - rhs).norm() <= 1e-10 * rhs.norm());
    }

    #[test]
    fn det_of_sqrt(a in spd()) {
        let d = spd_sqrt(&a).unwrap().det();
        prop_assert!((d * d - a.det()).abs() <= 1e-10 * a.det().max(1e-12) + 1e-14);
    }

    #[test]
    fn dev_is_idempotent_and_trace_free(a in spd()) {
        let d = dev(&a);
        prop_assert!(d.trace().abs() <= 1e-13 * a.norm());
        prop_assert!((dev(&d) - d).norm() <= 1e-14 * a.norm());
    }

    #[test]
    fn inverse_is_two_sided(a in spd()) {
        let full = a.to_full();
        let inv = full.inverse().unwrap();
        let cond = to_na(&a).norm() * Matrix3::from_fn(|i, j| inv[(i, j)]).norm();
        prop_assert!((full * inv - Tensor3::IDENTITY).norm() <= 1e-13 * cond);
        prop_assert!((inv * full - Tensor3::IDENTITY).norm() <= 1e-13 * cond);
    }

    #[test]
    fn internal_rates_are_trace_free(p in params(), a in unimodular_spd(), b in unimodular_spd()) {
        let r = internal_rates(&p, &ModelState { a, b }).unwrap();
        prop_assert!(r.first.trace().abs() <= 1e-13 * r.first.norm().max(1e-300));
        prop_assert!(r.second.trace().abs() <= 1e-13 * r.second.norm().max(1e-300));
    }

    #[test]
    fn composition_is_commutative_and_associative(
        a in network(1), b in network(1), c in network(1), w in 0.05..20.0f64,
    ) {
        let s = Complex64::new(0.0, w);
        let ev = |e: &NetworkExpr| transfer_function(e).eval(s);
        let close = |x: Complex64, y: Complex64| (x - y).norm() <= 1e-9 * x.norm().max(y.norm()).max(1e-12);
        for compose in [NetworkExpr::Series as fn(Vec<NetworkExpr>) -> NetworkExpr, NetworkExpr::Parallel] {
            let ab = ev(&compose(vec![a.clone(), b.clone()]));
            let ba = ev(&compose(vec![b.clone(), a.clone()]));
            prop_assert!(close(ab, ba));
            let left = ev(&compose(vec![compose(vec![a.clone(), b.clone()]), c.clone()]));
            let right = ev(&compose(vec![a.clone(), compose(vec![b.clone(), c.clone()])]));
            let flat = ev(&compose(vec![a.clone(), b.clone(), c.clone()]));
            prop_assert!(close(left, right));
            prop_assert!(close(left, flat));

            // same reduced coefficient vectors, not just the same values
            let tf = |e: NetworkExpr| transfer_function(&e);
            let l = tf(compose(vec![compose(vec![a.clone(), b.clone()]), c.clone()]));
            let r = tf(compose(vec![a.clone(), compose(vec![b.clone(), c.clone()])]));
            let swapped = tf(compose(vec![b.clone(), a.clone()]));
            let direct = tf(compose(vec![a.clone(), b.clone()]));
            prop_assert!(coeffs_close(&l, &r));
            prop_assert!(coeffs_close(&direct, &swapped));
        }
    }

    #[test]
    fn series_and_parallel_follow_impedance_rules(a in network(1), b in network(1), w in 0.05..20.0f64) {
        let s = Complex64::new(0.0, w);
        let (ga, gb) = (transfer_function(&a).eval(s), transfer_function(&b).eval(s));
        let par = transfer_function(&NetworkExpr::Parallel(vec![a.clone(), b.clone()])).eval(s);
        let ser = transfer_function(&NetworkExpr::Series(vec![a, b])).eval(s);
        prop_assert!((par - (ga + gb)).norm() <= 1e-9 * par.norm());
        let expected = 1.0 / (1.0 / ga + 1.0 / gb);
        prop_assert!((ser - expected).norm() <= 1e-9 * expected.norm());
    }

    #[test]
    fn printing_round_trips(e in network(3)) {
        prop_assert_eq!(parse(&e.to_string()).unwrap(), e);
    }

    #[test]
    fn model_moduli_are_real_and_passive(p in params(), w in 1e-3..1e3f64, x in 1e-3..1e3f64) {
        let coeffs = to_burgers(&transfer_function(&canonical_network(&p))).unwrap();
        let (gp, gpp) = complex_modulus(&coeffs, w);
        prop_assert!(gp >= 0.0 && gpp >= 0.0);
        // real on the real axis
        let tf = transfer_function(&canonical_network(&p));
        prop_assert!(tf.eval(Complex64::new(x, 0.0)).im == 0.0);
        let c = common::closed_form(&p);
        let g = common::modulus(c, w);
        prop_assert!((Complex64::new(gp, gpp) - g).norm() <= 1e-12 * g.norm());
    }
}
