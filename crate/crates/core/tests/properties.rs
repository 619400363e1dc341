//! Property tests for the structural invariants of every module.

use dynr::cli::{self, OmegaSpec, RunConfig, Suite, VerificationReport};
use dynr::holofun::{
    addition_residual, direct_branch, f_eval, f_jet, series_branch, Canonical, Holomorphic, ScalarFunction,
};
use dynr::identities::{check_b, check_d, DIdentity};
use dynr::liealg::{ad, bracket, catalog, dual_basis, transpose_wrt_form, AlgebraElement, LieAlgebra};
use dynr::matfun::{
    apply_fun_contour_adaptive, apply_fun_spectral, apply_fun_taylor, frechet, frechet_fd, max_abs,
    spectral_decompose,
};
use dynr::rmat::{canonical_r, domain_check, gradient_pairing, Method};
use dynr::ybe::{cdybe_residual, equivariance_residual};
use dynr::{Operator, Tolerances};
use num_complex::Complex64;
use proptest::prelude::*;

const ALGEBRAS: [&str; 5] = ["abelian(3)", "sl2", "sl2_real", "oscillator", "direct_sum(sl2,sl2)"];

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn algebra(i: usize) -> LieAlgebra {
    catalog(ALGEBRAS[i % ALGEBRAS.len()]).unwrap()
}

fn element(a: &LieAlgebra, raw: &[f64]) -> AlgebraElement {
    AlgebraElement::from_real(&raw[..a.dim()])
}

fn coords() -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(-1.0f64..1.0, 6)
}

fn complex_in(r: f64) -> impl Strategy<Value = Complex64> {
    (-r..r, -r..r).prop_map(|(x, y)| c(x, y))
}

/// `V diag(d) V^-1` with a well-conditioned `V` and spectrum `d`.
fn similar(d: &[Complex64], v: &[f64]) -> Operator {
    let n = d.len();
    let v = Operator::from_fn(n, n, |i, j| {
        if i == j {
            c(1.0, 0.0)
        } else {
            c(0.3 * v[(i * n + j) % v.len()], 0.0)
        }
    });
    let vi = v.clone().try_inverse().unwrap();
    &v * Operator::from_diagonal(&nalgebra::DVector::from_vec(d.to_vec())) * vi
}

/// Spectrum points at least 0.3 apart inside the disk of radius 2.
fn separated_spectrum() -> impl Strategy<Value = Vec<Complex64>> {
    prop::collection::vec(complex_in(2.0), 4..=8).prop_filter("separated", |d| {
        d.iter().enumerate().all(|(i, a)| d[i + 1..].iter().all(|b| (a - b).norm() > 0.3))
    })
}

fn config(cases: u32) -> ProptestConfig {
    ProptestConfig { cases, failure_persistence: None, ..ProptestConfig::default() }
}

proptest! {
    #![proptest_config(config(48))]

    #[test]
    fn form_is_ad_invariant(i in 0usize..5, x in coords(), y in coords(), z in coords()) {
        let a = algebra(i);
        let (x, y, z) = (element(&a, &x), element(&a, &y), element(&a, &z));
        let lhs = a.pairing(&bracket(&a, &x, &y).unwrap(), &z).unwrap();
        let rhs = a.pairing(&y, &bracket(&a, &x, &z).unwrap()).unwrap();
        prop_assert!((lhs + rhs).norm() < 1e-12);
    }

    #[test]
    fn ad_is_form_antisymmetric(i in 0usize..5, w in coords()) {
        let a = algebra(i);
        let tol = Tolerances::default();
        let t = ad(&a, &element(&a, &w)).unwrap();
        prop_assert!(max_abs(&(transpose_wrt_form(&a, &t, &tol).unwrap() + &t)) < 1e-12);
    }

    #[test]
    fn form_transpose_is_an_involution(i in 0usize..5, m in prop::collection::vec(-1.0f64..1.0, 36)) {
        let a = algebra(i);
        let n = a.dim();
        let tol = Tolerances::default();
        let op = Operator::from_fn(n, n, |r, s| c(m[r * n + s], m[(s * n + r + 7) % 36]));
        let back = transpose_wrt_form(&a, &transpose_wrt_form(&a, &op, &tol).unwrap(), &tol).unwrap();
        prop_assert!(max_abs(&(back - op)) < 1e-12);
    }

    #[test]
    fn bracket_is_antisymmetric_and_bilinear(i in 0usize..5, x in coords(), y in coords(), z in coords(), s in -2.0f64..2.0) {
        let a = algebra(i);
        let (x, y, z) = (element(&a, &x), element(&a, &y), element(&a, &z));
        let xy = bracket(&a, &x, &y).unwrap();
        prop_assert!((&xy + &bracket(&a, &y, &x).unwrap()).max_abs() < 1e-14);
        let lhs = bracket(&a, &(&x.scale(c(s, 0.0)) + &z), &y).unwrap();
        let rhs = &xy.scale(c(s, 0.0)) + &bracket(&a, &z, &y).unwrap();
        prop_assert!((&lhs - &rhs).max_abs() < 1e-13);
    }

    #[test]
    fn dual_basis_is_dual(i in 0usize..5) {
        let a = algebra(i);
        let d = dual_basis(&a, &Tolerances::default()).unwrap();
        for j in 0..a.dim() {
            for k in 0..a.dim() {
                let p = a.pairing(&AlgebraElement::basis(a.dim(), j), &d.element(k)).unwrap();
                let delta = if j == k { 1.0 } else { 0.0 };
                prop_assert!((p - delta).norm() < 1e-14);
            }
        }
    }

    #[test]
    fn jet_value_is_eval(z in complex_in(3.0)) {
        prop_assume!(z.norm() > 1e-3);
        let j = f_jet(z, 0).unwrap();
        prop_assert_eq!(j.value(), f_eval(z).unwrap());
    }

    #[test]
    fn parity_of_derivatives(z in complex_in(3.0), k in 0usize..6) {
        let f = Canonical::default();
        prop_assume!(f.singularity_distance(z) > 0.3);
        let (p, m) = (f.jet(z, k).unwrap().derivative(k), f.jet(-z, k).unwrap().derivative(k));
        let sign = if k % 2 == 0 { -1.0 } else { 1.0 };
        prop_assert!((m - p * sign).norm() <= 1e-12 * (1.0 + p.norm()));
    }

    #[test]
    fn branches_agree_on_annulus(r in 0.5f64..1.5, theta in 0.0f64..std::f64::consts::TAU) {
        let z = Complex64::from_polar(r, theta);
        let s = series_branch(z, 4);
        let d = direct_branch(z, 4).unwrap();
        prop_assert!((s.value() - d.value()).norm() < 1e-13);
        for k in 1..=4 {
            let scale = 1.0 + d.derivative(k).norm();
            prop_assert!((s.derivative(k) - d.derivative(k)).norm() < 1e-11 * scale, "k = {}", k);
        }
    }

    #[test]
    fn first_derivative_matches_difference_quotient(z in complex_in(3.0)) {
        let f = Canonical::default();
        prop_assume!(f.singularity_distance(z) > 0.5);
        let h = 1e-5;
        let fd = (f_eval(z + h).unwrap() - f_eval(z - h).unwrap()) / (2.0 * h);
        prop_assert!((f.jet(z, 1).unwrap().derivative(1) - fd).norm() < 1e-8);
    }

    #[test]
    fn addition_formula(x in complex_in(3.0), y in complex_in(3.0)) {
        let f = Canonical::default();
        prop_assume!(x.norm() > 0.1 && y.norm() > 0.1 && (x + y).norm() > 0.1);
        prop_assume!([x, y, x + y].iter().all(|&z| f.singularity_distance(z) > 0.5));
        prop_assert!(addition_residual(x, y).unwrap().norm() < 1e-12);
    }

    #[test]
    fn spectral_projectors(d in separated_spectrum(), v in prop::collection::vec(-1.0f64..1.0, 64)) {
        let t = similar(&d, &v);
        let sd = spectral_decompose(&t, &Tolerances::default()).unwrap();
        prop_assert_eq!(sd.clusters.len(), d.len());
        prop_assert!(sd.residuals(&t).max() < 1e-9);
        prop_assert!(sd.is_diagonalizable());
    }

    #[test]
    fn back_ends_agree(d in separated_spectrum(), v in prop::collection::vec(-1.0f64..1.0, 64)) {
        let tol = Tolerances::default();
        let f = Canonical::default();
        prop_assume!(d.iter().all(|&z| f.singularity_distance(z) > 0.5));
        let t = similar(&d, &v);
        let spectral = apply_fun_spectral(&f, &spectral_decompose(&t, &tol).unwrap()).unwrap();
        let contour = apply_fun_contour_adaptive(&f, &t, &tol).unwrap();
        prop_assert!(max_abs(&(&spectral - &contour)) < 1e-6);
    }

    #[test]
    fn taylor_agrees_inside_radius(d in prop::collection::vec(complex_in(0.5), 4..=6), v in prop::collection::vec(-1.0f64..1.0, 64)) {
        prop_assume!(d.iter().enumerate().all(|(i, a)| d[i + 1..].iter().all(|b| (a - b).norm() > 0.05)));
        let tol = Tolerances::default();
        let f = Canonical::default();
        let t = similar(&d, &v);
        let coeffs = f.taylor_at_zero(48).unwrap();
        let taylor = apply_fun_taylor(&coeffs, &t).unwrap();
        let contour = apply_fun_contour_adaptive(&f, &t, &tol).unwrap();
        prop_assert!(max_abs(&(taylor - contour)) < 1e-9);
    }

    #[test]
    fn functional_calculus_is_multiplicative(d in separated_spectrum(), v in prop::collection::vec(-1.0f64..1.0, 64)) {
        let tol = Tolerances::default();
        let f = ScalarFunction::canonical();
        prop_assume!(d.iter().all(|&z| f.singularity_distance(z) > 0.5));
        let t = similar(&d, &v);
        let sd = spectral_decompose(&t, &tol).unwrap();
        let g = f.clone().times(ScalarFunction::identity().plus(ScalarFunction::constant(c(1.0, 0.0))));
        let lhs = apply_fun_spectral(&g, &sd).unwrap();
        let rhs = apply_fun_spectral(&f, &sd).unwrap() * (&t + Operator::identity(t.nrows(), t.nrows()));
        prop_assert!(max_abs(&(lhs - rhs)) < 1e-9);
    }

    #[test]
    fn frechet_is_linear_and_matches_differences(i in 1usize..5, w in coords(), s1 in coords(), s2 in coords(), k in -2.0f64..2.0) {
        let a = algebra(i);
        let tol = Tolerances::default();
        let w = element(&a, &w);
        prop_assume!(domain_check(&a, &w, &tol));
        let f = Canonical::default();
        let t = ad(&a, &w).unwrap();
        let (d1, d2) = (ad(&a, &element(&a, &s1)).unwrap(), ad(&a, &element(&a, &s2)).unwrap());
        let kc = c(k, 0.0);
        let combined = frechet(&f, &t, &(&d1 * kc + &d2), &tol).unwrap();
        let separate = frechet(&f, &t, &d1, &tol).unwrap() * kc + frechet(&f, &t, &d2, &tol).unwrap();
        prop_assert!(max_abs(&(&combined - &separate)) < 1e-9);
        let fd = frechet_fd(&f, &t, &d2, 1e-5, &tol).unwrap();
        prop_assert!(max_abs(&(frechet(&f, &t, &d2, &tol).unwrap() - fd)) < 1e-6);
    }

    #[test]
    fn r_matrix_is_form_antisymmetric(i in 0usize..5, w in coords(), m in 0usize..2) {
        let a = algebra(i);
        let tol = Tolerances::default();
        let w = element(&a, &w);
        prop_assume!(domain_check(&a, &w, &tol));
        let method = [Method::Spectral, Method::Contour][m];
        let r = canonical_r(&a, &w, method, &tol).unwrap();
        prop_assert!(r.antisymmetry_residual(&a, &tol).unwrap() < 1e-8);
        prop_assert!(r.projector_commutation() < 1e-8);
    }

    #[test]
    fn r_matrix_commutes_with_ad_omega(i in 0usize..5, w in coords()) {
        let a = algebra(i);
        let tol = Tolerances::default();
        let w = element(&a, &w);
        prop_assume!(domain_check(&a, &w, &tol));
        let r = canonical_r(&a, &w, Method::Spectral, &tol).unwrap();
        prop_assert!(max_abs(&(&r.r * &r.ad_omega - &r.ad_omega * &r.r)) < 1e-10);
    }

    #[test]
    fn gradient_pairing_is_bilinear(w in coords(), x in coords(), y in coords(), z in coords(), k in -2.0f64..2.0) {
        let a = catalog("sl2").unwrap();
        let tol = Tolerances::default();
        let w = element(&a, &w);
        prop_assume!(domain_check(&a, &w, &tol));
        let (x, y, z) = (element(&a, &x), element(&a, &y), element(&a, &z));
        let kc = c(k, 0.0);
        let g = |p: &AlgebraElement, q: &AlgebraElement| gradient_pairing(&a, &w, p, q, &tol).unwrap().value;
        let lhs = g(&(&x.scale(kc) + &z), &y);
        let rhs = &g(&x, &y).scale(kc) + &g(&z, &y);
        prop_assert!((&lhs - &rhs).max_abs() < 1e-10);
        let lhs = g(&x, &(&y.scale(kc) + &z));
        let rhs = &g(&x, &y).scale(kc) + &g(&x, &z);
        prop_assert!((&lhs - &rhs).max_abs() < 1e-10);
    }

    #[test]
    fn yang_baxter_and_equivariance(i in 0usize..5, w in coords(), s in coords()) {
        let a = algebra(i);
        let tol = Tolerances::default();
        let w = element(&a, &w);
        prop_assume!(domain_check(&a, &w, &tol));
        prop_assert!(cdybe_residual(&a, &w, Method::Spectral, &tol).unwrap().max < 1e-8);
        let s = element(&a, &s);
        prop_assert!(equivariance_residual(&a, &w, &s, Method::Spectral, &tol).unwrap() < 1e-8);
    }

    #[test]
    fn combinatorial_identities_hold(which in 1u8..=4, k in 0usize..=10, l in 0usize..=10, m in 0usize..=20) {
        let params = match which {
            1 => vec![k, l],
            2 => vec![k.min(l), l],
            3 => vec![k, l, m % (l + 1)],
            _ => {
                prop_assume!(k > 0);
                vec![k, l, l + 1 + m % k]
            }
        };
        let case = check_b(which, &params).unwrap();
        prop_assert!(case.pass, "{:?}", case);
        prop_assert_eq!(case.residual, 0.0);
    }

    #[test]
    fn derivative_identities_hold(which in 0usize..10, k in 0usize..=3, l in 0usize..=3, x in complex_in(2.5), y in complex_in(2.5)) {
        let f = Canonical::default();
        prop_assume!(x.norm() > 0.75 && y.norm() > 0.75 && (x + y).norm() > 0.75);
        prop_assume!([x, y, x + y, x - y].iter().all(|&z| f.singularity_distance(z) > 1.5));
        let d = DIdentity::ALL[which % DIdentity::ALL.len()];
        let case = check_d(d, k, l, x, y, &Tolerances::default()).unwrap();
        prop_assert!(case.pass, "{:?}", case);
    }
}

proptest! {
    #![proptest_config(config(8))]

    #[test]
    fn reports_round_trip_and_are_reproducible(i in 0usize..5, seed in 0u64..1000, count in 1usize..4) {
        let cfg = RunConfig {
            algebra: Some(ALGEBRAS[i].into()),
            omega: Some(OmegaSpec::Random { count, seed }),
            suites: vec![Suite::Validate, Suite::Rmatrix, Suite::Cdybe],
            seed,
            ..RunConfig::default()
        };
        let report = cli::run(&cfg).unwrap();
        let json = report.to_json();
        prop_assert_eq!(&VerificationReport::from_json(&json).unwrap(), &report);
        prop_assert_eq!(cli::run(&cfg).unwrap().to_json(), json);
        prop_assert!(report.pass);
    }
}
