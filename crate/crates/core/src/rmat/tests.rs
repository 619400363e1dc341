use super::*;
use crate::holofun::f_eval;
use crate::liealg::catalog;
use std::f64::consts::PI;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn tol() -> Tolerances {
    Tolerances::default()
}

fn sl2() -> LieAlgebra {
    catalog("sl2").unwrap()
}

fn el(coords: &[f64]) -> AlgebraElement {
    AlgebraElement::from_real(coords)
}

#[test]
fn domain_examples() {
    let ab = catalog("abelian(3)").unwrap();
    assert!(domain_check(&ab, &el(&[1., -2., 3.]), &tol()));
    let w = AlgebraElement::new(vec![c(0., PI), c(0., 0.), c(0., 0.)]);
    assert!(!domain_check(&sl2(), &w, &tol()));
    assert!(domain_check(&sl2(), &el(&[0., 1., 0.]), &tol()));
}

#[test]
fn abelian_r_vanishes() {
    let ab = catalog("abelian(3)").unwrap();
    let r = canonical_r(&ab, &el(&[0.4, -0.2, 0.9]), Method::Spectral, &tol()).unwrap();
    assert_eq!(max_abs(&r.r), 0.0);
}

#[test]
fn nilpotent_r_is_ad_over_twelve() {
    let a = sl2();
    let e = el(&[0., 1., 0.]);
    for m in Method::ALL {
        let r = canonical_r(&a, &e, m, &tol()).unwrap();
        let expect = ad(&a, &e).unwrap() / c(12., 0.);
        assert!(max_abs(&(&r.r - expect)) < 1e-12, "{m}");
    }
}

#[test]
fn diagonal_r_for_multiple_of_h() {
    let r = canonical_r(&sl2(), &el(&[0.3, 0., 0.]), Method::Spectral, &tol()).unwrap();
    let f6 = f_eval(c(0.6, 0.)).unwrap();
    assert!(r.r[(0, 0)].norm() < 1e-15);
    assert!((r.r[(1, 1)] - f6).norm() < 1e-14);
    assert!((r.r[(2, 2)] + f6).norm() < 1e-14);
    assert!(r.antisymmetry_residual(&sl2(), &tol()).unwrap() < 1e-14);
}

#[test]
fn rho_is_lowered_operator() {
    let a = catalog("oscillator").unwrap();
    let r = canonical_r(&a, &el(&[0.5, 0.2, -0.7, 0.1]), Method::Spectral, &tol()).unwrap();
    let d = dual_basis(&a, &tol()).unwrap().matrix;
    let raised = &d * &r.rho;
    assert!(max_abs(&(raised - &r.r)) < 1e-14);
}

#[test]
fn frechet_and_fd_agree() {
    let a = sl2();
    let (w, s) = (el(&[0.4, -0.7, 0.2]), el(&[0.1, 0.5, -0.9]));
    let d = directional_derivative(&a, &w, &s, DerivativeMethod::Frechet, &tol()).unwrap();
    let fd = directional_derivative(&a, &w, &s, DerivativeMethod::Fd, &tol()).unwrap();
    assert!(max_abs(&(d - fd)) < 1e-6);
}

#[test]
fn commuting_direction_gives_equivariance_trivially() {
    let a = sl2();
    let w = el(&[0.4, -0.7, 0.2]);
    let comm = bracket(&a, &w, &w).unwrap();
    let d = directional_derivative(&a, &w, &comm, DerivativeMethod::Frechet, &tol()).unwrap();
    assert_eq!(max_abs(&d), 0.0);
    let r = canonical_r(&a, &w, Method::Spectral, &tol()).unwrap();
    let adw = ad(&a, &w).unwrap();
    assert!(max_abs(&(&adw * &r.r - &r.r * &adw)) < 1e-14);
}

#[test]
fn gradient_pairing_on_e_and_f() {
    let a = sl2();
    let alpha = 0.3;
    let w = el(&[alpha, 0., 0.]);
    let (e, f) = (el(&[0., 1., 0.]), el(&[0., 0., 1.]));
    let g = gradient_pairing(&a, &w, &e, &f, &tol()).unwrap().value;
    let fp = Canonical::default().jet(c(2.0 * alpha, 0.), 1).unwrap().derivative(1);
    let expect = el(&[1., 0., 0.]).scale(-fp);
    assert!((&g - &expect).max_abs() < 1e-10, "{g:?}");
    let oracle = gradient_pairing_oracle(&a, &w, &e, &f, &tol()).unwrap();
    assert!((&oracle - &expect).max_abs() < 1e-14);
    let doubled = gradient_pairing(&a, &w, &e.scale(c(2., 0.)), &f, &tol()).unwrap().value;
    assert!((&doubled - &g.scale(c(2., 0.))).max_abs() < 1e-14);
}

#[test]
fn derivative_oracle_on_e_and_h() {
    let a = sl2();
    let alpha = 0.3;
    let w = el(&[alpha, 0., 0.]);
    let (e, h) = (el(&[0., 1., 0.]), el(&[1., 0., 0.]));
    let oracle = directional_derivative_oracle(&a, &w, &e, &h, &tol()).unwrap();
    let f2a = f_eval(c(2.0 * alpha, 0.)).unwrap();
    let expect = el(&[0., 1., 0.]).scale(-f2a / (2.0 * alpha) * 2.0);
    assert!((&oracle - &expect).max_abs() < 1e-14);
    let d = directional_derivative(&a, &w, &e, DerivativeMethod::Frechet, &tol()).unwrap();
    let direct = AlgebraElement::from(d * &h.coords);
    assert!((&direct - &oracle).max_abs() < 1e-8);
}

#[test]
fn derivative_oracle_limit_branch() {
    // X = H has eigenvalue 0: (D_H R) E = f'(2a) [H, E]
    let a = sl2();
    let w = el(&[0.3, 0., 0.]);
    let (h, e) = (el(&[1., 0., 0.]), el(&[0., 1., 0.]));
    let oracle = directional_derivative_oracle(&a, &w, &h, &e, &tol()).unwrap();
    let fp = Canonical::default().jet(c(0.6, 0.), 1).unwrap().derivative(1);
    assert!((&oracle - &el(&[0., 2., 0.]).scale(fp)).max_abs() < 1e-14);
    let d = directional_derivative(&a, &w, &h, DerivativeMethod::Frechet, &tol()).unwrap();
    assert!((&AlgebraElement::from(d * &e.coords) - &oracle).max_abs() < 1e-8);
}

#[test]
fn oracles_reject_bad_inputs() {
    let a = sl2();
    let w = el(&[0.3, 0., 0.]);
    let mixed = el(&[0., 1., 1.]);
    assert!(matches!(gradient_pairing_oracle(&a, &w, &mixed, &mixed, &tol()), Err(Error::NotEigenvector { .. })));
    let e = el(&[0., 1., 0.]);
    assert!(matches!(directional_derivative_oracle(&a, &e, &e, &e, &tol()), Err(Error::NotDiagonalizable)));
}

#[test]
fn realness_on_compact_and_split_forms() {
    let a = catalog("sl2").unwrap();
    let w = el(&[0., 1., -1.]);
    for j in 0..3 {
        let x = AlgebraElement::basis(3, j);
        assert!(realness_check(&a, &w, &x, Method::Spectral, &tol()).unwrap() < 1e-10);
    }
    let ab = catalog("abelian(2)").unwrap();
    assert_eq!(realness_check(&ab, &el(&[0.3, 0.1]), &el(&[1., 0.]), Method::Spectral, &tol()).unwrap(), 0.0);
}

#[test]
fn r_preserves_generalized_eigenspaces() {
    let a = catalog("direct_sum(sl2,sl2)").unwrap();
    let r = canonical_r(&a, &el(&[0.2, -0.5, 0.7, 0.9, 0.1, -0.3]), Method::Spectral, &tol()).unwrap();
    assert!(r.projector_commutation() < 1e-10);
}
