//! The canonical function `f(z) = coth(z/2)/2 - 1/z`, its jets, and the
//! scalar identities it satisfies.

mod bernoulli;
mod bijet;
mod jet;

use std::f64::consts::PI;

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Zero};

pub use bernoulli::{bernoulli, bernoulli_table, canonical_series, factorial, MAX_BERNOULLI};
pub use bijet::{BiExpr, BiJet, BiSeries};
pub use jet::{coth, Jet, Series};

use crate::error::{Error, Result};
use crate::tol::{Tolerances, SERIES_RADIUS, SERIES_TERMS};

/// A scalar function usable by the matrix-function back-ends.
pub trait Holomorphic: Sync {
    /// Value and derivatives up to order `m` at `z`.
    fn jet(&self, z: Complex64, m: usize) -> Result<Jet>;

    fn eval(&self, z: Complex64) -> Result<Complex64> {
        Ok(self.jet(z, 0)?.value())
    }

    /// Distance from `z` to the nearest singularity (`INFINITY` if entire).
    fn singularity_distance(&self, z: Complex64) -> f64;

    /// Taylor coefficients at 0, `terms` of them.
    fn taylor_at_zero(&self, terms: usize) -> Result<Vec<Complex64>> {
        Ok(self.jet(Complex64::zero(), terms.saturating_sub(1))?.to_series().coeffs)
    }
}

/// Distance from `z` to the nearest point of `2 pi i Z` other than 0.
pub fn pole_distance(z: Complex64) -> f64 {
    let period = 2.0 * PI;
    let k = (z.im / period).round();
    let nearest = |k: f64| Complex64::new(z.re, z.im - k * period).norm();
    if k == 0.0 {
        nearest(if z.im >= 0.0 { 1.0 } else { -1.0 })
    } else {
        nearest(k)
    }
}

/// The canonical function with its pole-exclusion radius.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Canonical {
    pub delta_pole: f64,
}

impl Default for Canonical {
    fn default() -> Self {
        Self { delta_pole: Tolerances::default().delta_pole }
    }
}

impl Canonical {
    pub fn new(delta_pole: f64) -> Self {
        Self { delta_pole }
    }

    fn check(&self, z: Complex64) -> Result<()> {
        if !z.re.is_finite() || !z.im.is_finite() {
            return Err(Error::Domain(format!("non-finite argument {z}")));
        }
        if pole_distance(z) <= self.delta_pole {
            return Err(Error::Pole { z });
        }
        Ok(())
    }
}

impl Holomorphic for Canonical {
    fn jet(&self, z: Complex64, m: usize) -> Result<Jet> {
        self.check(z)?;
        Ok(if z.norm() < SERIES_RADIUS { series_branch(z, m) } else { direct_branch(z, m)? })
    }

    fn singularity_distance(&self, z: Complex64) -> f64 {
        pole_distance(z)
    }

    fn taylor_at_zero(&self, terms: usize) -> Result<Vec<Complex64>> {
        let mut c: Vec<Complex64> = canonical_series(SERIES_TERMS)
            .iter()
            .map(|r| Complex64::new(rational_f64(r), 0.0))
            .collect();
        c.resize(terms, Complex64::zero());
        Ok(c)
    }
}

fn rational_f64(r: &BigRational) -> f64 {
    crate::liealg::rational_to_f64(r)
}

/// Jet of `f` from the Bernoulli series; accurate for `|z| < SERIES_RADIUS`.
pub fn series_branch(z: Complex64, m: usize) -> Jet {
    let a: Vec<f64> = canonical_series(SERIES_TERMS).iter().map(rational_f64).collect();
    let top = a.len();
    let mut coeffs = Vec::with_capacity(m + 1);
    for k in 0..=m {
        // d^k/dz^k sum a_n z^n = sum n!/(n-k)! a_n z^(n-k), by Horner in z.
        let mut acc = Complex64::zero();
        for n in (k..top).rev() {
            let falling = ((n - k + 1)..=n).fold(1.0, |p, i| p * i as f64);
            acc = acc * z + a[n] * falling;
        }
        coeffs.push(acc);
    }
    Jet { point: z, coeffs }
}

/// Jet of `f` from `coth(z/2)/2 - 1/z`; requires `z != 0` away from poles.
pub fn direct_branch(z: Complex64, m: usize) -> Result<Jet> {
    if z.is_zero() {
        return Err(Error::Domain("direct formula is singular at 0".into()));
    }
    let half = Series::coth_half(z, m).scale(Complex64::new(0.5, 0.0));
    let s = &half - &Series::reciprocal_of_variable(z, m);
    Ok(s.to_jet(z))
}

/// `f(z)` with the default pole exclusion.
pub fn f_eval(z: Complex64) -> Result<Complex64> {
    Canonical::default().eval(z)
}

/// `f(z), f'(z), ..., f^(m)(z)` with the default pole exclusion.
pub fn f_jet(z: Complex64, m: usize) -> Result<Jet> {
    Canonical::default().jet(z, m)
}

/// Scalar functions built from the canonical one, including the
/// perturbations used as negative controls.
#[derive(Debug, Clone, PartialEq)]
pub enum ScalarFunction {
    Canonical(Canonical),
    /// `coth(z/2)/2`, i.e. the canonical function without its `-1/z` term.
    CothHalf(Canonical),
    /// `sum c_k z^k`
    Polynomial(Vec<Complex64>),
    Scaled(Complex64, Box<ScalarFunction>),
    Sum(Box<ScalarFunction>, Box<ScalarFunction>),
    Product(Box<ScalarFunction>, Box<ScalarFunction>),
}

impl ScalarFunction {
    pub fn canonical() -> Self {
        Self::Canonical(Canonical::default())
    }

    pub fn identity() -> Self {
        Self::Polynomial(vec![Complex64::zero(), Complex64::one()])
    }

    pub fn constant(c: Complex64) -> Self {
        Self::Polynomial(vec![c])
    }

    pub fn scaled(self, c: f64) -> Self {
        Self::Scaled(Complex64::new(c, 0.0), Box::new(self))
    }

    pub fn plus(self, other: Self) -> Self {
        Self::Sum(Box::new(self), Box::new(other))
    }

    pub fn times(self, other: Self) -> Self {
        Self::Product(Box::new(self), Box::new(other))
    }

    fn series(&self, z: Complex64, m: usize) -> Result<Series> {
        Ok(match self {
            Self::Canonical(c) => c.jet(z, m)?.to_series(),
            Self::CothHalf(c) => {
                if z.is_zero() || pole_distance(z) <= c.delta_pole || z.norm() <= c.delta_pole {
                    return Err(Error::Pole { z });
                }
                Series::coth_half(z, m).scale(Complex64::new(0.5, 0.0))
            }
            Self::Polynomial(p) => {
                // Taylor shift of the polynomial to z.
                let mut coeffs = vec![Complex64::zero(); m + 1];
                for (k, out) in coeffs.iter_mut().enumerate() {
                    let mut acc = Complex64::zero();
                    for n in (k..p.len()).rev() {
                        acc = acc * z + p[n] * binomial(n, k);
                    }
                    *out = acc;
                }
                Series::new(coeffs)
            }
            Self::Scaled(c, g) => g.series(z, m)?.scale(*c),
            Self::Sum(g, h) => &g.series(z, m)? + &h.series(z, m)?,
            Self::Product(g, h) => &g.series(z, m)? * &h.series(z, m)?,
        })
    }
}

fn binomial(n: usize, k: usize) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

impl Holomorphic for ScalarFunction {
    fn jet(&self, z: Complex64, m: usize) -> Result<Jet> {
        Ok(self.series(z, m)?.to_jet(z))
    }

    fn singularity_distance(&self, z: Complex64) -> f64 {
        match self {
            Self::Canonical(_) => pole_distance(z),
            Self::CothHalf(_) => pole_distance(z).min(z.norm()),
            Self::Polynomial(_) => f64::INFINITY,
            Self::Scaled(_, g) => g.singularity_distance(z),
            Self::Sum(g, h) | Self::Product(g, h) => {
                g.singularity_distance(z).min(h.singularity_distance(z))
            }
        }
    }

    fn taylor_at_zero(&self, terms: usize) -> Result<Vec<Complex64>> {
        match self {
            Self::Canonical(c) => c.taylor_at_zero(terms),
            _ => Ok(self.series(Complex64::zero(), terms.saturating_sub(1))?.coeffs),
        }
    }
}

/// Residual of the addition formula for the canonical function.
pub fn addition_residual(x: Complex64, y: Complex64) -> Result<Complex64> {
    let c = Canonical::default();
    addition_residual_with(&c, x, y, c.delta_pole)
}

/// Residual of the addition formula with `g` substituted for `f`.
pub fn addition_residual_with(
    g: &dyn Holomorphic,
    x: Complex64,
    y: Complex64,
    delta_pole: f64,
) -> Result<Complex64> {
    let s = x + y;
    for (name, d) in [("x", x), ("y", y), ("x+y", s)] {
        if d.norm() < delta_pole {
            return Err(Error::Domain(format!("{name} = {d} is within {delta_pole:e} of zero")));
        }
    }
    let (fx, fy, fs) = (g.eval(x)?, g.eval(y)?, g.eval(s)?);
    // Grouped so that swapping x and y permutes identical operands.
    let sym = fx * fy - fs * (fx + fy) - (fx + fy) / s;
    let cross = (fs - fy) / x + (fs - fx) / y;
    Ok(Complex64::new(0.25, 0.0) + sym - cross)
}

/// Solve `f' + 2f/x + f^2 = 1/4`, `f(0) = 0`, as a formal power series
/// without assuming oddness. Returns `a_1, ..., a_order`.
pub fn ode_series_solve(order: usize) -> Vec<BigRational> {
    let mut a: Vec<BigRational> = vec![BigRational::zero(); order + 1];
    for n in 1..=order {
        let mut rhs = if n == 1 {
            BigRational::new(1.into(), 4.into())
        } else {
            BigRational::zero()
        };
        for i in 1..n.saturating_sub(1) {
            let j = n - 1 - i;
            rhs -= &a[i] * &a[j];
        }
        a[n] = rhs / BigRational::from_integer(((n + 2) as i64).into());
    }
    a.remove(0);
    a
}

/// Mixed partials of one of the addition-formula building blocks.
pub fn bijet_eval(expr: BiExpr, x: Complex64, y: Complex64, k: usize, l: usize) -> Result<BiJet> {
    bijet_eval_with(expr, x, y, k, l, Canonical::default().delta_pole)
}

pub fn bijet_eval_with(
    expr: BiExpr,
    x: Complex64,
    y: Complex64,
    k: usize,
    l: usize,
    delta_pole: f64,
) -> Result<BiJet> {
    let max = SERIES_TERMS;
    if k + l > max {
        return Err(Error::OrderOverflow { order: k + l, max });
    }
    let f = Canonical::new(delta_pole);
    let s = expr.expand(x, y, k + l, |z, m| Ok(f.jet(z, m)?.to_series()), delta_pole)?;
    s.to_bijet((x, y), (k, l))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn rat(p: i64, q: i64) -> BigRational {
        BigRational::new(p.into(), q.into())
    }

    #[test]
    fn known_values() {
        assert_eq!(f_eval(c(0., 0.)).unwrap(), c(0., 0.));
        // 0.5*coth(1) - 0.5 to 20 digits
        let v = f_eval(c(2., 0.)).unwrap();
        assert!((v.re - 0.156_517_642_749_665_54).abs() < 1e-15, "{v}");
        let v = f_eval(c(0., PI)).unwrap();
        assert!((v - c(0., 1.0 / PI)).norm() < 1e-15);
    }

    #[test]
    fn jet_at_zero_matches_bernoulli_values() {
        let j = f_jet(c(0., 0.), 3).unwrap();
        assert_eq!(j.coeffs[0], c(0., 0.));
        assert!((j.coeffs[1] - c(1. / 12., 0.)).norm() < 1e-16);
        assert_eq!(j.coeffs[2], c(0., 0.));
        assert!((j.coeffs[3] - c(-1. / 120., 0.)).norm() < 1e-16);
    }

    #[test]
    fn poles_are_rejected() {
        assert!(matches!(f_eval(c(0., 2.0 * PI)), Err(Error::Pole { .. })));
        assert!(matches!(f_eval(c(0., -4.0 * PI + 1e-7)), Err(Error::Pole { .. })));
        assert!(f_eval(c(0., 2.0 * PI + 1e-3)).is_ok());
    }

    #[test]
    fn pole_distance_skips_origin() {
        assert!((pole_distance(c(0., 0.)) - 2.0 * PI).abs() < 1e-15);
        assert!((pole_distance(c(3., 0.1)) - c(3., 0.1 - 2.0 * PI).norm()).abs() < 1e-15);
    }

    #[test]
    fn addition_formula_at_reference_point() {
        let r = addition_residual(c(0.7, 0.), c(0.3, -0.2)).unwrap();
        assert!(r.norm() < 1e-12, "{r}");
        let sym = addition_residual(c(0.3, -0.2), c(0.7, 0.)).unwrap();
        assert_eq!(r, sym);
    }

    #[test]
    fn addition_formula_detects_perturbation() {
        let g = ScalarFunction::canonical().plus(ScalarFunction::Polynomial(vec![c(0., 0.), c(0.01, 0.)]));
        let r = addition_residual_with(&g, c(0.7, 0.), c(0.3, 0.), 1e-6).unwrap();
        assert!(r.norm() > 1e-4);
    }

    #[test]
    fn addition_formula_rejects_vanishing_denominators() {
        assert!(matches!(addition_residual(c(0.5, 0.), c(-0.5, 0.)), Err(Error::Domain(_))));
        assert!(matches!(addition_residual(c(0., 0.), c(0.5, 0.)), Err(Error::Domain(_))));
    }

    #[test]
    fn ode_coefficients() {
        let a = ode_series_solve(6);
        assert_eq!(a[0], rat(1, 12));
        assert_eq!(a[1], rat(0, 1));
        assert_eq!(a[2], rat(-1, 720));
        assert_eq!(a[3], rat(0, 1));
        assert_eq!(a[4], rat(1, 30240));
    }

    #[test]
    fn ode_agrees_with_bernoulli_through_eleven() {
        let a = ode_series_solve(11);
        let b = canonical_series(6);
        for n in 1..=11 {
            assert_eq!(a[n - 1], b[n], "coefficient {n}");
        }
    }

    #[test]
    fn branches_agree_on_annulus() {
        for k in 0..24 {
            let t = k as f64 * 0.26;
            let r = 0.6 + 0.035 * k as f64;
            let z = c(r * t.cos(), r * t.sin());
            let a = series_branch(z, 3);
            let b = direct_branch(z, 3).unwrap();
            for m in 0..=3 {
                assert!((a.coeffs[m] - b.coeffs[m]).norm() < 1e-12, "z={z} m={m}");
            }
        }
    }

    #[test]
    fn polynomial_function_jet() {
        // z^2 at z=3: 9, 6, 2
        let p = ScalarFunction::Polynomial(vec![c(0., 0.), c(0., 0.), c(1., 0.)]);
        let j = p.jet(c(3., 0.), 3).unwrap();
        assert_eq!(j.coeffs, vec![c(9., 0.), c(6., 0.), c(2., 0.), c(0., 0.)]);
    }

    #[test]
    fn bijet_of_product_is_product_of_jets() {
        let (x, y) = (c(0.8, 0.1), c(-1.4, 0.3));
        let b = bijet_eval(BiExpr::FxFy, x, y, 2, 3).unwrap();
        let (jx, jy) = (f_jet(x, 2).unwrap(), f_jet(y, 3).unwrap());
        for a in 0..=2 {
            for bb in 0..=3 {
                let expect = jx.coeffs[a] * jy.coeffs[bb];
                assert!((b.partial(a, bb) - expect).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn bijet_quarter() {
        let b = bijet_eval(BiExpr::Quarter, c(0.3, 0.), c(0.4, 0.), 1, 1).unwrap();
        assert_eq!(b.partial(0, 0), c(0.25, 0.));
        assert_eq!(b.partial(1, 0), c(0., 0.));
        assert_eq!(b.partial(1, 1), c(0., 0.));
    }

    #[test]
    fn bijet_sum_over_sum_limit() {
        let y = c(0.9, 0.);
        let b = bijet_eval(BiExpr::SumOverSum, -y, y, 0, 0).unwrap();
        let d = f_jet(y, 1).unwrap().coeffs[1];
        assert!((b.top() - d).norm() < 1e-14);
    }
}
