//! Bivariate truncated Taylor arithmetic in total degree.
//!
//! A [`BiSeries`] of degree `N` stores `c[a][b]` for `a + b <= N`, the
//! coefficient of `u^a v^b` where `u = x - x0`, `v = y - y0`.

use num_complex::Complex64;

use super::jet::Series;
use crate::error::{Error, Result};

const ZERO: Complex64 = Complex64 { re: 0.0, im: 0.0 };

#[derive(Debug, Clone, PartialEq)]
pub struct BiSeries {
    degree: usize,
    coeffs: Vec<Complex64>,
}

impl BiSeries {
    pub fn zero(degree: usize) -> Self {
        Self { degree, coeffs: vec![ZERO; (degree + 1) * (degree + 1)] }
    }

    pub fn constant(c: Complex64, degree: usize) -> Self {
        let mut s = Self::zero(degree);
        s.set(0, 0, c);
        s
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn get(&self, a: usize, b: usize) -> Complex64 {
        if a + b > self.degree {
            ZERO
        } else {
            self.coeffs[a * (self.degree + 1) + b]
        }
    }

    fn set(&mut self, a: usize, b: usize, c: Complex64) {
        self.coeffs[a * (self.degree + 1) + b] = c;
    }

    /// Lift a univariate series in `u`.
    pub fn in_u(s: &Series, degree: usize) -> Self {
        let mut out = Self::zero(degree);
        for a in 0..=degree.min(s.order()) {
            out.set(a, 0, s.coeffs[a]);
        }
        out
    }

    /// Lift a univariate series in `v`.
    pub fn in_v(s: &Series, degree: usize) -> Self {
        let mut out = Self::zero(degree);
        for b in 0..=degree.min(s.order()) {
            out.set(0, b, s.coeffs[b]);
        }
        out
    }

    /// Compose a univariate series with `u + v`.
    pub fn in_sum(s: &Series, degree: usize) -> Self {
        let mut out = Self::zero(degree);
        for n in 0..=degree.min(s.order()) {
            let mut binom = 1.0;
            for a in 0..=n {
                out.set(a, n - a, s.coeffs[n] * binom);
                binom = binom * (n - a) as f64 / (a + 1) as f64;
            }
        }
        out
    }

    pub fn add(&self, rhs: &Self) -> Self {
        self.zip(rhs, |x, y| x + y)
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.zip(rhs, |x, y| x - y)
    }

    fn zip(&self, rhs: &Self, op: impl Fn(Complex64, Complex64) -> Complex64) -> Self {
        let degree = self.degree.min(rhs.degree);
        let mut out = Self::zero(degree);
        for a in 0..=degree {
            for b in 0..=degree - a {
                out.set(a, b, op(self.get(a, b), rhs.get(a, b)));
            }
        }
        out
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let degree = self.degree.min(rhs.degree);
        let mut out = Self::zero(degree);
        for a in 0..=degree {
            for b in 0..=degree - a {
                let mut acc = ZERO;
                for i in 0..=a {
                    for j in 0..=b {
                        acc += self.get(i, j) * rhs.get(a - i, b - j);
                    }
                }
                out.set(a, b, acc);
            }
        }
        out
    }

    /// Quotient by the linear form `c0 + p u + q v`.
    ///
    /// An exactly vanishing `c0` triggers homogeneous division, which drops
    /// one degree; `0 < |c0| < delta_pole` is rejected.
    pub fn div_linear(&self, c0: Complex64, p: Complex64, q: Complex64, delta_pole: f64) -> Result<Self> {
        if c0 != ZERO {
            if c0.norm() < delta_pole {
                return Err(Error::Domain(format!(
                    "denominator {c0} is within {delta_pole:e} of zero"
                )));
            }
            let mut out = Self::zero(self.degree);
            for a in 0..=self.degree {
                for b in 0..=self.degree - a {
                    let mut acc = self.get(a, b);
                    if a > 0 {
                        acc -= p * out.get(a - 1, b);
                    }
                    if b > 0 {
                        acc -= q * out.get(a, b - 1);
                    }
                    out.set(a, b, acc / c0);
                }
            }
            return Ok(out);
        }
        if self.degree == 0 {
            return Err(Error::Domain("cannot divide a constant by a vanishing form".into()));
        }
        let scale = self.coeffs.iter().fold(1.0f64, |m, c| m.max(c.norm()));
        if self.get(0, 0).norm() > 1e-12 * scale {
            return Err(Error::Domain(
                "numerator does not vanish where the denominator does".into(),
            ));
        }
        let degree = self.degree - 1;
        let mut out = Self::zero(degree);
        for d in 0..=degree {
            if p != ZERO {
                for a in (0..=d).rev() {
                    let upper = if a < d { q * out.get(a + 1, d - a - 1) } else { ZERO };
                    out.set(a, d - a, (self.get(a + 1, d - a) - upper) / p);
                }
            } else if q != ZERO {
                for a in 0..=d {
                    let lower = if a > 0 { p * out.get(a - 1, d + 1 - a) } else { ZERO };
                    out.set(a, d - a, (self.get(a, d + 1 - a) - lower) / q);
                }
            } else {
                return Err(Error::Domain("denominator form is identically zero".into()));
            }
        }
        Ok(out)
    }

    /// Mixed partials `d^(a+b)/dx^a dy^b` for `a <= k`, `b <= l`.
    pub fn to_bijet(&self, point: (Complex64, Complex64), orders: (usize, usize)) -> Result<BiJet> {
        let (k, l) = orders;
        if k + l > self.degree {
            return Err(Error::OrderOverflow { order: k + l, max: self.degree });
        }
        let fact = |n: usize| (1..=n).fold(1.0, |acc, i| acc * i as f64);
        let coeffs = (0..=k)
            .map(|a| (0..=l).map(|b| self.get(a, b) * fact(a) * fact(b)).collect())
            .collect();
        Ok(BiJet { point, orders, coeffs })
    }
}

/// Mixed partial derivatives of a bivariate expression at a point.
#[derive(Debug, Clone, PartialEq)]
pub struct BiJet {
    pub point: (Complex64, Complex64),
    pub orders: (usize, usize),
    /// `coeffs[a][b]` is the partial of order `a` in x and `b` in y.
    pub coeffs: Vec<Vec<Complex64>>,
}

impl BiJet {
    pub fn partial(&self, a: usize, b: usize) -> Complex64 {
        self.coeffs[a][b]
    }

    /// The top-order partial `d^(k+l)/dx^k dy^l`.
    pub fn top(&self) -> Complex64 {
        self.coeffs[self.orders.0][self.orders.1]
    }
}

/// The seven building blocks of the addition formula.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BiExpr {
    /// The constant 1/4.
    Quarter,
    /// f(x) f(y)
    FxFy,
    /// f(x+y) f(x)
    FxyFx,
    /// f(x+y) f(y)
    FxyFy,
    /// (f(x) + f(y)) / (x + y)
    SumOverSum,
    /// (f(x+y) - f(y)) / x
    DiffOverX,
    /// (f(x+y) - f(x)) / y
    DiffOverY,
}

impl BiExpr {
    pub const ALL: [BiExpr; 7] = [
        BiExpr::Quarter,
        BiExpr::FxFy,
        BiExpr::FxyFx,
        BiExpr::FxyFy,
        BiExpr::SumOverSum,
        BiExpr::DiffOverX,
        BiExpr::DiffOverY,
    ];

    pub fn name(self) -> &'static str {
        match self {
            BiExpr::Quarter => "quarter",
            BiExpr::FxFy => "f(x)f(y)",
            BiExpr::FxyFx => "f(x+y)f(x)",
            BiExpr::FxyFy => "f(x+y)f(y)",
            BiExpr::SumOverSum => "(f(x)+f(y))/(x+y)",
            BiExpr::DiffOverX => "(f(x+y)-f(y))/x",
            BiExpr::DiffOverY => "(f(x+y)-f(x))/y",
        }
    }

    /// Expand at `(x, y)` to total degree `degree`, given a univariate jet source.
    pub fn expand(
        self,
        x: Complex64,
        y: Complex64,
        degree: usize,
        jet: impl Fn(Complex64, usize) -> Result<Series>,
        delta_pole: f64,
    ) -> Result<BiSeries> {
        let one = Complex64::new(1.0, 0.0);
        // One spare degree absorbs the loss from homogeneous division.
        let d = degree + 1;
        let fx = || jet(x, d).map(|s| BiSeries::in_u(&s, d));
        let fy = || jet(y, d).map(|s| BiSeries::in_v(&s, d));
        let fxy = || jet(x + y, d).map(|s| BiSeries::in_sum(&s, d));
        match self {
            BiExpr::Quarter => Ok(BiSeries::constant(Complex64::new(0.25, 0.0), d)),
            BiExpr::FxFy => Ok(fx()?.mul(&fy()?)),
            BiExpr::FxyFx => Ok(fxy()?.mul(&fx()?)),
            BiExpr::FxyFy => Ok(fxy()?.mul(&fy()?)),
            BiExpr::SumOverSum => fx()?.add(&fy()?).div_linear(x + y, one, one, delta_pole),
            BiExpr::DiffOverX => fxy()?.sub(&fy()?).div_linear(x, one, ZERO, delta_pole),
            BiExpr::DiffOverY => fxy()?.sub(&fx()?).div_linear(y, ZERO, one, delta_pole),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn sum_composition_has_binomial_coefficients() {
        // (u+v)^2
        let s = Series::new(vec![c(0.), c(0.), c(1.)]);
        let b = BiSeries::in_sum(&s, 2);
        assert_eq!(b.get(2, 0), c(1.));
        assert_eq!(b.get(1, 1), c(2.));
        assert_eq!(b.get(0, 2), c(1.));
    }

    #[test]
    fn regular_division_inverts_multiplication() {
        let num = BiSeries::in_sum(&Series::new(vec![c(1.), c(2.), c(3.), c(4.)]), 3);
        let den = {
            let mut d = BiSeries::constant(c(2.), 3);
            d.set(1, 0, c(0.5));
            d.set(0, 1, c(-1.));
            d
        };
        let q = num.div_linear(c(2.), c(0.5), c(-1.), 1e-6).unwrap();
        let back = q.mul(&den);
        for a in 0..=3 {
            for b in 0..=3 - a {
                assert!((back.get(a, b) - num.get(a, b)).norm() < 1e-14);
            }
        }
    }

    #[test]
    fn homogeneous_division_by_u_plus_v() {
        // (u^2 - v^2) / (u + v) = u - v
        let mut num = BiSeries::zero(3);
        num.set(2, 0, c(1.));
        num.set(0, 2, c(-1.));
        let q = num.div_linear(c(0.), c(1.), c(1.), 1e-6).unwrap();
        assert_eq!(q.degree(), 2);
        assert_eq!(q.get(1, 0), c(1.));
        assert_eq!(q.get(0, 1), c(-1.));
        assert_eq!(q.get(0, 0), c(0.));
        assert_eq!(q.get(2, 0), c(0.));
    }

    #[test]
    fn homogeneous_division_by_v_alone() {
        // (v + u v) / v = 1 + u
        let mut num = BiSeries::zero(2);
        num.set(0, 1, c(1.));
        num.set(1, 1, c(1.));
        let q = num.div_linear(c(0.), c(0.), c(1.), 1e-6).unwrap();
        assert_eq!(q.get(0, 0), c(1.));
        assert_eq!(q.get(1, 0), c(1.));
    }

    #[test]
    fn near_zero_denominator_is_rejected() {
        let num = BiSeries::constant(c(1.), 2);
        assert!(matches!(num.div_linear(c(1e-9), c(1.), c(1.), 1e-6), Err(Error::Domain(_))));
        assert!(matches!(num.div_linear(c(0.), c(1.), c(1.), 1e-6), Err(Error::Domain(_))));
    }
}
