//! Truncated univariate Taylor arithmetic.
//!
//! [`Series`] stores normalized coefficients `c_k = g^(k)(z0)/k!`; [`Jet`] is
//! the public view holding plain derivatives `g^(k)(z0)`.

use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};

const ZERO: Complex64 = Complex64 { re: 0.0, im: 0.0 };
const ONE: Complex64 = Complex64 { re: 1.0, im: 0.0 };

#[derive(Debug, Clone, PartialEq)]
pub struct Series {
    pub coeffs: Vec<Complex64>,
}

impl Series {
    pub fn new(coeffs: Vec<Complex64>) -> Self {
        Self { coeffs }
    }

    pub fn constant(c: Complex64, order: usize) -> Self {
        let mut coeffs = vec![ZERO; order + 1];
        coeffs[0] = c;
        Self { coeffs }
    }

    /// The independent variable `z0 + t`.
    pub fn variable(z0: Complex64, order: usize) -> Self {
        let mut s = Self::constant(z0, order);
        if order >= 1 {
            s.coeffs[1] = ONE;
        }
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn scale(&self, s: Complex64) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * s).collect())
    }

    /// `1 / (z0 + t)` expanded around `z0 != 0`.
    pub fn reciprocal_of_variable(z0: Complex64, order: usize) -> Self {
        let inv = 1.0 / z0;
        let mut coeffs = Vec::with_capacity(order + 1);
        let mut p = inv;
        for _ in 0..=order {
            coeffs.push(p);
            p *= -inv;
        }
        Self { coeffs }
    }

    /// `coth((z0 + t)/2)` via `g' = (1 - g^2)/2`.
    pub fn coth_half(z0: Complex64, order: usize) -> Self {
        let mut g = vec![ZERO; order + 1];
        g[0] = coth(z0 / 2.0);
        for n in 0..order {
            let mut conv = ZERO;
            for i in 0..=n {
                conv += g[i] * g[n - i];
            }
            let rhs = if n == 0 { ONE - conv } else { -conv };
            g[n + 1] = rhs / (2.0 * (n + 1) as f64);
        }
        Self { coeffs: g }
    }

    /// Quotient `self / den`. When both leading coefficients vanish the common
    /// factor `t` is cancelled first, which costs one order of accuracy.
    pub fn div(&self, den: &Series) -> Result<Series> {
        let mut num = self.coeffs.clone();
        let mut den = den.coeffs.clone();
        let order = num.len().min(den.len()) - 1;
        num.truncate(order + 1);
        den.truncate(order + 1);
        while den.first() == Some(&ZERO) {
            if num.first() != Some(&ZERO) {
                return Err(Error::Domain("division by a series vanishing at the expansion point".into()));
            }
            num.remove(0);
            den.remove(0);
            if den.is_empty() {
                return Err(Error::Domain("denominator series is identically zero".into()));
            }
        }
        let m = num.len();
        let mut q = vec![ZERO; m];
        for k in 0..m {
            let mut acc = num[k];
            for i in 1..=k.min(den.len() - 1) {
                acc -= den[i] * q[k - i];
            }
            q[k] = acc / den[0];
        }
        Ok(Series { coeffs: q })
    }

    /// Plain derivatives at the expansion point.
    pub fn to_jet(&self, point: Complex64) -> Jet {
        let mut fact = 1.0;
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(k, c)| {
                if k > 0 {
                    fact *= k as f64;
                }
                c * fact
            })
            .collect();
        Jet { point, coeffs }
    }
}

fn binary(a: &Series, b: &Series, op: impl Fn(Complex64, Complex64) -> Complex64) -> Series {
    let n = a.coeffs.len().min(b.coeffs.len());
    Series::new((0..n).map(|i| op(a.coeffs[i], b.coeffs[i])).collect())
}

impl Add for &Series {
    type Output = Series;
    fn add(self, rhs: Self) -> Series {
        binary(self, rhs, |x, y| x + y)
    }
}

impl Sub for &Series {
    type Output = Series;
    fn sub(self, rhs: Self) -> Series {
        binary(self, rhs, |x, y| x - y)
    }
}

impl Neg for &Series {
    type Output = Series;
    fn neg(self) -> Series {
        self.scale(-ONE)
    }
}

impl Mul for &Series {
    type Output = Series;
    fn mul(self, rhs: Self) -> Series {
        let n = self.coeffs.len().min(rhs.coeffs.len());
        let mut out = vec![ZERO; n];
        for i in 0..n {
            for j in 0..n - i {
                out[i + j] += self.coeffs[i] * rhs.coeffs[j];
            }
        }
        Series::new(out)
    }
}

/// `coth(w)`, evaluated without overflow for large `|Re w|`.
pub fn coth(w: Complex64) -> Complex64 {
    if w.re < 0.0 {
        return -coth(-w);
    }
    let e = (-2.0 * w).exp();
    (1.0 + e) / (1.0 - e)
}

/// Value and first `m` derivatives of a holomorphic function at `point`.
#[derive(Debug, Clone, PartialEq)]
pub struct Jet {
    pub point: Complex64,
    pub coeffs: Vec<Complex64>,
}

impl Jet {
    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn value(&self) -> Complex64 {
        self.coeffs[0]
    }

    /// `g^(k)(point)`.
    pub fn derivative(&self, k: usize) -> Complex64 {
        self.coeffs[k]
    }

    /// Normalized Taylor coefficients `g^(k)/k!`.
    pub fn to_series(&self) -> Series {
        let mut fact = 1.0;
        Series::new(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(k, c)| {
                    if k > 0 {
                        fact *= k as f64;
                    }
                    c / fact
                })
                .collect(),
        )
    }
}
