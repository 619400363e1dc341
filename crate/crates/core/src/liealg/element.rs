use std::ops::{Add, Mul, Neg, Sub};

use nalgebra::DVector;
use num_complex::Complex64;

/// Coordinates of an element in the basis `T_j` of the algebra.
#[derive(Debug, Clone, PartialEq)]
pub struct AlgebraElement {
    pub coords: DVector<Complex64>,
}

impl AlgebraElement {
    pub fn new(coords: Vec<Complex64>) -> Self {
        Self { coords: DVector::from_vec(coords) }
    }

    pub fn from_real(coords: &[f64]) -> Self {
        Self::new(coords.iter().map(|&x| Complex64::new(x, 0.0)).collect())
    }

    pub fn zero(n: usize) -> Self {
        Self { coords: DVector::zeros(n) }
    }

    /// The basis vector `T_j`.
    pub fn basis(n: usize, j: usize) -> Self {
        let mut e = Self::zero(n);
        e.coords[j] = Complex64::new(1.0, 0.0);
        e
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn max_abs(&self) -> f64 {
        self.coords.iter().fold(0.0, |m, c| m.max(c.norm()))
    }

    pub fn norm(&self) -> f64 {
        self.coords.norm()
    }

    pub fn max_imag(&self) -> f64 {
        self.coords.iter().fold(0.0, |m, c| m.max(c.im.abs()))
    }

    pub fn scale(&self, s: Complex64) -> Self {
        Self { coords: &self.coords * s }
    }
}

impl From<DVector<Complex64>> for AlgebraElement {
    fn from(coords: DVector<Complex64>) -> Self {
        Self { coords }
    }
}

impl Add for &AlgebraElement {
    type Output = AlgebraElement;
    fn add(self, rhs: Self) -> AlgebraElement {
        AlgebraElement { coords: &self.coords + &rhs.coords }
    }
}

impl Sub for &AlgebraElement {
    type Output = AlgebraElement;
    fn sub(self, rhs: Self) -> AlgebraElement {
        AlgebraElement { coords: &self.coords - &rhs.coords }
    }
}

impl Mul<Complex64> for &AlgebraElement {
    type Output = AlgebraElement;
    fn mul(self, rhs: Complex64) -> AlgebraElement {
        self.scale(rhs)
    }
}

impl Neg for &AlgebraElement {
    type Output = AlgebraElement;
    fn neg(self) -> AlgebraElement {
        AlgebraElement { coords: -&self.coords }
    }
}
