//! Seeded sampling of pole-avoiding complex points.

use num_complex::Complex64;
use rand::Rng;

use crate::error::Result;
use crate::holofun::{addition_residual_with, pole_distance, Holomorphic};
use crate::tol::Tolerances;

/// Rejection rules for random complex arguments.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PointConstraints {
    /// Real parts are drawn from `[-re, re]`.
    pub re: f64,
    /// Imaginary parts are drawn from `[-im, im]`.
    pub im: f64,
    /// Upper bound on `|z|`.
    pub max_abs: f64,
    /// Lower bound on `|x|`, `|y|` and `|x + y|`.
    pub min_abs: f64,
    /// Lower bound on the distance of `x`, `y`, `x + y` to `2 pi i Z*`.
    pub min_pole: f64,
}

impl PointConstraints {
    /// Used by the jet-based identities; keeps every denominator of order one.
    pub fn identities() -> Self {
        Self { re: 2.5, im: 1.5, max_abs: f64::INFINITY, min_abs: 0.75, min_pole: 1.5 }
    }

    /// Used by the addition-formula sweep: `|x|, |y| <= 3`.
    pub fn addition() -> Self {
        Self { re: 3.0, im: 3.0, max_abs: 3.0, min_abs: 0.1, min_pole: 0.5 }
    }

    fn admits(&self, z: Complex64) -> bool {
        z.norm() <= self.max_abs && z.norm() >= self.min_abs && pole_distance(z) >= self.min_pole
    }
}

fn draw(rng: &mut impl Rng, c: &PointConstraints) -> Complex64 {
    Complex64::new(rng.random_range(-c.re..=c.re), rng.random_range(-c.im..=c.im))
}

pub fn sample_point(rng: &mut impl Rng, c: &PointConstraints) -> Complex64 {
    loop {
        let z = draw(rng, c);
        if c.admits(z) && c.admits(-z) {
            return z;
        }
    }
}

pub fn sample_pair(rng: &mut impl Rng, c: &PointConstraints) -> (Complex64, Complex64) {
    loop {
        let (x, y) = (draw(rng, c), draw(rng, c));
        let s = x + y;
        if c.admits(x) && c.admits(y) && s.norm() >= c.min_abs && pole_distance(s) >= c.min_pole {
            return (x, y);
        }
    }
}

/// Largest addition-formula residual of `g` over `count` seeded points.
pub fn addition_sweep(g: &dyn Holomorphic, count: usize, seed: u64, tol: &Tolerances) -> Result<f64> {
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let c = PointConstraints::addition();
    let mut worst: f64 = 0.0;
    for _ in 0..count {
        let (x, y) = sample_pair(&mut rng, &c);
        worst = worst.max(addition_residual_with(g, x, y, tol.delta_pole)?.norm());
    }
    Ok(worst)
}
