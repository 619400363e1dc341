//! Rank-three tensors over the algebra.

use num_complex::Complex64;

use crate::liealg::LieAlgebra;
use crate::Operator;

const ZERO: Complex64 = Complex64 { re: 0.0, im: 0.0 };

/// Dense `n x n x n` array; slot 1, 2, 3 is tensor leg 1, 2, 3.
#[derive(Debug, Clone, PartialEq)]
pub struct Cube {
    n: usize,
    data: Vec<Complex64>,
}

impl Cube {
    pub fn zeros(n: usize) -> Self {
        Self { n, data: vec![ZERO; n * n * n] }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    #[inline]
    fn idx(&self, a: usize, b: usize, c: usize) -> usize {
        (a * self.n + b) * self.n + c
    }

    #[inline]
    pub fn get(&self, a: usize, b: usize, c: usize) -> Complex64 {
        self.data[self.idx(a, b, c)]
    }

    #[inline]
    pub fn add_at(&mut self, a: usize, b: usize, c: usize, v: Complex64) {
        let i = self.idx(a, b, c);
        self.data[i] += v;
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |m, z| m.max(z.norm()))
    }

    pub fn sub(&self, rhs: &Cube) -> Cube {
        Cube { n: self.n, data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect() }
    }

    /// Apply `m` to every leg: `out^{abc} = m_ap m_bq m_cr t^{pqr}`.
    pub fn transform(&self, m: &Operator) -> Cube {
        let n = self.n;
        let mut s1 = Cube::zeros(n);
        let mut s2 = Cube::zeros(n);
        let mut s3 = Cube::zeros(n);
        for a in 0..n {
            for p in 0..n {
                let w = m[(a, p)];
                if w == ZERO {
                    continue;
                }
                for q in 0..n {
                    for r in 0..n {
                        s1.add_at(a, q, r, w * self.get(p, q, r));
                    }
                }
            }
        }
        for b in 0..n {
            for q in 0..n {
                let w = m[(b, q)];
                if w == ZERO {
                    continue;
                }
                for a in 0..n {
                    for r in 0..n {
                        s2.add_at(a, b, r, w * s1.get(a, q, r));
                    }
                }
            }
        }
        for c in 0..n {
            for r in 0..n {
                let w = m[(c, r)];
                if w == ZERO {
                    continue;
                }
                for a in 0..n {
                    for b in 0..n {
                        s3.add_at(a, b, c, w * s2.get(a, b, r));
                    }
                }
            }
        }
        s3
    }
}

/// A tensor `t = t_jkl T^j (x) T^k (x) T^l`, stored by covariant components.
#[derive(Debug, Clone, PartialEq)]
pub struct ThreeTensor {
    pub covariant: Cube,
}

impl ThreeTensor {
    /// Lower all three legs of contravariant components with the form.
    pub fn from_contravariant(a: &LieAlgebra, t: &Cube) -> Self {
        Self { covariant: t.transform(a.form()) }
    }

    /// Contravariant components `t^{abc}` given the raising matrix.
    pub fn raised(&self, dual: &Operator) -> Cube {
        self.covariant.transform(dual)
    }

    pub fn max_abs(&self) -> f64 {
        self.covariant.max_abs()
    }
}
