//! Finite-dimensional self-dual Lie algebras.
//!
//! An algebra is stored as structure constants `f_jk^l` with
//! `[T_j, T_k] = f_jk^l T_l` and a symmetric invariant form `B_jk = <T_j, T_k>`.
//! Elements are coordinate vectors in the `T_j` basis; operators act on
//! coordinate vectors from the left, so `(ad w)_lk = w^j f_jk^l`.

mod catalog;
mod element;
mod format;
mod scalar;

pub use catalog::{catalog, catalog_entries, CatalogEntry};
pub use element::AlgebraElement;
pub use format::{parse_algebra, write_algebra};
pub use scalar::{parse_complex, rational_to_f64, Scalar};

use nalgebra::DMatrix;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::tol::Tolerances;
use crate::Operator;

#[derive(Debug, Clone)]
pub struct LieAlgebra {
    name: String,
    dim: usize,
    labels: Vec<String>,
    structure: Vec<Scalar>,
    form: Vec<Scalar>,
    structure_c: Vec<Complex64>,
    form_c: Operator,
}

/// Raising matrix `D = B^-1`, so that `T^j = D^jk T_k`.
#[derive(Debug, Clone)]
pub struct DualBasis {
    pub matrix: Operator,
}

impl DualBasis {
    /// Coordinates of the dual basis element `T^j`.
    pub fn element(&self, j: usize) -> AlgebraElement {
        AlgebraElement::from(self.matrix.column(j).into_owned())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub exact: bool,
    pub antisymmetry: f64,
    pub jacobi: f64,
    pub form_symmetry: f64,
    pub invariance: f64,
    pub det_abs: f64,
    pub tol_exact: f64,
    pub tol_rank: f64,
    pub pass: bool,
}

impl LieAlgebra {
    /// Builds an algebra from flattened data: `structure[(j*n + k)*n + l] = f_jk^l`,
    /// `form[j*n + k] = B_jk`. Axioms are not checked here; see [`validate`].
    pub fn new(
        name: impl Into<String>,
        labels: Vec<String>,
        structure: Vec<Scalar>,
        form: Vec<Scalar>,
    ) -> Result<Self> {
        let dim = labels.len();
        if dim == 0 {
            return Err(Error::ParameterRange("algebra dimension must be positive".into()));
        }
        if structure.len() != dim * dim * dim {
            return Err(Error::Dimension { expected: dim * dim * dim, found: structure.len() });
        }
        if form.len() != dim * dim {
            return Err(Error::Dimension { expected: dim * dim, found: form.len() });
        }
        let structure_c = structure.iter().map(Scalar::to_complex).collect();
        let form_c = DMatrix::from_fn(dim, dim, |j, k| form[j * dim + k].to_complex());
        Ok(Self { name: name.into(), dim, labels, structure, form, structure_c, form_c })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// Exact structure constant `f_jk^l`.
    pub fn structure_constant(&self, j: usize, k: usize, l: usize) -> &Scalar {
        &self.structure[(j * self.dim + k) * self.dim + l]
    }

    /// Structure constant `f_jk^l` as a complex double.
    pub fn f(&self, j: usize, k: usize, l: usize) -> Complex64 {
        self.structure_c[(j * self.dim + k) * self.dim + l]
    }

    pub fn form_entry(&self, j: usize, k: usize) -> &Scalar {
        &self.form[j * self.dim + k]
    }

    /// The Gram matrix `B` of the invariant form.
    pub fn form(&self) -> &Operator {
        &self.form_c
    }

    pub fn is_exact(&self) -> bool {
        self.structure.iter().chain(&self.form).all(Scalar::is_exact)
    }

    /// True when all structure constants and form entries are real, i.e. the
    /// algebra is the complexification of the real span of its basis.
    pub fn is_real(&self) -> bool {
        self.structure.iter().chain(&self.form).all(Scalar::is_real)
    }

    fn check_len(&self, x: &AlgebraElement) -> Result<()> {
        if x.dim() != self.dim {
            return Err(Error::Dimension { expected: self.dim, found: x.dim() });
        }
        Ok(())
    }

    /// `<x, y> = x^t B y` (bilinear, no conjugation).
    pub fn pairing(&self, x: &AlgebraElement, y: &AlgebraElement) -> Result<Complex64> {
        self.check_len(x)?;
        self.check_len(y)?;
        Ok((x.coords.transpose() * &self.form_c * &y.coords)[(0, 0)])
    }

    /// Looks up a basis label.
    pub fn label_index(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }
}

pub fn bracket(a: &LieAlgebra, x: &AlgebraElement, y: &AlgebraElement) -> Result<AlgebraElement> {
    a.check_len(x)?;
    a.check_len(y)?;
    let n = a.dim;
    let mut z = AlgebraElement::zero(n);
    for j in 0..n {
        let xj = x.coords[j];
        if xj == Complex64::zero() {
            continue;
        }
        for k in 0..n {
            let c = xj * y.coords[k];
            if c == Complex64::zero() {
                continue;
            }
            for l in 0..n {
                z.coords[l] += c * a.f(j, k, l);
            }
        }
    }
    Ok(z)
}

pub fn ad(a: &LieAlgebra, w: &AlgebraElement) -> Result<Operator> {
    a.check_len(w)?;
    let n = a.dim;
    let mut m = Operator::zeros(n, n);
    for j in 0..n {
        let wj = w.coords[j];
        if wj == Complex64::zero() {
            continue;
        }
        for k in 0..n {
            for l in 0..n {
                m[(l, k)] += wj * a.f(j, k, l);
            }
        }
    }
    Ok(m)
}

/// The raising matrix `B^-1`; fails when `|det B| <= TOL_RANK`.
pub fn dual_basis(a: &LieAlgebra, tol: &Tolerances) -> Result<DualBasis> {
    let det = form_determinant(a);
    if det <= tol.tol_rank {
        return Err(Error::SingularForm { det });
    }
    if a.form.iter().all(Scalar::is_exact) {
        let inv = exact_inverse(a.dim, &a.form).ok_or(Error::SingularForm { det })?;
        let matrix = DMatrix::from_fn(a.dim, a.dim, |j, k| inv[j * a.dim + k].to_complex());
        return Ok(DualBasis { matrix });
    }
    let matrix = a.form_c.clone().try_inverse().ok_or(Error::SingularForm { det })?;
    Ok(DualBasis { matrix })
}

/// `A^T = B^-1 A^t B`, the transpose with respect to the invariant form:
/// `<A^T x, y> = <x, A y>`.
pub fn transpose_wrt_form(a: &LieAlgebra, op: &Operator, tol: &Tolerances) -> Result<Operator> {
    if op.nrows() != a.dim || op.ncols() != a.dim {
        return Err(Error::Dimension { expected: a.dim, found: op.nrows() });
    }
    let d = dual_basis(a, tol)?;
    Ok(&d.matrix * op.transpose() * &a.form_c)
}

pub fn validate(a: &LieAlgebra, tol: &Tolerances) -> ValidationReport {
    let n = a.dim;
    let sc = |j: usize, k: usize, l: usize| a.structure_constant(j, k, l);
    let mut antisymmetry = 0.0f64;
    let mut jacobi = 0.0f64;
    let mut form_symmetry = 0.0f64;
    let mut invariance = 0.0f64;

    for j in 0..n {
        for k in 0..n {
            for l in 0..n {
                antisymmetry = antisymmetry.max(sc(j, k, l).add(sc(k, j, l)).abs());
            }
            form_symmetry = form_symmetry.max(a.form_entry(j, k).sub(a.form_entry(k, j)).abs());
        }
    }

    // [[T_j,T_k],T_l] + cyclic, coefficient of T_p
    for j in 0..n {
        for k in 0..n {
            for l in 0..n {
                for p in 0..n {
                    let mut acc = Scalar::zero();
                    for m in 0..n {
                        for (x, y, z) in [(j, k, l), (k, l, j), (l, j, k)] {
                            let first = sc(x, y, m);
                            if first.is_zero() {
                                continue;
                            }
                            let second = sc(m, z, p);
                            if !second.is_zero() {
                                acc = acc.add(&first.mul(second));
                            }
                        }
                    }
                    jacobi = jacobi.max(acc.abs());
                }
            }
        }
    }

    // <[T_i,T_j],T_k> + <T_j,[T_i,T_k]>
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let mut acc = Scalar::zero();
                for m in 0..n {
                    acc = acc.add(&sc(i, j, m).mul(a.form_entry(m, k)));
                    acc = acc.add(&sc(i, k, m).mul(a.form_entry(j, m)));
                }
                invariance = invariance.max(acc.abs());
            }
        }
    }

    let det_abs = form_determinant(a);
    let pass = antisymmetry <= tol.tol_exact
        && jacobi <= tol.tol_exact
        && form_symmetry <= tol.tol_exact
        && invariance <= tol.tol_exact
        && det_abs > tol.tol_rank;
    ValidationReport {
        exact: a.is_exact(),
        antisymmetry,
        jacobi,
        form_symmetry,
        invariance,
        det_abs,
        tol_exact: tol.tol_exact,
        tol_rank: tol.tol_rank,
        pass,
    }
}

/// `|det B|`, exact when the form is rational.
pub fn form_determinant(a: &LieAlgebra) -> f64 {
    if a.form.iter().all(Scalar::is_exact) {
        let det = exact_determinant(a.dim, &a.form);
        return rational_to_f64(&det).abs();
    }
    a.form_c.determinant().norm()
}

fn exact_entries(n: usize, m: &[Scalar]) -> Vec<BigRational> {
    (0..n * n)
        .map(|i| match &m[i] {
            Scalar::Exact(r) => r.clone(),
            Scalar::Approx(_) => unreachable!("exact path called with approximate data"),
        })
        .collect()
}

fn exact_determinant(n: usize, m: &[Scalar]) -> BigRational {
    let mut a = exact_entries(n, m);
    let mut det = BigRational::one();
    for col in 0..n {
        let Some(piv) = (col..n).find(|&r| !a[r * n + col].is_zero()) else {
            return BigRational::zero();
        };
        if piv != col {
            for c in 0..n {
                a.swap(piv * n + c, col * n + c);
            }
            det = -det;
        }
        let p = a[col * n + col].clone();
        det *= &p;
        for r in col + 1..n {
            let factor = &a[r * n + col] / &p;
            if factor.is_zero() {
                continue;
            }
            for c in col..n {
                let v = &a[col * n + c] * &factor;
                a[r * n + c] -= v;
            }
        }
    }
    det
}

fn exact_inverse(n: usize, m: &[Scalar]) -> Option<Vec<Scalar>> {
    let mut a = exact_entries(n, m);
    let mut inv: Vec<BigRational> = (0..n * n)
        .map(|i| if i / n == i % n { BigRational::one() } else { BigRational::zero() })
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| !a[r * n + col].is_zero())?;
        if piv != col {
            for c in 0..n {
                a.swap(piv * n + c, col * n + c);
                inv.swap(piv * n + c, col * n + c);
            }
        }
        let p = a[col * n + col].clone();
        for c in 0..n {
            a[col * n + c] /= &p;
            inv[col * n + c] /= &p;
        }
        for r in 0..n {
            if r == col {
                continue;
            }
            let factor = a[r * n + col].clone();
            if factor.is_zero() {
                continue;
            }
            for c in 0..n {
                let va = &a[col * n + c] * &factor;
                a[r * n + c] -= va;
                let vi = &inv[col * n + c] * &factor;
                inv[r * n + c] -= vi;
            }
        }
    }
    Some(inv.into_iter().map(Scalar::Exact).collect())
}
