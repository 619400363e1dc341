//! The canonical r-matrix `R(w) = f(ad w)` and its derivatives.
//!
//! Coordinates `w_j` refer to the basis `T_j`, with the algebra identified
//! with its dual through the invariant form. Consequently `d/dw_j` is the
//! directional derivative along the dual element `T^j`, and the gradient
//! pairing is `<X, (grad R) Y> = sum_j T^j <X, (D_{T_j} R) Y>`.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::holofun::{pole_distance, Canonical, Holomorphic};
use crate::liealg::{ad, bracket, dual_basis, transpose_wrt_form, AlgebraElement, LieAlgebra};
use crate::matfun::{
    apply_fun_contour_adaptive, apply_fun_spectral, apply_fun_taylor, eigenvalues, frechet_many, max_abs,
    spectral_decompose, SpectralDecomposition,
};
use crate::tol::{Tolerances, SERIES_TERMS};
use crate::Operator;

/// Back-end used to evaluate `f(ad w)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Spectral,
    Contour,
    Taylor,
}

impl Method {
    pub const ALL: [Method; 3] = [Method::Spectral, Method::Contour, Method::Taylor];

    pub fn as_str(self) -> &'static str {
        match self {
            Method::Spectral => "spectral",
            Method::Contour => "contour",
            Method::Taylor => "taylor",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Method {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "spectral" => Ok(Method::Spectral),
            "contour" => Ok(Method::Contour),
            "taylor" => Ok(Method::Taylor),
            other => Err(Error::Usage(format!("unknown method `{other}` (spectral|contour|taylor)"))),
        }
    }
}

/// How directional derivatives are obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DerivativeMethod {
    Frechet,
    Fd,
}

#[derive(Debug, Clone)]
pub struct RMatrixEval {
    pub omega: AlgebraElement,
    pub method: Method,
    pub ad_omega: Operator,
    /// `R(w)` acting on coordinate columns.
    pub r: Operator,
    /// Covariant coefficients `rho_jk = <T_j, R T_k>`.
    pub rho: Operator,
    pub spectral: SpectralDecomposition,
}

impl RMatrixEval {
    pub fn apply(&self, x: &AlgebraElement) -> AlgebraElement {
        AlgebraElement::from(&self.r * &x.coords)
    }

    /// `max |R^T + R|` with the transpose taken relative to the form.
    pub fn antisymmetry_residual(&self, a: &LieAlgebra, tol: &Tolerances) -> Result<f64> {
        Ok(max_abs(&(transpose_wrt_form(a, &self.r, tol)? + &self.r)))
    }

    /// `max |R E - E R|` over the spectral projectors of `ad w`.
    pub fn projector_commutation(&self) -> f64 {
        self.spectral
            .clusters
            .iter()
            .map(|c| max_abs(&(&self.r * &c.projector - &c.projector * &self.r)))
            .fold(0.0, f64::max)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct GradientPairing {
    pub value: AlgebraElement,
}

/// True iff no eigenvalue of `ad w` lies within `delta_pole` of `2 pi i Z*`.
pub fn domain_check(a: &LieAlgebra, omega: &AlgebraElement, tol: &Tolerances) -> bool {
    domain_gate(a, omega, tol).is_ok()
}

/// Like [`domain_check`], reporting the offending eigenvalue.
pub fn domain_gate(a: &LieAlgebra, omega: &AlgebraElement, tol: &Tolerances) -> Result<()> {
    let t = ad(a, omega)?;
    for l in eigenvalues(&t)? {
        let d = pole_distance(l);
        if d <= tol.delta_pole {
            return Err(Error::Domain(format!(
                "ad-eigenvalue {l} is {d:.3e} from 2πiZ* (limit {:.1e})",
                tol.delta_pole
            )));
        }
    }
    Ok(())
}

/// `R(w) = f(ad w)` for the canonical `f`.
pub fn canonical_r(a: &LieAlgebra, omega: &AlgebraElement, method: Method, tol: &Tolerances) -> Result<RMatrixEval> {
    domain_gate(a, omega, tol)?;
    r_matrix_with(&Canonical::new(tol.delta_pole), a, omega, method, tol)
}

/// `g(ad w)` for an arbitrary scalar function; no domain gate beyond `g`'s own.
pub fn r_matrix_with(
    g: &dyn Holomorphic,
    a: &LieAlgebra,
    omega: &AlgebraElement,
    method: Method,
    tol: &Tolerances,
) -> Result<RMatrixEval> {
    let t = ad(a, omega)?;
    let spectral = spectral_decompose(&t, tol)?;
    let r = match method {
        Method::Spectral => apply_fun_spectral(g, &spectral)?,
        Method::Contour => apply_fun_contour_adaptive(g, &t, tol)?,
        Method::Taylor => apply_fun_taylor(&g.taylor_at_zero(2 * SERIES_TERMS)?, &t)?,
    };
    let rho = a.form() * &r;
    Ok(RMatrixEval { omega: omega.clone(), method, ad_omega: t, r, rho, spectral })
}

/// Finite-difference step for derivative corroboration.
pub fn fd_step(omega: &AlgebraElement, s: &AlgebraElement) -> f64 {
    1e-6 * (1.0 + omega.norm()) / (1.0 + s.norm())
}

/// `(D_S R)(w)`.
pub fn directional_derivative(
    a: &LieAlgebra,
    omega: &AlgebraElement,
    s: &AlgebraElement,
    method: DerivativeMethod,
    tol: &Tolerances,
) -> Result<Operator> {
    directional_derivative_with(&Canonical::new(tol.delta_pole), a, omega, s, method, tol)
}

pub fn directional_derivative_with(
    g: &dyn Holomorphic,
    a: &LieAlgebra,
    omega: &AlgebraElement,
    s: &AlgebraElement,
    method: DerivativeMethod,
    tol: &Tolerances,
) -> Result<Operator> {
    domain_gate(a, omega, tol)?;
    match method {
        DerivativeMethod::Frechet => {
            let t = ad(a, omega)?;
            Ok(frechet_many(g, &t, &[ad(a, s)?], tol)?.remove(0))
        }
        DerivativeMethod::Fd => {
            let h = fd_step(omega, s);
            let step = s.scale(Complex64::new(h, 0.0));
            let (wp, wm) = (omega + &step, omega - &step);
            domain_gate(a, &wp, tol)?;
            domain_gate(a, &wm, tol)?;
            let rp = r_matrix_with(g, a, &wp, Method::Spectral, tol)?.r;
            let rm = r_matrix_with(g, a, &wm, Method::Spectral, tol)?.r;
            Ok((rp - rm) / Complex64::new(2.0 * h, 0.0))
        }
    }
}

/// `(D_{T_j} R)(w)` for every basis direction, sharing resolvents.
pub fn basis_derivatives(g: &dyn Holomorphic, a: &LieAlgebra, omega: &AlgebraElement, tol: &Tolerances) -> Result<Vec<Operator>> {
    let n = a.dim();
    let t = ad(a, omega)?;
    let dirs = (0..n).map(|j| ad(a, &AlgebraElement::basis(n, j))).collect::<Result<Vec<_>>>()?;
    frechet_many(g, &t, &dirs, tol)
}

/// `sum_j T^j <X, D_j Y>` from precomputed basis derivatives `D_j`.
pub(crate) fn assemble_pairing(
    a: &LieAlgebra,
    dual: &Operator,
    derivs: &[Operator],
    x: &AlgebraElement,
    y: &AlgebraElement,
) -> Result<AlgebraElement> {
    let n = a.dim();
    let mut out = AlgebraElement::zero(n);
    for (j, dj) in derivs.iter().enumerate() {
        let c = a.pairing(x, &AlgebraElement::from(dj * &y.coords))?;
        for m in 0..n {
            out.coords[m] += c * dual[(m, j)];
        }
    }
    Ok(out)
}

/// The gradient pairing `<X, (grad R)(w) Y>`.
pub fn gradient_pairing(
    a: &LieAlgebra,
    omega: &AlgebraElement,
    x: &AlgebraElement,
    y: &AlgebraElement,
    tol: &Tolerances,
) -> Result<GradientPairing> {
    domain_gate(a, omega, tol)?;
    let d = dual_basis(a, tol)?;
    let derivs = basis_derivatives(&Canonical::new(tol.delta_pole), a, omega, tol)?;
    Ok(GradientPairing { value: assemble_pairing(a, &d.matrix, &derivs, x, y)? })
}

/// Eigenvalue of `x` under `ad w`, rejecting non-eigenvectors.
pub fn eigenvalue_of(a: &LieAlgebra, omega: &AlgebraElement, x: &AlgebraElement, tol: &Tolerances) -> Result<Complex64> {
    let t = ad(a, omega)?;
    let tx = &t * &x.coords;
    let nx = x.coords.norm_squared();
    if nx == 0.0 {
        return Err(Error::NotEigenvector { residual: f64::INFINITY });
    }
    let lambda = x.coords.dotc(&tx) / nx;
    let residual = (tx - &x.coords * lambda).norm();
    if residual > tol.tol_residual {
        return Err(Error::NotEigenvector { residual });
    }
    Ok(lambda)
}

fn require_diagonalizable(a: &LieAlgebra, omega: &AlgebraElement, tol: &Tolerances) -> Result<()> {
    if spectral_decompose(&ad(a, omega)?, tol)?.is_diagonalizable() {
        Ok(())
    } else {
        Err(Error::NotDiagonalizable)
    }
}

/// `(g(p) - g(q)) / (p - q)`, replaced by `g'((p+q)/2)` when `|p - q| < delta`.
pub fn divided_difference(g: &dyn Holomorphic, p: Complex64, q: Complex64, delta: f64) -> Result<Complex64> {
    if (p - q).norm() < delta {
        Ok(g.jet((p + q) / 2.0, 1)?.derivative(1))
    } else {
        Ok((g.eval(p)? - g.eval(q)?) / (p - q))
    }
}

/// Closed form of the gradient pairing on eigenvectors:
/// `-((f(l) + f(m)) / (l + m)) [X, Y]`, with the limit `-f'(m) [X, Y]` at `l + m = 0`.
pub fn gradient_pairing_oracle(
    a: &LieAlgebra,
    omega: &AlgebraElement,
    x: &AlgebraElement,
    y: &AlgebraElement,
    tol: &Tolerances,
) -> Result<AlgebraElement> {
    require_diagonalizable(a, omega, tol)?;
    let (l, m) = (eigenvalue_of(a, omega, x, tol)?, eigenvalue_of(a, omega, y, tol)?);
    let f = Canonical::new(tol.delta_pole);
    // f is odd, so (f(l) + f(m)) / (l + m) is the divided difference at l and -m.
    let c = divided_difference(&f, l, -m, tol.delta_pole)?;
    Ok(bracket(a, x, y)?.scale(-c))
}

/// Closed form of `(D_X R)(w) Y` on eigenvectors:
/// `((f(l + m) - f(m)) / l) [X, Y]`, with the limit `f'(m) [X, Y]` at `l = 0`.
pub fn directional_derivative_oracle(
    a: &LieAlgebra,
    omega: &AlgebraElement,
    x: &AlgebraElement,
    y: &AlgebraElement,
    tol: &Tolerances,
) -> Result<AlgebraElement> {
    require_diagonalizable(a, omega, tol)?;
    let (l, m) = (eigenvalue_of(a, omega, x, tol)?, eigenvalue_of(a, omega, y, tol)?);
    let f = Canonical::new(tol.delta_pole);
    let c = divided_difference(&f, l + m, m, tol.delta_pole)?;
    Ok(bracket(a, x, y)?.scale(c))
}

/// Largest imaginary part of `R(w) X` for real `w` and `X` on a real form.
pub fn realness_check(
    a: &LieAlgebra,
    omega: &AlgebraElement,
    x: &AlgebraElement,
    method: Method,
    tol: &Tolerances,
) -> Result<f64> {
    if !a.is_real() {
        return Err(Error::Domain(format!("algebra `{}` has non-real structure data", a.name())));
    }
    if omega.max_imag() != 0.0 || x.max_imag() != 0.0 {
        return Err(Error::Domain("realness check needs real coordinates".into()));
    }
    let r = canonical_r(a, omega, method, tol)?;
    Ok(r.apply(x).max_imag())
}

/// Draw elements with coordinates uniform in `[-1, 1]`, redrawing any that
/// fail the domain check.
pub fn random_elements(a: &LieAlgebra, count: usize, rng: &mut impl Rng, tol: &Tolerances) -> Vec<AlgebraElement> {
    let n = a.dim();
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let coords: Vec<f64> = (0..n).map(|_| rng.random_range(-1.0..=1.0)).collect();
        let w = AlgebraElement::from_real(&coords);
        if domain_check(a, &w, tol) {
            out.push(w);
        }
    }
    out
}

/// [`random_elements`] from a fresh generator seeded with `seed`.
pub fn seeded_elements(a: &LieAlgebra, count: usize, seed: u64, tol: &Tolerances) -> Vec<AlgebraElement> {
    random_elements(a, count, &mut ChaCha8Rng::seed_from_u64(seed), tol)
}

#[cfg(test)]
mod tests;
