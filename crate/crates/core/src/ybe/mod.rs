//! Residuals of the modified classical dynamical Yang-Baxter equation,
//! equivariance, and the invariant three-tensor on its right-hand side.
//!
//! Tensor conventions. With `r(w) = r^{ab} T_a (x) T_b` and
//! `r^{ab} = (R D)^{ab}`, brackets of legs contract through `f_jk^l`:
//!
//! * `[r12, r13]^{xbd} = r^{ab} r^{cd} f_ac^x`
//! * `[r12, r23]^{axd} = r^{ab} r^{cd} f_bc^x`
//! * `[r13, r23]^{acx} = r^{ab} r^{cd} f_bd^x`
//!
//! and the derivative terms place `T_j` in legs 1, 2, 3 with signs `+, -, +`
//! against `d r / d w_j = (D_{T^j} R) D`.

mod tensor;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

pub use tensor::{Cube, ThreeTensor};

use crate::error::{Error, Result};
use crate::holofun::{addition_residual_with, Canonical, Holomorphic};
use crate::liealg::{ad, bracket, dual_basis, AlgebraElement, LieAlgebra};
use crate::matfun::{frechet_many, max_abs};
use crate::rmat::{
    assemble_pairing, basis_derivatives, divided_difference, domain_gate, eigenvalue_of, gradient_pairing,
    r_matrix_with, Method,
};
use crate::tol::Tolerances;
use crate::Operator;

/// `phi = -1/4 f_jk^l T^j (x) T^k (x) T_l`, lowered to `phi_jkm = -1/4 f_jk^l B_lm`.
pub fn phi_tensor(a: &LieAlgebra) -> ThreeTensor {
    let n = a.dim();
    let b = a.form();
    let mut t = Cube::zeros(n);
    for j in 0..n {
        for k in 0..n {
            for l in 0..n {
                let f = a.f(j, k, l);
                if f == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for m in 0..n {
                    t.add_at(j, k, m, -0.25 * f * b[(l, m)]);
                }
            }
        }
    }
    ThreeTensor { covariant: t }
}

/// `max` over basis elements `T_m` of the adjoint action of `T_m` on the raised tensor.
pub fn invariance_residual(a: &LieAlgebra, t: &ThreeTensor, tol: &Tolerances) -> Result<f64> {
    let n = a.dim();
    let up = t.raised(&dual_basis(a, tol)?.matrix);
    let mut worst: f64 = 0.0;
    for m in 0..n {
        let mut acc = Cube::zeros(n);
        for p in 0..n {
            for q in 0..n {
                for r in 0..n {
                    let v = up.get(p, q, r);
                    if v == Complex64::new(0.0, 0.0) {
                        continue;
                    }
                    for x in 0..n {
                        acc.add_at(x, q, r, a.f(m, p, x) * v);
                        acc.add_at(p, x, r, a.f(m, q, x) * v);
                        acc.add_at(p, q, x, a.f(m, r, x) * v);
                    }
                }
            }
        }
        worst = worst.max(acc.max_abs());
    }
    Ok(worst)
}

/// Largest violation of total antisymmetry of the raised tensor.
pub fn antisymmetry_residual(a: &LieAlgebra, t: &ThreeTensor, tol: &Tolerances) -> Result<f64> {
    let n = a.dim();
    let up = t.raised(&dual_basis(a, tol)?.matrix);
    let mut worst: f64 = 0.0;
    for p in 0..n {
        for q in 0..n {
            for r in 0..n {
                let v = up.get(p, q, r);
                worst = worst
                    .max((v + up.get(q, p, r)).norm())
                    .max((v + up.get(p, r, q)).norm())
                    .max((v + up.get(r, q, p)).norm());
            }
        }
    }
    Ok(worst)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CdybeReport {
    /// `residuals[j][k]`: max coordinate modulus of the left side at `(T_j, T_k)`.
    pub residuals: Vec<Vec<f64>>,
    pub max: f64,
    pub tolerance: f64,
    pub method: Method,
    pub pass: bool,
}

/// Shared ingredients of the operator and tensor residuals.
struct Ingredients {
    r: Operator,
    derivs: Vec<Operator>,
    dual: Operator,
}

fn ingredients(
    g: &dyn Holomorphic,
    a: &LieAlgebra,
    omega: &AlgebraElement,
    method: Method,
    tol: &Tolerances,
) -> Result<Ingredients> {
    let r = r_matrix_with(g, a, omega, method, tol)?.r;
    let derivs = basis_derivatives(g, a, omega, tol)?;
    let dual = dual_basis(a, tol)?.matrix;
    Ok(Ingredients { r, derivs, dual })
}

/// Operator-form residual on every basis pair for the canonical function.
pub fn cdybe_residual(a: &LieAlgebra, omega: &AlgebraElement, method: Method, tol: &Tolerances) -> Result<CdybeReport> {
    domain_gate(a, omega, tol)?;
    cdybe_residual_with(&Canonical::new(tol.delta_pole), a, omega, method, tol)
}

/// Operator-form residual with `g` substituted for the canonical function.
pub fn cdybe_residual_with(
    g: &dyn Holomorphic,
    a: &LieAlgebra,
    omega: &AlgebraElement,
    method: Method,
    tol: &Tolerances,
) -> Result<CdybeReport> {
    let n = a.dim();
    let ing = ingredients(g, a, omega, method, tol)?;
    let apply = |m: &Operator, x: &AlgebraElement| AlgebraElement::from(m * &x.coords);
    let quarter = Complex64::new(0.25, 0.0);
    let basis: Vec<AlgebraElement> = (0..n).map(|j| AlgebraElement::basis(n, j)).collect();
    let rx: Vec<AlgebraElement> = basis.iter().map(|x| apply(&ing.r, x)).collect();
    let mut residuals = vec![vec![0.0; n]; n];
    let mut worst: f64 = 0.0;
    for j in 0..n {
        for k in 0..n {
            let (x, y) = (&basis[j], &basis[k]);
            let mut total = bracket(a, x, y)?.scale(quarter);
            total = &total + &bracket(a, &rx[j], &rx[k])?;
            let inner = &bracket(a, &rx[j], y)? + &bracket(a, x, &rx[k])?;
            total = &total - &apply(&ing.r, &inner);
            total = &total + &assemble_pairing(a, &ing.dual, &ing.derivs, x, y)?;
            total = &total + &apply(&ing.derivs[k], x);
            total = &total - &apply(&ing.derivs[j], y);
            let m = total.max_abs();
            residuals[j][k] = m;
            worst = worst.max(m);
        }
    }
    Ok(CdybeReport { residuals, max: worst, tolerance: tol.tol_residual, method, pass: worst < tol.tol_residual })
}

/// Contravariant components of the tensor-form left side minus `phi`.
pub fn mcdybe_tensor(
    g: &dyn Holomorphic,
    a: &LieAlgebra,
    omega: &AlgebraElement,
    method: Method,
    tol: &Tolerances,
) -> Result<ThreeTensor> {
    let n = a.dim();
    let ing = ingredients(g, a, omega, method, tol)?;
    let r = &ing.r * &ing.dual;
    let mut t = Cube::zeros(n);
    let zero = Complex64::new(0.0, 0.0);
    for p in 0..n {
        for q in 0..n {
            let f_pq: Vec<Complex64> = (0..n).map(|x| a.f(p, q, x)).collect();
            if f_pq.iter().all(|v| *v == zero) {
                continue;
            }
            for u in 0..n {
                for v in 0..n {
                    for (x, &fx) in f_pq.iter().enumerate() {
                        if fx == zero {
                            continue;
                        }
                        // [r12, r13]: a = p, c = q, b = u, d = v
                        t.add_at(x, u, v, r[(p, u)] * r[(q, v)] * fx);
                        // [r12, r23]: b = p, c = q, a = u, d = v
                        t.add_at(u, x, v, r[(u, p)] * r[(q, v)] * fx);
                        // [r13, r23]: b = p, d = q, a = u, c = v
                        t.add_at(u, v, x, r[(u, p)] * r[(v, q)] * fx);
                    }
                }
            }
        }
    }
    // d r / d w_j = (D_{T^j} R) D with D_{T^j} = sum_k D^{jk} D_{T_k}.
    for j in 0..n {
        let mut dr = Operator::zeros(n, n);
        for k in 0..n {
            dr += &ing.derivs[k] * ing.dual[(j, k)];
        }
        let dr = dr * &ing.dual;
        for b in 0..n {
            for c in 0..n {
                let v = dr[(b, c)];
                t.add_at(j, b, c, v);
                t.add_at(b, j, c, -v);
                t.add_at(b, c, j, v);
            }
        }
    }
    let phi_up = phi_tensor(a).raised(&ing.dual);
    Ok(ThreeTensor::from_contravariant(a, &t.sub(&phi_up)))
}

/// Max covariant component of the tensor-form residual.
pub fn mcdybe_tensor_residual(a: &LieAlgebra, omega: &AlgebraElement, method: Method, tol: &Tolerances) -> Result<f64> {
    domain_gate(a, omega, tol)?;
    Ok(mcdybe_tensor(&Canonical::new(tol.delta_pole), a, omega, method, tol)?.max_abs())
}

/// `max |(D_{[S,w]} R)(w) - [ad S, R(w)]|` with the analytic derivative.
pub fn equivariance_residual(
    a: &LieAlgebra,
    omega: &AlgebraElement,
    s: &AlgebraElement,
    method: Method,
    tol: &Tolerances,
) -> Result<f64> {
    domain_gate(a, omega, tol)?;
    let g = Canonical::new(tol.delta_pole);
    let r = r_matrix_with(&g, a, omega, method, tol)?.r;
    let t = ad(a, omega)?;
    let dir = ad(a, &bracket(a, s, omega)?)?;
    let lhs = frechet_many(&g, &t, &[dir], tol)?.remove(0);
    let ads = ad(a, s)?;
    Ok(max_abs(&(lhs - (&ads * &r - &r * &ads))))
}

/// One summand of the operator-form equation on an eigenvector pair.
#[derive(Debug, Clone, PartialEq)]
pub struct Term {
    pub name: &'static str,
    /// Evaluated from `R` and its derivatives.
    pub direct: AlgebraElement,
    /// Scalar multiple of `[X, Y]` predicted by the eigenvalue formulas.
    pub coefficient: Complex64,
    pub closed: AlgebraElement,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TermDecomposition {
    pub lambda: Complex64,
    pub mu: Complex64,
    pub terms: Vec<Term>,
    /// `max |direct - closed|` over the terms.
    pub disagreement: f64,
    /// Sum of the coefficients; the addition formula predicts 0.
    pub coefficient_sum: Complex64,
    /// `|sum of direct terms|`.
    pub direct_total: f64,
}

/// The seven summands of the operator-form equation for eigenvectors `X`, `Y`
/// of `ad w`, each computed directly and from its closed form:
///
/// | term | closed-form coefficient of `[X, Y]` |
/// |---|---|
/// | `1/4 [X,Y]` | `1/4` |
/// | `[RX, RY]` | `f(l) f(m)` |
/// | `-R[RX, Y]` | `-f(l+m) f(l)` |
/// | `-R[X, RY]` | `-f(l+m) f(m)` |
/// | `<X, (grad R) Y>` | `-(f(l) + f(m)) / (l + m)` |
/// | `(D_Y R) X` | `-(f(l+m) - f(l)) / m` |
/// | `-(D_X R) Y` | `-(f(l+m) - f(m)) / l` |
///
/// Vanishing denominators take their derivative limits.
pub fn eigen_term_decomposition(
    a: &LieAlgebra,
    omega: &AlgebraElement,
    x: &AlgebraElement,
    y: &AlgebraElement,
    tol: &Tolerances,
) -> Result<TermDecomposition> {
    domain_gate(a, omega, tol)?;
    let g = Canonical::new(tol.delta_pole);
    let eval = r_matrix_with(&g, a, omega, Method::Spectral, tol)?;
    if !eval.spectral.is_diagonalizable() {
        return Err(Error::NotDiagonalizable);
    }
    let (l, m) = (eigenvalue_of(a, omega, x, tol)?, eigenvalue_of(a, omega, y, tol)?);
    let apply = |op: &Operator, v: &AlgebraElement| AlgebraElement::from(op * &v.coords);
    let r = &eval.r;
    let (rx, ry) = (apply(r, x), apply(r, y));
    let t = ad(a, omega)?;
    let derivs = frechet_many(&g, &t, &[ad(a, x)?, ad(a, y)?], tol)?;
    let xy = bracket(a, x, y)?;

    let (fl, fm, fs) = (g.eval(l)?, g.eval(m)?, g.eval(l + m)?);
    let d = tol.delta_pole;
    let coeffs = [
        Complex64::new(0.25, 0.0),
        fl * fm,
        -fs * fl,
        -fs * fm,
        -divided_difference(&g, l, -m, d)?,
        -divided_difference(&g, l + m, l, d)?,
        -divided_difference(&g, l + m, m, d)?,
    ];
    let directs = [
        xy.scale(Complex64::new(0.25, 0.0)),
        bracket(a, &rx, &ry)?,
        -&apply(r, &bracket(a, &rx, y)?),
        -&apply(r, &bracket(a, x, &ry)?),
        gradient_pairing(a, omega, x, y, tol)?.value,
        apply(&derivs[1], x),
        -&apply(&derivs[0], y),
    ];
    let names = ["term1", "term2", "term3", "term4", "term5", "term6", "term7"];
    let mut terms = Vec::with_capacity(7);
    let mut disagreement: f64 = 0.0;
    let mut total = AlgebraElement::zero(a.dim());
    for ((name, direct), coefficient) in names.into_iter().zip(directs).zip(coeffs) {
        let closed = xy.scale(coefficient);
        disagreement = disagreement.max((&direct - &closed).max_abs());
        total = &total + &direct;
        terms.push(Term { name, direct, coefficient, closed });
    }
    let coefficient_sum = coeffs.iter().sum();
    Ok(TermDecomposition { lambda: l, mu: m, terms, disagreement, coefficient_sum, direct_total: total.max_abs() })
}

/// Addition-formula residual at a pair of eigenvalues, when defined.
pub fn addition_at(l: Complex64, m: Complex64, tol: &Tolerances) -> Result<Complex64> {
    addition_residual_with(&Canonical::new(tol.delta_pole), l, m, tol.delta_pole)
}
