use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{coords, Inputs, Measurement, RunConfig, Suite, SuiteEntry};
use crate::error::{Error, Result};
use crate::holofun::{canonical_series, ode_series_solve};
use crate::identities::identity_sweep;
use crate::liealg::{bracket, validate, AlgebraElement, LieAlgebra};
use crate::matfun::{max_abs, spectral_radius};
use crate::rmat::{canonical_r, directional_derivative, domain_gate, random_elements, DerivativeMethod, Method};
use crate::tol::SERIES_RADIUS;
use crate::ybe::{cdybe_residual, equivariance_residual, mcdybe_tensor_residual};

/// Tolerance for back-end agreement with the contour method.
const TOL_CONTOUR_AGREEMENT: f64 = 1e-6;
/// Tolerance for back-end agreement with the Taylor method inside its radius.
const TOL_TAYLOR_AGREEMENT: f64 = 1e-10;
/// Tolerance for finite-difference corroboration of the Fréchet derivative.
const TOL_FD: f64 = 1e-5;
/// Largest imaginary part allowed in `R(w)X` for real `w` and `X`.
const TOL_REAL: f64 = 1e-10;

pub(super) struct Context<'a> {
    pub config: &'a RunConfig,
    pub algebra: Option<&'a LieAlgebra>,
    pub omegas: &'a [AlgebraElement],
    pub algebra_valid: bool,
}

impl Context<'_> {
    fn algebra(&self) -> Result<&LieAlgebra> {
        let a = self.algebra.ok_or_else(|| Error::Usage("no algebra loaded".into()))?;
        if !self.algebra_valid {
            return Err(Error::Domain(format!("algebra `{}` failed validation", a.name())));
        }
        Ok(a)
    }
}

pub(super) fn run_suite(suite: Suite, ctx: &Context<'_>) -> Vec<SuiteEntry> {
    match suite {
        Suite::Validate => vec![validate_entry(ctx)],
        Suite::Rmatrix => per_omega(ctx, suite, |a, w, _| rmatrix(ctx, a, w)),
        Suite::Cdybe => per_omega(ctx, suite, |a, w, _| {
            let rep = cdybe_residual(a, w, ctx.config.method, &ctx.config.tolerances)?;
            Ok(vec![Measurement::below("cdybe_residual", rep.max, rep.tolerance)])
        }),
        Suite::Tensor => per_omega(ctx, suite, |a, w, _| {
            let t = &ctx.config.tolerances;
            let r = mcdybe_tensor_residual(a, w, ctx.config.method, t)?;
            Ok(vec![Measurement::below("tensor_residual", r, t.tensor_residual())])
        }),
        Suite::Equivariance => equivariance(ctx),
        Suite::Realness => per_omega(ctx, suite, |a, w, _| realness(ctx, a, w)),
        Suite::Identities => identities(ctx),
        Suite::Uniqueness => vec![uniqueness()],
    }
}

fn validate_entry(ctx: &Context<'_>) -> SuiteEntry {
    let e = SuiteEntry::new(Suite::Validate, None, None, Inputs::default());
    let Some(a) = ctx.algebra else {
        return e.finish(Err(Error::Usage("no algebra loaded".into())));
    };
    let t = &ctx.config.tolerances;
    let r = validate(a, t);
    let mut e = e;
    e.inputs.detail = Some(format!("{} (dim {}, {})", a.name(), a.dim(), if r.exact { "exact" } else { "floating" }));
    e.finish(Ok(vec![
        Measurement::below("antisymmetry", r.antisymmetry, t.tol_exact.max(f64::MIN_POSITIVE)),
        Measurement::below("jacobi", r.jacobi, t.tol_exact.max(f64::MIN_POSITIVE)),
        Measurement::below("form_symmetry", r.form_symmetry, t.tol_exact.max(f64::MIN_POSITIVE)),
        Measurement::below("invariance", r.invariance, t.tol_exact.max(f64::MIN_POSITIVE)),
        Measurement::above("det_abs", r.det_abs, t.tol_rank),
    ]))
}

/// One entry per element, each gated by the domain check.
fn per_omega(
    ctx: &Context<'_>,
    suite: Suite,
    body: impl Fn(&LieAlgebra, &AlgebraElement, usize) -> Result<Vec<Measurement>>,
) -> Vec<SuiteEntry> {
    let method = Some(ctx.config.method);
    if ctx.omegas.is_empty() {
        let e = SuiteEntry::new(suite, None, method, Inputs::default());
        return vec![e.finish(Err(Error::Usage("no omega supplied".into())))];
    }
    ctx.omegas
        .iter()
        .enumerate()
        .map(|(i, w)| {
            let inputs = Inputs { omega: Some(coords(w)), ..Inputs::default() };
            let e = SuiteEntry::new(suite, Some(i), method, inputs);
            let outcome = ctx
                .algebra()
                .and_then(|a| domain_gate(a, w, &ctx.config.tolerances).map(|_| a))
                .and_then(|a| body(a, w, i));
            e.finish(outcome)
        })
        .collect()
}

fn rmatrix(ctx: &Context<'_>, a: &LieAlgebra, w: &AlgebraElement) -> Result<Vec<Measurement>> {
    let t = &ctx.config.tolerances;
    let r = canonical_r(a, w, ctx.config.method, t)?;
    let mut out = vec![
        Measurement::below("antisymmetry", r.antisymmetry_residual(a, t)?, t.tol_residual),
        Measurement::below("projector_commutation", r.projector_commutation(), t.tol_residual),
    ];
    if ctx.config.method != Method::Contour {
        let c = canonical_r(a, w, Method::Contour, t)?;
        out.push(Measurement::below("agreement_contour", max_abs(&(&c.r - &r.r)), TOL_CONTOUR_AGREEMENT));
    }
    if ctx.config.method != Method::Taylor && spectral_radius(&r.ad_omega)? < SERIES_RADIUS {
        let s = canonical_r(a, w, Method::Taylor, t)?;
        out.push(Measurement::below("agreement_taylor", max_abs(&(&s.r - &r.r)), TOL_TAYLOR_AGREEMENT));
    }
    Ok(out)
}

fn equivariance(ctx: &Context<'_>) -> Vec<SuiteEntry> {
    let t = &ctx.config.tolerances;
    let directions = match ctx.algebra() {
        Ok(a) => {
            let mut rng = ChaCha8Rng::seed_from_u64(ctx.config.seed);
            rng.set_stream(1);
            random_elements(a, ctx.omegas.len(), &mut rng, t)
        }
        Err(_) => Vec::new(),
    };
    let mut entries = per_omega(ctx, Suite::Equivariance, |a, w, i| {
        let s = &directions[i];
        let res = equivariance_residual(a, w, s, ctx.config.method, t)?;
        let dir = bracket(a, s, w)?;
        let analytic = directional_derivative(a, w, &dir, DerivativeMethod::Frechet, t)?;
        let fd = directional_derivative(a, w, &dir, DerivativeMethod::Fd, t)?;
        Ok(vec![
            Measurement::below("equivariance_residual", res, t.tol_residual),
            Measurement::below("fd_corroboration", max_abs(&(analytic - fd)), TOL_FD),
        ])
    });
    for (e, s) in entries.iter_mut().zip(&directions) {
        e.inputs.direction = Some(coords(s));
    }
    entries
}

fn realness(ctx: &Context<'_>, a: &LieAlgebra, w: &AlgebraElement) -> Result<Vec<Measurement>> {
    let t = &ctx.config.tolerances;
    if !a.is_real() {
        return Err(Error::Domain(format!("`{}` is not a real form", a.name())));
    }
    if w.max_imag() != 0.0 {
        return Err(Error::Domain("realness needs real coordinates".into()));
    }
    let r = canonical_r(a, w, ctx.config.method, t)?;
    let worst = (0..a.dim())
        .map(|j| r.apply(&AlgebraElement::basis(a.dim(), j)).max_imag())
        .fold(0.0, f64::max);
    Ok(vec![Measurement::below("max_imag", worst, TOL_REAL)])
}

fn identities(ctx: &Context<'_>) -> Vec<SuiteEntry> {
    let cfg = ctx.config;
    let sweep = match identity_sweep(cfg.max_order, cfg.seed, &cfg.tolerances) {
        Ok(s) => s,
        Err(e) => {
            return vec![SuiteEntry::new(Suite::Identities, None, None, Inputs::default()).finish(Err(e))];
        }
    };
    let mut names: Vec<&str> = Vec::new();
    for c in &sweep.cases {
        if !names.contains(&c.name.as_str()) {
            names.push(&c.name);
        }
    }
    names
        .into_iter()
        .enumerate()
        .map(|(i, name)| {
            let cases: Vec<_> = sweep.cases.iter().filter(|c| c.name == name).collect();
            let failing: Vec<String> = cases
                .iter()
                .filter(|c| !c.pass)
                .map(|c| format!("{:?}", c.params))
                .collect();
            let detail = if failing.is_empty() {
                format!("{name}: {} cases", cases.len())
            } else {
                format!("{name}: {} cases, failing {}", cases.len(), failing.join(" "))
            };
            let tol = cases[0].tolerance;
            let worst = cases.iter().map(|c| c.residual).fold(0.0, f64::max);
            let mut m = if tol == 0.0 {
                // Exact identities: residual must be identically zero.
                Measurement::below(format!("{name}_max_residual"), worst, f64::MIN_POSITIVE)
            } else {
                Measurement::below(format!("{name}_max_residual"), worst, tol)
            };
            m.pass = failing.is_empty();
            let inputs = Inputs { detail: Some(detail), ..Inputs::default() };
            SuiteEntry::new(Suite::Identities, Some(i), None, inputs).finish(Ok(vec![m]))
        })
        .collect()
}

fn uniqueness() -> SuiteEntry {
    const ORDER: usize = 11;
    let ode = ode_series_solve(ORDER);
    let bern = canonical_series(ORDER.div_ceil(2));
    let mismatches = (1..=ORDER).filter(|&n| ode[n - 1] != bern[n]).count();
    let even_nonzero = (2..=ORDER).step_by(2).filter(|&n| ode[n - 1] != num_traits::Zero::zero()).count();
    let detail = ode.iter().take(5).map(|r| r.to_string()).collect::<Vec<_>>().join(", ");
    let inputs = Inputs { detail: Some(format!("a1..a5 = {detail}")), ..Inputs::default() };
    SuiteEntry::new(Suite::Uniqueness, None, None, inputs).finish(Ok(vec![
        Measurement::below("coefficient_mismatches", mismatches as f64, 0.5),
        Measurement::below("nonzero_even_coefficients", even_nonzero as f64, 0.5),
    ]))
}

