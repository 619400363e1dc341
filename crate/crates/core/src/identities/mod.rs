//! Exact combinatorial identities and the analytic identities of the
//! canonical function, with seeded sweeps.

mod sample;

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::ser::SerializeTuple;
use serde::{Serialize, Serializer};

pub use sample::{addition_sweep, sample_pair, sample_point, PointConstraints};

use crate::error::{Error, Result};
use crate::holofun::{addition_residual_with, bijet_eval_with, BiExpr, Canonical, Holomorphic, Jet};
use crate::tol::{Tolerances, MAX_ORDER};

/// Tolerance for analytic identities built from jets.
pub const TOL_JET: f64 = 1e-8;
/// Tolerance for parity, ODE and addition-formula checks.
pub const TOL_SCALAR: f64 = 1e-12;
/// Largest parameter accepted by the sweep.
pub const MAX_SWEEP_ORDER: usize = 10;

/// One side of an identity.
#[derive(Debug, Clone, PartialEq)]
pub enum Value {
    Exact(BigRational),
    Complex(Complex64),
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Exact(r) => write!(f, "{r}"),
            Value::Complex(z) => write!(f, "{z:.6e}"),
        }
    }
}

impl Serialize for Value {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Value::Exact(r) => s.serialize_str(&r.to_string()),
            Value::Complex(z) => {
                let mut t = s.serialize_tuple(2)?;
                t.serialize_element(&z.re)?;
                t.serialize_element(&z.im)?;
                t.end()
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IdentityCase {
    pub name: String,
    pub params: Vec<usize>,
    #[serde(serialize_with = "serialize_points")]
    pub points: Vec<Complex64>,
    pub lhs: Value,
    pub rhs: Value,
    pub residual: f64,
    pub tolerance: f64,
    pub pass: bool,
}

fn serialize_points<S: Serializer>(p: &[Complex64], s: S) -> std::result::Result<S::Ok, S::Error> {
    let pairs: Vec<[f64; 2]> = p.iter().map(|z| [z.re, z.im]).collect();
    pairs.serialize(s)
}

impl IdentityCase {
    fn exact(name: &str, params: Vec<usize>, lhs: BigRational, rhs: BigRational) -> Self {
        let diff = (&lhs - &rhs).abs();
        let residual = crate::liealg::rational_to_f64(&diff);
        let pass = diff.is_zero();
        Self {
            name: name.into(),
            params,
            points: Vec::new(),
            lhs: Value::Exact(lhs),
            rhs: Value::Exact(rhs),
            residual,
            tolerance: 0.0,
            pass,
        }
    }

    fn analytic(name: &str, params: Vec<usize>, points: Vec<Complex64>, lhs: Complex64, rhs: Complex64, tolerance: f64) -> Self {
        let residual = (lhs - rhs).norm();
        Self {
            name: name.into(),
            params,
            points,
            lhs: Value::Complex(lhs),
            rhs: Value::Complex(rhs),
            residual,
            tolerance,
            pass: residual < tolerance,
        }
    }
}

fn big(n: usize) -> BigInt {
    BigInt::from(n)
}

/// Exact factorial.
pub fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * big(i))
}

/// Exact binomial coefficient; zero outside `0 <= k <= n`.
pub fn binomial(n: i64, k: i64) -> BigInt {
    if k < 0 || n < 0 || k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

fn sign(j: usize) -> BigInt {
    if j.is_multiple_of(2) {
        BigInt::one()
    } else {
        -BigInt::one()
    }
}

fn int(n: BigInt) -> BigRational {
    BigRational::from_integer(n)
}

/// Deliberate corruptions used to confirm that a sweep can fail.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Corruption {
    /// Right side of b1 uses `(k+l)!` in place of `(k+l+1)!`.
    B1Factorial,
    /// Right side of d6lim divides by `k+2` in place of `k+1`.
    D6LimDenominator,
}

/// Combinatorial identity `which` in exact arithmetic.
///
/// Parameters: b1 `(k, l)`; b2 `(k, n)` with `k <= n`; b3 `(k, l, m)` with
/// `m <= l`; b4 `(k, l, m)` with `l < m <= k + l`.
pub fn check_b(which: u8, params: &[usize]) -> Result<IdentityCase> {
    check_b_with(which, params, None)
}

fn check_b_with(which: u8, params: &[usize], corruption: Option<Corruption>) -> Result<IdentityCase> {
    let need = match which {
        1 | 2 => 2,
        3 | 4 => 3,
        _ => return Err(Error::ParameterRange(format!("no identity b{which}"))),
    };
    if params.len() != need {
        return Err(Error::ParameterRange(format!("b{which} takes {need} parameters, got {}", params.len())));
    }
    let name = format!("b{which}");
    let p = params.to_vec();
    Ok(match which {
        1 => {
            let (k, l) = (params[0], params[1]);
            let mut lhs = BigRational::zero();
            for n in 0..=k {
                lhs += int(sign(n) * binomial(k as i64, n as i64)) / int(big(n + l + 1));
            }
            let top = if corruption == Some(Corruption::B1Factorial) { k + l } else { k + l + 1 };
            let rhs = BigRational::new(factorial(k) * factorial(l), factorial(top));
            IdentityCase::exact(&name, p, lhs, rhs)
        }
        2 => {
            let (k, n) = (params[0], params[1]);
            if k > n {
                return Err(Error::ParameterRange(format!("b2 needs k <= n, got k={k}, n={n}")));
            }
            let lhs: BigInt = (0..=k).map(|a| binomial((n - a) as i64, (n - k) as i64)).sum();
            let rhs = binomial(n as i64 + 1, k as i64);
            IdentityCase::exact(&name, p, int(lhs), int(rhs))
        }
        3 | 4 => {
            let (k, l, m) = (params[0], params[1], params[2]);
            let upper = if which == 3 {
                if m > l {
                    return Err(Error::ParameterRange(format!("b3 needs m <= l, got l={l}, m={m}")));
                }
                m
            } else {
                if !(l < m && m <= k + l) {
                    return Err(Error::ParameterRange(format!("b4 needs l < m <= k+l, got k={k}, l={l}, m={m}")));
                }
                l
            };
            let lhs: BigInt = (0..=upper)
                .map(|j| sign(j) * binomial(m as i64, j as i64) * binomial((k + l - j) as i64, k as i64))
                .sum();
            let rhs = if k < m { BigInt::zero() } else { binomial((k + l - m) as i64, l as i64) };
            IdentityCase::exact(&name, p, int(lhs), int(rhs))
        }
        _ => unreachable!(),
    })
}

/// Every admissible tuple of identity `which` with entries `<= max`.
pub fn b_tuples(which: u8, max: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    match which {
        1 => {
            for k in 0..=max {
                for l in 0..=max {
                    out.push(vec![k, l]);
                }
            }
        }
        2 => {
            for n in 0..=max {
                for k in 0..=n {
                    out.push(vec![k, n]);
                }
            }
        }
        3 | 4 => {
            for k in 0..=max {
                for l in 0..=max {
                    let range = if which == 3 { 0..=l } else { l + 1..=(k + l).min(max) };
                    for m in range {
                        out.push(vec![k, l, m]);
                    }
                }
            }
        }
        _ => {}
    }
    out
}

fn canonical(tol: &Tolerances) -> Canonical {
    Canonical::new(tol.delta_pole)
}

/// Parity `f^(k)(-x) = (-1)^(k+1) f^(k)(x)`.
pub fn check_c1_parity(x: Complex64, k: usize, tol: &Tolerances) -> Result<IdentityCase> {
    let f = canonical(tol);
    let lhs = f.jet(-x, k)?.derivative(k);
    let s = if (k + 1).is_multiple_of(2) { 1.0 } else { -1.0 };
    let rhs = f.jet(x, k)?.derivative(k) * s;
    Ok(IdentityCase::analytic("c1_parity", vec![k], vec![x], lhs, rhs, TOL_SCALAR))
}

/// `f' + 2 f / x + f^2 = 1/4`; at `x = 0` the left side is the limit `3 f'(0)`.
pub fn check_c1_ode(x: Complex64, tol: &Tolerances) -> Result<IdentityCase> {
    let j = canonical(tol).jet(x, 1)?;
    let lhs = if x.is_zero() {
        j.derivative(1) * 3.0
    } else {
        if x.norm() < tol.delta_pole {
            return Err(Error::Domain(format!("x = {x} is within {:.1e} of zero", tol.delta_pole)));
        }
        j.derivative(1) + 2.0 * j.value() / x + j.value() * j.value()
    };
    Ok(IdentityCase::analytic("c1_ode", vec![], vec![x], lhs, Complex64::new(0.25, 0.0), TOL_SCALAR))
}

/// Both relations at once: parity of order `k` and the ODE.
pub fn check_c1(x: Complex64, k: usize, tol: &Tolerances) -> Result<[IdentityCase; 2]> {
    Ok([check_c1_parity(x, k, tol)?, check_c1_ode(x, tol)?])
}

/// The addition formula at `(x, y)`.
pub fn check_additional(x: Complex64, y: Complex64, tol: &Tolerances) -> Result<IdentityCase> {
    let r = addition_residual_with(&canonical(tol), x, y, tol.delta_pole)?;
    Ok(IdentityCase::analytic("additional", vec![], vec![x, y], r, Complex64::zero(), TOL_SCALAR))
}

/// The derivative identities d1 to d7 and the three limit forms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DIdentity {
    D1,
    D2,
    D3,
    D4,
    D5,
    D5Lim,
    D6,
    D6Lim,
    D7,
    D7Lim,
}

impl DIdentity {
    pub const ALL: [DIdentity; 10] = [
        DIdentity::D1,
        DIdentity::D2,
        DIdentity::D3,
        DIdentity::D4,
        DIdentity::D5,
        DIdentity::D5Lim,
        DIdentity::D6,
        DIdentity::D6Lim,
        DIdentity::D7,
        DIdentity::D7Lim,
    ];

    pub fn name(self) -> &'static str {
        match self {
            DIdentity::D1 => "d1",
            DIdentity::D2 => "d2",
            DIdentity::D3 => "d3",
            DIdentity::D4 => "d4",
            DIdentity::D5 => "d5",
            DIdentity::D5Lim => "d5lim",
            DIdentity::D6 => "d6",
            DIdentity::D6Lim => "d6lim",
            DIdentity::D7 => "d7",
            DIdentity::D7Lim => "d7lim",
        }
    }

    pub fn expr(self) -> BiExpr {
        match self {
            DIdentity::D1 => BiExpr::Quarter,
            DIdentity::D2 => BiExpr::FxFy,
            DIdentity::D3 => BiExpr::FxyFx,
            DIdentity::D4 => BiExpr::FxyFy,
            DIdentity::D5 | DIdentity::D5Lim => BiExpr::SumOverSum,
            DIdentity::D6 | DIdentity::D6Lim => BiExpr::DiffOverX,
            DIdentity::D7 | DIdentity::D7Lim => BiExpr::DiffOverY,
        }
    }

    pub fn is_limit(self) -> bool {
        matches!(self, DIdentity::D5Lim | DIdentity::D6Lim | DIdentity::D7Lim)
    }

    /// The evaluation point, moved onto the excluded set for limit forms.
    pub fn point(self, x: Complex64, y: Complex64) -> (Complex64, Complex64) {
        match self {
            DIdentity::D5Lim => (-y, y),
            DIdentity::D6Lim => (Complex64::zero(), y),
            DIdentity::D7Lim => (x, Complex64::zero()),
            _ => (x, y),
        }
    }
}

impl FromStr for DIdentity {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        DIdentity::ALL
            .into_iter()
            .find(|d| d.name() == s)
            .ok_or_else(|| Error::ParameterRange(format!("no identity `{s}`")))
    }
}

fn ffact(n: usize) -> f64 {
    (1..=n).fold(1.0, |acc, i| acc * i as f64)
}

fn choose(n: usize, k: usize) -> f64 {
    ffact(n) / (ffact(k) * ffact(n - k))
}

fn pm(j: usize) -> f64 {
    if j.is_multiple_of(2) {
        1.0
    } else {
        -1.0
    }
}

struct Jets {
    x: Jet,
    y: Jet,
    s: Jet,
}

/// Closed-form right side of `which` at `(x, y)`.
fn d_rhs(which: DIdentity, k: usize, l: usize, x: Complex64, y: Complex64, jets: &Jets, corruption: Option<Corruption>) -> Complex64 {
    let zero = Complex64::zero();
    match which {
        DIdentity::D1 => {
            if k == 0 && l == 0 {
                Complex64::new(0.25, 0.0)
            } else {
                zero
            }
        }
        DIdentity::D2 => jets.x.derivative(k) * jets.y.derivative(l),
        DIdentity::D3 => (0..=k)
            .map(|i| choose(k, i) * jets.s.derivative(l + i) * jets.x.derivative(k - i))
            .sum(),
        DIdentity::D4 => (0..=l)
            .map(|i| choose(l, i) * jets.s.derivative(k + i) * jets.y.derivative(l - i))
            .sum(),
        DIdentity::D5 => {
            let s = x + y;
            let outer = pm(k + l);
            let a: Complex64 = (0..=l)
                .map(|a| choose(l, a) * ffact(k + l - a) * pm(a) * jets.y.derivative(a) / s.powu((k + l + 1 - a) as u32))
                .sum();
            let b: Complex64 = (0..=k)
                .map(|b| choose(k, b) * ffact(k + l - b) * pm(b) * jets.x.derivative(b) / s.powu((k + l + 1 - b) as u32))
                .sum();
            (a + b) * outer
        }
        DIdentity::D5Lim => {
            pm(k) * ffact(k) * ffact(l) / ffact(k + l + 1) * jets.y.derivative(k + l + 1)
        }
        DIdentity::D6 => {
            let sum: Complex64 = (0..=k)
                .map(|m| ffact(k) / ffact(k - m) * pm(m + 1) * jets.s.derivative(k + l - m) / x.powu((m + 1) as u32))
                .sum();
            -sum - pm(k) * ffact(k) * jets.y.derivative(l) / x.powu((k + 1) as u32)
        }
        DIdentity::D6Lim => {
            let den = if corruption == Some(Corruption::D6LimDenominator) { k + 2 } else { k + 1 };
            jets.y.derivative(k + l + 1) / den as f64
        }
        DIdentity::D7 => {
            let sum: Complex64 = (0..=l)
                .map(|m| ffact(l) / ffact(l - m) * pm(m + 1) * jets.s.derivative(k + l - m) / y.powu((m + 1) as u32))
                .sum();
            -sum - pm(l) * ffact(l) * jets.x.derivative(k) / y.powu((l + 1) as u32)
        }
        DIdentity::D7Lim => jets.x.derivative(k + l + 1) / (l + 1) as f64,
    }
}

/// Derivative identity `which` at order `(k, l)`: left side from bivariate
/// jets, right side from the closed form. Limit forms ignore the coordinate
/// they pin (`x = -y`, `x = 0` or `y = 0`).
pub fn check_d(which: DIdentity, k: usize, l: usize, x: Complex64, y: Complex64, tol: &Tolerances) -> Result<IdentityCase> {
    check_d_with(which, k, l, x, y, tol, None)
}

fn check_d_with(
    which: DIdentity,
    k: usize,
    l: usize,
    x: Complex64,
    y: Complex64,
    tol: &Tolerances,
    corruption: Option<Corruption>,
) -> Result<IdentityCase> {
    if k.max(l) > MAX_ORDER {
        return Err(Error::OrderOverflow { order: k.max(l), max: MAX_ORDER });
    }
    let (x, y) = which.point(x, y);
    let excluded = match which {
        DIdentity::D5 => Some(x + y),
        DIdentity::D6 => Some(x),
        DIdentity::D7 => Some(y),
        _ => None,
    };
    if let Some(d) = excluded {
        if d.norm() < tol.delta_pole {
            return Err(Error::Domain(format!("{} needs a nonvanishing denominator, got {d}", which.name())));
        }
    }
    let lhs = bijet_eval_with(which.expr(), x, y, k, l, tol.delta_pole)?.top();
    let f = canonical(tol);
    let m = k + l + 1;
    let jets = Jets { x: f.jet(x, m)?, y: f.jet(y, m)?, s: f.jet(x + y, m)? };
    let rhs = d_rhs(which, k, l, x, y, &jets, corruption);
    Ok(IdentityCase::analytic(which.name(), vec![k, l], vec![x, y], lhs, rhs, TOL_JET))
}

/// `|non-limit form at distance offset| - limit form|` for the three limit identities,
/// both evaluated through bivariate jets.
pub fn limit_continuity(which: DIdentity, k: usize, l: usize, y: Complex64, offset: f64, tol: &Tolerances) -> Result<f64> {
    let (x0, y0) = which.point(y, y);
    let h = Complex64::new(offset, 0.0);
    let (xn, yn) = match which {
        DIdentity::D5Lim | DIdentity::D6Lim => (x0 + h, y0),
        DIdentity::D7Lim => (x0, y0 + h),
        _ => return Err(Error::ParameterRange(format!("{} has no limit form", which.name()))),
    };
    let e = which.expr();
    let near = bijet_eval_with(e, xn, yn, k, l, tol.delta_pole)?.top();
    let at = bijet_eval_with(e, x0, y0, k, l, tol.delta_pole)?.top();
    Ok((near - at).norm())
}

/// Aggregated sweep output.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Sweep {
    pub max_order: usize,
    pub seed: u64,
    pub cases: Vec<IdentityCase>,
    pub failures: usize,
}

impl Sweep {
    pub fn failing(&self) -> impl Iterator<Item = &IdentityCase> {
        self.cases.iter().filter(|c| !c.pass)
    }

    pub fn max_residual(&self, name: &str) -> f64 {
        self.cases.iter().filter(|c| c.name == name).map(|c| c.residual).fold(0.0, f64::max)
    }
}

/// Points per analytic identity in a sweep.
pub const SWEEP_POINTS: usize = 20;

/// All combinatorial identities with parameters up to `max_order`, and the
/// analytic ones at `SWEEP_POINTS` seeded points with `k, l <= min(max_order, 4)`.
pub fn identity_sweep(max_order: usize, seed: u64, tol: &Tolerances) -> Result<Sweep> {
    identity_sweep_with(max_order, seed, tol, None)
}

/// [`identity_sweep`] with an optional deliberate corruption of one right side.
pub fn identity_sweep_with(max_order: usize, seed: u64, tol: &Tolerances, corruption: Option<Corruption>) -> Result<Sweep> {
    let mut cases = combinatorial_cases(max_order, corruption)?;
    cases.extend(analytic_cases(max_order, seed, tol, corruption)?);
    let failures = cases.iter().filter(|c| !c.pass).count();
    Ok(Sweep { max_order, seed, cases, failures })
}

/// Only the exact identities b1 to b4.
pub fn combinatorial_cases(max_order: usize, corruption: Option<Corruption>) -> Result<Vec<IdentityCase>> {
    if max_order > MAX_SWEEP_ORDER {
        return Err(Error::ParameterRange(format!("max order {max_order} exceeds {MAX_SWEEP_ORDER}")));
    }
    let mut cases = Vec::new();
    for which in 1..=4u8 {
        for p in b_tuples(which, max_order) {
            cases.push(check_b_with(which, &p, corruption)?);
        }
    }
    Ok(cases)
}

/// Only the analytic identities (c1, addition formula, d1 to d7 and limits).
pub fn analytic_cases(max_order: usize, seed: u64, tol: &Tolerances, corruption: Option<Corruption>) -> Result<Vec<IdentityCase>> {
    if max_order > MAX_SWEEP_ORDER {
        return Err(Error::ParameterRange(format!("max order {max_order} exceeds {MAX_SWEEP_ORDER}")));
    }
    let order = max_order.min(MAX_ORDER);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let c = PointConstraints::identities();
    let mut cases = Vec::new();
    for _ in 0..SWEEP_POINTS {
        let x = sample_point(&mut rng, &c);
        for k in 0..=order {
            cases.push(check_c1_parity(x, k, tol)?);
        }
        cases.push(check_c1_ode(x, tol)?);
    }
    for _ in 0..SWEEP_POINTS {
        let (x, y) = sample_pair(&mut rng, &c);
        cases.push(check_additional(x, y, tol)?);
    }
    for which in DIdentity::ALL {
        for _ in 0..SWEEP_POINTS {
            let (x, y) = sample_pair(&mut rng, &c);
            for k in 0..=order {
                for l in 0..=order {
                    cases.push(check_d_with(which, k, l, x, y, tol, corruption)?);
                }
            }
        }
    }
    Ok(cases)
}
