//! Acceptance gate. Runs every criterion at its stated tolerance and prints one
//! line per criterion; exits non-zero if any fails.

use std::process::ExitCode;
use std::time::Instant;

use dynr::holofun::{canonical_series, ode_series_solve, Canonical, ScalarFunction};
use dynr::identities::{addition_sweep, analytic_cases, combinatorial_cases, DIdentity};
use dynr::liealg::{ad, bracket, catalog, transpose_wrt_form, AlgebraElement, LieAlgebra};
use dynr::matfun::{eigenvalues, max_abs, spectral_decompose, spectral_radius};
use dynr::rmat::{
    canonical_r, directional_derivative, domain_gate, random_elements, realness_check, seeded_elements,
    DerivativeMethod, Method,
};
use dynr::ybe::{cdybe_residual, equivariance_residual, mcdybe_tensor_residual};
use dynr::{Error, Tolerances};
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::Zero;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const SWEEP: [&str; 4] = ["abelian(3)", "sl2", "oscillator", "direct_sum(sl2,sl2)"];
const TRIALS: usize = 20;
const SEED: u64 = 42;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn(&Tolerances) -> Outcome);

fn check(ok: bool, detail: String) -> Outcome {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn err(e: Error) -> String {
    format!("error: {e}")
}

/// The shared sweep: each catalog algebra with its seeded elements.
fn sweep(tol: &Tolerances) -> Result<Vec<(LieAlgebra, Vec<AlgebraElement>)>, String> {
    SWEEP
        .iter()
        .map(|name| {
            let a = catalog(name).map_err(err)?;
            let w = seeded_elements(&a, TRIALS, SEED, tol);
            Ok((a, w))
        })
        .collect()
}

fn c1_operator_form(tol: &Tolerances) -> Outcome {
    let start = Instant::now();
    let mut worst: f64 = 0.0;
    for (a, ws) in sweep(tol)? {
        for w in &ws {
            worst = worst.max(cdybe_residual(&a, w, Method::Spectral, tol).map_err(err)?.max);
        }
    }
    let secs = start.elapsed().as_secs_f64();
    check(worst < 1e-8 && secs < 5.0, format!("max residual {worst:.2e} < 1e-8, {secs:.2} s < 5 s"))
}

fn c2_tensor_form(tol: &Tolerances) -> Outcome {
    let mut worst: f64 = 0.0;
    let mut disagreements = 0;
    for (a, ws) in sweep(tol)? {
        for w in &ws {
            let t = mcdybe_tensor_residual(&a, w, Method::Spectral, tol).map_err(err)?;
            let op = cdybe_residual(&a, w, Method::Spectral, tol).map_err(err)?.max;
            worst = worst.max(t);
            if (t < 1e-7) != (op < 1e-8) {
                disagreements += 1;
            }
        }
    }
    check(
        worst < 1e-7 && disagreements == 0,
        format!("max residual {worst:.2e} < 1e-7, {disagreements} verdict disagreements"),
    )
}

fn c3_nilpotent(tol: &Tolerances) -> Outcome {
    let a = catalog("sl2").map_err(err)?;
    let e = AlgebraElement::basis(3, a.label_index("E").ok_or("no label E")?);
    let ad_e = ad(&a, &e).map_err(err)?;
    let sd = spectral_decompose(&ad_e, tol).map_err(err)?;
    let nu = sd.max_index();
    let r = canonical_r(&a, &e, Method::Spectral, tol).map_err(err)?.r;
    let diff = max_abs(&(r - &ad_e / Complex64::new(12.0, 0.0)));
    let res = cdybe_residual(&a, &e, Method::Spectral, tol).map_err(err)?.max;
    check(
        nu == 3 && diff < 1e-12 && res < 1e-10,
        format!("nu = {nu}, |R - ad E/12| = {diff:.2e} < 1e-12, residual {res:.2e} < 1e-10"),
    )
}

fn c4_equivariance(tol: &Tolerances) -> Outcome {
    let (mut worst, mut worst_fd): (f64, f64) = (0.0, 0.0);
    for (a, ws) in sweep(tol)? {
        let mut rng = ChaCha8Rng::seed_from_u64(SEED);
        rng.set_stream(1);
        let ss = random_elements(&a, ws.len(), &mut rng, tol);
        for (w, s) in ws.iter().zip(&ss) {
            worst = worst.max(equivariance_residual(&a, w, s, Method::Spectral, tol).map_err(err)?);
            let dir = bracket(&a, s, w).map_err(err)?;
            let an = directional_derivative(&a, w, &dir, DerivativeMethod::Frechet, tol).map_err(err)?;
            let fd = directional_derivative(&a, w, &dir, DerivativeMethod::Fd, tol).map_err(err)?;
            worst_fd = worst_fd.max(max_abs(&(an - fd)));
        }
    }
    check(
        worst < 1e-8 && worst_fd < 1e-5,
        format!("max residual {worst:.2e} < 1e-8, finite-difference gap {worst_fd:.2e} < 1e-5"),
    )
}

fn c5_antisymmetry(tol: &Tolerances) -> Outcome {
    let mut worst: f64 = 0.0;
    for (a, ws) in sweep(tol)? {
        for w in &ws {
            let r = canonical_r(&a, w, Method::Spectral, tol).map_err(err)?.r;
            let rt = transpose_wrt_form(&a, &r, tol).map_err(err)?;
            worst = worst.max(max_abs(&(r + rt)));
        }
    }
    check(worst < 1e-10, format!("max |R + R^T| {worst:.2e} < 1e-10"))
}

fn c6_back_ends(tol: &Tolerances) -> Outcome {
    let (mut contour, mut taylor): (f64, f64) = (0.0, 0.0);
    let mut inside = 0;
    for (a, ws) in sweep(tol)? {
        for w in &ws {
            let s = canonical_r(&a, w, Method::Spectral, tol).map_err(err)?;
            let c = canonical_r(&a, w, Method::Contour, tol).map_err(err)?.r;
            contour = contour.max(max_abs(&(&s.r - c)));
            if spectral_radius(&s.ad_omega).map_err(err)? < 1.0 {
                inside += 1;
                let t = canonical_r(&a, w, Method::Taylor, tol).map_err(err)?.r;
                taylor = taylor.max(max_abs(&(&s.r - t)));
            }
        }
    }
    check(
        contour < 1e-6 && taylor < 1e-10 && inside > 0,
        format!("contour gap {contour:.2e} < 1e-6, taylor gap {taylor:.2e} < 1e-10 on {inside} trials"),
    )
}

fn c7_addition(tol: &Tolerances) -> Outcome {
    let f = Canonical::new(tol.delta_pole);
    let good = addition_sweep(&f, 200, SEED, tol).map_err(err)?;
    let control = addition_sweep(&ScalarFunction::canonical().scaled(1.05), 200, SEED, tol).map_err(err)?;
    check(
        good < 1e-12 && control > 1e-4,
        format!("max residual {good:.2e} < 1e-12, control 1.05f gives {control:.2e} > 1e-4"),
    )
}

fn c8_combinatorial() -> Outcome {
    let start = Instant::now();
    let cases = combinatorial_cases(10, None).map_err(err)?;
    let secs = start.elapsed().as_secs_f64();
    let failures = cases.iter().filter(|c| !c.pass || c.residual != 0.0).count();
    check(
        failures == 0 && secs < 1.0,
        format!("{} exact cases, {failures} failures, {secs:.3} s < 1 s", cases.len()),
    )
}

fn c9_derivative_identities(tol: &Tolerances) -> Outcome {
    let cases = analytic_cases(4, SEED, tol, None).map_err(err)?;
    let mut worst: f64 = 0.0;
    let mut total = 0;
    let mut failures = 0;
    for d in DIdentity::ALL {
        for case in cases.iter().filter(|c| c.name == d.name()) {
            total += 1;
            worst = worst.max(case.residual);
            if !case.pass || case.residual >= 1e-8 {
                failures += 1;
            }
        }
    }
    let limits = DIdentity::ALL.iter().filter(|d| d.is_limit()).count();
    check(
        failures == 0 && total == DIdentity::ALL.len() * 20 * 25 && limits == 3,
        format!("{total} cases ({limits} limit forms), {failures} failures, max residual {worst:.2e} < 1e-8"),
    )
}

fn c10_uniqueness() -> Outcome {
    let ode = ode_series_solve(11);
    let bern = canonical_series(6);
    let mismatched = (1..=11).filter(|&n| ode[n - 1] != bern[n]).count();
    let even = (2..=11).step_by(2).filter(|&n| !ode[n - 1].is_zero()).count();
    let r = |p: i64, q: i64| BigRational::new(p.into(), q.into());
    let known = ode[0] == r(1, 12) && ode[2] == r(-1, 720) && ode[4] == r(1, 30240);
    let shown: Vec<String> = ode.iter().step_by(2).map(|x| x.to_string()).collect();
    check(
        mismatched == 0 && even == 0 && known,
        format!("a1, a3, ..., a11 = {}; {mismatched} mismatches, {even} nonzero even terms", shown.join(", ")),
    )
}

fn c11_real_form(tol: &Tolerances) -> Outcome {
    let mut worst: f64 = 0.0;
    let mut conjugate = 0;
    for name in ["sl2", "sl2_real"] {
        let a = catalog(name).map_err(err)?;
        let mut ws = seeded_elements(&a, TRIALS - 1, SEED, tol);
        // E - F for the split form and X1 for the compact one: ad-spectrum {0, +-c i}.
        ws.push(if name == "sl2" { AlgebraElement::from_real(&[0.0, 1.0, -1.0]) } else { AlgebraElement::from_real(&[0.7, 0.0, 0.0]) });
        for w in &ws {
            let ev = eigenvalues(&ad(&a, w).map_err(err)?).map_err(err)?;
            if ev.iter().any(|z| z.im.abs() > 1e-8) {
                conjugate += 1;
            }
            for j in 0..3 {
                let x = AlgebraElement::basis(3, j);
                worst = worst.max(realness_check(&a, w, &x, Method::Spectral, tol).map_err(err)?);
            }
        }
    }
    check(
        worst < 1e-10 && conjugate > 0,
        format!("max |Im R(w)X| {worst:.2e} < 1e-10 over 40 elements, {conjugate} with conjugate spectrum"),
    )
}

fn c12_domain_gate(tol: &Tolerances) -> Outcome {
    let a = catalog("sl2").map_err(err)?;
    // ad(sH) has eigenvalues 0 and +-2s; put one 5e-7 from 2 pi i.
    let s = Complex64::new(0.0, std::f64::consts::PI + 2.5e-7);
    let w = AlgebraElement::new(vec![s, Complex64::zero(), Complex64::zero()]);
    let rejected = matches!(domain_gate(&a, &w, tol), Err(Error::Domain(_)))
        && matches!(canonical_r(&a, &w, Method::Spectral, tol), Err(Error::Domain(_)));
    let scaled = w.scale(Complex64::new(0.9, 0.0));
    let accepted = domain_gate(&a, &scaled, tol).is_ok() && canonical_r(&a, &scaled, Method::Spectral, tol).is_ok();
    check(rejected && accepted, format!("near-pole element rejected: {rejected}, scaled by 0.9 accepted: {accepted}"))
}

fn main() -> ExitCode {
    let tol = Tolerances::default();
    let criteria: [Criterion; 12] = [
        ("operator-form mCDYBE sweep", c1_operator_form),
        ("tensor-form mCDYBE sweep", c2_tensor_form),
        ("nilpotent element sl2 E", c3_nilpotent),
        ("equivariance sweep", c4_equivariance),
        ("antisymmetry sweep", c5_antisymmetry),
        ("back-end agreement", c6_back_ends),
        ("addition formula", c7_addition),
        ("combinatorial identities b1-b4", |_| c8_combinatorial()),
        ("derivative identities d1-d7 with limits", c9_derivative_identities),
        ("uniqueness by power series", |_| c10_uniqueness()),
        ("real form preserved", c11_real_form),
        ("domain gate", c12_domain_gate),
    ];
    let mut failed = 0;
    println!("acceptance: {} criteria", criteria.len());
    for (i, (name, run)) in criteria.iter().enumerate() {
        let (status, detail) = match run(&tol) {
            Ok(d) => ("PASS", d),
            Err(d) => {
                failed += 1;
                ("FAIL", d)
            }
        };
        println!("criterion {:>2} {status} {name}: {detail}", i + 1);
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
