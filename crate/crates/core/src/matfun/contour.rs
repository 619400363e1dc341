//! Trapezoidal quadrature of resolvent integrals over circles.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{czero, eigenvalues, max_abs, resolvent, spectral_decompose};
use crate::error::{Error, Result};
use crate::holofun::Holomorphic;
use crate::tol::Tolerances;
use crate::Operator;

/// Positively oriented circle with `nodes` equispaced quadrature points.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Contour {
    pub center: Complex64,
    pub radius: f64,
    pub nodes: usize,
}

impl Contour {
    pub fn new(center: Complex64, radius: f64, nodes: usize) -> Result<Self> {
        if !radius.is_finite() || radius <= 0.0 {
            return Err(Error::Domain(format!("contour radius must be positive, got {radius}")));
        }
        if nodes < 16 {
            return Err(Error::Domain(format!("contour needs at least 16 nodes, got {nodes}")));
        }
        Ok(Self { center, radius, nodes })
    }

    fn node(&self, k: usize, of: usize) -> (Complex64, Complex64) {
        let e = Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * k as f64 / of as f64);
        (self.center + e * self.radius, e)
    }
}

#[derive(Clone, Copy)]
pub(crate) enum Kernel<'a> {
    /// `g(xi) (xi - T)^-1`
    Resolvent,
    /// `g(xi) (xi - T)^-1 S (xi - T)^-1` for each `S`.
    Frechet(&'a [Operator]),
}

impl Kernel<'_> {
    fn outputs(&self) -> usize {
        match self {
            Kernel::Resolvent => 1,
            Kernel::Frechet(s) => s.len(),
        }
    }
}

/// Add `sum_k e^{i theta_k} F(xi_k)` over the selected nodes into `acc`.
fn accumulate(
    t: &Operator,
    c: &Contour,
    of: usize,
    ks: impl Iterator<Item = usize>,
    g: &dyn Holomorphic,
    kernel: Kernel<'_>,
    acc: &mut [Operator],
) -> Result<()> {
    for k in ks {
        let (xi, e) = c.node(k, of);
        let r = resolvent(t, xi)?;
        let w = g.eval(xi)? * e;
        match kernel {
            Kernel::Resolvent => acc[0] += &r * w,
            Kernel::Frechet(ss) => {
                for (a, s) in acc.iter_mut().zip(ss) {
                    *a += &r * s * &r * w;
                }
            }
        }
    }
    Ok(())
}

fn check_clearance(t: &Operator, circles: &[Contour], tol: &Tolerances) -> Result<()> {
    let eigs = eigenvalues(t)?;
    for c in circles {
        for l in &eigs {
            let gap = ((l - c.center).norm() - c.radius).abs();
            if gap <= tol.delta_pole {
                return Err(Error::Domain(format!(
                    "contour |xi - {}| = {} passes within {gap:.2e} of eigenvalue {l}",
                    c.center, c.radius
                )));
            }
        }
    }
    Ok(())
}

/// Fixed-node quadrature.
pub(crate) fn integrate(
    t: &Operator,
    circles: &[Contour],
    g: &dyn Holomorphic,
    kernel: Kernel<'_>,
) -> Result<Vec<Operator>> {
    let n = t.nrows();
    let mut total = vec![Operator::zeros(n, n); kernel.outputs()];
    for c in circles {
        let mut acc = vec![Operator::zeros(n, n); kernel.outputs()];
        accumulate(t, c, c.nodes, 0..c.nodes, g, kernel, &mut acc)?;
        let scale = Complex64::new(c.radius / c.nodes as f64, 0.0);
        for (tt, a) in total.iter_mut().zip(acc) {
            *tt += a * scale;
        }
    }
    Ok(total)
}

/// Quadrature with node doubling until successive results agree.
pub(crate) fn adaptive(
    t: &Operator,
    circles: &[Contour],
    tol: &Tolerances,
    g: &dyn Holomorphic,
    kernel: Kernel<'_>,
) -> Result<Vec<Operator>> {
    let n = t.nrows();
    let outputs = kernel.outputs();
    let mut raw: Vec<Vec<Operator>> = Vec::with_capacity(circles.len());
    let mut counts: Vec<usize> = circles.iter().map(|c| c.nodes).collect();
    for c in circles {
        let mut acc = vec![Operator::zeros(n, n); outputs];
        accumulate(t, c, c.nodes, 0..c.nodes, g, kernel, &mut acc)?;
        raw.push(acc);
    }
    let combine = |raw: &[Vec<Operator>], counts: &[usize]| -> Vec<Operator> {
        let mut total = vec![Operator::zeros(n, n); outputs];
        for ((c, acc), &m) in circles.iter().zip(raw).zip(counts) {
            let scale = Complex64::new(c.radius / m as f64, 0.0);
            for (tt, a) in total.iter_mut().zip(acc) {
                *tt += a * scale;
            }
        }
        total
    };
    let mut current = combine(&raw, &counts);
    loop {
        if counts.iter().any(|&m| 2 * m > tol.max_nodes.max(m)) {
            return Err(Error::Numerical(format!(
                "contour quadrature did not converge within {} nodes",
                tol.max_nodes
            )));
        }
        for ((c, acc), m) in circles.iter().zip(raw.iter_mut()).zip(counts.iter_mut()) {
            let of = 2 * *m;
            accumulate(t, c, of, (1..of).step_by(2), g, kernel, acc)?;
            *m = of;
        }
        let next = combine(&raw, &counts);
        let scale = next.iter().map(max_abs).fold(1.0, f64::max);
        let change = next.iter().zip(&current).map(|(a, b)| max_abs(&(a - b))).fold(0.0, f64::max);
        current = next;
        if change <= tol.quad_tol * scale {
            return Ok(current);
        }
    }
}

/// Circles enclosing the spectrum of `t` inside the holomorphy domain of `g`:
/// one circle when the spectrum sits well inside, else one per cluster.
pub fn enclosing_contours(g: &dyn Holomorphic, t: &Operator, tol: &Tolerances) -> Result<Vec<Contour>> {
    let eigs = eigenvalues(t)?;
    let nodes = tol.nodes.max(16);
    if eigs.is_empty() {
        return Ok(Vec::new());
    }
    let center = eigs.iter().sum::<Complex64>() / eigs.len() as f64;
    let rho = eigs.iter().map(|l| (l - center).norm()).fold(0.0, f64::max);
    let d = g.singularity_distance(center);
    if d.is_infinite() {
        return Ok(vec![Contour { center, radius: 2.0 * rho + 1.0, nodes }]);
    }
    if rho <= 0.5 * d {
        let radius = if rho > 0.0 { (rho * d).sqrt() } else { 0.5 * d };
        return Ok(vec![Contour { center, radius, nodes }]);
    }
    let sd = spectral_decompose(t, tol)?;
    let margin = 4.0 * tol.tol_cluster * (1.0 + t.norm());
    let mut out = Vec::with_capacity(sd.clusters.len());
    for c in &sd.clusters {
        let spread = c.eigenvalues.iter().map(|l| (l - c.center).norm()).fold(0.0, f64::max);
        let ds = g.singularity_distance(c.center);
        let mut radius = c.radius.min(0.5 * (spread + ds));
        if !radius.is_finite() {
            radius = 0.5 * (spread + ds);
        }
        if radius <= spread + margin || radius >= ds {
            return Err(Error::Domain(format!(
                "eigenvalue cluster at {} is too close to a singularity ({ds:.2e})",
                c.center
            )));
        }
        out.push(Contour { center: c.center, radius, nodes });
    }
    Ok(out)
}

/// `(1/2 pi i) \oint g(xi) (xi - T)^-1 dxi` with exactly `c.nodes` nodes.
pub fn apply_fun_contour(g: &dyn Holomorphic, t: &Operator, c: &Contour, tol: &Tolerances) -> Result<Operator> {
    let c = Contour::new(c.center, c.radius, c.nodes)?;
    check_clearance(t, &[c], tol)?;
    Ok(integrate(t, &[c], g, Kernel::Resolvent)?.remove(0))
}

/// `g(T)` on automatically chosen contours with adaptive node doubling.
pub fn apply_fun_contour_adaptive(g: &dyn Holomorphic, t: &Operator, tol: &Tolerances) -> Result<Operator> {
    let circles = enclosing_contours(g, t, tol)?;
    if circles.is_empty() {
        return Ok(Operator::zeros(0, 0));
    }
    Ok(adaptive(t, &circles, tol, g, Kernel::Resolvent)?.remove(0))
}

/// Directional derivative of `g` at `T` along `S`.
pub fn frechet(g: &dyn Holomorphic, t: &Operator, s: &Operator, tol: &Tolerances) -> Result<Operator> {
    Ok(frechet_many(g, t, std::slice::from_ref(s), tol)?.remove(0))
}

/// Directional derivatives along several directions, sharing resolvents.
pub fn frechet_many(
    g: &dyn Holomorphic,
    t: &Operator,
    directions: &[Operator],
    tol: &Tolerances,
) -> Result<Vec<Operator>> {
    for s in directions {
        if s.shape() != t.shape() {
            return Err(Error::Dimension { expected: t.nrows(), found: s.nrows() });
        }
    }
    if directions.is_empty() {
        return Ok(Vec::new());
    }
    if directions.iter().all(|s| s.iter().all(|z| *z == czero())) {
        return Ok(directions.to_vec());
    }
    let circles = enclosing_contours(g, t, tol)?;
    adaptive(t, &circles, tol, g, Kernel::Frechet(directions))
}
