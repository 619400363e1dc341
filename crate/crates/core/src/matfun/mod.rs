//! Functions of non-normal operators: clustered spectra, resolvent
//! projectors, three evaluation back-ends and the Fréchet derivative.

mod contour;

use nalgebra::linalg::Schur;
use num_complex::Complex64;
use num_traits::Zero;
use serde::Serialize;

pub use contour::{
    apply_fun_contour, apply_fun_contour_adaptive, enclosing_contours, frechet, frechet_many, Contour,
};

use crate::error::{Error, Result};
use crate::holofun::Holomorphic;
use crate::tol::{Tolerances, SERIES_RADIUS};
use crate::Operator;

/// Largest entry modulus.
pub fn max_abs(a: &Operator) -> f64 {
    a.iter().fold(0.0, |m, z| m.max(z.norm()))
}

/// Frobenius norm.
pub fn fro(a: &Operator) -> f64 {
    a.norm()
}

fn identity(n: usize) -> Operator {
    Operator::identity(n, n)
}

/// Eigenvalues from a complex Schur factorization.
pub fn eigenvalues(t: &Operator) -> Result<Vec<Complex64>> {
    if !t.is_square() {
        return Err(Error::Dimension { expected: t.nrows(), found: t.ncols() });
    }
    if t.nrows() == 0 {
        return Ok(Vec::new());
    }
    if t.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
        return Err(Error::Numerical("operator has non-finite entries".into()));
    }
    let schur = Schur::try_new(t.clone(), f64::EPSILON, 10_000)
        .ok_or_else(|| Error::Numerical("Schur iteration did not converge".into()))?;
    let (_, tri) = schur.unpack();
    Ok(tri.diagonal().iter().copied().collect())
}

pub fn spectral_radius(t: &Operator) -> Result<f64> {
    Ok(eigenvalues(t)?.iter().fold(0.0, |m, z| m.max(z.norm())))
}

/// One generalized eigenspace of an operator.
#[derive(Debug, Clone, PartialEq)]
pub struct Cluster {
    /// Representative eigenvalue `tr(T E) / tr(E)`.
    pub lambda: Complex64,
    /// Index: smallest `p` with `(T - lambda)^p E = 0` numerically.
    pub nu: usize,
    /// Algebraic multiplicity.
    pub multiplicity: usize,
    pub projector: Operator,
    /// `(T - lambda I) E`.
    pub nilpotent: Operator,
    /// Raw eigenvalues assigned to this cluster.
    pub eigenvalues: Vec<Complex64>,
    /// Separating circle, centered at the mean of `eigenvalues`.
    pub center: Complex64,
    pub radius: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SpectralDecomposition {
    pub dim: usize,
    pub clusters: Vec<Cluster>,
}

/// Residuals of the four defining properties of a decomposition.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SpectralResiduals {
    pub completeness: f64,
    pub orthogonality: f64,
    pub nilpotency: f64,
    pub reconstruction: f64,
}

impl SpectralResiduals {
    pub fn max(&self) -> f64 {
        self.completeness.max(self.orthogonality).max(self.nilpotency).max(self.reconstruction)
    }
}

impl SpectralDecomposition {
    pub fn max_index(&self) -> usize {
        self.clusters.iter().map(|c| c.nu).max().unwrap_or(0)
    }

    pub fn is_diagonalizable(&self) -> bool {
        self.clusters.iter().all(|c| c.nu == 1)
    }

    pub fn cluster_of(&self, lambda: Complex64) -> Option<&Cluster> {
        self.clusters.iter().min_by(|a, b| {
            (a.lambda - lambda).norm().total_cmp(&(b.lambda - lambda).norm())
        })
    }

    pub fn residuals(&self, t: &Operator) -> SpectralResiduals {
        let n = self.dim;
        let mut sum = Operator::zeros(n, n);
        let mut recon = Operator::zeros(n, n);
        let mut orth: f64 = 0.0;
        let mut nil: f64 = 0.0;
        for (i, c) in self.clusters.iter().enumerate() {
            sum += &c.projector;
            recon += &c.projector * c.lambda + &c.nilpotent;
            for (j, d) in self.clusters.iter().enumerate() {
                let prod = &c.projector * &d.projector;
                let expect = if i == j { c.projector.clone() } else { Operator::zeros(n, n) };
                orth = orth.max(max_abs(&(prod - expect)));
            }
            let mut p = c.projector.clone();
            for _ in 0..c.nu {
                p = &c.nilpotent * p;
            }
            nil = nil.max(max_abs(&p));
        }
        SpectralResiduals {
            completeness: max_abs(&(sum - identity(n))),
            orthogonality: orth,
            nilpotency: nil,
            reconstruction: max_abs(&(recon - t)),
        }
    }
}

/// Single-linkage clustering of eigenvalues at distance `eps`.
fn cluster_eigenvalues(eigs: &[Complex64], eps: f64) -> Vec<Vec<Complex64>> {
    let n = eigs.len();
    let mut label: Vec<usize> = (0..n).collect();
    fn root(label: &mut [usize], mut i: usize) -> usize {
        while label[i] != i {
            label[i] = label[label[i]];
            i = label[i];
        }
        i
    }
    for i in 0..n {
        for j in i + 1..n {
            if (eigs[i] - eigs[j]).norm() <= eps {
                let (a, b) = (root(&mut label, i), root(&mut label, j));
                label[a.max(b)] = a.min(b);
            }
        }
    }
    let mut groups: Vec<(usize, Vec<Complex64>)> = Vec::new();
    for (i, &z) in eigs.iter().enumerate() {
        let r = root(&mut label, i);
        match groups.iter_mut().find(|(k, _)| *k == r) {
            Some((_, g)) => g.push(z),
            None => groups.push((r, vec![z])),
        }
    }
    let mut out: Vec<Vec<Complex64>> = groups.into_iter().map(|(_, g)| g).collect();
    // Deterministic order: by real part, then imaginary part, of the mean.
    let mean = |g: &Vec<Complex64>| g.iter().sum::<Complex64>() / g.len() as f64;
    out.sort_by(|a, b| {
        let (ma, mb) = (mean(a), mean(b));
        ma.re.total_cmp(&mb.re).then(ma.im.total_cmp(&mb.im))
    });
    out
}

/// Inverse of `xi I - T` with a condition-number guard.
pub(crate) fn resolvent(t: &Operator, xi: Complex64) -> Result<Operator> {
    let n = t.nrows();
    let a = identity(n) * xi - t;
    let inv = a
        .clone()
        .lu()
        .try_inverse()
        .ok_or(Error::SingularResolvent { xi, cond: f64::INFINITY })?;
    let cond = norm1(&a) * norm1(&inv);
    if !cond.is_finite() || cond > 1e12 {
        return Err(Error::SingularResolvent { xi, cond });
    }
    Ok(inv)
}

fn norm1(a: &Operator) -> f64 {
    (0..a.ncols())
        .map(|j| a.column(j).iter().map(|z| z.norm()).sum::<f64>())
        .fold(0.0, f64::max)
}

/// Clustered spectrum with contour-integral projectors.
pub fn spectral_decompose(t: &Operator, tol: &Tolerances) -> Result<SpectralDecomposition> {
    let n = t.nrows();
    let eigs = eigenvalues(t)?;
    let eps = tol.tol_cluster * (1.0 + fro(t));
    let groups = cluster_eigenvalues(&eigs, eps);
    let centers: Vec<Complex64> =
        groups.iter().map(|g| g.iter().sum::<Complex64>() / g.len() as f64).collect();
    let margin = 4.0 * eps;

    let mut radii = Vec::with_capacity(groups.len());
    for (i, g) in groups.iter().enumerate() {
        let nearest = groups
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .flat_map(|(_, h)| h.iter().map(|mu| (mu - centers[i]).norm()))
            .fold(f64::INFINITY, f64::min);
        let spread = g.iter().map(|mu| (mu - centers[i]).norm()).fold(0.0, f64::max);
        // Half the gap, pulled in by the margin so neighbouring circles stay disjoint.
        let r = if nearest.is_finite() { (nearest / 2.0 - margin).max(10.0 * eps) } else { f64::INFINITY };
        if nearest.is_finite() && (spread + margin > r || r + margin > nearest) {
            return Err(Error::ClusterSeparation(format!(
                "cluster near {} (spread {spread:.2e}) is {nearest:.2e} from its neighbour",
                centers[i]
            )));
        }
        radii.push(r);
    }
    for i in 0..groups.len() {
        for j in i + 1..groups.len() {
            if radii[i] + radii[j] + margin > (centers[i] - centers[j]).norm() {
                return Err(Error::ClusterSeparation(format!(
                    "circles around {} and {} overlap",
                    centers[i], centers[j]
                )));
            }
        }
    }

    let nodes = tol.nodes.max(16);
    let mut clusters = Vec::with_capacity(groups.len());
    for (i, g) in groups.into_iter().enumerate() {
        let projector = if radii[i].is_infinite() {
            identity(n)
        } else {
            projector_integral(t, centers[i], radii[i], nodes, tol)?
        };
        let multiplicity = g.len();
        let lambda = (t * &projector).trace() / projector.trace();
        let shifted = t - identity(n) * lambda;
        let nilpotent = &shifted * &projector;
        let threshold = tol.tol_spectral * fro(&projector);
        let mut nu = multiplicity;
        let mut p = nilpotent.clone();
        for k in 1..multiplicity {
            if fro(&p) <= threshold {
                nu = k;
                break;
            }
            p = &shifted * p;
        }
        clusters.push(Cluster {
            lambda,
            nu,
            multiplicity,
            projector,
            nilpotent,
            eigenvalues: g,
            center: centers[i],
            radius: radii[i],
        });
    }
    Ok(SpectralDecomposition { dim: n, clusters })
}

/// `(1/2 pi i) \oint (xi - T)^-1 dxi` over a circle, doubling nodes until stable.
fn projector_integral(
    t: &Operator,
    center: Complex64,
    radius: f64,
    nodes: usize,
    tol: &Tolerances,
) -> Result<Operator> {
    let c = Contour { center, radius, nodes };
    let one = crate::holofun::ScalarFunction::constant(Complex64::new(1.0, 0.0));
    Ok(contour::adaptive(t, &[c], tol, &one, contour::Kernel::Resolvent)?.remove(0))
}

/// `sum_lambda sum_{k < nu} g^(k)(lambda)/k! Nil^k E`.
pub fn apply_fun_spectral(g: &dyn Holomorphic, sd: &SpectralDecomposition) -> Result<Operator> {
    let n = sd.dim;
    let mut out = Operator::zeros(n, n);
    for c in &sd.clusters {
        let jet = g.jet(c.lambda, c.nu - 1)?.to_series();
        let mut term = c.projector.clone();
        out += &term * jet.coeffs[0];
        for k in 1..c.nu {
            term = &c.nilpotent * term;
            out += &term * jet.coeffs[k];
        }
    }
    Ok(out)
}

/// Horner evaluation of `sum c_k T^k`; needs spectral radius below the series radius.
pub fn apply_fun_taylor(coeffs: &[Complex64], t: &Operator) -> Result<Operator> {
    let radius = spectral_radius(t)?;
    if radius >= SERIES_RADIUS {
        return Err(Error::Radius { radius, limit: SERIES_RADIUS });
    }
    let n = t.nrows();
    let mut out = Operator::zeros(n, n);
    for c in coeffs.iter().rev() {
        out = t * out;
        for i in 0..n {
            out[(i, i)] += c;
        }
    }
    Ok(out)
}

/// Central finite difference `(g(T + hS) - g(T - hS)) / 2h` through the spectral back-end.
pub fn frechet_fd(g: &dyn Holomorphic, t: &Operator, s: &Operator, h: f64, tol: &Tolerances) -> Result<Operator> {
    let plus = apply_fun_spectral(g, &spectral_decompose(&(t + s * Complex64::new(h, 0.0)), tol)?)?;
    let minus = apply_fun_spectral(g, &spectral_decompose(&(t - s * Complex64::new(h, 0.0)), tol)?)?;
    Ok((plus - minus) / Complex64::new(2.0 * h, 0.0))
}

pub(crate) fn czero() -> Complex64 {
    Complex64::zero()
}
