//! Finite-difference eigensolver for the radial equation, independent of the
//! transform machinery, plus residual and overlap checks for closed forms.
//!
//! The radial operator −(ħ²/2M) r^{1−N} d/dr(r^{N−1} dR/dr) + V_eff R is
//! discretised on cell centres rᵢ = r_min + (i + ½)h with face weights
//! r^{N−1} and zero flux through the inner face. Symmetrising with
//! vᵢ = rᵢ^{(N−1)/2} Rᵢ = u(rᵢ) gives a symmetric tridiagonal matrix.
//! Eigenvalues from the grid and its bisection (h/2) are combined by
//! Richardson extrapolation.

pub mod tridiag;

use crate::error::{Error, Result};
use crate::potentials::{radial_integral, singularity_exponent, ClosedFormRadial, PotentialSpec, QuantumNumbers, UnitSystem};

/// Inner grid edge used by [`default_grid`].
pub const DEFAULT_R_MIN: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RadialGrid {
    pub r_min: f64,
    pub r_max: f64,
    pub points: usize,
}

impl RadialGrid {
    pub fn new(r_min: f64, r_max: f64, points: usize) -> Result<Self> {
        if !(r_min > 0.0 && r_min < r_max && r_max.is_finite()) {
            return Err(Error::InvalidGrid(format!("need 0 < r_min < r_max, got [{r_min}, {r_max}]")));
        }
        if points < 500 {
            return Err(Error::InvalidGrid(format!("{points} points; at least 500 are required")));
        }
        Ok(Self { r_min, r_max, points })
    }

    pub fn h(&self) -> f64 {
        (self.r_max - self.r_min) / (self.points - 1) as f64
    }

    /// Same interval at half the spacing.
    pub fn refined(&self) -> Self {
        Self { points: 2 * self.points - 1, ..*self }
    }

    /// Cell centres, one per interval.
    pub fn centres(&self) -> Vec<f64> {
        let h = self.h();
        (0..self.points - 1).map(|i| self.r_min + (i as f64 + 0.5) * h).collect()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct EigenResult {
    /// Richardson-extrapolated eigenvalues
    pub eigenvalues: Vec<f64>,
    /// eigenvalues on the requested grid
    pub coarse: Vec<f64>,
    /// eigenvalues on the refined grid
    pub fine: Vec<f64>,
    /// |fine − coarse| per eigenvalue
    pub convergence_estimate: Vec<f64>,
    /// sample points of the eigenvectors (cell centres of the requested grid)
    pub radii: Vec<f64>,
    /// u(r) = r^{(N−1)/2} R(r), with Σ u² h = 1 and the first lobe positive
    pub eigenvectors: Vec<Vec<f64>>,
}

fn assemble(pot: &PotentialSpec, l: u32, dim: u32, units: &UnitSystem, grid: &RadialGrid) -> (Vec<f64>, Vec<f64>) {
    let h = grid.h();
    let kin = units.hbar * units.hbar / (2.0 * units.mass);
    let centres = grid.centres();
    let m = centres.len();
    let p = dim as i32 - 1;
    let face = |j: usize| if j == 0 { 0.0 } else { (grid.r_min + j as f64 * h).powi(p) };
    let w: Vec<f64> = centres.iter().map(|r| r.powi(p)).collect();
    let sep = (l * (l + dim - 2)) as f64;
    let diag = (0..m)
        .map(|i| {
            let r = centres[i];
            kin * (face(i) + face(i + 1)) / (w[i] * h * h) + kin * sep / (r * r) + pot.value(r, units)
        })
        .collect();
    let off = (0..m - 1).map(|i| -kin * face(i + 1) / (h * h * (w[i] * w[i + 1]).sqrt())).collect();
    (diag, off)
}

fn lowest(diag: &[f64], off: &[f64], count: usize, ceiling: f64) -> Vec<f64> {
    let (lo, hi) = tridiag::gershgorin(diag, off);
    let hi = hi.min(ceiling);
    (0..count).map(|k| tridiag::bisect(diag, off, k, lo, hi)).collect()
}

fn check_supply(diag: &[f64], off: &[f64], count: usize, threshold: f64) -> Result<()> {
    let found = if threshold.is_finite() { tridiag::sturm_count(diag, off, threshold) } else { diag.len() };
    if found < count {
        return Err(Error::InsufficientBoundStates { requested: count, found, threshold });
    }
    Ok(())
}

/// The lowest `count` eigenvalues on a single grid, without extrapolation.
pub fn fd_levels(pot: &PotentialSpec, l: u32, dim: u32, units: &UnitSystem, grid: &RadialGrid, count: usize) -> Result<Vec<f64>> {
    QuantumNumbers::new(0, l, dim)?;
    let (d, e) = assemble(pot, l, dim, units, grid);
    check_supply(&d, &e, count, pot.threshold())?;
    Ok(lowest(&d, &e, count, pot.threshold()))
}

pub fn eigensolve_radial(
    pot: &PotentialSpec,
    l: u32,
    dim: u32,
    units: &UnitSystem,
    grid: &RadialGrid,
    count: usize,
) -> Result<EigenResult> {
    QuantumNumbers::new(0, l, dim)?;
    let threshold = pot.threshold();
    let (dc, ec) = assemble(pot, l, dim, units, grid);
    let (df, ef) = assemble(pot, l, dim, units, &grid.refined());
    check_supply(&dc, &ec, count, threshold)?;
    check_supply(&df, &ef, count, threshold)?;
    let coarse = lowest(&dc, &ec, count, threshold);
    let fine = lowest(&df, &ef, count, threshold);
    let eigenvalues: Vec<f64> = coarse.iter().zip(&fine).map(|(c, f)| (4.0 * f - c) / 3.0).collect();
    if eigenvalues.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::NonFinite(format!("eigenvalues not strictly increasing: {eigenvalues:?}")));
    }
    let convergence_estimate = coarse.iter().zip(&fine).map(|(c, f)| (f - c).abs()).collect();
    let scale = grid.h().sqrt();
    let eigenvectors = coarse
        .iter()
        .map(|&lambda| {
            let v = tridiag::inverse_iteration(&dc, &ec, lambda);
            let peak = v.iter().fold(0.0f64, |m, x| m.max(x.abs()));
            let lead = v.iter().find(|x| x.abs() > 1e-3 * peak).copied().unwrap_or(1.0);
            let s = lead.signum() / scale;
            v.into_iter().map(|x| x * s).collect()
        })
        .collect();
    Ok(EigenResult { eigenvalues, coarse, fine, convergence_estimate, radii: grid.centres(), eigenvectors })
}

/// A grid sized for the lowest `count` levels of one (ℓ, N) channel: the box
/// holds the slowest-decaying requested state and the spacing resolves the
/// ground state.
pub fn default_grid(pot: &PotentialSpec, l: u32, dim: u32, units: &UnitSystem, count: usize) -> Result<RadialGrid> {
    QuantumNumbers::new(0, l, dim)?;
    let top = count.max(1) as f64 - 1.0;
    let half = (dim as f64 - 1.0) / 2.0;
    let s = units.two_m_over_hbar2();
    let k = singularity_exponent(pot, l, dim, units)?;
    let (r_max, h) = match *pot {
        PotentialSpec::Coulomb { .. } | PotentialSpec::Mie { .. } => {
            // κ = Z_eff/ν with ν = n + k + (3 − N)/2
            let z_eff = match *pot {
                PotentialSpec::Coulomb { z, e2 } => 0.5 * s * z * e2,
                PotentialSpec::Mie { b, .. } => -0.5 * s * b,
                _ => unreachable!(),
            };
            if !(z_eff > 0.0) {
                return Err(Error::NoBoundState(format!("effective charge {z_eff} is not attractive")));
            }
            let nu0 = k + (3.0 - dim as f64) / 2.0;
            let kappa_min = z_eff / (nu0 + top);
            let kappa0 = z_eff / nu0;
            let d = k - dim as f64 + 2.0 + top + half;
            ((2.0 * d + 70.0) / (2.0 * kappa_min), 0.002 / kappa0)
        }
        PotentialSpec::Harmonic { omega } => {
            let kappa = units.mass * omega / units.hbar;
            let d = l as f64 + 2.0 * top + half;
            (((2.0 * d + 80.0) / kappa).sqrt(), 0.004 / kappa.sqrt())
        }
        PotentialSpec::Pseudoharmonic { a1, .. } => {
            let kappa = (s * a1).sqrt();
            let d = (k - dim as f64 + 2.0).max(0.0) + 2.0 * top + half;
            (((2.0 * d + 80.0) / kappa).sqrt(), 0.004 / kappa.sqrt())
        }
    };
    let points = ((r_max / h).ceil() as usize + 1).clamp(2000, 200_000);
    RadialGrid::new(DEFAULT_R_MIN, r_max, points)
}

/// |R″ + ((N−1)/r) R′ − [ℓ(ℓ+N−2)/r² + 2M(V − E)/ħ²] R| at r, with the
/// energy carried by R.
pub fn ode_residual_radial(radial: &ClosedFormRadial, pot: &PotentialSpec, qn: &QuantumNumbers, units: &UnitSystem, r: f64) -> f64 {
    let (v, d1, d2) = radial.derivatives(r);
    let nf = qn.dim as f64;
    let sep = (qn.l * (qn.l + qn.dim - 2)) as f64;
    let coupling = sep / (r * r) + units.two_m_over_hbar2() * (pot.value(r, units) - radial.energy);
    (d2 + (nf - 1.0) / r * d1 - coupling * v).abs()
}

/// ∫₀^∞ Ra Rb r^{N−1} dr.
pub fn overlap(ra: &ClosedFormRadial, rb: &ClosedFormRadial, dim: u32) -> Result<f64> {
    for r in [ra, rb] {
        if !(r.decay > 0.0) {
            return Err(Error::Divergent(format!("decay parameter {} is not positive", r.decay)));
        }
    }
    let cut = ra.cutoff(dim).max(rb.cutoff(dim));
    radial_integral(|r| ra.eval(r) * rb.eval(r) * r.powi(dim as i32 - 1), cut)
}

/// Discrete L² distance between two sampled functions after normalising both
/// with Σ f² h = 1, minimised over the relative sign.
pub fn l2_distance_up_to_sign(a: &[f64], b: &[f64], h: f64) -> f64 {
    let norm = |v: &[f64]| (v.iter().map(|x| x * x).sum::<f64>() * h).sqrt();
    let (na, nb) = (norm(a), norm(b));
    let dist = |sign: f64| {
        (a.iter().zip(b).map(|(x, y)| (x / na - sign * y / nb).powi(2)).sum::<f64>() * h).sqrt()
    };
    dist(1.0).min(dist(-1.0))
}
