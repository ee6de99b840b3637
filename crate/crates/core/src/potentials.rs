//! Potential models mapped onto the model equation.
//!
//! Each model removes the r → 0 singularity with R = r^{−k} χ(η(r)), where k
//! is the positive root of k(k+1) − k(N−1) − λ = 0. Coulomb and Mie keep
//! y = r and decay as e^{−κr}; the oscillators use y = r² and decay as
//! e^{−κr²/2}.

use crate::error::{Error, Result};
use crate::mde::{closed_form_chi, quantization_condition, MdeParams};
use crate::quadrature::{integrate_with_breaks, Tolerance};
use crate::special::kummer_1f1;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UnitSystem {
    pub hbar: f64,
    pub mass: f64,
}

impl Default for UnitSystem {
    fn default() -> Self {
        Self { hbar: 1.0, mass: 1.0 }
    }
}

impl UnitSystem {
    pub fn new(hbar: f64, mass: f64) -> Result<Self> {
        if !(hbar > 0.0 && mass > 0.0 && hbar.is_finite() && mass.is_finite()) {
            return Err(Error::Domain(format!("hbar = {hbar} and M = {mass} must be positive")));
        }
        Ok(Self { hbar, mass })
    }

    /// 2M/ħ²
    pub fn two_m_over_hbar2(&self) -> f64 {
        2.0 * self.mass / (self.hbar * self.hbar)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PotentialSpec {
    /// V = −Z e²/r
    Coulomb { z: f64, e2: f64 },
    /// V = a/r² + b/r + c
    Mie { a: f64, b: f64, c: f64 },
    /// V = ½ M ω² r²
    Harmonic { omega: f64 },
    /// V = a1 r² + a2/r² + a3
    Pseudoharmonic { a1: f64, a2: f64, a3: f64 },
}

fn positive(name: &str, x: f64) -> Result<f64> {
    if x > 0.0 && x.is_finite() {
        Ok(x)
    } else {
        Err(Error::Domain(format!("{name} = {x} must be positive")))
    }
}

impl PotentialSpec {
    pub fn coulomb(z: f64, e2: f64) -> Result<Self> {
        Ok(Self::Coulomb { z: positive("Z", z)?, e2: positive("e2", e2)? })
    }

    pub fn mie(a: f64, b: f64, c: f64) -> Result<Self> {
        if ![a, b, c].iter().all(|x| x.is_finite()) {
            return Err(Error::Domain("Mie coefficients must be finite".into()));
        }
        Ok(Self::Mie { a, b, c })
    }

    pub fn modified_kratzer(d0: f64, r0: f64) -> Result<Self> {
        Self::mie(-d0 * r0 * r0, 2.0 * d0 * r0, -d0)
    }

    pub fn kratzer_fues(d0: f64, r0: f64) -> Result<Self> {
        Self::mie(d0 * r0 * r0, -2.0 * d0 * r0, 0.0)
    }

    pub fn harmonic(omega: f64) -> Result<Self> {
        Ok(Self::Harmonic { omega: positive("omega", omega)? })
    }

    pub fn pseudoharmonic(a1: f64, a2: f64, a3: f64) -> Result<Self> {
        if !(a2 >= 0.0) || !a3.is_finite() {
            return Err(Error::Domain(format!("pseudoharmonic needs a2 >= 0 and finite a3, got a2 = {a2}, a3 = {a3}")));
        }
        Ok(Self::Pseudoharmonic { a1: positive("a1", a1)?, a2, a3 })
    }

    /// From the dissociation energy De and equilibrium distance re.
    pub fn pseudoharmonic_from(de: f64, re: f64) -> Result<Self> {
        Self::pseudoharmonic(de / (re * re), de * re * re, -2.0 * de)
    }

    pub fn value(&self, r: f64, units: &UnitSystem) -> f64 {
        match *self {
            Self::Coulomb { z, e2 } => -z * e2 / r,
            Self::Mie { a, b, c } => a / (r * r) + b / r + c,
            Self::Harmonic { omega } => 0.5 * units.mass * omega * omega * r * r,
            Self::Pseudoharmonic { a1, a2, a3 } => a1 * r * r + a2 / (r * r) + a3,
        }
    }

    /// Continuum threshold; infinite for the confining oscillators.
    pub fn threshold(&self) -> f64 {
        match *self {
            Self::Coulomb { .. } => 0.0,
            Self::Mie { c, .. } => c,
            Self::Harmonic { .. } | Self::Pseudoharmonic { .. } => f64::INFINITY,
        }
    }

    fn uses_square_variable(&self) -> bool {
        matches!(self, Self::Harmonic { .. } | Self::Pseudoharmonic { .. })
    }

    /// ℓ(ℓ+N−2), shifted by the inverse-square coefficient where there is one.
    fn lambda(&self, l: u32, dim: u32, units: &UnitSystem) -> f64 {
        let centrifugal = (l * (l + dim - 2)) as f64;
        match *self {
            Self::Mie { a, .. } => centrifugal + units.two_m_over_hbar2() * a,
            Self::Pseudoharmonic { a2, .. } => centrifugal + units.two_m_over_hbar2() * a2,
            _ => centrifugal,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QuantumNumbers {
    pub n: u32,
    pub l: u32,
    pub dim: u32,
}

impl QuantumNumbers {
    pub fn new(n: u32, l: u32, dim: u32) -> Result<Self> {
        check_dim(dim)?;
        Ok(Self { n, l, dim })
    }
}

fn check_dim(dim: u32) -> Result<()> {
    if dim < 2 {
        return Err(Error::Domain(format!("dimension N = {dim}; N >= 2 is required")));
    }
    Ok(())
}

pub fn singularity_exponent(pot: &PotentialSpec, l: u32, dim: u32, units: &UnitSystem) -> Result<f64> {
    check_dim(dim)?;
    if matches!(pot, PotentialSpec::Coulomb { .. } | PotentialSpec::Harmonic { .. }) {
        return Ok((l + dim - 2) as f64);
    }
    let nm2 = dim as f64 - 2.0;
    let disc = nm2 * nm2 + 4.0 * pot.lambda(l, dim, units);
    if disc < 0.0 {
        return Err(Error::ComplexRoot(disc));
    }
    Ok((nm2 + disc.sqrt()) / 2.0)
}

/// How the model variable y relates to r.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VariableMap {
    /// y = r
    Identity,
    /// y = r²
    Square,
}

impl VariableMap {
    pub fn apply(&self, r: f64) -> f64 {
        match self {
            Self::Identity => r,
            Self::Square => r * r,
        }
    }
}

fn root(name: &str, x: f64) -> Result<f64> {
    if x > 0.0 {
        Ok(x.sqrt())
    } else {
        Err(Error::Domain(format!("{name} = {x} must be positive for a bound state")))
    }
}

pub fn mde_map(pot: &PotentialSpec, l: u32, dim: u32, units: &UnitSystem, energy: f64) -> Result<(MdeParams, VariableMap)> {
    let k = singularity_exponent(pot, l, dim, units)?;
    let s = units.two_m_over_hbar2();
    let nf = dim as f64;
    let params = match *pot {
        PotentialSpec::Coulomb { z, e2 } => {
            let beta = root("beta^2 = -2ME/hbar^2", -s * energy)?;
            MdeParams::new(-(2.0 * l as f64 + nf - 3.0), beta, s * z * e2)?
        }
        PotentialSpec::Mie { b, c, .. } => {
            let eps = root("eps^2 = -2M(E - c)/hbar^2", -s * (energy - c))?;
            MdeParams::new(-(2.0 * k - nf + 1.0), eps, -s * b)?
        }
        PotentialSpec::Harmonic { omega } => {
            let alpha0 = units.mass * omega / units.hbar;
            let beta0_sq = s * energy;
            if !(beta0_sq > 0.0) {
                return Err(Error::Domain(format!("oscillator energy {energy} must be positive")));
            }
            MdeParams::new(nf / 2.0 - k, alpha0 / 2.0, beta0_sq / 4.0)?
        }
        PotentialSpec::Pseudoharmonic { a1, a3, .. } => {
            let mu = (s * a1).sqrt();
            let eps0_sq = s * (energy - a3);
            if !(eps0_sq > 0.0) {
                return Err(Error::Domain(format!("energy {energy} must exceed a3 = {a3}")));
            }
            MdeParams::new(-(k - nf / 2.0), mu / 2.0, eps0_sq / 4.0)?
        }
    };
    let map = if pot.uses_square_variable() { VariableMap::Square } else { VariableMap::Identity };
    Ok((params, map))
}

pub fn energy(pot: &PotentialSpec, qn: &QuantumNumbers, units: &UnitSystem) -> Result<f64> {
    check_dim(qn.dim)?;
    let (n, l, nf) = (qn.n as f64, qn.l as f64, qn.dim as f64);
    let (hbar, m) = (units.hbar, units.mass);
    match *pot {
        PotentialSpec::Coulomb { z, e2 } => {
            if !(z > 0.0 && e2 > 0.0) {
                return Err(Error::NoBoundState(format!("Coulomb with Z e2 = {} is not attractive", z * e2)));
            }
            let d = n + l + (nf - 1.0) / 2.0;
            Ok(-m * z * z * e2 * e2 / (2.0 * hbar * hbar * d * d))
        }
        PotentialSpec::Mie { b, c, .. } => {
            if !(b < 0.0) {
                return Err(Error::NoBoundState(format!("Mie with b = {b} >= 0 has no decaying solution")));
            }
            let k = singularity_exponent(pot, qn.l, qn.dim, units)?;
            let d = n + k + (3.0 - nf) / 2.0;
            if !(d > 0.0) {
                return Err(Error::NoBoundState(format!("n + k + (3 - N)/2 = {d} is not positive")));
            }
            Ok(c - m / (2.0 * hbar * hbar) * (b / d).powi(2))
        }
        PotentialSpec::Harmonic { omega } => Ok(hbar * omega * (2.0 * n + l + nf / 2.0)),
        PotentialSpec::Pseudoharmonic { a1, a2, a3 } => {
            let inner = (nf + 2.0 * l - 2.0).powi(2) + 8.0 * m * a2 / (hbar * hbar);
            Ok(a3 + (8.0 * hbar * hbar * a1 / m).sqrt() * (n + 0.5 + 0.25 * inner.sqrt()))
        }
    }
}

/// The energy at which the mapped parameters satisfy p = −n, found by
/// bisection instead of from the closed formula.
pub fn quantized_energy(pot: &PotentialSpec, qn: &QuantumNumbers, units: &UnitSystem) -> Result<f64> {
    let (anchor, sign) = match *pot {
        PotentialSpec::Coulomb { .. } | PotentialSpec::Mie { .. } => (pot.threshold(), -1.0),
        PotentialSpec::Harmonic { .. } => (0.0, 1.0),
        PotentialSpec::Pseudoharmonic { a3, .. } => (a3, 1.0),
    };
    let f = |e: f64| -> Result<f64> {
        let (params, _) = mde_map(pot, qn.l, qn.dim, units, e)?;
        Ok(quantization_condition(&params, qn.n))
    };
    let scale = anchor.abs().max(1.0);
    let at = |j: i32| anchor + sign * scale * 1e-12 * 2f64.powi(j);
    let f0 = f(at(0))?;
    let mut j = 1;
    while f(at(j))?.signum() == f0.signum() {
        j += 1;
        if j > 160 {
            return Err(Error::NoBoundState(format!("no sign change of p + {} below the threshold", qn.n)));
        }
    }
    let (mut lo, mut hi) = (at(j - 1), at(j));
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid == lo || mid == hi {
            break;
        }
        if f(mid)?.signum() == f0.signum() {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DecayKind {
    /// e^{−κr}
    Exponential,
    /// e^{−κr²/2}
    Gaussian,
}

/// R(r) = C r^q D(r) ₁F₁(−n; b; s η(r)) with η = r or r² following the decay kind.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClosedFormRadial {
    pub qn: QuantumNumbers,
    pub energy: f64,
    pub power_exponent: f64,
    pub decay_kind: DecayKind,
    pub decay: f64,
    pub f11_a: f64,
    pub f11_b: f64,
    pub f11_scale: f64,
    pub normalization: Option<f64>,
}

impl ClosedFormRadial {
    fn eta(&self, r: f64) -> (f64, f64, f64) {
        match self.decay_kind {
            DecayKind::Exponential => (r, 1.0, 0.0),
            DecayKind::Gaussian => (r * r, 2.0 * r, 2.0),
        }
    }

    fn constant(&self) -> f64 {
        self.normalization.unwrap_or(1.0)
    }

    pub fn eval(&self, r: f64) -> f64 {
        let (eta, _, _) = self.eta(r);
        let decay = match self.decay_kind {
            DecayKind::Exponential => (-self.decay * r).exp(),
            DecayKind::Gaussian => (-0.5 * self.decay * r * r).exp(),
        };
        let f = kummer_1f1(self.f11_a, self.f11_b, self.f11_scale * eta).unwrap_or(f64::NAN);
        self.constant() * r.powf(self.power_exponent) * decay * f
    }

    /// (R, R′, R″) at r > 0 from the exact derivatives of each factor.
    pub fn derivatives(&self, r: f64) -> (f64, f64, f64) {
        let q = self.power_exponent;
        let p = (r.powf(q), q * r.powf(q - 1.0), q * (q - 1.0) * r.powf(q - 2.0));
        let k = self.decay;
        let d = match self.decay_kind {
            DecayKind::Exponential => {
                let v = (-k * r).exp();
                (v, -k * v, k * k * v)
            }
            DecayKind::Gaussian => {
                let v = (-0.5 * k * r * r).exp();
                (v, -k * r * v, (k * k * r * r - k) * v)
            }
        };
        let (eta, d_eta, d2_eta) = self.eta(r);
        let (a, b, s) = (self.f11_a, self.f11_b, self.f11_scale);
        let x = s * eta;
        let f0 = kummer_1f1(a, b, x).unwrap_or(f64::NAN);
        let f1 = a / b * kummer_1f1(a + 1.0, b + 1.0, x).unwrap_or(f64::NAN);
        let f2 = a * (a + 1.0) / (b * (b + 1.0)) * kummer_1f1(a + 2.0, b + 2.0, x).unwrap_or(f64::NAN);
        let f = (f0, s * d_eta * f1, s * d2_eta * f1 + s * s * d_eta * d_eta * f2);
        let c = self.constant();
        let v = p.0 * d.0 * f.0;
        let v1 = p.1 * d.0 * f.0 + p.0 * d.1 * f.0 + p.0 * d.0 * f.1;
        let v2 = p.2 * d.0 * f.0
            + p.0 * d.2 * f.0
            + p.0 * d.0 * f.2
            + 2.0 * (p.1 * d.1 * f.0 + p.1 * d.0 * f.1 + p.0 * d.1 * f.1);
        (c * v, c * v1, c * v2)
    }

    pub fn with_normalization(self, c: f64) -> Self {
        Self { normalization: Some(c), ..self }
    }

    /// This function rescaled to unit weighted norm.
    pub fn normalized(self) -> Result<Self> {
        let c = normalize(&self, self.qn.dim)?;
        Ok(self.with_normalization(self.constant() * c))
    }

    /// Radius beyond which R² r^{N−1} stays below 1e-14 of its peak.
    pub fn cutoff(&self, dim: u32) -> f64 {
        let n = -self.f11_a;
        let half = (dim as f64 - 1.0) / 2.0;
        let far = match self.decay_kind {
            DecayKind::Exponential => {
                let d = (self.power_exponent + n + half).max(0.0);
                (2.0 * d + 60.0) / self.decay
            }
            DecayKind::Gaussian => {
                let d = (self.power_exponent + 2.0 * n + half).max(0.0);
                ((2.0 * d + 100.0) / self.decay).sqrt()
            }
        };
        let samples = 4000;
        let w = |r: f64| {
            let v = self.eval(r);
            v * v * r.powi(dim as i32 - 1)
        };
        let values: Vec<(f64, f64)> = (1..=samples).map(|i| far * i as f64 / samples as f64).map(|r| (r, w(r))).collect();
        let peak = values.iter().map(|v| v.1).fold(0.0, f64::max);
        let last = values.iter().rposition(|v| v.1 >= 1e-14 * peak).unwrap_or(samples - 1);
        values.get(last + 1).map_or(far, |v| v.0)
    }

    /// Sign changes of R on a fine grid over (0, cutoff).
    pub fn node_count(&self) -> usize {
        let cut = self.cutoff(self.qn.dim);
        let samples = 20_000;
        let mut prev = 0.0f64;
        let mut count = 0;
        for i in 1..=samples {
            let v = self.eval(cut * i as f64 / samples as f64);
            if v != 0.0 {
                if prev != 0.0 && v.signum() != prev.signum() {
                    count += 1;
                }
                prev = v;
            }
        }
        count
    }
}

pub fn radial_wavefunction(pot: &PotentialSpec, qn: &QuantumNumbers, units: &UnitSystem) -> Result<ClosedFormRadial> {
    let e = energy(pot, qn, units)?;
    let (params, map) = mde_map(pot, qn.l, qn.dim, units, e)?;
    let chi = closed_form_chi(&params, qn.n)?;
    let k = singularity_exponent(pot, qn.l, qn.dim, units)?;
    let (power_exponent, decay_kind, decay) = match map {
        VariableMap::Identity => (chi.power_exponent - k, DecayKind::Exponential, chi.decay),
        VariableMap::Square => (2.0 * chi.power_exponent - k, DecayKind::Gaussian, 2.0 * chi.decay),
    };
    Ok(ClosedFormRadial {
        qn: *qn,
        energy: e,
        power_exponent,
        decay_kind,
        decay,
        f11_a: chi.f11_a,
        f11_b: chi.f11_b,
        f11_scale: chi.f11_scale,
        normalization: None,
    })
}

/// ∫₀^{cut} f(r) dr, split into panels so that interior nodes are resolved.
pub(crate) fn radial_integral(f: impl Fn(f64) -> f64, cut: f64) -> Result<f64> {
    let breaks: Vec<f64> = (1..32).map(|i| cut * i as f64 / 32.0).collect();
    let tol = Tolerance { abs: 0.0, rel: 1e-13, max_intervals: 2000 };
    integrate_with_breaks(f, 0.0, cut, &breaks, tol)
}

/// C with ∫₀^∞ (C R)² r^{N−1} dr = 1.
pub fn normalize(radial: &ClosedFormRadial, dim: u32) -> Result<f64> {
    if !(radial.decay > 0.0) {
        return Err(Error::Divergent(format!("decay parameter {} is not positive", radial.decay)));
    }
    let cut = radial.cutoff(dim);
    let norm = radial_integral(
        |r| {
            let v = radial.eval(r);
            v * v * r.powi(dim as i32 - 1)
        },
        cut,
    )
    .map_err(|e| Error::Divergent(e.to_string()))?;
    if !(norm > 0.0 && norm.is_finite()) {
        return Err(Error::Divergent(format!("weighted norm {norm}")));
    }
    Ok(1.0 / norm.sqrt())
}
