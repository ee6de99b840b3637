use std::ops::RangeInclusive;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use elzaki_qm::oracle::RadialGrid;
use elzaki_qm::potentials::{PotentialSpec, UnitSystem};

use crate::Usage;

#[derive(Parser, Debug)]
#[command(name = "elzaki-qm", version, about = "Closed-form bound states of the N-dimensional radial Schrödinger equation")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Bound-state energies over ranges of quantum numbers
    Spectrum(SpectrumArgs),
    /// Sampled, normalised radial wavefunction
    Wavefunction(WavefunctionArgs),
    /// Symbolic transform of an expression in t
    Transform(TransformArgs),
    /// Run the invariant suites and report pass/fail per check
    Verify(VerifyArgs),
    /// Worked problems solved in transform space
    Appendix(AppendixArgs),
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Args, Debug)]
pub struct OutputArgs {
    #[arg(long, value_enum, env = "ELZAKI_QM_DEFAULT_FORMAT", default_value = "json")]
    pub format: Format,
    /// Write to a file instead of stdout
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum PotentialKind {
    Coulomb,
    Mie,
    KratzerFues,
    ModifiedKratzer,
    Harmonic,
    Pseudoharmonic,
}

#[derive(Args, Debug)]
pub struct PotentialArgs {
    #[arg(long, value_enum)]
    pub potential: PotentialKind,
    #[arg(long = "Z")]
    pub z: Option<f64>,
    #[arg(long, default_value_t = 1.0)]
    pub e2: f64,
    #[arg(long, allow_hyphen_values = true)]
    pub a: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub b: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub c: Option<f64>,
    #[arg(long = "D0")]
    pub d0: Option<f64>,
    #[arg(long)]
    pub r0: Option<f64>,
    #[arg(long)]
    pub omega: Option<f64>,
    #[arg(long)]
    pub a1: Option<f64>,
    #[arg(long)]
    pub a2: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub a3: Option<f64>,
    #[arg(long = "De")]
    pub de: Option<f64>,
    #[arg(long = "re")]
    pub re: Option<f64>,
    /// Unit overrides, e.g. hbar=1,M=1
    #[arg(long, default_value = "hbar=1,M=1")]
    pub units: String,
}

fn need(value: Option<f64>, flag: &str, kind: &str) -> Result<f64, Usage> {
    value.ok_or_else(|| Usage(format!("--potential {kind} requires {flag}")))
}

impl PotentialArgs {
    pub fn spec(&self) -> Result<PotentialSpec, Usage> {
        use PotentialKind::*;
        let spec = match self.potential {
            Coulomb => PotentialSpec::coulomb(need(self.z, "--Z", "coulomb")?, self.e2),
            Mie => PotentialSpec::mie(
                need(self.a, "--a", "mie")?,
                need(self.b, "--b", "mie")?,
                need(self.c, "--c", "mie")?,
            ),
            KratzerFues => PotentialSpec::kratzer_fues(
                need(self.d0, "--D0", "kratzer-fues")?,
                need(self.r0, "--r0", "kratzer-fues")?,
            ),
            ModifiedKratzer => PotentialSpec::modified_kratzer(
                need(self.d0, "--D0", "modified-kratzer")?,
                need(self.r0, "--r0", "modified-kratzer")?,
            ),
            Harmonic => PotentialSpec::harmonic(need(self.omega, "--omega", "harmonic")?),
            Pseudoharmonic => match (self.de, self.re) {
                (Some(de), Some(re)) => PotentialSpec::pseudoharmonic_from(de, re),
                _ => PotentialSpec::pseudoharmonic(
                    need(self.a1, "--a1 (or --De and --re)", "pseudoharmonic")?,
                    self.a2.unwrap_or(0.0),
                    self.a3.unwrap_or(0.0),
                ),
            },
        };
        spec.map_err(|e| Usage(e.to_string()))
    }

    pub fn unit_system(&self) -> Result<UnitSystem, Usage> {
        parse_units(&self.units)
    }
}

/// Family name and coefficients as they enter V(r).
pub fn describe(kind: PotentialKind, spec: &PotentialSpec) -> serde_json::Value {
    use serde_json::json;
    let name = kind.to_possible_value().map(|v| v.get_name().to_string()).unwrap_or_default();
    match *spec {
        PotentialSpec::Coulomb { z, e2 } => json!({ "family": name, "Z": z, "e2": e2 }),
        PotentialSpec::Mie { a, b, c } => json!({ "family": name, "a": a, "b": b, "c": c }),
        PotentialSpec::Harmonic { omega } => json!({ "family": name, "omega": omega }),
        PotentialSpec::Pseudoharmonic { a1, a2, a3 } => json!({ "family": name, "a1": a1, "a2": a2, "a3": a3 }),
    }
}

pub fn describe_units(units: &UnitSystem) -> serde_json::Value {
    serde_json::json!({ "hbar": units.hbar, "M": units.mass })
}

pub fn parse_units(text: &str) -> Result<UnitSystem, Usage> {
    let mut units = UnitSystem::default();
    for part in text.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let (key, value) = part
            .split_once('=')
            .ok_or_else(|| Usage(format!("unit override '{part}' is not key=value")))?;
        let value: f64 = value.trim().parse().map_err(|_| Usage(format!("bad number in '{part}'")))?;
        match key.trim() {
            "hbar" => units.hbar = value,
            "M" | "m" | "mass" => units.mass = value,
            other => return Err(Usage(format!("unknown unit '{other}'; expected hbar or M"))),
        }
    }
    UnitSystem::new(units.hbar, units.mass).map_err(|e| Usage(e.to_string()))
}

/// `k` or `lo..hi`, inclusive.
pub fn parse_range(text: &str) -> Result<RangeInclusive<u32>, String> {
    let num = |s: &str| s.trim().parse::<u32>().map_err(|_| format!("'{s}' is not a non-negative integer"));
    let range = match text.split_once("..") {
        Some((lo, hi)) => num(lo)?..=num(hi.trim_start_matches('='))?,
        None => {
            let k = num(text)?;
            k..=k
        }
    };
    if range.is_empty() {
        return Err(format!("empty range '{text}'"));
    }
    Ok(range)
}

pub fn parse_grid(text: &str) -> Result<RadialGrid, String> {
    let parts: Vec<&str> = text.split(',').map(str::trim).collect();
    if parts.len() != 3 {
        return Err("expected rmin,rmax,points".into());
    }
    let r_min: f64 = parts[0].parse().map_err(|_| format!("bad rmin '{}'", parts[0]))?;
    let r_max: f64 = parts[1].parse().map_err(|_| format!("bad rmax '{}'", parts[1]))?;
    let points: usize = parts[2].parse().map_err(|_| format!("bad point count '{}'", parts[2]))?;
    RadialGrid::new(r_min, r_max, points).map_err(|e| e.to_string())
}

#[derive(Args, Debug)]
pub struct SpectrumArgs {
    #[command(flatten)]
    pub potential: PotentialArgs,
    /// Dimension N (single or lo..hi)
    #[arg(long = "N", default_value = "3", value_parser = parse_range)]
    pub dim: RangeInclusive<u32>,
    /// Orbital number (single or lo..hi)
    #[arg(long, default_value = "0", value_parser = parse_range)]
    pub l: RangeInclusive<u32>,
    /// Radial number (single or lo..hi)
    #[arg(long, default_value = "0", value_parser = parse_range)]
    pub n: RangeInclusive<u32>,
    /// Add eigensolver energies and differences
    #[arg(long)]
    pub verify: bool,
    /// Largest accepted |E_numeric - E_closed| under --verify
    #[arg(long, default_value_t = 1e-6)]
    pub tolerance: f64,
    /// Eigensolver grid rmin,rmax,points (default: sized per channel)
    #[arg(long, value_parser = parse_grid)]
    pub grid: Option<RadialGrid>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Args, Debug)]
pub struct WavefunctionArgs {
    #[command(flatten)]
    pub potential: PotentialArgs,
    #[arg(long = "N", default_value_t = 3)]
    pub dim: u32,
    #[arg(long, default_value_t = 0)]
    pub l: u32,
    #[arg(long, default_value_t = 0)]
    pub n: u32,
    /// Sample grid rmin,rmax,points (default: 1e-4 to where |R| < 1e-10, 1000 points)
    #[arg(long, value_parser = parse_grid)]
    pub grid: Option<RadialGrid>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Args, Debug)]
pub struct TransformArgs {
    /// Expression in t, e.g. "t^2*exp(-t)" or "cos(3t) + H(t-1)"
    pub expression: String,
    /// Evaluate the image and the defining integral at these u values
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub at: Option<Vec<f64>>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Suite {
    Transforms,
    Mde,
    Spectrum,
    Nodes,
    Orthogonality,
    Residuals,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    /// Restrict to these suites (comma-separated)
    #[arg(long, value_enum, value_delimiter = ',')]
    pub suite: Vec<Suite>,
    /// Restrict the physics suites to one potential family
    #[arg(long, value_enum)]
    pub potential: Option<PotentialKind>,
    /// Tolerance for the spectrum agreement checks
    #[arg(long, default_value_t = 1e-6)]
    pub tolerance: f64,
    /// Eigensolver grid override rmin,rmax,points
    #[arg(long, value_parser = parse_grid)]
    pub grid: Option<RadialGrid>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Args, Debug)]
pub struct AppendixArgs {
    #[command(subcommand)]
    pub which: Appendix,
}

#[derive(Subcommand, Debug)]
pub enum Appendix {
    /// x y'' + y' + a² x y = 0 with y(0) = 1
    Bessel {
        #[arg(long, default_value_t = 1.0)]
        a: f64,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// y'' + ω² y = 0 with y(0) = y0, y'(0) = yp0
    Shm {
        #[arg(long, default_value_t = 1.0)]
        omega: f64,
        #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
        y0: f64,
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        yp0: f64,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Infinite square well levels from the oscillator solution with ψ(0) = ψ(width) = 0
    Well {
        #[arg(long, default_value_t = 1.0)]
        width: f64,
        #[arg(long, default_value_t = 5)]
        count: u32,
        #[arg(long, default_value = "hbar=1,M=1")]
        units: String,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// E[e^{-at} f(t)] from E[f]
    Shift {
        #[arg(long, allow_hyphen_values = true)]
        a: f64,
        #[arg(long)]
        f: String,
        #[arg(long, value_delimiter = ',', default_value = "0.1,0.2,0.3")]
        at: Vec<f64>,
        #[command(flatten)]
        output: OutputArgs,
    },
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranges() {
        assert_eq!(parse_range("3").unwrap(), 3..=3);
        assert_eq!(parse_range("0..3").unwrap(), 0..=3);
        assert_eq!(parse_range("1..=2").unwrap(), 1..=2);
        assert!(parse_range("3..1").is_err());
        assert!(parse_range("-1").is_err());
    }

    #[test]
    fn units() {
        let u = parse_units("hbar=2, M=0.5").unwrap();
        assert_eq!((u.hbar, u.mass), (2.0, 0.5));
        assert!(parse_units("hbar=0").is_err());
        assert!(parse_units("c=1").is_err());
    }

    #[test]
    fn grids() {
        let g = parse_grid("1e-4,80,12000").unwrap();
        assert_eq!((g.r_min, g.r_max, g.points), (1e-4, 80.0, 12000));
        assert!(parse_grid("0,1,1000").is_err());
    }

    #[test]
    fn cli_is_well_formed() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }
}
