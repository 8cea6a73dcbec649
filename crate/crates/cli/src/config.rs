//! Versioned JSON run configuration.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use tswave::profiles::{make_analytic_profile, Profile, ProfileKind};
use tswave::{Tier, C64};

use crate::CliError;

pub const SCHEMA_VERSION: u32 = 1;
/// Environment variable that overrides `solver.workers`.
pub const WORKERS_ENV: &str = "TSWAVE_WORKERS";

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields, default)]
pub struct RunConfig {
    pub schema_version: u32,
    pub profile: ProfileSpec,
    pub physics: Physics,
    pub wave: Wave,
    pub solver: Solver,
    pub output: Output,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields, default)]
pub struct ProfileSpec {
    pub kind: ProfileKind,
    /// Streamwise station of the Blasius profile.
    pub x0: f64,
    /// Steepness of the tanh and exp profiles.
    pub steepness: f64,
    /// CSV table for `custom-table`.
    pub table: Option<PathBuf>,
    /// Override of the decay rate used by the structure check.
    pub decay_rate: Option<f64>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields, default)]
pub struct Physics {
    pub nu: f64,
    /// Sweep `nu = 10^{-k}` for `k` from the first to the second entry.
    pub nu_decades: [i32; 2],
    pub m: f64,
    pub lambda: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields, default)]
pub struct Wave {
    /// `A` in `alpha_r = A nu^{1/8}`.
    pub amplitude: f64,
    /// Explicit `[alpha_r, alpha_i]`; wins over `amplitude` where both apply.
    pub alpha: Option<[f64; 2]>,
    /// `[c_r, c_i]` for the single-context subcommands.
    pub c: [f64; 2],
    /// Spatial damping `alpha_i = -gamma alpha_r` of a mixed mode.
    pub gamma: f64,
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize, PartialEq, Eq, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum TierName {
    Leading,
    Boundary,
}

impl From<TierName> for Tier {
    fn from(t: TierName) -> Tier {
        match t {
            TierName::Leading => Tier::Leading,
            TierName::Boundary => Tier::BoundaryData,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields, default)]
pub struct Solver {
    pub tier: TierName,
    /// Plateau constant `M` of the blended map.
    pub cutoff: f64,
    /// Amplitude band `[A_0, B_0]` of the regime check.
    pub band: [f64; 2],
    pub workers: usize,
    pub blasius_tolerance: f64,
    pub blasius_zeta_max: f64,
    pub spectral_n: usize,
    pub map_a: f64,
    pub eigen_count: usize,
    /// Skip the resolution-doubling pass of `spectrum`.
    pub no_doubling: bool,
    /// Upper end of sampled output grids; solver defaults when absent.
    pub y_max: Option<f64>,
    pub samples: usize,
    pub observable: String,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Default)]
#[serde(deny_unknown_fields, default)]
pub struct Output {
    pub csv: Option<PathBuf>,
    pub json: Option<PathBuf>,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            schema_version: SCHEMA_VERSION,
            profile: ProfileSpec::default(),
            physics: Physics::default(),
            wave: Wave::default(),
            solver: Solver::default(),
            output: Output::default(),
        }
    }
}

impl Default for ProfileSpec {
    fn default() -> Self {
        ProfileSpec { kind: ProfileKind::Blasius, x0: 1.0, steepness: 1.0, table: None, decay_rate: None }
    }
}

impl Default for Physics {
    fn default() -> Self {
        Physics { nu: 1e-16, nu_decades: [16, 21], m: 0.3, lambda: 0.0 }
    }
}

impl Default for Wave {
    fn default() -> Self {
        Wave { amplitude: 10.0, alpha: None, c: [0.15, 0.01], gamma: 0.0 }
    }
}

impl Default for Solver {
    fn default() -> Self {
        Solver {
            tier: TierName::Leading,
            cutoff: 1.0,
            band: [8.0, 48.0],
            workers: 4,
            blasius_tolerance: 1e-10,
            blasius_zeta_max: 12.0,
            spectral_n: 256,
            map_a: 4.0,
            eigen_count: 6,
            no_doubling: false,
            y_max: None,
            samples: 201,
            observable: "c_i".into(),
        }
    }
}

fn invalid(msg: impl Into<String>) -> CliError {
    CliError::Config(msg.into())
}

impl RunConfig {
    pub fn from_json(text: &str) -> Result<Self, CliError> {
        let cfg: RunConfig = serde_json::from_str(text).map_err(|e| invalid(format!("schema: {e}")))?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| invalid(format!("{}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    /// Apply the worker override from the environment.
    pub fn apply_env(&mut self) -> Result<(), CliError> {
        if let Ok(v) = std::env::var(WORKERS_ENV) {
            self.solver.workers =
                v.trim().parse().map_err(|_| invalid(format!("{WORKERS_ENV}={v:?} is not a worker count")))?;
        }
        Ok(())
    }

    pub fn validate(&self) -> Result<(), CliError> {
        if self.schema_version != SCHEMA_VERSION {
            return Err(invalid(format!("schema_version {} is not {SCHEMA_VERSION}", self.schema_version)));
        }
        let p = &self.physics;
        if !(p.nu > 0.0 && p.nu.is_finite()) {
            return Err(invalid("physics.nu must be positive"));
        }
        if !(0.0..1.0).contains(&p.m) {
            return Err(invalid(format!("physics.m = {} must satisfy 0 <= m < 1", p.m)));
        }
        if !p.lambda.is_finite() {
            return Err(invalid("physics.lambda must be finite"));
        }
        if !(p.nu_decades[0] > 0 && p.nu_decades[1] > 0) {
            return Err(invalid("physics.nu_decades must be positive exponents"));
        }
        let w = &self.wave;
        if !(w.amplitude > 0.0 && w.amplitude.is_finite()) {
            return Err(invalid("wave.amplitude must be positive"));
        }
        if let Some(a) = w.alpha {
            if !(a[0] > 0.0 && a[1].is_finite()) {
                return Err(invalid("wave.alpha needs alpha_r > 0"));
            }
        }
        if !(w.c[0] > 0.0 && w.c[0] < 1.0 && w.c[1] >= 0.0) {
            return Err(invalid("wave.c needs 0 < c_r < 1 and c_i >= 0"));
        }
        if !(w.gamma >= 0.0 && w.gamma.is_finite()) {
            return Err(invalid("wave.gamma must be non-negative"));
        }
        let s = &self.solver;
        if !(s.cutoff >= 1.0 && s.cutoff.is_finite()) {
            return Err(invalid("solver.cutoff must be at least 1"));
        }
        if !(s.band[0] > 0.0 && s.band[1] > s.band[0]) {
            return Err(invalid("solver.band needs 0 < A_0 < B_0"));
        }
        if s.workers == 0 {
            return Err(invalid("solver.workers must be at least 1"));
        }
        if !(s.blasius_tolerance > 0.0) {
            return Err(invalid("solver.blasius_tolerance must be positive"));
        }
        if !(s.blasius_zeta_max >= 10.0) {
            return Err(invalid("solver.blasius_zeta_max must be at least 10"));
        }
        if s.spectral_n < 64 {
            return Err(invalid("solver.spectral_n must be at least 64"));
        }
        if !(s.map_a > 0.0) {
            return Err(invalid("solver.map_a must be positive"));
        }
        if s.eigen_count == 0 {
            return Err(invalid("solver.eigen_count must be at least 1"));
        }
        if let Some(y) = s.y_max {
            if !(y > 0.0) {
                return Err(invalid("solver.y_max must be positive"));
            }
        }
        if s.samples < 2 {
            return Err(invalid("solver.samples must be at least 2"));
        }
        s.observable.parse::<tswave::dispersion::Observable>().map_err(|e| invalid(e.to_string()))?;
        let pr = &self.profile;
        if !(pr.x0 > 0.0 && pr.steepness > 0.0) {
            return Err(invalid("profile.x0 and profile.steepness must be positive"));
        }
        if pr.kind == ProfileKind::CustomTable && pr.table.is_none() {
            return Err(invalid("profile.table is required for custom-table"));
        }
        if let Some(d) = pr.decay_rate {
            if !(d > 0.0) {
                return Err(invalid("profile.decay_rate must be positive"));
            }
        }
        Ok(())
    }

    /// SHA-256 of the canonical JSON form, without output paths and worker count.
    pub fn hash(&self) -> String {
        let mut key = self.clone();
        key.output = Output::default();
        key.solver.workers = 1;
        let text = serde_json::to_string(&key).expect("config serialises");
        format!("{:x}", Sha256::digest(text.as_bytes()))
    }

    pub fn build_profile(&self) -> Result<Profile, CliError> {
        let spec = &self.profile;
        let p = match spec.kind {
            ProfileKind::Blasius => {
                let sol = tswave::profiles::solve_blasius(self.solver.blasius_tolerance, self.solver.blasius_zeta_max)?;
                Profile::blasius(std::sync::Arc::new(sol), spec.x0)?
            }
            ProfileKind::Tanh | ProfileKind::Exp => make_analytic_profile(spec.kind, spec.steepness)?,
            ProfileKind::CustomTable => {
                let path = spec.table.as_ref().expect("validated");
                let f = std::fs::File::open(path).map_err(|e| invalid(format!("{}: {e}", path.display())))?;
                Profile::read_csv(f)?
            }
        };
        Ok(match spec.decay_rate {
            Some(d) => p.with_decay_rate(d),
            None => p,
        })
    }

    /// `alpha` from the explicit value or from the amplitude.
    pub fn alpha(&self) -> C64 {
        match self.wave.alpha {
            Some([r, i]) => C64::new(r, i),
            None => C64::new(self.wave.amplitude * self.physics.nu.powf(0.125), 0.0),
        }
    }

    pub fn c(&self) -> C64 {
        C64::new(self.wave.c[0], self.wave.c[1])
    }

    pub fn nus(&self) -> Vec<f64> {
        tswave::dispersion::decades(self.physics.nu_decades[0], self.physics.nu_decades[1])
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_validate() {
        RunConfig::default().validate().unwrap();
    }

    #[test]
    fn supersonic_mach_is_rejected() {
        let cfg = RunConfig::from_json(r#"{"schema_version": 1, "physics": {"m": 1.2}}"#).unwrap();
        assert!(matches!(cfg.validate(), Err(CliError::Config(_))));
    }

    #[test]
    fn unknown_fields_are_rejected() {
        assert!(RunConfig::from_json(r#"{"physics": {"mach": 0.3}}"#).is_err());
    }

    #[test]
    fn wrong_schema_version() {
        let cfg = RunConfig::from_json(r#"{"schema_version": 2}"#).unwrap();
        assert!(cfg.validate().is_err());
    }

    #[test]
    fn hash_tracks_content() {
        let a = RunConfig::default();
        let mut b = a.clone();
        assert_eq!(a.hash(), b.hash());
        b.solver.workers = 9;
        b.output.json = Some("x.json".into());
        assert_eq!(a.hash(), b.hash());
        b.physics.m = 0.31;
        assert_ne!(a.hash(), b.hash());
        assert_eq!(a.hash().len(), 64);
    }

    #[test]
    fn round_trip() {
        let a = RunConfig::default();
        let b = RunConfig::from_json(&serde_json::to_string(&a).unwrap()).unwrap();
        assert_eq!(a, b);
    }
}
