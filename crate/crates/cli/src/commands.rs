//! Subcommand definitions and their runners.

use std::path::PathBuf;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::json;
use tswave::airy_bvp::{fast_mode, large_argument_ratio};
use tswave::airyfn::{airy_leading, eval_airy};
use tswave::dispersion::{solve_at, solve_spatial, solve_temporal, sweep_scaling, DispersionSetup, Observable};
use tswave::langer::{build_langer, err_terms};
use tswave::modes::slow_boundary_of;
use tswave::profiles::solve_blasius;
use tswave::rayleigh::{slow_asymptotics, slow_mode, wall_ratio};
use tswave::spectral::{build_operator, solve_spectrum, solve_with_doubling, SpectralParams};
use tswave::{Profile, WaveContext, C64};

use crate::config::{RunConfig, TierName};
use crate::criteria::{self, Knobs};
use crate::output::{hash_comment, sink, write_csv, write_json};
use crate::CliError;

#[derive(Debug, Parser)]
#[command(name = "tswave", version, about = "Compressible Tollmien-Schlichting wave construction")]
pub struct Cli {
    /// JSON run configuration; flags override its fields.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Write the CSV artifact here.
    #[arg(long, global = true)]
    pub csv: Option<PathBuf>,
    /// Write the JSON summary here instead of standard output.
    #[arg(long, global = true)]
    pub json: Option<PathBuf>,
    /// Worker threads for sweeps.
    #[arg(long, global = true)]
    pub workers: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Solve the Blasius equation and tabulate the profile.
    Blasius(BlasiusArgs),
    /// Compare the Airy evaluator with its asymptotics and a reference.
    AiryCheck,
    /// Tabulate the blended Langer map and its error terms.
    LangerDump(ContextArgs),
    /// Slow (Rayleigh) mode and its wall data.
    RayleighMode(ContextArgs),
    /// Fast (Airy) mode wall data.
    FastMode(FastArgs),
    /// Dispersion relation roots and sweeps.
    #[command(subcommand)]
    Dispersion(DispersionCommand),
    /// Spatial root with `Im(alpha c) = 0`.
    SpatialMode(SolveArgs),
    /// Eigenvalues of the collocation pencil near a shift.
    Spectrum(SpectrumArgs),
    /// Run one acceptance check by id or number, or `all`.
    Reproduce { id: String },
}

#[derive(Debug, Subcommand)]
pub enum DispersionCommand {
    Solve(SolveArgs),
    Sweep(SweepArgs),
}

#[derive(Debug, Args, Default)]
pub struct PhysicsArgs {
    #[arg(long)]
    pub nu: Option<f64>,
    #[arg(long)]
    pub m: Option<f64>,
    #[arg(long)]
    pub lambda: Option<f64>,
}

#[derive(Debug, Args, Default)]
pub struct SolverArgs {
    #[arg(long, value_enum)]
    pub tier: Option<TierName>,
    /// Plateau constant `M` of the blended map.
    #[arg(long)]
    pub cutoff: Option<f64>,
    /// Amplitude band `A_0,B_0` of the regime check.
    #[arg(long, value_delimiter = ',')]
    pub band: Option<Vec<f64>>,
}

#[derive(Debug, Args)]
pub struct BlasiusArgs {
    #[arg(long)]
    pub x0: Option<f64>,
    #[arg(long)]
    pub zeta_max: Option<f64>,
    #[arg(long)]
    pub tolerance: Option<f64>,
    #[arg(long)]
    pub y_max: Option<f64>,
    #[arg(long)]
    pub points: Option<usize>,
}

#[derive(Debug, Args)]
pub struct ContextArgs {
    #[command(flatten)]
    pub physics: PhysicsArgs,
    #[arg(long, allow_hyphen_values = true)]
    pub alpha_re: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub alpha_im: Option<f64>,
    #[arg(long)]
    pub c_re: Option<f64>,
    #[arg(long)]
    pub c_im: Option<f64>,
    #[arg(long)]
    pub cutoff: Option<f64>,
    #[arg(long)]
    pub y_max: Option<f64>,
    #[arg(long)]
    pub points: Option<usize>,
}

#[derive(Debug, Args)]
pub struct FastArgs {
    #[command(flatten)]
    pub context: ContextArgs,
    /// Skip the correction solve.
    #[arg(long)]
    pub no_correction: bool,
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    #[command(flatten)]
    pub physics: PhysicsArgs,
    #[command(flatten)]
    pub solver: SolverArgs,
    /// Amplitude `A` of `alpha_r = A nu^{1/8}`.
    #[arg(long = "A", alias = "amplitude")]
    pub amplitude: Option<f64>,
    /// Explicit `alpha_r`, overriding the amplitude.
    #[arg(long)]
    pub alpha_re: Option<f64>,
    /// Damping `gamma` of `alpha = alpha_r (1 - i gamma)`.
    #[arg(long)]
    pub gamma: Option<f64>,
    /// Solve for the spatial mode instead.
    #[arg(long)]
    pub spatial: bool,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[command(flatten)]
    pub physics: PhysicsArgs,
    #[command(flatten)]
    pub solver: SolverArgs,
    /// Exponents `from:to` of `nu = 10^{-k}`.
    #[arg(long)]
    pub nu_decades: Option<String>,
    #[arg(long = "A", alias = "amplitude")]
    pub amplitude: Option<f64>,
    /// `c_i`, `c_r_over_alpha` or `alpha_i0`.
    #[arg(long)]
    pub observable: Option<String>,
}

#[derive(Debug, Args)]
pub struct SpectrumArgs {
    #[command(flatten)]
    pub physics: PhysicsArgs,
    #[command(flatten)]
    pub solver: SolverArgs,
    #[arg(long)]
    pub alpha_re: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub alpha_im: Option<f64>,
    #[arg(long = "N")]
    pub n: Option<usize>,
    #[arg(long)]
    pub map_a: Option<f64>,
    /// Number of eigenvalues near the shift.
    #[arg(long)]
    pub k: Option<usize>,
    /// Shift from the temporal dispersion root at `alpha`.
    #[arg(long)]
    pub shift_from_dispersion: bool,
    #[arg(long)]
    pub shift_re: Option<f64>,
    #[arg(long)]
    pub shift_im: Option<f64>,
    #[arg(long)]
    pub no_doubling: bool,
}

fn set<T>(slot: &mut T, v: Option<T>) {
    if let Some(v) = v {
        *slot = v;
    }
}

impl PhysicsArgs {
    fn apply(&self, cfg: &mut RunConfig) {
        set(&mut cfg.physics.nu, self.nu);
        set(&mut cfg.physics.m, self.m);
        set(&mut cfg.physics.lambda, self.lambda);
    }
}

impl SolverArgs {
    fn apply(&self, cfg: &mut RunConfig) -> Result<(), CliError> {
        set(&mut cfg.solver.tier, self.tier);
        set(&mut cfg.solver.cutoff, self.cutoff);
        if let Some(b) = &self.band {
            let [a0, b0] = b[..] else {
                return Err(CliError::Config("--band takes two values A_0,B_0".into()));
            };
            cfg.solver.band = [a0, b0];
        }
        Ok(())
    }
}

impl ContextArgs {
    fn apply(&self, cfg: &mut RunConfig) {
        self.physics.apply(cfg);
        if self.alpha_re.is_some() || self.alpha_im.is_some() {
            let base = cfg.alpha();
            cfg.wave.alpha = Some([self.alpha_re.unwrap_or(base.re), self.alpha_im.unwrap_or(base.im)]);
        }
        set(&mut cfg.wave.c[0], self.c_re);
        set(&mut cfg.wave.c[1], self.c_im);
        set(&mut cfg.solver.cutoff, self.cutoff);
        if self.y_max.is_some() {
            cfg.solver.y_max = self.y_max;
        }
        set(&mut cfg.solver.samples, self.points);
    }
}

impl SolveArgs {
    fn apply(&self, cfg: &mut RunConfig) -> Result<(), CliError> {
        self.physics.apply(cfg);
        self.solver.apply(cfg)?;
        set(&mut cfg.wave.amplitude, self.amplitude);
        if let Some(a) = self.alpha_re {
            cfg.wave.alpha = Some([a, 0.0]);
        }
        set(&mut cfg.wave.gamma, self.gamma);
        Ok(())
    }
}

fn parse_decades(s: &str) -> Result<[i32; 2], CliError> {
    let bad = || CliError::Config(format!("--nu-decades {s:?} is not of the form from:to"));
    let (a, b) = s.split_once(':').ok_or_else(bad)?;
    Ok([a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?])
}

/// Effective configuration: file or defaults, then flags, then the environment.
pub fn resolve(cli: &Cli) -> Result<RunConfig, CliError> {
    let mut cfg = match &cli.config {
        Some(p) => RunConfig::load(p)?,
        None => RunConfig::default(),
    };
    set(&mut cfg.solver.workers, cli.workers);
    if cli.csv.is_some() {
        cfg.output.csv = cli.csv.clone();
    }
    if cli.json.is_some() {
        cfg.output.json = cli.json.clone();
    }
    match &cli.command {
        Command::Blasius(a) => {
            set(&mut cfg.profile.x0, a.x0);
            set(&mut cfg.solver.blasius_zeta_max, a.zeta_max);
            set(&mut cfg.solver.blasius_tolerance, a.tolerance);
            if a.y_max.is_some() {
                cfg.solver.y_max = a.y_max;
            }
            set(&mut cfg.solver.samples, a.points);
        }
        Command::AiryCheck | Command::Reproduce { .. } => {}
        Command::LangerDump(a) | Command::RayleighMode(a) => a.apply(&mut cfg),
        Command::FastMode(a) => a.context.apply(&mut cfg),
        Command::Dispersion(DispersionCommand::Solve(a)) | Command::SpatialMode(a) => a.apply(&mut cfg)?,
        Command::Dispersion(DispersionCommand::Sweep(a)) => {
            a.physics.apply(&mut cfg);
            a.solver.apply(&mut cfg)?;
            set(&mut cfg.wave.amplitude, a.amplitude);
            if let Some(s) = &a.nu_decades {
                cfg.physics.nu_decades = parse_decades(s)?;
            }
            set(&mut cfg.solver.observable, a.observable.clone());
        }
        Command::Spectrum(a) => {
            a.physics.apply(&mut cfg);
            a.solver.apply(&mut cfg)?;
            if a.alpha_re.is_some() || a.alpha_im.is_some() {
                let base = cfg.alpha();
                cfg.wave.alpha = Some([a.alpha_re.unwrap_or(base.re), a.alpha_im.unwrap_or(base.im)]);
            }
            set(&mut cfg.solver.spectral_n, a.n);
            set(&mut cfg.solver.map_a, a.map_a);
            set(&mut cfg.solver.eigen_count, a.k);
            set(&mut cfg.wave.c[0], a.shift_re);
            set(&mut cfg.wave.c[1], a.shift_im);
            if a.no_doubling {
                cfg.solver.no_doubling = true;
            }
        }
    }
    cfg.apply_env()?;
    cfg.validate()?;
    Ok(cfg)
}

/// Parse-free entry point used by the binary and the tests.
pub fn execute(cli: &Cli) -> Result<(), CliError> {
    let cfg = resolve(cli)?;
    match &cli.command {
        Command::Blasius(_) => blasius(&cfg),
        Command::AiryCheck => airy_check(&cfg),
        Command::LangerDump(_) => langer_dump(&cfg),
        Command::RayleighMode(_) => rayleigh_mode(&cfg),
        Command::FastMode(a) => fast(&cfg, !a.no_correction),
        Command::Dispersion(DispersionCommand::Solve(a)) => dispersion_solve(&cfg, a.spatial),
        Command::SpatialMode(_) => dispersion_solve(&cfg, true),
        Command::Dispersion(DispersionCommand::Sweep(_)) => dispersion_sweep(&cfg),
        Command::Spectrum(a) => spectrum(&cfg, a.shift_from_dispersion),
        Command::Reproduce { id } => reproduce(&cfg, id),
    }
}

fn emit_json<T: Serialize>(cfg: &RunConfig, value: &T) -> Result<(), CliError> {
    write_json(sink(cfg.output.json.as_deref())?, value)
}

fn emit_csv(cfg: &RunConfig, header: &[&str], rows: &[Vec<f64>]) -> Result<(), CliError> {
    write_csv(sink(cfg.output.csv.as_deref())?, &cfg.hash(), header, rows)
}

fn linspace(a: f64, b: f64, n: usize) -> Vec<f64> {
    (0..n).map(|i| a + (b - a) * i as f64 / (n - 1) as f64).collect()
}

fn context(cfg: &RunConfig, profile: &Profile) -> Result<WaveContext, CliError> {
    let p = &cfg.physics;
    Ok(WaveContext::new(profile, p.nu, p.m, p.lambda, cfg.alpha(), cfg.c())?)
}

fn setup(cfg: &RunConfig, profile: Profile) -> DispersionSetup {
    let mut s = DispersionSetup::new(profile, cfg.physics.nu, cfg.physics.m);
    s.lambda = cfg.physics.lambda;
    s.cutoff = cfg.solver.cutoff;
    s.band = (cfg.solver.band[0], cfg.solver.band[1]);
    s
}

fn blasius(cfg: &RunConfig) -> Result<(), CliError> {
    let sol = solve_blasius(cfg.solver.blasius_tolerance, cfg.solver.blasius_zeta_max)?;
    let summary = json!({
        "config_sha256": cfg.hash(),
        "fpp0": sol.fpp0,
        "ode_residual": sol.ode_residual(),
        "slope_defect_at_zeta_max": (sol.f(sol.zeta_max, 1) - 1.0).abs(),
    });
    let profile = Profile::blasius(Arc::new(sol), cfg.profile.x0)?;
    let ys = linspace(0.0, cfg.solver.y_max.unwrap_or(20.0), cfg.solver.samples);
    profile.write_csv(sink(cfg.output.csv.as_deref())?, &ys, Some(&hash_comment(&cfg.hash())))?;
    if cfg.output.json.is_some() {
        emit_json(cfg, &summary)?;
    }
    Ok(())
}

fn airy_check(cfg: &RunConfig) -> Result<(), CliError> {
    let mut rows = Vec::new();
    for z in criteria::airy_test_points() {
        let e = eval_airy(z)?;
        let lead = airy_leading(z);
        let reference = complex_bessel::airy(z).map_err(|e| CliError::Config(format!("reference Airy: {e:?}")))?;
        rows.push(vec![
            z.re,
            z.im,
            e.ai.re,
            e.ai.im,
            e.ai_prime.re,
            e.ai_prime.im,
            (e.ai - lead).norm() / e.ai.norm(),
            (e.ai - reference).norm() / reference.norm(),
        ]);
    }
    emit_csv(
        cfg,
        &["re_z", "im_z", "re_ai", "im_ai", "re_ai_prime", "im_ai_prime", "error_vs_asymptotics", "error_vs_reference"],
        &rows,
    )
}

fn langer_dump(cfg: &RunConfig) -> Result<(), CliError> {
    let profile = cfg.build_profile()?;
    let ctx = context(cfg, &profile)?;
    let map = build_langer(&profile, &ctx, cfg.solver.cutoff)?;
    let y_max = cfg.solver.y_max.unwrap_or(2.0 * ctx.yc + 4.0 * profile.length_scale());
    let rows: Vec<Vec<f64>> = linspace(0.0, y_max, cfg.solver.samples)
        .into_iter()
        .map(|y| {
            let p = map.eval(y);
            let (e1, e2) = err_terms(&map, &ctx, y);
            vec![y, p.eta_r, p.d_eta, p.d2_eta, e1.norm(), e2.norm()]
        })
        .collect();
    emit_csv(cfg, &["Y", "eta_r", "d_eta", "d2_eta", "abs_err1", "abs_err2"], &rows)
}

fn rayleigh_mode(cfg: &RunConfig) -> Result<(), CliError> {
    let profile = cfg.build_profile()?;
    let ctx = context(cfg, &profile)?;
    let mode = slow_mode(&profile, &ctx)?;
    if cfg.output.csv.is_some() {
        let rows: Vec<Vec<f64>> =
            mode.phi.grid.nodes().iter().zip(&mode.phi.values).map(|(&y, v)| vec![y, v.re, v.im]).collect();
        emit_csv(cfg, &["Y", "re_phi", "im_phi"], &rows)?;
    }
    let asym = slow_asymptotics(&ctx);
    let ratio = wall_ratio(&mode)?;
    let b = slow_boundary_of(&mode, &ctx);
    emit_json(
        cfg,
        &json!({
            "config_sha256": cfg.hash(),
            "context": ctx,
            "wall_value": mode.wall_value,
            "wall_slope": mode.wall_slope,
            "wall_ratio": ratio,
            "asymptotics": asym,
            "deltas": {
                "wall_value": (mode.wall_value - asym.wall_value).norm(),
                "wall_slope": (mode.wall_slope - asym.wall_slope).norm(),
                "wall_ratio": (ratio - asym.ratio).norm(),
            },
            "boundary": { "u_s0": b.u0, "v_s0": b.v0 },
            "term_norms": mode.term_norms,
        }),
    )
}

fn fast(cfg: &RunConfig, correct: bool) -> Result<(), CliError> {
    let profile = cfg.build_profile()?;
    let ctx = context(cfg, &profile)?;
    let map = build_langer(&profile, &ctx, cfg.solver.cutoff)?;
    let fm = fast_mode(&profile, &ctx, &map, correct)?;
    let lead = large_argument_ratio(&ctx);
    let scale = ctx.eps.norm().sqrt() / ctx.c.re.sqrt();
    emit_json(
        cfg,
        &json!({
            "config_sha256": cfg.hash(),
            "context": ctx,
            "fast_mode": fm,
            "large_argument_ratio": lead,
            "large_argument_delta": (fm.wall_ratio - lead).norm(),
            "large_argument_delta_scaled": (fm.wall_ratio - lead).norm() / scale,
            "abs_airy_arg_wall": fm.airy_arg_wall.norm(),
        }),
    )
}

fn dispersion_solve(cfg: &RunConfig, spatial: bool) -> Result<(), CliError> {
    let s = setup(cfg, cfg.build_profile()?);
    let alpha_r = cfg.alpha().re;
    let tier = cfg.solver.tier.into();
    let head = json!({
        "config_sha256": cfg.hash(),
        "nu": cfg.physics.nu,
        "m": cfg.physics.m,
        "lambda": cfg.physics.lambda,
        "alpha_r": alpha_r,
        "tier": cfg.solver.tier,
    });
    if spatial {
        let sp = solve_spatial(&s, alpha_r, tier)?;
        let margin = sp.point.growth_margin(&s);
        return emit_json(cfg, &json!({ "setup": head, "spatial": sp, "growth_margin": margin }));
    }
    let gamma = cfg.wave.gamma;
    let point = if gamma == 0.0 {
        solve_temporal(&s, alpha_r, tier)?
    } else {
        tswave::dispersion::solve_mixed(&s, alpha_r, gamma, tier)?
    };
    let margin = point.growth_margin(&s);
    emit_json(cfg, &json!({ "setup": head, "point": point, "growth_margin": margin }))
}

fn dispersion_sweep(cfg: &RunConfig) -> Result<(), CliError> {
    let nus = cfg.nus();
    let s = setup(cfg, cfg.build_profile()?);
    let obs: Observable = cfg.solver.observable.parse()?;
    let res = sweep_scaling(&s, &nus, cfg.wave.amplitude, obs, cfg.solver.tier.into(), cfg.solver.workers)?;
    let nan = f64::NAN;
    let rows: Vec<Vec<f64>> = res
        .points
        .iter()
        .map(|p| {
            let c = p.c.unwrap_or(C64::new(nan, nan));
            vec![p.nu, p.value.unwrap_or(nan), p.residual.unwrap_or(nan), c.re, c.im]
        })
        .collect();
    emit_csv(cfg, &["nu", cfg.solver.observable.as_str(), "residual", "re_c", "im_c"], &rows)?;
    let failed = res.points.iter().filter(|p| p.error.is_some()).count();
    let summary = json!({
        "config_sha256": cfg.hash(),
        "observable": cfg.solver.observable,
        "amplitude": cfg.wave.amplitude,
        "m": cfg.physics.m,
        "tier": cfg.solver.tier,
        "fit": res.fit,
        "points": res.points,
    });
    if cfg.output.json.is_some() || cfg.output.csv.is_some() {
        emit_json(cfg, &summary)?;
    }
    if failed > 0 {
        return Err(tswave::Error::NoConvergence {
            module: "dispersion",
            detail: format!("{failed} of {} sweep points unsolved", res.points.len()),
        }
        .into());
    }
    Ok(())
}

fn spectrum(cfg: &RunConfig, from_dispersion: bool) -> Result<(), CliError> {
    let profile = cfg.build_profile()?;
    let alpha = cfg.alpha();
    let shift = if from_dispersion {
        let s = setup(cfg, profile.clone());
        let tier = cfg.solver.tier.into();
        if alpha.im == 0.0 {
            solve_temporal(&s, alpha.re, tier)?.c
        } else {
            solve_at(&s, alpha, tier, None)?.c
        }
    } else {
        cfg.c()
    };
    let p = &cfg.physics;
    let params =
        SpectralParams { nu: p.nu, m: p.m, lambda: p.lambda, alpha, n: cfg.solver.spectral_n, map_a: cfg.solver.map_a };
    let k = cfg.solver.eigen_count;
    let (spectrum, warnings) = if cfg.solver.no_doubling {
        let op = build_operator(&profile, params)?;
        (solve_spectrum(&op, shift, k)?, op.warnings)
    } else {
        (solve_with_doubling(&profile, params, shift, k)?, Vec::new())
    };
    let eigen: Vec<_> = (0..spectrum.eigenvalues.len())
        .map(|i| {
            json!({
                "c": spectrum.eigenvalues[i],
                "residual": spectrum.residuals[i],
                "spurious": spectrum.spurious_flags[i],
                "movement": spectrum.movement.get(i),
            })
        })
        .collect();
    emit_json(
        cfg,
        &json!({
            "config_sha256": cfg.hash(),
            "params": params,
            "shift": shift,
            "resolution": spectrum.resolution,
            "eigenvalues": eigen,
            "most_unstable": spectrum.most_unstable(),
            "warnings": warnings,
        }),
    )
}

fn reproduce(cfg: &RunConfig, id: &str) -> Result<(), CliError> {
    let knobs = Knobs { workers: cfg.solver.workers };
    let outcomes: Vec<criteria::Outcome> = if id == "all" {
        criteria::CRITERIA.iter().map(|c| (c.2)(&knobs)).collect()
    } else {
        let known: Vec<&str> = criteria::CRITERIA.iter().map(|c| c.1).collect();
        vec![criteria::run(id, &knobs)
            .ok_or_else(|| CliError::Config(format!("unknown criterion {id:?}; known: {}", known.join(", "))))?]
    };
    for o in &outcomes {
        println!("{}", o.line());
    }
    if cfg.output.json.is_some() {
        emit_json(cfg, &outcomes)?;
    }
    let failed: Vec<&str> = outcomes.iter().filter(|o| !o.pass).map(|o| o.id).collect();
    if failed.is_empty() {
        Ok(())
    } else {
        Err(CliError::CriterionFailed(failed.join(", ")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(args: &[&str]) -> Cli {
        Cli::try_parse_from(std::iter::once("tswave").chain(args.iter().copied())).unwrap()
    }

    #[test]
    fn flags_override_defaults() {
        let cli = parse(&["dispersion", "solve", "--nu", "1e-18", "--m", "0.5", "--A", "12", "--tier", "boundary"]);
        let cfg = resolve(&cli).unwrap();
        assert_eq!(cfg.physics.nu, 1e-18);
        assert_eq!(cfg.physics.m, 0.5);
        assert_eq!(cfg.wave.amplitude, 12.0);
        assert_eq!(cfg.solver.tier, TierName::Boundary);
    }

    #[test]
    fn invalid_mach_is_a_config_error() {
        let cli = parse(&["dispersion", "solve", "--m", "1.2"]);
        let e = resolve(&cli).unwrap_err();
        assert_eq!(e.exit_code(), 1);
    }

    #[test]
    fn decades_parse() {
        assert_eq!(parse_decades("16:21").unwrap(), [16, 21]);
        assert!(parse_decades("16-21").is_err());
    }

    #[test]
    fn band_flag() {
        let cli = parse(&["spectrum", "--band", "0.5,48"]);
        assert_eq!(resolve(&cli).unwrap().solver.band, [0.5, 48.0]);
    }

    #[test]
    fn solver_failure_exit_code() {
        let e: CliError = tswave::Error::NoConvergence { module: "dispersion", detail: String::new() }.into();
        assert_eq!(e.exit_code(), 2);
        assert!(e.to_string().contains("dispersion.no-convergence"));
    }
}
