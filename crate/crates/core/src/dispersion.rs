//! Dispersion relation between the slow and fast wall data, its temporal,
//! spatial and mixed roots, and power-law fits over viscosity sweeps.

use serde::Serialize;

use crate::airy_bvp::{fast_mode, FastMode};
use crate::airyfn::{airy_scaled, rotated_antiderivatives_scaled};
use crate::context::WaveContext;
use crate::error::{err, Error, Result};
use crate::langer::{build_langer, LangerMap};
use crate::modes::{fast_boundary_of, slow_boundary_of, DEFAULT_CUTOFF};
use crate::profiles::Profile;
use crate::rayleigh::slow_mode;
use crate::{cis, C64};

/// Combined cap on fixed-point and Newton steps.
pub const MAX_ITERATIONS: usize = 50;
/// Fixed-point steps before switching to Newton.
const FIXED_POINT_STEPS: usize = 12;
/// Allowed excursion of `|alpha| / |eps|^{1/3}` outside the amplitude band.
const REGIME_FACTOR: f64 = 10.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Tier {
    Leading,
    BoundaryData,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ModeKind {
    Temporal,
    Spatial,
    Mixed,
}

/// A solved root of the dispersion relation.
#[derive(Debug, Clone, Serialize)]
pub struct DispersionPoint {
    pub alpha: C64,
    pub c: C64,
    /// `|residual|`, relative to `|u^s v^f| + |u^f v^s|` for the boundary tier.
    pub residual: f64,
    pub iterations: usize,
    pub mode_kind: ModeKind,
    pub tier: Tier,
    /// Successive fixed-point increments `|c^{(j)} - c^{(j-1)}|`.
    pub increments: Vec<f64>,
}

impl DispersionPoint {
    /// `c_i - U'(0)^{-1} (1 - m^2)^{-1/2} alpha_i`.
    pub fn growth_margin(&self, setup: &DispersionSetup) -> f64 {
        self.c.im - setup.leading_speed(C64::new(0.0, self.alpha.im)).im
    }

    pub fn contraction_ratios(&self) -> Vec<f64> {
        self.increments.windows(2).filter(|w| w[0] > 0.0).map(|w| w[1] / w[0]).collect()
    }
}

/// Fixed inputs of the dispersion relation; builds a [`WaveContext`] per `(alpha, c)`.
#[derive(Debug, Clone)]
pub struct DispersionSetup {
    pub profile: Profile,
    pub nu: f64,
    pub m: f64,
    pub lambda: f64,
    /// Plateau constant of the blended map.
    pub cutoff: f64,
    /// Amplitude band `(A_0, B_0)` of `alpha_r = A nu^{1/8}`.
    pub band: (f64, f64),
}

impl DispersionSetup {
    pub fn new(profile: Profile, nu: f64, m: f64) -> Self {
        DispersionSetup { profile, nu, m, lambda: 0.0, cutoff: DEFAULT_CUTOFF, band: (8.0, 48.0) }
    }

    pub fn context(&self, alpha: C64, c: C64) -> Result<WaveContext> {
        if !(c.re > 0.0 && c.re < 1.0) {
            return Err(err!(InvalidRegime, "dispersion", "c_r = {} leaves (0, 1): no critical layer", c.re));
        }
        WaveContext::new(&self.profile, self.nu, self.m, self.lambda, alpha, c)
    }

    /// `U'(0)^{-1} (1 - m^2)^{-1/2} alpha`.
    pub fn leading_speed(&self, alpha: C64) -> C64 {
        alpha / (self.profile.wall_slope() * (1.0 - self.m * self.m).sqrt())
    }

    /// `alpha_r = A nu^{1/8}` for amplitude `a`.
    pub fn alpha_for(&self, a: f64) -> f64 {
        a * self.nu.powf(0.125)
    }

    /// Reject `(alpha, c)` far outside `|alpha| ~ |c| ~ A |eps|^{1/3}`.
    pub fn check_regime(&self, ctx: &WaveContext) -> Result<()> {
        let e3 = ctx.eps.norm().cbrt();
        let lo = self.band.0.powf(4.0 / 3.0) / REGIME_FACTOR;
        let hi = self.band.1.powf(4.0 / 3.0) * REGIME_FACTOR / self.profile.wall_slope().min(1.0);
        let ra = ctx.alpha.norm() / e3;
        let rc = ctx.c.norm() / e3;
        if !(ra >= lo && ra <= hi && rc >= lo * self.profile.wall_slope().min(1.0) && rc <= hi) {
            return Err(err!(
                InvalidRegime,
                "dispersion",
                "|alpha| / |eps|^(1/3) = {ra:.3e}, |c| / |eps|^(1/3) = {rc:.3e} outside [{lo:.3e}, {hi:.3e}]"
            ));
        }
        Ok(())
    }

    fn map(&self, ctx: &WaveContext) -> Result<LangerMap> {
        build_langer(&self.profile, ctx, self.cutoff)
    }

    fn fast(&self, ctx: &WaveContext, correct: bool) -> Result<FastMode> {
        fast_mode(&self.profile, ctx, &self.map(ctx)?, correct)
    }

    /// `U'(0) A~(2, 0) / A~(1, 0)`.
    pub fn airy_term(&self, alpha: C64, c: C64) -> Result<C64> {
        let ctx = self.context(alpha, c)?;
        Ok(self.profile.wall_slope() * self.fast(&ctx, false)?.wall_ratio)
    }
}

/// Residual value with its normalisation.
#[derive(Debug, Clone, Copy)]
struct Evaluated {
    value: C64,
    scale: f64,
}

fn evaluate(setup: &DispersionSetup, alpha: C64, c: C64, tier: Tier) -> Result<Evaluated> {
    let ctx = setup.context(alpha, c)?;
    setup.check_regime(&ctx)?;
    match tier {
        Tier::Leading => {
            let fm = setup.fast(&ctx, false)?;
            let value = c - setup.leading_speed(alpha) + setup.profile.wall_slope() * fm.wall_ratio;
            Ok(Evaluated { value, scale: 1.0 })
        }
        Tier::BoundaryData => {
            if !(c.im > 0.0) {
                return Err(err!(InvalidRegime, "dispersion", "the boundary-data tier needs c_i > 0"));
            }
            let s = slow_boundary_of(&slow_mode(&setup.profile, &ctx)?, &ctx);
            let f = fast_boundary_of(&setup.fast(&ctx, true)?, &ctx);
            let a = s.u0 * f.v0;
            let b = f.u0 * s.v0;
            Ok(Evaluated { value: a - b, scale: a.norm() + b.norm() })
        }
    }
}

/// Dispersion residual at `(alpha, c)`.
pub fn dispersion_residual(setup: &DispersionSetup, alpha: C64, c: C64, tier: Tier) -> Result<C64> {
    Ok(evaluate(setup, alpha, c, tier)?.value)
}

/// `Ai(e^{i(pi/6 - theta0)} kappa eta(0)) A(2, kappa eta(0)) / A(1, kappa eta(0))^2`, the
/// leading part of `d/dc_r` of the leading-tier residual.
pub fn residual_derivative_estimate(setup: &DispersionSetup, alpha: C64, c: C64) -> Result<C64> {
    let ctx = setup.context(alpha, c)?;
    let map = setup.map(&ctx)?;
    let z = ctx.kappa * map.eta(0.0);
    let r = rotated_antiderivatives_scaled(z, ctx.theta0)?;
    let ai = airy_scaled(cis(ctx.phi1()) * z).0;
    Ok((ai * r.a2 / (r.a1 * r.a1)).value())
}

/// Central-difference `d residual / d c_r` with step `h |c|`.
pub fn residual_derivative_fd(setup: &DispersionSetup, alpha: C64, c: C64, tier: Tier, h: f64) -> Result<C64> {
    let step = h * c.norm();
    let p = dispersion_residual(setup, alpha, c + step, tier)?;
    let q = dispersion_residual(setup, alpha, c - step, tier)?;
    Ok((p - q) / (2.0 * step))
}

fn tolerance(tier: Tier) -> f64 {
    match tier {
        Tier::Leading => 1e-10,
        Tier::BoundaryData => 1e-8,
    }
}

/// One damped Newton step on `(c_r, c_i)` with a central-difference Jacobian.
fn newton_step(setup: &DispersionSetup, alpha: C64, c: C64, r: Evaluated, tier: Tier) -> Result<(C64, Evaluated)> {
    let h = 1e-7 * c.norm();
    // the imaginary step must keep c_i > 0
    let hi = if c.im > 0.0 { h.min(0.5 * c.im) } else { h };
    let mut col = [C64::new(0.0, 0.0); 2];
    for (k, (dir, step)) in [(C64::new(h, 0.0), h), (C64::new(0.0, hi), hi)].into_iter().enumerate() {
        let p = evaluate(setup, alpha, c + dir, tier)?.value;
        let q = evaluate(setup, alpha, c - dir, tier)?.value;
        col[k] = (p - q) / (2.0 * step);
    }
    // [re; im] of the residual against (dc_r, dc_i)
    let (a, b, cc, d) = (col[0].re, col[1].re, col[0].im, col[1].im);
    let det = a * d - b * cc;
    if !(det.abs() > 0.0) || !det.is_finite() {
        return Err(err!(Degenerate, "dispersion", "singular Jacobian at c = {c}"));
    }
    let dr = (d * r.value.re - b * r.value.im) / det;
    let di = (-cc * r.value.re + a * r.value.im) / det;
    let full = C64::new(-dr, -di);
    let mut lambda = 1.0;
    for _ in 0..12 {
        let trial = c + lambda * full;
        if let Ok(e) = evaluate(setup, alpha, trial, tier) {
            if e.value.norm() / e.scale < r.value.norm() / r.scale {
                return Ok((trial, e));
            }
        }
        lambda *= 0.5;
    }
    Err(err!(NoConvergence, "dispersion", "line search failed at c = {c}"))
}

/// Root `c` for a given complex `alpha`, seeded by the fixed point
/// `c = c0 - U'(0) A~(2,0) / A~(1,0)` and polished by Newton.
pub fn solve_at(setup: &DispersionSetup, alpha: C64, tier: Tier, seed: Option<C64>) -> Result<DispersionPoint> {
    let c0 = setup.leading_speed(alpha);
    // the map needs c_i >= 0, so the first iterate drops a negative c0_i
    let mut c = seed.unwrap_or(C64::new(c0.re, c0.im.max(0.0)));
    let mut increments = Vec::new();
    let mut iterations = 0;
    if seed.is_none() {
        for _ in 0..FIXED_POINT_STEPS {
            let next = c0 - setup.airy_term(alpha, c)?;
            iterations += 1;
            let step = (next - c).norm();
            increments.push(step);
            c = next;
            if step <= 1e-13 * c.norm() {
                break;
            }
        }
    }
    let mut r = evaluate(setup, alpha, c, tier)?;
    while r.value.norm() / r.scale > tolerance(tier) {
        if iterations >= MAX_ITERATIONS {
            return Err(err!(NoConvergence, "dispersion", "residual {:.3e} after {iterations} steps", r.value.norm()));
        }
        let (next, e) = newton_step(setup, alpha, c, r, tier)?;
        c = next;
        r = e;
        iterations += 1;
    }
    let kind = if alpha.im == 0.0 { ModeKind::Temporal } else { ModeKind::Mixed };
    Ok(DispersionPoint { alpha, c, residual: r.value.norm() / r.scale, iterations, mode_kind: kind, tier, increments })
}

/// Temporal root for real `alpha_r`.
pub fn solve_temporal(setup: &DispersionSetup, alpha_r: f64, tier: Tier) -> Result<DispersionPoint> {
    let alpha = C64::new(alpha_r, 0.0);
    let point = match tier {
        Tier::Leading => solve_at(setup, alpha, tier, None)?,
        Tier::BoundaryData => {
            let lead = solve_at(setup, alpha, Tier::Leading, None)?;
            let mut p = solve_at(setup, alpha, tier, Some(lead.c))?;
            p.increments = lead.increments;
            p.iterations += lead.iterations;
            p
        }
    };
    if !(point.c.im > 0.0) {
        return Err(err!(WrongBranch, "dispersion", "c_i = {} is not positive", point.c.im));
    }
    Ok(point)
}

/// Root for `alpha = alpha_r (1 - i gamma)`.
pub fn solve_mixed(setup: &DispersionSetup, alpha_r: f64, gamma: f64, tier: Tier) -> Result<DispersionPoint> {
    let alpha = C64::new(alpha_r, -gamma * alpha_r);
    let point = match tier {
        Tier::Leading => solve_at(setup, alpha, tier, None)?,
        Tier::BoundaryData => {
            let lead = solve_at(setup, alpha, Tier::Leading, None)?;
            solve_at(setup, alpha, tier, Some(lead.c))?
        }
    };
    Ok(DispersionPoint { mode_kind: if gamma == 0.0 { ModeKind::Temporal } else { ModeKind::Mixed }, ..point })
}

/// Spatial root with its damping `gamma_0`.
#[derive(Debug, Clone, Serialize)]
pub struct SpatialPoint {
    pub point: DispersionPoint,
    pub gamma0: f64,
    /// `|Im(alpha c)| / |alpha c|`.
    pub reality_defect: f64,
}

/// Spatial root: `alpha = alpha_r (1 - i gamma)` with `c_i / c_r = gamma`,
/// found by the secant method in `gamma` around the mixed solve.
pub fn solve_spatial(setup: &DispersionSetup, alpha_r: f64, tier: Tier) -> Result<SpatialPoint> {
    let temporal = solve_temporal(setup, alpha_r, tier)?;
    let outer = |p: &DispersionPoint, g: f64| p.c.im / p.c.re - g;
    // trial steps that leave c_i > 0 are halved back toward the last good gamma
    let halving = |from: f64, to: f64, seed: C64| -> Result<(f64, DispersionPoint)> {
        let mut g = to;
        let mut last = None;
        for _ in 0..10 {
            match solve_at(setup, C64::new(alpha_r, -g * alpha_r), tier, Some(seed)) {
                Ok(p) if p.c.im > 0.0 => return Ok((g, p)),
                Ok(p) => last = Some(err!(WrongBranch, "dispersion", "c_i = {} at gamma = {g}", p.c.im)),
                Err(e) => last = Some(e),
            }
            g = 0.5 * (from + g);
        }
        Err(last.unwrap())
    };
    let mut g0 = 0.0;
    let mut f0 = outer(&temporal, 0.0);
    let (mut g1, mut p1) = halving(0.0, f0, temporal.c)?;
    let mut f1 = outer(&p1, g1);
    let mut iterations = temporal.iterations + p1.iterations;
    for _ in 0..MAX_ITERATIONS {
        if f1.abs() <= 1e-11 * g1.abs().max(1e-300) {
            break;
        }
        let g2 = g1 - f1 * (g1 - g0) / (f1 - f0);
        if !g2.is_finite() {
            return Err(err!(NoConvergence, "dispersion", "secant step failed at gamma = {g1}"));
        }
        let (g2, p2) = halving(g1, g2, p1.c)?;
        iterations += p2.iterations;
        g0 = g1;
        f0 = f1;
        g1 = g2;
        f1 = outer(&p2, g2);
        p1 = p2;
    }
    if !(g1 > 0.0) {
        return Err(err!(WrongBranch, "dispersion", "gamma_0 = {g1} is not positive"));
    }
    let ac = p1.alpha * p1.c;
    let reality_defect = ac.im.abs() / ac.norm();
    if reality_defect > 1e-8 {
        return Err(err!(NoConvergence, "dispersion", "Im(alpha c) / |alpha c| = {reality_defect:.3e}"));
    }
    let point = DispersionPoint { mode_kind: ModeKind::Spatial, iterations, ..p1 };
    Ok(SpatialPoint { point, gamma0: g1, reality_defect })
}

/// `c^{(1)} = c^{(0)} - U'(0) A~(2,0) / A~(1,0)` at `c^{(0)}`.
pub fn first_correction(setup: &DispersionSetup, alpha_r: f64) -> Result<C64> {
    let alpha = C64::new(alpha_r, 0.0);
    let c0 = setup.leading_speed(alpha);
    Ok(c0 - setup.airy_term(alpha, c0)?)
}

/// Quantity tracked across a viscosity sweep.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Observable {
    CI,
    CROverAlpha,
    AlphaI0,
}

impl std::str::FromStr for Observable {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "c_i" => Ok(Observable::CI),
            "c_r_over_alpha" => Ok(Observable::CROverAlpha),
            "alpha_i0" => Ok(Observable::AlphaI0),
            _ => Err(err!(InvalidInput, "dispersion", "unknown observable {s}")),
        }
    }
}

/// Least-squares line `log y = exponent log x + intercept`.
#[derive(Debug, Clone, Serialize)]
pub struct ScalingFit {
    pub exponent: f64,
    pub intercept: f64,
    pub r_squared: f64,
    pub points: Vec<(f64, f64)>,
}

pub fn fit_power_law(points: &[(f64, f64)]) -> Result<ScalingFit> {
    if points.len() < 2 || points.iter().any(|&(x, y)| !(x > 0.0 && y > 0.0)) {
        return Err(err!(InvalidInput, "dispersion", "a power-law fit needs two or more positive points"));
    }
    let n = points.len() as f64;
    let lx: Vec<f64> = points.iter().map(|p| p.0.ln()).collect();
    let ly: Vec<f64> = points.iter().map(|p| p.1.ln()).collect();
    let mx = lx.iter().sum::<f64>() / n;
    let my = ly.iter().sum::<f64>() / n;
    let sxx: f64 = lx.iter().map(|x| (x - mx).powi(2)).sum();
    let sxy: f64 = lx.iter().zip(&ly).map(|(x, y)| (x - mx) * (y - my)).sum();
    let syy: f64 = ly.iter().map(|y| (y - my).powi(2)).sum();
    let exponent = sxy / sxx;
    let intercept = my - exponent * mx;
    let r_squared = if syy == 0.0 { 1.0 } else { sxy * sxy / (sxx * syy) };
    Ok(ScalingFit { exponent, intercept, r_squared, points: points.to_vec() })
}

/// One point of a sweep; `value` is absent when the solve failed.
#[derive(Debug, Clone, Serialize)]
pub struct SweepPoint {
    pub nu: f64,
    pub value: Option<f64>,
    pub residual: Option<f64>,
    pub c: Option<C64>,
    pub error: Option<String>,
}

/// Sweep outcome; `fit` is present only when every point solved.
#[derive(Debug, Clone, Serialize)]
pub struct SweepResult {
    pub points: Vec<SweepPoint>,
    pub fit: Option<ScalingFit>,
}

fn sweep_point(base: &DispersionSetup, nu: f64, amplitude: f64, observable: Observable, tier: Tier) -> SweepPoint {
    let setup = DispersionSetup { nu, ..base.clone() };
    let alpha_r = setup.alpha_for(amplitude);
    let solved = match observable {
        Observable::CI => solve_temporal(&setup, alpha_r, tier).map(|p| (p.c.im, p)),
        Observable::CROverAlpha => solve_temporal(&setup, alpha_r, tier).map(|p| (p.c.re / alpha_r, p)),
        Observable::AlphaI0 => solve_spatial(&setup, alpha_r, tier).map(|s| (s.point.alpha.im.abs(), s.point)),
    };
    match solved {
        Ok((v, p)) => SweepPoint { nu, value: Some(v), residual: Some(p.residual), c: Some(p.c), error: None },
        Err(e) => SweepPoint { nu, value: None, residual: None, c: None, error: Some(e.to_string()) },
    }
}

/// Solve at every `nu` on a pool of `workers` threads and fit the power law.
pub fn sweep_scaling(
    base: &DispersionSetup,
    nus: &[f64],
    amplitude: f64,
    observable: Observable,
    tier: Tier,
    workers: usize,
) -> Result<SweepResult> {
    use rayon::prelude::*;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers.max(1))
        .build()
        .map_err(|e| err!(InvalidInput, "dispersion", "worker pool: {e}"))?;
    let points: Vec<SweepPoint> =
        pool.install(|| nus.par_iter().map(|&nu| sweep_point(base, nu, amplitude, observable, tier)).collect());
    let fit = if points.iter().all(|p| p.value.is_some()) {
        let xy: Vec<(f64, f64)> = points.iter().map(|p| (p.nu, p.value.unwrap())).collect();
        Some(fit_power_law(&xy)?)
    } else {
        None
    };
    Ok(SweepResult { points, fit })
}

/// `nu = 10^{-k}` for each `k` in `decades`.
pub fn decades(from: i32, to: i32) -> Vec<f64> {
    let (a, b) = if from <= to { (from, to) } else { (to, from) };
    (a..=b).map(|k| 10f64.powi(-k)).collect()
}
