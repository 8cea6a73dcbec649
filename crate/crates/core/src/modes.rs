//! Wall data of the slow and fast modes, and the half-line Helmholtz solver
//! behind the density equation.

use serde::Serialize;

use crate::airy_bvp::{fast_mode, FastMode};
use crate::context::WaveContext;
use crate::error::{err, Result};
use crate::grid::{sup, ComplexField, GridSpec};
use crate::langer::build_langer;
use crate::profiles::Profile;
use crate::rayleigh::{slow_asymptotics, slow_mode, SlowMode};
use crate::scaled::Scaled;
use crate::{C64, I};

/// Relative size of the last source sample above which the source is taken
/// not to decay on the grid.
const TAIL_TOLERANCE: f64 = 1e-6;
/// Default cap on density iterations.
pub const DEFAULT_DENSITY_ITERS: usize = 40;
/// Default plateau constant of the blended map.
pub const DEFAULT_CUTOFF: f64 = 1.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum BoundaryKind {
    Slow,
    Fast,
}

/// `u(0)` and `v(0)` of one mode.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct ModeBoundary {
    pub u0: C64,
    pub v0: C64,
    pub kind: BoundaryKind,
}

impl ModeBoundary {
    pub fn is_finite(&self) -> bool {
        self.u0.re.is_finite() && self.u0.im.is_finite() && self.v0.re.is_finite() && self.v0.im.is_finite()
    }
}

/// `f` with `(d^2 - beta^2) f = g`, decaying at infinity and satisfying
/// `f'(0) = beta f(0)`.
pub fn helmholtz_halfline(g: &ComplexField, beta: C64) -> Result<ComplexField> {
    if !(beta.re > 0.0) {
        return Err(err!(InvalidInput, "modes", "Re beta = {} must be positive", beta.re));
    }
    let grid = &g.grid;
    let top = sup(&g.values);
    if top == 0.0 {
        return Ok(ComplexField::zeros(grid.clone()));
    }
    let tail = g.values.last().unwrap().norm();
    if tail > TAIL_TOLERANCE * top {
        return Err(err!(Growth, "modes", "source tail {tail:.3e} against sup {top:.3e}"));
    }
    let y = grid.nodes();
    let left: Vec<Scaled> = y.iter().zip(&g.values).map(|(&z, v)| Scaled::exp(beta * z) * *v).collect();
    let right: Vec<Scaled> = y.iter().zip(&g.values).map(|(&z, v)| Scaled::exp(-beta * z) * *v).collect();
    let cl = grid.cumulative_left_scaled(&left);
    let cr = grid.cumulative_right_scaled(&right);
    let k = -0.5 / beta;
    let values = (0..y.len())
        .map(|i| {
            let s = Scaled::exp(-beta * y[i]) * cl[i] + Scaled::exp(beta * y[i]) * cr[i];
            k * s.value()
        })
        .collect();
    Ok(ComplexField::new(grid.clone(), values))
}

/// Density from the fixed-point iteration on the Helmholtz kernel.
#[derive(Debug, Clone)]
pub struct DensitySolution {
    pub rho: ComplexField,
    pub increment_norms: Vec<f64>,
}

impl DensitySolution {
    pub fn ratios(&self) -> Vec<f64> {
        self.increment_norms.windows(2).filter(|w| w[0] > 0.0).map(|w| w[1] / w[0]).collect()
    }
}

/// Profile samples for the density equation.
struct DensityCoefficients {
    w: Vec<C64>,
    u2: Vec<f64>,
    a: Vec<C64>,
}

impl DensityCoefficients {
    fn new(profile: &Profile, ctx: &WaveContext, grid: &GridSpec) -> Self {
        let m2 = ctx.m * ctx.m;
        let mut w = Vec::with_capacity(grid.len());
        let mut u2 = Vec::with_capacity(grid.len());
        for &y in grid.nodes() {
            w.push(profile.eval_k(y, 0) - ctx.c);
            u2.push(profile.eval_k(y, 2));
        }
        let a = w.iter().map(|x| 1.0 - m2 * x * x).collect();
        DensityCoefficients { w, u2, a }
    }
}

fn source(grid: &GridSpec, ctx: &WaveContext, q1: &ComplexField, q2: &ComplexField) -> Vec<C64> {
    let m2 = ctx.m * ctx.m;
    let dq2 = grid.derivative(&q2.values);
    q1.values.iter().zip(&dq2).map(|(a, b)| -I * ctx.alpha * m2 * a - m2 * b).collect()
}

/// `(d^2 - alpha^2) f` by spectral differentiation.
fn helmholtz_apply(grid: &GridSpec, f: &[C64], alpha: C64) -> Vec<C64> {
    let d2 = grid.derivative(&grid.derivative(f));
    d2.iter().zip(f).map(|(d, v)| d - alpha * alpha * v).collect()
}

/// `G = alpha^2 (A - A_inf) rho - i m^2 alpha sqrt(nu) (1 + lambda) (d^2 - alpha^2)((U - c) rho)
///      - i alpha m^2 sqrt(nu) U'' rho`.
fn iteration_source(grid: &GridSpec, ctx: &WaveContext, k: &DensityCoefficients, rho: &[C64]) -> Vec<C64> {
    let m2 = ctx.m * ctx.m;
    let sn = ctx.nu.sqrt();
    let a2 = ctx.alpha * ctx.alpha;
    let wr: Vec<C64> = k.w.iter().zip(rho).map(|(w, r)| w * r).collect();
    let lw = helmholtz_apply(grid, &wr, ctx.alpha);
    (0..grid.len())
        .map(|i| {
            a2 * (k.a[i] - ctx.a_inf) * rho[i] - I * m2 * ctx.alpha * sn * (1.0 + ctx.lambda) * lw[i]
                - I * ctx.alpha * m2 * sn * k.u2[i] * rho[i]
        })
        .collect()
}

/// Decaying density for the sources `q1`, `q2` as the sum of the Helmholtz iterates.
pub fn density_fixed_point(
    profile: &Profile,
    ctx: &WaveContext,
    q1: &ComplexField,
    q2: &ComplexField,
    max_iters: usize,
) -> Result<DensitySolution> {
    if !(ctx.m > 0.0) {
        return Err(err!(InvalidInput, "modes", "the density equation needs m > 0"));
    }
    let grid = q1.grid.clone();
    let k = DensityCoefficients::new(profile, ctx, &grid);
    let f0 = source(&grid, ctx, q1, q2);
    let mut term = helmholtz_halfline(&ComplexField::new(grid.clone(), f0), ctx.beta)?.values;
    let mut total = term.clone();
    let mut norms = vec![sup(&term)];
    for _ in 0..max_iters {
        let last = *norms.last().unwrap();
        if last <= 1e-15 * sup(&total) {
            break;
        }
        let g = iteration_source(&grid, ctx, &k, &term);
        term = helmholtz_halfline(&ComplexField::new(grid.clone(), g), ctx.beta)?.values;
        let n = sup(&term);
        if n >= 0.9 * last {
            return Err(err!(Divergence, "modes", "density increment ratio {:.3}", n / last));
        }
        norms.push(n);
        for (t, v) in total.iter_mut().zip(&term) {
            *t += v;
        }
    }
    Ok(DensitySolution { rho: ComplexField::new(grid, total), increment_norms: norms })
}

/// Pointwise defect of the second-order density equation, relative to the
/// sup of its source `i alpha q1 + q2'`.
pub fn density_residual(
    profile: &Profile,
    ctx: &WaveContext,
    q1: &ComplexField,
    q2: &ComplexField,
    rho: &ComplexField,
) -> Vec<f64> {
    let grid = &rho.grid;
    let k = DensityCoefficients::new(profile, ctx, grid);
    let m2 = ctx.m * ctx.m;
    let sn = ctx.nu.sqrt();
    let a2 = ctx.alpha * ctx.alpha;
    let r = &rho.values;
    let lr = helmholtz_apply(grid, r, ctx.alpha);
    let wr: Vec<C64> = k.w.iter().zip(r).map(|(w, v)| w * v).collect();
    let lw = helmholtz_apply(grid, &wr, ctx.alpha);
    let dq2 = grid.derivative(&q2.values);
    let rhs: Vec<C64> = (0..grid.len()).map(|i| I * ctx.alpha * q1.values[i] + dq2[i]).collect();
    let scale = sup(&rhs).max(1e-300);
    (0..grid.len())
        .map(|i| {
            let lhs = lr[i] / m2 + a2 * k.w[i] * k.w[i] * r[i]
                + I * ctx.alpha * sn * (1.0 + ctx.lambda) * lw[i]
                + I * ctx.alpha * sn * k.u2[i] * r[i];
            (lhs + rhs[i]).norm() / scale
        })
        .collect()
}

/// Wall density `m^2 A(0)^{-1} (eps (phi''' - alpha^2 phi') + c phi' + U'(0) phi)`.
pub fn wall_density(mode: &SlowMode, ctx: &WaveContext) -> C64 {
    let a0 = ctx.a_of(0.0);
    let inner = ctx.eps * (mode.wall_third - ctx.alpha * ctx.alpha * mode.wall_slope)
        + ctx.c * mode.wall_slope
        + ctx.slope_wall * mode.wall_value;
    ctx.m * ctx.m / a0 * inner
}

pub fn slow_boundary_of(mode: &SlowMode, ctx: &WaveContext) -> ModeBoundary {
    let rho0 = wall_density(mode, ctx);
    ModeBoundary { u0: mode.wall_slope + ctx.c * rho0, v0: -I * ctx.alpha * mode.wall_value, kind: BoundaryKind::Slow }
}

pub fn slow_boundary(profile: &Profile, ctx: &WaveContext) -> Result<ModeBoundary> {
    Ok(slow_boundary_of(&slow_mode(profile, ctx)?, ctx))
}

pub fn fast_boundary_of(mode: &FastMode, ctx: &WaveContext) -> ModeBoundary {
    ModeBoundary { u0: mode.dpsi_wall, v0: -I * ctx.alpha * mode.psi_wall, kind: BoundaryKind::Fast }
}

/// Fast wall data including the `Err` correction.
pub fn fast_boundary(profile: &Profile, ctx: &WaveContext) -> Result<ModeBoundary> {
    let map = build_langer(profile, ctx, DEFAULT_CUTOFF)?;
    Ok(fast_boundary_of(&fast_mode(profile, ctx, &map, true)?, ctx))
}

/// Both boundary data with their deviation from the closed forms.
#[derive(Debug, Clone, Serialize)]
pub struct BoundaryReport {
    pub u_s0: C64,
    pub v_s0: C64,
    pub u_f0: C64,
    pub v_f0: C64,
    /// `|u_s0 - (1 - m^2) U'(0)|`.
    pub slow_slope_delta: f64,
    /// `|phi(0) - (-(1 - m^2) c + beta / U'(Y_c))|`.
    pub slow_value_delta: f64,
    /// `|psi(0) / psi'(0) - A~(2, 0) / A~(1, 0)|`.
    pub fast_ratio_delta: f64,
}

pub fn boundary_report(profile: &Profile, ctx: &WaveContext) -> Result<BoundaryReport> {
    let slow = slow_mode(profile, ctx)?;
    let s = slow_boundary_of(&slow, ctx);
    let map = build_langer(profile, ctx, DEFAULT_CUTOFF)?;
    let fm = fast_mode(profile, ctx, &map, true)?;
    let f = fast_boundary_of(&fm, ctx);
    let a = slow_asymptotics(ctx);
    Ok(BoundaryReport {
        u_s0: s.u0,
        v_s0: s.v0,
        u_f0: f.u0,
        v_f0: f.v0,
        slow_slope_delta: (s.u0 - a.wall_slope).norm(),
        slow_value_delta: (slow.wall_value - a.wall_value).norm(),
        fast_ratio_delta: (fm.psi_wall / fm.dpsi_wall - fm.wall_ratio).norm(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::GridBuilder;
    use std::sync::Arc;

    fn long_grid(y_max: f64, width: f64) -> Arc<GridSpec> {
        Arc::new(GridBuilder::new(y_max).max_width(width).feature(0.0, 0.1).build().unwrap())
    }

    #[test]
    fn zero_source() {
        let g = long_grid(60.0, 1.0);
        let f = helmholtz_halfline(&ComplexField::zeros(g), C64::new(0.5, 0.1)).unwrap();
        assert_eq!(f.sup(), 0.0);
    }

    #[test]
    fn manufactured_solution() {
        let beta = C64::new(0.5, 0.1);
        let gamma = 2.0 * beta.re;
        let g = long_grid(60.0, 1.0);
        let src = ComplexField::from_fn(g.clone(), |y| (gamma * gamma - beta * beta) * (-gamma * y).exp());
        let f = helmholtz_halfline(&src, beta).unwrap();
        // the kernel adds the decaying homogeneous part fixed by f'(0) = beta f(0)
        let k = -(gamma + beta) / (2.0 * beta);
        let err = g
            .nodes()
            .iter()
            .zip(&f.values)
            .map(|(&y, v)| (v - (-gamma * y).exp() - k * (-beta * y).exp()).norm())
            .fold(0.0, f64::max);
        assert!(err < 1e-8, "{err}");
    }

    #[test]
    fn operator_residual() {
        let beta = C64::new(0.4, -0.05);
        let g = long_grid(80.0, 1.0);
        let src = ComplexField::from_fn(g.clone(), |y| C64::new(1.0 + y, 0.5 * y * y) * (-y).exp());
        let f = helmholtz_halfline(&src, beta).unwrap();
        let d2 = g.derivative(&g.derivative(&f.values));
        let r = (0..g.len()).map(|i| (d2[i] - beta * beta * f.values[i] - src.values[i]).norm()).fold(0.0, f64::max);
        assert!(r < 1e-7 * src.sup(), "{r}");
    }

    #[test]
    fn non_decaying_source_is_rejected() {
        let g = long_grid(20.0, 1.0);
        let src = ComplexField::from_fn(g, |_| C64::new(1.0, 0.0));
        assert!(matches!(helmholtz_halfline(&src, C64::new(0.5, 0.0)), Err(crate::Error::Growth { .. })));
    }

    fn density_case() -> (Profile, WaveContext, ComplexField, ComplexField) {
        let p = Profile::blasius_default().unwrap();
        let ctx = WaveContext::new(&p, 1e-8, 0.5, 0.0, C64::new(0.3, 0.0), C64::new(0.2, 0.02)).unwrap();
        let g = Arc::new(
            GridBuilder::new(200.0).max_width(1.5).feature(0.0, 0.05).feature(ctx.yc, 0.05).build().unwrap(),
        );
        let r = ctx.beta.re;
        let q1 = ComplexField::from_fn(g.clone(), |y| C64::new(1.0 + y, 0.3) * (-r * y).exp());
        let q2 = ComplexField::from_fn(g, |y| C64::new(0.5, -y) * (-1.5 * r * y).exp());
        (p, ctx, q1, q2)
    }

    #[test]
    fn density_zero_source() {
        let (p, ctx, q1, _) = density_case();
        let z = ComplexField::zeros(q1.grid.clone());
        let s = density_fixed_point(&p, &ctx, &z, &z, 40).unwrap();
        assert_eq!(s.rho.sup(), 0.0);
    }

    #[test]
    fn density_solves_full_equation() {
        let (p, ctx, q1, q2) = density_case();
        let s = density_fixed_point(&p, &ctx, &q1, &q2, 40).unwrap();
        let q = s.ratios().into_iter().fold(0.0, f64::max);
        assert!(q <= 2.0 * ctx.alpha.norm(), "{q}");
        let r = density_residual(&p, &ctx, &q1, &q2, &s.rho);
        let worst = r.iter().fold(0.0f64, |a, &b| a.max(b));
        assert!(worst < 1e-5, "{worst}");
    }

    #[test]
    fn helmholtz_is_linear() {
        let g = long_grid(60.0, 1.0);
        let beta = C64::new(0.6, 0.05);
        let a = ComplexField::from_fn(g.clone(), |y| C64::new(y.sin(), 1.0) * (-1.5 * y).exp());
        let b = ComplexField::from_fn(g.clone(), |y| C64::new(1.0, y) * (-2.0 * y).exp());
        let sum = ComplexField::new(g.clone(), a.values.iter().zip(&b.values).map(|(x, y)| x + y).collect());
        let fa = helmholtz_halfline(&a, beta).unwrap();
        let fb = helmholtz_halfline(&b, beta).unwrap();
        let fs = helmholtz_halfline(&sum, beta).unwrap();
        let d = (0..g.len()).map(|i| (fs.values[i] - fa.values[i] - fb.values[i]).norm()).fold(0.0, f64::max);
        assert!(d < 1e-10 * fs.sup());
    }

    fn ctx_at(nu: f64, m: f64) -> (Profile, WaveContext) {
        let p = Profile::blasius_default().unwrap();
        let ctx = WaveContext::new(&p, nu, m, 0.0, C64::new(0.05, 0.0), C64::new(0.15, 0.01)).unwrap();
        (p, ctx)
    }

    #[test]
    fn slow_wall_data() {
        let (p, ctx) = ctx_at(1e-8, 0.3);
        let mode = slow_mode(&p, &ctx).unwrap();
        let b = slow_boundary_of(&mode, &ctx);
        assert!(b.is_finite());
        assert!(((b.v0 / (-I * ctx.alpha)) - mode.wall_value).norm() <= 1e-10 * mode.wall_value.norm());
        let lead = (1.0 - ctx.m * ctx.m) * ctx.slope_wall;
        let log = ctx.c.im.ln().abs();
        assert!((b.u0 - lead).norm() <= 50.0 * ctx.alpha.norm() * log.powi(4), "{}", b.u0);
        assert!((b.u0 - lead).norm() <= 0.3 * lead);
    }

    #[test]
    fn slow_wall_data_incompressible() {
        let (p, ctx) = ctx_at(1e-8, 0.0);
        let b = slow_boundary(&p, &ctx).unwrap();
        assert!((b.u0 - ctx.slope_wall).norm() <= 0.3 * ctx.slope_wall);
    }

    #[test]
    fn fast_wall_data() {
        let (p, ctx) = ctx_at(1e-8, 0.3);
        let map = build_langer(&p, &ctx, DEFAULT_CUTOFF).unwrap();
        let fm = fast_mode(&p, &ctx, &map, true).unwrap();
        let b = fast_boundary_of(&fm, &ctx);
        let want = -I * ctx.alpha * fm.psi_wall / fm.dpsi_wall;
        assert!((b.v0 / b.u0 - want).norm() <= 1e-10 * want.norm());
        let e = ctx.eps.norm();
        let c = ctx.c.norm();
        let r1 = fm.psi_wall.norm() / (e / c);
        let r2 = fm.dpsi_wall.norm() / (e.sqrt() / c.sqrt());
        assert!((0.1..=10.0).contains(&r1), "{r1}");
        assert!((0.1..=10.0).contains(&r2), "{r2}");
    }

    #[test]
    fn fast_wall_slope_scaling() {
        let (p, c1) = ctx_at(1e-10, 0.3);
        let (_, c2) = ctx_at(0.5e-10, 0.3);
        let u1 = fast_boundary(&p, &c1).unwrap().u0.norm();
        let u2 = fast_boundary(&p, &c2).unwrap().u0.norm();
        let want = 0.5f64.powf(0.25);
        assert!(((u2 / u1) / want - 1.0).abs() <= 0.3, "{}", u2 / u1);
    }

    #[test]
    fn boundary_data_continuous() {
        let (p, ctx) = ctx_at(1e-8, 0.3);
        let base = boundary_report(&p, &ctx).unwrap();
        let ctx2 = WaveContext::new(&p, 1e-8, 0.3, 0.0, ctx.alpha * 1.01, ctx.c * 1.01).unwrap();
        let moved = boundary_report(&p, &ctx2).unwrap();
        for (a, b) in [(base.u_s0, moved.u_s0), (base.v_s0, moved.v_s0), (base.u_f0, moved.u_f0), (base.v_f0, moved.v_f0)] {
            assert!((a - b).norm() <= 0.1 * a.norm());
        }
    }
}
