//! Rayleigh-type equation `(U - c) Lambda phi - (A^{-1} U')' phi = F` solved by
//! the nested-integral iteration, and the decaying slow mode built on it.

use std::sync::Arc;

use serde::Serialize;

use crate::context::WaveContext;
use crate::error::{err, Result};
use crate::grid::{sup, ComplexField, GridBuilder, GridSpec};
use crate::profiles::Profile;
use crate::C64;

/// Default cap on the number of iteration terms.
pub const DEFAULT_MAX_ITERS: usize = 20;

/// Profile samples and the coefficients of the Rayleigh operator on a grid.
#[derive(Debug, Clone)]
pub struct Coefficients {
    pub grid: Arc<GridSpec>,
    /// `U - c`
    pub w: Vec<C64>,
    /// `U'`
    pub u1: Vec<f64>,
    /// `U''`
    pub u2: Vec<f64>,
    /// `A = 1 - m^2 (U - c)^2`
    pub a: Vec<C64>,
    /// `A'`
    pub da: Vec<C64>,
}

impl Coefficients {
    pub fn new(profile: &Profile, ctx: &WaveContext, grid: Arc<GridSpec>) -> Self {
        let m2 = ctx.m * ctx.m;
        let mut w = Vec::with_capacity(grid.len());
        let mut u1 = Vec::with_capacity(grid.len());
        let mut u2 = Vec::with_capacity(grid.len());
        for &y in grid.nodes() {
            let [u, d1, d2, _, _] = profile.eval_all(y);
            w.push(u - ctx.c);
            u1.push(d1);
            u2.push(d2);
        }
        let a = w.iter().map(|&x| 1.0 - m2 * x * x).collect();
        let da = w.iter().zip(&u1).map(|(&x, &d)| -2.0 * m2 * x * d).collect();
        Coefficients { grid, w, u1, u2, a, da }
    }

    /// `(U - c) Lambda phi - (A^{-1} U')' phi` by spectral differentiation.
    pub fn apply(&self, phi: &[C64], alpha: C64) -> Vec<C64> {
        let g = &self.grid;
        let d1 = g.derivative(phi);
        let flux: Vec<C64> = d1.iter().zip(&self.a).map(|(d, a)| d / a).collect();
        let dflux = g.derivative(&flux);
        (0..g.len())
            .map(|i| {
                let a = self.a[i];
                // (A^{-1} U')' = U''/A - U' A'/A^2
                let q = self.u2[i] / a - self.u1[i] * self.da[i] / (a * a);
                self.w[i] * (dflux[i] - alpha * alpha * phi[i]) - q * phi[i]
            })
            .collect()
    }

    /// `(U - c) int_Y^inf A(Y') int_{Y'}^inf s / (U - c)^2`.
    fn double_integral(&self, s: &[C64]) -> Vec<C64> {
        let inner = self.grid.cumulative_right(s);
        let mid: Vec<C64> = inner.iter().zip(&self.a).zip(&self.w).map(|((v, a), w)| v * a / (w * w)).collect();
        let outer = self.grid.cumulative_right(&mid);
        outer.iter().zip(&self.w).map(|(o, w)| o * w).collect()
    }
}

/// Graded grid for slow quantities: panels of width `~c_i / (4 U'(Y_c))` at the
/// critical layer, growing geometrically, capped by the profile and decay scales.
pub fn slow_grid(profile: &Profile, ctx: &WaveContext, y_max: f64) -> Result<GridSpec> {
    let layer = (ctx.c.im.abs() / ctx.slope_c).max(1e-12);
    let sublayer = ctx.eps.norm().cbrt();
    let w0 = 0.25 * layer.min(sublayer);
    let profile_width = 0.5 * profile.length_scale();
    let y_sat = profile.saturation_height();
    let decay_width = 3.0 / ctx.beta.norm().max(1e-3);
    GridBuilder::new(y_max)
        .feature(ctx.yc, w0)
        .feature(0.0, (0.1 * profile_width).max(w0))
        .center(ctx.yc)
        .max_width(decay_width)
        .width_fn(move |y| if y <= y_sat { profile_width } else { decay_width })
        .build()
}

/// Default truncation height for slow quantities.
pub fn default_y_max(profile: &Profile, ctx: &WaveContext) -> f64 {
    let _ = ctx;
    (40.0f64).max(profile.saturation_height() + 5.0 * profile.length_scale())
}

/// Result of the nested-integral iteration.
#[derive(Debug, Clone)]
pub struct RaySolution {
    pub phi: ComplexField,
    /// Sup norms of the successive terms.
    pub term_norms: Vec<f64>,
}

impl RaySolution {
    /// Ratios `|phi^{(j+1)}| / |phi^{(j)}|`.
    pub fn ratios(&self) -> Vec<f64> {
        self.term_norms.windows(2).filter(|w| w[0] > 0.0).map(|w| w[1] / w[0]).collect()
    }
}

/// Solve `Ray[phi] = F` as the sum of the iteration terms.
pub fn solve_ray_nonhomog(
    coef: &Coefficients,
    f: &ComplexField,
    ctx: &WaveContext,
    max_iters: usize,
) -> Result<RaySolution> {
    if !(ctx.c.im > 0.0) {
        return Err(err!(InvalidInput, "rayleigh", "c_i = {} must be positive", ctx.c.im));
    }
    if !f.is_finite() {
        return Err(err!(InvalidInput, "rayleigh", "source has non-finite samples"));
    }
    let grid = coef.grid.clone();
    let alpha2 = ctx.alpha * ctx.alpha;
    let mut term = coef.double_integral(&f.values);
    let mut total = term.clone();
    let mut norms = vec![sup(&term)];
    if norms[0] == 0.0 {
        return Ok(RaySolution { phi: ComplexField::new(grid, total), term_norms: norms });
    }
    let mut growing = 0;
    for _ in 0..max_iters {
        let src: Vec<C64> = term.iter().zip(&coef.w).map(|(p, w)| p * w * alpha2).collect();
        term = coef.double_integral(&src);
        let n = sup(&term);
        let ratio = n / norms.last().unwrap();
        norms.push(n);
        growing = if ratio >= 0.9 { growing + 1 } else { 0 };
        if growing >= 3 || !n.is_finite() {
            return Err(err!(
                Divergence,
                "rayleigh",
                "term ratio {ratio:.3} for three iterations (|alpha|^2 |log c_i| = {:.3e})",
                alpha2.norm() * ctx.c.im.ln().abs()
            ));
        }
        for (t, v) in total.iter_mut().zip(&term) {
            *t += v;
        }
        if n <= 1e-15 * sup(&total) {
            break;
        }
    }
    Ok(RaySolution { phi: ComplexField::new(grid, total), term_norms: norms })
}

/// Decaying solution of the homogeneous Rayleigh equation.
#[derive(Debug, Clone)]
pub struct SlowMode {
    pub phi: ComplexField,
    pub phi0: ComplexField,
    pub wall_value: C64,
    pub wall_slope: C64,
    /// `phi'''(0)`, used by the wall density.
    pub wall_third: C64,
    pub term_norms: Vec<f64>,
}

/// `phi_Ray^{(0)} = 2 beta e^{beta Y} (U - c) int_Y^inf A / ((U - c)^2 e^{2 beta Z})`,
/// with the part beyond the grid added in closed form (`U = 1` there).
pub fn leading_slow_mode(coef: &Coefficients, ctx: &WaveContext) -> Vec<C64> {
    let g = &coef.grid;
    let beta = ctx.beta;
    let integrand: Vec<C64> = g
        .nodes()
        .iter()
        .zip(&coef.a)
        .zip(&coef.w)
        .map(|((&y, a), w)| a / (w * w) * (-2.0 * beta * y).exp())
        .collect();
    let y_max = g.y_max();
    let one_c = 1.0 - ctx.c;
    let tail = ctx.a_inf / (one_c * one_c) * (-2.0 * beta * y_max).exp() / (2.0 * beta);
    let cum = g.cumulative_right(&integrand);
    g.nodes()
        .iter()
        .zip(&cum)
        .zip(&coef.w)
        .map(|((&y, v), w)| 2.0 * beta * (beta * y).exp() * w * (v + tail))
        .collect()
}

/// Slow mode `phi_Ray = phi_Ray^{(0)} + phi_R` on the default slow grid.
pub fn slow_mode(profile: &Profile, ctx: &WaveContext) -> Result<SlowMode> {
    let grid = Arc::new(slow_grid(profile, ctx, default_y_max(profile, ctx))?);
    slow_mode_on(&Coefficients::new(profile, ctx, grid), ctx, DEFAULT_MAX_ITERS)
}

pub fn slow_mode_on(coef: &Coefficients, ctx: &WaveContext, max_iters: usize) -> Result<SlowMode> {
    if !(ctx.c.im > 0.0) {
        return Err(err!(InvalidInput, "rayleigh", "c_i = {} must be positive", ctx.c.im));
    }
    let g = coef.grid.clone();
    let beta = ctx.beta;
    let alpha2 = ctx.alpha * ctx.alpha;
    let phi0 = leading_slow_mode(coef, ctx);
    let rhs: Vec<C64> = (0..g.len())
        .map(|i| {
            let (a, w, p) = (coef.a[i], coef.w[i], phi0[i]);
            let r = 2.0 * beta * coef.u1[i] / a * p - beta * coef.da[i] / (a * a) * w * p
                + (beta * beta / a - alpha2) * w * p;
            -r
        })
        .collect();
    let sol = solve_ray_nonhomog(coef, &ComplexField::new(g.clone(), rhs), ctx, max_iters)?;
    let phi: Vec<C64> = phi0.iter().zip(&sol.phi.values).map(|(a, b)| a + b).collect();
    let d1 = g.derivative(&phi);
    let d2 = g.derivative(&d1);
    let wall_third = g.derivative_at_wall(&d2);
    let wall_slope = g.derivative_at_wall(&phi);
    Ok(SlowMode {
        wall_value: phi[0],
        wall_slope,
        wall_third,
        phi: ComplexField::new(g.clone(), phi),
        phi0: ComplexField::new(g, phi0),
        term_norms: sol.term_norms,
    })
}

/// Leading-order wall data of the slow mode.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct SlowAsymptotics {
    pub wall_value: C64,
    pub wall_slope: C64,
    pub ratio: C64,
}

pub fn slow_asymptotics(ctx: &WaveContext) -> SlowAsymptotics {
    let s = 1.0 - ctx.m * ctx.m;
    SlowAsymptotics {
        wall_value: -s * ctx.c + ctx.beta / ctx.slope_c,
        wall_slope: C64::new(s * ctx.slope_wall, 0.0),
        ratio: -ctx.c / ctx.slope_wall + ctx.beta / (s * ctx.slope_wall * ctx.slope_wall),
    }
}

/// `phi_Ray(0) / phi_Ray'(0)`.
pub fn wall_ratio(mode: &SlowMode) -> Result<C64> {
    if !(mode.wall_slope.norm() > 1e-12) {
        return Err(err!(Degenerate, "rayleigh", "wall slope {} is below 1e-12", mode.wall_slope));
    }
    Ok(mode.wall_value / mode.wall_slope)
}

/// `|int_Y^{Y0} G/(U - c)^2 - G(Y) / (U'(Y_c) (U(Y) - c))|` for `G = 1`, by
/// adaptive quadrature split at the critical layer.
pub fn singular_split_defect(profile: &Profile, ctx: &WaveContext, y: f64, y0: f64) -> Result<f64> {
    let f = |z: f64| {
        let w = profile.eval_k(z, 0) - ctx.c;
        1.0 / (w * w)
    };
    let h = ctx.c.im / ctx.slope_c;
    let mut pts = vec![y, (ctx.yc - 20.0 * h).max(y), ctx.yc, (ctx.yc + 20.0 * h).min(y0), y0];
    pts.dedup();
    let mut total = C64::new(0.0, 0.0);
    for w in pts.windows(2) {
        total += crate::quad::integrate(f, w[0], w[1], 1e-13, 1e-11)?;
    }
    let wy = profile.eval_k(y, 0) - ctx.c;
    Ok((total - 1.0 / (ctx.slope_c * wy)).norm())
}

/// Height `Y_0`: first node with `U >= c_r + 0.25`.
pub fn reference_height(profile: &Profile, grid: &GridSpec, c_r: f64) -> f64 {
    grid.nodes().iter().copied().find(|&y| profile.eval_k(y, 0) >= c_r + 0.25).unwrap_or(grid.y_max())
}
