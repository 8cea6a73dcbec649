//! Modified Langer transformation and the error coefficients of the
//! approximate Airy equation.
//!
//! The outer map is written as `eta_out = s Phi(s)` with `s = Y - Y_c` and
//! `Phi = (3 H / 2)^{2/3}`, `H(s) = int_0^1 2u^2 sqrt(D(s u^2) / U'(Y_c)) du`,
//! `D(x) = (U(Y_c + x) - c_r) / x`. `Phi` is smooth through the critical
//! point, so it is tabulated once on a panel grid and interpolated. First and
//! second derivatives follow from `U'(Y_c) eta (eta')^2 = U - c_r`.

use std::sync::Arc;

use serde::Serialize;

use crate::context::WaveContext;
use crate::error::{err, Result};
use crate::grid::GridSpec;
use crate::profiles::Profile;
use crate::C64;

/// Below this `|s|` the Taylor series of the map replaces the identity.
const SERIES_RADIUS: f64 = 1e-5;
/// Below this `|x|` the difference quotient `D` uses its Taylor series.
const QUOTIENT_RADIUS: f64 = 1e-5;

/// Smooth plateau `chi` with `chi = 1` on `[0, 1]` and `chi = 0` on `[2, inf)`,
/// returned with its first two derivatives.
pub fn chi(t: f64) -> (f64, f64, f64) {
    let t = t.abs();
    if t <= 1.0 {
        return (1.0, 0.0, 0.0);
    }
    if t >= 2.0 {
        return (0.0, 0.0, 0.0);
    }
    // g(tau) = psi(1 - tau) / (psi(1 - tau) + psi(tau)), psi(x) = exp(-1/x)
    let tau = t - 1.0;
    let (a, b) = (1.0 - tau, tau);
    // ratio r = psi(b) / psi(a) = exp(1/a - 1/b); chi = 1 / (1 + r)
    let q = 1.0 / a - 1.0 / b;
    let dq = 1.0 / (a * a) + 1.0 / (b * b);
    let d2q = 2.0 / (a * a * a) - 2.0 / (b * b * b);
    if q > 700.0 {
        return (0.0, 0.0, 0.0);
    }
    if q < -700.0 {
        return (1.0, 0.0, 0.0);
    }
    let g = 1.0 / (1.0 + q.exp());
    // r g = 1 - g keeps the products bounded near the ends
    let h = g * (1.0 - g);
    let dg = -dq * h;
    let d2g = -(dq * dq + d2q) * h + 2.0 * dq * dq * (1.0 - g) * h;
    (g, dg, d2g)
}

/// Values of the real part of the map and its first two derivatives.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct LangerPoint {
    pub eta_r: f64,
    pub d_eta: f64,
    pub d2_eta: f64,
}

/// The blended Langer map for one wave context.
#[derive(Debug, Clone)]
pub struct LangerMap {
    profile: Profile,
    pub yc: f64,
    pub c_r: f64,
    pub slope_c: f64,
    pub kappa: f64,
    pub cutoff_m: f64,
    /// Constant imaginary shift `-c_i / U'(Y_c)`.
    pub eta_i: f64,
    phi_grid: Arc<GridSpec>,
    phi: Vec<C64>,
    /// End of the table, beyond which `U = 1` to double precision.
    y_tab: f64,
    eta_tab: f64,
    far_rate: f64,
    series: (f64, f64),
}

impl LangerMap {
    /// Width `kappa^{-1} M` of the inner region.
    pub fn seam_width(&self) -> f64 {
        self.cutoff_m / self.kappa
    }

    pub fn profile(&self) -> &Profile {
        &self.profile
    }

    fn quotient(&self, x: f64) -> f64 {
        quotient(&self.profile, self.yc, self.c_r, x)
    }

    /// `Phi` with `eta_out = (Y - Y_c) Phi`.
    fn phi_at(&self, y: f64) -> f64 {
        self.phi_grid.interpolate(&self.phi, y).re
    }

    /// Outer map `eta_out` and its first two derivatives.
    pub fn eta_out(&self, y: f64) -> LangerPoint {
        let s = y - self.yc;
        let (b, d) = self.series;
        if s.abs() < SERIES_RADIUS {
            return LangerPoint {
                eta_r: s + b * s * s + d * s * s * s,
                d_eta: 1.0 + 2.0 * b * s + 3.0 * d * s * s,
                d2_eta: 2.0 * b + 6.0 * d * s,
            };
        }
        let eta = if y <= self.y_tab {
            s * self.phi_at(y)
        } else {
            (self.eta_tab.powf(1.5) + 1.5 * self.far_rate * (y - self.y_tab)).powf(2.0 / 3.0)
        };
        let dq = self.quotient(s);
        let d_eta = (s * dq / (self.slope_c * eta)).sqrt();
        let u1 = self.profile.eval_k(y, 1);
        let d2_eta = (u1 - self.slope_c * d_eta.powi(3)) / (2.0 * self.slope_c * eta * d_eta);
        LangerPoint { eta_r: eta, d_eta, d2_eta }
    }

    /// Blended real part `eta_r` and its first two derivatives.
    pub fn eval(&self, y: f64) -> LangerPoint {
        let s = y - self.yc;
        let w = self.seam_width();
        let t = s.abs() / w;
        if t <= 1.0 {
            return LangerPoint { eta_r: s, d_eta: 1.0, d2_eta: 0.0 };
        }
        let out = self.eta_out(y);
        if t >= 2.0 {
            return out;
        }
        let (g, dg, d2g) = chi(t);
        let sg = s.signum();
        let diff = s - out.eta_r;
        LangerPoint {
            eta_r: g * s + (1.0 - g) * out.eta_r,
            d_eta: dg * sg / w * diff + g + (1.0 - g) * out.d_eta,
            d2_eta: d2g / (w * w) * diff + 2.0 * dg * sg / w * (1.0 - out.d_eta) + (1.0 - g) * out.d2_eta,
        }
    }

    pub fn eta_r(&self, y: f64) -> f64 {
        self.eval(y).eta_r
    }

    pub fn d_eta(&self, y: f64) -> f64 {
        self.eval(y).d_eta
    }

    pub fn d2_eta(&self, y: f64) -> f64 {
        self.eval(y).d2_eta
    }

    /// Complex map `eta_r + i eta_i`.
    pub fn eta(&self, y: f64) -> C64 {
        C64::new(self.eta_r(y), self.eta_i)
    }

    /// Largest radius `L <= l_max` on which `|eta_out - s| <= constant s^2`,
    /// sampled on `n` points per side.
    pub fn quadratic_radius(&self, constant: f64, l_max: f64, n: usize) -> f64 {
        for k in 1..=n {
            let s = l_max * k as f64 / n as f64;
            for y in [self.yc + s, self.yc - s] {
                if y >= 0.0 && (self.eta_out(y).eta_r - (y - self.yc)).abs() > constant * s * s {
                    return l_max * (k - 1) as f64 / n as f64;
                }
            }
        }
        l_max
    }
}

fn quotient(profile: &Profile, yc: f64, c_r: f64, x: f64) -> f64 {
    if x.abs() < QUOTIENT_RADIUS {
        let [_, u1, u2, u3, _] = profile.eval_all(yc);
        return u1 + u2 * x / 2.0 + u3 * x * x / 6.0;
    }
    let y = yc + x;
    // U - c_r from the deficit keeps the far field free of cancellation
    let diff = if y > yc { (1.0 - c_r) - profile.deficit(y) } else { profile.eval_k(y, 0) - c_r };
    diff / x
}

/// `Phi(s) = (3 H(s) / 2)^{2/3}` by panel Clenshaw–Curtis quadrature in `u`.
fn phi_value(profile: &Profile, yc: f64, c_r: f64, slope_c: f64, s: f64, ugrid: &GridSpec) -> f64 {
    let vals: Vec<C64> = ugrid
        .nodes()
        .iter()
        .map(|&u| {
            let d = quotient(profile, yc, c_r, s * u * u);
            C64::new(2.0 * u * u * (d / slope_c).max(0.0).sqrt(), 0.0)
        })
        .collect();
    let h = ugrid.integral(&vals).re;
    (1.5 * h).powf(2.0 / 3.0)
}

/// Build the blended map for `ctx`; `m_cut` is the plateau constant `M`.
pub fn build_langer(profile: &Profile, ctx: &WaveContext, m_cut: f64) -> Result<LangerMap> {
    if !(m_cut >= 1.0) {
        return Err(err!(InvalidInput, "langer", "cutoff M = {m_cut} must be at least 1"));
    }
    let c_r = ctx.c.re;
    if !(c_r < 1.0) {
        return Err(err!(NegativeRadicand, "langer", "c_r = {c_r} is not below sup U_s = 1"));
    }
    if ctx.c.im < 0.0 {
        return Err(err!(InvalidInput, "langer", "c_i = {} must be non-negative", ctx.c.im));
    }
    let yc = ctx.yc;
    let slope_c = ctx.slope_c;
    let [_, _, u2, u3, _] = profile.eval_all(yc);
    let (a1, a2, a3) = (slope_c, u2 / 2.0, u3 / 6.0);
    let b = a2 / (5.0 * a1);
    let d = (a3 / a1 - 8.0 * b * b) / 7.0;

    let y_tab = profile.saturation_height() + 2.0 * profile.length_scale();
    let width = (0.25 * profile.length_scale()).min(0.5);
    let panels = ((y_tab / width).ceil() as usize).max(4);
    let phi_grid = Arc::new(GridSpec::uniform(y_tab, panels));
    let ugrid = GridSpec::uniform(1.0, 16);
    let phi: Vec<C64> = phi_grid
        .nodes()
        .iter()
        .map(|&y| C64::new(phi_value(profile, yc, c_r, slope_c, y - yc, &ugrid), 0.0))
        .collect();
    let eta_tab = (y_tab - yc) * phi.last().unwrap().re;
    let far_rate = ((1.0 - c_r) / slope_c).sqrt();
    let map = LangerMap {
        profile: profile.clone(),
        yc,
        c_r,
        slope_c,
        kappa: ctx.kappa,
        cutoff_m: m_cut,
        eta_i: ctx.eta_i(),
        phi_grid,
        phi,
        y_tab,
        eta_tab,
        far_rate,
        series: (b, d),
    };
    check_seams(&map)?;
    Ok(map)
}

/// Compare the analytic first derivative against central differences on both
/// sides of each seam.
fn check_seams(map: &LangerMap) -> Result<()> {
    let w = map.seam_width();
    let h = 1e-4 * w;
    for edge in [-2.0, -1.0, 1.0, 2.0] {
        for side in [-3.0, 3.0] {
            let y = map.yc + edge * w + side * h;
            if y - h < 0.0 {
                continue;
            }
            let fd = (map.eta_r(y + h) - map.eta_r(y - h)) / (2.0 * h);
            let an = map.d_eta(y);
            if (fd - an).abs() > 1e-4 * an.abs().max(1.0) {
                return Err(err!(SeamDiscontinuity, "langer", "d eta jumps near Y = {y}: {an} vs {fd}"));
            }
        }
    }
    Ok(())
}

/// `(Err_1, Err_2)` at `y`.
pub fn err_terms(map: &LangerMap, ctx: &WaveContext, y: f64) -> (C64, C64) {
    let p = map.eval(y);
    let eta = C64::new(p.eta_r, map.eta_i);
    let u = map.profile.eval_k(y, 0);
    let e1 = map.slope_c * eta * p.d_eta * p.d_eta - ctx.eps * ctx.alpha * ctx.alpha - (u - ctx.c);
    let e2 = ctx.eps * p.d2_eta / p.d_eta;
    (e1, e2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::profiles::{make_analytic_profile, ProfileKind};

    fn blasius_ctx(nu: f64, c: C64) -> (Profile, WaveContext) {
        let p = Profile::blasius_default().unwrap();
        let ctx = WaveContext::new(&p, nu, 0.3, 0.0, C64::new(0.05, 0.0), c).unwrap();
        (p, ctx)
    }

    #[test]
    fn plateau_values() {
        assert_eq!(chi(0.5), (1.0, 0.0, 0.0));
        assert_eq!(chi(2.5), (0.0, 0.0, 0.0));
        let (g, _, _) = chi(1.5);
        assert!((g - 0.5).abs() < 1e-15);
        for &t in &[1.1, 1.37, 1.8, 1.95] {
            let h = 1e-6;
            let fd = (chi(t + h).0 - chi(t - h).0) / (2.0 * h);
            assert!((fd - chi(t).1).abs() < 1e-6);
            let fd2 = (chi(t + h).1 - chi(t - h).1) / (2.0 * h);
            assert!((fd2 - chi(t).2).abs() < 1e-5);
        }
    }

    #[test]
    fn vanishes_at_critical_point_and_keeps_sign() {
        let (p, ctx) = blasius_ctx(1e-8, C64::new(0.2, 0.01));
        let map = build_langer(&p, &ctx, 1.0).unwrap();
        assert!(map.eta_out(map.yc).eta_r.abs() < 1e-15);
        for &y in &[0.0, 0.3, 0.6, 1.5, 4.0, 30.0] {
            let e = map.eta_out(y).eta_r;
            assert_eq!(e.signum(), (y - map.yc).signum());
        }
    }

    #[test]
    fn identity_holds_with_spectral_derivative() {
        let (p, ctx) = blasius_ctx(1e-8, C64::new(0.2, 0.01));
        let map = build_langer(&p, &ctx, 1.0).unwrap();
        let g = GridSpec::uniform(12.0, 48);
        let eta: Vec<C64> = g.map(|y| C64::new(map.eta_out(y).eta_r, 0.0));
        let d = g.derivative(&eta);
        for (i, &y) in g.nodes().iter().enumerate() {
            if (y - map.yc).abs() < 0.05 {
                continue;
            }
            let lhs = map.slope_c * eta[i].re * d[i].re * d[i].re;
            let rhs = p.eval_k(y, 0) - map.c_r;
            assert!((lhs - rhs).abs() <= 1e-8 * rhs.abs(), "{y}: {lhs} {rhs}");
        }
    }

    #[test]
    fn second_derivative_matches_differences() {
        let (p, ctx) = blasius_ctx(1e-8, C64::new(0.2, 0.01));
        let map = build_langer(&p, &ctx, 1.0).unwrap();
        for &y in &[0.0, 0.2, 0.6, map.yc + 3e-6, map.yc + 0.01, 2.0, 7.0, 25.0] {
            let h = 1e-4;
            let yy = y.max(h);
            let fd = (map.eta_out(yy + h).d_eta - map.eta_out(yy - h).d_eta) / (2.0 * h);
            assert!((fd - map.eta_out(yy).d2_eta).abs() < 1e-6, "{y}");
        }
    }

    #[test]
    fn inner_region_is_linear() {
        let (p, ctx) = blasius_ctx(1e-8, C64::new(0.2, 0.01));
        let map = build_langer(&p, &ctx, 1.0).unwrap();
        let w = map.seam_width();
        for k in 0..=10 {
            let y = map.yc - w + 0.2 * w * k as f64;
            assert_eq!(map.eta_r(y), y - map.yc);
            assert_eq!(map.d_eta(y), 1.0);
        }
    }

    #[test]
    fn quadratic_near_field_on_blasius() {
        let (p, ctx) = blasius_ctx(1e-8, C64::new(0.2, 0.01));
        let map = build_langer(&p, &ctx, 1.0).unwrap();
        for k in 0..=300 {
            let s = -0.3 + 0.002 * k as f64;
            let y = map.yc + s;
            if y < 0.0 {
                continue;
            }
            assert!((map.eta_out(y).eta_r - s).abs() <= 2.0 * s * s + 1e-15);
        }
    }

    #[test]
    fn err1_at_critical_point() {
        let p = make_analytic_profile(ProfileKind::Tanh, 1.0).unwrap();
        let ctx = WaveContext::new(&p, 1e-8, 0.0, 0.0, C64::new(0.05, 0.0), C64::new(0.3, 1e-12)).unwrap();
        let map = build_langer(&p, &ctx, 1.0).unwrap();
        let (e1, _) = err_terms(&map, &ctx, map.yc);
        let want = -ctx.eps * ctx.alpha * ctx.alpha;
        assert!((e1 - want).norm() < 1e-11);
    }

    #[test]
    fn rejects_speed_above_free_stream() {
        let p = make_analytic_profile(ProfileKind::Tanh, 1.0).unwrap();
        let mut ctx = WaveContext::new(&p, 1e-8, 0.0, 0.0, C64::new(0.05, 0.0), C64::new(0.3, 0.0)).unwrap();
        ctx.c = C64::new(1.2, 0.0);
        assert_eq!(build_langer(&p, &ctx, 1.0).unwrap_err().code(), "langer.negative-radicand");
    }
}
