//! Airy-type equations through the Green kernel built from the modified Airy
//! functions, and the homogeneous fast mode.
//!
//! `A_1` decays and `A_2` grows in the direction of increasing `Y`, and both
//! reach magnitudes far outside the double range near the wall. Every kernel
//! product is therefore formed in [`Scaled`] arithmetic and converted only
//! after the exponents have cancelled.

use std::f64::consts::PI;
use std::sync::Arc;

use serde::Serialize;

use crate::airyfn::{airy_scaled, eval_rotated_antiderivatives};
use crate::context::WaveContext;
use crate::error::{err, Result};
use crate::grid::{sup, ComplexField, GridBuilder, GridSpec};
use crate::langer::{err_terms, LangerMap, LangerPoint};
use crate::profiles::Profile;
use crate::rayleigh::Coefficients;
use crate::scaled::Scaled;
use crate::{cis, C64, I};

/// Airy argument `kappa eta` beyond which the decaying factor is negligible.
pub const DECAY_END: f64 = 24.0;
/// Default cap on the correction iterations.
pub const DEFAULT_CORRECTION_ITERS: usize = 12;

/// `A_1`, `A_2` and their first two derivatives at one point.
#[derive(Debug, Clone, Copy)]
pub struct PairValues {
    pub a1: Scaled,
    pub da1: Scaled,
    pub d2a1: Scaled,
    pub a2: Scaled,
    pub da2: Scaled,
    pub d2a2: Scaled,
}

/// The modified Airy functions
/// `A_1 = -i e^{-2 i theta0} |eps|^{-2/3} U'(Y_c)^{-1/3} Ai(e^{i(pi/6 - theta0)} kappa eta)` and
/// `A_2 = 2 pi Ai(e^{i(5pi/6 - theta0)} kappa eta)`.
#[derive(Debug, Clone, Copy)]
pub struct ModifiedAiryPair {
    pub prefactor1: C64,
    pub rot1: C64,
    pub rot2: C64,
    pub kappa: f64,
}

impl ModifiedAiryPair {
    pub fn new(ctx: &WaveContext) -> Self {
        let prefactor1 =
            -I * cis(-2.0 * ctx.theta0) * ctx.eps.norm().powf(-2.0 / 3.0) * ctx.slope_c.powf(-1.0 / 3.0);
        ModifiedAiryPair { prefactor1, rot1: cis(ctx.phi1()), rot2: cis(ctx.phi2()), kappa: ctx.kappa }
    }

    fn one(rot: C64, pre: C64, kappa: f64, eta: C64, p: &LangerPoint) -> (Scaled, Scaled, Scaled) {
        let z = rot * kappa * eta;
        let (ai, aip, _) = airy_scaled(z);
        let k1 = rot * kappa * p.d_eta;
        let k2 = rot * kappa * p.d2_eta;
        let a = ai * pre;
        let da = aip * (pre * k1);
        let d2a = ai * (pre * k1 * k1 * z) + aip * (pre * k2);
        (a, da, d2a)
    }

    pub fn eval_point(&self, eta_i: f64, p: &LangerPoint) -> PairValues {
        let eta = C64::new(p.eta_r, eta_i);
        let (a1, da1, d2a1) = Self::one(self.rot1, self.prefactor1, self.kappa, eta, p);
        let (a2, da2, d2a2) = Self::one(self.rot2, C64::new(2.0 * PI, 0.0), self.kappa, eta, p);
        PairValues { a1, da1, d2a1, a2, da2, d2a2 }
    }

    pub fn eval(&self, map: &LangerMap, y: f64) -> PairValues {
        self.eval_point(map.eta_i, &map.eval(y))
    }

    /// `A_1 A_2' - A_1' A_2` at `y`.
    pub fn wronskian(&self, map: &LangerMap, y: f64) -> C64 {
        let v = self.eval(map, y);
        (v.a1 * v.da2 - v.da1 * v.a2).value()
    }
}

/// Sup over the grid of `|W - target| / |target|` with the target
/// `-eps^{-1} d(eta)/dY`.
pub fn wronskian_residual(pair: &ModifiedAiryPair, map: &LangerMap, ctx: &WaveContext, grid: &GridSpec) -> f64 {
    wronskian_residual_against(pair, map, ctx, grid, |y| map.d_eta(y))
}

/// As [`wronskian_residual`] with an arbitrary stand-in for `d(eta)/dY`.
pub fn wronskian_residual_against(
    pair: &ModifiedAiryPair,
    map: &LangerMap,
    ctx: &WaveContext,
    grid: &GridSpec,
    d_eta: impl Fn(f64) -> f64,
) -> f64 {
    let inv_eps = ctx.eps.inv();
    grid.nodes()
        .iter()
        .map(|&y| {
            let target = -inv_eps * d_eta(y);
            (pair.wronskian(map, y) - target).norm() / target.norm()
        })
        .fold(0.0, f64::max)
}

/// First `Y > Y_c` where `kappa eta_r` reaches `level`.
pub fn decay_height(map: &LangerMap, level: f64) -> f64 {
    let target = level / map.kappa;
    let mut y = map.yc;
    let mut step = 0.1 * map.seam_width().max(1e-3);
    while map.eta_r(y) < target {
        y += step;
        step *= 1.2;
    }
    let (mut lo, mut hi) = (map.yc, y);
    for _ in 0..60 {
        let mid = 0.5 * (lo + hi);
        if map.eta_r(mid) < target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    hi
}

/// Grid following the local Airy scale `1 / (kappa eta' (1 + |kappa eta|^{1/2}))`,
/// with breaks at the critical point and the seams of the blended map.
pub fn fast_grid(profile: &Profile, map: &LangerMap, y_end: f64) -> Result<GridSpec> {
    let kappa = map.kappa;
    let lw = 0.5 * profile.length_scale();
    let width = |y: f64| {
        let p = map.eval(y);
        let z = (kappa * C64::new(p.eta_r, map.eta_i)).norm();
        (0.6 / (kappa * p.d_eta.max(0.2) * (1.0 + z.sqrt()))).min(lw)
    };
    let w0 = width(0.0);
    let wc = width(map.yc);
    let seam = map.seam_width();
    let mut b = GridBuilder::new(y_end).growth(0.4).max_width(lw).feature(0.0, w0).feature(map.yc, wc).center(map.yc);
    for k in [-2.0, -1.0, 1.0, 2.0] {
        b = b.feature(map.yc + k * seam, width(map.yc + k * seam));
    }
    b.width_fn(width).build()
}

/// Samples of every coefficient the Airy solver needs on one grid.
#[derive(Debug, Clone)]
pub struct FastSetup {
    pub grid: Arc<GridSpec>,
    pub coef: Coefficients,
    pub eta: Vec<LangerPoint>,
    pub pair: Vec<PairValues>,
    pub err1: Vec<C64>,
    pub err2: Vec<C64>,
    pub eps: C64,
    pub alpha: C64,
}

impl FastSetup {
    pub fn new(profile: &Profile, ctx: &WaveContext, map: &LangerMap, grid: Arc<GridSpec>) -> Self {
        let coef = Coefficients::new(profile, ctx, grid.clone());
        let pair_fn = ModifiedAiryPair::new(ctx);
        let eta: Vec<LangerPoint> = grid.map(|y| map.eval(y));
        let pair = eta.iter().map(|p| pair_fn.eval_point(map.eta_i, p)).collect();
        let (err1, err2) = grid.nodes().iter().map(|&y| err_terms(map, ctx, y)).unzip();
        FastSetup { grid, coef, eta, pair, err1, err2, eps: ctx.eps, alpha: ctx.alpha }
    }

    /// Default grid from the wall to the decay height.
    pub fn with_default_grid(profile: &Profile, ctx: &WaveContext, map: &LangerMap) -> Result<Self> {
        let y_end = decay_height(map, DECAY_END) + 2.0 * map.seam_width();
        let grid = Arc::new(fast_grid(profile, map, y_end)?);
        Ok(FastSetup::new(profile, ctx, map, grid))
    }

    /// `eps (w'' - alpha^2 w) - (U - c) w - F - Err_1 w - Err_2 w'`.
    pub fn airy_defect(&self, w: &[C64], f: &[C64]) -> Vec<C64> {
        let g = &self.grid;
        let d1 = g.derivative(w);
        let d2 = g.derivative(&d1);
        let a2 = self.alpha * self.alpha;
        (0..g.len())
            .map(|i| {
                self.eps * (d2[i] - a2 * w[i]) - self.coef.w[i] * w[i] - f[i] - self.err1[i] * w[i]
                    - self.err2[i] * d1[i]
            })
            .collect()
    }

    /// `eps (w'' - alpha^2 w) - (U - c) w - F`.
    pub fn exact_defect(&self, w: &[C64], f: &[C64]) -> Vec<C64> {
        let g = &self.grid;
        let d1 = g.derivative(w);
        let d2 = g.derivative(&d1);
        let a2 = self.alpha * self.alpha;
        (0..g.len()).map(|i| self.eps * (d2[i] - a2 * w[i]) - self.coef.w[i] * w[i] - f[i]).collect()
    }

    /// `int_Y^inf A(Y') int_{Y'}^inf w`.
    pub fn double_integral(&self, w: &[C64]) -> Vec<C64> {
        let inner = self.grid.cumulative_right(w);
        let mid: Vec<C64> = inner.iter().zip(&self.coef.a).map(|(v, a)| v * a).collect();
        self.grid.cumulative_right(&mid)
    }
}

/// `(w_app, psi_app)` for the source `f`.
pub fn green_solve_airy(setup: &FastSetup, f: &[C64]) -> Result<(Vec<C64>, Vec<C64>)> {
    let g = &setup.grid;
    let left: Vec<Scaled> =
        setup.pair.iter().zip(&setup.eta).zip(f).map(|((p, e), v)| p.a2 * (v / e.d_eta)).collect();
    let right: Vec<Scaled> =
        setup.pair.iter().zip(&setup.eta).zip(f).map(|((p, e), v)| p.a1 * (v / e.d_eta)).collect();
    let cl = g.cumulative_left_scaled(&left);
    let cr = g.cumulative_right_scaled(&right);
    let mut w = Vec::with_capacity(g.len());
    for i in 0..g.len() {
        let s = setup.pair[i].a1 * cl[i] + setup.pair[i].a2 * cr[i];
        if s.ln_abs() > 700.0 {
            return Err(err!(Overflow, "airy_bvp", "kernel product exp({:.1}) at Y = {}", s.ln_abs(), g.nodes()[i]));
        }
        w.push(s.value());
    }
    let psi = setup.double_integral(&w);
    Ok((w, psi))
}

/// Solution of the exact Airy equation by iterating the kernel on the
/// `Err` terms.
#[derive(Debug, Clone)]
pub struct AirySolution {
    pub w: Vec<C64>,
    pub psi: Vec<C64>,
    pub term_norms: Vec<f64>,
}

impl AirySolution {
    pub fn ratios(&self) -> Vec<f64> {
        self.term_norms.windows(2).filter(|w| w[0] > 0.0).map(|w| w[1] / w[0]).collect()
    }
}

pub fn solve_airy(setup: &FastSetup, f: &[C64], max_iters: usize) -> Result<AirySolution> {
    let g = &setup.grid;
    let (mut term, _) = green_solve_airy(setup, f)?;
    let mut total = term.clone();
    let mut norms = vec![sup(&term)];
    for _ in 0..max_iters {
        if *norms.last().unwrap() <= 1e-15 * sup(&total) {
            break;
        }
        let d = g.derivative(&term);
        let src: Vec<C64> =
            (0..g.len()).map(|i| -(setup.err1[i] * term[i] + setup.err2[i] * d[i])).collect();
        term = green_solve_airy(setup, &src)?.0;
        let n = sup(&term);
        if n >= 0.9 * norms.last().unwrap() && norms.len() >= 3 {
            return Err(err!(Divergence, "airy_bvp", "correction ratio {:.3}", n / norms.last().unwrap()));
        }
        norms.push(n);
        for (t, v) in total.iter_mut().zip(&term) {
            *t += v;
        }
    }
    let psi = setup.double_integral(&total);
    Ok(AirySolution { w: total, psi, term_norms: norms })
}

/// Solve `(d/dY A^{-1} d/dY - alpha^2) psi = g` as a series in `alpha^2`.
pub fn solve_lambda(setup: &FastSetup, g: &[C64]) -> Vec<C64> {
    let a2 = setup.alpha * setup.alpha;
    let mut term = setup.double_integral(g);
    let mut total = term.clone();
    for _ in 0..40 {
        let src: Vec<C64> = term.iter().map(|v| v * a2).collect();
        term = setup.double_integral(&src);
        for (t, v) in total.iter_mut().zip(&term) {
            *t += v;
        }
        if sup(&term) <= 1e-15 * sup(&total) {
            break;
        }
    }
    total
}

/// Homogeneous fast mode and its wall data.
#[derive(Debug, Clone, Serialize)]
pub struct FastMode {
    #[serde(skip)]
    pub w_a0: ComplexField,
    #[serde(skip)]
    pub psi_a0: ComplexField,
    /// `A~(1, 0)` divided by `Ai(e^{i(pi/6 - theta0)} kappa eta(0))`.
    pub tilde_a1_0: C64,
    /// `A~(2, 0)` divided by the same wall value.
    pub tilde_a2_0: C64,
    /// `ln |Ai(e^{i(pi/6 - theta0)} kappa eta(0))|`, the common scale removed above.
    pub ln_ai_wall: f64,
    /// `A~(2, 0) / A~(1, 0)`.
    pub wall_ratio: C64,
    /// `psi_a(0) / psi_a'(0)` including the `Err` correction, when computed.
    pub corrected_ratio: Option<C64>,
    pub psi_wall: C64,
    pub dpsi_wall: C64,
    pub correction_norms: Vec<f64>,
    pub airy_arg_wall: C64,
}

/// Build the fast mode; `correct` also solves for the `Err` correction.
pub fn fast_mode(profile: &Profile, ctx: &WaveContext, map: &LangerMap, correct: bool) -> Result<FastMode> {
    let setup = FastSetup::with_default_grid(profile, ctx, map)?;
    fast_mode_on(&setup, ctx, map, correct)
}

pub fn fast_mode_on(setup: &FastSetup, ctx: &WaveContext, map: &LangerMap, correct: bool) -> Result<FastMode> {
    let g = &setup.grid;
    let rot = cis(ctx.phi1());
    let z0 = rot * ctx.kappa * C64::new(setup.eta[0].eta_r, map.eta_i);
    let ai: Vec<(Scaled, Scaled)> = setup
        .eta
        .iter()
        .map(|p| {
            let (a, ap, _) = airy_scaled(rot * ctx.kappa * C64::new(p.eta_r, map.eta_i));
            (a, ap)
        })
        .collect();
    let ai_wall = ai[0].0;
    if ai_wall.is_zero() {
        return Err(err!(Degenerate, "airy_bvp", "Ai vanishes at the wall"));
    }
    let inv = ai_wall.recip();
    let w_a0: Vec<C64> = ai.iter().map(|(a, _)| (*a * inv).value()).collect();
    let dw_a0: Vec<C64> = ai
        .iter()
        .zip(&setup.eta)
        .map(|((_, ap), p)| (*ap * inv).value() * rot * ctx.kappa * p.d_eta)
        .collect();
    // A~(1, Y) / Ai_wall = -A(Y) int_Y^inf w_a0
    let int_w = g.cumulative_right(&w_a0);
    let t1: Vec<C64> = int_w.iter().zip(&setup.coef.a).map(|(v, a)| -a * v).collect();
    let t2: Vec<C64> = g.cumulative_right(&t1).iter().map(|v| -v).collect();
    if !(t1[0].norm() > 0.0) || !t1[0].re.is_finite() {
        return Err(err!(Degenerate, "airy_bvp", "A~(1, 0) vanishes"));
    }
    let wall_ratio = t2[0] / t1[0];
    let mut mode = FastMode {
        w_a0: ComplexField::new(g.clone(), w_a0.clone()),
        psi_a0: ComplexField::new(g.clone(), t2.clone()),
        tilde_a1_0: t1[0],
        tilde_a2_0: t2[0],
        ln_ai_wall: ai_wall.ln_abs(),
        wall_ratio,
        corrected_ratio: None,
        psi_wall: t2[0],
        dpsi_wall: t1[0],
        correction_norms: Vec::new(),
        airy_arg_wall: z0,
    };
    if correct {
        let src: Vec<C64> = (0..g.len()).map(|i| -(setup.err1[i] * w_a0[i] + setup.err2[i] * dw_a0[i])).collect();
        let sol = solve_airy(setup, &src, DEFAULT_CORRECTION_ITERS)?;
        let a2 = ctx.alpha * ctx.alpha;
        let rhs: Vec<C64> = sol.w.iter().zip(&t2).map(|(w, p)| w + a2 * p).collect();
        let psi_err = solve_lambda(setup, &rhs);
        let psi: Vec<C64> = t2.iter().zip(&psi_err).map(|(a, b)| a + b).collect();
        let dpsi = g.derivative_at_wall(&psi);
        mode.psi_wall = psi[0];
        mode.dpsi_wall = dpsi;
        mode.corrected_ratio = Some(psi[0] / dpsi);
        mode.correction_norms = sol.term_norms;
    }
    Ok(mode)
}

/// `-e^{i(pi/4 - theta0/2)} |eps|^{1/2} c_r^{-1/2}`.
pub fn large_argument_ratio(ctx: &WaveContext) -> C64 {
    -cis(PI / 4.0 - ctx.theta0 / 2.0) * ctx.eps.norm().sqrt() / ctx.c.re.sqrt()
}

/// `kappa^{-1} A(1, kappa eta(0))` and `kappa^{-2} A(2, kappa eta(0))` from the closed forms.
pub fn closed_form_wall(ctx: &WaveContext, map: &LangerMap) -> Result<(C64, C64)> {
    let z = ctx.kappa * map.eta(0.0);
    let r = eval_rotated_antiderivatives(z, ctx.theta0)?;
    Ok((r.a1 / ctx.kappa, r.a2 / (ctx.kappa * ctx.kappa)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::langer::build_langer;

    fn setup(nu: f64, m: f64, alpha: C64, c: C64) -> (Profile, WaveContext, LangerMap) {
        let p = Profile::blasius_default().unwrap();
        let ctx = WaveContext::new(&p, nu, m, 0.0, alpha, c).unwrap();
        let map = build_langer(&p, &ctx, 1.0).unwrap();
        (p, ctx, map)
    }

    #[test]
    fn wronskian_identity_with_sign() {
        for theta in [-0.01f64, 0.0, 0.01] {
            let alpha = C64::from_polar(0.05, -3.0 * theta);
            let (p, ctx, map) = setup(1e-8, 0.3, alpha, C64::new(0.15, 0.01));
            let pair = ModifiedAiryPair::new(&ctx);
            let grid = fast_grid(&p, &map, 3.0).unwrap();
            let r = wronskian_residual(&pair, &map, &ctx, &grid);
            assert!(r < 1e-6, "{theta} {r}");
            let broken = wronskian_residual_against(&pair, &map, &ctx, &grid, |_| 1.0);
            assert!(broken >= 1e-2);
        }
    }

    #[test]
    fn zero_source() {
        let (p, ctx, map) = setup(1e-8, 0.3, C64::new(0.05, 0.0), C64::new(0.15, 0.01));
        let s = FastSetup::with_default_grid(&p, &ctx, &map).unwrap();
        let f = vec![C64::new(0.0, 0.0); s.grid.len()];
        let (w, psi) = green_solve_airy(&s, &f).unwrap();
        assert_eq!(sup(&w), 0.0);
        assert_eq!(sup(&psi), 0.0);
    }

    #[test]
    fn green_solution_residual() {
        let (p, ctx, map) = setup(1e-8, 0.3, C64::new(0.05, 0.0), C64::new(0.15, 0.01));
        let grid = Arc::new(fast_grid(&p, &map, 4.0).unwrap());
        let s = FastSetup::new(&p, &ctx, &map, grid);
        let f: Vec<C64> = s.grid.map(|y| C64::new((-3.0 * y * y).exp(), 0.0) * y);
        let (w, _) = green_solve_airy(&s, &f).unwrap();
        let r = s.airy_defect(&w, &f);
        let nodes = s.grid.nodes();
        let worst = (0..nodes.len())
            .filter(|&i| nodes[i] > 0.0 && nodes[i] < 3.0)
            .map(|i| r[i].norm())
            .fold(0.0, f64::max);
        assert!(worst <= 1e-4 * sup(&f), "{worst}");
    }

    #[test]
    fn correction_contracts() {
        let (p, ctx, map) = setup(1e-8, 0.3, C64::new(0.05, 0.0), C64::new(0.15, 0.01));
        let mode = fast_mode(&p, &ctx, &map, true).unwrap();
        let q = mode.correction_norms.windows(2).map(|w| w[1] / w[0]).fold(0.0, f64::max);
        let bound = 2.0 * ctx.eps.norm().cbrt() * ctx.c.im.ln().abs();
        assert!(q <= bound, "{q} {bound}");
        let ratio = mode.corrected_ratio.unwrap();
        assert!((mode.psi_wall - mode.tilde_a2_0).norm() <= 0.2 * mode.tilde_a2_0.norm());
        assert!((ratio - mode.wall_ratio).norm() <= 0.2 * mode.wall_ratio.norm());
    }

    #[test]
    fn unit_wall_normalisation() {
        let (p, ctx, map) = setup(1e-8, 0.3, C64::new(0.05, 0.0), C64::new(0.15, 0.01));
        let mode = fast_mode(&p, &ctx, &map, false).unwrap();
        assert!((mode.w_a0.values[0] - 1.0).norm() < 1e-14);
    }

    #[test]
    fn matches_closed_form_antiderivatives() {
        let (p, ctx, map) = setup(1e-8, 0.3, C64::new(0.05, 0.0), C64::new(0.15, 0.01));
        let mode = fast_mode(&p, &ctx, &map, false).unwrap();
        let (a1, _) = closed_form_wall(&ctx, &map).unwrap();
        let ai_wall = eval_airy_wall(&ctx, &map);
        let tilde = mode.tilde_a1_0 * ai_wall;
        let k = (tilde - a1).norm() / (a1.norm() * (ctx.c.norm() + 1.0 / ctx.kappa));
        assert!(k < 5.0, "{k}");
    }

    fn eval_airy_wall(ctx: &WaveContext, map: &LangerMap) -> C64 {
        airy_scaled(cis(ctx.phi1()) * ctx.kappa * map.eta(0.0)).0.value()
    }

    #[test]
    fn large_argument_wall_ratio() {
        let (p, ctx, map) = setup(1e-12, 0.3, C64::new(0.03, 0.0), C64::new(0.12, 0.004));
        let mode = fast_mode(&p, &ctx, &map, false).unwrap();
        assert!(mode.airy_arg_wall.norm() >= 5.0);
        let want = large_argument_ratio(&ctx);
        assert!((mode.wall_ratio - want).norm() <= 0.2 * want.norm(), "{} {}", mode.wall_ratio, want);
    }
}
