//! Boundary-layer base profiles `U_s(Y)`: the Blasius solution, analytic
//! test profiles and tabulated profiles read from CSV.

use std::io::{Read, Write};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{err, Result};
use crate::grid::GridSpec;

const TAYLOR_ORDER: usize = 24;
const NODE_STEP: f64 = 0.05;
/// The Blasius table always extends at least this far in the similarity variable.
const MIN_TABLE_END: f64 = 20.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ProfileKind {
    Blasius,
    Tanh,
    Exp,
    CustomTable,
}

/// Solution of `f''' + f f''/2 = 0`, `f(0) = f'(0) = 0`, `f' -> 1`.
#[derive(Debug, Clone)]
pub struct BlasiusSolution {
    /// Shooting constant `f''(0)`.
    pub fpp0: f64,
    pub zeta_max: f64,
    step: f64,
    /// Taylor coefficients of `f` about each node `i * step`.
    coef: Vec<[f64; TAYLOR_ORDER + 1]>,
    /// `1 - f'` at each node, accumulated from the far field.
    deficit: Vec<f64>,
    tail_shift: f64,
}

fn taylor_coefficients(f: f64, fp: f64, fpp: f64) -> [f64; TAYLOR_ORDER + 1] {
    let mut a = [0.0; TAYLOR_ORDER + 1];
    a[0] = f;
    a[1] = fp;
    a[2] = 0.5 * fpp;
    for n in 0..=TAYLOR_ORDER - 3 {
        let mut s = 0.0;
        for k in 0..=n {
            let j = n - k + 2;
            s += a[k] * (j * (j - 1)) as f64 * a[j];
        }
        a[n + 3] = -0.5 * s / ((n + 3) * (n + 2) * (n + 1)) as f64;
    }
    a
}

/// `d^j/dt^j sum a_n t^n` at `t`.
fn taylor_derivative(a: &[f64; TAYLOR_ORDER + 1], j: usize, t: f64) -> f64 {
    let mut s = 0.0;
    for n in (j..=TAYLOR_ORDER).rev() {
        let mut fall = 1.0;
        for q in 0..j {
            fall *= (n - q) as f64;
        }
        s = s * t + a[n] * fall;
    }
    s
}

fn step_state(a: &[f64; TAYLOR_ORDER + 1], h: f64) -> (f64, f64, f64) {
    (taylor_derivative(a, 0, h), taylor_derivative(a, 1, h), taylor_derivative(a, 2, h))
}

/// `sqrt(pi) exp(x^2) erfc(x)` for `x >= 2` by continued fraction.
fn scaled_erfc(x: f64) -> f64 {
    let mut t = x;
    for n in (1..80).rev() {
        t = x + (n as f64 / 2.0) / t;
    }
    1.0 / t
}

fn shoot(s: f64, zeta_end: f64, h: f64) -> Vec<[f64; TAYLOR_ORDER + 1]> {
    let n = (zeta_end / h).round() as usize;
    let mut out = Vec::with_capacity(n + 1);
    let (mut f, mut fp, mut fpp) = (0.0, 0.0, s);
    for _ in 0..=n {
        let a = taylor_coefficients(f, fp, fpp);
        (f, fp, fpp) = step_state(&a, h);
        out.push(a);
    }
    out
}

/// Mismatch of `f'(zeta_end)` against the Gaussian far field `1 - f'' sqrt(pi) e^{x^2} erfc(x)`.
fn shoot_end(s: f64, zeta_end: f64, h: f64) -> f64 {
    let n = (zeta_end / h).round() as usize;
    let (mut f, mut fp, mut fpp) = (0.0, 0.0, s);
    for _ in 0..n {
        let a = taylor_coefficients(f, fp, fpp);
        (f, fp, fpp) = step_state(&a, h);
        if !fp.is_finite() || fp.abs() > 1e6 {
            return fp.signum() * 1e6;
        }
    }
    fp - 1.0 + fpp * scaled_erfc(0.5 * f)
}

/// Shooting on `f''(0)` by bisection over the bracket `(0.2, 0.5)`.
pub fn solve_blasius(tolerance: f64, zeta_max: f64) -> Result<BlasiusSolution> {
    if !(tolerance > 0.0) {
        return Err(err!(InvalidInput, "profiles", "tolerance must be positive"));
    }
    if !(zeta_max >= 10.0) {
        return Err(err!(InvalidInput, "profiles", "zeta_max must be at least 10"));
    }
    let h = NODE_STEP;
    let zeta_max = (zeta_max / h).round() * h;
    let (mut lo, mut hi) = (0.2, 0.5);
    let g = |s: f64| shoot_end(s, zeta_max, h);
    if g(lo) >= 0.0 || g(hi) <= 0.0 {
        return Err(err!(NoConvergence, "profiles", "bisection bracket (0.2, 0.5) does not straddle the root"));
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if g(mid) > 0.0 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    let s = if g(hi).abs() < g(lo).abs() { hi } else { lo };
    if g(s).abs() > tolerance {
        return Err(err!(NoConvergence, "profiles", "|f'(zeta_max) - 1| = {:.3e} exceeds tolerance", g(s).abs()));
    }
    let zeta_end = zeta_max.max(MIN_TABLE_END);
    let coef = shoot(s, zeta_end, h);
    let last = coef.last().unwrap();
    let tail_shift = zeta_end - last[0];
    // deficit at the last node from the Gaussian far field, then backwards
    let x = 0.5 * (zeta_end - tail_shift);
    let mut deficit = vec![0.0; coef.len()];
    let n = coef.len() - 1;
    deficit[n] = 2.0 * last[2] * scaled_erfc(x);
    for i in (0..n).rev() {
        let a = &coef[i];
        let mut inc = 0.0;
        for k in (2..=TAYLOR_ORDER).rev() {
            inc = inc * h + k as f64 * a[k];
        }
        deficit[i] = deficit[i + 1] + inc * h;
    }
    Ok(BlasiusSolution { fpp0: s, zeta_max, step: h, coef, deficit, tail_shift })
}

impl BlasiusSolution {
    fn zeta_end(&self) -> f64 {
        (self.coef.len() - 1) as f64 * self.step
    }

    /// `f^{(j)}(zeta)` for `j = 0..=5`.
    pub fn f(&self, zeta: f64, j: usize) -> f64 {
        if zeta <= self.zeta_end() {
            let i = ((zeta.max(0.0) / self.step).round() as usize).min(self.coef.len() - 1);
            let t = zeta - i as f64 * self.step;
            return taylor_derivative(&self.coef[i], j, t);
        }
        let x = 0.5 * (zeta - self.tail_shift);
        let x_end = 0.5 * (self.zeta_end() - self.tail_shift);
        let fpp_end = 2.0 * self.coef.last().unwrap()[2];
        let g = fpp_end * (x_end * x_end - x * x).exp();
        match j {
            0 => zeta - self.tail_shift,
            1 => 1.0 - g * scaled_erfc(x),
            2 => g,
            3 => -x * g,
            4 => 0.25 * (4.0 * x * x - 2.0) * g,
            5 => -0.125 * (8.0 * x * x * x - 12.0 * x) * g,
            _ => 0.0,
        }
    }

    /// `1 - f'(zeta)` without cancellation.
    pub fn deficit(&self, zeta: f64) -> f64 {
        if zeta <= self.zeta_end() {
            let i = ((zeta.max(0.0) / self.step).round() as usize).min(self.coef.len() - 1);
            let t = zeta - i as f64 * self.step;
            let a = &self.coef[i];
            let mut s = 0.0;
            for k in (2..=TAYLOR_ORDER).rev() {
                s = s * t + k as f64 * a[k];
            }
            return self.deficit[i] - s * t;
        }
        self.f(zeta, 2) * scaled_erfc(0.5 * (zeta - self.tail_shift))
    }

    /// Sampled `(zeta, f, f', f'')` on the node table.
    pub fn table(&self) -> Vec<[f64; 4]> {
        self.coef
            .iter()
            .enumerate()
            .map(|(i, a)| [i as f64 * self.step, a[0], a[1], 2.0 * a[2]])
            .collect()
    }

    /// Sup of `|f''' + f f''/2|` sampled between nodes.
    pub fn ode_residual(&self) -> f64 {
        let mut r: f64 = 0.0;
        let n = ((self.zeta_end() / self.step) as usize) * 4;
        for k in 0..=n {
            let z = k as f64 * self.step / 4.0 + 0.013 * self.step;
            r = r.max((self.f(z, 3) + 0.5 * self.f(z, 0) * self.f(z, 2)).abs());
        }
        r
    }
}

#[derive(Debug, Clone)]
enum Repr {
    Blasius { sol: Arc<BlasiusSolution>, x0: f64 },
    Tanh(f64),
    Exp(f64),
    Table(Arc<TableProfile>),
}

/// A monotone base flow `U_s(Y)` with `U_s(0) = 0` and `U_s -> 1`.
#[derive(Debug, Clone)]
pub struct Profile {
    repr: Repr,
    decay_rate: f64,
}

impl Profile {
    /// Blasius profile `f'(Y / sqrt(x0))`.
    pub fn blasius(sol: Arc<BlasiusSolution>, x0: f64) -> Result<Self> {
        if !(x0 > 0.0) {
            return Err(err!(InvalidInput, "profiles", "x0 must be positive"));
        }
        Ok(Profile { repr: Repr::Blasius { sol, x0 }, decay_rate: 0.3 / x0.sqrt() })
    }

    /// Blasius profile with the standard normalisation.
    pub fn blasius_default() -> Result<Self> {
        Profile::blasius(Arc::new(solve_blasius(1e-10, 12.0)?), 1.0)
    }

    pub fn kind(&self) -> ProfileKind {
        match self.repr {
            Repr::Blasius { .. } => ProfileKind::Blasius,
            Repr::Tanh(_) => ProfileKind::Tanh,
            Repr::Exp(_) => ProfileKind::Exp,
            Repr::Table(_) => ProfileKind::CustomTable,
        }
    }

    /// Decay rate `eta_0` used for the structure check.
    pub fn decay_rate(&self) -> f64 {
        self.decay_rate
    }

    pub fn with_decay_rate(mut self, eta0: f64) -> Self {
        self.decay_rate = eta0;
        self
    }

    pub fn wall_slope(&self) -> f64 {
        self.eval_k(0.0, 1)
    }

    /// `d^k U_s / dY^k` at `y` for `k = 0..=4`.
    pub fn eval_k(&self, y: f64, k: usize) -> f64 {
        let y = y.max(0.0);
        match &self.repr {
            Repr::Blasius { sol, x0 } => {
                let s = x0.sqrt();
                if k == 0 {
                    return 1.0 - sol.deficit(y / s);
                }
                sol.f(y / s, k + 1) / s.powi(k as i32)
            }
            Repr::Tanh(s) => {
                let t = (s * y).tanh();
                let q = 1.0 - t * t;
                match k {
                    0 => t,
                    1 => s * q,
                    2 => -2.0 * s * s * t * q,
                    3 => -2.0 * s.powi(3) * q * (1.0 - 3.0 * t * t),
                    4 => 8.0 * s.powi(4) * t * q * (2.0 - 3.0 * t * t),
                    _ => 0.0,
                }
            }
            Repr::Exp(s) => {
                let e = (-s * y).exp();
                if k == 0 {
                    1.0 - e
                } else {
                    -(-s).powi(k as i32) * e
                }
            }
            Repr::Table(t) => t.eval(y, k),
        }
    }

    /// `[U, U', U'', U''', U'''']` at `y`.
    pub fn eval_all(&self, y: f64) -> [f64; 5] {
        [0, 1, 2, 3, 4].map(|k| self.eval_k(y, k))
    }

    /// `1 - U_s(y)` computed without cancellation.
    pub fn deficit(&self, y: f64) -> f64 {
        let y = y.max(0.0);
        match &self.repr {
            Repr::Blasius { sol, x0 } => sol.deficit(y / x0.sqrt()),
            Repr::Tanh(s) => 2.0 / ((2.0 * s * y).exp() + 1.0),
            Repr::Exp(s) => (-s * y).exp(),
            Repr::Table(t) => 1.0 - t.eval(y, 0),
        }
    }

    /// Height beyond which `U_s = 1` to double precision.
    pub fn saturation_height(&self) -> f64 {
        match &self.repr {
            Repr::Blasius { x0, .. } => 12.0 * x0.sqrt(),
            Repr::Tanh(s) => 19.0 / s,
            Repr::Exp(s) => 37.0 / s,
            Repr::Table(t) => *t.y.last().unwrap(),
        }
    }

    /// Typical length over which the profile varies.
    pub fn length_scale(&self) -> f64 {
        match &self.repr {
            Repr::Blasius { x0, .. } => x0.sqrt(),
            Repr::Tanh(s) | Repr::Exp(s) => 1.0 / s,
            Repr::Table(t) => (t.y.last().unwrap() / 10.0).max(1e-3),
        }
    }

    pub fn write_csv<W: Write>(&self, out: W, ys: &[f64], comment: Option<&str>) -> Result<()> {
        let mut out = out;
        if let Some(c) = comment {
            writeln!(out, "# {c}").map_err(|e| err!(InvalidInput, "profiles", "{e}"))?;
        }
        let mut w = csv::Writer::from_writer(out);
        let io = |e: csv::Error| err!(InvalidInput, "profiles", "{e}");
        w.write_record(["Y", "U", "U'", "U''", "U'''", "U''''"]).map_err(io)?;
        for &y in ys {
            let v = self.eval_all(y);
            let mut rec = vec![format!("{y:.17e}")];
            rec.extend(v.iter().map(|x| format!("{x:.17e}")));
            w.write_record(&rec).map_err(io)?;
        }
        w.flush().map_err(|e| err!(InvalidInput, "profiles", "{e}"))?;
        Ok(())
    }

    /// Tabulated profile from CSV with the header `Y,U,U',U'',U''',U''''`.
    pub fn read_csv<R: Read>(input: R) -> Result<Self> {
        let mut rd = csv::ReaderBuilder::new().comment(Some(b'#')).has_headers(true).from_reader(input);
        let io = |e: csv::Error| err!(InvalidInput, "profiles", "{e}");
        let head = rd.headers().map_err(io)?.clone();
        let want = ["Y", "U", "U'", "U''", "U'''", "U''''"];
        if head.len() != 6 || head.iter().zip(want).any(|(a, b)| a.trim() != b) {
            return Err(err!(InvalidInput, "profiles", "expected header Y,U,U',U'',U''',U''''"));
        }
        let mut rows = Vec::new();
        for rec in rd.records() {
            let rec = rec.map_err(io)?;
            let mut r = [0.0; 6];
            for (i, f) in rec.iter().enumerate().take(6) {
                r[i] = f.trim().parse().map_err(|_| err!(InvalidInput, "profiles", "bad number {f:?}"))?;
            }
            rows.push(r);
        }
        let t = TableProfile::new(rows)?;
        let decay = 0.3 / t.y.last().unwrap().max(1.0) * 10.0;
        Ok(Profile { repr: Repr::Table(Arc::new(t)), decay_rate: decay.min(0.3) })
    }
}

/// Analytic profile `tanh(sY)` or `1 - exp(-sY)`.
pub fn make_analytic_profile(kind: ProfileKind, steepness: f64) -> Result<Profile> {
    if !(steepness > 0.0) {
        return Err(err!(InvalidInput, "profiles", "steepness must be positive"));
    }
    match kind {
        ProfileKind::Tanh => Ok(Profile { repr: Repr::Tanh(steepness), decay_rate: 1.9 * steepness }),
        ProfileKind::Exp => Ok(Profile { repr: Repr::Exp(steepness), decay_rate: 0.5 * steepness }),
        _ => Err(err!(InvalidInput, "profiles", "analytic profiles are tanh or exp")),
    }
}

/// Profile from tabulated values, interpolated by quintic Hermite pieces in
/// `(U, U', U'')` and linearly in the higher derivatives.
#[derive(Debug, Clone)]
struct TableProfile {
    y: Vec<f64>,
    v: Vec<[f64; 5]>,
}

impl TableProfile {
    fn new(rows: Vec<[f64; 6]>) -> Result<Self> {
        if rows.len() < 4 {
            return Err(err!(InvalidInput, "profiles", "table needs at least four rows"));
        }
        if rows[0][0] != 0.0 || rows.windows(2).any(|w| w[1][0] <= w[0][0]) {
            return Err(err!(InvalidInput, "profiles", "Y must start at 0 and increase"));
        }
        let y = rows.iter().map(|r| r[0]).collect();
        let v = rows.iter().map(|r| [r[1], r[2], r[3], r[4], r[5]]).collect();
        Ok(TableProfile { y, v })
    }

    fn eval(&self, y: f64, k: usize) -> f64 {
        let n = self.y.len();
        if y >= self.y[n - 1] {
            return if k == 0 { 1.0 } else { 0.0 };
        }
        let i = match self.y.binary_search_by(|v| v.partial_cmp(&y).unwrap()) {
            Ok(i) => i.min(n - 2),
            Err(i) => i - 1,
        };
        let h = self.y[i + 1] - self.y[i];
        let t = (y - self.y[i]) / h;
        let (a, b) = (&self.v[i], &self.v[i + 1]);
        if k >= 3 {
            return a[k] + t * (b[k] - a[k]);
        }
        // quintic Hermite basis and its derivatives in t
        let basis = |d: usize| -> [f64; 6] {
            let t2 = t * t;
            let t3 = t2 * t;
            let t4 = t3 * t;
            let t5 = t4 * t;
            match d {
                0 => [
                    1.0 - 10.0 * t3 + 15.0 * t4 - 6.0 * t5,
                    t - 6.0 * t3 + 8.0 * t4 - 3.0 * t5,
                    0.5 * t2 - 1.5 * t3 + 1.5 * t4 - 0.5 * t5,
                    10.0 * t3 - 15.0 * t4 + 6.0 * t5,
                    -4.0 * t3 + 7.0 * t4 - 3.0 * t5,
                    0.5 * t3 - t4 + 0.5 * t5,
                ],
                1 => [
                    -30.0 * t2 + 60.0 * t3 - 30.0 * t4,
                    1.0 - 18.0 * t2 + 32.0 * t3 - 15.0 * t4,
                    t - 4.5 * t2 + 6.0 * t3 - 2.5 * t4,
                    30.0 * t2 - 60.0 * t3 + 30.0 * t4,
                    -12.0 * t2 + 28.0 * t3 - 15.0 * t4,
                    1.5 * t2 - 4.0 * t3 + 2.5 * t4,
                ],
                _ => [
                    -60.0 * t + 180.0 * t2 - 120.0 * t3,
                    -36.0 * t + 96.0 * t2 - 60.0 * t3,
                    1.0 - 9.0 * t + 18.0 * t2 - 10.0 * t3,
                    60.0 * t - 180.0 * t2 + 120.0 * t3,
                    -24.0 * t + 84.0 * t2 - 60.0 * t3,
                    3.0 * t - 12.0 * t2 + 10.0 * t3,
                ],
            }
        };
        let w = basis(k);
        let vals = [a[0], h * a[1], h * h * a[2], b[0], h * b[1], h * h * b[2]];
        let s: f64 = w.iter().zip(vals).map(|(p, q)| p * q).sum();
        s / h.powi(k as i32)
    }
}

/// Result of the decay-structure check.
#[derive(Debug, Clone, Serialize)]
pub struct StructureReport {
    pub eta0: f64,
    /// Grid supremum of `exp(eta0 Y) |d^k (U_s - 1)|` for `k = 0..=4`.
    pub suprema: [f64; 5],
    pub cap: f64,
    pub pass: [bool; 5],
}

impl StructureReport {
    pub fn passed(&self) -> bool {
        self.pass.iter().all(|&p| p)
    }
}

pub const STRUCTURE_CAP: f64 = 1e4;

pub fn check_structure(profile: &Profile, eta0: f64, grid: &GridSpec) -> Result<StructureReport> {
    if !(eta0 > 0.0) {
        return Err(err!(InvalidInput, "profiles", "eta0 must be positive"));
    }
    let mut suprema = [0.0f64; 5];
    for &y in grid.nodes() {
        let w = (eta0 * y).exp();
        for (k, s) in suprema.iter_mut().enumerate() {
            let d = if k == 0 { profile.deficit(y) } else { profile.eval_k(y, k) };
            let v = w * d.abs();
            *s = if v.is_finite() { s.max(v) } else { f64::INFINITY };
        }
    }
    let pass = suprema.map(|s| s.is_finite() && s <= STRUCTURE_CAP);
    Ok(StructureReport { eta0, suprema, cap: STRUCTURE_CAP, pass })
}

/// Height `Y_c` with `U_s(Y_c) = c_r`.
pub fn critical_layer(profile: &Profile, c_r: f64) -> Result<f64> {
    let top = profile.saturation_height();
    if !(c_r > 0.0) || !(c_r < 1.0) || profile.deficit(top) >= 1.0 - c_r {
        return Err(err!(OutOfRange, "profiles", "c_r = {c_r} has no critical layer"));
    }
    let g = |y: f64| (1.0 - c_r) - profile.deficit(y);
    let (mut lo, mut hi) = (0.0, top);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi || hi - lo < 1e-13 * (1.0 + mid) {
            break;
        }
        if g(mid) > 0.0 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    let mut y = 0.5 * (lo + hi);
    for _ in 0..3 {
        let d = profile.eval_k(y, 1);
        if d > 0.0 {
            let step = g(y) / d;
            if step.abs() < hi - lo + 1e-12 {
                y -= step;
            }
        }
    }
    Ok(y)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn blasius() -> Profile {
        Profile::blasius_default().unwrap()
    }

    #[test]
    fn blasius_boundary_values_and_shooting_constant() {
        let sol = solve_blasius(1e-10, 12.0).unwrap();
        assert_eq!(sol.f(0.0, 0), 0.0);
        assert_eq!(sol.f(0.0, 1), 0.0);
        assert!((sol.fpp0 - 0.332057336215).abs() < 1e-10);
        assert!((sol.f(12.0, 1) - 1.0).abs() < 1e-7);
        assert!(sol.ode_residual() < 1e-8);
    }

    #[test]
    fn blasius_deficit_matches_derivative_and_is_positive() {
        let p = blasius();
        for &y in &[0.5, 3.0, 8.0, 15.0, 19.9, 20.1, 30.0] {
            let h = 1e-4;
            let d = -(p.deficit(y + h) - p.deficit(y - h)) / (2.0 * h);
            assert!(p.deficit(y) > 0.0);
            assert!((d - p.eval_k(y, 1)).abs() <= 1e-6 * p.eval_k(y, 1).abs() + 1e-20, "{y}");
        }
    }

    #[test]
    fn analytic_closed_forms() {
        let t = make_analytic_profile(ProfileKind::Tanh, 1.0).unwrap();
        assert_eq!(t.eval_k(0.0, 0), 0.0);
        assert_eq!(t.wall_slope(), 1.0);
        let e = make_analytic_profile(ProfileKind::Exp, 2.0).unwrap();
        assert_eq!(e.eval_k(0.0, 2), -4.0);
        assert!(make_analytic_profile(ProfileKind::Exp, 0.0).is_err());
    }

    #[test]
    fn structure_check_examples() {
        let g = GridSpec::uniform(40.0, 80);
        let t = make_analytic_profile(ProfileKind::Tanh, 1.0).unwrap();
        assert!(check_structure(&t, 1.9, &g).unwrap().passed());
        assert!(!check_structure(&t, 3.0, &g).unwrap().passed());
        let e = make_analytic_profile(ProfileKind::Exp, 2.0).unwrap();
        assert!(check_structure(&e, 1.0, &g).unwrap().passed());
        assert!(check_structure(&blasius(), 0.3, &g).unwrap().passed());
    }

    #[test]
    fn critical_layer_roots() {
        let t = make_analytic_profile(ProfileKind::Tanh, 1.0).unwrap();
        assert!((critical_layer(&t, 1f64.tanh()).unwrap() - 1.0).abs() < 1e-12);
        assert!(critical_layer(&t, 0.0).is_err());
        let b = blasius();
        let yc = critical_layer(&b, 0.05).unwrap();
        assert!((b.eval_k(yc, 0) - 0.05).abs() < 1e-13);
        assert!((yc - 0.05 / 0.33206).abs() < 0.01 * yc);
    }

    #[test]
    fn csv_round_trip() {
        let b = blasius();
        let ys: Vec<f64> = (0..=400).map(|i| i as f64 * 0.05).collect();
        let mut buf = Vec::new();
        b.write_csv(&mut buf, &ys, Some("config-hash: test")).unwrap();
        let t = Profile::read_csv(buf.as_slice()).unwrap();
        assert_eq!(t.kind(), ProfileKind::CustomTable);
        for &y in &[0.013, 1.234, 4.56] {
            assert!((t.eval_k(y, 0) - b.eval_k(y, 0)).abs() < 1e-10);
            assert!((t.eval_k(y, 1) - b.eval_k(y, 1)).abs() < 1e-8);
        }
    }
}
