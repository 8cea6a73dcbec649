//! Complex Airy function `Ai`, its derivative and its integral
//! `J(z) = int_z^inf Ai(t) dt`, together with the rotated antiderivatives
//! used by the fast-mode construction.
//!
//! Three evaluation regimes are combined. Near the origin the Maclaurin
//! series is summed. Far out the Poincaré expansions are used directly when
//! `|arg z| <= 2pi/3` and through the connection formula
//! `Ai(z) = -w Ai(wz) - w^2 Ai(w^2 z)` otherwise. In between, the Airy
//! equation is integrated by Taylor steps along the ray through `z`, inward
//! from the asymptotic circle inside the sector of decay and outward from the
//! series disc elsewhere, so every step runs in the stable direction.
//! Large arguments are handled in [`Scaled`] form.

use std::f64::consts::PI;

use serde::Serialize;

use crate::error::{err, Result};
use crate::quad;
use crate::scaled::Scaled;
use crate::{cis, C64};

pub const AI0: f64 = 0.355_028_053_887_817_24;
pub const AIP0: f64 = -0.258_819_403_792_806_8;

/// Radius beyond which `Ai` and `Ai'` use the asymptotic expansion.
pub const R_ASYMPTOTIC: f64 = 8.0;
/// Radius beyond which the integral `J` uses the asymptotic expansion.
const R_ASYMPTOTIC_INT: f64 = 12.0;
/// Radius of the Maclaurin disc.
const R_SERIES: f64 = 2.0;
const MAX_STEP: f64 = 0.5;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum AiryRegime {
    Series,
    /// Taylor integration of the Airy equation between series and asymptotics.
    Bridge,
    Asymptotic,
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct AiryEval {
    pub ai: C64,
    pub ai_prime: C64,
    pub regime: AiryRegime,
}

/// `Ai`, `Ai'` and `J = int_z^inf Ai` in scaled form.
#[derive(Debug, Clone, Copy)]
pub struct AiryTriple {
    pub ai: Scaled,
    pub aip: Scaled,
    pub int: Scaled,
}

fn omega() -> C64 {
    cis(2.0 * PI / 3.0)
}

/// Taylor step of `(Ai, Ai', J)` from `z0` by `h`.
fn taylor_step(z0: C64, y: C64, yp: C64, j: C64, h: C64) -> (C64, C64, C64) {
    let mut a_prev = C64::new(0.0, 0.0); // a_{n-1}
    let mut a_n = y; // a_n
    let mut a_next = yp; // a_{n+1}
    let mut hp = C64::new(1.0, 0.0); // h^n
    let mut sy = C64::new(0.0, 0.0);
    let mut syp = C64::new(0.0, 0.0);
    let mut sj = C64::new(0.0, 0.0);
    let mut small = 0;
    for n in 0..400usize {
        let t = a_n * hp;
        sy += t;
        sj += t * h / (n + 1) as f64;
        if n >= 1 {
            syp += a_n * (n as f64) * hp / h;
        }
        let scale = sy.norm() + syp.norm() * h.norm() + 1e-300;
        if t.norm() < 1e-18 * scale {
            small += 1;
            if small >= 3 {
                break;
            }
        } else {
            small = 0;
        }
        let a_next2 = (z0 * a_n + a_prev) / ((n + 2) * (n + 1)) as f64;
        a_prev = a_n;
        a_n = a_next;
        a_next = a_next2;
        hp *= h;
    }
    if h.norm() == 0.0 {
        return (y, yp, j);
    }
    (sy, syp, j - sj)
}

fn series(z: C64) -> (C64, C64, C64) {
    taylor_step(C64::new(0.0, 0.0), C64::new(AI0, 0.0), C64::new(AIP0, 0.0), C64::new(1.0 / 3.0, 0.0), z)
}

/// Poincaré expansions for `|arg z| <= 2pi/3`: returns the mantissas of
/// `Ai`, `Ai'`, `J` relative to `exp(-zeta)` and `-zeta` itself.
fn asymptotic_core(z: C64) -> (C64, C64, C64, C64) {
    let sq = z.sqrt();
    let zeta = 2.0 / 3.0 * z * sq;
    let z14 = sq.sqrt();
    let inv = 1.0 / zeta;
    let (mut su, mut sv, mut sg) = (C64::new(1.0, 0.0), C64::new(1.0, 0.0), C64::new(1.0, 0.0));
    let mut u = 1.0f64;
    let mut g_prev = 1.0f64;
    let mut p = C64::new(1.0, 0.0);
    let mut last = f64::INFINITY;
    for k in 1..80usize {
        let kf = k as f64;
        u *= (6.0 * kf - 5.0) * (6.0 * kf - 3.0) * (6.0 * kf - 1.0) / ((2.0 * kf - 1.0) * 216.0 * kf);
        let v = -(6.0 * kf + 1.0) / (6.0 * kf - 1.0) * u;
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        let g = sign * u - (kf - 0.5) * g_prev;
        p *= inv;
        let tu = p * (sign * u);
        let tv = p * (sign * v);
        let tg = p * g;
        let mag = tu.norm().max(tv.norm()).max(tg.norm());
        if mag > last {
            break;
        }
        su += tu;
        sv += tv;
        sg += tg;
        g_prev = g;
        last = mag;
        if mag < 1e-17 {
            break;
        }
    }
    let c = 0.5 / PI.sqrt();
    (c / z14 * su, -c * z14 * sv, c / (z14 * sq) * sg, -zeta)
}

fn asymptotic_scaled(z: C64) -> AiryTriple {
    if z.arg().abs() <= 2.0 * PI / 3.0 + 1e-12 {
        let (a, ap, j, s) = asymptotic_core(z);
        let e = Scaled::exp(s);
        return AiryTriple { ai: e * a, aip: e * ap, int: e * j };
    }
    let w = omega();
    let w2 = w * w;
    let (a1, ap1, j1, s1) = asymptotic_core(w * z);
    let (a2, ap2, j2, s2) = asymptotic_core(w2 * z);
    let e1 = Scaled::exp(s1);
    let e2 = Scaled::exp(s2);
    let ai = -(e1 * (w * a1)) - e2 * (w2 * a2);
    let aip = -(e1 * (w2 * ap1)) - e2 * (w * ap2);
    let int = Scaled::from_c(C64::new(1.0, 0.0)) - e1 * j1 - e2 * j2;
    AiryTriple { ai, aip, int }
}

fn walk(z_from: C64, z_to: C64, mut y: C64, mut yp: C64, mut j: C64) -> (C64, C64, C64) {
    let d = z_to - z_from;
    let n = (d.norm() / MAX_STEP).ceil().max(1.0) as usize;
    let h = d / n as f64;
    let mut z = z_from;
    for _ in 0..n {
        (y, yp, j) = taylor_step(z, y, yp, j, h);
        z += h;
    }
    (y, yp, j)
}

fn triple_with_radius(z: C64, r_asym: f64) -> (AiryTriple, AiryRegime) {
    let r = z.norm();
    if r <= R_SERIES {
        let (a, ap, j) = series(z);
        return (AiryTriple { ai: a.into(), aip: ap.into(), int: j.into() }, AiryRegime::Series);
    }
    if r >= r_asym {
        return (asymptotic_scaled(z), AiryRegime::Asymptotic);
    }
    let dir = z / r;
    let (a, ap, j) = if z.arg().abs() <= PI / 3.0 {
        let start = dir * r_asym;
        let t = asymptotic_scaled(start);
        walk(start, z, t.ai.value(), t.aip.value(), t.int.value())
    } else {
        let start = dir * R_SERIES;
        let (a, ap, j) = series(start);
        walk(start, z, a, ap, j)
    };
    (AiryTriple { ai: a.into(), aip: ap.into(), int: j.into() }, AiryRegime::Bridge)
}

/// `Ai(z)`, `Ai'(z)` in scaled form.
pub fn airy_scaled(z: C64) -> (Scaled, Scaled, AiryRegime) {
    let (t, reg) = triple_with_radius(z, R_ASYMPTOTIC);
    (t.ai, t.aip, reg)
}

/// `Ai(z)`, `Ai'(z)` and `int_z^inf Ai` in scaled form.
pub fn airy_triple(z: C64) -> AiryTriple {
    triple_with_radius(z, R_ASYMPTOTIC_INT).0
}

/// `Ai(z)` and `Ai'(z)` as plain complex numbers.
pub fn eval_airy(z: C64) -> Result<AiryEval> {
    if !(z.re.is_finite() && z.im.is_finite()) {
        return Err(err!(InvalidInput, "airyfn", "argument must be finite"));
    }
    let (a, ap, regime) = airy_scaled(z);
    if a.ln_abs() > 700.0 || ap.ln_abs() > 700.0 {
        return Err(err!(Overflow, "airyfn", "|Ai({z})| exceeds the double range"));
    }
    Ok(AiryEval { ai: a.value(), ai_prime: ap.value(), regime })
}

/// Leading asymptotic term `z^{-1/4} exp(-2/3 z^{3/2}) / (2 sqrt(pi))`.
pub fn airy_leading(z: C64) -> C64 {
    let sq = z.sqrt();
    (-(2.0 / 3.0) * z * sq).exp() / (2.0 * PI.sqrt() * sq.sqrt())
}

/// The four rotated antiderivatives at one point.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct RotatedAntiderivatives {
    pub a1: C64,
    pub a2: C64,
    pub b1: C64,
    pub b2: C64,
    pub theta0: f64,
}

/// Scaled form of [`RotatedAntiderivatives`].
#[derive(Debug, Clone, Copy)]
pub struct RotatedScaled {
    pub a1: Scaled,
    pub a2: Scaled,
    pub b1: Scaled,
    pub b2: Scaled,
}

fn check_theta0(theta0: f64) -> Result<()> {
    if !(theta0.abs() <= PI / 100.0) {
        return Err(err!(SectorViolation, "airyfn", "theta0 = {theta0} leaves |theta0| <= pi/100"));
    }
    Ok(())
}

/// `int_w^inf J`, equal to `-Ai'(w) - w J(w)`.
fn second_integral(t: &AiryTriple, w: C64) -> Scaled {
    -t.aip - t.int * w
}

/// Rotated antiderivatives from closed forms in `Ai`, `Ai'` and `J`.
pub fn rotated_antiderivatives_scaled(z: C64, theta0: f64) -> Result<RotatedScaled> {
    check_theta0(theta0)?;
    let p1 = PI / 6.0 - theta0;
    let p2 = 5.0 * PI / 6.0 - theta0;
    let w1 = cis(p1) * z;
    let t1 = airy_triple(w1);
    let a1 = t1.int * (-cis(-p1));
    let a2 = second_integral(&t1, w1) * cis(-2.0 * p1);
    let w2 = cis(p2) * z;
    let t2 = airy_triple(w2);
    let b1 = (Scaled::from_c(C64::new(1.0 / 3.0, 0.0)) - t2.int) * cis(-p2);
    let j2_0 = Scaled::from_c(C64::new(-AIP0, 0.0));
    let b2 = Scaled::from_c(cis(-p2) * z / 3.0) - (j2_0 - second_integral(&t2, w2)) * cis(-2.0 * p2);
    Ok(RotatedScaled { a1, a2, b1, b2 })
}

pub fn eval_rotated_antiderivatives(z: C64, theta0: f64) -> Result<RotatedAntiderivatives> {
    let s = rotated_antiderivatives_scaled(z, theta0)?;
    let all = [s.a1, s.a2, s.b1, s.b2];
    if all.iter().any(|v| v.ln_abs() > 700.0) {
        return Err(err!(Overflow, "airyfn", "rotated antiderivative at {z} exceeds the double range"));
    }
    Ok(RotatedAntiderivatives { a1: s.a1.value(), a2: s.a2.value(), b1: s.b1.value(), b2: s.b2.value(), theta0 })
}

/// The same four quantities by adaptive Gauss–Kronrod quadrature: along the
/// horizontal ray `[z, z + inf)` for `A` and the segment `[0, z]` for `B`.
pub fn rotated_antiderivatives_quadrature(z: C64, theta0: f64, tol: f64) -> Result<RotatedAntiderivatives> {
    check_theta0(theta0)?;
    let p1 = PI / 6.0 - theta0;
    let p2 = 5.0 * PI / 6.0 - theta0;
    if p1.abs() >= PI / 3.0 {
        return Err(err!(SectorViolation, "airyfn", "ray direction {p1} does not decay"));
    }
    let r1 = cis(p1);
    let ai = |w: C64| airy_scaled(w).0.value();
    let a1 = -quad::integrate_to_inf(|x| ai(r1 * (z + x)), 0.0, tol, 1e-13)?;
    let a2 = quad::integrate_to_inf(|x| ai(r1 * (z + x)) * x, 0.0, tol, 1e-13)?;
    let r2 = cis(p2);
    let b1 = z * quad::integrate(|s| ai(r2 * z * s), 0.0, 1.0, tol, 1e-13)?;
    let b2 = z * z * quad::integrate(|s| ai(r2 * z * s) * (1.0 - s), 0.0, 1.0, tol, 1e-13)?;
    Ok(RotatedAntiderivatives { a1, a2, b1, b2, theta0 })
}

/// `A_0'(z) / A_0(z)` with `A_0(z) = int_{e^{i(pi/6 - theta0)} z}^inf Ai`.
pub fn a0_log_derivative(z: C64, theta0: f64, delta0: f64) -> Result<C64> {
    if z.im > delta0 {
        return Err(err!(InvalidInput, "airyfn", "Im z = {} exceeds delta0 = {delta0}", z.im));
    }
    check_theta0(theta0)?;
    let r = cis(PI / 6.0 - theta0);
    let t = airy_triple(r * z);
    if t.int.ln_abs() < (1e-300f64).ln() {
        return Err(err!(Degenerate, "airyfn", "|A_0({z})| below 1e-300"));
    }
    Ok(((t.ai * (-r)) / t.int).value())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rel(a: C64, b: C64) -> f64 {
        (a - b).norm() / b.norm()
    }

    #[test]
    fn values_at_origin() {
        let e = eval_airy(C64::new(0.0, 0.0)).unwrap();
        assert!((e.ai.re - 0.3550280538878).abs() < 1e-13);
        assert!((e.ai_prime.re + 0.2588194037928).abs() < 1e-13);
        assert_eq!(e.regime, AiryRegime::Series);
    }

    #[test]
    fn reference_values() {
        // Ai(1+2i) and Ai(-5) from 30-digit evaluation
        let a = eval_airy(C64::new(1.0, 2.0)).unwrap();
        assert!(rel(a.ai, C64::new(-0.219386254981427557, -0.175385911408109418)) < 1e-12);
        let b = eval_airy(C64::new(-5.0, 0.0)).unwrap();
        assert!((b.ai.re - 0.3507610090241142).abs() < 1e-12);
        assert!(b.ai.im.abs() < 1e-12);
    }

    #[test]
    fn wronskian_with_rotated_argument() {
        let w = omega();
        let want = cis(-PI / 6.0) / (2.0 * PI);
        let mut pts: Vec<C64> = [(0.5, 0.3), (3.0, -2.5), (7.9, 1.0), (8.1, 2.9), (15.0, -0.4)]
            .iter()
            .map(|&(r, t)| C64::from_polar(r, t))
            .collect();
        // the rays used by the fast mode, where the product stays of order one
        for &x in &[-300.0, -60.0, -8.05, -7.95, 8.05, 40.0, 250.0] {
            pts.push(cis(PI / 6.0 - 0.01) * C64::new(x, -0.05));
        }
        for z in pts {
            let (a, ap, _) = airy_scaled(z);
            let (b, bp, _) = airy_scaled(w * z);
            let wr = a * (bp * w) - ap * b;
            assert!((wr.value() - want).norm() < 1e-10, "{z} {}", wr.value());
        }
    }

    #[test]
    fn integral_matches_quadrature() {
        for &z in &[C64::new(1.0, 0.5), C64::new(-6.0, 1.0), C64::new(4.0, -9.0), C64::new(-11.0, -11.0)] {
            let t = airy_triple(z);
            let w = C64::new(1.0, 0.0);
            let q = quad::integrate_to_inf(|x| airy_scaled(z + w * x).0.value(), 0.0, 1e-15, 1e-13).unwrap();
            assert!(rel(t.int.value(), q) < 1e-11, "{z}: {} vs {q}", t.int.value());
        }
    }

    #[test]
    fn antiderivative_routes_agree() {
        for &z in &[C64::new(2.0, 0.05), C64::new(-3.0, -0.05), C64::new(15.0, 0.0), C64::new(-9.0, 0.0)] {
            let a = eval_rotated_antiderivatives(z, 0.01).unwrap();
            let b = rotated_antiderivatives_quadrature(z, 0.01, 1e-300).unwrap();
            assert!(rel(a.a1, b.a1) < 1e-10);
            assert!(rel(a.a2, b.a2) < 1e-10);
            assert!(rel(a.b1, b.b1) < 1e-10);
            assert!(rel(a.b2, b.b2) < 1e-10);
        }
        assert_eq!(eval_rotated_antiderivatives(C64::new(0.0, 0.0), 0.0).unwrap().b1.norm(), 0.0);
        assert!(eval_rotated_antiderivatives(C64::new(1.0, 0.0), 0.1).is_err());
    }

    #[test]
    fn log_derivative_bounds_on_real_axis() {
        for k in 0..=40 {
            let x = k as f64 * 0.5;
            let v = a0_log_derivative(C64::new(x, 0.0), 0.0, 0.1).unwrap();
            assert!(v.re <= -1.0 / 3.0);
            assert!(v.norm() <= 5.0 * (1.0 + x.sqrt()));
        }
        assert!(a0_log_derivative(C64::new(0.0, 0.2), 0.0, 0.1).is_err());
    }
}
