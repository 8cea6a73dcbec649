//! Checks against oracles built independently of the library code.

use std::f64::consts::PI;
use std::sync::Arc;

use tswave::airyfn::{airy_triple, eval_airy};
use tswave::dispersion::{decades, solve_temporal, sweep_scaling, DispersionSetup, Observable};
use tswave::modes::helmholtz_halfline;
use tswave::profiles::solve_blasius;
use tswave::rayleigh::slow_mode;
use tswave::{ComplexField, GridSpec, Profile, Tier, WaveContext, C64};

fn rk4_blasius(fpp0: f64, zeta_end: f64, h: f64) -> Vec<[f64; 3]> {
    let rhs = |y: [f64; 3]| [y[1], y[2], -0.5 * y[0] * y[2]];
    let mut y = [0.0, 0.0, fpp0];
    let mut out = vec![y];
    for _ in 0..(zeta_end / h).round() as usize {
        let k1 = rhs(y);
        let k2 = rhs(std::array::from_fn(|i| y[i] + 0.5 * h * k1[i]));
        let k3 = rhs(std::array::from_fn(|i| y[i] + 0.5 * h * k2[i]));
        let k4 = rhs(std::array::from_fn(|i| y[i] + h * k3[i]));
        y = std::array::from_fn(|i| y[i] + h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]));
        out.push(y);
    }
    out
}

#[test]
fn blasius_matches_rk4_shooting() {
    let h = 1e-3;
    let mut lo = 0.3;
    let mut hi = 0.4;
    for _ in 0..60 {
        let mid = 0.5 * (lo + hi);
        if rk4_blasius(mid, 12.0, h).last().unwrap()[1] > 1.0 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    let fpp0 = 0.5 * (lo + hi);
    let sol = solve_blasius(1e-10, 12.0).unwrap();
    assert!((sol.fpp0 - fpp0).abs() < 1e-8, "{} vs {fpp0}", sol.fpp0);
    let track = rk4_blasius(sol.fpp0, 8.0, h);
    for k in (0..=8000).step_by(250) {
        let z = k as f64 * h;
        for j in 0..3 {
            assert!((sol.f(z, j) - track[k][j]).abs() < 1e-8, "zeta {z}, derivative {j}");
        }
    }
}

#[test]
fn airy_matches_amos() {
    for r in [0.3, 1.5, 3.0, 6.0, 10.0, 18.0] {
        for k in 0..16 {
            let z = C64::from_polar(r, -PI + (k as f64 + 0.25) * PI / 8.0);
            let e = eval_airy(z).unwrap();
            let a = complex_bessel::airy(z).unwrap();
            let ap = complex_bessel::airyprime(z).unwrap();
            assert!((e.ai - a).norm() <= 1e-10 * a.norm(), "Ai at {z}");
            assert!((e.ai_prime - ap).norm() <= 1e-10 * ap.norm(), "Ai' at {z}");
        }
    }
}

/// `int_z^inf Ai` by composite Simpson along `z + t` with AMOS values.
fn airy_integral_oracle(z: C64) -> C64 {
    let (t_end, n) = (30.0, 6000);
    let h = t_end / n as f64;
    let mut s = C64::new(0.0, 0.0);
    for k in 0..=n {
        let w = if k == 0 || k == n { 1.0 } else if k % 2 == 1 { 4.0 } else { 2.0 };
        s += w * complex_bessel::airy(z + k as f64 * h).unwrap();
    }
    s * h / 3.0
}

#[test]
fn airy_integral_matches_quadrature() {
    for z in [C64::new(0.0, 0.0), C64::new(1.0, 0.5), C64::new(-2.0, 1.0), C64::new(0.5, -3.0), C64::new(-4.0, -0.5)] {
        let got = airy_triple(z).int.value();
        let want = airy_integral_oracle(z);
        assert!((got - want).norm() < 1e-9 * want.norm().max(1.0), "{z}: {got} vs {want}");
    }
}

#[test]
fn helmholtz_matches_closed_form() {
    let beta = C64::new(0.7, 0.2);
    let grid = Arc::new(GridSpec::uniform(40.0, 80));
    let g = ComplexField::from_fn(grid.clone(), |y| C64::new(-2.0 * y, 0.0).exp());
    let f = helmholtz_halfline(&g, beta).unwrap();
    let d = 4.0 - beta * beta;
    let k = -(beta + 2.0) / (2.0 * beta * d);
    let exact = ComplexField::from_fn(grid, |y| (-2.0 * y).exp() / d + k * (-beta * y).exp());
    let err = f.values.iter().zip(&exact.values).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max);
    assert!(err < 1e-10, "{err}");
}

#[test]
fn growth_rate_follows_eighth_power_in_feasible_window() {
    let setup = DispersionSetup::new(Profile::blasius_default().unwrap(), 1e-16, 0.3);
    let res = sweep_scaling(&setup, &decades(16, 21), 10.0, Observable::CI, Tier::Leading, 2).unwrap();
    let fit = res.fit.expect("every point solves");
    assert!((fit.exponent - 0.125).abs() < 0.01, "{}", fit.exponent);
    assert!(fit.r_squared > 0.999);
}

#[test]
fn wall_constant_stays_bounded_in_feasible_window() {
    let p = Profile::blasius_default().unwrap();
    let m = 0.3;
    let mut ks = Vec::new();
    for nu in [1e-16, 1e-18, 1e-20] {
        let setup = DispersionSetup::new(p.clone(), nu, m);
        let alpha_r = setup.alpha_for(10.0);
        let c = solve_temporal(&setup, alpha_r, Tier::Leading).unwrap().c;
        let ctx = WaveContext::new(&p, nu, m, 0.0, C64::new(alpha_r, 0.0), c).unwrap();
        let mode = slow_mode(&p, &ctx).unwrap();
        let want = -(1.0 - m * m) * c + ctx.beta / ctx.slope_c;
        let scale = (ctx.alpha.norm_sqr() + c.norm_sqr()) * c.im.ln().abs();
        ks.push((mode.wall_value - want).norm() / scale);
    }
    assert!(ks.iter().all(|&k| k <= 50.0));
    assert!(ks[2] <= 2.0 * ks[0]);
}
