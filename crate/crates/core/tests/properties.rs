//! Randomised invariants.

use std::f64::consts::PI;
use std::sync::{Arc, OnceLock};

use proptest::prelude::*;
use tswave::airyfn::eval_airy;
use tswave::dispersion::fit_power_law;
use tswave::langer::build_langer;
use tswave::modes::helmholtz_halfline;
use tswave::{ComplexField, GridSpec, Profile, Scaled, WaveContext, C64};

fn blasius() -> &'static Profile {
    static P: OnceLock<Profile> = OnceLock::new();
    P.get_or_init(|| Profile::blasius_default().unwrap())
}

fn cx() -> impl Strategy<Value = C64> {
    (0.0f64..15.0, -PI..PI).prop_map(|(r, t)| C64::from_polar(r, t))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn airy_agrees_with_amos(z in cx()) {
        let e = eval_airy(z).unwrap();
        let a = complex_bessel::airy(z).unwrap();
        let ap = complex_bessel::airyprime(z).unwrap();
        prop_assert!((e.ai - a).norm() <= 1e-9 * a.norm().max(1e-300));
        prop_assert!((e.ai_prime - ap).norm() <= 1e-9 * ap.norm().max(1e-300));
    }

    #[test]
    fn airy_connection_identity(z in cx()) {
        let w = C64::from_polar(1.0, 2.0 * PI / 3.0);
        let terms = [eval_airy(z).unwrap().ai, w * eval_airy(w * z).unwrap().ai, w * w * eval_airy(w * w * z).unwrap().ai];
        let size = terms.iter().map(|t| t.norm()).fold(1.0, f64::max);
        prop_assert!((terms[0] + terms[1] + terms[2]).norm() <= 1e-9 * size);
    }

    #[test]
    fn scaled_products_and_sums(a in cx(), b in cx(), ea in -300.0f64..300.0, eb in -300.0f64..300.0) {
        let x = Scaled::new(a, ea);
        let y = Scaled::new(b, eb);
        let p = x * y;
        prop_assert!((p.ln_abs() - (a.norm().ln() + b.norm().ln() + ea + eb)).abs() < 1e-9);
        let s = Scaled::from_c(a) + Scaled::from_c(b);
        prop_assert!((s.value() - (a + b)).norm() <= 1e-13 * (a.norm() + b.norm()).max(1.0));
        let q = x / y;
        prop_assert!((q.ln_abs() - (a.norm().ln() - b.norm().ln() + ea - eb)).abs() < 1e-9);
    }

    #[test]
    fn power_law_fit_recovers_exponent(k in -2.0f64..2.0, c in 0.1f64..10.0) {
        let pts: Vec<(f64, f64)> = (1..=6).map(|i| {
            let x = 10f64.powi(-i);
            (x, c * x.powf(k))
        }).collect();
        let fit = fit_power_law(&pts).unwrap();
        prop_assert!((fit.exponent - k).abs() < 1e-10);
        prop_assert!((fit.intercept - c.ln()).abs() < 1e-8);
    }

    #[test]
    fn grid_derivative_is_exact_on_polynomials(coef in prop::collection::vec(-1.0f64..1.0, 1..10)) {
        let g = GridSpec::uniform(5.0, 5);
        let f: Vec<C64> = g.map(|y| C64::new(coef.iter().rev().fold(0.0, |s, c| s * y + c), 0.0));
        let df = g.derivative(&f);
        for (y, d) in g.nodes().iter().zip(df) {
            let exact: f64 = coef.iter().enumerate().skip(1).map(|(k, c)| k as f64 * c * y.powi(k as i32 - 1)).sum();
            prop_assert!((d.re - exact).abs() < 1e-7 * exact.abs().max(1.0));
        }
    }

    #[test]
    fn profile_is_monotone_with_consistent_derivatives(y in 0.05f64..20.0) {
        let p = blasius();
        prop_assert!(p.eval_k(y, 1) >= 0.0);
        prop_assert!(p.eval_k(y + 0.01, 0) >= p.eval_k(y, 0));
        let h = 1e-4;
        for k in 0..3 {
            let fd = (p.eval_k(y + h, k) - p.eval_k(y - h, k)) / (2.0 * h);
            prop_assert!((fd - p.eval_k(y, k + 1)).abs() < 1e-6, "k = {}", k);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn langer_map_is_increasing(c_r in 0.15f64..0.6, c_i in 0.001f64..0.05) {
        let p = blasius();
        let ctx = WaveContext::new(p, 1e-8, 0.3, 0.0, C64::new(0.05, 0.0), C64::new(c_r, c_i)).unwrap();
        let map = build_langer(p, &ctx, 1.0).unwrap();
        let mut last = f64::NEG_INFINITY;
        for k in 0..=400 {
            let y = 20.0 * k as f64 / 400.0;
            let e = map.eta_r(y);
            prop_assert!(e > last, "eta_r not increasing at {}", y);
            prop_assert!(map.d_eta(y) > 0.0);
            last = e;
        }
    }

    #[test]
    fn helmholtz_solve_is_linear(
        br in 0.2f64..2.0, bi in -1.0f64..1.0,
        a in cx(), b in cx(),
        r1 in 0.5f64..3.0, r2 in 0.5f64..3.0,
    ) {
        let beta = C64::new(br, bi);
        let grid = Arc::new(GridSpec::uniform(40.0, 80));
        let g1 = ComplexField::from_fn(grid.clone(), |y| C64::new(1.0, y).scale((-r1 * y).exp()));
        let g2 = ComplexField::from_fn(grid.clone(), |y| C64::new(y * y, -1.0).scale((-r2 * y).exp()));
        let mix = ComplexField::new(grid.clone(), g1.values.iter().zip(&g2.values).map(|(u, v)| a * u + b * v).collect());
        let f1 = helmholtz_halfline(&g1, beta).unwrap();
        let f2 = helmholtz_halfline(&g2, beta).unwrap();
        let fm = helmholtz_halfline(&mix, beta).unwrap();
        let scale = (a.norm() * f1.sup() + b.norm() * f2.sup()).max(1e-12);
        for i in 0..fm.values.len() {
            let d = fm.values[i] - (a * f1.values[i] + b * f2.values[i]);
            prop_assert!(d.norm() <= 1e-12 * scale);
        }
    }
}
