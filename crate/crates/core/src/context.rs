//! Parameter bundle of a single wave and the quantities derived from it.

use serde::Serialize;

use crate::error::{err, Result};
use crate::profiles::{critical_layer, Profile};
use crate::{C64, I};

/// Physical and wave parameters with derived scales.
#[derive(Debug, Clone, Serialize)]
pub struct WaveContext {
    pub nu: f64,
    pub m: f64,
    pub lambda: f64,
    /// Phase parameter with `alpha = |alpha| exp(-3 i theta0)`.
    pub theta0: f64,
    pub alpha: C64,
    pub c: C64,
    /// `sqrt(nu) / (i alpha)`.
    pub eps: C64,
    #[serde(rename = "Yc")]
    pub yc: f64,
    pub a_inf: C64,
    pub beta: C64,
    pub kappa: f64,
    /// `U_s'(Y_c)`.
    pub slope_c: f64,
    /// `U_s'(0)`.
    pub slope_wall: f64,
}

impl WaveContext {
    pub fn new(profile: &Profile, nu: f64, m: f64, lambda: f64, alpha: C64, c: C64) -> Result<Self> {
        if !(nu > 0.0) {
            return Err(err!(InvalidInput, "langer", "nu must be positive"));
        }
        if !(0.0..1.0).contains(&m) {
            return Err(err!(InvalidInput, "langer", "Mach number must lie in [0, 1)"));
        }
        if !(alpha.norm() > 0.0) {
            return Err(err!(InvalidInput, "langer", "alpha must be nonzero"));
        }
        let theta0 = -alpha.arg() / 3.0;
        let eps = C64::new(nu.sqrt(), 0.0) / (I * alpha);
        let yc = critical_layer(profile, c.re)?;
        let slope_c = profile.eval_k(yc, 1);
        let a_inf = 1.0 - m * m * (1.0 - c) * (1.0 - c);
        let beta = alpha * a_inf.sqrt();
        let kappa = eps.norm().powf(-1.0 / 3.0) * slope_c.cbrt();
        Ok(WaveContext {
            nu,
            m,
            lambda,
            theta0,
            alpha,
            c,
            eps,
            yc,
            a_inf,
            beta,
            kappa,
            slope_c,
            slope_wall: profile.wall_slope(),
        })
    }

    /// `A(Y) = 1 - m^2 (U_s - c)^2` for a given `U_s`.
    pub fn a_of(&self, u: f64) -> C64 {
        let d = u - self.c;
        1.0 - self.m * self.m * d * d
    }

    /// Rotation `pi/6 - theta0` of the decaying Airy factor.
    pub fn phi1(&self) -> f64 {
        std::f64::consts::PI / 6.0 - self.theta0
    }

    /// Rotation `5 pi/6 - theta0` of the growing Airy factor.
    pub fn phi2(&self) -> f64 {
        5.0 * std::f64::consts::PI / 6.0 - self.theta0
    }

    /// Imaginary part of the Langer variable, `-c_i / U_s'(Y_c)`.
    pub fn eta_i(&self) -> f64 {
        -self.c.im / self.slope_c
    }

    /// Leading-order phase speed `alpha / (U_s'(0) sqrt(1 - m^2))`.
    pub fn c0(&self) -> C64 {
        self.alpha / (self.slope_wall * (1.0 - self.m * self.m).sqrt())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::profiles::{make_analytic_profile, ProfileKind};

    #[test]
    fn derived_quantities() {
        let p = make_analytic_profile(ProfileKind::Tanh, 1.0).unwrap();
        let ctx = WaveContext::new(&p, 1e-8, 0.3, 0.0, C64::new(0.05, 0.0), C64::new(0.1, 0.01)).unwrap();
        assert!((ctx.eps.norm() - 1e-4 / 0.05).abs() < 1e-15);
        assert!(ctx.a_inf.sqrt().re > 0.0);
        assert_eq!(ctx.theta0, 0.0);
        let ctx0 = WaveContext::new(&p, 1e-8, 0.3, 0.0, C64::new(0.05, 0.0), C64::new(1e-9, 0.0)).unwrap();
        let want = 0.05 * (1.0f64 - 0.09).sqrt();
        assert!((ctx0.beta.re - want).abs() < 1e-9);
        assert!(WaveContext::new(&p, 1e-8, 1.2, 0.0, C64::new(0.05, 0.0), C64::new(0.1, 0.0)).is_err());
    }
}
