//! Adaptive Gauss–Kronrod (7/15) quadrature for complex-valued integrands.

use crate::error::{err, Result};
use crate::C64;

const XGK: [f64; 8] = [
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
];
const WGK: [f64; 8] = [
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
];
const WG: [f64; 4] = [
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
];

fn gk15(f: &mut impl FnMut(f64) -> C64, a: f64, b: f64) -> (C64, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut k = fc * WGK[7];
    let mut g = fc * WG[3];
    for j in 0..7 {
        let dx = h * XGK[j];
        let s = f(c - dx) + f(c + dx);
        k += s * WGK[j];
        if j % 2 == 1 {
            g += s * WG[j / 2];
        }
    }
    (k * h, ((k - g) * h).norm())
}

/// Integral of `f` over `[a, b]` to `max(abs_tol, rel_tol*|I|)`.
pub fn integrate(
    mut f: impl FnMut(f64) -> C64,
    a: f64,
    b: f64,
    abs_tol: f64,
    rel_tol: f64,
) -> Result<C64> {
    if a == b {
        return Ok(C64::new(0.0, 0.0));
    }
    let (v, e) = gk15(&mut f, a, b);
    let mut parts = vec![(a, b, v, e)];
    let mut total = v;
    let mut err_sum = e;
    for _ in 0..4000 {
        if err_sum <= abs_tol.max(rel_tol * total.norm()) {
            return Ok(total);
        }
        let (idx, _) = parts
            .iter()
            .enumerate()
            .max_by(|x, y| x.1 .3.partial_cmp(&y.1 .3).unwrap())
            .unwrap();
        let (lo, hi, v0, e0) = parts.swap_remove(idx);
        let mid = 0.5 * (lo + hi);
        let (v1, e1) = gk15(&mut f, lo, mid);
        let (v2, e2) = gk15(&mut f, mid, hi);
        total += v1 + v2 - v0;
        err_sum += e1 + e2 - e0;
        parts.push((lo, mid, v1, e1));
        parts.push((mid, hi, v2, e2));
    }
    if err_sum <= 10.0 * abs_tol.max(rel_tol * total.norm()) {
        return Ok(total);
    }
    Err(err!(QuadratureStall, "quad", "error estimate {err_sum:.3e} after 4000 subdivisions"))
}

/// Integral of `f` over `[a, inf)` by the map `t = a + s/(1-s)`.
pub fn integrate_to_inf(
    mut f: impl FnMut(f64) -> C64,
    a: f64,
    abs_tol: f64,
    rel_tol: f64,
) -> Result<C64> {
    integrate(
        |s| {
            if s >= 1.0 {
                return C64::new(0.0, 0.0);
            }
            let d = 1.0 - s;
            let v = f(a + s / d);
            if v.norm() == 0.0 {
                v
            } else {
                v / (d * d)
            }
        },
        0.0,
        1.0,
        abs_tol,
        rel_tol,
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn oscillatory_integral() {
        let v = integrate(|x| C64::new(0.0, 3.0 * x).exp(), 0.0, 2.0, 1e-14, 1e-14).unwrap();
        let want = (C64::new(0.0, 6.0).exp() - 1.0) / C64::new(0.0, 3.0);
        assert!((v - want).norm() < 1e-13);
    }

    #[test]
    fn half_line() {
        let v = integrate_to_inf(|x| C64::new((-x * x).exp(), 0.0), 0.0, 1e-14, 1e-13).unwrap();
        assert!((v.re - std::f64::consts::PI.sqrt() / 2.0).abs() < 1e-12);
    }
}
