//! Chebyshev–Lobatto nodes with differentiation, cumulative integration and
//! barycentric interpolation on the reference interval [-1, 1].

use std::f64::consts::PI;

/// Lobatto nodes in ascending order: `x_j = -cos(pi j / n)`.
pub fn lobatto_nodes(p: usize) -> Vec<f64> {
    let n = (p - 1) as f64;
    (0..p)
        .map(|j| {
            if 2 * j + 1 == p {
                0.0
            } else {
                -(PI * j as f64 / n).cos()
            }
        })
        .collect()
}

/// Dense differentiation matrix on the given Lobatto nodes, row-major.
pub fn diff_matrix(x: &[f64]) -> Vec<Vec<f64>> {
    let p = x.len();
    let c = |j: usize| -> f64 {
        let s = if j % 2 == 0 { 1.0 } else { -1.0 };
        if j == 0 || j == p - 1 {
            2.0 * s
        } else {
            s
        }
    };
    let mut d = vec![vec![0.0; p]; p];
    for i in 0..p {
        let mut sum = 0.0;
        for j in 0..p {
            if i != j {
                d[i][j] = c(i) / c(j) / (x[i] - x[j]);
                sum += d[i][j];
            }
        }
        d[i][i] = -sum;
    }
    d
}

/// Per-panel operators on `p` Lobatto nodes.
#[derive(Debug, Clone)]
pub struct ChebBasis {
    pub p: usize,
    pub x: Vec<f64>,
    pub d: Vec<Vec<f64>>,
    /// `(ql f)_j = int_{-1}^{x_j} f`.
    pub ql: Vec<Vec<f64>>,
    /// `(qr f)_j = int_{x_j}^{1} f`.
    pub qr: Vec<Vec<f64>>,
    pub bary: Vec<f64>,
}

impl ChebBasis {
    pub fn new(p: usize) -> Self {
        assert!(p >= 3);
        let x = lobatto_nodes(p);
        let n = p - 1;
        // values -> coefficients: c_k = (2/n) sum'' f_j T_k(x_j), halved at k = 0, n
        let theta: Vec<f64> = (0..p).map(|j| PI - PI * j as f64 / n as f64).collect();
        let mut to_coef = vec![vec![0.0; p]; p];
        for k in 0..p {
            for j in 0..p {
                let mut w = 2.0 / n as f64 * (k as f64 * theta[j]).cos();
                if j == 0 || j == n {
                    w *= 0.5;
                }
                if k == 0 || k == n {
                    w *= 0.5;
                }
                to_coef[k][j] = w;
            }
        }
        // coefficients of the antiderivative vanishing at -1, as a map from c
        // to values at the nodes
        let mut ql = vec![vec![0.0; p]; p];
        for j in 0..p {
            let t = |k: usize| (k as f64 * theta[j]).cos();
            let tm1 = |k: usize| if k % 2 == 0 { 1.0 } else { -1.0 };
            for (k, row) in to_coef.iter().enumerate() {
                // F_k(x) = int_{-1}^x T_k
                let fk = match k {
                    0 => t(1) + 1.0,
                    1 => (t(2) - 1.0) / 4.0,
                    _ => {
                        let kf = k as f64;
                        let anti = |s: &dyn Fn(usize) -> f64| {
                            s(k + 1) / (2.0 * (kf + 1.0)) - s(k - 1) / (2.0 * (kf - 1.0))
                        };
                        anti(&t) - anti(&tm1)
                    }
                };
                for (i, wk) in row.iter().enumerate() {
                    ql[j][i] += fk * wk;
                }
            }
        }
        let total = ql[p - 1].clone();
        let qr: Vec<Vec<f64>> =
            ql.iter().map(|r| r.iter().zip(&total).map(|(a, t)| t - a).collect()).collect();
        let bary = (0..p)
            .map(|j| {
                let s = if j % 2 == 0 { 1.0 } else { -1.0 };
                if j == 0 || j == n {
                    0.5 * s
                } else {
                    s
                }
            })
            .collect();
        let d = diff_matrix(&x);
        ChebBasis { p, x, d, ql, qr, bary }
    }

    /// Barycentric interpolation at reference point `t` in [-1, 1].
    pub fn interp<T>(&self, vals: &[T], t: f64) -> T
    where
        T: Copy + std::ops::Mul<f64, Output = T> + std::ops::Add<Output = T> + std::ops::Div<f64, Output = T>,
    {
        let mut num: Option<T> = None;
        let mut den = 0.0;
        for j in 0..self.p {
            let dx = t - self.x[j];
            if dx == 0.0 {
                return vals[j];
            }
            let w = self.bary[j] / dx;
            num = Some(match num {
                None => vals[j] * w,
                Some(a) => a + vals[j] * w,
            });
            den += w;
        }
        num.unwrap() / den
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn integrates_polynomials_exactly() {
        let b = ChebBasis::new(12);
        let f: Vec<f64> = b.x.iter().map(|x| 3.0 * x * x + x.powi(5)).collect();
        for j in 0..b.p {
            let got: f64 = b.ql[j].iter().zip(&f).map(|(w, v)| w * v).sum();
            let x = b.x[j];
            let want = (x.powi(3) + 1.0) + (x.powi(6) - 1.0) / 6.0;
            assert!((got - want).abs() < 1e-13, "{j} {got} {want}");
            let r: f64 = b.qr[j].iter().zip(&f).map(|(w, v)| w * v).sum();
            assert!((r - (2.0 - want)).abs() < 1e-13);
        }
    }

    #[test]
    fn differentiates_and_interpolates() {
        let b = ChebBasis::new(16);
        let f: Vec<f64> = b.x.iter().map(|x| (2.0 * x).sin()).collect();
        for i in 0..b.p {
            let d: f64 = b.d[i].iter().zip(&f).map(|(w, v)| w * v).sum();
            assert!((d - 2.0 * (2.0 * b.x[i]).cos()).abs() < 1e-10);
        }
        let v = b.interp(&f, 0.3137);
        assert!((v - (0.6274f64).sin()).abs() < 1e-12);
    }
}
