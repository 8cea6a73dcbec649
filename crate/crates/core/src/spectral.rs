//! Direct collocation eigensolver for the full linearised compressible system
//! on the half-line.
//!
//! Unknowns are `(p, u, v)` with `rho = m^2 p`, which keeps the pencil regular
//! at `m = 0`. Chebyshev–Lobatto nodes on `xi in [-1, 1]` are mapped by
//! `Y = a (1 + xi) / (1 - xi)`; the last node sits at infinity. Eigenvalues
//! near a shift come from Arnoldi on `(L - sigma M)^{-1} M`, each refined by
//! inverse iteration.

use nalgebra::{DMatrix, DVector};
use serde::Serialize;

use crate::chebyshev::diff_matrix;
use crate::error::{err, Result};
use crate::profiles::Profile;
use crate::{C64, I};

/// Default half-point of the rational map.
pub const DEFAULT_MAP: f64 = 4.0;
/// Threshold on the largest second-derivative entry above which a warning is recorded.
const CONDITION_WARNING: f64 = 1e12;
/// Relative movement under resolution doubling below which an eigenvalue counts as genuine.
pub const GENUINE_MOVEMENT: f64 = 1e-4;

/// Physical and discretisation parameters of one pencil.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct SpectralParams {
    pub nu: f64,
    pub m: f64,
    pub lambda: f64,
    pub alpha: C64,
    pub n: usize,
    pub map_a: f64,
}

/// Pencil `L x = c M x` with `x = (p, u, v)` stacked node by node in blocks.
#[derive(Debug, Clone)]
pub struct CollocationOperator {
    pub l: DMatrix<C64>,
    pub m: DMatrix<C64>,
    /// Mapped nodes, ascending; the last is `+inf`.
    pub y: Vec<f64>,
    pub d1: DMatrix<f64>,
    pub d2: DMatrix<f64>,
    pub params: SpectralParams,
    pub bc_rows: Vec<usize>,
    pub warnings: Vec<String>,
}

/// Mapped nodes with first and second derivative matrices in `Y`.
pub fn mapped_derivatives(n: usize, a: f64) -> (Vec<f64>, DMatrix<f64>, DMatrix<f64>) {
    let xi: Vec<f64> = (0..n).map(|j| -(std::f64::consts::PI * j as f64 / (n - 1) as f64).cos()).collect();
    let d = diff_matrix(&xi);
    let y: Vec<f64> =
        xi.iter().map(|&x| if x >= 1.0 { f64::INFINITY } else { a * (1.0 + x) / (1.0 - x) }).collect();
    let dxi_dy: Vec<f64> = xi.iter().map(|&x| (1.0 - x) * (1.0 - x) / (2.0 * a)).collect();
    let d1 = DMatrix::from_fn(n, n, |i, j| dxi_dy[i] * d[i][j]);
    let d2 = &d1 * &d1;
    (y, d1, d2)
}

fn profile_at(profile: &Profile, y: f64) -> [f64; 3] {
    if y.is_infinite() {
        return [1.0, 0.0, 0.0];
    }
    [profile.eval_k(y, 0), profile.eval_k(y, 1), profile.eval_k(y, 2)]
}

/// Assemble the pencil.
pub fn build_operator(profile: &Profile, params: SpectralParams) -> Result<CollocationOperator> {
    let SpectralParams { nu, m, lambda, alpha, n, map_a } = params;
    if n < 64 {
        return Err(err!(InvalidInput, "spectral", "N = {n} must be at least 64"));
    }
    if !(map_a > 0.0) {
        return Err(err!(InvalidInput, "spectral", "map parameter must be positive"));
    }
    if !(0.0..1.0).contains(&m) {
        return Err(err!(InvalidInput, "spectral", "Mach number must lie in [0, 1)"));
    }
    let (y, d1, d2) = mapped_derivatives(n, map_a);
    let sn = nu.sqrt();
    let m2 = m * m;
    let a2 = alpha * alpha;
    let size = 3 * n;
    let mut l = DMatrix::<C64>::zeros(size, size);
    let mut mm = DMatrix::<C64>::zeros(size, size);
    let (p0, u0, v0) = (0, n, 2 * n);
    let prof: Vec<[f64; 3]> = y.iter().map(|&yy| profile_at(profile, yy)).collect();
    for i in 0..n {
        let [u, du, ddu] = prof[i];
        // continuity: i alpha m^2 (U - c) p + i alpha u + v' = 0
        let r = p0 + i;
        l[(r, p0 + i)] += I * alpha * m2 * u;
        mm[(r, p0 + i)] += I * alpha * m2;
        l[(r, u0 + i)] += I * alpha;
        for j in 0..n {
            l[(r, v0 + j)] += d1[(i, j)];
        }
        // x-momentum
        let r = u0 + i;
        for j in 0..n {
            l[(r, u0 + j)] += sn * d2[(i, j)];
            l[(r, v0 + j)] += I * alpha * lambda * sn * d1[(i, j)];
        }
        l[(r, u0 + i)] += -sn * a2 + I * alpha * lambda * sn * I * alpha - I * alpha * u;
        l[(r, p0 + i)] += -(I * alpha + sn * m2 * ddu);
        l[(r, v0 + i)] += -du;
        mm[(r, u0 + i)] += -I * alpha;
        // y-momentum
        let r = v0 + i;
        for j in 0..n {
            l[(r, v0 + j)] += sn * d2[(i, j)] + lambda * sn * d2[(i, j)];
            l[(r, u0 + j)] += lambda * sn * I * alpha * d1[(i, j)];
            l[(r, p0 + j)] += -d1[(i, j)];
        }
        l[(r, v0 + i)] += -sn * a2 - I * alpha * u;
        mm[(r, v0 + i)] += -I * alpha;
    }
    let last = n - 1;
    let bc = [(u0, u0), (u0 + last, u0 + last), (v0, v0), (v0 + last, v0 + last), (p0 + last, p0 + last)];
    let mut bc_rows = Vec::new();
    for (row, col) in bc {
        for j in 0..size {
            l[(row, j)] = C64::new(0.0, 0.0);
            mm[(row, j)] = C64::new(0.0, 0.0);
        }
        l[(row, col)] = C64::new(1.0, 0.0);
        bc_rows.push(row);
    }
    let mut warnings = Vec::new();
    let big = d2.iter().fold(0.0f64, |a, b| a.max(b.abs()));
    if big > CONDITION_WARNING {
        warnings.push(format!("second-derivative entries reach {big:.3e}"));
    }
    if l.iter().chain(mm.iter()).any(|z| !z.re.is_finite() || !z.im.is_finite()) {
        return Err(err!(Overflow, "spectral", "non-finite pencil entry"));
    }
    Ok(CollocationOperator { l, m: mm, y, d1, d2, params, bc_rows, warnings })
}

/// One eigenpair with its residual `|L x - c M x| / |x|`.
#[derive(Debug, Clone, Serialize)]
pub struct Eigenpair {
    pub c: C64,
    pub residual: f64,
}

/// Eigenvalues near a shift with resolution-doubling flags.
#[derive(Debug, Clone, Serialize)]
pub struct Spectrum {
    pub eigenvalues: Vec<C64>,
    pub residuals: Vec<f64>,
    /// True when the eigenvalue did not survive doubling `N`.
    pub spurious_flags: Vec<bool>,
    /// Relative movement to the nearest eigenvalue at `2N`.
    pub movement: Vec<f64>,
    pub resolution: usize,
}

impl Spectrum {
    /// Genuine eigenvalue with the largest imaginary part.
    pub fn most_unstable(&self) -> Option<C64> {
        self.eigenvalues
            .iter()
            .zip(&self.spurious_flags)
            .filter(|(_, &s)| !s)
            .map(|(c, _)| *c)
            .max_by(|a, b| a.im.total_cmp(&b.im))
    }
}

struct ShiftInvert {
    lu: nalgebra::LU<C64, nalgebra::Dyn, nalgebra::Dyn>,
    shift: C64,
}

fn factor(op: &CollocationOperator, shift: C64) -> Result<ShiftInvert> {
    let mut s = shift;
    for _ in 0..4 {
        let a = &op.l - &op.m * s;
        let lu = a.lu();
        if lu.is_invertible() {
            return Ok(ShiftInvert { lu, shift: s });
        }
        s += C64::new(1e-10 * s.norm().max(1e-3), 1e-10 * s.norm().max(1e-3));
    }
    Err(err!(Singular, "spectral", "L - sigma M singular near sigma = {shift}"))
}

impl ShiftInvert {
    fn apply(&self, op: &CollocationOperator, x: &DVector<C64>) -> Result<DVector<C64>> {
        let b = &op.m * x;
        self.lu.solve(&b).ok_or_else(|| err!(Singular, "spectral", "solve failed at sigma = {}", self.shift))
    }
}

fn residual(op: &CollocationOperator, x: &DVector<C64>, c: C64) -> f64 {
    (&op.l * x - (&op.m * x) * c).norm() / x.norm()
}

/// Least-squares eigenvalue estimate `(M x)^H L x / |M x|^2`.
fn quotient(op: &CollocationOperator, x: &DVector<C64>) -> C64 {
    let mx = &op.m * x;
    let lx = &op.l * x;
    mx.dotc(&lx) / mx.norm_squared()
}

/// Refine a Ritz pair by inverse iteration at its own shift.
fn refine(op: &CollocationOperator, c: C64, x: DVector<C64>) -> Result<(C64, DVector<C64>)> {
    let si = factor(op, c + C64::new(1e-9, 1e-9) * c.norm().max(1e-3))?;
    let mut x = x;
    let mut c = c;
    for _ in 0..3 {
        let y = si.apply(op, &x)?;
        x = &y / C64::new(y.norm(), 0.0);
        c = quotient(op, &x);
    }
    Ok((c, x))
}

/// `k` eigenpairs nearest `shift` from Arnoldi on the shift-inverted pencil.
pub fn eigenpairs_near(op: &CollocationOperator, shift: C64, k: usize) -> Result<Vec<Eigenpair>> {
    let size = op.l.nrows();
    let si = factor(op, shift)?;
    let dim = (3 * k + 30).min(size);
    let mut q: Vec<DVector<C64>> = Vec::with_capacity(dim + 1);
    let mut h = DMatrix::<C64>::zeros(dim + 1, dim);
    // deterministic start vector
    let start = DVector::from_fn(size, |i, _| C64::new(1.0 + (i as f64 * 0.618).sin(), (i as f64 * 0.377).cos()));
    q.push(&start / C64::new(start.norm(), 0.0));
    let mut used = dim;
    for j in 0..dim {
        let mut w = si.apply(op, &q[j])?;
        for _ in 0..2 {
            for (i, qi) in q.iter().enumerate() {
                let hij = qi.dotc(&w);
                h[(i, j)] += hij;
                w -= qi * hij;
            }
        }
        let nrm = w.norm();
        h[(j + 1, j)] = C64::new(nrm, 0.0);
        if nrm < 1e-14 {
            used = j + 1;
            break;
        }
        q.push(&w / C64::new(nrm, 0.0));
    }
    let hm = h.view((0, 0), (used, used)).into_owned();
    let schur = nalgebra::Schur::new(hm.clone());
    let (zq, t) = schur.unpack();
    let mut order: Vec<usize> = (0..used).collect();
    order.sort_by(|&a, &b| t[(b, b)].norm().total_cmp(&t[(a, a)].norm()));
    let mut out = Vec::new();
    for &idx in order.iter().take(k) {
        let mu = t[(idx, idx)];
        if mu.norm() == 0.0 {
            continue;
        }
        // Ritz vector from the eigenvector of the Hessenberg matrix
        let shifted = &hm - DMatrix::<C64>::identity(used, used) * mu;
        let y = null_vector(&shifted, &zq, idx);
        let mut x = DVector::<C64>::zeros(size);
        for (i, qi) in q.iter().take(used).enumerate() {
            x += qi * y[i];
        }
        let c0 = si.shift + mu.inv();
        let (c, x) = refine(op, c0, x)?;
        out.push(Eigenpair { c, residual: residual(op, &x, c) });
    }
    Ok(out)
}

/// Approximate null vector of `a` by inverse iteration seeded with a Schur vector.
fn null_vector(a: &DMatrix<C64>, zq: &DMatrix<C64>, idx: usize) -> DVector<C64> {
    let n = a.nrows();
    let reg = a + DMatrix::<C64>::identity(n, n) * C64::new(1e-13, 1e-13);
    let lu = reg.lu();
    let mut y: DVector<C64> = zq.column(idx).into_owned();
    for _ in 0..3 {
        if let Some(z) = lu.solve(&y) {
            let nz = z.norm();
            if nz.is_finite() && nz > 0.0 {
                y = z / C64::new(nz, 0.0);
            }
        }
    }
    y
}

/// Eigenvalues nearest `shift` at resolution `op.params.n`, without flags.
pub fn solve_spectrum(op: &CollocationOperator, shift: C64, k: usize) -> Result<Spectrum> {
    let pairs = eigenpairs_near(op, shift, k)?;
    Ok(Spectrum {
        eigenvalues: pairs.iter().map(|p| p.c).collect(),
        residuals: pairs.iter().map(|p| p.residual).collect(),
        spurious_flags: vec![false; pairs.len()],
        movement: vec![f64::NAN; pairs.len()],
        resolution: op.params.n,
    })
}

/// Solve at `N` and `2N` and flag eigenvalues that move by more than
/// [`GENUINE_MOVEMENT`].
pub fn solve_with_doubling(profile: &Profile, params: SpectralParams, shift: C64, k: usize) -> Result<Spectrum> {
    let coarse = solve_spectrum(&build_operator(profile, params)?, shift, k)?;
    let fine_params = SpectralParams { n: 2 * params.n, ..params };
    let fine = solve_spectrum(&build_operator(profile, fine_params)?, shift, k + 4)?;
    let movement: Vec<f64> = coarse
        .eigenvalues
        .iter()
        .map(|c| fine.eigenvalues.iter().map(|f| (f - c).norm() / c.norm()).fold(f64::INFINITY, f64::min))
        .collect();
    let spurious_flags = movement.iter().map(|&d| !(d < GENUINE_MOVEMENT)).collect();
    Ok(Spectrum { spurious_flags, movement, ..coarse })
}
