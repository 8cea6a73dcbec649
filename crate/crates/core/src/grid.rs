//! Composite Chebyshev panel grids on `[0, Y_max]` and complex fields on them.
//!
//! A grid is a sequence of panels, each carrying `p` Lobatto nodes; adjacent
//! panels share their endpoint so the flattened node list is strictly
//! increasing. Integration and differentiation act panel by panel with
//! spectral accuracy, which keeps the nested singular integrals of the
//! Rayleigh solver and the exponentially varying Airy kernels accurate as long
//! as panels follow the local length scale.

use std::sync::{Arc, OnceLock};

use crate::chebyshev::ChebBasis;
use crate::error::{err, Result};
use crate::scaled::Scaled;
use crate::C64;

pub const DEFAULT_ORDER: usize = 16;

fn basis(p: usize) -> Arc<ChebBasis> {
    static B16: OnceLock<Arc<ChebBasis>> = OnceLock::new();
    if p == DEFAULT_ORDER {
        return B16.get_or_init(|| Arc::new(ChebBasis::new(p))).clone();
    }
    Arc::new(ChebBasis::new(p))
}

/// Nonuniform grid on `[0, Y_max]` made of Chebyshev panels.
#[derive(Debug, Clone)]
pub struct GridSpec {
    breaks: Vec<f64>,
    nodes: Vec<f64>,
    basis: Arc<ChebBasis>,
    pub refinement_center: f64,
    pub min_spacing: f64,
}

/// A point of interest with the panel width wanted there.
#[derive(Debug, Clone, Copy)]
pub struct Feature {
    pub y: f64,
    pub width: f64,
}

/// Builds panel breakpoints from local width requirements.
pub struct GridBuilder<'a> {
    y_max: f64,
    max_width: f64,
    growth: f64,
    features: Vec<Feature>,
    extra: Option<Box<dyn Fn(f64) -> f64 + 'a>>,
    order: usize,
    center: f64,
}

impl<'a> GridBuilder<'a> {
    pub fn new(y_max: f64) -> Self {
        GridBuilder {
            y_max,
            max_width: 0.5,
            growth: 0.5,
            features: Vec::new(),
            extra: None,
            order: DEFAULT_ORDER,
            center: 0.0,
        }
    }

    pub fn max_width(mut self, w: f64) -> Self {
        self.max_width = w;
        self
    }

    /// Panels may be at most `g` times their distance from a feature.
    pub fn growth(mut self, g: f64) -> Self {
        self.growth = g;
        self
    }

    pub fn order(mut self, p: usize) -> Self {
        self.order = p;
        self
    }

    pub fn feature(mut self, y: f64, width: f64) -> Self {
        if y >= 0.0 && y <= self.y_max && width > 0.0 {
            self.features.push(Feature { y, width });
        }
        self
    }

    pub fn center(mut self, y: f64) -> Self {
        self.center = y;
        self
    }

    /// Additional local width limit as a function of position.
    pub fn width_fn(mut self, f: impl Fn(f64) -> f64 + 'a) -> Self {
        self.extra = Some(Box::new(f));
        self
    }

    fn local_width(&self, y: f64) -> f64 {
        let mut w = self.max_width;
        for f in &self.features {
            w = w.min(f.width.max(self.growth * (y - f.y).abs()));
        }
        if let Some(e) = &self.extra {
            w = w.min(e(y));
        }
        w
    }

    pub fn build(self) -> Result<GridSpec> {
        if !(self.y_max > 0.0) {
            return Err(err!(InvalidInput, "grid", "Y_max must be positive"));
        }
        let mut stops: Vec<f64> = self.features.iter().map(|f| f.y).filter(|&y| y > 0.0).collect();
        stops.sort_by(|a, b| a.partial_cmp(b).unwrap());
        let mut breaks = vec![0.0];
        let mut y = 0.0;
        let mut min_w = f64::INFINITY;
        while y < self.y_max {
            let mut w = self.local_width(y);
            // look ahead so a panel never straddles a region needing smaller panels
            for _ in 0..4 {
                let w2 = self.local_width((y + w).min(self.y_max));
                if w2 < w {
                    w = 0.5 * (w + w2);
                }
            }
            w = w.max(1e-14 * (1.0 + y));
            if let Some(&s) = stops.iter().find(|&&s| s > y + 1e-13 * (1.0 + y)) {
                if y + 1.5 * w >= s {
                    w = s - y;
                }
            }
            let mut next = y + w;
            if next > self.y_max || self.y_max - next < 0.25 * w {
                next = self.y_max;
            }
            min_w = min_w.min(next - y);
            breaks.push(next);
            y = next;
            if breaks.len() > 2_000_000 {
                return Err(err!(InvalidInput, "grid", "panel count exceeds limit"));
            }
        }
        Ok(GridSpec::from_breaks(breaks, self.order, self.center, min_w))
    }
}

impl GridSpec {
    pub fn from_breaks(breaks: Vec<f64>, order: usize, center: f64, min_width: f64) -> Self {
        let basis = basis(order);
        let p = basis.p;
        let mut nodes = Vec::with_capacity((breaks.len() - 1) * (p - 1) + 1);
        for k in 0..breaks.len() - 1 {
            let (a, b) = (breaks[k], breaks[k + 1]);
            let start = if k == 0 { 0 } else { 1 };
            for j in start..p {
                let t = basis.x[j];
                let y = if j == 0 {
                    a
                } else if j == p - 1 {
                    b
                } else {
                    0.5 * (a + b) + 0.5 * (b - a) * t
                };
                nodes.push(y);
            }
        }
        // Lobatto nodes cluster at panel ends; the smallest gap sets the spacing
        let min_spacing = min_width * 0.5 * (basis.x[1] - basis.x[0]);
        GridSpec { breaks, nodes, basis, refinement_center: center, min_spacing }
    }

    /// Uniform panels of the given count.
    pub fn uniform(y_max: f64, panels: usize) -> Self {
        let breaks = (0..=panels).map(|k| y_max * k as f64 / panels as f64).collect();
        GridSpec::from_breaks(breaks, DEFAULT_ORDER, 0.0, y_max / panels as f64)
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn y_max(&self) -> f64 {
        *self.breaks.last().unwrap()
    }

    pub fn breaks(&self) -> &[f64] {
        &self.breaks
    }

    pub fn panels(&self) -> usize {
        self.breaks.len() - 1
    }

    pub fn order(&self) -> usize {
        self.basis.p
    }

    fn range(&self, k: usize) -> std::ops::Range<usize> {
        let p = self.basis.p;
        k * (p - 1)..k * (p - 1) + p
    }

    fn half(&self, k: usize) -> f64 {
        0.5 * (self.breaks[k + 1] - self.breaks[k])
    }

    /// Index of the node closest to `y`.
    pub fn nearest(&self, y: f64) -> usize {
        match self.nodes.binary_search_by(|v| v.partial_cmp(&y).unwrap()) {
            Ok(i) => i,
            Err(i) => {
                if i == 0 {
                    0
                } else if i >= self.nodes.len() {
                    self.nodes.len() - 1
                } else if (self.nodes[i] - y).abs() < (y - self.nodes[i - 1]).abs() {
                    i
                } else {
                    i - 1
                }
            }
        }
    }

    /// Evaluate `f` at every node.
    pub fn map<T>(&self, f: impl Fn(f64) -> T) -> Vec<T> {
        self.nodes.iter().map(|&y| f(y)).collect()
    }

    /// `int_0^{Y_j} f` at every node.
    pub fn cumulative_left(&self, f: &[C64]) -> Vec<C64> {
        let mut out = vec![C64::new(0.0, 0.0); self.len()];
        let mut offset = C64::new(0.0, 0.0);
        for k in 0..self.panels() {
            let r = self.range(k);
            let h = self.half(k);
            let seg = &f[r.clone()];
            for (j, row) in self.basis.ql.iter().enumerate() {
                let s: C64 = row.iter().zip(seg).map(|(w, v)| v * *w).sum();
                out[r.start + j] = offset + s * h;
            }
            offset = out[r.end - 1];
        }
        out
    }

    /// `int_{Y_j}^{Y_max} f` at every node.
    pub fn cumulative_right(&self, f: &[C64]) -> Vec<C64> {
        let mut out = vec![C64::new(0.0, 0.0); self.len()];
        let mut offset = C64::new(0.0, 0.0);
        for k in (0..self.panels()).rev() {
            let r = self.range(k);
            let h = self.half(k);
            let seg = &f[r.clone()];
            for (j, row) in self.basis.qr.iter().enumerate() {
                let s: C64 = row.iter().zip(seg).map(|(w, v)| v * *w).sum();
                out[r.start + j] = offset + s * h;
            }
            offset = out[r.start];
        }
        out
    }

    pub fn integral(&self, f: &[C64]) -> C64 {
        self.cumulative_right(f)[0]
    }

    /// `int_{Y_j}^{Y_max} f` for integrands held in scaled form.
    pub fn cumulative_right_scaled(&self, f: &[Scaled]) -> Vec<Scaled> {
        self.cumulative_scaled(f, false)
    }

    /// `int_0^{Y_j} f` for integrands held in scaled form.
    pub fn cumulative_left_scaled(&self, f: &[Scaled]) -> Vec<Scaled> {
        self.cumulative_scaled(f, true)
    }

    fn cumulative_scaled(&self, f: &[Scaled], left: bool) -> Vec<Scaled> {
        let p = self.basis.p;
        let mut out = vec![Scaled::ZERO; self.len()];
        let mut offset = Scaled::ZERO;
        let mut seg = vec![C64::new(0.0, 0.0); p];
        let order: Vec<usize> =
            if left { (0..self.panels()).collect() } else { (0..self.panels()).rev().collect() };
        for k in order {
            let r = self.range(k);
            let h = self.half(k);
            let eref = f[r.clone()].iter().filter(|v| !v.is_zero()).map(|v| v.e).fold(f64::NEG_INFINITY, f64::max);
            if eref == f64::NEG_INFINITY {
                for j in r.clone() {
                    out[j] = offset;
                }
                continue;
            }
            for (j, v) in f[r.clone()].iter().enumerate() {
                seg[j] = v.value_shifted(eref);
            }
            let q = if left { &self.basis.ql } else { &self.basis.qr };
            for (j, row) in q.iter().enumerate() {
                let s: C64 = row.iter().zip(&seg).map(|(w, v)| v * *w).sum();
                out[r.start + j] = offset + Scaled::new(s * h, eref);
            }
            offset = if left { out[r.end - 1] } else { out[r.start] };
        }
        out
    }

    /// Spectral derivative; shared panel endpoints take the mean of both sides.
    pub fn derivative(&self, f: &[C64]) -> Vec<C64> {
        let mut out = vec![C64::new(0.0, 0.0); self.len()];
        let mut count = vec![0u8; self.len()];
        for k in 0..self.panels() {
            let r = self.range(k);
            let h = self.half(k);
            let seg = &f[r.clone()];
            for (j, row) in self.basis.d.iter().enumerate() {
                let s: C64 = row.iter().zip(seg).map(|(w, v)| v * *w).sum();
                out[r.start + j] += s / h;
                count[r.start + j] += 1;
            }
        }
        for (o, c) in out.iter_mut().zip(count) {
            if c > 1 {
                *o /= c as f64;
            }
        }
        out
    }

    /// Derivative at the wall from the first panel only.
    pub fn derivative_at_wall(&self, f: &[C64]) -> C64 {
        let h = self.half(0);
        self.basis.d[0].iter().zip(&f[..self.basis.p]).map(|(w, v)| v * *w).sum::<C64>() / h
    }

    /// Interpolated value at `y`.
    pub fn interpolate(&self, f: &[C64], y: f64) -> C64 {
        let y = y.clamp(0.0, self.y_max());
        let k = match self.breaks.binary_search_by(|v| v.partial_cmp(&y).unwrap()) {
            Ok(i) => i.min(self.panels() - 1),
            Err(i) => (i - 1).min(self.panels() - 1),
        };
        let (a, b) = (self.breaks[k], self.breaks[k + 1]);
        let t = (2.0 * y - a - b) / (b - a);
        self.basis.interp(&f[self.range(k)], t)
    }

    /// Panel index and the node range of each panel.
    pub fn panel_ranges(&self) -> impl Iterator<Item = std::ops::Range<usize>> + '_ {
        (0..self.panels()).map(|k| self.range(k))
    }
}

/// Complex samples of a function of `Y` on a grid.
#[derive(Debug, Clone)]
pub struct ComplexField {
    pub grid: Arc<GridSpec>,
    pub values: Vec<C64>,
}

impl ComplexField {
    pub fn new(grid: Arc<GridSpec>, values: Vec<C64>) -> Self {
        assert_eq!(grid.len(), values.len());
        ComplexField { grid, values }
    }

    pub fn zeros(grid: Arc<GridSpec>) -> Self {
        let n = grid.len();
        ComplexField { grid, values: vec![C64::new(0.0, 0.0); n] }
    }

    pub fn from_fn(grid: Arc<GridSpec>, f: impl Fn(f64) -> C64) -> Self {
        let values = grid.map(f);
        ComplexField { grid, values }
    }

    pub fn sup(&self) -> f64 {
        sup(&self.values)
    }

    pub fn at(&self, y: f64) -> C64 {
        self.grid.interpolate(&self.values, y)
    }

    pub fn is_finite(&self) -> bool {
        self.values.iter().all(|v| v.re.is_finite() && v.im.is_finite())
    }
}

pub fn sup(v: &[C64]) -> f64 {
    v.iter().map(|z| z.norm()).fold(0.0, f64::max)
}
