//! Uniform grids, sampled wavefunctions and probability densities.
//!
//! Everything downstream (transforms, entropies, bounds) works on densities
//! sampled on uniform axes and integrated with the composite trapezoid rule,
//! which is spectrally accurate for smooth integrands that decay below
//! double precision before the grid edge — the regime every builder in this
//! crate targets.

use ndarray::Array2;
use num_complex::Complex64;

use crate::{Error, Result};

/// Largest negative excursion (relative to the peak) tolerated in a density
/// before construction fails. Interpolation of a non-negative function can
/// overshoot slightly below zero; anything worse indicates a bug upstream.
const NEG_TOL: f64 = 1e-9;

/// A uniform 1D axis: `n` points from `min` to `max` inclusive.
#[derive(Debug, Clone, PartialEq)]
pub struct Axis {
    min: f64,
    step: f64,
    n: usize,
}

impl Axis {
    pub fn new(min: f64, max: f64, n: usize) -> Result<Axis> {
        if !(min.is_finite() && max.is_finite()) {
            return Err(Error::Axis(format!("non-finite bounds [{min}, {max}]")));
        }
        if n < 2 {
            return Err(Error::Axis(format!("need at least 2 points, got {n}")));
        }
        if max <= min {
            return Err(Error::Axis(format!("empty range [{min}, {max}]")));
        }
        let step = (max - min) / (n - 1) as f64;
        if step <= 0.0 || !step.is_finite() {
            return Err(Error::Axis(format!("degenerate step {step}")));
        }
        Ok(Axis { min, step, n })
    }

    /// Axis spanning `[-half_width, half_width]`.
    pub fn symmetric(half_width: f64, n: usize) -> Result<Axis> {
        if !(half_width.is_finite() && half_width > 0.0) {
            return Err(Error::Axis(format!("bad half-width {half_width}")));
        }
        Axis::new(-half_width, half_width, n)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn min(&self) -> f64 {
        self.min
    }

    pub fn max(&self) -> f64 {
        self.min + self.step * (self.n - 1) as f64
    }

    pub fn step(&self) -> f64 {
        self.step
    }

    pub fn value(&self, j: usize) -> f64 {
        self.min + self.step * j as f64
    }

    pub fn values(&self) -> Vec<f64> {
        (0..self.n).map(|j| self.value(j)).collect()
    }

    /// Fractional index of `x` on this axis (0 at `min`, `n-1` at `max`).
    pub fn locate(&self, x: f64) -> f64 {
        (x - self.min) / self.step
    }

    /// True when the axis is centred on the origin, so that index reversal
    /// realises `x -> -x` exactly.
    pub fn is_symmetric(&self) -> bool {
        (self.min + self.max()).abs() <= 1e-9 * self.step
    }

    /// True when two axes coincide up to floating-point noise.
    pub fn approx_eq(&self, other: &Axis) -> bool {
        self.n == other.n
            && (self.min - other.min).abs() <= 1e-9 * self.step
            && (self.step - other.step).abs() <= 1e-12 * self.step
    }
}

/// Composite trapezoid rule with uniform spacing `step`.
pub fn trapezoid(step: f64, data: &[f64]) -> f64 {
    if data.len() < 2 {
        return 0.0;
    }
    let interior: f64 = data[1..data.len() - 1].iter().sum();
    step * (interior + 0.5 * (data[0] + data[data.len() - 1]))
}

fn check_density(data: &[f64]) -> Result<f64> {
    let mut peak = 0.0_f64;
    let mut worst_neg = 0.0_f64;
    for &v in data {
        if !v.is_finite() {
            return Err(Error::Prob(format!("non-finite density value {v}")));
        }
        peak = peak.max(v);
        worst_neg = worst_neg.min(v);
    }
    // The all-zero density is allowed (it integrates to 0 and fails only at
    // normalization); genuine negative values are not.
    if worst_neg < -NEG_TOL * peak {
        return Err(Error::Prob(format!(
            "density value {worst_neg:.3e} below tolerated negative excursion"
        )));
    }
    Ok(peak)
}

/// A real probability density sampled on a uniform axis.
#[derive(Debug, Clone)]
pub struct Dist1D {
    pub axis: Axis,
    pub data: Vec<f64>,
}

impl Dist1D {
    /// Validates lengths and non-negativity; values within a hair below zero
    /// (interpolation overshoot) are clipped to zero.
    pub fn new(axis: Axis, mut data: Vec<f64>) -> Result<Dist1D> {
        if data.len() != axis.n() {
            return Err(Error::Axis(format!(
                "data length {} does not match axis length {}",
                data.len(),
                axis.n()
            )));
        }
        check_density(&data)?;
        for v in &mut data {
            if *v < 0.0 {
                *v = 0.0;
            }
        }
        Ok(Dist1D { axis, data })
    }

    pub fn integrate(&self) -> f64 {
        trapezoid(self.axis.step(), &self.data)
    }

    /// Rescales to unit mass and returns the mass it had before.
    pub fn normalize(&mut self) -> Result<f64> {
        let mass = self.integrate();
        if !(mass.is_finite() && mass > 0.0) {
            return Err(Error::Mass(mass));
        }
        for v in &mut self.data {
            *v /= mass;
        }
        Ok(mass)
    }

    /// The density of the sign-flipped variable, `P(-x)`. Requires an axis
    /// centred on the origin so the flip is an exact index reversal.
    pub fn reflect(&self) -> Result<Dist1D> {
        if !self.axis.is_symmetric() {
            return Err(Error::Axis(format!(
                "reflection needs an origin-centred axis, got [{}, {}]",
                self.axis.min(),
                self.axis.max()
            )));
        }
        let mut data = self.data.clone();
        data.reverse();
        Ok(Dist1D {
            axis: self.axis.clone(),
            data,
        })
    }

    /// `∫ x^k P(x) dx` by trapezoid quadrature.
    pub fn moment(&self, k: u32) -> f64 {
        let weighted: Vec<f64> = self
            .data
            .iter()
            .enumerate()
            .map(|(j, &v)| v * self.axis.value(j).powi(k as i32))
            .collect();
        trapezoid(self.axis.step(), &weighted)
    }

    /// Piecewise-linear interpolation; zero outside the grid.
    pub fn interp_linear(&self, x: f64) -> f64 {
        let u = self.axis.locate(x);
        if u < 0.0 || u > (self.axis.n() - 1) as f64 {
            return 0.0;
        }
        let i = (u.floor() as usize).min(self.axis.n() - 2);
        let t = u - i as f64;
        self.data[i] * (1.0 - t) + self.data[i + 1] * t
    }
}

/// A real probability density on a tensor-product grid; `data[[i, j]]`
/// corresponds to `(ax0.value(i), ax1.value(j))`.
#[derive(Debug, Clone)]
pub struct Dist2D {
    pub ax0: Axis,
    pub ax1: Axis,
    pub data: Array2<f64>,
}

impl Dist2D {
    pub fn new(ax0: Axis, ax1: Axis, data: Array2<f64>) -> Result<Dist2D> {
        if data.dim() != (ax0.n(), ax1.n()) {
            return Err(Error::Axis(format!(
                "data shape {:?} does not match axes ({}, {})",
                data.dim(),
                ax0.n(),
                ax1.n()
            )));
        }
        let mut data = data.as_standard_layout().into_owned();
        check_density(data.as_slice().expect("standard layout"))?;
        data.mapv_inplace(|v| v.max(0.0));
        Ok(Dist2D { ax0, ax1, data })
    }

    pub fn integrate(&self) -> f64 {
        // Trapezoid along ax1 for each row, then trapezoid along ax0.
        let rows: Vec<f64> = self
            .data
            .rows()
            .into_iter()
            .map(|r| trapezoid(self.ax1.step(), r.as_slice().expect("row slice")))
            .collect();
        trapezoid(self.ax0.step(), &rows)
    }

    pub fn normalize(&mut self) -> Result<f64> {
        let mass = self.integrate();
        if !(mass.is_finite() && mass > 0.0) {
            return Err(Error::Mass(mass));
        }
        self.data.mapv_inplace(|v| v / mass);
        Ok(mass)
    }

    /// Marginal over the second coordinate: `P(x0) = ∫ P(x0, x1) dx1`.
    pub fn marginal0(&self) -> Result<Dist1D> {
        let data: Vec<f64> = self
            .data
            .rows()
            .into_iter()
            .map(|r| trapezoid(self.ax1.step(), r.as_slice().expect("row slice")))
            .collect();
        Dist1D::new(self.ax0.clone(), data)
    }

    /// Marginal over the first coordinate: `P(x1) = ∫ P(x0, x1) dx0`.
    pub fn marginal1(&self) -> Result<Dist1D> {
        let step = self.ax0.step();
        let n0 = self.ax0.n();
        let mut data = vec![0.0; self.ax1.n()];
        for (i, row) in self.data.rows().into_iter().enumerate() {
            let w = if i == 0 || i == n0 - 1 { 0.5 } else { 1.0 };
            for (j, &v) in row.iter().enumerate() {
                data[j] += w * v;
            }
        }
        for v in &mut data {
            *v *= step;
        }
        Dist1D::new(self.ax1.clone(), data)
    }

    /// Bilinear interpolation; zero outside the grid.
    pub fn interp_bilinear(&self, x0: f64, x1: f64) -> f64 {
        let u = self.ax0.locate(x0);
        let v = self.ax1.locate(x1);
        if u < 0.0 || v < 0.0 || u > (self.ax0.n() - 1) as f64 || v > (self.ax1.n() - 1) as f64 {
            return 0.0;
        }
        let i = (u.floor() as usize).min(self.ax0.n() - 2);
        let j = (v.floor() as usize).min(self.ax1.n() - 2);
        let s = u - i as f64;
        let t = v - j as f64;
        let d = &self.data;
        d[[i, j]] * (1.0 - s) * (1.0 - t)
            + d[[i + 1, j]] * s * (1.0 - t)
            + d[[i, j + 1]] * (1.0 - s) * t
            + d[[i + 1, j + 1]] * s * t
    }

    /// Separable Catmull-Rom (cubic) interpolation with edge replication;
    /// zero outside the grid. May overshoot slightly below zero near steep
    /// ridges — callers sampling a density should clamp.
    pub fn interp_bicubic(&self, x0: f64, x1: f64) -> f64 {
        let u = self.ax0.locate(x0);
        let v = self.ax1.locate(x1);
        let n0 = self.ax0.n();
        let n1 = self.ax1.n();
        if u < 0.0 || v < 0.0 || u > (n0 - 1) as f64 || v > (n1 - 1) as f64 {
            return 0.0;
        }
        let i = (u.floor() as usize).min(n0 - 2);
        let j = (v.floor() as usize).min(n1 - 2);
        let s = u - i as f64;
        let t = v - j as f64;
        let clamp0 = |k: isize| -> usize { k.clamp(0, (n0 - 1) as isize) as usize };
        let clamp1 = |k: isize| -> usize { k.clamp(0, (n1 - 1) as isize) as usize };
        let mut cols = [0.0; 4];
        for (c, col) in cols.iter_mut().enumerate() {
            let jj = clamp1(j as isize + c as isize - 1);
            let rows = [
                self.data[[clamp0(i as isize - 1), jj]],
                self.data[[i, jj]],
                self.data[[i + 1, jj]],
                self.data[[clamp0(i as isize + 2), jj]],
            ];
            *col = catmull_rom(rows, s);
        }
        catmull_rom(cols, t)
    }
}

/// Catmull-Rom cubic through four equally spaced samples, evaluated at
/// fraction `t ∈ [0, 1]` between `p[1]` and `p[2]`.
fn catmull_rom(p: [f64; 4], t: f64) -> f64 {
    0.5 * (2.0 * p[1]
        + t * ((p[2] - p[0])
            + t * ((2.0 * p[0] - 5.0 * p[1] + 4.0 * p[2] - p[3])
                + t * (3.0 * (p[1] - p[2]) + p[3] - p[0]))))
}

/// A complex wavefunction sampled on a uniform axis.
#[derive(Debug, Clone)]
pub struct Field1D {
    pub axis: Axis,
    pub data: Vec<Complex64>,
}

impl Field1D {
    pub fn new(axis: Axis, data: Vec<Complex64>) -> Result<Field1D> {
        if data.len() != axis.n() {
            return Err(Error::Axis(format!(
                "data length {} does not match axis length {}",
                data.len(),
                axis.n()
            )));
        }
        if data.iter().any(|z| !(z.re.is_finite() && z.im.is_finite())) {
            return Err(Error::Prob("non-finite wavefunction sample".into()));
        }
        Ok(Field1D { axis, data })
    }

    /// `|ψ|²` as a density on the same axis.
    pub fn abs2(&self) -> Dist1D {
        let data: Vec<f64> = self.data.iter().map(|z| z.norm_sqr()).collect();
        Dist1D {
            axis: self.axis.clone(),
            data,
        }
    }

    /// Rescales to `∫|ψ|² = 1` and returns the squared norm it had before.
    pub fn normalize(&mut self) -> Result<f64> {
        let mass = self.abs2().integrate();
        if !(mass.is_finite() && mass > 0.0) {
            return Err(Error::Mass(mass));
        }
        let scale = 1.0 / mass.sqrt();
        for z in &mut self.data {
            *z *= scale;
        }
        Ok(mass)
    }
}

/// A complex wavefunction on a tensor-product grid.
#[derive(Debug, Clone)]
pub struct Field2D {
    pub ax0: Axis,
    pub ax1: Axis,
    pub data: Array2<Complex64>,
}

impl Field2D {
    pub fn new(ax0: Axis, ax1: Axis, data: Array2<Complex64>) -> Result<Field2D> {
        if data.dim() != (ax0.n(), ax1.n()) {
            return Err(Error::Axis(format!(
                "data shape {:?} does not match axes ({}, {})",
                data.dim(),
                ax0.n(),
                ax1.n()
            )));
        }
        Ok(Field2D {
            ax0,
            ax1,
            data: data.as_standard_layout().into_owned(),
        })
    }

    pub fn abs2(&self) -> Dist2D {
        Dist2D {
            ax0: self.ax0.clone(),
            ax1: self.ax1.clone(),
            data: self.data.mapv(|z| z.norm_sqr()),
        }
    }

    pub fn normalize(&mut self) -> Result<f64> {
        let mass = self.abs2().integrate();
        if !(mass.is_finite() && mass > 0.0) {
            return Err(Error::Mass(mass));
        }
        let scale = Complex64::new(1.0 / mass.sqrt(), 0.0);
        self.data.mapv_inplace(|z| z * scale);
        Ok(mass)
    }
}

/// Monotonicity-preserving piecewise-cubic interpolant (Fritsch-Carlson
/// derivative limiting) on a uniform axis. Used to resample densities where
/// cubic overshoot below zero must not happen; zero outside the grid.
#[derive(Debug, Clone)]
pub struct MonotoneCubic {
    axis: Axis,
    y: Vec<f64>,
    d: Vec<f64>,
}

impl MonotoneCubic {
    pub fn fit(axis: Axis, y: Vec<f64>) -> Result<MonotoneCubic> {
        let n = axis.n();
        if y.len() != n {
            return Err(Error::Axis(format!(
                "data length {} does not match axis length {}",
                y.len(),
                n
            )));
        }
        let h = axis.step();
        let slopes: Vec<f64> = (0..n - 1).map(|i| (y[i + 1] - y[i]) / h).collect();
        let mut d = vec![0.0; n];
        for i in 1..n - 1 {
            let (a, b) = (slopes[i - 1], slopes[i]);
            // Harmonic mean when the data keeps direction, zero at extrema.
            d[i] = if a * b > 0.0 { 2.0 * a * b / (a + b) } else { 0.0 };
        }
        d[0] = edge_slope(slopes[0], *slopes.get(1).unwrap_or(&slopes[0]));
        d[n - 1] = edge_slope(slopes[n - 2], *slopes.get(n.wrapping_sub(3)).unwrap_or(&slopes[n - 2]));
        Ok(MonotoneCubic { axis, y, d })
    }

    pub fn eval(&self, x: f64) -> f64 {
        let u = self.axis.locate(x);
        let n = self.axis.n();
        if u < 0.0 || u > (n - 1) as f64 {
            return 0.0;
        }
        let i = (u.floor() as usize).min(n - 2);
        let t = u - i as f64;
        let h = self.axis.step();
        let (y0, y1) = (self.y[i], self.y[i + 1]);
        let (d0, d1) = (self.d[i], self.d[i + 1]);
        // Cubic Hermite basis on [0, 1] with derivatives scaled by h.
        let t2 = t * t;
        let t3 = t2 * t;
        y0 * (2.0 * t3 - 3.0 * t2 + 1.0)
            + h * d0 * (t3 - 2.0 * t2 + t)
            + y1 * (-2.0 * t3 + 3.0 * t2)
            + h * d1 * (t3 - t2)
    }
}

/// One-sided endpoint derivative estimate, clipped so the interpolant stays
/// within the range of the data next to the boundary.
fn edge_slope(near: f64, far: f64) -> f64 {
    let d = 0.5 * (3.0 * near - far);
    if d * near <= 0.0 {
        0.0
    } else if near * far <= 0.0 && d.abs() > 3.0 * near.abs() {
        3.0 * near
    } else {
        d
    }
}
