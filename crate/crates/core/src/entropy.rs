//! Shannon entropies, ± marginals, convolution, and the two classical
//! inequalities the entanglement criteria are built from: the entropy power
//! inequality `e^{2H[A∗B]} ≥ e^{2H[A]} + e^{2H[B]}` and the entropic
//! uncertainty sum `H[w] + H[v] ≥ ln(πe)`.

use rustfft::FftPlanner;

use num_complex::Complex64;

use crate::cv_state::{to_momentum, MixedEnsemble, PureProductState};
use crate::grid::{trapezoid, Axis, Dist1D, Dist2D, Field1D, MonotoneCubic};
use crate::{Error, Result};

/// Densities below this contribute exactly zero to `−∫ P ln P`, matching the
/// analytic limit of 0·ln 0.
const LOG_FLOOR: f64 = 1e-300;

/// Normalization slack tolerated by entropy and marginal preconditions.
const MASS_TOL: f64 = 1e-6;

/// An entropy value in natural-log units.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, serde::Serialize)]
pub struct Nats(pub f64);

impl Nats {
    pub fn value(self) -> f64 {
        self.0
    }
}

impl std::fmt::Display for Nats {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{} nats", self.0)
    }
}

impl std::ops::Add for Nats {
    type Output = Nats;
    fn add(self, rhs: Nats) -> Nats {
        Nats(self.0 + rhs.0)
    }
}

impl std::ops::Sub for Nats {
    type Output = Nats;
    fn sub(self, rhs: Nats) -> Nats {
        Nats(self.0 - rhs.0)
    }
}

/// Which of the two ± quadratures to take.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub enum Sign {
    Plus,
    Minus,
}

/// Position or momentum representation of an observable.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Representation {
    Position,
    Momentum,
}

/// Shannon entropy `−Σ P_i ln P_i` of a discrete probability vector.
pub fn discrete_shannon(p: &[f64]) -> Result<Nats> {
    if p.iter().any(|&x| !(x.is_finite() && x >= 0.0)) {
        return Err(Error::Prob("probabilities must be finite and nonnegative".into()));
    }
    let total: f64 = p.iter().sum();
    if (total - 1.0).abs() > 1e-12 {
        return Err(Error::Prob(format!("probabilities sum to {total}, expected 1")));
    }
    let h = p
        .iter()
        .map(|&x| if x > LOG_FLOOR { -x * x.ln() } else { 0.0 })
        .sum();
    Ok(Nats(h))
}

/// Differential Shannon entropy `−∫ P ln P` of a normalized density by
/// trapezoid quadrature. Negative values are legitimate (densities narrower
/// than the unit box).
pub fn shannon(d: &Dist1D) -> Result<Nats> {
    let mass = d.integrate();
    if (mass - 1.0).abs() > MASS_TOL {
        return Err(Error::Prob(format!(
            "entropy needs a normalized density, found mass {mass}"
        )));
    }
    let integrand: Vec<f64> = d
        .data
        .iter()
        .map(|&x| if x > LOG_FLOOR { -x * x.ln() } else { 0.0 })
        .collect();
    Ok(Nats(trapezoid(d.axis.step(), &integrand)))
}

/// Marginal of a joint density already expressed in ± coordinates
/// (axis 0 = sum, axis 1 = difference): integrates out the other variable.
pub fn marginal_pm(d: &Dist2D, sign: Sign) -> Result<Dist1D> {
    let mass = d.integrate();
    if (mass - 1.0).abs() > MASS_TOL {
        return Err(Error::Prob(format!(
            "marginal needs a normalized joint density, found mass {mass}"
        )));
    }
    match sign {
        Sign::Plus => d.marginal0(),
        Sign::Minus => d.marginal1(),
    }
}

/// Density of `a ± b` computed directly from a joint density on an `(a, b)`
/// grid by summing along (anti-)diagonals.
///
/// Both axes must coincide; the result lives on a `(2n−1)`-point axis with
/// the source spacing, and the sums are exact trapezoid quadrature because
/// the diagonal cuts hit grid nodes only.
pub fn pm_project(d: &Dist2D, sign: Sign) -> Result<Dist1D> {
    if !d.ax0.approx_eq(&d.ax1) {
        return Err(Error::Axis(
            "± projection needs identical axes for both variables".into(),
        ));
    }
    let n = d.ax0.n();
    let h = d.ax0.step();
    let m_out = 2 * n - 1;
    let mut out = vec![0.0; m_out];
    match sign {
        Sign::Plus => {
            for i in 0..n {
                for j in 0..n {
                    out[i + j] += d.data[[i, j]];
                }
            }
        }
        Sign::Minus => {
            for i in 0..n {
                for j in 0..n {
                    out[i + (n - 1) - j] += d.data[[i, j]];
                }
            }
        }
    }
    for v in &mut out {
        *v *= h;
    }
    let axis = match sign {
        Sign::Plus => Axis::new(2.0 * d.ax0.min(), 2.0 * d.ax0.max(), m_out)?,
        Sign::Minus => Axis::new(d.ax0.min() - d.ax0.max(), d.ax0.max() - d.ax0.min(), m_out)?,
    };
    Dist1D::new(axis, out)
}

fn next_pow2(n: usize) -> usize {
    n.next_power_of_two()
}

/// Linear convolution of two densities on equally spaced grids, via
/// zero-padded FFT. The output axis spans the sum of the supports,
/// `[a.min + b.min, a.max + b.max]`, and carries the density of the sum of
/// the two independent variables.
pub fn convolve(a: &Dist1D, b: &Dist1D) -> Result<Dist1D> {
    let (ha, hb) = (a.axis.step(), b.axis.step());
    if (ha - hb).abs() > 1e-12 * ha {
        return Err(Error::Axis(format!(
            "convolution needs equal spacing, got {ha} vs {hb}"
        )));
    }
    for (name, d) in [("first", a), ("second", b)] {
        let mass = d.integrate();
        if (mass - 1.0).abs() > MASS_TOL {
            return Err(Error::Prob(format!(
                "convolution needs normalized inputs; {name} has mass {mass}"
            )));
        }
    }
    let (na, nb) = (a.axis.n(), b.axis.n());
    let m = na + nb - 1;
    let nfft = next_pow2(m);
    let mut fa = vec![Complex64::default(); nfft];
    let mut fb = vec![Complex64::default(); nfft];
    for (dst, &src) in fa.iter_mut().zip(&a.data) {
        dst.re = src;
    }
    for (dst, &src) in fb.iter_mut().zip(&b.data) {
        dst.re = src;
    }
    let mut planner = FftPlanner::new();
    let fwd = planner.plan_fft_forward(nfft);
    fwd.process(&mut fa);
    fwd.process(&mut fb);
    for (x, y) in fa.iter_mut().zip(&fb) {
        *x *= y;
    }
    planner.plan_fft_inverse(nfft).process(&mut fa);
    let scale = ha / nfft as f64;
    let data: Vec<f64> = fa[..m].iter().map(|z| z.re * scale).collect();
    let axis = Axis::new(a.axis.min() + b.axis.min(), a.axis.max() + b.axis.max(), m)?;
    Dist1D::new(axis, data)
}

/// Entropy-power gap `e^{2H[a∗b]} − e^{2H[a]} − e^{2H[b]}`. Nonnegative for
/// all densities up to quadrature error; zero exactly when both inputs are
/// Gaussian.
pub fn epi_gap(a: &Dist1D, b: &Dist1D) -> Result<f64> {
    let hc = shannon(&convolve(a, b)?)?;
    let ha = shannon(a)?;
    let hb = shannon(b)?;
    Ok((2.0 * hc.0).exp() - (2.0 * ha.0).exp() - (2.0 * hb.0).exp())
}

/// Entropic uncertainty sum `H[|ψ|²] + H[|φ|²]` of a normalized
/// wavefunction; bounded below by ln(πe), with equality exactly for
/// minimum-uncertainty Gaussians.
pub fn bbm_sum(psi: &Field1D) -> Result<Nats> {
    let hw = shannon(&psi.abs2())?;
    let hv = shannon(&to_momentum(psi)?.abs2())?;
    Ok(hw + hv)
}

/// Density of x₁ ± x₂ (or p₁ ± p₂) for a pure product state, via the
/// convolution identity: the sum of independent variables has density
/// `w₁ ∗ w₂`, and the difference convolves against the mirror of the second
/// factor.
pub fn product_pm_density(s: &PureProductState, rep: Representation, sign: Sign) -> Result<Dist1D> {
    let (d1, d2) = match rep {
        Representation::Position => (s.psi1.abs2(), s.psi2.abs2()),
        Representation::Momentum => (
            to_momentum(&s.psi1)?.abs2(),
            to_momentum(&s.psi2)?.abs2(),
        ),
    };
    match sign {
        Sign::Plus => convolve(&d1, &d2),
        Sign::Minus => convolve(&d1, &d2.reflect()?),
    }
}

/// Combines per-component densities with convex weights. Components that
/// already share an axis are summed exactly; otherwise everything is
/// resampled onto the finest axis spanning the union of supports with a
/// shape-preserving cubic.
pub fn combine_densities(weights: &[f64], parts: &[Dist1D]) -> Result<Dist1D> {
    if weights.len() != parts.len() || parts.is_empty() {
        return Err(Error::Weight(format!(
            "{} weights for {} densities",
            weights.len(),
            parts.len()
        )));
    }
    let first = &parts[0].axis;
    if parts.iter().all(|p| p.axis.approx_eq(first)) {
        let mut data = vec![0.0; first.n()];
        for (w, p) in weights.iter().zip(parts) {
            for (dst, &src) in data.iter_mut().zip(&p.data) {
                *dst += w * src;
            }
        }
        return Dist1D::new(first.clone(), data);
    }
    let step = parts
        .iter()
        .map(|p| p.axis.step())
        .fold(f64::INFINITY, f64::min);
    let half = parts
        .iter()
        .map(|p| p.axis.min().abs().max(p.axis.max().abs()))
        .fold(0.0, f64::max);
    let mut n = (2.0 * half / step).ceil() as usize + 1;
    if n % 2 == 0 {
        n += 1;
    }
    let axis = Axis::symmetric(half, n)?;
    let mut data = vec![0.0; n];
    for (w, p) in weights.iter().zip(parts) {
        let mc = MonotoneCubic::fit(p.axis.clone(), p.data.clone())?;
        for (j, dst) in data.iter_mut().enumerate() {
            *dst += w * mc.eval(axis.value(j)).max(0.0);
        }
    }
    Dist1D::new(axis, data)
}

/// Mixture density of x± or p± for a separable ensemble:
/// `Σ_m λ_m w_{m±}`.
pub fn ensemble_density(e: &MixedEnsemble, rep: Representation, sign: Sign) -> Result<Dist1D> {
    let parts: Vec<Dist1D> = e
        .components
        .iter()
        .map(|c| product_pm_density(c, rep, sign))
        .collect::<Result<_>>()?;
    combine_densities(&e.weights, &parts)
}
