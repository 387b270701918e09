//! Bipartite continuous-variable states and representation transforms.
//!
//! States come in three shapes: pure products `ψ₁(x₁)ψ₂(x₂)`, joint
//! two-variable amplitudes `Ψ(x₁,x₂)` (two-mode squeezed vacuum or tabulated
//! data), and convex mixtures of pure products. The transforms here move
//! between position, momentum, and the ± quadrature coordinates
//! `x± = x₁ ± x₂`.
//!
//! All grids are origin-centred with an odd number of points, so that the
//! origin is a sample, index reversal realises parity exactly, and the
//! FFT-based momentum axis comes out origin-centred as well.

use std::f64::consts::PI;
use std::sync::Arc;

use ndarray::Array2;
use num_complex::Complex64;
use rustfft::{Fft, FftPlanner};
use serde::{Deserialize, Serialize};

use crate::grid::{Axis, Field1D, Field2D};
use crate::{Error, Result};

/// Gaussian half-widths are this many standard deviations, which puts the
/// boundary density below 1e-12 and keeps trapezoid quadrature spectrally
/// accurate.
pub const SIGMA_SPAN: f64 = 12.0;

/// Magnitude allowed at the far end of a momentum axis before the transform
/// is declared aliased (the position grid cannot resolve the state).
const ALIAS_LIMIT: f64 = 1e-10;

/// Which pair of variables a joint amplitude is expressed in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Coordinates {
    /// Positions of the two subsystems.
    X1X2,
    /// Sum and difference quadratures x₊ = x₁+x₂, x₋ = x₁−x₂.
    XPlusMinus,
    /// Momenta of the two subsystems.
    P1P2,
    /// Deformed-momentum sum and difference k₊, k₋.
    KPlusMinus,
}

/// A pure product state ψ₁ ⊗ ψ₂ with both factors on position grids.
#[derive(Debug, Clone)]
pub struct PureProductState {
    pub psi1: Field1D,
    pub psi2: Field1D,
}

/// A pure bipartite amplitude on a two-variable grid.
#[derive(Debug, Clone)]
pub struct JointState {
    pub amplitude: Field2D,
    pub coordinates: Coordinates,
}

/// A convex mixture Σ_m λ_m |ψ₁m⟩⟨ψ₁m| ⊗ |ψ₂m⟩⟨ψ₂m| of pure products —
/// exactly the separable mixed states the mixed criteria are built for.
#[derive(Debug, Clone)]
pub struct MixedEnsemble {
    pub weights: Vec<f64>,
    pub components: Vec<PureProductState>,
}

impl MixedEnsemble {
    pub fn new(weights: Vec<f64>, components: Vec<PureProductState>) -> Result<MixedEnsemble> {
        if weights.is_empty() || weights.len() != components.len() {
            return Err(Error::Weight(format!(
                "{} weights for {} components",
                weights.len(),
                components.len()
            )));
        }
        if weights.iter().any(|&w| !(w.is_finite() && w >= 0.0)) {
            return Err(Error::Weight("weights must be finite and nonnegative".into()));
        }
        let total: f64 = weights.iter().sum();
        if (total - 1.0).abs() > 1e-12 {
            return Err(Error::Weight(format!("weights sum to {total}, expected 1")));
        }
        Ok(MixedEnsemble {
            weights,
            components,
        })
    }
}

/// A realized state, whichever shape the descriptor produced.
#[derive(Debug, Clone)]
pub enum State {
    Product(PureProductState),
    Joint(JointState),
    Ensemble(MixedEnsemble),
}

fn require_odd_symmetric(axis: &Axis, what: &str) -> Result<()> {
    if axis.n() % 2 == 0 {
        return Err(Error::Axis(format!(
            "{what} needs an odd number of grid points, got {}",
            axis.n()
        )));
    }
    if !axis.is_symmetric() {
        return Err(Error::Axis(format!(
            "{what} needs an origin-centred axis, got [{}, {}]",
            axis.min(),
            axis.max()
        )));
    }
    Ok(())
}

/// Samples a normalized Gaussian wavepacket
/// `(2πσ²)^(-1/4) exp(-(x-c)²/(4σ²) + i p̄ x)` on the given axis.
pub fn gaussian_field_on(axis: &Axis, sigma: f64, center: f64, momentum: f64) -> Result<Field1D> {
    if !(sigma.is_finite() && sigma > 0.0) {
        return Err(Error::Param(format!("sigma must be positive, got {sigma}")));
    }
    if !(center.is_finite() && momentum.is_finite()) {
        return Err(Error::Param("non-finite center or momentum".into()));
    }
    let norm = (2.0 * PI * sigma * sigma).powf(-0.25);
    let data = axis
        .values()
        .iter()
        .map(|&x| {
            let envelope = norm * (-(x - center).powi(2) / (4.0 * sigma * sigma)).exp();
            Complex64::from_polar(envelope, momentum * x)
        })
        .collect();
    Field1D::new(axis.clone(), data)
}

/// Minimum-uncertainty Gaussian product state. Each factor has position
/// variance σ² and momentum variance 1/(4σ²). Both factors share one
/// origin-centred axis of `n` (odd) points on `[-half_width, half_width]`.
#[allow(clippy::too_many_arguments)]
pub fn build_gaussian_product(
    sigma1: f64,
    sigma2: f64,
    center1: f64,
    center2: f64,
    momentum1: f64,
    momentum2: f64,
    half_width: f64,
    n: usize,
) -> Result<PureProductState> {
    let axis = Axis::symmetric(half_width, n)?;
    require_odd_symmetric(&axis, "a product-state grid")?;
    Ok(PureProductState {
        psi1: gaussian_field_on(&axis, sigma1, center1, momentum1)?,
        psi2: gaussian_field_on(&axis, sigma2, center2, momentum2)?,
    })
}

/// Two-mode squeezed vacuum:
/// `Ψ(x₁,x₂) = π^(-1/2) exp(-e^(-2r)(x₁+x₂)²/4 - e^(2r)(x₁-x₂)²/4)`.
///
/// Squeezing `r > 0` narrows the difference quadrature, Var(x₁−x₂) = e^(-2r),
/// while the sum spreads to e^(2r); at r = 0 the state factorizes into two
/// Gaussians with position variance ½. This is the normalizable family that
/// approaches the ideal EPR state as r → ∞.
pub fn build_tmsv(r: f64, half_width: f64, n: usize) -> Result<JointState> {
    if !r.is_finite() {
        return Err(Error::Param(format!("squeezing parameter must be finite, got {r}")));
    }
    let axis = Axis::symmetric(half_width, n)?;
    require_odd_symmetric(&axis, "a joint-state grid")?;
    let xs = axis.values();
    let (gp, gm) = ((-2.0 * r).exp(), (2.0 * r).exp());
    let norm = PI.powf(-0.5);
    let mut data = Array2::zeros((n, n));
    for (i, &x1) in xs.iter().enumerate() {
        for (j, &x2) in xs.iter().enumerate() {
            let s = x1 + x2;
            let d = x1 - x2;
            data[[i, j]] = Complex64::new(norm * (-(gp * s * s + gm * d * d) / 4.0).exp(), 0.0);
        }
    }
    Ok(JointState {
        amplitude: Field2D::new(axis.clone(), axis, data)?,
        coordinates: Coordinates::X1X2,
    })
}

/// Conjugate momentum axis of a position axis, plus the FFT pre-modulation
/// and post-phase vectors that turn a plain FFT into the unitary transform
/// `φ(p) = (2π)^(-1/2) ∫ ψ(x) e^(-ipx) dx` on an origin-centred axis.
fn conjugate_axis_factors(axis: &Axis) -> Result<(Axis, Vec<Complex64>, Vec<Complex64>)> {
    require_odd_symmetric(axis, "a Fourier transform")?;
    let n = axis.n();
    let h = axis.step();
    let c = (n - 1) / 2;
    let dp = 2.0 * PI / (n as f64 * h);
    let p_axis = Axis::symmetric(c as f64 * dp, n)?;
    // Shifting the FFT's output index by c: multiply inputs by e^{+2πi c j/n}.
    // The angle is reduced with integer arithmetic so large grids lose no
    // phase precision.
    let premod: Vec<Complex64> = (0..n)
        .map(|j| Complex64::from_polar(1.0, 2.0 * PI * ((c * j) % n) as f64 / n as f64))
        .collect();
    // Continuous-kernel phase for x_min ≠ 0 plus the quadrature weight.
    let scale = h / (2.0 * PI).sqrt();
    let post: Vec<Complex64> = (0..n)
        .map(|m| {
            let p = p_axis.value(m);
            Complex64::from_polar(scale, -p * axis.min())
        })
        .collect();
    Ok((p_axis, premod, post))
}

fn boundary_alias_error(found: f64) -> Error {
    Error::Alias {
        found,
        limit: ALIAS_LIMIT,
    }
}

/// Unitary position → momentum transform of a single-variable wavefunction.
///
/// The momentum axis is the FFT-conjugate axis (spacing 2π/(n·step)); the
/// Gaussian `π^(-1/4) e^(-x²/2)` is a fixed point. Fails with an alias error
/// when the transform has not decayed at the momentum boundary, i.e. the
/// position grid is too coarse for the state.
pub fn to_momentum(f: &Field1D) -> Result<Field1D> {
    let (p_axis, premod, post) = conjugate_axis_factors(&f.axis)?;
    let n = f.axis.n();
    let mut buf: Vec<Complex64> = f
        .data
        .iter()
        .zip(&premod)
        .map(|(&z, &m)| z * m)
        .collect();
    FftPlanner::new().plan_fft_forward(n).process(&mut buf);
    let data: Vec<Complex64> = buf.iter().zip(&post).map(|(&z, &q)| z * q).collect();
    let edge = data[0].norm().max(data[n - 1].norm());
    if edge > ALIAS_LIMIT {
        return Err(boundary_alias_error(edge));
    }
    Field1D::new(p_axis, data)
}

fn transform_rows(
    data: &mut Array2<Complex64>,
    fft: &Arc<dyn Fft<f64>>,
    premod: &[Complex64],
    post: &[Complex64],
) {
    let n = premod.len();
    let mut buf = vec![Complex64::default(); n];
    for mut row in data.rows_mut() {
        for (b, (&z, &m)) in buf.iter_mut().zip(row.iter().zip(premod)) {
            *b = z * m;
        }
        fft.process(&mut buf);
        for (r, (&z, &q)) in row.iter_mut().zip(buf.iter().zip(post)) {
            *r = z * q;
        }
    }
}

/// Unitary 2D position → momentum transform of a joint amplitude in
/// (x₁, x₂) coordinates; the result carries the `P1P2` tag.
pub fn fourier_2d(j: &JointState) -> Result<JointState> {
    if j.coordinates != Coordinates::X1X2 {
        return Err(Error::KindMismatch(
            "the 2D momentum transform expects (x1, x2) coordinates".into(),
        ));
    }
    let (p0_axis, premod0, post0) = conjugate_axis_factors(&j.amplitude.ax0)?;
    let (p1_axis, premod1, post1) = conjugate_axis_factors(&j.amplitude.ax1)?;
    let mut planner = FftPlanner::new();
    let mut data = j.amplitude.data.clone();
    // Transform along axis 1 (rows), then along axis 0 via a transpose pair.
    let fft1 = planner.plan_fft_forward(premod1.len());
    transform_rows(&mut data, &fft1, &premod1, &post1);
    let mut t = data.t().as_standard_layout().into_owned();
    let fft0 = planner.plan_fft_forward(premod0.len());
    transform_rows(&mut t, &fft0, &premod0, &post0);
    let out = t.t().as_standard_layout().into_owned();

    let (n0, n1) = out.dim();
    let mut edge = 0.0_f64;
    for i in 0..n0 {
        edge = edge.max(out[[i, 0]].norm()).max(out[[i, n1 - 1]].norm());
    }
    for jx in 0..n1 {
        edge = edge.max(out[[0, jx]].norm()).max(out[[n0 - 1, jx]].norm());
    }
    if edge > ALIAS_LIMIT {
        return Err(boundary_alias_error(edge));
    }
    Ok(JointState {
        amplitude: Field2D::new(p0_axis, p1_axis, out)?,
        coordinates: Coordinates::P1P2,
    })
}

/// Change of variables (x₁, x₂) → (x₊, x₋) with the 1/√2 Jacobian factor:
/// `Ψ±(x₊, x₋) = 2^(-1/2) Ψ((x₊+x₋)/2, (x₊-x₋)/2)`.
///
/// The target grid spans the image square `[-2L, 2L]²` with double the source
/// spacing, chosen so every target point maps back exactly onto a source
/// node; points whose preimage falls outside the source square (the corners
/// beyond the rotated image) are zero, which is where a normalized input has
/// already decayed.
pub fn to_pm(j: &JointState) -> Result<JointState> {
    if j.coordinates != Coordinates::X1X2 {
        return Err(Error::KindMismatch(
            "the ± change of variables expects (x1, x2) coordinates".into(),
        ));
    }
    let ax = &j.amplitude.ax0;
    if !ax.approx_eq(&j.amplitude.ax1) {
        return Err(Error::Axis(
            "the ± change of variables needs identical x1 and x2 axes".into(),
        ));
    }
    require_odd_symmetric(ax, "the ± change of variables")?;
    let n = ax.n();
    let c = (n - 1) / 2;
    let target = Axis::symmetric(2.0 * ax.max(), n)?;
    let scale = Complex64::new(0.5_f64.sqrt(), 0.0);
    let mut data = Array2::default((n, n));
    for a in 0..n {
        for b in 0..n {
            // Preimage indices: x1 index a+b-c, x2 index a-b+c.
            let i = a + b;
            let jj = a + c;
            if i >= c && i - c < n && jj >= b && jj - b < n {
                data[[a, b]] = scale * j.amplitude.data[[i - c, jj - b]];
            }
        }
    }
    Ok(JointState {
        amplitude: Field2D::new(target.clone(), target, data)?,
        coordinates: Coordinates::XPlusMinus,
    })
}

/// Uniform-axis metadata inside a tabulated descriptor.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct AxisSpec {
    pub min: f64,
    pub max: f64,
    pub n: usize,
}

impl AxisSpec {
    fn to_axis(self) -> Result<Axis> {
        Axis::new(self.min, self.max, self.n)
    }
}

/// Parsed state descriptor. The JSON schema uses a `type` discriminator:
///
/// ```json
/// {"type": "gaussian_product", "sigma1": 1.0, "sigma2": 2.0,
///  "center1": 0.0, "center2": 0.0, "momentum1": 0.0, "momentum2": 0.0}
/// {"type": "tmsv", "r": 0.5}
/// {"type": "tabulated", "axis": {"min": -8, "max": 8, "n": 257},
///  "psi1": [[re, im], ...], "psi2": [[re, im], ...]}
/// {"type": "ensemble", "weights": [0.3, 0.7], "components": [ ... ]}
/// ```
///
/// Tabulated states carry either both factors (`psi1`, `psi2`) or a joint
/// row-major amplitude (`joint`); ensemble components must themselves be
/// product-shaped (gaussian_product or two-factor tabulated).
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum StateDescriptor {
    GaussianProduct {
        sigma1: f64,
        sigma2: f64,
        #[serde(default)]
        center1: f64,
        #[serde(default)]
        center2: f64,
        #[serde(default)]
        momentum1: f64,
        #[serde(default)]
        momentum2: f64,
    },
    Tmsv {
        r: f64,
    },
    Tabulated {
        axis: AxisSpec,
        #[serde(default)]
        psi1: Option<Vec<[f64; 2]>>,
        #[serde(default)]
        psi2: Option<Vec<[f64; 2]>>,
        #[serde(default)]
        joint: Option<Vec<Vec<[f64; 2]>>>,
    },
    Ensemble {
        weights: Vec<f64>,
        components: Vec<StateDescriptor>,
    },
}

impl StateDescriptor {
    /// True when the descriptor realizes to a pure product state.
    pub fn is_product(&self) -> bool {
        match self {
            StateDescriptor::GaussianProduct { .. } => true,
            StateDescriptor::Tabulated { joint, .. } => joint.is_none(),
            _ => false,
        }
    }

    fn validate(&self) -> Result<()> {
        match self {
            StateDescriptor::GaussianProduct {
                sigma1,
                sigma2,
                center1,
                center2,
                momentum1,
                momentum2,
            } => {
                for (name, s) in [("sigma1", sigma1), ("sigma2", sigma2)] {
                    if !(s.is_finite() && *s > 0.0) {
                        return Err(Error::Param(format!("{name} must be positive, got {s}")));
                    }
                }
                for (name, v) in [
                    ("center1", center1),
                    ("center2", center2),
                    ("momentum1", momentum1),
                    ("momentum2", momentum2),
                ] {
                    if !v.is_finite() {
                        return Err(Error::Param(format!("{name} must be finite, got {v}")));
                    }
                }
                Ok(())
            }
            StateDescriptor::Tmsv { r } => {
                if !r.is_finite() {
                    return Err(Error::Param(format!("r must be finite, got {r}")));
                }
                Ok(())
            }
            StateDescriptor::Tabulated {
                axis,
                psi1,
                psi2,
                joint,
            } => {
                let ax = axis.to_axis()?;
                require_odd_symmetric(&ax, "a tabulated grid").map_err(|e| match e {
                    Error::Axis(msg) => Error::Schema(msg),
                    other => other,
                })?;
                match (psi1, psi2, joint) {
                    (Some(a), Some(b), None) => {
                        for (name, samples) in [("psi1", a), ("psi2", b)] {
                            if samples.len() != ax.n() {
                                return Err(Error::Schema(format!(
                                    "{name} has {} samples for an axis of {}",
                                    samples.len(),
                                    ax.n()
                                )));
                            }
                            if samples.iter().flatten().any(|v| !v.is_finite()) {
                                return Err(Error::Schema(format!("{name} contains non-finite samples")));
                            }
                        }
                        Ok(())
                    }
                    (None, None, Some(rows)) => {
                        if rows.len() != ax.n() || rows.iter().any(|r| r.len() != ax.n()) {
                            return Err(Error::Schema(format!(
                                "joint table must be {n}×{n}",
                                n = ax.n()
                            )));
                        }
                        if rows.iter().flatten().flatten().any(|v| !v.is_finite()) {
                            return Err(Error::Schema("joint table contains non-finite samples".into()));
                        }
                        Ok(())
                    }
                    _ => Err(Error::Schema(
                        "tabulated state needs either psi1+psi2 or joint, not both".into(),
                    )),
                }
            }
            StateDescriptor::Ensemble {
                weights,
                components,
            } => {
                if components.is_empty() || weights.len() != components.len() {
                    return Err(Error::Schema(format!(
                        "{} weights for {} components",
                        weights.len(),
                        components.len()
                    )));
                }
                if weights.iter().any(|&w| !(w.is_finite() && w >= 0.0)) {
                    return Err(Error::Schema("weights must be finite and nonnegative".into()));
                }
                let total: f64 = weights.iter().sum();
                if (total - 1.0).abs() > 1e-12 {
                    return Err(Error::Schema(format!("weights sum to {total}, expected 1")));
                }
                let mut tab_axis: Option<AxisSpec> = None;
                for comp in components {
                    if !comp.is_product() {
                        return Err(Error::Schema(
                            "ensemble components must be product states".into(),
                        ));
                    }
                    comp.validate()?;
                    if let StateDescriptor::Tabulated { axis, .. } = comp {
                        match tab_axis {
                            None => tab_axis = Some(*axis),
                            Some(prev) => {
                                if prev.min != axis.min || prev.max != axis.max || prev.n != axis.n
                                {
                                    return Err(Error::Schema(
                                        "tabulated ensemble components must share one axis".into(),
                                    ));
                                }
                            }
                        }
                    }
                }
                Ok(())
            }
        }
    }
}

/// Parses and validates a JSON state descriptor.
pub fn parse_descriptor(text: &str) -> Result<StateDescriptor> {
    let d: StateDescriptor =
        serde_json::from_str(text).map_err(|e| Error::Schema(e.to_string()))?;
    d.validate()?;
    Ok(d)
}

fn field_from_samples(axis: &Axis, samples: &[[f64; 2]]) -> Result<Field1D> {
    let data = samples
        .iter()
        .map(|&[re, im]| Complex64::new(re, im))
        .collect();
    let mut f = Field1D::new(axis.clone(), data)?;
    f.normalize()?;
    Ok(f)
}

fn gaussian_extent(components: &[&StateDescriptor]) -> (f64, f64) {
    let mut max_sigma = 0.0_f64;
    let mut max_center = 0.0_f64;
    for comp in components {
        if let StateDescriptor::GaussianProduct {
            sigma1,
            sigma2,
            center1,
            center2,
            ..
        } = comp
        {
            max_sigma = max_sigma.max(*sigma1).max(*sigma2);
            max_center = max_center.max(center1.abs()).max(center2.abs());
        }
    }
    (max_sigma, max_center)
}

/// Materializes a descriptor on concrete grids.
///
/// `n1d` and `n2d` are the point counts for single-variable and joint grids
/// (both must be odd); `half_width` overrides the automatic domain choice of
/// `SIGMA_SPAN·σ_max + |center|_max` for Gaussian families (or
/// `SIGMA_SPAN·e^|r|` for the squeezed state). Tabulated states keep their
/// own axes.
pub fn realize(
    d: &StateDescriptor,
    n1d: usize,
    n2d: usize,
    half_width: Option<f64>,
) -> Result<State> {
    d.validate()?;
    match d {
        StateDescriptor::GaussianProduct {
            sigma1,
            sigma2,
            center1,
            center2,
            momentum1,
            momentum2,
        } => {
            let (s, c) = gaussian_extent(&[d]);
            let hw = half_width.unwrap_or(SIGMA_SPAN * s + c);
            Ok(State::Product(build_gaussian_product(
                *sigma1, *sigma2, *center1, *center2, *momentum1, *momentum2, hw, n1d,
            )?))
        }
        StateDescriptor::Tmsv { r } => {
            let hw = half_width.unwrap_or(SIGMA_SPAN * r.abs().exp());
            Ok(State::Joint(build_tmsv(*r, hw, n2d)?))
        }
        StateDescriptor::Tabulated {
            axis,
            psi1,
            psi2,
            joint,
        } => {
            let ax = axis.to_axis()?;
            if let (Some(a), Some(b)) = (psi1, psi2) {
                Ok(State::Product(PureProductState {
                    psi1: field_from_samples(&ax, a)?,
                    psi2: field_from_samples(&ax, b)?,
                }))
            } else {
                let rows = joint.as_ref().expect("validated tabulated joint");
                let mut data = Array2::default((ax.n(), ax.n()));
                for (i, row) in rows.iter().enumerate() {
                    for (j, &[re, im]) in row.iter().enumerate() {
                        data[[i, j]] = Complex64::new(re, im);
                    }
                }
                let mut amp = Field2D::new(ax.clone(), ax, data)?;
                amp.normalize()?;
                Ok(State::Joint(JointState {
                    amplitude: amp,
                    coordinates: Coordinates::X1X2,
                }))
            }
        }
        StateDescriptor::Ensemble {
            weights,
            components,
        } => {
            // All components live on one shared axis so mixture densities
            // combine without resampling. A tabulated component fixes the
            // axis; otherwise it spans the widest Gaussian in the mixture.
            let shared_tab = components.iter().find_map(|c| match c {
                StateDescriptor::Tabulated { axis, .. } => Some(*axis),
                _ => None,
            });
            let axis = match shared_tab {
                Some(spec) => spec.to_axis()?,
                None => {
                    let refs: Vec<&StateDescriptor> = components.iter().collect();
                    let (s, c) = gaussian_extent(&refs);
                    Axis::symmetric(half_width.unwrap_or(SIGMA_SPAN * s + c), n1d)?
                }
            };
            let mut built = Vec::with_capacity(components.len());
            for comp in components {
                match comp {
                    StateDescriptor::GaussianProduct {
                        sigma1,
                        sigma2,
                        center1,
                        center2,
                        momentum1,
                        momentum2,
                    } => built.push(PureProductState {
                        psi1: gaussian_field_on(&axis, *sigma1, *center1, *momentum1)?,
                        psi2: gaussian_field_on(&axis, *sigma2, *center2, *momentum2)?,
                    }),
                    StateDescriptor::Tabulated { psi1, psi2, .. } => {
                        let (a, b) = (
                            psi1.as_ref().expect("validated product tabulated"),
                            psi2.as_ref().expect("validated product tabulated"),
                        );
                        built.push(PureProductState {
                            psi1: field_from_samples(&axis, a)?,
                            psi2: field_from_samples(&axis, b)?,
                        });
                    }
                    _ => unreachable!("validated: ensemble components are products"),
                }
            }
            Ok(State::Ensemble(MixedEnsemble::new(weights.clone(), built)?))
        }
    }
}
