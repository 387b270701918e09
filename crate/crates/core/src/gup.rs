//! Generalized-uncertainty-principle deformation of momentum space.
//!
//! The deformed commutator `[x, k] = i(1 + βk²)` is realised by
//! `k = tan(√β p)/√β`, which maps the bounded physical momentum
//! `p ∈ (−p₀, p₀)`, `p₀ = π/(2√β)`, onto the whole real line. A momentum
//! density `v(p)` turns into `u(k) = v(p(k))/(1 + βk²)`, and its entropy
//! rises by exactly
//!
//! ```text
//! η(β) = ∫ u(k) ln(1 + βk²) dk ≥ 0,    H[u] = H[v] + η.
//! ```
//!
//! Everything here is quadrature-friendly: η and all k-space integrals are
//! evaluated in the p-domain, where the range is compact, and the deformed
//! densities themselves are truncated at the image of a (1 − ε) quantile so
//! the infinite k axis never enters.

use ndarray::Array2;
use num_complex::Complex64;
use std::f64::consts::PI;

use crate::entropy::{pm_project, shannon, Nats, Sign};
use crate::grid::{trapezoid, Axis, Dist1D, Dist2D, Field1D, MonotoneCubic};
use crate::{Error, Result};

/// Mass tolerance for deformed densities after resampling onto a k grid.
const U_MASS_TOL: f64 = 1e-5;

/// Deformation parameter β ≥ 0 with its momentum cutoff p₀ = π/(2√β)
/// (infinite at β = 0, where ordinary quantum mechanics is recovered).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GupParam {
    beta: f64,
    p0: f64,
}

impl GupParam {
    pub fn new(beta: f64) -> Result<GupParam> {
        if !(beta.is_finite() && beta >= 0.0) {
            return Err(Error::Param(format!(
                "deformation parameter must be a nonnegative finite real, got {beta}"
            )));
        }
        let p0 = if beta == 0.0 {
            f64::INFINITY
        } else {
            PI / (2.0 * beta.sqrt())
        };
        Ok(GupParam { beta, p0 })
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn p0(&self) -> f64 {
        self.p0
    }
}

/// Deformed momentum `k = tan(√β p)/√β`; the identity at β = 0.
pub fn p_to_k(p: f64, g: &GupParam) -> Result<f64> {
    if g.beta == 0.0 {
        return Ok(p);
    }
    if p.abs() >= g.p0 {
        return Err(Error::Domain { p, p0: g.p0 });
    }
    let sb = g.beta.sqrt();
    Ok((sb * p).tan() / sb)
}

/// Inverse map `p = atan(√β k)/√β`, total on the real line.
pub fn k_to_p(k: f64, g: &GupParam) -> f64 {
    if g.beta == 0.0 {
        return k;
    }
    let sb = g.beta.sqrt();
    (sb * k).atan() / sb
}

fn linear_segment(x0: f64, x1: f64, y0: f64, y1: f64, a: f64, b: f64) -> f64 {
    // Exact integral of the linear interpolant over [a, b] ⊆ [x0, x1].
    let h = x1 - x0;
    let ya = y0 + (y1 - y0) * (a - x0) / h;
    let yb = y0 + (y1 - y0) * (b - x0) / h;
    (b - a) * 0.5 * (ya + yb)
}

/// Momentum mass outside the cutoff window, `∫_{|p| > p₀} v dp`, with the
/// cells straddling ±p₀ split exactly on the linear interpolant.
pub fn tail_mass(v: &Dist1D, g: &GupParam) -> f64 {
    if g.p0.is_infinite() {
        return 0.0;
    }
    let ax = &v.axis;
    let mut total = 0.0;
    for j in 0..ax.n() - 1 {
        let (x0, x1) = (ax.value(j), ax.value(j + 1));
        let (y0, y1) = (v.data[j], v.data[j + 1]);
        if x0 < -g.p0 {
            total += linear_segment(x0, x1, y0, y1, x0, x1.min(-g.p0));
        }
        if x1 > g.p0 {
            total += linear_segment(x0, x1, y0, y1, x0.max(g.p0), x1);
        }
    }
    total
}

/// Smallest half-width `q` such that `[-q, q]` carries all but `eps` of the
/// density's mass (each tail gets eps/2), by inverse interpolation of the
/// cumulative trapezoid integral.
pub fn symmetric_quantile(v: &Dist1D, eps: f64) -> f64 {
    let n = v.axis.n();
    let h = v.axis.step();
    let mut cum = vec![0.0; n];
    for j in 1..n {
        cum[j] = cum[j - 1] + 0.5 * h * (v.data[j - 1] + v.data[j]);
    }
    let total = cum[n - 1];
    let locate = |target: f64| -> f64 {
        let j = cum.partition_point(|&c| c < target).min(n - 1).max(1);
        let span = cum[j] - cum[j - 1];
        let frac = if span > 0.0 {
            ((target - cum[j - 1]) / span).clamp(0.0, 1.0)
        } else {
            0.0
        };
        v.axis.value(j - 1) + frac * h
    };
    let lo = locate(0.5 * eps * total);
    let hi = locate(total * (1.0 - 0.5 * eps));
    lo.abs().max(hi.abs())
}

fn check_tail(v: &Dist1D, g: &GupParam, eps_tail: f64) -> Result<f64> {
    let tail = tail_mass(v, g);
    if tail >= eps_tail {
        return Err(Error::GupDomain {
            tail,
            p0: g.p0,
            eps_tail,
        });
    }
    Ok(tail)
}

/// The k axis that captures all but `eps_tail` of the density, clamped
/// safely inside the tan singularity.
fn deformed_axis(v: &Dist1D, g: &GupParam, eps_tail: f64, n: usize) -> Result<Axis> {
    let pq = symmetric_quantile(v, eps_tail).min(g.p0 * (1.0 - 1e-9));
    let kmax = p_to_k(pq, g).expect("quantile clamped inside the cutoff");
    Axis::symmetric(kmax, n)
}

/// Deformed momentum density `u(k) = v(p(k))/(1 + βk²)` resampled onto an
/// explicitly chosen k axis with a shape-preserving cubic, then normalized
/// (the resampling may not conserve mass beyond 1e-5, which is an error).
pub fn u_from_v_on(v: &Dist1D, g: &GupParam, k_axis: &Axis) -> Result<Dist1D> {
    let mc = MonotoneCubic::fit(v.axis.clone(), v.data.clone())?;
    let data: Vec<f64> = k_axis
        .values()
        .iter()
        .map(|&k| {
            let p = k_to_p(k, g);
            mc.eval(p).max(0.0) / (1.0 + g.beta * k * k)
        })
        .collect();
    let mut u = Dist1D::new(k_axis.clone(), data)?;
    let mass = u.integrate();
    if (mass - 1.0).abs() > U_MASS_TOL {
        return Err(Error::Prob(format!(
            "deformed density mass {mass} strays from 1 beyond {U_MASS_TOL:e}; \
             the momentum grid is too coarse"
        )));
    }
    u.normalize()?;
    Ok(u)
}

/// Deformed momentum density on an automatically chosen k axis spanning the
/// image of the (1 − ε_tail) quantile. At β = 0 the input is returned
/// unchanged.
pub fn u_from_v(v: &Dist1D, g: &GupParam, eps_tail: f64) -> Result<Dist1D> {
    if g.beta == 0.0 {
        return Ok(v.clone());
    }
    check_tail(v, g, eps_tail)?;
    let k_axis = deformed_axis(v, g, eps_tail, v.axis.n())?;
    u_from_v_on(v, g, &k_axis)
}

/// The entropy correction `η(β) = ∫ u(k) ln(1 + βk²) dk ≥ 0`, evaluated in
/// the p-domain where the integrand is `v(p)·ln(1 + tan²(√β p))` =
/// `−2 v(p) ln cos(√β p)` on the compact window (−p₀, p₀).
pub fn eta(v: &Dist1D, g: &GupParam, eps_tail: f64) -> Result<Nats> {
    if g.beta == 0.0 {
        return Ok(Nats(0.0));
    }
    check_tail(v, g, eps_tail)?;
    let sb = g.beta.sqrt();
    let lim = g.p0 * (1.0 - 1e-12);
    let integrand: Vec<f64> = v
        .data
        .iter()
        .enumerate()
        .map(|(j, &y)| {
            let p = v.axis.value(j);
            if p.abs() < lim {
                -2.0 * y * (sb * p).cos().ln()
            } else {
                0.0
            }
        })
        .collect();
    Ok(Nats(trapezoid(v.axis.step(), &integrand)))
}

/// Entropy of the deformed density without ever leaving the p-domain:
/// `H[u] = H[v] + η(β)`.
pub fn gup_entropy(v: &Dist1D, g: &GupParam, eps_tail: f64) -> Result<Nats> {
    Ok(shannon(v)? + eta(v, g, eps_tail)?)
}

/// Deformed density sampled without interpolation: the momentum
/// wavefunction is evaluated directly at the preimages `p(k)` of the k-grid
/// nodes by an explicit discrete Fourier sum over the position samples.
///
/// This costs O(n·n_k) but keeps spectral accuracy at the deformed nodes,
/// which matters when the FFT-conjugate momentum grid is coarse relative to
/// the momentum spread.
pub fn u_from_wavefunction(psi: &Field1D, g: &GupParam, k_axis: &Axis) -> Result<Dist1D> {
    let h = psi.axis.step();
    let x0 = psi.axis.min();
    let scale = h / (2.0 * PI).sqrt();
    let data: Vec<f64> = k_axis
        .values()
        .iter()
        .map(|&k| {
            let p = k_to_p(k, g);
            let step = Complex64::from_polar(1.0, -p * h);
            let mut phase = Complex64::from_polar(1.0, -p * x0);
            let mut acc = Complex64::new(0.0, 0.0);
            for &z in &psi.data {
                acc += z * phase;
                phase *= step;
            }
            (scale * scale) * acc.norm_sqr() / (1.0 + g.beta * k * k)
        })
        .collect();
    let mut u = Dist1D::new(k_axis.clone(), data)?;
    let mass = u.integrate();
    if (mass - 1.0).abs() > U_MASS_TOL {
        return Err(Error::Prob(format!(
            "deformed density mass {mass} strays from 1 beyond {U_MASS_TOL:e}; \
             the k window is too narrow"
        )));
    }
    u.normalize()?;
    Ok(u)
}

/// Marginal density of `k₁ ± k₂` for a joint momentum density `v(p₁, p₂)`:
/// the joint deformed density
/// `u(k₁,k₂) = v(p(k₁), p(k₂)) / ((1+βk₁²)(1+βk₂²))`
/// is sampled on a square k grid (bicubic in the source) and projected onto
/// the sum or difference diagonal. At β = 0 this is exactly the undeformed
/// ± marginal.
pub fn joint_u_pm(v2d: &Dist2D, g: &GupParam, sign: Sign, eps_tail: f64) -> Result<Dist1D> {
    if g.beta == 0.0 {
        return pm_project(v2d, sign);
    }
    let m0 = v2d.marginal0()?;
    let m1 = v2d.marginal1()?;
    // Union bound on the mass outside the (−p₀, p₀)² square.
    let tail = tail_mass(&m0, g) + tail_mass(&m1, g);
    if tail >= eps_tail {
        return Err(Error::GupDomain {
            tail,
            p0: g.p0,
            eps_tail,
        });
    }
    let pq = symmetric_quantile(&m0, eps_tail)
        .max(symmetric_quantile(&m1, eps_tail))
        .min(g.p0 * (1.0 - 1e-9));
    let kmax = p_to_k(pq, g).expect("quantile clamped inside the cutoff");
    let n = v2d.ax0.n();
    let k_axis = Axis::symmetric(kmax, n)?;
    let ks = k_axis.values();
    let ps: Vec<f64> = ks.iter().map(|&k| k_to_p(k, g)).collect();
    let denom: Vec<f64> = ks.iter().map(|&k| 1.0 + g.beta * k * k).collect();
    let mut data = Array2::zeros((n, n));
    for a in 0..n {
        for b in 0..n {
            let val = v2d.interp_bicubic(ps[a], ps[b]).max(0.0);
            data[[a, b]] = val / (denom[a] * denom[b]);
        }
    }
    let mut u2 = Dist2D::new(k_axis.clone(), k_axis, data)?;
    let mass = u2.integrate();
    if (mass - 1.0).abs() > U_MASS_TOL {
        return Err(Error::Prob(format!(
            "joint deformed density mass {mass} strays from 1 beyond {U_MASS_TOL:e}"
        )));
    }
    u2.normalize()?;
    pm_project(&u2, sign)
}

/// Per-subsystem corrections for one bipartite state at one β.
#[derive(Debug, Clone, Copy)]
pub struct GupCorrection {
    pub beta: f64,
    pub eta1: Nats,
    pub eta2: Nats,
    pub tail1: f64,
    pub tail2: f64,
}

impl GupCorrection {
    /// Computes η and tail mass for both subsystem momentum densities,
    /// failing if either tail exceeds the tolerance.
    pub fn for_momentum_pair(
        v1: &Dist1D,
        v2: &Dist1D,
        g: &GupParam,
        eps_tail: f64,
    ) -> Result<GupCorrection> {
        let tail1 = check_tail(v1, g, eps_tail)?;
        let tail2 = check_tail(v2, g, eps_tail)?;
        Ok(GupCorrection {
            beta: g.beta(),
            eta1: eta(v1, g, eps_tail)?,
            eta2: eta(v2, g, eps_tail)?,
            tail1,
            tail2,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cv_state::gaussian_field_on;
    use crate::entropy::convolve;
    use approx::{assert_abs_diff_eq, assert_relative_eq};

    const EPS_TAIL: f64 = 1e-8;

    fn gaussian_p(sigma: f64, half_width: f64, n: usize) -> Dist1D {
        let axis = Axis::symmetric(half_width, n).unwrap();
        let data = axis
            .values()
            .iter()
            .map(|&p| (-0.5 * (p / sigma).powi(2)).exp() / (sigma * (2.0 * PI).sqrt()))
            .collect();
        Dist1D::new(axis, data).unwrap()
    }

    #[test]
    fn tan_map_known_values() {
        let free = GupParam::new(0.0).unwrap();
        assert_eq!(p_to_k(3.7, &free).unwrap(), 3.7);
        assert_eq!(k_to_p(-1.2, &free), -1.2);

        let g = GupParam::new(0.01).unwrap();
        assert_relative_eq!(g.p0(), 5.0 * PI, max_relative = 1e-15);
        assert_relative_eq!(
            p_to_k(1.0, &g).unwrap(),
            (0.1_f64).tan() / 0.1,
            max_relative = 1e-15
        );
        assert_abs_diff_eq!(p_to_k(1.0, &g).unwrap(), 1.0033467, epsilon = 1e-7);
        assert!(matches!(
            p_to_k(5.0 * PI, &g),
            Err(Error::Domain { .. })
        ));
    }

    #[test]
    fn tan_map_roundtrip() {
        let g = GupParam::new(0.03).unwrap();
        for p in [-8.0, -1.0, 0.0, 2.5, 8.9] {
            let k = p_to_k(p, &g).unwrap();
            assert_abs_diff_eq!(k_to_p(k, &g), p, epsilon = 1e-12);
        }
    }

    #[test]
    fn gup_param_rejects_negative_beta() {
        assert!(matches!(GupParam::new(-0.1), Err(Error::Param(_))));
        assert!(matches!(GupParam::new(f64::NAN), Err(Error::Param(_))));
    }

    #[test]
    fn tail_mass_cases() {
        let v = gaussian_p(1.0, 12.0, 4097);
        assert_eq!(tail_mass(&v, &GupParam::new(0.0).unwrap()), 0.0);
        // p₀ ≈ 15.7 is beyond the grid: nothing outside.
        assert!(tail_mass(&v, &GupParam::new(0.01).unwrap()) < 1e-15);
        // p₀ = 1: two-sided Gaussian tail = erfc(1/√2) ≈ 0.3173105.
        let g = GupParam::new((PI / 2.0) * (PI / 2.0)).unwrap();
        assert_relative_eq!(g.p0(), 1.0, max_relative = 1e-15);
        assert_abs_diff_eq!(tail_mass(&v, &g), 0.3173105, epsilon = 1e-5);
    }

    #[test]
    fn quantile_brackets_the_gaussian_mass() {
        let v = gaussian_p(1.0, 12.0, 4097);
        let q = symmetric_quantile(&v, 1e-8);
        // 1 − 1e−8 of a unit Gaussian sits within ±5.73σ.
        assert!((5.5..6.0).contains(&q), "quantile {q}");
    }

    #[test]
    fn u_from_v_identity_at_beta_zero_and_stretching_otherwise() {
        let v = gaussian_p(1.0, 12.0, 4097);
        let free = GupParam::new(0.0).unwrap();
        let u0 = u_from_v(&v, &free, EPS_TAIL).unwrap();
        assert_eq!(u0.data, v.data);

        let g = GupParam::new(0.01).unwrap();
        let u = u_from_v(&v, &g, EPS_TAIL).unwrap();
        assert_relative_eq!(u.integrate(), 1.0, epsilon = 1e-12);
        assert!(
            u.moment(2) > v.moment(2),
            "tan map should stretch the tails: {} vs {}",
            u.moment(2),
            v.moment(2)
        );
    }

    #[test]
    fn u_from_v_rejects_heavy_tails() {
        let v = gaussian_p(1.0, 12.0, 4097);
        // p₀ = 1 chops off ~32% of the mass.
        let g = GupParam::new((PI / 2.0) * (PI / 2.0)).unwrap();
        assert!(matches!(
            u_from_v(&v, &g, EPS_TAIL),
            Err(Error::GupDomain { .. })
        ));
    }

    #[test]
    fn eta_matches_series_and_grows_with_beta() {
        let v = gaussian_p(1.0, 12.0, 4097);
        let free = GupParam::new(0.0).unwrap();
        assert_eq!(eta(&v, &free, EPS_TAIL).unwrap().0, 0.0);

        // η ≈ β⟨p²⟩ + β²⟨p⁴⟩/6 with ⟨p²⟩ = 1, ⟨p⁴⟩ = 3.
        let g = GupParam::new(0.01).unwrap();
        let e = eta(&v, &g, EPS_TAIL).unwrap().0;
        assert_abs_diff_eq!(e, 0.01 + 0.00005, epsilon = 2e-4);
        assert!(e > 0.0);

        let e2 = eta(&v, &GupParam::new(0.02).unwrap(), EPS_TAIL).unwrap().0;
        assert!(e2 > e, "η must grow with β: {e2} vs {e}");
    }

    #[test]
    fn two_entropy_paths_agree() {
        let v = gaussian_p(1.0, 12.0, 4097);
        let g = GupParam::new(0.01).unwrap();
        let direct = shannon(&u_from_v(&v, &g, EPS_TAIL).unwrap()).unwrap().0;
        let via_eta = gup_entropy(&v, &g, EPS_TAIL).unwrap().0;
        assert_abs_diff_eq!(direct, via_eta, epsilon = 1e-4);
        // And the deformation cannot lower the entropy.
        assert!(direct >= shannon(&v).unwrap().0 - 1e-4);
    }

    #[test]
    fn deformed_sampling_from_the_wavefunction_is_spectrally_accurate() {
        // σ = 1 packet: v(p) is Gaussian with σ_p = ½, so u has the closed
        // form v(p(k))/(1+βk²).
        let axis = Axis::symmetric(12.0, 2049).unwrap();
        let psi = gaussian_field_on(&axis, 1.0, 0.0, 0.0).unwrap();
        let g = GupParam::new(0.01).unwrap();
        let k_axis = Axis::symmetric(4.0, 1025).unwrap();
        let u = u_from_wavefunction(&psi, &g, &k_axis).unwrap();
        let sp2 = 0.25;
        for (j, &val) in u.data.iter().enumerate() {
            let k = k_axis.value(j);
            let p = k_to_p(k, &g);
            let expect = (2.0 * PI * sp2).powf(-0.5) * (-p * p / (2.0 * sp2)).exp()
                / (1.0 + g.beta() * k * k);
            assert_abs_diff_eq!(val, expect, epsilon = 1e-9);
        }
        // Entropy agrees with the p-domain identity H[u] = H[v] + η.
        let v = crate::cv_state::to_momentum(&psi).unwrap().abs2();
        let expect_h = gup_entropy(&v, &g, EPS_TAIL).unwrap().0;
        assert_abs_diff_eq!(shannon(&u).unwrap().0, expect_h, epsilon = 1e-6);
    }

    #[test]
    fn joint_projection_reduces_to_plain_marginal_at_beta_zero() {
        let v1 = gaussian_p(1.0, 12.0, 513);
        let v2 = gaussian_p(0.8, 12.0, 513);
        let mut joint = Array2::zeros((513, 513));
        for i in 0..513 {
            for j in 0..513 {
                joint[[i, j]] = v1.data[i] * v2.data[j];
            }
        }
        let d2 = Dist2D::new(v1.axis.clone(), v2.axis.clone(), joint).unwrap();
        let free = GupParam::new(0.0).unwrap();
        let a = joint_u_pm(&d2, &free, Sign::Plus, EPS_TAIL).unwrap();
        let b = pm_project(&d2, Sign::Plus).unwrap();
        assert_eq!(a.data, b.data);
    }

    #[test]
    fn joint_projection_matches_the_convolution_construction() {
        let v1 = gaussian_p(1.0, 12.0, 513);
        let v2 = gaussian_p(0.8, 12.0, 513);
        let mut joint = Array2::zeros((513, 513));
        for i in 0..513 {
            for j in 0..513 {
                joint[[i, j]] = v1.data[i] * v2.data[j];
            }
        }
        let d2 = Dist2D::new(v1.axis.clone(), v2.axis.clone(), joint).unwrap();
        let g = GupParam::new(0.01).unwrap();

        // Shared k axis for the 1D route, from the wider quantile.
        let pq = symmetric_quantile(&v1, EPS_TAIL).max(symmetric_quantile(&v2, EPS_TAIL));
        let kmax = p_to_k(pq, &g).unwrap();
        let k_axis = Axis::symmetric(kmax, 513).unwrap();
        let u1 = u_from_v_on(&v1, &g, &k_axis).unwrap();
        let u2 = u_from_v_on(&v2, &g, &k_axis).unwrap();

        for sign in [Sign::Plus, Sign::Minus] {
            let via_joint = joint_u_pm(&d2, &g, sign, EPS_TAIL).unwrap();
            assert_relative_eq!(via_joint.integrate(), 1.0, epsilon = 1e-5);
            let via_conv = match sign {
                Sign::Plus => convolve(&u1, &u2).unwrap(),
                Sign::Minus => convolve(&u1, &u2.reflect().unwrap()).unwrap(),
            };
            let mut sup = 0.0_f64;
            for (j, &val) in via_joint.data.iter().enumerate() {
                let x = via_joint.axis.value(j);
                sup = sup.max((val - via_conv.interp_linear(x)).abs());
            }
            assert!(sup < 1e-5, "sup-norm gap {sup}");
            assert_abs_diff_eq!(
                shannon(&via_joint).unwrap().0,
                shannon(&via_conv).unwrap().0,
                epsilon = 1e-5
            );
        }
    }

    #[test]
    fn correction_pair_carries_etas_and_tails() {
        let v1 = gaussian_p(1.0, 12.0, 2049);
        let v2 = gaussian_p(0.5, 12.0, 2049);
        let g = GupParam::new(0.01).unwrap();
        let c = GupCorrection::for_momentum_pair(&v1, &v2, &g, EPS_TAIL).unwrap();
        assert!(c.eta1.0 > c.eta2.0, "wider momentum density has larger η");
        assert!(c.tail1 < EPS_TAIL && c.tail2 < EPS_TAIL);
        assert_eq!(c.beta, 0.01);
    }

    mod properties {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(16))]

            #[test]
            fn eta_is_nonnegative_and_monotone_in_beta(
                sigma in 0.3f64..1.5,
                beta in 1e-4f64..5e-3,
                scale in 1.5f64..4.0,
            ) {
                let v = gaussian_p(sigma, 14.0, 2049);
                let e1 = eta(&v, &GupParam::new(beta).unwrap(), EPS_TAIL)
                    .unwrap()
                    .0;
                let e2 = eta(&v, &GupParam::new(beta * scale).unwrap(), EPS_TAIL)
                    .unwrap()
                    .0;
                prop_assert!(e1 >= 0.0);
                prop_assert!(e2 >= e1, "η(β) must not decrease: {} vs {}", e2, e1);
            }
        }
    }

    #[test]
    fn minimum_uncertainty_bbm_with_deformation() {
        // H[w] + H[u] ≥ ln(πe) + η, saturated by minimum-uncertainty
        // Gaussians since H[u] = H[v] + η exactly.
        let axis = Axis::symmetric(12.0, 2049).unwrap();
        let psi = gaussian_field_on(&axis, 1.0, 0.0, 0.0).unwrap();
        let w = psi.abs2();
        let v = crate::cv_state::to_momentum(&psi).unwrap().abs2();
        let g = GupParam::new(0.01).unwrap();
        let e = eta(&v, &g, EPS_TAIL).unwrap().0;
        let lhs = shannon(&w).unwrap().0 + gup_entropy(&v, &g, EPS_TAIL).unwrap().0;
        let bound = 1.0 + PI.ln() + e;
        assert!(lhs >= bound - 1e-4);
        assert_abs_diff_eq!(lhs, bound, epsilon = 1e-4);
    }
}
