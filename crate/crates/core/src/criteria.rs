//! Entropic entanglement criteria and verdicts.
//!
//! Every criterion compares an entropy sum of EPR-type marginals,
//! `lhs = H[w±] + H[v∓]` (or `H[u∓]` under deformation), against a bound
//! that all separable states must respect:
//!
//! * strong pure — state-dependent,
//!   `h = ½ ln{(e^{2H[w₁]}+e^{2H[w₂]})(e^{2H[v₁]}+e^{2H[v₂]})}`;
//! * weak pure — state-independent, `ln 2πe`;
//! * mixed variants — λ-weighted component bounds against ensemble-density
//!   entropy sums;
//! * deformed (GUP) variants — the momentum factor of each bound picks up
//!   `e^{2η}` per subsystem, raising the detection threshold.
//!
//! A state is declared `Entangled` only when `bound − lhs` clears a strictly
//! positive verdict threshold; the criteria are sufficient conditions, so a
//! non-violation is always `Inconclusive`, never "separable".

use serde::{Serialize, Serializer};
use std::collections::BTreeMap;
use std::f64::consts::{LN_2, PI};

use crate::cv_state::{
    self, Coordinates, JointState, MixedEnsemble, PureProductState, State, StateDescriptor,
};
use crate::entropy::{
    combine_densities, convolve, ensemble_density, pm_project, shannon, Nats, Representation, Sign,
};
use crate::grid::{Axis, Dist1D};
use crate::gup::{self, GupCorrection, GupParam};
use crate::{Error, Result};

/// Criterion family: which inequality is being tested.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    StrongPure,
    WeakPure,
    StrongMixed,
    WeakMixed,
}

/// Whether the bound carries the deformed-momentum correction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Correction {
    Standard,
    Gup,
}

/// A criterion family together with its correction; parsed from and
/// serialized as labels like `weak-pure` or `strong-mixed-gup`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct BoundKind {
    pub family: Family,
    pub correction: Correction,
}

impl BoundKind {
    pub fn new(family: Family, correction: Correction) -> BoundKind {
        BoundKind { family, correction }
    }

    pub fn label(&self) -> String {
        let base = match self.family {
            Family::StrongPure => "strong-pure",
            Family::WeakPure => "weak-pure",
            Family::StrongMixed => "strong-mixed",
            Family::WeakMixed => "weak-mixed",
        };
        match self.correction {
            Correction::Standard => base.to_string(),
            Correction::Gup => format!("{base}-gup"),
        }
    }

    pub fn parse(text: &str) -> Result<BoundKind> {
        let (stem, correction) = match text.strip_suffix("-gup") {
            Some(stem) => (stem, Correction::Gup),
            None => (text, Correction::Standard),
        };
        let family = match stem {
            "strong-pure" => Family::StrongPure,
            "weak-pure" => Family::WeakPure,
            "strong-mixed" => Family::StrongMixed,
            "weak-mixed" => Family::WeakMixed,
            _ => {
                return Err(Error::Param(format!(
                    "unknown criterion kind {text:?}; expected one of strong-pure, weak-pure, \
                     strong-mixed, weak-mixed, each optionally suffixed with -gup"
                )))
            }
        };
        Ok(BoundKind { family, correction })
    }
}

impl Serialize for BoundKind {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.label())
    }
}

/// Outcome of a criterion test. `Inconclusive` means only that this witness
/// did not fire — it never certifies separability.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Entangled,
    Inconclusive,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Verdict::Entangled => write!(f, "entangled"),
            Verdict::Inconclusive => write!(f, "inconclusive"),
        }
    }
}

/// Which sign pairing produced the reported lhs: `PlusMinus` is
/// `H[w₊] + H[v₋]`, `MinusPlus` is `H[w₋] + H[v₊]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Pairing {
    PlusMinus,
    MinusPlus,
}

/// One evaluated criterion: the entropy sum, the separability bound, and
/// the verdict, plus the ΔH diagnostic entering the weak-bound minimization.
#[derive(Debug, Clone, Serialize)]
pub struct CriterionResult {
    pub kind: BoundKind,
    pub beta: f64,
    pub pairing: Pairing,
    pub lhs: Nats,
    pub bound: Nats,
    pub margin: f64,
    pub delta_h: f64,
    pub verdict: Verdict,
}

/// Grid and tolerance settings shared by every evaluation.
#[derive(Debug, Clone)]
pub struct EvalConfig {
    /// Base grid resolution; 1D quantities run on `grid_n + 1` points and
    /// 2D quantities on `(grid_n/4 + 1)²`.
    pub grid_n: usize,
    /// Explicit half-width of the position window; chosen from the state's
    /// own scale when `None`.
    pub half_width: Option<f64>,
    /// Largest tolerable momentum mass beyond the deformation cutoff.
    pub eps_tail: f64,
    /// A margin must exceed this to count as a violation.
    pub tau_verdict: f64,
}

impl Default for EvalConfig {
    fn default() -> EvalConfig {
        EvalConfig {
            grid_n: 4096,
            half_width: None,
            eps_tail: 1e-8,
            tau_verdict: 1e-9,
        }
    }
}

impl EvalConfig {
    pub fn n1d(&self) -> usize {
        self.grid_n + 1
    }

    pub fn n2d(&self) -> usize {
        (self.grid_n / 4).max(16) + 1
    }

    pub fn validate(&self) -> Result<()> {
        if self.grid_n < 16 || self.grid_n % 8 != 0 {
            return Err(Error::Param(format!(
                "grid_n must be a multiple of 8 and at least 16, got {}",
                self.grid_n
            )));
        }
        if !(self.eps_tail > 0.0 && self.eps_tail <= 0.1) {
            return Err(Error::Param(format!(
                "eps_tail must lie in (0, 0.1], got {}",
                self.eps_tail
            )));
        }
        if !(self.tau_verdict.is_finite() && self.tau_verdict >= 0.0) {
            return Err(Error::Param(format!(
                "tau_verdict must be a nonnegative finite real, got {}",
                self.tau_verdict
            )));
        }
        if let Some(hw) = self.half_width {
            if !(hw.is_finite() && hw > 0.0) {
                return Err(Error::Param(format!(
                    "half_width must be a positive finite real, got {hw}"
                )));
            }
        }
        Ok(())
    }
}

/// Entropies of the two pure factors of one product component, in both
/// representations.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct FactorEntropies {
    pub hw1: Nats,
    pub hw2: Nats,
    pub hv1: Nats,
    pub hv2: Nats,
}

/// Numerically stable `ln(e^a + e^b)`.
fn lse2(a: f64, b: f64) -> f64 {
    let (hi, lo) = if a >= b { (a, b) } else { (b, a) };
    hi + (lo - hi).exp().ln_1p()
}

fn check_etas(eta1: Nats, eta2: Nats) -> Result<()> {
    for e in [eta1.0, eta2.0] {
        if !(e.is_finite() && e >= 0.0) {
            return Err(Error::Param(format!(
                "entropy correction η must be a nonnegative finite real, got {e}"
            )));
        }
    }
    Ok(())
}

fn check_weights(weights: &[f64], len: usize, what: &str) -> Result<()> {
    if weights.is_empty() {
        return Err(Error::Weight("weight list is empty".into()));
    }
    if weights.len() != len {
        return Err(Error::Weight(format!(
            "{} {what} entries for {} weights",
            len,
            weights.len()
        )));
    }
    let mut sum = 0.0;
    for &l in weights {
        if !(l.is_finite() && l >= 0.0) {
            return Err(Error::Weight(format!(
                "weights must be nonnegative finite reals, got {l}"
            )));
        }
        sum += l;
    }
    if (sum - 1.0).abs() > 1e-12 {
        return Err(Error::Weight(format!("weights sum to {sum}, not 1")));
    }
    Ok(())
}

/// State-dependent separability bound for pure product states,
/// `½ ln{(e^{2H[w₁]}+e^{2H[w₂]})(e^{2H[v₁]}+e^{2H[v₂]})}`.
pub fn strong_pure_bound(hw1: Nats, hw2: Nats, hv1: Nats, hv2: Nats) -> Nats {
    Nats(0.5 * (lse2(2.0 * hw1.0, 2.0 * hw2.0) + lse2(2.0 * hv1.0, 2.0 * hv2.0)))
}

/// State-independent separability bound `ln 2πe ≈ 2.837877`.
pub fn weak_pure_bound() -> Nats {
    Nats(1.0 + (2.0 * PI).ln())
}

/// Intermediate state-dependent form of the weak bound,
/// `½ ln{2(πe)²(1 + cosh ΔH)}` with `ΔH = H[v₂] − H[v₁]`; equals `ln 2πe`
/// exactly at ΔH = 0 and exceeds it otherwise.
pub fn weak_bound_cosh_form(hv1: Nats, hv2: Nats) -> Nats {
    let d = (hv2.0 - hv1.0).abs();
    if d == 0.0 {
        return weak_pure_bound();
    }
    // ½ ln{2(πe)²(1+cosh d)} = ln 2πe + ln cosh(d/2), with
    // ln cosh(x) = x + ln(1+e^{−2x}) − ln 2 for x ≥ 0.
    let ln_cosh_half = 0.5 * d + (-d).exp().ln_1p() - LN_2;
    Nats(weak_pure_bound().0 + ln_cosh_half)
}

/// Deformed strong bound: the momentum factor carries `e^{2η}` per
/// subsystem, `½ ln{(e^{2H[w₁]}+e^{2H[w₂]})(e^{2H[v₁]+2η₁}+e^{2H[v₂]+2η₂})}`.
/// Reduces exactly to [`strong_pure_bound`] when both η vanish.
pub fn gup_strong_pure_bound(
    hw1: Nats,
    hw2: Nats,
    hv1: Nats,
    hv2: Nats,
    eta1: Nats,
    eta2: Nats,
) -> Result<Nats> {
    check_etas(eta1, eta2)?;
    if eta1.0 == 0.0 && eta2.0 == 0.0 {
        return Ok(strong_pure_bound(hw1, hw2, hv1, hv2));
    }
    Ok(Nats(0.5
        * (lse2(2.0 * hw1.0, 2.0 * hw2.0)
            + lse2(2.0 * (hv1.0 + eta1.0), 2.0 * (hv2.0 + eta2.0)))))
}

/// Deformed weak bound `ln 2πe + ln[(e^{η₁}+e^{η₂})/2] = ln πe + ln(e^{η₁}+e^{η₂})`.
/// Reduces exactly to [`weak_pure_bound`] when both η vanish.
pub fn gup_weak_pure_bound(eta1: Nats, eta2: Nats) -> Result<Nats> {
    check_etas(eta1, eta2)?;
    if eta1.0 == 0.0 && eta2.0 == 0.0 {
        return Ok(weak_pure_bound());
    }
    Ok(Nats(1.0 + PI.ln() + lse2(eta1.0, eta2.0)))
}

/// λ-weighted average of per-component strong bounds.
pub fn mixed_strong_bound(weights: &[f64], components: &[FactorEntropies]) -> Result<Nats> {
    check_weights(weights, components.len(), "component")?;
    let mut total = 0.0;
    for (&l, c) in weights.iter().zip(components) {
        total += l * strong_pure_bound(c.hw1, c.hw2, c.hv1, c.hv2).0;
    }
    Ok(Nats(total))
}

/// λ-weighted average of per-component deformed strong bounds.
pub fn gup_mixed_strong_bound(
    weights: &[f64],
    components: &[FactorEntropies],
    etas: &[(Nats, Nats)],
) -> Result<Nats> {
    check_weights(weights, components.len(), "component")?;
    if etas.len() != components.len() {
        return Err(Error::Weight(format!(
            "{} η pairs for {} components",
            etas.len(),
            components.len()
        )));
    }
    let mut total = 0.0;
    for ((&l, c), &(e1, e2)) in weights.iter().zip(components).zip(etas) {
        total += l * gup_strong_pure_bound(c.hw1, c.hw2, c.hv1, c.hv2, e1, e2)?.0;
    }
    Ok(Nats(total))
}

/// Deformed weak bound for ensembles,
/// `ln 2πe + Σ_m λ_m ln[(e^{η₁m}+e^{η₂m})/2]`.
pub fn gup_mixed_weak_bound(weights: &[f64], etas: &[(Nats, Nats)]) -> Result<Nats> {
    check_weights(weights, etas.len(), "η pair")?;
    let mut extra = 0.0;
    for (&l, &(e1, e2)) in weights.iter().zip(etas) {
        check_etas(e1, e2)?;
        if e1.0 == 0.0 && e2.0 == 0.0 {
            continue;
        }
        extra += l * (lse2(e1.0, e2.0) - LN_2);
    }
    Ok(Nats(weak_pure_bound().0 + extra))
}

/// Exact minimizer of `g(Δ) = e^{2η₁+2Δ} + e^{2η₂−2Δ}`: returns
/// `Δ* = (η₂−η₁)/2` together with the minimum of the full four-term sum
/// `e^{2η₁} + e^{2η₂} + g(Δ*) = (e^{η₁}+e^{η₂})²`.
pub fn minimize_delta_h(eta1: Nats, eta2: Nats) -> (f64, f64) {
    let argmin = 0.5 * (eta2.0 - eta1.0);
    let s = eta1.0.exp() + eta2.0.exp();
    (argmin, s * s)
}

fn shape_name(state: &State) -> &'static str {
    match state {
        State::Product(_) => "a pure product state",
        State::Joint(_) => "a joint pure state",
        State::Ensemble(_) => "a mixed ensemble",
    }
}

fn finish(
    kind: BoundKind,
    beta: f64,
    bound: Nats,
    lhs_pm: Nats,
    lhs_mp: Nats,
    delta_h: f64,
    cfg: &EvalConfig,
) -> CriterionResult {
    // Either pairing violating the bound witnesses entanglement; report the
    // one with the larger margin.
    let (pairing, lhs) = if lhs_pm.0 <= lhs_mp.0 {
        (Pairing::PlusMinus, lhs_pm)
    } else {
        (Pairing::MinusPlus, lhs_mp)
    };
    let margin = bound.0 - lhs.0;
    let verdict = if margin > cfg.tau_verdict {
        Verdict::Entangled
    } else {
        Verdict::Inconclusive
    };
    CriterionResult {
        kind,
        beta,
        pairing,
        lhs,
        bound,
        margin,
        delta_h,
        verdict,
    }
}

/// The shared k axis capturing every listed momentum density up to the tail
/// tolerance, clamped inside the deformation cutoff.
fn shared_k_axis(vs: &[&Dist1D], g: &GupParam, eps_tail: f64, n: usize) -> Result<Axis> {
    let mut pq: f64 = 0.0;
    for v in vs {
        pq = pq.max(gup::symmetric_quantile(v, eps_tail));
    }
    pq = pq.min(g.p0() * (1.0 - 1e-9));
    let kmax = gup::p_to_k(pq, g).expect("quantile clamped inside the cutoff");
    Axis::symmetric(kmax, n)
}

struct FactorDensities {
    w1: Dist1D,
    w2: Dist1D,
    v1: Dist1D,
    v2: Dist1D,
}

fn factor_densities(ps: &PureProductState) -> Result<FactorDensities> {
    Ok(FactorDensities {
        w1: ps.psi1.abs2(),
        w2: ps.psi2.abs2(),
        v1: cv_state::to_momentum(&ps.psi1)?.abs2(),
        v2: cv_state::to_momentum(&ps.psi2)?.abs2(),
    })
}

/// A criterion result together with the subsystem entropy corrections that
/// produced it (both zero for standard evaluations and at β = 0).
#[derive(Debug, Clone)]
pub struct Evaluation {
    pub result: CriterionResult,
    pub eta1: Nats,
    pub eta2: Nats,
}

impl Evaluation {
    fn plain(result: CriterionResult) -> Evaluation {
        Evaluation {
            result,
            eta1: Nats(0.0),
            eta2: Nats(0.0),
        }
    }
}

fn eval_product(
    ps: &PureProductState,
    kind: BoundKind,
    g: &GupParam,
    cfg: &EvalConfig,
) -> Result<Evaluation> {
    let d = factor_densities(ps)?;
    let hw1 = shannon(&d.w1)?;
    let hw2 = shannon(&d.w2)?;
    let hv1 = shannon(&d.v1)?;
    let hv2 = shannon(&d.v2)?;

    let hwp = shannon(&convolve(&d.w1, &d.w2)?)?;
    let hwm = shannon(&convolve(&d.w1, &d.w2.reflect()?)?)?;

    match kind.correction {
        Correction::Standard => {
            let hvp = shannon(&convolve(&d.v1, &d.v2)?)?;
            let hvm = shannon(&convolve(&d.v1, &d.v2.reflect()?)?)?;
            let bound = match kind.family {
                Family::StrongPure => strong_pure_bound(hw1, hw2, hv1, hv2),
                Family::WeakPure => weak_pure_bound(),
                _ => unreachable!("mixed families are dispatched to ensembles"),
            };
            let delta_h = (hv2 - hv1).0;
            Ok(Evaluation::plain(finish(
                kind,
                g.beta(),
                bound,
                hwp + hvm,
                hwm + hvp,
                delta_h,
                cfg,
            )))
        }
        Correction::Gup => {
            let corr = GupCorrection::for_momentum_pair(&d.v1, &d.v2, g, cfg.eps_tail)?;
            // Deformed factor densities on one k axis, sampled straight from
            // the wavefunctions to dodge resampling error.
            let k_axis = shared_k_axis(&[&d.v1, &d.v2], g, cfg.eps_tail, cfg.n2d())?;
            let u1 = gup::u_from_wavefunction(&ps.psi1, g, &k_axis)?;
            let u2 = gup::u_from_wavefunction(&ps.psi2, g, &k_axis)?;
            let hup = shannon(&convolve(&u1, &u2)?)?;
            let hum = shannon(&convolve(&u1, &u2.reflect()?)?)?;
            let bound = match kind.family {
                Family::StrongPure => {
                    gup_strong_pure_bound(hw1, hw2, hv1, hv2, corr.eta1, corr.eta2)?
                }
                Family::WeakPure => gup_weak_pure_bound(corr.eta1, corr.eta2)?,
                _ => unreachable!("mixed families are dispatched to ensembles"),
            };
            let delta_h = (hv2 + corr.eta2 - hv1 - corr.eta1).0;
            Ok(Evaluation {
                result: finish(kind, g.beta(), bound, hwp + hum, hwm + hup, delta_h, cfg),
                eta1: corr.eta1,
                eta2: corr.eta2,
            })
        }
    }
}

fn eval_joint(
    js: &JointState,
    kind: BoundKind,
    g: &GupParam,
    cfg: &EvalConfig,
) -> Result<Evaluation> {
    if js.coordinates != Coordinates::X1X2 {
        return Err(Error::Param(
            "joint states must be supplied in (x1, x2) coordinates".into(),
        ));
    }
    let wd = js.amplitude.abs2();
    let vd = cv_state::fourier_2d(js)?.amplitude.abs2();

    let hwp = shannon(&pm_project(&wd, Sign::Plus)?)?;
    let hwm = shannon(&pm_project(&wd, Sign::Minus)?)?;
    let v1 = vd.marginal0()?;
    let v2 = vd.marginal1()?;
    let hv1 = shannon(&v1)?;
    let hv2 = shannon(&v2)?;

    match kind.correction {
        Correction::Standard => {
            let hvp = shannon(&pm_project(&vd, Sign::Plus)?)?;
            let hvm = shannon(&pm_project(&vd, Sign::Minus)?)?;
            let delta_h = (hv2 - hv1).0;
            Ok(Evaluation::plain(finish(
                kind,
                g.beta(),
                weak_pure_bound(),
                hwp + hvm,
                hwm + hvp,
                delta_h,
                cfg,
            )))
        }
        Correction::Gup => {
            let corr = GupCorrection::for_momentum_pair(&v1, &v2, g, cfg.eps_tail)?;
            let hup = shannon(&gup::joint_u_pm(&vd, g, Sign::Plus, cfg.eps_tail)?)?;
            let hum = shannon(&gup::joint_u_pm(&vd, g, Sign::Minus, cfg.eps_tail)?)?;
            let bound = gup_weak_pure_bound(corr.eta1, corr.eta2)?;
            let delta_h = (hv2 + corr.eta2 - hv1 - corr.eta1).0;
            Ok(Evaluation {
                result: finish(kind, g.beta(), bound, hwp + hum, hwm + hup, delta_h, cfg),
                eta1: corr.eta1,
                eta2: corr.eta2,
            })
        }
    }
}

fn eval_ensemble(
    ens: &MixedEnsemble,
    kind: BoundKind,
    g: &GupParam,
    cfg: &EvalConfig,
) -> Result<Evaluation> {
    let mut factors = Vec::with_capacity(ens.components.len());
    let mut densities = Vec::with_capacity(ens.components.len());
    for comp in &ens.components {
        let d = factor_densities(comp)?;
        factors.push(FactorEntropies {
            hw1: shannon(&d.w1)?,
            hw2: shannon(&d.w2)?,
            hv1: shannon(&d.v1)?,
            hv2: shannon(&d.v2)?,
        });
        densities.push(d);
    }

    // Ensemble subsystem momentum marginals, for the ΔH diagnostic.
    let v1s: Vec<Dist1D> = densities.iter().map(|d| d.v1.clone()).collect();
    let v2s: Vec<Dist1D> = densities.iter().map(|d| d.v2.clone()).collect();
    let v1t = combine_densities(&ens.weights, &v1s)?;
    let v2t = combine_densities(&ens.weights, &v2s)?;

    let hwp = shannon(&ensemble_density(ens, Representation::Position, Sign::Plus)?)?;
    let hwm = shannon(&ensemble_density(ens, Representation::Position, Sign::Minus)?)?;

    match kind.correction {
        Correction::Standard => {
            let hvp = shannon(&ensemble_density(ens, Representation::Momentum, Sign::Plus)?)?;
            let hvm = shannon(&ensemble_density(ens, Representation::Momentum, Sign::Minus)?)?;
            let bound = match kind.family {
                Family::StrongMixed => mixed_strong_bound(&ens.weights, &factors)?,
                Family::WeakMixed => weak_pure_bound(),
                _ => unreachable!("pure families are dispatched to pure states"),
            };
            let delta_h = (shannon(&v2t)? - shannon(&v1t)?).0;
            Ok(Evaluation::plain(finish(
                kind,
                g.beta(),
                bound,
                hwp + hvm,
                hwm + hvp,
                delta_h,
                cfg,
            )))
        }
        Correction::Gup => {
            // Fail fast on tails, and collect per-component η for the bounds.
            let mut etas = Vec::with_capacity(densities.len());
            for d in &densities {
                etas.push((
                    gup::eta(&d.v1, g, cfg.eps_tail)?,
                    gup::eta(&d.v2, g, cfg.eps_tail)?,
                ));
            }
            let all_vs: Vec<&Dist1D> = densities
                .iter()
                .flat_map(|d| [&d.v1, &d.v2])
                .collect();
            let k_axis = shared_k_axis(&all_vs, g, cfg.eps_tail, cfg.n2d())?;
            let mut ups = Vec::with_capacity(densities.len());
            let mut ums = Vec::with_capacity(densities.len());
            for comp in &ens.components {
                let u1 = gup::u_from_wavefunction(&comp.psi1, g, &k_axis)?;
                let u2 = gup::u_from_wavefunction(&comp.psi2, g, &k_axis)?;
                ups.push(convolve(&u1, &u2)?);
                ums.push(convolve(&u1, &u2.reflect()?)?);
            }
            let hup = shannon(&combine_densities(&ens.weights, &ups)?)?;
            let hum = shannon(&combine_densities(&ens.weights, &ums)?)?;
            let bound = match kind.family {
                Family::StrongMixed => gup_mixed_strong_bound(&ens.weights, &factors, &etas)?,
                Family::WeakMixed => gup_mixed_weak_bound(&ens.weights, &etas)?,
                _ => unreachable!("pure families are dispatched to pure states"),
            };
            // Subsystem-level corrections of the ensemble marginals, for
            // the ΔH diagnostic and reporting; the bounds above use the
            // per-component η.
            let eta1t = gup::eta(&v1t, g, cfg.eps_tail)?;
            let eta2t = gup::eta(&v2t, g, cfg.eps_tail)?;
            let delta_h = ((shannon(&v2t)? + eta2t) - (shannon(&v1t)? + eta1t)).0;
            Ok(Evaluation {
                result: finish(kind, g.beta(), bound, hwp + hum, hwm + hup, delta_h, cfg),
                eta1: eta1t,
                eta2: eta2t,
            })
        }
    }
}

/// Evaluates one criterion for one state at one deformation strength,
/// returning the subsystem η corrections alongside the verdict (as needed
/// by sweep tabulation).
///
/// The state is realized on grids sized by `cfg`, the EPR marginal
/// densities are built, both sign pairings are tested, and the more
/// favorable margin decides the verdict. A `Gup` kind at β = 0 degrades
/// exactly — bit for bit — to its `Standard` counterpart.
pub fn evaluate_detailed(
    descriptor: &StateDescriptor,
    kind: BoundKind,
    g: &GupParam,
    cfg: &EvalConfig,
) -> Result<Evaluation> {
    cfg.validate()?;
    if kind.correction == Correction::Gup && g.beta() == 0.0 {
        let standard = BoundKind::new(kind.family, Correction::Standard);
        let mut eval = evaluate_detailed(descriptor, standard, g, cfg)?;
        eval.result.kind = kind;
        return Ok(eval);
    }
    let state = cv_state::realize(descriptor, cfg.n1d(), cfg.n2d(), cfg.half_width)?;
    match (kind.family, &state) {
        (Family::StrongPure | Family::WeakPure, State::Product(ps)) => {
            eval_product(ps, kind, g, cfg)
        }
        (Family::WeakPure, State::Joint(js)) => eval_joint(js, kind, g, cfg),
        (Family::StrongMixed | Family::WeakMixed, State::Ensemble(ens)) => {
            eval_ensemble(ens, kind, g, cfg)
        }
        (_, s) => Err(Error::KindMismatch(format!(
            "criterion {} does not apply to {}",
            kind.label(),
            shape_name(s)
        ))),
    }
}

/// Evaluates one criterion for one state at one deformation strength.
/// See [`evaluate_detailed`] for the full contract.
pub fn evaluate(
    descriptor: &StateDescriptor,
    kind: BoundKind,
    g: &GupParam,
    cfg: &EvalConfig,
) -> Result<CriterionResult> {
    Ok(evaluate_detailed(descriptor, kind, g, cfg)?.result)
}

/// Every entropy the pipeline can attach to a state, keyed for reporting:
/// subsystem entropies `H[w1]`, `H[v2]`, …, EPR marginals `H[w+]`, `H[v-]`,
/// …, and for β > 0 the corrections `eta1`, `eta2` and deformed marginals
/// `H[u+]`, `H[u-]`.
pub fn state_entropies(
    descriptor: &StateDescriptor,
    g: &GupParam,
    cfg: &EvalConfig,
) -> Result<BTreeMap<String, f64>> {
    cfg.validate()?;
    let state = cv_state::realize(descriptor, cfg.n1d(), cfg.n2d(), cfg.half_width)?;
    let mut out = BTreeMap::new();
    let put = |map: &mut BTreeMap<String, f64>, key: &str, val: Nats| {
        map.insert(key.to_string(), val.0);
    };
    match &state {
        State::Product(ps) => {
            let d = factor_densities(ps)?;
            put(&mut out, "H[w1]", shannon(&d.w1)?);
            put(&mut out, "H[w2]", shannon(&d.w2)?);
            put(&mut out, "H[v1]", shannon(&d.v1)?);
            put(&mut out, "H[v2]", shannon(&d.v2)?);
            put(&mut out, "H[w+]", shannon(&convolve(&d.w1, &d.w2)?)?);
            put(&mut out, "H[w-]", shannon(&convolve(&d.w1, &d.w2.reflect()?)?)?);
            put(&mut out, "H[v+]", shannon(&convolve(&d.v1, &d.v2)?)?);
            put(&mut out, "H[v-]", shannon(&convolve(&d.v1, &d.v2.reflect()?)?)?);
            if g.beta() > 0.0 {
                put(&mut out, "eta1", gup::eta(&d.v1, g, cfg.eps_tail)?);
                put(&mut out, "eta2", gup::eta(&d.v2, g, cfg.eps_tail)?);
                put(&mut out, "H[u1]", gup::gup_entropy(&d.v1, g, cfg.eps_tail)?);
                put(&mut out, "H[u2]", gup::gup_entropy(&d.v2, g, cfg.eps_tail)?);
                let k_axis = shared_k_axis(&[&d.v1, &d.v2], g, cfg.eps_tail, cfg.n2d())?;
                let u1 = gup::u_from_wavefunction(&ps.psi1, g, &k_axis)?;
                let u2 = gup::u_from_wavefunction(&ps.psi2, g, &k_axis)?;
                put(&mut out, "H[u+]", shannon(&convolve(&u1, &u2)?)?);
                put(&mut out, "H[u-]", shannon(&convolve(&u1, &u2.reflect()?)?)?);
            }
        }
        State::Joint(js) => {
            let wd = js.amplitude.abs2();
            let vd = cv_state::fourier_2d(js)?.amplitude.abs2();
            put(&mut out, "H[w1]", shannon(&wd.marginal0()?)?);
            put(&mut out, "H[w2]", shannon(&wd.marginal1()?)?);
            let v1 = vd.marginal0()?;
            let v2 = vd.marginal1()?;
            put(&mut out, "H[v1]", shannon(&v1)?);
            put(&mut out, "H[v2]", shannon(&v2)?);
            put(&mut out, "H[w+]", shannon(&pm_project(&wd, Sign::Plus)?)?);
            put(&mut out, "H[w-]", shannon(&pm_project(&wd, Sign::Minus)?)?);
            put(&mut out, "H[v+]", shannon(&pm_project(&vd, Sign::Plus)?)?);
            put(&mut out, "H[v-]", shannon(&pm_project(&vd, Sign::Minus)?)?);
            if g.beta() > 0.0 {
                put(&mut out, "eta1", gup::eta(&v1, g, cfg.eps_tail)?);
                put(&mut out, "eta2", gup::eta(&v2, g, cfg.eps_tail)?);
                put(&mut out, "H[u1]", gup::gup_entropy(&v1, g, cfg.eps_tail)?);
                put(&mut out, "H[u2]", gup::gup_entropy(&v2, g, cfg.eps_tail)?);
                put(
                    &mut out,
                    "H[u+]",
                    shannon(&gup::joint_u_pm(&vd, g, Sign::Plus, cfg.eps_tail)?)?,
                );
                put(
                    &mut out,
                    "H[u-]",
                    shannon(&gup::joint_u_pm(&vd, g, Sign::Minus, cfg.eps_tail)?)?,
                );
            }
        }
        State::Ensemble(ens) => {
            let mut w1s = Vec::new();
            let mut w2s = Vec::new();
            let mut v1s = Vec::new();
            let mut v2s = Vec::new();
            for comp in &ens.components {
                let d = factor_densities(comp)?;
                w1s.push(d.w1);
                w2s.push(d.w2);
                v1s.push(d.v1);
                v2s.push(d.v2);
            }
            let w1t = combine_densities(&ens.weights, &w1s)?;
            let w2t = combine_densities(&ens.weights, &w2s)?;
            let v1t = combine_densities(&ens.weights, &v1s)?;
            let v2t = combine_densities(&ens.weights, &v2s)?;
            put(&mut out, "H[w1]", shannon(&w1t)?);
            put(&mut out, "H[w2]", shannon(&w2t)?);
            put(&mut out, "H[v1]", shannon(&v1t)?);
            put(&mut out, "H[v2]", shannon(&v2t)?);
            put(
                &mut out,
                "H[w+]",
                shannon(&ensemble_density(ens, Representation::Position, Sign::Plus)?)?,
            );
            put(
                &mut out,
                "H[w-]",
                shannon(&ensemble_density(ens, Representation::Position, Sign::Minus)?)?,
            );
            put(
                &mut out,
                "H[v+]",
                shannon(&ensemble_density(ens, Representation::Momentum, Sign::Plus)?)?,
            );
            put(
                &mut out,
                "H[v-]",
                shannon(&ensemble_density(ens, Representation::Momentum, Sign::Minus)?)?,
            );
            if g.beta() > 0.0 {
                put(&mut out, "eta1", gup::eta(&v1t, g, cfg.eps_tail)?);
                put(&mut out, "eta2", gup::eta(&v2t, g, cfg.eps_tail)?);
                put(&mut out, "H[u1]", gup::gup_entropy(&v1t, g, cfg.eps_tail)?);
                put(&mut out, "H[u2]", gup::gup_entropy(&v2t, g, cfg.eps_tail)?);
                let all_vs: Vec<&Dist1D> = v1s.iter().chain(v2s.iter()).collect();
                let k_axis = shared_k_axis(&all_vs, g, cfg.eps_tail, cfg.n2d())?;
                let mut ups = Vec::new();
                let mut ums = Vec::new();
                for comp in &ens.components {
                    let u1 = gup::u_from_wavefunction(&comp.psi1, g, &k_axis)?;
                    let u2 = gup::u_from_wavefunction(&comp.psi2, g, &k_axis)?;
                    ups.push(convolve(&u1, &u2)?);
                    ums.push(convolve(&u1, &u2.reflect()?)?);
                }
                put(&mut out, "H[u+]", shannon(&combine_densities(&ens.weights, &ups)?)?);
                put(&mut out, "H[u-]", shannon(&combine_densities(&ens.weights, &ums)?)?);
            }
        }
    }
    Ok(out)
}
