//! Entropic entanglement detection for continuous-variable bipartite states.
//!
//! The library evaluates Shannon-entropic uncertainty criteria on the EPR
//! sum/difference quadratures `x± = x₁ ± x₂`, `p± = p₁ ± p₂` of a two-party
//! state. A separable state obeys
//!
//! ```text
//! H[w±] + H[v∓] ≥ ½ ln{(e^{2H[w₁]} + e^{2H[w₂]})(e^{2H[v₁]} + e^{2H[v₂]})}
//! H[w±] + H[v∓] ≥ ln 2πe
//! ```
//!
//! so a measured sum below either bound certifies entanglement. The same
//! machinery is provided for momentum deformed by a generalized uncertainty
//! principle (GUP), `k = tan(√β p)/√β`, where every momentum entropy picks up
//! a state-dependent correction `η(β) ≥ 0` and all bounds rise accordingly.
//!
//! Modules:
//! - [`grid`]: uniform axes, sampled wavefunctions and densities, quadrature.
//! - [`cv_state`]: state builders (Gaussian products, two-mode squeezed
//!   vacuum, tabulated), Fourier transforms, the ± change of variables, and
//!   JSON state descriptors.
//! - [`entropy`]: Shannon entropy, ± marginals, convolution, the entropy
//!   power inequality and the entropic uncertainty (BBM) sum.
//! - [`gup`]: the tan momentum map, deformed densities `u(k)`, and the
//!   `η(β)` correction.
//! - [`criteria`]: all entanglement bounds (strong/weak, pure/mixed, with
//!   and without GUP) and the full evaluation pipeline.

use thiserror::Error;

pub mod criteria;
pub mod cv_state;
pub mod entropy;
pub mod grid;
pub mod gup;

pub use criteria::{
    evaluate, evaluate_detailed, state_entropies, BoundKind, Correction, CriterionResult,
    EvalConfig, Evaluation, Family, Pairing, Verdict,
};
pub use cv_state::{parse_descriptor, StateDescriptor};
pub use entropy::Nats;
pub use grid::{Axis, Dist1D, Dist2D, Field1D, Field2D};
pub use gup::{GupCorrection, GupParam};

/// Errors raised across the library.
#[derive(Debug, Error)]
pub enum Error {
    /// Axis construction or compatibility failure (mismatched spacing,
    /// asymmetric axis where symmetry is required, resampling that would
    /// extrapolate beyond the source grid).
    #[error("axis error: {0}")]
    Axis(String),

    /// A density whose integral is non-positive or non-finite.
    #[error("mass error: integral {0} is not a positive finite value")]
    Mass(f64),

    /// Invalid physical parameter (σ ≤ 0, non-finite r, negative η, ...).
    #[error("parameter error: {0}")]
    Param(String),

    /// Malformed state-descriptor document.
    #[error("schema error: {0}")]
    Schema(String),

    /// Momentum-space magnitude at the grid boundary is too large; the
    /// position grid is too coarse for the requested transform.
    #[error("alias error: momentum boundary magnitude {found:.3e} exceeds {limit:.3e}")]
    Alias { found: f64, limit: f64 },

    /// A probability vector or density violating its preconditions.
    #[error("probability error: {0}")]
    Prob(String),

    /// Argument outside the domain of the tan momentum map.
    #[error("domain error: |p| = {p:.6} exceeds the GUP cutoff p0 = {p0:.6}")]
    Domain { p: f64, p0: f64 },

    /// Momentum mass beyond the GUP cutoff exceeds the configured tolerance;
    /// the state cannot be mapped into the bounded-momentum framework.
    #[error("GUP domain error: tail mass {tail:.3e} beyond p0 = {p0:.6} exceeds eps_tail = {eps_tail:.3e}")]
    GupDomain { tail: f64, p0: f64, eps_tail: f64 },

    /// Invalid mixture weights.
    #[error("weight error: {0}")]
    Weight(String),

    /// Criterion kind incompatible with the supplied state.
    #[error("kind mismatch: {0}")]
    KindMismatch(String),
}

pub type Result<T> = std::result::Result<T, Error>;
