//! Floating-point cross-check of the symbolic verdicts.
//!
//! Integrates `dr/dθ = P₁(θ)r² + Pₙ(θ)r^{n+1}` from θ = 0 to 2π with an
//! adaptive Dormand–Prince 5(4) scheme, producing Poincaré return-map
//! samples `Π(c) = r(2π; c)`. A center has `Π(c) = c` for every small c; a
//! focus leaks a residual `Π(c) − c ≈ V_{k*} c^{k*}` whose sign and
//! magnitude must match the first nonzero symbolic focal value. The checks
//! here are independent of the exact pipeline: the only shared input is the
//! system's Fourier data, lowered to `f64` once at this boundary.

use std::f64::consts::PI;
use std::fmt;

use nalgebra::{DMatrix, DVector};
use num_traits::ToPrimitive;
use thiserror::Error;

use crate::center_conditions::SystemSpec;
use crate::trig_algebra::TrigPoly;

/// Condition-number bound for the focal-value fit; larger estimates abort
/// with [`NumericError::IllConditioned`] instead of returning noise.
pub const MAX_FIT_CONDITION: f64 = 1e12;

/// Errors from integration and fitting.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum NumericError {
    /// The adaptive stepper ran out of its step budget (escaping orbit or
    /// tolerance far too tight for the budget).
    #[error("step budget of {max_steps} exhausted integrating from c = {c}")]
    StepBudgetExceeded { c: f64, max_steps: u32 },
    /// The solution overflowed; reported, never clamped.
    #[error("integration from c = {c} produced a non-finite value")]
    NonFinite { c: f64 },
    /// The least-squares system exceeded [`MAX_FIT_CONDITION`].
    #[error("focal-value fit is ill-conditioned (condition estimate {condition:.3e})")]
    IllConditioned { condition: f64 },
    /// A sample ladder violated its shape requirements.
    #[error("invalid ladder: {0}")]
    InvalidLadder(String),
    /// Fit orders below 2 have no coefficients to estimate.
    #[error("fit order must be at least 2, got {0}")]
    InvalidOrder(u32),
    /// Initial radii must be finite and nonnegative.
    #[error("invalid initial radius c = {0}")]
    InvalidRadius(f64),
}

/// The integration scheme; a fixed descriptor (one method is provided).
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum IntegratorMethod {
    /// Embedded explicit Runge–Kutta pair of orders 5 and 4 with the
    /// Dormand–Prince tableau (FSAL).
    #[default]
    DormandPrince54,
}

impl fmt::Display for IntegratorMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IntegratorMethod::DormandPrince54 => write!(f, "Dormand-Prince 5(4)"),
        }
    }
}

/// Adaptive-stepper configuration.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct IntegratorConfig {
    /// Relative tolerance (> 0).
    pub rel_tol: f64,
    /// Absolute tolerance (> 0).
    pub abs_tol: f64,
    /// Maximum number of attempted steps per trajectory.
    pub max_steps: u32,
    /// The scheme descriptor.
    pub method: IntegratorMethod,
}

impl Default for IntegratorConfig {
    fn default() -> Self {
        IntegratorConfig {
            rel_tol: 1e-12,
            abs_tol: 1e-14,
            max_steps: 100_000,
            method: IntegratorMethod::default(),
        }
    }
}

/// One return-map evaluation: produced only when integration succeeded.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ReturnMapSample {
    /// Initial radius r(0) = c.
    pub c: f64,
    /// Final radius Π(c) = r(2π).
    pub r_end: f64,
    /// Π(c) − c; exactly 0 for a center up to integration error.
    pub residual: f64,
}

/// A trig polynomial lowered to `f64` once, for fast right-hand-side
/// evaluation inside the stepper.
#[derive(Clone, Debug)]
struct TrigF64 {
    constant: f64,
    modes: Vec<(f64, f64, f64)>,
}

impl TrigF64 {
    fn lower(t: &TrigPoly) -> Self {
        let to = |r: &crate::trig_algebra::Rational| r.to_f64().unwrap_or(f64::NAN);
        TrigF64 {
            constant: to(t.constant_term()),
            modes: t.harmonics().map(|(j, c, s)| (f64::from(j), to(c), to(s))).collect(),
        }
    }

    fn eval(&self, theta: f64) -> f64 {
        let mut acc = self.constant;
        for (j, c, s) in &self.modes {
            let ang = j * theta;
            acc += c * ang.cos() + s * ang.sin();
        }
        acc
    }
}

/// The lowered right-hand side r ↦ P₁(θ)r² + Pₙ(θ)r^{n+1}.
struct RigidRhs {
    p1: TrigF64,
    pn: TrigF64,
    top_power: i32,
}

impl RigidRhs {
    fn new(sys: &SystemSpec) -> Self {
        RigidRhs {
            p1: TrigF64::lower(&sys.p1_trig()),
            pn: TrigF64::lower(&sys.pn_trig()),
            top_power: sys.n() as i32 + 1,
        }
    }

    fn eval(&self, theta: f64, r: f64) -> f64 {
        self.p1.eval(theta) * r * r + self.pn.eval(theta) * r.powi(self.top_power)
    }
}

/// One adaptive Dormand–Prince 5(4) trajectory from θ = 0 to 2π.
fn integrate_to_period(rhs: &RigidRhs, c: f64, cfg: &IntegratorConfig) -> Result<f64, NumericError> {
    assert!(cfg.rel_tol > 0.0 && cfg.abs_tol > 0.0, "tolerances must be positive");
    let end = 2.0 * PI;
    let mut theta = 0.0_f64;
    let mut r = c;
    let mut k1 = rhs.eval(theta, r);
    let mut h = 1e-2_f64;
    for _ in 0..cfg.max_steps {
        if end - theta <= 1e-14 {
            return Ok(r);
        }
        h = h.min(end - theta);
        let k2 = rhs.eval(theta + h / 5.0, r + h * (k1 / 5.0));
        let k3 = rhs.eval(theta + 3.0 * h / 10.0, r + h * (3.0 / 40.0 * k1 + 9.0 / 40.0 * k2));
        let k4 = rhs.eval(
            theta + 4.0 * h / 5.0,
            r + h * (44.0 / 45.0 * k1 - 56.0 / 15.0 * k2 + 32.0 / 9.0 * k3),
        );
        let k5 = rhs.eval(
            theta + 8.0 * h / 9.0,
            r + h
                * (19372.0 / 6561.0 * k1 - 25360.0 / 2187.0 * k2 + 64448.0 / 6561.0 * k3
                    - 212.0 / 729.0 * k4),
        );
        let k6 = rhs.eval(
            theta + h,
            r + h
                * (9017.0 / 3168.0 * k1 - 355.0 / 33.0 * k2 + 46732.0 / 5247.0 * k3
                    + 49.0 / 176.0 * k4
                    - 5103.0 / 18656.0 * k5),
        );
        let r_new = r
            + h * (35.0 / 384.0 * k1 + 500.0 / 1113.0 * k3 + 125.0 / 192.0 * k4
                - 2187.0 / 6784.0 * k5
                + 11.0 / 84.0 * k6);
        let k7 = rhs.eval(theta + h, r_new);
        let err = h
            * (71.0 / 57600.0 * k1 - 71.0 / 16695.0 * k3 + 71.0 / 1920.0 * k4
                - 17253.0 / 339200.0 * k5
                + 22.0 / 525.0 * k6
                - 1.0 / 40.0 * k7);
        if !r_new.is_finite() || !err.is_finite() {
            return Err(NumericError::NonFinite { c });
        }
        let scale = cfg.abs_tol + cfg.rel_tol * r.abs().max(r_new.abs());
        let err_norm = (err / scale).abs();
        if err_norm <= 1.0 {
            theta += h;
            r = r_new;
            k1 = k7; // first-same-as-last
        }
        let factor = if err_norm == 0.0 {
            5.0
        } else {
            (0.9 * err_norm.powf(-0.2)).clamp(0.2, 5.0)
        };
        h *= factor;
        if h < 1e-13 {
            // No forward progress is possible at this tolerance.
            return Err(NumericError::StepBudgetExceeded { c, max_steps: cfg.max_steps });
        }
    }
    Err(NumericError::StepBudgetExceeded { c, max_steps: cfg.max_steps })
}

/// Integrates one orbit over a full period and returns the return-map
/// sample `(c, Π(c), Π(c) − c)`.
///
/// c = 0 is the equilibrium and returns a zero sample; small c (≤ 0.2 for
/// desk-scale coefficients) stay in the basin, larger ones may escape and
/// surface as [`NumericError::StepBudgetExceeded`] / [`NumericError::NonFinite`].
pub fn return_map(
    sys: &SystemSpec,
    c: f64,
    cfg: &IntegratorConfig,
) -> Result<ReturnMapSample, NumericError> {
    if !c.is_finite() || c < 0.0 {
        return Err(NumericError::InvalidRadius(c));
    }
    let rhs = RigidRhs::new(sys);
    let r_end = integrate_to_period(&rhs, c, cfg)?;
    Ok(ReturnMapSample { c, r_end, residual: r_end - c })
}

/// Least-squares estimates of the focal values `Ṽ_k`, k = 2..max_order,
/// from return-map residuals on a ladder of initial radii.
///
/// Fits `residual(c) = Σ_{k=2}^{max_order} Ṽ_k cᵏ` — the basis starts at c²
/// because `V₀ = 0` and `V₁ = 1` structurally. Columns are normalized
/// before the SVD solve and the condition estimate is taken on the
/// normalized system.
pub fn estimate_focal(
    sys: &SystemSpec,
    max_order: u32,
    ladder: &[f64],
    cfg: &IntegratorConfig,
) -> Result<Vec<f64>, NumericError> {
    if max_order < 2 {
        return Err(NumericError::InvalidOrder(max_order));
    }
    let need = max_order as usize + 2;
    if ladder.len() < need {
        return Err(NumericError::InvalidLadder(format!(
            "need at least {} samples for a fit of order {}, got {}",
            need,
            max_order,
            ladder.len()
        )));
    }
    if !ladder.windows(2).all(|w| w[0] < w[1]) || ladder.iter().any(|c| !c.is_finite() || *c <= 0.0)
    {
        return Err(NumericError::InvalidLadder(
            "ladder must be strictly increasing and positive".into(),
        ));
    }
    let rows = ladder.len();
    let cols = (max_order - 1) as usize;
    let mut matrix = DMatrix::<f64>::zeros(rows, cols);
    let mut rhs = DVector::<f64>::zeros(rows);
    for (i, &c) in ladder.iter().enumerate() {
        rhs[i] = return_map(sys, c, cfg)?.residual;
        for j in 0..cols {
            matrix[(i, j)] = c.powi(j as i32 + 2);
        }
    }
    let norms: Vec<f64> = (0..cols).map(|j| matrix.column(j).norm()).collect();
    if norms.iter().any(|&n| n == 0.0) {
        return Err(NumericError::IllConditioned { condition: f64::INFINITY });
    }
    for j in 0..cols {
        let inv = 1.0 / norms[j];
        matrix.column_mut(j).scale_mut(inv);
    }
    let svd = matrix.svd(true, true);
    let smax = svd.singular_values.max();
    let smin = svd.singular_values.min();
    let condition = if smin > 0.0 { smax / smin } else { f64::INFINITY };
    if !condition.is_finite() || condition > MAX_FIT_CONDITION {
        return Err(NumericError::IllConditioned { condition });
    }
    let scaled = svd
        .solve(&rhs, 0.0)
        .map_err(|_| NumericError::IllConditioned { condition })?;
    Ok((0..cols).map(|j| scaled[j] / norms[j]).collect())
}

/// Geometric ladder of `len` radii from `lo` to `hi` inclusive — denser at
/// small c, balancing truncation bias against roundoff in the fits.
pub fn geometric_ladder(lo: f64, hi: f64, len: usize) -> Vec<f64> {
    assert!(len >= 2 && lo > 0.0 && lo < hi, "need len ≥ 2 and 0 < lo < hi");
    let ratio = (hi / lo).powf(1.0 / (len - 1) as f64);
    let mut cs: Vec<f64> = (0..len).map(|i| lo * ratio.powi(i as i32)).collect();
    cs[len - 1] = hi;
    cs
}

/// True iff `max |Π(c) − c| ≤ tol` over the given radii: the numeric
/// surrogate for "every focal value vanishes".
pub fn verify_center_numeric(
    sys: &SystemSpec,
    cs: &[f64],
    tol: f64,
    cfg: &IntegratorConfig,
) -> Result<bool, NumericError> {
    if cs.is_empty() {
        return Err(NumericError::InvalidLadder("no sample radii given".into()));
    }
    let mut worst = 0.0_f64;
    for &c in cs {
        let sample = return_map(sys, c, cfg)?;
        worst = worst.max(sample.residual.abs());
    }
    Ok(worst <= tol)
}
