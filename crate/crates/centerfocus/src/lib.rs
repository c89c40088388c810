//! Exact center–focus analysis for rigid planar systems
//! `dr/dθ = P₁(θ)r² + Pₙ(θ)r^{n+1}` with `P₁` a first harmonic and `Pₙ`
//! the circle restriction of a homogeneous degree-n polynomial.
//!
//! The decision procedure is exact: a system has a center iff all the
//! moments `M_j = ∫₀^{2π} P̄₁ʲ Pₙ dθ` (j = 0..n) vanish, and every
//! quantity — moments, return-map focal values, composition
//! factorizations — is computed over `Q[π]` with no floating point.
//! A Dormand–Prince integrator provides an independent numeric
//! cross-check of the verdicts.
//!
//! Modules:
//! - [`trig_algebra`]: exact trigonometric polynomials over `Q`,
//!   π-polynomials, homogeneous polynomials and circle restriction.
//! - [`combinatorics`]: λ-coefficient tables and closed forms, the
//!   generating-series identity, μ-tables and harmonic lines.
//! - [`center_conditions`]: systems, moments, verdicts, closed-form
//!   center conditions for n ≤ 6, composition factorization.
//! - [`focal_values`]: the return-map series `a_k(θ)`, focal values
//!   `V_k`, and the closed form for `a_{n+1+k}`.
//! - [`numeric_oracle`]: adaptive Runge–Kutta return map, least-squares
//!   focal estimates, numeric center verification.
//! - [`cli`]: JSON input/report schema and the batch front end.

pub mod center_conditions;
pub mod cli;
pub mod combinatorics;
pub mod focal_values;
mod linalg;
pub mod numeric_oracle;
#[cfg(test)]
pub(crate) mod test_support;
pub mod trig_algebra;
