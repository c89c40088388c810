//! Return-map series and focal values for `dr/dθ = P₁r² + Pₙr^{n+1}`.
//!
//! Substituting `r(θ, c) = Σ_{k≥1} a_k(θ) cᵏ` with `r(0, c) = c` gives the
//! triangular recurrence `a_k′ = P₁·[cᵏ]S² + Pₙ·[cᵏ]S^{n+1}` (S the series
//! itself), solved exactly by termwise antidifferentiation. The focal values
//! `V_k = a_k(2π)` decide center vs. focus: the origin is a center iff all
//! `V_k` vanish, and each `V_{n+1+k}` collapses to an explicit multiple of
//! the moment `M̃_k = ∫₀^{2π} P̃₁ᵏ Pₙ dθ`.

use num_traits::Zero;
use thiserror::Error;

use crate::center_conditions::SystemSpec;
use crate::combinatorics::lambda_closed_for_degree;
use crate::trig_algebra::{
    antiderivative_from_zero, eval_full_period, period_integral, rat, trig_mul,
    PiPolynomial, PolyTrig,
};

/// Errors for the closed-form cross-checks.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FocalError {
    /// The closed forms for `a_{n+1+k}` hold for 0 ≤ k ≤ n only.
    #[error("closed form requested at offset k = {k}, valid range is 0 ≤ k ≤ n = {n}")]
    OrderOutOfRange { k: u32, n: u32 },
}

/// The exact series coefficients `a_k(θ)` for k = 1..K.
///
/// Invariants: `a₁ ≡ 1`; `a_k(0) = 0` for k ≥ 2; `a_k = P̃₁^{k−1}` for
/// 2 ≤ k ≤ n.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeriesTable {
    sys: SystemSpec,
    a: Vec<PolyTrig>,
}

impl SeriesTable {
    /// The underlying system.
    pub fn sys(&self) -> &SystemSpec {
        &self.sys
    }

    /// The truncation order K.
    pub fn order(&self) -> u32 {
        (self.a.len() - 1) as u32
    }

    /// `a_k(θ)` for 1 ≤ k ≤ K.
    pub fn coefficient(&self, k: u32) -> &PolyTrig {
        assert!(
            (1..=self.order()).contains(&k),
            "series index {} out of range 1..={}",
            k,
            self.order()
        );
        &self.a[k as usize]
    }
}

/// The focal values `V_k = a_k(2π)` for k = 2..K and the least index of a
/// nonzero one (absent for a center up to order K).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FocalReport {
    values: Vec<PiPolynomial>,
    first_nonzero: Option<u32>,
}

impl FocalReport {
    /// The truncation order K.
    pub fn order(&self) -> u32 {
        (self.values.len() + 1) as u32
    }

    /// All values, index i holding `V_{i+2}`.
    pub fn values(&self) -> &[PiPolynomial] {
        &self.values
    }

    /// `V_k` for 2 ≤ k ≤ K.
    pub fn value(&self, k: u32) -> &PiPolynomial {
        assert!(
            (2..=self.order()).contains(&k),
            "focal index {} out of range 2..={}",
            k,
            self.order()
        );
        &self.values[(k - 2) as usize]
    }

    /// Least k with `V_k ≠ 0`, if any.
    pub fn first_nonzero(&self) -> Option<u32> {
        self.first_nonzero
    }

    /// True iff every reported value vanishes.
    pub fn all_zero(&self) -> bool {
        self.first_nonzero.is_none()
    }
}

/// Computes `a_k(θ)` for k = 1..K by the exact triangular recurrence.
///
/// Each step convolves the already-known coefficients: with
/// `S = Σ a_m cᵐ`, the derivative is `a_k′ = P₁·[cᵏ]S² + Pₙ·[cᵏ]S^{n+1}`
/// (both extractions touch only `a_i` with i < k), then `a_k` is the
/// antiderivative vanishing at θ = 0.
pub fn series_coefficients(sys: &SystemSpec, big_k: u32) -> SeriesTable {
    assert!(big_k >= 1, "series order must be at least 1");
    let kk = big_k as usize;
    let n = sys.n() as usize;
    let p1 = PolyTrig::from_trig(sys.p1_trig());
    let pn = PolyTrig::from_trig(sys.pn_trig());
    let mut a = vec![PolyTrig::zero(); kk + 1];
    a[1] = PolyTrig::one();
    // pows[m][k] = [cᵏ] Sᵐ for 1 ≤ m ≤ n; row m is filled through index k
    // once a_k is known, so the extractions below only read finished slots.
    let mut pows = vec![vec![PolyTrig::zero(); kk + 1]; n + 1];
    pows[1][1] = PolyTrig::one();
    for k in 2..=kk {
        let mut sq = PolyTrig::zero();
        let mut top = PolyTrig::zero();
        for i in 1..k {
            sq = &sq + &(&a[i] * &pows[1][k - i]);
            top = &top + &(&a[i] * &pows[n][k - i]);
        }
        let deriv = &(&p1 * &sq) + &(&pn * &top);
        a[k] = antiderivative_from_zero(&deriv);
        debug_assert!(a[k].eval_at_zero().is_zero(), "a_k must vanish at θ = 0");
        pows[1][k] = a[k].clone();
        for m in 2..=n {
            let mut s = PolyTrig::zero();
            for i in 1..k {
                s = &s + &(&a[i] * &pows[m - 1][k - i]);
            }
            pows[m][k] = s;
        }
    }
    SeriesTable { sys: sys.clone(), a }
}

/// The focal values of an already-computed series table.
pub fn focal_values_from_series(table: &SeriesTable) -> FocalReport {
    let big_k = table.order();
    assert!(big_k >= 2, "focal report needs order at least 2");
    let mut values = Vec::with_capacity((big_k - 1) as usize);
    let mut first_nonzero = None;
    for k in 2..=big_k {
        let v = eval_full_period(table.coefficient(k));
        if first_nonzero.is_none() && !v.is_zero() {
            first_nonzero = Some(k);
        }
        values.push(v);
    }
    FocalReport { values, first_nonzero }
}

/// Computes `V_k = a_k(2π)` for k = 2..K with an exact zero test on each.
pub fn focal_values(sys: &SystemSpec, big_k: u32) -> FocalReport {
    focal_values_from_series(&series_coefficients(sys, big_k))
}

/// The moment `M̃_j = ∫₀^{2π} P̃₁ʲ Pₙ dθ` built on the primitive
/// `P̃₁ = ∫₀^θ P₁` (not the conjugate `P̄₁` of [`crate::center_conditions::moments`];
/// the two families generate the same vanishing ideal).
pub fn tilde_moment(sys: &SystemSpec, j: u32) -> PiPolynomial {
    let integrand = trig_mul(&sys.p1_tilde().pow(j), &sys.pn_trig());
    period_integral(&integrand)
}

/// The closed-form expression for `a_{n+1+k}(θ)` as an exact function,
/// valid for 0 ≤ k ≤ n:
///
/// `a_{n+1+k} = P̃₁^{n+k} + Σ_{j=0}^k λ_k^j · P̃₁^{k−j} W_j  (+ ((n+1)/2)·W₀² when k = n)`
///
/// with `W_j = ∫₀^θ P̃₁ʲ Pₙ` and `λ_k^j = (k−j+1)·C(n+j−2, j)`. The
/// quadratic boundary term appears exactly at the first order where two
/// `Pₙ` factors can meet; below it the expression is affine in `Pₙ`.
pub fn closed_form_coefficient(sys: &SystemSpec, k: u32) -> Result<PolyTrig, FocalError> {
    let n = sys.n();
    if k > n {
        return Err(FocalError::OrderOutOfRange { k, n });
    }
    let tilde = sys.p1_tilde();
    let pn = PolyTrig::from_trig(sys.pn_trig());
    let mut out = PolyTrig::from_trig(tilde.pow(n + k));
    let mut w0 = None;
    for j in 0..=k {
        let lam = lambda_closed_for_degree(n, k, j).expect("0 ≤ j ≤ k ≤ n, n ≥ 2");
        let wj = antiderivative_from_zero(&(&PolyTrig::from_trig(tilde.pow(j)) * &pn));
        if j == 0 {
            w0 = Some(wj.clone());
        }
        out = &out + &(&PolyTrig::from_trig(tilde.pow(k - j)) * &wj).scale(&lam);
    }
    if k == n {
        let w0 = w0.expect("j = 0 always visited");
        out = &out + &(&w0 * &w0).scale(&rat(n as i64 + 1, 2));
    }
    Ok(out)
}

/// Cross-checks the recurrence against the closed form at θ = 2π: returns
/// the pair `(a_{n+1+k}(2π), λ_k^k·M̃_k [+ ((n+1)/2)·M₀² when k = n])`,
/// which must be equal for 0 ≤ k ≤ n. All powers of `P̃₁` vanish at 2π, so
/// only the j = k term (and the quadratic boundary term) survives.
pub fn closed_form_check(
    sys: &SystemSpec,
    k: u32,
) -> Result<(PiPolynomial, PiPolynomial), FocalError> {
    let n = sys.n();
    if k > n {
        return Err(FocalError::OrderOutOfRange { k, n });
    }
    let table = series_coefficients(sys, n + 1 + k);
    let recurrence_value = eval_full_period(table.coefficient(n + 1 + k));
    let lam = lambda_closed_for_degree(n, k, k).expect("k ≤ n, n ≥ 2");
    let mut closed_value = tilde_moment(sys, k).scale(&lam);
    if k == n {
        let m0 = tilde_moment(sys, 0);
        closed_value = &closed_value + &(&m0 * &m0).scale(&rat(n as i64 + 1, 2));
    }
    Ok((recurrence_value, closed_value))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::center_conditions::{center_subspace_basis, is_center, moments};
    use crate::test_support::{center_example, focus_example, random_system};
    use crate::trig_algebra::{rat_int, HomogPoly};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn rng() -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(0xf0ca1)
    }

    #[test]
    fn low_coefficients_are_tilde_powers() {
        let mut r = rng();
        for n in 2..=7u32 {
            let sys = random_system(&mut r, n);
            let table = series_coefficients(&sys, n + 1);
            assert_eq!(table.coefficient(1), &PolyTrig::one());
            let tilde = sys.p1_tilde();
            for k in 2..=n {
                assert_eq!(
                    table.coefficient(k),
                    &PolyTrig::from_trig(tilde.pow(k - 1)),
                    "a_k = P̃₁^(k−1) failed at n = {}, k = {}",
                    n,
                    k
                );
            }
            // a_{n+1} = P̃₁ⁿ + ∫₀^θ Pₙ.
            let w0 = antiderivative_from_zero(&PolyTrig::from_trig(sys.pn_trig()));
            let expect = &PolyTrig::from_trig(tilde.pow(n)) + &w0;
            assert_eq!(table.coefficient(n + 1), &expect);
        }
    }

    #[test]
    fn coefficients_vanish_at_zero() {
        let mut r = rng();
        let sys = random_system(&mut r, 3);
        let table = series_coefficients(&sys, 9);
        for k in 2..=9 {
            assert!(table.coefficient(k).eval_at_zero().is_zero());
        }
    }

    #[test]
    fn worked_instance_focal_values() {
        let report = focal_values(&focus_example(), 5);
        assert!(report.value(2).is_zero());
        assert!(report.value(3).is_zero());
        assert!(report.value(4).is_zero());
        assert_eq!(report.value(5), &PiPolynomial::term(1, rat(-1, 2)));
        assert_eq!(report.first_nonzero(), Some(5));
    }

    #[test]
    fn centers_have_zero_focal_values() {
        let report = focal_values(&center_example(), 7);
        assert!(report.all_zero(), "xy center must have vanishing focal values");
        let zero_pn = SystemSpec::new(4, rat_int(2), rat(-1, 2), HomogPoly::zero(4)).unwrap();
        assert!(focal_values(&zero_pn, 10).all_zero());
    }

    #[test]
    fn center_series_stays_periodic() {
        // For a center every a_k is 2π-periodic: no θ·(trig) terms appear.
        let basis = center_subspace_basis(3, &rat_int(1), &rat(1, 3)).unwrap();
        let sys = SystemSpec::new(3, rat_int(1), rat(1, 3), basis[0].clone()).unwrap();
        assert!(is_center(&sys).is_center());
        let table = series_coefficients(&sys, 8);
        for k in 1..=8 {
            assert_eq!(table.coefficient(k).theta_degree(), 0, "a_{} grew a θ power", k);
        }
    }

    #[test]
    fn closed_form_check_examples() {
        // Worked instance at k = 2 = n: V₅ = λ₂²·M̃₂ = 1·(−π/2); M₀ = 0 so
        // the boundary term drops out.
        let (lhs, rhs) = closed_form_check(&focus_example(), 2).unwrap();
        assert_eq!(lhs, PiPolynomial::term(1, rat(-1, 2)));
        assert_eq!(lhs, rhs);
        // Pₙ = 0 → (0, 0).
        let zero_pn = SystemSpec::new(3, rat_int(1), rat_int(1), HomogPoly::zero(3)).unwrap();
        let (l0, r0) = closed_form_check(&zero_pn, 1).unwrap();
        assert!(l0.is_zero() && r0.is_zero());
        // k > n rejected.
        assert!(matches!(
            closed_form_check(&zero_pn, 4),
            Err(FocalError::OrderOutOfRange { k: 4, n: 3 })
        ));
    }

    #[test]
    fn closed_form_check_with_nonzero_leading_moment() {
        // P₂ = x² + y² has M₀ = 2π ≠ 0, exercising the quadratic boundary
        // term ((n+1)/2)·M₀² at k = n.
        let sys = SystemSpec::new(
            2,
            rat_int(1),
            rat_int(0),
            HomogPoly::new(2, [((2, 0), rat_int(1)), ((0, 2), rat_int(1))]).unwrap(),
        )
        .unwrap();
        for k in 0..=2 {
            let (lhs, rhs) = closed_form_check(&sys, k).unwrap();
            assert_eq!(lhs, rhs, "mismatch at k = {}", k);
        }
    }

    #[test]
    fn closed_form_matches_series_as_functions() {
        let mut r = rng();
        for n in 2..=3u32 {
            for _ in 0..3 {
                let sys = random_system(&mut r, n);
                let table = series_coefficients(&sys, 2 * n + 1);
                for k in 0..=n {
                    let closed = closed_form_coefficient(&sys, k).unwrap();
                    assert_eq!(
                        table.coefficient(n + 1 + k),
                        &closed,
                        "full-function closed form failed at n = {}, k = {}",
                        n,
                        k
                    );
                }
            }
        }
    }

    #[test]
    fn verdict_equivalence_and_leading_value() {
        let mut r = rng();
        for n in 2..=5u32 {
            for _ in 0..8 {
                let sys = random_system(&mut r, n);
                let verdict = is_center(&sys);
                let report = focal_values(&sys, 2 * n + 2);
                assert_eq!(
                    verdict.is_center(),
                    report.all_zero(),
                    "focal/moment verdicts disagree for {}",
                    sys
                );
                if !verdict.is_center() {
                    // First nonzero focal value sits at n+1+j* and equals
                    // λ_{j*}^{j*}·M̃_{j*}.
                    let j_star = (0..=n)
                        .find(|j| !tilde_moment(&sys, *j).is_zero())
                        .expect("focus must have a nonzero moment");
                    assert_eq!(report.first_nonzero(), Some(n + 1 + j_star));
                    let lam = lambda_closed_for_degree(n, j_star, j_star).unwrap();
                    assert_eq!(
                        report.value(n + 1 + j_star),
                        &tilde_moment(&sys, j_star).scale(&lam)
                    );
                }
            }
        }
    }

    #[test]
    fn tilde_and_bar_moments_vanish_together() {
        let mut r = rng();
        for _ in 0..30 {
            let n = r.gen_range(2..=5);
            let sys = random_system(&mut r, n);
            let bar = moments(&sys);
            let tilde_zero = (0..=n).all(|j| tilde_moment(&sys, j).is_zero());
            assert_eq!(bar.all_zero(), tilde_zero);
        }
    }

    #[test]
    fn first_tilde_moment_matches_first_bar_moment() {
        // Below the first nonzero index the two families agree exactly.
        let mut r = rng();
        for _ in 0..20 {
            let n = r.gen_range(2..=5);
            let sys = random_system(&mut r, n);
            let bar = moments(&sys);
            if let Some(j) = bar.first_nonzero() {
                assert_eq!(&tilde_moment(&sys, j as u32), bar.moment(j));
            }
        }
    }

    #[test]
    fn series_table_accessors() {
        let table = series_coefficients(&center_example(), 4);
        assert_eq!(table.order(), 4);
        assert_eq!(table.sys().n(), 2);
        let report = focal_values(&center_example(), 4);
        assert_eq!(report.order(), 4);
        assert_eq!(report.values().len(), 3);
    }
}
