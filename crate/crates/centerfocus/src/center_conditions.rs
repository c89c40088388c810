//! Center/focus decision procedures for the rigid system
//! `dr/dθ = P₁(θ) r² + Pₙ(θ) r^{n+1}` with `P₁ = A₁¹cosθ + B₁¹sinθ`:
//! exact moment integrals, the center verdict, tabulated closed-form
//! conditions for n = 2..6, and the constructive composition factorization.
//!
//! The center criterion is the vanishing of all moments
//! `M_j = ∫₀^{2π} P̄₁ʲ Pₙ dθ` for j = 0..n, where `P̄₁ = A₁¹sinθ − B₁¹cosθ`;
//! parity makes half of them vanish identically (even j for odd n, odd j
//! for even n), which the reports retain as a structural cross-check.

use std::fmt;

use num_traits::Zero;
use thiserror::Error;

use crate::linalg;
use crate::trig_algebra::{
    circle_restriction, period_integral, trig_mul, HomogPoly, PiPolynomial, Rational, TrigPoly,
};

/// Errors for system construction and the tabulated conditions.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CenterError {
    /// The family starts at n = 2 (`Pₙ` of degree at least 2).
    #[error("n must be at least 2, got {0}")]
    UnsupportedN(u32),
    /// `Pₙ` must be homogeneous of degree exactly n.
    #[error("Pₙ has degree {got}, expected n = {n}")]
    DegreeMismatch { n: u32, got: u32 },
    /// Closed-form condition polynomials are tabulated only for n = 2..6.
    #[error("closed-form conditions are tabulated only for 2 ≤ n ≤ 6, got n = {0}")]
    CorollaryRange(u32),
    /// Operations built on `P̄₁` powers need a nondegenerate `P₁`.
    #[error("degenerate P₁ = 0: this operation requires A₁¹² + B₁¹² ≠ 0")]
    DegenerateP1,
}

/// A rigid system: the degree n ≥ 2, the two `P₁` coefficients
/// (`p10 = A₁¹`, `p01 = B₁¹`), and the homogeneous `Pₙ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SystemSpec {
    n: u32,
    p10: Rational,
    p01: Rational,
    pn: HomogPoly,
}

impl SystemSpec {
    /// Builds a system, checking n ≥ 2 and `deg Pₙ = n`.
    pub fn new(n: u32, p10: Rational, p01: Rational, pn: HomogPoly) -> Result<Self, CenterError> {
        if n < 2 {
            return Err(CenterError::UnsupportedN(n));
        }
        if pn.degree() != n {
            return Err(CenterError::DegreeMismatch { n, got: pn.degree() });
        }
        Ok(SystemSpec { n, p10, p01, pn })
    }

    /// Degree n of `Pₙ`.
    pub fn n(&self) -> u32 {
        self.n
    }

    /// `A₁¹`, the coefficient of x in `P₁`.
    pub fn p10(&self) -> &Rational {
        &self.p10
    }

    /// `B₁¹`, the coefficient of y in `P₁`.
    pub fn p01(&self) -> &Rational {
        &self.p01
    }

    /// The homogeneous `Pₙ`.
    pub fn pn(&self) -> &HomogPoly {
        &self.pn
    }

    /// True when `P₁ ≡ 0` (the nondegenerate-first-harmonic assumption fails; the
    /// equation degenerates to the separable `dr/dθ = Pₙ r^{n+1}`).
    pub fn p1_is_zero(&self) -> bool {
        self.p10.is_zero() && self.p01.is_zero()
    }

    /// `P₁` on the circle: `A₁¹cosθ + B₁¹sinθ`.
    pub fn p1_trig(&self) -> TrigPoly {
        TrigPoly::harmonic_term(1, self.p10.clone(), self.p01.clone())
    }

    /// The conjugate `P̄₁ = A₁¹sinθ − B₁¹cosθ`.
    pub fn p1_bar(&self) -> TrigPoly {
        TrigPoly::harmonic_term(1, -self.p01.clone(), self.p10.clone())
    }

    /// The primitive `P̃₁ = ∫₀^θ P₁ = P̄₁ + B₁¹`.
    pub fn p1_tilde(&self) -> TrigPoly {
        let mut t = self.p1_bar();
        t = &t + &TrigPoly::constant(self.p01.clone());
        t
    }

    /// `Pₙ` restricted to the unit circle, in Fourier form.
    pub fn pn_trig(&self) -> TrigPoly {
        circle_restriction(&self.pn)
    }
}

impl fmt::Display for SystemSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "n = {}, P1 = {}, Pn = {}",
            self.n,
            TrigPoly::harmonic_term(1, self.p10.clone(), self.p01.clone()),
            self.pn
        )
    }
}

/// The exact moments `M_j = ∫₀^{2π} P̄₁ʲ Pₙ dθ`, j = 0..n, and the first
/// nonzero index (absent for a center).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MomentReport {
    moments: Vec<PiPolynomial>,
    first_nonzero: Option<usize>,
}

impl MomentReport {
    /// All moments, indexed by j = 0..n.
    pub fn moments(&self) -> &[PiPolynomial] {
        &self.moments
    }

    /// `M_j` by index.
    pub fn moment(&self, j: usize) -> &PiPolynomial {
        &self.moments[j]
    }

    /// Smallest j with `M_j ≠ 0`, if any.
    pub fn first_nonzero(&self) -> Option<usize> {
        self.first_nonzero
    }

    /// True iff every moment vanishes.
    pub fn all_zero(&self) -> bool {
        self.first_nonzero.is_none()
    }
}

/// The center/focus decision.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    /// All moments vanish: every small orbit closes.
    Center,
    /// Some moment survives; the smallest index determines the first
    /// nonvanishing focal value.
    Focus {
        /// Smallest j with `M_j ≠ 0`.
        first_nonzero_moment_index: usize,
        /// The exact value of that moment.
        moment_value: PiPolynomial,
    },
}

impl Verdict {
    /// True for [`Verdict::Center`].
    pub fn is_center(&self) -> bool {
        matches!(self, Verdict::Center)
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Center => write!(f, "Center"),
            Verdict::Focus { first_nonzero_moment_index, .. } => {
                write!(f, "Focus (first nonzero moment j={})", first_nonzero_moment_index)
            }
        }
    }
}

/// A composition factorization `Pₙ = P₁ · Σ coeffs[i] · P̄₁^{powers[i]}`
/// (even powers η for odd n, odd powers β for even n); exact, with zero
/// residual by construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompositionFactor {
    powers: Vec<u32>,
    coeffs: Vec<Rational>,
}

impl CompositionFactor {
    /// The `P̄₁` powers in the factor, in increasing order.
    pub fn powers(&self) -> &[u32] {
        &self.powers
    }

    /// The coefficients η / β aligned with [`Self::powers`].
    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Reconstructs `P₁ · Σ cᵢ P̄₁^{pᵢ}` for the given system (used to verify
    /// the zero-residual invariant).
    pub fn reconstruct(&self, sys: &SystemSpec) -> TrigPoly {
        let p1 = sys.p1_trig();
        let p1_bar = sys.p1_bar();
        let mut factor = TrigPoly::zero();
        for (p, c) in self.powers.iter().zip(&self.coeffs) {
            factor = &factor + &p1_bar.pow(*p).scale(c);
        }
        trig_mul(&p1, &factor)
    }
}

/// Computes all moments `M_j = ∫₀^{2π} P̄₁ʲ Pₙ dθ` for j = 0..n exactly.
pub fn moments(sys: &SystemSpec) -> MomentReport {
    let pn = sys.pn_trig();
    let p1_bar = sys.p1_bar();
    let mut power = TrigPoly::constant(Rational::from_integer(1.into()));
    let mut out = Vec::with_capacity(sys.n() as usize + 1);
    for j in 0..=sys.n() {
        out.push(period_integral(&trig_mul(&power, &pn)));
        if j < sys.n() {
            power = trig_mul(&power, &p1_bar);
        }
    }
    let first_nonzero = out.iter().position(|m| !m.is_zero());
    MomentReport { moments: out, first_nonzero }
}

/// The center/focus verdict: Center iff every moment vanishes exactly.
///
/// When `P₁ ≡ 0` the nondegeneracy hypothesis fails and the equation reduces to
/// the separable `dr/dθ = Pₙ r^{n+1}`, a center iff `M₀ = ∫₀^{2π} Pₙ = 0`;
/// since `P̄₁ ≡ 0` zeroes every higher moment automatically, the same
/// all-moments test answers that case too.
pub fn is_center(sys: &SystemSpec) -> Verdict {
    let report = moments(sys);
    match report.first_nonzero() {
        None => Verdict::Center,
        Some(j) => Verdict::Focus {
            first_nonzero_moment_index: j,
            moment_value: report.moment(j).clone(),
        },
    }
}

/// Evaluates the tabulated closed-form center conditions for n = 2..6 at the
/// system's coefficients. All conditions vanish iff the system is a center
/// (the equivalence the tests validate against [`is_center`]).
///
/// Condition t corresponds to the moment `M_{2t}` (even n) or `M_{2t+1}`
/// (odd n), up to a fixed rational multiple of a power of π on the nested
/// slices where the preceding conditions vanish.
pub fn corollary_conditions(sys: &SystemSpec) -> Result<Vec<Rational>, CenterError> {
    let n = sys.n();
    if !(2..=6).contains(&n) {
        return Err(CenterError::CorollaryRange(n));
    }
    let a = sys.p10().clone();
    let b = sys.p01().clone();
    let c = |i: u32, j: u32| sys.pn().coeff(i, j);
    let conds = match n {
        2 => vec![
            c(2, 0) + c(0, 2),
            c(2, 0) * (&b * &b - &a * &a) - c(1, 1) * &a * &b,
        ],
        3 => vec![
            &a * c(2, 1) - &b * c(1, 2) + &a * c(0, 3) * r(3) - &b * c(3, 0) * r(3),
            c(3, 0) * b.pow(3) - c(2, 1) * b.pow(2) * &a + c(1, 2) * &b * a.pow(2)
                - c(0, 3) * a.pow(3),
        ],
        4 => vec![
            (c(4, 0) + c(0, 4)) * r(3) + c(2, 2),
            (&a * &a - &b * &b) * (c(0, 4) - c(4, 0)) - &a * &b * (c(3, 1) + c(1, 3)),
            c(4, 0) * b.pow(4) - c(3, 1) * b.pow(3) * &a + c(2, 2) * b.pow(2) * a.pow(2)
                - c(1, 3) * &b * a.pow(3)
                + c(0, 4) * a.pow(4),
        ],
        5 => vec![
            &b * (c(5, 0) * r(5) + c(3, 2) + c(1, 4))
                - &a * (c(0, 5) * r(5) + c(2, 3) + c(4, 1)),
            a.pow(3) * (c(2, 3) + c(0, 5) * r(10))
                - a.pow(2) * &b * (c(1, 4) * r(2) + c(3, 2)) * r(3)
                + &a * b.pow(2) * (c(2, 3) + c(4, 1) * r(2)) * r(3)
                - b.pow(3) * (c(3, 2) + c(5, 0) * r(10)),
            c(5, 0) * b.pow(5) - c(4, 1) * b.pow(4) * &a + c(3, 2) * b.pow(3) * a.pow(2)
                - c(2, 3) * b.pow(2) * a.pow(3)
                + c(1, 4) * &b * a.pow(4)
                - c(0, 5) * a.pow(5),
        ],
        6 => vec![
            (c(6, 0) + c(0, 6)) * r(5) + c(4, 2) + c(2, 4),
            a.pow(2) * (c(2, 4) - c(6, 0) * r(5) + c(0, 6) * r(10))
                - &a * &b * (c(5, 1) * r(5) + c(1, 5) * r(5) + c(3, 3) * r(3))
                + b.pow(2) * (c(4, 2) - c(0, 6) * r(5) + c(6, 0) * r(10)),
            a.pow(4) * (c(2, 4) - c(6, 0) * r(3) + c(0, 6) * r(12))
                - a.pow(3) * &b * (c(5, 1) * r(3) + c(1, 5) * r(7) + c(3, 3) * r(3))
                - a.pow(2) * b.pow(2) * (c(6, 0) + c(0, 6)) * r(12)
                - &a * b.pow(3) * (c(1, 5) * r(3) + c(5, 1) * r(7) + c(3, 3) * r(3))
                + b.pow(4) * (c(4, 2) - c(0, 6) * r(3) + c(6, 0) * r(12)),
            c(6, 0) * b.pow(6) - c(5, 1) * b.pow(5) * &a + c(4, 2) * b.pow(4) * a.pow(2)
                - c(3, 3) * b.pow(3) * a.pow(3)
                + c(2, 4) * b.pow(2) * a.pow(4)
                - c(1, 5) * &b * a.pow(5)
                + c(0, 6) * a.pow(6),
        ],
        _ => unreachable!(),
    };
    Ok(conds)
}

fn r(n: i64) -> Rational {
    crate::trig_algebra::rat_int(n)
}

/// Solves for an exact composition factorization
/// `Pₙ = P₁ · (Σ c_p P̄₁^p)` with p ranging over even powers 0, 2, …, n−1
/// for odd n and odd powers 1, 3, …, n−1 for even n.
///
/// Returns `Ok(None)` when no exact factorization exists (necessarily a
/// focus); when [`is_center`] says Center a factorization must exist — that
/// implication is the composition-conjecture check the tests enforce.
pub fn composition_factor(sys: &SystemSpec) -> Result<Option<CompositionFactor>, CenterError> {
    if sys.p1_is_zero() {
        return Err(CenterError::DegenerateP1);
    }
    let n = sys.n();
    let powers: Vec<u32> = if n % 2 == 1 {
        (0..n).step_by(2).collect() // 0, 2, ..., n−1
    } else {
        (1..n).step_by(2).collect() // 1, 3, ..., n−1
    };
    let p1 = sys.p1_trig();
    let p1_bar = sys.p1_bar();
    let target = sys.pn_trig();
    // Match Fourier coefficients up to harmonic n + 1 (the largest any
    // basis vector or the target can reach).
    let max_j = n + 1;
    let columns: Vec<Vec<Rational>> = powers
        .iter()
        .map(|p| trig_mul(&p1, &p1_bar.pow(*p)).coordinates(max_j))
        .collect();
    let rhs = target.coordinates(max_j);
    let rows = rhs.len();
    let matrix: Vec<Vec<Rational>> = (0..rows)
        .map(|r| columns.iter().map(|col| col[r].clone()).collect())
        .collect();
    match linalg::solve(&matrix, &rhs) {
        None => Ok(None),
        Some(coeffs) => {
            let factor = CompositionFactor { powers, coeffs };
            debug_assert!(
                (&factor.reconstruct(sys) - &target).is_zero(),
                "consistent solve must have zero residual"
            );
            Ok(Some(factor))
        }
    }
}

/// Basis (over the rationals) of the subspace of degree-n homogeneous `Pₙ`
/// for which every moment vanishes — i.e. the center systems with the given
/// `P₁`. A sampling aid for building exact center families.
pub fn center_subspace_basis(
    n: u32,
    p10: &Rational,
    p01: &Rational,
) -> Result<Vec<HomogPoly>, CenterError> {
    if n < 2 {
        return Err(CenterError::UnsupportedN(n));
    }
    let p1_bar = TrigPoly::harmonic_term(1, -p01.clone(), p10.clone());
    // Moment of each monomial x^{n−t} y^t: a pure multiple of π, so the
    // kernel computation is over the rational parts.
    let mut bar_powers = Vec::with_capacity(n as usize + 1);
    bar_powers.push(TrigPoly::constant(Rational::from_integer(1.into())));
    for _ in 0..n {
        bar_powers.push(trig_mul(bar_powers.last().unwrap(), &p1_bar));
    }
    let monomials: Vec<HomogPoly> = (0..=n)
        .map(|t| {
            HomogPoly::new(n, [((n - t, t), Rational::from_integer(1.into()))])
                .expect("exponents sum to n")
        })
        .collect();
    let matrix: Vec<Vec<Rational>> = (0..=n as usize)
        .map(|j| {
            monomials
                .iter()
                .map(|mono| {
                    let t = circle_restriction(mono);
                    period_integral(&trig_mul(&bar_powers[j], &t)).coeff(1)
                })
                .collect()
        })
        .collect();
    let kernel = linalg::kernel_basis(&matrix);
    Ok(kernel
        .into_iter()
        .map(|v| {
            HomogPoly::new(n, (0..=n).map(|t| ((n - t, t), v[t as usize].clone())))
                .expect("exponents sum to n")
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::test_support::{center_example, focus_example, random_rat, random_system};
    use crate::trig_algebra::{rat, rat_int};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn rng() -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(0xce_17e2)
    }

    #[test]
    fn moment_examples() {
        let report = moments(&focus_example());
        assert_eq!(report.moments().len(), 3);
        assert!(report.moment(0).is_zero());
        assert!(report.moment(1).is_zero());
        assert_eq!(report.moment(2), &PiPolynomial::term(1, rat(-1, 2)));
        assert_eq!(report.first_nonzero(), Some(2));

        let zero_pn =
            SystemSpec::new(3, rat_int(2), rat_int(-1), HomogPoly::zero(3)).unwrap();
        assert!(moments(&zero_pn).all_zero());

        assert!(moments(&center_example()).all_zero());
    }

    #[test]
    fn verdict_examples() {
        assert_eq!(is_center(&center_example()), Verdict::Center);
        match is_center(&focus_example()) {
            Verdict::Focus { first_nonzero_moment_index, moment_value } => {
                assert_eq!(first_nonzero_moment_index, 2);
                assert_eq!(moment_value, PiPolynomial::term(1, rat(-1, 2)));
            }
            Verdict::Center => panic!("expected a focus"),
        }
        let zero_pn = SystemSpec::new(4, rat_int(0), rat_int(3), HomogPoly::zero(4)).unwrap();
        assert_eq!(is_center(&zero_pn), Verdict::Center);
    }

    #[test]
    fn parity_zeroes_half_the_moments() {
        let mut r = rng();
        for _ in 0..200 {
            let n = r.gen_range(2..=6);
            let sys = random_system(&mut r, n);
            let report = moments(&sys);
            for j in 0..=n as usize {
                let auto_zero = if n % 2 == 1 { j % 2 == 0 } else { j % 2 == 1 };
                if auto_zero {
                    assert!(report.moment(j).is_zero(), "n = {}, j = {} should vanish", n, j);
                }
            }
        }
    }

    #[test]
    fn corollary_examples() {
        // {n=2, P₁=x, P₂ = x²−y²} → [0, −1].
        assert_eq!(
            corollary_conditions(&focus_example()).unwrap(),
            vec![rat_int(0), rat_int(-1)]
        );
        // n=3, Pₙ = 0 → [0, 0].
        let zero3 = SystemSpec::new(3, rat_int(1), rat_int(2), HomogPoly::zero(3)).unwrap();
        assert_eq!(corollary_conditions(&zero3).unwrap(), vec![rat_int(0), rat_int(0)]);
        // n=4 first condition: 3(p40+p04)+p22 with p40=1, p22=−3 → 0.
        let sys4 = SystemSpec::new(
            4,
            rat_int(1),
            rat_int(0),
            HomogPoly::new(4, [((4, 0), rat_int(1)), ((2, 2), rat_int(-3))]).unwrap(),
        )
        .unwrap();
        assert_eq!(corollary_conditions(&sys4).unwrap()[0], rat_int(0));
        // Out of range.
        let sys7 = SystemSpec::new(7, rat_int(1), rat_int(0), HomogPoly::zero(7)).unwrap();
        assert!(matches!(corollary_conditions(&sys7), Err(CenterError::CorollaryRange(7))));
    }

    #[test]
    fn n2_first_moment_is_pi_times_first_condition() {
        let mut r = rng();
        for _ in 0..50 {
            let sys = random_system(&mut r, 2);
            let conds = corollary_conditions(&sys).unwrap();
            let m0 = moments(&sys).moment(0).clone();
            assert_eq!(m0, PiPolynomial::term(1, conds[0].clone()));
        }
    }

    #[test]
    fn composition_examples() {
        // {n=2, P₁=x, P₂=xy} → β₁ = 1 (½ sin2θ = cosθ·sinθ).
        let f = composition_factor(&center_example()).unwrap().unwrap();
        assert_eq!(f.powers(), &[1]);
        assert_eq!(f.coeffs(), &[rat_int(1)]);
        // Pₙ = 0 → all coefficients zero.
        let zero5 = SystemSpec::new(5, rat_int(2), rat_int(1), HomogPoly::zero(5)).unwrap();
        let f0 = composition_factor(&zero5).unwrap().unwrap();
        assert_eq!(f0.powers(), &[0, 2, 4]);
        assert!(f0.coeffs().iter().all(|c| c.is_zero()));
        // Focus → no factorization.
        assert!(composition_factor(&focus_example()).unwrap().is_none());
        // Degenerate P₁ rejected.
        let degen = SystemSpec::new(
            2,
            rat_int(0),
            rat_int(0),
            HomogPoly::new(2, [((1, 1), rat_int(1))]).unwrap(),
        )
        .unwrap();
        assert!(matches!(composition_factor(&degen), Err(CenterError::DegenerateP1)));
    }

    #[test]
    fn composition_iff_center_on_samples() {
        let mut r = rng();
        for n in 2..=6u32 {
            // Generic draws (almost surely foci).
            for _ in 0..10 {
                let sys = random_system(&mut r, n);
                if sys.p1_is_zero() {
                    continue;
                }
                let verdict = is_center(&sys);
                let factor = composition_factor(&sys).unwrap();
                assert_eq!(
                    verdict.is_center(),
                    factor.is_some(),
                    "composition ⟺ center failed for {}",
                    sys
                );
                if let Some(f) = factor {
                    assert!((&f.reconstruct(&sys) - &sys.pn_trig()).is_zero());
                }
            }
            // Constructed centers from the moment kernel.
            let p10 = rat_int(1);
            let p01 = rat(1, 2);
            let basis = center_subspace_basis(n, &p10, &p01).unwrap();
            assert!(!basis.is_empty());
            for _ in 0..5 {
                let mut parts: Vec<((u32, u32), Rational)> = Vec::new();
                for b in &basis {
                    let w = random_rat(&mut r);
                    for ((i, j), c) in b.terms() {
                        parts.push(((i, j), c * &w));
                    }
                }
                let combo = HomogPoly::new(n, parts).unwrap();
                let sys = SystemSpec::new(n, p10.clone(), p01.clone(), combo).unwrap();
                assert!(is_center(&sys).is_center(), "kernel sample must be a center");
                let f = composition_factor(&sys).unwrap().expect("center must factor");
                assert!((&f.reconstruct(&sys) - &sys.pn_trig()).is_zero());
            }
        }
    }

    #[test]
    fn center_subspace_matches_corollary_conditions() {
        let mut r = rng();
        for n in 2..=6u32 {
            let p10 = rat(3, 2);
            let p01 = rat_int(-1);
            let basis = center_subspace_basis(n, &p10, &p01).unwrap();
            for b in &basis {
                let sys = SystemSpec::new(n, p10.clone(), p01.clone(), b.clone()).unwrap();
                let conds = corollary_conditions(&sys).unwrap();
                assert!(
                    conds.iter().all(|c| c.is_zero()),
                    "tabulated conditions must vanish on the moment kernel, n = {}",
                    n
                );
            }
            // And a generic draw almost surely violates some condition.
            let sys = random_system(&mut r, n);
            let conds = corollary_conditions(&sys).unwrap();
            assert_eq!(is_center(&sys).is_center(), conds.iter().all(|c| c.is_zero()));
        }
    }
}
