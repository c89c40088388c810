//! Shared fixtures for the unit-test suites.

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::center_conditions::SystemSpec;
use crate::trig_algebra::{rat, rat_int, HomogPoly, Rational};

/// A small random rational with numerator in −5..=5 and denominator in 1..=3.
pub(crate) fn random_rat(rng: &mut ChaCha8Rng) -> Rational {
    rat(rng.gen_range(-5..=5), rng.gen_range(1..=3))
}

/// A random degree-n system with small rational coefficients (almost surely
/// a focus).
pub(crate) fn random_system(rng: &mut ChaCha8Rng, n: u32) -> SystemSpec {
    let p10 = random_rat(rng);
    let p01 = random_rat(rng);
    let coeffs: Vec<_> = (0..=n).map(|t| ((n - t, t), random_rat(rng))).collect();
    SystemSpec::new(n, p10, p01, HomogPoly::new(n, coeffs).unwrap()).unwrap()
}

/// The worked focus instance n = 2, P₁ = x, P₂ = x² − y²: first nonzero
/// moment M₂ = −π/2, first nonzero focal value V₅ = −π/2.
pub(crate) fn focus_example() -> SystemSpec {
    SystemSpec::new(
        2,
        rat_int(1),
        rat_int(0),
        HomogPoly::new(2, [((2, 0), rat_int(1)), ((0, 2), rat_int(-1))]).unwrap(),
    )
    .unwrap()
}

/// The worked center instance n = 2, P₁ = x, P₂ = xy (= P₁·P̄₁).
pub(crate) fn center_example() -> SystemSpec {
    SystemSpec::new(
        2,
        rat_int(1),
        rat_int(0),
        HomogPoly::new(2, [((1, 1), rat_int(1))]).unwrap(),
    )
    .unwrap()
}
