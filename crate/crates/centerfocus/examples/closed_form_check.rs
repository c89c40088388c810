//! The higher series coefficients have a closed form built from λ-numbers
//! and the iterated integrals `W_j = ∫₀^θ P̃₁ʲ Pₙ`:
//!
//! `a_{n+1+k} = P̃₁^{n+k} + Σ_{j≤k} λ_k^j P̃₁^{k−j} W_j  (+ (n+1)/2·W₀² at k = n)`
//!
//! so the focal value at order n+1+k collapses to `λ_k^k · M̃_k` plus a
//! boundary term, with `M̃_k = ∫₀^{2π} P̃₁ᵏ Pₙ dθ`. This example verifies
//! the identity both as functions of θ and at θ = 2π.
//!
//! Run with: `cargo run --example closed_form_check`

use centerfocus::center_conditions::SystemSpec;
use centerfocus::combinatorics::lambda_closed_for_degree;
use centerfocus::focal_values::{
    closed_form_check, closed_form_coefficient, series_coefficients, tilde_moment,
};
use centerfocus::trig_algebra::{rat, rat_int, HomogPoly};

fn main() {
    // n = 3 with both P₁ coefficients nonzero and a dense P₃.
    let sys = SystemSpec::new(
        3,
        rat_int(1),
        rat(-1, 2),
        HomogPoly::new(
            3,
            [((3, 0), rat_int(1)), ((2, 1), rat(1, 3)), ((0, 3), rat_int(-2))],
        )
        .unwrap(),
    )
    .unwrap();
    let n = sys.n();
    println!("system: {sys}\n");

    // Identity of functions: the closed form reproduces each a_{n+1+k}.
    let table = series_coefficients(&sys, 2 * n + 1);
    for k in 0..=n {
        let direct = table.coefficient(n + 1 + k);
        let closed = closed_form_coefficient(&sys, k).unwrap();
        assert_eq!(*direct, closed);
        println!("a_{}(θ): closed form matches the recurrence", n + 1 + k);
    }

    // Identity of numbers: V_{n+1+k} = λ_k^k·M̃_k (+ (n+1)/2·M̃₀² at k = n).
    println!();
    for k in 0..=n {
        let (series_side, closed_side) = closed_form_check(&sys, k).unwrap();
        assert_eq!(series_side, closed_side);
        let lambda = lambda_closed_for_degree(n, k, k).unwrap();
        println!(
            "V_{} = {}   [λ_{k}^{k} = {}, M̃_{k} = {}]",
            n + 1 + k,
            series_side,
            lambda,
            tilde_moment(&sys, k)
        );
    }

    // Out-of-range orders are rejected: the closed form stops at k = n.
    assert!(closed_form_check(&sys, n + 1).is_err());
    println!("\nclosed form is defined for 0 ≤ k ≤ n; k = {} rejected", n + 1);
}
