//! Expand the return map `Π(c) = c + Σ_{k≥2} V_k cᵏ` of the angular
//! equation exactly: the series coefficients `a_k(θ)` solve
//! `a_k′ = P₁·[cᵏ](S²) + Pₙ·[cᵏ](S^{n+1})` with `a_k(0) = 0`, and the
//! focal values are `V_k = a_k(2π)`.
//!
//! Run with: `cargo run --example focal_series`

use centerfocus::center_conditions::{is_center, moments, SystemSpec};
use centerfocus::focal_values::{focal_values, focal_values_from_series, series_coefficients};
use centerfocus::trig_algebra::{rat_int, trig_pow, HomogPoly, PolyTrig};

fn main() {
    // The running focus example: n = 2, P₁ = x, P₂ = x² − y².
    let sys = SystemSpec::new(
        2,
        rat_int(1),
        rat_int(0),
        HomogPoly::new(2, [((2, 0), rat_int(1)), ((0, 2), rat_int(-1))]).unwrap(),
    )
    .unwrap();
    println!("system: {sys}\n");

    // The functions a_k(θ): exact polynomials in θ, cos, sin.
    let table = series_coefficients(&sys, 8);
    for k in 1..=table.order() {
        println!("a_{k}(θ) = {}", table.coefficient(k));
    }

    // Below the coupling order the series only sees P₁: a_k = P̃₁^{k−1}.
    let tilde = PolyTrig::from_trig(sys.p1_tilde());
    for k in 1..=sys.n() {
        assert_eq!(*table.coefficient(k), trig_pow(&tilde, k - 1));
    }
    println!("\na_k = P̃₁^(k−1) for k ≤ n, with P̃₁ = {tilde}");

    // Focal values: evaluate at θ = 2π.
    let report = focal_values_from_series(&table);
    println!("\nfocal values:");
    for (i, v) in report.values().iter().enumerate() {
        println!("  V_{} = {}", i + 2, v);
    }
    match report.first_nonzero() {
        Some(k) => println!("  first nonzero: V_{k} = {}", report.value(k)),
        None => println!("  all zero up to the truncation order"),
    }

    // The verdicts agree: the first nonzero focal value sits at order
    // n + 1 + j*, where j* indexes the first nonzero moment.
    let verdict = is_center(&sys);
    let j_star = moments(&sys).first_nonzero().unwrap();
    println!("\nmoment verdict: {verdict}");
    println!(
        "first focal order predicted from moments: n + 1 + j* = {}",
        sys.n() as usize + 1 + j_star
    );
    assert_eq!(report.first_nonzero(), Some((sys.n() as usize + 1 + j_star) as u32));

    // A center has an identically zero tail, at every truncation order.
    let center = SystemSpec::new(
        2,
        rat_int(1),
        rat_int(0),
        HomogPoly::new(2, [((1, 1), rat_int(1))]).unwrap(),
    )
    .unwrap();
    let center_report = focal_values(&center, 10);
    assert!(center_report.all_zero());
    println!("\ncenter example: all focal values through V_10 vanish");
}
