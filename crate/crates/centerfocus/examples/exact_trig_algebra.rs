//! The exact computational substrate: trigonometric polynomials over Q in
//! the Fourier basis, their products and powers, antiderivatives, and
//! period integrals valued in Q[π].
//!
//! Run with: `cargo run --example exact_trig_algebra`

use centerfocus::trig_algebra::{
    antiderivative_from_zero, circle_restriction, eval_full_period, period_integral, rat, rat_int,
    trig_mul, trig_pow, HomogPoly, PolyTrig, TrigPoly,
};

fn main() {
    // Products re-expand in the Fourier basis: cos²θ = 1/2 + 1/2·cos2θ.
    let cos = TrigPoly::cos(1, rat_int(1));
    println!("cosθ · cosθ = {}", trig_mul(&cos, &cos));

    // Restricting a homogeneous polynomial to the unit circle.
    let h = HomogPoly::new(3, [((2, 1), rat_int(6)), ((0, 3), rat_int(-2))]).unwrap();
    let restricted = circle_restriction(&h);
    println!("({h}) on the circle = {restricted}");

    // Antiderivatives pick up a linear θ term exactly when the integrand
    // has a nonzero mean; the result lives in Q[θ, cos, sin].
    let f = PolyTrig::from_trig(trig_mul(&restricted, &restricted));
    let big_f = antiderivative_from_zero(&f);
    println!("∫₀^θ (…)² = {big_f}");

    // Period integrals are exact multiples of π.
    println!("∫₀^2π (…)² dθ = {}", period_integral(f.pure_trig().as_ref().unwrap()));

    // With θ-polynomial integrands the full-period value is a polynomial
    // in π: evaluate ∫₀^θ of θ·sinθ at θ = 2π.
    let theta_sin = PolyTrig::term(1, TrigPoly::sin(1, rat_int(1)));
    let g = antiderivative_from_zero(&theta_sin);
    println!("G(θ) = ∫₀^θ t·sint dt = {g}");
    println!("G(2π) = {}", eval_full_period(&g));

    // Powers stay exact; here the 6th power of a first harmonic.
    let p = PolyTrig::from_trig(TrigPoly::harmonic_term(1, rat(1, 2), rat(-1, 3)));
    let p6 = trig_pow(&p, 6);
    println!("(cosθ/2 − sinθ/3)⁶ has constant Fourier mode {}", {
        let t = p6.pure_trig().unwrap();
        t.constant_term().clone()
    });
}
