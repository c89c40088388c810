//! Decide center vs. focus by computing the moments `M_j = ∫₀^{2π} P̄₁ʲ Pₙ dθ`
//! exactly, and build guaranteed-center systems from the moment kernel.
//!
//! Run with: `cargo run --example moments_and_verdict`

use centerfocus::center_conditions::{
    center_subspace_basis, corollary_conditions, is_center, moments, SystemSpec,
};
use centerfocus::trig_algebra::{rat_int, HomogPoly, Rational};

fn analyze(label: &str, sys: &SystemSpec) {
    println!("{label}: {sys}");
    let report = moments(sys);
    for (j, m) in report.moments().iter().enumerate() {
        println!("  M_{j} = {m}");
    }
    println!("  verdict: {}", is_center(sys));
    // For n ≤ 6 the verdict also has a closed form: a short list of
    // polynomial conditions in the coefficients, all zero iff center.
    if let Ok(conds) = corollary_conditions(sys) {
        let rendered: Vec<String> = conds.iter().map(Rational::to_string).collect();
        println!("  closed-form conditions: [{}]", rendered.join(", "));
    }
    println!();
}

fn main() {
    // A focus: dr/dθ = r(cosθ·r + (cos²θ − sin²θ)·r²). M₂ = −π/2 ≠ 0.
    let focus = SystemSpec::new(
        2,
        rat_int(1),
        rat_int(0),
        HomogPoly::new(2, [((2, 0), rat_int(1)), ((0, 2), rat_int(-1))]).unwrap(),
    )
    .unwrap();
    analyze("focus example", &focus);

    // A center: Pₙ = xy restricted to the circle is cosθ·sinθ, and every
    // moment against powers of P̄₁ = sinθ integrates to zero.
    let center = SystemSpec::new(
        2,
        rat_int(1),
        rat_int(0),
        HomogPoly::new(2, [((1, 1), rat_int(1))]).unwrap(),
    )
    .unwrap();
    analyze("center example", &center);

    // The center systems for a fixed P₁ form a linear subspace of the Pₙ
    // coefficient space; sample it to manufacture centers in any degree.
    let n = 5;
    let basis = center_subspace_basis(n, &rat_int(2), &rat_int(3)).unwrap();
    println!("center subspace for n = {n}, P₁ = 2x + 3y ({} basis vectors):", basis.len());
    for b in &basis {
        println!("  {b}");
    }
    let mut combo: Vec<((u32, u32), Rational)> = Vec::new();
    for (w, b) in basis.iter().enumerate() {
        for ((i, j), c) in b.terms() {
            combo.push(((i, j), c * rat_int(w as i64 + 1)));
        }
    }
    let pn = HomogPoly::new(n, combo).unwrap();
    let built = SystemSpec::new(n, rat_int(2), rat_int(3), pn).unwrap();
    println!("\nweighted combination of the basis:");
    analyze("constructed system", &built);
}
