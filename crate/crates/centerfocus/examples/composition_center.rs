//! Factor a center's nonlinearity through the first harmonic:
//! `Pₙ = P₁ · Σ cᵢ P̄₁^{pᵢ}` with even powers for odd n and odd powers for
//! even n. The factorization exists exactly when the system is a center.
//!
//! Run with: `cargo run --example composition_center`

use centerfocus::center_conditions::{
    center_subspace_basis, composition_factor, is_center, SystemSpec,
};
use centerfocus::trig_algebra::{rat_int, rational_str, HomogPoly, Rational};

fn show(label: &str, sys: &SystemSpec) {
    println!("{label}: {sys}");
    println!("  verdict: {}", is_center(sys));
    match composition_factor(sys) {
        Ok(Some(factor)) => {
            let terms: Vec<String> = factor
                .powers()
                .iter()
                .zip(factor.coeffs())
                .map(|(p, c)| format!("{}·q^{p}", rational_str(c)))
                .collect();
            println!("  Pₙ(θ) = P₁(θ) · ({})   with q = P̄₁", terms.join(" + "));
            // The factorization is exact: reconstruct and compare.
            assert_eq!(factor.reconstruct(sys), sys.pn_trig());
            println!("  reconstruction matches Pₙ exactly");
        }
        Ok(None) => println!("  no factorization (focus)"),
        Err(e) => println!("  not applicable: {e}"),
    }
    println!();
}

fn main() {
    // xy on the circle is cosθ·sinθ = P₁·P̄₁ for P₁ = cosθ: a center.
    let center = SystemSpec::new(
        2,
        rat_int(1),
        rat_int(0),
        HomogPoly::new(2, [((1, 1), rat_int(1))]).unwrap(),
    )
    .unwrap();
    show("quadratic center", &center);

    // x² − y² cannot be written as cosθ·(odd polynomial in sinθ): a focus.
    let focus = SystemSpec::new(
        2,
        rat_int(1),
        rat_int(0),
        HomogPoly::new(2, [((2, 0), rat_int(1)), ((0, 2), rat_int(-1))]).unwrap(),
    )
    .unwrap();
    show("quadratic focus", &focus);

    // Every kernel-built center factors, in any degree; here n = 4 with a
    // generic P₁ (odd powers 1, 3 of P̄₁ appear).
    let basis = center_subspace_basis(4, &rat_int(1), &rat_int(-2)).unwrap();
    let mut combo: Vec<((u32, u32), Rational)> = Vec::new();
    for (w, b) in basis.iter().enumerate() {
        for ((i, j), c) in b.terms() {
            combo.push(((i, j), c * rat_int(2 * w as i64 - 3)));
        }
    }
    let quartic = SystemSpec::new(
        4,
        rat_int(1),
        rat_int(-2),
        HomogPoly::new(4, combo).unwrap(),
    )
    .unwrap();
    show("quartic center from the moment kernel", &quartic);
}
