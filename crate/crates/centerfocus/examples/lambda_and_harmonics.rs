//! The combinatorial layer: λ-numbers from their defining recurrence vs.
//! the closed form `λ_k^j = (k−j+1)·C(n+j−2, j)`, the generating-series
//! coefficient identity, and the Fourier lines of `P̄₁^{2k} P₁` with their
//! μ-table factorization.
//!
//! Run with: `cargo run --example lambda_and_harmonics`

use centerfocus::combinatorics::{
    binomial, generating_series_coeff, generating_series_coeff_with_tail, harmonic_expansion,
    lambda_closed_for_degree, mu_table, LambdaTable,
};
use centerfocus::trig_algebra::{rat, rat_int, rational_str};

fn main() {
    // λ table for odd degree n = 2m+1; recurrence and closed form agree.
    let m = 2; // n = 5
    let table = LambdaTable::compute(m, 6).unwrap();
    println!("λ_k^j for n = {} (rows k = 0..6):", 2 * m + 1);
    for k in 0..=6 {
        let row: Vec<String> = (0..=k)
            .map(|j| {
                let v = table.get(k, j).unwrap();
                assert_eq!(*v, lambda_closed_for_degree(2 * m + 1, k, j).unwrap());
                rational_str(v)
            })
            .collect();
        println!("  k = {k}: [{}]", row.join(", "));
    }

    // Generating series: [yᵏ](1 + y + … + y^{n−1})ⁿ = C(n+k−1, k) for
    // k < n — and appending any tail of degree ≥ n cannot change it.
    println!("\ngenerating-series coefficients for n = 6:");
    for k in 0..6 {
        let plain = generating_series_coeff(6, k).unwrap();
        let tailed =
            generating_series_coeff_with_tail(6, k, &[rat(7, 3), rat_int(-4)]).unwrap();
        assert_eq!(plain, binomial(5 + u64::from(k), u64::from(k)));
        assert_eq!(plain, tailed);
        println!("  k = {k}: {plain} = C({}, {k}), tail-independent", 5 + k);
    }

    // Harmonic lines: P̄₁^{2k}·P₁ only contains odd harmonics 1, 3, …, 2k+1,
    // and each mode is a μ-multiple of the corresponding diagonal seed.
    let (a1, b1) = (rat_int(2), rat_int(-1));
    println!("\nFourier lines of P̄₁^(2k)·P₁ for P₁ = 2cosθ − sinθ:");
    let mu = mu_table(3, &a1, &b1).unwrap();
    for k in 0..=3u32 {
        let line = harmonic_expansion(k, &a1, &b1).unwrap();
        let modes: Vec<String> = (0..=k)
            .map(|j| {
                let h = 2 * j + 1;
                let (ca, cb) = line.mode(h);
                format!("h={h}: ({}, {})", rational_str(&ca), rational_str(&cb))
            })
            .collect();
        println!("  2k+1 = {}: {}", 2 * k + 1, modes.join("  "));
        // Factorization through the μ table.
        for j in 0..=k {
            let h = 2 * j + 1;
            let (ca, cb) = line.mode(h);
            let seed = harmonic_expansion(j, &a1, &b1).unwrap().mode(h);
            let factor = mu.get(2 * k + 1, h);
            assert_eq!(ca, &factor * &seed.0);
            assert_eq!(cb, &factor * &seed.1);
        }
    }
    println!("  every mode factors as μ_(2k+1)^(2j+1) · (diagonal seed)");
}
