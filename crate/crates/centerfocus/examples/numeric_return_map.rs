//! Cross-check the exact verdicts in floating point: integrate the angular
//! equation over one period with an adaptive Dormand–Prince 5(4) scheme,
//! test `Π(c) ≈ c`, and recover the leading focal value from a
//! least-squares fit of the residuals.
//!
//! Run with: `cargo run --example numeric_return_map`

use centerfocus::center_conditions::{is_center, SystemSpec};
use centerfocus::focal_values::focal_values;
use centerfocus::numeric_oracle::{
    estimate_focal, geometric_ladder, return_map, verify_center_numeric, IntegratorConfig,
};
use centerfocus::trig_algebra::{rat_int, HomogPoly};

fn main() {
    let cfg = IntegratorConfig::default();
    println!("integrator: {} (rel {:.0e}, abs {:.0e})\n", cfg.method, cfg.rel_tol, cfg.abs_tol);

    let focus = SystemSpec::new(
        2,
        rat_int(1),
        rat_int(0),
        HomogPoly::new(2, [((2, 0), rat_int(1)), ((0, 2), rat_int(-1))]).unwrap(),
    )
    .unwrap();
    let center = SystemSpec::new(
        2,
        rat_int(1),
        rat_int(0),
        HomogPoly::new(2, [((1, 1), rat_int(1))]).unwrap(),
    )
    .unwrap();

    for (label, sys) in [("focus", &focus), ("center", &center)] {
        println!("{label}: {sys}");
        for c in [0.02, 0.05, 0.1] {
            let s = return_map(sys, c, &cfg).unwrap();
            println!("  Π({c}) − {c} = {:+.6e}", s.residual);
        }
        let numeric_center = verify_center_numeric(sys, &[0.02, 0.05, 0.1], 1e-9, &cfg).unwrap();
        println!("  numeric center test: {numeric_center}  (symbolic: {})", is_center(sys));
        assert_eq!(numeric_center, is_center(sys).is_center());
        println!();
    }

    // Fit Π(c) − c ≈ Σ Ṽ_k cᵏ on a small-radius ladder; the c⁵ slot
    // recovers V₅ = −π/2 and the slots below it stay at noise level.
    let ladder = geometric_ladder(0.01, 0.05, 10);
    let estimates = estimate_focal(&focus, 7, &ladder, &cfg).unwrap();
    let exact = focal_values(&focus, 7);
    println!("least-squares focal estimates on {} radii in [0.01, 0.05]:", ladder.len());
    for (i, v) in estimates.iter().enumerate() {
        let k = i + 2;
        println!("  Ṽ_{k} = {v:+.6e}   (exact V_{k} = {})", exact.value(k as u32));
    }
    let v5 = estimates[3];
    let target = -std::f64::consts::PI / 2.0;
    println!(
        "\nṼ_5 relative error vs −π/2: {:.2e}",
        ((v5 - target) / target).abs()
    );
}
