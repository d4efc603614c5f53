//! Partial-transpose positivity across the two sub-families.
//!
//! Family A (`s = ac/n`, `t = ad/m`) has `σ = ρ`. Family B keeps the
//! moduli but rotates the phases of `s` and `t`; the scan below prints the
//! smallest eigenvalue of `σ` over a grid of phases.
//!
//! cargo run --example ppt_families

use std::f64::consts::PI;

use boundent::{build_rho, family_a, family_b, ppt_min_eigenvalue};

fn main() -> boundent::Result<()> {
    let base = (1.0, 2.0, 3.0, 1.0, 1.0, 1.0);
    let (a, b, c, d, m, n) = base;

    let state = build_rho(family_a(a, b, c, d, m, n)?)?;
    let dist = (&state.partial_transpose() - &state.rho).frobenius_norm();
    println!("family A: ||sigma - rho||_F = {dist:.1e}, min eig sigma = {:.1e}", ppt_min_eigenvalue(&state)?);

    let steps = 8;
    let phases: Vec<f64> = (0..=steps).map(|k| -PI + 2.0 * PI * k as f64 / steps as f64).collect();
    println!("\nfamily B: min eigenvalue of sigma, rows phi_s, columns phi_t");
    print!("{:>8}", "");
    for pt in &phases {
        print!("{pt:>9.3}");
    }
    println!();
    for ps in &phases {
        print!("{ps:>8.3}");
        for pt in &phases {
            let st = build_rho(family_b(a, b, c, d, m, n, *ps, *pt)?)?;
            print!("{:>9.4}", ppt_min_eigenvalue(&st)?);
        }
        println!();
    }

    let mut doubled = family_a(a, b, c, d, m, n)?;
    doubled.s *= 2.0;
    println!(
        "\n|s| doubled: min eig sigma = {:.4}",
        ppt_min_eigenvalue(&build_rho(doubled)?)?
    );
    Ok(())
}
