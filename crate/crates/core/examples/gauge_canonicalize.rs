//! Remove the local phase freedom from random complex parameters.
//!
//! cargo run --example gauge_canonicalize

use boundent::chessboard::ParamSet;
use boundent::sampling::{raw_params, rng_from_seed};
use boundent::{build_rho, canonicalize, invariants};

fn main() -> boundent::Result<()> {
    let mut rng = rng_from_seed(2024);
    let raw = raw_params(&mut rng);
    let (canon, gauge) = canonicalize(&raw)?;

    println!("raw:       {:?}", raw.to_array());
    println!("canonical: {canon:?}");
    println!("alpha {:?}\nbeta  {:?}\ngamma {:?}", gauge.alpha, gauge.beta, gauge.gamma);

    let (r1, r2) = invariants(&raw)?;
    let (c1, c2) = invariants(&canon)?;
    println!("cm/bs:      {r1:.6} -> {c1:.6}");
    println!("b*t/(n*d):  {r2:.6} -> {c2:.6}");

    let u = gauge.local_unitary();
    let moved = &(&u * &build_rho(raw)?.rho) * &u.adjoint();
    let dist = (&moved - &build_rho(canon)?.rho).frobenius_norm();
    println!("||(Ua x Ub) rho_raw (Ua x Ub)^† - rho_canonical||_F = {dist:.1e}");

    let (again, g2) = canonicalize(&canon.raw())?;
    println!("idempotent: {}", again == canon && g2.gamma == [0.0; 4]);
    Ok(())
}
