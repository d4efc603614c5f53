//! Seeded sampling and a one-parameter sweep, written as CSV.
//!
//! cargo run --release --example sample_sweep

use boundent::cli::{sample_rows, sweep_grid, sweep_point, SweepVar};
use boundent::criteria::certify_with;
use boundent::sampling::Family;
use boundent::{RangeSearchConfig, Tolerances, VerdictKind};

fn main() -> boundent::Result<()> {
    let cfg = RangeSearchConfig {
        restarts: 20,
        seed: 7,
        ..RangeSearchConfig::default()
    };
    let tol = Tolerances::default();

    for family in [Family::A, Family::B, Family::Raw] {
        let rows = sample_rows(family, 50, &cfg, &tol)?;
        let count = |k: VerdictKind| rows.iter().filter(|r| r.verdict == k).count();
        println!(
            "family {family}: {} bound, {} NPT, {} inconclusive of {}",
            count(VerdictKind::BoundEntangled),
            count(VerdictKind::NptEntangled),
            count(VerdictKind::Inconclusive),
            rows.len()
        );
    }

    println!("\nabs_s,pt_min_eigenvalue,verdict");
    for x in sweep_grid(1.5, 4.5, 13) {
        let p = sweep_point(SweepVar::AbsS, [1.0, 2.0, 3.0, 1.0, 1.0, 1.0], [0.0, 0.0], x)?;
        let rep = certify_with(p, &cfg, &tol)?;
        println!("{x},{},{}", rep.pt_min_eigenvalue, rep.kind());
    }
    Ok(())
}
