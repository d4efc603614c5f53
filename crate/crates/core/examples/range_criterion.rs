//! Product vectors in the range: analytic conditions, the explicit witness
//! at `mc = bs`, and the numerical search.
//!
//! cargo run --release --example range_criterion

use boundent::criteria::{range_projector, range_residual};
use boundent::{
    build_rho, degenerate_witness, family_a, product_in_range_search, range_analytic,
    CanonicalParams, RangeSearchConfig,
};

fn main() -> boundent::Result<()> {
    let cfg = RangeSearchConfig::default();
    let cases = [
        ("generic (1,2,3,1,1,1)", family_a(1.0, 2.0, 3.0, 1.0, 1.0, 1.0)?),
        ("all ones", CanonicalParams::real(1.0, 1.0, 1.0, 1.0, 1.0, 1.0, 1.0, 1.0)?),
        ("b't = n'd", CanonicalParams::real(1.0, 2.0, 3.0, 2.0, 1.0, 1.0, 3.0, 1.0)?),
    ];
    for (name, p) in cases {
        let state = build_rho(p)?;
        let search = product_in_range_search(&state, &cfg)?;
        println!("{name}");
        println!("  analytic:        {}", range_analytic(&p));
        println!(
            "  search residual: {:.3e} (restart {}, {} iterations)",
            search.residual, search.restart, search.iterations
        );
        if let Ok(w) = degenerate_witness(&p) {
            let res = range_residual(&range_projector(&state), &w);
            println!("  explicit witness residual: {res:.1e}");
        }
    }
    Ok(())
}
