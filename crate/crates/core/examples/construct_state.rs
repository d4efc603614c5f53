//! Build a chessboard state and compare its spectrum with `N·⟨V_j|V_j⟩`.
//!
//! cargo run --example construct_state

use boundent::linalg::hermitian_eigen;
use boundent::{build_rho, build_vectors, family_a, DIM};

fn main() -> boundent::Result<()> {
    let params = family_a(1.0, 2.0, 3.0, 1.0, 1.0, 1.0)?;
    println!("params: {params:?}");

    for (j, v) in build_vectors(&params).iter().enumerate() {
        let comps: Vec<String> = v.iter().map(|z| format!("{:+.1}", z.re)).collect();
        println!("V{} = ({})", j + 1, comps.join(", "));
    }

    let state = build_rho(params)?;
    println!("N = {} (1/34 = {})", state.norm_constant, 1.0 / 34.0);

    println!("\nnonzero pattern of rho (9th row and column vanish):");
    for i in 0..DIM {
        let row: String = (0..DIM)
            .map(|j| if state.rho[(i, j)].norm() > 0.0 { '#' } else { '.' })
            .collect();
        println!("  {row}");
    }

    let eig = hermitian_eigen(&state.rho)?;
    let mut formula = state.formula_eigenvalues();
    formula.sort_by(|a, b| b.total_cmp(a));
    println!("\n{:>12} {:>12}", "eigensolver", "N<V,V>");
    for (k, l) in eig.eigenvalues.iter().enumerate() {
        let f = formula.get(k).copied().unwrap_or(0.0);
        println!("{l:>12.9} {f:>12.9}");
    }
    Ok(())
}
