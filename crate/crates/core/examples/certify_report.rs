//! Full certification report as JSON.
//!
//! cargo run --release --example certify_report -- 1 2 3 1 1 1

use boundent::{certify, family_a, RangeSearchConfig};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let args: Vec<f64> = std::env::args()
        .skip(1)
        .map(|a| a.parse())
        .collect::<Result<_, _>>()?;
    let [a, b, c, d, m, n] = match args.as_slice() {
        [] => [1.0, 2.0, 3.0, 1.0, 1.0, 1.0],
        &[a, b, c, d, m, n] => [a, b, c, d, m, n],
        _ => return Err("expected six numbers a b c d m n".into()),
    };
    let report = certify(&family_a(a, b, c, d, m, n)?, &RangeSearchConfig::default())?;
    println!("{}", serde_json::to_string_pretty(&report)?);
    eprintln!("verdict: {} ({})", report.kind(), report.verdict.reason);
    Ok(())
}
