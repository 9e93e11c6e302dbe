//! A small optimal-measurement campaign over random X states, followed by
//! the analysis step.
//!
//! $ cargo run --release --example random_x_campaign -- 2000 3

use xdiscord::cli::{analyze, bloch_points, run_campaign, summarize, Tolerances};

fn main() -> xdiscord::Result<()> {
    let mut args = std::env::args().skip(1);
    let n: usize = args.next().and_then(|s| s.parse().ok()).unwrap_or(500);
    let qubits: u32 = args.next().and_then(|s| s.parse().ok()).unwrap_or(3);

    let tol = Tolerances::default();
    let records = run_campaign(n, qubits, 2024, &tol)?;
    let summary = summarize(&records, qubits, 2024, &tol);
    println!("{}", serde_json::to_string_pretty(&summary)?);

    let stats = analyze(&records);
    for bin in &stats.candidate_gap_histogram {
        let upper = bin.upper.map_or("inf".to_string(), |u| format!("{u:.0e}"));
        println!("gap in [{:.0e}, {upper}): {}", bin.lower, bin.count);
    }
    let off = bloch_points(&records)
        .into_iter()
        .zip(&records)
        .filter(|(_, r)| !r.at_pole_or_equator)
        .map(|(p, _)| p)
        .collect::<Vec<_>>();
    println!("{} samples off the pole and equator", off.len());
    for p in off.iter().take(5) {
        println!("  #{}: theta {:.4}, phi {:.4}", p.index, p.theta, p.phi);
    }
    Ok(())
}
