//! Candidate, theta-only and full searches on random X states.
//!
//! $ cargo run --release --example optimization_modes

use std::time::Instant;

use xdiscord::entropic::{entropic_discord, entropic_discord_with, phi_independence_check, DiscordOptions, OptMode};
use xdiscord::states::{named, project_to_x, sample_hs_random};

fn main() -> xdiscord::Result<()> {
    println!("{:>4} {:>10} {:>10} {:>10} {:>12} {:>8}", "seed", "candidate", "theta", "full", "gap", "phi-free");
    for seed in 0..8 {
        let rho = project_to_x(&sample_hs_random(8, seed));
        let mut row = Vec::new();
        for mode in [OptMode::Candidate, OptMode::ThetaOnly, OptMode::Full] {
            row.push(entropic_discord(&rho, mode)?);
        }
        println!(
            "{seed:>4} {:>10.6} {:>10.6} {:>10.6} {:>12.3e} {:>8}",
            row[0].discord,
            row[1].discord,
            row[2].discord,
            row[2].candidate_gap.unwrap_or(0.0),
            phi_independence_check(&rho)?
        );
    }

    // GHZ has a single nonzero off-diagonal family, so phi drops out
    let ghz = named::ghz(3)?;
    let options = DiscordOptions {
        mode: OptMode::Candidate,
        escalate: true,
    };
    let start = Instant::now();
    let r = entropic_discord_with(&ghz, options)?;
    println!("\nghz3 with escalation: mode {}, discord {:.6}, {:?}", r.mode, r.discord, start.elapsed());
    Ok(())
}
