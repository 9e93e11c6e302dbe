//! Bloch decomposition, the closed-form geometric discord, the compact
//! two-qubit X formula and the brute-force oracle.
//!
//! $ cargo run --release --example geometric_discord

use xdiscord::geometric::{
    bloch_decompose, geometric_discord, geometric_discord_x_compact, oracle_min_over_classical, operator_basis,
};
use xdiscord::matcore::hs_inner;
use xdiscord::states::{named, project_to_x, sample_hs_random};

fn main() -> xdiscord::Result<()> {
    let basis = operator_basis(3);
    println!("d = 3 basis: {} operators, tr(O_0 O_0) = {}", basis.len(), hs_inner(&basis[0], &basis[0])?);

    let bell = bloch_decompose(&named::bell(1)?)?;
    println!("bell1: x = {:?}, T = {:?}", bell.x, bell.t);

    for d in [2usize, 3, 4] {
        let rho = sample_hs_random(2 * d, 10 + d as u64);
        let g = geometric_discord(&rho)?;
        let oracle = oracle_min_over_classical(&rho, 32, 0)?;
        println!(
            "d = {d}: closed form {:.10}, oracle {:.10}, e = [{:.4}, {:.4}, {:.4}], chi psd: {}",
            g.value, oracle, g.classical.e[0], g.classical.e[1], g.classical.e[2], g.classical.psd_flag
        );
    }

    let x = project_to_x(&sample_hs_random(4, 99));
    println!(
        "two-qubit X state: general {:.15}, compact {:.15}",
        geometric_discord(&x)?.value,
        geometric_discord_x_compact(&x)?
    );
    Ok(())
}
