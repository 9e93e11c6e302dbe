//! Post-measurement states from the block prescription versus explicit
//! projector products, and the parity symmetry of the conditional entropy.
//!
//! $ cargo run --example conditional_states

use std::f64::consts::PI;

use xdiscord::entropic::{
    conditional_entropy, conditional_state, conditional_state_direct, measurement_projector, MeasurementAngles,
    Outcome,
};
use xdiscord::states::{project_to_extended_x, sample_hs_random};

fn main() -> xdiscord::Result<()> {
    let rho = project_to_extended_x(&sample_hs_random(8, 3))?;
    let angles = MeasurementAngles::new(PI / 3.0, PI / 5.0);
    println!("A+ = {:?}", measurement_projector(angles, Outcome::Plus).entries());

    for sign in [Outcome::Plus, Outcome::Minus] {
        let block = conditional_state(&rho, angles, sign)?;
        let direct = conditional_state_direct(&rho, angles, sign)?;
        println!(
            "{sign:?}: p = {:.12}, max |block - direct| = {:.2e}",
            block.probability,
            block.unnormalized.max_abs_diff(&direct.unnormalized)
        );
    }

    let s = conditional_entropy(&rho, angles)?;
    let s_parity = conditional_entropy(&rho, angles.parity_partner())?;
    println!("S(theta, phi) = {s:.12}");
    println!("S(pi - theta, pi + phi) = {s_parity:.12}");
    Ok(())
}
