//! Entropic and geometric discord of textbook states.
//!
//! $ cargo run --example bell_and_werner

use xdiscord::entropic::{entropic_discord, mutual_information, OptMode};
use xdiscord::geometric::geometric_discord;
use xdiscord::states::{named_state, StateSpec};

fn main() -> xdiscord::Result<()> {
    println!("{:<12} {:>10} {:>10} {:>10}", "state", "I(A:B)", "entropic", "geometric");
    for spec in ["bell1", "bell4", "werner:0", "werner:0.25", "werner:0.5", "werner:1", "ghz:3", "w:3", "mixed:6"] {
        let rho = named_state(&spec.parse::<StateSpec>()?)?;
        let mi = mutual_information(&rho)?;
        let e = entropic_discord(&rho, OptMode::Full)?;
        let g = geometric_discord(&rho)?;
        println!("{spec:<12} {mi:>10.6} {:>10.6} {:>10.6}", e.discord, g.value);
    }

    // werner(z) geometric discord is z^2 / 2
    for z in [0.1, 0.3, 0.7] {
        let g = geometric_discord(&xdiscord::states::named::werner(z)?)?.value;
        println!("werner({z}): D = {g:.12}, z^2/2 = {:.12}", z * z / 2.0);
    }
    Ok(())
}
