//! Sampling, JSON round trips, structure classification and X projection.
//!
//! $ cargo run --example state_io_and_structure

use xdiscord::states::{
    classify_structure, parameter_count, project_to_extended_x, project_to_x, read_density_matrix,
    sample_hs_random, write_density_matrix, Structure, DEFAULT_STRUCTURE_TOL,
};

fn main() -> xdiscord::Result<()> {
    let rho = sample_hs_random(6, 42);
    let dir = std::env::temp_dir().join("xdiscord-example");
    std::fs::create_dir_all(&dir)?;
    let path = dir.join("qubit_qutrit.json");
    write_density_matrix(&rho, &path)?;
    let back = read_density_matrix(&path)?;
    println!("round trip exact: {}", back == rho);

    for (label, state) in [
        ("hs random", rho.clone()),
        ("extended-x projection", project_to_extended_x(&rho)?),
        ("x projection", project_to_x(&rho)),
    ] {
        let class = classify_structure(&state, DEFAULT_STRUCTURE_TOL);
        println!("{label:<22} -> {}", class.tag);
    }

    println!("\nreal parameters");
    println!("X, d=2: {}", parameter_count(Structure::X, 2)?);
    for d in 2..=8 {
        println!("extended X, d={d}: {}", parameter_count(Structure::ExtendedX, d)?);
    }
    Ok(())
}
