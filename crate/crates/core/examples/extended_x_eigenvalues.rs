//! Orbit decomposition of extended-X states and the block eigensolver
//! against the dense one.
//!
//! $ cargo run --release --example extended_x_eigenvalues

use std::hint::black_box;
use std::time::Instant;

use xdiscord::matcore::hermitian_eigenvalues;
use xdiscord::states::{project_to_extended_x, rng_from_seed, sample_hs_random_with};
use xdiscord::xblocks::{eigenvalues_extended_x, extended_x_orbits};

fn main() -> xdiscord::Result<()> {
    for d in [2, 3, 4, 5] {
        println!("d = {d}: orbits {:?}", extended_x_orbits(d).one_based());
    }

    let mut rng = rng_from_seed(1);
    println!("\n{:>4} {:>12} {:>12} {:>8} {:>10}", "d", "block (us)", "dense (us)", "speedup", "max diff");
    for d in [2usize, 4, 8, 16, 32] {
        let states: Vec<_> = (0..200)
            .map(|_| project_to_extended_x(&sample_hs_random_with(2 * d, &mut rng)))
            .collect::<Result<_, _>>()?;

        let start = Instant::now();
        let fast: Vec<_> = states.iter().map(|s| black_box(eigenvalues_extended_x(s))).collect::<Result<_, _>>()?;
        let t_fast = start.elapsed().as_secs_f64() / states.len() as f64;

        let start = Instant::now();
        let dense: Vec<_> = states.iter().map(|s| black_box(hermitian_eigenvalues(s.matrix()))).collect::<Result<_, _>>()?;
        let t_dense = start.elapsed().as_secs_f64() / states.len() as f64;

        let diff = fast
            .iter()
            .zip(&dense)
            .flat_map(|(a, b)| a.iter().zip(b).map(|(x, y)| (x - y).abs()))
            .fold(0.0, f64::max);
        println!(
            "{d:>4} {:>12.2} {:>12.2} {:>7.1}x {diff:>10.2e}",
            t_fast * 1e6,
            t_dense * 1e6,
            t_dense / t_fast
        );
    }
    Ok(())
}
