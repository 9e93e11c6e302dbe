//! End-to-end acceptance checks. Runs as a plain binary (no libtest harness)
//! so every criterion prints a PASS/FAIL line whether or not it fails.

use std::f64::consts::{PI, TAU};
use std::process::ExitCode;
use std::time::Instant;

use rand::Rng;
use xdiscord::cli::{run_campaign, summarize, Tolerances};
use xdiscord::entropic::{
    conditional_entropy, conditional_state, conditional_state_direct, entropic_discord, z_vector,
    MeasurementAngles, OptMode, Outcome,
};
use xdiscord::geometric::{
    bloch_decompose, geometric_discord, geometric_discord_x_compact, oracle_min_over_classical, top_eigenpair,
};
use xdiscord::matcore::{hermitian_eigenvalues, kron, pauli, ComplexMatrix};
use xdiscord::states::{
    named, parameter_count, project_to_extended_x, project_to_x, random_unitary, rng_from_seed,
    sample_hs_random_with, DensityMatrix, Structure,
};
use xdiscord::xblocks::eigenvalues_extended_x;

struct Check {
    pass: bool,
    detail: String,
}

type Criterion = (&'static str, fn() -> Check);

fn verdict(pass: bool, detail: impl Into<String>) -> Check {
    Check {
        pass,
        detail: detail.into(),
    }
}

fn campaign_criterion(qubits: u32, threshold: f64) -> Check {
    let tol = Tolerances::default();
    let records = run_campaign(10_000, qubits, 2024, &tol).expect("campaign runs");
    let summary = summarize(&records, qubits, 2024, &tol);
    let bad_order = records
        .iter()
        .filter(|r| r.discord_candidate < r.discord_full - 1e-9 || r.discord_full < -1e-9)
        .count();
    verdict(
        summary.fraction_value_criterion >= threshold && bad_order == 0,
        format!(
            "gap <= 1e-6 fraction {:.4} (need >= {threshold}), max gap {:.3e}, ordering violations {bad_order}",
            summary.fraction_value_criterion, summary.max_candidate_gap
        ),
    )
}

fn criterion_3() -> Check {
    let mut rng = rng_from_seed(303);
    let (mut worst, mut worst_p) = (0.0f64, 0.0f64);
    for k in 0..1000 {
        let d = 2 + k % 3;
        let rho = project_to_extended_x(&sample_hs_random_with(2 * d, &mut rng)).unwrap();
        let a = MeasurementAngles::new(rng.random::<f64>() * PI, rng.random::<f64>() * TAU);
        let mut p = 0.0;
        for sign in [Outcome::Plus, Outcome::Minus] {
            let fast = conditional_state(&rho, a, sign).unwrap();
            let direct = conditional_state_direct(&rho, a, sign).unwrap();
            worst = worst.max(fast.unnormalized.max_abs_diff(&direct.unnormalized));
            p += fast.probability;
        }
        worst_p = worst_p.max((p - 1.0).abs());
    }
    verdict(
        worst <= 1e-12 && worst_p <= 1e-12,
        format!("max entry deviation {worst:.2e}, max |p+ + p- - 1| {worst_p:.2e}"),
    )
}

fn criterion_4() -> Check {
    let mut rng = rng_from_seed(404);
    let dims = [2usize, 3, 4, 5, 6, 8, 11, 16];
    let mut worst = 0.0f64;
    for k in 0..1000 {
        let d = dims[k % dims.len()];
        let rho = project_to_extended_x(&sample_hs_random_with(2 * d, &mut rng)).unwrap();
        let fast = eigenvalues_extended_x(&rho).unwrap();
        let dense = hermitian_eigenvalues(rho.matrix()).unwrap();
        for (a, b) in fast.iter().zip(&dense) {
            worst = worst.max((a - b).abs());
        }
    }
    verdict(worst <= 1e-10, format!("max sorted-spectrum deviation {worst:.2e} up to d = 16"))
}

fn criterion_5() -> Check {
    let mut rng = rng_from_seed(505);
    let (mut above, mut agree) = (0, 0);
    let mut worst_excess = f64::NEG_INFINITY;
    for k in 0..200 {
        let d = 2 + k % 2;
        let rho = sample_hs_random_with(2 * d, &mut rng);
        let closed = geometric_discord(&rho).unwrap().value;
        let oracle = oracle_min_over_classical(&rho, 32, k as u64).unwrap();
        worst_excess = worst_excess.max(closed - oracle);
        if closed > oracle + 1e-9 {
            above += 1;
        }
        if (closed - oracle).abs() <= 1e-6 {
            agree += 1;
        }
    }
    let frac = agree as f64 / 200.0;
    verdict(
        above == 0 && frac >= 0.95,
        format!("closed form above oracle in {above} cases (max excess {worst_excess:.2e}), agreement {frac:.3}"),
    )
}

fn criterion_6() -> Check {
    let mut rng = rng_from_seed(606);
    let mut worst = 0.0f64;
    let mut prefactor_ok = true;
    for _ in 0..1000 {
        let rho = project_to_x(&sample_hs_random_with(4, &mut rng));
        let general = geometric_discord(&rho).unwrap().value;
        let compact = geometric_discord_x_compact(&rho).unwrap();
        worst = worst.max((general - compact).abs());
        let b = bloch_decompose(&rho).unwrap();
        let (k_max, _) = top_eigenpair(&b.correlation_matrix());
        let x_sq: f64 = b.x.iter().map(|v| v * v).sum();
        let quarter = (0.25 * (x_sq + b.t_norm_sq() - k_max)).max(0.0);
        prefactor_ok &= general == quarter;
    }
    verdict(
        worst <= 1e-12 && prefactor_ok,
        format!("max |compact - general| {worst:.2e}, 1/4 prefactor exact: {prefactor_ok}"),
    )
}

fn classical_quantum_sample(rng: &mut impl Rng, d: usize) -> DensityMatrix {
    let r0 = DensityMatrix::single(sample_hs_random_with(d, rng).into_matrix()).unwrap();
    let r1 = DensityMatrix::single(sample_hs_random_with(d, rng).into_matrix()).unwrap();
    let cq = named::classical_quantum(rng.random(), &r0, &r1).unwrap();
    let u = kron(&random_unitary(2, rng), &random_unitary(d, rng));
    cq.conjugate(&u).unwrap()
}

fn criterion_7() -> Check {
    let mut rng = rng_from_seed(707);
    let (mut max_e, mut max_g) = (0.0f64, 0.0f64);
    for k in 0..100 {
        let rho = classical_quantum_sample(&mut rng, 2 + k % 3);
        max_e = max_e.max(entropic_discord(&rho, OptMode::Full).unwrap().discord);
        max_g = max_g.max(geometric_discord(&rho).unwrap().value);
    }
    let mut min_werner = f64::INFINITY;
    for z in [0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0] {
        let w = named::werner(z).unwrap();
        let e = entropic_discord(&w, OptMode::Full).unwrap().discord;
        let g = geometric_discord(&w).unwrap().value;
        min_werner = min_werner.min(e.min(g));
    }
    verdict(
        max_e <= 1e-6 && max_g <= 1e-6 && min_werner >= 0.01,
        format!(
            "classical-quantum max entropic {max_e:.2e}, max geometric {max_g:.2e}; werner(z >= 0.4) min {min_werner:.4}"
        ),
    )
}

fn criterion_8() -> Check {
    let bell = named::bell(1).unwrap();
    let e = entropic_discord(&bell, OptMode::Full).unwrap().discord;
    let g = geometric_discord(&bell).unwrap().value;
    let mut worst_w = 0.0f64;
    for z in [0.25, 0.5, 1.0] {
        let gw = geometric_discord(&named::werner(z).unwrap()).unwrap().value;
        worst_w = worst_w.max((gw - z * z / 2.0).abs());
    }
    verdict(
        (e - 1.0).abs() <= 1e-6 && (g - 0.5).abs() <= 1e-9 && worst_w <= 1e-9,
        format!("bell entropic {e:.12}, geometric {g:.12}; werner max |D - z^2/2| {worst_w:.2e}"),
    )
}

fn criterion_9() -> Check {
    let fixed = [
        (Structure::X, 2, 7),
        (Structure::ExtendedX, 2, 15),
        (Structure::ExtendedX, 3, 19),
        (Structure::ExtendedX, 4, 31),
    ];
    let mut ok = fixed.iter().all(|&(tag, d, n)| parameter_count(tag, d).unwrap() == n);
    for n in 2..=6u32 {
        ok &= parameter_count(Structure::ExtendedX, 1 << (n - 1)).unwrap() == (1 << (n + 2)) - 1;
    }
    verdict(ok, "7, 15, 19, 31 and 2^(N+2) - 1 for N = 2..6")
}

fn criterion_10() -> Check {
    let mut rng = rng_from_seed(1010);
    let (mut lu_e, mut lu_g) = (0.0f64, 0.0f64);
    for k in 0..100 {
        let d = 2 + k % 2;
        let rho = if k % 2 == 0 {
            project_to_x(&sample_hs_random_with(2 * d, &mut rng))
        } else {
            sample_hs_random_with(2 * d, &mut rng)
        };
        let u = kron(&random_unitary(2, &mut rng), &random_unitary(d, &mut rng));
        let moved = rho.conjugate(&u).unwrap();
        let e0 = entropic_discord(&rho, OptMode::Full).unwrap().discord;
        let e1 = entropic_discord(&moved, OptMode::Full).unwrap().discord;
        lu_e = lu_e.max((e0 - e1).abs());
        let g0 = geometric_discord(&rho).unwrap().value;
        let g1 = geometric_discord(&moved).unwrap().value;
        lu_g = lu_g.max((g0 - g1).abs());
    }

    let mut parity = 0.0f64;
    for k in 0..100 {
        let d = 2 + k % 3;
        let rho = sample_hs_random_with(2 * d, &mut rng);
        let a = MeasurementAngles::new(rng.random::<f64>() * PI, rng.random::<f64>() * TAU);
        let s0 = conditional_entropy(&rho, a).unwrap();
        let s1 = conditional_entropy(&rho, a.parity_partner()).unwrap();
        parity = parity.max((s0 - s1).abs());
    }

    let sigma = pauli();
    let id = ComplexMatrix::identity(2);
    let mut identity = 0.0f64;
    for _ in 0..1000 {
        let q: [f64; 4] = std::array::from_fn(|_| rng.random::<f64>() * 2.0 - 1.0);
        let norm = q.iter().map(|v| v * v).sum::<f64>().sqrt();
        let (t, y) = (q[0] / norm, [q[1] / norm, q[2] / norm, q[3] / norm]);
        let z = z_vector(t, y).unwrap();
        let v: [f64; 3] = std::array::from_fn(|_| rng.random::<f64>() * 2.0 - 1.0);
        let dot = |w: [f64; 3]| (0..3).fold(ComplexMatrix::zeros(2, 2), |acc, i| &acc + &sigma[i].scale_real(w[i]));
        let z_sigma = dot(z);
        let v_sigma = dot(v);
        let zv: f64 = (0..3).map(|i| z[i] * v[i]).sum();
        for (sign, a) in [(1.0, &id + &z_sigma), (-1.0, &id - &z_sigma)] {
            let a = a.scale_real(0.5);
            let lhs = &(&a * &v_sigma) * &a;
            identity = identity.max(lhs.max_abs_diff(&a.scale_real(sign * zv)));
        }
    }
    verdict(
        lu_e <= 1e-6 && lu_g <= 1e-9 && parity <= 1e-12 && identity <= 1e-12,
        format!(
            "local unitary: entropic {lu_e:.2e}, geometric {lu_g:.2e}; parity {parity:.2e}; vector identity {identity:.2e}"
        ),
    )
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("1 two-qubit optimal-angle statistic", || campaign_criterion(2, 0.99)),
        ("2 three-qubit optimal-angle statistic", || campaign_criterion(3, 0.985)),
        ("3 block prescription equivalence", criterion_3),
        ("4 structured eigensolver", criterion_4),
        ("5 geometric oracle equivalence", criterion_5),
        ("6 compact formula equivalence", criterion_6),
        ("7 zero-discord class", criterion_7),
        ("8 known values", criterion_8),
        ("9 parameter counts", criterion_9),
        ("10 invariance suite", criterion_10),
    ];
    let mut failures = 0;
    for (name, check) in criteria {
        let start = Instant::now();
        let result = check();
        let status = if result.pass { "PASS" } else { "FAIL" };
        failures += usize::from(!result.pass);
        println!(
            "{status} criterion {name}: {} ({:.1} s)",
            result.detail,
            start.elapsed().as_secs_f64()
        );
    }
    if failures == 0 {
        println!("acceptance: all criteria passed");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: {failures} criteria failed");
        ExitCode::FAILURE
    }
}
