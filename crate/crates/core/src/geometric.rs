//! Geometric (Hilbert-Schmidt distance) discord for qubit-qudit states.
//!
//! States are expanded as
//! `rho = (1/2d)(I + x.sigma (x) I + y.O + sum T_ij sigma_i (x) O_j)` in a
//! traceless basis `O_j` normalized to `tr(O_i O_j) = d delta_ij`, which makes
//! `O = sigma` at `d = 2`. The squared distance to the nearest classical state
//! is `(|x|^2 + |T|^2 - k_max) / 2d` with `k_max` the top eigenvalue of
//! `x x^T + T T^T`.

use nalgebra::{Matrix3, SymmetricEigen};
use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::matcore::{hermitian_eigenvalues, hs_norm_sq, kron, pauli, ComplexMatrix, I, ONE, ZERO};
use crate::optim::{nelder_mead, SimplexTolerance};
use crate::states::{derive_seed, has_x_pattern, rng_from_seed, DensityMatrix, DEFAULT_STRUCTURE_TOL};

/// Smallest eigenvalue a reconstructed classical state may have and still count as PSD.
pub const PSD_TOL: f64 = 1e-12;

const TIE_TOL: f64 = 1e-12;

/// Generalized Gell-Mann matrices scaled to `tr(O_i O_j) = d delta_ij`.
///
/// Order: for each pair `j < k` the symmetric then antisymmetric member, then
/// the diagonal members. At `d = 2` this is exactly `[sigma_x, sigma_y, sigma_z]`.
pub fn operator_basis(d: usize) -> Vec<ComplexMatrix> {
    assert!(d >= 2, "operator basis needs d >= 2");
    let scale = (d as f64 / 2.0).sqrt();
    let mut basis = Vec::with_capacity(d * d - 1);
    for j in 0..d {
        for k in j + 1..d {
            let mut sym = ComplexMatrix::zeros(d, d);
            sym[(j, k)] = ONE * scale;
            sym[(k, j)] = ONE * scale;
            basis.push(sym);
            let mut anti = ComplexMatrix::zeros(d, d);
            anti[(j, k)] = -I * scale;
            anti[(k, j)] = I * scale;
            basis.push(anti);
        }
    }
    for l in 1..d {
        let norm = (2.0 / (l * (l + 1)) as f64).sqrt() * scale;
        let diag: Vec<f64> = (0..d)
            .map(|i| match i.cmp(&l) {
                std::cmp::Ordering::Less => norm,
                std::cmp::Ordering::Equal => -(l as f64) * norm,
                std::cmp::Ordering::Greater => 0.0,
            })
            .collect();
        basis.push(ComplexMatrix::from_real_diagonal(&diag));
    }
    basis
}

/// Local Bloch vectors and correlation tensor of a qubit-qudit state.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BlochDecomposition {
    /// `tr(rho sigma_i (x) I)`.
    pub x: [f64; 3],
    /// `tr(rho I (x) O_j)`.
    pub y: Vec<f64>,
    /// Rows `i = x, y, z` of `tr(rho sigma_i (x) O_j)`.
    pub t: [Vec<f64>; 3],
}

impl BlochDecomposition {
    pub fn d(&self) -> usize {
        ((self.y.len() + 1) as f64).sqrt().round() as usize
    }

    pub fn t_norm_sq(&self) -> f64 {
        self.t.iter().flatten().map(|v| v * v).sum()
    }

    /// `x x^T + T T^T`.
    pub fn correlation_matrix(&self) -> Matrix3<f64> {
        Matrix3::from_fn(|i, j| {
            self.x[i] * self.x[j] + self.t[i].iter().zip(&self.t[j]).map(|(a, b)| a * b).sum::<f64>()
        })
    }
}

/// `tr(A O)` for `d x d` `A`, without forming the product.
fn trace_against(a: &ComplexMatrix, o: &ComplexMatrix) -> num_complex::Complex64 {
    let d = a.rows();
    let mut acc = ZERO;
    for k in 0..d {
        for l in 0..d {
            acc += a[(k, l)] * o[(l, k)];
        }
    }
    acc
}

pub fn bloch_decompose(rho: &DensityMatrix) -> Result<BlochDecomposition> {
    let d = rho.require_qubit_qudit()?;
    let m = rho.matrix();
    let basis = operator_basis(d);
    let sigma = pauli();
    let blocks = [
        [m.block(0, 0, d, d), m.block(0, d, d, d)],
        [m.block(d, 0, d, d), m.block(d, d, d, d)],
    ];
    // tr(rho sigma (x) O) = sum_ab sigma[b][a] tr(rho_ab O)
    let contract = |s: &ComplexMatrix, per_block: &[[num_complex::Complex64; 2]; 2]| {
        let mut acc = ZERO;
        for a in 0..2 {
            for b in 0..2 {
                acc += s[(b, a)] * per_block[a][b];
            }
        }
        acc.re
    };
    let block_traces = |o: &ComplexMatrix| {
        [
            [trace_against(&blocks[0][0], o), trace_against(&blocks[0][1], o)],
            [trace_against(&blocks[1][0], o), trace_against(&blocks[1][1], o)],
        ]
    };
    let identity = block_traces(&ComplexMatrix::identity(d));
    let x = [0, 1, 2].map(|i| contract(&sigma[i], &identity));
    let mut y = Vec::with_capacity(basis.len());
    let mut t: [Vec<f64>; 3] = Default::default();
    for o in &basis {
        let per_block = block_traces(o);
        y.push((per_block[0][0] + per_block[1][1]).re);
        for (i, row) in t.iter_mut().enumerate() {
            row.push(contract(&sigma[i], &per_block));
        }
    }
    Ok(BlochDecomposition { x, y, t })
}

/// Rebuilds the `2d x 2d` operator from its Bloch data.
///
/// No positivity check is made: the input may describe an unphysical operator.
pub fn bloch_reconstruct(decomp: &BlochDecomposition, d: usize) -> Result<DensityMatrix> {
    let n = d * d - 1;
    if decomp.y.len() != n || decomp.t.iter().any(|row| row.len() != n) {
        return Err(Error::DimensionMismatch(format!(
            "Bloch data of length {} for d = {d}",
            decomp.y.len()
        )));
    }
    let basis = operator_basis(d);
    let sigma = pauli();
    let id2 = ComplexMatrix::identity(2);
    let idd = ComplexMatrix::identity(d);
    let mut local_a = ComplexMatrix::identity(2);
    for (s, &c) in sigma.iter().zip(&decomp.x) {
        local_a = &local_a + &s.scale_real(c);
    }
    let mut acc = kron(&local_a, &idd);
    for (j, o) in basis.iter().enumerate() {
        let mut coeff = id2.scale_real(decomp.y[j]);
        for (s, row) in sigma.iter().zip(&decomp.t) {
            coeff = &coeff + &s.scale_real(row[j]);
        }
        acc = &acc + &kron(&coeff, o);
    }
    let m = acc.scale_real(1.0 / (2 * d) as f64);
    Ok(DensityMatrix::from_parts_unchecked(m, 2, d))
}

/// A classical-quantum state `p1 Pi_+ (x) rho_1 + p2 Pi_- (x) rho_2`, in Bloch form.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ClassicalState {
    /// `p1 - p2`.
    pub t: f64,
    /// Bloch direction of the projector `Pi_+`.
    pub e: [f64; 3],
    pub s_plus: Vec<f64>,
    pub s_minus: Vec<f64>,
    #[serde(skip)]
    pub chi: DensityMatrix,
    /// Whether `chi` is positive semidefinite, i.e. a genuine state.
    pub psd_flag: bool,
}

impl ClassicalState {
    /// Assembles `chi` from its parameters.
    pub fn from_parameters(t: f64, e: [f64; 3], s_plus: Vec<f64>, s_minus: Vec<f64>) -> Result<Self> {
        let d = ((s_plus.len() + 1) as f64).sqrt().round() as usize;
        let decomp = BlochDecomposition {
            x: e.map(|c| t * c),
            t: e.map(|c| s_minus.iter().map(|s| c * s).collect()),
            y: s_plus.clone(),
        };
        let chi = bloch_reconstruct(&decomp, d)?;
        let psd_flag = hermitian_eigenvalues(chi.matrix())?
            .last()
            .is_some_and(|&v| v >= -PSD_TOL);
        Ok(Self {
            t,
            e,
            s_plus,
            s_minus,
            chi,
            psd_flag,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GeometricDiscord {
    pub value: f64,
    pub k_max: f64,
    pub classical: ClassicalState,
}

impl GeometricDiscord {
    pub fn direction(&self) -> [f64; 3] {
        self.classical.e
    }
}

/// Sign convention for eigenvectors: the first non-negligible component is positive.
fn canonical_sign(v: [f64; 3]) -> [f64; 3] {
    match v.iter().find(|c| c.abs() > TIE_TOL) {
        Some(&c) if c < 0.0 => v.map(|x| -x),
        _ => v,
    }
}

fn lex_greater(a: &[f64; 3], b: &[f64; 3]) -> bool {
    for (x, y) in a.iter().zip(b) {
        if (x - y).abs() > TIE_TOL {
            return x > y;
        }
    }
    false
}

/// Top eigenpair of a symmetric 3x3 matrix. Among eigenvectors whose
/// eigenvalues tie with the maximum, the lexicographically largest wins.
pub fn top_eigenpair(m: &Matrix3<f64>) -> (f64, [f64; 3]) {
    let eig = SymmetricEigen::new(*m);
    let k_max = eig.eigenvalues.max();
    let tol = TIE_TOL * k_max.abs().max(1.0);
    let mut best: Option<[f64; 3]> = None;
    for (idx, &value) in eig.eigenvalues.iter().enumerate() {
        if k_max - value > tol {
            continue;
        }
        let col = eig.eigenvectors.column(idx);
        let norm = col.norm();
        let v = canonical_sign([col[0] / norm, col[1] / norm, col[2] / norm]);
        if best.is_none_or(|b| lex_greater(&v, &b)) {
            best = Some(v);
        }
    }
    (k_max, best.expect("symmetric 3x3 has an eigenvector"))
}

/// Closed-form geometric discord `(|x|^2 + |T|^2 - k_max) / 2d` with its
/// stationary classical state.
pub fn geometric_discord(rho: &DensityMatrix) -> Result<GeometricDiscord> {
    let decomp = bloch_decompose(rho)?;
    let d = rho.dim_b();
    let x_sq: f64 = decomp.x.iter().map(|v| v * v).sum();
    let (k_max, e) = top_eigenpair(&decomp.correlation_matrix());
    let raw = (x_sq + decomp.t_norm_sq() - k_max) / (2 * d) as f64;
    let value = raw.max(0.0);

    let t = decomp.x.iter().zip(&e).map(|(a, b)| a * b).sum();
    let s_minus = (0..decomp.y.len())
        .map(|j| (0..3).map(|i| decomp.t[i][j] * e[i]).sum())
        .collect();
    let classical = ClassicalState::from_parameters(t, e, decomp.y.clone(), s_minus)?;
    Ok(GeometricDiscord { value, k_max, classical })
}

/// Compact two-qubit X-state formula
/// `D = min(|a|^2, |a|^2/2 + lambda_0 - sqrt(|a|^4 - a^4)/2) / 4`.
///
/// `a` is the upper-left 2x2 block of `T`, `lambda_0 = x_z^2 + T_zz^2`.
pub fn geometric_discord_x_compact(rho: &DensityMatrix) -> Result<f64> {
    if !(rho.dim_a() == 2 && rho.dim_b() == 2) {
        return Err(Error::NotTwoQubit(rho.dim_b()));
    }
    if !has_x_pattern(rho.matrix(), DEFAULT_STRUCTURE_TOL) {
        return Err(Error::NotXState);
    }
    let b = bloch_decompose(rho)?;
    let (a00, a01, a10, a11) = (b.t[0][0], b.t[0][1], b.t[1][0], b.t[1][1]);
    let (d10, d11) = (b.x[2], b.t[2][2]);
    let a_norm_sq = a00 * a00 + a01 * a01 + a10 * a10 + a11 * a11;
    let a_sq = 2.0 * (a00 * a11 - a01 * a10);
    let lambda0 = d10 * d10 + d11 * d11;
    let radicand = a_norm_sq * a_norm_sq - a_sq * a_sq;
    if radicand < -1e-12 {
        return Err(Error::NumericalInput(format!("negative radicand {radicand:e} in compact formula")));
    }
    let root = radicand.max(0.0).sqrt();
    Ok(0.25 * a_norm_sq.min(0.5 * a_norm_sq + lambda0 - 0.5 * root))
}

fn sphere_point(theta: f64, phi: f64) -> [f64; 3] {
    [theta.sin() * phi.cos(), theta.sin() * phi.sin(), theta.cos()]
}

/// Brute-force search for `min ||rho - chi||^2` over classical states.
///
/// For each direction `e` the classical state is built explicitly as
/// `Pi_+ (x) p1 rho_1 + Pi_- (x) p2 rho_2` with the stationary `t`, `s_+`,
/// `s_-`, and the distance is the Hilbert-Schmidt norm of the matrix
/// difference. The outer search over `e` runs a coarse sphere grid plus
/// Nelder-Mead from the best grid point and from `restarts` random
/// directions; restarts are seeded from `seed` and run in parallel.
pub fn oracle_min_over_classical(rho: &DensityMatrix, restarts: usize, seed: u64) -> Result<f64> {
    let d = rho.require_qubit_qudit()?;
    let decomp = bloch_decompose(rho)?;
    let basis = operator_basis(d);
    let sigma = pauli();
    let idd = ComplexMatrix::identity(d);
    let inv = 1.0 / (2 * d) as f64;
    // y.O and the three T_i.O, reused for every direction
    let combine = |coeffs: &[f64]| {
        basis
            .iter()
            .zip(coeffs)
            .fold(ComplexMatrix::zeros(d, d), |acc, (o, &c)| &acc + &o.scale_real(c))
    };
    let y_op = combine(&decomp.y);
    let t_ops: Vec<ComplexMatrix> = decomp.t.iter().map(|row| combine(row)).collect();

    let distance = |theta: f64, phi: f64| -> f64 {
        let e = sphere_point(theta, phi);
        let t: f64 = decomp.x.iter().zip(&e).map(|(a, b)| a * b).sum();
        let mut s_minus_op = ComplexMatrix::zeros(d, d);
        for i in 0..3 {
            s_minus_op = &s_minus_op + &t_ops[i].scale_real(e[i]);
        }
        let mut e_sigma = ComplexMatrix::zeros(2, 2);
        for i in 0..3 {
            e_sigma = &e_sigma + &sigma[i].scale_real(e[i]);
        }
        let id2 = ComplexMatrix::identity(2);
        let pi_plus = (&id2 + &e_sigma).scale_real(0.5);
        let pi_minus = (&id2 - &e_sigma).scale_real(0.5);
        let p1_rho1 = (&(&idd.scale_real(1.0 + t) + &y_op) + &s_minus_op).scale_real(inv);
        let p2_rho2 = (&(&idd.scale_real(1.0 - t) + &y_op) - &s_minus_op).scale_real(inv);
        let chi = &kron(&pi_plus, &p1_rho1) + &kron(&pi_minus, &p2_rho2);
        hs_norm_sq(&(rho.matrix() - &chi))
    };

    let mut starts = Vec::with_capacity(restarts + 1);
    let (n_theta, n_phi) = (16, 32);
    let mut grid_best = (f64::INFINITY, 0.0, 0.0);
    for a in 0..=n_theta {
        let theta = std::f64::consts::PI * a as f64 / n_theta as f64;
        for b in 0..n_phi {
            let phi = 2.0 * std::f64::consts::PI * b as f64 / n_phi as f64;
            let v = distance(theta, phi);
            if v < grid_best.0 {
                grid_best = (v, theta, phi);
            }
        }
    }
    starts.push([grid_best.1, grid_best.2]);
    for r in 0..restarts {
        let mut rng = rng_from_seed(derive_seed(seed, r as u64));
        let z: f64 = rng.random_range(-1.0..=1.0);
        let phi: f64 = rng.random_range(0.0..2.0 * std::f64::consts::PI);
        starts.push([z.acos(), phi]);
    }
    let tol = SimplexTolerance {
        ftol: 1e-15,
        xtol: 1e-10,
        max_iter: 4000,
    };
    let best = starts
        .par_iter()
        .map(|x0| nelder_mead(|p| distance(p[0], p[1]), x0, &[0.2, 0.2], tol).value)
        .reduce(|| grid_best.0, f64::min);
    Ok(best)
}
