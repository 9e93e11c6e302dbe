//! Bipartite density matrices: validation, structure classification, random
//! sampling under the Hilbert-Schmidt measure and projection onto X states.

mod io;
pub mod named;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};
use crate::matcore::{hermitian_eigenvalues, ComplexMatrix, EIGEN_FLOOR, HERMITIAN_TOL, ZERO};

pub use io::{read_density_matrix, write_density_matrix, DensityMatrixJson};
pub use named::{named_state, StateSpec};

/// Tolerance on `|tr(rho) - 1|`.
pub const TRACE_TOL: f64 = 1e-10;

/// Default entry-magnitude threshold for structure classification.
pub const DEFAULT_STRUCTURE_TOL: f64 = 1e-12;

/// Validated density matrix on a `dim_a x dim_b` bipartite space.
///
/// Bipartite states in this crate have `dim_a = 2`; single-system states
/// (reduced or conditional states) carry `dim_a = 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    dim_a: usize,
    dim_b: usize,
    matrix: ComplexMatrix,
}

impl DensityMatrix {
    /// Validates a `2d x 2d` matrix as a qubit-qudit state.
    pub fn new(matrix: ComplexMatrix, dim_b: usize) -> Result<Self> {
        Self::with_dims(matrix, 2, dim_b)
    }

    pub fn with_dims(matrix: ComplexMatrix, dim_a: usize, dim_b: usize) -> Result<Self> {
        if !matrix.is_square() || matrix.rows() != dim_a * dim_b || dim_a == 0 || dim_b == 0 {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} matrix for dims ({dim_a}, {dim_b})",
                matrix.rows(),
                matrix.cols()
            )));
        }
        let deviation = matrix.hermitian_deviation();
        if deviation > HERMITIAN_TOL {
            return Err(Error::NonHermitian { deviation });
        }
        let trace = matrix.trace().re;
        if (trace - 1.0).abs() > TRACE_TOL {
            return Err(Error::TraceNotOne { trace });
        }
        let min_eigenvalue = *hermitian_eigenvalues(&matrix)?.last().unwrap_or(&0.0);
        if min_eigenvalue < EIGEN_FLOOR {
            return Err(Error::NotPsd { min_eigenvalue });
        }
        Ok(Self { dim_a, dim_b, matrix })
    }

    /// Validates a single-system state (`dim_a = 1`).
    pub fn single(matrix: ComplexMatrix) -> Result<Self> {
        let n = matrix.rows();
        Self::with_dims(matrix, 1, n)
    }

    pub(crate) fn single_unchecked(matrix: ComplexMatrix) -> Self {
        let n = matrix.rows();
        Self { dim_a: 1, dim_b: n, matrix }
    }

    pub(crate) fn from_parts_unchecked(matrix: ComplexMatrix, dim_a: usize, dim_b: usize) -> Self {
        debug_assert_eq!(matrix.rows(), dim_a * dim_b);
        Self { dim_a, dim_b, matrix }
    }

    pub fn dim_a(&self) -> usize {
        self.dim_a
    }

    pub fn dim_b(&self) -> usize {
        self.dim_b
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.matrix
    }

    pub fn is_bipartite_qubit(&self) -> bool {
        self.dim_a == 2 && self.dim_b >= 2
    }

    pub(crate) fn require_qubit_qudit(&self) -> Result<usize> {
        if self.is_bipartite_qubit() {
            Ok(self.dim_b)
        } else {
            Err(Error::DimensionMismatch(format!(
                "expected a 2 x d state, got dims ({}, {})",
                self.dim_a, self.dim_b
            )))
        }
    }

    /// `U rho U^dagger` for a unitary on the full space.
    pub fn conjugate(&self, unitary: &ComplexMatrix) -> Result<Self> {
        if unitary.rows() != self.dim() || !unitary.is_square() {
            return Err(Error::DimensionMismatch("unitary size".into()));
        }
        let m = &(unitary * &self.matrix) * &unitary.adjoint();
        Ok(Self::from_parts_unchecked(hermitize(&m), self.dim_a, self.dim_b))
    }
}

/// `(M + M^dagger) / 2`, used to wash out rounding after products.
pub(crate) fn hermitize(m: &ComplexMatrix) -> ComplexMatrix {
    (m + &m.adjoint()).scale_real(0.5)
}

/// Validates `matrix` as a `2 x dim_b` state.
pub fn validate(matrix: ComplexMatrix, dim_b: usize) -> Result<DensityMatrix> {
    DensityMatrix::new(matrix, dim_b)
}

/// Sparsity class of a bipartite state.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Structure {
    General,
    X,
    ExtendedX,
}

impl std::fmt::Display for Structure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Structure::General => "general",
            Structure::X => "x",
            Structure::ExtendedX => "extended_x",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StructureClass {
    pub tag: Structure,
    pub tolerance: f64,
}

/// True when every entry off the main and anti-diagonal is at most `tol`.
pub fn has_x_pattern(m: &ComplexMatrix, tol: f64) -> bool {
    let n = m.rows();
    (0..n).all(|i| (0..n).all(|j| j == i || j == n - 1 - i || m[(i, j)].norm() <= tol))
}

/// True when each of the four `d x d` blocks has X sparsity.
pub fn has_extended_x_pattern(m: &ComplexMatrix, d: usize, tol: f64) -> bool {
    let n = m.rows();
    if n != 2 * d {
        return false;
    }
    (0..n).all(|i| {
        (0..n).all(|j| {
            let (bi, bj) = (i % d, j % d);
            bj == bi || bj == d - 1 - bi || m[(i, j)].norm() <= tol
        })
    })
}

pub fn classify_structure(rho: &DensityMatrix, tol: f64) -> StructureClass {
    let m = rho.matrix();
    let tag = if has_x_pattern(m, tol) {
        Structure::X
    } else if rho.is_bipartite_qubit() && has_extended_x_pattern(m, rho.dim_b(), tol) {
        Structure::ExtendedX
    } else {
        Structure::General
    };
    StructureClass { tag, tolerance: tol }
}

/// Number of independent real parameters of the X / extended-X family at qudit dimension `d`.
pub fn parameter_count(tag: Structure, d: usize) -> Result<usize> {
    match tag {
        Structure::X => Ok(4 * d - 1),
        Structure::ExtendedX if d.is_multiple_of(2) => Ok(8 * d - 1),
        Structure::ExtendedX => Ok(8 * d - 5),
        Structure::General => Err(Error::UnsupportedTag),
    }
}

/// Zeroes every entry off the main and anti-diagonal.
///
/// This is the channel `sum_i E_i rho E_i` with diagonal 0/1 masks pairing
/// index `i` with `n - 1 - i`; it is trace- and positivity-preserving.
pub fn project_to_x(rho: &DensityMatrix) -> DensityMatrix {
    let m = rho.matrix();
    let n = m.rows();
    let masked = ComplexMatrix::from_fn(n, n, |i, j| {
        if j == i || j == n - 1 - i {
            m[(i, j)]
        } else {
            ZERO
        }
    });
    DensityMatrix::from_parts_unchecked(masked, rho.dim_a, rho.dim_b)
}

/// Zeroes every entry outside the block-X pattern of a 2 x d state.
///
/// The kept entries form an equivalence relation on indices, so the mask is
/// PSD and the map preserves positivity.
pub fn project_to_extended_x(rho: &DensityMatrix) -> Result<DensityMatrix> {
    let d = rho.require_qubit_qudit()?;
    let m = rho.matrix();
    let masked = ComplexMatrix::from_fn(2 * d, 2 * d, |i, j| {
        let (bi, bj) = (i % d, j % d);
        if bj == bi || bj == d - 1 - bi {
            m[(i, j)]
        } else {
            ZERO
        }
    });
    Ok(DensityMatrix::from_parts_unchecked(masked, 2, d))
}

/// SplitMix64 finalizer.
pub fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Per-sample seed derived from a master seed and a sample index.
pub fn derive_seed(master: u64, index: u64) -> u64 {
    splitmix64(master ^ splitmix64(index))
}

pub fn rng_from_seed(seed: u64) -> ChaCha12Rng {
    ChaCha12Rng::seed_from_u64(seed)
}

fn complex_gaussian<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

pub fn ginibre<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> ComplexMatrix {
    ComplexMatrix::from_fn(dim, dim, |_, _| complex_gaussian(rng))
}

/// Hilbert-Schmidt random state `G G^dagger / tr(G G^dagger)` from a square Ginibre `G`.
///
/// Even dimensions come back as `2 x dim/2` bipartite states.
pub fn sample_hs_random_with<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> DensityMatrix {
    assert!(dim >= 2, "sample dimension must be at least 2");
    let g = ginibre(dim, rng);
    let ggd = &g * &g.adjoint();
    let trace = ggd.trace().re;
    let m = hermitize(&ggd.scale_real(1.0 / trace));
    if dim.is_multiple_of(2) {
        DensityMatrix::from_parts_unchecked(m, 2, dim / 2)
    } else {
        DensityMatrix::single_unchecked(m)
    }
}

pub fn sample_hs_random(dim: usize, seed: u64) -> DensityMatrix {
    sample_hs_random_with(dim, &mut rng_from_seed(seed))
}

/// Haar-random unitary: Gram-Schmidt on the columns of a Ginibre matrix.
pub fn random_unitary<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> ComplexMatrix {
    let g = ginibre(dim, rng);
    let mut cols: Vec<Vec<Complex64>> = Vec::with_capacity(dim);
    for j in 0..dim {
        let mut v: Vec<Complex64> = (0..dim).map(|i| g[(i, j)]).collect();
        for _pass in 0..2 {
            for u in &cols {
                let proj: Complex64 = u.iter().zip(&v).map(|(a, b)| a.conj() * b).sum();
                for (vi, ui) in v.iter_mut().zip(u) {
                    *vi -= proj * ui;
                }
            }
        }
        let norm = v.iter().map(Complex64::norm_sqr).sum::<f64>().sqrt();
        v.iter_mut().for_each(|z| *z /= norm);
        cols.push(v);
    }
    ComplexMatrix::from_fn(dim, dim, |i, j| cols[j][i])
}
