//! Complex linear-algebra kernel.
//!
//! A small row-major dense complex matrix plus the handful of operations the
//! discord pipelines need: Hermitian eigenvalues, von Neumann entropy,
//! partial traces over a qubit-qudit split, Hilbert-Schmidt products and
//! Kronecker products. Matrices here are at most a few dozen rows, so the
//! container favours simplicity over BLAS-style tricks.

use std::ops::{Add, Index, IndexMut, Mul, Sub};

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::states::DensityMatrix;

/// Maximum tolerated entry of `|M - M^dagger|` for a matrix to count as Hermitian.
pub const HERMITIAN_TOL: f64 = 1e-10;

/// Eigenvalues of a density matrix in `[EIGEN_FLOOR, 0)` are clipped to zero;
/// anything below the floor is rejected.
pub const EIGEN_FLOOR: f64 = -1e-8;

pub const ZERO: Complex64 = Complex64 { re: 0.0, im: 0.0 };
pub const ONE: Complex64 = Complex64 { re: 1.0, im: 0.0 };
pub const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };

/// Dense complex matrix stored row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Complex64>,
}

impl ComplexMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            entries: vec![ZERO; rows * cols],
        }
    }

    pub fn identity(dim: usize) -> Self {
        Self::from_fn(dim, dim, |i, j| if i == j { ONE } else { ZERO })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        Self { rows, cols, entries }
    }

    /// Builds a matrix from row-major entries.
    pub fn from_row_major(rows: usize, cols: usize, entries: Vec<Complex64>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        Ok(Self { rows, cols, entries })
    }

    /// Builds a matrix from nested rows; all rows must have equal length.
    pub fn from_rows(rows: &[Vec<Complex64>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        Self::from_row_major(rows.len(), cols, rows.concat())
    }

    pub fn from_real_diagonal(diag: &[f64]) -> Self {
        let n = diag.len();
        Self::from_fn(n, n, |i, j| {
            if i == j {
                Complex64::new(diag[i], 0.0)
            } else {
                ZERO
            }
        })
    }

    /// `|psi><psi|` for a (not necessarily normalized) ket.
    pub fn outer(ket: &[Complex64]) -> Self {
        let n = ket.len();
        Self::from_fn(n, n, |i, j| ket[i] * ket[j].conj())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    pub fn row(&self, i: usize) -> &[Complex64] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    pub fn scale(&self, factor: Complex64) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|z| z * factor).collect(),
        }
    }

    pub fn scale_real(&self, factor: f64) -> Self {
        self.scale(Complex64::new(factor, 0.0))
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)]).sum()
    }

    /// Largest entry of `|M - M^dagger|`; infinite for non-square input.
    pub fn hermitian_deviation(&self) -> f64 {
        if !self.is_square() {
            return f64::INFINITY;
        }
        let n = self.rows;
        let mut worst = 0.0f64;
        for i in 0..n {
            for j in i..n {
                worst = worst.max((self[(i, j)] - self[(j, i)].conj()).norm());
            }
        }
        worst
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.hermitian_deviation() <= tol
    }

    /// Copies out the `size x size` sub-block whose top-left corner is `(row0, col0)`.
    pub fn block(&self, row0: usize, col0: usize, rows: usize, cols: usize) -> Self {
        Self::from_fn(rows, cols, |i, j| self[(row0 + i, col0 + j)])
    }

    /// Restriction to the given rows and columns (same index set for both).
    pub fn principal_submatrix(&self, indices: &[usize]) -> Self {
        let n = indices.len();
        Self::from_fn(n, n, |i, j| self[(indices[i], indices[j])])
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        self.entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub(crate) fn to_nalgebra(&self) -> DMatrix<Complex64> {
        DMatrix::from_row_slice(self.rows, self.cols, &self.entries)
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex64;

    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.entries[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.entries[i * self.cols + j]
    }
}

impl Add for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn add(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "shape mismatch in add");
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().zip(&rhs.entries).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn sub(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "shape mismatch in sub");
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().zip(&rhs.entries).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Mul for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn mul(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.cols, rhs.rows, "shape mismatch in mul");
        let mut out = ComplexMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == ZERO {
                    continue;
                }
                for j in 0..rhs.cols {
                    out.entries[i * rhs.cols + j] += a * rhs[(k, j)];
                }
            }
        }
        out
    }
}

/// Pauli matrices in the order x, y, z.
pub fn pauli() -> [ComplexMatrix; 3] {
    let sx = ComplexMatrix::from_row_major(2, 2, vec![ZERO, ONE, ONE, ZERO]).unwrap();
    let sy = ComplexMatrix::from_row_major(2, 2, vec![ZERO, -I, I, ZERO]).unwrap();
    let sz = ComplexMatrix::from_real_diagonal(&[1.0, -1.0]);
    [sx, sy, sz]
}

/// Tensor (Kronecker) product; dimensions multiply.
pub fn kron(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    let (br, bc) = (b.rows, b.cols);
    ComplexMatrix::from_fn(a.rows * br, a.cols * bc, |i, j| {
        a[(i / br, j / bc)] * b[(i % br, j % bc)]
    })
}

/// `tr(M1 M2)`, real part. Real for a Hermitian pair.
pub fn hs_inner(m1: &ComplexMatrix, m2: &ComplexMatrix) -> Result<f64> {
    if m1.rows != m2.cols || m1.cols != m2.rows {
        return Err(Error::DimensionMismatch(format!(
            "hs_inner of {}x{} and {}x{}",
            m1.rows, m1.cols, m2.rows, m2.cols
        )));
    }
    let mut acc = ZERO;
    for i in 0..m1.rows {
        for k in 0..m1.cols {
            acc += m1[(i, k)] * m2[(k, i)];
        }
    }
    Ok(acc.re)
}

/// `tr(M^dagger M)`, the squared Hilbert-Schmidt norm; equals `tr(M^2)` for Hermitian M.
pub fn hs_norm_sq(m: &ComplexMatrix) -> f64 {
    m.entries.iter().map(Complex64::norm_sqr).sum()
}

/// Closed-form eigenvalues of the Hermitian 2x2 `[[a, c], [c*, b]]`, descending.
#[inline]
pub fn eigenvalues_2x2(a: f64, b: f64, c: Complex64) -> [f64; 2] {
    let mean = 0.5 * (a + b);
    let radius = (0.5 * (a - b)).hypot(c.norm());
    [mean + radius, mean - radius]
}

/// Real eigenvalues of a Hermitian matrix in descending order.
///
/// The 2x2 case is closed form; larger matrices go through a dense Hermitian
/// eigensolver.
pub fn hermitian_eigenvalues(m: &ComplexMatrix) -> Result<Vec<f64>> {
    if !m.is_square() {
        return Err(Error::DimensionMismatch(format!(
            "eigenvalues of a non-square {}x{} matrix",
            m.rows, m.cols
        )));
    }
    let deviation = m.hermitian_deviation();
    if deviation > HERMITIAN_TOL {
        return Err(Error::NonHermitian { deviation });
    }
    let mut values = match m.rows {
        0 => Vec::new(),
        1 => vec![m[(0, 0)].re],
        2 => eigenvalues_2x2(m[(0, 0)].re, m[(1, 1)].re, m[(0, 1)]).to_vec(),
        _ => SymmetricEigen::new(m.to_nalgebra()).eigenvalues.iter().copied().collect(),
    };
    sort_descending(&mut values);
    Ok(values)
}

/// Eigenvalues of a small Hermitian matrix by cyclic complex Jacobi rotations.
///
/// Independent of the dense solver behind [`hermitian_eigenvalues`]; used for
/// the 4x4 orbit blocks of extended-X states. Input Hermiticity is assumed.
pub fn jacobi_eigenvalues(m: &ComplexMatrix) -> Vec<f64> {
    let n = m.rows;
    let mut a = m.clone();
    let scale = hs_norm_sq(&a).sqrt().max(f64::MIN_POSITIVE);
    for _sweep in 0..64 {
        let mut off = 0.0;
        for p in 0..n {
            for q in (p + 1)..n {
                off += a[(p, q)].norm_sqr();
            }
        }
        if off.sqrt() <= 1e-17 * scale {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[(p, q)];
                let g = apq.norm();
                if g <= 1e-300 {
                    continue;
                }
                let phase = apq / g;
                let app = a[(p, p)].re;
                let aqq = a[(q, q)].re;
                let tau = (aqq - app) / (2.0 * g);
                let t = tau.signum() / (tau.abs() + (1.0 + tau * tau).sqrt());
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                // J = diag(1, conj(phase)) . [[c, s], [-s, c]] on the (p, q) plane.
                let j_pp = Complex64::new(c, 0.0);
                let j_pq = Complex64::new(s, 0.0);
                let j_qp = phase.conj() * (-s);
                let j_qq = phase.conj() * c;
                for k in 0..n {
                    let akp = a[(k, p)];
                    let akq = a[(k, q)];
                    a[(k, p)] = akp * j_pp + akq * j_qp;
                    a[(k, q)] = akp * j_pq + akq * j_qq;
                }
                for k in 0..n {
                    let apk = a[(p, k)];
                    let aqk = a[(q, k)];
                    a[(p, k)] = j_pp.conj() * apk + j_qp.conj() * aqk;
                    a[(q, k)] = j_pq.conj() * apk + j_qq.conj() * aqk;
                }
                a[(p, q)] = ZERO;
                a[(q, p)] = ZERO;
            }
        }
    }
    let mut values: Vec<f64> = (0..n).map(|i| a[(i, i)].re).collect();
    sort_descending(&mut values);
    values
}

pub(crate) fn sort_descending(values: &mut [f64]) {
    values.sort_by(|a, b| b.total_cmp(a));
}

/// Shannon entropy in bits of a spectrum, after clipping tiny negatives.
///
/// Fails with `InvalidState` if any eigenvalue is below [`EIGEN_FLOOR`].
pub fn entropy_of_spectrum(eigenvalues: &[f64]) -> Result<f64> {
    let mut entropy = 0.0;
    for &lambda in eigenvalues {
        if lambda < EIGEN_FLOOR {
            return Err(Error::InvalidState(format!("negative eigenvalue {lambda:e}")));
        }
        entropy -= xlog2x(lambda);
    }
    Ok(entropy.max(0.0))
}

/// `x log2 x` with the `0 log 0 = 0` convention; non-positive input maps to 0.
#[inline]
pub fn xlog2x(x: f64) -> f64 {
    if x <= 0.0 {
        0.0
    } else {
        x * x.log2()
    }
}

/// Von Neumann entropy in bits.
pub fn von_neumann_entropy(rho: &DensityMatrix) -> Result<f64> {
    entropy_of_spectrum(&hermitian_eigenvalues(rho.matrix())?)
}

/// Which party of a 2 x d state to trace out.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Subsystem {
    A,
    B,
}

/// Partial trace of a bipartite state.
///
/// Tracing out A sums the two diagonal d x d blocks; tracing out B gives the
/// matrix of block traces.
pub fn partial_trace(rho: &DensityMatrix, over: Subsystem) -> Result<DensityMatrix> {
    let (da, db) = (rho.dim_a(), rho.dim_b());
    if da * db != rho.matrix().rows() || da < 2 {
        return Err(Error::DimensionMismatch(format!(
            "partial trace needs a bipartite state, got dims ({da}, {db})"
        )));
    }
    let m = rho.matrix();
    let reduced = match over {
        Subsystem::A => ComplexMatrix::from_fn(db, db, |i, j| {
            (0..da).map(|a| m[(a * db + i, a * db + j)]).sum()
        }),
        Subsystem::B => ComplexMatrix::from_fn(da, da, |a, b| {
            (0..db).map(|k| m[(a * db + k, b * db + k)]).sum()
        }),
    };
    Ok(DensityMatrix::single_unchecked(reduced))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::states::named;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn eigenvalues_of_identity_and_diagonal() {
        assert_eq!(hermitian_eigenvalues(&ComplexMatrix::identity(4)).unwrap(), vec![1.0; 4]);
        let d = ComplexMatrix::from_real_diagonal(&[0.3, 0.7]);
        let ev = hermitian_eigenvalues(&d).unwrap();
        assert!((ev[0] - 0.7).abs() < 1e-15 && (ev[1] - 0.3).abs() < 1e-15);
    }

    #[test]
    fn two_by_two_closed_form_matches_jacobi() {
        let (a, b, z) = (0.4, -0.1, c(0.2, -0.35));
        let m = ComplexMatrix::from_row_major(2, 2, vec![c(a, 0.0), z, z.conj(), c(b, 0.0)]).unwrap();
        let closed = hermitian_eigenvalues(&m).unwrap();
        let expected = [
            (a + b) / 2.0 + (((a - b) / 2.0).powi(2) + z.norm_sqr()).sqrt(),
            (a + b) / 2.0 - (((a - b) / 2.0).powi(2) + z.norm_sqr()).sqrt(),
        ];
        let jac = jacobi_eigenvalues(&m);
        for k in 0..2 {
            assert!((closed[k] - expected[k]).abs() < 1e-15);
            assert!((jac[k] - expected[k]).abs() < 1e-14);
        }
    }

    #[test]
    fn non_hermitian_is_rejected() {
        let m = ComplexMatrix::from_row_major(2, 2, vec![ONE, c(0.6, 0.0), ZERO, ZERO]).unwrap();
        assert!(matches!(hermitian_eigenvalues(&m), Err(Error::NonHermitian { .. })));
    }

    #[test]
    fn jacobi_agrees_with_dense_solver() {
        let h = ComplexMatrix::from_fn(5, 5, |i, j| {
            let (i, j) = (i as f64, j as f64);
            if i == j {
                c(i * 0.3 - 0.5, 0.0)
            } else if i < j {
                c((i + 2.0 * j).sin(), (i * j).cos())
            } else {
                c((j + 2.0 * i).sin(), -(i * j).cos())
            }
        });
        let dense = hermitian_eigenvalues(&h).unwrap();
        let jac = jacobi_eigenvalues(&h);
        for (a, b) in dense.iter().zip(&jac) {
            assert!((a - b).abs() < 1e-12, "{a} vs {b}");
        }
        let trace = h.trace().re;
        assert!((dense.iter().sum::<f64>() - trace).abs() < 1e-10 * 5.0);
    }

    #[test]
    fn entropy_of_reference_states() {
        let pure = DensityMatrix::single(ComplexMatrix::from_real_diagonal(&[1.0, 0.0])).unwrap();
        assert!(von_neumann_entropy(&pure).unwrap().abs() < 1e-15);
        let half = named::maximally_mixed_single(2);
        assert!((von_neumann_entropy(&half).unwrap() - 1.0).abs() < 1e-14);
        let eighth = named::maximally_mixed_single(8);
        assert!((von_neumann_entropy(&eighth).unwrap() - 3.0).abs() < 1e-13);
    }

    #[test]
    fn entropy_clips_tiny_negatives_and_rejects_large_ones() {
        assert_eq!(entropy_of_spectrum(&[1.0, -1e-10]).unwrap(), 0.0);
        assert!(matches!(
            entropy_of_spectrum(&[1.0, -1e-6]),
            Err(Error::InvalidState(_))
        ));
    }

    #[test]
    fn partial_traces_of_product_and_bell() {
        let rho_a = DensityMatrix::single(ComplexMatrix::from_rows(&[
            vec![c(0.7, 0.0), c(0.1, 0.2)],
            vec![c(0.1, -0.2), c(0.3, 0.0)],
        ]).unwrap())
        .unwrap();
        let rho_b = DensityMatrix::single(ComplexMatrix::from_real_diagonal(&[0.5, 0.25, 0.25])).unwrap();
        let prod = named::product(&rho_a, &rho_b).unwrap();
        let tb = partial_trace(&prod, Subsystem::A).unwrap();
        let ta = partial_trace(&prod, Subsystem::B).unwrap();
        assert!(tb.matrix().max_abs_diff(rho_b.matrix()) < 1e-15);
        assert!(ta.matrix().max_abs_diff(rho_a.matrix()) < 1e-15);

        let bell = named::bell(1).unwrap();
        let half = partial_trace(&bell, Subsystem::A).unwrap();
        assert!(half.matrix().max_abs_diff(&ComplexMatrix::identity(2).scale_real(0.5)) < 1e-15);
    }

    #[test]
    fn hilbert_schmidt_products() {
        let [sx, sy, _] = pauli();
        assert_eq!(hs_inner(&sx, &sy).unwrap(), 0.0);
        assert!((hs_norm_sq(&ComplexMatrix::identity(2).scale_real(0.5)) - 0.5).abs() < 1e-15);
        let pure = ComplexMatrix::outer(&[c(0.6, 0.0), c(0.0, 0.8)]);
        assert!((hs_norm_sq(&pure) - 1.0).abs() < 1e-15);
        assert!(hs_inner(&pure, &ComplexMatrix::identity(3)).is_err());
    }

    #[test]
    fn kron_reference_products() {
        let i2 = ComplexMatrix::identity(2);
        assert_eq!(kron(&i2, &i2), ComplexMatrix::identity(4));
        let p0 = ComplexMatrix::from_real_diagonal(&[1.0, 0.0]);
        assert_eq!(kron(&p0, &i2), ComplexMatrix::from_real_diagonal(&[1.0, 1.0, 0.0, 0.0]));
        let [_, _, sz] = pauli();
        assert_eq!(kron(&sz, &sz), ComplexMatrix::from_real_diagonal(&[1.0, -1.0, -1.0, 1.0]));
    }
}
