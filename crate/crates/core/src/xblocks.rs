//! Structured eigenvalue fast paths for X and extended-X matrices.
//!
//! An extended-X state on `2 x d` only couples indices within the orbits
//! `{r, d-1-r, d+r, 2d-1-r}` (0-based), plus the doublet `{m, d+m}` with
//! `m = (d-1)/2` when `d` is odd. The spectrum of the full `2d x 2d` matrix is
//! therefore the union of at most 4x4 block spectra. A `d x d` X matrix splits
//! further into 2x2 blocks on the pairs `(r, d-1-r)`.

use crate::error::{Error, Result};
use crate::matcore::{eigenvalues_2x2, jacobi_eigenvalues, sort_descending, ComplexMatrix};
use crate::states::{has_extended_x_pattern, has_x_pattern, DensityMatrix, DEFAULT_STRUCTURE_TOL};

/// Partition of `0..2d` into the coupled index sets of an extended-X matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitDecomposition {
    pub d: usize,
    pub quartets: Vec<[usize; 4]>,
    pub doublet: Option<[usize; 2]>,
}

impl OrbitDecomposition {
    /// Orbits as 1-based index sets.
    pub fn one_based(&self) -> Vec<Vec<usize>> {
        let mut out: Vec<Vec<usize>> = self
            .quartets
            .iter()
            .map(|q| q.iter().map(|i| i + 1).collect())
            .collect();
        if let Some(pair) = self.doublet {
            out.push(pair.iter().map(|i| i + 1).collect());
        }
        out
    }

    pub fn orbit_count(&self) -> usize {
        self.quartets.len() + usize::from(self.doublet.is_some())
    }
}

pub fn extended_x_orbits(d: usize) -> OrbitDecomposition {
    assert!(d >= 2, "qudit dimension must be at least 2");
    let quartets = (0..d / 2)
        .map(|r| [r, d - 1 - r, d + r, 2 * d - 1 - r])
        .collect();
    let doublet = (d % 2 == 1).then(|| {
        let m = (d - 1) / 2;
        [m, d + m]
    });
    OrbitDecomposition { d, quartets, doublet }
}

/// Spectrum of an extended-X state from its orbit blocks, descending.
///
/// 4x4 blocks go through complex Jacobi rotations, doublets through the 2x2
/// closed form.
pub fn eigenvalues_extended_x(rho: &DensityMatrix) -> Result<Vec<f64>> {
    let d = rho.require_qubit_qudit().map_err(|_| Error::NotExtendedX)?;
    let m = rho.matrix();
    if !has_extended_x_pattern(m, d, DEFAULT_STRUCTURE_TOL) {
        return Err(Error::NotExtendedX);
    }
    Ok(extended_x_spectrum(m, &extended_x_orbits(d)))
}

pub(crate) fn extended_x_spectrum(m: &ComplexMatrix, orbits: &OrbitDecomposition) -> Vec<f64> {
    let mut values = Vec::with_capacity(2 * orbits.d);
    for quartet in &orbits.quartets {
        values.extend(jacobi_eigenvalues(&m.principal_submatrix(quartet)));
    }
    if let Some([i, j]) = orbits.doublet {
        values.extend(eigenvalues_2x2(m[(i, i)].re, m[(j, j)].re, m[(i, j)]));
    }
    sort_descending(&mut values);
    values
}

/// Spectrum of a `d x d` Hermitian X matrix from its 2x2 pair blocks, descending.
pub fn eigenvalues_x(m: &ComplexMatrix) -> Result<Vec<f64>> {
    if !m.is_square() || !has_x_pattern(m, DEFAULT_STRUCTURE_TOL) {
        return Err(Error::NotXStructured);
    }
    let mut values = x_spectrum(m);
    sort_descending(&mut values);
    Ok(values)
}

/// Unsorted pair-block spectrum; the X pattern is assumed.
pub(crate) fn x_spectrum(m: &ComplexMatrix) -> Vec<f64> {
    let d = m.rows();
    let mut values = Vec::with_capacity(d);
    for r in 0..d / 2 {
        let s = d - 1 - r;
        values.extend(eigenvalues_2x2(m[(r, r)].re, m[(s, s)].re, m[(r, s)]));
    }
    if d % 2 == 1 {
        values.push(m[(d / 2, d / 2)].re);
    }
    values
}
