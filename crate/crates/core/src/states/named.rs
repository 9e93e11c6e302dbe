//! Textbook states: Bell, Werner, GHZ, W, products, maximally mixed and
//! classical-quantum mixtures.

use std::str::FromStr;

use num_complex::Complex64;

use super::DensityMatrix;
use crate::error::{Error, Result};
use crate::matcore::{kron, ComplexMatrix, ZERO};

/// Description of a named state.
#[derive(Debug, Clone, PartialEq)]
pub enum StateSpec {
    /// `k` in 1..=4: Phi+, Phi-, Psi+, Psi-.
    Bell(u8),
    /// `z |Psi-><Psi-| + (1 - z) I/4`.
    Werner(f64),
    Ghz(usize),
    W(usize),
    Product(DensityMatrix, DensityMatrix),
    MaximallyMixed(usize),
    ClassicalQuantum {
        p: f64,
        rho0: DensityMatrix,
        rho1: DensityMatrix,
    },
}

pub fn named_state(spec: &StateSpec) -> Result<DensityMatrix> {
    match spec {
        StateSpec::Bell(k) => bell(*k),
        StateSpec::Werner(z) => werner(*z),
        StateSpec::Ghz(n) => ghz(*n),
        StateSpec::W(n) => w(*n),
        StateSpec::Product(a, b) => product(a, b),
        StateSpec::MaximallyMixed(dim) => maximally_mixed(*dim),
        StateSpec::ClassicalQuantum { p, rho0, rho1 } => classical_quantum(*p, rho0, rho1),
    }
}

/// Parses `bell1`..`bell4`, `werner:<z>`, `ghz:<n>`, `w:<n>` and `mixed:<dim>`.
impl FromStr for StateSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::BadSpec(s.to_string());
        if let Some(k) = s.strip_prefix("bell") {
            return k.parse().map(StateSpec::Bell).map_err(|_| bad());
        }
        let (name, arg) = s.split_once(':').ok_or_else(bad)?;
        match name {
            "werner" => arg.parse().map(StateSpec::Werner).map_err(|_| bad()),
            "ghz" => arg.parse().map(StateSpec::Ghz).map_err(|_| bad()),
            "w" => arg.parse().map(StateSpec::W).map_err(|_| bad()),
            "mixed" => arg.parse().map(StateSpec::MaximallyMixed).map_err(|_| bad()),
            _ => Err(bad()),
        }
    }
}

fn ket_from_real(amps: &[f64]) -> Vec<Complex64> {
    amps.iter().map(|&a| Complex64::new(a, 0.0)).collect()
}

fn pure_bipartite(ket: &[Complex64]) -> DensityMatrix {
    let n = ket.len();
    DensityMatrix::from_parts_unchecked(ComplexMatrix::outer(ket), 2, n / 2)
}

pub fn bell(k: u8) -> Result<DensityMatrix> {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let amps = match k {
        1 => [h, 0.0, 0.0, h],
        2 => [h, 0.0, 0.0, -h],
        3 => [0.0, h, h, 0.0],
        4 => [0.0, h, -h, 0.0],
        _ => return Err(Error::BadSpec(format!("bell index {k} not in 1..=4"))),
    };
    Ok(pure_bipartite(&ket_from_real(&amps)))
}

pub fn werner(z: f64) -> Result<DensityMatrix> {
    if !(0.0..=1.0).contains(&z) {
        return Err(Error::BadSpec(format!("werner weight {z} not in [0, 1]")));
    }
    let singlet = bell(4)?.into_matrix();
    let noise = ComplexMatrix::identity(4).scale_real((1.0 - z) / 4.0);
    Ok(DensityMatrix::from_parts_unchecked(&singlet.scale_real(z) + &noise, 2, 2))
}

fn qubit_count(n: usize) -> Result<usize> {
    if !(2..=12).contains(&n) {
        return Err(Error::BadSpec(format!("qubit count {n} not in 2..=12")));
    }
    Ok(1 << n)
}

pub fn ghz(n: usize) -> Result<DensityMatrix> {
    let dim = qubit_count(n)?;
    let mut ket = vec![ZERO; dim];
    ket[0] = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    ket[dim - 1] = ket[0];
    Ok(pure_bipartite(&ket))
}

pub fn w(n: usize) -> Result<DensityMatrix> {
    let dim = qubit_count(n)?;
    let amp = Complex64::new(1.0 / (n as f64).sqrt(), 0.0);
    let mut ket = vec![ZERO; dim];
    for q in 0..n {
        ket[1 << q] = amp;
    }
    Ok(pure_bipartite(&ket))
}

/// `rho_a (x) rho_b`; the result is split as `(dim rho_a, dim rho_b)`.
pub fn product(rho_a: &DensityMatrix, rho_b: &DensityMatrix) -> Result<DensityMatrix> {
    let m = kron(rho_a.matrix(), rho_b.matrix());
    DensityMatrix::with_dims(m, rho_a.dim(), rho_b.dim())
}

/// `I / dim` as a `2 x dim/2` state; `dim` must be even and at least 4.
pub fn maximally_mixed(dim: usize) -> Result<DensityMatrix> {
    if dim < 4 || !dim.is_multiple_of(2) {
        return Err(Error::BadSpec(format!("mixed dimension {dim} must be even and >= 4")));
    }
    let m = ComplexMatrix::identity(dim).scale_real(1.0 / dim as f64);
    Ok(DensityMatrix::from_parts_unchecked(m, 2, dim / 2))
}

/// `I / dim` on a single system.
pub fn maximally_mixed_single(dim: usize) -> DensityMatrix {
    DensityMatrix::single_unchecked(ComplexMatrix::identity(dim).scale_real(1.0 / dim as f64))
}

/// `p |0><0| (x) rho0 + (1 - p) |1><1| (x) rho1`, a zero-discord state.
pub fn classical_quantum(p: f64, rho0: &DensityMatrix, rho1: &DensityMatrix) -> Result<DensityMatrix> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::BadSpec(format!("probability {p} not in [0, 1]")));
    }
    if rho0.dim() != rho1.dim() {
        return Err(Error::BadSpec("conditional states differ in dimension".into()));
    }
    let d = rho0.dim();
    let p0 = ComplexMatrix::from_real_diagonal(&[p, 0.0]);
    let p1 = ComplexMatrix::from_real_diagonal(&[0.0, 1.0 - p]);
    let m = &kron(&p0, rho0.matrix()) + &kron(&p1, rho1.matrix());
    DensityMatrix::with_dims(m, 2, d)
}
