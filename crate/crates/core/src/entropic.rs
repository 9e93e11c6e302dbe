//! Entropic quantum discord with projective measurements on the qubit.
//!
//! A measurement along the unit vector with polar angles `(theta, phi)` has
//! projectors `A_± = (1 ± n.sigma) / 2`. Tracing out the qubit after
//! `(A ⊗ I) rho (A ⊗ I)` amounts to a weighted sum of the four `d x d`
//! blocks of `rho`:
//!
//! ```text
//! M = A00 * TL + A10 * TR + A11 * BR + A01 * BL
//! ```
//!
//! For extended-X states `M` is an X matrix, so its spectrum comes from 2x2
//! pair blocks in closed form and the conditional entropy is cheap enough to
//! scan the whole measurement hemisphere.

use std::f64::consts::{FRAC_PI_2, PI, TAU};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matcore::{
    eigenvalues_2x2, entropy_of_spectrum, hermitian_eigenvalues, kron, partial_trace, xlog2x,
    ComplexMatrix, Subsystem,
};
use crate::optim::{golden_section, nelder_mead, SimplexTolerance};
use crate::states::{
    has_extended_x_pattern, has_x_pattern, DensityMatrix, DEFAULT_STRUCTURE_TOL,
};
use crate::xblocks::{extended_x_orbits, extended_x_spectrum, x_spectrum};

/// Probabilities below this are treated as an absent outcome.
const ZERO_PROBABILITY: f64 = 1e-300;

/// Minima within this of the best value count as ties.
pub const TIE_TOL: f64 = 1e-10;

/// Polar angles of the measurement direction on the qubit.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MeasurementAngles {
    pub theta: f64,
    pub phi: f64,
}

impl MeasurementAngles {
    pub const fn new(theta: f64, phi: f64) -> Self {
        Self { theta, phi }
    }

    /// The antipodal direction `(pi - theta, pi + phi)`.
    pub fn parity_partner(self) -> Self {
        Self::new(PI - self.theta, (PI + self.phi).rem_euclid(TAU))
    }

    /// Unit Bloch vector `(sin t cos p, sin t sin p, cos t)`.
    pub fn direction(self) -> [f64; 3] {
        let (st, ct) = self.theta.sin_cos();
        let (sp, cp) = self.phi.sin_cos();
        [st * cp, st * sp, ct]
    }

    pub fn from_direction(n: [f64; 3]) -> Self {
        let norm = (n[0] * n[0] + n[1] * n[1] + n[2] * n[2]).sqrt();
        let theta = (n[2] / norm).clamp(-1.0, 1.0).acos();
        let phi = n[1].atan2(n[0]).rem_euclid(TAU);
        Self::new(theta, phi)
    }

    /// Representative of the measurement (a direction up to sign) with
    /// `theta` in `[0, pi/2]` and `phi` in `[0, 2 pi)`.
    ///
    /// `phi` is reset to 0 at the pole and reduced into `[0, pi)` on the
    /// equator, where both halves describe the same measurement.
    pub fn canonical(self) -> Self {
        let mut a = Self::from_direction(self.direction());
        if a.theta > FRAC_PI_2 {
            a = a.parity_partner();
        }
        if a.theta.sin() < 1e-12 {
            return Self::new(0.0, 0.0);
        }
        if (a.theta - FRAC_PI_2).abs() < 1e-12 {
            a.theta = FRAC_PI_2;
            a.phi = a.phi.rem_euclid(PI);
        }
        if a.phi >= TAU {
            a.phi -= TAU;
        }
        a
    }
}

/// Measurement outcome `+n` or `-n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Plus,
    Minus,
}

/// Unitary parameters `(t, y)` with `t^2 + |y|^2 = 1` mapped to the measurement direction.
pub fn z_vector(t: f64, y: [f64; 3]) -> Result<[f64; 3]> {
    let norm_sq = t * t + y[0] * y[0] + y[1] * y[1] + y[2] * y[2];
    if (norm_sq - 1.0).abs() > 1e-10 {
        return Err(Error::ConstraintViolated { norm_sq });
    }
    Ok([
        2.0 * (-t * y[1] + y[0] * y[2]),
        2.0 * (t * y[0] + y[1] * y[2]),
        t * t + y[2] * y[2] - y[0] * y[0] - y[1] * y[1],
    ])
}

/// `A_+` in polar form; `A_-` is its parity conjugate.
pub fn measurement_projector(angles: MeasurementAngles, sign: Outcome) -> ComplexMatrix {
    let a = match sign {
        Outcome::Plus => angles,
        Outcome::Minus => angles.parity_partner(),
    };
    let half = 0.5 * a.theta;
    let off = Complex64::from_polar(0.5 * a.theta.sin(), a.phi);
    ComplexMatrix::from_row_major(
        2,
        2,
        vec![
            Complex64::new(half.cos().powi(2), 0.0),
            off.conj(),
            off,
            Complex64::new(half.sin().powi(2), 0.0),
        ],
    )
    .expect("2x2")
}

/// Block weights `(A00, A11, A10)` for an outcome; the lower-left weight is `conj(A10)`.
#[inline]
fn block_weights(angles: MeasurementAngles, sign: Outcome) -> (f64, f64, Complex64) {
    let half = 0.5 * angles.theta;
    let (c2, s2) = (half.cos().powi(2), half.sin().powi(2));
    let cross = Complex64::from_polar(0.5 * angles.theta.sin(), angles.phi);
    match sign {
        Outcome::Plus => (c2, s2, cross),
        Outcome::Minus => (s2, c2, -cross),
    }
}

/// Outcome of one measurement branch.
#[derive(Debug, Clone, PartialEq)]
pub struct ConditionalState {
    pub probability: f64,
    /// `tr_A[(A ⊗ I) rho (A ⊗ I)]` before normalization.
    pub unnormalized: ComplexMatrix,
}

impl ConditionalState {
    /// Normalized conditional state, or `None` for a zero-probability outcome.
    pub fn state(&self) -> Option<DensityMatrix> {
        (self.probability > ZERO_PROBABILITY).then(|| {
            DensityMatrix::single_unchecked(self.unnormalized.scale_real(1.0 / self.probability))
        })
    }
}

struct Blocks {
    tl: ComplexMatrix,
    tr: ComplexMatrix,
    br: ComplexMatrix,
    bl: ComplexMatrix,
}

impl Blocks {
    fn of(rho: &DensityMatrix) -> Result<Self> {
        let d = rho.require_qubit_qudit()?;
        let m = rho.matrix();
        Ok(Self {
            tl: m.block(0, 0, d, d),
            tr: m.block(0, d, d, d),
            br: m.block(d, d, d, d),
            bl: m.block(d, 0, d, d),
        })
    }

    fn combine(&self, angles: MeasurementAngles, sign: Outcome) -> ComplexMatrix {
        let (w_tl, w_br, w_tr) = block_weights(angles, sign);
        let d = self.tl.rows();
        ComplexMatrix::from_fn(d, d, |i, j| {
            self.tl[(i, j)] * w_tl
                + self.br[(i, j)] * w_br
                + self.tr[(i, j)] * w_tr
                + self.bl[(i, j)] * w_tr.conj()
        })
    }
}

/// Conditional state on B for one outcome of the measurement on A.
pub fn conditional_state(rho: &DensityMatrix, angles: MeasurementAngles, sign: Outcome) -> Result<ConditionalState> {
    let m = Blocks::of(rho)?.combine(angles, sign);
    Ok(ConditionalState {
        probability: m.trace().re,
        unnormalized: m,
    })
}

/// `tr_A[(A ⊗ I) rho (A ⊗ I)]` computed by explicit products; the reference
/// route for the block prescription.
pub fn conditional_state_direct(rho: &DensityMatrix, angles: MeasurementAngles, sign: Outcome) -> Result<ConditionalState> {
    let d = rho.require_qubit_qudit()?;
    let lift = kron(&measurement_projector(angles, sign), &ComplexMatrix::identity(d));
    let post = &(&lift * rho.matrix()) * &lift;
    let reduced = partial_trace(&DensityMatrix::from_parts_unchecked(post, 2, d), Subsystem::A)?;
    let m = reduced.into_matrix();
    Ok(ConditionalState {
        probability: m.trace().re,
        unnormalized: m,
    })
}

/// Entries of one `(r, d-1-r)` pair, or the centre entry when `r == s`.
#[derive(Debug, Clone, Copy)]
struct PairEntries {
    same: bool,
    tl_rr: f64,
    tl_ss: f64,
    br_rr: f64,
    br_ss: f64,
    tr_rr: Complex64,
    tr_ss: Complex64,
    tl_rs: Complex64,
    br_rs: Complex64,
    tr_rs: Complex64,
    bl_rs: Complex64,
}

enum Kernel {
    /// Conditional states are X matrices; per-pair closed form.
    XPairs(Vec<PairEntries>),
    Dense(Blocks),
}

/// Precomputed conditional-entropy evaluator for one state.
///
/// Construction inspects the state once; each evaluation is then `O(d)` for
/// extended-X states and a dense `d x d` eigenproblem otherwise.
pub struct EntropyLandscape {
    kernel: Kernel,
}

impl EntropyLandscape {
    pub fn new(rho: &DensityMatrix) -> Result<Self> {
        let d = rho.require_qubit_qudit()?;
        let blocks = Blocks::of(rho)?;
        if !has_extended_x_pattern(rho.matrix(), d, DEFAULT_STRUCTURE_TOL) {
            return Ok(Self {
                kernel: Kernel::Dense(blocks),
            });
        }
        let pairs = (0..d.div_ceil(2))
            .map(|r| {
                let s = d - 1 - r;
                PairEntries {
                    same: r == s,
                    tl_rr: blocks.tl[(r, r)].re,
                    tl_ss: blocks.tl[(s, s)].re,
                    br_rr: blocks.br[(r, r)].re,
                    br_ss: blocks.br[(s, s)].re,
                    tr_rr: blocks.tr[(r, r)],
                    tr_ss: blocks.tr[(s, s)],
                    tl_rs: blocks.tl[(r, s)],
                    br_rs: blocks.br[(r, s)],
                    tr_rs: blocks.tr[(r, s)],
                    bl_rs: blocks.bl[(r, s)],
                }
            })
            .collect();
        Ok(Self {
            kernel: Kernel::XPairs(pairs),
        })
    }

    pub fn uses_x_fast_path(&self) -> bool {
        matches!(self.kernel, Kernel::XPairs(_))
    }

    /// `sum_i p_i S(rho_i)` in bits.
    pub fn conditional_entropy(&self, angles: MeasurementAngles) -> f64 {
        self.branch_entropy(angles, Outcome::Plus) + self.branch_entropy(angles, Outcome::Minus)
    }

    /// `p S(rho_p) = -sum lambda log lambda + p log p` over the unnormalized spectrum.
    fn branch_entropy(&self, angles: MeasurementAngles, sign: Outcome) -> f64 {
        let (w_tl, w_br, w_tr) = block_weights(angles, sign);
        match &self.kernel {
            Kernel::XPairs(pairs) => {
                let mut acc = 0.0;
                let mut p = 0.0;
                for e in pairs {
                    let a = w_tl * e.tl_rr + w_br * e.br_rr + 2.0 * (w_tr * e.tr_rr).re;
                    if e.same {
                        p += a;
                        acc -= xlog2x(a);
                        continue;
                    }
                    let b = w_tl * e.tl_ss + w_br * e.br_ss + 2.0 * (w_tr * e.tr_ss).re;
                    let c = e.tl_rs * w_tl + e.br_rs * w_br + e.tr_rs * w_tr + e.bl_rs * w_tr.conj();
                    let [l1, l2] = eigenvalues_2x2(a, b, c);
                    p += a + b;
                    acc -= xlog2x(l1) + xlog2x(l2);
                }
                if p <= ZERO_PROBABILITY {
                    0.0
                } else {
                    (acc + xlog2x(p)).max(0.0)
                }
            }
            Kernel::Dense(blocks) => {
                let m = blocks.combine(angles, sign);
                let p = m.trace().re;
                if p <= ZERO_PROBABILITY {
                    return 0.0;
                }
                let spectrum = if has_x_pattern(&m, DEFAULT_STRUCTURE_TOL) {
                    x_spectrum(&m)
                } else {
                    let h = crate::states::hermitize(&m);
                    hermitian_eigenvalues(&h).expect("conditional state is Hermitian")
                };
                let acc: f64 = spectrum.iter().map(|&l| -xlog2x(l)).sum();
                (acc + xlog2x(p)).max(0.0)
            }
        }
    }
}

/// Conditional entropy `S(rho | {A_i})` in bits.
pub fn conditional_entropy(rho: &DensityMatrix, angles: MeasurementAngles) -> Result<f64> {
    Ok(EntropyLandscape::new(rho)?.conditional_entropy(angles))
}

/// Sufficient condition for the conditional entropy to be independent of `phi`.
///
/// Requires the upper-right block to vanish on its diagonal, and for every
/// pair `(r, d-1-r)` at most one coupling family to be non-zero among: the
/// local couplings of the diagonal blocks, the upper-right coupling and the
/// lower-left coupling. Conservative: may return `false` for states whose
/// entropy happens not to depend on `phi`.
pub fn phi_independence_check(rho: &DensityMatrix) -> Result<bool> {
    let d = rho.require_qubit_qudit().map_err(|_| Error::NotExtendedX)?;
    if !has_extended_x_pattern(rho.matrix(), d, DEFAULT_STRUCTURE_TOL) {
        return Err(Error::NotExtendedX);
    }
    let blocks = Blocks::of(rho)?;
    let nz = |z: Complex64| z.norm() > DEFAULT_STRUCTURE_TOL;
    if (0..d).any(|r| nz(blocks.tr[(r, r)])) {
        return Ok(false);
    }
    for r in 0..d / 2 {
        let s = d - 1 - r;
        let families = [
            nz(blocks.tl[(r, s)]) || nz(blocks.br[(r, s)]),
            nz(blocks.tr[(r, s)]),
            nz(blocks.bl[(r, s)]),
        ];
        if families.iter().filter(|&&f| f).count() > 1 {
            return Ok(false);
        }
    }
    Ok(true)
}

/// How the measurement direction is searched.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OptMode {
    /// The pole plus the equator (a one-dimensional `phi` search at `theta = pi/2`).
    Candidate,
    /// `phi = 0`, one-dimensional search over `theta`.
    ThetaOnly,
    /// Two-dimensional grid over the hemisphere plus simplex refinement.
    Full,
}

impl std::fmt::Display for OptMode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            OptMode::Candidate => "candidate",
            OptMode::ThetaOnly => "theta_only",
            OptMode::Full => "full",
        })
    }
}

impl std::str::FromStr for OptMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "candidate" => Ok(OptMode::Candidate),
            "theta" | "theta_only" | "theta-only" => Ok(OptMode::ThetaOnly),
            "full" => Ok(OptMode::Full),
            other => Err(Error::Parse(format!("unknown optimization mode {other:?}"))),
        }
    }
}

/// Fixed candidate directions: the pole and three equatorial points.
pub const CANDIDATE_ANGLES: [MeasurementAngles; 4] = [
    MeasurementAngles::new(0.0, 0.0),
    MeasurementAngles::new(FRAC_PI_2, 0.0),
    MeasurementAngles::new(FRAC_PI_2, FRAC_PI_2),
    MeasurementAngles::new(FRAC_PI_2, PI),
];

const EQUATOR_GRID: usize = 32;
const THETA_GRID: usize = 65;
const FULL_THETA_GRID: usize = 64;
const FULL_PHI_GRID: usize = 128;
const REFINE_STARTS: usize = 3;
const LINE_XTOL: f64 = 1e-10;

/// Minimum of the conditional entropy found by a search.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SearchResult {
    pub min_conditional_entropy: f64,
    pub angles: MeasurementAngles,
}

#[derive(Debug, Clone, Copy)]
struct Point {
    value: f64,
    angles: MeasurementAngles,
}

/// Lowest value; among values within [`TIE_TOL`] of it, the lexicographically
/// smallest canonical `(theta, phi)`.
fn select_minimum(points: &[Point]) -> SearchResult {
    let best = points.iter().map(|p| p.value).fold(f64::INFINITY, f64::min);
    let chosen = points
        .iter()
        .filter(|p| p.value <= best + TIE_TOL)
        .map(|p| (p.value, p.angles.canonical()))
        .min_by(|a, b| {
            a.1.theta
                .total_cmp(&b.1.theta)
                .then(a.1.phi.total_cmp(&b.1.phi))
        })
        .expect("at least one point");
    SearchResult {
        min_conditional_entropy: best.min(chosen.0),
        angles: chosen.1,
    }
}

impl EntropyLandscape {
    fn point(&self, angles: MeasurementAngles) -> Point {
        Point {
            value: self.conditional_entropy(angles),
            angles,
        }
    }

    /// Pole plus the equator, where `phi` lives in `[0, pi)`: a 32-point scan
    /// followed by golden-section refinement around the best scan point.
    pub fn candidate_search(&self) -> SearchResult {
        let mut points: Vec<Point> = CANDIDATE_ANGLES.iter().map(|&a| self.point(a)).collect();
        let step = PI / EQUATOR_GRID as f64;
        let scan: Vec<Point> = (0..EQUATOR_GRID)
            .map(|k| self.point(MeasurementAngles::new(FRAC_PI_2, k as f64 * step)))
            .collect();
        let k_best = argmin(scan.iter().map(|p| p.value));
        let centre = k_best as f64 * step;
        let refined = golden_section(
            |phi| self.conditional_entropy(MeasurementAngles::new(FRAC_PI_2, phi)),
            centre - step,
            centre + step,
            LINE_XTOL,
        );
        points.extend(scan);
        points.push(Point {
            value: refined.value,
            angles: MeasurementAngles::new(FRAC_PI_2, refined.x),
        });
        select_minimum(&points)
    }

    /// `phi = 0`; 65-point grid over `theta` in `[0, pi/2]` then golden section.
    pub fn theta_only_search(&self) -> SearchResult {
        let step = FRAC_PI_2 / (THETA_GRID - 1) as f64;
        let grid: Vec<Point> = (0..THETA_GRID)
            .map(|k| self.point(MeasurementAngles::new(k as f64 * step, 0.0)))
            .collect();
        let k_best = argmin(grid.iter().map(|p| p.value));
        let lo = (k_best as f64 - 1.0).max(0.0) * step;
        let hi = ((k_best + 1) as f64 * step).min(FRAC_PI_2);
        let refined = golden_section(
            |theta| self.conditional_entropy(MeasurementAngles::new(theta, 0.0)),
            lo,
            hi,
            LINE_XTOL,
        );
        let mut points = grid;
        points.push(Point {
            value: refined.value,
            angles: MeasurementAngles::new(refined.x, 0.0),
        });
        select_minimum(&points)
    }

    /// Grid over `theta` in `[0, pi/2]`, `phi` in `[0, 2 pi)`, simplex refinement
    /// from the best grid local minima, and the candidate search as a floor.
    pub fn full_search(&self) -> (SearchResult, SearchResult) {
        let candidate = self.candidate_search();
        let dt = FRAC_PI_2 / (FULL_THETA_GRID - 1) as f64;
        let dp = TAU / FULL_PHI_GRID as f64;
        let mut grid = vec![0.0; FULL_THETA_GRID * FULL_PHI_GRID];
        for i in 0..FULL_THETA_GRID {
            for j in 0..FULL_PHI_GRID {
                grid[i * FULL_PHI_GRID + j] =
                    self.conditional_entropy(MeasurementAngles::new(i as f64 * dt, j as f64 * dp));
            }
        }
        let starts = grid_local_minima(&grid, FULL_THETA_GRID, FULL_PHI_GRID, REFINE_STARTS);

        let mut points = vec![Point {
            value: candidate.min_conditional_entropy,
            angles: candidate.angles,
        }];
        let tol = SimplexTolerance::default();
        for (i, j) in starts {
            let x0 = [i as f64 * dt, j as f64 * dp];
            points.push(Point {
                value: grid[i * FULL_PHI_GRID + j],
                angles: MeasurementAngles::new(x0[0], x0[1]),
            });
            let m = nelder_mead(
                |x| self.conditional_entropy(MeasurementAngles::new(x[0], x[1])),
                &x0,
                &[0.5 * dt, 0.5 * dp],
                tol,
            );
            points.push(Point {
                value: m.value,
                angles: MeasurementAngles::new(m.x[0], m.x[1]),
            });
        }
        (select_minimum(&points), candidate)
    }
}

fn argmin(values: impl Iterator<Item = f64>) -> usize {
    values
        .enumerate()
        .fold((0, f64::INFINITY), |acc, (k, v)| if v < acc.1 { (k, v) } else { acc })
        .0
}

/// Up to `count` grid local minima (8-neighbourhood, periodic in `phi`),
/// lowest first. The global grid minimum is always included.
fn grid_local_minima(grid: &[f64], n_theta: usize, n_phi: usize, count: usize) -> Vec<(usize, usize)> {
    let at = |i: usize, j: usize| grid[i * n_phi + j];
    let mut minima = Vec::new();
    for i in 0..n_theta {
        for j in 0..n_phi {
            let v = at(i, j);
            let mut is_min = true;
            'nbr: for di in [-1i64, 0, 1] {
                let ii = i as i64 + di;
                if ii < 0 || ii >= n_theta as i64 {
                    continue;
                }
                for dj in [-1i64, 0, 1] {
                    if di == 0 && dj == 0 {
                        continue;
                    }
                    let jj = (j as i64 + dj).rem_euclid(n_phi as i64) as usize;
                    if at(ii as usize, jj) < v {
                        is_min = false;
                        break 'nbr;
                    }
                }
            }
            if is_min {
                minima.push((v, i, j));
            }
        }
    }
    let best = argmin(grid.iter().copied());
    minima.push((grid[best], best / n_phi, best % n_phi));
    minima.sort_by(|a, b| a.0.total_cmp(&b.0));
    let mut out: Vec<(usize, usize)> = Vec::with_capacity(count);
    for (_, i, j) in minima {
        if !out.contains(&(i, j)) {
            out.push((i, j));
        }
        if out.len() == count {
            break;
        }
    }
    out
}

/// `S(rho_B)` in bits, through the X pair blocks when `rho_B` is an X matrix.
fn entropy_b(rho: &DensityMatrix) -> Result<f64> {
    let rho_b = partial_trace(rho, Subsystem::A)?;
    let m = rho_b.matrix();
    if has_x_pattern(m, DEFAULT_STRUCTURE_TOL) {
        entropy_of_spectrum(&x_spectrum(m))
    } else {
        entropy_of_spectrum(&hermitian_eigenvalues(m)?)
    }
}

/// `S(rho_AB)` in bits, through the orbit blocks for extended-X states.
fn entropy_ab(rho: &DensityMatrix) -> Result<f64> {
    let d = rho.require_qubit_qudit()?;
    if has_extended_x_pattern(rho.matrix(), d, DEFAULT_STRUCTURE_TOL) {
        entropy_of_spectrum(&extended_x_spectrum(rho.matrix(), &extended_x_orbits(d)))
    } else {
        entropy_of_spectrum(&hermitian_eigenvalues(rho.matrix())?)
    }
}

/// `S(rho_A) + S(rho_B) - S(rho_AB)` in bits.
pub fn mutual_information(rho: &DensityMatrix) -> Result<f64> {
    let rho_a = partial_trace(rho, Subsystem::B)?;
    let s_a = entropy_of_spectrum(&hermitian_eigenvalues(rho_a.matrix())?)?;
    Ok(s_a + entropy_b(rho)? - entropy_ab(rho)?)
}

/// Classical correlation and the measurement attaining it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClassicalCorrelation {
    pub value: f64,
    pub angles: MeasurementAngles,
    pub min_conditional_entropy: f64,
    /// Candidate-search minimum minus the full minimum; only for `Full`.
    pub candidate_gap: Option<f64>,
}

pub fn classical_correlation(rho: &DensityMatrix, mode: OptMode) -> Result<ClassicalCorrelation> {
    let landscape = EntropyLandscape::new(rho)?;
    classical_correlation_with(rho, &landscape, mode)
}

fn classical_correlation_with(
    rho: &DensityMatrix,
    landscape: &EntropyLandscape,
    mode: OptMode,
) -> Result<ClassicalCorrelation> {
    let s_b = entropy_b(rho)?;
    let (best, gap) = match mode {
        OptMode::Candidate => (landscape.candidate_search(), None),
        OptMode::ThetaOnly => (landscape.theta_only_search(), None),
        OptMode::Full => {
            let (full, candidate) = landscape.full_search();
            let gap = (candidate.min_conditional_entropy - full.min_conditional_entropy).max(0.0);
            (full, Some(gap))
        }
    };
    Ok(ClassicalCorrelation {
        value: (s_b - best.min_conditional_entropy).max(0.0),
        angles: best.angles,
        min_conditional_entropy: best.min_conditional_entropy,
        candidate_gap: gap,
    })
}

/// Options for [`entropic_discord_with`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiscordOptions {
    pub mode: OptMode,
    /// Run `ThetaOnly` instead of `Candidate` when the `phi`-independence check passes.
    pub escalate: bool,
}

impl From<OptMode> for DiscordOptions {
    fn from(mode: OptMode) -> Self {
        Self { mode, escalate: false }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DiscordResult {
    pub discord: f64,
    pub classical_correlation: f64,
    pub mutual_information: f64,
    pub optimal_angles: MeasurementAngles,
    pub mode: OptMode,
    pub candidate_gap: Option<f64>,
}

pub fn entropic_discord(rho: &DensityMatrix, mode: OptMode) -> Result<DiscordResult> {
    entropic_discord_with(rho, mode.into())
}

pub fn entropic_discord_with(rho: &DensityMatrix, options: DiscordOptions) -> Result<DiscordResult> {
    let landscape = EntropyLandscape::new(rho)?;
    let mut mode = options.mode;
    if mode == OptMode::Candidate && options.escalate && landscape.uses_x_fast_path() && phi_independence_check(rho)? {
        mode = OptMode::ThetaOnly;
    }
    let cc = classical_correlation_with(rho, &landscape, mode)?;
    let mi = mutual_information(rho)?;
    let classical = cc.value.min(mi.max(0.0));
    Ok(DiscordResult {
        discord: mi - classical,
        classical_correlation: classical,
        mutual_information: mi,
        optimal_angles: cc.angles,
        mode,
        candidate_gap: cc.candidate_gap,
    })
}

/// Conditional entropy computed through explicit `(A ⊗ I) rho (A ⊗ I)` products,
/// independent of the block prescription.
pub fn conditional_entropy_direct(rho: &DensityMatrix, angles: MeasurementAngles) -> Result<f64> {
    let mut total = 0.0;
    for sign in [Outcome::Plus, Outcome::Minus] {
        let branch = conditional_state_direct(rho, angles, sign)?;
        if let Some(state) = branch.state() {
            let h = crate::states::hermitize(state.matrix());
            total += branch.probability * entropy_of_spectrum(&hermitian_eigenvalues(&h)?)?;
        }
    }
    Ok(total)
}
