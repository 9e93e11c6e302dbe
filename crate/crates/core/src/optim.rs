//! Low-dimensional minimizers: golden-section search and Nelder-Mead.

/// Result of a minimization: location and value.
#[derive(Debug, Clone, PartialEq)]
pub struct Minimum<X> {
    pub x: X,
    pub value: f64,
}

const INV_PHI: f64 = 0.618_033_988_749_894_8;

/// Golden-section search for a minimum of a unimodal `f` on `[lo, hi]`.
///
/// Stops once the bracket is narrower than `xtol`. The returned point is the
/// best evaluated point, endpoints included.
pub fn golden_section(mut f: impl FnMut(f64) -> f64, lo: f64, hi: f64, xtol: f64) -> Minimum<f64> {
    let (mut a, mut b) = (lo, hi);
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    let mut best = Minimum { x: lo, value: f(lo) };
    let fhi = f(hi);
    if fhi < best.value {
        best = Minimum { x: hi, value: fhi };
    }
    for _ in 0..200 {
        if (b - a).abs() <= xtol {
            break;
        }
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = f(d);
        }
    }
    for (x, v) in [(c, fc), (d, fd)] {
        if v < best.value {
            best = Minimum { x, value: v };
        }
    }
    best
}

/// Stopping rule for [`nelder_mead`].
#[derive(Debug, Clone, Copy)]
pub struct SimplexTolerance {
    /// Spread of function values across the simplex.
    pub ftol: f64,
    /// Largest vertex distance from the best vertex.
    pub xtol: f64,
    pub max_iter: usize,
}

impl Default for SimplexTolerance {
    fn default() -> Self {
        Self {
            ftol: 1e-10,
            xtol: 1e-9,
            max_iter: 2000,
        }
    }
}

/// Nelder-Mead simplex minimization with standard coefficients.
///
/// The initial simplex is `x0` plus one vertex per axis offset by `step[i]`.
pub fn nelder_mead(
    mut f: impl FnMut(&[f64]) -> f64,
    x0: &[f64],
    step: &[f64],
    tol: SimplexTolerance,
) -> Minimum<Vec<f64>> {
    let n = x0.len();
    assert_eq!(step.len(), n);
    let mut simplex: Vec<(Vec<f64>, f64)> = Vec::with_capacity(n + 1);
    simplex.push((x0.to_vec(), f(x0)));
    for i in 0..n {
        let mut v = x0.to_vec();
        v[i] += step[i];
        let fv = f(&v);
        simplex.push((v, fv));
    }

    let along = |base: &[f64], toward: &[f64], t: f64| -> Vec<f64> {
        base.iter().zip(toward).map(|(b, w)| b + t * (w - b)).collect()
    };

    for _ in 0..tol.max_iter {
        simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
        let spread = simplex[n].1 - simplex[0].1;
        let size = simplex[1..]
            .iter()
            .map(|(v, _)| {
                v.iter()
                    .zip(&simplex[0].0)
                    .map(|(a, b)| (a - b).abs())
                    .fold(0.0, f64::max)
            })
            .fold(0.0, f64::max);
        if spread <= tol.ftol && size <= tol.xtol {
            break;
        }

        let mut centroid = vec![0.0; n];
        for (v, _) in &simplex[..n] {
            for (c, x) in centroid.iter_mut().zip(v) {
                *c += x / n as f64;
            }
        }
        let worst = simplex[n].clone();
        let reflected = along(&centroid, &worst.0, -1.0);
        let fr = f(&reflected);
        if fr < simplex[0].1 {
            let expanded = along(&centroid, &worst.0, -2.0);
            let fe = f(&expanded);
            simplex[n] = if fe < fr { (expanded, fe) } else { (reflected, fr) };
            continue;
        }
        if fr < simplex[n - 1].1 {
            simplex[n] = (reflected, fr);
            continue;
        }
        let (contracted, fc) = if fr < worst.1 {
            let c = along(&centroid, &reflected, 0.5);
            let fc = f(&c);
            (c, fc)
        } else {
            let c = along(&centroid, &worst.0, 0.5);
            let fc = f(&c);
            (c, fc)
        };
        if fc < worst.1.min(fr) {
            simplex[n] = (contracted, fc);
            continue;
        }
        let best = simplex[0].0.clone();
        for vertex in simplex.iter_mut().skip(1) {
            let shrunk = along(&best, &vertex.0, 0.5);
            let fs = f(&shrunk);
            *vertex = (shrunk, fs);
        }
    }
    simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
    let (x, value) = simplex.swap_remove(0);
    Minimum { x, value }
}
