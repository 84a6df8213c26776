//! Grid scan plus golden-section refinement for even energy curves on
//! `x ∈ [0, x_max]`.

use rayon::prelude::*;

use crate::Result;

const INV_PHI: f64 = 0.618_033_988_749_894_9;

/// Global minimum of an energy curve over the edge speed `x = ΩR`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MinimumReport {
    /// `Ω_min·R`, zero for a trivial minimum.
    pub omega_x: f64,
    pub energy_at_min: f64,
    pub is_nontrivial: bool,
    /// Highest energy above `E(0)` crossed on the way from 0 to the minimum.
    pub barrier_height: f64,
    /// The curve keeps falling up to the scan ceiling; `omega_x` is the
    /// ceiling rather than a stationary point.
    pub no_interior_minimum: bool,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScanOptions {
    pub x_max: f64,
    pub points: usize,
    pub x_tol: f64,
    /// A minimum must undercut `E(0)` by more than this to count.
    pub energy_margin: f64,
}

impl Default for ScanOptions {
    fn default() -> Self {
        Self { x_max: 0.999, points: 2000, x_tol: 1e-8, energy_margin: 1e-12 }
    }
}

/// Golden-section search for a minimum of `f` on `[a, b]`, stopping once the
/// bracket is narrower than `tol`. Returns `(x, f(x))`.
pub fn golden_section<F>(f: F, mut a: f64, mut b: f64, tol: f64) -> Result<(f64, f64)>
where
    F: Fn(f64) -> Result<f64>,
{
    let mut x1 = b - INV_PHI * (b - a);
    let mut x2 = a + INV_PHI * (b - a);
    let mut f1 = f(x1)?;
    let mut f2 = f(x2)?;
    while b - a > tol {
        if f1 < f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - INV_PHI * (b - a);
            f1 = f(x1)?;
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + INV_PHI * (b - a);
            f2 = f(x2)?;
        }
    }
    Ok(if f1 < f2 { (x1, f1) } else { (x2, f2) })
}

/// Scans `energy` on a uniform grid, refines every local minimum of the
/// sampled curve and compares the best one against `energy(0)`.
pub fn scan_minimum<F>(energy: F, opts: &ScanOptions) -> Result<MinimumReport>
where
    F: Fn(f64) -> Result<f64> + Sync,
{
    let n = opts.points.max(3);
    let step = opts.x_max / (n - 1) as f64;
    let xs: Vec<f64> = (0..n).map(|i| i as f64 * step).collect();
    let es: Vec<f64> = xs.par_iter().map(|&x| energy(x)).collect::<Result<_>>()?;
    let e0 = es[0];

    let mut best: Option<(usize, f64, f64)> = None;
    for i in 0..n {
        let left_ok = i == 0 || es[i] <= es[i - 1];
        let right_ok = i == n - 1 || es[i] <= es[i + 1];
        if !(left_ok && right_ok) {
            continue;
        }
        let lo = xs[i.saturating_sub(1)];
        let hi = xs[(i + 1).min(n - 1)];
        let (mut x, mut e) = golden_section(&energy, lo, hi, opts.x_tol)?;
        if es[i] < e {
            x = xs[i];
            e = es[i];
        }
        if best.is_none_or(|(_, _, be)| e < be) {
            best = Some((i, x, e));
        }
    }

    match best {
        Some((index, x, e)) if e < e0 - opts.energy_margin && x > 0.0 => {
            let barrier = xs
                .iter()
                .zip(&es)
                .take_while(|(&xi, _)| xi <= x)
                .map(|(_, &ei)| ei - e0)
                .fold(0.0, f64::max);
            Ok(MinimumReport {
                omega_x: x,
                energy_at_min: e,
                is_nontrivial: true,
                barrier_height: barrier,
                no_interior_minimum: index == n - 1,
            })
        }
        _ => Ok(MinimumReport {
            omega_x: 0.0,
            energy_at_min: e0,
            is_nontrivial: false,
            barrier_height: 0.0,
            no_interior_minimum: false,
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn golden_section_finds_parabola_vertex() {
        let (x, fx) = golden_section(|x| Ok((x - 0.3).powi(2) + 1.0), 0.0, 1.0, 1e-10).unwrap();
        assert!((x - 0.3).abs() < 1e-7);
        assert!((fx - 1.0).abs() < 1e-15);
    }

    #[test]
    fn trivial_minimum_at_origin() {
        let report = scan_minimum(|x| Ok(x * x), &ScanOptions::default()).unwrap();
        assert!(!report.is_nontrivial);
        assert_eq!(report.omega_x, 0.0);
        assert_eq!(report.barrier_height, 0.0);
    }

    #[test]
    fn double_well_with_barrier() {
        // f' = x(x − 0.25)(x − 0.6): barrier at 0.25, global minimum at 0.6
        let well = |x: f64| x.powi(4) / 4.0 - 0.85 * x.powi(3) / 3.0 + 0.075 * x * x;
        let report = scan_minimum(|x| Ok(well(x)), &ScanOptions::default()).unwrap();
        assert!(report.is_nontrivial);
        assert!((report.omega_x - 0.6).abs() < 1e-6);
        assert!((report.barrier_height - well(0.25)).abs() < 1e-8);
        assert!(!report.no_interior_minimum);
    }

    #[test]
    fn minimum_below_grid_spacing_is_found() {
        let x0 = 2e-4;
        let f = |x: f64| Ok((x - x0).powi(2) - x0 * x0);
        let report = scan_minimum(f, &ScanOptions::default()).unwrap();
        assert!(report.is_nontrivial);
        assert!((report.omega_x - x0).abs() < 1e-7);
    }

    #[test]
    fn monotone_decrease_flags_ceiling() {
        let report = scan_minimum(|x| Ok(-x * x), &ScanOptions::default()).unwrap();
        assert!(report.is_nontrivial);
        assert!(report.no_interior_minimum);
        assert!((report.omega_x - 0.999).abs() < 1e-6);
    }
}
