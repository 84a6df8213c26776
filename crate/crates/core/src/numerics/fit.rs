use nalgebra::{DMatrix, DVector};

use crate::{Error, Result};

/// Largest acceptable condition number of the equilibrated fit matrix.
pub const MAX_CONDITION: f64 = 1e12;
/// Largest acceptable ‖A·c − S‖ / ‖S‖.
pub const MAX_RELATIVE_RESIDUAL: f64 = 1e-8;

/// Cutoff values for a divergence fit, largest first, together with the
/// powers of the cutoff included in the fit basis.
#[derive(Debug, Clone, PartialEq)]
pub struct RegulatorGrid {
    values: Vec<f64>,
    fit_orders: Vec<i32>,
}

impl RegulatorGrid {
    pub fn new(values: Vec<f64>, fit_orders: Vec<i32>) -> Result<Self> {
        if values.len() < 4 {
            return Err(Error::Domain(format!(
                "regulator grid needs at least 4 points, got {}",
                values.len()
            )));
        }
        if values.iter().any(|v| !(v.is_finite() && *v > 0.0)) {
            return Err(Error::Domain("regulator values must be positive and finite".into()));
        }
        if values.windows(2).any(|w| w[1] >= w[0]) {
            return Err(Error::Domain("regulator values must be strictly decreasing".into()));
        }
        let span = values[0] / values[values.len() - 1];
        if span < 4.0 {
            return Err(Error::Domain(format!(
                "regulator grid spans a factor {span:.3}, need at least 4"
            )));
        }
        if !fit_orders.contains(&0) {
            return Err(Error::Domain("fit basis must contain the constant term".into()));
        }
        let mut sorted = fit_orders.clone();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != fit_orders.len() {
            return Err(Error::Domain("fit orders must be distinct".into()));
        }
        if fit_orders.len() >= values.len() {
            return Err(Error::Domain(format!(
                "{} fit orders need more than {} grid points",
                fit_orders.len(),
                values.len()
            )));
        }
        Ok(Self { values, fit_orders })
    }

    /// `points` geometrically spaced values from `largest` down to `smallest`.
    pub fn geometric(largest: f64, smallest: f64, points: usize, fit_orders: Vec<i32>) -> Result<Self> {
        if points < 2 || !(largest > smallest && smallest > 0.0) {
            return Err(Error::Domain(format!(
                "invalid geometric grid [{smallest}, {largest}] with {points} points"
            )));
        }
        let ratio = (smallest / largest).powf(1.0 / (points - 1) as f64);
        let mut values: Vec<f64> = (0..points).map(|i| largest * ratio.powi(i as i32)).collect();
        values[points - 1] = smallest;
        Self::new(values, fit_orders)
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn fit_orders(&self) -> &[i32] {
        &self.fit_orders
    }

    pub fn largest(&self) -> f64 {
        self.values[0]
    }

    pub fn smallest(&self) -> f64 {
        self.values[self.values.len() - 1]
    }
}

/// Outcome of a divergence fit.
#[derive(Debug, Clone, PartialEq)]
pub struct FitReport {
    /// Coefficient of the constant term.
    pub finite_part: f64,
    /// `(power, coefficient)` pairs in the original (unscaled) variable.
    pub coefficients: Vec<(i32, f64)>,
    pub relative_residual: f64,
    pub condition_number: f64,
}

impl FitReport {
    pub fn coefficient(&self, power: i32) -> Option<f64> {
        self.coefficients.iter().find(|(p, _)| *p == power).map(|(_, c)| *c)
    }
}

/// Least-squares fit of `samples[i] ≈ Σ_k c_k · values[i]^k`.
///
/// Solved in the scaled variable `values / largest` with unit-norm columns;
/// the condition number refers to that equilibrated matrix.
pub(crate) fn fit_finite_part(
    grid: &RegulatorGrid,
    samples: &[f64],
    context: &'static str,
) -> Result<FitReport> {
    debug_assert_eq!(samples.len(), grid.values.len());
    let rows = grid.values.len();
    let cols = grid.fit_orders.len();
    let scale = grid.largest();

    let mut design = DMatrix::from_fn(rows, cols, |i, j| {
        (grid.values[i] / scale).powi(grid.fit_orders[j])
    });
    let norms: Vec<f64> = (0..cols).map(|j| design.column(j).norm()).collect();
    for (j, norm) in norms.iter().enumerate() {
        design.column_mut(j).unscale_mut(*norm);
    }
    let rhs = DVector::from_column_slice(samples);

    let svd = design.clone().svd(true, true);
    let singular = &svd.singular_values;
    let condition = singular.max() / singular.min();
    let solution = svd
        .solve(&rhs, 0.0)
        .map_err(|e| Error::Solver(format!("{context}: {e}")))?;
    let residual = (&design * &solution - &rhs).norm() / rhs.norm();

    if !condition.is_finite() || condition > MAX_CONDITION || !residual.is_finite() || residual > MAX_RELATIVE_RESIDUAL {
        return Err(Error::NumericalInstability { context, condition, residual });
    }

    let coefficients: Vec<(i32, f64)> = grid
        .fit_orders
        .iter()
        .enumerate()
        .map(|(j, &k)| (k, solution[j] / norms[j] / scale.powi(k)))
        .collect();
    let finite_part = coefficients
        .iter()
        .find(|(k, _)| *k == 0)
        .map(|(_, c)| *c)
        .expect("constant term is validated");
    Ok(FitReport { finite_part, coefficients, relative_residual: residual, condition_number: condition })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_validation() {
        assert!(RegulatorGrid::new(vec![4.0, 3.0, 2.0], vec![0]).is_err());
        assert!(RegulatorGrid::new(vec![4.0, 3.0, 2.0, 1.5], vec![0]).is_err(), "span < 4");
        assert!(RegulatorGrid::new(vec![4.0, 3.0, 3.0, 1.0], vec![0]).is_err(), "not strictly decreasing");
        assert!(RegulatorGrid::new(vec![4.0, 3.0, 2.0, -1.0], vec![0]).is_err());
        assert!(RegulatorGrid::new(vec![4.0, 3.0, 2.0, 1.0], vec![-2, 2]).is_err(), "no constant term");
        assert!(RegulatorGrid::new(vec![4.0, 3.0, 2.0, 1.0], vec![-2, 0, 0]).is_err());
        assert!(RegulatorGrid::new(vec![4.0, 3.0, 2.0, 1.0], vec![-3, -2, 0, 1]).is_err());
        assert!(RegulatorGrid::new(vec![4.0, 3.0, 2.0, 1.0], vec![-2, 0, 2]).is_ok());
    }

    #[test]
    fn geometric_grid_endpoints() {
        let grid = RegulatorGrid::geometric(0.4, 0.02, 12, vec![-2, 0]).unwrap();
        assert_eq!(grid.values().len(), 12);
        assert_eq!(grid.largest(), 0.4);
        assert_eq!(grid.smallest(), 0.02);
    }

    #[test]
    fn recovers_exact_laurent_polynomial() {
        let grid = RegulatorGrid::geometric(0.5, 0.01, 10, vec![-3, -2, 0, 1, 2]).unwrap();
        let f = |e: f64| 2.0 / e.powi(3) - 0.5 / (e * e) + 0.125 + 3.0 * e - e * e;
        let samples: Vec<f64> = grid.values().iter().map(|&e| f(e)).collect();
        let report = fit_finite_part(&grid, &samples, "test").unwrap();
        assert!((report.finite_part - 0.125).abs() < 1e-9);
        assert!((report.coefficient(-3).unwrap() - 2.0).abs() < 1e-12);
        assert!(report.relative_residual < 1e-13);
    }

    #[test]
    fn unmodelled_divergence_trips_residual_check() {
        let grid = RegulatorGrid::geometric(0.5, 0.01, 10, vec![-2, 0]).unwrap();
        let samples: Vec<f64> = grid.values().iter().map(|&e| 1.0 / (e * e) + 1.0 / e).collect();
        let err = fit_finite_part(&grid, &samples, "test").unwrap_err();
        assert!(matches!(err, Error::NumericalInstability { .. }));
    }
}
