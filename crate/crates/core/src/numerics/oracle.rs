use std::f64::consts::PI;

use rayon::prelude::*;

use super::fit::{fit_finite_part, FitReport, RegulatorGrid};
use super::CompensatedSum;
use crate::rectangle::RectangleGeometry;
use crate::{Error, Result};

/// Modes are kept while `ε·π·ω < CUTOFF_EXPONENT` at the smallest cutoff.
pub const CUTOFF_EXPONENT: f64 = 40.0;

impl RegulatorGrid {
    /// Default τ grid for a linear spectrum with spacing `a`: 12 points with
    /// `a·τ ∈ [0.005, 0.02]`, basis τ⁻², 1, τ².
    pub fn for_level_spacing(a: f64) -> Result<Self> {
        if !(a > 0.0 && a.is_finite()) {
            return Err(Error::Domain(format!("level spacing must be positive, got {a}")));
        }
        Self::geometric(0.02 / a, 0.005 / a, 12, vec![-2, 0, 2])
    }

    /// Default ε grid for a rectangle: 12 points in `[0.01, 0.1]·min(L, l)`,
    /// basis ε⁻³, ε⁻², 1, ε, ε².
    pub fn for_rectangle(geom: &RectangleGeometry) -> Result<Self> {
        let side = geom.height().min(geom.width());
        Self::geometric(0.1 * side, 0.01 * side, 12, vec![-3, -2, 0, 1, 2])
    }
}

/// Finite part of `S(τ) = Σ_{m≥1} (m·a/2)·e^{−m·a·τ}` (equal to `−a/24`).
pub fn finite_part_1d(level_spacing: f64, grid: &RegulatorGrid) -> Result<FitReport> {
    let a = level_spacing;
    if !(a > 0.0 && a.is_finite()) {
        return Err(Error::Domain(format!("level spacing must be positive, got {a}")));
    }
    // Σ m·e^{−m·y} = 1 / (4 sinh²(y/2))
    let samples: Vec<f64> = grid
        .values()
        .iter()
        .map(|&tau| {
            let half = (0.5 * a * tau).sinh();
            0.5 * a / (4.0 * half * half)
        })
        .collect();
    fit_finite_part(grid, &samples, "finite_part_1d")
}

/// Largest mode index along each side that the cutoff rule reaches.
pub fn required_truncation(geom: &RectangleGeometry, grid: &RegulatorGrid) -> usize {
    let omega_max = CUTOFF_EXPONENT / (PI * grid.smallest());
    (omega_max * geom.height().max(geom.width())).ceil() as usize
}

/// Exponential-cutoff value of the Dirichlet rectangle mode sum.
///
/// Evaluates `S(ε) = (π/2)·Σ ω_{nm}·e^{−ε·π·ω_{nm}}`, `ω_{nm} = √((n/L)² + (m/l)²)`,
/// on every grid point and fits the basis of `grid`. `truncation` caps the
/// mode indices; it must cover [`required_truncation`].
pub fn rect_energy_oracle(
    geom: &RectangleGeometry,
    grid: &RegulatorGrid,
    truncation: usize,
) -> Result<FitReport> {
    let needed = required_truncation(geom, grid);
    if truncation < needed {
        return Err(Error::Domain(format!(
            "truncation {truncation} below the {needed} modes required at ε = {}",
            grid.smallest()
        )));
    }
    let (height, width) = (geom.height(), geom.width());
    let omega_max = CUTOFF_EXPONENT / (PI * grid.smallest());
    let n_max = ((omega_max * height).floor() as usize).min(truncation);
    let weights: Vec<f64> = grid.values().iter().map(|e| -e * PI).collect();

    let rows: Vec<Vec<CompensatedSum>> = (1..=n_max)
        .into_par_iter()
        .map(|n| {
            let kn = n as f64 / height;
            let mut acc = vec![CompensatedSum::default(); weights.len()];
            let remaining = omega_max * omega_max - kn * kn;
            if remaining <= 0.0 {
                return acc;
            }
            let m_max = ((remaining.sqrt() * width).floor() as usize).min(truncation);
            // sum from the smallest terms up
            for m in (1..=m_max).rev() {
                let km = m as f64 / width;
                let omega = (kn * kn + km * km).sqrt();
                for (slot, w) in acc.iter_mut().zip(&weights) {
                    slot.add(omega * (w * omega).exp());
                }
            }
            acc
        })
        .collect();

    let mut totals = vec![CompensatedSum::default(); weights.len()];
    for row in rows.iter().rev() {
        for (total, part) in totals.iter_mut().zip(row) {
            total.add(part.total());
        }
    }
    let samples: Vec<f64> = totals.iter().map(|t| 0.5 * PI * t.total()).collect();
    fit_finite_part(grid, &samples, "rect_energy_oracle")
}
