//! Rotating tube of radius R and height L with a Dirichlet cut along its
//! axis and Dirichlet ends.
//!
//! The mode problem separates into the rotating cut circle times a
//! longitudinal standing wave, and the vacuum energy reduces to the
//! rectangle energy at the comoving circumference `l₀ = 2πR/√(1 − x²)`.
//! Everything is computed in units of R: energies as `E·R`, heights as
//! `L/R`.

use std::f64::consts::PI;

use crate::circle::RotationState;
use crate::minimize::{scan_minimum, MinimumReport, ScanOptions};
use crate::numerics::ZETA3;
use crate::rectangle::{rect_energy, rect_energy_dl, RectangleGeometry};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TubeGeometry {
    radius: f64,
    height: f64,
}

impl TubeGeometry {
    pub fn new(radius: f64, height: f64) -> Result<Self> {
        for (name, v) in [("radius", radius), ("height", height)] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(Error::Domain(format!("tube {name} must be positive, got {v}")));
            }
        }
        Ok(Self { radius, height })
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    pub fn height(&self) -> f64 {
        self.height
    }

    pub fn aspect(&self) -> f64 {
        self.height / self.radius
    }
}

/// `l₀ = 2πR/√(1 − x²)`.
pub fn comoving_circumference(geom: &TubeGeometry, rot: &RotationState) -> f64 {
    2.0 * PI * geom.radius / rot.contraction().sqrt()
}

/// `E·R` as a function of `L/R` and `x`.
pub(crate) fn scaled_energy(aspect: f64, x: f64) -> Result<f64> {
    let rot = RotationState::new(x)?;
    let l = 2.0 * PI / rot.contraction().sqrt();
    let rect = RectangleGeometry::new(aspect, l)?;
    let e = rect_energy(&rect)?;
    let de = rect_energy_dl(&rect)?;
    Ok(l / PI * (e - x * x * l * de))
}

/// Vacuum energy of the rotating tube,
/// `(l/πR)·(1 − x²·l·∂/∂l) E_rect(L, l)` at `l = l₀`.
pub fn tube_energy(geom: &TubeGeometry, rot: &RotationState) -> Result<f64> {
    Ok(scaled_energy(geom.aspect(), rot.x())? / geom.radius)
}

/// `E(Ω) − E(0)`.
pub fn rotational_energy(geom: &TubeGeometry, rot: &RotationState) -> Result<f64> {
    let a = geom.aspect();
    Ok((scaled_energy(a, rot.x())? - scaled_energy(a, 0.0)?) / geom.radius)
}

/// Long-tube form `ζ(3)L/(32π³R²)·[1 − √(1 − x²)(1 + 2x²)]`.
pub fn tube_energy_longtube(geom: &TubeGeometry, rot: &RotationState) -> f64 {
    let x2 = rot.x() * rot.x();
    let r = geom.radius;
    ZETA3 * geom.height / (32.0 * PI.powi(3) * r * r) * (1.0 - (1.0 - x2).sqrt() * (1.0 + 2.0 * x2))
}

pub fn omega_min(geom: &TubeGeometry) -> Result<MinimumReport> {
    omega_min_with(geom, &ScanOptions::default())
}

pub fn omega_min_with(geom: &TubeGeometry, opts: &ScanOptions) -> Result<MinimumReport> {
    let aspect = geom.aspect();
    let report = scan_minimum(|x| scaled_energy(aspect, x), opts)?;
    Ok(MinimumReport {
        energy_at_min: report.energy_at_min / geom.radius,
        barrier_height: report.barrier_height / geom.radius,
        ..report
    })
}

/// Smallest height at which the global minimum leaves Ω = 0, by bisection
/// on `L/R ∈ [1, 10⁴]` to relative tolerance `tol`.
pub fn critical_length(radius: f64, tol: f64) -> Result<f64> {
    if !(tol > 0.0) {
        return Err(Error::Domain(format!("tolerance must be positive, got {tol}")));
    }
    if !(radius > 0.0 && radius.is_finite()) {
        return Err(Error::Domain(format!("radius must be positive, got {radius}")));
    }
    let opts = ScanOptions::default();
    let nontrivial = |aspect: f64| -> Result<bool> {
        Ok(scan_minimum(|x| scaled_energy(aspect, x), &opts)?.is_nontrivial)
    };
    let (mut lo, mut hi) = (1.0, 1e4);
    if nontrivial(lo)? || !nontrivial(hi)? {
        return Err(Error::Solver(format!(
            "no transition to a rotating minimum bracketed in L/R ∈ [{lo}, {hi}]"
        )));
    }
    while hi - lo > tol * hi {
        let mid = 0.5 * (lo + hi);
        if nontrivial(mid)? {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(hi * radius)
}

/// `d²E/dΩ²|_{Ω=0} / L`: the vacuum moment of inertia per unit height.
///
/// Central second difference of the even curve at steps `h` and `h/2` in
/// `x`, combined by Richardson extrapolation.
pub fn vacuum_moment_per_length(geom: &TubeGeometry) -> Result<f64> {
    let aspect = geom.aspect();
    let e0 = scaled_energy(aspect, 0.0)?;
    let second_difference = |h: f64| -> Result<f64> {
        let delta = scaled_energy(aspect, h)? - e0;
        if delta == 0.0 || !delta.is_finite() {
            return Err(Error::NumericalInstability {
                context: "vacuum_moment_per_length",
                condition: f64::INFINITY,
                residual: delta.abs(),
            });
        }
        Ok(2.0 * delta / (h * h))
    };
    let h = 0.02;
    let coarse = second_difference(h)?;
    let fine = second_difference(0.5 * h)?;
    let curvature = (4.0 * fine - coarse) / 3.0;
    // d²E/dΩ² = R²·d²E/dx² and E = (E·R)/R
    Ok(curvature * geom.radius / geom.height)
}
