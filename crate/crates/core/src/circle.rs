//! Massless scalar on a circle of radius R with a rotating Dirichlet cut.

use std::f64::consts::{PI, TAU};

use num_complex::Complex64;

use crate::numerics::{finite_part_1d, RegulatorGrid};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CircleGeometry {
    radius: f64,
}

impl CircleGeometry {
    pub fn new(radius: f64) -> Result<Self> {
        if !(radius > 0.0 && radius.is_finite()) {
            return Err(Error::Domain(format!("radius must be positive, got {radius}")));
        }
        Ok(Self { radius })
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }
}

/// Signed edge speed `x = ΩR` of the cut. Positive is counterclockwise.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RotationState {
    x: f64,
}

impl RotationState {
    pub const STATIC: Self = Self { x: 0.0 };

    pub fn new(x: f64) -> Result<Self> {
        if !x.is_finite() {
            return Err(Error::Domain(format!("edge speed must be finite, got {x}")));
        }
        if x.abs() >= 1.0 {
            return Err(Error::Superluminal { x: x.abs() });
        }
        Ok(Self { x })
    }

    /// From an angular frequency Ω and the radius of the rotating body.
    pub fn from_angular_frequency(omega: f64, radius: f64) -> Result<Self> {
        Self::new(omega * radius)
    }

    pub fn x(&self) -> f64 {
        self.x
    }

    pub fn angular_frequency(&self, radius: f64) -> f64 {
        self.x / radius
    }

    /// `1 − x²`, strictly positive.
    pub fn contraction(&self) -> f64 {
        1.0 - self.x * self.x
    }
}

/// Quantum numbers of a mode: angular `m ≥ 1` and continuous frequency `ω`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModeLabel {
    m: u32,
    omega: f64,
}

impl ModeLabel {
    pub fn new(m: u32, omega: f64) -> Result<Self> {
        check_m(m)?;
        if !omega.is_finite() {
            return Err(Error::Domain(format!("mode frequency must be finite, got {omega}")));
        }
        Ok(Self { m, omega })
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn omega(&self) -> f64 {
        self.omega
    }
}

fn check_m(m: u32) -> Result<()> {
    if m < 1 {
        return Err(Error::Domain("angular quantum number must be at least 1".into()));
    }
    Ok(())
}

/// −1/(48R).
pub fn static_energy(geom: &CircleGeometry) -> f64 {
    -1.0 / (48.0 * geom.radius)
}

/// Static level `ω_m = m/(2R)`.
pub fn mode_frequency(m: u32, geom: &CircleGeometry) -> Result<f64> {
    check_m(m)?;
    Ok(m as f64 / (2.0 * geom.radius))
}

/// Rotation-compressed level `m(1 − x²)/(2R)`.
pub fn effective_eigenenergy(m: u32, geom: &CircleGeometry, rot: &RotationState) -> Result<f64> {
    check_m(m)?;
    Ok(m as f64 * rot.contraction() / (2.0 * geom.radius))
}

/// Eigenvalue of `∂²_t − R⁻²∂²_φ` on the mode `label`:
/// `m²(1 − x²)/(4R²) − ω²/(1 − x²)`.
pub fn eigenvalue(label: &ModeLabel, geom: &CircleGeometry, rot: &RotationState) -> f64 {
    let m = label.m as f64;
    let r = geom.radius;
    let c = rot.contraction();
    m * m * c / (4.0 * r * r) - label.omega * label.omega / c
}

/// Angle measured from the cut, in the open interval (0, 2π).
///
/// `None` when `angle` sits exactly on the cut.
pub fn angle_from_cut(angle: f64) -> Option<f64> {
    let u = angle.rem_euclid(TAU);
    (u > 0.0 && u < TAU).then_some(u)
}

/// Mode function in the laboratory frame,
/// `(πR)^{-1/2} sin(m·u/2) · exp(−iω(t − β·u))` with `u = [φ − Ωt]_{2π}` and
/// `β = ΩR²/(1 − Ω²R²)`.
///
/// Exactly on the cut both one-sided limits vanish and zero is returned.
pub fn mode_function(
    label: &ModeLabel,
    geom: &CircleGeometry,
    rot: &RotationState,
    t: f64,
    phi: f64,
) -> Complex64 {
    let r = geom.radius;
    let omega_rot = rot.angular_frequency(r);
    let Some(u) = angle_from_cut(phi - omega_rot * t) else {
        return Complex64::new(0.0, 0.0);
    };
    let beta = omega_rot * r * r / rot.contraction();
    let amplitude = (0.5 * label.m as f64 * u).sin() / (PI * r).sqrt();
    let phase = -label.omega * (t - beta * u);
    Complex64::from_polar(amplitude, phase)
}

/// −(1 + x²)/(48R).
pub fn rotating_energy(geom: &CircleGeometry, rot: &RotationState) -> f64 {
    let x = rot.x;
    -(1.0 + x * x) / (48.0 * geom.radius)
}

/// Rotating energy through the cutoff route: the finite part of the
/// regulated sum over effective levels, spacing `(1 − x²)/(2R)`, times the
/// energy-density prefactor `(1 + x²)/(1 − x²)`.
pub fn rotating_energy_regularized(
    geom: &CircleGeometry,
    rot: &RotationState,
    grid: Option<&RegulatorGrid>,
) -> Result<f64> {
    let spacing = rot.contraction() / (2.0 * geom.radius);
    let default_grid;
    let grid = match grid {
        Some(g) => g,
        None => {
            default_grid = RegulatorGrid::for_level_spacing(spacing)?;
            &default_grid
        }
    };
    let fit = finite_part_1d(spacing, grid)?;
    let x2 = rot.x * rot.x;
    Ok(fit.finite_part * (1.0 + x2) / (1.0 - x2))
}

/// Vacuum moment of inertia `d²E/dΩ²|₀ = −R/24`.
pub fn circle_vacuum_moment_of_inertia(geom: &CircleGeometry) -> f64 {
    -geom.radius / 24.0
}
