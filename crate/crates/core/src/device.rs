//! Classical rigid-body rotation plus the vacuum energy of the device.

use crate::circle::{rotating_energy, CircleGeometry, RotationState};
use crate::minimize::{scan_minimum, MinimumReport, ScanOptions};
use crate::tube::{tube_energy, TubeGeometry};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DeviceGeometry {
    Circle(CircleGeometry),
    Tube(TubeGeometry),
}

impl DeviceGeometry {
    pub fn radius(&self) -> f64 {
        match self {
            Self::Circle(c) => c.radius(),
            Self::Tube(t) => t.radius(),
        }
    }
}

/// A device with classical moment of inertia `I` (natural units, a length).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DeviceSpec {
    geometry: DeviceGeometry,
    classical_moment: f64,
}

impl DeviceSpec {
    pub fn new(geometry: DeviceGeometry, classical_moment: f64) -> Result<Self> {
        if !(classical_moment >= 0.0 && classical_moment.is_finite()) {
            return Err(Error::Domain(format!(
                "classical moment of inertia must be non-negative, got {classical_moment}"
            )));
        }
        Ok(Self { geometry, classical_moment })
    }

    pub fn geometry(&self) -> &DeviceGeometry {
        &self.geometry
    }

    pub fn classical_moment(&self) -> f64 {
        self.classical_moment
    }
}

/// `I·Ω²/2` with `Ω = x/R`.
pub fn classical_energy(spec: &DeviceSpec, rot: &RotationState) -> f64 {
    let omega = rot.angular_frequency(spec.geometry.radius());
    0.5 * spec.classical_moment * omega * omega
}

pub fn vacuum_energy(spec: &DeviceSpec, rot: &RotationState) -> Result<f64> {
    match &spec.geometry {
        DeviceGeometry::Circle(c) => Ok(rotating_energy(c, rot)),
        DeviceGeometry::Tube(t) => tube_energy(t, rot),
    }
}

pub fn total_energy(spec: &DeviceSpec, rot: &RotationState) -> Result<f64> {
    Ok(classical_energy(spec, rot) + vacuum_energy(spec, rot)?)
}

pub fn optimal_frequency(spec: &DeviceSpec) -> Result<MinimumReport> {
    optimal_frequency_with(spec, &ScanOptions::default())
}

/// Scan-and-refine over `E·R` in units of the device radius.
pub fn optimal_frequency_with(spec: &DeviceSpec, opts: &ScanOptions) -> Result<MinimumReport> {
    let r = spec.geometry.radius();
    let report = scan_minimum(|x| Ok(total_energy(spec, &RotationState::new(x)?)? * r), opts)?;
    Ok(MinimumReport {
        energy_at_min: report.energy_at_min / r,
        barrier_height: report.barrier_height / r,
        ..report
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tube;

    fn circle_spec(r: f64, i: f64) -> DeviceSpec {
        DeviceSpec::new(DeviceGeometry::Circle(CircleGeometry::new(r).unwrap()), i).unwrap()
    }

    fn tube_spec(r: f64, l: f64, i: f64) -> DeviceSpec {
        DeviceSpec::new(DeviceGeometry::Tube(TubeGeometry::new(r, l).unwrap()), i).unwrap()
    }

    fn rot(x: f64) -> RotationState {
        RotationState::new(x).unwrap()
    }

    #[test]
    fn classical_energy_values() {
        for &x in &[0.0, 0.3, -0.9] {
            assert_eq!(classical_energy(&circle_spec(1.0, 0.0), &rot(x)), 0.0);
        }
        assert!((classical_energy(&circle_spec(1.0, 2.0), &rot(0.5)) - 0.25).abs() < 1e-15);
        let s = tube_spec(2.0, 30.0, 3.0);
        assert_eq!(classical_energy(&s, &rot(0.4)), classical_energy(&s, &rot(-0.4)));
    }

    #[test]
    fn negative_moment_rejected() {
        let g = DeviceGeometry::Circle(CircleGeometry::new(1.0).unwrap());
        assert!(DeviceSpec::new(g, -1.0).is_err());
        assert!(DeviceSpec::new(g, f64::NAN).is_err());
    }

    #[test]
    fn massless_devices_reduce_to_vacuum_energy() {
        let t = tube_spec(1.0, 50.0, 0.0);
        let DeviceGeometry::Tube(g) = *t.geometry() else { unreachable!() };
        assert_eq!(total_energy(&t, &rot(0.6)).unwrap(), tube_energy(&g, &rot(0.6)).unwrap());
        let c = circle_spec(1.0, 0.0);
        assert!((total_energy(&c, &rot(0.5)).unwrap() - -0.026_041_67).abs() < 1e-8);
    }

    #[test]
    fn circle_curvature_sign_follows_vacuum_inertia() {
        // d²E/dΩ² at 0 is I − R/24
        let r = 2.0;
        let h = 1e-3;
        for &(i, positive) in &[(0.2, true), (0.05, false), (0.0, false)] {
            let s = circle_spec(r, i);
            let e = |omega: f64| total_energy(&s, &RotationState::from_angular_frequency(omega, r).unwrap()).unwrap();
            let curvature = (e(h) - 2.0 * e(0.0) + e(-h)) / (h * h);
            assert!((curvature - (i - r / 24.0)).abs() < 1e-8);
            assert_eq!(curvature > 0.0, positive);
        }
    }

    #[test]
    fn massless_long_tube_matches_omega_min() {
        let s = tube_spec(1.0, 1e4, 0.0);
        let DeviceGeometry::Tube(g) = *s.geometry() else { unreachable!() };
        let a = optimal_frequency(&s).unwrap();
        assert_eq!(a, tube::omega_min(&g).unwrap());
        assert!((a.omega_x - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-3);
    }

    #[test]
    fn heavy_tube_stays_static() {
        let l = 1e4;
        let report = optimal_frequency(&tube_spec(1.0, l, 1e6 * l)).unwrap();
        assert!(!report.is_nontrivial);
    }

    #[test]
    fn light_circle_has_no_interior_minimum() {
        let report = optimal_frequency(&circle_spec(1.0, 0.0)).unwrap();
        assert!(report.no_interior_minimum);
        let heavy = optimal_frequency(&circle_spec(1.0, 1.0)).unwrap();
        assert!(!heavy.is_nontrivial);
        assert!(!heavy.no_interior_minimum);
    }

    #[test]
    fn heavier_devices_rotate_slower() {
        let mut prev = f64::INFINITY;
        for &i in &[0.0, 10.0, 50.0, 100.0, 200.0, 400.0, 1000.0] {
            let s = tube_spec(1.0, 1000.0, i);
            let report = optimal_frequency(&s).unwrap();
            assert!(report.omega_x <= prev, "I = {i}");
            assert!(report.energy_at_min <= total_energy(&s, &RotationState::STATIC).unwrap());
            prev = report.omega_x;
        }
    }
}
