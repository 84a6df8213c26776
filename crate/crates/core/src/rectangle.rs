//! Renormalized Casimir energy of a massless scalar in an `L × l`
//! Dirichlet rectangle, and its derivative in the side `l`.

use std::f64::consts::PI;

use crate::numerics::{k0_k1, k_all, ZETA3};
use crate::{Error, Result};

const ZETA2: f64 = PI * PI / 6.0;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RectangleGeometry {
    height: f64,
    width: f64,
}

impl RectangleGeometry {
    pub fn new(height: f64, width: f64) -> Result<Self> {
        for (name, v) in [("height", height), ("width", width)] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(Error::Domain(format!("rectangle {name} must be positive, got {v}")));
            }
        }
        Ok(Self { height, width })
    }

    /// Side `L`.
    pub fn height(&self) -> f64 {
        self.height
    }

    /// Side `l`.
    pub fn width(&self) -> f64 {
        self.width
    }

    pub fn swapped(&self) -> Self {
        Self { height: self.width, width: self.height }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesTolerance {
    absolute_tol: f64,
    max_terms: usize,
}

impl SeriesTolerance {
    pub fn new(absolute_tol: f64, max_terms: usize) -> Result<Self> {
        if !(absolute_tol >= 1e-15) || !absolute_tol.is_finite() {
            return Err(Error::Domain(format!("series tolerance must be at least 1e-15, got {absolute_tol}")));
        }
        if max_terms < 1 {
            return Err(Error::Domain("series needs at least one term".into()));
        }
        Ok(Self { absolute_tol, max_terms })
    }

    pub fn absolute_tol(&self) -> f64 {
        self.absolute_tol
    }

    pub fn max_terms(&self) -> usize {
        self.max_terms
    }
}

impl Default for SeriesTolerance {
    fn default() -> Self {
        Self { absolute_tol: 1e-13, max_terms: 1_000_000 }
    }
}

/// Sum of the squares of the divisors of `p`.
fn sigma2(p: usize) -> f64 {
    let mut total = 0u128;
    let mut d = 1usize;
    while d * d <= p {
        if p.is_multiple_of(d) {
            let e = p / d;
            total += (d as u128) * (d as u128);
            if e != d {
                total += (e as u128) * (e as u128);
            }
        }
        d += 1;
    }
    total as f64
}

/// Σ_{k≥0} (a+k)^power · q^k for power 1 or 2.
fn tail_weight(a: f64, q: f64, power: u32) -> f64 {
    let r = 1.0 - q;
    match power {
        1 => a / r + q / (r * r),
        _ => a * a / r + 2.0 * a * q / (r * r) + q * (1.0 + q) / (r * r * r),
    }
}

fn check_z(z: f64) -> Result<()> {
    if !(z > 0.0 && z.is_finite()) {
        return Err(Error::Domain(format!("G argument must be positive, got {z}")));
    }
    Ok(())
}

/// `G(z) = −(1/2π) Σ_{n,m≥1} (n/m) K₁(2πnmz)`.
///
/// Terms are grouped by `p = n·m`, giving `−(1/2π) Σ_p σ₂(p)/p · K₁(2πpz)`.
/// The tail past `P` is bounded with `σ₂(p) ≤ ζ(2)p²` and the monotone
/// decay of `K₁(y)eʸ`.
pub fn g_function(z: f64, tol: &SeriesTolerance) -> Result<f64> {
    check_z(z)?;
    let step = 2.0 * PI * z;
    let q = (-step).exp();
    let mut sum = 0.0;
    let mut k1 = k0_k1(step).1;
    for p in 1..=tol.max_terms {
        sum += sigma2(p) / p as f64 * k1;
        let k1_next = k0_k1(step * (p + 1) as f64).1;
        let tail = ZETA2 * k1_next * tail_weight((p + 1) as f64, q, 1) / (2.0 * PI);
        if tail < tol.absolute_tol {
            return Ok(-sum / (2.0 * PI));
        }
        k1 = k1_next;
    }
    let tail = ZETA2 * k1 * tail_weight((tol.max_terms + 1) as f64, q, 1) / (2.0 * PI);
    Err(Error::Convergence { context: "G(z)", terms: tol.max_terms, tail })
}

/// `G′(z) = −Σ_{n,m≥1} n² K₁′(2πnmz)` with `K₁′ = −(K₀ + K₂)/2`.
pub fn g_function_derivative(z: f64, tol: &SeriesTolerance) -> Result<f64> {
    check_z(z)?;
    let step = 2.0 * PI * z;
    let q = (-step).exp();
    let minus_k1_prime = |y: f64| {
        let [k0, _, k2] = k_all(y);
        0.5 * (k0 + k2)
    };
    let mut sum = 0.0;
    let mut dk = minus_k1_prime(step);
    for p in 1..=tol.max_terms {
        sum += sigma2(p) * dk;
        let dk_next = minus_k1_prime(step * (p + 1) as f64);
        let tail = ZETA2 * dk_next * tail_weight((p + 1) as f64, q, 2);
        if tail < tol.absolute_tol {
            return Ok(sum);
        }
        dk = dk_next;
    }
    let tail = ZETA2 * dk * tail_weight((tol.max_terms + 1) as f64, q, 2);
    Err(Error::Convergence { context: "G'(z)", terms: tol.max_terms, tail })
}

/// The renormalized energy exactly as written,
/// `π/(48L) − ζ(3)·l/(16πL²) + (π/L)·G(l/L)`, without exploiting symmetry.
pub fn rect_energy_printed(geom: &RectangleGeometry, tol: &SeriesTolerance) -> Result<f64> {
    let (big_l, l) = (geom.height, geom.width);
    let g = g_function(l / big_l, tol)?;
    Ok(PI / (48.0 * big_l) - ZETA3 * l / (16.0 * PI * big_l * big_l) + PI / big_l * g)
}

/// Renormalized rectangle energy with the default series tolerance.
pub fn rect_energy(geom: &RectangleGeometry) -> Result<f64> {
    rect_energy_with(geom, &SeriesTolerance::default())
}

/// Renormalized rectangle energy. The closed form is evaluated with the
/// longer side in the `l` slot so that the G-series argument is at least 1.
pub fn rect_energy_with(geom: &RectangleGeometry, tol: &SeriesTolerance) -> Result<f64> {
    if geom.width >= geom.height {
        rect_energy_printed(geom, tol)
    } else {
        rect_energy_printed(&geom.swapped(), tol)
    }
}

/// `∂E/∂l` with the default series tolerance.
pub fn rect_energy_dl(geom: &RectangleGeometry) -> Result<f64> {
    rect_energy_dl_with(geom, &SeriesTolerance::default())
}

pub fn rect_energy_dl_with(geom: &RectangleGeometry, tol: &SeriesTolerance) -> Result<f64> {
    let (big_l, l) = (geom.height, geom.width);
    if l >= big_l {
        let dg = g_function_derivative(l / big_l, tol)?;
        Ok(-ZETA3 / (16.0 * PI * big_l * big_l) + PI / (big_l * big_l) * dg)
    } else {
        // E = π/(48a) − ζ(3)b/(16πa²) + (π/a)G(b/a) with a = l, b = L
        let (a, b) = (l, big_l);
        let z = b / a;
        let g = g_function(z, tol)?;
        let dg = g_function_derivative(z, tol)?;
        Ok(-PI / (48.0 * a * a) + ZETA3 * b / (8.0 * PI * a * a * a)
            - PI / (a * a) * g
            - PI * b / (a * a * a) * dg)
    }
}
