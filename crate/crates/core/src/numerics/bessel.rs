//! Modified Bessel functions of the second kind, orders 0, 1 and 2.
//!
//! Three regimes:
//! - `x <= 2`: ascending power series with the logarithmic term.
//! - `2 < x < 25`: Temme's continued fraction (Steed's algorithm).
//! - `x >= 25`: Hankel asymptotic expansion.
//!
//! Order 2 is always obtained from the upward recurrence
//! `K₂ = K₀ + 2K₁/x`, which is stable for the K family.

use std::f64::consts::PI;

use crate::{Error, Result};

const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;
const SERIES_LIMIT: f64 = 2.0;
const ASYMPTOTIC_LIMIT: f64 = 25.0;
const EPS: f64 = 1e-17;
const MAX_ITER: usize = 10_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BesselOrder {
    K0,
    K1,
    K2,
}

impl BesselOrder {
    pub fn new(order: u32) -> Result<Self> {
        match order {
            0 => Ok(Self::K0),
            1 => Ok(Self::K1),
            2 => Ok(Self::K2),
            _ => Err(Error::Domain(format!(
                "Bessel order {order} not supported (0, 1 or 2)"
            ))),
        }
    }

    pub fn order(self) -> u32 {
        match self {
            Self::K0 => 0,
            Self::K1 => 1,
            Self::K2 => 2,
        }
    }
}

impl TryFrom<u32> for BesselOrder {
    type Error = Error;

    fn try_from(order: u32) -> Result<Self> {
        Self::new(order)
    }
}

/// `K_order(x)` for `x > 0`. Returns 0 once the result underflows.
pub fn bessel_k(order: BesselOrder, x: f64) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::Domain(format!("Bessel K argument must be positive, got {x}")));
    }
    let [k0, k1, k2] = k_all(x);
    Ok(match order {
        BesselOrder::K0 => k0,
        BesselOrder::K1 => k1,
        BesselOrder::K2 => k2,
    })
}

/// `[K₀(x), K₁(x), K₂(x)]` for `x > 0` (unchecked).
pub(crate) fn k_all(x: f64) -> [f64; 3] {
    let (k0, k1) = k0_k1(x);
    [k0, k1, k0 + 2.0 * k1 / x]
}

/// `(K₀(x), K₁(x))` for `x > 0` (unchecked).
pub(crate) fn k0_k1(x: f64) -> (f64, f64) {
    if x <= SERIES_LIMIT {
        series(x)
    } else {
        let scale = (-x).exp();
        if scale == 0.0 {
            return (0.0, 0.0);
        }
        let (k0, k1) = if x < ASYMPTOTIC_LIMIT {
            continued_fraction_scaled(x)
        } else {
            (asymptotic_scaled(0.0, x), asymptotic_scaled(1.0, x))
        };
        (k0 * scale, k1 * scale)
    }
}

fn series(x: f64) -> (f64, f64) {
    let y = 0.25 * x * x;
    let log_half = (0.5 * x).ln();

    // term_k = y^k / (k!)²  and  term1_k = y^k / (k! (k+1)!)
    let mut term = 1.0;
    let mut term1 = 1.0;
    let mut harmonic = 0.0;
    let mut i0 = 0.0;
    let mut i1_sum = 0.0;
    let mut k0_tail = 0.0;
    let mut k1_tail = 0.0;
    for k in 0..MAX_ITER {
        let kf = k as f64;
        if k > 0 {
            term *= y / (kf * kf);
            term1 *= y / (kf * (kf + 1.0));
            harmonic += 1.0 / kf;
        }
        let harmonic_next = harmonic + 1.0 / (kf + 1.0);
        i0 += term;
        i1_sum += term1;
        k0_tail += term * harmonic;
        // ψ(k+1) + ψ(k+2) = H_k + H_{k+1} − 2γ
        k1_tail += term1 * (harmonic + harmonic_next - 2.0 * EULER_GAMMA);
        if term < EPS * i0 && k > 2 {
            break;
        }
    }
    let i1 = 0.5 * x * i1_sum;
    let k0 = -(log_half + EULER_GAMMA) * i0 + k0_tail;
    let k1 = 1.0 / x + log_half * i1 - 0.25 * x * k1_tail;
    (k0, k1)
}

/// Steed's algorithm for Temme's CF2 at order μ = 0; returns `eˣ K₀`, `eˣ K₁`.
fn continued_fraction_scaled(x: f64) -> (f64, f64) {
    let a1 = 0.25;
    let mut b = 2.0 * (1.0 + x);
    let mut d = 1.0 / b;
    let mut h = d;
    let mut delh = d;
    let mut q1 = 0.0;
    let mut q2 = 1.0;
    let mut q = a1;
    let mut c = a1;
    let mut a = -a1;
    let mut s = 1.0 + q * delh;
    for i in 1..MAX_ITER {
        let fi = i as f64;
        a -= 2.0 * fi;
        c = -a * c / (fi + 1.0);
        let qnew = (q1 - b * q2) / a;
        q1 = q2;
        q2 = qnew;
        q += c * qnew;
        b += 2.0;
        d = 1.0 / (b + a * d);
        delh *= b * d - 1.0;
        h += delh;
        let dels = q * delh;
        s += dels;
        if (dels / s).abs() < EPS {
            break;
        }
    }
    h *= a1;
    let k0 = (PI / (2.0 * x)).sqrt() / s;
    let k1 = k0 * (x + 0.5 - h) / x;
    (k0, k1)
}

/// `eˣ K_ν(x)` from the Hankel expansion, summed until the terms stop shrinking.
fn asymptotic_scaled(nu: f64, x: f64) -> f64 {
    let mu = 4.0 * nu * nu;
    let mut term = 1.0;
    let mut sum = 1.0;
    for k in 1..200 {
        let odd = (2 * k - 1) as f64;
        let next = term * (mu - odd * odd) / (k as f64 * 8.0 * x);
        if next.abs() >= term.abs() {
            break;
        }
        term = next;
        sum += term;
        if term.abs() < EPS * sum.abs() {
            break;
        }
    }
    (PI / (2.0 * x)).sqrt() * sum
}
