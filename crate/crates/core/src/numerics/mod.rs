//! Special functions and the brute-force regularization oracles.
//!
//! The oracles evaluate divergent mode sums with an explicit exponential
//! cutoff and extract the cutoff-independent constant by a least-squares
//! fit in the regulator. They never call the closed-form energies, so
//! they can serve as independent ground truth for them.

mod bessel;
mod fit;
mod oracle;

pub use bessel::{bessel_k, BesselOrder};
pub(crate) use bessel::{k0_k1, k_all};
pub use fit::{FitReport, RegulatorGrid};
pub use oracle::{finite_part_1d, rect_energy_oracle, required_truncation, CUTOFF_EXPONENT};

/// Apéry's constant ζ(3).
pub const ZETA3: f64 = 1.202_056_903_159_594_3;

pub fn zeta3() -> f64 {
    ZETA3
}

/// Neumaier compensated accumulator.
#[derive(Debug, Clone, Copy, Default)]
pub(crate) struct CompensatedSum {
    sum: f64,
    comp: f64,
}

impl CompensatedSum {
    pub(crate) fn add(&mut self, value: f64) {
        let t = self.sum + value;
        if self.sum.abs() >= value.abs() {
            self.comp += (self.sum - t) + value;
        } else {
            self.comp += (value - t) + self.sum;
        }
        self.sum = t;
    }

    pub(crate) fn total(&self) -> f64 {
        self.sum + self.comp
    }
}
