//! Vacuum (Casimir) energy of rotating boundary-condition devices.
//!
//! A massless scalar field lives on a circle or a tube that carries an
//! infinitesimally thin Dirichlet cut. Rotating the cut changes the mode
//! spectrum and therefore the vacuum energy. This crate evaluates those
//! energies in closed form, checks them against brute-force cutoff sums,
//! and locates the rotation frequencies that minimise them.
//!
//! Natural units (ħ = c = 1) are used throughout: lengths carry the unit,
//! energies are inverse lengths, and the rotation state is the
//! dimensionless edge speed `x = ΩR`.

pub mod circle;
pub mod cli;
pub mod device;
mod error;
pub mod minimize;
pub mod numerics;
pub mod rectangle;
pub mod tube;

pub use circle::{CircleGeometry, ModeLabel, RotationState};
pub use device::{DeviceGeometry, DeviceSpec};
pub use error::{Error, Result};
pub use minimize::MinimumReport;
pub use rectangle::{RectangleGeometry, SeriesTolerance};
pub use tube::TubeGeometry;
