use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    /// The cut would move at or above the speed of light.
    #[error("superluminal edge speed |x| = {x} (must be < 1)")]
    Superluminal { x: f64 },

    #[error("numerical instability in {context}: condition number {condition:.3e}, relative residual {residual:.3e}")]
    NumericalInstability {
        context: &'static str,
        condition: f64,
        residual: f64,
    },

    #[error("series for {context} did not converge within {terms} terms (tail bound {tail:.3e})")]
    Convergence {
        context: &'static str,
        terms: usize,
        tail: f64,
    },

    #[error("solver failure: {0}")]
    Solver(String),
}
