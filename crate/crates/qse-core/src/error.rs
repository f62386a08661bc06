//! Error taxonomy for the whole crate.
//!
//! Validation failures carry the violating magnitude so callers can log
//! actionable diagnostics; numeric failures are never silent.

use crate::states::Party;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("matrix is not Hermitian (max |M_ij - conj(M_ji)| = {deviation:.3e})")]
    NotHermitian { deviation: f64 },

    #[error("trace differs from 1 by {deviation:.3e}")]
    NotUnitTrace { deviation: f64 },

    #[error("matrix is not positive semidefinite (smallest eigenvalue {eigenvalue:.3e})")]
    NotPositive { eigenvalue: f64 },

    #[error("{party} marginal is singular (eigenvalue {eigenvalue:.3e})")]
    SingularMarginal { party: Party, eigenvalue: f64 },

    #[error("steering party {party} has a pure marginal (|bloch| = {norm}); steered set degenerates")]
    DegenerateSteerer { party: Party, norm: f64 },

    #[error("direction is not unit (norm = {norm})")]
    NonUnitDirection { norm: f64 },

    #[error("point does not lie on the chord (residual {residual:.3e})")]
    NotCollinear { residual: f64 },

    #[error("chord endpoints coincide")]
    CoincidentEndpoints,

    #[error("point lies outside the ellipsoid (quadratic form value {value})")]
    PointOutsideEllipsoid { value: f64 },

    #[error("degenerate ellipse/ellipsoid: {what}")]
    DegenerateEllipse { what: String },

    #[error("secular equation failed to bracket a root above lambda_max = {lambda_max} (phi = {phi})")]
    SecularBracketFailure { lambda_max: f64, phi: f64 },

    #[error("tangency structure inconsistent with the mixed-state classification: {what}")]
    InconsistentWithClassification { what: String },

    #[error("tangency enumeration mismatch between parties (alice {alice}, bob {bob})")]
    CountMismatch { alice: usize, bob: usize },

    #[error("parameter {name} = {value} outside {domain}")]
    ParamOutOfRange {
        name: &'static str,
        value: f64,
        domain: &'static str,
    },

    #[error("X-state parameters violate positivity")]
    PositivityViolated,

    #[error("{name} = {value} out of range")]
    OutOfRange { name: &'static str, value: f64 },

    #[error("section points are collinear")]
    CollinearPoints,

    #[error("ellipsoid is not tangent to the sphere at p (residual {residual:.3e})")]
    NotTangentAtP { residual: f64 },

    #[error("assemblage members do not sum to the marginal (deviation {deviation:.3e})")]
    InconsistentAssemblage { deviation: f64 },

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("invalid state or report file: {0}")]
    Parse(String),
}

impl Error {
    /// True for errors caused by the input data (bad file, bad parameters,
    /// structurally degenerate state) as opposed to numeric failures.
    pub fn is_input_error(&self) -> bool {
        !matches!(
            self,
            Error::SecularBracketFailure { .. }
                | Error::InconsistentWithClassification { .. }
                | Error::CountMismatch { .. }
        )
    }
}
