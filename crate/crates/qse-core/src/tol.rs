//! Central numerical tolerances.
//!
//! Values are grouped by the quantity they bound, not by module, so the
//! ordering between related thresholds stays visible in one place.
//! Rule of thumb: validation gates sit one to three orders of magnitude
//! above the noise floor of the arithmetic that produces the quantity.

/// Max allowed |M_ij - conj(M_ji)| for a density matrix.
pub const HERMITICITY: f64 = 1e-12;

/// Max allowed |Tr(rho) - 1|.
pub const UNIT_TRACE: f64 = 1e-12;

/// Smallest admissible eigenvalue of a density matrix. Slightly negative:
/// family generators accumulate ~1e-14 of floating-point error.
pub const PSD_EIGENVALUE: f64 = -1e-10;

/// Eigenvalue accuracy contract of the Hermitian eigensolver on 4x4 inputs.
pub const HERMITIAN_EIG_4X4: f64 = 1e-11;

/// Partial-transpose eigenvalue below which the state counts as entangled.
pub const PPT_NEGATIVE: f64 = -1e-10;

/// A steering party whose Bloch norm exceeds 1 minus this is treated as pure
/// (gamma^2 singularity); the steered set degenerates to a point.
pub const STEERER_PURITY: f64 = 1e-9;

/// Marginal eigenvalues at or below this make rho_B^(-1/2) meaningless.
pub const MARGINAL_EIGENVALUE: f64 = 1e-10;

/// Allowed deviation of an assemblage sum from the reduced state.
pub const ASSEMBLAGE_SUM: f64 = 1e-10;

/// Semiaxes above this count as extended when classifying degeneracy
/// (an order of magnitude above eigensolver noise).
pub const DEGENERACY_AXIS: f64 = 1e-8;

/// Unit-direction check for measurement axes and chord directions.
pub const UNIT_DIRECTION: f64 = 1e-12;

/// Collinearity residual for the geometric probability formula,
/// relative to chord length.
pub const COLLINEARITY: f64 = 1e-8;

/// Outcomes with probability below this are suppressed (the conditional
/// state formula divides by the probability).
pub const OUTCOME_FLOOR: f64 = 1e-12;

/// Hard-case gate for the sphere-constrained quadratic maximizer: both the
/// multiplier gap |lambda* - lambda_max| and the top-eigenspace component
/// of the linear term are compared against this.
pub const TRS_HARD_CASE: f64 = 1e-10;

/// Eigenvalues of the quadratic's matrix closer than this (relative to its
/// scale) are clustered into one eigenspace.
pub const TRS_EIG_CLUSTER: f64 = 1e-10;

/// Support-function margin that certifies a separation witness.
pub const WITNESS_MARGIN: f64 = 1e-9;

/// |p| = 1 check for points claimed to sit on the unit sphere.
pub const ON_SPHERE: f64 = 1e-7;

/// Residual gate for "the ellipsoid is tangent to the sphere at p" when
/// building a plane section.
pub const SECTION_TANGENCY: f64 = 1e-6;
