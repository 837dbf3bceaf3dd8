use crate::geodesic::SpaceKind;

pub type Result<T, E = GeoError> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum GeoError {
    #[error("point belongs to space `{found}` but `{expected}` was expected")]
    SpaceMismatch {
        expected: SpaceKind,
        found: SpaceKind,
    },

    #[error("expected {expected} coordinates, got {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("invalid point: {0}")]
    InvalidPoint(String),

    #[error("invalid tangent vector: {0}")]
    InvalidTangent(String),

    #[error("tangent vectors are attached to different base points")]
    MixedBase,

    #[error("parameter `{name}` = {value} is outside {range}")]
    ParameterOutOfRange {
        name: &'static str,
        value: f64,
        range: &'static str,
    },

    #[error("index {index} out of range for degree {degree}")]
    IndexOutOfRange { index: usize, degree: usize },

    #[error("outside the uniqueness domain: {0}")]
    DomainViolation(String),

    #[error("space `{space}` does not provide {capability}")]
    MissingCapability {
        space: SpaceKind,
        capability: &'static str,
    },

    #[error("invalid control polygon: {0}")]
    InvalidControlPolygon(String),

    #[error("invalid weights: {0}")]
    InvalidWeights(String),

    #[error("invalid knot vector: {0}")]
    InvalidKnots(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error(
        "Karcher iteration did not converge after {iterations} iterations (residual {residual:e})"
    )]
    NonConvergence { iterations: usize, residual: f64 },
}

impl GeoError {
    pub(crate) fn out_of_unit(name: &'static str, value: f64) -> Self {
        GeoError::ParameterOutOfRange {
            name,
            value,
            range: "[0, 1]",
        }
    }
}

/// Checks `t ∈ [0, 1]`, rejecting NaN.
pub(crate) fn check_unit(name: &'static str, t: f64) -> Result<()> {
    if (0.0..=1.0).contains(&t) {
        Ok(())
    } else {
        Err(GeoError::out_of_unit(name, t))
    }
}
