use thiserror::Error;

/// Errors raised by the geometric and spectral routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("vector is not unit length (|x| = {norm})")]
    NotUnit { norm: f64 },

    #[error("matrix is not a rotation: {0}")]
    NotRotation(String),

    #[error("point is not in chart {chart} (x_{chart} = {coordinate})")]
    PointNotInChart { chart: usize, coordinate: f64 },

    #[error("chart index {0} out of range 1..=3")]
    ChartIndex(usize),

    #[error("lmax {lmax} outside supported range {min}..={max}")]
    LmaxOutOfRange { lmax: usize, min: usize, max: usize },

    #[error("quadrature grid exact to lmax {available}, need {required}")]
    InsufficientGrid { required: usize, available: usize },

    #[error("coefficients violate the {sector} sector (largest stray entry {stray})")]
    SectorViolation { sector: &'static str, stray: f64 },

    #[error("section sector does not match its bundle: {0}")]
    BundleMismatch(String),

    #[error("fiber vector is not parallel to phi(x) (residual {residual})")]
    FiberNotInLine { residual: f64 },

    #[error("triple violates the projector constraint p.f = f (residual {residual})")]
    ProjectorConstraintViolated { residual: f64 },

    #[error("radial evaluation at r = {r} outside [{r_min}, {r_max}] with non-negligible section mass")]
    RadialRangeExceeded { r: f64, r_min: f64, r_max: f64 },

    #[error("invalid radial grid: {0}")]
    RadialGrid(String),

    #[error("finite-difference step {0} outside [1e-6, 1e-2]")]
    StepOutOfRange(f64),

    #[error("point lies in the excluded set of the transport frame")]
    ExcludedPoint,

    #[error("spin 2j = {0} not supported (need 2j <= 8)")]
    SpinOutOfRange(u32),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("grid size {0} is not a power of two")]
    GridSize(usize),

    #[error("wave packet mass {mass} reaches the periodic boundary")]
    SupportViolation { mass: f64 },

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
