use thiserror::Error;

use crate::algebra::VarPair;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown variable `{name}` at position {pos}")]
    UnknownVariable { name: String, pos: usize },
    #[error("exponent at position {pos} must be a nonnegative integer")]
    BadExponent { pos: usize },
    #[error("variable pairs differ: {0} vs {1}")]
    VarPairMismatch(VarPair, VarPair),
    #[error("polynomial has degree zero in the eliminated variable")]
    DegreeZero,
    #[error("polynomial is constant")]
    ConstantPolynomial,
    #[error("polynomial is zero")]
    ZeroPolynomial,
    #[error("root finder did not converge after {iterations} iterations; raise the precision")]
    NoConvergence { iterations: usize },
    #[error("degenerate curve: {0}")]
    DegenerateCurve(String),
    #[error("coefficients are not real")]
    NotReal,
    #[error("polynomial is not Hermitian-symmetric, so it does not come from a real curve")]
    SymmetryViolation,
    #[error("singular locus is not isolated (the polynomial has a repeated factor)")]
    NonIsolatedSingularities,
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("discriminant vanishes identically (repeated factor in w)")]
    ZeroDiscriminant,
    #[error("precision exhausted at {bits} bits: {reason}")]
    PrecisionExhausted { bits: usize, reason: String },
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("indeterminate 0/0 evaluation; raise the precision")]
    Indeterminate,
    #[error("map is constant on the curve; image is the point {0}")]
    DegenerateImage(String),
    #[error("map does not preserve the unit circle")]
    NotCirclePreserving,
    #[error("zero/pole pairing failed: {0}")]
    PairingFailure(String),
    #[error("continuation path passes within {distance:.3e} of a branch point (clearance {clearance:.3e})")]
    ClearanceViolation { distance: f64, clearance: f64 },
    #[error("Newton continuation diverged after exhausting step refinement")]
    Divergence,
    #[error("base point is not on the curve (residual {0:.3e})")]
    BaseOffCurve(f64),
    #[error("f(base) is {distance:.3e} away from the target curve")]
    WrongTarget { distance: f64 },
    #[error("division by a near-zero value")]
    NearZeroDivision,
    #[error("exponent range overflow")]
    Overflow,
    #[error("expression is not a rational function of z")]
    NotRational,
    #[error("map is constant")]
    ConstantMap,
}

impl Error {
    /// Stable machine-readable code used by the CLI and the C API.
    pub fn code(&self) -> &'static str {
        match self {
            Error::Syntax { .. } => "syntax",
            Error::UnknownVariable { .. } => "unknown_variable",
            Error::BadExponent { .. } => "bad_exponent",
            Error::VarPairMismatch(..) => "varpair_mismatch",
            Error::DegreeZero => "degree_zero",
            Error::ConstantPolynomial => "constant_polynomial",
            Error::ZeroPolynomial => "zero_polynomial",
            Error::NoConvergence { .. } => "no_convergence",
            Error::DegenerateCurve(_) => "degenerate_curve",
            Error::NotReal => "not_real",
            Error::SymmetryViolation => "symmetry_violation",
            Error::NonIsolatedSingularities => "non_isolated_singularities",
            Error::InvalidParameter(_) => "invalid_parameter",
            Error::ZeroDiscriminant => "zero_discriminant",
            Error::PrecisionExhausted { .. } => "precision_exhausted",
            Error::ZeroDenominator => "zero_denominator",
            Error::Indeterminate => "indeterminate",
            Error::DegenerateImage(_) => "degenerate_image",
            Error::NotCirclePreserving => "not_circle_preserving",
            Error::PairingFailure(_) => "pairing_failure",
            Error::ClearanceViolation { .. } => "clearance_violation",
            Error::Divergence => "divergence",
            Error::BaseOffCurve(_) => "base_off_curve",
            Error::WrongTarget { .. } => "wrong_target",
            Error::NearZeroDivision => "near_zero_division",
            Error::Overflow => "overflow",
            Error::NotRational => "not_rational",
            Error::ConstantMap => "constant_map",
        }
    }

    pub fn is_parse_error(&self) -> bool {
        matches!(
            self,
            Error::Syntax { .. } | Error::UnknownVariable { .. } | Error::BadExponent { .. }
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
