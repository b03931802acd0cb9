use core::fmt;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// Tensor order must be at least the stated minimum.
    InvalidOrder { order: usize, min: usize },
    /// Vector or tensor dimension does not match.
    DimensionMismatch { expected: usize, found: usize },
    /// A multi-index whose exponents do not sum to the tensor order.
    BadMultiIndex { degree: usize, order: usize },
    /// Two spanning vectors are (numerically) linearly dependent.
    DegenerateSpan,
    /// The operation is undefined for the zero tensor.
    ZeroTensor,
    /// The tangential derivative vanishes identically on the circle.
    DegenerateCriticalPolynomial,
    /// A scalar parameter violates the operation's precondition.
    InvalidParameter(&'static str),
    /// The factors of a rank-two construction are dependent.
    RankDeficient,
    /// A pair of vectors that must be orthonormal is not.
    NotOrthonormal,
    /// The ratio objective is not differentiable (several global maximizers).
    NonDifferentiable { maximizers: usize },
    /// The parameter is at a removable singularity; only the limit exists.
    LimitPoint,
    /// Normal-form parameters outside the feasible region.
    Infeasible,
    /// Non-finite input value.
    NonFinite,
    /// Root finding was asked for the zero polynomial.
    ZeroPolynomial,
    /// The Hessenberg QR iteration failed to deflate.
    NoConvergence,
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidOrder { order, min } => {
                write!(f, "invalid tensor order {order} (need at least {min})")
            }
            Error::DimensionMismatch { expected, found } => {
                write!(f, "dimension mismatch: expected {expected}, found {found}")
            }
            Error::BadMultiIndex { degree, order } => {
                write!(
                    f,
                    "multi-index of degree {degree} in a tensor of order {order}"
                )
            }
            Error::DegenerateSpan => f.write_str("spanning vectors are linearly dependent"),
            Error::ZeroTensor => f.write_str("operation undefined for the zero tensor"),
            Error::DegenerateCriticalPolynomial => {
                f.write_str("critical polynomial vanishes identically (continuum of maximizers)")
            }
            Error::InvalidParameter(what) => write!(f, "invalid parameter: {what}"),
            Error::RankDeficient => f.write_str("rank-two factors are linearly dependent"),
            Error::NotOrthonormal => f.write_str("vectors are not orthonormal"),
            Error::NonDifferentiable { maximizers } => write!(
                f,
                "ratio is not differentiable here ({maximizers} global maximizers)"
            ),
            Error::LimitPoint => f.write_str("value only defined as a limit at this point"),
            Error::Infeasible => f.write_str("normal-form parameters violate the constraints"),
            Error::NonFinite => f.write_str("non-finite input"),
            Error::ZeroPolynomial => f.write_str("zero polynomial has no isolated roots"),
            Error::NoConvergence => f.write_str("eigenvalue iteration did not converge"),
        }
    }
}

impl core::error::Error for Error {}
