use thiserror::Error;

/// Errors reported by precondition checks across the crate.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum Error {
    #[error("operation is undefined for the zero polynomial")]
    ZeroPolynomial,
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("gcd(0, 0) is undefined")]
    GcdOfZeros,
    #[error("polynomial must have constant term 1")]
    ZeroConstantTerm,
    #[error("constant polynomial has no irreducible factorization")]
    ConstantPolynomial,
    #[error("polynomial degree {found} does not match required degree {required}")]
    DegreeMismatch { required: usize, found: String },
    #[error("degree bound violated: deg {found} exceeds {bound}")]
    DegreeBound { bound: usize, found: usize },
    #[error("modulus is not primitive")]
    NotPrimitive,
    #[error("unsupported base field size q = {0} (expected 2, 3 or 5)")]
    UnsupportedQ(u32),
    #[error("extension degree {n} out of range for q = {q}")]
    ExtensionOutOfRange { q: u32, n: u32 },
    #[error("zero field element not allowed here")]
    ZeroElement,
    #[error("order n must be at least 3, got {0}")]
    OrderTooSmall(u32),
    #[error("index t = {t} outside 1..={max}")]
    IndexOutOfRange { t: u64, max: u64 },
    #[error("code length t = {t} is below the dimension n = {n}")]
    LengthBelowDimension { t: u64, n: u32 },
    #[error("canonical evaluation map collided at t = {0}")]
    BijectionViolation(u64),
    #[error("initial state length {found} does not match register order {required}")]
    StateLength { required: usize, found: usize },
    #[error("cannot parse {what}: {input:?}")]
    Parse { what: &'static str, input: String },
}

pub type Result<T> = std::result::Result<T, Error>;
