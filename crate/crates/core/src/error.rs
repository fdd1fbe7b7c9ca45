//! Error type shared by every module of the core crate.

use alloc::string::String;
use core::fmt;

/// Everything that can go wrong while building fields, orbits and polynomials.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// `d` must be a square-free positive integer.
    NotSquareFree(i64),
    NonPositive(i64),
    /// Discriminant is not negative or not congruent to 0, 1 mod 4.
    InvalidDiscriminant(i64),
    NotPrime(u64),
    /// Modulus must be at least 2.
    ModulusTooSmall(u64),
    PrimeDoesNotDivide { p: u64, n: u64 },
    /// Element of `Z[theta]` shares a factor with the modulus.
    NotPrimeToModulus { norm: i64, n: u64 },
    /// A matrix that had to be invertible mod `n` was not.
    Singular { n: u64 },
    /// Index vector lies in `Z^2`.
    IntegralIndex,
    DenominatorMismatch { denominator: i64, level: u64 },
    /// Upper half-plane point required.
    NotInUpperHalfPlane,
    Precondition(String),
    /// Constant phase of an invariant does not lie in the cyclotomic field of the level.
    PhaseOutsideLevel { level: u64 },
    /// Some polynomial coefficient was not close to an integer.
    IntegralityFailure { index: usize, distance_log10: f64 },
    /// Orbit values did not collapse into equally repeated roots.
    MultiplicityMismatch { counts: alloc::vec::Vec<usize> },
    /// Prime excluded from the representability criterion.
    PreconditionExcluded { p: u64, reason: &'static str },
    EmptyOrbit,
    PrecisionUnderflow,
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::NotSquareFree(d) => write!(f, "{d} is not square-free"),
            Error::NonPositive(d) => write!(f, "{d} must be positive"),
            Error::InvalidDiscriminant(d) => write!(f, "{d} is not a negative discriminant"),
            Error::NotPrime(p) => write!(f, "{p} is not prime"),
            Error::ModulusTooSmall(n) => write!(f, "modulus {n} must be at least 2"),
            Error::PrimeDoesNotDivide { p, n } => write!(f, "{p} does not divide {n}"),
            Error::NotPrimeToModulus { norm, n } => {
                write!(f, "element of norm {norm} is not prime to {n}")
            }
            Error::Singular { n } => write!(f, "matrix is not invertible mod {n}"),
            Error::IntegralIndex => write!(f, "Siegel index must not be integral"),
            Error::DenominatorMismatch { denominator, level } => {
                write!(f, "index denominator {denominator} does not divide level {level}")
            }
            Error::NotInUpperHalfPlane => write!(f, "point is not in the upper half-plane"),
            Error::Precondition(msg) => write!(f, "precondition violated: {msg}"),
            Error::PhaseOutsideLevel { level } => {
                write!(f, "constant phase is not a root of unity of Q(zeta_{level})")
            }
            Error::IntegralityFailure { index, distance_log10 } => write!(
                f,
                "coefficient {index} is not integral (distance 1e{distance_log10:.1})"
            ),
            Error::MultiplicityMismatch { counts } => {
                write!(f, "unequal root multiplicities {counts:?}")
            }
            Error::PreconditionExcluded { p, reason } => write!(f, "prime {p} excluded: {reason}"),
            Error::EmptyOrbit => write!(f, "orbit is empty"),
            Error::PrecisionUnderflow => write!(f, "value underflowed the working precision"),
        }
    }
}

pub type Result<T> = core::result::Result<T, Error>;

impl core::error::Error for Error {}
