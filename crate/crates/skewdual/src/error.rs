use alloc::string::String;
use core::fmt;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// A parameter is out of the supported range.
    InvalidParameter(String),
    /// Characteristic 2 is not supported.
    CharacteristicTwo,
    /// The proposed modulus is reducible.
    Reducible,
    /// The central modulus has repeated factors.
    Inseparable,
    /// The central modulus is not proportional to its reciprocal.
    NotPalindromic,
    /// An element that had to be a unit is not.
    NotInvertible,
    /// A division was expected to be exact.
    NotDivisible,
    /// No selfdual code (or isotropic subspace) exists.
    NonExistence,
    /// An exhaustive search would exceed its budget.
    BudgetExceeded { needed: u128, budget: u128 },
    /// A field too large for the requested operation.
    FieldTooLarge(u64),
}

pub type Result<T> = core::result::Result<T, Error>;

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidParameter(msg) => write!(f, "invalid parameter: {msg}"),
            Error::CharacteristicTwo => f.write_str("characteristic 2 is not supported"),
            Error::Reducible => f.write_str("modulus is not irreducible"),
            Error::Inseparable => {
                f.write_str("central modulus is inseparable; use the inseparable enumeration")
            }
            Error::NotPalindromic => f.write_str("central modulus is not palindromic"),
            Error::NotInvertible => f.write_str("element is not invertible"),
            Error::NotDivisible => f.write_str("division is not exact"),
            Error::NonExistence => f.write_str("no selfdual code exists for these parameters"),
            Error::BudgetExceeded { needed, budget } => {
                write!(f, "search needs {needed} steps, budget is {budget}")
            }
            Error::FieldTooLarge(size) => write!(f, "field of size {size} is too large here"),
        }
    }
}

impl core::error::Error for Error {}

pub(crate) fn invalid(msg: &str) -> Error {
    Error::InvalidParameter(String::from(msg))
}
