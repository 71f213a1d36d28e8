use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("extension degree must be at least 1")]
    ZeroDegree,
    #[error("field of order {p}^{k} exceeds the supported size 2^32")]
    FieldTooLarge { p: u32, k: u32 },
    #[error("modulus must be monic of degree {expected}")]
    NotMonic { expected: u32 },
    #[error("digit {digit} is not in GF({p})")]
    DigitOutOfRange { digit: u32, p: u32 },
    #[error("modulus is reducible over GF({p})")]
    Reducible { p: u32 },
    #[error("the root of the modulus is not a primitive element")]
    NotPrimitive,
    #[error("no monic primitive polynomial of degree {k} over GF({p})")]
    NoPrimitivePolynomial { p: u32, k: u32 },
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands belong to different fields")]
    FieldMismatch,
    #[error("operation undefined on the zero polynomial")]
    ZeroPolynomial,
    #[error("GF({q}) is not a subfield of GF({order})")]
    NotSubfield { q: u64, order: u64 },
    #[error("{what} = {value} is out of range [{min}, {max}]")]
    OutOfRange { what: &'static str, value: i128, min: i128, max: i128 },
    #[error("closed-form dimension not applicable to q={q}, m={m}, delta={delta}")]
    FormulaNotApplicable { q: u64, m: u32, delta: u64 },
    #[error("enumeration of {needed} items exceeds the budget {budget}")]
    BudgetExceeded { needed: u128, budget: u128 },
    #[error("coefficient outside GF({q})")]
    NotInAlphabet { q: u64 },
    #[error("delta = {delta} does not divide n = {n}")]
    NotDivisible { delta: u64, n: u64 },
    #[error("codeword is not reversible in the narrow-sense code")]
    NotReversible,
    #[error("codeword is not a member of the code")]
    NotACodeword,
    #[error("codeword evaluates to zero at x = 1")]
    VanishesAtOne,
    #[error("no witness: {0}")]
    NoWitness(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub(crate) fn out_of_range(
    what: &'static str,
    value: impl Into<i128>,
    min: impl Into<i128>,
    max: impl Into<i128>,
) -> Error {
    Error::OutOfRange { what, value: value.into(), min: min.into(), max: max.into() }
}
