use thiserror::Error;

/// Theorem-style maximality conditions, used to report which test failed
/// (or could not be decided) when checking whether Z[alpha] is maximal.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum MaximalityCondition {
    /// (i) the constant term must be squarefree.
    SquarefreeB,
    /// (ii) the 2-adic congruence family on (a, b) mod 4.
    Mod4Family,
    /// (iii) the 3-adic congruence family on (a, b) mod 9.
    Mod9Family,
    /// (iv) primes dividing 6^6 b - 5^5 a^6 but not ab must do so to the first power.
    TameDiscriminantPart,
}

impl MaximalityCondition {
    /// Roman-numeral label used in reports.
    pub fn label(self) -> &'static str {
        match self {
            MaximalityCondition::SquarefreeB => "i",
            MaximalityCondition::Mod4Family => "ii",
            MaximalityCondition::Mod9Family => "iii",
            MaximalityCondition::TameDiscriminantPart => "iv",
        }
    }
}

impl std::fmt::Display for MaximalityCondition {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.label())
    }
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not prime")]
    InvalidPrime(u64),

    #[error("value is zero; no unit part exists")]
    ZeroValue,

    #[error("degenerate trinomial: b must be nonzero")]
    DegenerateInput,

    #[error("polynomial division requires a monic divisor")]
    NonMonicDivisor,

    #[error("irrelevant modulus: {0}")]
    IrrelevantModulus(String),

    #[error("side does not belong to the principal polygon")]
    InvalidSide,

    #[error("invalid polynomial: {0}")]
    InvalidPolynomial(String),

    #[error("enumeration too large: {0}")]
    TooLarge(String),

    #[error("x^6 + ({a})*x^5 + ({b}) is reducible over Q")]
    ReducibleInput { a: String, b: String },

    #[error("refinement search exceeded its iteration cap")]
    NonTerminating,

    #[error("configuration outside the catalogued cases: {0}")]
    UncataloguedCase(String),

    #[error("splitting is not determined for this input")]
    Undetermined,

    #[error("splitting type at p = {p} not covered by the exponent table: {entries:?}")]
    FragmentMiss { p: u64, entries: Vec<(u32, u32)> },

    #[error("condition ({condition}) could not be decided: {detail}")]
    IndeterminateCondition {
        condition: MaximalityCondition,
        detail: String,
    },

    #[error("internal consistency check failed: {0}")]
    SelfCheckFailed(String),
}

pub type Result<T> = std::result::Result<T, Error>;
