use thiserror::Error;

/// Errors raised by the lab's exact computations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LabError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("group order {p}^{n} exceeds the supported limit of 2^24 elements")]
    OrderTooLarge { p: u64, n: u32 },
    #[error("dimension must be at least 1")]
    ZeroDimension,
    #[error("group mismatch: F_{left_p}^{left_n} vs F_{right_p}^{right_n}")]
    CtxMismatch {
        left_p: u32,
        left_n: u32,
        right_p: u32,
        right_n: u32,
    },
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("{0} must be nonempty")]
    EmptySet(&'static str),
    #[error("budget exceeded in {what}: needs {needed} steps, budget is {budget}")]
    BudgetExceeded {
        what: &'static str,
        needed: u128,
        budget: u64,
    },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, LabError>;

/// An upper limit on the number of elementary enumeration steps an operation
/// may perform before refusing to start.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget(pub u64);

impl Budget {
    pub const DEFAULT: Budget = Budget(1 << 32);

    pub fn check(self, what: &'static str, needed: u128) -> Result<()> {
        if needed > self.0 as u128 {
            Err(LabError::BudgetExceeded {
                what,
                needed,
                budget: self.0,
            })
        } else {
            Ok(())
        }
    }
}

impl Default for Budget {
    fn default() -> Self {
        Budget::DEFAULT
    }
}
