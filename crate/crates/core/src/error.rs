use thiserror::Error;

/// Failures reported by the moment engine.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MomentError {
    #[error("invalid quantum numbers (n={n}, l={l}, d={d}): {reason}")]
    InvalidState {
        n: u32,
        l: u32,
        d: u32,
        reason: &'static str,
    },

    #[error("<r^{k}> does not exist for this state (deepest existing order is {bound})")]
    Nonexistent { k: i64, bound: i64 },

    #[error("two-term inversion index k={k} is outside the admissible interval {}", admissible(*.lo, *.hi))]
    InversionRange { k: i64, lo: i64, hi: i64 },

    #[error("moment of order {k} is not available in the table")]
    Missing { k: i64 },

    #[error("expected a moment of order {expected}, got order {got}")]
    OrderMismatch { expected: i64, got: i64 },

    #[error("invalid order range: {0}")]
    Range(String),

    #[error("recurrence coefficient vanishes at order {k}")]
    VanishingCoefficient { k: i64 },
}

fn admissible(lo: i64, hi: i64) -> String {
    if hi < lo {
        "(empty for this state)".to_string()
    } else {
        format!("[{lo}, {hi}]")
    }
}

pub type Result<T, E = MomentError> = std::result::Result<T, E>;
