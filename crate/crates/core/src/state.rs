//! Bound-state labels and the exact spectral quantities derived from them.
//!
//! All lengths are measured in units of `a0/Z`, so the moments handled by
//! this crate are the dimensionless `M_k = <(Z r / a0)^k>` and the energy is
//! expressed in units of `hbar^2 Z^2 / (mu a0^2)`.

use std::fmt;

use crate::error::{MomentError, Result};
use crate::scalar::Scalar;

/// A d-dimensional hydrogen-like bound state `(n, l, d)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct QuantumState {
    n: u32,
    l: u32,
    d: u32,
}

impl QuantumState {
    /// Validates `n >= 1`, `d >= 2` and `l <= n - 1`.
    pub fn new(n: u32, l: u32, d: u32) -> Result<Self> {
        let reason = if n < 1 {
            Some("n must be at least 1")
        } else if d < 2 {
            Some("d must be at least 2")
        } else if l > n - 1 {
            Some("l must satisfy l <= n-1")
        } else {
            None
        };
        match reason {
            Some(reason) => Err(MomentError::InvalidState { n, l, d, reason }),
            None => Ok(Self { n, l, d }),
        }
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn l(&self) -> u32 {
        self.l
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    /// Number of radial nodes, `n - l - 1`.
    pub fn radial_nodes(&self) -> u32 {
        self.n - self.l - 1
    }

    /// Grand angular index `L = 2l + d - 2`.
    pub fn grand_angular(&self) -> i64 {
        2 * i64::from(self.l) + i64::from(self.d) - 2
    }

    /// Smallest order `k` for which `<r^k>` converges: `-(2l + d - 1)`.
    pub fn existence_bound(&self) -> i64 {
        -(self.grand_angular() + 1)
    }
}

impl fmt::Display for QuantumState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(n={}, l={}, d={})", self.n, self.l, self.d)
    }
}

/// Exact spectral data of a state.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralParams<T> {
    /// `N = n + (d-3)/2`, a half-integer for even `d`.
    pub effective_n: T,
    /// `L = 2l + d - 2`.
    pub grand_angular: i64,
    /// `Lambda = (d-1)(d-3) + 4l(l+d-2)`, always equal to `L^2 - 1`.
    pub angular: i64,
    /// `epsilon = -1/(2 N^2)`.
    pub energy: T,
}

impl<T: Scalar> SpectralParams<T> {
    /// `1/N^2`, the coefficient multiplying `M_k` in the recurrence (divided by `k+1`).
    pub fn inverse_n_squared(&self) -> T {
        T::one() / (self.effective_n.clone() * self.effective_n.clone())
    }
}

pub fn spectral_params<T: Scalar>(state: &QuantumState) -> SpectralParams<T> {
    let (n, l, d) = (
        i64::from(state.n),
        i64::from(state.l),
        i64::from(state.d),
    );
    let effective_n = T::from_ratio(2 * n + d - 3, 2);
    let grand_angular = state.grand_angular();
    let angular = (d - 1) * (d - 3) + 4 * l * (l + d - 2);
    assert_eq!(
        angular,
        grand_angular * grand_angular - 1,
        "angular coefficient identity broken for {state}"
    );
    let energy = -(T::one() / (T::from_int(2) * effective_n.clone() * effective_n.clone()));
    SpectralParams {
        effective_n,
        grand_angular,
        angular,
        energy,
    }
}

/// True iff the radial density times `r^k` is integrable at the origin.
pub fn moment_exists(state: &QuantumState, k: i64) -> bool {
    k >= state.existence_bound()
}

/// The three-term coefficient `c_k = (k/4)(L^2 - k^2)`.
///
/// Equal to `(k/4)(Lambda - (k^2 - 1))`; it vanishes exactly at `k = 0` and `|k| = L`.
pub fn angular_coefficient<T: Scalar>(state: &QuantumState, k: i64) -> T {
    let big_l = state.grand_angular();
    T::from_ratio(k * (big_l * big_l - k * k), 4)
}
