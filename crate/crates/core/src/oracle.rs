//! Independent ground truth for the moments.
//!
//! The radial function of `(n, l, d)` in the variable `rho = Z r / a0` is
//!
//! ```text
//! R(rho) ∝ rho^l · exp(-rho/N) · L_{n_r}^{(alpha)}(2 rho / N),   n_r = n - l - 1,  alpha = 2l + d - 2
//! ```
//!
//! With `x = 2 rho / N` the moment integral becomes
//!
//! ```text
//! I(k) = ∫ rho^{d-1+k} R^2 drho = (N/2)^m · Σ_{i,j} c_i c_j Γ(m + i + j),   m = 2l + d + k
//! ```
//!
//! where `c_j` are the coefficients of the Laguerre polynomial in `x`. Every
//! Gamma argument is a positive integer once the moment exists, so `I(k)` is
//! exact and `M_k = I(k) / I(0)` needs no normalization constant.
//!
//! Nothing here depends on the recurrences.

use std::sync::{OnceLock, RwLock};

use num_bigint::BigInt;
use num_traits::One;

use crate::error::{MomentError, Result};
use crate::scalar::Scalar;
use crate::state::{moment_exists, spectral_params, QuantumState};

static FACTORIALS: OnceLock<RwLock<Vec<BigInt>>> = OnceLock::new();

/// `m!` as an exact big integer, memoized for the whole process.
pub fn factorial(m: u32) -> BigInt {
    let cache = FACTORIALS.get_or_init(|| RwLock::new(vec![BigInt::one()]));
    let idx = m as usize;
    if let Some(v) = cache.read().expect("factorial cache poisoned").get(idx) {
        return v.clone();
    }
    let mut table = cache.write().expect("factorial cache poisoned");
    while table.len() <= idx {
        let next = table.last().unwrap() * BigInt::from(table.len());
        table.push(next);
    }
    table[idx].clone()
}

pub fn binomial(top: u32, bottom: u32) -> BigInt {
    if bottom > top {
        return BigInt::from(0);
    }
    factorial(top) / (factorial(bottom) * factorial(top - bottom))
}

/// Coefficients `c_0..c_{n_r}` of `L_{n_r}^{(alpha)}(x) = Σ c_j x^j`.
#[derive(Debug, Clone, PartialEq)]
pub struct RadialPolynomial<T> {
    pub coefficients: Vec<T>,
}

impl<T: Scalar> RadialPolynomial<T> {
    pub fn degree(&self) -> usize {
        self.coefficients.len() - 1
    }

    pub fn eval(&self, x: &T) -> T {
        self.coefficients
            .iter()
            .rev()
            .fold(T::zero(), |acc, c| acc * x.clone() + c.clone())
    }
}

/// `c_j = (-1)^j · C(n_r + alpha, n_r - j) / j!`.
pub fn laguerre_coefficients<T: Scalar>(n_r: u32, alpha: u32) -> RadialPolynomial<T> {
    let coefficients = (0..=n_r)
        .map(|j| {
            let c = T::from_big(&binomial(n_r + alpha, n_r - j)) / T::from_big(&factorial(j));
            if j % 2 == 1 {
                -c
            } else {
                c
            }
        })
        .collect();
    RadialPolynomial { coefficients }
}

/// Unnormalized moment integral `I(k)` (the squared amplitude is left out).
pub fn radial_integral<T: Scalar>(state: &QuantumState, k: i64) -> Result<T> {
    let bound = state.existence_bound();
    if !moment_exists(state, k) {
        return Err(MomentError::Nonexistent { k, bound });
    }
    let m = 2 * i64::from(state.l()) + i64::from(state.d()) + k;
    let half_n = spectral_params::<T>(state).effective_n / T::from_int(2);
    Ok(half_n.powi(m) * gamma_sum(&state_polynomial::<T>(state), m))
}

fn state_polynomial<T: Scalar>(state: &QuantumState) -> RadialPolynomial<T> {
    laguerre_coefficients(state.radial_nodes(), state.grand_angular() as u32)
}

/// `Σ_{i,j} c_i c_j (m + i + j - 1)!` for `m >= 1`.
fn gamma_sum<T: Scalar>(poly: &RadialPolynomial<T>, m: i64) -> T {
    let base = u32::try_from(m - 1).expect("gamma argument is positive");
    let mut sum = T::zero();
    for (i, ci) in poly.coefficients.iter().enumerate() {
        for (j, cj) in poly.coefficients.iter().enumerate() {
            let g = T::from_big(&factorial(base + (i + j) as u32));
            sum = sum + ci.clone() * cj.clone() * g;
        }
    }
    sum
}

/// `M_k = I(k) / I(0)` by direct integration of the squared wavefunction.
pub fn oracle_moment<T: Scalar>(state: &QuantumState, k: i64) -> Result<T> {
    if !moment_exists(state, k) {
        return Err(MomentError::Nonexistent {
            k,
            bound: state.existence_bound(),
        });
    }
    let m0 = 2 * i64::from(state.l()) + i64::from(state.d());
    let half_n = spectral_params::<T>(state).effective_n / T::from_int(2);
    let poly = state_polynomial::<T>(state);
    // (N/2)^{m0} cancels in the ratio.
    Ok(half_n.powi(k) * gamma_sum(&poly, m0 + k) / gamma_sum(&poly, m0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rational;
    use num_rational::BigRational;
    use num_traits::Zero;

    type Q = BigRational;

    fn st(n: u32, l: u32, d: u32) -> QuantumState {
        QuantumState::new(n, l, d).unwrap()
    }

    #[test]
    fn factorials() {
        assert_eq!(factorial(0), BigInt::from(1));
        assert_eq!(factorial(5), BigInt::from(120));
        assert_eq!(factorial(20), BigInt::from(2_432_902_008_176_640_000u64));
        assert_eq!(binomial(5, 2), BigInt::from(10));
        assert_eq!(binomial(2, 5), BigInt::from(0));
    }

    #[test]
    fn laguerre_examples() {
        let p = laguerre_coefficients::<Q>(0, 7);
        assert_eq!(p.coefficients, vec![rational(1, 1)]);
        let p = laguerre_coefficients::<Q>(1, 1);
        assert_eq!(p.coefficients, vec![rational(2, 1), rational(-1, 1)]);
        let p = laguerre_coefficients::<Q>(2, 0);
        assert_eq!(
            p.coefficients,
            vec![rational(1, 1), rational(-2, 1), rational(1, 2)]
        );
        assert_eq!(p.degree(), 2);
        assert!(!p.coefficients[2].is_zero());
    }

    #[test]
    fn laguerre_satisfies_three_term_recurrence() {
        // (n+1) L_{n+1} = (2n+1+a-x) L_n - (n+a) L_{n-1}, checked pointwise.
        for alpha in 0..5u32 {
            for n in 1..7u32 {
                for x in [rational(0, 1), rational(1, 3), rational(5, 2), rational(7, 1)] {
                    let a = i64::from(alpha);
                    let ni = i64::from(n);
                    let next = laguerre_coefficients::<Q>(n + 1, alpha).eval(&x);
                    let cur = laguerre_coefficients::<Q>(n, alpha).eval(&x);
                    let prev = laguerre_coefficients::<Q>(n - 1, alpha).eval(&x);
                    let lhs = rational(ni + 1, 1) * next;
                    let rhs = (rational(2 * ni + 1 + a, 1) - x.clone()) * cur
                        - rational(ni + a, 1) * prev;
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn hand_computed_examples() {
        assert_eq!(oracle_moment::<Q>(&st(2, 0, 3), 1).unwrap(), rational(6, 1));
        assert_eq!(oracle_moment::<Q>(&st(2, 0, 3), -2).unwrap(), rational(1, 4));
        for d in 2..9 {
            assert_eq!(oracle_moment::<Q>(&st(1, 0, d), 0).unwrap(), rational(1, 1));
        }
    }

    #[test]
    fn nonexistent_is_an_error() {
        assert_eq!(
            oracle_moment::<Q>(&st(1, 0, 3), -3),
            Err(MomentError::Nonexistent { k: -3, bound: -2 })
        );
        assert!(radial_integral::<Q>(&st(1, 0, 2), -2).is_err());
    }

    #[test]
    fn norm_is_positive_and_seed_recovered() {
        for n in 1..=6 {
            for l in 0..n {
                for d in 2..=8 {
                    let s = st(n, l, d);
                    assert!(radial_integral::<Q>(&s, 0).unwrap() > Q::zero());
                    let p = spectral_params::<Q>(&s);
                    let m_1 = oracle_moment::<Q>(&s, -1).unwrap();
                    assert_eq!(m_1, p.inverse_n_squared(), "{s}");
                    // virial: epsilon = -<1/rho>/2
                    assert_eq!(p.energy, -m_1 / rational(2, 1));
                }
            }
        }
    }

    #[test]
    fn float_oracle_tracks_exact() {
        let s = st(3, 1, 4);
        for k in -3..6 {
            let exact = oracle_moment::<Q>(&s, k).unwrap();
            let approx = oracle_moment::<f64>(&s, k).unwrap();
            let exact_f = num_traits::ToPrimitive::to_f64(&exact).unwrap();
            assert!((approx - exact_f).abs() <= 1e-9 * exact_f.abs(), "k={k}");
        }
    }
}
