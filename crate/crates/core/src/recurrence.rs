//! Moment tables from the two seeds via the Kramers-Pasternack relations.
//!
//! In dimensionless form the three-term relation reads
//!
//! ```text
//! ((k+1)/N^2) M_k - (2k+1) M_{k-1} + c_k M_{k-2} = 0,    c_k = (k/4)(L^2 - k^2)
//! ```
//!
//! and the two-term inversion is
//!
//! ```text
//! M_{-k-2} = (2/N)^{2k+1} (L-1-k)! / (L+k)! · M_{k-1},    0 <= k <= L-1.
//! ```
//!
//! Positive orders are always generated upward from the seeds and negative
//! orders downward from the `k = 0` inversion, since `c_0 = 0` prevents the
//! three-term relation from producing `M_{-2}` on its own.

use std::collections::BTreeMap;

use crate::error::{MomentError, Result};
use crate::oracle::factorial;
use crate::scalar::Scalar;
use crate::state::{angular_coefficient, moment_exists, spectral_params, QuantumState};
use crate::table::{Moment, MomentTable};

/// Coefficients of `leading·M_k + middle·M_{k-1} + trailing·M_{k-2} = 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct StepCoefficients<T> {
    pub leading: T,
    pub middle: T,
    pub trailing: T,
}

pub fn step_coefficients<T: Scalar>(state: &QuantumState, k: i64) -> StepCoefficients<T> {
    let inv_n2 = spectral_params::<T>(state).inverse_n_squared();
    StepCoefficients {
        leading: T::from_int(k + 1) * inv_n2,
        middle: T::from_int(-(2 * k + 1)),
        trailing: angular_coefficient(state, k),
    }
}

/// `M_{-1} = 1/N^2` and `M_0 = 1`.
pub fn seeds<T: Scalar>(state: &QuantumState) -> (Moment<T>, Moment<T>) {
    let inv_n2 = spectral_params::<T>(state).inverse_n_squared();
    (Moment::new(-1, inv_n2), Moment::new(0, T::one()))
}

/// Orders `-1..=kmax` computed upward from the seeds.
pub fn ascend<T: Scalar>(state: &QuantumState, kmax: i64) -> Result<MomentTable<T>> {
    if kmax < 1 {
        return Err(MomentError::Range(format!(
            "ascend needs kmax >= 1, got {kmax}"
        )));
    }
    let values = ascend_values(state, kmax);
    MomentTable::from_values(*state, -1, kmax, &values)
}

fn ascend_values<T: Scalar>(state: &QuantumState, kmax: i64) -> BTreeMap<i64, T> {
    let (m_neg1, m_0) = seeds::<T>(state);
    let n2 = spectral_params::<T>(state).effective_n;
    let n2 = n2.clone() * n2;
    let mut values = BTreeMap::from([(-1, m_neg1.value), (0, m_0.value)]);
    let (mut prev2, mut prev1) = (values[&-1].clone(), values[&0].clone());
    for k in 1..=kmax {
        let c_k: T = angular_coefficient(state, k);
        let next = n2.clone() / T::from_int(k + 1)
            * (T::from_int(2 * k + 1) * prev1.clone() - c_k * prev2);
        values.insert(k, next.clone());
        prev2 = prev1;
        prev1 = next;
    }
    values
}

/// Two-term inversion: `M_{k-1}` to `M_{-k-2}`.
pub fn invert_two_term<T: Scalar>(
    state: &QuantumState,
    k: i64,
    m_km1: &Moment<T>,
) -> Result<Moment<T>> {
    let big_l = state.grand_angular();
    if k < 0 || k > big_l - 1 {
        return Err(MomentError::InversionRange {
            k,
            lo: 0,
            hi: big_l - 1,
        });
    }
    if m_km1.k != k - 1 {
        return Err(MomentError::OrderMismatch {
            expected: k - 1,
            got: m_km1.k,
        });
    }
    let two_over_n = T::from_int(2) / spectral_params::<T>(state).effective_n;
    let ratio = T::from_big(&factorial((big_l - 1 - k) as u32))
        / T::from_big(&factorial((big_l + k) as u32));
    Ok(Moment::new(
        -k - 2,
        two_over_n.powi(2 * k + 1) * ratio * m_km1.value.clone(),
    ))
}

/// Orders `kmin..=0` computed downward from the `k = 0` inversion.
pub fn descend<T: Scalar>(state: &QuantumState, kmin: i64) -> Result<MomentTable<T>> {
    if kmin > -2 {
        return Err(MomentError::Range(format!(
            "descend needs kmin <= -2, got {kmin}"
        )));
    }
    if !moment_exists(state, kmin) {
        return Err(MomentError::Nonexistent {
            k: kmin,
            bound: state.existence_bound(),
        });
    }
    let values = descend_values(state, kmin)?;
    MomentTable::from_values(*state, kmin, 0, &values)
}

fn descend_values<T: Scalar>(state: &QuantumState, kmin: i64) -> Result<BTreeMap<i64, T>> {
    let (m_neg1, m_0) = seeds::<T>(state);
    let m_neg2 = invert_two_term(state, 0, &m_neg1)?;
    let inv_n2 = spectral_params::<T>(state).inverse_n_squared();
    let mut values = BTreeMap::from([
        (-2, m_neg2.value.clone()),
        (-1, m_neg1.value.clone()),
        (0, m_0.value),
    ]);
    let (mut upper, mut lower) = (m_neg1.value, m_neg2.value);
    // At order j the relation links M_j, M_{j-1} and M_{j-2}; solve for M_{j-2}.
    for j in (kmin + 2..=-1).rev() {
        let c_j: T = angular_coefficient(state, j);
        if c_j.is_zero() {
            return Err(MomentError::VanishingCoefficient { k: j });
        }
        let next = (T::from_int(2 * j + 1) * lower.clone()
            - T::from_int(j + 1) * inv_n2.clone() * upper)
            / c_j;
        values.insert(j - 2, next.clone());
        upper = lower;
        lower = next;
    }
    Ok(values)
}

/// `<rho>` from the `k = 1` relation: `(3/2) N^2 - Lambda/8`.
pub fn closed_form_r_reduced<T: Scalar>(state: &QuantumState) -> T {
    let p = spectral_params::<T>(state);
    T::from_ratio(3, 2) * p.effective_n.clone() * p.effective_n - T::from_ratio(p.angular, 8)
}

/// Expanded polynomial `(1/4)[d^2 + d(6n-2l-7) + 2(3n^2-9n-l^2+2l+6)]`.
pub fn closed_form_r_polynomial<T: Scalar>(state: &QuantumState) -> T {
    let (n, l, d) = (
        i64::from(state.n()),
        i64::from(state.l()),
        i64::from(state.d()),
    );
    let bracket = d * d + d * (6 * n - 2 * l - 7) + 2 * (3 * n * n - 9 * n - l * l + 2 * l + 6);
    T::from_ratio(bracket, 4)
}

/// `M_1` in closed form; both algebraic routes are evaluated and must agree.
pub fn closed_form_r<T: Scalar>(state: &QuantumState) -> Moment<T> {
    let reduced = closed_form_r_reduced::<T>(state);
    let expanded = closed_form_r_polynomial::<T>(state);
    if T::EXACT {
        assert_eq!(reduced, expanded, "closed forms of <r> disagree for {state}");
    }
    Moment::new(1, reduced)
}

/// Central potential entering the general Kramers identity, in units where
/// `mu/hbar^2 = 1` and lengths are `a0/Z`.
pub trait CentralPotential<T: Scalar> {
    /// `<rho^{k+1} v'(rho)>`.
    fn force_moment(&self, table: &MomentTable<T>, k: i64) -> Result<T>;
    /// `<rho^k v(rho)>`.
    fn potential_moment(&self, table: &MomentTable<T>, k: i64) -> Result<T>;
}

/// `v(rho) = -1/rho`.
#[derive(Debug, Clone, Copy, Default)]
pub struct Coulomb;

impl<T: Scalar> CentralPotential<T> for Coulomb {
    fn force_moment(&self, table: &MomentTable<T>, k: i64) -> Result<T> {
        table.require(k - 1).cloned()
    }

    fn potential_moment(&self, table: &MomentTable<T>, k: i64) -> Result<T> {
        table.require(k - 1).map(|v| -v.clone())
    }
}

/// Value of the left-hand side of the general Kramers identity.
#[derive(Debug, Clone, PartialEq)]
pub struct KramersResidual<T> {
    pub state: QuantumState,
    pub k: i64,
    pub residual: T,
}

impl<T: Scalar> KramersResidual<T> {
    pub fn is_zero(&self) -> bool {
        self.residual.is_zero()
    }
}

/// `2(k+1) eps M_k - <rho^{k+1} v'> - 2(k+1) <rho^k v> - (k/4)(Lambda - (k^2-1)) M_{k-2}`
/// for an arbitrary central potential.
pub fn kramers_residual_with<T: Scalar, P: CentralPotential<T>>(
    state: &QuantumState,
    k: i64,
    table: &MomentTable<T>,
    potential: &P,
) -> Result<KramersResidual<T>> {
    let p = spectral_params::<T>(state);
    let m_k = table.require(k)?.clone();
    let m_km2 = table.require(k - 2)?.clone();
    let twice_k1 = T::from_int(2 * (k + 1));
    let bracket = T::from_ratio(k * (p.angular - (k * k - 1)), 4);
    let residual = twice_k1.clone() * p.energy * m_k
        - potential.force_moment(table, k)?
        - twice_k1 * potential.potential_moment(table, k)?
        - bracket * m_km2;
    Ok(KramersResidual {
        state: *state,
        k,
        residual,
    })
}

/// Kramers identity residual for the Coulomb potential.
pub fn kramers_residual<T: Scalar>(
    state: &QuantumState,
    k: i64,
    table: &MomentTable<T>,
) -> Result<KramersResidual<T>> {
    kramers_residual_with(state, k, table, &Coulomb)
}

/// Merged table over `[kmin, kmax]`; orders below the existence bound are flagged.
pub fn full_table<T: Scalar>(
    state: &QuantumState,
    kmin: i64,
    kmax: i64,
) -> Result<MomentTable<T>> {
    if kmin > kmax {
        return Err(MomentError::Range(format!("kmin={kmin} > kmax={kmax}")));
    }
    let mut values = if kmax >= 1 {
        ascend_values(state, kmax)
    } else {
        let (a, b) = seeds::<T>(state);
        BTreeMap::from([(a.k, a.value), (b.k, b.value)])
    };
    let deepest = kmin.max(state.existence_bound());
    if deepest <= -2 {
        values.extend(descend_values(state, deepest)?);
    }
    MomentTable::from_values(*state, kmin, kmax, &values)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rational;
    use crate::table::MomentEntry;
    use num_rational::BigRational;

    type Q = BigRational;

    fn st(n: u32, l: u32, d: u32) -> QuantumState {
        QuantumState::new(n, l, d).unwrap()
    }

    #[test]
    fn seed_values() {
        let (a, b) = seeds::<Q>(&st(1, 0, 3));
        assert_eq!((a.k, a.value, b.k, b.value), (-1, rational(1, 1), 0, rational(1, 1)));
        assert_eq!(seeds::<Q>(&st(2, 1, 3)).0.value, rational(1, 4));
        assert_eq!(seeds::<Q>(&st(1, 0, 2)).0.value, rational(4, 1));
    }

    #[test]
    fn ascend_examples() {
        let t = ascend::<Q>(&st(1, 0, 3), 2).unwrap();
        assert_eq!(t.get(1), Some(&rational(3, 2)));
        assert_eq!(t.get(2), Some(&rational(3, 1)));
        assert_eq!((t.kmin(), t.kmax()), (-1, 2));
        let t = ascend::<Q>(&st(2, 1, 3), 2).unwrap();
        assert_eq!(t.get(1), Some(&rational(5, 1)));
        assert_eq!(t.get(2), Some(&rational(30, 1)));
        let t = ascend::<Q>(&st(1, 0, 2), 1).unwrap();
        assert_eq!(t.get(1), Some(&rational(1, 2)));
        let t = ascend::<Q>(&st(1, 0, 5), 1).unwrap();
        assert_eq!(t.get(1), Some(&rational(5, 1)));
        assert!(ascend::<Q>(&st(1, 0, 3), 0).is_err());
    }

    #[test]
    fn inversion_examples() {
        let s = st(2, 1, 3);
        let m = invert_two_term(&s, 0, &Moment::new(-1, rational(1, 4))).unwrap();
        assert_eq!(m, Moment::new(-2, rational(1, 12)));
        let m = invert_two_term(&s, 1, &Moment::new(0, rational(1, 1))).unwrap();
        assert_eq!(m, Moment::new(-3, rational(1, 24)));
        assert_eq!(
            invert_two_term(&st(1, 0, 2), 0, &Moment::new(-1, rational(4, 1))),
            Err(MomentError::InversionRange { k: 0, lo: 0, hi: -1 })
        );
        assert_eq!(
            invert_two_term(&s, 3, &Moment::new(2, rational(30, 1))),
            Err(MomentError::InversionRange { k: 3, lo: 0, hi: 2 })
        );
        assert_eq!(
            invert_two_term(&s, 1, &Moment::new(1, rational(5, 1))),
            Err(MomentError::OrderMismatch { expected: 0, got: 1 })
        );
    }

    #[test]
    fn inversion_range_message_names_interval() {
        let err = invert_two_term(&st(2, 1, 3), 5, &Moment::new(4, rational(1, 1))).unwrap_err();
        assert!(err.to_string().contains("[0, 2]"), "{err}");
        let err = invert_two_term(&st(1, 0, 2), 0, &Moment::new(-1, rational(4, 1))).unwrap_err();
        assert!(err.to_string().contains("empty"), "{err}");
    }

    #[test]
    fn descend_examples() {
        let t = descend::<Q>(&st(2, 1, 3), -3).unwrap();
        assert_eq!(t.get(-2), Some(&rational(1, 12)));
        assert_eq!(t.get(-3), Some(&rational(1, 24)));
        assert_eq!(
            descend::<Q>(&st(2, 1, 3), -6).unwrap_err(),
            MomentError::Nonexistent { k: -6, bound: -4 }
        );
        let s = st(3, 2, 3);
        let t = descend::<Q>(&s, -4).unwrap();
        assert_eq!(t.get(-2), Some(&rational(2, 135)));
        let via_inversion = invert_two_term(&s, 1, &Moment::new(0, rational(1, 1))).unwrap();
        assert_eq!(t.get(-3), Some(&via_inversion.value));
        assert!(descend::<Q>(&s, -1).is_err());
        assert!(descend::<Q>(&st(1, 0, 2), -2).is_err());
    }

    #[test]
    fn closed_form_examples() {
        assert_eq!(closed_form_r::<Q>(&st(1, 0, 3)).value, rational(3, 2));
        assert_eq!(closed_form_r::<Q>(&st(2, 1, 3)).value, rational(5, 1));
        assert_eq!(closed_form_r::<Q>(&st(1, 0, 2)).value, rational(1, 2));
        assert_eq!(closed_form_r_polynomial::<Q>(&st(1, 0, 2)), rational(1, 2));
        assert_eq!(closed_form_r::<f64>(&st(1, 0, 3)).value, 1.5);
    }

    #[test]
    fn residual_examples() {
        let s = st(1, 0, 3);
        let t = ascend::<Q>(&s, 2).unwrap();
        assert!(kramers_residual(&s, 1, &t).unwrap().is_zero());
        let s = st(2, 1, 3);
        let t = ascend::<Q>(&s, 2).unwrap();
        assert!(kramers_residual(&s, 2, &t).unwrap().is_zero());
        let s = st(2, 0, 4);
        let t = ascend::<Q>(&s, 3).unwrap();
        assert!(kramers_residual(&s, 3, &t).unwrap().is_zero());
    }

    #[test]
    fn residual_errors_on_missing_or_nonexistent() {
        let s = st(1, 0, 3);
        let t = ascend::<Q>(&s, 2).unwrap();
        assert_eq!(
            kramers_residual(&s, 3, &t).unwrap_err(),
            MomentError::Missing { k: 3 }
        );
        let t = full_table::<Q>(&s, -4, 2).unwrap();
        assert_eq!(
            kramers_residual(&s, -1, &t).unwrap_err(),
            MomentError::Nonexistent { k: -3, bound: -2 }
        );
    }

    #[test]
    fn residual_detects_a_wrong_value() {
        let s = st(2, 1, 3);
        let mut values = BTreeMap::from([
            (-1, rational(1, 4)),
            (0, rational(1, 1)),
            (1, rational(5, 1)),
            (2, rational(31, 1)),
        ]);
        let t = MomentTable::from_values(s, -1, 2, &values).unwrap();
        assert!(!kramers_residual(&s, 2, &t).unwrap().is_zero());
        values.insert(2, rational(30, 1));
        let t = MomentTable::from_values(s, -1, 2, &values).unwrap();
        assert!(kramers_residual(&s, 2, &t).unwrap().is_zero());
    }

    #[test]
    fn full_table_examples() {
        let t = full_table::<Q>(&st(1, 0, 3), -3, 0).unwrap();
        assert_eq!(t.entry(-3), Some(&MomentEntry::Nonexistent));
        assert_eq!(t.get(-2), Some(&rational(2, 1)));
        assert_eq!(t.get(-1), Some(&rational(1, 1)));
        assert_eq!(t.get(0), Some(&rational(1, 1)));
        let t = full_table::<Q>(&st(1, 0, 3), 0, 0).unwrap();
        assert_eq!(t.len(), 1);
        assert_eq!(t.get(0), Some(&rational(1, 1)));
        let t = full_table::<Q>(&st(2, 1, 3), -4, 2).unwrap();
        assert_eq!(t.get(-3), Some(&rational(1, 24)));
        assert_eq!(t.get(2), Some(&rational(30, 1)));
        assert!(full_table::<Q>(&st(1, 0, 3), 1, 0).is_err());
        // entirely below the bound: every order flagged, nothing fails
        let t = full_table::<Q>(&st(1, 0, 2), -5, -2).unwrap();
        assert!(t.iter().all(|(_, e)| !e.exists()));
    }

    #[test]
    fn float_instantiation_tracks_exact() {
        let s = st(4, 2, 5);
        let exact = full_table::<Q>(&s, -6, 8).unwrap();
        let approx = full_table::<f64>(&s, -6, 8).unwrap();
        for (k, e) in exact.iter() {
            let want = num_traits::ToPrimitive::to_f64(e.value().unwrap()).unwrap();
            let got = *approx.get(k).unwrap();
            assert!((got - want).abs() <= 1e-10 * want, "k={k}: {got} vs {want}");
        }
    }
}
