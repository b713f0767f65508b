use std::collections::BTreeMap;

use crate::error::{MomentError, Result};
use crate::state::{moment_exists, QuantumState};

/// A single dimensionless moment `M_k`.
#[derive(Debug, Clone, PartialEq)]
pub struct Moment<T> {
    pub k: i64,
    pub value: T,
}

impl<T> Moment<T> {
    pub fn new(k: i64, value: T) -> Self {
        Self { k, value }
    }
}

/// Table slot: either a value or an explicit nonexistence flag.
#[derive(Debug, Clone, PartialEq)]
pub enum MomentEntry<T> {
    Exists(T),
    Nonexistent,
}

impl<T> MomentEntry<T> {
    pub fn value(&self) -> Option<&T> {
        match self {
            MomentEntry::Exists(v) => Some(v),
            MomentEntry::Nonexistent => None,
        }
    }

    pub fn exists(&self) -> bool {
        matches!(self, MomentEntry::Exists(_))
    }
}

/// Contiguous moments `k in [kmin, kmax]` of one state.
#[derive(Debug, Clone, PartialEq)]
pub struct MomentTable<T> {
    state: QuantumState,
    kmin: i64,
    kmax: i64,
    entries: BTreeMap<i64, MomentEntry<T>>,
}

impl<T: Clone> MomentTable<T> {
    /// Builds a table over `[kmin, kmax]`, taking values from `values` and
    /// flagging every order below the existence bound.
    ///
    /// Every existing order in the range must be supplied.
    pub(crate) fn from_values(
        state: QuantumState,
        kmin: i64,
        kmax: i64,
        values: &BTreeMap<i64, T>,
    ) -> Result<Self> {
        let mut entries = BTreeMap::new();
        for k in kmin..=kmax {
            let entry = if moment_exists(&state, k) {
                let v = values.get(&k).ok_or(MomentError::Missing { k })?;
                MomentEntry::Exists(v.clone())
            } else {
                MomentEntry::Nonexistent
            };
            entries.insert(k, entry);
        }
        Ok(Self {
            state,
            kmin,
            kmax,
            entries,
        })
    }

    pub fn state(&self) -> &QuantumState {
        &self.state
    }

    pub fn kmin(&self) -> i64 {
        self.kmin
    }

    pub fn kmax(&self) -> i64 {
        self.kmax
    }

    pub fn entry(&self, k: i64) -> Option<&MomentEntry<T>> {
        self.entries.get(&k)
    }

    /// Value of `M_k`, `None` if outside the range or flagged nonexistent.
    pub fn get(&self, k: i64) -> Option<&T> {
        self.entries.get(&k).and_then(MomentEntry::value)
    }

    /// Like [`MomentTable::get`] but distinguishes the two failure modes.
    pub fn require(&self, k: i64) -> Result<&T> {
        match self.entries.get(&k) {
            Some(MomentEntry::Exists(v)) => Ok(v),
            Some(MomentEntry::Nonexistent) => Err(MomentError::Nonexistent {
                k,
                bound: self.state.existence_bound(),
            }),
            None if !moment_exists(&self.state, k) => Err(MomentError::Nonexistent {
                k,
                bound: self.state.existence_bound(),
            }),
            None => Err(MomentError::Missing { k }),
        }
    }

    pub fn moment(&self, k: i64) -> Option<Moment<T>> {
        self.get(k).map(|v| Moment::new(k, v.clone()))
    }

    /// Entries in ascending order of `k`.
    pub fn iter(&self) -> impl Iterator<Item = (i64, &MomentEntry<T>)> {
        self.entries.iter().map(|(k, e)| (*k, e))
    }

    /// Existing moments in ascending order of `k`.
    pub fn moments(&self) -> impl Iterator<Item = Moment<T>> + '_ {
        self.entries
            .iter()
            .filter_map(|(k, e)| e.value().map(|v| Moment::new(*k, v.clone())))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flags_orders_below_bound() {
        let s = QuantumState::new(1, 0, 3).unwrap();
        let values: BTreeMap<i64, f64> = [(-2, 2.0), (-1, 1.0), (0, 1.0)].into_iter().collect();
        let t = MomentTable::from_values(s, -4, 0, &values).unwrap();
        assert_eq!(t.len(), 5);
        assert_eq!(t.entry(-3), Some(&MomentEntry::Nonexistent));
        assert_eq!(t.get(-2), Some(&2.0));
        assert!(matches!(
            t.require(-4),
            Err(MomentError::Nonexistent { k: -4, bound: -2 })
        ));
        assert!(matches!(t.require(1), Err(MomentError::Missing { k: 1 })));
        assert_eq!(t.moments().count(), 3);
    }

    #[test]
    fn missing_value_is_an_error() {
        let s = QuantumState::new(1, 0, 3).unwrap();
        let values: BTreeMap<i64, f64> = [(0, 1.0)].into_iter().collect();
        assert_eq!(
            MomentTable::from_values(s, -1, 0, &values),
            Err(MomentError::Missing { k: -1 })
        );
    }
}
