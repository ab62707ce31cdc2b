//! Exact non-negative integer arithmetic and the binomial, central binomial
//! and Catalan primitives the rest of the crate is built on.
//!
//! Every routine is generic over a [`Count`] type. Any integer type with
//! checked arithmetic qualifies: [`crate::Nat`] (arbitrary precision) never
//! overflows, while fixed-width types such as `u64` report
//! [`ArithError::Overflow`] instead of wrapping.
//!
//! Division is only ever *exact* division. Every quotient taken in this
//! crate is a theorem about integrality, so a non-zero remainder is reported
//! as [`ArithError::Inexact`] rather than truncated.

use std::fmt::{Debug, Display};
use std::sync::{RwLock, RwLockReadGuard, RwLockWriteGuard};

use num_integer::Integer;
use num_traits::{CheckedAdd, CheckedMul, CheckedSub, FromPrimitive};
use thiserror::Error;

use crate::mutation::Mutation;

/// An exact non-negative integer type usable as a path count.
pub trait Count:
    Clone
    + Ord
    + Debug
    + Display
    + Integer
    + CheckedAdd
    + CheckedSub
    + CheckedMul
    + FromPrimitive
    + Send
    + Sync
    + 'static
{
}

impl<T> Count for T where
    T: Clone
        + Ord
        + Debug
        + Display
        + Integer
        + CheckedAdd
        + CheckedSub
        + CheckedMul
        + FromPrimitive
        + Send
        + Sync
        + 'static
{
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArithError {
    #[error("value does not fit in the count type")]
    Overflow,
    #[error("subtraction {minuend} - {subtrahend} would be negative")]
    Underflow { minuend: String, subtrahend: String },
    #[error("{dividend} is not divisible by {divisor} (remainder {remainder})")]
    Inexact {
        dividend: String,
        divisor: String,
        remainder: String,
    },
    #[error("division by zero")]
    DivisionByZero,
}

pub type Result<T, E = ArithError> = std::result::Result<T, E>;

/// Converts a machine integer into the count type.
pub fn lift<T: Count>(v: u64) -> Result<T> {
    T::from_u64(v).ok_or(ArithError::Overflow)
}

pub fn add<T: Count>(a: &T, b: &T) -> Result<T> {
    a.checked_add(b).ok_or(ArithError::Overflow)
}

pub fn mul<T: Count>(a: &T, b: &T) -> Result<T> {
    a.checked_mul(b).ok_or(ArithError::Overflow)
}

pub fn sub<T: Count>(a: &T, b: &T) -> Result<T> {
    a.checked_sub(b).ok_or_else(|| ArithError::Underflow {
        minuend: a.to_string(),
        subtrahend: b.to_string(),
    })
}

/// `a / b`, failing unless `b` divides `a`.
pub fn div_exact<T: Count>(a: &T, b: &T) -> Result<T> {
    if b.is_zero() {
        return Err(ArithError::DivisionByZero);
    }
    let (q, rem) = a.div_rem(b);
    if rem.is_zero() {
        Ok(q)
    } else {
        Err(ArithError::Inexact {
            dividend: a.to_string(),
            divisor: b.to_string(),
            remainder: rem.to_string(),
        })
    }
}

/// `a / b` for a small machine divisor.
pub fn div_exact_by<T: Count>(a: &T, b: u64) -> Result<T> {
    div_exact(a, &lift(b)?)
}

pub fn mul_by<T: Count>(a: &T, b: u64) -> Result<T> {
    mul(a, &lift(b)?)
}

/// Sum of an iterator of fallible terms, stopping at the first error.
pub fn checked_sum<T: Count>(terms: impl IntoIterator<Item = Result<T>>) -> Result<T> {
    terms
        .into_iter()
        .try_fold(T::zero(), |acc, term| add(&acc, &term?))
}

/// One step up the central binomial ladder:
/// `C(2(r+1), r+1) = 2(2r+1) / (r+1) * C(2r, r)`.
fn central_step<T: Count>(prev: &T, r: u32, mutation: Option<Mutation>) -> Result<T> {
    let mut factor = 2 * (2 * u64::from(r) + 1);
    if mutation == Some(Mutation::CentralStepFactor) {
        factor += 2;
    }
    div_exact_by(&mul_by(prev, factor)?, u64::from(r) + 1)
}

/// `C(n, k)`, zero outside `0 <= k <= n`. Built from a rolling Pascal row.
pub fn binomial<T: Count>(n: u32, k: i64) -> Result<T> {
    if k < 0 || k > i64::from(n) {
        return Ok(T::zero());
    }
    let k = k.min(i64::from(n) - k) as usize;
    let mut row = vec![T::zero(); k + 1];
    row[0] = T::one();
    for i in 1..=n as usize {
        for j in (1..=k.min(i)).rev() {
            row[j] = add(&row[j], &row[j - 1])?;
        }
    }
    Ok(row.swap_remove(k))
}

/// `C(2n, n)`, climbing the central binomial recurrence from `C(0, 0) = 1`.
pub fn central_binomial<T: Count>(n: u32) -> Result<T> {
    (0..n).try_fold(T::one(), |acc, r| central_step(&acc, r, None))
}

/// The Catalan number `C(2n, n) / (n + 1)`.
pub fn catalan<T: Count>(n: u32) -> Result<T> {
    div_exact_by(&central_binomial::<T>(n)?, u64::from(n) + 1)
}

/// Memoized binomial, central binomial and Catalan tables, grown on demand.
///
/// Lookups behave like the free functions: callers on any thread observe
/// identical values regardless of which of them extended a table.
#[derive(Debug)]
pub struct Tables<T> {
    mutation: Option<Mutation>,
    central: RwLock<Vec<T>>,
    catalan: RwLock<Vec<T>>,
    pascal: RwLock<Vec<Vec<T>>>,
}

impl<T: Count> Default for Tables<T> {
    fn default() -> Self {
        Self::new()
    }
}

impl<T: Count> Tables<T> {
    pub fn new() -> Self {
        Self::with_mutation(None)
    }

    pub(crate) fn with_mutation(mutation: Option<Mutation>) -> Self {
        Tables {
            mutation,
            central: RwLock::new(vec![T::one()]),
            catalan: RwLock::new(Vec::new()),
            pascal: RwLock::new(vec![vec![T::one()]]),
        }
    }

    pub fn central_binomial(&self, n: u32) -> Result<T> {
        let idx = n as usize;
        if let Some(v) = read(&self.central).get(idx) {
            return Ok(v.clone());
        }
        let mut table = write(&self.central);
        while table.len() <= idx {
            let r = (table.len() - 1) as u32;
            let next = central_step(&table[r as usize], r, self.mutation)?;
            table.push(next);
        }
        Ok(table[idx].clone())
    }

    pub fn catalan(&self, n: u32) -> Result<T> {
        let idx = n as usize;
        if let Some(v) = read(&self.catalan).get(idx) {
            return Ok(v.clone());
        }
        let mut table = write(&self.catalan);
        while table.len() <= idx {
            let m = table.len() as u32;
            let c = self.central_binomial(m)?;
            let mut divisor = u64::from(m) + 1;
            if self.mutation == Some(Mutation::CatalanDivisor) {
                divisor += 1;
            }
            table.push(div_exact_by(&c, divisor)?);
        }
        Ok(table[idx].clone())
    }

    /// `C(2n, n) / 2`, the unrestricted path count from `(0, 0)` to `(n, n-1)`.
    pub fn half_central(&self, n: u32) -> Result<T> {
        div_exact_by(&self.central_binomial(n)?, 2)
    }

    pub fn binomial(&self, n: u32, k: i64) -> Result<T> {
        if k < 0 || k > i64::from(n) {
            return Ok(T::zero());
        }
        let (row, col) = (n as usize, k as usize);
        if let Some(v) = read(&self.pascal).get(row) {
            return Ok(v[col].clone());
        }
        let mut rows = write(&self.pascal);
        while rows.len() <= row {
            let prev = rows.last().expect("pascal table starts with row 0");
            let mut next = Vec::with_capacity(prev.len() + 1);
            next.push(T::one());
            for pair in prev.windows(2) {
                next.push(add(&pair[0], &pair[1])?);
            }
            next.push(T::one());
            rows.push(next);
        }
        Ok(rows[row][col].clone())
    }
}

// A panic while holding a table lock can only happen mid-push, which leaves
// the vector in a consistent (shorter) state.
fn read<V>(lock: &RwLock<V>) -> RwLockReadGuard<'_, V> {
    lock.read().unwrap_or_else(|e| e.into_inner())
}

fn write<V>(lock: &RwLock<V>) -> RwLockWriteGuard<'_, V> {
    lock.write().unwrap_or_else(|e| e.into_inner())
}
