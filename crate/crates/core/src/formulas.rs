//! Closed forms, Catalan-sum decompositions, recurrences and convolution
//! identities for the Gessel numbers `P(n, r)` and their duals `Q(n, r)`.
//!
//! `P(n, r)` counts monotone paths `(0,0) -> (n+r, n+r-1)` that avoid every
//! diagonal point `(x, x)` with `x >= r`; `Q(n, r)` counts the same paths
//! avoiding `(x, x)` for `1 <= x <= r`. The two are related by
//! `P(n, r) = Q(r, n)` for positive `n` and `r`.
//!
//! All evaluation goes through a [`Gessel`] engine, which owns memo tables
//! and is safe to share between threads.

use std::collections::HashMap;
use std::sync::RwLock;

use crate::error::{Error, Result};
use crate::exact_arith::{self, div_exact_by, mul, mul_by, sub, Count, Tables};
use crate::mutation::Mutation;

/// A parameter pair `(n, r)` with `n >= 0` and `r >= 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GesselIndex {
    n: u32,
    r: u32,
}

impl GesselIndex {
    pub fn new(n: u32, r: u32) -> Result<Self> {
        if r == 0 {
            return Err(Error::Domain(format!(
                "r must be positive (got n={n}, r=0)"
            )));
        }
        Ok(GesselIndex { n, r })
    }

    pub fn n(self) -> u32 {
        self.n
    }

    pub fn r(self) -> u32 {
        self.r
    }

    fn require_positive_n(self, what: &str) -> Result<()> {
        if self.n == 0 {
            return Err(Error::Domain(format!("{what} requires n >= 1")));
        }
        Ok(())
    }
}

/// One proper divisor of `K_r` and the first `n` (if any) at which
/// `d * C(2n, n) / (n + r)` fails to be an integer.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DivisorWitness<T> {
    pub divisor: T,
    pub counterexample_n: Option<u32>,
}

/// Finite evidence that `K_r` is the least multiplier making
/// `K_r * C(2n, n) / (n + r)` integral for every `n`.
///
/// Minimality over all `n` cannot be certified by a finite scan, so a divisor
/// without a witness is reported rather than treated as an error.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinimalityReport<T> {
    pub r: u32,
    pub n_max: u32,
    pub k_r: T,
    /// First `n <= n_max` where `K_r` itself fails, if any.
    pub k_r_failure: Option<u32>,
    /// Proper divisors of `K_r` in increasing order.
    pub divisors: Vec<DivisorWitness<T>>,
}

impl<T> MinimalityReport<T> {
    pub fn k_r_integral(&self) -> bool {
        self.k_r_failure.is_none()
    }

    pub fn first_unrefuted(&self) -> Option<&T> {
        self.divisors
            .iter()
            .find(|w| w.counterexample_n.is_none())
            .map(|w| &w.divisor)
    }

    pub fn all_refuted(&self) -> bool {
        self.first_unrefuted().is_none()
    }

    /// The scan is consistent with `K_r` being minimal.
    pub fn confirmed(&self) -> bool {
        self.k_r_integral() && self.all_refuted()
    }
}

/// Formula engine over a count type `T`.
#[derive(Debug)]
pub struct Gessel<T> {
    tables: Tables<T>,
    mutation: Option<Mutation>,
    // P(0..k, r) per r, filled by forward substitution.
    inverse_memo: RwLock<HashMap<u32, Vec<T>>>,
}

impl<T: Count> Default for Gessel<T> {
    fn default() -> Self {
        Self::new()
    }
}

impl<T: Count> Gessel<T> {
    pub fn new() -> Self {
        Self::build(None)
    }

    /// An engine with one formula constant deliberately corrupted.
    pub fn with_mutation(mutation: Mutation) -> Self {
        Self::build(Some(mutation))
    }

    fn build(mutation: Option<Mutation>) -> Self {
        Gessel {
            tables: Tables::with_mutation(mutation),
            mutation,
            inverse_memo: RwLock::new(HashMap::new()),
        }
    }

    pub fn tables(&self) -> &Tables<T> {
        &self.tables
    }

    pub fn mutation(&self) -> Option<Mutation> {
        self.mutation
    }

    fn mutated(&self, m: Mutation) -> bool {
        self.mutation == Some(m)
    }

    fn central(&self, n: u32) -> Result<T> {
        Ok(self.tables.central_binomial(n)?)
    }

    fn catalan(&self, n: u32) -> Result<T> {
        Ok(self.tables.catalan(n)?)
    }

    fn half_central(&self, n: u32) -> Result<T> {
        Ok(self.tables.half_central(n)?)
    }

    /// `m C(2n, n) C(2r, r) / (2(n + r))`, the shared shape of both closed forms.
    fn scaled_product(&self, m: u32, idx: GesselIndex) -> Result<T> {
        let numerator = mul_by(
            &mul(&self.central(idx.n)?, &self.central(idx.r)?)?,
            m.into(),
        )?;
        let mut denominator = 2 * (u64::from(idx.n) + u64::from(idx.r));
        if self.mutated(Mutation::ClosedDenominator) {
            denominator /= 2;
        }
        Ok(div_exact_by(&numerator, denominator)?)
    }

    /// `P(n, r) = r C(2n, n) C(2r, r) / (2(n + r))`.
    pub fn closed(&self, idx: GesselIndex) -> Result<T> {
        self.scaled_product(idx.r, idx)
    }

    /// `Q(0, r) = C_{r-1}`; `Q(n, r) = n C(2n, n) C(2r, r) / (2(n + r))` for `n > 0`.
    pub fn q_closed(&self, idx: GesselIndex) -> Result<T> {
        if idx.n == 0 {
            let shift = u32::from(self.mutated(Mutation::QBaseIndex));
            return self.catalan(idx.r - 1 + shift);
        }
        self.scaled_product(idx.n, idx)
    }

    /// `P(n, r) = sum_{k=0}^{r-1} C(2k, k) C_{n+r-k-1}`, split by last diagonal touch.
    pub fn via_catalan_sum(&self, idx: GesselIndex) -> Result<T> {
        let shift = u32::from(self.mutated(Mutation::CatalanSumOffset));
        let GesselIndex { n, r } = idx;
        sum_terms((0..r).map(|k| {
            Ok(mul(
                &self.central(k)?,
                &self.catalan(n + r - k - 1 + shift)?,
            )?)
        }))
    }

    /// `Q(n, r) = sum_{k=1}^{n} C_{r+k-1} C(2(n-k), n-k)`, split by first return;
    /// `Q(0, r) = C_{r-1}`.
    pub fn q_via_catalan_sum(&self, idx: GesselIndex) -> Result<T> {
        let GesselIndex { n, r } = idx;
        if n == 0 {
            return self.catalan(r - 1);
        }
        let shift = u32::from(self.mutated(Mutation::QSumOffset));
        sum_terms((1..=n).map(|k| {
            Ok(mul(
                &self.catalan(r + k - 1 + shift)?,
                &self.central(n - k)?,
            )?)
        }))
    }

    /// Walks `P(m, s) = P(m-1, s+1) - C(2s, s) C_{m-1}` down the antidiagonal
    /// `m + s = n + r`, starting from `P(0, n+r) = C(2(n+r), n+r) / 2`.
    pub fn via_recurrence(&self, idx: GesselIndex) -> Result<T> {
        let top = idx.n + idx.r;
        let mut value = if self.mutated(Mutation::RecurrenceSeed) {
            self.central(top)?
        } else {
            self.half_central(top)?
        };
        for m in 1..=idx.n {
            let s = top - m;
            let step = mul(&self.central(s)?, &self.catalan(m - 1)?)?;
            value = sub(&value, &step)?;
        }
        Ok(value)
    }

    /// `sum_{k=1}^{n} C(2(r+k-1), r+k-1) C_{n-k}`, which equals
    /// `C(2(n+r), n+r)/2 - P(n, r)`.
    pub fn eq10_rhs(&self, idx: GesselIndex) -> Result<T> {
        idx.require_positive_n("the tail-touch sum")?;
        let shift = u32::from(self.mutated(Mutation::TailTouchOffset));
        let GesselIndex { n, r } = idx;
        sum_terms((1..=n).map(|k| {
            Ok(mul(
                &self.central(r + k - 1 + shift)?,
                &self.catalan(n - k)?,
            )?)
        }))
    }

    /// `sum_{l=1}^{r} C(2(n+r-l), n+r-l) C_{l-1}`, which equals
    /// `C(2(n+r), n+r)/2 - Q(n, r)`.
    pub fn eq11_rhs(&self, idx: GesselIndex) -> Result<T> {
        idx.require_positive_n("the range-touch sum")?;
        let shift = u32::from(self.mutated(Mutation::RangeTouchOffset));
        let GesselIndex { n, r } = idx;
        sum_terms((1..=r).map(|l| {
            Ok(mul(
                &self.central(n + r - l)?,
                &self.catalan(l - 1 + shift)?,
            )?)
        }))
    }

    /// `sum_{k=0}^{n} P(k, r) C(2(n-k), n-k)`, which equals `C(2(n+r), n+r)/2`.
    pub fn eq12_lhs(&self, idx: GesselIndex) -> Result<T> {
        let shift = u32::from(self.mutated(Mutation::ConvolutionOffset));
        let GesselIndex { n, r } = idx;
        sum_terms((0..=n).map(|k| {
            let p = self.closed(GesselIndex { n: k, r })?;
            Ok(mul(&p, &self.central(n - k + shift)?)?)
        }))
    }

    /// `sum_{k=0}^{r-1} C(2k, k) Q(n, r-k)`, which equals
    /// `C(2(n+r), n+r)/2 - C(2n, n) C(2r, r)/2`.
    pub fn eq13_lhs(&self, idx: GesselIndex) -> Result<T> {
        idx.require_positive_n("the dual convolution")?;
        let shift = u32::from(self.mutated(Mutation::QConvolutionWeight));
        let GesselIndex { n, r } = idx;
        sum_terms((0..r).map(|k| {
            let q = self.q_closed(GesselIndex { n, r: r - k })?;
            Ok(mul(&self.central(k + shift)?, &q)?)
        }))
    }

    /// `C(2(n+r), n+r)/2 - C(2n, n) C(2r, r)/2`, the right side of the dual convolution.
    pub fn eq13_rhs(&self, idx: GesselIndex) -> Result<T> {
        idx.require_positive_n("the dual convolution")?;
        let product = mul(&self.central(idx.n)?, &self.central(idx.r)?)?;
        let half_product = div_exact_by(&product, 2)?;
        Ok(sub(&self.half_central(idx.n + idx.r)?, &half_product)?)
    }

    /// Recovers `P(n, r)` from the convolution identity alone by forward
    /// substitution: `P(n, r) = C(2(n+r), n+r)/2 - sum_{k<n} P(k, r) C(2(n-k), n-k)`.
    pub fn from_eq12(&self, idx: GesselIndex) -> Result<T> {
        let GesselIndex { n, r } = idx;
        let cached = self
            .inverse_memo
            .read()
            .unwrap_or_else(|e| e.into_inner())
            .get(&r)
            .and_then(|row| row.get(n as usize).cloned());
        if let Some(v) = cached {
            return Ok(v);
        }

        let mut memo = self.inverse_memo.write().unwrap_or_else(|e| e.into_inner());
        let row = memo.entry(r).or_default();
        while row.len() <= n as usize {
            let m = row.len() as u32;
            let total = if self.mutated(Mutation::InverseSeed) {
                self.central(m + r)?
            } else {
                self.half_central(m + r)?
            };
            let known = sum_terms(
                row.iter()
                    .enumerate()
                    .map(|(k, p)| Ok(mul(p, &self.central(m - k as u32)?)?)),
            )?;
            row.push(sub(&total, &known)?);
        }
        Ok(row[n as usize].clone())
    }

    /// `K_r = r C(2r, r) / 2`.
    pub fn k_r(&self, r: u32) -> Result<T> {
        if r == 0 {
            return Err(Error::Domain("K_r requires r >= 1".into()));
        }
        let numerator = mul_by(&self.central(r)?, r.into())?;
        if self.mutated(Mutation::KrDivisor) {
            return Ok(numerator);
        }
        Ok(div_exact_by(&numerator, 2)?)
    }

    /// Whether `multiplier * C(2n, n)` is divisible by `n + r`.
    pub fn scaled_central_divisible(&self, multiplier: &T, n: u32, r: u32) -> Result<bool> {
        let value = mul(multiplier, &self.central(n)?)?;
        let modulus = exact_arith::lift::<T>(u64::from(n) + u64::from(r))?;
        Ok(value.is_multiple_of(&modulus))
    }

    /// Scans `0 <= n <= n_max` for evidence that no proper divisor of `K_r`
    /// can replace it.
    pub fn k_r_minimality_check(&self, r: u32, n_max: u32) -> Result<MinimalityReport<T>> {
        let k_r = self.k_r(r)?;
        let first_failure = |d: &T| -> Result<Option<u32>> {
            for n in 0..=n_max {
                if !self.scaled_central_divisible(d, n, r)? {
                    return Ok(Some(n));
                }
            }
            Ok(None)
        };
        let k_r_failure = first_failure(&k_r)?;
        let divisors = proper_divisors(&k_r)
            .into_iter()
            .map(|divisor| {
                let counterexample_n = first_failure(&divisor)?;
                Ok(DivisorWitness {
                    divisor,
                    counterexample_n,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(MinimalityReport {
            r,
            n_max,
            k_r,
            k_r_failure,
            divisors,
        })
    }
}

fn sum_terms<T: Count>(terms: impl Iterator<Item = Result<T>>) -> Result<T> {
    let mut acc = T::zero();
    for term in terms {
        acc = exact_arith::add(&acc, &term?)?;
    }
    Ok(acc)
}

/// Divisors of `value` strictly smaller than it, ascending. Trial division.
pub fn proper_divisors<T: Count>(value: &T) -> Vec<T> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = T::one();
    while d.checked_mul(&d).is_some_and(|sq| &sq <= value) {
        if value.is_multiple_of(&d) {
            let co = value.clone() / d.clone();
            if co != d {
                large.push(co);
            }
            small.push(d.clone());
        }
        d = d + T::one();
    }
    small.extend(large.into_iter().rev());
    // Drop `value` itself.
    small.pop();
    small
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Nat;

    fn ix(n: u32, r: u32) -> GesselIndex {
        GesselIndex::new(n, r).unwrap()
    }

    fn nat(v: u64) -> Nat {
        Nat::from(v)
    }

    fn engine() -> Gessel<Nat> {
        Gessel::new()
    }

    #[test]
    fn index_requires_positive_r() {
        assert!(matches!(GesselIndex::new(3, 0), Err(Error::Domain(_))));
    }

    #[test]
    fn closed_examples() {
        let g = engine();
        assert_eq!(g.closed(ix(3, 1)).unwrap(), nat(5));
        assert_eq!(g.closed(ix(0, 3)).unwrap(), nat(10));
        // Brute-force enumeration gives 9.
        assert_eq!(g.closed(ix(2, 2)).unwrap(), nat(9));
    }

    #[test]
    fn q_closed_examples() {
        let g = engine();
        assert_eq!(g.q_closed(ix(0, 4)).unwrap(), nat(5));
        assert_eq!(g.q_closed(ix(2, 1)).unwrap(), nat(4));
        assert_eq!(g.q_closed(ix(1, 1)).unwrap(), nat(1));
    }

    #[test]
    fn catalan_sum_examples() {
        let g = engine();
        assert_eq!(g.via_catalan_sum(ix(1, 2)).unwrap(), nat(4));
        assert_eq!(g.via_catalan_sum(ix(3, 1)).unwrap(), nat(5));
        assert_eq!(g.via_catalan_sum(ix(0, 2)).unwrap(), nat(3));
    }

    #[test]
    fn q_catalan_sum_examples() {
        let g = engine();
        assert_eq!(g.q_via_catalan_sum(ix(2, 1)).unwrap(), nat(4));
        assert_eq!(g.q_via_catalan_sum(ix(0, 3)).unwrap(), nat(2));
        assert_eq!(g.q_via_catalan_sum(ix(1, 2)).unwrap(), nat(2));
    }

    #[test]
    fn recurrence_examples() {
        let g = engine();
        assert_eq!(g.via_recurrence(ix(1, 1)).unwrap(), nat(1));
        assert_eq!(g.via_recurrence(ix(1, 2)).unwrap(), nat(4));
        assert_eq!(g.via_recurrence(ix(2, 1)).unwrap(), nat(2));
        assert_eq!(g.via_recurrence(ix(0, 5)).unwrap(), nat(126));
    }

    #[test]
    fn tail_and_range_sums() {
        let g = engine();
        assert_eq!(g.eq10_rhs(ix(1, 1)).unwrap(), nat(2));
        assert_eq!(g.eq10_rhs(ix(2, 1)).unwrap(), nat(8));
        assert_eq!(g.eq10_rhs(ix(1, 2)).unwrap(), nat(6));
        assert_eq!(g.eq11_rhs(ix(1, 1)).unwrap(), nat(2));
        assert_eq!(g.eq11_rhs(ix(1, 2)).unwrap(), nat(8));
        assert_eq!(g.eq11_rhs(ix(2, 1)).unwrap(), nat(6));
        assert!(matches!(g.eq10_rhs(ix(0, 1)), Err(Error::Domain(_))));
        assert!(matches!(g.eq11_rhs(ix(0, 1)), Err(Error::Domain(_))));
    }

    #[test]
    fn convolution_examples() {
        let g = engine();
        assert_eq!(g.eq12_lhs(ix(1, 1)).unwrap(), nat(3));
        assert_eq!(g.eq12_lhs(ix(0, 2)).unwrap(), nat(3));
        assert_eq!(g.eq12_lhs(ix(2, 1)).unwrap(), nat(10));
        assert_eq!(g.eq13_lhs(ix(1, 1)).unwrap(), nat(1));
        assert_eq!(g.eq13_lhs(ix(1, 2)).unwrap(), nat(4));
        assert_eq!(g.eq13_lhs(ix(2, 1)).unwrap(), nat(4));
        assert_eq!(g.eq13_rhs(ix(1, 2)).unwrap(), nat(4));
        assert!(matches!(g.eq13_lhs(ix(0, 1)), Err(Error::Domain(_))));
    }

    #[test]
    fn forward_substitution_examples() {
        let g = engine();
        assert_eq!(g.from_eq12(ix(0, 1)).unwrap(), nat(1));
        assert_eq!(g.from_eq12(ix(1, 1)).unwrap(), nat(1));
        // 35 - (3*6 + 4*2)
        assert_eq!(g.from_eq12(ix(2, 2)).unwrap(), nat(9));
        // Memo hit and out-of-order request.
        assert_eq!(g.from_eq12(ix(1, 2)).unwrap(), nat(4));
    }

    #[test]
    fn k_r_examples() {
        let g = engine();
        assert_eq!(g.k_r(1).unwrap(), nat(1));
        assert_eq!(g.k_r(2).unwrap(), nat(6));
        assert_eq!(g.k_r(3).unwrap(), nat(30));
        assert!(g.k_r(0).is_err());
    }

    #[test]
    fn minimality_r2() {
        let report = engine().k_r_minimality_check(2, 10).unwrap();
        assert_eq!(report.k_r, nat(6));
        assert!(report.k_r_integral());
        let divisors: Vec<_> = report.divisors.iter().map(|w| w.divisor.clone()).collect();
        assert_eq!(divisors, vec![nat(1), nat(2), nat(3)]);
        assert!(report.all_refuted());
        // 3 * C(0,0) / 2 already fails at n = 0.
        assert_eq!(report.divisors[2].counterexample_n, Some(0));
    }

    #[test]
    fn minimality_r1_has_no_proper_divisors() {
        let report = engine().k_r_minimality_check(1, 10).unwrap();
        assert_eq!(report.k_r, nat(1));
        assert!(report.divisors.is_empty());
        assert!(report.confirmed());
    }

    #[test]
    fn minimality_r3() {
        let report = engine().k_r_minimality_check(3, 50).unwrap();
        assert_eq!(report.k_r, nat(30));
        assert_eq!(report.divisors.len(), 7);
        assert!(report.confirmed());
    }

    #[test]
    fn short_scan_reports_unrefuted_divisor() {
        // With only n = 0 available, d * 1 / r fails only when r does not divide d.
        let report = engine().k_r_minimality_check(2, 0).unwrap();
        assert_eq!(report.first_unrefuted(), Some(&nat(2)));
        assert!(!report.confirmed());
    }

    #[test]
    fn proper_divisors_by_hand() {
        assert_eq!(proper_divisors(&12u64), vec![1, 2, 3, 4, 6]);
        assert_eq!(proper_divisors(&1u64), Vec::<u64>::new());
        assert_eq!(proper_divisors(&49u64), vec![1, 7]);
        assert_eq!(proper_divisors(&13u64), vec![1]);
    }

    #[test]
    fn recurrence_never_goes_negative_up_to_20() {
        let g = engine();
        for n in 0..=20 {
            for r in 1..=20 {
                assert_eq!(
                    g.via_recurrence(ix(n, r)).unwrap(),
                    g.closed(ix(n, r)).unwrap()
                );
            }
        }
    }

    #[test]
    fn word_engine_overflows_instead_of_wrapping() {
        let g = Gessel::<u64>::new();
        let wide = Gessel::<Nat>::new().closed(ix(10, 10)).unwrap();
        assert_eq!(Nat::from(g.closed(ix(10, 10)).unwrap()), wide);
        assert!(matches!(g.closed(ix(20, 20)), Err(Error::Arith(_))));
    }
}
