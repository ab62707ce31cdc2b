//! Batch verification of the Gessel identities over rectangles of `(n, r)`.
//!
//! Every [`IdentityId`] names one left/right evaluation pair. Pure-formula
//! identities compare two exact formulas; oracle-backed ones compare a
//! formula against brute-force lattice path counts.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::exact_arith::{self, mul, mul_by, sub, Count};
use crate::formulas::{Gessel, GesselIndex};
use crate::lattice_oracle;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum IdentityId {
    /// Closed form for `P` against the path-count oracle.
    Eq1VsOracle,
    /// Catalan-sum decomposition of `P` against the closed form.
    Eq2,
    /// `P(n-1, r+1) - P(n, r) = C(2r, r) C_{n-1}`.
    Eq3,
    /// The full recurrence chain against the closed form.
    Eq3Chain,
    /// Catalan-sum decomposition of `Q` against its closed form.
    Eq4,
    /// `P(n, r) = Q(r, n)`.
    Eq5Symmetry,
    /// Closed form for `Q` against the path-count oracle.
    Eq9VsOracle,
    Eq10,
    Eq11,
    Eq12,
    /// Forward substitution through the convolution against the closed form.
    Eq12Inverse,
    Eq13,
    /// Last-diagonal-touch split of the `P` paths, term by term.
    LastTouchTerms,
    /// First-return split of the `Q` paths, term by term.
    FirstTouchTerms,
    /// Paths `(0,0) -> (n,n)` touching the diagonal only at the ends; `r = 1` only.
    FirstReturn,
    /// `K_r C(2n, n) = (n + r) P(n, r)`.
    KrDivisibility,
}

impl IdentityId {
    pub const ALL: [IdentityId; 16] = [
        IdentityId::Eq1VsOracle,
        IdentityId::Eq2,
        IdentityId::Eq3,
        IdentityId::Eq3Chain,
        IdentityId::Eq4,
        IdentityId::Eq5Symmetry,
        IdentityId::Eq9VsOracle,
        IdentityId::Eq10,
        IdentityId::Eq11,
        IdentityId::Eq12,
        IdentityId::Eq12Inverse,
        IdentityId::Eq13,
        IdentityId::LastTouchTerms,
        IdentityId::FirstTouchTerms,
        IdentityId::FirstReturn,
        IdentityId::KrDivisibility,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            IdentityId::Eq1VsOracle => "EQ1_VS_ORACLE",
            IdentityId::Eq2 => "EQ2",
            IdentityId::Eq3 => "EQ3",
            IdentityId::Eq3Chain => "EQ3_CHAIN",
            IdentityId::Eq4 => "EQ4",
            IdentityId::Eq5Symmetry => "EQ5_SYMMETRY",
            IdentityId::Eq9VsOracle => "EQ9_VS_ORACLE",
            IdentityId::Eq10 => "EQ10",
            IdentityId::Eq11 => "EQ11",
            IdentityId::Eq12 => "EQ12",
            IdentityId::Eq12Inverse => "EQ12_INVERSE",
            IdentityId::Eq13 => "EQ13",
            IdentityId::LastTouchTerms => "LAST_TOUCH_TERMS",
            IdentityId::FirstTouchTerms => "FIRST_TOUCH_TERMS",
            IdentityId::FirstReturn => "FIRST_RETURN",
            IdentityId::KrDivisibility => "KR_DIVISIBILITY",
        }
    }

    /// Whether evaluating this identity runs the lattice-path oracle.
    pub fn oracle_backed(self) -> bool {
        matches!(
            self,
            IdentityId::Eq1VsOracle
                | IdentityId::Eq9VsOracle
                | IdentityId::LastTouchTerms
                | IdentityId::FirstTouchTerms
                | IdentityId::FirstReturn
        )
    }

    /// Checks `(n, r)` against the identity's mathematical domain.
    pub fn check_domain(self, n: u32, r: u32) -> Result<()> {
        if r == 0 {
            return Err(Error::Domain(format!("{self} requires r >= 1")));
        }
        let needs_positive_n = matches!(
            self,
            IdentityId::Eq3
                | IdentityId::Eq4
                | IdentityId::Eq5Symmetry
                | IdentityId::Eq10
                | IdentityId::Eq11
                | IdentityId::Eq13
                | IdentityId::FirstTouchTerms
                | IdentityId::FirstReturn
        );
        if needs_positive_n && n == 0 {
            return Err(Error::Domain(format!("{self} requires n >= 1")));
        }
        if self == IdentityId::FirstReturn && r != 1 {
            return Err(Error::Domain(format!(
                "{self} is indexed by n alone; use r = 1"
            )));
        }
        Ok(())
    }
}

impl fmt::Display for IdentityId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for IdentityId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let wanted = s.trim().to_ascii_uppercase();
        IdentityId::ALL
            .into_iter()
            .find(|id| id.tag() == wanted)
            .ok_or_else(|| Error::UnknownIdentity(s.to_string()))
    }
}

/// One side of an identity: a single value, or a list of per-term values.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Side<T> {
    Value(T),
    Terms(Vec<T>),
}

impl<T: fmt::Display> fmt::Display for Side<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Side::Value(v) => write!(f, "{v}"),
            Side::Terms(ts) => {
                for (i, t) in ts.iter().enumerate() {
                    if i > 0 {
                        f.write_str(";")?;
                    }
                    write!(f, "{t}")?;
                }
                Ok(())
            }
        }
    }
}

/// Outcome of one identity at one `(n, r)`.
///
/// A side is `None` when evaluating it broke an arithmetic invariant; the
/// report then fails and `error` carries the reason.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityReport<T> {
    pub id: IdentityId,
    pub n: u32,
    pub r: u32,
    pub lhs: Option<Side<T>>,
    pub rhs: Option<Side<T>>,
    pub pass: bool,
    pub error: Option<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SuiteConfig {
    /// Oracle-backed cells run only while `n + r <= oracle_cap`.
    pub oracle_cap: u32,
    /// Formula cells run only while `n <= formula_cap` and `r <= formula_cap`.
    pub formula_cap: u32,
    /// Worker threads for the sweep; `None` uses the global pool.
    pub threads: Option<usize>,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            oracle_cap: 20,
            formula_cap: 64,
            threads: None,
        }
    }
}

impl SuiteConfig {
    fn within_caps(&self, id: IdentityId, n: u32, r: u32) -> bool {
        if id.oracle_backed() {
            n + r <= self.oracle_cap
        } else {
            n <= self.formula_cap && r <= self.formula_cap
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteResult<T> {
    /// Ordered by identity, then `n`, then `r`.
    pub reports: Vec<IdentityReport<T>>,
    pub checked: usize,
    pub failed: usize,
    /// Cells outside an identity's domain or beyond the configured caps.
    pub skipped: usize,
    pub elapsed_ms: u128,
}

impl<T> SuiteResult<T> {
    pub fn passed(&self) -> bool {
        self.failed == 0
    }

    /// Failing reports first, each group keeping its original order.
    pub fn failures_first(&self) -> Vec<&IdentityReport<T>> {
        let (bad, good): (Vec<_>, Vec<_>) = self.reports.iter().partition(|r| !r.pass);
        bad.into_iter().chain(good).collect()
    }
}

type Sides<T> = (Result<Side<T>>, Result<Side<T>>);

fn value<T>(v: Result<T>) -> Result<Side<T>> {
    v.map(Side::Value)
}

fn terms<T>(v: Result<Vec<T>>) -> Result<Side<T>> {
    v.map(Side::Terms)
}

fn evaluate<T: Count>(g: &Gessel<T>, id: IdentityId, idx: GesselIndex) -> Sides<T> {
    let (n, r) = (idx.n(), idx.r());
    let t = g.tables();
    let at = |n, r| GesselIndex::new(n, r);
    match id {
        IdentityId::Eq1VsOracle => (
            value(g.closed(idx)),
            value(lattice_oracle::gessel_oracle(n, r)),
        ),
        IdentityId::Eq2 => (value(g.via_catalan_sum(idx)), value(g.closed(idx))),
        IdentityId::Eq3 => (
            value((|| {
                let upper = g.closed(at(n - 1, r + 1)?)?;
                Ok(sub(&upper, &g.closed(idx)?)?)
            })()),
            value((|| Ok(mul(&t.central_binomial(r)?, &t.catalan(n - 1)?)?))()),
        ),
        IdentityId::Eq3Chain => (value(g.via_recurrence(idx)), value(g.closed(idx))),
        IdentityId::Eq4 => (value(g.q_via_catalan_sum(idx)), value(g.q_closed(idx))),
        IdentityId::Eq5Symmetry => (
            value(g.closed(idx)),
            value(at(r, n).and_then(|swapped| g.q_closed(swapped))),
        ),
        IdentityId::Eq9VsOracle => (
            value(g.q_closed(idx)),
            value(lattice_oracle::q_oracle(n, r)),
        ),
        IdentityId::Eq10 => (
            value((|| Ok(sub(&t.half_central(n + r)?, &g.closed(idx)?)?))()),
            value(g.eq10_rhs(idx)),
        ),
        IdentityId::Eq11 => (
            value((|| Ok(sub(&t.half_central(n + r)?, &g.q_closed(idx)?)?))()),
            value(g.eq11_rhs(idx)),
        ),
        IdentityId::Eq12 => (
            value(g.eq12_lhs(idx)),
            value(t.half_central(n + r).map_err(Error::from)),
        ),
        IdentityId::Eq12Inverse => (value(g.from_eq12(idx)), value(g.closed(idx))),
        IdentityId::Eq13 => (value(g.eq13_lhs(idx)), value(g.eq13_rhs(idx))),
        IdentityId::LastTouchTerms => (
            terms(lattice_oracle::last_touch_distribution(n, r).map(|d| d.into_values().collect())),
            terms(
                (0..r)
                    .map(|k| Ok(mul(&t.central_binomial(k)?, &t.catalan(n + r - k - 1)?)?))
                    .collect(),
            ),
        ),
        IdentityId::FirstTouchTerms => (
            terms(
                lattice_oracle::first_touch_distribution(n, r).map(|d| d.into_values().collect()),
            ),
            terms(
                (0..n)
                    .map(|k| {
                        if k == 0 {
                            Ok(t.catalan(n + r - 1)?)
                        } else {
                            Ok(mul(&t.catalan(r + k - 1)?, &t.central_binomial(n - k)?)?)
                        }
                    })
                    .collect(),
            ),
        ),
        IdentityId::FirstReturn => (
            value(lattice_oracle::first_return_count(n)),
            value((|| Ok(mul_by(&t.catalan(n - 1)?, 2)?))()),
        ),
        IdentityId::KrDivisibility => (
            value((|| Ok(mul(&g.k_r(r)?, &t.central_binomial(n)?)?))()),
            value((|| {
                let weight = exact_arith::lift::<T>(u64::from(n) + u64::from(r))?;
                Ok(mul(&weight, &g.closed(idx)?)?)
            })()),
        ),
    }
}

/// Evaluates both sides of `id` at `(n, r)`.
///
/// Fails only when `(n, r)` is outside the identity's domain; arithmetic
/// invariant violations are recorded in the report as a failure.
pub fn run_identity<T: Count>(
    engine: &Gessel<T>,
    id: IdentityId,
    n: u32,
    r: u32,
) -> Result<IdentityReport<T>> {
    id.check_domain(n, r)?;
    let idx = GesselIndex::new(n, r)?;
    let (lhs, rhs) = evaluate(engine, id, idx);
    let error = match (&lhs, &rhs) {
        (Err(e), _) | (_, Err(e)) => Some(e.to_string()),
        _ => None,
    };
    let (lhs, rhs) = (lhs.ok(), rhs.ok());
    let pass = error.is_none() && lhs == rhs;
    Ok(IdentityReport {
        id,
        n,
        r,
        lhs,
        rhs,
        pass,
        error,
    })
}

/// Runs each identity over its valid part of `[0, n_max] x [1, r_max]`.
pub fn run_suite<T: Count>(
    engine: &Gessel<T>,
    ids: &[IdentityId],
    n_max: u32,
    r_max: u32,
    config: &SuiteConfig,
) -> SuiteResult<T> {
    let started = Instant::now();
    let mut ids = ids.to_vec();
    ids.sort();
    ids.dedup();

    let mut cells = Vec::new();
    let mut skipped = 0;
    for &id in &ids {
        for n in 0..=n_max {
            for r in 1..=r_max {
                if id.check_domain(n, r).is_ok() && config.within_caps(id, n, r) {
                    cells.push((id, n, r));
                } else {
                    skipped += 1;
                }
            }
        }
    }

    let sweep = || -> Vec<IdentityReport<T>> {
        cells
            .par_iter()
            .map(|&(id, n, r)| run_identity(engine, id, n, r).expect("cell domain checked"))
            .collect()
    };
    let pool = config
        .threads
        .and_then(|k| rayon::ThreadPoolBuilder::new().num_threads(k).build().ok());
    let reports = match pool {
        Some(pool) => pool.install(sweep),
        None => sweep(),
    };

    let failed = reports.iter().filter(|r| !r.pass).count();
    SuiteResult {
        checked: reports.len(),
        failed,
        skipped,
        reports,
        elapsed_ms: started.elapsed().as_millis(),
    }
}
