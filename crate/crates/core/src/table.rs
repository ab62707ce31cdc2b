//! Single values and rectangular tables of `P` or `Q`, by a chosen method.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::exact_arith::Count;
use crate::formulas::{Gessel, GesselIndex};
use crate::lattice_oracle;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Kind {
    P,
    Q,
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Kind::P => "P",
            Kind::Q => "Q",
        })
    }
}

impl FromStr for Kind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "P" | "p" => Ok(Kind::P),
            "Q" | "q" => Ok(Kind::Q),
            _ => Err(Error::Domain(format!(
                "unknown kind `{s}` (expected P or Q)"
            ))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum Method {
    #[default]
    Closed,
    /// Catalan-sum decomposition.
    Sum,
    Recurrence,
    /// Brute-force lattice path count.
    Oracle,
    /// Forward substitution through the convolution identity; `P` only.
    Eq12,
}

impl Method {
    pub const ALL: [Method; 5] = [
        Method::Closed,
        Method::Sum,
        Method::Recurrence,
        Method::Oracle,
        Method::Eq12,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Method::Closed => "closed",
            Method::Sum => "sum",
            Method::Recurrence => "recurrence",
            Method::Oracle => "oracle",
            Method::Eq12 => "eq12",
        }
    }

    pub fn applies_to(self, kind: Kind) -> bool {
        !(kind == Kind::Q && self == Method::Eq12)
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Method::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| Error::Domain(format!("unknown method `{s}`")))
    }
}

/// Computes `P(n, r)` or `Q(n, r)` with the given method.
///
/// `Q` by recurrence goes through `Q(n, r) = P(r, n)` for `n >= 1` and
/// `Q(0, r) = C_{r-1}`.
pub fn compute<T: Count>(
    engine: &Gessel<T>,
    kind: Kind,
    method: Method,
    n: u32,
    r: u32,
) -> Result<T> {
    let idx = GesselIndex::new(n, r)?;
    if !method.applies_to(kind) {
        return Err(Error::Domain(format!(
            "method {method} is not defined for {kind}"
        )));
    }
    match (kind, method) {
        (Kind::P, Method::Closed) => engine.closed(idx),
        (Kind::P, Method::Sum) => engine.via_catalan_sum(idx),
        (Kind::P, Method::Recurrence) => engine.via_recurrence(idx),
        (Kind::P, Method::Oracle) => lattice_oracle::gessel_oracle(n, r),
        (Kind::P, Method::Eq12) => engine.from_eq12(idx),
        (Kind::Q, Method::Closed) => engine.q_closed(idx),
        (Kind::Q, Method::Sum) => engine.q_via_catalan_sum(idx),
        (Kind::Q, Method::Recurrence) if n == 0 => Ok(engine.tables().catalan(r - 1)?),
        (Kind::Q, Method::Recurrence) => engine.via_recurrence(GesselIndex::new(r, n)?),
        (Kind::Q, Method::Oracle) => lattice_oracle::q_oracle(n, r),
        (Kind::Q, Method::Eq12) => unreachable!("rejected above"),
    }
}

/// Restricts a table to one row or column.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Fix {
    N(u32),
    R(u32),
}

impl FromStr for Fix {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Domain(format!("expected n=<index> or r=<index>, got `{s}`"));
        let (axis, value) = s.split_once('=').ok_or_else(bad)?;
        let value: u32 = value.trim().parse().map_err(|_| bad())?;
        match axis.trim() {
            "n" => Ok(Fix::N(value)),
            "r" if value >= 1 => Ok(Fix::R(value)),
            "r" => Err(Error::Domain("r must be positive".into())),
            _ => Err(bad()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableEntry<T> {
    pub n: u32,
    pub r: u32,
    pub value: T,
}

/// Values of one kind over a rectangle, with the method that produced them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SequenceTable<T> {
    pub kind: Kind,
    pub method: Method,
    pub fix: Option<Fix>,
    /// Ordered by `n`, then `r`.
    pub entries: Vec<TableEntry<T>>,
}

/// Tabulates over `0 <= n <= n_max`, `1 <= r <= r_max`, or along one fixed axis.
pub fn build_table<T: Count>(
    engine: &Gessel<T>,
    kind: Kind,
    method: Method,
    n_max: u32,
    r_max: u32,
    fix: Option<Fix>,
) -> Result<SequenceTable<T>> {
    if r_max == 0 && !matches!(fix, Some(Fix::R(_))) {
        return Err(Error::Domain("r_max must be at least 1".into()));
    }
    let cells: Vec<(u32, u32)> = match fix {
        None => (0..=n_max)
            .flat_map(|n| (1..=r_max).map(move |r| (n, r)))
            .collect(),
        Some(Fix::N(n)) => (1..=r_max).map(|r| (n, r)).collect(),
        Some(Fix::R(r)) => (0..=n_max).map(|n| (n, r)).collect(),
    };
    let entries = cells
        .par_iter()
        .map(|&(n, r)| compute(engine, kind, method, n, r).map(|value| TableEntry { n, r, value }))
        .collect::<Result<Vec<_>>>()?;
    Ok(SequenceTable {
        kind,
        method,
        fix,
        entries,
    })
}
