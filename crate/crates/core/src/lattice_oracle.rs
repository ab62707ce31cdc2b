//! Brute-force counting of monotone lattice paths with forbidden points.
//!
//! Paths use unit right `(1,0)` and up `(0,1)` steps. A path touches a point
//! when the point is one of its vertices; crossing an edge is not a touch.
//! Counting is a column-major dynamic program with a single rolling column,
//! so memory is linear in the height of the grid.
//!
//! Nothing here uses a closed form. These counts are the ground truth the
//! formulas in [`crate::formulas`] are checked against.

use std::collections::BTreeMap;
use std::collections::BTreeSet;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exact_arith::{self, ArithError, Count};
use crate::Nat;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GridPoint {
    pub x: u32,
    pub y: u32,
}

impl GridPoint {
    pub const ORIGIN: GridPoint = GridPoint { x: 0, y: 0 };

    pub const fn new(x: u32, y: u32) -> Self {
        GridPoint { x, y }
    }

    pub fn on_diagonal(self) -> bool {
        self.x == self.y
    }
}

/// A set of forbidden points.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DiagonalBan {
    /// `{(x, x) : x >= from}`
    Tail { from: u32 },
    /// `{(x, x) : lo <= x <= hi}`
    Range { lo: u32, hi: u32 },
    /// Any finite set of points, on the diagonal or not.
    Explicit(BTreeSet<GridPoint>),
}

impl DiagonalBan {
    pub fn none() -> Self {
        DiagonalBan::Explicit(BTreeSet::new())
    }

    pub fn tail(from: u32) -> Self {
        DiagonalBan::Tail { from }
    }

    pub fn range(lo: u32, hi: u32) -> Result<Self> {
        if lo > hi {
            return Err(Error::InvalidProblem(format!("empty range {lo}..={hi}")));
        }
        Ok(DiagonalBan::Range { lo, hi })
    }

    pub fn explicit(points: impl IntoIterator<Item = GridPoint>) -> Self {
        DiagonalBan::Explicit(points.into_iter().collect())
    }

    pub fn contains(&self, p: GridPoint) -> bool {
        match self {
            DiagonalBan::Tail { from } => p.on_diagonal() && p.x >= *from,
            DiagonalBan::Range { lo, hi } => p.on_diagonal() && (*lo..=*hi).contains(&p.x),
            DiagonalBan::Explicit(points) => points.contains(&p),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PathProblem {
    start: GridPoint,
    end: GridPoint,
    ban: DiagonalBan,
}

impl PathProblem {
    pub fn new(start: GridPoint, end: GridPoint, ban: DiagonalBan) -> Result<Self> {
        if start.x > end.x || start.y > end.y {
            return Err(Error::InvalidProblem(format!(
                "end ({}, {}) is not reachable from start ({}, {})",
                end.x, end.y, start.x, start.y
            )));
        }
        if let DiagonalBan::Range { lo, hi } = ban {
            if lo > hi {
                return Err(Error::InvalidProblem(format!("empty range {lo}..={hi}")));
            }
        }
        Ok(PathProblem { start, end, ban })
    }

    /// Paths `(0,0) -> (n+r, n+r-1)` avoiding `(x,x)` for `x >= r`.
    pub fn gessel(n: u32, r: u32) -> Result<Self> {
        check_r(r)?;
        Self::new(GridPoint::ORIGIN, gessel_end(n, r), DiagonalBan::tail(r))
    }

    /// Paths `(0,0) -> (n+r, n+r-1)` avoiding `(x,x)` for `1 <= x <= r`.
    pub fn dual(n: u32, r: u32) -> Result<Self> {
        check_r(r)?;
        Self::new(
            GridPoint::ORIGIN,
            gessel_end(n, r),
            DiagonalBan::range(1, r)?,
        )
    }

    pub fn start(&self) -> GridPoint {
        self.start
    }

    pub fn end(&self) -> GridPoint {
        self.end
    }

    pub fn ban(&self) -> &DiagonalBan {
        &self.ban
    }

    pub fn is_banned(&self, p: GridPoint) -> bool {
        self.ban.contains(p)
    }
}

fn check_r(r: u32) -> Result<()> {
    if r == 0 {
        return Err(Error::Domain("r must be positive".into()));
    }
    Ok(())
}

fn gessel_end(n: u32, r: u32) -> GridPoint {
    GridPoint::new(n + r, n + r - 1)
}

/// Rolling-column sweep over the rectangle `start..=end`.
///
/// Each cell's state is the merge of its left and lower neighbours, banned
/// cells are emptied, and `visit` may rewrite a cell once its inflow is known.
fn sweep<S, B, M, V>(
    start: GridPoint,
    end: GridPoint,
    origin: S,
    empty: S,
    banned: B,
    merge: M,
    mut visit: V,
) -> Result<S, ArithError>
where
    S: Clone,
    B: Fn(GridPoint) -> bool,
    M: Fn(&mut S, &S) -> Result<(), ArithError>,
    V: FnMut(GridPoint, &mut S) -> Result<(), ArithError>,
{
    let height = (end.y - start.y) as usize + 1;
    let mut column = vec![empty.clone(); height];
    for x in start.x..=end.x {
        for (i, y) in (start.y..=end.y).enumerate() {
            let p = GridPoint::new(x, y);
            if banned(p) {
                column[i] = empty.clone();
                continue;
            }
            if p == start {
                column[i] = origin.clone();
            } else if i > 0 {
                // column[i] still holds the left neighbour.
                let (below, here) = column.split_at_mut(i);
                merge(&mut here[0], &below[i - 1])?;
            }
            visit(p, &mut column[i])?;
        }
    }
    Ok(column.pop().expect("column is never empty"))
}

fn count_with<T, B>(start: GridPoint, end: GridPoint, banned: B) -> Result<T>
where
    T: Count,
    B: Fn(GridPoint) -> bool,
{
    let count = sweep(
        start,
        end,
        T::one(),
        T::zero(),
        banned,
        |acc: &mut T, other: &T| {
            *acc = exact_arith::add(acc, other)?;
            Ok(())
        },
        |_, _| Ok(()),
    )?;
    Ok(count)
}

// Signature must match the sweep's `Fn(&mut S, &S)` with `S = Vec<T>`.
#[allow(clippy::ptr_arg)]
fn merge_labels<T: Count>(acc: &mut Vec<T>, other: &Vec<T>) -> Result<(), ArithError> {
    for (a, b) in acc.iter_mut().zip(other) {
        *a = exact_arith::add(a, b)?;
    }
    Ok(())
}

/// Number of admissible paths of `p`. Zero when the start itself is banned.
pub fn count_paths<T: Count>(p: &PathProblem) -> Result<T> {
    count_with(p.start, p.end, |q| p.is_banned(q))
}

/// `P(n, r)` counted from its definition.
pub fn gessel_oracle<T: Count>(n: u32, r: u32) -> Result<T> {
    count_paths(&PathProblem::gessel(n, r)?)
}

/// `Q(n, r)` counted from its definition.
pub fn q_oracle<T: Count>(n: u32, r: u32) -> Result<T> {
    count_paths(&PathProblem::dual(n, r)?)
}

/// Paths `(0,0) -> (m,m)` that never go above `y = x`.
pub fn count_never_above<T: Count>(m: u32) -> Result<T> {
    count_with(GridPoint::ORIGIN, GridPoint::new(m, m), |p| p.y > p.x)
}

/// Splits the `P(n, r)` paths by their last diagonal vertex `(k, k)`.
///
/// Every admissible path ends below the diagonal and cannot touch it at or
/// beyond `x = r`, so the keys are exactly `0..r`.
pub fn last_touch_distribution<T: Count>(n: u32, r: u32) -> Result<BTreeMap<u32, T>> {
    let problem = PathProblem::gessel(n, r)?;
    let labels = (n + r) as usize;
    let mut origin = vec![T::zero(); labels];
    origin[0] = T::one();
    let tally = sweep(
        problem.start,
        problem.end,
        origin,
        vec![T::zero(); labels],
        |q| problem.is_banned(q),
        merge_labels,
        |q, cell| {
            if q.on_diagonal() && q != GridPoint::ORIGIN {
                let total = exact_arith::checked_sum(cell.iter().cloned().map(Ok))?;
                cell.iter_mut().for_each(T::set_zero);
                cell[q.x as usize] = total;
            }
            Ok(())
        },
    )?;
    Ok((0..r).map(|k| (k, tally[k as usize].clone())).collect())
}

/// Splits the `Q(n, r)` paths by their first diagonal vertex after the origin.
///
/// Key `0` counts paths that never return to the diagonal; key `k >= 1`
/// counts paths whose first return is `(r + k, r + k)`. Keys are `0..n`.
pub fn first_touch_distribution<T: Count>(n: u32, r: u32) -> Result<BTreeMap<u32, T>> {
    if n == 0 {
        return Err(Error::Domain("first-touch split needs n >= 1".into()));
    }
    let problem = PathProblem::dual(n, r)?;
    let labels = (n + r) as usize;
    let mut origin = vec![T::zero(); labels];
    origin[0] = T::one();
    let tally = sweep(
        problem.start,
        problem.end,
        origin,
        vec![T::zero(); labels],
        |q| problem.is_banned(q),
        merge_labels,
        |q, cell| {
            if q.on_diagonal() && q != GridPoint::ORIGIN {
                let fresh = std::mem::replace(&mut cell[0], T::zero());
                let slot = &mut cell[q.x as usize];
                *slot = exact_arith::add(slot, &fresh)?;
            }
            Ok(())
        },
    )?;
    let mut out = BTreeMap::new();
    out.insert(0, tally[0].clone());
    for k in 1..n {
        out.insert(k, tally[(r + k) as usize].clone());
    }
    Ok(out)
}

/// Paths `(0,0) -> (m,m)` whose only diagonal vertices are the two endpoints.
pub fn first_return_count<T: Count>(m: u32) -> Result<T> {
    if m == 0 {
        return Err(Error::Domain("first return needs m >= 1".into()));
    }
    let ban = if m >= 2 {
        DiagonalBan::range(1, m - 1)?
    } else {
        DiagonalBan::none()
    };
    count_paths(&PathProblem::new(
        GridPoint::ORIGIN,
        GridPoint::new(m, m),
        ban,
    )?)
}

/// Lists every admissible path as an `R`/`U` string in lexicographic order.
///
/// Fails with [`Error::CapExceeded`] before listing anything if there are
/// more than `cap` paths.
pub fn enumerate_paths(p: &PathProblem, cap: usize) -> Result<Vec<String>> {
    let count: Nat = count_paths(p)?;
    if count > Nat::from(cap) {
        return Err(Error::CapExceeded {
            count: count.to_string(),
            cap,
        });
    }
    if count.is_zero() {
        return Ok(Vec::new());
    }

    let width = (p.end.x - p.start.x) as usize + 1;
    let height = (p.end.y - p.start.y) as usize + 1;
    // alive[i][j]: the end is reachable from (start.x + i, start.y + j).
    let mut alive = vec![vec![false; height]; width];
    for i in (0..width).rev() {
        for j in (0..height).rev() {
            let q = GridPoint::new(p.start.x + i as u32, p.start.y + j as u32);
            alive[i][j] = !p.is_banned(q)
                && ((i + 1 == width && j + 1 == height)
                    || (i + 1 < width && alive[i + 1][j])
                    || (j + 1 < height && alive[i][j + 1]));
        }
    }

    let mut out = Vec::new();
    let mut buf = String::with_capacity(width + height);
    walk(&alive, 0, 0, &mut buf, &mut out);
    Ok(out)
}

fn walk(alive: &[Vec<bool>], i: usize, j: usize, buf: &mut String, out: &mut Vec<String>) {
    let (width, height) = (alive.len(), alive[0].len());
    if i + 1 == width && j + 1 == height {
        out.push(buf.clone());
        return;
    }
    if i + 1 < width && alive[i + 1][j] {
        buf.push('R');
        walk(alive, i + 1, j, buf, out);
        buf.pop();
    }
    if j + 1 < height && alive[i][j + 1] {
        buf.push('U');
        walk(alive, i, j + 1, buf, out);
        buf.pop();
    }
}
