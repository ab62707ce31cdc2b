//! Test-only brute force: lists every R/U word and walks it, with no dynamic
//! programming and no pruning.

#![allow(dead_code)]

use gessel::{GridPoint, PathProblem};

/// All words with `right` R's and `up` U's, in lexicographic order.
pub fn all_words(right: u32, up: u32) -> Vec<String> {
    fn go(right: u32, up: u32, buf: &mut String, out: &mut Vec<String>) {
        if right == 0 && up == 0 {
            out.push(buf.clone());
            return;
        }
        if right > 0 {
            buf.push('R');
            go(right - 1, up, buf, out);
            buf.pop();
        }
        if up > 0 {
            buf.push('U');
            go(right, up - 1, buf, out);
            buf.pop();
        }
    }
    let mut out = Vec::new();
    go(right, up, &mut String::new(), &mut out);
    out
}

/// Vertices visited by `word` from `start`, including both endpoints.
pub fn vertices(start: GridPoint, word: &str) -> Vec<GridPoint> {
    let mut p = start;
    let mut seen = vec![p];
    for c in word.chars() {
        match c {
            'R' => p.x += 1,
            'U' => p.y += 1,
            _ => panic!("bad step {c}"),
        }
        seen.push(p);
    }
    seen
}

pub fn admissible_words(problem: &PathProblem) -> Vec<String> {
    let (s, e) = (problem.start(), problem.end());
    all_words(e.x - s.x, e.y - s.y)
        .into_iter()
        .filter(|w| vertices(s, w).iter().all(|&p| !problem.is_banned(p)))
        .collect()
}

/// Diagonal vertices of `word` from the origin, in visiting order.
pub fn diagonal_touches(word: &str) -> Vec<u32> {
    vertices(GridPoint::ORIGIN, word)
        .into_iter()
        .filter(|p| p.x == p.y)
        .map(|p| p.x)
        .collect()
}

/// Paths (0,0) -> (m,m) meeting the diagonal only at the two ends, by enumeration.
pub fn first_return_by_enumeration(m: u32) -> u64 {
    all_words(m, m)
        .iter()
        .filter(|w| diagonal_touches(w) == vec![0, m])
        .count() as u64
}

/// Paths (0,0) -> (m,m) never above y = x, by enumeration.
pub fn never_above_by_enumeration(m: u32) -> u64 {
    all_words(m, m)
        .iter()
        .filter(|w| vertices(GridPoint::ORIGIN, w).iter().all(|p| p.y <= p.x))
        .count() as u64
}
