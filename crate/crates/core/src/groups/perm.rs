//! Permutations as image arrays on `{0, .., n-1}`.
//!
//! Products are composed left to right: `(x * y)(i) = y(x(i))`, i.e. `x` is
//! applied first. Cycle notation is 1-based.

use crate::error::{Error, Result};

pub type Perm = Vec<u8>;

pub fn identity(n: usize) -> Perm {
    (0..n as u8).collect()
}

pub fn compose(x: &[u8], y: &[u8]) -> Perm {
    x.iter().map(|&i| y[i as usize]).collect()
}

pub fn inverse(x: &[u8]) -> Perm {
    let mut out = vec![0u8; x.len()];
    for (i, &xi) in x.iter().enumerate() {
        out[xi as usize] = i as u8;
    }
    out
}

pub fn is_even(x: &[u8]) -> bool {
    let mut seen = vec![false; x.len()];
    let mut transpositions = 0;
    for start in 0..x.len() {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            i = x[i] as usize;
            len += 1;
        }
        transpositions += len - 1;
    }
    transpositions % 2 == 0
}

/// All permutations of degree `n` in lexicographic order of image arrays.
pub fn all(n: usize) -> Vec<Perm> {
    let mut cur = identity(n);
    let mut out = vec![cur.clone()];
    loop {
        // next_permutation
        let Some(i) = (1..n).rev().find(|&i| cur[i - 1] < cur[i]) else {
            return out;
        };
        let j = (i..n).rev().find(|&j| cur[j] > cur[i - 1]).unwrap();
        cur.swap(i - 1, j);
        cur[i..].reverse();
        out.push(cur.clone());
    }
}

/// Parses cycle notation such as `(1 2 3)(4 5)`; `()` is the identity.
/// Points may be separated by spaces or commas.
pub fn parse_cycles(s: &str, n: usize) -> Result<Perm> {
    let mut perm = identity(n);
    let s = s.trim();
    let bad = |msg: &str| Error::InvalidElement(format!("{msg} in cycle notation `{s}`"));
    let mut rest = s;
    while !rest.is_empty() {
        let Some(stripped) = rest.strip_prefix('(') else {
            return Err(bad("expected `(`"));
        };
        let close = stripped.find(')').ok_or_else(|| bad("unclosed cycle"))?;
        let body = &stripped[..close];
        rest = stripped[close + 1..].trim_start();
        let points = body
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|t| !t.is_empty())
            .map(|t| {
                t.parse::<usize>()
                    .ok()
                    .filter(|&v| v >= 1 && v <= n)
                    .ok_or_else(|| bad("point out of range"))
            })
            .collect::<Result<Vec<_>>>()?;
        let mut distinct = points.clone();
        distinct.sort_unstable();
        distinct.dedup();
        if distinct.len() != points.len() {
            return Err(bad("repeated point"));
        }
        // the cycle (a b c) sends a->b, b->c, c->a; apply after what we have
        let mut cycle = identity(n);
        for (i, &pt) in points.iter().enumerate() {
            let next = points[(i + 1) % points.len()];
            cycle[pt - 1] = (next - 1) as u8;
        }
        perm = compose(&perm, &cycle);
    }
    Ok(perm)
}

pub fn format_cycles(x: &[u8]) -> String {
    let mut seen = vec![false; x.len()];
    let mut out = String::new();
    for start in 0..x.len() {
        if seen[start] || x[start] as usize == start {
            continue;
        }
        out.push('(');
        let mut i = start;
        let mut first = true;
        while !seen[i] {
            seen[i] = true;
            if !first {
                out.push(' ');
            }
            out.push_str(&(i + 1).to_string());
            first = false;
            i = x[i] as usize;
        }
        out.push(')');
    }
    if out.is_empty() {
        out.push_str("()");
    }
    out
}
