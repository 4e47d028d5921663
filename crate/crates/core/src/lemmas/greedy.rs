//! Greedy selection of a small subset with the same invariant lines, or
//! the same invariant subspaces, as a set of matrices.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::finfield::FieldCtx;

use super::eigen::{check_square, EigenTable};
use super::linalg::Matrix;

/// Largest dimension accepted by the subspace variant.
pub const EXTERIOR_DIMENSION_CAP: usize = 4;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GreedyResult {
    /// Indices into the input list, in the order chosen.
    pub indices: Vec<usize>,
    /// `w` of the chosen prefix, starting with `w(empty set)`.
    pub w_trace: Vec<u64>,
    /// `w` of the whole input list.
    pub w_target: u64,
    /// Dimension of the representation the potential was computed in.
    pub dimension: usize,
    pub splitting_degree: u32,
}

impl GreedyResult {
    /// Each addition strictly decreased `w` and the target was reached.
    pub fn is_valid(&self) -> bool {
        self.w_trace.windows(2).all(|p| p[1] < p[0]) && self.w_trace.last() == Some(&self.w_target)
    }
}

fn greedy(f: &FieldCtx, n: usize, t: &[Matrix]) -> Result<GreedyResult> {
    if t.is_empty() {
        return Err(Error::Precondition("greedy selection needs a non-empty set".into()));
    }
    let table = EigenTable::new(f, n, t)?;
    let all: Vec<usize> = (0..t.len()).collect();
    let target = table.w(&all);
    let mut chosen: Vec<usize> = Vec::new();
    let mut w = table.w(&chosen);
    let mut trace = vec![w];
    let guard = n.pow(4).max(1);
    while w > target {
        if chosen.len() >= guard {
            return Err(Error::Precondition("greedy selection did not terminate".into()));
        }
        let mut step = None;
        for g in 0..t.len() {
            if chosen.contains(&g) {
                continue;
            }
            chosen.push(g);
            let wg = table.w(&chosen);
            chosen.pop();
            if wg < w {
                step = Some((g, wg));
                break;
            }
        }
        let Some((g, wg)) = step else {
            return Err(Error::Precondition("no element decreases the potential".into()));
        };
        chosen.push(g);
        w = wg;
        trace.push(w);
    }
    Ok(GreedyResult {
        indices: chosen,
        w_trace: trace,
        w_target: target,
        dimension: n,
        splitting_degree: table.field().degree,
    })
}

/// At most `n^2` members of `t` whose invariant lines (over the algebraic
/// closure) are exactly those of `t`. Returns the empty subset when `t`
/// has the same potential as the empty set.
pub fn greedy_line_subset(f: &FieldCtx, n: usize, t: &[Matrix]) -> Result<GreedyResult> {
    greedy(f, n, t)
}

/// Subsets of `0..n` of size `d` in lexicographic order.
pub fn subsets(n: usize, d: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, d: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == d {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, d, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, d, &mut Vec::new(), &mut out);
    out
}

/// The matrix of `a` acting on the `d`-th exterior power, in the basis of
/// wedges of standard basis vectors indexed lexicographically; entries are
/// `d x d` minors.
pub fn exterior_power(f: &FieldCtx, a: &Matrix, d: usize) -> Matrix {
    let n = a.rows();
    let idx = subsets(n, d);
    let mut out = Matrix::zeros(idx.len(), idx.len());
    for (r, rows) in idx.iter().enumerate() {
        for (c, cols) in idx.iter().enumerate() {
            let mut minor = Matrix::zeros(d, d);
            for (i, &ri) in rows.iter().enumerate() {
                for (j, &cj) in cols.iter().enumerate() {
                    minor.set(i, j, a.get(ri, cj));
                }
            }
            out.set(r, c, minor.det(f));
        }
    }
    out
}

/// Block diagonal matrix of `a` on `V + /\^2 V + ... + /\^n V`, of size
/// `2^n - 1`.
pub fn exterior_block(f: &FieldCtx, a: &Matrix) -> Result<Matrix> {
    let n = a.rows();
    if n > EXTERIOR_DIMENSION_CAP {
        return Err(Error::CapExceeded {
            what: "exterior power dimension",
            limit: EXTERIOR_DIMENSION_CAP as u64,
            requested: n as u64,
        });
    }
    let size = (1usize << n) - 1;
    let mut out = Matrix::zeros(size, size);
    let mut at = 0;
    for d in 1..=n {
        let b = exterior_power(f, a, d);
        for i in 0..b.rows() {
            for j in 0..b.cols() {
                out.set(at + i, at + j, b.get(i, j));
            }
        }
        at += b.rows();
    }
    Ok(out)
}

/// A subset of `t` with the same invariant subspaces as `t`: the line
/// greedy run on the exterior block representation.
pub fn greedy_subspace_subset(f: &FieldCtx, n: usize, t: &[Matrix]) -> Result<GreedyResult> {
    if n > EXTERIOR_DIMENSION_CAP {
        return Err(Error::CapExceeded {
            what: "exterior power dimension",
            limit: EXTERIOR_DIMENSION_CAP as u64,
            requested: n as u64,
        });
    }
    check_square(n, t)?;
    let blocks = t.iter().map(|a| exterior_block(f, a)).collect::<Result<Vec<_>>>()?;
    greedy(f, (1 << n) - 1, &blocks)
}
