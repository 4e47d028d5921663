//! Brute-force enumeration of invariant lines and subspaces over `GF(q)`,
//! used to cross-check the greedy selections.

use crate::error::{Error, Result};
use crate::finfield::{FieldCtx, FieldElement};

use super::eigen::check_square;
use super::greedy::subsets;
use super::linalg::{Matrix, Vector};

/// Largest `q^n` accepted by [`invariant_lines`].
pub const LINE_ENUMERATION_CAP: u64 = 1_000_000;
/// Largest `q^n` accepted by [`invariant_subspaces`].
pub const SUBSPACE_ENUMERATION_CAP: u64 = 10_000;

fn check_cap(f: &FieldCtx, n: usize, limit: u64, what: &'static str) -> Result<()> {
    let size = (f.order() as u64).checked_pow(n as u32).unwrap_or(u64::MAX);
    if size > limit {
        return Err(Error::CapExceeded {
            what,
            limit,
            requested: size,
        });
    }
    Ok(())
}

/// Normalized spanning vectors (first nonzero coordinate 1) of the lines
/// of `GF(q)^n` invariant under every member of `s`, in lexicographic order
/// of packed coordinates.
pub fn invariant_lines(f: &FieldCtx, n: usize, s: &[Matrix]) -> Result<Vec<Vector>> {
    check_square(n, s)?;
    check_cap(f, n, LINE_ENUMERATION_CAP, "line enumeration size")?;
    let q = f.order() as u64;
    let mut out = Vec::new();
    for code in 1..q.pow(n as u32) {
        let mut v = vec![FieldElement::ZERO; n];
        let mut c = code;
        for slot in v.iter_mut().rev() {
            *slot = f.element((c % q) as u32).unwrap();
            c /= q;
        }
        if v.iter().find(|x| !x.is_zero()) != Some(&FieldElement::ONE) {
            continue;
        }
        let invariant = s.iter().all(|a| {
            let w = a.mul_vec(f, &v);
            // w is a multiple of v iff all 2x2 minors vanish
            (0..n).all(|i| (i + 1..n).all(|j| f.mul(v[i], w[j]) == f.mul(v[j], w[i])))
        });
        if invariant {
            out.push(v);
        }
    }
    Ok(out)
}

/// Every subspace of `GF(q)^n` as a reduced row echelon basis (rows).
pub fn all_subspaces(f: &FieldCtx, n: usize) -> Result<Vec<Matrix>> {
    check_cap(f, n, SUBSPACE_ENUMERATION_CAP, "subspace enumeration size")?;
    let q = f.order() as u64;
    let mut out = vec![Matrix::zeros(0, n)];
    for d in 1..=n {
        for pivots in subsets(n, d) {
            // free entries: right of the row's pivot, outside pivot columns
            let free: Vec<(usize, usize)> = pivots
                .iter()
                .enumerate()
                .flat_map(|(r, &pc)| (pc + 1..n).filter(|c| !pivots.contains(c)).map(move |c| (r, c)))
                .collect();
            for code in 0..q.pow(free.len() as u32) {
                let mut m = Matrix::zeros(d, n);
                for (r, &pc) in pivots.iter().enumerate() {
                    m.set(r, pc, FieldElement::ONE);
                }
                let mut c = code;
                for &(r, col) in &free {
                    m.set(r, col, f.element((c % q) as u32).unwrap());
                    c /= q;
                }
                out.push(m);
            }
        }
    }
    Ok(out)
}

/// Subspaces of `GF(q)^n` (as echelon bases) invariant under every member
/// of `s`, including `{0}` and the whole space.
pub fn invariant_subspaces(f: &FieldCtx, n: usize, s: &[Matrix]) -> Result<Vec<Matrix>> {
    check_square(n, s)?;
    Ok(all_subspaces(f, n)?
        .into_iter()
        .filter(|b| {
            let d = b.rows();
            s.iter().all(|a| {
                (0..d).all(|r| {
                    let w = a.mul_vec(f, b.row(r));
                    let mut rows: Vec<Vector> = (0..d).map(|i| b.row(i).to_vec()).collect();
                    rows.push(w);
                    super::linalg::span_rank(f, n, &rows) == d
                })
            })
        })
        .collect())
}
