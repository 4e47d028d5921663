//! Eigenspaces over a splitting field and the potential `w`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::finfield::poly;
use crate::finfield::{make_field, FieldCtx, FieldElement, FIELD_ORDER_CAP};
use crate::groups::abelian::lcm;

use super::linalg::{intersect, Matrix, Vector};

/// One common eigenspace: `basis` spans `{v : s v = lambda_s v for all s}`.
/// Eigenvalues and basis vectors live in the splitting field.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Eigenspace {
    pub eigenvalues: Vec<FieldElement>,
    pub basis: Vec<Vector>,
}

impl Eigenspace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EigenDecomposition {
    pub dimension: usize,
    /// `m` with all eigenvalues in `GF(q^m)`.
    pub splitting_degree: u32,
    pub field_order: u32,
    pub spaces: Vec<Eigenspace>,
}

impl EigenDecomposition {
    pub fn w(&self) -> u64 {
        self.spaces.iter().map(|s| (s.dim() * s.dim()) as u64).sum()
    }

    pub fn dims(&self) -> Vec<usize> {
        self.spaces.iter().map(|s| s.dim()).collect()
    }
}

/// Degree over `GF(q)` of the splitting field of the characteristic
/// polynomial of `a`.
pub fn splitting_degree(f: &FieldCtx, a: &Matrix) -> u32 {
    poly::factor_degrees(f, &a.charpoly(f))
        .into_iter()
        .fold(1u64, |acc, d| lcm(acc, d as u64)) as u32
}

/// `GF(q^m)` together with the embedding of `GF(q)`.
#[derive(Clone, Debug)]
pub struct SplittingField {
    pub base: FieldCtx,
    pub ext: FieldCtx,
    pub degree: u32,
    embed: Vec<FieldElement>,
}

impl SplittingField {
    /// Smallest extension containing every eigenvalue of every matrix.
    pub fn for_matrices(base: &FieldCtx, mats: &[Matrix]) -> Result<SplittingField> {
        let m = mats
            .iter()
            .fold(1u64, |acc, a| lcm(acc, splitting_degree(base, a) as u64)) as u32;
        SplittingField::of_degree(base, m)
    }

    pub fn of_degree(base: &FieldCtx, m: u32) -> Result<SplittingField> {
        let order = (base.order() as u64).checked_pow(m).unwrap_or(u64::MAX);
        if order > FIELD_ORDER_CAP {
            return Err(Error::CapExceeded {
                what: "splitting field order",
                limit: FIELD_ORDER_CAP,
                requested: order,
            });
        }
        let ext = if m == 1 {
            base.clone()
        } else {
            make_field(base.characteristic(), base.degree() * m)?
        };
        let embed = if m == 1 {
            base.elements().collect()
        } else {
            super::linalg::embedding(base, &ext)?
        };
        Ok(SplittingField {
            base: base.clone(),
            ext,
            degree: m,
            embed,
        })
    }

    pub fn embed(&self, x: FieldElement) -> FieldElement {
        self.embed[x.index() as usize]
    }

    pub fn embed_matrix(&self, a: &Matrix) -> Matrix {
        a.map(|x| self.embed(x))
    }

    /// Eigenvalues of `a` (a base-field matrix) with eigenspace bases.
    pub fn eigenspaces(&self, a: &Matrix) -> Vec<(FieldElement, Vec<Vector>)> {
        let cp: Vec<FieldElement> = a.charpoly(&self.base).iter().map(|&c| self.embed(c)).collect();
        let big = self.embed_matrix(a);
        let f = &self.ext;
        let mut out = Vec::new();
        let mut rest = cp;
        for x in f.elements() {
            if poly::degree(&rest).is_none_or(|d| d == 0) {
                break;
            }
            if !poly::eval(f, &rest, x).is_zero() {
                continue;
            }
            let lin = vec![f.neg(x), FieldElement::ONE];
            while poly::rem(f, &rest, &lin).is_empty() {
                rest = poly::divrem(f, &rest, &lin).0;
            }
            out.push((x, big.shift(f, x).nullspace(f)));
        }
        out
    }
}

/// Per-matrix eigenspaces of a fixed list `T` over a common splitting
/// field, from which common eigenspaces of any subset are intersected.
#[derive(Clone, Debug)]
pub struct EigenTable {
    n: usize,
    field: SplittingField,
    per: Vec<Vec<(FieldElement, Vec<Vector>)>>,
}

pub(crate) fn check_square(n: usize, mats: &[Matrix]) -> Result<()> {
    if let Some(a) = mats.iter().find(|a| a.rows() != n || a.cols() != n) {
        return Err(Error::DimensionMismatch(format!(
            "expected {n}x{n} matrices, got {}x{}",
            a.rows(),
            a.cols()
        )));
    }
    Ok(())
}

impl EigenTable {
    pub fn new(f: &FieldCtx, n: usize, t: &[Matrix]) -> Result<EigenTable> {
        check_square(n, t)?;
        let field = SplittingField::for_matrices(f, t)?;
        let per = t.iter().map(|a| field.eigenspaces(a)).collect();
        Ok(EigenTable { n, field, per })
    }

    pub fn len(&self) -> usize {
        self.per.len()
    }

    pub fn is_empty(&self) -> bool {
        self.per.is_empty()
    }

    pub fn field(&self) -> &SplittingField {
        &self.field
    }

    /// Common eigenspaces of the members with the given indices.
    pub fn common(&self, subset: &[usize]) -> Vec<Eigenspace> {
        let f = &self.field.ext;
        let whole: Vec<Vector> = (0..self.n)
            .map(|i| {
                let mut v = vec![FieldElement::ZERO; self.n];
                v[i] = FieldElement::ONE;
                v
            })
            .collect();
        let mut spaces = vec![Eigenspace {
            eigenvalues: Vec::new(),
            basis: whole,
        }];
        for &s in subset {
            let mut next = Vec::new();
            for u in &spaces {
                for (lambda, e) in &self.per[s] {
                    let basis = intersect(f, self.n, &u.basis, e);
                    if !basis.is_empty() {
                        let mut eigenvalues = u.eigenvalues.clone();
                        eigenvalues.push(*lambda);
                        next.push(Eigenspace { eigenvalues, basis });
                    }
                }
            }
            spaces = next;
        }
        spaces
    }

    pub fn decomposition(&self, subset: &[usize]) -> EigenDecomposition {
        EigenDecomposition {
            dimension: self.n,
            splitting_degree: self.field.degree,
            field_order: self.field.ext.order(),
            spaces: self.common(subset),
        }
    }

    pub fn w(&self, subset: &[usize]) -> u64 {
        self.common(subset).iter().map(|s| (s.dim() * s.dim()) as u64).sum()
    }
}

/// Common eigenspaces of `s` acting on `GF(q)^n`. The empty set has the
/// single eigenspace `V`.
pub fn common_eigenspaces(f: &FieldCtx, n: usize, s: &[Matrix]) -> Result<EigenDecomposition> {
    let table = EigenTable::new(f, n, s)?;
    let all: Vec<usize> = (0..s.len()).collect();
    Ok(table.decomposition(&all))
}

/// `w(S) = sum of (dim U_i(S))^2` over the common eigenspaces.
pub fn w_potential(f: &FieldCtx, n: usize, s: &[Matrix]) -> Result<u64> {
    Ok(common_eigenspaces(f, n, s)?.w())
}
