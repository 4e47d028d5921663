//! 2x2 matrices over GF(q) and the families SL(2,q), PSL(2,q), PGL(2,q).

use serde::{Deserialize, Serialize};

use crate::finfield::{FieldCtx, FieldElement};

/// `[[a, b], [c, d]]`. The derived order compares the flattened entry
/// sequence `(a, b, c, d)` lexicographically under the field element order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Mat2 {
    pub a: FieldElement,
    pub b: FieldElement,
    pub c: FieldElement,
    pub d: FieldElement,
}

impl Mat2 {
    pub fn new(a: FieldElement, b: FieldElement, c: FieldElement, d: FieldElement) -> Mat2 {
        Mat2 { a, b, c, d }
    }

    pub fn identity() -> Mat2 {
        Mat2::new(FieldElement::ONE, FieldElement::ZERO, FieldElement::ZERO, FieldElement::ONE)
    }

    pub fn entries(&self) -> [FieldElement; 4] {
        [self.a, self.b, self.c, self.d]
    }

    pub fn mul(&self, f: &FieldCtx, o: &Mat2) -> Mat2 {
        Mat2 {
            a: f.add(f.mul(self.a, o.a), f.mul(self.b, o.c)),
            b: f.add(f.mul(self.a, o.b), f.mul(self.b, o.d)),
            c: f.add(f.mul(self.c, o.a), f.mul(self.d, o.c)),
            d: f.add(f.mul(self.c, o.b), f.mul(self.d, o.d)),
        }
    }

    pub fn det(&self, f: &FieldCtx) -> FieldElement {
        f.sub(f.mul(self.a, self.d), f.mul(self.b, self.c))
    }

    pub fn trace(&self, f: &FieldCtx) -> FieldElement {
        f.add(self.a, self.d)
    }

    pub fn scale(&self, f: &FieldCtx, s: FieldElement) -> Mat2 {
        Mat2::new(f.mul(s, self.a), f.mul(s, self.b), f.mul(s, self.c), f.mul(s, self.d))
    }

    pub fn neg(&self, f: &FieldCtx) -> Mat2 {
        Mat2::new(f.neg(self.a), f.neg(self.b), f.neg(self.c), f.neg(self.d))
    }

    /// Inverse via the adjugate. `None` when singular.
    pub fn inverse(&self, f: &FieldCtx) -> Option<Mat2> {
        let det_inv = f.inv(self.det(f)).ok()?;
        let adj = Mat2::new(self.d, f.neg(self.b), f.neg(self.c), self.a);
        Some(adj.scale(f, det_inv))
    }

    /// Distinct eigenvalues over the algebraic closure: `tr^2 != 4 det`.
    /// Invariant under scalar multiples, so well defined on PSL and PGL.
    pub fn is_regular_semisimple(&self, f: &FieldCtx) -> bool {
        let t = self.trace(f);
        let four_det = f.mul(f.from_int(4), self.det(f));
        f.mul(t, t) != four_det
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum MatrixFamily {
    Sl,
    Psl,
    Pgl,
}

/// Canonical representative of a matrix in the family's quotient.
///
/// PSL: the smaller of `{M, -M}`. PGL: the scalar multiple whose first
/// nonzero entry in `(a, b, c, d)` order is 1. SL: unchanged.
pub fn canonical(family: MatrixFamily, f: &FieldCtx, m: Mat2) -> Mat2 {
    match family {
        MatrixFamily::Sl => m,
        MatrixFamily::Psl => m.min(m.neg(f)),
        MatrixFamily::Pgl => {
            let lead = m.entries().into_iter().find(|x| !x.is_zero()).expect("invertible");
            m.scale(f, f.inv(lead).expect("nonzero"))
        }
    }
}

pub fn family_order(family: MatrixFamily, q: u64) -> u64 {
    let sl = q * (q * q - 1);
    match family {
        MatrixFamily::Sl | MatrixFamily::Pgl => sl,
        MatrixFamily::Psl => {
            if q % 2 == 1 {
                sl / 2
            } else {
                sl
            }
        }
    }
}

fn enumerate_sl(f: &FieldCtx) -> Vec<Mat2> {
    let one = f.one();
    let mut out = Vec::new();
    for a in f.elements() {
        for b in f.elements() {
            if a.is_zero() && b.is_zero() {
                continue;
            }
            if !a.is_zero() {
                let a_inv = f.inv(a).unwrap();
                for c in f.elements() {
                    let d = f.mul(f.add(one, f.mul(b, c)), a_inv);
                    out.push(Mat2::new(a, b, c, d));
                }
            } else {
                let c = f.neg(f.inv(b).unwrap());
                for d in f.elements() {
                    out.push(Mat2::new(a, b, c, d));
                }
            }
        }
    }
    out
}

fn enumerate_pgl(f: &FieldCtx) -> Vec<Mat2> {
    let (zero, one) = (f.zero(), f.one());
    let mut out = Vec::new();
    for b in f.elements() {
        for c in f.elements() {
            for d in f.elements() {
                let m = Mat2::new(one, b, c, d);
                if !m.det(f).is_zero() {
                    out.push(m);
                }
            }
        }
    }
    for c in f.elements().filter(|c| !c.is_zero()) {
        for d in f.elements() {
            out.push(Mat2::new(zero, one, c, d));
        }
    }
    out
}

/// All canonical representatives of the family over `f`.
pub fn enumerate(family: MatrixFamily, f: &FieldCtx) -> Vec<Mat2> {
    match family {
        MatrixFamily::Sl => enumerate_sl(f),
        MatrixFamily::Psl => enumerate_sl(f)
            .into_iter()
            .filter(|m| canonical(MatrixFamily::Psl, f, *m) == *m)
            .collect(),
        MatrixFamily::Pgl => enumerate_pgl(f),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finfield::make_field;

    #[test]
    fn enumeration_sizes_match_formulas() {
        for (p, e) in [(2u32, 1u32), (3, 1), (2, 2), (5, 1), (7, 1), (2, 3), (3, 2)] {
            let f = make_field(p, e).unwrap();
            let q = f.order() as u64;
            for fam in [MatrixFamily::Sl, MatrixFamily::Psl, MatrixFamily::Pgl] {
                let elems = enumerate(fam, &f);
                assert_eq!(elems.len() as u64, family_order(fam, q), "{fam:?} q={q}");
                let mut sorted = elems.clone();
                sorted.sort();
                sorted.dedup();
                assert_eq!(sorted.len(), elems.len());
            }
        }
    }

    #[test]
    fn rss_examples() {
        let f = make_field(5, 1).unwrap();
        let el = |x| f.from_int(x);
        assert!(!Mat2::identity().is_regular_semisimple(&f));
        assert!(Mat2::new(el(2), el(0), el(0), el(3)).is_regular_semisimple(&f));
        assert!(!Mat2::new(el(1), el(1), el(0), el(1)).is_regular_semisimple(&f));
    }

    #[test]
    fn inverse_roundtrip() {
        let f = make_field(7, 1).unwrap();
        for m in enumerate(MatrixFamily::Sl, &f).into_iter().step_by(17) {
            assert_eq!(m.mul(&f, &m.inverse(&f).unwrap()), Mat2::identity());
        }
    }
}
