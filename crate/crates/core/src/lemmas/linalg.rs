//! Dense linear algebra over a finite field.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::finfield::poly::{self, Poly};
use crate::finfield::{FieldCtx, FieldElement};

/// Row-major matrix of field elements. The field is supplied by the caller.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<FieldElement>,
}

/// A square matrix representing a group element.
pub type RepMatrix = Matrix;

pub type Vector = Vec<FieldElement>;

impl Matrix {
    pub fn new(rows: usize, cols: usize, data: Vec<FieldElement>) -> Result<Matrix> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(Matrix { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Matrix {
        Matrix {
            rows,
            cols,
            data: vec![FieldElement::ZERO; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Matrix {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, FieldElement::ONE);
        }
        m
    }

    /// Square matrix from rows of integers, reduced into the prime field.
    pub fn from_ints(f: &FieldCtx, rows: &[Vec<i64>]) -> Result<Matrix> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::DimensionMismatch("matrix rows must form a square".into()));
        }
        let data = rows.iter().flatten().map(|&x| f.from_int(x)).collect();
        Matrix::new(n, n, data)
    }

    /// Square matrix from packed field indices.
    pub fn from_indices(f: &FieldCtx, rows: &[Vec<u32>]) -> Result<Matrix> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::DimensionMismatch("matrix rows must form a square".into()));
        }
        let data = rows
            .iter()
            .flatten()
            .map(|&x| f.element(x))
            .collect::<Result<_>>()?;
        Matrix::new(n, n, data)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> FieldElement {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, x: FieldElement) {
        self.data[i * self.cols + j] = x;
    }

    pub fn row(&self, i: usize) -> &[FieldElement] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vector {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn to_indices(&self) -> Vec<Vec<u32>> {
        (0..self.rows)
            .map(|i| self.row(i).iter().map(|x| x.index()).collect())
            .collect()
    }

    pub fn mul(&self, f: &FieldCtx, o: &Matrix) -> Matrix {
        assert_eq!(self.cols, o.rows, "matrix product shape");
        let mut out = Matrix::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for l in 0..self.cols {
                let a = self.get(i, l);
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let v = f.add(out.get(i, j), f.mul(a, o.get(l, j)));
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, f: &FieldCtx, v: &[FieldElement]) -> Vector {
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(FieldElement::ZERO, |acc, (&a, &b)| f.add(acc, f.mul(a, b)))
            })
            .collect()
    }

    /// `self - lambda * I`.
    pub fn shift(&self, f: &FieldCtx, lambda: FieldElement) -> Matrix {
        let mut m = self.clone();
        for i in 0..self.rows.min(self.cols) {
            m.set(i, i, f.sub(m.get(i, i), lambda));
        }
        m
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    /// Entrywise image under a map of fields.
    pub fn map(&self, phi: impl Fn(FieldElement) -> FieldElement) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&x| phi(x)).collect(),
        }
    }

    pub fn is_scalar(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let x = self.get(i, j);
                    if i == j {
                        x == self.get(0, 0)
                    } else {
                        x.is_zero()
                    }
                })
            })
    }

    /// Reduced row echelon form and the pivot columns.
    pub fn rref(&self, f: &FieldCtx) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            m.swap_rows(p, r);
            let inv = f.inv(m.get(r, c)).expect("nonzero pivot");
            for j in c..m.cols {
                let v = f.mul(m.get(r, j), inv);
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                let factor = m.get(i, c);
                if i == r || factor.is_zero() {
                    continue;
                }
                for j in c..m.cols {
                    let v = f.sub(m.get(i, j), f.mul(factor, m.get(r, j)));
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.data.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }

    pub fn rank(&self, f: &FieldCtx) -> usize {
        self.rref(f).1.len()
    }

    /// Basis of `{v : self v = 0}`.
    pub fn nullspace(&self, f: &FieldCtx) -> Vec<Vector> {
        let (m, pivots) = self.rref(f);
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&fc| {
                let mut v = vec![FieldElement::ZERO; self.cols];
                v[fc] = FieldElement::ONE;
                for (r, &pc) in pivots.iter().enumerate() {
                    v[pc] = f.neg(m.get(r, fc));
                }
                v
            })
            .collect()
    }

    pub fn det(&self, f: &FieldCtx) -> FieldElement {
        assert!(self.is_square(), "determinant of a non-square matrix");
        let mut m = self.clone();
        let n = m.rows;
        let mut det = FieldElement::ONE;
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !m.get(i, c).is_zero()) else {
                return FieldElement::ZERO;
            };
            if p != c {
                m.swap_rows(p, c);
                det = f.neg(det);
            }
            let pivot = m.get(c, c);
            det = f.mul(det, pivot);
            let inv = f.inv(pivot).expect("nonzero pivot");
            for i in c + 1..n {
                let factor = f.mul(m.get(i, c), inv);
                if factor.is_zero() {
                    continue;
                }
                for j in c..n {
                    let v = f.sub(m.get(i, j), f.mul(factor, m.get(c, j)));
                    m.set(i, j, v);
                }
            }
        }
        det
    }

    /// `det(xI - self)`, monic, low degree first. Hessenberg reduction
    /// followed by the standard recurrence.
    pub fn charpoly(&self, f: &FieldCtx) -> Poly {
        assert!(self.is_square(), "characteristic polynomial of a non-square matrix");
        let n = self.rows;
        let mut h = self.clone();
        for m in 1..n.saturating_sub(1) {
            let Some(i) = (m..n).find(|&i| !h.get(i, m - 1).is_zero()) else {
                continue;
            };
            h.swap_rows(i, m);
            h.swap_cols(i, m);
            let inv = f.inv(h.get(m, m - 1)).expect("nonzero pivot");
            for i in m + 1..n {
                let u = f.mul(h.get(i, m - 1), inv);
                if u.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let v = f.sub(h.get(i, j), f.mul(u, h.get(m, j)));
                    h.set(i, j, v);
                }
                for j in 0..n {
                    let v = f.add(h.get(j, m), f.mul(u, h.get(j, i)));
                    h.set(j, m, v);
                }
            }
        }
        let mut p: Vec<Poly> = vec![vec![FieldElement::ONE]];
        for m in 1..=n {
            let lin = vec![f.neg(h.get(m - 1, m - 1)), FieldElement::ONE];
            let mut pm = poly::mul(f, &lin, &p[m - 1]);
            let mut t = FieldElement::ONE;
            for i in 1..m {
                t = f.mul(t, h.get(m - i, m - i - 1));
                let c = f.mul(t, h.get(m - i - 1, m - 1));
                let term: Poly = p[m - i - 1].iter().map(|&a| f.mul(c, a)).collect();
                pm = poly::sub(f, &pm, &term);
            }
            p.push(pm);
        }
        let mut out = p.pop().unwrap();
        out.resize(n + 1, FieldElement::ZERO);
        out
    }
}

/// Matrix whose columns are the given vectors.
pub fn from_columns(n: usize, cols: &[Vector]) -> Matrix {
    let mut m = Matrix::zeros(n, cols.len());
    for (j, c) in cols.iter().enumerate() {
        for (i, &x) in c.iter().enumerate() {
            m.set(i, j, x);
        }
    }
    m
}

/// Rank of a set of vectors of length `n`.
pub fn span_rank(f: &FieldCtx, n: usize, vs: &[Vector]) -> usize {
    if vs.is_empty() {
        0
    } else {
        from_columns(n, vs).rank(f)
    }
}

/// Basis of the intersection of the spans of `u` and `w`.
pub fn intersect(f: &FieldCtx, n: usize, u: &[Vector], w: &[Vector]) -> Vec<Vector> {
    if u.is_empty() || w.is_empty() {
        return Vec::new();
    }
    // solve U a = W b, then read off U a
    let mut cols: Vec<Vector> = u.to_vec();
    cols.extend(w.iter().map(|v| v.iter().map(|&x| f.neg(x)).collect::<Vector>()));
    let sols = from_columns(n, &cols).nullspace(f);
    let um = from_columns(n, u);
    let images: Vec<Vector> = sols.iter().map(|s| um.mul_vec(f, &s[..u.len()])).collect();
    basis_of(f, n, &images)
}

/// A basis for the span of `vs`: the nonzero rows of the echelon form.
pub fn basis_of(f: &FieldCtx, n: usize, vs: &[Vector]) -> Vec<Vector> {
    if vs.is_empty() {
        return Vec::new();
    }
    let mut m = Matrix::zeros(vs.len(), n);
    for (i, v) in vs.iter().enumerate() {
        for (j, &x) in v.iter().enumerate() {
            m.set(i, j, x);
        }
    }
    let (r, pivots) = m.rref(f);
    (0..pivots.len()).map(|i| r.row(i).to_vec()).collect()
}

/// An embedding of `small` into `big`, given as the image of every element
/// of `small`. Requires `small` to be a subfield of `big`.
pub fn embedding(small: &FieldCtx, big: &FieldCtx) -> Result<Vec<FieldElement>> {
    if small.characteristic() != big.characteristic() || !big.degree().is_multiple_of(small.degree()) {
        return Err(Error::InvalidField(format!(
            "GF({}) is not a subfield of GF({})",
            small.order(),
            big.order()
        )));
    }
    let p = small.characteristic();
    let lift = |c: u32| big.from_int(c as i64);
    // a root in `big` of the defining polynomial of `small`
    let modulus: Vec<FieldElement> = small.modulus().iter().map(|&c| lift(c)).collect();
    let root = if small.degree() == 1 {
        FieldElement::ZERO
    } else {
        big.elements()
            .find(|&x| poly::eval(big, &modulus, x).is_zero())
            .expect("subfield generator has a root")
    };
    let powers: Vec<FieldElement> = (0..small.degree()).map(|i| big.pow(root, i as u64)).collect();
    Ok(small
        .elements()
        .map(|a| {
            let cs = small.coeffs(a);
            if small.degree() == 1 {
                return lift(cs[0] % p);
            }
            cs.iter()
                .zip(&powers)
                .fold(FieldElement::ZERO, |acc, (&c, &r)| big.add(acc, big.mul(lift(c), r)))
        })
        .collect())
}

/// Parses a matrix set:
///
/// ```text
/// # comment
/// field 5
/// 1 0
/// 0 2
///
/// 0 1
/// 1 0
/// ```
///
/// The `field` line gives `q`. Matrices are blocks of rows separated by
/// blank lines. Over a prime field entries are integers reduced mod `p`;
/// over an extension field they are packed indices in `[0, q)`.
pub fn parse_matrix_set(text: &str) -> Result<(FieldCtx, Vec<Matrix>)> {
    let mut field = None;
    let mut blocks: Vec<Vec<Vec<i64>>> = vec![Vec::new()];
    for (no, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            if !blocks.last().unwrap().is_empty() {
                blocks.push(Vec::new());
            }
            continue;
        }
        if let Some(q) = line.strip_prefix("field") {
            let q: u64 = q
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("line {}: bad field order", no + 1)))?;
            let (p, e) = crate::finfield::prime_power(q).ok_or(Error::NotPrimePower(q))?;
            field = Some(crate::finfield::make_field(p, e)?);
            continue;
        }
        let row = line
            .split_whitespace()
            .map(|t| t.parse::<i64>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|_| Error::Parse(format!("line {}: bad matrix entry", no + 1)))?;
        blocks.last_mut().unwrap().push(row);
    }
    let f = field.ok_or_else(|| Error::Parse("missing `field <q>` line".into()))?;
    let mats = blocks
        .into_iter()
        .filter(|b| !b.is_empty())
        .map(|rows| {
            if f.degree() == 1 {
                Matrix::from_ints(&f, &rows)
            } else {
                let idx = rows
                    .iter()
                    .map(|r| r.iter().map(|&x| u32::try_from(x).map_err(|_| Error::InvalidElement(x.to_string()))).collect())
                    .collect::<Result<Vec<Vec<u32>>>>()?;
                Matrix::from_indices(&f, &idx)
            }
        })
        .collect::<Result<Vec<_>>>()?;
    Ok((f, mats))
}

/// Inverse of [`parse_matrix_set`].
pub fn format_matrix_set(f: &FieldCtx, mats: &[Matrix]) -> String {
    let mut out = format!("field {}\n", f.order());
    for m in mats {
        out.push('\n');
        for r in m.to_indices() {
            let row: Vec<String> = r.iter().map(|x| x.to_string()).collect();
            out.push_str(&row.join(" "));
            out.push('\n');
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finfield::make_field;
    use rand::{RngExt, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_matrix(f: &FieldCtx, n: usize, rng: &mut ChaCha8Rng) -> Matrix {
        let data = (0..n * n).map(|_| f.element(rng.random_range(0..f.order())).unwrap()).collect();
        Matrix::new(n, n, data).unwrap()
    }

    #[test]
    fn charpoly_matches_determinant() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for (p, e) in [(2, 1), (3, 1), (2, 2), (5, 1), (3, 2)] {
            let f = make_field(p, e).unwrap();
            for n in 1..=5 {
                for _ in 0..10 {
                    let a = random_matrix(&f, n, &mut rng);
                    let cp = a.charpoly(&f);
                    assert_eq!(cp.len(), n + 1);
                    for x in f.elements() {
                        // det(xI - A) = (-1)^n det(A - xI)
                        let mut d = a.shift(&f, x).det(&f);
                        if n % 2 == 1 {
                            d = f.neg(d);
                        }
                        assert_eq!(poly::eval(&f, &cp, x), d);
                    }
                }
            }
        }
    }

    #[test]
    fn nullspace_and_intersection() {
        let f = make_field(5, 1).unwrap();
        let a = Matrix::from_ints(&f, &[vec![1, 2, 3], vec![2, 4, 6], vec![0, 1, 1]]).unwrap();
        let ns = a.nullspace(&f);
        assert_eq!(ns.len(), 1);
        assert!(a.mul_vec(&f, &ns[0]).iter().all(|x| x.is_zero()));
        let e = |v: [i64; 3]| v.iter().map(|&x| f.from_int(x)).collect::<Vector>();
        let u = vec![e([1, 0, 0]), e([0, 1, 0])];
        let w = vec![e([0, 1, 0]), e([0, 0, 1])];
        let i = intersect(&f, 3, &u, &w);
        assert_eq!(i, vec![e([0, 1, 0])]);
        assert!(intersect(&f, 3, &u, &[e([0, 0, 1])]).is_empty());
    }

    #[test]
    fn embeddings_are_homomorphisms() {
        for (p, e, m) in [(2, 1, 3), (2, 2, 2), (3, 1, 2), (3, 2, 2), (2, 2, 3)] {
            let small = make_field(p, e).unwrap();
            let big = make_field(p, e * m).unwrap();
            let phi = embedding(&small, &big).unwrap();
            for a in small.elements() {
                for b in small.elements() {
                    let (x, y) = (phi[a.index() as usize], phi[b.index() as usize]);
                    assert_eq!(phi[small.add(a, b).index() as usize], big.add(x, y));
                    assert_eq!(phi[small.mul(a, b).index() as usize], big.mul(x, y));
                }
            }
        }
        let small = make_field(2, 2).unwrap();
        assert!(embedding(&small, &make_field(2, 3).unwrap()).is_err());
    }

    #[test]
    fn matrix_set_text() {
        let (f, ms) = parse_matrix_set("# two\nfield 5\n1 0\n0 -3\n\n\n0 1\n1 0\n").unwrap();
        assert_eq!((f.order(), ms.len()), (5, 2));
        assert_eq!(ms[0].get(1, 1), f.from_int(2));
        let again = parse_matrix_set(&format_matrix_set(&f, &ms)).unwrap().1;
        assert_eq!(again, ms);
        let (f9, ms) = parse_matrix_set("field 9\n8 1\n0 3\n").unwrap();
        assert_eq!((f9.degree(), ms[0].get(0, 0).index()), (2, 8));
        assert!(parse_matrix_set("field 9\n9 1\n0 3\n").is_err());
        assert!(parse_matrix_set("1 0\n0 1\n").is_err());
        assert!(parse_matrix_set("field 6\n1\n").is_err());
        assert!(parse_matrix_set("field 5\n1 0\n0\n").is_err());
    }
}
