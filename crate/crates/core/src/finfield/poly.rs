//! Dense univariate polynomials over a [`FieldCtx`], low degree first.

use super::{FieldCtx, FieldElement};

pub type Poly = Vec<FieldElement>;

pub fn trim(mut f: Poly) -> Poly {
    while f.last().is_some_and(|c| c.is_zero()) {
        f.pop();
    }
    f
}

/// Degree, with `None` for the zero polynomial.
pub fn degree(f: &[FieldElement]) -> Option<usize> {
    f.iter().rposition(|c| !c.is_zero())
}

pub fn add(k: &FieldCtx, f: &[FieldElement], g: &[FieldElement]) -> Poly {
    let n = f.len().max(g.len());
    let out = (0..n)
        .map(|i| {
            let a = f.get(i).copied().unwrap_or_default();
            let b = g.get(i).copied().unwrap_or_default();
            k.add(a, b)
        })
        .collect();
    trim(out)
}

pub fn sub(k: &FieldCtx, f: &[FieldElement], g: &[FieldElement]) -> Poly {
    let neg: Poly = g.iter().map(|&c| k.neg(c)).collect();
    add(k, f, &neg)
}

pub fn mul(k: &FieldCtx, f: &[FieldElement], g: &[FieldElement]) -> Poly {
    if f.is_empty() || g.is_empty() {
        return Vec::new();
    }
    let mut out = vec![FieldElement::ZERO; f.len() + g.len() - 1];
    for (i, &a) in f.iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        for (j, &b) in g.iter().enumerate() {
            out[i + j] = k.add(out[i + j], k.mul(a, b));
        }
    }
    trim(out)
}

/// Quotient and remainder. Panics on division by the zero polynomial.
pub fn divrem(k: &FieldCtx, f: &[FieldElement], g: &[FieldElement]) -> (Poly, Poly) {
    let dg = degree(g).expect("division by zero polynomial");
    let lead_inv = k.inv(g[dg]).expect("nonzero leading coefficient");
    let mut rem = trim(f.to_vec());
    let Some(df) = degree(&rem) else {
        return (Vec::new(), Vec::new());
    };
    if df < dg {
        return (Vec::new(), rem);
    }
    let mut quo = vec![FieldElement::ZERO; df - dg + 1];
    while let Some(dr) = degree(&rem) {
        if dr < dg {
            break;
        }
        let c = k.mul(rem[dr], lead_inv);
        let shift = dr - dg;
        quo[shift] = c;
        for (i, &b) in g[..=dg].iter().enumerate() {
            rem[shift + i] = k.sub(rem[shift + i], k.mul(c, b));
        }
        rem = trim(rem);
    }
    (trim(quo), rem)
}

pub fn rem(k: &FieldCtx, f: &[FieldElement], g: &[FieldElement]) -> Poly {
    divrem(k, f, g).1
}

pub fn monic(k: &FieldCtx, f: &[FieldElement]) -> Poly {
    match degree(f) {
        None => Vec::new(),
        Some(d) => {
            let inv = k.inv(f[d]).expect("nonzero leading coefficient");
            f[..=d].iter().map(|&c| k.mul(c, inv)).collect()
        }
    }
}

/// Monic greatest common divisor.
pub fn gcd(k: &FieldCtx, f: &[FieldElement], g: &[FieldElement]) -> Poly {
    let mut a = trim(f.to_vec());
    let mut b = trim(g.to_vec());
    while !b.is_empty() {
        let r = rem(k, &a, &b);
        a = b;
        b = r;
    }
    monic(k, &a)
}

/// `base^exp mod modulus`.
pub fn powmod(k: &FieldCtx, base: &[FieldElement], mut exp: u64, modulus: &[FieldElement]) -> Poly {
    let mut result = rem(k, &[FieldElement::ONE], modulus);
    let mut b = rem(k, base, modulus);
    while exp > 0 {
        if exp & 1 == 1 {
            result = rem(k, &mul(k, &result, &b), modulus);
        }
        b = rem(k, &mul(k, &b, &b), modulus);
        exp >>= 1;
    }
    result
}

pub fn eval(k: &FieldCtx, f: &[FieldElement], x: FieldElement) -> FieldElement {
    f.iter().rev().fold(FieldElement::ZERO, |acc, &c| k.add(k.mul(acc, x), c))
}

/// Irreducibility by trial division against every monic polynomial of degree
/// at most `deg f / 2`.
pub fn is_irreducible(k: &FieldCtx, f: &[FieldElement]) -> bool {
    let Some(n) = degree(f) else { return false };
    if n == 0 {
        return false;
    }
    let q = k.order() as u64;
    for d in 1..=n / 2 {
        let count = q.pow(d as u32);
        for lower in 0..count {
            let mut g = Vec::with_capacity(d + 1);
            let mut v = lower;
            for _ in 0..d {
                g.push(FieldElement((v % q) as u32));
                v /= q;
            }
            g.push(FieldElement::ONE);
            if rem(k, f, &g).is_empty() {
                return false;
            }
        }
    }
    true
}

/// Degrees of the irreducible factors of a squarefree-agnostic `f`, one entry
/// per distinct degree that occurs (distinct-degree factorisation).
pub fn factor_degrees(k: &FieldCtx, f: &[FieldElement]) -> Vec<usize> {
    let mut rest = monic(k, f);
    let mut out = Vec::new();
    let x = vec![FieldElement::ZERO, FieldElement::ONE];
    let q = k.order() as u64;
    let mut xq = x.clone();
    let mut d = 0;
    while degree(&rest).is_some_and(|n| n > 0) {
        d += 1;
        if 2 * d > degree(&rest).unwrap() {
            out.push(degree(&rest).unwrap());
            break;
        }
        xq = powmod(k, &xq, q, &rest);
        let g = gcd(k, &rest, &sub(k, &xq, &x));
        if degree(&g).is_some_and(|n| n > 0) {
            out.push(d);
            // strip every factor of degree d, including repeated ones
            loop {
                let g2 = gcd(k, &rest, &sub(k, &xq, &x));
                if degree(&g2).is_none_or(|n| n == 0) {
                    break;
                }
                rest = divrem(k, &rest, &g2).0;
                xq = rem(k, &xq, &rest);
            }
        }
    }
    out.sort_unstable();
    out.dedup();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finfield::make_field;

    fn p(k: &FieldCtx, c: &[i64]) -> Poly {
        c.iter().map(|&x| k.from_int(x)).collect()
    }

    #[test]
    fn divrem_reconstructs() {
        let k = make_field(7, 1).unwrap();
        let f = p(&k, &[3, 0, 5, 1, 2]);
        let g = p(&k, &[1, 4, 1]);
        let (q, r) = divrem(&k, &f, &g);
        assert_eq!(add(&k, &mul(&k, &q, &g), &r), f);
        assert!(degree(&r).is_none_or(|d| d < 2));
    }

    #[test]
    fn irreducibility_small_cases() {
        let k = make_field(2, 1).unwrap();
        assert!(is_irreducible(&k, &p(&k, &[1, 1, 1])));
        assert!(!is_irreducible(&k, &p(&k, &[1, 0, 1])));
        assert!(is_irreducible(&k, &p(&k, &[1, 1, 0, 0, 1])));
        // x^4 + x^2 + 1 = (x^2 + x + 1)^2 has no roots but is reducible
        assert!(!is_irreducible(&k, &p(&k, &[1, 0, 1, 0, 1])));
    }

    #[test]
    fn distinct_degree_factorisation() {
        let k = make_field(5, 1).unwrap();
        // (x - 1)(x - 2)(x^2 + 2): x^2 + 2 irreducible over GF(5)
        let f = mul(&k, &mul(&k, &p(&k, &[-1, 1]), &p(&k, &[-2, 1])), &p(&k, &[2, 0, 1]));
        assert_eq!(factor_degrees(&k, &f), vec![1, 2]);
        let sq = mul(&k, &p(&k, &[2, 0, 1]), &p(&k, &[2, 0, 1]));
        assert_eq!(factor_degrees(&k, &sq), vec![2]);
        // x^3 + x + 1 has no root mod 5
        let cubic = p(&k, &[1, 1, 0, 1]);
        assert!(is_irreducible(&k, &cubic));
        assert_eq!(factor_degrees(&k, &cubic), vec![3]);
    }
}
