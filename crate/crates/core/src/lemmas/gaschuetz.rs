//! Exponents `m_i` with `<a, b_1, .., b_n> = <m_1 a + b_1, .., m_n a + b_n>`
//! in a finite abelian group (written additively), and the Frattini
//! subgroup.
//!
//! For each prime `p` dividing `|L|`, `L = <a, b>`, the problem is solved in
//! the `GF(p)`-space `L/pL`: either the `b_i` already span it, or some `b_i`
//! depends on the others and is exchanged for `a + b_i`. The per-prime
//! answers are combined by the Chinese remainder theorem; tuples that
//! generate modulo the Frattini subgroup `Phi(L)` generate `L`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::groups::abelian::{AbelianGroup, Residues};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "case", rename_all = "snake_case")]
pub enum PrimeStep {
    /// The `b_i` span `L/pL`; all exponents are 0 mod `p`.
    Spanning { prime: u64, dim: u32 },
    /// `b_index` lies in the span of the others modulo `pL`; its exponent
    /// is 1 mod `p`, the rest 0.
    Exchange { prime: u64, dim: u32, index: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GaschuetzSolution {
    pub exponents: Vec<u64>,
    /// Product of the primes dividing `|L|`; exponents are reduced mod it.
    pub modulus: u64,
    pub subgroup_order: u64,
    pub steps: Vec<PrimeStep>,
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            out.push(p);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

fn contains(k: &AbelianGroup, span: &[u64], x: &[u32]) -> bool {
    span.binary_search(&k.index_of(x)).is_ok()
}

fn mod_inverse(a: u64, m: u64) -> u64 {
    (1..m).find(|&x| a * x % m == 1).unwrap_or(0)
}

/// `m_i a + b_i` for all `i`.
pub fn apply_exponents(k: &AbelianGroup, a: &[u32], b: &[Residues], m: &[u64]) -> Vec<Residues> {
    b.iter()
        .zip(m)
        .map(|(bi, &mi)| k.add(&k.scalar(mi as i64, a), bi))
        .collect()
}

fn check_elements(k: &AbelianGroup, a: &[u32], b: &[Residues]) -> Result<()> {
    if b.is_empty() {
        return Err(Error::Precondition("need at least one b_i".into()));
    }
    for x in std::iter::once(a).chain(b.iter().map(|v| v.as_slice())) {
        if !k.contains(x) {
            return Err(Error::InvalidElement(format!("{x:?} is not an element of {:?}", k.factors())));
        }
    }
    Ok(())
}

/// Requires `<a, b>` to be generated by `n = b.len()` elements, which
/// holds whenever `K` is.
pub fn gaschuetz_exponents(k: &AbelianGroup, a: &[u32], b: &[Residues]) -> Result<GaschuetzSolution> {
    check_elements(k, a, b)?;
    let n = b.len();
    let mut all = vec![a.to_vec()];
    all.extend(b.iter().cloned());
    let l = k.span(&all);
    let order = l.len() as u64;
    let primes = prime_factors(order);
    let modulus: u64 = primes.iter().product();

    let mut residues: Vec<Vec<u64>> = Vec::new();
    let mut steps = Vec::new();
    for &p in &primes {
        let frattini_gens: Vec<Residues> = all.iter().map(|x| k.scalar(p as i64, x)).collect();
        let pl = k.span(&frattini_gens).len() as u64;
        let dim = (order / pl).ilog(p);
        if dim as usize > n {
            return Err(Error::Precondition(format!(
                "<a, b> needs {dim} generators modulo {p}, more than n = {n}"
            )));
        }
        let with_pl = |xs: &[Residues]| {
            let mut gens = xs.to_vec();
            gens.extend(frattini_gens.iter().cloned());
            k.span(&gens)
        };
        if contains(k, &with_pl(b), a) {
            residues.push(vec![0; n]);
            steps.push(PrimeStep::Spanning { prime: p, dim });
            continue;
        }
        // the b_i span a proper subspace of a space of dimension <= n, so
        // they are dependent
        let i0 = (0..n)
            .find(|&i| {
                let others: Vec<Residues> = (0..n).filter(|&j| j != i).map(|j| b[j].clone()).collect();
                contains(k, &with_pl(&others), &b[i])
            })
            .expect("dependent b_i exists when dim <= n");
        let mut r = vec![0; n];
        r[i0] = 1;
        residues.push(r);
        steps.push(PrimeStep::Exchange { prime: p, dim, index: i0 });
    }

    let exponents: Vec<u64> = (0..n)
        .map(|i| {
            primes.iter().zip(&residues).fold(0u64, |acc, (&p, r)| {
                let rest = modulus / p;
                (acc + r[i] * rest % modulus * mod_inverse(rest % p, p)) % modulus
            })
        })
        .collect();
    let new = apply_exponents(k, a, b, &exponents);
    assert_eq!(k.span(&new), l, "exponents fail the subgroup equality");
    Ok(GaschuetzSolution {
        exponents,
        modulus: modulus.max(1),
        subgroup_order: order,
        steps,
    })
}

/// First exponent vector in `[0, exponent(K))^n` (odometer order) that
/// works, or `None`. Refuses searches over more than `limit` vectors.
pub fn brute_force_exponents(
    k: &AbelianGroup,
    a: &[u32],
    b: &[Residues],
    limit: u64,
) -> Result<Option<Vec<u64>>> {
    check_elements(k, a, b)?;
    let e = k.exponent();
    let total = e.checked_pow(b.len() as u32).unwrap_or(u64::MAX);
    if total > limit {
        return Err(Error::CapExceeded {
            what: "exponent vectors",
            limit,
            requested: total,
        });
    }
    let mut all = vec![a.to_vec()];
    all.extend(b.iter().cloned());
    let l = k.span(&all);
    let mut m = vec![0u64; b.len()];
    for _ in 0..total {
        if k.span(&apply_exponents(k, a, b, &m)) == l {
            return Ok(Some(m));
        }
        for slot in m.iter_mut().rev() {
            *slot += 1;
            if *slot < e {
                break;
            }
            *slot = 0;
        }
    }
    Ok(None)
}

/// `Phi(K)` as sorted element indices: `r K` with `r` the product of the
/// primes dividing `|K|`.
pub fn frattini(k: &AbelianGroup) -> Vec<u64> {
    let r: u64 = prime_factors(k.order()).iter().product();
    let mut out: Vec<u64> = k.elements().map(|x| k.index_of(&k.scalar(r as i64, &x))).collect();
    out.sort_unstable();
    out.dedup();
    out
}

/// Intersection of all maximal proper subgroups, found by enumerating every
/// subgroup. For small groups only.
pub fn frattini_by_maximal_subgroups(k: &AbelianGroup) -> Vec<u64> {
    use std::collections::HashSet;
    let n = k.order();
    let elems: Vec<Residues> = k.elements().collect();
    let trivial = k.span(&[]);
    let mut seen: HashSet<Vec<u64>> = HashSet::from([trivial.clone()]);
    let mut queue = vec![trivial];
    while let Some(h) = queue.pop() {
        for x in &elems {
            if h.binary_search(&k.index_of(x)).is_ok() {
                continue;
            }
            let mut gens: Vec<Residues> = h.iter().map(|&i| k.from_index(i)).collect();
            gens.push(x.clone());
            let bigger = k.span(&gens);
            if seen.insert(bigger.clone()) {
                queue.push(bigger);
            }
        }
    }
    let proper: Vec<&Vec<u64>> = seen.iter().filter(|h| h.len() as u64 != n).collect();
    let maximal: Vec<&Vec<u64>> = proper
        .iter()
        .filter(|h| {
            !proper
                .iter()
                .any(|o| o.len() > h.len() && h.iter().all(|x| o.binary_search(x).is_ok()))
        })
        .copied()
        .collect();
    (0..n)
        .filter(|x| maximal.iter().all(|h| h.binary_search(x).is_ok()))
        .collect()
}
