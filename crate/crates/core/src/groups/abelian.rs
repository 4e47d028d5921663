//! Finite abelian groups in invariant-factor form.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// `Z/d_1 x ... x Z/d_m` with `d_1 | d_2 | ... | d_m`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AbelianGroup {
    factors: Vec<u32>,
}

pub type Residues = Vec<u32>;

pub(crate) fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub(crate) fn lcm(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 {
        0
    } else {
        a / gcd(a, b) * b
    }
}

impl AbelianGroup {
    pub fn new(factors: Vec<u32>) -> Result<AbelianGroup> {
        if factors.is_empty() {
            return Err(Error::GroupSpec("abelian group needs at least one factor".into()));
        }
        if factors.contains(&0) {
            return Err(Error::GroupSpec("invariant factors must be positive".into()));
        }
        if factors.windows(2).any(|w| w[1] % w[0] != 0) {
            return Err(Error::GroupSpec(format!(
                "invariant factors {factors:?} do not form a divisibility chain"
            )));
        }
        Ok(AbelianGroup { factors })
    }

    pub fn factors(&self) -> &[u32] {
        &self.factors
    }

    pub fn order(&self) -> u64 {
        self.factors.iter().map(|&d| d as u64).product()
    }

    pub fn exponent(&self) -> u64 {
        self.factors.iter().fold(1, |acc, &d| lcm(acc, d as u64))
    }

    /// Number of nontrivial invariant factors, which is the minimal number of
    /// generators.
    pub fn rank(&self) -> usize {
        self.factors.iter().filter(|&&d| d > 1).count()
    }

    pub fn zero(&self) -> Residues {
        vec![0; self.factors.len()]
    }

    pub fn contains(&self, v: &[u32]) -> bool {
        v.len() == self.factors.len() && v.iter().zip(&self.factors).all(|(x, d)| x < d)
    }

    pub fn add(&self, x: &[u32], y: &[u32]) -> Residues {
        x.iter()
            .zip(y)
            .zip(&self.factors)
            .map(|((a, b), d)| (a + b) % d)
            .collect()
    }

    pub fn neg(&self, x: &[u32]) -> Residues {
        x.iter().zip(&self.factors).map(|(a, d)| (d - a) % d).collect()
    }

    /// `m * x`, for any integer `m`.
    pub fn scalar(&self, m: i64, x: &[u32]) -> Residues {
        x.iter()
            .zip(&self.factors)
            .map(|(&a, &d)| ((a as i64 * m.rem_euclid(d as i64)) % d as i64) as u32)
            .collect()
    }

    pub fn element_order(&self, x: &[u32]) -> u64 {
        x.iter()
            .zip(&self.factors)
            .fold(1, |acc, (&a, &d)| lcm(acc, d as u64 / gcd(a as u64, d as u64)))
    }

    /// Mixed-radix index, first coordinate most significant.
    pub fn index_of(&self, x: &[u32]) -> u64 {
        x.iter().zip(&self.factors).fold(0, |acc, (&a, &d)| acc * d as u64 + a as u64)
    }

    pub fn from_index(&self, mut idx: u64) -> Residues {
        let mut out = vec![0; self.factors.len()];
        for (slot, &d) in out.iter_mut().zip(&self.factors).rev() {
            *slot = (idx % d as u64) as u32;
            idx /= d as u64;
        }
        out
    }

    /// All elements in mixed-radix order (zero first).
    pub fn elements(&self) -> impl Iterator<Item = Residues> + '_ {
        (0..self.order()).map(|i| self.from_index(i))
    }

    /// Subgroup generated by `gens`, as a sorted list of mixed-radix indices.
    pub fn span(&self, gens: &[Residues]) -> Vec<u64> {
        let n = self.order() as usize;
        let mut seen = vec![false; n];
        let zero = self.zero();
        seen[0] = true;
        let mut queue = vec![zero];
        let mut head = 0;
        while head < queue.len() {
            let x = queue[head].clone();
            head += 1;
            for g in gens {
                let y = self.add(&x, g);
                let i = self.index_of(&y) as usize;
                if !seen[i] {
                    seen[i] = true;
                    queue.push(y);
                }
            }
        }
        (0..n as u64).filter(|&i| seen[i as usize]).collect()
    }
}
