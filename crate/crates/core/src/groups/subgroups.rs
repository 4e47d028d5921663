//! The lattice of subgroups generated by few elements, as an automaton.
//!
//! State `h` is a subgroup `H`; reading element `x` moves to `<H, x>`.
//! Starting from the trivial subgroup and reading a tuple lands on the
//! subgroup the tuple generates, so generation tests become `k` table
//! lookups. Transitions are computed eagerly for every subgroup generated
//! by fewer than `depth` elements, which makes the finished lattice
//! immutable and shareable across threads.

use std::collections::HashMap;

use crate::bitset::Bitset;
use crate::error::{Error, Result};

use super::{ElementId, FiniteGroupTable};

/// Upper bound on stored transitions (states x group order).
pub const LATTICE_TRANSITION_CAP: u64 = 1 << 26;

pub type SubgroupId = u32;

pub struct SubgroupLattice {
    order: usize,
    depth: usize,
    sizes: Vec<usize>,
    transitions: Vec<Vec<SubgroupId>>,
    whole: Option<SubgroupId>,
}

impl SubgroupLattice {
    /// Lattice able to evaluate tuples of length up to `depth`.
    pub fn build(g: &FiniteGroupTable, depth: usize) -> Result<SubgroupLattice> {
        let n = g.order();
        let mut ids: HashMap<Bitset, SubgroupId> = HashMap::new();
        let mut gens: Vec<Vec<ElementId>> = Vec::new();
        let mut bits: Vec<Bitset> = Vec::new();
        let mut sizes = Vec::new();
        let mut transitions: Vec<Vec<SubgroupId>> = Vec::new();

        let trivial = g.closure_bits(&[]);
        ids.insert(trivial.clone(), 0);
        sizes.push(trivial.count());
        bits.push(trivial);
        gens.push(Vec::new());

        let mut frontier: Vec<SubgroupId> = vec![0];
        for _ in 0..depth {
            let mut next = Vec::new();
            for &h in &frontier {
                if (transitions.len() as u64 + 1) * n as u64 > LATTICE_TRANSITION_CAP {
                    return Err(Error::CapExceeded {
                        what: "subgroup lattice transitions",
                        limit: LATTICE_TRANSITION_CAP,
                        requested: (transitions.len() as u64 + 1) * n as u64,
                    });
                }
                while transitions.len() <= h as usize {
                    transitions.push(Vec::new());
                }
                if !transitions[h as usize].is_empty() {
                    continue;
                }
                let mut row = vec![0; n];
                let h_bits = bits[h as usize].clone();
                let h_gens = gens[h as usize].clone();
                for x in 0..n as ElementId {
                    if h_bits.get(x as usize) {
                        row[x as usize] = h;
                        continue;
                    }
                    let mut ext_gens = h_gens.clone();
                    ext_gens.push(x);
                    let ext = g.extend_closure(h_bits.clone(), &[x], &ext_gens, n / 2);
                    // more than half the group means the whole group
                    let ext = if ext.count() > n / 2 { full_bits(n) } else { ext };
                    let id = match ids.get(&ext) {
                        Some(&id) => id,
                        None => {
                            let id = bits.len() as SubgroupId;
                            ids.insert(ext.clone(), id);
                            sizes.push(ext.count());
                            bits.push(ext);
                            gens.push(ext_gens);
                            next.push(id);
                            id
                        }
                    };
                    row[x as usize] = id;
                }
                transitions[h as usize] = row;
            }
            frontier = next;
        }
        let whole = ids.get(&full_bits(n)).copied();
        Ok(SubgroupLattice {
            order: n,
            depth,
            sizes,
            transitions,
            whole,
        })
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn trivial(&self) -> SubgroupId {
        0
    }

    pub fn state_count(&self) -> usize {
        self.sizes.len()
    }

    pub fn size(&self, h: SubgroupId) -> usize {
        self.sizes[h as usize]
    }

    pub fn is_whole(&self, h: SubgroupId) -> bool {
        self.sizes[h as usize] == self.order
    }

    /// `<H, x>`. Panics if `H` was generated by `depth` elements already.
    #[inline]
    pub fn step(&self, h: SubgroupId, x: ElementId) -> SubgroupId {
        self.transitions[h as usize][x as usize]
    }

    /// Whether `h` has outgoing transitions.
    pub fn expandable(&self, h: SubgroupId) -> bool {
        self.transitions.get(h as usize).is_some_and(|r| !r.is_empty())
    }

    pub fn generated(&self, tuple: &[ElementId]) -> SubgroupId {
        assert!(tuple.len() <= self.depth, "tuple longer than lattice depth");
        tuple.iter().fold(self.trivial(), |h, &x| self.step(h, x))
    }

    pub fn generates(&self, tuple: &[ElementId]) -> bool {
        if self.order == 1 {
            return true;
        }
        match self.whole {
            Some(_) => self.is_whole(self.generated(tuple)),
            None => false,
        }
    }
}

fn full_bits(n: usize) -> Bitset {
    let mut b = Bitset::new(n);
    for i in 0..n {
        b.insert(i);
    }
    b
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::build_group;

    #[test]
    fn lattice_agrees_with_closure() {
        for s in ["sym:3", "alt:4", "ab:2,4", "psl2:5"] {
            let g = build_group(s).unwrap();
            let lat = SubgroupLattice::build(&g, 2).unwrap();
            let n = g.order() as ElementId;
            for x in 0..n {
                for y in 0..n {
                    assert_eq!(lat.generates(&[x, y]), g.is_generating(&[x, y]), "{s}");
                    assert_eq!(lat.size(lat.generated(&[x, y])), g.closure(&[x, y]).len());
                }
            }
        }
    }

    #[test]
    fn a5_two_generated_subgroups() {
        let g = build_group("alt:5").unwrap();
        let lat = SubgroupLattice::build(&g, 2).unwrap();
        // 59 subgroups in A5, all of them generated by at most two elements
        assert_eq!(lat.state_count(), 59);
    }
}
