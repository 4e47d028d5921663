//! Product replacement graphs.
//!
//! The vertices of `X_k(G)` and `X~_k(G)` are the generating `k`-tuples of
//! `G`. Edges of the plain graph `X_k` are the R and L Nielsen moves; the
//! extended graph `X~_k` also has the P (swap) and I (invert) moves. Both
//! graphs are undirected because every move has an inverse move.

pub mod census;
pub mod moves;
pub mod search;
pub mod unionfind;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::groups::{ElementId, FiniteGroupTable};

pub use census::{
    components, enumerate_generating_tuples, ComponentMap, ComponentReport, ComponentSummary,
    GraphKind, VertexSet, ENUMERATION_CAP,
};
pub use moves::{all_moves, forward_moves, NielsenMove, NielsenWord, Sign};
pub use search::{connect_path, connect_to_canonical, to_redundant, PathOutcome, SearchLimits};

/// A `k`-tuple of element ids. Membership in `V_k` is checked by the
/// operations that need it, not assumed.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GenTuple {
    ids: Vec<ElementId>,
}

impl GenTuple {
    pub fn new(ids: Vec<ElementId>) -> GenTuple {
        GenTuple { ids }
    }

    pub fn k(&self) -> usize {
        self.ids.len()
    }

    pub fn ids(&self) -> &[ElementId] {
        &self.ids
    }

    pub fn into_ids(self) -> Vec<ElementId> {
        self.ids
    }

    /// Mixed-radix key with radix `order`, first coordinate most
    /// significant. `None` if it does not fit in 64 bits.
    pub fn key(&self, order: usize) -> Option<u64> {
        self.ids.iter().try_fold(0u64, |acc, &x| {
            acc.checked_mul(order as u64)?.checked_add(x as u64)
        })
    }

    pub fn from_key(mut key: u64, order: usize, k: usize) -> GenTuple {
        let mut ids = vec![0; k];
        for slot in ids.iter_mut().rev() {
            *slot = (key % order as u64) as ElementId;
            key /= order as u64;
        }
        GenTuple { ids }
    }

    pub fn is_generating(&self, g: &FiniteGroupTable) -> bool {
        g.is_generating(&self.ids)
    }

    /// Some coordinate equals the identity.
    pub fn has_identity(&self, g: &FiniteGroupTable) -> bool {
        self.ids.contains(&g.identity())
    }

    pub fn check_ids(&self, g: &FiniteGroupTable) -> Result<()> {
        match self.ids.iter().find(|&&x| x as usize >= g.order()) {
            Some(x) => Err(Error::InvalidElement(format!("element id {x} out of range"))),
            None => Ok(()),
        }
    }
}

impl From<Vec<ElementId>> for GenTuple {
    fn from(ids: Vec<ElementId>) -> GenTuple {
        GenTuple::new(ids)
    }
}

pub fn apply_move(g: &FiniteGroupTable, t: &GenTuple, m: NielsenMove) -> Result<GenTuple> {
    m.validate(t.k())?;
    let mut ids = t.ids.clone();
    m.apply_in_place(g, &mut ids);
    Ok(GenTuple { ids })
}

pub fn inverse_move(m: NielsenMove) -> NielsenMove {
    m.inverse()
}

/// Every move application from `t`: the `4k(k-1)` R/L moves, plus the
/// `k(k-1)/2` P moves and `k` I moves when `extended`.
pub fn neighbors(g: &FiniteGroupTable, t: &GenTuple, extended: bool) -> Vec<(NielsenMove, GenTuple)> {
    all_moves(t.k(), extended)
        .into_iter()
        .map(|m| {
            let mut ids = t.ids.clone();
            m.apply_in_place(g, &mut ids);
            (m, GenTuple { ids })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::build_group;

    #[test]
    fn key_roundtrip() {
        let t = GenTuple::new(vec![3, 0, 59]);
        let key = t.key(60).unwrap();
        assert_eq!(key, 3 * 3600 + 59);
        assert_eq!(GenTuple::from_key(key, 60, 3), t);
        assert!(GenTuple::new(vec![1; 20]).key(1 << 20).is_none());
    }

    #[test]
    fn examples() {
        let g = build_group("alt:5").unwrap();
        let (x, y) = (7, 23);
        let t = GenTuple::new(vec![x, y]);
        let inv = apply_move(&g, &t, NielsenMove::inversion(0)).unwrap();
        assert_eq!(inv.ids(), &[g.inv(x), y]);
        let with_id = GenTuple::new(vec![x, g.identity()]);
        let same = apply_move(&g, &with_id, NielsenMove::r(0, 1, Sign::Plus)).unwrap();
        assert_eq!(same, with_id);
        assert!(apply_move(&g, &t, NielsenMove::r(0, 2, Sign::Plus)).is_err());
        assert_eq!(neighbors(&g, &t, false).len(), 8);
        assert_eq!(neighbors(&g, &t, true).len(), 11);
        assert_eq!(neighbors(&g, &GenTuple::new(vec![1, 2, 3]), true).len(), 30);
    }

    #[test]
    fn moves_invert_and_preserve_generation() {
        for s in ["sym:3", "alt:4", "ab:2,4", "psl2:5"] {
            let g = build_group(s).unwrap();
            let n = g.order() as ElementId;
            for a in 0..n {
                for b in (0..n).step_by(3) {
                    let t = GenTuple::new(vec![a, b, (a * 7 + b) % n]);
                    let gen = g.closure(t.ids());
                    for m in all_moves(3, true) {
                        let u = apply_move(&g, &t, m).unwrap();
                        assert_eq!(apply_move(&g, &u, inverse_move(m)).unwrap(), t);
                        assert_eq!(g.closure(u.ids()), gen);
                    }
                }
            }
        }
    }
}
