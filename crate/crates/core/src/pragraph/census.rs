//! Exhaustive enumeration of `V_k(G)` and connected-component censuses.
//!
//! Vertices are identified by packed mixed-radix keys. `V_k` is stored as a
//! flat bitset over `G^k` with a rank index, so a key maps to a dense vertex
//! index in constant time. Components come from a union-find over dense
//! indices, fed with one move from each inverse pair.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bitset::{Bitset, RankedBitset};
use crate::error::{Error, Result};
use crate::groups::literal::format_tuple;
use crate::groups::{ElementId, FiniteGroupTable, SubgroupLattice};

use super::moves::{forward_moves, NielsenMove, Sign};
use super::unionfind::UnionFind;
use super::GenTuple;

/// Largest `|G|^k` that may be enumerated.
pub const ENUMERATION_CAP: u64 = 100_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GraphKind {
    /// `X_k`: R and L moves only.
    Plain,
    /// `X~_k`: R, L, P and I moves.
    Extended,
}

impl GraphKind {
    pub fn from_extended(extended: bool) -> GraphKind {
        if extended {
            GraphKind::Extended
        } else {
            GraphKind::Plain
        }
    }

    pub fn is_extended(self) -> bool {
        self == GraphKind::Extended
    }
}

/// `V_k(G)` as a ranked bitset over `G^k`.
#[derive(Clone, Debug)]
pub struct VertexSet {
    order: usize,
    k: usize,
    radix: Vec<u64>,
    bits: RankedBitset,
}

fn checked_space(order: usize, k: usize) -> Result<u64> {
    if k == 0 {
        return Err(Error::Precondition("tuple length k must be at least 1".into()));
    }
    match (order as u64).checked_pow(k as u32) {
        Some(n) if n <= ENUMERATION_CAP => Ok(n),
        other => Err(Error::CapExceeded {
            what: "tuple enumeration |G|^k",
            limit: ENUMERATION_CAP,
            requested: other.unwrap_or(u64::MAX),
        }),
    }
}

fn fill(
    lat: &SubgroupLattice,
    h: u32,
    remaining: usize,
    offset: usize,
    pows: &[usize],
    order: usize,
    bits: &mut Bitset,
) {
    if lat.is_whole(h) {
        bits.insert_range(offset, offset + pows[remaining]);
        return;
    }
    if remaining == 0 {
        return;
    }
    let stride = pows[remaining - 1];
    for y in 0..order {
        let next = lat.step(h, y as ElementId);
        fill(lat, next, remaining - 1, offset + y * stride, pows, order, bits);
    }
}

impl VertexSet {
    /// Enumerates every generating `k`-tuple. Work is split across threads
    /// by first coordinate; generation is decided by walking the subgroup
    /// lattice, and a prefix that already generates fills its whole block.
    pub fn build(g: &FiniteGroupTable, k: usize) -> Result<VertexSet> {
        let total = checked_space(g.order(), k)? as usize;
        let order = g.order();
        let lat = SubgroupLattice::build(g, k)?;
        let pows: Vec<usize> = (0..=k).map(|e| order.pow(e as u32)).collect();
        let block = pows[k - 1];
        let blocks: Vec<Bitset> = (0..order)
            .into_par_iter()
            .map(|x| {
                let mut local = Bitset::new(block);
                let h = lat.step(lat.trivial(), x as ElementId);
                fill(&lat, h, k - 1, 0, &pows, order, &mut local);
                local
            })
            .collect();
        let mut bits = Bitset::new(total);
        for (x, local) in blocks.into_iter().enumerate() {
            let base = x * block;
            for i in local.into_ones() {
                bits.insert(base + i);
            }
        }
        let radix = (0..k).map(|i| pows[k - 1 - i] as u64).collect();
        Ok(VertexSet {
            order,
            k,
            radix,
            bits: RankedBitset::new(bits),
        })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn len(&self) -> usize {
        self.bits.count()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn contains_key(&self, key: u64) -> bool {
        self.bits.contains(key as usize)
    }

    /// Dense index of a vertex key.
    pub fn index_of(&self, key: u64) -> Option<usize> {
        self.contains_key(key).then(|| self.bits.rank(key as usize))
    }

    pub fn key_of(&self, ids: &[ElementId]) -> u64 {
        ids.iter().zip(&self.radix).map(|(&x, &r)| x as u64 * r).sum()
    }

    pub fn decode(&self, key: u64) -> Vec<ElementId> {
        GenTuple::from_key(key, self.order, self.k).into_ids()
    }

    /// Vertex keys in increasing order.
    pub fn keys(&self) -> impl Iterator<Item = u64> + '_ {
        self.bits.iter().map(|i| i as u64)
    }

    pub fn into_tuples(self) -> impl Iterator<Item = GenTuple> {
        let (order, k) = (self.order, self.k);
        self.bits
            .into_ones()
            .map(move |key| GenTuple::from_key(key as u64, order, k))
    }
}

/// Every generating `k`-tuple in increasing key order. For `k < d(G)` the
/// stream is empty.
pub fn enumerate_generating_tuples(
    g: &FiniteGroupTable,
    k: usize,
) -> Result<impl Iterator<Item = GenTuple>> {
    Ok(VertexSet::build(g, k)?.into_tuples())
}

/// Component of every vertex, plus per-component size and representative.
#[derive(Clone, Debug)]
pub struct ComponentMap {
    kind: GraphKind,
    vertices: VertexSet,
    comp: Vec<u32>,
    reps: Vec<u64>,
    sizes: Vec<u64>,
}

/// Key of the neighbour of `key` (whose coordinates are `ids`) under `m`.
#[inline]
fn neighbor_key(g: &FiniteGroupTable, radix: &[u64], key: u64, ids: &[ElementId], m: NielsenMove) -> u64 {
    let replace = |i: usize, new: ElementId| key - ids[i] as u64 * radix[i] + new as u64 * radix[i];
    match m {
        NielsenMove::R { i, j, sign } => {
            let y = if sign == Sign::Plus { ids[j] } else { g.inv(ids[j]) };
            replace(i, g.mul(ids[i], y))
        }
        NielsenMove::L { i, j, sign } => {
            let y = if sign == Sign::Plus { ids[j] } else { g.inv(ids[j]) };
            replace(i, g.mul(y, ids[i]))
        }
        NielsenMove::P { i, j } => {
            let (a, b) = (ids[i] as u64, ids[j] as u64);
            key - a * radix[i] - b * radix[j] + b * radix[i] + a * radix[j]
        }
        NielsenMove::I { i } => replace(i, g.inv(ids[i])),
    }
}

impl ComponentMap {
    pub fn build(g: &FiniteGroupTable, k: usize, extended: bool) -> Result<ComponentMap> {
        let vertices = VertexSet::build(g, k)?;
        Ok(Self::from_vertices(g, vertices, extended))
    }

    pub fn from_vertices(g: &FiniteGroupTable, vertices: VertexSet, extended: bool) -> ComponentMap {
        let n = vertices.len();
        let moves = forward_moves(vertices.k, extended);
        let mut uf = UnionFind::new(n);
        let mut ids = vec![0; vertices.k];
        for (dense, key) in vertices.keys().enumerate() {
            let mut rest = key;
            for slot in ids.iter_mut().rev() {
                *slot = (rest % vertices.order as u64) as ElementId;
                rest /= vertices.order as u64;
            }
            for &m in &moves {
                let nk = neighbor_key(g, &vertices.radix, key, &ids, m);
                let other = vertices
                    .index_of(nk)
                    .expect("Nielsen moves preserve generation");
                uf.union(dense as u32, other as u32);
            }
        }
        let mut root_comp = vec![u32::MAX; n];
        let mut comp = vec![0u32; n];
        let mut reps = Vec::new();
        let mut sizes: Vec<u64> = Vec::new();
        for (dense, key) in vertices.keys().enumerate() {
            let root = uf.find(dense as u32) as usize;
            if root_comp[root] == u32::MAX {
                root_comp[root] = reps.len() as u32;
                // keys ascend, so the first member seen is the minimal one
                reps.push(key);
                sizes.push(0);
            }
            let c = root_comp[root];
            comp[dense] = c;
            sizes[c as usize] += 1;
        }
        ComponentMap {
            kind: GraphKind::from_extended(extended),
            vertices,
            comp,
            reps,
            sizes,
        }
    }

    pub fn kind(&self) -> GraphKind {
        self.kind
    }

    pub fn vertices(&self) -> &VertexSet {
        &self.vertices
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn component_count(&self) -> usize {
        self.reps.len()
    }

    pub fn sizes(&self) -> &[u64] {
        &self.sizes
    }

    pub fn representative(&self, c: usize) -> Vec<ElementId> {
        self.vertices.decode(self.reps[c])
    }

    pub fn component_of_index(&self, dense: usize) -> u32 {
        self.comp[dense]
    }

    /// Component of a tuple, `None` if it is not a generating tuple.
    pub fn component_of(&self, ids: &[ElementId]) -> Option<u32> {
        if ids.len() != self.vertices.k || ids.iter().any(|&x| x as usize >= self.vertices.order) {
            return None;
        }
        let key = self.vertices.key_of(ids);
        self.vertices.index_of(key).map(|d| self.comp[d])
    }

    pub fn report(&self, g: &FiniteGroupTable) -> ComponentReport {
        let components = (0..self.component_count())
            .map(|c| {
                let rep = self.representative(c);
                ComponentSummary {
                    size: self.sizes[c],
                    representative_literal: format_tuple(g, &rep),
                    representative: rep,
                }
            })
            .collect();
        let mut sizes = self.sizes.clone();
        sizes.sort_unstable_by(|a, b| b.cmp(a));
        ComponentReport {
            group: g.label(),
            k: self.vertices.k,
            graph: self.kind,
            vertex_count: self.vertex_count() as u64,
            component_count: self.component_count(),
            sizes,
            components,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentSummary {
    pub size: u64,
    pub representative: Vec<ElementId>,
    pub representative_literal: String,
}

/// Connectivity census of `X_k(G)` or `X~_k(G)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentReport {
    pub group: String,
    pub k: usize,
    pub graph: GraphKind,
    pub vertex_count: u64,
    pub component_count: usize,
    /// Component sizes, largest first.
    pub sizes: Vec<u64>,
    /// One entry per component, ordered by representative (the
    /// lexicographically minimal member).
    pub components: Vec<ComponentSummary>,
}

impl ComponentReport {
    pub fn is_connected(&self) -> bool {
        self.component_count == 1
    }
}

pub fn components(g: &FiniteGroupTable, k: usize, extended: bool) -> Result<ComponentReport> {
    Ok(ComponentMap::build(g, k, extended)?.report(g))
}
