//! T-systems: orbits of `Aut(F_k) x Aut(G)` on generating `k`-tuples.
//!
//! The Nielsen moves generate `Aut(F_k)`, so the components of `X~_k(G)`
//! are exactly the `Aut(F_k)`-orbits and a T-system is an `Aut(G)`-orbit
//! of components.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::groups::literal::format_tuple;
use crate::groups::{automorphism_group, Automorphism, ElementId, FiniteGroupTable};
use crate::pragraph::unionfind::UnionFind;
use crate::pragraph::ComponentMap;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TSystemSummary {
    /// Number of tuples in the T-system.
    pub size: u64,
    pub component_count: usize,
    pub representative: Vec<ElementId>,
    pub representative_literal: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TSystemReport {
    pub group: String,
    pub k: usize,
    pub vertex_count: u64,
    pub component_count: usize,
    pub automorphism_count: usize,
    pub tsystem_count: usize,
    /// Descending.
    pub orbit_sizes: Vec<u64>,
    pub systems: Vec<TSystemSummary>,
}

/// Components of `X~_k` with the T-system label of each component.
#[derive(Clone, Debug)]
pub struct TSystemAnalysis {
    pub components: ComponentMap,
    pub automorphisms: Vec<Automorphism>,
    /// Generators of `Aut(G)` used for the orbit computation.
    pub generators: Vec<Automorphism>,
    /// T-system of each component.
    pub system_of: Vec<u32>,
    pub report: TSystemReport,
}

fn apply_aut(a: &[ElementId], t: &[ElementId]) -> Vec<ElementId> {
    t.iter().map(|&x| a[x as usize]).collect()
}

/// Greedy generating set of a group of automorphisms: each one is kept
/// when it lies outside the subgroup generated by those already kept.
pub fn automorphism_generators(auts: &[Automorphism]) -> Vec<Automorphism> {
    let mut gens: Vec<Automorphism> = Vec::new();
    let mut span: HashSet<Automorphism> = HashSet::new();
    if let Some(id) = auts.first() {
        span.insert((0..id.len() as ElementId).collect());
    }
    for a in auts {
        if span.contains(a) {
            continue;
        }
        gens.push(a.clone());
        let mut queue: Vec<Automorphism> = span.iter().cloned().collect();
        while let Some(x) = queue.pop() {
            for s in &gens {
                let y: Automorphism = x.iter().map(|&e| s[e as usize]).collect();
                if span.insert(y.clone()) {
                    queue.push(y);
                }
            }
        }
    }
    gens
}

/// Component permutation induced by `a`, read off the representatives.
fn component_image(comps: &ComponentMap, a: &[ElementId]) -> Vec<u32> {
    (0..comps.component_count())
        .map(|c| {
            comps
                .component_of(&apply_aut(a, &comps.representative(c)))
                .expect("automorphisms preserve generation")
        })
        .collect()
}

pub fn analyze(g: &FiniteGroupTable, k: usize) -> Result<TSystemAnalysis> {
    let automorphisms = automorphism_group(g)?;
    let components = ComponentMap::build(g, k, true)?;
    let generators = automorphism_generators(&automorphisms);
    let nc = components.component_count();
    let mut uf = UnionFind::new(nc);
    for a in &generators {
        for (c, d) in component_image(&components, a).into_iter().enumerate() {
            uf.union(c as u32, d);
        }
    }
    // components are numbered by ascending representative, so the first
    // component met in each class holds the minimal tuple of the system
    let mut label = vec![u32::MAX; nc];
    let mut system_of = vec![0u32; nc];
    let mut systems: Vec<TSystemSummary> = Vec::new();
    for (c, slot) in system_of.iter_mut().enumerate() {
        let root = uf.find(c as u32) as usize;
        if label[root] == u32::MAX {
            label[root] = systems.len() as u32;
            let rep = components.representative(c);
            systems.push(TSystemSummary {
                size: 0,
                component_count: 0,
                representative_literal: format_tuple(g, &rep),
                representative: rep,
            });
        }
        let s = label[root];
        *slot = s;
        systems[s as usize].size += components.sizes()[c];
        systems[s as usize].component_count += 1;
    }
    let mut orbit_sizes: Vec<u64> = systems.iter().map(|s| s.size).collect();
    orbit_sizes.sort_unstable_by(|a, b| b.cmp(a));
    let report = TSystemReport {
        group: g.label(),
        k,
        vertex_count: components.vertex_count() as u64,
        component_count: nc,
        automorphism_count: automorphisms.len(),
        tsystem_count: systems.len(),
        orbit_sizes,
        systems,
    };
    Ok(TSystemAnalysis {
        components,
        automorphisms,
        generators,
        system_of,
        report,
    })
}

pub fn tsystems(g: &FiniteGroupTable, k: usize) -> Result<TSystemReport> {
    Ok(analyze(g, k)?.report)
}

/// Outcome of checking the map from components of `X~_k` to T-systems.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MapVerdict {
    pub group: String,
    pub k: usize,
    /// Minimal number of generators `d(G)`.
    pub d: usize,
    pub component_count: usize,
    pub tsystem_count: usize,
    /// Every automorphism sends each whole component into one component.
    pub well_defined: bool,
    /// Every T-system is the image of some component, and the T-system
    /// sizes add up to `|V_k|`.
    pub surjective: bool,
    pub connected: bool,
    pub single_tsystem: bool,
    /// `k >= 2 d(G)`, where connectivity and a single T-system coincide.
    pub biconditional_applies: bool,
    /// `Some(connected == single_tsystem)` when the biconditional applies.
    pub biconditional_holds: Option<bool>,
    pub consistent: bool,
}

pub fn check_component_tsystem_map(g: &FiniteGroupTable, k: usize) -> Result<MapVerdict> {
    let an = analyze(g, k)?;
    let comps = &an.components;
    let vs = comps.vertices();

    // generators suffice: the induced permutations compose
    let mut well_defined = true;
    'gens: for a in &an.generators {
        let image = component_image(comps, a);
        for (dense, key) in vs.keys().enumerate() {
            let t = vs.decode(key);
            let c = comps.component_of_index(dense);
            if comps.component_of(&apply_aut(a, &t)) != Some(image[c as usize]) {
                well_defined = false;
                break 'gens;
            }
            if an.system_of[image[c as usize] as usize] != an.system_of[c as usize] {
                well_defined = false;
                break 'gens;
            }
        }
    }

    let r = &an.report;
    let mut hit = vec![false; r.tsystem_count];
    for &s in &an.system_of {
        hit[s as usize] = true;
    }
    let surjective = hit.iter().all(|&h| h)
        && r.orbit_sizes.iter().sum::<u64>() == r.vertex_count
        && r.tsystem_count <= r.component_count;

    let d = g.min_generators();
    let connected = r.component_count == 1;
    let single_tsystem = r.tsystem_count == 1;
    let biconditional_applies = k >= 2 * d;
    let biconditional_holds = biconditional_applies.then_some(connected == single_tsystem);
    Ok(MapVerdict {
        group: g.label(),
        k,
        d,
        component_count: r.component_count,
        tsystem_count: r.tsystem_count,
        well_defined,
        surjective,
        connected,
        single_tsystem,
        biconditional_applies,
        biconditional_holds,
        consistent: well_defined && surjective && biconditional_holds != Some(false),
    })
}
