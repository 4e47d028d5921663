//! Brute-force automorphism and isomorphism search.
//!
//! A fixed small generating set is chosen; every assignment of images with
//! matching element order and conjugacy class size is extended along the
//! Cayley graph and kept when it is a consistent bijection.

use crate::error::{Error, Result};

use super::{ElementId, FiniteGroupTable};

/// Largest order accepted by [`automorphism_group`].
pub const AUTOMORPHISM_ORDER_CAP: usize = 2000;

/// An automorphism as the image array of element ids.
pub type Automorphism = Vec<ElementId>;

/// (element order, class size) for every element.
fn signatures(g: &FiniteGroupTable) -> Vec<(usize, usize)> {
    let mut sig = vec![(0, 0); g.order()];
    for class in g.conjugacy_classes() {
        let order = g.element_order(class[0]);
        for &x in &class {
            sig[x as usize] = (order, class.len());
        }
    }
    sig
}

/// Generating set whose image candidates are few: for two-generated groups
/// the pair minimising the product of candidate counts over first-element
/// class types, otherwise the greedy generating set.
fn search_generators(g: &FiniteGroupTable, sig: &[(usize, usize)]) -> Vec<ElementId> {
    let n = g.order();
    let count = |s: (usize, usize)| sig.iter().filter(|&&t| t == s).count();
    let mut types: Vec<(usize, (usize, usize), ElementId)> = Vec::new();
    for x in 0..n as ElementId {
        if !types.iter().any(|t| t.1 == sig[x as usize]) {
            types.push((count(sig[x as usize]), sig[x as usize], x));
        }
    }
    let counts: Vec<usize> = sig.iter().map(|&s| count(s)).collect();
    let mut order: Vec<ElementId> = (0..n as ElementId).collect();
    order.sort_by_key(|&y| (counts[y as usize], y));

    let mut best: Option<(usize, Vec<ElementId>)> = None;
    for &(cx, _, x) in &types {
        if g.is_generating(&[x]) {
            return vec![x];
        }
        if let Some(&y) = order.iter().find(|&&y| g.is_generating(&[x, y])) {
            let cost = cx * counts[y as usize];
            if best.as_ref().is_none_or(|b| cost < b.0) {
                best = Some((cost, vec![x, y]));
            }
        }
    }
    match best {
        Some((_, gens)) => gens,
        None => g.generating_set(),
    }
}

/// Extends `gens[i] -> images[i]` along the Cayley graph of `g`. Returns the
/// full map when it is a well-defined homomorphism.
fn extend(
    g: &FiniteGroupTable,
    h: &FiniteGroupTable,
    gens: &[ElementId],
    images: &[ElementId],
) -> Option<Vec<ElementId>> {
    const UNSET: ElementId = ElementId::MAX;
    let mut phi = vec![UNSET; g.order()];
    phi[g.identity() as usize] = h.identity();
    let mut queue = vec![g.identity()];
    let mut head = 0;
    while head < queue.len() {
        let x = queue[head];
        head += 1;
        for (&s, &t) in gens.iter().zip(images) {
            let y = g.mul(x, s);
            let img = h.mul(phi[x as usize], t);
            match phi[y as usize] {
                UNSET => {
                    phi[y as usize] = img;
                    queue.push(y);
                }
                prev if prev != img => return None,
                _ => {}
            }
        }
    }
    Some(phi)
}

fn is_bijection(phi: &[ElementId]) -> bool {
    let mut seen = vec![false; phi.len()];
    phi.iter().all(|&y| (y as usize) < seen.len() && !std::mem::replace(&mut seen[y as usize], true))
}

fn search(
    g: &FiniteGroupTable,
    h: &FiniteGroupTable,
    gens: &[ElementId],
    candidates: &[Vec<ElementId>],
    first_only: bool,
) -> Vec<Vec<ElementId>> {
    let mut out = Vec::new();
    let mut images = vec![0; gens.len()];
    let mut idx = vec![0usize; gens.len()];
    if candidates.iter().any(|c| c.is_empty()) {
        return out;
    }
    loop {
        for (i, c) in candidates.iter().enumerate() {
            images[i] = c[idx[i]];
        }
        if let Some(phi) = extend(g, h, gens, &images) {
            if is_bijection(&phi) {
                out.push(phi);
                if first_only {
                    return out;
                }
            }
        }
        // odometer
        let mut pos = gens.len();
        loop {
            if pos == 0 {
                return out;
            }
            pos -= 1;
            idx[pos] += 1;
            if idx[pos] < candidates[pos].len() {
                break;
            }
            idx[pos] = 0;
        }
    }
}

/// Every automorphism of `g`, sorted, identity first.
pub fn automorphism_group(g: &FiniteGroupTable) -> Result<Vec<Automorphism>> {
    if g.order() > AUTOMORPHISM_ORDER_CAP {
        return Err(Error::CapExceeded {
            what: "automorphism search group order",
            limit: AUTOMORPHISM_ORDER_CAP as u64,
            requested: g.order() as u64,
        });
    }
    if g.order() == 1 {
        return Ok(vec![vec![0]]);
    }
    let sig = signatures(g);
    let gens = search_generators(g, &sig);
    let candidates: Vec<Vec<ElementId>> = gens
        .iter()
        .map(|&s| {
            (0..g.order() as ElementId)
                .filter(|&y| sig[y as usize] == sig[s as usize])
                .collect()
        })
        .collect();
    let mut auts = search(g, g, &gens, &candidates, false);
    auts.sort();
    Ok(auts)
}

/// An isomorphism `g -> h` as an image array, if one exists.
pub fn find_isomorphism(g: &FiniteGroupTable, h: &FiniteGroupTable) -> Result<Option<Vec<ElementId>>> {
    let cap = AUTOMORPHISM_ORDER_CAP;
    if g.order().max(h.order()) > cap {
        return Err(Error::CapExceeded {
            what: "isomorphism search group order",
            limit: cap as u64,
            requested: g.order().max(h.order()) as u64,
        });
    }
    if g.order() != h.order() {
        return Ok(None);
    }
    let sig_g = signatures(g);
    let sig_h = signatures(h);
    let gens = search_generators(g, &sig_g);
    let candidates: Vec<Vec<ElementId>> = gens
        .iter()
        .map(|&s| {
            (0..h.order() as ElementId)
                .filter(|&y| sig_h[y as usize] == sig_g[s as usize])
                .collect()
        })
        .collect();
    Ok(search(g, h, &gens, &candidates, true).into_iter().next())
}
