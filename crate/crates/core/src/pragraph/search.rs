//! Path extraction: explicit Nielsen words between tuples.

use std::collections::hash_map::Entry;
use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::groups::{ElementId, FiniteGroupTable};

use super::moves::{all_moves, NielsenMove, NielsenWord, Sign};

/// Bounds for breadth-first searches. `None` means unlimited (the search is
/// then confined only by the component it explores).
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchLimits {
    pub max_depth: Option<usize>,
    pub max_visited: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum PathOutcome {
    /// `word` replays from the start tuple to `end`; checked before return.
    Found { word: NielsenWord, end: Vec<ElementId> },
    /// The component was exhausted without reaching the goal.
    NotConnected { explored: usize },
    /// A search limit stopped the search first.
    LimitReached { explored: usize },
}

impl PathOutcome {
    pub fn word(&self) -> Option<&NielsenWord> {
        match self {
            PathOutcome::Found { word, .. } => Some(word),
            _ => None,
        }
    }

    pub fn is_found(&self) -> bool {
        matches!(self, PathOutcome::Found { .. })
    }
}

type Key = Box<[ElementId]>;
type Parents = HashMap<Key, Option<(Key, NielsenMove)>>;

fn require_generating(g: &FiniteGroupTable, t: &[ElementId]) -> Result<()> {
    if let Some(x) = t.iter().find(|&&x| x as usize >= g.order()) {
        return Err(Error::InvalidElement(format!("element id {x} out of range")));
    }
    if !g.is_generating(t) {
        return Err(Error::NotGenerating(crate::groups::literal::format_tuple(g, t)));
    }
    Ok(())
}

fn trace_back(parents: &Parents, mut node: Key) -> Vec<NielsenMove> {
    let mut moves = Vec::new();
    while let Some(Some((prev, m))) = parents.get(&node) {
        moves.push(*m);
        node = prev.clone();
    }
    moves.reverse();
    moves
}

fn verified(g: &FiniteGroupTable, start: &[ElementId], word: NielsenWord) -> Result<PathOutcome> {
    let end = word.apply(g, start)?;
    Ok(PathOutcome::Found { word, end })
}

/// Breadth-first search from `start` for the nearest tuple satisfying
/// `goal`, giving a shortest word.
fn bfs_to<F>(
    g: &FiniteGroupTable,
    start: &[ElementId],
    extended: bool,
    limits: SearchLimits,
    goal: F,
) -> Result<PathOutcome>
where
    F: Fn(&[ElementId]) -> bool,
{
    if goal(start) {
        return verified(g, start, NielsenWord::new());
    }
    let moves = all_moves(start.len(), extended);
    let mut parents: Parents = HashMap::new();
    let root: Key = start.into();
    parents.insert(root.clone(), None);
    let mut frontier = vec![root];
    let mut depth = 0;
    while !frontier.is_empty() {
        if limits.max_depth.is_some_and(|d| depth >= d) {
            return Ok(PathOutcome::LimitReached { explored: parents.len() });
        }
        depth += 1;
        let mut next = Vec::new();
        for node in &frontier {
            for &m in &moves {
                let mut u = node.to_vec();
                m.apply_in_place(g, &mut u);
                let u: Key = u.into();
                if let Entry::Vacant(slot) = parents.entry(u.clone()) {
                    slot.insert(Some((node.clone(), m)));
                    if goal(&u) {
                        let word = NielsenWord(trace_back(&parents, u));
                        return verified(g, start, word);
                    }
                    next.push(u);
                }
            }
            if limits.max_visited.is_some_and(|v| parents.len() >= v) {
                return Ok(PathOutcome::LimitReached { explored: parents.len() });
            }
        }
        frontier = next;
    }
    Ok(PathOutcome::NotConnected { explored: parents.len() })
}

/// A word from `from` to `to`, by bidirectional breadth-first search.
pub fn connect_path(
    g: &FiniteGroupTable,
    from: &[ElementId],
    to: &[ElementId],
    extended: bool,
    limits: SearchLimits,
) -> Result<PathOutcome> {
    if from.len() != to.len() {
        return Err(Error::DimensionMismatch(format!(
            "cannot connect a {}-tuple to a {}-tuple",
            from.len(),
            to.len()
        )));
    }
    require_generating(g, from)?;
    require_generating(g, to)?;
    if from == to {
        return verified(g, from, NielsenWord::new());
    }
    let moves = all_moves(from.len(), extended);
    let mut fwd: Parents = HashMap::new();
    let mut bwd: Parents = HashMap::new();
    fwd.insert(from.into(), None);
    bwd.insert(to.into(), None);
    let mut fwd_frontier: Vec<Key> = vec![from.into()];
    let mut bwd_frontier: Vec<Key> = vec![to.into()];
    let mut depth = 0;
    let meet = loop {
        if fwd_frontier.is_empty() || bwd_frontier.is_empty() {
            return Ok(PathOutcome::NotConnected { explored: fwd.len() + bwd.len() });
        }
        if limits.max_depth.is_some_and(|d| depth >= d)
            || limits.max_visited.is_some_and(|v| fwd.len() + bwd.len() >= v)
        {
            return Ok(PathOutcome::LimitReached { explored: fwd.len() + bwd.len() });
        }
        depth += 1;
        let forward = fwd_frontier.len() <= bwd_frontier.len();
        let (frontier, mine, other) = if forward {
            (&mut fwd_frontier, &mut fwd, &bwd)
        } else {
            (&mut bwd_frontier, &mut bwd, &fwd)
        };
        let mut next = Vec::new();
        let mut found = None;
        'expand: for node in frontier.iter() {
            for &m in &moves {
                let mut u = node.to_vec();
                m.apply_in_place(g, &mut u);
                let u: Key = u.into();
                if let Entry::Vacant(slot) = mine.entry(u.clone()) {
                    slot.insert(Some((node.clone(), m)));
                    if other.contains_key(&u) {
                        found = Some(u);
                        break 'expand;
                    }
                    next.push(u);
                }
            }
        }
        *frontier = next;
        if let Some(u) = found {
            break u;
        }
    };
    let mut moves = trace_back(&fwd, meet.clone());
    // the backward tree records moves from `to` outwards; undo them in turn
    let mut node = meet;
    while let Some(Some((prev, m))) = bwd.get(&node) {
        moves.push(m.inverse());
        node = prev.clone();
    }
    let outcome = verified(g, from, NielsenWord(moves))?;
    match &outcome {
        PathOutcome::Found { end, .. } if end.as_slice() == to => Ok(outcome),
        _ => unreachable!("bidirectional search produced a word that does not replay"),
    }
}

/// A word taking `t` to a tuple with an identity coordinate (the remaining
/// coordinates then still generate). Shortest such word, by BFS.
pub fn to_redundant(
    g: &FiniteGroupTable,
    t: &[ElementId],
    extended: bool,
    limits: SearchLimits,
) -> Result<PathOutcome> {
    require_generating(g, t)?;
    let e = g.identity();
    bfs_to(g, t, extended, limits, |u| u.contains(&e))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CanonicalRoute {
    /// `t` is a rearrangement of the target; only P moves are used.
    Permutation,
    /// Two redundant slots are created, filled with the target pair, and
    /// the remaining coordinates are cleared.
    Chain,
    /// Direct bidirectional search.
    Search,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CanonicalConnection {
    pub route: CanonicalRoute,
    pub target: Vec<ElementId>,
    pub outcome: PathOutcome,
}

/// Shortest word of right multiplications turning `from` into `to`, where
/// step `(s, sign)` multiplies by `gens[s]^sign`. BFS on the Cayley graph.
fn cayley_word(
    g: &FiniteGroupTable,
    from: ElementId,
    to: ElementId,
    gens: &[ElementId],
) -> Option<Vec<(usize, Sign)>> {
    let n = g.order();
    let mut parent: Vec<Option<(ElementId, usize, Sign)>> = vec![None; n];
    let mut seen = vec![false; n];
    seen[from as usize] = true;
    let mut queue = vec![from];
    let mut head = 0;
    while head < queue.len() && !seen[to as usize] {
        let x = queue[head];
        head += 1;
        for (s, &y) in gens.iter().enumerate() {
            for sign in [Sign::Plus, Sign::Minus] {
                let z = g.mul(x, if sign == Sign::Plus { y } else { g.inv(y) });
                if !seen[z as usize] {
                    seen[z as usize] = true;
                    parent[z as usize] = Some((x, s, sign));
                    queue.push(z);
                }
            }
        }
    }
    if !seen[to as usize] {
        return None;
    }
    let mut steps = Vec::new();
    let mut x = to;
    while let Some((prev, s, sign)) = parent[x as usize] {
        steps.push((s, sign));
        x = prev;
    }
    steps.reverse();
    Some(steps)
}

fn permutation_word(from: &[ElementId], to: &[ElementId]) -> Option<NielsenWord> {
    let mut a = from.to_vec();
    let mut sa = a.clone();
    let mut sb = to.to_vec();
    sa.sort_unstable();
    sb.sort_unstable();
    if sa != sb {
        return None;
    }
    let mut word = NielsenWord::new();
    for i in 0..a.len() {
        if a[i] == to[i] {
            continue;
        }
        let j = (i + 1..a.len()).find(|&j| a[j] == to[i])?;
        a.swap(i, j);
        word.push(NielsenMove::p(i, j));
    }
    Some(word)
}

fn push_apply(g: &FiniteGroupTable, word: &mut NielsenWord, cur: &mut [ElementId], m: NielsenMove) {
    m.apply_in_place(g, cur);
    word.push(m);
}

/// Moves identity coordinates into the last two slots, then rewrites them,
/// following the canonical-form argument. `None` when a redundancy search
/// fails (then a direct search is the fallback).
fn chain_route(
    g: &FiniteGroupTable,
    t: &[ElementId],
    gamma: (ElementId, ElementId),
    limits: SearchLimits,
) -> Result<Option<NielsenWord>> {
    let k = t.len();
    let e = g.identity();
    let mut word = NielsenWord::new();
    let mut cur = t.to_vec();

    let PathOutcome::Found { word: w1, end } = to_redundant(g, &cur, true, limits)? else {
        return Ok(None);
    };
    word.extend(&w1);
    cur = end;
    let p = cur.iter().rposition(|&x| x == e).expect("redundant tuple");
    if p != k - 1 {
        push_apply(g, &mut word, &mut cur, NielsenMove::p(p, k - 1));
    }

    let sub = &cur[..k - 1];
    if !g.is_generating(sub) {
        return Ok(None);
    }
    let PathOutcome::Found { word: w2, end } = to_redundant(g, sub, true, limits)? else {
        return Ok(None);
    };
    word.extend(&w2);
    cur[..k - 1].copy_from_slice(&end);
    let p = cur[..k - 1].iter().rposition(|&x| x == e).expect("redundant tuple");
    if p != k - 2 {
        push_apply(g, &mut word, &mut cur, NielsenMove::p(p, k - 2));
    }

    // (y_1, .., y_{k-2}, 1, 1): build gamma_1, gamma_2 from the y's
    let ys: Vec<ElementId> = cur[..k - 2].to_vec();
    for (slot, target) in [(k - 2, gamma.0), (k - 1, gamma.1)] {
        let steps = cayley_word(g, e, target, &ys).expect("the y's generate");
        for (j, sign) in steps {
            push_apply(g, &mut word, &mut cur, NielsenMove::r(slot, j, sign));
        }
    }
    // then clear each y using the gamma pair
    let gs = [gamma.0, gamma.1];
    for i in 0..k - 2 {
        let steps = cayley_word(g, cur[i], e, &gs).expect("the gammas generate");
        for (s, sign) in steps {
            push_apply(g, &mut word, &mut cur, NielsenMove::r(i, k - 2 + s, sign));
        }
    }
    Ok(Some(word))
}

/// A word sending `t` to `(1, .., 1, gamma_1, gamma_2)`.
///
/// A rearrangement of the target is sorted with P moves. For `k >= 4` the
/// redundancy chain is tried first; otherwise, or if it fails, a direct
/// bidirectional search in the extended graph is used.
pub fn connect_to_canonical(
    g: &FiniteGroupTable,
    t: &[ElementId],
    gamma: (ElementId, ElementId),
    limits: SearchLimits,
) -> Result<CanonicalConnection> {
    let k = t.len();
    if k < 2 {
        return Err(Error::Precondition("canonical form needs k >= 2".into()));
    }
    require_generating(g, t)?;
    require_generating(g, &[gamma.0, gamma.1])?;
    let mut target = vec![g.identity(); k];
    target[k - 2] = gamma.0;
    target[k - 1] = gamma.1;

    let check = |route, word: NielsenWord| -> Result<CanonicalConnection> {
        let outcome = verified(g, t, word)?;
        match &outcome {
            PathOutcome::Found { end, .. } if *end == target => Ok(CanonicalConnection {
                route,
                target: target.clone(),
                outcome,
            }),
            _ => unreachable!("canonical word does not replay to the target"),
        }
    };

    if let Some(word) = permutation_word(t, &target) {
        return check(CanonicalRoute::Permutation, word);
    }
    if k >= 4 {
        if let Some(word) = chain_route(g, t, gamma, limits)? {
            return check(CanonicalRoute::Chain, word);
        }
    }
    let outcome = connect_path(g, t, &target, true, limits)?;
    Ok(CanonicalConnection {
        route: CanonicalRoute::Search,
        target,
        outcome,
    })
}
