//! Rewriting a solution on a transitively closed instance into a tree-like
//! one.

use std::collections::HashSet;

use thiserror::Error;

use crate::digraph::{is_transitively_closed, verify_st_solution, Instance, SolutionDefect, SolutionWalks, Vertex, Walk};
use crate::util::DisjointSets;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NormalizeError {
    #[error("instance is not transitively closed")]
    NotClosed,
    #[error("instance has a base that is not a facility")]
    NotRestricted,
    #[error("input walks are not a solution: {0}")]
    NotASolution(SolutionDefect),
}

/// Deletes the vertex at position `j ≥ 1` of `walk`, then merges a repeated
/// vertex that the deletion made adjacent. At the last position this
/// truncates the walk; elsewhere it replaces two arcs by their shortcut,
/// which exists in a transitively closed digraph.
fn delete_at(walk: &Walk, j: usize) -> Walk {
    let mut v = walk.vertices().to_vec();
    v.remove(j);
    if j < v.len() && v[j] == v[j - 1] {
        v.remove(j);
    }
    Walk::new(v).expect("start vertex kept")
}

/// Rewrites `sol` until no single deletion keeps it a solution.
///
/// Every accepted rewrite shortens the total length, so the loop terminates.
/// At a fixpoint the walks are tree-like: a repeated arc, an antiparallel
/// pair or a cycle in the underlying graph always admits a deletion that
/// preserves connectivity (drop an occurrence whose edge survives elsewhere),
/// and so does a non-terminal leaf (truncate) or a non-terminal vertex passed
/// through by a single walk (shortcut).
pub fn normalize_to_tree_like(tc: &Instance, sol: &SolutionWalks) -> Result<SolutionWalks, NormalizeError> {
    if !is_transitively_closed(tc) {
        return Err(NormalizeError::NotClosed);
    }
    if !tc.is_restricted() {
        return Err(NormalizeError::NotRestricted);
    }
    verify_st_solution(tc, sol).map_err(NormalizeError::NotASolution)?;
    let mut cur = sol.clone();
    'outer: loop {
        for i in 0..cur.walks.len() {
            for j in (1..cur.walks[i].vertices().len()).rev() {
                let mut next = cur.clone();
                next.walks[i] = delete_at(&cur.walks[i], j);
                if verify_st_solution(tc, &next).is_ok() {
                    cur = next;
                    continue 'outer;
                }
            }
        }
        return Ok(cur);
    }
}

/// No arc is used twice, no arc is used together with its reverse, every walk
/// is a simple path, and the union's underlying graph is a tree containing
/// every facility.
pub fn is_tree_like(inst: &Instance, sol: &SolutionWalks) -> bool {
    let mut edges = HashSet::new();
    for w in &sol.walks {
        let mut seen = HashSet::new();
        if !w.vertices().iter().all(|&v| seen.insert(v)) {
            return false;
        }
        for (a, b) in w.arcs() {
            if !edges.insert((a.min(b), a.max(b))) {
                return false;
            }
        }
    }
    let verts = union_vertices(sol);
    let facs = inst.facilities();
    if facs.len() >= 2 && !facs.iter().all(|f| verts.contains(f)) {
        return false;
    }
    if edges.is_empty() {
        return true;
    }
    // A forest with |E| = |V| − 1 is a tree.
    let mut sets = DisjointSets::new(inst.n());
    edges.iter().all(|&(a, b)| sets.union(a, b)) && edges.len() + 1 == verts.len()
}

/// Endpoints of traversed arcs.
pub fn union_vertices(sol: &SolutionWalks) -> HashSet<Vertex> {
    sol.arc_union().into_iter().flat_map(|(a, b)| [a, b]).collect()
}
