//! Backtracking over injective maps from the pattern tree into the host.

use crate::tpe::TpeInstance;

/// Finds `h` with `h(a) → h(b)` for every tree arc `a → b`, every terminal in
/// the image, and demand at most capacity at every tree vertex.
pub(crate) fn embed(inst: &TpeInstance) -> Option<Vec<usize>> {
    let tree = inst.tree();
    let eta = tree.order();
    let host = inst.host();
    if inst.terminal_count() > eta || eta > host.n() {
        return None;
    }
    let parents = tree.parents();
    // Direction of the edge to the parent: true when parent → child.
    let downward: Vec<bool> = (0..eta).map(|v| v > 0 && tree.arcs().contains(&(parents[v], v))).collect();
    let mut map = vec![usize::MAX; eta];
    let mut used = vec![false; host.n()];
    fn go(
        u: usize,
        inst: &TpeInstance,
        parents: &[usize],
        downward: &[bool],
        map: &mut Vec<usize>,
        used: &mut Vec<bool>,
    ) -> bool {
        let eta = map.len();
        if u == eta {
            return (0..used.len()).all(|w| !inst.is_terminal(w) || used[w]);
        }
        let host = inst.host();
        let need = inst.tree().demand()[u];
        for w in 0..host.n() {
            if used[w] || need > inst.capacity()[w] {
                continue;
            }
            if u > 0 {
                let p = map[parents[u]];
                let ok = if downward[u] { host.has_arc(p, w) } else { host.has_arc(w, p) };
                if !ok {
                    continue;
                }
            }
            map[u] = w;
            used[w] = true;
            if go(u + 1, inst, parents, downward, map, used) {
                return true;
            }
            used[w] = false;
        }
        false
    }
    if go(0, inst, &parents, &downward, &mut map, &mut used) {
        Some(map)
    } else {
        None
    }
}
