//! Breadth-first search over (plough positions, cleared arcs).

use std::collections::HashMap;
use std::collections::VecDeque;

use crate::digraph::{facilities_connected_unchecked, Instance, SolutionWalks, Walk};

/// Sentinel position of a plough that has not been placed yet.
const UNPLACED: u8 = u8::MAX;

#[derive(Clone, PartialEq, Eq, Hash)]
struct State {
    positions: Vec<u8>,
    cleared: u64,
}

#[derive(Clone, Copy)]
enum Move {
    Step(u8, u8),
    Place(u8),
}

/// Searches from the given sorted start positions (`UNPLACED` entries are
/// placed freely by their first move). Returns the move sequence of a
/// shortest accepting run.
fn search(inst: &Instance, starts: Vec<u8>) -> Option<Vec<Move>> {
    let arcs = inst.arcs();
    let accept = |cleared: u64| {
        let set: Vec<(usize, usize)> =
            arcs.iter().enumerate().filter(|(i, _)| cleared >> i & 1 == 1).map(|(_, &a)| a).collect();
        facilities_connected_unchecked(inst.n(), inst.facility_flags(), &set)
    };
    let start = State { positions: starts, cleared: 0 };
    if accept(0) {
        return Some(Vec::new());
    }
    let mut pred: HashMap<State, (usize, Move)> = HashMap::new();
    let mut order: Vec<State> = vec![start.clone()];
    pred.insert(start, (usize::MAX, Move::Place(0)));
    let mut queue = VecDeque::from([0usize]);
    while let Some(idx) = queue.pop_front() {
        let state = order[idx].clone();
        for (i, &p) in state.positions.iter().enumerate() {
            if i > 0 && state.positions[i - 1] == p {
                continue;
            }
            let mut successors: Vec<(u8, u64, Move)> = Vec::new();
            if p == UNPLACED {
                for v in 0..inst.n() as u8 {
                    successors.push((v, state.cleared, Move::Place(v)));
                }
            } else {
                for &w in inst.out_neighbors(p as usize) {
                    let bit = inst.arc_index(p as usize, w).unwrap();
                    successors.push((w as u8, state.cleared | 1 << bit, Move::Step(p, w as u8)));
                }
            }
            for (to, cleared, mv) in successors {
                let mut positions = state.positions.clone();
                positions[i] = to;
                positions.sort_unstable();
                let next = State { positions, cleared };
                if pred.contains_key(&next) {
                    continue;
                }
                pred.insert(next.clone(), (idx, mv));
                if cleared != state.cleared && accept(cleared) {
                    let mut moves = vec![mv];
                    let mut cur = idx;
                    while cur != 0 {
                        let (p, m) = pred[&order[cur]];
                        moves.push(m);
                        cur = p;
                    }
                    moves.reverse();
                    return Some(moves);
                }
                order.push(next);
                queue.push_back(order.len() - 1);
            }
        }
    }
    None
}

/// Replays moves on concrete ploughs; a move from `v` is given to the first
/// plough currently at `v`, a placement to the first unplaced plough.
fn replay(starts: &[u8], moves: &[Move]) -> Vec<Vec<usize>> {
    let mut walks: Vec<Vec<usize>> =
        starts.iter().map(|&s| if s == UNPLACED { Vec::new() } else { vec![s as usize] }).collect();
    for &m in moves {
        match m {
            Move::Step(from, to) => {
                let w = walks.iter_mut().find(|w| w.last() == Some(&(from as usize))).expect("plough present");
                w.push(to as usize);
            }
            Move::Place(v) => {
                let w = walks.iter_mut().find(|w| w.is_empty()).expect("unplaced plough");
                w.push(v as usize);
            }
        }
    }
    walks
}

pub(crate) fn st(inst: &Instance) -> Option<SolutionWalks> {
    let starts: Vec<u8> = inst.plough_starts().into_iter().map(|v| v as u8).collect();
    let moves = search(inst, starts.clone())?;
    let walks = replay(&starts, &moves).into_iter().map(|w| Walk::new(w).unwrap()).collect();
    Some(SolutionWalks::new(walks))
}

/// `k` ploughs with free start positions. Ploughs never placed are reported
/// at vertex 0 with zero length.
pub(crate) fn stu(inst: &Instance, k: usize) -> Option<SolutionWalks> {
    let starts = vec![UNPLACED; k];
    let moves = search(inst, starts.clone())?;
    let walks = replay(&starts, &moves)
        .into_iter()
        .map(|w| Walk::new(if w.is_empty() { vec![0] } else { w }).unwrap())
        .collect();
    Some(SolutionWalks::new(walks))
}
