//! Exact search over paths in the condensation.
//!
//! A plough that enters a strongly connected component can clear all of its
//! arcs before leaving, and clearing more arcs never disconnects facilities.
//! So without loss of generality every plough follows a maximal path in the
//! condensation DAG and clears every arc inside the components it visits.
//! The search assigns such a path to each plough in turn, tracking only the
//! connectivity of cleared arcs.

use std::collections::{HashMap, HashSet, VecDeque};

use petgraph::algo::tarjan_scc;
use petgraph::graph::DiGraph;

use super::ExactError;
use crate::digraph::{Instance, SolutionWalks, Vertex, Walk};
use crate::util::DisjointSets;

pub(crate) struct Condensation {
    comp: Vec<usize>,
    members: Vec<Vec<Vertex>>,
    /// Arcs leaving each component.
    exits: Vec<Vec<(Vertex, Vertex)>>,
    internal: Vec<Vec<(Vertex, Vertex)>>,
}

impl Condensation {
    pub(crate) fn new(inst: &Instance) -> Self {
        let mut g = DiGraph::<(), ()>::new();
        let nodes: Vec<_> = (0..inst.n()).map(|_| g.add_node(())).collect();
        for &(u, v) in inst.arcs() {
            g.add_edge(nodes[u], nodes[v], ());
        }
        let sccs = tarjan_scc(&g);
        let mut comp = vec![0; inst.n()];
        let mut members = Vec::with_capacity(sccs.len());
        for (c, scc) in sccs.iter().enumerate() {
            let mut vs: Vec<Vertex> = scc.iter().map(|x| x.index()).collect();
            vs.sort_unstable();
            for &v in &vs {
                comp[v] = c;
            }
            members.push(vs);
        }
        let mut exits = vec![Vec::new(); members.len()];
        let mut internal = vec![Vec::new(); members.len()];
        for &(u, v) in inst.arcs() {
            if comp[u] == comp[v] {
                internal[comp[u]].push((u, v));
            } else {
                exits[comp[u]].push((u, v));
            }
        }
        Self { comp, members, exits, internal }
    }

    /// Representatives (smallest vertex) of components with no entering arc.
    pub(crate) fn source_representatives(&self, inst: &Instance) -> Vec<Vertex> {
        let mut entered = vec![false; self.members.len()];
        for &(u, v) in inst.arcs() {
            if self.comp[u] != self.comp[v] {
                entered[self.comp[v]] = true;
            }
        }
        (0..self.members.len()).filter(|&c| !entered[c]).map(|c| self.members[c][0]).collect()
    }

    /// All maximal condensation paths from the component of `start`, as
    /// sequences of exit arcs.
    fn maximal_paths(&self, start: Vertex, budget: &mut usize) -> Result<Vec<Vec<(Vertex, Vertex)>>, ExactError> {
        let mut out = Vec::new();
        let mut stack: Vec<(usize, Vec<(Vertex, Vertex)>)> = vec![(self.comp[start], Vec::new())];
        while let Some((c, prefix)) = stack.pop() {
            if self.exits[c].is_empty() {
                if *budget == 0 {
                    return Err(ExactError::LimitExceeded { what: "condensation paths", limit: super::PATH_BUDGET });
                }
                *budget -= 1;
                out.push(prefix);
                continue;
            }
            for &(a, b) in self.exits[c].iter().rev() {
                let mut p = prefix.clone();
                p.push((a, b));
                stack.push((self.comp[b], p));
            }
        }
        Ok(out)
    }

    /// Vertex pairs whose union reproduces the connectivity of the arcs
    /// cleared by `path` from `start`.
    fn effect(&self, start: Vertex, path: &[(Vertex, Vertex)]) -> Vec<(Vertex, Vertex)> {
        let mut pairs = Vec::new();
        let visit = |c: usize, pairs: &mut Vec<(Vertex, Vertex)>| {
            if !self.internal[c].is_empty() {
                let m = &self.members[c];
                pairs.extend(m.windows(2).map(|w| (w[0], w[1])));
            }
        };
        visit(self.comp[start], &mut pairs);
        for &(a, b) in path {
            pairs.push((a, b));
            visit(self.comp[b], &mut pairs);
        }
        pairs
    }

    fn path_within(&self, inst: &Instance, from: Vertex, to: Vertex) -> Vec<Vertex> {
        let c = self.comp[from];
        let mut prev = HashMap::new();
        let mut queue = VecDeque::from([from]);
        prev.insert(from, from);
        while let Some(x) = queue.pop_front() {
            if x == to {
                break;
            }
            for &y in inst.out_neighbors(x) {
                if self.comp[y] == c && !prev.contains_key(&y) {
                    prev.insert(y, x);
                    queue.push_back(y);
                }
            }
        }
        let mut path = vec![to];
        let mut cur = to;
        while cur != from {
            cur = prev[&cur];
            path.push(cur);
        }
        path.reverse();
        path
    }

    /// A concrete walk from `start` clearing every arc inside each visited
    /// component and the given exit arcs.
    pub(crate) fn expand(&self, inst: &Instance, start: Vertex, path: &[(Vertex, Vertex)]) -> Walk {
        let mut walk = vec![start];
        let mut cur = start;
        let sweep = |cur: &mut Vertex, walk: &mut Vec<Vertex>| {
            for &(a, b) in &self.internal[self.comp[*cur]] {
                walk.extend_from_slice(&self.path_within(inst, *cur, a)[1..]);
                walk.push(b);
                *cur = b;
            }
        };
        sweep(&mut cur, &mut walk);
        for &(a, b) in path {
            walk.extend_from_slice(&self.path_within(inst, cur, a)[1..]);
            walk.push(b);
            cur = b;
            sweep(&mut cur, &mut walk);
        }
        Walk::new(walk).unwrap()
    }
}

struct Search<'a> {
    facilities: Vec<Vertex>,
    n: usize,
    /// Candidate paths per plough, with their union effects.
    options: Vec<&'a [(Vec<(Vertex, Vertex)>, Vec<(Vertex, Vertex)>)]>,
    /// Whether plough `i` is interchangeable with plough `i-1`.
    same_as_prev: Vec<bool>,
    /// Vertices reachable by ploughs `i..`, as bitsets.
    suffix_reach: Vec<Vec<u64>>,
    failed: HashSet<(usize, usize, Vec<u16>)>,
    choice: Vec<usize>,
    /// Number of ploughs whose choice led to acceptance.
    depth: usize,
}

fn labels_after(labels: &[u16], pairs: &[(Vertex, Vertex)]) -> Vec<u16> {
    let n = labels.len();
    let mut sets = DisjointSets::new(n);
    for (v, &l) in labels.iter().enumerate() {
        sets.union(v, l as usize);
    }
    for &(a, b) in pairs {
        sets.union(a, b);
    }
    let mut min_of_root = vec![u16::MAX; n];
    for v in 0..n {
        let r = sets.find(v);
        min_of_root[r] = min_of_root[r].min(v as u16);
    }
    (0..n).map(|v| min_of_root[sets.find(v)]).collect()
}

impl Search<'_> {
    fn accepted(&self, labels: &[u16]) -> bool {
        if self.facilities.len() <= 1 {
            return true;
        }
        // Two or more facilities sharing a class means the class has cleared
        // arcs, so every facility in it is touched.
        let l0 = labels[self.facilities[0]];
        self.facilities.iter().all(|&f| labels[f] == l0)
    }

    /// Every facility class must contain a vertex that later ploughs reach,
    /// unless it is already the only class.
    fn hopeless(&self, i: usize, labels: &[u16]) -> bool {
        let mut classes: Vec<u16> = self.facilities.iter().map(|&f| labels[f]).collect();
        classes.sort_unstable();
        classes.dedup();
        let reach = &self.suffix_reach[i];
        classes.iter().any(|&c| {
            !(0..self.n).any(|v| labels[v] == c && reach[v / 64] >> (v % 64) & 1 == 1)
        })
    }

    fn run(&mut self, i: usize, lower: usize, labels: Vec<u16>) -> bool {
        if self.accepted(&labels) {
            self.depth = i;
            return true;
        }
        if i == self.options.len() || self.hopeless(i, &labels) {
            return false;
        }
        let key = (i, lower, labels);
        if self.failed.contains(&key) {
            return false;
        }
        let labels = key.2.clone();
        let opts = self.options[i];
        for j in lower..opts.len() {
            let next = labels_after(&labels, &opts[j].1);
            self.choice[i] = j;
            let next_lower = if i + 1 < self.options.len() && self.same_as_prev[i + 1] { j } else { 0 };
            if self.run(i + 1, next_lower, next) {
                return true;
            }
        }
        self.failed.insert(key);
        false
    }
}

type PathOptions = Vec<(Vec<(Vertex, Vertex)>, Vec<(Vertex, Vertex)>)>;

/// Decides whether ploughs at `starts` (sorted; each entry a vertex, or
/// `None` for a plough that may start at any source component) can connect
/// the facilities. On success returns one walk per plough.
pub(crate) fn search(inst: &Instance, starts: &[Option<Vertex>]) -> Result<Option<Vec<Walk>>, ExactError> {
    let n = inst.n();
    if n > u16::MAX as usize {
        return Err(ExactError::LimitExceeded { what: "vertices", limit: u16::MAX as usize });
    }
    let cond = Condensation::new(inst);
    let mut budget = super::PATH_BUDGET;
    let mut by_start: HashMap<Option<Vertex>, PathOptions> = HashMap::new();
    for &s in starts {
        if by_start.contains_key(&s) {
            continue;
        }
        let mut opts = PathOptions::new();
        let origins: Vec<Vertex> = match s {
            Some(v) => vec![v],
            None => cond.source_representatives(inst),
        };
        for o in origins {
            for p in cond.maximal_paths(o, &mut budget)? {
                let eff = cond.effect(o, &p);
                let mut full = vec![(o, o)];
                full.extend(p);
                opts.push((full, eff));
            }
        }
        by_start.insert(s, opts);
    }
    let reach_of = |v: Vertex| -> Vec<u64> {
        let mut bits = vec![0u64; n.div_ceil(64)];
        let mut queue = VecDeque::from([v]);
        bits[v / 64] |= 1 << (v % 64);
        while let Some(x) = queue.pop_front() {
            for &y in inst.out_neighbors(x) {
                if bits[y / 64] >> (y % 64) & 1 == 0 {
                    bits[y / 64] |= 1 << (y % 64);
                    queue.push_back(y);
                }
            }
        }
        bits
    };
    let all_reach = |s: Option<Vertex>| -> Vec<u64> {
        match s {
            Some(v) => reach_of(v),
            None => vec![u64::MAX; n.div_ceil(64)],
        }
    };
    let mut suffix_reach = vec![vec![0u64; n.div_ceil(64)]; starts.len() + 1];
    for i in (0..starts.len()).rev() {
        let r = all_reach(starts[i]);
        suffix_reach[i] = suffix_reach[i + 1].iter().zip(&r).map(|(a, b)| a | b).collect();
    }
    let mut search = Search {
        facilities: inst.facilities(),
        n,
        options: starts.iter().map(|s| by_start[s].as_slice()).collect(),
        same_as_prev: (0..starts.len()).map(|i| i > 0 && starts[i] == starts[i - 1]).collect(),
        suffix_reach,
        failed: HashSet::new(),
        choice: vec![usize::MAX; starts.len()],
        depth: 0,
    };
    let labels: Vec<u16> = (0..n as u16).collect();
    if !search.run(0, 0, labels) {
        return Ok(None);
    }
    let mut walks = Vec::with_capacity(starts.len());
    for (i, s) in starts.iter().enumerate() {
        if i < search.depth {
            let (full, _) = &search.options[i][search.choice[i]];
            walks.push(cond.expand(inst, full[0].0, &full[1..]));
        } else {
            // Ploughs after the accepting prefix stay put.
            walks.push(Walk::at(s.unwrap_or(0)));
        }
    }
    Ok(Some(walks))
}

pub(crate) fn st(inst: &Instance) -> Result<Option<SolutionWalks>, ExactError> {
    let starts: Vec<Option<Vertex>> = inst.plough_starts().into_iter().map(Some).collect();
    Ok(search(inst, &starts)?.map(SolutionWalks::new))
}

pub(crate) fn stu(inst: &Instance, k: usize) -> Result<Option<SolutionWalks>, ExactError> {
    Ok(search(inst, &vec![None; k])?.map(SolutionWalks::new))
}
