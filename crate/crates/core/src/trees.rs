//! Free-tree enumeration, orientations and plough demand.
//!
//! Free trees are generated as canonical level sequences rooted at a center
//! (Wright, Richmond, Odlyzko and McKay), so each isomorphism class appears
//! once. Vertex ids follow the preorder of the level sequence and vertex 0 is
//! the root. An oriented tree is written as its level sequence, a colon, and
//! one sign per non-root vertex in preorder: `+` for an arc from parent to
//! child, `-` for the reverse. Example: `0 1 2 1:+-+`.

use std::collections::HashSet;

use thiserror::Error;

use crate::util::DisjointSets;

pub const MAX_ORDER: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TreeError {
    #[error("tree order {0} outside 1..={MAX_ORDER}")]
    OrderOutOfRange(usize),
    #[error("arcs do not form a tree on {0} vertices")]
    NotATree(usize),
    #[error("malformed tree code: {0}")]
    BadCode(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FreeTree {
    levels: Vec<u8>,
}

impl FreeTree {
    /// Builds a tree from a level sequence (preorder depths starting at 0).
    pub fn from_levels(levels: Vec<u8>) -> Result<Self, TreeError> {
        if levels.is_empty() || levels.len() > MAX_ORDER {
            return Err(TreeError::OrderOutOfRange(levels.len()));
        }
        if levels[0] != 0 || levels[1..].iter().any(|&l| l == 0) {
            return Err(TreeError::BadCode("level sequence must have a single 0 at the front".into()));
        }
        if levels.windows(2).any(|w| w[1] > w[0] + 1) {
            return Err(TreeError::BadCode("level may grow by at most one per step".into()));
        }
        Ok(Self { levels })
    }

    pub fn order(&self) -> usize {
        self.levels.len()
    }

    pub fn levels(&self) -> &[u8] {
        &self.levels
    }

    /// Parent of each non-root vertex, indexed by vertex; `parents()[0]` is 0.
    pub fn parents(&self) -> Vec<usize> {
        let mut parents = vec![0; self.order()];
        let mut stack: Vec<usize> = Vec::new();
        for (v, &l) in self.levels.iter().enumerate() {
            stack.truncate(l as usize);
            if let Some(&p) = stack.last() {
                parents[v] = p;
            }
            stack.push(v);
        }
        parents
    }

    /// Edges `(parent, child)` in child preorder.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let parents = self.parents();
        (1..self.order()).map(|v| (parents[v], v)).collect()
    }

    pub fn code(&self) -> String {
        self.levels.iter().map(u8::to_string).collect::<Vec<_>>().join(" ")
    }
}

/// A directed tree with its plough demand `L(v) = max(0, outdeg − indeg)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TreeCandidate {
    shape: FreeTree,
    orientation: u32,
    arcs: Vec<(usize, usize)>,
    demand: Vec<u32>,
}

impl TreeCandidate {
    /// Orients `shape`; bit `v-1` of `orientation` set means the edge between
    /// `v` and its parent points away from the root.
    pub fn new(shape: FreeTree, orientation: u32) -> Self {
        let arcs: Vec<(usize, usize)> = shape
            .edges()
            .into_iter()
            .map(|(p, c)| if orientation >> (c - 1) & 1 == 1 { (p, c) } else { (c, p) })
            .collect();
        let demand = plough_demand(shape.order(), &arcs).expect("oriented free tree is a tree");
        Self { shape, orientation, arcs, demand }
    }

    /// The one-vertex tree with no demand.
    pub fn single_vertex() -> Self {
        Self::new(FreeTree { levels: vec![0] }, 0)
    }

    pub fn order(&self) -> usize {
        self.shape.order()
    }

    pub fn shape(&self) -> &FreeTree {
        &self.shape
    }

    pub fn arcs(&self) -> &[(usize, usize)] {
        &self.arcs
    }

    pub fn demand(&self) -> &[u32] {
        &self.demand
    }

    /// `Σ L(v)`, the number of ploughs needed to clear the tree.
    pub fn total_demand(&self) -> u32 {
        self.demand.iter().sum()
    }

    /// Parent of each vertex when rooted at vertex 0.
    pub fn parents(&self) -> Vec<usize> {
        self.shape.parents()
    }

    pub fn code(&self) -> String {
        let signs: String = (1..self.order())
            .map(|v| if self.orientation >> (v - 1) & 1 == 1 { '+' } else { '-' })
            .collect();
        format!("{}:{}", self.shape.code(), signs)
    }

    /// Canonical form under directed isomorphism.
    pub fn canonical_form(&self) -> String {
        canonical_form(self.order(), &self.arcs, true)
    }
}

pub fn parse_tree_code(code: &str) -> Result<TreeCandidate, TreeError> {
    let (levels, signs) = code.split_once(':').unwrap_or((code, ""));
    let levels: Vec<u8> = levels
        .split_whitespace()
        .map(|t| t.parse().map_err(|_| TreeError::BadCode(format!("bad level `{t}`"))))
        .collect::<Result<_, _>>()?;
    let shape = FreeTree::from_levels(levels)?;
    let signs = signs.trim();
    if signs.chars().count() != shape.order() - 1 {
        return Err(TreeError::BadCode(format!("expected {} orientation signs", shape.order() - 1)));
    }
    let mut orientation = 0u32;
    for (i, c) in signs.chars().enumerate() {
        match c {
            '+' => orientation |= 1 << i,
            '-' => {}
            _ => return Err(TreeError::BadCode(format!("bad orientation sign `{c}`"))),
        }
    }
    Ok(TreeCandidate::new(shape, orientation))
}

/// `L(v) = max(0, outdeg(v) − indeg(v))` for a directed tree on `order`
/// vertices.
pub fn plough_demand(order: usize, arcs: &[(usize, usize)]) -> Result<Vec<u32>, TreeError> {
    if order == 0 || arcs.len() + 1 != order {
        return Err(TreeError::NotATree(order));
    }
    let mut sets = DisjointSets::new(order);
    let mut balance = vec![0i64; order];
    for &(u, v) in arcs {
        if u >= order || v >= order || !sets.union(u, v) {
            return Err(TreeError::NotATree(order));
        }
        balance[u] += 1;
        balance[v] -= 1;
    }
    Ok(balance.into_iter().map(|b| b.max(0) as u32).collect())
}

fn next_rooted_tree(pred: &[u8], p: Option<usize>) -> Option<Vec<u8>> {
    let p = match p {
        Some(p) => p,
        None => {
            let mut p = pred.len() - 1;
            while pred[p] == 1 {
                p -= 1;
            }
            p
        }
    };
    if p == 0 {
        return None;
    }
    let mut q = p - 1;
    while pred[q] != pred[p] - 1 {
        q -= 1;
    }
    let mut result = pred.to_vec();
    for i in p..result.len() {
        result[i] = result[i - p + q];
    }
    Some(result)
}

/// Splits at the second child of the root: the first subtree (re-leveled) and
/// the rest with the root.
fn split_tree(layout: &[u8]) -> (Vec<u8>, Vec<u8>) {
    let m = layout
        .iter()
        .enumerate()
        .skip(2)
        .find(|&(_, &l)| l == 1)
        .map_or(layout.len(), |(i, _)| i);
    let left = layout[1..m].iter().map(|l| l - 1).collect();
    let mut rest = vec![0];
    rest.extend_from_slice(&layout[m..]);
    (left, rest)
}

fn next_tree(candidate: Vec<u8>) -> Option<Vec<u8>> {
    let (left, rest) = split_tree(&candidate);
    let left_height = *left.iter().max().unwrap();
    let rest_height = *rest.iter().max().unwrap();
    let mut valid = rest_height >= left_height;
    if valid && rest_height == left_height {
        if left.len() > rest.len() || (left.len() == rest.len() && left > rest) {
            valid = false;
        }
    }
    if valid {
        return Some(candidate);
    }
    let p = left.len();
    let mut next = next_rooted_tree(&candidate, Some(p))?;
    if candidate[p] > 2 {
        let (new_left, _) = split_tree(&next);
        let h = *new_left.iter().max().unwrap() as usize;
        let len = next.len();
        for (i, slot) in next[len - (h + 1)..].iter_mut().enumerate() {
            *slot = (i + 1) as u8;
        }
    }
    Some(next)
}

/// Every free tree of the given order exactly once, in lexicographic order of
/// level sequences.
pub fn enumerate_free_trees(order: usize) -> Result<impl Iterator<Item = FreeTree>, TreeError> {
    if order == 0 || order > MAX_ORDER {
        return Err(TreeError::OrderOutOfRange(order));
    }
    let mut out = Vec::new();
    if order == 1 {
        out.push(vec![0]);
    } else {
        let mut layout: Option<Vec<u8>> = Some(
            (0..=(order / 2) as u8).chain(1..((order + 1) / 2) as u8).collect(),
        );
        while let Some(l) = layout {
            layout = next_tree(l);
            if let Some(l) = &layout {
                out.push(l.clone());
                layout = next_rooted_tree(l, None);
            }
        }
    }
    out.sort();
    Ok(out.into_iter().map(|levels| FreeTree { levels }))
}

/// All `2^(η−1)` orientations, or one per directed isomorphism class when
/// `dedupe` is set (the first in orientation order is kept).
pub fn orient_tree(tree: &FreeTree, dedupe: bool) -> impl Iterator<Item = TreeCandidate> + '_ {
    let mut seen = HashSet::new();
    (0..1u32 << (tree.order() - 1)).filter_map(move |mask| {
        let cand = TreeCandidate::new(tree.clone(), mask);
        if dedupe && !seen.insert(cand.canonical_form()) {
            None
        } else {
            Some(cand)
        }
    })
}

/// Candidates of every order in `max(f_count, 1)..=max_order`, orders
/// ascending, optionally restricted to `Σ L ≤ budget`. Empty when
/// `f_count == 0`.
pub fn candidate_stream(
    f_count: usize,
    max_order: usize,
    budget: Option<u32>,
    dedupe: bool,
) -> impl Iterator<Item = TreeCandidate> {
    let orders = if f_count == 0 { 1..1 } else { f_count..max_order.min(MAX_ORDER) + 1 };
    orders.flat_map(move |order| {
        let trees: Vec<FreeTree> = enumerate_free_trees(order).expect("order in range").collect();
        trees.into_iter().flat_map(move |t| {
            let cands: Vec<TreeCandidate> = orient_tree(&t, dedupe)
                .filter(|c| budget.map_or(true, |b| c.total_demand() <= b))
                .collect();
            cands
        })
    })
}

/// Canonical string of a (directed) tree: AHU encoding rooted at each center,
/// lexicographically smallest. With `directed`, each child is tagged by the
/// direction of its edge.
pub fn canonical_form(order: usize, arcs: &[(usize, usize)], directed: bool) -> String {
    let mut adj: Vec<Vec<(usize, char)>> = vec![Vec::new(); order];
    for &(u, v) in arcs {
        let (out, inn) = if directed { ('+', '-') } else { ('.', '.') };
        adj[u].push((v, out));
        adj[v].push((u, inn));
    }
    centers(&adj)
        .into_iter()
        .map(|c| encode(&adj, c, usize::MAX))
        .min()
        .unwrap_or_default()
}

fn encode(adj: &[Vec<(usize, char)>], v: usize, parent: usize) -> String {
    let mut parts: Vec<String> = adj[v]
        .iter()
        .filter(|&&(w, _)| w != parent)
        .map(|&(w, tag)| format!("{tag}{}", encode(adj, w, v)))
        .collect();
    parts.sort();
    format!("({})", parts.concat())
}

fn centers(adj: &[Vec<(usize, char)>]) -> Vec<usize> {
    let n = adj.len();
    if n <= 2 {
        return (0..n).collect();
    }
    let mut degree: Vec<usize> = adj.iter().map(Vec::len).collect();
    let mut leaves: Vec<usize> = (0..n).filter(|&v| degree[v] <= 1).collect();
    let mut remaining = n;
    while remaining > 2 {
        remaining -= leaves.len();
        let mut next = Vec::new();
        for &leaf in &leaves {
            for &(w, _) in &adj[leaf] {
                degree[w] -= 1;
                if degree[w] == 1 {
                    next.push(w);
                }
            }
        }
        leaves = next;
    }
    leaves
}
