//! The Set Cover gadget and translations between covers and plough walks.
//!
//! Vertex layout: for each item `i` in order, `u[i]` followed, for each set
//! `j` containing `i` in increasing order, by `u[i,j]`, `u'[i,j]`, `v[i,j]`,
//! `v'[i,j]`; then `z` and `z[1]..z[k]`. Items and sets are numbered from 1.
//! Each vertical path is `u[i,j] → u[i] → u'[i,j] → v[i,j] → v'[i,j]`; the
//! horizontal path of set `t` runs `z → v[x1,t] → v[x2,t] → …` over the items
//! of `t`; each `z[l]` has one arc into `z`. Every vertex is a facility and
//! every source holds one plough.

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

use crate::digraph::{parse_instance, serialize_instance, verify_st_solution, Instance, ParseError, SolutionDefect, SolutionWalks, Walk};
use crate::util::any_combination;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GadgetError {
    #[error("set {0} is empty")]
    EmptySet(usize),
    #[error("set {0} must list distinct items from 1..={1} in ascending order")]
    BadSet(usize, usize),
    #[error("item {0} belongs to no set")]
    Uncovered(usize),
    #[error("budget {k} must lie in 1..={m}")]
    BadBudget { k: usize, m: usize },
    #[error("no items")]
    NoItems,
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("{0} is not a set cover of size {1}")]
    NotACover(String, usize),
    #[error("walks are not a solution on the gadget: {0}")]
    NotASolution(SolutionDefect),
    #[error("walks do not have the shape every gadget solution has")]
    Malformed,
    #[error("set cover brute force limited to {0} sets")]
    TooManySets(usize),
    #[error("n must be odd and at least 3, got {0}")]
    BadOrder(usize),
    #[error("gadget file: {0}")]
    File(String),
    #[error(transparent)]
    Instance(#[from] ParseError),
}

/// `⟨U, S, k⟩` with `U = {1..n_items}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SetCoverInstance {
    n_items: usize,
    sets: Vec<Vec<usize>>,
    k: usize,
}

impl SetCoverInstance {
    pub fn new(n_items: usize, sets: Vec<Vec<usize>>, k: usize) -> Result<Self, GadgetError> {
        if n_items == 0 {
            return Err(GadgetError::NoItems);
        }
        for (t, s) in sets.iter().enumerate() {
            if s.is_empty() {
                return Err(GadgetError::EmptySet(t + 1));
            }
            if s.iter().any(|&x| x == 0 || x > n_items) || s.windows(2).any(|w| w[0] >= w[1]) {
                return Err(GadgetError::BadSet(t + 1, n_items));
            }
        }
        if let Some(i) = (1..=n_items).find(|i| !sets.iter().any(|s| s.contains(i))) {
            return Err(GadgetError::Uncovered(i));
        }
        if k == 0 || k > sets.len() {
            return Err(GadgetError::BadBudget { k, m: sets.len() });
        }
        Ok(Self { n_items, sets, k })
    }

    pub fn n_items(&self) -> usize {
        self.n_items
    }

    pub fn sets(&self) -> &[Vec<usize>] {
        &self.sets
    }

    pub fn m(&self) -> usize {
        self.sets.len()
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn with_budget(&self, k: usize) -> Result<Self, GadgetError> {
        Self::new(self.n_items, self.sets.clone(), k)
    }

    /// Sets containing item `i`, ascending.
    pub fn sets_of(&self, i: usize) -> Vec<usize> {
        (1..=self.m()).filter(|&t| self.sets[t - 1].contains(&i)).collect()
    }

    /// Whether the 1-based set indices cover every item.
    pub fn is_cover(&self, cover: &[usize]) -> bool {
        cover.iter().all(|&t| t >= 1 && t <= self.m())
            && (1..=self.n_items).all(|i| cover.iter().any(|&t| self.sets[t - 1].contains(&i)))
    }

    pub fn total_set_size(&self) -> usize {
        self.sets.iter().map(Vec::len).sum()
    }
}

impl fmt::Display for SetCoverInstance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "sc {} {} {}", self.n_items, self.m(), self.k)?;
        for s in &self.sets {
            let items: Vec<String> = s.iter().map(usize::to_string).collect();
            writeln!(f, "s {}", items.join(" "))?;
        }
        Ok(())
    }
}

/// Reads `sc <n> <m> <k>` followed by `m` lines `s <item> <item> …`.
pub fn parse_set_cover(text: &str) -> Result<SetCoverInstance, GadgetError> {
    let mut header: Option<(usize, usize, usize)> = None;
    let mut sets = Vec::new();
    let mut last = 1;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        last = line;
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let toks: Vec<&str> = body.split_whitespace().collect();
        let nums = |toks: &[&str]| -> Result<Vec<usize>, GadgetError> {
            toks.iter()
                .map(|t| t.parse().map_err(|_| GadgetError::Parse { line, message: format!("bad number `{t}`") }))
                .collect()
        };
        match (toks[0], header) {
            ("sc", None) if toks.len() == 4 => {
                let v = nums(&toks[1..])?;
                header = Some((v[0], v[1], v[2]));
            }
            ("s", Some(_)) => sets.push(nums(&toks[1..])?),
            _ => return Err(GadgetError::Parse { line, message: format!("unexpected line `{body}`") }),
        }
    }
    let (n, m, k) = header.ok_or(GadgetError::Parse { line: 1, message: "missing `sc <n> <m> <k>` header".into() })?;
    if sets.len() != m {
        return Err(GadgetError::Parse { line: last, message: format!("expected {m} sets, found {}", sets.len()) });
    }
    SetCoverInstance::new(n, sets, k)
}

/// Some cover of exactly `k` sets, by brute force over `k`-subsets.
pub fn solve_set_cover_exact(sc: &SetCoverInstance) -> Result<Option<Vec<usize>>, GadgetError> {
    if sc.m() > 20 {
        return Err(GadgetError::TooManySets(20));
    }
    let mut found = None;
    any_combination(sc.m(), sc.k, |idx| {
        let cover: Vec<usize> = idx.iter().map(|&t| t + 1).collect();
        if sc.is_cover(&cover) {
            found = Some(cover);
            true
        } else {
            false
        }
    });
    Ok(found)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum VertexName {
    /// `u[i]`
    U(usize),
    /// `u[i,j]`
    UIn(usize, usize),
    /// `u'[i,j]`
    UOut(usize, usize),
    /// `v[i,j]`
    V(usize, usize),
    /// `v'[i,j]`
    VOut(usize, usize),
    Z,
    /// `z[l]`
    ZSource(usize),
}

impl VertexName {
    /// The item whose component holds this vertex.
    pub fn item(self) -> Option<usize> {
        match self {
            VertexName::U(i) | VertexName::UIn(i, _) | VertexName::UOut(i, _) | VertexName::V(i, _) | VertexName::VOut(i, _) => Some(i),
            _ => None,
        }
    }
}

impl fmt::Display for VertexName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VertexName::U(i) => write!(f, "u[{i}]"),
            VertexName::UIn(i, j) => write!(f, "u[{i},{j}]"),
            VertexName::UOut(i, j) => write!(f, "u'[{i},{j}]"),
            VertexName::V(i, j) => write!(f, "v[{i},{j}]"),
            VertexName::VOut(i, j) => write!(f, "v'[{i},{j}]"),
            VertexName::Z => write!(f, "z"),
            VertexName::ZSource(l) => write!(f, "z[{l}]"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct GadgetLayout {
    sc: SetCoverInstance,
    instance: Instance,
    names: Vec<VertexName>,
    ids: HashMap<VertexName, usize>,
}

impl GadgetLayout {
    pub fn set_cover(&self) -> &SetCoverInstance {
        &self.sc
    }

    pub fn instance(&self) -> &Instance {
        &self.instance
    }

    pub fn name(&self, v: usize) -> VertexName {
        self.names[v]
    }

    pub fn id(&self, name: VertexName) -> Option<usize> {
        self.ids.get(&name).copied()
    }

    fn at(&self, name: VertexName) -> usize {
        self.ids[&name]
    }

    /// `u[i,j] → u[i] → u'[i,j] → v[i,j] → v'[i,j]`.
    pub fn vertical(&self, i: usize, j: usize) -> Walk {
        use VertexName::*;
        Walk::new(vec![self.at(UIn(i, j)), self.at(U(i)), self.at(UOut(i, j)), self.at(V(i, j)), self.at(VOut(i, j))]).unwrap()
    }

    /// `z → v[x1,t] → … → v[xℓ,t]`.
    pub fn horizontal(&self, t: usize) -> Walk {
        let mut vs = vec![self.at(VertexName::Z)];
        vs.extend(self.sc.sets[t - 1].iter().map(|&x| self.at(VertexName::V(x, t))));
        Walk::new(vs).unwrap()
    }

    /// `(z[l], z) ∘ R_t`.
    pub fn z_walk(&self, l: usize, t: usize) -> Walk {
        let mut vs = vec![self.at(VertexName::ZSource(l))];
        vs.extend_from_slice(self.horizontal(t).vertices());
        Walk::new(vs).unwrap()
    }
}

pub fn build_gadget(sc: &SetCoverInstance) -> GadgetLayout {
    use VertexName::*;
    let mut names = Vec::new();
    for i in 1..=sc.n_items {
        names.push(U(i));
        for j in sc.sets_of(i) {
            names.extend([UIn(i, j), UOut(i, j), V(i, j), VOut(i, j)]);
        }
    }
    names.push(Z);
    names.extend((1..=sc.k).map(ZSource));
    let ids: HashMap<VertexName, usize> = names.iter().enumerate().map(|(v, &nm)| (nm, v)).collect();
    let mut arcs = Vec::new();
    for i in 1..=sc.n_items {
        for j in sc.sets_of(i) {
            let p = [ids[&UIn(i, j)], ids[&U(i)], ids[&UOut(i, j)], ids[&V(i, j)], ids[&VOut(i, j)]];
            arcs.extend(p.windows(2).map(|w| (w[0], w[1])));
        }
    }
    for (t0, s) in sc.sets.iter().enumerate() {
        let mut prev = ids[&Z];
        for &x in s {
            let v = ids[&V(x, t0 + 1)];
            arcs.push((prev, v));
            prev = v;
        }
    }
    for l in 1..=sc.k {
        arcs.push((ids[&ZSource(l)], ids[&Z]));
    }
    let n = names.len();
    let mut has_in = vec![false; n];
    for &(_, v) in &arcs {
        has_in[v] = true;
    }
    let ploughs = has_in.iter().map(|&h| u32::from(!h)).collect();
    let instance = Instance::new(n, arcs, vec![true; n], ploughs).expect("gadget is a simple digraph");
    GadgetLayout { sc: sc.clone(), instance, names, ids }
}

/// Every vertical path, then `(z[t], z) ∘ R_{ξ(t)}` for the cover sets in
/// increasing order.
pub fn cover_to_walks(g: &GadgetLayout, cover: &[usize]) -> Result<SolutionWalks, GadgetError> {
    let mut xi = cover.to_vec();
    xi.sort_unstable();
    xi.dedup();
    if xi.len() != cover.len() || cover.len() != g.sc.k || !g.sc.is_cover(&xi) {
        return Err(GadgetError::NotACover(format!("{cover:?}"), g.sc.k));
    }
    let mut walks = Vec::new();
    for i in 1..=g.sc.n_items {
        for j in g.sc.sets_of(i) {
            walks.push(g.vertical(i, j));
        }
    }
    for (l, &t) in xi.iter().enumerate() {
        walks.push(g.z_walk(l + 1, t));
    }
    Ok(SolutionWalks::new(walks))
}

/// Rewrites a solution so that every plough from `u[i,j]` follows its own
/// vertical path and every plough from `z[l]` follows `(z[l], z)` and then a
/// whole horizontal path.
///
/// First, a plough from `u[i,j]` that leaves its component along a
/// horizontal path at `v[i,j']` trades tails with the plough that ends with
/// `v[i,j'] → v'[i,j']`; the arcs used stay the same. Within a component the
/// ploughs then visit the `u'` vertices bijectively, so extending each to a
/// full vertical path and handing each its own path keeps the arc union.
/// Finally each plough from `z[l]` is extended to the end of the horizontal
/// path it entered, or of the first entered one if it stopped at `z`; the
/// arcs it drops into `v'` vertices are already cleared by vertical paths.
pub fn canonicalize_solution(g: &GadgetLayout, sol: &SolutionWalks) -> Result<SolutionWalks, GadgetError> {
    use VertexName::*;
    let inst = &g.instance;
    verify_st_solution(inst, sol).map_err(GadgetError::NotASolution)?;
    let mut walks: Vec<Vec<usize>> = sol.walks.iter().map(|w| w.vertices().to_vec()).collect();

    let leaving = |walks: &[Vec<usize>]| -> Option<(usize, usize)> {
        walks.iter().enumerate().find_map(|(w, vs)| {
            let i = match g.names[vs[0]] {
                UIn(i, _) => i,
                _ => return None,
            };
            vs.iter().position(|&v| g.names[v].item() != Some(i)).map(|p| (w, p))
        })
    };
    let mut budget = walks.len() * walks.len() + 1;
    while let Some((w, p)) = leaving(&walks) {
        budget = budget.checked_sub(1).ok_or(GadgetError::Malformed)?;
        let exit = walks[w][p - 1];
        let (i, j) = match g.names[exit] {
            V(i, j) => (i, j),
            _ => return Err(GadgetError::Malformed),
        };
        let sink = g.at(VOut(i, j));
        let other = (0..walks.len())
            .find(|&o| o != w && walks[o].len() >= 2 && walks[o][walks[o].len() - 2..] == [exit, sink])
            .ok_or(GadgetError::Malformed)?;
        let tail: Vec<usize> = walks[w].split_off(p);
        walks[w].push(sink);
        walks[other].pop();
        walks[other].extend(tail);
    }

    for i in 1..=g.sc.n_items {
        let js = g.sc.sets_of(i);
        let mut reached = Vec::new();
        for &j in &js {
            let w = walks.iter().find(|vs| vs[0] == g.at(UIn(i, j))).ok_or(GadgetError::Malformed)?;
            match w.get(2).map(|&v| g.names[v]) {
                Some(UOut(_, jp)) => reached.push(jp),
                _ => return Err(GadgetError::Malformed),
            }
        }
        reached.sort_unstable();
        if reached != js {
            return Err(GadgetError::Malformed);
        }
        for &j in &js {
            let pos = walks.iter().position(|vs| vs[0] == g.at(UIn(i, j))).unwrap();
            walks[pos] = g.vertical(i, j).into_vertices();
        }
    }

    let entered = |vs: &[usize]| -> Option<usize> {
        match vs.get(2).map(|&v| g.names[v]) {
            Some(V(_, t)) => Some(t),
            _ => None,
        }
    };
    let fallback = walks
        .iter()
        .filter(|vs| matches!(g.names[vs[0]], ZSource(_)))
        .find_map(|vs| entered(vs))
        .unwrap_or(1);
    for vs in walks.iter_mut() {
        if let ZSource(l) = g.names[vs[0]] {
            if vs.len() < 2 {
                return Err(GadgetError::Malformed);
            }
            let t = entered(vs).unwrap_or(fallback);
            *vs = g.z_walk(l, t).into_vertices();
        }
    }

    let out = SolutionWalks::new(walks.into_iter().map(|v| Walk::new(v).unwrap()).collect());
    verify_st_solution(inst, &out).map_err(|_| GadgetError::Malformed)?;
    Ok(out)
}

/// The horizontal paths used by the canonical form of a solution; a cover of
/// at most `k` sets.
pub fn walks_to_cover(g: &GadgetLayout, sol: &SolutionWalks) -> Result<Vec<usize>, GadgetError> {
    let canon = canonicalize_solution(g, sol)?;
    let mut cover: Vec<usize> = canon
        .walks
        .iter()
        .filter(|w| matches!(g.names[w.start()], VertexName::ZSource(_)))
        .filter_map(|w| match g.names[w.vertices()[2]] {
            VertexName::V(_, t) => Some(t),
            _ => None,
        })
        .collect();
    cover.sort_unstable();
    cover.dedup();
    debug_assert!(g.sc.is_cover(&cover));
    Ok(cover)
}

/// Instance text followed by a comment block recording the set system and
/// the name of every vertex.
pub fn serialize_gadget(g: &GadgetLayout) -> String {
    let mut out = serialize_instance(&g.instance);
    out.push_str(&format!("# gadget sc {} {} {}\n", g.sc.n_items, g.sc.m(), g.sc.k));
    for s in &g.sc.sets {
        let items: Vec<String> = s.iter().map(usize::to_string).collect();
        out.push_str(&format!("# set {}\n", items.join(" ")));
    }
    for (v, nm) in g.names.iter().enumerate() {
        out.push_str(&format!("# name {v} {nm}\n"));
    }
    out
}

/// Rebuilds a layout from [`serialize_gadget`] output and checks that the
/// instance matches the recorded set system.
pub fn parse_gadget(text: &str) -> Result<GadgetLayout, GadgetError> {
    let inst = parse_instance(text)?;
    let mut header = None;
    let mut sets = Vec::new();
    for line in text.lines() {
        let Some(rest) = line.trim().strip_prefix('#') else { continue };
        let toks: Vec<&str> = rest.split_whitespace().collect();
        let nums = |t: &[&str]| -> Result<Vec<usize>, GadgetError> {
            t.iter().map(|x| x.parse().map_err(|_| GadgetError::File(format!("bad number `{x}`")))).collect()
        };
        match toks.as_slice() {
            ["gadget", "sc", rest @ ..] if rest.len() == 3 => {
                let v = nums(rest)?;
                header = Some((v[0], v[2]));
            }
            ["set", rest @ ..] => sets.push(nums(rest)?),
            _ => {}
        }
    }
    let (n, k) = header.ok_or_else(|| GadgetError::File("missing `# gadget sc` comment".into()))?;
    let sc = SetCoverInstance::new(n, sets, k)?;
    let g = build_gadget(&sc);
    if g.instance != inst {
        return Err(GadgetError::File("instance does not match the recorded set system".into()));
    }
    Ok(g)
}

/// The zigzag `v0 ← v1 → v2 ← v3 → …` on `n` vertices: every odd vertex is a
/// source with two out-arcs and two ploughs, and the two ends are the only
/// facilities. Connecting them needs all `n − 1` arcs, one plough each.
pub fn gen_fig3(n: usize) -> Result<Instance, GadgetError> {
    if n < 3 || n % 2 == 0 {
        return Err(GadgetError::BadOrder(n));
    }
    let mut arcs = Vec::new();
    let mut ploughs = vec![0; n];
    for v in (1..n).step_by(2) {
        arcs.push((v, v - 1));
        arcs.push((v, v + 1));
        ploughs[v] = 2;
    }
    let mut facility = vec![false; n];
    facility[0] = true;
    facility[n - 1] = true;
    Ok(Instance::new(n, arcs, facility, ploughs).expect("zigzag is simple"))
}
