//! Instances, walks, transitive closure and the solution verifier.
//!
//! An [`Instance`] is a simple digraph on the dense vertex ids `0..n` together
//! with a facility flag and a plough count per vertex. Antiparallel arc pairs
//! are allowed, self-loops and repeated arcs are not.

use std::collections::VecDeque;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::util::DisjointSets;

pub type Vertex = usize;
pub type Arc = (Vertex, Vertex);

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InstanceError {
    #[error("arc ({0}, {1}) references a vertex outside 0..{2}")]
    VertexOutOfRange(Vertex, Vertex, usize),
    #[error("self-loop at vertex {0}")]
    SelfLoop(Vertex),
    #[error("duplicate arc ({0}, {1})")]
    DuplicateArc(Vertex, Vertex),
    #[error("vertex {vertex} holds {count} ploughs, more than n-1 = {limit}")]
    TooManyPloughs { vertex: Vertex, count: u32, limit: usize },
    #[error("expected {expected} per-vertex entries, got {found}")]
    LengthMismatch { expected: usize, found: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("malformed header, expected `st <n> <m>`")]
    MalformedHeader,
    #[error("malformed line: {0}")]
    MalformedLine(String),
    #[error("vertex line out of order: expected id {expected}, found {found}")]
    VertexOrder { expected: usize, found: usize },
    #[error("facility flag must be 0 or 1")]
    BadFacilityFlag,
    #[error("vertex id {0} out of range")]
    VertexOutOfRange(usize),
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate arc ({0}, {1})")]
    DuplicateArc(usize, usize),
    #[error("vertex {vertex} holds {count} ploughs, more than n-1")]
    TooManyPloughs { vertex: usize, count: u32 },
    #[error("expected {expected} {what} lines, found {found}")]
    CountMismatch { what: &'static str, expected: usize, found: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub kind: ParseErrorKind,
}

/// A vertex-weighted digraph `(V, A, F, B)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Instance {
    n: usize,
    arcs: Vec<Arc>,
    facility: Vec<bool>,
    ploughs: Vec<u32>,
    out_adj: Vec<Vec<Vertex>>,
    in_adj: Vec<Vec<Vertex>>,
}

impl Instance {
    pub fn new(
        n: usize,
        arcs: impl IntoIterator<Item = Arc>,
        facility: Vec<bool>,
        ploughs: Vec<u32>,
    ) -> Result<Self, InstanceError> {
        if facility.len() != n {
            return Err(InstanceError::LengthMismatch { expected: n, found: facility.len() });
        }
        if ploughs.len() != n {
            return Err(InstanceError::LengthMismatch { expected: n, found: ploughs.len() });
        }
        for (v, &count) in ploughs.iter().enumerate() {
            if count as usize > n.saturating_sub(1) {
                return Err(InstanceError::TooManyPloughs { vertex: v, count, limit: n.saturating_sub(1) });
            }
        }
        let mut arcs: Vec<Arc> = arcs.into_iter().collect();
        for &(u, v) in &arcs {
            if u >= n || v >= n {
                return Err(InstanceError::VertexOutOfRange(u, v, n));
            }
            if u == v {
                return Err(InstanceError::SelfLoop(u));
            }
        }
        arcs.sort_unstable();
        if let Some(w) = arcs.windows(2).find(|w| w[0] == w[1]) {
            return Err(InstanceError::DuplicateArc(w[0].0, w[0].1));
        }
        let mut out_adj = vec![Vec::new(); n];
        let mut in_adj = vec![Vec::new(); n];
        for &(u, v) in &arcs {
            out_adj[u].push(v);
            in_adj[v].push(u);
        }
        for list in in_adj.iter_mut() {
            list.sort_unstable();
        }
        Ok(Self { n, arcs, facility, ploughs, out_adj, in_adj })
    }

    /// A digraph with no facilities and no ploughs.
    pub fn bare(n: usize, arcs: impl IntoIterator<Item = Arc>) -> Result<Self, InstanceError> {
        Self::new(n, arcs, vec![false; n], vec![0; n])
    }

    pub fn with_facilities(&self, facility: Vec<bool>) -> Result<Self, InstanceError> {
        Self::new(self.n, self.arcs.iter().copied(), facility, self.ploughs.clone())
    }

    pub fn with_ploughs(&self, ploughs: Vec<u32>) -> Result<Self, InstanceError> {
        Self::new(self.n, self.arcs.iter().copied(), self.facility.clone(), ploughs)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Arcs in lexicographic order.
    pub fn arcs(&self) -> &[Arc] {
        &self.arcs
    }

    pub fn arc_count(&self) -> usize {
        self.arcs.len()
    }

    pub fn has_arc(&self, u: Vertex, v: Vertex) -> bool {
        u < self.n && self.out_adj[u].binary_search(&v).is_ok()
    }

    /// Position of `(u, v)` in [`Instance::arcs`].
    pub fn arc_index(&self, u: Vertex, v: Vertex) -> Option<usize> {
        self.arcs.binary_search(&(u, v)).ok()
    }

    pub fn out_neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.out_adj[v]
    }

    pub fn in_neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.in_adj[v]
    }

    pub fn is_facility(&self, v: Vertex) -> bool {
        self.facility[v]
    }

    pub fn facility_flags(&self) -> &[bool] {
        &self.facility
    }

    pub fn ploughs(&self, v: Vertex) -> u32 {
        self.ploughs[v]
    }

    pub fn plough_counts(&self) -> &[u32] {
        &self.ploughs
    }

    /// The facility set `F⁻¹(1)` in increasing order.
    pub fn facilities(&self) -> Vec<Vertex> {
        (0..self.n).filter(|&v| self.facility[v]).collect()
    }

    /// The snow team bases `B⁻¹(ℕ⁺)` in increasing order.
    pub fn bases(&self) -> Vec<Vertex> {
        (0..self.n).filter(|&v| self.ploughs[v] > 0).collect()
    }

    /// `k_B`, the total number of ploughs.
    pub fn total_ploughs(&self) -> u32 {
        self.ploughs.iter().sum()
    }

    /// Every base is a facility.
    pub fn is_restricted(&self) -> bool {
        (0..self.n).all(|v| self.ploughs[v] == 0 || self.facility[v])
    }

    /// Multiset of plough start vertices, in increasing order.
    pub fn plough_starts(&self) -> Vec<Vertex> {
        let mut starts = Vec::with_capacity(self.total_ploughs() as usize);
        for v in 0..self.n {
            starts.extend(std::iter::repeat(v).take(self.ploughs[v] as usize));
        }
        starts
    }
}

impl fmt::Display for Instance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&serialize_instance(self))
    }
}

impl FromStr for Instance {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_instance(s)
    }
}

fn content_lines(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            None
        } else {
            Some((i + 1, body.split_whitespace().collect()))
        }
    })
}

fn parse_num<T: FromStr>(tok: &str, line: usize) -> Result<T, ParseError> {
    tok.parse()
        .map_err(|_| ParseError { line, kind: ParseErrorKind::MalformedLine(format!("bad number `{tok}`")) })
}

/// Reads the line-oriented `st` instance format. `#` starts a comment.
pub fn parse_instance(text: &str) -> Result<Instance, ParseError> {
    let mut lines = content_lines(text);
    let (hline, header) = lines
        .next()
        .ok_or(ParseError { line: 1, kind: ParseErrorKind::MalformedHeader })?;
    if header.len() != 3 || header[0] != "st" {
        return Err(ParseError { line: hline, kind: ParseErrorKind::MalformedHeader });
    }
    let bad_header = |_| ParseError { line: hline, kind: ParseErrorKind::MalformedHeader };
    let n: usize = header[1].parse().map_err(bad_header)?;
    let m: usize = header[2].parse().map_err(bad_header)?;

    let mut facility = Vec::with_capacity(n);
    let mut ploughs = Vec::with_capacity(n);
    let mut arcs: Vec<Arc> = Vec::with_capacity(m);
    let mut seen = std::collections::HashSet::new();
    let mut last_line = hline;
    for (line, toks) in lines {
        last_line = line;
        match toks[0] {
            "v" => {
                if toks.len() != 4 {
                    return Err(ParseError { line, kind: ParseErrorKind::MalformedLine("expected `v <id> <F> <B>`".into()) });
                }
                if !arcs.is_empty() {
                    return Err(ParseError { line, kind: ParseErrorKind::MalformedLine("vertex line after arc lines".into()) });
                }
                let id: usize = parse_num(toks[1], line)?;
                if id >= n {
                    return Err(ParseError { line, kind: ParseErrorKind::VertexOutOfRange(id) });
                }
                if id != facility.len() {
                    return Err(ParseError { line, kind: ParseErrorKind::VertexOrder { expected: facility.len(), found: id } });
                }
                let flag = match toks[2] {
                    "0" => false,
                    "1" => true,
                    _ => return Err(ParseError { line, kind: ParseErrorKind::BadFacilityFlag }),
                };
                let count: u32 = parse_num(toks[3], line)?;
                if count as usize >= n.max(1) {
                    return Err(ParseError { line, kind: ParseErrorKind::TooManyPloughs { vertex: id, count } });
                }
                facility.push(flag);
                ploughs.push(count);
            }
            "a" => {
                if toks.len() != 3 {
                    return Err(ParseError { line, kind: ParseErrorKind::MalformedLine("expected `a <u> <v>`".into()) });
                }
                if facility.len() != n {
                    return Err(ParseError {
                        line,
                        kind: ParseErrorKind::CountMismatch { what: "vertex", expected: n, found: facility.len() },
                    });
                }
                let u: usize = parse_num(toks[1], line)?;
                let v: usize = parse_num(toks[2], line)?;
                for x in [u, v] {
                    if x >= n {
                        return Err(ParseError { line, kind: ParseErrorKind::VertexOutOfRange(x) });
                    }
                }
                if u == v {
                    return Err(ParseError { line, kind: ParseErrorKind::SelfLoop(u) });
                }
                if !seen.insert((u, v)) {
                    return Err(ParseError { line, kind: ParseErrorKind::DuplicateArc(u, v) });
                }
                arcs.push((u, v));
            }
            other => {
                return Err(ParseError { line, kind: ParseErrorKind::MalformedLine(format!("unknown record `{other}`")) })
            }
        }
    }
    if facility.len() != n {
        return Err(ParseError {
            line: last_line,
            kind: ParseErrorKind::CountMismatch { what: "vertex", expected: n, found: facility.len() },
        });
    }
    if arcs.len() != m {
        return Err(ParseError {
            line: last_line,
            kind: ParseErrorKind::CountMismatch { what: "arc", expected: m, found: arcs.len() },
        });
    }
    Instance::new(n, arcs, facility, ploughs)
        .map_err(|e| ParseError { line: last_line, kind: ParseErrorKind::MalformedLine(e.to_string()) })
}

/// Canonical text form: header, vertex lines in id order, arcs in
/// lexicographic order.
pub fn serialize_instance(inst: &Instance) -> String {
    let mut out = format!("st {} {}\n", inst.n, inst.arcs.len());
    for v in 0..inst.n {
        out.push_str(&format!("v {} {} {}\n", v, u8::from(inst.facility[v]), inst.ploughs[v]));
    }
    for &(u, v) in &inst.arcs {
        out.push_str(&format!("a {u} {v}\n"));
    }
    out
}

/// `TC(D)`: an arc `(u, v)`, `u != v`, for every nonempty directed path from
/// `u` to `v`. Facilities and plough counts are copied unchanged.
pub fn transitive_closure(inst: &Instance) -> Instance {
    let n = inst.n;
    let mut arcs = Vec::new();
    let mut seen = vec![usize::MAX; n];
    let mut queue = VecDeque::new();
    for s in 0..n {
        queue.clear();
        for &v in inst.out_neighbors(s) {
            if seen[v] != s {
                seen[v] = s;
                queue.push_back(v);
            }
        }
        while let Some(x) = queue.pop_front() {
            if x != s {
                arcs.push((s, x));
            }
            for &y in inst.out_neighbors(x) {
                if seen[y] != s {
                    seen[y] = s;
                    queue.push_back(y);
                }
            }
        }
    }
    Instance::new(n, arcs, inst.facility.clone(), inst.ploughs.clone())
        .expect("closure of a valid instance is valid")
}

pub fn is_transitively_closed(inst: &Instance) -> bool {
    transitive_closure(inst).arcs == inst.arcs
}

/// Vertices of in-degree zero.
pub fn sources(inst: &Instance) -> Vec<Vertex> {
    (0..inst.n).filter(|&v| inst.in_adj[v].is_empty()).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("({0}, {1}) is not an arc of the instance")]
pub struct NotAnArc(pub Vertex, pub Vertex);

/// Whether all facilities lie in one component of the underlying graph of the
/// cleared arcs. Holds vacuously for at most one facility.
pub fn facilities_connected(inst: &Instance, cleared: &[Arc]) -> Result<bool, NotAnArc> {
    if let Some(&(u, v)) = cleared.iter().find(|&&(u, v)| !inst.has_arc(u, v)) {
        return Err(NotAnArc(u, v));
    }
    Ok(facilities_connected_unchecked(inst.n, &inst.facility, cleared))
}

pub(crate) fn facilities_connected_unchecked(n: usize, facility: &[bool], cleared: &[Arc]) -> bool {
    let facs: Vec<Vertex> = (0..n).filter(|&v| facility[v]).collect();
    if facs.len() <= 1 {
        return true;
    }
    let mut touched = vec![false; n];
    let mut sets = DisjointSets::new(n);
    for &(u, v) in cleared {
        touched[u] = true;
        touched[v] = true;
        sets.union(u, v);
    }
    if facs.iter().any(|&f| !touched[f]) {
        return false;
    }
    let root = sets.find(facs[0]);
    facs.iter().all(|&f| sets.find(f) == root)
}

/// A plough trajectory. Never empty; a single vertex is a zero-length walk.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Walk(Vec<Vertex>);

impl Walk {
    pub fn new(vertices: Vec<Vertex>) -> Option<Self> {
        if vertices.is_empty() {
            None
        } else {
            Some(Self(vertices))
        }
    }

    pub fn at(v: Vertex) -> Self {
        Self(vec![v])
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.0
    }

    pub fn into_vertices(self) -> Vec<Vertex> {
        self.0
    }

    /// Number of arcs.
    pub fn len(&self) -> usize {
        self.0.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.0.len() == 1
    }

    pub fn start(&self) -> Vertex {
        self.0[0]
    }

    pub fn end(&self) -> Vertex {
        *self.0.last().unwrap()
    }

    pub fn arcs(&self) -> impl Iterator<Item = Arc> + '_ {
        self.0.windows(2).map(|w| (w[0], w[1]))
    }

    /// `self ∘ other`; `other` must start where `self` ends.
    pub fn concat(&self, other: &Walk) -> Option<Walk> {
        if self.end() != other.start() {
            return None;
        }
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0[1..]);
        Some(Walk(v))
    }
}

impl fmt::Display for Walk {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

pub fn walk_is_valid(inst: &Instance, w: &Walk) -> bool {
    w.0.iter().all(|&v| v < inst.n) && w.arcs().all(|(u, v)| inst.has_arc(u, v))
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SolutionWalks {
    pub walks: Vec<Walk>,
}

impl SolutionWalks {
    pub fn new(walks: Vec<Walk>) -> Self {
        Self { walks }
    }

    /// Union of traversed arcs, sorted and deduplicated.
    pub fn arc_union(&self) -> Vec<Arc> {
        let mut arcs: Vec<Arc> = self.walks.iter().flat_map(|w| w.arcs()).collect();
        arcs.sort_unstable();
        arcs.dedup();
        arcs
    }

    pub fn total_length(&self) -> usize {
        self.walks.iter().map(Walk::len).sum()
    }

    pub fn starts(&self) -> Vec<Vertex> {
        let mut s: Vec<Vertex> = self.walks.iter().map(Walk::start).collect();
        s.sort_unstable();
        s
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {message}")]
pub struct WalksParseError {
    pub line: usize,
    pub message: String,
}

/// One walk per line as space-separated vertex ids.
pub fn parse_walks(text: &str) -> Result<SolutionWalks, WalksParseError> {
    let mut walks = Vec::new();
    for (line, toks) in content_lines(text) {
        let mut vs = Vec::with_capacity(toks.len());
        for t in toks {
            vs.push(t.parse().map_err(|_| WalksParseError { line, message: format!("bad vertex id `{t}`") })?);
        }
        walks.push(Walk(vs));
    }
    Ok(SolutionWalks { walks })
}

pub fn serialize_walks(sol: &SolutionWalks) -> String {
    sol.walks.iter().map(|w| format!("{w}\n")).collect()
}

/// Why a set of walks is not a Snow Team solution.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolutionDefect {
    #[error("expected {expected} walks, found {found}")]
    WrongCount { expected: usize, found: usize },
    #[error("vertex {vertex}: {found} walks start here but it holds {expected} ploughs")]
    StartMismatch { vertex: Vertex, expected: u32, found: u32 },
    #[error("walk {index} is not a directed walk of the instance")]
    InvalidWalk { index: usize },
    #[error("facilities are not connected by the cleared arcs")]
    Disconnected,
}

/// Checks the walks against the Snow Team definition: `k_B` walks, `B(v)` of
/// them starting at each `v`, all valid, and the facilities connected in the
/// underlying graph of the union of traversed arcs.
pub fn verify_st_solution(inst: &Instance, sol: &SolutionWalks) -> Result<(), SolutionDefect> {
    let expected = inst.total_ploughs() as usize;
    if sol.walks.len() != expected {
        return Err(SolutionDefect::WrongCount { expected, found: sol.walks.len() });
    }
    for (index, w) in sol.walks.iter().enumerate() {
        if !walk_is_valid(inst, w) {
            return Err(SolutionDefect::InvalidWalk { index });
        }
    }
    let mut counts = vec![0u32; inst.n];
    for w in &sol.walks {
        counts[w.start()] += 1;
    }
    if let Some(v) = (0..inst.n).find(|&v| counts[v] != inst.ploughs[v]) {
        return Err(SolutionDefect::StartMismatch { vertex: v, expected: inst.ploughs[v], found: counts[v] });
    }
    if !facilities_connected_unchecked(inst.n, &inst.facility, &sol.arc_union()) {
        return Err(SolutionDefect::Disconnected);
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) const TOY1: &str = "st 3 2\nv 0 1 1\nv 1 0 0\nv 2 1 0\na 0 1\na 1 2\n";

    fn toy1() -> Instance {
        parse_instance(TOY1).unwrap()
    }

    fn walks(ws: &[&[usize]]) -> SolutionWalks {
        SolutionWalks::new(ws.iter().map(|w| Walk::new(w.to_vec()).unwrap()).collect())
    }

    #[test]
    fn parses_toy_instance() {
        let inst = toy1();
        assert_eq!(inst.n(), 3);
        assert_eq!(inst.arcs(), &[(0, 1), (1, 2)]);
        assert_eq!(inst.facilities(), vec![0, 2]);
        assert_eq!(inst.ploughs(0), 1);
        assert_eq!(inst.total_ploughs(), 1);
    }

    #[test]
    fn parse_ignores_comments_and_blank_lines() {
        let text = "# toy\n\nst 3 2 # header\nv 0 1 1\nv 1 0 0\n\nv 2 1 0\na 0 1 # first\na 1 2\n";
        assert_eq!(parse_instance(text).unwrap(), toy1());
    }

    #[test]
    fn parse_rejects_duplicate_arc() {
        let err = parse_instance(&format!("{}a 0 1\n", TOY1.replace("st 3 2", "st 3 3"))).unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::DuplicateArc(0, 1));
        assert_eq!(err.line, 7);
    }

    #[test]
    fn parse_rejects_self_loop() {
        let err = parse_instance("st 3 1\nv 0 1 1\nv 1 0 0\nv 2 1 0\na 2 2\n").unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::SelfLoop(2));
        assert_eq!(err.line, 5);
    }

    #[test]
    fn parse_rejects_bad_records() {
        let cases = [
            ("sx 3 2\n", ParseErrorKind::MalformedHeader),
            ("st 2 0\nv 0 1 2\nv 1 1 0\n", ParseErrorKind::TooManyPloughs { vertex: 0, count: 2 }),
            ("st 2 0\nv 1 1 0\nv 0 1 0\n", ParseErrorKind::VertexOrder { expected: 0, found: 1 }),
            ("st 2 1\nv 0 1 0\nv 1 1 0\na 0 5\n", ParseErrorKind::VertexOutOfRange(5)),
            ("st 2 0\nv 0 2 0\nv 1 1 0\n", ParseErrorKind::BadFacilityFlag),
        ];
        for (text, kind) in cases {
            assert_eq!(parse_instance(text).unwrap_err().kind, kind, "{text:?}");
        }
        assert!(matches!(
            parse_instance("st 2 1\nv 0 1 0\nv 1 1 0\n").unwrap_err().kind,
            ParseErrorKind::CountMismatch { what: "arc", .. }
        ));
    }

    #[test]
    fn serialize_round_trips() {
        let inst = toy1();
        assert_eq!(serialize_instance(&inst), TOY1);
        let single = Instance::new(1, [], vec![true], vec![0]).unwrap();
        assert_eq!(serialize_instance(&single), "st 1 0\nv 0 1 0\n");
        assert_eq!(parse_instance(&serialize_instance(&single)).unwrap(), single);
    }

    #[test]
    fn closure_of_toy_and_two_cycle() {
        let tc = transitive_closure(&toy1());
        assert_eq!(tc.arcs(), &[(0, 1), (0, 2), (1, 2)]);
        assert_eq!(tc.facility_flags(), toy1().facility_flags());
        let cyc = Instance::bare(2, [(0, 1), (1, 0)]).unwrap();
        assert_eq!(transitive_closure(&cyc).arcs(), &[(0, 1), (1, 0)]);
    }

    #[test]
    fn sources_of_small_graphs() {
        assert_eq!(sources(&toy1()), vec![0]);
        assert!(sources(&Instance::bare(2, [(0, 1), (1, 0)]).unwrap()).is_empty());
    }

    #[test]
    fn connectivity_checks() {
        let inst = toy1();
        assert_eq!(facilities_connected(&inst, &[(0, 1), (1, 2)]), Ok(true));
        assert_eq!(facilities_connected(&inst, &[(0, 1)]), Ok(false));
        assert_eq!(facilities_connected(&inst, &[(0, 2)]), Err(NotAnArc(0, 2)));
        let one = inst.with_facilities(vec![true, false, false]).unwrap();
        assert_eq!(facilities_connected(&one, &[]), Ok(true));
    }

    #[test]
    fn walk_validity() {
        let inst = toy1();
        assert!(walk_is_valid(&inst, &Walk::new(vec![0, 1, 2]).unwrap()));
        assert!(!walk_is_valid(&inst, &Walk::new(vec![0, 2]).unwrap()));
        assert!(walk_is_valid(&inst, &Walk::at(1)));
        assert!(Walk::new(vec![]).is_none());
    }

    #[test]
    fn verifier_on_toy() {
        let inst = toy1();
        assert_eq!(verify_st_solution(&inst, &walks(&[&[0, 1, 2]])), Ok(()));
        assert_eq!(verify_st_solution(&inst, &walks(&[&[0, 1]])), Err(SolutionDefect::Disconnected));
        assert!(matches!(
            verify_st_solution(&inst, &walks(&[&[1, 2]])),
            Err(SolutionDefect::StartMismatch { .. })
        ));
        assert!(matches!(
            verify_st_solution(&inst, &walks(&[])),
            Err(SolutionDefect::WrongCount { expected: 1, found: 0 })
        ));
    }

    #[test]
    fn walks_text_format() {
        let sol = parse_walks("0 1 2\n\n1\n").unwrap();
        assert_eq!(sol.walks.len(), 2);
        assert_eq!(serialize_walks(&sol), "0 1 2\n1\n");
        assert_eq!(parse_walks("").unwrap().walks.len(), 0);
        assert!(parse_walks("0 x\n").is_err());
    }
}
