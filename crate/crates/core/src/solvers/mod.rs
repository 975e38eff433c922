//! Randomized fixed-parameter pipelines for Snow Team and its variants.
//!
//! Every pipeline reduces to tree pattern embedding on the transitive
//! closure: enumerate candidate directed trees with at most `2|F| − 1`
//! vertices, weight each vertex by its plough demand, and ask whether the
//! tree embeds with every facility in the image and demand within the
//! ploughs available at the image vertex.

mod normalize;

use std::sync::Mutex;
use std::time::{Duration, Instant};

use serde::Serialize;
use thiserror::Error;

use crate::digraph::{transitive_closure, Instance, SolutionWalks};
use crate::exact::{solve_st_exact, solve_stu_exact, solve_variant_exact, ExactEngine, ExactError, ExactLimits, Variant};
use crate::tpe::{tpe_detection, Detection, TpeInstance};
use crate::trees::{candidate_stream, TreeCandidate, MAX_ORDER};
use crate::util::{derive_seed, DisjointSets};

pub use normalize::{is_tree_like, normalize_to_tree_like, union_vertices, NormalizeError};

/// Assumed lower bound on the probability that one randomized trial detects
/// an existing monomial.
pub const ASSUMED_TRIAL_SUCCESS: f64 = 0.2;

pub const DEFAULT_TRIALS: u32 = 32;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Answer {
    Yes,
    No,
    Value(usize),
    Infeasible,
}

impl Answer {
    pub fn from_bool(b: bool) -> Self {
        if b {
            Answer::Yes
        } else {
            Answer::No
        }
    }

    /// YES or an attained optimum.
    pub fn is_positive(self) -> bool {
        matches!(self, Answer::Yes | Answer::Value(_))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolveParams {
    pub seed: u64,
    /// Randomized trials per detection.
    pub trials: u32,
    /// Skip directed-isomorphic tree candidates.
    pub dedupe: bool,
    /// Use the exact oracle when the instance has at most this many vertices.
    pub exact_threshold: usize,
    /// Worker threads for candidate evaluation.
    pub jobs: usize,
}

impl Default for SolveParams {
    fn default() -> Self {
        Self { seed: 1, trials: DEFAULT_TRIALS, dedupe: true, exact_threshold: 0, jobs: 1 }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SolveReport {
    pub answer: Answer,
    pub candidates_tested: u64,
    pub detections_run: u64,
    pub elapsed: Duration,
    /// Upper bound on the probability that the answer is wrong, assuming
    /// [`ASSUMED_TRIAL_SUCCESS`]. Positive answers from the randomized
    /// detector are never wrong; a negative answer, or an optimum that some
    /// rejected detection could have improved, is wrong only if a detection
    /// on a truly embeddable candidate missed, which happens with probability
    /// at most `(1 − p)^trials`.
    pub failure_bound: f64,
    /// Walks, when the exact oracle produced the answer.
    pub witness: Option<SolutionWalks>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolveError {
    #[error("instance is not restricted: some base is not a facility")]
    NotRestricted,
    #[error("candidate trees of order up to {order} are needed, beyond {max}, and the exact oracle gave up: {source}")]
    BeyondLimits { order: usize, max: usize, source: ExactError },
}

/// `(1 − p)^trials`.
pub fn miss_probability(trials: u32) -> f64 {
    (1.0 - ASSUMED_TRIAL_SUCCESS).powi(trials as i32)
}

#[derive(Default)]
struct Counters {
    candidates: u64,
    detections: u64,
    /// Some randomized detection answered no. Rejections by the structural
    /// precheck are certain and do not count.
    rejected: bool,
}

impl Counters {
    fn record(&mut self, d: Detection) {
        self.candidates += 1;
        if d.trials_run > 0 {
            self.detections += 1;
        }
        if !d.found && d.trials_run > 0 {
            self.rejected = true;
        }
    }

    fn report(self, answer: Answer, start: Instant, params: &SolveParams) -> SolveReport {
        SolveReport {
            answer,
            candidates_tested: self.candidates,
            detections_run: self.detections,
            elapsed: start.elapsed(),
            failure_bound: if self.rejected { miss_probability(params.trials) } else { 0.0 },
            witness: None,
        }
    }
}

/// Index of the first candidate whose detection succeeds, scanning in order.
/// With several jobs, blocks of candidates are evaluated concurrently and the
/// earliest hit in the block wins, so the result does not depend on `jobs`.
fn first_embeddable(
    base: &TpeInstance,
    cands: &[TreeCandidate],
    params: &SolveParams,
    seed: u64,
    counters: &mut Counters,
) -> Option<usize> {
    let run = |i: usize| tpe_detection(&base.with_tree(cands[i].clone()), params.trials, derive_seed(seed, i as u64));
    if params.jobs <= 1 {
        for i in 0..cands.len() {
            let d = run(i);
            counters.record(d);
            if d.found {
                return Some(i);
            }
        }
        return None;
    }
    let jobs = params.jobs;
    let block = jobs * 4;
    for start in (0..cands.len()).step_by(block) {
        let end = (start + block).min(cands.len());
        let results: Mutex<Vec<Option<Detection>>> = Mutex::new(vec![None; end - start]);
        std::thread::scope(|s| {
            for t in 0..jobs {
                let results = &results;
                let run = &run;
                s.spawn(move || {
                    for i in (start + t..end).step_by(jobs) {
                        let d = run(i);
                        results.lock().unwrap()[i - start] = Some(d);
                    }
                });
            }
        });
        let results = results.into_inner().unwrap();
        for (off, d) in results.into_iter().enumerate() {
            let d = d.expect("every candidate evaluated");
            counters.record(d);
            if d.found {
                return Some(start + off);
            }
        }
    }
    None
}

/// All facilities in one weakly connected component.
fn facilities_weakly_connected(inst: &Instance) -> bool {
    let mut sets = DisjointSets::new(inst.n());
    for &(u, v) in inst.arcs() {
        sets.union(u, v);
    }
    let facs = inst.facilities();
    facs.iter().all(|&f| sets.find(f) == sets.find(facs[0]))
}

/// Positive demands can be placed on distinct bases with enough ploughs:
/// sorted descending, the i-th demand is at most the i-th capacity.
fn demands_fit(cand: &TreeCandidate, capacity: &[u32]) -> bool {
    let mut need: Vec<u32> = cand.demand().iter().copied().filter(|&d| d > 0).collect();
    let mut have: Vec<u32> = capacity.iter().copied().filter(|&c| c > 0).collect();
    if need.len() > have.len() {
        return false;
    }
    need.sort_unstable_by(|a, b| b.cmp(a));
    have.sort_unstable_by(|a, b| b.cmp(a));
    need.iter().zip(&have).all(|(n, h)| n <= h)
}

/// Candidates for a restricted instance with the given facility count,
/// ordered by total demand (then enumeration order).
fn restricted_candidates(f_count: usize, n: usize, capacity: &[u32], params: &SolveParams) -> Vec<TreeCandidate> {
    let budget: u32 = capacity.iter().sum();
    let max_order = (2 * f_count).saturating_sub(1).min(n);
    let mut cands: Vec<TreeCandidate> = candidate_stream(f_count, max_order, Some(budget), params.dedupe)
        .filter(|c| demands_fit(c, capacity))
        .collect();
    cands.sort_by_key(TreeCandidate::total_demand);
    cands
}

/// Searches a restricted instance; returns the total demand of the first
/// embeddable candidate, which is the least one.
fn restricted_search(inst: &Instance, params: &SolveParams, seed: u64, counters: &mut Counters) -> Option<u32> {
    let facs = inst.facilities();
    if facs.len() <= 1 {
        return Some(0);
    }
    if inst.total_ploughs() == 0 || !facilities_weakly_connected(inst) {
        return None;
    }
    let tc = transitive_closure(inst);
    let base = TpeInstance::new(tc, TreeCandidate::single_vertex());
    let cands = restricted_candidates(facs.len(), inst.n(), inst.plough_counts(), params);
    first_embeddable(&base, &cands, params, seed, counters).map(|i| cands[i].total_demand())
}

/// Runs the exact oracle when the instance is small enough to prefer it, or
/// when the candidate trees would exceed [`MAX_ORDER`] so the pipeline cannot
/// be complete.
fn exact_fallback(
    inst: &Instance,
    params: &SolveParams,
    order: usize,
    start: Instant,
    run: impl FnOnce() -> Result<(Answer, Option<SolutionWalks>), ExactError>,
) -> Result<Option<SolveReport>, SolveError> {
    let forced = order > MAX_ORDER;
    if inst.n() > params.exact_threshold && !forced {
        return Ok(None);
    }
    match run() {
        Ok((answer, witness)) => Ok(Some(SolveReport {
            answer,
            candidates_tested: 0,
            detections_run: 0,
            elapsed: start.elapsed(),
            failure_bound: 0.0,
            witness,
        })),
        Err(source) if forced => Err(SolveError::BeyondLimits { order, max: MAX_ORDER, source }),
        Err(_) => Ok(None),
    }
}

fn exact_st(inst: &Instance) -> Result<(Answer, Option<SolutionWalks>), ExactError> {
    solve_st_exact(inst, &ExactLimits::default()).map(|(yes, w)| (Answer::from_bool(yes), w))
}

fn exact_variant(inst: &Instance, v: Variant) -> Result<(Answer, Option<SolutionWalks>), ExactError> {
    solve_variant_exact(inst, v, &ExactLimits::default()).map(|a| (a, None))
}

/// Largest candidate order the ST pipeline may need: every non-facility base
/// can become a terminal.
fn st_order_bound(inst: &Instance) -> usize {
    let t = inst.facilities().len() + non_facility_bases(inst).len();
    if inst.facilities().len() <= 1 {
        return 1;
    }
    (2 * t).saturating_sub(1).min(inst.n())
}

/// Snow Team on a restricted instance (every base is a facility).
pub fn solve_all_st(inst: &Instance, params: &SolveParams) -> Result<SolveReport, SolveError> {
    let start = Instant::now();
    if !inst.is_restricted() {
        return Err(SolveError::NotRestricted);
    }
    if let Some(r) = exact_fallback(inst, params, st_order_bound(inst), start, || exact_st(inst))? {
        return Ok(r);
    }
    let mut counters = Counters::default();
    let found = restricted_search(inst, params, params.seed, &mut counters).is_some();
    Ok(counters.report(Answer::from_bool(found), start, params))
}

/// The restricted instance for a subset of bases outside the facility set:
/// those bases become facilities, every other non-facility base loses its
/// ploughs.
fn with_extra_facilities(inst: &Instance, extra: &[usize], mask: u64) -> Instance {
    let mut facility = inst.facility_flags().to_vec();
    let mut ploughs = inst.plough_counts().to_vec();
    for (i, &b) in extra.iter().enumerate() {
        if mask >> i & 1 == 1 {
            facility[b] = true;
        } else {
            ploughs[b] = 0;
        }
    }
    Instance::new(inst.n(), inst.arcs().iter().copied(), facility, ploughs).expect("same shape")
}

fn non_facility_bases(inst: &Instance) -> Vec<usize> {
    inst.bases().into_iter().filter(|&b| !inst.is_facility(b)).collect()
}

/// Snow Team: tries every subset of non-facility bases as extra facilities.
pub fn solve_st(inst: &Instance, params: &SolveParams) -> Result<SolveReport, SolveError> {
    let start = Instant::now();
    if let Some(r) = exact_fallback(inst, params, st_order_bound(inst), start, || exact_st(inst))? {
        return Ok(r);
    }
    let mut counters = Counters::default();
    let found = st_search(inst, params, &mut counters);
    Ok(counters.report(Answer::from_bool(found), start, params))
}

fn st_search(inst: &Instance, params: &SolveParams, counters: &mut Counters) -> bool {
    if inst.facilities().len() <= 1 {
        return true;
    }
    let extra = non_facility_bases(inst);
    (0..1u64 << extra.len()).any(|mask| {
        let sub = with_extra_facilities(inst, &extra, mask);
        restricted_search(&sub, params, derive_seed(params.seed, mask), counters).is_some()
    })
}

/// Fewest ploughs that connect the facilities, or infeasible.
pub fn solve_min_st(inst: &Instance, params: &SolveParams) -> Result<SolveReport, SolveError> {
    let start = Instant::now();
    let mut counters = Counters::default();
    if inst.facilities().len() <= 1 {
        return Ok(counters.report(Answer::Value(0), start, params));
    }
    if let Some(r) = exact_fallback(inst, params, st_order_bound(inst), start, || exact_variant(inst, Variant::MinSt))? {
        return Ok(r);
    }
    let extra = non_facility_bases(inst);
    let mut best: Option<u32> = None;
    for mask in 0..1u64 << extra.len() {
        let sub = with_extra_facilities(inst, &extra, mask);
        if sub.facilities().len() <= 1 {
            continue;
        }
        if sub.total_ploughs() == 0 || !facilities_weakly_connected(&sub) {
            continue;
        }
        let tc = transitive_closure(&sub);
        let base = TpeInstance::new(tc, TreeCandidate::single_vertex());
        let cands: Vec<TreeCandidate> = restricted_candidates(sub.facilities().len(), sub.n(), sub.plough_counts(), params)
            .into_iter()
            .filter(|c| best.map_or(true, |b| c.total_demand() < b))
            .collect();
        if let Some(i) = first_embeddable(&base, &cands, params, derive_seed(params.seed, mask), &mut counters) {
            best = Some(cands[i].total_demand());
        }
    }
    let answer = best.map_or(Answer::Infeasible, |b| Answer::Value(b as usize));
    Ok(counters.report(answer, start, params))
}

/// Most facilities that the ploughs can connect.
pub fn solve_max_st(inst: &Instance, params: &SolveParams) -> Result<SolveReport, SolveError> {
    let start = Instant::now();
    let mut counters = Counters::default();
    if let Some(r) = exact_fallback(inst, params, st_order_bound(inst), start, || exact_variant(inst, Variant::MaxSt))? {
        return Ok(r);
    }
    let facs = inst.facilities();
    for size in (2..=facs.len()).rev() {
        let hit = crate::util::any_combination(facs.len(), size, |idx| {
            let mut flags = vec![false; inst.n()];
            for &i in idx {
                flags[facs[i]] = true;
            }
            let sub = inst.with_facilities(flags).expect("same vertex count");
            st_search(&sub, params, &mut counters)
        });
        if hit {
            return Ok(counters.report(Answer::Value(size), start, params));
        }
    }
    Ok(counters.report(Answer::Value(facs.len().min(1)), start, params))
}

/// Whether `k` ploughs with free start positions can connect the facilities
/// of `inst`; its plough counts are ignored.
pub fn solve_stu(inst: &Instance, k: usize, params: &SolveParams) -> Result<SolveReport, SolveError> {
    let start = Instant::now();
    let mut counters = Counters::default();
    let facs = inst.facilities();
    if facs.len() <= 1 {
        return Ok(counters.report(Answer::Yes, start, params));
    }
    if k == 0 || !facilities_weakly_connected(inst) {
        return Ok(counters.report(Answer::No, start, params));
    }
    let n = inst.n();
    let max_order = (2 * (facs.len() + k) - 1).min(n);
    let exact = || {
        solve_stu_exact(inst, k, &ExactLimits::default(), ExactEngine::Auto).map(|(yes, w)| (Answer::from_bool(yes), w))
    };
    if let Some(r) = exact_fallback(inst, params, max_order, start, exact)? {
        return Ok(r);
    }
    let tc = transitive_closure(inst);
    let terminals = inst.facility_flags().to_vec();
    let base = TpeInstance::new(tc, TreeCandidate::single_vertex())
        .with_terminals(terminals)
        .and_then(|t| t.with_capacity(vec![n as u32; n]))
        .expect("lengths match");
    let cands: Vec<TreeCandidate> = candidate_stream(facs.len(), max_order, Some(k as u32), params.dedupe).collect();
    let found = first_embeddable(&base, &cands, params, params.seed, &mut counters).is_some();
    Ok(counters.report(Answer::from_bool(found), start, params))
}

/// Tree pattern embedding for one given tree, as a report.
pub fn solve_tpe_report(inst: &TpeInstance, params: &SolveParams) -> SolveReport {
    let start = Instant::now();
    let mut counters = Counters::default();
    let d = tpe_detection(inst, params.trials, params.seed);
    counters.record(d);
    counters.report(Answer::from_bool(d.found), start, params)
}

#[cfg(test)]
mod tests;
