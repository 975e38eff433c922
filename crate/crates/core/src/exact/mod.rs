//! Brute-force ground truth for small instances.
//!
//! Two independent engines decide Snow Team: a breadth-first search over
//! plough positions and cleared arcs, which follows the problem definition
//! move by move and returns move-minimal witnesses, and a search that gives
//! each plough a maximal path through the strongly connected components,
//! which scales to the hardness gadgets.

mod bfs;
mod paths;
mod tpe;

use thiserror::Error;

use crate::digraph::{verify_st_solution, Instance, SolutionWalks, Vertex};
use crate::solvers::Answer;
use crate::tpe::TpeInstance;

pub(crate) use paths::Condensation;

/// Cap on the total number of condensation paths enumerated per search.
pub const PATH_BUDGET: usize = 1 << 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExactError {
    #[error("instance exceeds the exact-search limit on {what} ({limit})")]
    LimitExceeded { what: &'static str, limit: usize },
}

/// Size limits for the exact engines.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ExactLimits {
    /// Breadth-first engine: vertices, arcs and ploughs.
    pub bfs_max_n: usize,
    pub bfs_max_arcs: usize,
    pub bfs_max_ploughs: usize,
    /// Path engine: vertices and ploughs.
    pub path_max_n: usize,
    pub path_max_ploughs: usize,
    /// Tree embedding brute force: host order and tree order.
    pub tpe_max_n: usize,
    pub tpe_max_tree: usize,
}

impl Default for ExactLimits {
    fn default() -> Self {
        Self {
            bfs_max_n: 8,
            bfs_max_arcs: 14,
            bfs_max_ploughs: 4,
            path_max_n: 128,
            path_max_ploughs: 24,
            tpe_max_n: 8,
            tpe_max_tree: 5,
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum ExactEngine {
    /// Breadth-first search when within its limits, else the path engine.
    #[default]
    Auto,
    Bfs,
    PathSearch,
}

fn check(what: &'static str, value: usize, limit: usize) -> Result<(), ExactError> {
    if value > limit {
        Err(ExactError::LimitExceeded { what, limit })
    } else {
        Ok(())
    }
}

fn pick_engine(n: usize, arcs: usize, ploughs: usize, limits: &ExactLimits, engine: ExactEngine) -> Result<ExactEngine, ExactError> {
    let bfs_ok = || -> Result<(), ExactError> {
        check("vertices", n, limits.bfs_max_n)?;
        check("arcs", arcs, limits.bfs_max_arcs)?;
        check("ploughs", ploughs, limits.bfs_max_ploughs)
    };
    let path_ok = || -> Result<(), ExactError> {
        check("vertices", n, limits.path_max_n)?;
        check("ploughs", ploughs, limits.path_max_ploughs)
    };
    match engine {
        ExactEngine::Bfs => bfs_ok().map(|_| ExactEngine::Bfs),
        ExactEngine::PathSearch => path_ok().map(|_| ExactEngine::PathSearch),
        ExactEngine::Auto => match bfs_ok() {
            Ok(()) => Ok(ExactEngine::Bfs),
            Err(_) => path_ok().map(|_| ExactEngine::PathSearch),
        },
    }
}

/// Decides Snow Team exactly; on YES also returns walks that verify.
pub fn solve_st_exact(inst: &Instance, limits: &ExactLimits) -> Result<(bool, Option<SolutionWalks>), ExactError> {
    solve_st_exact_with(inst, limits, ExactEngine::Auto)
}

pub fn solve_st_exact_with(
    inst: &Instance,
    limits: &ExactLimits,
    engine: ExactEngine,
) -> Result<(bool, Option<SolutionWalks>), ExactError> {
    let engine = pick_engine(inst.n(), inst.arc_count(), inst.total_ploughs() as usize, limits, engine)?;
    let found = match engine {
        ExactEngine::Bfs => bfs::st(inst),
        _ => paths::st(inst)?,
    };
    if let Some(sol) = &found {
        debug_assert_eq!(verify_st_solution(inst, sol), Ok(()));
    }
    Ok((found.is_some(), found))
}

/// Whether `k` ploughs with freely chosen starts can connect the facilities.
pub fn solve_stu_exact(
    inst: &Instance,
    k: usize,
    limits: &ExactLimits,
    engine: ExactEngine,
) -> Result<(bool, Option<SolutionWalks>), ExactError> {
    if inst.facilities().len() <= 1 {
        return Ok((true, Some(SolutionWalks::new(vec![crate::Walk::at(0); k]))));
    }
    let engine = pick_engine(inst.n(), inst.arc_count(), k, limits, engine)?;
    let found = match engine {
        ExactEngine::Bfs => bfs::stu(inst, k),
        _ => paths::stu(inst, k)?,
    };
    Ok((found.is_some(), found))
}

/// An injective embedding of the pattern tree, as the host image of each
/// tree vertex.
pub fn solve_tpe_exact(inst: &TpeInstance) -> Result<Option<Vec<usize>>, ExactError> {
    solve_tpe_exact_with(inst, &ExactLimits::default())
}

/// [`solve_tpe_exact`] with explicit limits.
pub fn solve_tpe_exact_with(inst: &TpeInstance, limits: &ExactLimits) -> Result<Option<Vec<usize>>, ExactError> {
    check("host vertices", inst.host().n(), limits.tpe_max_n)?;
    check("tree vertices", inst.tree().order(), limits.tpe_max_tree)?;
    Ok(tpe::embed(inst))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Variant {
    /// Fewest ploughs, drawn from those available, that connect the facilities.
    MinSt,
    /// Most facilities that the available ploughs can connect.
    MaxSt,
    /// `k` ploughs placed anywhere.
    Stu(usize),
}

/// Exact value of an optimization or unrestricted variant.
pub fn solve_variant_exact(inst: &Instance, variant: Variant, limits: &ExactLimits) -> Result<Answer, ExactError> {
    match variant {
        Variant::MinSt => min_st(inst, limits),
        Variant::MaxSt => max_st(inst, limits),
        Variant::Stu(k) => {
            let (yes, _) = solve_stu_exact(inst, k, limits, ExactEngine::Auto)?;
            Ok(Answer::from_bool(yes))
        }
    }
}

fn min_st(inst: &Instance, limits: &ExactLimits) -> Result<Answer, ExactError> {
    if inst.facilities().len() <= 1 {
        return Ok(Answer::Value(0));
    }
    let bases = inst.bases();
    let caps: Vec<u32> = bases.iter().map(|&b| inst.ploughs(b)).collect();
    let total: u32 = caps.iter().sum();
    for size in 1..=total {
        let mut found = false;
        for_each_submultiset(&caps, size, &mut |counts: &[u32]| {
            if found {
                return Ok(());
            }
            let mut ploughs = vec![0; inst.n()];
            for (&b, &c) in bases.iter().zip(counts) {
                ploughs[b] = c;
            }
            let sub = inst.with_ploughs(ploughs).expect("fewer ploughs stay valid");
            if solve_st_exact(&sub, limits)?.0 {
                found = true;
            }
            Ok(())
        })?;
        if found {
            return Ok(Answer::Value(size as usize));
        }
    }
    Ok(Answer::Infeasible)
}

fn for_each_submultiset(
    caps: &[u32],
    size: u32,
    f: &mut dyn FnMut(&[u32]) -> Result<(), ExactError>,
) -> Result<(), ExactError> {
    fn rec(
        caps: &[u32],
        i: usize,
        left: u32,
        counts: &mut Vec<u32>,
        f: &mut dyn FnMut(&[u32]) -> Result<(), ExactError>,
    ) -> Result<(), ExactError> {
        if i == caps.len() {
            return if left == 0 { f(counts) } else { Ok(()) };
        }
        for c in (0..=caps[i].min(left)).rev() {
            counts.push(c);
            rec(caps, i + 1, left - c, counts, f)?;
            counts.pop();
        }
        Ok(())
    }
    rec(caps, 0, size, &mut Vec::new(), f)
}

fn max_st(inst: &Instance, limits: &ExactLimits) -> Result<Answer, ExactError> {
    let facs = inst.facilities();
    for size in (2..=facs.len()).rev() {
        let mut found = false;
        let mut err = None;
        crate::util::any_combination(facs.len(), size, |idx| {
            let mut flags = vec![false; inst.n()];
            for &i in idx {
                flags[facs[i]] = true;
            }
            let sub = inst.with_facilities(flags).expect("same vertex count");
            match solve_st_exact(&sub, limits) {
                Ok((yes, _)) => found = yes,
                Err(e) => err = Some(e),
            }
            found || err.is_some()
        });
        if let Some(e) = err {
            return Err(e);
        }
        if found {
            return Ok(Answer::Value(size));
        }
    }
    Ok(Answer::Value(facs.len().min(1)))
}

/// The smallest vertex of each strongly connected component with no
/// entering arc. Every vertex is reachable from one of them.
pub fn source_component_representatives(inst: &Instance) -> Vec<Vertex> {
    Condensation::new(inst).source_representatives(inst)
}
