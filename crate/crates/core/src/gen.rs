//! Random instance generation.

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::digraph::Instance;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GenError {
    #[error("{arcs} arcs do not fit in a simple digraph on {n} vertices")]
    TooManyArcs { n: usize, arcs: usize },
    #[error("facility probability {0} is outside [0, 1]")]
    BadProbability(f64),
    #[error("bases restricted to facilities but no facility was drawn")]
    NoFacility,
    #[error("{ploughs} ploughs do not fit at most n − 1 per vertex on {slots} vertices")]
    TooManyPloughs { ploughs: u32, slots: usize },
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RandomSpec {
    pub n: usize,
    pub arcs: usize,
    pub facility_prob: f64,
    /// Ploughs placed one at a time on uniformly chosen vertices.
    pub ploughs: u32,
    /// Place ploughs on facilities only.
    pub restricted: bool,
}

impl RandomSpec {
    pub fn new(n: usize, arcs: usize, facility_prob: f64) -> Self {
        Self { n, arcs, facility_prob, ploughs: default_ploughs(n), restricted: false }
    }
}

pub fn default_ploughs(n: usize) -> u32 {
    n.div_ceil(3).max(1) as u32
}

/// Arc set drawn uniformly among simple digraphs with the requested number
/// of arcs; facilities are independent coin flips.
pub fn gen_random(n: usize, arcs: usize, facility_prob: f64, seed: u64) -> Result<Instance, GenError> {
    gen_random_with(&RandomSpec::new(n, arcs, facility_prob), seed)
}

pub fn gen_random_with(spec: &RandomSpec, seed: u64) -> Result<Instance, GenError> {
    let n = spec.n;
    let slots = n * n.saturating_sub(1);
    if spec.arcs > slots {
        return Err(GenError::TooManyArcs { n, arcs: spec.arcs });
    }
    if !(0.0..=1.0).contains(&spec.facility_prob) {
        return Err(GenError::BadProbability(spec.facility_prob));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut arcs: Vec<(usize, usize)> = sample(&mut rng, slots, spec.arcs)
        .into_iter()
        .map(|s| {
            let (u, r) = (s / (n - 1), s % (n - 1));
            (u, if r >= u { r + 1 } else { r })
        })
        .collect();
    arcs.sort_unstable();
    let facility: Vec<bool> = (0..n).map(|_| rng.gen_bool(spec.facility_prob)).collect();
    let pool: Vec<usize> = (0..n).filter(|&v| !spec.restricted || facility[v]).collect();
    let mut ploughs = vec![0u32; n];
    if spec.ploughs > 0 {
        if pool.is_empty() {
            return Err(GenError::NoFacility);
        }
        let cap = n.saturating_sub(1) as u32;
        if u64::from(spec.ploughs) > u64::from(cap) * pool.len() as u64 {
            return Err(GenError::TooManyPloughs { ploughs: spec.ploughs, slots: pool.len() });
        }
        let mut open = pool;
        for _ in 0..spec.ploughs {
            let i = rng.gen_range(0..open.len());
            ploughs[open[i]] += 1;
            if ploughs[open[i]] == cap {
                open.swap_remove(i);
            }
        }
    }
    Ok(Instance::new(n, arcs, facility, ploughs).expect("sampled arcs are simple"))
}
