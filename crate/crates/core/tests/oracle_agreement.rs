//! The randomized ST pipeline against the exact oracle on every tiny
//! instance: up to 4 vertices, up to 6 arcs, at most 3 facilities and at most
//! 2 ploughs.

use snowteam::digraph::Instance;
use snowteam::exact::{solve_st_exact, ExactLimits};
use snowteam::solvers::{solve_st, Answer, SolveParams};

fn subsets(n: usize, max_size: usize) -> Vec<u32> {
    (0..1u32 << n).filter(|m| m.count_ones() as usize <= max_size).collect()
}

/// Plough vectors with total at most 2 and at most `n − 1` per vertex.
fn plough_patterns(n: usize) -> Vec<Vec<u32>> {
    let mut out = vec![vec![0; n]];
    for a in 0..n {
        let mut one = vec![0; n];
        one[a] = 1;
        out.push(one);
        for b in a..n {
            let mut two = vec![0; n];
            two[a] += 1;
            two[b] += 1;
            if two.iter().all(|&c| c as usize <= n - 1) {
                out.push(two);
            }
        }
    }
    out
}

#[test]
fn pipeline_matches_oracle_exhaustively() {
    let limits = ExactLimits::default();
    let mut checked = 0u64;
    let mut seed = 0u64;
    for n in 2..=4usize {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (0..n).filter(move |&v| v != u).map(move |v| (u, v))).collect();
        let patterns = plough_patterns(n);
        for arc_mask in subsets(pairs.len(), 6) {
            let arcs: Vec<(usize, usize)> = (0..pairs.len()).filter(|i| arc_mask >> i & 1 == 1).map(|i| pairs[i]).collect();
            // Fewer than two facilities is trivially YES for both.
            for f_mask in subsets(n, 3).into_iter().filter(|m| m.count_ones() >= 2) {
                let facility: Vec<bool> = (0..n).map(|v| f_mask >> v & 1 == 1).collect();
                for ploughs in &patterns {
                    let inst = Instance::new(n, arcs.iter().copied(), facility.clone(), ploughs.clone()).unwrap();
                    let (truth, _) = solve_st_exact(&inst, &limits).unwrap();
                    seed += 1;
                    let r = solve_st(&inst, &SolveParams { seed, ..SolveParams::default() }).unwrap();
                    assert_eq!(r.answer, Answer::from_bool(truth), "{inst}");
                    assert!(r.failure_bound < 1e-3);
                    checked += 1;
                }
            }
        }
    }
    assert!(checked > 100_000);
}
