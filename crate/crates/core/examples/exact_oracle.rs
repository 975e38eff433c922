//! Exact search with a witness, checked by the verifier.

use snowteam::digraph::{serialize_walks, verify_st_solution};
use snowteam::exact::{solve_st_exact, solve_st_exact_with, ExactEngine, ExactLimits};
use snowteam::gen::{gen_random_with, RandomSpec};

fn main() {
    let spec = RandomSpec { n: 7, arcs: 12, facility_prob: 0.5, ploughs: 3, restricted: false };
    for seed in 0..5 {
        let inst = gen_random_with(&spec, seed).unwrap();
        let limits = ExactLimits::default();
        let (yes, walks) = solve_st_exact(&inst, &limits).unwrap();
        let (again, _) = solve_st_exact_with(&inst, &limits, ExactEngine::PathSearch).unwrap();
        assert_eq!(yes, again);
        println!("seed {seed}: facilities {:?}, bases {:?}, answer {yes}", inst.facilities(), inst.bases());
        if let Some(w) = walks {
            assert_eq!(verify_st_solution(&inst, &w), Ok(()));
            print!("{}", serialize_walks(&w));
        }
    }
}
