//! `k` ploughs that may start anywhere; every vertex a facility asks for an
//! agent clearing tree.

use snowteam::digraph::Instance;
use snowteam::exact::{solve_stu_exact, ExactEngine, ExactLimits};
use snowteam::solvers::{solve_stu, SolveParams};

fn main() {
    // Out-tree: 0 -> 1 -> {2, 3}, and 0 -> 4.
    let arcs = [(0, 1), (1, 2), (1, 3), (0, 4)];
    let inst = Instance::new(5, arcs, vec![true; 5], vec![0; 5]).unwrap();
    for k in 1..=4 {
        let r = solve_stu(&inst, k, &SolveParams::default()).unwrap();
        let (exact, walks) = solve_stu_exact(&inst, k, &ExactLimits::default(), ExactEngine::Auto).unwrap();
        println!("k={k}: pipeline {:?}, exact {exact}", r.answer);
        if let Some(w) = walks {
            for walk in &w.walks {
                println!("  {walk}");
            }
        }
    }
}
