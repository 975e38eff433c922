//! Fewest ploughs and most reconnectable facilities on the zigzag family.

use snowteam::gadgets::gen_fig3;
use snowteam::solvers::{solve_max_st, solve_min_st, SolveParams};

fn main() {
    let params = SolveParams::default();
    for n in [3, 5, 7] {
        let inst = gen_fig3(n).unwrap();
        let min = solve_min_st(&inst, &params).unwrap();
        let max = solve_max_st(&inst, &params).unwrap();
        println!("n={n}: {} ploughs available, min {:?}, max facilities {:?}", inst.total_ploughs(), min.answer, max.answer);
    }
}
