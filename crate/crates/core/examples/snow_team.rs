//! Decide Snow Team on a small road network with the randomized pipeline.

use snowteam::digraph::parse_instance;
use snowteam::solvers::{solve_st, SolveParams};

const ROADS: &str = "\
st 6 7
v 0 1 1
v 1 0 0
v 2 1 0
v 3 0 1
v 4 1 0
v 5 0 0
a 0 1
a 1 2
a 3 1
a 3 4
a 4 5
a 5 3
a 2 5
";

fn main() {
    let inst = parse_instance(ROADS).expect("valid instance");
    let report = solve_st(&inst, &SolveParams::default()).expect("small instance");
    println!("facilities {:?}, bases {:?}", inst.facilities(), inst.bases());
    println!("answer {:?}", report.answer);
    println!("{} candidates, {} detections", report.candidates_tested, report.detections_run);
    println!("failure bound {:e}", report.failure_bound);
}
