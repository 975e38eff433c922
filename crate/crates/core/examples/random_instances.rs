//! Reproducible random instances.

use snowteam::digraph::serialize_instance;
use snowteam::gen::{gen_random_with, RandomSpec};

fn main() {
    let spec = RandomSpec { n: 6, arcs: 9, facility_prob: 0.4, ploughs: 2, restricted: true };
    match gen_random_with(&spec, 2024) {
        Ok(inst) => print!("{}", serialize_instance(&inst)),
        Err(e) => eprintln!("{e}"),
    }
}
