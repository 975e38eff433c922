//! Free trees and their orientations, with plough demands.

use snowteam::trees::{candidate_stream, enumerate_free_trees, orient_tree};

fn main() {
    for order in 1..=10 {
        let trees: Vec<_> = enumerate_free_trees(order).unwrap().collect();
        let classes: usize = trees.iter().map(|t| orient_tree(t, true).count()).sum();
        println!("order {order:>2}: {:>3} free trees, {classes:>5} oriented up to isomorphism", trees.len());
    }
    for c in candidate_stream(2, 3, Some(1), true) {
        println!("{:<10} demand {:?}", c.code(), c.demand());
    }
}
