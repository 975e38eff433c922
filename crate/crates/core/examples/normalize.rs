//! Rewriting a solution on the transitive closure into tree-like walks.

use snowteam::digraph::{parse_instance, parse_walks, transitive_closure};
use snowteam::solvers::{is_tree_like, normalize_to_tree_like};

fn main() {
    let inst = parse_instance("st 5 5\nv 0 1 2\nv 1 0 0\nv 2 1 0\nv 3 0 0\nv 4 1 0\na 0 1\na 1 2\na 2 3\na 3 1\na 1 4\n").unwrap();
    let tc = transitive_closure(&inst);
    let walks = parse_walks("0 1 2 3 1 4\n0 1 2\n").unwrap();
    let out = normalize_to_tree_like(&tc, &walks).unwrap();
    println!("before: tree-like {}", is_tree_like(&tc, &walks));
    for w in &out.walks {
        println!("  {w}");
    }
    println!("after: tree-like {}", is_tree_like(&tc, &out));
}
