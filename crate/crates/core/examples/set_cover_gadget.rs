//! Set Cover to Snow Team and back.

use snowteam::exact::{solve_st_exact, ExactLimits};
use snowteam::gadgets::{build_gadget, canonicalize_solution, cover_to_walks, solve_set_cover_exact, walks_to_cover, SetCoverInstance};

fn main() {
    let sets = vec![vec![1, 3, 4], vec![2, 3], vec![2, 4, 5], vec![3, 4, 5]];
    let sc = SetCoverInstance::new(5, sets, 2).unwrap();
    let g = build_gadget(&sc);
    let inst = g.instance();
    println!("gadget: {} vertices, {} arcs, {} ploughs", inst.n(), inst.arc_count(), inst.total_ploughs());

    let cover = solve_set_cover_exact(&sc).unwrap().expect("a cover of size 2 exists");
    let walks = cover_to_walks(&g, &cover).unwrap();
    println!("cover {cover:?} gives {} walks", walks.walks.len());

    let (_, found) = solve_st_exact(inst, &ExactLimits::default()).unwrap();
    let found = found.expect("gadget is solvable");
    let canon = canonicalize_solution(&g, &found).unwrap();
    for w in canon.walks.iter().filter(|w| w.len() > 2).take(6) {
        let names: Vec<String> = w.vertices().iter().map(|&v| g.name(v).to_string()).collect();
        println!("  {}", names.join(" -> "));
    }
    println!("cover read back from the oracle's walks: {:?}", walks_to_cover(&g, &found).unwrap());

    let tight = build_gadget(&sc.with_budget(1).unwrap());
    println!("budget 1: {}", solve_st_exact(tight.instance(), &ExactLimits::default()).unwrap().0);
}
