//! Tree pattern embedding: the circuit, its symbolic expansion, and the
//! randomized detector.

use snowteam::digraph::parse_instance;
use snowteam::exact::solve_tpe_exact;
use snowteam::tpe::{build_circuit, expand_symbolic, has_multilinear_monomial, success_count, TpeInstance};
use snowteam::trees::parse_tree_code;

fn main() {
    let host = parse_instance("st 4 4\nv 0 1 2\nv 1 1 0\nv 2 0 0\nv 3 1 0\na 0 1\na 0 2\na 2 3\na 1 3\n").unwrap();
    for code in ["0 1 1:++", "0 1 2:++", "0 1 1:--"] {
        let inst = TpeInstance::new(host.clone(), parse_tree_code(code).unwrap());
        let c = build_circuit(&inst);
        let t = inst.terminal_count();
        let eta = inst.tree().order();
        let poly = expand_symbolic(&c, eta, t as u32).unwrap();
        let hits = success_count(&c, t, eta as u32, 100, 7).unwrap();
        println!(
            "{code}: {} gates, symbolic {}, exact {:?}, {hits}/100 trials nonzero",
            c.gate_count(),
            has_multilinear_monomial(&poly, t as u32, eta),
            solve_tpe_exact(&inst).unwrap(),
        );
    }
}
