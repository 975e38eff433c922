use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::digraph::{parse_instance, transitive_closure, Instance};
use crate::exact::solve_tpe_exact;
use crate::gen::{gen_random_with, RandomSpec};
use crate::trees::{enumerate_free_trees, parse_tree_code, TreeCandidate};

fn random_host(rng: &mut ChaCha8Rng, n: usize) -> Instance {
    let spec = RandomSpec { n, arcs: rng.gen_range(0..=n * (n - 1) / 2), facility_prob: 0.4, ploughs: 2, restricted: false };
    gen_random_with(&spec, rng.gen()).unwrap()
}

fn random_tree(rng: &mut ChaCha8Rng, order: usize) -> TreeCandidate {
    let trees: Vec<_> = enumerate_free_trees(order).unwrap().collect();
    let t = trees[rng.gen_range(0..trees.len())].clone();
    TreeCandidate::new(t, rng.gen_range(0..1u32 << (order - 1)))
}

/// Copies every gate once per use so that no gate has fan-out above one.
fn expand(c: &Circuit) -> Circuit {
    fn copy(c: &Circuit, id: GateId, b: &mut CircuitBuilder) -> GateId {
        match &c.gates()[id] {
            Gate::Add(ins) => {
                let ins = ins.iter().map(|&i| copy(c, i, b)).collect();
                b.add(ins)
            }
            Gate::Mul(x, y) => {
                let (x, y) = (copy(c, *x, b), copy(c, *y, b));
                b.mul(x, y)
            }
            g => b.push(g.clone()),
        }
    }
    let mut b = CircuitBuilder::new();
    let out = copy(c, c.output(), &mut b);
    // Pin the variable and slot counts so both circuits draw the same inputs.
    let pin = b.var(c.n_vars() - 1, c.n_slots() - 1);
    let zero = b.push(Gate::Zero);
    let dead = b.mul(pin, zero);
    let out = b.add(vec![out, dead]);
    b.finish(out, c.zcap()).unwrap()
}

#[test]
fn path_embeds_into_path() {
    let host = parse_instance("st 3 2\nv 0 1 1\nv 1 0 0\nv 2 1 0\na 0 1\na 1 2\n").unwrap();
    let inst = TpeInstance::new(host, parse_tree_code("0 1 2:++").unwrap());
    assert!(solve_tpe(&inst, 16, 1));
}

#[test]
fn in_star_does_not_embed_into_path() {
    let host = parse_instance("st 3 2\nv 0 1 1\nv 1 0 0\nv 2 1 0\na 0 1\na 1 2\n").unwrap();
    // An in-star needs a vertex with two in-neighbours.
    let inst = TpeInstance::new(host, parse_tree_code("0 1 1:--").unwrap());
    assert!(!solve_tpe(&inst, 16, 1));
    assert_eq!(solve_tpe_exact(&inst).unwrap(), None);
}

#[test]
fn demand_above_capacity_is_excluded() {
    // An out-star needs two ploughs at its centre.
    let host = parse_instance("st 3 2\nv 0 1 1\nv 1 1 0\nv 2 1 0\na 0 1\na 0 2\n").unwrap();
    let star = parse_tree_code("0 1 1:++").unwrap();
    let inst = TpeInstance::new(host.clone(), star.clone());
    assert_eq!(indicator(0, 0, &inst), Indicator::Zero);
    assert!(!solve_tpe(&inst, 16, 2));
    let roomy = inst.with_capacity(vec![2, 0, 0]).unwrap();
    assert_eq!(indicator(0, 0, &roomy), Indicator::Z);
    assert!(solve_tpe(&roomy, 16, 2));
}

#[test]
fn symmetric_tree_has_even_coefficient_but_is_detected() {
    // Both leaf swaps give the same image, so the monomial appears twice.
    let host = parse_instance("st 3 2\nv 0 1 2\nv 1 1 0\nv 2 1 0\na 0 1\na 0 2\n").unwrap();
    let inst = TpeInstance::new(host, parse_tree_code("0 1 1:++").unwrap());
    let c = build_circuit(&inst);
    let p = expand_symbolic(&c, 3, 3).unwrap();
    assert_eq!(p.get(&(vec![0, 1, 2], 3)), Some(&2));
    assert!(detect_zt_multilinear(&c, 3, 3, 16, 4).unwrap());
}

#[test]
fn windowed_matches_full_evaluation() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for case in 0..150 {
        let n = rng.gen_range(2..=6);
        let host = random_host(&mut rng, n);
        let order = rng.gen_range(1..=n.min(5));
        let inst = TpeInstance::new(host, random_tree(&mut rng, order));
        let c = build_circuit(&inst);
        for t in 0..=c.zcap() {
            let k = order as u32;
            assert_eq!(eval_trial(&c, t, k, case).unwrap(), eval_trial_full(&c, t, k, case).unwrap(), "case {case}, t={t}");
        }
    }
}

#[test]
fn shared_gates_evaluate_like_expanded_tree() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let mut compared = 0;
    for case in 0..80 {
        let n = rng.gen_range(2..=5);
        let host = random_host(&mut rng, n);
        let order = rng.gen_range(2..=n.min(4));
        let inst = TpeInstance::new(host, random_tree(&mut rng, order));
        let c = build_circuit(&inst);
        if c.is_trivially_zero() {
            continue;
        }
        let e = expand(&c);
        let t = c.zcap();
        assert_eq!(eval_trial_full(&c, t, order as u32, case).unwrap(), eval_trial_full(&e, t, order as u32, case).unwrap());
        compared += 1;
    }
    assert!(compared > 20);
}

#[test]
fn no_instances_never_detect() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    let mut seen = 0;
    while seen < 100 {
        let n = rng.gen_range(3..=6);
        let host = random_host(&mut rng, n);
        let order = rng.gen_range(2..=n.min(5));
        let inst = TpeInstance::new(host, random_tree(&mut rng, order));
        if solve_tpe_exact(&inst).unwrap().is_some() {
            continue;
        }
        let c = build_circuit(&inst);
        if inst.terminal_count() <= order {
            assert_eq!(success_count(&c, inst.terminal_count(), order as u32, 20, seen).unwrap(), 0);
        }
        assert!(!solve_tpe(&inst, 20, seen));
        seen += 1;
    }
}

#[test]
fn detection_agrees_with_exact_on_small_instances() {
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    for case in 0..200 {
        let n = rng.gen_range(2..=6);
        let host = transitive_closure(&random_host(&mut rng, n));
        let order = rng.gen_range(1..=n.min(5));
        let inst = TpeInstance::new(host, random_tree(&mut rng, order));
        let exact = solve_tpe_exact(&inst).unwrap().is_some();
        assert_eq!(solve_tpe(&inst, 40, case), exact, "case {case}\n{}", inst.host());
    }
}

#[test]
fn gate_count_is_cubic() {
    let mut rng = ChaCha8Rng::seed_from_u64(15);
    for n in [5, 10, 20, 30] {
        let host = random_host(&mut rng, n);
        for order in 1..=7 {
            let c = build_circuit(&TpeInstance::new(host.clone(), random_tree(&mut rng, order)));
            assert!(c.gate_count() <= SIZE_CONSTANT * n * n * n);
            assert!(c.size() <= SIZE_CONSTANT * n * n * n + c.gate_count());
            c.validate().unwrap();
        }
    }
}

#[test]
fn guards_and_errors() {
    let host = parse_instance("st 2 1\nv 0 1 1\nv 1 1 0\na 0 1\n").unwrap();
    let inst = TpeInstance::new(host.clone(), parse_tree_code("0 1:+").unwrap());
    let c = build_circuit(&inst);
    assert!(matches!(detect(&c, 5, 2, 1, 0), Err(TpeError::DegreeAboveCap { .. })));
    assert!(matches!(eval_trial(&c, 0, 30, 0), Err(TpeError::GroupTooLarge(30))));
    assert!(inst.clone().with_terminals(vec![true]).is_err());
    assert!(inst.clone().with_capacity(vec![1, 1, 1]).is_err());
    let big = Instance::bare(7, vec![]).unwrap();
    let c = build_circuit(&TpeInstance::new(big, TreeCandidate::single_vertex()));
    assert!(matches!(expand_symbolic(&c, 3, 3), Err(TpeError::SymbolicGuard { .. })));
}

#[test]
fn hand_built_circuit_detects_square_free_product() {
    // (x0 + x1)·(x0 + x1) has the multilinear monomial 2·x0·x1, even in
    // characteristic 2 thanks to distinct slot scalars.
    let mut b = CircuitBuilder::new();
    let (a0, a1) = (b.var(0, 0), b.var(1, 1));
    let s = b.add(vec![a0, a1]);
    let (c0, c1) = (b.var(0, 2), b.var(1, 3));
    let t = b.add(vec![c0, c1]);
    let out = b.mul(s, t);
    let c = b.finish(out, 0).unwrap();
    assert!(detect_zt_multilinear(&c, 0, 2, 16, 3).unwrap());
    let p = expand_symbolic(&c, 2, 0).unwrap();
    assert!(has_multilinear_monomial(&p, 0, 2));
    assert_eq!(p.get(&(vec![0, 0], 0)), Some(&1));
}
