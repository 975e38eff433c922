//! The acceptance checks, runnable from the CLI and the `acceptance` test.
//!
//! Each check returns a short summary on success and the first offending
//! case on failure.

use std::collections::{HashMap, HashSet};
use std::io::{self, Write};
use std::time::Instant;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{ga_mul_fast, ga_mul_naive, GroupAlgebraElem, Gf64};
use crate::digraph::{transitive_closure, verify_st_solution, Instance, SolutionWalks};
use crate::exact::{solve_st_exact, solve_stu_exact, solve_tpe_exact, solve_variant_exact, ExactEngine, ExactLimits, Variant};
use crate::gadgets::{build_gadget, gen_fig3, solve_set_cover_exact, SetCoverInstance};
use crate::gen::{gen_random_with, RandomSpec};
use crate::solvers::{normalize_to_tree_like, solve_min_st, solve_st, solve_stu, Answer, SolveParams};
use crate::tpe::{build_circuit, expand_symbolic, has_multilinear_monomial, success_count, TpeInstance, SIZE_CONSTANT};
use crate::trees::{enumerate_free_trees, orient_tree, FreeTree, TreeCandidate};
use crate::util::DisjointSets;

pub type Outcome = Result<String, String>;

pub struct Criterion {
    pub id: u32,
    pub title: &'static str,
    pub run: fn() -> Outcome,
}

pub fn criteria() -> Vec<Criterion> {
    vec![
        Criterion { id: 1, title: "gadget equivalence with set cover", run: gadget_equivalence },
        Criterion { id: 2, title: "figure 1 gadget", run: figure_one_gadget },
        Criterion { id: 3, title: "pipeline agrees with exact oracle", run: pipeline_vs_oracle },
        Criterion { id: 4, title: "symbolic monomials match embeddings", run: symbolic_vs_embedding },
        Criterion { id: 5, title: "algebra kernels", run: algebra_kernels },
        Criterion { id: 6, title: "detection power", run: detection_power },
        Criterion { id: 7, title: "free tree and orientation counts", run: tree_counts },
        Criterion { id: 8, title: "circuit size is cubic", run: circuit_size },
        Criterion { id: 9, title: "normalization to tree-like solutions", run: normalization },
        Criterion { id: 10, title: "zigzag family", run: zigzag_family },
    ]
}

/// Runs every check, printing one PASS or FAIL line each. True when all pass.
pub fn run_all(out: &mut dyn Write) -> io::Result<bool> {
    let mut ok = true;
    for c in criteria() {
        let start = Instant::now();
        let res = (c.run)();
        let secs = start.elapsed().as_secs_f64();
        match res {
            Ok(msg) => writeln!(out, "PASS {:>2} {}: {} ({secs:.1}s)", c.id, c.title, msg)?,
            Err(msg) => {
                ok = false;
                writeln!(out, "FAIL {:>2} {}: {} ({secs:.1}s)", c.id, c.title, msg)?
            }
        }
        out.flush()?;
    }
    Ok(ok)
}

fn fail<T>(msg: String) -> Result<T, String> {
    Err(msg)
}

/// Multisets of nonempty item subsets, `m` sets over `n` items, that cover
/// every item.
fn set_systems(n: usize, m: usize) -> Vec<Vec<Vec<usize>>> {
    fn rec(n: usize, left: usize, min: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<Vec<usize>>>) {
        if left == 0 {
            let union = cur.iter().fold(0, |a, &b| a | b);
            if union == (1 << n) - 1 {
                out.push(cur.iter().map(|&s| (0..n).filter(|i| s >> i & 1 == 1).map(|i| i + 1).collect()).collect());
            }
            return;
        }
        for s in min..1u32 << n {
            cur.push(s);
            rec(n, left - 1, s, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, m, 1, &mut Vec::new(), &mut out);
    out
}

fn gadget_equivalence() -> Outcome {
    let limits = ExactLimits::default();
    let mut cases = 0;
    let mut yes = 0;
    for n in 1..=4 {
        for m in 1..=3 {
            for sets in set_systems(n, m) {
                for k in 1..=m {
                    let sc = SetCoverInstance::new(n, sets.clone(), k).map_err(|e| e.to_string())?;
                    let expect = solve_set_cover_exact(&sc).map_err(|e| e.to_string())?.is_some();
                    let g = build_gadget(&sc);
                    let (got, _) = solve_st_exact(g.instance(), &limits).map_err(|e| format!("{sc:?}: {e}"))?;
                    if got != expect {
                        return fail(format!("sets {sets:?}, k={k}: cover {expect}, gadget {got}"));
                    }
                    cases += 1;
                    yes += usize::from(got);
                }
            }
        }
    }
    Ok(format!("{cases} set systems, {yes} with a cover"))
}

pub fn figure_one_sets() -> Vec<Vec<usize>> {
    vec![vec![1, 3, 4], vec![2, 3], vec![2, 4, 5], vec![3, 4, 5]]
}

fn figure_one_gadget() -> Outcome {
    let params = SolveParams::default();
    let mut msgs = Vec::new();
    for (k, want) in [(2, Answer::Yes), (1, Answer::No)] {
        let sc = SetCoverInstance::new(5, figure_one_sets(), k).map_err(|e| e.to_string())?;
        let g = build_gadget(&sc);
        let inst = g.instance();
        let sources = (0..inst.n()).filter(|&v| inst.in_neighbors(v).is_empty()).count();
        if k == 2 && (inst.n(), sources, inst.total_ploughs()) != (52, 13, 13) {
            return fail(format!("order {}, sources {sources}, ploughs {}", inst.n(), inst.total_ploughs()));
        }
        let r = solve_st(inst, &params).map_err(|e| e.to_string())?;
        if r.answer != want {
            return fail(format!("k={k}: got {:?}", r.answer));
        }
        msgs.push(format!("k={k} {:?}", r.answer));
    }
    Ok(format!("order 52, 13 sources, 13 ploughs; {}", msgs.join(", ")))
}

/// Random instance with at most `max_f` facilities and `max_b` ploughs.
fn small_instance(rng: &mut ChaCha8Rng, max_n: usize, max_arcs: usize, max_f: usize, max_b: u32) -> Instance {
    let n = rng.gen_range(2..=max_n);
    let arcs = rng.gen_range(0..=max_arcs.min(n * (n - 1)));
    let spec = RandomSpec { n, arcs, facility_prob: 0.0, ploughs: 0, restricted: false };
    let bare = gen_random_with(&spec, rng.gen()).expect("parameters fit");
    let mut verts: Vec<usize> = (0..n).collect();
    verts.shuffle(rng);
    let f = rng.gen_range(0..=max_f.min(n));
    let mut facility = vec![false; n];
    for &v in &verts[..f] {
        facility[v] = true;
    }
    let mut ploughs = vec![0u32; n];
    for _ in 0..rng.gen_range(0..=max_b) {
        let v = rng.gen_range(0..n);
        if ploughs[v] + 1 < n as u32 {
            ploughs[v] += 1;
        }
    }
    Instance::new(n, bare.arcs().iter().copied(), facility, ploughs).expect("valid")
}

fn pipeline_vs_oracle() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let params = SolveParams { trials: 32, ..SolveParams::default() };
    let limits = ExactLimits::default();
    let (mut yes, mut worst) = (0, 0f64);
    for case in 0..500 {
        let inst = small_instance(&mut rng, 6, 10, 3, 3);
        let (truth, _) = solve_st_exact(&inst, &limits).map_err(|e| e.to_string())?;
        let params = SolveParams { seed: case, ..params.clone() };
        let r = solve_st(&inst, &params).map_err(|e| e.to_string())?;
        if r.answer != Answer::from_bool(truth) {
            return fail(format!("case {case}: exact {truth}, pipeline {:?}\n{inst}", r.answer));
        }
        if truth && r.failure_bound >= 1e-3 {
            return fail(format!("case {case}: failure bound {}", r.failure_bound));
        }
        yes += usize::from(truth);
        worst = worst.max(r.failure_bound);
    }
    Ok(format!("500 instances, {yes} yes, largest failure bound {worst:.2e}"))
}

fn small_trees(max_order: usize) -> Vec<TreeCandidate> {
    (1..=max_order)
        .flat_map(|o| enumerate_free_trees(o).expect("small order").collect::<Vec<_>>())
        .flat_map(|t| orient_tree(&t, false).collect::<Vec<_>>())
        .collect()
}

fn symbolic_vs_embedding() -> Outcome {
    let trees = small_trees(3);
    let mut cases = 0;
    let mut yes = 0;
    for n in 1..=4usize {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (0..n).filter(move |&v| v != u).map(move |v| (u, v))).collect();
        for mask in 0u32..1 << pairs.len() {
            if mask.count_ones() > 5 {
                continue;
            }
            let arcs: Vec<(usize, usize)> = (0..pairs.len()).filter(|i| mask >> i & 1 == 1).map(|i| pairs[i]).collect();
            for pattern in 0..4 {
                let mut facility = vec![false; n];
                let mut ploughs = vec![0u32; n];
                match pattern {
                    0 => {
                        facility[0] = true;
                        facility[n - 1] = true;
                        ploughs[0] = 1;
                    }
                    1 => {
                        facility[0] = true;
                        ploughs.iter_mut().for_each(|b| *b = 1);
                    }
                    2 => ploughs[n - 1] = 2,
                    _ => facility.iter_mut().for_each(|f| *f = true),
                }
                let cap = (n - 1) as u32;
                ploughs.iter_mut().for_each(|b| *b = (*b).min(cap));
                let host = Instance::new(n, arcs.iter().copied(), facility, ploughs).expect("valid");
                for tree in &trees {
                    let ti = TpeInstance::new(host.clone(), tree.clone());
                    let eta = tree.order();
                    let t = ti.terminal_count();
                    let c = build_circuit(&ti);
                    let p = expand_symbolic(&c, eta, t as u32).map_err(|e| e.to_string())?;
                    let sym = has_multilinear_monomial(&p, t as u32, eta);
                    let emb = solve_tpe_exact(&ti).map_err(|e| e.to_string())?.is_some();
                    if sym != emb {
                        return fail(format!("tree {}, symbolic {sym}, embedding {emb}\n{host}", tree.code()));
                    }
                    cases += 1;
                    yes += usize::from(emb);
                }
            }
        }
    }
    Ok(format!("{cases} host and tree pairs, {yes} embeddable"))
}

fn algebra_kernels() -> Outcome {
    for k in 1..=8u32 {
        for v in 0..1u32 << k {
            let x = GroupAlgebraElem::one(k).add(&GroupAlgebraElem::basis(k, v)).expect("same k");
            let sq = ga_mul_naive(&x, &x).expect("same k");
            if !sq.is_zero() {
                return fail(format!("(e + g_{v})^2 != 0 at k={k}"));
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for k in 1..=8u32 {
        for _ in 0..1000 {
            let mut rand_elem = || GroupAlgebraElem::from_coeffs((0..1usize << k).map(|_| Gf64(rng.gen())).collect());
            let (a, b) = (rand_elem(), rand_elem());
            if ga_mul_fast(&a, &b) != ga_mul_naive(&a, &b) {
                return fail(format!("fast and naive products differ at k={k}"));
            }
        }
    }
    Ok("squares vanish for k <= 8; 8000 products agree".into())
}

fn random_candidate(rng: &mut ChaCha8Rng, order: usize) -> TreeCandidate {
    let trees: Vec<FreeTree> = enumerate_free_trees(order).expect("small order").collect();
    let t = trees.choose(rng).expect("nonempty").clone();
    let orientation = rng.gen_range(0..1u32 << (order - 1));
    TreeCandidate::new(t, orientation)
}

fn detection_power() -> Outcome {
    const TRIALS: u32 = 200;
    // Under p = 0.1, P(X >= 31) < 0.01 for X ~ Bin(200, p); requiring a
    // frequency of 0.2 asks for 40.
    const NEED: u32 = 40;
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut found = 0;
    let mut lowest = TRIALS;
    for attempt in 0..100_000u64 {
        if found == 20 {
            break;
        }
        let n = rng.gen_range(4..=7);
        let spec = RandomSpec { n, arcs: rng.gen_range(n..=2 * n), facility_prob: 0.3, ploughs: 2, restricted: false };
        let host = transitive_closure(&gen_random_with(&spec, rng.gen()).expect("fits"));
        let eta = rng.gen_range(2..=5.min(n));
        let ti = TpeInstance::new(host, random_candidate(&mut rng, eta));
        if ti.terminal_count() == 0 || ti.terminal_count() > eta {
            continue;
        }
        if solve_tpe_exact(&ti).map_err(|e| e.to_string())?.is_none() {
            continue;
        }
        let c = build_circuit(&ti);
        let hits = success_count(&c, ti.terminal_count(), eta as u32, TRIALS, attempt).map_err(|e| e.to_string())?;
        if hits < NEED {
            return fail(format!("only {hits}/{TRIALS} trials succeeded on tree {}\n{}", ti.tree().code(), ti.host()));
        }
        lowest = lowest.min(hits);
        found += 1;
    }
    if found < 20 {
        return fail(format!("only {found} yes instances generated"));
    }
    Ok(format!("20 instances, lowest success count {lowest}/{TRIALS}"))
}

fn tree_counts() -> Outcome {
    let expect = [1, 1, 1, 2, 3, 6, 11, 23, 47];
    for (i, &want) in expect.iter().enumerate() {
        let order = i + 1;
        let trees: Vec<FreeTree> = enumerate_free_trees(order).map_err(|e| e.to_string())?.collect();
        if trees.len() != want {
            return fail(format!("order {order}: {} free trees, expected {want}", trees.len()));
        }
        if order <= 8 {
            for t in &trees {
                let c = orient_tree(t, false).count();
                if c != 1 << (order - 1) {
                    return fail(format!("order {order}: {c} orientations of {}", t.code()));
                }
            }
        }
    }
    Ok("1 1 1 2 3 6 11 23 47; 2^(order-1) orientations".into())
}

fn circuit_size() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut worst = 0f64;
    for n in [5usize, 10, 20, 30] {
        for round in 0..6 {
            let arcs = if round == 0 { n * (n - 1) } else { rng.gen_range(0..=n * (n - 1)) };
            let spec = RandomSpec { n, arcs, facility_prob: 0.3, ploughs: 3, restricted: false };
            let host = gen_random_with(&spec, rng.gen()).expect("fits");
            for eta in 1..=7 {
                let ti = TpeInstance::new(host.clone(), random_candidate(&mut rng, eta));
                let c = build_circuit(&ti);
                let bound = SIZE_CONSTANT * n * n * n;
                if c.gate_count() > bound {
                    return fail(format!("n={n}, order {eta}: {} gates above {bound}", c.gate_count()));
                }
                worst = worst.max(c.gate_count() as f64 / (n * n * n) as f64);
            }
        }
    }
    Ok(format!("gates <= {SIZE_CONSTANT} n^3; largest ratio {worst:.2}"))
}

fn start_multiset(sol: &SolutionWalks) -> HashMap<usize, usize> {
    let mut m = HashMap::new();
    for w in &sol.walks {
        *m.entry(w.start()).or_insert(0) += 1;
    }
    m
}

/// Strongly arc-distinct simple paths whose union is a tree on at most
/// `2|F| − 1` vertices containing every facility.
fn check_tree_like(inst: &Instance, sol: &SolutionWalks) -> Result<(), String> {
    let mut edges = HashSet::new();
    let mut verts = HashSet::new();
    for w in &sol.walks {
        let vs = w.vertices();
        if vs.iter().collect::<HashSet<_>>().len() != vs.len() {
            return Err(format!("walk {w} repeats a vertex"));
        }
        for p in vs.windows(2) {
            if !edges.insert((p[0].min(p[1]), p[0].max(p[1]))) {
                return Err(format!("edge {}-{} used twice", p[0], p[1]));
            }
            verts.insert(p[0]);
            verts.insert(p[1]);
        }
    }
    let facs = inst.facilities();
    if facs.len() >= 2 {
        if let Some(f) = facs.iter().find(|f| !verts.contains(f)) {
            return Err(format!("facility {f} not on the tree"));
        }
        let mut ds = DisjointSets::new(inst.n());
        if !edges.iter().all(|&(a, b)| ds.union(a, b)) || edges.len() + 1 != verts.len() {
            return Err("union is not a tree".into());
        }
        if verts.len() > 2 * facs.len() - 1 {
            return Err(format!("tree has {} vertices for {} facilities", verts.len(), facs.len()));
        }
    }
    Ok(())
}

fn normalization() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let limits = ExactLimits::default();
    let mut done = 0;
    let mut largest = 0;
    for _ in 0..100_000 {
        if done == 100 {
            break;
        }
        let n = rng.gen_range(3..=7);
        let spec = RandomSpec { n, arcs: rng.gen_range(n - 1..=2 * n), facility_prob: 0.5, ploughs: rng.gen_range(1..=3), restricted: true };
        let Ok(inst) = gen_random_with(&spec, rng.gen()) else { continue };
        let tc = transitive_closure(&inst);
        if tc.facilities().len() < 2 {
            continue;
        }
        let (yes, witness) = solve_st_exact(&tc, &limits).map_err(|e| e.to_string())?;
        let Some(w) = witness.filter(|_| yes) else { continue };
        let norm = normalize_to_tree_like(&tc, &w).map_err(|e| e.to_string())?;
        if let Err(d) = verify_st_solution(&tc, &norm) {
            return fail(format!("normalized walks do not verify: {d}\n{tc}"));
        }
        check_tree_like(&tc, &norm).map_err(|e| format!("{e}\n{tc}"))?;
        if start_multiset(&norm) != start_multiset(&w) {
            return fail(format!("start vertices changed\n{tc}"));
        }
        largest = largest.max(norm.walks.iter().map(|w| w.len()).sum::<usize>());
        done += 1;
    }
    if done < 100 {
        return fail(format!("only {done} witnesses generated"));
    }
    Ok(format!("100 witnesses normalized; longest total length {largest}"))
}

fn zigzag_family() -> Outcome {
    let params = SolveParams::default();
    let limits = ExactLimits::default();
    for n in [3usize, 5] {
        let inst = gen_fig3(n).map_err(|e| e.to_string())?;
        let exact = solve_variant_exact(&inst, Variant::MinSt, &limits).map_err(|e| e.to_string())?;
        let algebraic = solve_min_st(&inst, &params).map_err(|e| e.to_string())?.answer;
        if exact != Answer::Value(n - 1) || algebraic != Answer::Value(n - 1) {
            return fail(format!("n={n}: exact {exact:?}, algebraic {algebraic:?}"));
        }
    }
    let inst = gen_fig3(5).map_err(|e| e.to_string())?;
    for (k, want) in [(4, true), (3, false)] {
        let alg = solve_stu(&inst, k, &params).map_err(|e| e.to_string())?.answer;
        let (ex, _) = solve_stu_exact(&inst, k, &limits, ExactEngine::Auto).map_err(|e| e.to_string())?;
        if alg != Answer::from_bool(want) || ex != want {
            return fail(format!("unrestricted k={k}: algebraic {alg:?}, exact {ex}"));
        }
    }
    Ok("min ploughs 2 and 4 for n = 3, 5; k=4 yes and k=3 no".into())
}
