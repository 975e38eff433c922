use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::digraph::{is_transitively_closed, parse_instance, verify_st_solution, Walk};
use crate::exact::{solve_st_exact, solve_stu_exact, solve_variant_exact, Variant};
use crate::gadgets::{build_gadget, gen_fig3, SetCoverInstance};
use crate::gen::{gen_random_with, RandomSpec};

const TOY1: &str = "st 3 2\nv 0 1 1\nv 1 0 0\nv 2 1 0\na 0 1\na 1 2\n";
const TOY2: &str = "st 3 2\nv 0 1 1\nv 1 0 0\nv 2 1 0\na 1 0\na 1 2\n";

fn params() -> SolveParams {
    SolveParams::default()
}

fn random_instance(rng: &mut ChaCha8Rng, max_n: usize, max_arcs: usize, max_b: u32) -> Instance {
    let n = rng.gen_range(2..=max_n);
    let spec = RandomSpec {
        n,
        arcs: rng.gen_range(0..=max_arcs.min(n * (n - 1))),
        facility_prob: 0.45,
        ploughs: rng.gen_range(0..=max_b.min(n as u32 - 1)),
        restricted: false,
    };
    gen_random_with(&spec, rng.gen()).unwrap()
}

fn walks(ws: &[&[usize]]) -> SolutionWalks {
    SolutionWalks::new(ws.iter().map(|w| Walk::new(w.to_vec()).unwrap()).collect())
}

#[test]
fn restricted_toys() {
    let toy1 = parse_instance(TOY1).unwrap();
    let toy2 = parse_instance(TOY2).unwrap();
    assert_eq!(solve_all_st(&toy1, &params()).unwrap().answer, Answer::Yes);
    let no = solve_all_st(&toy2, &params()).unwrap();
    assert_eq!(no.answer, Answer::No);
    let single = toy2.with_facilities(vec![true, false, false]).unwrap();
    assert_eq!(solve_all_st(&single, &params()).unwrap().answer, Answer::Yes);
    let unrestricted = toy1.with_ploughs(vec![0, 1, 0]).unwrap();
    assert_eq!(solve_all_st(&unrestricted, &params()), Err(SolveError::NotRestricted));
}

#[test]
fn failure_bound_reflects_rejections() {
    let toy1 = parse_instance(TOY1).unwrap();
    let toy2 = parse_instance(TOY2).unwrap();
    let yes = solve_st(&toy1, &params()).unwrap();
    assert_eq!(yes.failure_bound, 0.0);
    assert!(yes.candidates_tested >= 1);
    // On toy-2 the structural precheck rules out every candidate, so the
    // answer is certain.
    let no = solve_st(&toy2, &params()).unwrap();
    assert_eq!(no.answer, Answer::No);
    assert_eq!(no.detections_run, 0);
    assert_eq!(no.failure_bound, 0.0);
    // Here detections run and reject.
    let cycle = parse_instance("st 3 3\nv 0 1 1\nv 1 1 0\nv 2 1 0\na 0 1\na 1 2\na 2 1\n").unwrap();
    let r = solve_st(&cycle, &SolveParams { trials: 8, ..params() }).unwrap();
    if r.answer == Answer::No && r.detections_run > 0 {
        assert!((r.failure_bound - miss_probability(8)).abs() < 1e-12);
    }
    assert!(miss_probability(32) < 1e-3);
}

#[test]
fn figure_one_gadget_via_fallback() {
    let sets = vec![vec![1, 3, 4], vec![2, 3], vec![2, 4, 5], vec![3, 4, 5]];
    for (k, want) in [(2, Answer::Yes), (1, Answer::No)] {
        let g = build_gadget(&SetCoverInstance::new(5, sets.clone(), k).unwrap());
        let r = solve_st(g.instance(), &params()).unwrap();
        assert_eq!(r.answer, want);
        if let Some(w) = r.witness {
            assert_eq!(verify_st_solution(g.instance(), &w), Ok(()));
        }
    }
}

#[test]
fn beyond_limits_is_an_error() {
    // 150 bases outside the facility set need huge candidate trees, and the
    // instance is too large for the exact engines.
    let inst = gen_fig3(301).unwrap();
    assert!(matches!(solve_st(&inst, &params()), Err(SolveError::BeyondLimits { .. })));
}

#[test]
fn min_and_max_on_toys() {
    let toy1 = parse_instance(TOY1).unwrap();
    let toy2 = parse_instance(TOY2).unwrap();
    assert_eq!(solve_min_st(&toy1, &params()).unwrap().answer, Answer::Value(1));
    assert_eq!(solve_min_st(&toy2, &params()).unwrap().answer, Answer::Infeasible);
    assert_eq!(solve_max_st(&toy1, &params()).unwrap().answer, Answer::Value(2));
    assert_eq!(solve_max_st(&toy2, &params()).unwrap().answer, Answer::Value(1));
    let none = toy1.with_facilities(vec![false; 3]).unwrap();
    assert_eq!(solve_max_st(&none, &params()).unwrap().answer, Answer::Value(0));
    let one = toy1.with_facilities(vec![false, true, false]).unwrap();
    assert_eq!(solve_min_st(&one, &params()).unwrap().answer, Answer::Value(0));
}

#[test]
fn zigzag_optimum() {
    for n in [3, 5] {
        let inst = gen_fig3(n).unwrap();
        assert_eq!(solve_min_st(&inst, &params()).unwrap().answer, Answer::Value(n - 1));
    }
    let five = gen_fig3(5).unwrap();
    assert_eq!(solve_stu(&five, 4, &params()).unwrap().answer, Answer::Yes);
    assert_eq!(solve_stu(&five, 3, &params()).unwrap().answer, Answer::No);
    let lone = five.with_facilities(vec![true, false, false, false, false]).unwrap();
    assert_eq!(solve_stu(&lone, 0, &params()).unwrap().answer, Answer::Yes);
}

#[test]
fn st_matches_exact_on_random_instances() {
    let mut rng = ChaCha8Rng::seed_from_u64(41);
    for case in 0..300 {
        let inst = random_instance(&mut rng, 6, 10, 3);
        let (truth, _) = solve_st_exact(&inst, &ExactLimits::default()).unwrap();
        let r = solve_st(&inst, &SolveParams { seed: case, ..params() }).unwrap();
        assert_eq!(r.answer, Answer::from_bool(truth), "case {case}\n{inst}");
    }
}

#[test]
fn optimization_matches_exact() {
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    for case in 0..150 {
        let inst = random_instance(&mut rng, 5, 8, 3);
        let p = SolveParams { seed: case, ..params() };
        let limits = ExactLimits::default();
        let min = solve_min_st(&inst, &p).unwrap().answer;
        assert_eq!(min, solve_variant_exact(&inst, Variant::MinSt, &limits).unwrap(), "min, case {case}\n{inst}");
        if let Answer::Value(v) = min {
            assert!(v as u32 <= inst.total_ploughs() || inst.facilities().len() <= 1);
        }
        let max = solve_max_st(&inst, &p).unwrap().answer;
        assert_eq!(max, solve_variant_exact(&inst, Variant::MaxSt, &limits).unwrap(), "max, case {case}\n{inst}");
    }
}

#[test]
fn max_st_is_monotone_in_arcs() {
    let mut rng = ChaCha8Rng::seed_from_u64(43);
    for case in 0..60 {
        let inst = random_instance(&mut rng, 5, 6, 3);
        let n = inst.n();
        let missing: Vec<(usize, usize)> =
            (0..n).flat_map(|u| (0..n).map(move |v| (u, v))).filter(|&(u, v)| u != v && !inst.has_arc(u, v)).collect();
        if missing.is_empty() {
            continue;
        }
        let extra = missing[rng.gen_range(0..missing.len())];
        let bigger = Instance::new(
            n,
            inst.arcs().iter().copied().chain([extra]),
            inst.facility_flags().to_vec(),
            inst.plough_counts().to_vec(),
        )
        .unwrap();
        let p = SolveParams { seed: case, ..params() };
        let (Answer::Value(a), Answer::Value(b)) =
            (solve_max_st(&inst, &p).unwrap().answer, solve_max_st(&bigger, &p).unwrap().answer)
        else {
            panic!("max-st always has a value")
        };
        assert!(a <= b, "case {case}");
    }
}

#[test]
fn stu_matches_exact_including_agent_clearing() {
    let mut rng = ChaCha8Rng::seed_from_u64(44);
    for case in 0..120 {
        let mut inst = random_instance(&mut rng, 5, 7, 0);
        if case % 2 == 0 {
            inst = inst.with_facilities(vec![true; inst.n()]).unwrap();
        }
        let k = rng.gen_range(0..=3);
        let (truth, _) = solve_stu_exact(&inst, k, &ExactLimits::default(), ExactEngine::Auto).unwrap();
        let got = solve_stu(&inst, k, &SolveParams { seed: case, ..params() }).unwrap().answer;
        assert_eq!(got, Answer::from_bool(truth), "case {case}, k={k}\n{inst}");
    }
}

#[test]
fn jobs_do_not_change_answers() {
    let mut rng = ChaCha8Rng::seed_from_u64(45);
    for case in 0..40 {
        let inst = random_instance(&mut rng, 6, 10, 3);
        let one = solve_st(&inst, &SolveParams { seed: case, ..params() }).unwrap();
        let three = solve_st(&inst, &SolveParams { seed: case, jobs: 3, ..params() }).unwrap();
        assert_eq!(one.answer, three.answer);
        assert_eq!(one.candidates_tested, three.candidates_tested);
    }
}

#[test]
fn exact_threshold_returns_witness() {
    let toy1 = parse_instance(TOY1).unwrap();
    let r = solve_st(&toy1, &SolveParams { exact_threshold: 10, ..params() }).unwrap();
    assert_eq!(r.answer, Answer::Yes);
    assert_eq!(verify_st_solution(&toy1, &r.witness.unwrap()), Ok(()));
}

#[test]
fn shortcut_through_non_terminal() {
    let tc = parse_instance("st 3 3\nv 0 1 1\nv 1 0 0\nv 2 1 0\na 0 1\na 0 2\na 1 2\n").unwrap();
    assert!(is_transitively_closed(&tc));
    let out = normalize_to_tree_like(&tc, &walks(&[&[0, 1, 2]])).unwrap();
    assert_eq!(out, walks(&[&[0, 2]]));
}

#[test]
fn tree_like_input_is_a_fixpoint() {
    let tc = parse_instance("st 3 3\nv 0 1 1\nv 1 1 0\nv 2 1 0\na 0 1\na 0 2\na 1 2\n").unwrap();
    let sol = walks(&[&[0, 1, 2]]);
    assert!(is_tree_like(&tc, &sol));
    assert_eq!(normalize_to_tree_like(&tc, &sol).unwrap(), sol);
}

#[test]
fn shared_arc_is_rewritten() {
    let tc = parse_instance("st 3 3\nv 0 1 2\nv 1 1 0\nv 2 1 0\na 0 1\na 0 2\na 1 2\n").unwrap();
    let sol = walks(&[&[0, 1, 2], &[0, 1]]);
    assert!(!is_tree_like(&tc, &sol));
    let out = normalize_to_tree_like(&tc, &sol).unwrap();
    assert!(is_tree_like(&tc, &out));
    assert_eq!(verify_st_solution(&tc, &out), Ok(()));
}

#[test]
fn normalization_preconditions() {
    let open = parse_instance(TOY1).unwrap();
    let sol = walks(&[&[0, 1, 2]]);
    assert_eq!(normalize_to_tree_like(&open, &sol), Err(NormalizeError::NotClosed));
    let tc = crate::digraph::transitive_closure(&open);
    assert!(matches!(normalize_to_tree_like(&tc, &walks(&[&[0, 2, 1]])), Err(NormalizeError::NotASolution(_))));
    let unrestricted = tc.with_ploughs(vec![0, 1, 0]).unwrap();
    assert_eq!(normalize_to_tree_like(&unrestricted, &walks(&[&[1, 2]])), Err(NormalizeError::NotRestricted));
}

#[test]
fn normalized_oracle_witnesses_are_tree_like() {
    let mut rng = ChaCha8Rng::seed_from_u64(46);
    let mut done = 0;
    while done < 60 {
        let n = rng.gen_range(3..=6);
        let spec = RandomSpec { n, arcs: rng.gen_range(n..=2 * n), facility_prob: 0.6, ploughs: 2, restricted: true };
        let Ok(inst) = gen_random_with(&spec, rng.gen()) else { continue };
        let tc = crate::digraph::transitive_closure(&inst);
        let Some(w) = solve_st_exact(&tc, &ExactLimits::default()).unwrap().1 else { continue };
        let out = normalize_to_tree_like(&tc, &w).unwrap();
        assert!(is_tree_like(&tc, &out), "{tc}\n{out:?}");
        assert_eq!(verify_st_solution(&tc, &out), Ok(()));
        let facs = tc.facilities().len();
        if facs >= 2 {
            assert!(union_vertices(&out).len() <= 2 * facs - 1);
        }
        done += 1;
    }
}
