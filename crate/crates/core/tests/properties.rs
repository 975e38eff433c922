use proptest::prelude::*;

use snowteam::algebra::{ga_mul_fast, ga_mul_naive, gf_mul, zval_mul, AlgebraValue, GroupAlgebraElem, Gf64};
use snowteam::digraph::{parse_instance, parse_walks, serialize_instance, serialize_walks, transitive_closure, verify_st_solution, Instance};
use snowteam::exact::{solve_st_exact, ExactLimits};
use snowteam::gadgets::{build_gadget, cover_to_walks, solve_set_cover_exact, walks_to_cover, SetCoverInstance};
use snowteam::gen::{gen_random_with, RandomSpec};
use snowteam::solvers::{is_tree_like, normalize_to_tree_like};
use snowteam::trees::{enumerate_free_trees, parse_tree_code, plough_demand, TreeCandidate};

fn elem(k: u32) -> impl Strategy<Value = GroupAlgebraElem> {
    prop::collection::vec(any::<u64>(), 1usize << k).prop_map(|v| GroupAlgebraElem::from_coeffs(v.into_iter().map(Gf64).collect()))
}

fn instance() -> impl Strategy<Value = Instance> {
    (2usize..=6, any::<u64>(), 0.0f64..=1.0, 0u32..=3).prop_flat_map(|(n, seed, p, b)| {
        (0..=n * (n - 1)).prop_map(move |arcs| {
            let spec = RandomSpec { n, arcs, facility_prob: p, ploughs: b.min(n as u32 - 1), restricted: false };
            gen_random_with(&spec, seed).unwrap()
        })
    })
}

fn set_cover() -> impl Strategy<Value = SetCoverInstance> {
    (1usize..=4, 1usize..=3).prop_flat_map(|(n, m)| {
        (prop::collection::vec(1u32..1 << n, m), 1..=m).prop_filter_map("must cover", move |(masks, k)| {
            let sets = masks.iter().map(|&s| (1..=n).filter(|i| s >> (i - 1) & 1 == 1).collect()).collect();
            SetCoverInstance::new(n, sets, k).ok()
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_multiplication_laws(a: u64, b: u64, c: u64) {
        let (a, b, c) = (Gf64(a), Gf64(b), Gf64(c));
        prop_assert_eq!(gf_mul(a, b), gf_mul(b, a));
        prop_assert_eq!(gf_mul(a, b + c), gf_mul(a, b) + gf_mul(a, c));
        prop_assert_eq!(gf_mul(gf_mul(a, b), c), gf_mul(a, gf_mul(b, c)));
        prop_assert_eq!(gf_mul(a, Gf64::ONE), a);
    }

    #[test]
    fn group_algebra_laws((a, b, c) in (1u32..=5).prop_flat_map(|k| (elem(k), elem(k), elem(k)))) {
        let ab = ga_mul_naive(&a, &b).unwrap();
        prop_assert_eq!(&ab, &ga_mul_naive(&b, &a).unwrap());
        prop_assert_eq!(&ab, &ga_mul_fast(&a, &b).unwrap());
        let left = ga_mul_naive(&ab, &c).unwrap();
        let right = ga_mul_naive(&a, &ga_mul_naive(&b, &c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
        let dist = ga_mul_naive(&a, &b.add(&c).unwrap()).unwrap();
        prop_assert_eq!(dist, ab.add(&ga_mul_naive(&a, &c).unwrap()).unwrap());
    }

    #[test]
    fn truncated_products_commute((a, b) in (1u32..=3).prop_flat_map(|k| (prop::collection::vec(elem(k), 1..4), prop::collection::vec(elem(k), 1..4)))) {
        let x = AlgebraValue::from_parts(a, 3);
        let y = AlgebraValue::from_parts(b, 3);
        prop_assert_eq!(zval_mul(&x, &y).unwrap(), zval_mul(&y, &x).unwrap());
    }

    #[test]
    fn instance_text_round_trips(inst in instance()) {
        let text = serialize_instance(&inst);
        let back = parse_instance(&text).unwrap();
        prop_assert_eq!(serialize_instance(&back), text);
        prop_assert_eq!(back, inst);
    }

    #[test]
    fn closure_is_idempotent(inst in instance()) {
        let tc = transitive_closure(&inst);
        prop_assert_eq!(transitive_closure(&tc), tc.clone());
        for &(u, v) in inst.arcs() {
            prop_assert!(tc.has_arc(u, v));
        }
    }

    #[test]
    fn witnesses_verify_and_round_trip(inst in instance()) {
        let (yes, w) = solve_st_exact(&inst, &ExactLimits::default()).unwrap();
        prop_assert_eq!(yes, w.is_some());
        if let Some(w) = w {
            prop_assert_eq!(verify_st_solution(&inst, &w), Ok(()));
            prop_assert_eq!(parse_walks(&serialize_walks(&w)).unwrap(), w);
        }
    }

    #[test]
    fn normalization_yields_tree_like_walks(inst in instance()) {
        let restricted = inst.with_ploughs(
            (0..inst.n()).map(|v| if inst.is_facility(v) { inst.ploughs(v) } else { 0 }).collect()
        ).unwrap();
        let tc = transitive_closure(&restricted);
        if let (true, Some(w)) = solve_st_exact(&tc, &ExactLimits::default()).unwrap() {
            let out = normalize_to_tree_like(&tc, &w).unwrap();
            prop_assert!(is_tree_like(&tc, &out));
            prop_assert_eq!(verify_st_solution(&tc, &out), Ok(()));
            let mut a: Vec<usize> = w.starts();
            let mut b: Vec<usize> = out.starts();
            a.sort_unstable();
            b.sort_unstable();
            prop_assert_eq!(a, b);
        }
    }

    #[test]
    fn covers_round_trip_through_gadget(sc in set_cover()) {
        let g = build_gadget(&sc);
        if let Some(cover) = solve_set_cover_exact(&sc).unwrap() {
            let walks = cover_to_walks(&g, &cover).unwrap();
            prop_assert_eq!(verify_st_solution(g.instance(), &walks), Ok(()));
            let back = walks_to_cover(&g, &walks).unwrap();
            prop_assert!(sc.is_cover(&back));
            prop_assert_eq!(back, cover);
        }
    }

    #[test]
    fn tree_codes_round_trip(order in 1usize..=7, pick: prop::sample::Index, orientation: u32) {
        let trees: Vec<_> = enumerate_free_trees(order).unwrap().collect();
        let t = pick.get(&trees).clone();
        let c = TreeCandidate::new(t, orientation & ((1 << (order - 1)) - 1));
        prop_assert_eq!(parse_tree_code(&c.code()).unwrap(), c.clone());
        let demand = plough_demand(order, c.arcs()).unwrap();
        prop_assert_eq!(demand.iter().sum::<u32>(), c.total_demand());
        prop_assert!(c.total_demand() as usize <= order.saturating_sub(1));
    }
}
