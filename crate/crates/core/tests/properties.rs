use gallai_core::formulas::{self, FormulaKind};
use gallai_core::{format, gallai, ColoredComplete, StarUnionPattern, Threads};
use proptest::prelude::*;

fn coloring() -> impl Strategy<Value = ColoredComplete> {
    (1usize..=20, 1usize..=6).prop_flat_map(|(order, k)| {
        prop::collection::vec(1..=k as u8, order * (order - 1) / 2)
            .prop_map(move |rows| ColoredComplete::from_rows(order, k, &rows).unwrap())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(400))]

    #[test]
    fn file_round_trip(g in coloring()) {
        let text = format::emit(&g);
        prop_assert_eq!(format::parse(&text).unwrap(), g);
    }

    #[test]
    fn dropping_an_edge_line_is_rejected(g in coloring(), pick in any::<prop::sample::Index>()) {
        prop_assume!(g.order() >= 2);
        let text = format::emit(&g);
        let mut lines: Vec<&str> = text.lines().collect();
        let edge_lines = lines.len() - 2;
        lines.remove(2 + pick.index(edge_lines));
        prop_assert!(format::parse(&lines.join("\n")).is_err());
    }

    #[test]
    fn degrees_partition_the_neighbourhood(g in coloring()) {
        for v in 0..g.order() {
            let total: usize = (1..=g.num_colors()).map(|c| g.color_degree(v, c).unwrap()).sum();
            prop_assert_eq!(total, g.order() - 1);
        }
    }

    #[test]
    fn random_gallai_colorings_partition(seed in any::<u64>(), order in 2usize..=30, k in 1usize..=4, depth in 0usize..=4) {
        let g = gallai::random_gallai(seed, order, k, depth).unwrap();
        prop_assert_eq!(g.find_rainbow_triangle(), None);
        let p = gallai::find_gallai_partition(&g).unwrap().expect("Gallai colorings partition");
        prop_assert!(gallai::verify_partition(&g, &p).unwrap());
        prop_assert!(p.num_parts() >= 2);
        let reduced = gallai::reduced_graph(&g, &p).unwrap();
        prop_assert!(reduced.colors_used().len() <= 2);
        prop_assert_eq!(reduced.graph.order(), p.num_parts());
    }

    #[test]
    fn partition_is_thread_independent(seed in any::<u64>(), order in 2usize..=24) {
        let g = gallai::random_gallai(seed, order, 4, 3).unwrap();
        prop_assert_eq!(
            gallai::find_gallai_partition(&g).unwrap(),
            gallai::find_gallai_partition_with(&g, Threads(8)).unwrap()
        );
    }

    #[test]
    fn detector_certificates_check_out(g in coloring(), a in 1usize..=4, b in 1usize..=4) {
        let pat = StarUnionPattern::new(a, b).unwrap();
        if let Some(e) = g.find_mono_star_union(pat) {
            prop_assert!(e.is_valid_in(&g, pat));
        }
        if let Some([x, y, z]) = g.find_rainbow_triangle() {
            let cs = [g.color(x, y), g.color(x, z), g.color(y, z)];
            prop_assert!(cs[0] != cs[1] && cs[0] != cs[2] && cs[1] != cs[2]);
        }
    }
}

#[test]
fn general_bounds_are_ordered() {
    for k in 1..=10 {
        for n in 1..=100 {
            for m in 1..=n {
                let r = formulas::gr_general_bounds(k, n, m);
                assert_eq!(r.kind, FormulaKind::Bounds);
                assert!(r.lower <= r.upper, "({k},{n},{m})");
            }
        }
    }
}

#[test]
fn formulas_are_affine_in_k() {
    for k in 1..=10u64 {
        for n in 1..=60 {
            assert_eq!(
                formulas::gr_equal(k + 1, n).value().unwrap() - formulas::gr_equal(k, n).value().unwrap(),
                1
            );
            assert_eq!(formulas::gr_single_star(k + 1, n).value(), formulas::gr_single_star(k, n).value());
            for m in 1..=n {
                let a = formulas::gr_small_m(k, n, m).value().unwrap();
                assert_eq!(formulas::gr_small_m(k + 1, n, m).value().unwrap() - a, 1);
                let (g0, g1) = (formulas::gr_general_bounds(k, n, m), formulas::gr_general_bounds(k + 1, n, m));
                assert_eq!((g1.lower - g0.lower, g1.upper - g0.upper), (1, 1));
                assert_eq!(
                    formulas::general_construction_bound(k + 1, n, m) - formulas::general_construction_bound(k, n, m),
                    1
                );
            }
        }
    }
}

#[test]
fn small_m_and_general_ranges_are_disjoint() {
    let mut small = 0;
    let mut general = 0;
    for n in 1..=1000u64 {
        for m in 1..=n {
            let a = formulas::gr_small_m(3, n, m).guards_satisfied();
            let b = formulas::gr_general_bounds(3, n, m).guards_satisfied();
            assert!(!(a && b), "({n},{m})");
            small += a as usize;
            general += b as usize;
        }
    }
    assert!(small > 0 && general > 0);
}

#[test]
fn small_m_guards_first_hold_at_38() {
    let first = (1..=100u64).find(|&n| (1..=n).any(|m| formulas::gr_small_m(3, n, m).guards_satisfied()));
    assert_eq!(first, Some(38));
}

#[test]
fn exact_theorems_agree_with_the_general_lower_bound() {
    // where both apply, the general lower bound never exceeds an exact value
    for k in 3..=6u64 {
        for n in (9..=80).step_by(2) {
            let eq = formulas::gr_equal(k, n).value().unwrap();
            assert!(formulas::gr_general_bounds(k, n, n).lower <= eq);
        }
    }
}
