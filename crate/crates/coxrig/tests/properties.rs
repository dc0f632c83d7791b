//! Randomized structural laws over small matrices.

use proptest::prelude::*;

use coxrig::class::check_class_membership;
use coxrig::finite::{coxeter_order, is_spherical, GroupOrder};
use coxrig::gf2::{odd_components, pi_image_with, Gf2Subspace};
use coxrig::iso::diagram_isomorphic;
use coxrig::matrix::{CoxeterMatrix, GeneratorSubset, Label};
use coxrig::parse::{parse_coxeter_file, serialize};

fn arb_label() -> impl Strategy<Value = Label> {
    prop_oneof![
        3 => (2u32..=8).prop_map(Label::Finite),
        1 => Just(Label::Finite(12)),
        2 => Just(Label::Infinite),
    ]
}

prop_compose! {
    fn arb_matrix()(rank in 1usize..=5)(
        rank in Just(rank),
        labels in proptest::collection::vec(arb_label(), rank * (rank - 1) / 2),
        with_names in any::<bool>(),
    ) -> CoxeterMatrix {
        let mut it = labels.into_iter();
        let m = CoxeterMatrix::from_fn(rank, |_, _| it.next().expect("enough labels"));
        if with_names {
            let names = (0..rank).map(|i| format!("s{i}")).collect();
            m.with_names(names).expect("distinct names")
        } else {
            m
        }
    }
}

prop_compose! {
    fn matrix_and_permutation()(m in arb_matrix())(
        m in Just(m.clone()),
        perm in Just((0..m.rank()).collect::<Vec<_>>()).prop_shuffle(),
    ) -> (CoxeterMatrix, Vec<usize>) {
        (m, perm)
    }
}

fn relabel(m: &CoxeterMatrix, perm: &[usize]) -> CoxeterMatrix {
    CoxeterMatrix::from_fn(m.rank(), |i, j| m.entry(perm[i], perm[j]))
}

fn mask_subset(mask: u32, rank: usize) -> GeneratorSubset {
    (0..rank).filter(|&i| mask >> i & 1 == 1).collect()
}

proptest! {
    #[test]
    fn parse_inverts_serialize(m in arb_matrix()) {
        let text = serialize(&m);
        let back = parse_coxeter_file(&text).expect("serializer output parses");
        prop_assert_eq!(back, m);
    }

    #[test]
    fn serializer_is_a_fixed_point(m in arb_matrix()) {
        let once = serialize(&m);
        let twice = serialize(&parse_coxeter_file(&once).unwrap());
        prop_assert_eq!(once, twice);
    }

    #[test]
    fn relabeling_is_isomorphic((m, perm) in matrix_and_permutation()) {
        let shuffled = relabel(&m, &perm);
        let bijection = diagram_isomorphic(&m, &shuffled);
        prop_assert!(bijection.is_some());
        prop_assert!(bijection.unwrap().preserves_labels(&m, &shuffled));
        // And in the other direction.
        prop_assert!(diagram_isomorphic(&shuffled, &m).is_some());
    }

    #[test]
    fn class_report_is_relabeling_invariant((m, perm) in matrix_and_permutation()) {
        let shuffled = relabel(&m, &perm);
        let a = check_class_membership(&m);
        let b = check_class_membership(&shuffled);
        prop_assert_eq!(a.in_class, b.in_class);
        prop_assert_eq!(a.conditions, b.conditions);
        prop_assert_eq!(a.evenness, b.evenness);
        prop_assert_eq!(a.odd_pairs.len(), b.odd_pairs.len());
        prop_assert_eq!(a.s_bar.len(), b.s_bar.len());
        // The core maps onto the core: perm[i] in m plays i in shuffled.
        let mapped: GeneratorSubset = b.s_bar.iter().map(|i| perm[i]).collect();
        prop_assert_eq!(mapped, a.s_bar.clone());
    }

    #[test]
    fn sphericality_closed_downward(m in arb_matrix(), mask in any::<u32>()) {
        let rank = m.rank();
        let subset = mask_subset(mask & ((1 << rank) - 1), rank);
        if is_spherical(&m, &subset) {
            for drop in subset.iter() {
                let smaller: GeneratorSubset = subset.iter().filter(|&i| i != drop).collect();
                prop_assert!(is_spherical(&m, &smaller));
            }
        }
    }

    #[test]
    fn pi_image_monotone(m in arb_matrix(), mask in any::<u32>(), submask in any::<u32>()) {
        let rank = m.rank();
        let full = mask & ((1 << rank) - 1);
        let sub = submask & full;
        let components = odd_components(&m);
        let img_sub = pi_image_with(&components, &mask_subset(sub, rank));
        let img_full = pi_image_with(&components, &mask_subset(full, rank));
        prop_assert!(img_sub.is_subspace_of(&img_full));
    }

    #[test]
    fn direct_sum_multiplies_orders(a in arb_matrix(), b in arb_matrix()) {
        let sum = a.direct_sum(&b);
        match (coxeter_order(&a), coxeter_order(&b), coxeter_order(&sum)) {
            (GroupOrder::Finite(x), GroupOrder::Finite(y), GroupOrder::Finite(z)) => {
                prop_assert_eq!(x * y, z);
            }
            (_, _, GroupOrder::Finite(_)) => {
                prop_assert!(false, "sum finite while a factor is infinite");
            }
            _ => {}
        }
    }

    #[test]
    fn induced_full_is_identity(m in arb_matrix()) {
        let full = GeneratorSubset::full(m.rank());
        prop_assert_eq!(m.induced_submatrix(&full), m);
    }

    #[test]
    fn subspace_reduction_is_canonical(
        dim in 1usize..=6,
        vectors in proptest::collection::vec(any::<u64>(), 0..6),
        extra in any::<prop::sample::Index>(),
    ) {
        let space = Gf2Subspace::from_spanning(dim, vectors.clone());
        // Adding a vector already in the span changes nothing.
        if space.dim() > 0 {
            let pick = space.basis()[extra.index(space.dim())];
            let mut augmented = vectors.clone();
            augmented.push(pick);
            prop_assert_eq!(Gf2Subspace::from_spanning(dim, augmented), space.clone());
        }
        // Reversal of the spanning set changes nothing.
        let mut reversed = vectors;
        reversed.reverse();
        prop_assert_eq!(Gf2Subspace::from_spanning(dim, reversed), space);
    }

    #[test]
    fn subspace_intersection_is_a_lower_bound(
        dim in 1usize..=6,
        left in proptest::collection::vec(any::<u64>(), 0..5),
        right in proptest::collection::vec(any::<u64>(), 0..5),
    ) {
        let a = Gf2Subspace::from_spanning(dim, left);
        let b = Gf2Subspace::from_spanning(dim, right);
        let meet = a.intersection(&b).unwrap();
        prop_assert!(meet.is_subspace_of(&a));
        prop_assert!(meet.is_subspace_of(&b));
        prop_assert!(meet.dim() <= a.dim().min(b.dim()));
        // Commutes.
        prop_assert_eq!(meet, b.intersection(&a).unwrap());
    }

    #[test]
    fn image_of_intersection_sits_under_intersection_of_images(
        m in arb_matrix(),
        mask_a in any::<u32>(),
        mask_b in any::<u32>(),
    ) {
        let rank = m.rank();
        let a = mask_subset(mask_a & ((1 << rank) - 1), rank);
        let b = mask_subset(mask_b & ((1 << rank) - 1), rank);
        let components = odd_components(&m);
        let img_meet = pi_image_with(&components, &a.intersection(&b));
        let meet_img = pi_image_with(&components, &a)
            .intersection(&pi_image_with(&components, &b))
            .unwrap();
        prop_assert!(img_meet.is_subspace_of(&meet_img));
    }

    #[test]
    fn parser_never_panics(input in "\\PC*") {
        let _ = parse_coxeter_file(&input);
    }

    #[test]
    fn parser_never_panics_on_format_shaped_noise(
        rank in 0usize..100,
        lines in proptest::collection::vec(
            (0usize..100, 0usize..100, prop_oneof![
                Just("inf".to_string()),
                Just("0".to_string()),
                Just("-3".to_string()),
                (0u64..u64::MAX).prop_map(|v| v.to_string()),
            ]),
            0..8,
        ),
        garnish in prop::option::of("[ \\t#a-z0-9]{0,20}"),
    ) {
        let mut text = format!("rank {rank}\n");
        for (i, j, v) in lines {
            text.push_str(&format!("m {i} {j} {v}\n"));
        }
        if let Some(tail) = garnish {
            text.push_str(&tail);
        }
        if let Ok(matrix) = parse_coxeter_file(&text) {
            // Whatever gets accepted must round-trip.
            let back = parse_coxeter_file(&serialize(&matrix)).unwrap();
            prop_assert_eq!(back, matrix);
        }
    }
}
