use proptest::prelude::*;

use preprim::classify::{classify, overgroup_check, preprimitivity, Caps};
use preprim::{Perm, PermGroup};

fn perm(n: usize) -> impl Strategy<Value = Perm> {
    Just((0..n as u32).collect::<Vec<_>>())
        .prop_shuffle()
        .prop_map(|v| Perm::from_images(v).unwrap())
}

fn gens(n: usize) -> impl Strategy<Value = Vec<Perm>> {
    prop::collection::vec(perm(n), 1..=3)
}

fn degree_and_gens() -> impl Strategy<Value = (usize, Vec<Perm>, Perm)> {
    (3usize..=8).prop_flat_map(|n| (Just(n), gens(n), perm(n)))
}

/// Element of S_a ≀ S_b on `a·b` points, block `j` being `j·a .. (j+1)·a`.
fn wreath_element(a: usize, b: usize) -> impl Strategy<Value = Perm> {
    (prop::collection::vec(perm(a), b), perm(b)).prop_map(move |(base, top)| {
        let images = (0..a * b)
            .map(|p| (top.apply((p / a) as u32) as usize * a + base[p / a].apply((p % a) as u32) as usize) as u32)
            .collect();
        Perm::from_images(images).unwrap()
    })
}

fn imprimitive_pair() -> impl Strategy<Value = (usize, Vec<Perm>, Perm)> {
    (2usize..=3, 2usize..=4).prop_flat_map(|(a, b)| {
        (
            Just(a * b),
            prop::collection::vec(wreath_element(a, b), 1..=3),
            wreath_element(a, b),
        )
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn flag_identities((n, gs, _) in degree_and_gens()) {
        let g = PermGroup::new(n, gs).unwrap();
        prop_assume!(g.is_transitive());
        let caps = Caps::default();
        let f = classify(&g, &caps).unwrap();
        prop_assert_eq!(f.primitive, f.quasiprimitive && f.preprimitive);
        prop_assert_eq!(overgroup_check(&g, &caps).unwrap(), f.preprimitive);
    }

    #[test]
    fn preprimitivity_is_upward_closed((n, gs, extra) in degree_and_gens()) {
        let g = PermGroup::new(n, gs.clone()).unwrap();
        prop_assume!(g.is_transitive());
        let mut more = gs;
        more.push(extra);
        let h = PermGroup::new(n, more).unwrap();
        let caps = Caps::default();
        if preprimitivity(&g, &caps).unwrap().0 {
            prop_assert!(preprimitivity(&h, &caps).unwrap().0);
        }
    }

    #[test]
    fn imprimitive_samples((n, gs, extra) in imprimitive_pair()) {
        let g = PermGroup::new(n, gs.clone()).unwrap();
        prop_assume!(g.is_transitive());
        let caps = Caps::default();
        let f = classify(&g, &caps).unwrap();
        prop_assert!(!f.primitive);
        prop_assert_eq!(f.primitive, f.quasiprimitive && f.preprimitive);
        prop_assert_eq!(overgroup_check(&g, &caps).unwrap(), f.preprimitive);
        let mut more = gs;
        more.push(extra);
        let h = PermGroup::new(n, more).unwrap();
        if f.preprimitive {
            prop_assert!(preprimitivity(&h, &caps).unwrap().0);
        }
    }
}
