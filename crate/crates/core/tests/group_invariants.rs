use num_bigint::BigUint;

use preprim::blocks::{all_block_systems, is_invariant, kernel_orbit_test};
use preprim::enumerate::transitive_groups;
use preprim::expr::{self, BuildLimits};
use preprim::partition::orbit_partition;
use preprim::{Partition, PermGroup};

fn sample() -> Vec<PermGroup> {
    let mut out: Vec<PermGroup> = (2..=6).flat_map(|n| transitive_groups(n).unwrap()).collect();
    for text in [
        "reg(q8)",
        "hol(q8)",
        "wri(sym(3),cyc(2))",
        "wrp(sym(3),cyc(2))",
        "coset(alt(5),\"(1,2)(3,4);(1,3)(2,4)\")",
        "diag(c3,2)",
        "dp(cyc(2),cyc(4))",
    ] {
        out.push(expr::parse(text).unwrap().build(&BuildLimits::default()).unwrap());
    }
    // intransitive
    out.push(PermGroup::from_cycles(7, &["(1,2,3)", "(4,5)(6,7)"]).unwrap());
    out
}

#[test]
fn chain_order_and_membership() {
    for g in sample() {
        let product: BigUint = g
            .chain()
            .basic_orbit_lengths()
            .iter()
            .map(|&l| BigUint::from(l))
            .product();
        assert_eq!(product, g.order());
        assert!(g.generators().iter().all(|x| g.contains(x)));
    }
}

#[test]
fn orbit_stabilizer() {
    for g in sample() {
        for alpha in 0..g.degree() as u32 {
            let orbit = g.orbit(alpha).len();
            assert_eq!(BigUint::from(orbit) * g.point_stabilizer(alpha).order(), g.order());
        }
    }
}

#[test]
fn normal_closures_are_normal() {
    for g in sample() {
        let h = [g.generators()[0].clone()];
        let n = g.normal_closure(&h).unwrap();
        assert!(g.is_normal(&n));
        assert!(n.contains(&h[0]));
        assert!(n.is_subgroup_of(&g));
    }
}

#[test]
fn block_lattices_and_actions() {
    for g in sample().into_iter().filter(PermGroup::is_transitive) {
        let n = g.degree();
        let lattice = all_block_systems(&g, 100_000).unwrap();
        let systems = lattice.systems();
        assert!(systems.contains(&Partition::singletons(n)));
        assert!(systems.contains(&Partition::one_part(n)));
        assert!(kernel_orbit_test(&g, &Partition::singletons(n)).unwrap());
        for a in systems {
            assert!(is_invariant(&g, a));
            for b in systems {
                assert!(systems.contains(&a.join(b).unwrap()));
            }
            let action = g.action_on_blocks(a).unwrap();
            assert_eq!(action.image.order() * action.kernel.order(), g.order());
            for k in action.kernel.generators() {
                assert!(a
                    .parts()
                    .iter()
                    .all(|p| p.iter().all(|&x| a.part_of(k.apply(x)) == a.part_of(x))));
            }
            let kernel_orbits = orbit_partition(action.kernel.generators(), n);
            assert!(kernel_orbits.refines(a).unwrap());
        }
    }
}

#[test]
fn kernels_shrink_under_refinement() {
    for g in sample().into_iter().filter(|g| g.is_transitive() && g.degree() <= 8) {
        let systems = all_block_systems(&g, 100_000).unwrap();
        let kernels: Vec<PermGroup> = systems
            .systems()
            .iter()
            .map(|p| g.action_on_blocks(p).unwrap().kernel)
            .collect();
        for (i, a) in systems.systems().iter().enumerate() {
            for (j, b) in systems.systems().iter().enumerate() {
                if a.refines(b).unwrap() {
                    assert!(kernels[i].is_subgroup_of(&kernels[j]));
                }
            }
        }
    }
}

#[test]
fn coset_action_matches_orbit_action() {
    // explicit point bijection: coset H·x corresponds to the point 0^x
    for g in sample().into_iter().filter(|g| g.is_transitive() && g.degree() <= 6) {
        let h = g.point_stabilizer(0);
        let c = g.coset_action(&h).unwrap();
        assert_eq!(c.degree(), g.degree());
        assert_eq!(c.order(), g.order());
        let elems = g.elements_bounded(10_000).unwrap();
        let mut coset_of_point = vec![None; g.degree()];
        // coset index k is reached from coset 0 by some element; record where
        for x in &elems {
            let point = x.apply(0) as usize;
            let coset = c_image(&g, &c, x);
            match coset_of_point[point] {
                None => coset_of_point[point] = Some(coset),
                Some(k) => assert_eq!(k, coset),
            }
        }
        let mut seen: Vec<u32> = coset_of_point.iter().map(|k| k.unwrap()).collect();
        seen.sort_unstable();
        seen.dedup();
        assert_eq!(seen.len(), g.degree());
    }
}

/// Image of coset 0 under `x`, computed through the generators' images.
fn c_image(g: &PermGroup, c: &PermGroup, x: &preprim::Perm) -> u32 {
    // write x as a word by breadth-first search over the generators
    let gens = g.generators();
    let mut frontier = vec![(preprim::Perm::identity(g.degree()), 0u32)];
    let mut seen = std::collections::HashSet::new();
    seen.insert(frontier[0].0.clone());
    let mut k = 0;
    while k < frontier.len() {
        let (p, coset) = frontier[k].clone();
        if &p == x {
            return coset;
        }
        for (i, s) in gens.iter().enumerate() {
            let q = p.compose(s);
            if seen.insert(q.clone()) {
                frontier.push((q, c.generators()[i].apply(coset)));
            }
        }
        k += 1;
    }
    unreachable!("x lies in g")
}
