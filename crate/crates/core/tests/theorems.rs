//! Structural statements about the constructions, checked on explicit
//! families.

use preprim::blocks::all_block_systems;
use preprim::classify::{classify, jordan_check, preprimitivity, sync_flags, Caps};
use preprim::construct::{self, decomposition, diagonal_group};
use preprim::enumerate::{all_subgroups, characteristic_subgroups, groups_of_order, transitive_groups};
use preprim::expr::{self, BuildLimits};
use preprim::{CayleyTable, PermGroup};

fn build(text: &str) -> PermGroup {
    expr::parse(text).unwrap().build(&BuildLimits::default()).unwrap()
}

fn pp(g: &PermGroup) -> bool {
    preprimitivity(g, &Caps::default()).unwrap().0
}

const BUNDLED: [&str; 14] = [
    "c1", "c2", "c5", "c6", "c12", "d6", "d8", "d12", "v4", "q8", "s3", "a4", "s4", "q8xc2",
];

#[test]
fn regular_block_systems_are_subgroups() {
    for name in BUNDLED {
        let t = CayleyTable::by_name(name).unwrap();
        assert!(t.order() <= 24);
        let systems = all_block_systems(&construct::regular_action(&t), 100_000).unwrap();
        assert_eq!(systems.len(), all_subgroups(&t, 64).unwrap().len(), "{name}");
    }
}

#[test]
fn holomorphs_are_preprimitive() {
    for name in BUNDLED.iter().copied().chain(["a5", "c8xc8"]) {
        let t = CayleyTable::by_name(name).unwrap();
        assert!(pp(&construct::holomorph(&t, 256).unwrap()), "{name}");
    }
}

#[test]
fn characteristic_subgroups_are_normal() {
    for name in BUNDLED {
        let t = CayleyTable::by_name(name).unwrap();
        for k in characteristic_subgroups(&t).unwrap() {
            assert!(t.is_normal_subgroup(&k), "{name}");
        }
    }
}

#[test]
fn groups_of_order_are_distinct() {
    for n in 1..=8 {
        let gs = groups_of_order(n).unwrap();
        for (i, a) in gs.iter().enumerate() {
            assert_eq!(a.order(), n);
            for b in &gs[i + 1..] {
                assert!(!a.is_isomorphic(b));
            }
        }
    }
}

const WREATH_FACTORS: [&str; 6] = ["cyc(2)", "cyc(4)", "reg(v4)", "sym(3)", "reg(s3)", "reg(q8)"];

#[test]
fn imprimitive_wreath_products() {
    let factors: Vec<PermGroup> = WREATH_FACTORS.iter().map(|t| build(t)).collect();
    for (i, g) in factors.iter().enumerate() {
        for (j, h) in factors.iter().enumerate() {
            let (w, canonical) = construct::wreath_imprimitive(g, h);
            assert_eq!(pp(&w), pp(g) && pp(h), "{} wr {}", WREATH_FACTORS[i], WREATH_FACTORS[j]);
            if w.degree() <= 24 {
                for sigma in all_block_systems(&w, 100_000).unwrap().systems() {
                    assert!(sigma.refines(&canonical).unwrap() || canonical.refines(sigma).unwrap());
                }
            }
            let d = construct::direct_product(g, h);
            // direct product uses (γ,δ) ↦ γ|Δ|+δ, the wreath product δ|Γ|+γ
            let (a, m) = (g.degree(), h.degree());
            let relabel: Vec<u32> = (0..a * m).map(|p| ((p % m) * a + p / m) as u32).collect();
            for x in d.generators() {
                let images: Vec<u32> = (0..a * m).map(|p| relabel[x.apply(p as u32) as usize]).collect();
                let mut y = vec![0u32; a * m];
                for p in 0..a * m {
                    y[relabel[p] as usize] = images[p];
                }
                assert!(w.contains(&preprim::Perm::from_images(y).unwrap()));
            }
        }
    }
}

#[test]
fn direct_products() {
    let caps = Caps::default();
    let factors = [
        "cyc(2)", "cyc(3)", "cyc(4)", "reg(v4)", "sym(3)", "reg(s3)", "reg(q8)", "dih(4)",
    ];
    for a in factors {
        for b in factors {
            let (g, h) = (build(a), build(b));
            let d = construct::direct_product(&g, &h);
            let d_pp = pp(&d);
            if d_pp {
                assert!(pp(&g) && pp(&h), "converse {a} x {b}");
            }
            let coprime = gcd(g.degree(), h.degree()) == 1;
            if coprime && pp(&g) && pp(&h) {
                assert!(d_pp, "coprime {a} x {b}");
            }
            if is_abelian(&g) && is_abelian(&h) {
                assert!(d_pp, "abelian {a} x {b}");
            }
            // two partition types: k = 1, or both projections a single part
            let lattice = all_block_systems(&d, caps.max_systems).unwrap();
            let two_types = lattice.systems().iter().all(|pi| {
                let dec = decomposition(pi, (g.degree(), h.degree())).unwrap();
                dec.k == 1 || (dec.p_g.num_parts() == 1 && dec.p_h.num_parts() == 1)
            });
            if two_types && pp(&g) && pp(&h) {
                assert!(d_pp, "two types {a} x {b}");
            }
        }
    }
}

#[test]
fn regular_times_regular() {
    for (a, b, want) in [
        ("reg(q8)", "reg(c2)", true),
        ("reg(q8)", "reg(c4)", false),
        ("reg(q8)", "reg(q8)", false),
        ("reg(c4)", "reg(c6)", true),
        ("reg(q8)", "reg(c3)", true),
    ] {
        let d = construct::direct_product(&build(a), &build(b));
        assert_eq!(pp(&d), want, "{a} x {b}");
    }
}

#[test]
fn product_action_needs_preprimitive_base() {
    for a in ["cyc(2)", "cyc(3)", "sym(3)", "reg(s3)", "reg(v4)", "dih(4)"] {
        for b in ["cyc(2)", "sym(3)", "cyc(3)"] {
            let g = build(a);
            let w = construct::wreath_product_action(&g, &build(b), 10_000).unwrap();
            if pp(&w) {
                assert!(pp(&g), "{a} wrp {b}");
            }
        }
    }
}

#[test]
fn diagonal_identity_parts_are_subgroups() {
    for (name, m) in [("c3", 2), ("s3", 2), ("v4", 2), ("c2", 3)] {
        let t = CayleyTable::by_name(name).unwrap();
        let n = t.order();
        let g = diagonal_group(&t, m, 10_000, 256).unwrap();
        for pi in all_block_systems(&g, 100_000).unwrap().systems() {
            let part = pi.part_containing(0);
            let digits = |mut w: u32| {
                let mut d = vec![0u32; m];
                for slot in d.iter_mut().rev() {
                    *slot = w % n as u32;
                    w /= n as u32;
                }
                d
            };
            let encode = |d: &[u32]| d.iter().fold(0u32, |acc, &x| acc * n as u32 + x);
            for &x in &part {
                for &y in &part {
                    let (dx, dy) = (digits(x), digits(y));
                    let prod: Vec<u32> = dx.iter().zip(&dy).map(|(&a, &b)| t.mul(a, b)).collect();
                    assert!(part.contains(&encode(&prod)), "D({name},{m})");
                }
            }
        }
    }
}

#[test]
fn jordan_criterion_implies_preprimitive() {
    let caps = Caps::default();
    for n in 4..=7 {
        for g in transitive_groups(n).unwrap() {
            for mask in 0u32..(1 << n) {
                let delta: Vec<u32> = (0..n as u32).filter(|&p| mask >> p & 1 == 1).collect();
                if jordan_check(&g, &delta, &caps).unwrap() {
                    assert!(pp(&g));
                }
            }
        }
    }
}

#[test]
fn invariant_section_regular_partitions_block_primitivity() {
    let caps = Caps::default();
    for n in 3..=7 {
        for g in transitive_groups(n).unwrap() {
            let found = preprim::classify::section_regular_search(&g, &caps).unwrap();
            let (sync, presync) = sync_flags(&g, &caps).unwrap();
            assert!(!sync || presync);
            if found.iter().any(|w| w.invariant) {
                assert!(!classify(&g, &caps).unwrap().primitive);
            }
        }
    }
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn is_abelian(g: &PermGroup) -> bool {
    let gens = g.generators();
    gens.iter().all(|a| gens.iter().all(|b| a.compose(b) == b.compose(a)))
}
