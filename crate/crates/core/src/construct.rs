//! Builders for regular actions, holomorphs, direct and wreath products, and
//! diagonal groups, plus the fibre/projection decomposition of partitions of
//! a product domain.
//!
//! Point indexing is fixed:
//! - direct product: `(γ, δ)` is `γ·|Δ| + δ`;
//! - imprimitive wreath product: `(γ, δ)` is `δ·|Γ| + γ`, so block `δ` is
//!   `δ·|Γ| .. (δ+1)·|Γ|`;
//! - product action and diagonal groups: words in mixed radix with
//!   coordinate 0 most significant.

use num_bigint::BigUint;

use crate::cayley::CayleyTable;
use crate::enumerate;
use crate::error::{budget, Error, Result};
use crate::group::PermGroup;
use crate::partition::{Partition, UnionFind};
use crate::perm::Perm;

/// Default cap on the degree of product-action and diagonal groups.
pub const DEFAULT_MAX_DEGREE: usize = 1_000_000;

/// Right multiplication on the elements of `table`; point 0 is the identity.
pub fn regular_action(table: &CayleyTable) -> PermGroup {
    let gens = table
        .generators()
        .into_iter()
        .map(|x| table.right_multiplication(x))
        .collect();
    PermGroup::with_order(table.order(), gens, &BigUint::from(table.order()))
}

/// Automorphisms as permutations of element indices, reduced to a greedy
/// generating subset.
fn automorphism_generators(table: &CayleyTable, max_order: usize) -> Result<(Vec<Perm>, usize)> {
    let auts = table.automorphisms(max_order)?;
    let count = auts.len();
    let group = PermGroup::generated_by_subset(table.order(), auts.into_iter().map(Perm::from_images_unchecked));
    let gens = group
        .generators()
        .iter()
        .filter(|g| !g.is_identity())
        .cloned()
        .collect();
    Ok((gens, count))
}

/// Right multiplications together with all automorphisms, acting on element
/// indices. Only a generating set of the automorphism group is used.
pub fn holomorph(table: &CayleyTable, max_order: usize) -> Result<PermGroup> {
    let (aut_gens, aut_count) = automorphism_generators(table, max_order)?;
    let mut gens: Vec<Perm> = regular_action(table).generators().to_vec();
    gens.extend(aut_gens);
    let order = BigUint::from(table.order()) * BigUint::from(aut_count);
    Ok(PermGroup::with_order(table.order(), gens, &order))
}

fn known_product_order(a: &PermGroup, b: &PermGroup) -> BigUint {
    a.order() * b.order()
}

/// `G × H` acting on pairs, `(γ, δ)` at `γ·|Δ| + δ`.
pub fn direct_product(g: &PermGroup, h: &PermGroup) -> PermGroup {
    let (a, b) = (g.degree(), h.degree());
    let mut gens = Vec::new();
    for x in g.generators() {
        gens.push(Perm::from_images_unchecked(
            (0..a * b)
                .map(|p| (x.apply((p / b) as u32) as usize * b + p % b) as u32)
                .collect(),
        ));
    }
    for y in h.generators() {
        gens.push(Perm::from_images_unchecked(
            (0..a * b)
                .map(|p| ((p / b) * b + y.apply((p % b) as u32) as usize) as u32)
                .collect(),
        ));
    }
    PermGroup::with_order(a * b, gens, &known_product_order(g, h))
}

/// Partition of `Γ × Δ` whose parts are the products of parts.
pub fn cartesian_product_partition(left: &Partition, right: &Partition) -> Partition {
    let b = right.degree();
    let labels: Vec<(u32, u32)> = (0..left.degree() * b)
        .map(|p| (left.part_of((p / b) as u32), right.part_of((p % b) as u32)))
        .collect();
    Partition::from_labels(&labels)
}

/// Projection and fibre partitions of both factors induced by a partition of
/// the direct-product domain.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProductDecomposition {
    pub p_g: Partition,
    pub f_g: Partition,
    pub p_h: Partition,
    pub f_h: Partition,
    /// Fibre parts inside one projection part, counted on the first factor.
    pub k: usize,
    /// Whether the same count holds in every projection part of both factors.
    pub counts_agree: bool,
    pub latin_square_ok: bool,
}

/// Partition of one coordinate by projections of the parts of `pi`.
fn projection(pi: &Partition, dim: usize, coord: impl Fn(usize) -> usize) -> Result<Partition> {
    let mut uf = UnionFind::new(dim);
    let mut first = vec![u32::MAX; pi.num_parts()];
    let mut members: Vec<Vec<bool>> = vec![vec![false; dim]; pi.num_parts()];
    for p in 0..pi.degree() {
        let (l, c) = (pi.part_of(p as u32) as usize, coord(p) as u32);
        members[l][c as usize] = true;
        if first[l] == u32::MAX {
            first[l] = c;
        } else {
            uf.union(first[l], c);
        }
    }
    let proj = uf.into_partition();
    // projections must be pairwise equal or disjoint
    for (l, m) in members.iter().enumerate() {
        let class = proj.part_of(first[l]);
        let ok = (0..dim).all(|c| m[c] == (proj.part_of(c as u32) == class));
        if !ok {
            return Err(Error::InvalidArgument(
                "projections of parts overlap without coinciding".into(),
            ));
        }
    }
    Ok(proj)
}

/// Number of fibre parts inside each projection part, if constant.
fn fibre_count(projection: &Partition, fibre: &Partition) -> Option<usize> {
    let mut counts = vec![std::collections::BTreeSet::new(); projection.num_parts()];
    for p in 0..projection.degree() as u32 {
        counts[projection.part_of(p) as usize].insert(fibre.part_of(p));
    }
    let k = counts[0].len();
    counts.iter().all(|c| c.len() == k).then_some(k)
}

pub fn decomposition(pi: &Partition, dims: (usize, usize)) -> Result<ProductDecomposition> {
    decomposition_at(pi, dims, 0, 0)
}

/// As [`decomposition`], taking fibres at `Γ × {delta}` and `{gamma} × Δ`.
pub fn decomposition_at(
    pi: &Partition,
    dims: (usize, usize),
    gamma: usize,
    delta: usize,
) -> Result<ProductDecomposition> {
    let (a, b) = dims;
    if pi.degree() != a * b || gamma >= a || delta >= b {
        return Err(Error::DegreeMismatch {
            left: pi.degree(),
            right: a * b,
        });
    }
    let p_g = projection(pi, a, |p| p / b)?;
    let p_h = projection(pi, b, |p| p % b)?;
    let f_g = Partition::from_labels(&(0..a).map(|x| pi.part_of((x * b + delta) as u32)).collect::<Vec<_>>());
    let f_h = Partition::from_labels(&(0..b).map(|y| pi.part_of((gamma * b + y) as u32)).collect::<Vec<_>>());
    let kg = fibre_count(&p_g, &f_g);
    let kh = fibre_count(&p_h, &f_h);
    let k = kg.unwrap_or(0);
    let counts_agree = kg.is_some() && kg == kh;
    let latin_square_ok = counts_agree && latin_square_check(pi, dims, &f_g, &f_h, k);
    Ok(ProductDecomposition {
        p_g,
        f_g,
        p_h,
        f_h,
        k,
        counts_agree,
        latin_square_ok,
    })
}

/// Each part is a union of fibre cells `F × F'` meeting every fibre row and
/// every fibre column of its projection cell exactly once.
fn latin_square_check(pi: &Partition, dims: (usize, usize), f_g: &Partition, f_h: &Partition, k: usize) -> bool {
    let (_, b) = dims;
    let sizes_g: Vec<usize> = f_g.parts().iter().map(Vec::len).collect();
    let sizes_h: Vec<usize> = f_h.parts().iter().map(Vec::len).collect();
    let mut cells: Vec<std::collections::BTreeMap<(u32, u32), usize>> = vec![Default::default(); pi.num_parts()];
    for p in 0..pi.degree() {
        let cell = (f_g.part_of((p / b) as u32), f_h.part_of((p % b) as u32));
        *cells[pi.part_of(p as u32) as usize].entry(cell).or_default() += 1;
    }
    cells.iter().all(|touched| {
        let full = touched
            .iter()
            .all(|(&(r, c), &count)| count == sizes_g[r as usize] * sizes_h[c as usize]);
        let mut rows: Vec<u32> = touched.keys().map(|&(r, _)| r).collect();
        let mut cols: Vec<u32> = touched.keys().map(|&(_, c)| c).collect();
        rows.sort_unstable();
        cols.sort_unstable();
        let distinct = rows.windows(2).all(|w| w[0] != w[1]) && cols.windows(2).all(|w| w[0] != w[1]);
        full && distinct && touched.len() == k
    })
}

/// `G ≀ H` in its imprimitive action, `(γ, δ)` at `δ·|Γ| + γ`, together with
/// the canonical partition into the copies of Γ.
pub fn wreath_imprimitive(g: &PermGroup, h: &PermGroup) -> (PermGroup, Partition) {
    let (a, m) = (g.degree(), h.degree());
    let mut gens = Vec::new();
    // one copy of G per H-orbit; conjugation by the top group supplies the rest
    for orbit in h.orbits().parts() {
        let block = orbit[0] as usize;
        for x in g.generators() {
            gens.push(Perm::from_images_unchecked(
                (0..a * m)
                    .map(|p| {
                        if p / a == block {
                            (block * a + x.apply((p % a) as u32) as usize) as u32
                        } else {
                            p as u32
                        }
                    })
                    .collect(),
            ));
        }
    }
    for y in h.generators() {
        gens.push(Perm::from_images_unchecked(
            (0..a * m)
                .map(|p| (y.apply((p / a) as u32) as usize * a + p % a) as u32)
                .collect(),
        ));
    }
    let order = num_traits::pow(g.order(), m) * h.order();
    let canonical = Partition::from_labels(&(0..a * m).map(|p| p / a).collect::<Vec<_>>());
    (PermGroup::with_order(a * m, gens, &order), canonical)
}

fn checked_power(base: usize, exp: usize, cap: usize) -> Result<usize> {
    let mut acc: usize = 1;
    for _ in 0..exp {
        acc = acc
            .checked_mul(base)
            .filter(|&v| v <= cap)
            .ok_or(budget("degree", cap as u64))?;
    }
    Ok(acc)
}

/// Decodes a word index into its digits, coordinate 0 first.
fn digits(mut index: usize, base: usize, len: usize) -> Vec<usize> {
    let mut out = vec![0; len];
    for slot in out.iter_mut().rev() {
        *slot = index % base;
        index /= base;
    }
    out
}

fn encode(digits: &[usize], base: usize) -> u32 {
    digits.iter().fold(0, |acc, &d| acc * base + d) as u32
}

fn word_map(base: usize, len: usize, degree: usize, f: impl Fn(&mut Vec<usize>)) -> Perm {
    Perm::from_images_unchecked(
        (0..degree)
            .map(|w| {
                let mut d = digits(w, base, len);
                f(&mut d);
                encode(&d, base)
            })
            .collect(),
    )
}

/// `G ≀ H` in product action on `|Γ|^|Δ|` words. The top group moves
/// coordinate `i` to position `i^h`.
pub fn wreath_product_action(g: &PermGroup, h: &PermGroup, max_degree: usize) -> Result<PermGroup> {
    let (a, m) = (g.degree(), h.degree());
    let degree = checked_power(a, m, max_degree)?;
    let mut gens = Vec::new();
    for orbit in h.orbits().parts() {
        let coord = orbit[0] as usize;
        for x in g.generators() {
            gens.push(word_map(a, m, degree, |d| d[coord] = x.apply(d[coord] as u32) as usize));
        }
    }
    for y in h.generators() {
        gens.push(word_map(a, m, degree, |d| {
            let old = d.clone();
            for (i, &v) in old.iter().enumerate() {
                d[y.apply(i as u32) as usize] = v;
            }
        }));
    }
    let order = num_traits::pow(g.order(), m) * h.order();
    Ok(PermGroup::with_order(degree, gens, &order))
}

/// The diagonal group `D(T, m)` on `|T|^m` tuples: coordinate right
/// multiplications, automorphisms applied diagonally (a generating set),
/// adjacent coordinate swaps and `[t1,…,tm] ↦ [t1⁻¹, t1⁻¹t2, …, t1⁻¹tm]`.
pub fn diagonal_group(table: &CayleyTable, m: usize, max_degree: usize, max_table: usize) -> Result<PermGroup> {
    if m == 0 {
        return Err(Error::InvalidArgument("diagonal group needs m >= 1".into()));
    }
    let n = table.order();
    let degree = checked_power(n, m, max_degree)?;
    let mut gens = Vec::new();
    for x in table.generators() {
        for i in 0..m {
            gens.push(word_map(n, m, degree, |d| d[i] = table.mul(d[i] as u32, x) as usize));
        }
    }
    let (aut_gens, _) = automorphism_generators(table, max_table)?;
    for phi in &aut_gens {
        gens.push(word_map(n, m, degree, |d| {
            for v in d.iter_mut() {
                *v = phi.apply(*v as u32) as usize;
            }
        }));
    }
    for i in 0..m.saturating_sub(1) {
        gens.push(word_map(n, m, degree, |d| d.swap(i, i + 1)));
    }
    gens.push(word_map(n, m, degree, |d| {
        let t1inv = table.inv(d[0] as u32);
        d[0] = t1inv as usize;
        for v in d.iter_mut().skip(1) {
            *v = table.mul(t1inv, *v as u32) as usize;
        }
    }));
    let gens: Vec<Perm> = gens.into_iter().filter(|g| !g.is_identity()).collect();
    PermGroup::new(degree, gens)
}

/// The sufficient condition for `D(T, m)` to be pre-primitive: for every
/// characteristic subgroup K, with L generated by the (m+1)-st powers and
/// commutators of K, every subgroup between L and K is normal in T.
pub fn diag_condition(table: &CayleyTable, m: usize, max_order: usize) -> Result<bool> {
    let subgroups = enumerate::all_subgroups(table, max_order)?;
    let characteristic = enumerate::characteristic_subgroups_of(table, &subgroups)?;
    for k in &characteristic {
        let mut gens: Vec<u32> = k.iter().map(|&x| table.pow(x, m as u64 + 1)).collect();
        for &x in k {
            for &y in k {
                gens.push(table.commutator(x, y));
            }
        }
        gens.sort_unstable();
        gens.dedup();
        let l = table.closure(&gens);
        for s in &subgroups {
            let between = is_subset(&l, s) && is_subset(s, k);
            if between && !table.is_normal_subgroup(s) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Both slices sorted.
fn is_subset(small: &[u32], big: &[u32]) -> bool {
    let mut it = big.iter();
    small.iter().all(|x| it.any(|y| y == x))
}
