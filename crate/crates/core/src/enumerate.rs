//! Exhaustive enumerations for small cases: subgroups of a table, groups of
//! order at most 8, and transitive groups of degree at most 7 up to
//! conjugacy in the symmetric group.

use std::collections::{HashMap, HashSet};

use crate::cayley::{CayleyTable, DEFAULT_TABLE_BUDGET};
use crate::error::{budget, Error, Result};
use crate::group::PermGroup;
use crate::perm::Perm;

/// Default table-order limit for subgroup enumeration.
pub const DEFAULT_SUBGROUP_BUDGET: usize = 64;

/// All subgroups as sorted index lists, ordered by size and then elements.
pub fn all_subgroups(table: &CayleyTable, max_order: usize) -> Result<Vec<Vec<u32>>> {
    if table.order() > max_order {
        return Err(budget("subgroup enumeration table order", max_order as u64));
    }
    let n = table.order() as u32;
    let mut seen: HashSet<Vec<u32>> = HashSet::new();
    let mut found: Vec<Vec<u32>> = Vec::new();
    for x in 0..n {
        let c = table.closure(&[x]);
        if seen.insert(c.clone()) {
            found.push(c);
        }
    }
    let mut k = 0;
    while k < found.len() {
        let base = found[k].clone();
        let mut covered = vec![false; n as usize];
        for &y in &base {
            covered[y as usize] = true;
        }
        for x in 0..n {
            if covered[x as usize] {
                continue;
            }
            let mut gens = base.clone();
            gens.push(x);
            let s = table.closure(&gens);
            if seen.insert(s.clone()) {
                found.push(s);
            }
        }
        k += 1;
    }
    found.sort_by(|a, b| (a.len(), a).cmp(&(b.len(), b)));
    Ok(found)
}

/// Subgroups mapped to themselves by every automorphism.
pub fn characteristic_subgroups(table: &CayleyTable) -> Result<Vec<Vec<u32>>> {
    let subgroups = all_subgroups(table, DEFAULT_SUBGROUP_BUDGET)?;
    characteristic_subgroups_of(table, &subgroups)
}

pub(crate) fn characteristic_subgroups_of(table: &CayleyTable, subgroups: &[Vec<u32>]) -> Result<Vec<Vec<u32>>> {
    let auts = table.automorphisms(DEFAULT_TABLE_BUDGET)?;
    Ok(subgroups
        .iter()
        .filter(|s| {
            auts.iter().all(|phi| {
                let mut img: Vec<u32> = s.iter().map(|&x| phi[x as usize]).collect();
                img.sort_unstable();
                &img == *s
            })
        })
        .cloned()
        .collect())
}

/// One table per isomorphism type of group of order `n ≤ 8`.
///
/// Every group of order n acts regularly on itself, so each type appears as a
/// regular subgroup of S_n. Such a subgroup contains a conjugate of the
/// standard element with n/d cycles of length d for each element order d, so
/// the search starts from those and adjoins fixed-point-free elements while
/// the closure stays semiregular.
pub fn groups_of_order(n: usize) -> Result<Vec<CayleyTable>> {
    if n == 0 || n > 8 {
        return Err(Error::InvalidArgument(format!(
            "groups_of_order supports 1..=8, got {n}"
        )));
    }
    if n == 1 {
        return Ok(vec![CayleyTable::cyclic(1)]);
    }
    let derangements: Vec<Perm> = all_perms(n)
        .into_iter()
        .filter(|p| p.first_moved().is_some() && fixed_point_free(p))
        .collect();
    let mut regular: Vec<Vec<Perm>> = Vec::new();
    let mut seen: HashSet<Vec<Perm>> = HashSet::new();
    for d in (2..=n).filter(|d| n.is_multiple_of(*d)) {
        let start = Perm::from_images_unchecked((0..n).map(|p| ((p / d) * d + (p % d + 1) % d) as u32).collect());
        let mut frontier = vec![vec![start]];
        while let Some(gens) = frontier.pop() {
            let Some(elems) = semiregular_closure(n, &gens) else {
                continue;
            };
            if !seen.insert(elems.clone()) {
                continue;
            }
            if elems.len() == n {
                regular.push(elems);
                continue;
            }
            for y in &derangements {
                if elems.binary_search(y).is_err() {
                    let mut g2 = gens.clone();
                    g2.push(y.clone());
                    frontier.push(g2);
                }
            }
        }
    }
    let mut tables: Vec<CayleyTable> = Vec::new();
    for elems in regular {
        let g = PermGroup::new(n, elems).expect("same degree");
        let t = CayleyTable::from_perm_group(&g, None)?;
        if !tables.iter().any(|u| u.is_isomorphic(&t)) {
            tables.push(t);
        }
    }
    Ok(tables)
}

fn fixed_point_free(p: &Perm) -> bool {
    p.images().iter().enumerate().all(|(i, &x)| i as u32 != x)
}

/// Closure of `gens` if every non-identity element is fixed-point-free and
/// the group has at most `n` elements; sorted.
fn semiregular_closure(n: usize, gens: &[Perm]) -> Option<Vec<Perm>> {
    let id = Perm::identity(n);
    let mut set: HashSet<Perm> = HashSet::new();
    set.insert(id.clone());
    let mut elems = vec![id];
    let mut k = 0;
    while k < elems.len() {
        for g in gens {
            let y = elems[k].compose(g);
            if !set.contains(&y) {
                if !fixed_point_free(&y) || elems.len() == n {
                    return None;
                }
                set.insert(y.clone());
                elems.push(y);
            }
        }
        k += 1;
    }
    elems.sort_unstable();
    Some(elems)
}

/// All permutations of `0..n` in lexicographic order.
fn all_perms(n: usize) -> Vec<Perm> {
    (0..factorial(n)).map(|r| unrank(n, r)).collect()
}

fn factorial(n: usize) -> usize {
    (1..=n).product()
}

/// Lexicographic rank of a permutation (Lehmer code).
fn rank(p: &Perm) -> usize {
    let n = p.degree();
    let mut used = 0u32;
    let mut r = 0;
    for (i, &x) in p.images().iter().enumerate() {
        let smaller_unused = x - (used & ((1 << x) - 1)).count_ones();
        r = r * (n - i) + smaller_unused as usize;
        used |= 1 << x;
    }
    r
}

fn unrank(n: usize, mut r: usize) -> Perm {
    let mut digits = vec![0usize; n];
    for i in (0..n).rev() {
        let base = n - i;
        digits[i] = r % base;
        r /= base;
    }
    let mut pool: Vec<u32> = (0..n as u32).collect();
    Perm::from_images_unchecked(digits.into_iter().map(|d| pool.remove(d)).collect())
}

/// Element set of a subgroup of S_n as a bitset over lexicographic ranks.
#[derive(Clone, PartialEq, Eq, Hash)]
struct RankSet(Vec<u64>);

impl RankSet {
    fn new(size: usize) -> Self {
        RankSet(vec![0; size.div_ceil(64)])
    }

    fn insert(&mut self, r: usize) {
        self.0[r / 64] |= 1 << (r % 64);
    }

    fn contains(&self, r: usize) -> bool {
        self.0[r / 64] >> (r % 64) & 1 == 1
    }

    fn ranks(&self) -> Vec<usize> {
        let mut out = Vec::new();
        for (w, &word) in self.0.iter().enumerate() {
            let mut bits = word;
            while bits != 0 {
                out.push(w * 64 + bits.trailing_zeros() as usize);
                bits &= bits - 1;
            }
        }
        out
    }
}

fn element_set(g: &PermGroup, size: usize) -> RankSet {
    let mut set = RankSet::new(size);
    g.chain().for_each_element(|x| set.insert(rank(x)));
    set
}

/// Transitive subgroups of S_n, one per conjugacy class, for `2 ≤ n ≤ 7`.
///
/// Classes of all subgroups are found bottom-up: each class representative
/// is extended by every element of prime-power order, which reaches every
/// subgroup since such elements generate any finite group. Representatives
/// are the conjugate whose sorted element list is lexicographically least,
/// with a greedy generating set drawn from it in order. The result is sorted
/// by order and then by that element list.
pub fn transitive_groups(n: usize) -> Result<Vec<PermGroup>> {
    if !(2..=7).contains(&n) {
        return Err(Error::InvalidArgument(format!(
            "transitive_groups supports degrees 2..=7, got {n}"
        )));
    }
    let size = factorial(n);
    let perms = all_perms(n);
    let prime_power: Vec<&Perm> = perms.iter().filter(|p| is_prime_power(p.order())).collect();

    // every subgroup seen so far, bucketed by order
    let mut known: HashMap<usize, Vec<RankSet>> = HashMap::new();
    // one canonical representative per class
    let mut classes: Vec<(Vec<usize>, PermGroup)> = Vec::new();

    let register =
        |group: PermGroup, known: &mut HashMap<usize, Vec<RankSet>>, classes: &mut Vec<(Vec<usize>, PermGroup)>| {
            let elems = element_set(&group, size);
            let order = group.order_u64().unwrap() as usize;
            let mut conjugates: HashSet<RankSet> = HashSet::new();
            let ranks = elems.ranks();
            for c in &perms {
                let mut conj = RankSet::new(size);
                for &r in &ranks {
                    conj.insert(rank(&perms[r].conjugate_by(c)));
                }
                conjugates.insert(conj);
            }
            let canonical = conjugates.iter().map(RankSet::ranks).min().unwrap();
            known.entry(order).or_default().extend(conjugates);
            let rep = PermGroup::generated_by_subset(n, canonical.iter().map(|&r| perms[r].clone()));
            classes.push((canonical, rep));
        };

    register(PermGroup::trivial(n), &mut known, &mut classes);
    let mut k = 0;
    while k < classes.len() {
        let rep = classes[k].1.clone();
        let rep_set = element_set(&rep, size);
        for &g in &prime_power {
            if rep_set.contains(rank(g)) {
                continue;
            }
            let mut gens = rep.generators().to_vec();
            gens.push(g.clone());
            let bigger = PermGroup::new(n, gens.clone())?;
            let order = bigger.order_u64().unwrap() as usize;
            let is_known = known
                .get(&order)
                .is_some_and(|list| list.iter().any(|s| gens.iter().all(|x| s.contains(rank(x)))));
            if !is_known {
                register(bigger, &mut known, &mut classes);
            }
        }
        k += 1;
    }
    let mut transitive: Vec<(usize, Vec<usize>, PermGroup)> = classes
        .into_iter()
        .filter(|(_, g)| g.is_transitive())
        .map(|(c, g)| (c.len(), c, g))
        .collect();
    transitive.sort_by(|a, b| (a.0, &a.1).cmp(&(b.0, &b.1)));
    Ok(transitive.into_iter().map(|(_, _, g)| g).collect())
}

fn is_prime_power(mut k: u64) -> bool {
    if k < 2 {
        return false;
    }
    let mut p = 2;
    while !k.is_multiple_of(p) {
        p += 1;
    }
    while k.is_multiple_of(p) {
        k /= p;
    }
    k == 1
}

/// Catalog text for a complete list of groups of one degree, named
/// `T<degree>_<k>` in list order.
pub fn export_catalog(degree: usize, groups: &[PermGroup]) -> String {
    let mut out = format!("#complete degree={degree}\n");
    for (k, g) in groups.iter().enumerate() {
        let gens: Vec<String> = g.generators().iter().map(|x| x.to_string()).collect();
        out.push_str(&format!("T{degree}_{}|{degree}|{}\n", k + 1, gens.join(";")));
    }
    out
}
