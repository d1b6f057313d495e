//! Classification predicates: primitivity, quasiprimitivity, pre-primitivity
//! and the characterizations used to cross-check them, plus section-regular
//! partitions and synchronization.
//!
//! Quasiprimitivity is decided on block systems rather than normal subgroups.
//! A non-trivial intransitive normal subgroup has a non-trivial invariant
//! orbit partition and lies in the kernel of the action on it; conversely a
//! non-trivial kernel of a non-trivial system is normal and fixes every part,
//! so it is intransitive. Hence a transitive group is quasiprimitive iff every
//! non-trivial block system has trivial kernel.

use std::collections::HashSet;

use num_bigint::BigUint;

use crate::blocks::{all_block_systems, BlockLattice, DEFAULT_MAX_SYSTEMS};
use crate::cayley::CayleyTable;
use crate::error::{budget, Error, Result};
use crate::group::{PermGroup, DEFAULT_ELEMENT_BUDGET};
use crate::partition::{Partition, UnionFind};
use crate::perm::Perm;

/// Configurable limits shared by the predicates.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Caps {
    /// Block systems per group.
    pub max_systems: usize,
    /// Group order for algorithms that enumerate elements.
    pub max_order: u64,
    /// Degree for the section-regular search, which visits every partition.
    pub max_degree: usize,
    /// Invariant subgroups visited by the regular-normal-subgroup criterion.
    pub max_subgroups: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            max_systems: DEFAULT_MAX_SYSTEMS,
            max_order: DEFAULT_ELEMENT_BUDGET,
            max_degree: 12,
            max_subgroups: 1 << 20,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassificationFlags {
    pub transitive: bool,
    pub primitive: bool,
    pub quasiprimitive: bool,
    pub preprimitive: bool,
    /// First invariant partition that is not the orbit partition of its
    /// kernel, when the group is transitive but not pre-primitive.
    pub witness: Option<Partition>,
    /// Number of block systems, including both trivial ones (0 when
    /// intransitive).
    pub block_systems: usize,
}

impl ClassificationFlags {
    /// `transitive,primitive,quasiprimitive,preprimitive` as 0/1.
    pub fn csv_fragment(&self) -> String {
        let b = |x: bool| if x { "1" } else { "0" };
        format!(
            "{},{},{},{}",
            b(self.transitive),
            b(self.primitive),
            b(self.quasiprimitive),
            b(self.preprimitive)
        )
    }
}

fn require_transitive(g: &PermGroup) -> Result<()> {
    if g.is_transitive() {
        Ok(())
    } else {
        Err(Error::NotTransitive)
    }
}

/// All four flags from a single pass over the block systems. Intransitive
/// groups get all flags false.
pub fn classify(g: &PermGroup, caps: &Caps) -> Result<ClassificationFlags> {
    if !g.is_transitive() {
        return Ok(ClassificationFlags {
            transitive: false,
            primitive: false,
            quasiprimitive: false,
            preprimitive: false,
            witness: None,
            block_systems: 0,
        });
    }
    let lattice = all_block_systems(g, caps.max_systems)?;
    let mut quasiprimitive = true;
    let mut witness = None;
    for pi in lattice.nontrivial() {
        let action = g.action_on_blocks(pi)?;
        if !action.kernel.is_trivial() {
            quasiprimitive = false;
        }
        if witness.is_none() && action.kernel.orbits() != *pi {
            witness = Some(pi.clone());
        }
    }
    let primitive = lattice.nontrivial().next().is_none();
    Ok(ClassificationFlags {
        transitive: true,
        primitive,
        quasiprimitive,
        preprimitive: witness.is_none(),
        witness,
        block_systems: lattice.len(),
    })
}

pub fn is_primitive(g: &PermGroup) -> Result<bool> {
    require_transitive(g)?;
    let n = g.degree() as u32;
    for beta in 1..n {
        if crate::blocks::minimal_block(g, 0, beta)?.len() != n as usize {
            return Ok(false);
        }
    }
    Ok(true)
}

pub fn is_quasiprimitive(g: &PermGroup) -> Result<bool> {
    is_quasiprimitive_with(g, &Caps::default())
}

pub fn is_quasiprimitive_with(g: &PermGroup, caps: &Caps) -> Result<bool> {
    require_transitive(g)?;
    let lattice = all_block_systems(g, caps.max_systems)?;
    for pi in lattice.nontrivial() {
        // trivial kernel iff the image is as large as the group
        if g.action_on_blocks(pi)?.image.order() != g.order() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Pre-primitivity with the first failing block system as witness.
pub fn preprimitivity(g: &PermGroup, caps: &Caps) -> Result<(bool, Option<Partition>)> {
    require_transitive(g)?;
    let lattice = all_block_systems(g, caps.max_systems)?;
    preprimitivity_on(g, &lattice)
}

pub fn preprimitivity_on(g: &PermGroup, lattice: &BlockLattice) -> Result<(bool, Option<Partition>)> {
    for pi in lattice.nontrivial() {
        if !crate::blocks::kernel_orbit_test(g, pi)? {
            return Ok((false, Some(pi.clone())));
        }
    }
    Ok((true, None))
}

/// Every overgroup H of the point stabilizer G_0 equals N·G_0 for the kernel
/// N of the block system whose block through 0 is the H-orbit of 0.
///
/// `|N·G_0| = |N|·|G_0| / |N ∩ G_0|`, and `N ∩ G_0` is the stabilizer of 0
/// in N, so the intersection comes straight from N's chain.
pub fn overgroup_check(g: &PermGroup, caps: &Caps) -> Result<bool> {
    require_transitive(g)?;
    let lattice = all_block_systems(g, caps.max_systems)?;
    let stab_order = g.point_stabilizer(0).order();
    for pi in lattice.nontrivial() {
        let h = g.part_stabilizer(pi, pi.part_of(0))?;
        let kernel = g.action_on_blocks(pi)?.kernel;
        let meet = kernel.point_stabilizer(0).order();
        if kernel.order() * &stab_order != h.order() * meet {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The restriction to every orbit is quasiprimitive.
pub fn is_pre_qp(g: &PermGroup, caps: &Caps) -> Result<bool> {
    for orbit in g.orbits().parts() {
        let r = g.restrict(&orbit)?;
        if !is_quasiprimitive_with(&r, caps)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Whether the setwise stabilizer of every k-set induces the full symmetric
/// group on it. For k = 2 this is the orbital test: some element swaps 0 and
/// β for every β. Intransitive groups are never generously transitive.
pub fn is_generously_transitive(g: &PermGroup, k: usize, bound: u64) -> Result<bool> {
    let n = g.degree();
    if k < 2 || k >= n {
        return Err(Error::InvalidArgument(format!(
            "k = {k} must satisfy 2 <= k < degree {n}"
        )));
    }
    if !g.is_transitive() {
        return Ok(false);
    }
    if k == 2 {
        // the elements taking 0 to β are G_0·u_β; one of them takes β to 0
        // iff 0^(u_β⁻¹) lies in the G_0-orbit of β
        let stab_orbits = g.point_stabilizer(0).orbits();
        let level = &g.chain().levels()[0];
        debug_assert_eq!(level.base_point, 0);
        return Ok((1..n as u32).all(|beta| {
            let u = level.transversal_for(beta).expect("transitive");
            let back = u.inverse().apply(0);
            stab_orbits.part_of(back) == stab_orbits.part_of(beta)
        }));
    }
    let elements = g.elements_bounded(bound)?;
    let full: usize = (1..=k).product();
    let mut subset: Vec<u32> = (0..k as u32).collect();
    loop {
        let mut induced: HashSet<Vec<u32>> = HashSet::new();
        for x in &elements {
            if x.stabilizes_set(&subset) {
                induced.insert(subset.iter().map(|&p| x.apply(p)).collect());
            }
        }
        if induced.len() != full {
            return Ok(false);
        }
        if !next_subset(&mut subset, n as u32) {
            return Ok(true);
        }
    }
}

fn next_subset(s: &mut [u32], n: u32) -> bool {
    let k = s.len();
    for i in (0..k).rev() {
        if s[i] < n - (k - i) as u32 {
            s[i] += 1;
            for j in i + 1..k {
                s[j] = s[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Every subgroup normal, decided by normality of the cyclic subgroups.
pub fn is_dedekind(t: &CayleyTable) -> bool {
    let gens = t.generators();
    (0..t.order() as u32).all(|x| {
        let cyclic = t.closure(&[x]);
        gens.iter().all(|&g| cyclic.binary_search(&t.conjugate(x, g)).is_ok())
    })
}

/// Result of the regular-normal-subgroup criterion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RnsOutcome {
    pub holds: bool,
    /// Generators (as elements of N) of the first invariant subgroup of N
    /// that is not normal in N.
    pub witness: Option<Vec<Perm>>,
    pub invariant_subgroups: usize,
}

/// With N a regular normal subgroup, G is pre-primitive iff every subgroup of
/// N invariant under conjugation by G_0 is normal in N.
///
/// Points are identified with N by `p ↔ n_p`, the element taking 0 to p, so
/// the product is `p * q = p^(n_q)` and G_0 acts by its point action.
/// Invariant subgroups are found by closing `{0}` and then each found
/// subgroup together with one more G_0-orbit; every invariant subgroup is
/// reached this way by adding its orbits one at a time.
pub fn rns_criterion(g: &PermGroup, n: &PermGroup, caps: &Caps) -> Result<RnsOutcome> {
    let degree = g.degree();
    if !n.is_subgroup_of(g) || !g.is_normal(n) {
        return Err(Error::NotRegularNormal("not a normal subgroup".into()));
    }
    if n.order() != BigUint::from(degree) || !n.is_transitive() {
        return Err(Error::NotRegularNormal("not regular".into()));
    }
    if degree == 1 {
        return Ok(RnsOutcome {
            holds: true,
            witness: None,
            invariant_subgroups: 1,
        });
    }
    let level = &n.chain().levels()[0];
    let element: Vec<Perm> = (0..degree as u32)
        .map(|p| {
            if p == 0 {
                Perm::identity(degree)
            } else {
                level.transversal_for(p).expect("transitive").clone()
            }
        })
        .collect();
    let mul = |p: u32, q: u32| element[q as usize].apply(p);
    let stab = g.point_stabilizer(0);
    let orbits = stab.orbits().parts();

    let close = |seed: &[u32]| -> Vec<u32> {
        let mut member = vec![false; degree];
        let mut elems: Vec<u32> = Vec::new();
        for &s in std::iter::once(&0).chain(seed) {
            if !member[s as usize] {
                member[s as usize] = true;
                elems.push(s);
            }
        }
        let gens: Vec<u32> = elems.clone();
        let mut k = 0;
        while k < elems.len() {
            for &x in &gens {
                let y = mul(elems[k], x);
                if !member[y as usize] {
                    member[y as usize] = true;
                    elems.push(y);
                }
            }
            k += 1;
        }
        elems.sort_unstable();
        elems
    };

    let mut seen: HashSet<Vec<u32>> = HashSet::new();
    let mut found: Vec<Vec<u32>> = vec![vec![0]];
    seen.insert(vec![0]);
    let mut k = 0;
    while k < found.len() {
        let base = found[k].clone();
        for orbit in &orbits {
            if base.binary_search(&orbit[0]).is_ok() {
                continue;
            }
            let mut seed = base.clone();
            seed.extend_from_slice(orbit);
            let s = close(&seed);
            if seen.insert(s.clone()) {
                if found.len() >= caps.max_subgroups {
                    return Err(budget("invariant subgroup", caps.max_subgroups as u64));
                }
                found.push(s);
            }
        }
        k += 1;
    }
    found.sort_by(|a, b| (a.len(), a).cmp(&(b.len(), b)));
    let n_gens: Vec<&Perm> = n.generators().iter().collect();
    for s in &found {
        let mut member = vec![false; degree];
        for &x in s {
            member[x as usize] = true;
        }
        // n_s conjugated by n takes 0 to 0^(n⁻¹ n_s n)
        let normal = s.iter().all(|&x| {
            n_gens.iter().all(|y| {
                let c = element[x as usize].conjugate_by(y);
                member[c.apply(0) as usize]
            })
        });
        if !normal {
            let witness = PermGroup::generated_by_subset(degree, s.iter().map(|&x| element[x as usize].clone()));
            let gens = witness
                .generators()
                .iter()
                .filter(|x| !x.is_identity())
                .cloned()
                .collect();
            return Ok(RnsOutcome {
                holds: false,
                witness: Some(gens),
                invariant_subgroups: found.len(),
            });
        }
    }
    Ok(RnsOutcome {
        holds: true,
        witness: None,
        invariant_subgroups: found.len(),
    })
}

/// A partition some translate family of whose sections is closed under the
/// group: every image of `section` is a transversal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SectionRegularWitness {
    pub partition: Partition,
    pub section: Vec<u32>,
    pub invariant: bool,
}

/// Labels of the orbits of the group on ordered pairs, indexed `a·n + b`.
fn orbital_labels(g: &PermGroup) -> Vec<u32> {
    let n = g.degree();
    let mut uf = UnionFind::new(n * n);
    for x in g.generators() {
        for a in 0..n {
            for b in 0..n {
                let img = x.apply(a as u32) as usize * n + x.apply(b as u32) as usize;
                uf.union((a * n + b) as u32, img as u32);
            }
        }
    }
    uf.into_partition().labels().to_vec()
}

/// Every non-trivial section-regular partition with one witness section.
///
/// `A·g` is a transversal for all g iff no image of a pair from A lands in one
/// part, i.e. iff for every pair in A the orbital containing it avoids
/// same-part pairs. Sections are searched one point per part with that
/// pairwise test as pruning; partitions of any part sizes are considered.
pub fn section_regular_search(g: &PermGroup, caps: &Caps) -> Result<Vec<SectionRegularWitness>> {
    let n = g.degree();
    if n > caps.max_degree {
        return Err(budget("section-regular search degree", caps.max_degree as u64));
    }
    match g.order_u64() {
        Some(o) if o <= caps.max_order => {}
        _ => return Err(budget("section-regular search order", caps.max_order)),
    }
    let orbital = orbital_labels(g);
    let num_orbitals = orbital.iter().copied().max().map_or(0, |m| m as usize + 1);
    let mut out = Vec::new();
    let mut labels = vec![0u32; n];
    let mut bad = vec![false; num_orbitals];
    for_each_rgs(&mut labels, n, &mut |labels, parts| {
        if parts <= 1 || parts == n {
            return;
        }
        bad.iter_mut().for_each(|b| *b = false);
        for a in 0..n {
            for b in 0..n {
                if a != b && labels[a] == labels[b] {
                    bad[orbital[a * n + b] as usize] = true;
                }
            }
        }
        let mut members: Vec<Vec<u32>> = vec![Vec::new(); parts];
        for (p, &l) in labels.iter().enumerate() {
            members[l as usize].push(p as u32);
        }
        let good = |a: u32, b: u32| !bad[orbital[a as usize * n + b as usize] as usize];
        let mut section = Vec::with_capacity(parts);
        if find_section(&members, &good, &mut section) {
            let partition = Partition::from_labels(labels);
            let invariant = g.generators().iter().all(|x| partition.is_invariant_under(x));
            out.push(SectionRegularWitness {
                partition,
                section,
                invariant,
            });
        }
    });
    Ok(out)
}

fn find_section(members: &[Vec<u32>], good: &dyn Fn(u32, u32) -> bool, section: &mut Vec<u32>) -> bool {
    let k = section.len();
    if k == members.len() {
        return true;
    }
    for &p in &members[k] {
        if section.iter().all(|&q| good(p, q) && good(q, p)) {
            section.push(p);
            if find_section(members, good, section) {
                return true;
            }
            section.pop();
        }
    }
    false
}

/// Calls `f` on every restricted growth string of length n with its number
/// of parts.
fn for_each_rgs(labels: &mut [u32], n: usize, f: &mut dyn FnMut(&[u32], usize)) {
    fn rec(labels: &mut [u32], i: usize, max: u32, f: &mut dyn FnMut(&[u32], usize)) {
        if i == labels.len() {
            f(labels, max as usize + 1);
            return;
        }
        for l in 0..=max + 1 {
            labels[i] = l;
            rec(labels, i + 1, max.max(l), f);
        }
    }
    if n == 0 {
        return;
    }
    labels[0] = 0;
    rec(labels, 1, 0, f);
}

/// `(synchronizing, pre-synchronizing)`.
pub fn sync_flags(g: &PermGroup, caps: &Caps) -> Result<(bool, bool)> {
    let found = section_regular_search(g, caps)?;
    Ok((found.is_empty(), found.iter().all(|w| w.invariant)))
}

/// Whether `delta` satisfies the hypotheses of the Jordan-style criterion:
/// more than half the points, with the pointwise stabilizer of the
/// complement transitive and pre-primitive on `delta`.
pub fn jordan_check(g: &PermGroup, delta: &[u32], caps: &Caps) -> Result<bool> {
    let n = g.degree();
    if 2 * delta.len() <= n {
        return Ok(false);
    }
    let mut inside = vec![false; n];
    for &d in delta {
        inside[d as usize] = true;
    }
    let outside: Vec<u32> = (0..n as u32).filter(|&p| !inside[p as usize]).collect();
    let h = g.pointwise_stabilizer(&outside).restrict(delta)?;
    if !h.is_transitive() {
        return Ok(false);
    }
    Ok(preprimitivity(&h, caps)?.0)
}
